"""Theta coefficient tests: closed formula against the reduction rules."""

import pytest

from gw1.rational import rat
from gw1.selftest import (
    check_theta_special_values,
    check_theta_symmetry,
    check_theta_two_paths,
)
from gw1.theta import theta_closed, theta_recursive


def test_initial_value():
    assert theta_closed(1, []) == rat(-1, 24)
    assert theta_recursive(1, []) == rat(-1, 24)


def test_no_descendant_values():
    assert theta_closed(2, []) == rat(1, 24)
    assert theta_closed(3, []) == rat(-1, 12)
    assert theta_recursive(3, []) == rat(-1, 12)


def test_low_weight_vanishing():
    assert theta_closed(1, [0]) == 0
    assert theta_closed(2, [0, 0]) == 0
    assert theta_closed(3, [1, 0, 0]) == 0  # sum 1 < 3 slots


def test_strip_one_example():
    assert theta_closed(1, [1]) == rat(-1, 24)
    assert theta_recursive(1, [1]) == rat(-1, 24)


def test_recursion_stalls_on_deep_exponent():
    assert theta_recursive(1, [2]) is None
    assert theta_recursive(1, [3, 1]) is None  # stalls after stripping the 1
    # but the closed formula still has a value there
    assert theta_closed(1, [2]) == rat(1, 24)


def test_m_must_be_positive():
    with pytest.raises(ValueError):
        theta_closed(0, [])
    with pytest.raises(ValueError):
        theta_recursive(0, [1])


def test_permutation_invariance():
    assert theta_closed(2, [2, 0, 1]) == theta_closed(2, [1, 2, 0])
    check_theta_symmetry()


def test_special_values_suite():
    check_theta_special_values(m_max=5, size_max=4, value_max=4)


def test_two_path_suite():
    check_theta_two_paths(m_max=4, size_max=4, value_max=4)
