"""Genus-one series of a degree-n hypersurface in projective (n-1)-space.

The pipeline runs entirely inside the exact series ring of `series`:

1. `build_R` expands the hypergeometric double series R(w, t) whose w-rows
   are the degree-graded solutions I_{0,q};
2. `build_I` runs the derivative-quotient ladder producing the diagonal
   unit series I_{p,p};
3. `mirror_map` extracts the flat coordinate: T - t and the unit of the
   variable change e^T = q * unit(q);
4. `build_Z` normalizes R by e^{Tw} and reads off the one-pointed twisted
   genus-zero generating functions Z_r, checking on the way that the w^0
   row is 1 and the w^1 row vanishes (the strongest single test of the
   stack);
5. `dwp_ln_rbar` takes w-slices of log(e^{-wt} Rbar);
6. `f1_standard` / `f1_reduced` / `f1_difference` assemble the closed
   genus-one formulas; the difference is computed along two independent
   routes that must agree exactly.

All outputs are reported in the flat variable; degree-d invariants are the
coefficients of its d-th power.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .rational import ONE, Rational, ZERO, binomial, rat
from .series import (
    QSeries,
    TPoly,
    WSeries,
    wt_exponential,
    w_exponential_of,
)


class ConsistencyError(Exception):
    """An identity the pipeline is built on failed to hold."""


class MirrorIdentityError(ConsistencyError):
    """The normalized series is not of the shape 1 + O(w^2), or t survives."""


class RouteMismatchError(ConsistencyError):
    """The two independent evaluations of the difference series disagree."""


@dataclass(frozen=True)
class HypersurfaceConfig:
    """Degree/dimension parameter n, q-truncation order, w-truncation order.

    ``worder`` defaults to n - 1: the mirror identity only holds mod w^n
    and no operator needs a deeper w-expansion, so higher rows would carry
    meaningless data.
    """

    n: int
    qorder: int
    worder: Optional[int] = None

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"need n >= 3, got {self.n}")
        if self.qorder < 1:
            raise ValueError(f"need a positive series order, got {self.qorder}")
        if self.worder is None:
            object.__setattr__(self, "worder", self.n - 1)
        if not 1 <= self.worder <= self.n - 1:
            raise ValueError(
                f"w-order must lie in [1, {self.n - 1}], got {self.worder}")


@dataclass(frozen=True)
class MirrorData:
    """Everything `f1_*` needs, built once per config and immutable."""

    config: HypersurfaceConfig
    R: WSeries
    I0q: tuple              # w-rows of R, q = 0..worder
    Ipp: tuple               # diagonal units, p = 0..min(n-2, worder)
    T_minus_t: QSeries       # pure q-series, zero constant term
    Qchange: QSeries         # unit u with e^T = q*u(q)
    rev_unit: QSeries        # unit v with q = Q*v(Q) undoing the above
    Rbar: WSeries            # R divided by its (0,0) entry
    Z: tuple                 # Z_r in the flat variable, r = 0..worder-2
    DlnRbar: dict            # p -> w^p slice of log(e^{-wt} Rbar), p = 2..n-2


def hypergeometric_w_row(n: int, d: int, worder: int) -> list:
    """w-coefficients of prod(nw+r, r<=nd) / prod((w+r)^n, r<=d), exact."""
    coeffs = [ONE] + [ZERO] * worder
    for r in range(1, n * d + 1):
        # multiply by (r + n*w)
        for a in range(worder, 0, -1):
            coeffs[a] = coeffs[a] * r + coeffs[a - 1] * n
        coeffs[0] = coeffs[0] * r
    for r in range(1, d + 1):
        # multiply by (w+r)^-n = r^-n * sum_k binom(-n, k) (w/r)^k
        inv_factor = [binomial(n + k - 1, k) * rat(-1) ** (k % 2) / rat(r) ** (n + k)
                      for k in range(worder + 1)]
        out = [ZERO] * (worder + 1)
        for a, x in enumerate(coeffs):
            if not x:
                continue
            for b in range(worder + 1 - a):
                out[a + b] = out[a + b] + x * inv_factor[b]
        coeffs = out
    return coeffs


def build_R(config: HypersurfaceConfig) -> WSeries:
    """The double series: e^{wt} times the degree-graded hypergeometric sum."""
    W, D = config.worder, config.qorder
    rows = [[ZERO] * (D + 1) for _ in range(W + 1)]
    for d in range(D + 1):
        for a, x in enumerate(hypergeometric_w_row(config.n, d, W)):
            rows[a][d] = x
    pure = WSeries([QSeries.from_scalars(r, D) for r in rows])
    return wt_exponential(1, W, D) * pure


def build_I(config: HypersurfaceConfig, R: WSeries):
    """w-rows of R plus the derivative-quotient ladder of diagonal units.

    Returns (I0q, Ipp).  Each diagonal must come out t-free with constant
    term 1; anything else means the series stack is broken.
    """
    W = config.worder
    I0q = [R.coefficient(q) for q in range(W + 1)]
    p_top = min(config.n - 2, W)
    Ipp = [I0q[0]]
    row = list(I0q)
    for p in range(1, p_top + 1):
        inv_diag = row[p - 1].inverse()
        row = [None] * p + [(row[q] * inv_diag).d_dt() for q in range(p, W + 1)]
        diag = row[p]
        if not diag.is_t_free() or diag.constant_term() != TPoly.const(1):
            raise ConsistencyError(
                f"diagonal series p={p} is not a unit power series")
        Ipp.append(diag)
    return tuple(I0q), tuple(Ipp)


def mirror_map(I0q):
    """Flat-coordinate data: (T - t, unit of the exponentiated change).

    T - t is the ratio of the first two w-rows minus t; it must be a pure
    q-series with zero constant term.
    """
    ratio = I0q[1] * I0q[0].inverse()
    t_series = QSeries([TPoly.t_power(1)] + [TPoly.const(0)] * ratio.order)
    g = ratio - t_series
    if not g.is_t_free():
        raise ConsistencyError("mirror map did not cancel the t-linear part")
    if g.constant_term():
        raise ConsistencyError("mirror map has a nonzero constant term")
    return g, g.exp()


def build_Z(config: HypersurfaceConfig, Rbar: WSeries, T_minus_t: QSeries,
            rev_unit: QSeries):
    """Z_r series in the flat variable, r = 0..worder-2.

    Computes e^{-Tw} Rbar as exp(-wt)*exp(-w(T-t))*Rbar, demands the w^0
    row be 1 and the w^1 row be 0 with no residual t, then re-expands each
    deeper row in the flat variable.
    """
    W, D = config.worder, config.qorder
    normalized = wt_exponential(-1, W, D) * w_exponential_of(-T_minus_t, W) * Rbar
    if normalized.coefficient(0) != QSeries.one(D):
        raise MirrorIdentityError("w^0 row of the normalized series is not 1")
    if W >= 1 and normalized.coefficient(1) != QSeries.zero(D):
        raise MirrorIdentityError("w^1 row of the normalized series is not 0")
    zs = []
    for r in range(W - 1):
        row = normalized.coefficient(r + 2)
        if not row.is_t_free():
            raise MirrorIdentityError(f"w^{r + 2} row carries residual t")
        z = row.substitute_q(rev_unit)
        if z.constant_term():
            raise MirrorIdentityError(f"Z_{r} has a nonzero constant term")
        zs.append(z)
    return tuple(zs)


def dwp_ln_rbar(config: HypersurfaceConfig, Rbar: WSeries) -> dict:
    """w^p slices of log(e^{-wt} Rbar) for p = 2..n-2, each t-free."""
    if config.worder < config.n - 2:
        raise ValueError("w-order too small for the log slices")
    logged = (wt_exponential(-1, config.worder, config.qorder) * Rbar).log()
    out = {}
    for p in range(2, config.n - 1):
        row = logged.coefficient(p)
        if not row.is_t_free():
            raise ConsistencyError(f"log slice p={p} carries residual t")
        out[p] = row
    return out


def build_mirror_data(config: HypersurfaceConfig) -> MirrorData:
    R = build_R(config)
    I0q, Ipp = build_I(config, R)
    g, unit = mirror_map(I0q)
    rev = unit.revert_unit()
    Rbar = R.scale_rows(I0q[0].inverse())
    Z = build_Z(config, Rbar, g, rev)
    dln = dwp_ln_rbar(config, Rbar) if config.worder >= config.n - 2 else {}
    return MirrorData(config=config, R=R, I0q=I0q, Ipp=Ipp, T_minus_t=g,
                      Qchange=unit, rev_unit=rev, Rbar=Rbar, Z=Z, DlnRbar=dln)


def chern_weight(n: int, q: int) -> Rational:
    """w^q Taylor coefficient of (1+w)^n / (1+nw)."""
    if q < 0 or q > n - 2:
        raise ValueError(f"chern weight index {q} outside [0, {n - 2}]")
    total = ZERO
    sign, npow = 1, ONE
    for a in range(q, -1, -1):
        total = total + binomial(n, a) * npow * sign
        sign, npow = -sign, npow * n
    return total


def _f1_standard_flat_input(mirror: MirrorData) -> QSeries:
    """Theorem series assembled in the algebraic variable, before re-expansion."""
    n = mirror.config.n
    D = mirror.config.qorder
    sgn = rat(-1) ** (n % 2)       # (1-n)^n = (-1)^n (n-1)^n
    one_minus_n_pow = sgn * rat(n - 1) ** n
    lead = rat((n - 2) * (n + 1), 48) + (1 - one_minus_n_pow) / (24 * n * n)
    log_i00_coeff = rat(n * n - 1 + one_minus_n_pow, 24 * n)
    out = mirror.T_minus_t * lead + mirror.I0q[0].log() * log_i00_coeff
    discriminant = QSeries.from_scalars([1, -rat(n) ** n], D).log()
    if n % 2:
        out = out - discriminant * rat(n - 1, 48)
        weights = [(p, rat((n - 1 - 2 * p) ** 2, 8)) for p in range((n - 3) // 2 + 1)]
    else:
        out = out - discriminant * rat(n - 4, 48)
        weights = [(p, rat((n - 2 * p) * (n - 2 - 2 * p), 8)) for p in range((n - 4) // 2 + 1)]
    for p, weight in weights:
        out = out - mirror.Ipp[p].log() * weight
    if out.constant_term():
        raise ConsistencyError("assembled genus-one series has a constant term")
    if not out.is_t_free():
        raise ConsistencyError("assembled genus-one series carries t")
    return out


def _correction(mirror: MirrorData) -> QSeries:
    """(n/24) * sum_p chern_weight(n, n-2-p) * (p-th log slice), in e^t."""
    n = mirror.config.n
    out = QSeries.zero(mirror.config.qorder)
    for p in range(2, n - 1):
        out = out + mirror.DlnRbar[p] * (chern_weight(n, n - 2 - p) * rat(n, 24))
    return out


def f1_standard(mirror: MirrorData) -> QSeries:
    """Generating series of the standard genus-one invariants, flat variable."""
    return _f1_standard_flat_input(mirror).substitute_q(mirror.rev_unit)


def f1_reduced(mirror: MirrorData) -> QSeries:
    """Generating series of the reduced genus-one invariants, flat variable."""
    reduced = _f1_standard_flat_input(mirror) + _correction(mirror)
    return reduced.substitute_q(mirror.rev_unit)


def _compositions_min2(total: int, parts: int) -> Iterator[tuple]:
    """Ordered tuples of `parts` integers >= 2 summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(2, total - 2 * (parts - 1) + 1):
        for rest in _compositions_min2(total - first, parts - 1):
            yield (first,) + rest


def f1_difference(mirror: MirrorData) -> QSeries:
    """Standard-minus-reduced series, evaluated along two routes.

    Route (a) expands products of the Z_r with composition sums; route (b)
    is -(n/24) * the chern-weighted log slices re-expanded in the flat
    variable.  They must agree exactly; (b) is returned.
    """
    n, D = mirror.config.n, mirror.config.qorder
    route_b = (-_correction(mirror)).substitute_q(mirror.rev_unit)

    route_a = QSeries.zero(D)
    for p in range(2, n - 1):
        per_p = QSeries.zero(D)
        for m in range(1, p // 2 + 1):
            msum = QSeries.zero(D)
            for comp in _compositions_min2(p, m):
                prod = QSeries.one(D)
                for part in comp:
                    prod = prod * mirror.Z[part - 2]
                msum = msum + prod
            per_p = per_p + msum.scale(rat(-1 if m % 2 else 1, m))
        route_a = route_a + per_p * (chern_weight(n, n - 2 - p) * rat(n, 24))
    if route_a != route_b:
        raise RouteMismatchError(
            "difference series disagrees between the product expansion "
            "and the log-slice evaluation")
    return route_b


def extract_invariants(series: QSeries, max_degree: int) -> list:
    """Degree-d coefficients, d = 1..max_degree, of a flat-variable series."""
    if series.constant_term():
        raise ConsistencyError("generating series has a nonzero constant term")
    if max_degree > series.order:
        raise ValueError(f"series only carries degrees up to {series.order}")
    scalars = series.scalar_coefficients()
    return scalars[1:max_degree + 1]


@dataclass(frozen=True)
class GenusOneTables:
    """Invariant tables for one configuration, degrees 1..qorder."""

    config: HypersurfaceConfig
    standard: tuple
    reduced: tuple
    difference: tuple
    mirror: MirrorData


def genus_one_tables(config: HypersurfaceConfig) -> GenusOneTables:
    """Build everything and extract the three invariant tables."""
    mirror = build_mirror_data(config)
    D = config.qorder
    std = extract_invariants(f1_standard(mirror), D)
    red = extract_invariants(f1_reduced(mirror), D)
    diff = extract_invariants(f1_difference(mirror), D)
    for a, b, c in zip(std, red, diff):
        if a - b != c:
            raise RouteMismatchError("standard - reduced != difference")
    return GenusOneTables(config=config, standard=tuple(std), reduced=tuple(red),
                          difference=tuple(diff), mirror=mirror)
