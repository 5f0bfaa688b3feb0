"""Exact genus-one Gromov-Witten calculators.

Submodules:

* ``rational``     -- exact rational scalars and combinatorial helpers
* ``series``       -- truncated series in q = e^t with t-polynomial
  coefficients, plus the w-graded layer
* ``taut``         -- blowup tautological intersection numbers
* ``theta``        -- the repackaged coefficients of the difference formula
* ``difference``   -- standard-minus-reduced evaluators over genus-zero tables
* ``hypersurface`` -- the closed genus-one pipeline for degree-n hypersurfaces
* ``cli``          -- the ``gw1`` command-line front end
"""

__version__ = "0.1.0"
