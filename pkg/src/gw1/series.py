"""Truncated exact power series in three nested layers.

The computational carrier of the whole package is the ring

    Q[t][[q]] / (q^{D+1})        with q standing for e^t,

so differentiation in t acts on a monomial t^a q^d as

    d/dt (t^a q^d) = a t^{a-1} q^d + d t^a q^d.

A third layer adjoins a nilpotent variable w truncated mod w^{W+1}.
Concretely:

* ``TPoly``   -- dense polynomial in t over the rationals,
* ``QSeries`` -- dense series in q of fixed truncation order with TPoly
  coefficients,
* ``WSeries`` -- dense polynomial in w (mod w^{W+1}) with QSeries
  coefficients, all sharing one q-order.

Every value is immutable after construction and all operations are pure,
so instances can be shared freely between threads.  Truncation orders are
fixed per value; mixing orders raises ``OrderMismatchError`` rather than
silently re-truncating.
"""

from __future__ import annotations

from .rational import ONE, Rational, ZERO, rat_from_str, rat_to_str


class SeriesError(Exception):
    """Base class for series arithmetic failures."""


class OrderMismatchError(SeriesError):
    """Arithmetic between series of different truncation orders."""


class NotAUnitError(SeriesError):
    """Inversion of a series whose leading coefficient is not a nonzero constant."""


class SeriesDomainError(SeriesError):
    """Operand outside the domain of the requested operation (log/exp/revert)."""


class TruncationError(SeriesError):
    """Request for a coefficient beyond the stored truncation order."""


# ---------------------------------------------------------------------------
# polynomials in t


class TPoly:
    """Dense polynomial in t; no trailing zero coefficients, zero == ()."""

    __slots__ = ("_c",)

    def __init__(self, coefficients=()):
        c = [Rational(x) for x in coefficients]
        while c and not c[-1]:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "TPoly":
        # caller guarantees: Rational entries, no trailing zeros
        out = object.__new__(cls)
        out._c = coeffs
        return out

    @classmethod
    def const(cls, value) -> "TPoly":
        v = Rational(value)
        return cls._raw((v,) if v else ())

    @classmethod
    def t_power(cls, exponent: int, scale=1) -> "TPoly":
        s = Rational(scale)
        if not s:
            return cls._raw(())
        return cls._raw((ZERO,) * exponent + (s,))

    @property
    def coefficients(self) -> tuple:
        return self._c

    def degree(self) -> int:
        """Degree in t; -1 for the zero polynomial."""
        return len(self._c) - 1

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def constant(self):
        return self._c[0] if self._c else ZERO

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, TPoly):
            return self._c == other._c
        if isinstance(other, (int, Rational)):
            return self == TPoly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __repr__(self) -> str:
        if not self._c:
            return "TPoly0"
        terms = []
        for a, x in enumerate(self._c):
            if not x:
                continue
            if a == 0:
                terms.append(rat_to_str(x))
            else:
                tpow = "t" if a == 1 else f"t^{a}"
                terms.append(tpow if x == ONE else f"({rat_to_str(x)})*{tpow}")
        return " + ".join(terms)

    def __neg__(self) -> "TPoly":
        return TPoly._raw(tuple(-x for x in self._c))

    def __add__(self, other) -> "TPoly":
        if isinstance(other, (int, Rational)):
            other = TPoly.const(other)
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, x in enumerate(b):
            c[i] = c[i] + x
        while c and not c[-1]:
            c.pop()
        return TPoly._raw(tuple(c))

    __radd__ = __add__

    def __sub__(self, other) -> "TPoly":
        if isinstance(other, (int, Rational)):
            other = TPoly.const(other)
        return self + (-other)

    def __mul__(self, other) -> "TPoly":
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        a, b = self._c, other._c
        if not a or not b:
            return TPoly._raw(())
        c = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    c[i + j] = c[i + j] + x * y
        while c and not c[-1]:
            c.pop()
        return TPoly._raw(tuple(c))

    __rmul__ = __mul__

    def scale(self, value) -> "TPoly":
        v = Rational(value)
        if not v:
            return TPoly._raw(())
        return TPoly._raw(tuple(x * v for x in self._c))

    def d_dt(self) -> "TPoly":
        """Formal derivative in t."""
        return TPoly._raw(tuple(a * x for a, x in enumerate(self._c) if a)) \
            if len(self._c) > 1 else TPoly._raw(())


TPOLY_ZERO = TPoly._raw(())
TPOLY_ONE = TPoly._raw((ONE,))


# ---------------------------------------------------------------------------
# series in q = e^t


class QSeries:
    """Series in q truncated mod q^{order+1}, coefficients in Q[t]."""

    __slots__ = ("_c",)

    def __init__(self, coefficients):
        c = tuple(x if isinstance(x, TPoly) else TPoly.const(x)
                  for x in coefficients)
        if not c:
            raise ValueError("a QSeries needs at least the q^0 coefficient")
        self._c = c

    @classmethod
    def _raw(cls, coeffs: tuple) -> "QSeries":
        out = object.__new__(cls)
        out._c = coeffs
        return out

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls._raw((TPOLY_ZERO,) * (order + 1))

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls._raw((TPOLY_ONE,) + (TPOLY_ZERO,) * order)

    @classmethod
    def constant(cls, value, order: int) -> "QSeries":
        return cls._raw((TPoly.const(value),) + (TPOLY_ZERO,) * order)

    @classmethod
    def from_scalars(cls, scalars, order: int) -> "QSeries":
        """Pure q-series from a scalar list, zero-padded to the order."""
        scalars = list(scalars)
        if len(scalars) > order + 1:
            raise ValueError("more coefficients than the truncation order allows")
        c = [TPoly.const(x) for x in scalars]
        c += [TPOLY_ZERO] * (order + 1 - len(c))
        return cls._raw(tuple(c))

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coefficients(self) -> tuple:
        return self._c

    def coefficient(self, d: int) -> TPoly:
        if d > self.order:
            raise TruncationError(f"q^{d} requested but order is {self.order}")
        return self._c[d]

    def constant_term(self) -> TPoly:
        return self._c[0]

    def t_degree(self) -> int:
        """Largest t-degree appearing in any coefficient; -1 for zero."""
        return max((p.degree() for p in self._c), default=-1)

    def is_t_free(self) -> bool:
        return all(p.is_constant() for p in self._c)

    def scalar_coefficients(self) -> list:
        """Coefficient list of a t-free series as plain rationals."""
        if not self.is_t_free():
            raise SeriesDomainError("series carries t; no scalar coefficient list")
        return [p.constant() for p in self._c]

    def __bool__(self) -> bool:
        return any(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, QSeries):
            return self._c == other._c
        if isinstance(other, (int, Rational, TPoly)):
            return self == QSeries.constant(other, self.order) \
                if not isinstance(other, TPoly) \
                else self._c == ((other,) + (TPOLY_ZERO,) * self.order)
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __repr__(self) -> str:
        parts = []
        for d, p in enumerate(self._c):
            if not p:
                continue
            body = repr(p)
            if d == 0:
                parts.append(body)
            else:
                qpow = "q" if d == 1 else f"q^{d}"
                parts.append(qpow if p == TPOLY_ONE else f"({body})*{qpow}")
        head = " + ".join(parts) if parts else "0"
        return f"<{head} + O(q^{self.order + 1})>"

    def _check_order(self, other: "QSeries"):
        if self.order != other.order:
            raise OrderMismatchError(
                f"orders differ: {self.order} vs {other.order}")

    def __neg__(self) -> "QSeries":
        return QSeries._raw(tuple(-p for p in self._c))

    def __add__(self, other) -> "QSeries":
        if isinstance(other, (int, Rational, TPoly)):
            other = QSeries._raw(
                ((other if isinstance(other, TPoly) else TPoly.const(other)),)
                + (TPOLY_ZERO,) * self.order)
        self._check_order(other)
        return QSeries._raw(tuple(a + b for a, b in zip(self._c, other._c)))

    __radd__ = __add__

    def __sub__(self, other) -> "QSeries":
        if isinstance(other, (int, Rational, TPoly)):
            return self + (-TPoly.const(other) if not isinstance(other, TPoly)
                           else -other)
        return self + (-other)

    def __rsub__(self, other) -> "QSeries":
        return (-self) + other

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        if isinstance(other, TPoly):
            return QSeries._raw(tuple(other * p for p in self._c))
        self._check_order(other)
        n = self.order
        a, b = self._c, other._c
        out = [TPOLY_ZERO] * (n + 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j in range(n + 1 - i):
                y = b[j]
                if y:
                    out[i + j] = out[i + j] + x * y
        return QSeries._raw(tuple(out))

    __rmul__ = __mul__

    def scale(self, value) -> "QSeries":
        v = Rational(value)
        if not v:
            return QSeries.zero(self.order)
        return QSeries._raw(tuple(p.scale(v) for p in self._c))

    def q_shift(self, d: int) -> "QSeries":
        """Multiply by q^d, dropping what truncates away."""
        if d == 0:
            return self
        n = self.order
        return QSeries._raw((TPOLY_ZERO,) * min(d, n + 1)
                            + self._c[:max(n + 1 - d, 0)])

    def inverse(self) -> "QSeries":
        """Multiplicative inverse; q^0 coefficient must be a nonzero constant."""
        c0 = self._c[0]
        if not c0.is_constant() or not c0:
            raise NotAUnitError(
                "q^0 coefficient must be a nonzero constant to invert")
        n = self.order
        inv0 = ONE / c0.constant()
        out = [TPoly.const(inv0)] + [TPOLY_ZERO] * n
        for d in range(1, n + 1):
            acc = TPOLY_ZERO
            for e in range(d):
                x = self._c[d - e]
                if x and out[e]:
                    acc = acc + out[e] * x
            out[d] = acc.scale(-inv0)
        return QSeries._raw(tuple(out))

    def __truediv__(self, other) -> "QSeries":
        if isinstance(other, (int, Rational)):
            return self.scale(ONE / Rational(other))
        return self * other.inverse()

    def log(self) -> "QSeries":
        """Series logarithm; requires constant term exactly 1."""
        if self._c[0] != TPOLY_ONE:
            raise SeriesDomainError("log needs constant term exactly 1")
        x = self - 1
        out = QSeries.zero(self.order)
        power = QSeries.one(self.order)
        for k in range(1, self.order + 1):
            power = power * x
            if not power:
                break
            out = out + power.scale(Rational(-1 if k % 2 == 0 else 1, k))
        return out

    def exp(self) -> "QSeries":
        """Series exponential; requires constant term 0."""
        if self._c[0]:
            raise SeriesDomainError("exp needs constant term 0")
        out = QSeries.one(self.order)
        term = QSeries.one(self.order)
        for k in range(1, self.order + 1):
            term = (term * self).scale(Rational(1, k))
            if not term:
                break
            out = out + term
        return out

    def d_dt(self) -> "QSeries":
        """Derivative in t under q = e^t: acts as d/dt + d*q d/dq per term."""
        out = []
        for d, p in enumerate(self._c):
            dp = p.d_dt()
            out.append(dp + p.scale(d) if d else dp)
        return QSeries._raw(tuple(out))

    def substitute_q(self, unit: "QSeries") -> "QSeries":
        """Evaluate this pure q-series at q = Q*unit(Q), as a series in Q.

        Both operands must be t-free and share the truncation order; the
        result's coefficients up to that order are exact because q^d only
        feeds orders >= d.
        """
        if not self.is_t_free():
            raise SeriesDomainError("only t-free series may change variables")
        if not unit.is_t_free():
            raise SeriesDomainError("substitution unit must be t-free")
        self._check_order(unit)
        n = self.order
        out = QSeries.zero(n)
        upow = QSeries.one(n)
        for d in range(n + 1):
            p = self._c[d]
            if p:
                out = out + (upow * p.constant()).q_shift(d)
            if d < n:
                upow = upow * unit
        return out

    def revert_unit(self) -> "QSeries":
        """Inverse change of variables for Q = q*self(q).

        Returns the unit v with constant term 1 such that q = Q*v(Q)
        undoes Q = q*self(q).  Fixed-point iteration v <- 1/self(Q*v(Q)),
        which gains one exact order per pass.
        """
        if self._c[0] != TPOLY_ONE:
            raise SeriesDomainError("reversion needs constant term exactly 1")
        if not self.is_t_free():
            raise SeriesDomainError("reversion input must be t-free")
        v = QSeries.one(self.order)
        for _ in range(self.order + 1):
            nxt = self.substitute_q(v).inverse()
            if nxt == v:
                break
            v = nxt
        return v

    def to_json_obj(self) -> list:
        """Nested-list form: one list of "p/q" strings per q-power."""
        return [[rat_to_str(x) for x in p.coefficients] for p in self._c]

    @classmethod
    def from_json_obj(cls, obj) -> "QSeries":
        return cls([TPoly([rat_from_str(s) for s in row]) for row in obj])


# ---------------------------------------------------------------------------
# polynomials in w with QSeries coefficients


class WSeries:
    """Polynomial in w mod w^{worder+1}; all rows share one q-order."""

    __slots__ = ("_rows",)

    def __init__(self, rows):
        rows = tuple(rows)
        if not rows:
            raise ValueError("a WSeries needs at least the w^0 row")
        d = rows[0].order
        for r in rows[1:]:
            if r.order != d:
                raise OrderMismatchError("all w-rows must share one q-order")
        self._rows = rows

    @classmethod
    def _raw(cls, rows: tuple) -> "WSeries":
        out = object.__new__(cls)
        out._rows = rows
        return out

    @classmethod
    def zero(cls, worder: int, qorder: int) -> "WSeries":
        return cls._raw((QSeries.zero(qorder),) * (worder + 1))

    @classmethod
    def one(cls, worder: int, qorder: int) -> "WSeries":
        return cls._raw((QSeries.one(qorder),)
                        + (QSeries.zero(qorder),) * worder)

    @property
    def worder(self) -> int:
        return len(self._rows) - 1

    @property
    def qorder(self) -> int:
        return self._rows[0].order

    @property
    def rows(self) -> tuple:
        return self._rows

    def coefficient(self, p: int) -> QSeries:
        """The w^p coefficient; this is the normalized p-th w-derivative at 0."""
        if p > self.worder:
            raise TruncationError(f"w^{p} requested but order is {self.worder}")
        return self._rows[p]

    def __eq__(self, other) -> bool:
        if isinstance(other, WSeries):
            return self._rows == other._rows
        return NotImplemented

    def __hash__(self):
        return hash(self._rows)

    def __bool__(self) -> bool:
        return any(self._rows)

    def __repr__(self) -> str:
        nonzero = [f"w^{a}:{r!r}" for a, r in enumerate(self._rows) if r]
        return f"WSeries[{'; '.join(nonzero) or '0'} mod w^{self.worder + 1}]"

    def _check_orders(self, other: "WSeries"):
        if self.worder != other.worder or self.qorder != other.qorder:
            raise OrderMismatchError("w-series orders differ")

    def __neg__(self) -> "WSeries":
        return WSeries._raw(tuple(-r for r in self._rows))

    def __add__(self, other) -> "WSeries":
        if isinstance(other, (int, Rational)):
            rows = list(self._rows)
            rows[0] = rows[0] + other
            return WSeries._raw(tuple(rows))
        self._check_orders(other)
        return WSeries._raw(tuple(a + b for a, b in zip(self._rows, other._rows)))

    __radd__ = __add__

    def __sub__(self, other) -> "WSeries":
        if isinstance(other, (int, Rational)):
            return self + (-Rational(other))
        return self + (-other)

    def __mul__(self, other) -> "WSeries":
        if isinstance(other, (int, Rational)):
            return WSeries._raw(tuple(r.scale(other) for r in self._rows))
        if isinstance(other, QSeries):
            return WSeries._raw(tuple(r * other for r in self._rows))
        self._check_orders(other)
        n = self.worder
        out = [QSeries.zero(self.qorder) for _ in range(n + 1)]
        for i, a in enumerate(self._rows):
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other._rows[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return WSeries._raw(tuple(out))

    __rmul__ = __mul__

    def scale_rows(self, factor: QSeries) -> "WSeries":
        """Multiply every w-row by one QSeries."""
        return WSeries._raw(tuple(r * factor for r in self._rows))

    def log(self) -> "WSeries":
        """Logarithm mod w^{worder+1}.

        The w^0 row must have constant term exactly 1; the result is
        log(row0) + log(1 + rest/row0) with the second factor expanded to
        w-order worder.
        """
        c0 = self._rows[0]
        if c0.constant_term() != TPOLY_ONE:
            raise SeriesDomainError(
                "w-log needs a w^0 row with constant term exactly 1")
        inv0 = c0.inverse()
        qorder = self.qorder
        rest = WSeries._raw((QSeries.zero(qorder),)
                            + tuple(r * inv0 for r in self._rows[1:]))
        out = [c0.log()] + [QSeries.zero(qorder)] * self.worder
        power = WSeries.one(self.worder, qorder)
        for k in range(1, self.worder + 1):
            power = power * rest
            if not power:
                break
            coeff = Rational(-1 if k % 2 == 0 else 1, k)
            for a in range(k, self.worder + 1):
                if power._rows[a]:
                    out[a] = out[a] + power._rows[a].scale(coeff)
        return WSeries._raw(tuple(out))


def wt_exponential(sign: int, worder: int, qorder: int) -> WSeries:
    """The series e^{sign*w*t} = sum_a (sign*t)^a/a! w^a, mod w^{worder+1}."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    rows = []
    coeff = ONE
    for a in range(worder + 1):
        if a:
            coeff = coeff * sign / a
        rows.append(QSeries._raw(
            (TPoly.t_power(a, coeff),) + (TPOLY_ZERO,) * qorder))
    return WSeries._raw(tuple(rows))


def w_exponential_of(g: QSeries, worder: int) -> WSeries:
    """The series e^{w*g(q)} = sum_a g^a/a! w^a, mod w^{worder+1}."""
    rows = [QSeries.one(g.order)]
    for a in range(1, worder + 1):
        rows.append((rows[-1] * g).scale(Rational(1, a)))
    return WSeries._raw(tuple(rows))
