"""Exact truncated power series and Laurent series over the rationals.

A :class:`TruncatedSeries` stores ``a_0 .. a_N`` and stands for a power
series known modulo ``T^(N+1)``.  When ``exact`` is set the series is a
polynomial: every coefficient past the stored ones is known to be zero, so
it can be extended to any truncation for free.

A :class:`LaurentSeries` is a power-series body together with the exponent
of its first coefficient.  Bodies are normalized at construction so that the
leading stored coefficient is nonzero, which makes :meth:`LaurentSeries.order`
constant time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import (
    IndeterminateOrder,
    InsufficientTruncation,
    NonSquareFreeTerm,
    SeriesZeroDivision,
    ZeroFreeTerm,
)

Coefficient = Fraction
Scalar = Union[int, Fraction]

__all__ = [
    "Coefficient",
    "TruncatedSeries",
    "LaurentSeries",
    "add",
    "mul",
    "invert",
    "sqrt",
    "shift",
    "laurent_mul",
    "laurent_invert",
    "order",
    "rational_sqrt",
    "parse_coefficient",
    "series_to_json",
    "series_from_json",
    "laurent_from_json",
]


def parse_coefficient(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact coefficient {value!r}")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as a coefficient")


def rational_sqrt(q: Fraction) -> Fraction:
    """Nonnegative rational square root of ``q``; NonSquareFreeTerm if there is none."""
    if q < 0:
        raise NonSquareFreeTerm(f"{q} is negative")
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn != q.numerator or rd * rd != q.denominator:
        raise NonSquareFreeTerm(f"{q} is not the square of a rational")
    return Fraction(rn, rd)


def _convolve(a: tuple, b: tuple, n: int) -> list:
    # Cauchy product through index n, done on integer numerators over a
    # common denominator per operand; one Fraction normalization per output.
    la, lb = min(len(a), n + 1), min(len(b), n + 1)
    da = math.lcm(*(x.denominator for x in a[:la]))
    db = math.lcm(*(x.denominator for x in b[:lb]))
    ia = [x.numerator * (da // x.denominator) for x in a[:la]]
    ib = [x.numerator * (db // x.denominator) for x in b[:lb]]
    den = da * db
    out = []
    for k in range(n + 1):
        lo, hi = max(0, k - lb + 1), min(k, la - 1)
        s = 0
        for i in range(lo, hi + 1):
            s += ia[i] * ib[k - i]
        out.append(Fraction(s, den))
    return out


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple
    exact: bool = False

    def __post_init__(self):
        cs = [parse_coefficient(c) for c in self.coeffs]
        if not cs:
            raise ValueError("a series needs at least one coefficient")
        if self.exact:
            while len(cs) > 1 and cs[-1] == 0:
                cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- constructors -------------------------------------------------
    @classmethod
    def polynomial(cls, coeffs: Iterable) -> "TruncatedSeries":
        return cls(tuple(coeffs), exact=True)

    @classmethod
    def constant(cls, c: Scalar = 1) -> "TruncatedSeries":
        return cls((c,), exact=True)

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "TruncatedSeries":
        return cls((0,) * k + (c,), exact=True)

    @classmethod
    def zero(cls, truncation: int | None = None) -> "TruncatedSeries":
        if truncation is None:
            return cls((0,), exact=True)
        return cls((0,) * (truncation + 1))

    # -- inspection ---------------------------------------------------
    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            raise IndexError(k)
        if k < len(self.coeffs):
            return self.coeffs[k]
        if self.exact:
            return Fraction(0)
        raise InsufficientTruncation(f"coefficient {k} beyond truncation {self.truncation}")

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, None if all stored ones vanish."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def truncate(self, n: int) -> "TruncatedSeries":
        """Reduce modulo T^(n+1).  Only exact series may be extended."""
        if n < 0:
            raise ValueError("truncation must be non-negative")
        if n > self.truncation and not self.exact:
            raise InsufficientTruncation(
                f"series known to truncation {self.truncation}, asked for {n}"
            )
        return TruncatedSeries(tuple(self[k] for k in range(n + 1)))

    def agrees(self, other: "TruncatedSeries") -> bool:
        """Equality up to the common truncation of the two operands."""
        if self.exact and other.exact:
            return self.coeffs == other.coeffs
        n = _common_truncation(self, other)
        return all(self[k] == other[k] for k in range(n + 1))

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        other = _promote(other)
        if other is NotImplemented:
            return other
        if self.exact and other.exact:
            n = max(len(self), len(other))
            return TruncatedSeries(tuple(self[k] + other[k] for k in range(n)), exact=True)
        n = _common_truncation(self, other)
        return TruncatedSeries(tuple(self[k] + other[k] for k in range(n + 1)))

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.exact)

    def __sub__(self, other):
        other = _promote(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return TruncatedSeries(tuple(c * other for c in self.coeffs), self.exact)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if (self.exact and self.is_zero()) or (other.exact and other.is_zero()):
            return TruncatedSeries.zero()
        if self.exact and other.exact:
            n = len(self) + len(other) - 2
            return TruncatedSeries(tuple(_convolve(self.coeffs, other.coeffs, n)), exact=True)
        n = _common_truncation(self, other)
        return TruncatedSeries(tuple(_convolve(self.coeffs, other.coeffs, n)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int) -> "TruncatedSeries":
        if k < 0:
            return self.invert() ** (-k)
        result = TruncatedSeries.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def invert(self, truncation: int | None = None) -> "TruncatedSeries":
        """Multiplicative inverse modulo T^(n+1); ZeroFreeTerm for non-units."""
        a0 = self.coeffs[0]
        if a0 == 0:
            raise ZeroFreeTerm("free term is zero; the series is not a unit")
        if self.exact and len(self) == 1:
            return TruncatedSeries.constant(1 / a0)
        n = self.truncation if truncation is None else truncation
        if n > self.truncation and not self.exact:
            raise InsufficientTruncation(
                f"cannot invert to truncation {n} from truncation {self.truncation}"
            )
        a = self.coeffs
        inv0 = 1 / a0
        b = [inv0]
        for k in range(1, n + 1):
            s = Fraction(0)
            for i in range(1, min(k, len(a) - 1) + 1):
                if a[i]:
                    s += a[i] * b[k - i]
            b.append(-inv0 * s)
        return TruncatedSeries(tuple(b))

    def sqrt(self, truncation: int | None = None) -> "TruncatedSeries":
        """Square root with positive free term, by Newton iteration s <- (s + a/s)/2."""
        a0 = self.coeffs[0]
        if a0 == 0:
            raise ZeroFreeTerm("square root of a series with zero free term is not supported")
        root0 = rational_sqrt(a0)
        if self.exact and len(self) == 1:
            return TruncatedSeries.constant(root0)
        n = self.truncation if truncation is None else truncation
        if n > self.truncation and not self.exact:
            raise InsufficientTruncation(
                f"cannot take sqrt to truncation {n} from truncation {self.truncation}"
            )
        s = TruncatedSeries((root0,))
        prec = 1  # s is correct modulo T^prec
        while prec < n + 1:
            prec = min(2 * prec, n + 1)
            s = _pad(s, prec - 1)
            s = (s + self.truncate(prec - 1) * s.invert()) / 2
        return s

    def shift(self, k: int = 1) -> "TruncatedSeries":
        """Drop the first k coefficients (the operator sigma, applied k times)."""
        if k == 0:
            return self
        if self.exact:
            rest = self.coeffs[k:]
            return TruncatedSeries(rest or (0,), exact=True)
        if k > self.truncation:
            raise InsufficientTruncation(
                f"cannot shift by {k} a series of truncation {self.truncation}"
            )
        return TruncatedSeries(self.coeffs[k:])

    def mul_t(self, k: int = 1) -> "TruncatedSeries":
        """Multiply by T^k, k >= 0."""
        if k == 0 or (self.exact and self.is_zero()):
            return self
        return TruncatedSeries((0,) * k + self.coeffs, self.exact)

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(_term(c, k))
        body = " + ".join(terms) if terms else "0"
        return body if self.exact else f"{body} + O(T^{self.truncation + 1})"


def _term(c: Fraction, k: int) -> str:
    if k == 0:
        return str(c)
    mono = "T" if k == 1 else f"T^{k}"
    return mono if c == 1 else f"{c}*{mono}"


def _pad(s: TruncatedSeries, n: int) -> TruncatedSeries:
    return TruncatedSeries(s.coeffs + (Fraction(0),) * (n - s.truncation))


def _promote(x):
    if isinstance(x, TruncatedSeries):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return TruncatedSeries.constant(x)
    return NotImplemented


def _common_truncation(a: TruncatedSeries, b: TruncatedSeries) -> int:
    if a.exact:
        return b.truncation if not b.exact else max(a.truncation, b.truncation)
    if b.exact:
        return a.truncation
    return min(a.truncation, b.truncation)


@dataclass(frozen=True)
class LaurentSeries:
    """``sum_k body[k] T^(ord + k)``, normalized so body[0] != 0 unless zero."""

    ord: int
    body: TruncatedSeries

    def __post_init__(self):
        body = self.body
        v = body.valuation()
        if v is None:
            if body.exact:
                object.__setattr__(self, "ord", 0)
            else:
                # keep the absolute precision: known zero below ord + len
                object.__setattr__(self, "ord", self.ord + body.truncation)
                object.__setattr__(self, "body", TruncatedSeries((0,)))
        elif v > 0:
            object.__setattr__(self, "ord", self.ord + v)
            object.__setattr__(self, "body", TruncatedSeries(body.coeffs[v:], body.exact))

    @classmethod
    def from_series(cls, s: TruncatedSeries, ord: int = 0) -> "LaurentSeries":
        return cls(ord, s)

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "LaurentSeries":
        return cls(k, TruncatedSeries.constant(c))

    @classmethod
    def constant(cls, c: Scalar) -> "LaurentSeries":
        return cls(0, TruncatedSeries.constant(c))

    @property
    def exact(self) -> bool:
        return self.body.exact

    @property
    def truncation(self) -> int:
        return self.body.truncation

    @property
    def precision(self) -> float:
        """Exponents below this are known; inf for exact series."""
        return math.inf if self.exact else self.ord + len(self.body)

    def is_zero(self) -> bool:
        return self.body.is_zero()

    def order(self):
        if not self.is_zero():
            return self.ord
        if self.exact:
            return math.inf
        raise IndeterminateOrder(
            f"series vanishes to working precision O(T^{self.ord + 1}); order undecidable"
        )

    def coefficient(self, e: int) -> Fraction:
        if e < self.ord:
            return Fraction(0)
        if e >= self.precision:
            raise InsufficientTruncation(f"coefficient of T^{e} not known")
        return self.body[e - self.ord]

    def numerator(self, m: int) -> TruncatedSeries:
        """The power series f = T^m * self; needs ord + m >= 0."""
        k = self.ord + m
        if k < 0:
            raise ValueError(f"T^{m} * series still has a pole of order {-k}")
        if self.is_zero():
            return TruncatedSeries.zero() if self.exact else TruncatedSeries.zero(self.ord + m)
        return self.body.mul_t(k)

    def agrees(self, other: "LaurentSeries") -> bool:
        if self.exact and other.exact:
            return self == other
        hi = min(self.precision, other.precision)
        lo = min(self.ord, other.ord)
        return all(self.coefficient(e) == other.coefficient(e) for e in range(lo, int(hi)))

    def __add__(self, other):
        other = _lpromote(other)
        if other is NotImplemented:
            return other
        lo = min(self.ord, other.ord)
        if self.exact and other.exact:
            hi = max(self.ord + len(self.body), other.ord + len(other.body))
            cs = [self._c(e) + other._c(e) for e in range(lo, hi)]
            return LaurentSeries(lo, TruncatedSeries(tuple(cs), exact=True))
        hi = int(min(self.precision, other.precision))
        if lo >= hi:
            return LaurentSeries(hi - 1, TruncatedSeries((0,)))
        cs = [self._c(e) + other._c(e) for e in range(lo, hi)]
        return LaurentSeries(lo, TruncatedSeries(tuple(cs)))

    __radd__ = __add__

    def _c(self, e: int) -> Fraction:
        k = e - self.ord
        if 0 <= k < len(self.body):
            return self.body.coeffs[k]
        return Fraction(0)

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.ord, -self.body)

    def __sub__(self, other):
        other = _lpromote(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LaurentSeries(self.ord, self.body * other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return LaurentSeries(self.ord + other.ord, self.body * other.body)

    __rmul__ = __mul__

    def invert(self, truncation: int | None = None) -> "LaurentSeries":
        if self.is_zero():
            raise SeriesZeroDivision("division by a series that is zero to working precision")
        return LaurentSeries(-self.ord, self.body.invert(truncation))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise SeriesZeroDivision("division by zero constant")
            return self * (1 / Fraction(other))
        if isinstance(other, LaurentSeries):
            return self * other.invert()
        return NotImplemented

    def __pow__(self, k: int) -> "LaurentSeries":
        if k < 0:
            return self.invert() ** (-k)
        return LaurentSeries(self.ord * k, self.body ** k)

    def __str__(self) -> str:
        if self.is_zero():
            return "0" if self.exact else f"O(T^{self.ord + 1})"
        terms = [_lterm(c, self.ord + k) for k, c in enumerate(self.body.coeffs) if c]
        s = " + ".join(terms)
        return s if self.exact else f"{s} + O(T^{self.ord + len(self.body)})"


def _lterm(c: Fraction, e: int) -> str:
    if e == 0:
        return str(c)
    mono = "T" if e == 1 else f"T^{e}" if e > 0 else f"T^({e})"
    return mono if c == 1 else f"{c}*{mono}"


def _lpromote(x):
    if isinstance(x, LaurentSeries):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return LaurentSeries.constant(x)
    return NotImplemented


# functional spellings of the operations --------------------------------

def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def invert(a: TruncatedSeries, truncation: int | None = None) -> TruncatedSeries:
    return a.invert(truncation)


def sqrt(a: TruncatedSeries, truncation: int | None = None) -> TruncatedSeries:
    return a.sqrt(truncation)


def shift(a: TruncatedSeries, k: int = 1) -> TruncatedSeries:
    return a.shift(k)


def laurent_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a * b


def laurent_invert(a: LaurentSeries, truncation: int | None = None) -> LaurentSeries:
    return a.invert(truncation)


def order(a):
    """Least exponent with a nonzero coefficient; math.inf for exact zero."""
    if isinstance(a, TruncatedSeries):
        a = LaurentSeries.from_series(a)
    return a.order()


# JSON forms --------------------------------------------------------------

def series_to_json(s) -> dict:
    if isinstance(s, TruncatedSeries):
        ord_, body = 0, s
    else:
        ord_, body = s.ord, s.body
    out = {
        "ord": ord_,
        "truncation": body.truncation,
        "coeffs": [str(c) for c in body.coeffs],
    }
    if body.exact:
        out["exact"] = True
    return out


def laurent_from_json(d: dict) -> LaurentSeries:
    body = TruncatedSeries(tuple(Fraction(c) for c in d["coeffs"]), bool(d.get("exact", False)))
    if "truncation" in d and d["truncation"] != body.truncation and not body.exact:
        raise ValueError("truncation field disagrees with coefficient count")
    return LaurentSeries(int(d["ord"]), body)


def series_from_json(d: dict) -> TruncatedSeries:
    """Power-series reading; ``ord`` must be zero (the value is taken verbatim)."""
    if int(d.get("ord", 0)) != 0:
        raise ValueError("power series JSON must have ord 0")
    body = TruncatedSeries(tuple(Fraction(c) for c in d["coeffs"]), bool(d.get("exact", False)))
    if "truncation" in d and d["truncation"] != body.truncation and not body.exact:
        raise ValueError("truncation field disagrees with coefficient count")
    return body
