"""The operators D_phi acting on Taylor models, and their solution spaces.

A function analytic at 0 is stored through the series ``h`` with
``w = E(h)``, i.e. ``w(xi) = sum h_k xi^k / k!``.  In these coordinates the
stored coefficients are the derivatives at 0, differentiation is the shift
``h -> (h_1, h_2, ...)`` and the normalized integral from 0 is
multiplication by ``T``.  Consequently the action of a power series ``f`` on
``w`` (``sum a_n`` times the n-fold integral) is plain multiplication
``f * h``, and for ``phi = f / T^m``

    D_phi w = D^m (f w)   <->   h  ->  shift^m (f * h).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import InsufficientTruncation, NotPositiveDegree
from .series import (
    LaurentSeries,
    TruncatedSeries,
    laurent_from_json,
    parse_coefficient,
    series_to_json,
)

__all__ = [
    "SeriesFunction",
    "DiffOperator",
    "e_transform",
    "module_action",
    "apply",
    "degree",
    "solve",
    "solve_ivp",
    "lemma1_equal",
    "rational_rank",
]


@dataclass(frozen=True)
class SeriesFunction:
    """Taylor model ``E(h)`` at 0; ``h[k]`` is the k-th derivative at 0."""

    h: TruncatedSeries

    @property
    def truncation(self) -> int:
        return self.h.truncation

    @property
    def exact(self) -> bool:
        return self.h.exact

    def derivative(self, k: int = 1) -> "SeriesFunction":
        return SeriesFunction(self.h.shift(k))

    def integral(self) -> "SeriesFunction":
        return SeriesFunction(self.h.mul_t(1))

    def taylor_coefficients(self) -> list:
        """Coefficients of xi^k, i.e. h_k / k!."""
        return [c / factorial(k) for k, c in enumerate(self.h.coeffs)]

    def __add__(self, other: "SeriesFunction") -> "SeriesFunction":
        return SeriesFunction(self.h + other.h)

    def __sub__(self, other: "SeriesFunction") -> "SeriesFunction":
        return SeriesFunction(self.h - other.h)

    def __mul__(self, c) -> "SeriesFunction":
        return SeriesFunction(self.h * c)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.h.is_zero()

    def to_json(self) -> dict:
        out = series_to_json(self.h)
        out["e_transform"] = True
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SeriesFunction":
        if not data.get("e_transform", False):
            raise ValueError("JSON does not describe a solution (missing e_transform flag)")
        phi = laurent_from_json(data)
        if phi.ord < 0:
            raise ValueError("a Taylor model cannot have negative ord")
        return cls(phi.numerator(0))


def e_transform(f: TruncatedSeries) -> SeriesFunction:
    return SeriesFunction(f)


def module_action(f: TruncatedSeries, w: SeriesFunction) -> SeriesFunction:
    """``sum a_n (integral^n w)``; on Taylor models this is the product f * h."""
    return SeriesFunction(f * w.h)


@dataclass(frozen=True)
class DiffOperator:
    """D_phi, stored through phi; ``f`` and ``m`` give the form phi = f / T^m."""

    phi: LaurentSeries

    def __post_init__(self):
        if self.phi.exact and self.phi.is_zero():
            raise ValueError("phi = 0 gives the zero operator, which every function satisfies")

    @classmethod
    def from_polynomial(cls, coeffs: Sequence) -> "DiffOperator":
        """Operator of a_0 w^(n) + a_1 w^(n-1) + ... + a_n w, a_0 != 0."""
        coeffs = [parse_coefficient(c) for c in coeffs]
        if not coeffs or coeffs[0] == 0:
            raise ValueError("leading coefficient must be nonzero")
        n = len(coeffs) - 1
        return cls(LaurentSeries(-n, TruncatedSeries.polynomial(coeffs)))

    @property
    def m(self) -> int:
        return max(0, -self.phi.order())

    @property
    def f(self) -> TruncatedSeries:
        return self.phi.numerator(self.m)

    @property
    def degree(self):
        return -self.phi.order()

    @property
    def unit(self) -> TruncatedSeries:
        """u with phi = u / T^n; only defined for positive degree."""
        if self.degree < 1:
            raise NotPositiveDegree(
                f"degree {self.degree}: the equation has no solutions other than 0"
            )
        return self.phi.body

    def __call__(self, w: SeriesFunction) -> SeriesFunction:
        return apply(self, w)

    def to_json(self) -> dict:
        return series_to_json(self.phi)


def apply(op: DiffOperator, w: SeriesFunction) -> SeriesFunction:
    """D^m (f w) as a Taylor model; the truncation drops by m."""
    m = op.m
    if w.truncation < m and not w.exact:
        raise InsufficientTruncation(
            f"need truncation >= {m} to differentiate {m} times, have {w.truncation}"
        )
    prod = op.f * w.h
    if prod.truncation < m and not prod.exact:
        raise InsufficientTruncation(
            f"operator known only to truncation {op.f.truncation}; cannot take {m} derivatives"
        )
    return SeriesFunction(prod.shift(m))


def degree(op: DiffOperator):
    return op.degree


def solve(op: DiffOperator, N: int) -> list:
    """Basis E(T^k / u), k = 0..n-1, of the solutions of D_phi w = 0, phi = u / T^n."""
    n = op.degree
    u = op.unit
    inv = u.invert(N)
    return [SeriesFunction(inv.mul_t(k).truncate(N)) for k in range(n)]


def solve_ivp(op: DiffOperator, init: Sequence, N: int) -> SeriesFunction:
    """The unique solution with w^(k)(0) = init[k] for k < n.

    Writing w = E(p / u), the first n coefficients of p / u must be init, so
    p = (init * u) mod T^n.
    """
    n = op.degree
    u = op.unit
    if len(init) != n:
        raise ValueError(f"equation has degree {n}; expected {n} initial values, got {len(init)}")
    c = TruncatedSeries(tuple(parse_coefficient(x) for x in init))
    p = TruncatedSeries.polynomial((c * u).coeffs[:n])
    return SeriesFunction((p * u.invert(N)).truncate(N))


def lemma1_equal(f: TruncatedSeries, g: TruncatedSeries, m: int, n: int, w: SeriesFunction) -> bool:
    """Whether D^m(f w) == D^n(g w) for a pair with T^n f == T^m g."""
    if not f.mul_t(n).agrees(g.mul_t(m)):
        raise ValueError("hypothesis fails: T^n f != T^m g")
    # composed literally, not through DiffOperator, whose normal form already assumes this identity
    lhs, rhs = f * w.h, g * w.h
    for prod, k in ((lhs, m), (rhs, n)):
        if prod.truncation < k and not prod.exact:
            raise InsufficientTruncation(f"cannot differentiate {k} times at truncation {prod.truncation}")
    return lhs.shift(m).agrees(rhs.shift(n))


def rational_rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-exact Gaussian elimination."""
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        for r in range(rank + 1, len(mat)):
            if mat[r][col]:
                factor = mat[r][col] / mat[rank][col]
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank
