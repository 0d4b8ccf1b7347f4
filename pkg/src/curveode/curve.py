"""Plane-curve charts, Newton lifting of the branch u(t), and the embedding into Laurent series.

A chart is an affine equation ``F(u, t) = 0`` with a point ``(u0, 0)`` on
it at which ``dF/du`` does not vanish.  Then ``t`` is a local parameter and
the branch through the point is a power series ``u(t)``; every coordinate
function declared in the chart is a rational expression in ``u`` and ``t``,
so substituting the branch sends it to a Laurent series in ``T``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator

from .errors import (
    CurveOdeError,
    DegenerateBranch,
    NotOnCurve,
    PrecisionExhausted,
)
from .expr import Expr, check_variables, evaluate, parse_expr
from .series import LaurentSeries, TruncatedSeries, parse_coefficient

CHART_VARIABLES = ("u", "t")


class BivariatePolynomial:
    """Sparse polynomial in (u, t) with rational coefficients, keyed by (deg_u, deg_t)."""

    def __init__(self, terms=None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def parse(cls, text: str) -> "BivariatePolynomial":
        node = parse_expr(text)
        check_variables(node, CHART_VARIABLES)
        lookup = {"u": cls({(1, 0): 1}), "t": cls({(0, 1): 1})}
        return evaluate(node, lookup.__getitem__, lambda q: cls({(0, 0): q}), _poly_reciprocal)

    def __add__(self, other):
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return BivariatePolynomial(terms)

    def __neg__(self):
        return BivariatePolynomial({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        terms = {}
        for (a, b), v in self.terms.items():
            for (c, d), w in other.terms.items():
                terms[(a + c, b + d)] = terms.get((a + c, b + d), 0) + v * w
        return BivariatePolynomial(terms)

    def __pow__(self, k: int):
        out = BivariatePolynomial({(0, 0): 1})
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, BivariatePolynomial) and self.terms == other.terms

    def __call__(self, u, t):
        return sum((c * u**i * t**j for (i, j), c in self.terms.items()), Fraction(0))

    def degree_u(self) -> int:
        return max((i for i, _ in self.terms), default=0)

    def derivative_u(self) -> "BivariatePolynomial":
        return BivariatePolynomial({(i - 1, j): i * c for (i, j), c in self.terms.items() if i})

    def t_coefficients(self) -> list:
        """[P_0, ..., P_d] with F = sum_i P_i(t) u^i, each P_i an exact series in t."""
        d = self.degree_u()
        rows = [dict() for _ in range(d + 1)]
        for (i, j), c in self.terms.items():
            rows[i][j] = c
        return [
            TruncatedSeries.polynomial([r.get(j, 0) for j in range(max(r, default=0) + 1)])
            for r in rows
        ]

    def __str__(self):
        parts = []
        for (i, j), c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                x for x in (f"u^{i}" if i > 1 else "u" if i else "", f"t^{j}" if j > 1 else "t" if j else "") if x
            )
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts) or "0"


def _poly_reciprocal(p: BivariatePolynomial) -> BivariatePolynomial:
    if set(p.terms) != {(0, 0)}:
        if not p.terms:
            raise ZeroDivisionError("division by zero")
        raise CurveOdeError("chart polynomial may only be divided by nonzero constants")
    return BivariatePolynomial({(0, 0): 1 / p.terms[(0, 0)]})


def _horner(coeffs: list, u: TruncatedSeries) -> TruncatedSeries:
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * u + c
    return acc


@dataclass(frozen=True)
class CurveChart:
    F: BivariatePolynomial
    u0: Fraction
    coords: dict = field(default_factory=dict)  # name -> Expr in u, t
    source: dict | None = None  # textual form, kept for serialization

    @classmethod
    def from_strings(cls, F: str, u0, coords: dict) -> "CurveChart":
        parsed = {}
        for name, text in coords.items():
            if name in CHART_VARIABLES:
                raise CurveOdeError(f"coordinate name {name!r} clashes with a chart variable")
            node = parse_expr(text)
            check_variables(node, CHART_VARIABLES)
            parsed[name] = node
        return cls(
            BivariatePolynomial.parse(F),
            parse_coefficient(str(u0)),
            parsed,
            {"F": F, "u0": str(u0), "coords": dict(coords)},
        )

    @classmethod
    def from_json(cls, data: dict) -> "CurveChart":
        try:
            return cls.from_strings(data["F"], data["u0"], data.get("coords", {}))
        except KeyError as exc:
            raise CurveOdeError(f"chart JSON is missing field {exc}") from None

    def to_json(self) -> dict:
        if self.source is None:
            raise ValueError("chart was not built from text")
        return self.source

    @property
    def names(self) -> tuple:
        return tuple(self.coords) + CHART_VARIABLES

    def check(self) -> None:
        if self.F(self.u0, Fraction(0)) != 0:
            raise NotOnCurve(f"F({self.u0}, 0) = {self.F(self.u0, Fraction(0))} != 0")
        if self.F.derivative_u()(self.u0, Fraction(0)) == 0:
            raise DegenerateBranch(f"dF/du vanishes at ({self.u0}, 0)")


HYPERBOLA = CurveChart.from_strings("u^2 - t^2 - 1", 1, {"x": "1/t", "y": "u/t"})
PROJECTIVE_LINE = CurveChart.from_strings("u - t", 0, {"s": "1/t"})

BUILTIN_CHARTS = {"hyperbola": HYPERBOLA, "line": PROJECTIVE_LINE}


def load_chart(spec: str) -> CurveChart:
    """Chart from a builtin name, an inline JSON object, or a JSON file path."""
    if spec in BUILTIN_CHARTS:
        return BUILTIN_CHARTS[spec]
    text = spec if spec.lstrip().startswith("{") else Path(spec).read_text()
    return CurveChart.from_json(json.loads(text))


def newton_steps(chart: CurveChart, N: int) -> Iterator[tuple]:
    """Yield ``(p, u)`` with ``u`` correct modulo T^p, for p = 1, 2, 4, ... up to N+1.

    Each step is u <- u - F(u, t) / F_u(u, t) at doubled precision.
    """
    chart.check()
    F = chart.F.t_coefficients()
    dF = chart.F.derivative_u().t_coefficients()
    u = TruncatedSeries((chart.u0,))
    p = 1
    yield p, u
    while p < N + 1:
        p = min(2 * p, N + 1)
        u = TruncatedSeries(u.coeffs + (Fraction(0),) * (p - len(u)))
        u = u - _horner(F, u) * _horner(dF, u).invert()
        yield p, u


def residual(chart: CurveChart, u: TruncatedSeries) -> TruncatedSeries:
    """F(u(t), t) as a series, at the truncation of ``u``."""
    return _horner(chart.F.t_coefficients(), u)


def expand_branch(chart: CurveChart, N: int) -> TruncatedSeries:
    """Branch u(t) through (u0, 0), known modulo T^(N+1).

    If the truncated branch is a polynomial solving F exactly it is returned
    flagged exact (the projective line chart gives u = T this way).
    """
    for _, u in newton_steps(chart, N):
        pass
    poly = TruncatedSeries.polynomial(u.coeffs)
    if residual(chart, poly).is_zero():
        return poly
    return u


def sharp_embed(expr, chart: CurveChart, N: int) -> LaurentSeries:
    """Laurent expansion at the chart point of a rational expression in the coordinates.

    ``N`` is the working truncation: the branch is lifted modulo T^(N+1) and
    exact divisors are inverted to the same relative precision.
    """
    node: Expr = parse_expr(expr) if isinstance(expr, str) else expr
    check_variables(node, chart.names)
    base = {
        "u": LaurentSeries.from_series(expand_branch(chart, N)),
        "t": LaurentSeries.monomial(1),
    }
    cache = {}

    def lookup(name):
        if name in base:
            return base[name]
        if name not in cache:
            cache[name] = _eval(chart.coords[name], base.__getitem__, N)
        return cache[name]

    result = _eval(node, lookup, N)
    if result.is_zero() and not result.exact:
        raise PrecisionExhausted(
            f"{expr} cancels to O(T^{result.ord + 1}); raise the working truncation"
        )
    return result


def _eval(node: Expr, lookup, N: int) -> LaurentSeries:
    return evaluate(
        node,
        lookup,
        LaurentSeries.constant,
        lambda v: v.invert(N if v.exact else None),
    )
