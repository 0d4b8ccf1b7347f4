"""Floating-point sampling of Taylor models with a heuristic truncation-error bound."""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .diffop import SeriesFunction
from .errors import CurveOdeError, TailBoundUnreliable

# number of trailing nonzero coefficient pairs used for the radius estimate
RATIO_WINDOW = 3


@dataclass(frozen=True)
class EvalGrid:
    lo: float
    hi: float
    count: int

    def __post_init__(self):
        if not (self.lo <= 0 <= self.hi):
            raise CurveOdeError(f"grid [{self.lo}, {self.hi}] must contain the initial point 0")
        if self.count < 2:
            raise CurveOdeError("grid needs at least 2 points")
        if self.lo == self.hi:
            raise CurveOdeError("grid interval is degenerate")

    @classmethod
    def parse(cls, text: str) -> "EvalGrid":
        """From ``lo:hi:count``."""
        try:
            lo, hi, count = text.split(":")
            return cls(float(lo), float(hi), int(count))
        except ValueError:
            raise CurveOdeError(f"grid must look like lo:hi:count, got {text!r}") from None

    def points(self) -> list:
        n = self.count - 1
        pts = [(self.lo * (n - i) + self.hi * i) / n for i in range(self.count)]
        step = (self.hi - self.lo) / n
        return [0.0 if abs(x) < 1e-9 * step else x for x in pts]


@dataclass(frozen=True)
class Sample:
    xi: float
    value: float
    tail_bound: float
    reliable: bool = True


@dataclass
class SampleTable:
    rows: list = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["xi", "value", "tail_bound"])
        for r in self.rows:
            writer.writerow([repr(r.xi), repr(r.value), repr(r.tail_bound)])
        return buf.getvalue()

    @property
    def reliable(self) -> bool:
        return all(r.reliable for r in self.rows)


def _log_abs(q: Fraction) -> float:
    return math.log(abs(q.numerator)) - math.log(q.denominator)


def _taylor(w: SeriesFunction) -> list:
    return [c / factorial(k) for k, c in enumerate(w.h.coeffs)]


def radius_estimate(w: SeriesFunction) -> float:
    """Heuristic radius of convergence from the last few nonzero xi-coefficients.

    For consecutive nonzero c_i, c_j (i < j) the ratio |c_i / c_j|^(1/(j-i))
    estimates the radius; the smallest over the window is returned.  Returns
    0.0 when fewer than two nonzero coefficients are stored.
    """
    c = _taylor(w)
    nz = [k for k, x in enumerate(c) if x]
    if len(nz) < 2:
        return 0.0
    pairs = list(zip(nz[:-1], nz[1:]))[-RATIO_WINDOW:]
    return min(
        math.exp((_log_abs(c[i]) - _log_abs(c[j])) / (j - i)) for i, j in pairs
    )


def eval_point(w: SeriesFunction, xi: float, rho: float | None = None) -> Sample:
    c = _taylor(w)
    value = 0.0
    for x in reversed(c):
        value = value * xi + float(x)
    if w.exact or xi == 0:
        return Sample(xi, value, 0.0)
    if rho is None:
        rho = radius_estimate(w)
    q = abs(xi) / rho if rho > 0 else math.inf
    if q >= 1:
        return Sample(xi, value, math.inf, reliable=False)
    N = w.truncation
    last = max(k for k, x in enumerate(c) if x)
    # |c_last| |xi|^last * sum_{j > N - last} q^j, summed in logs
    log_tail = (
        _log_abs(c[last]) + last * math.log(abs(xi)) + (N + 1 - last) * math.log(q) - math.log1p(-q)
    )
    return Sample(xi, value, math.exp(log_tail) if log_tail < 700 else math.inf)


def eval_function(w: SeriesFunction, grid: EvalGrid) -> SampleTable:
    """Partial sums of E(h) on the grid, each with an estimated tail bound.

    Points beyond the estimated radius are flagged unreliable (tail bound inf)
    and a TailBoundUnreliable warning is issued; evaluation is not aborted.
    """
    rho = None if w.exact else radius_estimate(w)
    table = SampleTable([eval_point(w, x, rho) for x in grid.points()])
    if not table.reliable:
        bad = sum(not r.reliable for r in table.rows)
        warnings.warn(
            f"{bad} grid point(s) lie beyond the estimated radius {rho:.4g}",
            TailBoundUnreliable,
            stacklevel=2,
        )
    return table
