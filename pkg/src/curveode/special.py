"""Bessel and Laguerre functions obtained from the hyperbola and the projective line.

On the hyperbola y^2 - x^2 = 1, with the chart at the point at infinity
(1:1:0), the function ``j_n = y (x + y)^n`` has Laurent expansion
``T^-(n+1) s (1 + s)^n`` where ``s = sqrt(1 + T^2)``.  The normalized
solution of ``j_n(D) w = 0`` is ``J_n = E(g_n)`` with

    g_n = T^n / (s (1 + s)^n),

which this module builds in exact arithmetic and checks against the
classical ascending series of the Bessel function of the first kind.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .diffop import DiffOperator, SeriesFunction, apply, rational_rank, solve_ivp
from .errors import InsufficientTruncation
from .series import LaurentSeries, TruncatedSeries

ONE_PLUS_T2 = TruncatedSeries.polynomial([1, 0, 1])


def sqrt_one_plus_t2(N: int) -> TruncatedSeries:
    return ONE_PLUS_T2.sqrt(N)


def inv_sqrt_series(N: int) -> TruncatedSeries:
    """1/sqrt(1+T^2) from its closed form sum (-1)^k (2k)! / (4^k (k!)^2) T^(2k)."""
    coeffs = [Fraction(0)] * (N + 1)
    for k in range(N // 2 + 1):
        coeffs[2 * k] = Fraction((-1) ** k * factorial(2 * k), 4**k * factorial(k) ** 2)
    return TruncatedSeries(tuple(coeffs))


def j_unit(n: int, N: int) -> TruncatedSeries:
    """s (1 + s)^n, the unit part of the expansion of j_n; free term 2^n."""
    s = sqrt_one_plus_t2(N)
    return s * (1 + s) ** n


def j_operator(n: int, N: int) -> DiffOperator:
    """j_n(D), of degree n + 1."""
    return DiffOperator(LaurentSeries(-(n + 1), j_unit(n, N)))


def g_series(n: int, N: int) -> TruncatedSeries:
    return j_unit(n, N).invert().mul_t(n).truncate(N)


def bessel_series(n: int, N: int) -> SeriesFunction:
    """Taylor model of J_n to truncation N."""
    if n < 0:
        raise ValueError("order must be non-negative")
    return SeriesFunction(g_series(n, N))


def bessel_coefficient(n: int, k: int) -> Fraction:
    """Coefficient of xi^(n+2k) in J_n: (-1)^k / (k! (k+n)! 2^(2k+n))."""
    return Fraction((-1) ** k, factorial(k) * factorial(k + n) * 2 ** (2 * k + n))


def j0_closed_form(N: int) -> list:
    """xi-coefficients of J_0 as 1 - xi^2/4 + xi^4/((2!)^2 4^2) - ..."""
    out = [Fraction(0)] * (N + 1)
    for k in range(N // 2 + 1):
        out[2 * k] = Fraction((-1) ** k, 4**k * factorial(k) ** 2)
    return out


def j1_closed_form(N: int) -> list:
    """xi-coefficients of J_1 as xi/2 - xi^3/(2 2^3) + xi^5/(2! 3! 2^5) - ..."""
    out = [Fraction(0)] * (N + 1)
    for k in range(1, (N + 1) // 2 + 1):
        out[2 * k - 1] = Fraction((-1) ** (k + 1), 2 ** (2 * k - 1) * factorial(k - 1) * factorial(k))
    return out


def laguerre(n: int) -> SeriesFunction:
    """L_n = E((1 - T)^n), an exact polynomial model."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    return SeriesFunction(TruncatedSeries.polynomial([1, -1]) ** n)


def laguerre_coefficients(n: int) -> list:
    """xi-coefficients C(n,k) (-1)^k / k! of L_n."""
    return [Fraction(comb(n, k) * (-1) ** k, factorial(k)) for k in range(n + 1)]


def g_recurrence_holds(g_prev: TruncatedSeries, g_n: TruncatedSeries, g_next: TruncatedSeries) -> bool:
    """2 T^-1 g_n == g_{n-1} - g_{n+1}, computed in Laurent arithmetic."""
    lhs = LaurentSeries.monomial(-1, 2) * LaurentSeries.from_series(g_n)
    rhs = LaurentSeries.from_series(g_prev) - LaurentSeries.from_series(g_next)
    return lhs.agrees(rhs)


def j_recurrence_holds(j_prev: SeriesFunction, j_n: SeriesFunction, j_next: SeriesFunction) -> bool:
    """2 J_n' == J_{n-1} - J_{n+1} on Taylor models."""
    return (j_n.derivative() * 2).h.agrees((j_prev - j_next).h)


def hyperbola_identity_holds(N: int) -> bool:
    """2 (1 + s) == (1 + s)^2 - T^2 with s = sqrt(1 + T^2)."""
    s = sqrt_one_plus_t2(N)
    return ((1 + s) * 2).agrees((1 + s) ** 2 - TruncatedSeries.monomial(2))


def verify_recurrence(n: int, N: int, models: dict | None = None) -> bool:
    """Check 2 J_n' = J_{n-1} - J_{n+1} exactly, at both the g and J level.

    ``models`` may override J_{n-1}, J_n, J_{n+1} (keyed by order), e.g. with a
    perturbed family for a negative control.
    """
    if n < 1:
        raise ValueError("the recurrence needs n >= 1")
    fam = {k: bessel_series(k, N) for k in (n - 1, n, n + 1)}
    fam.update({k: v for k, v in (models or {}).items() if k in fam})
    g_ok = g_recurrence_holds(fam[n - 1].h, fam[n].h, fam[n + 1].h) and hyperbola_identity_holds(N)
    j_ok = j_recurrence_holds(fam[n - 1], fam[n], fam[n + 1])
    return g_ok and j_ok


def fundamental_system(n: int, N: int) -> list:
    """[J_n, D J_n, ..., D^n J_n]."""
    if N < 2 * n:
        raise InsufficientTruncation(f"need N >= {2 * n} for the order-{n} fundamental system")
    j = bessel_series(n, N)
    return [j.derivative(k) for k in range(n + 1)]


def initial_value_matrix(functions: list, size: int) -> list:
    return [[f.h[k] for k in range(size)] for f in functions]


@dataclass
class BesselFamily:
    n_max: int
    truncation: int
    g: list
    J: list

    @classmethod
    def build(cls, n_max: int, N: int) -> "BesselFamily":
        g = [g_series(n, N) for n in range(n_max + 1)]
        return cls(n_max, N, g, [SeriesFunction(x) for x in g])


def verification_report(n_max: int, N: int, perturb: bool = False) -> list:
    """Run the hyperbola/Bessel checks; returns ``[(name, passed), ...]``.

    With ``perturb`` the first stored nonzero coefficient of J_{min(1, n_max)}
    is altered before checking, so at least the checks touching it must fail.
    """
    fam = BesselFamily.build(n_max + 1 if n_max >= 1 else n_max, N)
    J = list(fam.J)
    if perturb:
        k = min(1, n_max)
        h = list(J[k].h.coeffs)
        h[k] += Fraction(1, 10**6)
        J[k] = SeriesFunction(TruncatedSeries(tuple(h)))

    results = []

    def check(name, fn):
        try:
            ok = bool(fn())
        except Exception:  # a crashing check is a failing check
            ok = False
        results.append((name, ok))

    check("closed_form_J0", lambda: J[0].taylor_coefficients() == j0_closed_form(N))
    if n_max >= 1:
        check("closed_form_J1", lambda: J[1].taylor_coefficients() == j1_closed_form(N))
        check("inv_sqrt_closed_form", lambda: inv_sqrt_series(N) == sqrt_one_plus_t2(N).invert())
        for n in range(n_max + 1):
            check(f"oracle_J{n}", lambda n=n: _matches_oracle(J[n], n))
        for n in range(1, n_max + 1):
            check(
                f"recurrence_n{n}",
                lambda n=n: g_recurrence_holds(J[n - 1].h, J[n].h, J[n + 1].h)
                and j_recurrence_holds(J[n - 1], J[n], J[n + 1]),
            )
        check("hyperbola_identity", lambda: hyperbola_identity_holds(N))
        for n in range(n_max + 1):
            check(f"fundamental_system_n{n}", lambda n=n: _fundamental_ok(J[n], n, N))
            check(f"ivp_n{n}", lambda n=n: _ivp_ok(J[n], n, N))
    return results


def _matches_oracle(j: SeriesFunction, n: int) -> bool:
    coeffs = j.taylor_coefficients()
    for e, c in enumerate(coeffs):
        k, r = divmod(e - n, 2)
        want = bessel_coefficient(n, k) if e >= n and r == 0 else 0
        if c != want:
            return False
    return True


def _fundamental_ok(j: SeriesFunction, n: int, N: int) -> bool:
    if N < 2 * n + 1:
        raise InsufficientTruncation("residual check needs N >= 2n + 1")
    op = j_operator(n, N)
    system = [j.derivative(k) for k in range(n + 1)]
    if any(not apply(op, w).is_zero() for w in system):
        return False
    return rational_rank(initial_value_matrix(system, n + 1)) == n + 1


def _ivp_ok(j: SeriesFunction, n: int, N: int) -> bool:
    init = [0] * n + [Fraction(1, 2**n)]
    return solve_ivp(j_operator(n, N), init, N) == j
