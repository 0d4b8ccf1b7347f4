from fractions import Fraction as Q

import pytest

from curveode.curve import HYPERBOLA, PROJECTIVE_LINE, sharp_embed
from curveode.diffop import DiffOperator, SeriesFunction, apply, rational_rank, solve, solve_ivp
from curveode.errors import InsufficientTruncation
from curveode.series import TruncatedSeries
from curveode.special import (
    bessel_series,
    fundamental_system,
    g_series,
    inv_sqrt_series,
    j_operator,
    laguerre,
    sqrt_one_plus_t2,
    verification_report,
    verify_recurrence,
)
from oracles import bessel_xi_coeffs, laguerre_sum


def test_j0_leading_terms():
    c = bessel_series(0, 6).taylor_coefficients()
    assert c == [1, 0, Q(-1, 4), 0, Q(1, 4 * 4 * 4), 0, Q(-1, 36 * 64)]


def test_j1_leading_terms():
    c = bessel_series(1, 7).taylor_coefficients()
    assert c == [0, Q(1, 2), 0, Q(-1, 16), 0, Q(1, 2 * 6 * 32), 0, Q(-1, 6 * 24 * 128)]


@pytest.mark.parametrize("n", [0, 1, 2, 5, 8])
def test_against_ascending_series(n):
    assert bessel_series(n, 30).taylor_coefficients() == bessel_xi_coeffs(n, 30)


@pytest.mark.parametrize("n", range(5))
def test_initial_conditions(n):
    h = bessel_series(n, 12).h
    assert all(h[k] == 0 for k in range(n))
    assert h[n] == Q(1, 2**n)


def test_parity():
    for n in range(5):
        h = g_series(n, 20).coeffs
        assert all(c == 0 for k, c in enumerate(h) if (k - n) % 2)


def test_inv_sqrt_closed_form():
    s = inv_sqrt_series(20)
    assert list(s.coeffs[:8]) == [1, 0, Q(-1, 2), 0, Q(3, 8), 0, Q(-5, 16), 0]
    assert s == sqrt_one_plus_t2(20).invert()
    assert (s * sqrt_one_plus_t2(20)).coeffs == (1,) + (0,) * 20
    assert SeriesFunction(s) == bessel_series(0, 20)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 10])
def test_laguerre(n):
    L = laguerre(n)
    assert L.exact
    assert L.taylor_coefficients() == laguerre_sum(n)


def test_recurrence():
    assert verify_recurrence(1, 20)
    assert verify_recurrence(5, 40)


def test_recurrence_negative_control():
    j = bessel_series(3, 20)
    h = list(j.h.coeffs)
    h[7] += 1
    assert not verify_recurrence(3, 20, models={3: SeriesFunction(TruncatedSeries(tuple(h)))})


def test_fundamental_system_small():
    (j0,) = fundamental_system(0, 10)
    assert apply(j_operator(0, 10), j0).is_zero()
    sys2 = fundamental_system(2, 12)
    assert len(sys2) == 3
    op = j_operator(2, 12)
    assert all(apply(op, w).is_zero() for w in sys2)
    assert rational_rank([[w.h[k] for k in range(3)] for w in sys2]) == 3
    dj1 = fundamental_system(1, 6)[1]
    assert (dj1.h[0], dj1.h[1]) == (Q(1, 2), 0)


def test_fundamental_system_truncation():
    with pytest.raises(InsufficientTruncation):
        fundamental_system(3, 5)


@pytest.mark.parametrize("n", range(4))
def test_curve_route_agrees(n):
    phi = sharp_embed(f"y*(x+y)^{n}", HYPERBOLA, 30)
    assert DiffOperator(phi) == j_operator(n, 30)
    w = solve_ivp(DiffOperator(phi), [0] * n + [Q(1, 2**n)], 30)
    assert w == bessel_series(n, 30)


def test_jn_solution_space_matches_basis():
    n, N = 2, 16
    op = j_operator(n, N)
    basis = solve(op, N)
    fs = fundamental_system(n, N)
    rows = [[w.h[k] for k in range(n + 1)] for w in basis + fs]
    assert rational_rank(rows) == n + 1


@pytest.mark.parametrize("n", range(6))
def test_laguerre_from_projective_line(n):
    phi = sharp_embed(f"s^{n + 1}/(s-1)^{n}", PROJECTIVE_LINE, 15)
    (w,) = solve(DiffOperator(phi), 15)
    w = w * (1 / w.h[0])
    assert w.h.agrees(laguerre(n).h)


def test_report_all_pass_and_fault_detected():
    assert all(ok for _, ok in verification_report(3, 20))
    failing = {name for name, ok in verification_report(3, 20, perturb=True) if not ok}
    assert "oracle_J1" in failing and "recurrence_n1" in failing


def test_report_j0_only():
    assert verification_report(0, 40) == [("closed_form_J0", True)]
