"""Independent reference computations used to freeze expected values.

Nothing here imports the package; each routine takes a different route
from the code it checks.
"""

from fractions import Fraction
from math import comb, factorial


def schoolbook_mul(a, b, n):
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        for j, y in enumerate(b[: n + 1 - i]):
            out[i + j] += Fraction(x) * Fraction(y)
    return out


def long_division_inverse(a, n):
    """Quotient of 1 by the polynomial a, to n+1 terms, by long division."""
    a = [Fraction(x) for x in a]
    rem = [Fraction(1)] + [Fraction(0)] * (n + len(a))
    quot = []
    for k in range(n + 1):
        q = rem[k] / a[0]
        quot.append(q)
        for i, x in enumerate(a):
            rem[k + i] -= q * x
    return quot


def binom_half(k):
    """Generalized binomial C(1/2, k)."""
    out = Fraction(1)
    for i in range(k):
        out *= (Fraction(1, 2) - i) / (i + 1)
    return out


def sqrt_one_plus_t2_coeffs(n):
    """sqrt(1+T^2) = sum C(1/2, k) T^(2k)."""
    return [binom_half(e // 2) if e % 2 == 0 else Fraction(0) for e in range(n + 1)]


def cos_derivatives(n):
    return [Fraction([1, 0, -1, 0][k % 4]) for k in range(n + 1)]


def sin_derivatives(n):
    return [Fraction([0, 1, 0, -1][k % 4]) for k in range(n + 1)]


def cos_maclaurin(n):
    """xi-coefficients of cos: (-1)^k / (2k)! at xi^(2k)."""
    return [Fraction((-1) ** (e // 2), factorial(e)) if e % 2 == 0 else Fraction(0) for e in range(n + 1)]


def bessel_xi_coeffs(n, upto):
    """Ascending series sum (-1)^k (xi/2)^(2k+n) / (k! (k+n)!), as xi-coefficients."""
    out = [Fraction(0)] * (upto + 1)
    k = 0
    while n + 2 * k <= upto:
        out[n + 2 * k] = Fraction((-1) ** k, factorial(k) * factorial(k + n)) / Fraction(2) ** (2 * k + n)
        k += 1
    return out


def bessel_float(n, x, terms=80):
    total, term = 0.0, (x / 2) ** n / factorial(n)
    for k in range(terms):
        total += term
        term *= -(x / 2) ** 2 / ((k + 1) * (k + 1 + n))
    return total


def laguerre_sum(n):
    """L_n(xi) = sum C(n,k) (-1)^k xi^k / k!."""
    return [Fraction(comb(n, k) * (-1) ** k, factorial(k)) for k in range(n + 1)]
