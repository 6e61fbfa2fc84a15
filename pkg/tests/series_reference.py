"""Independent high-precision reference values for the Bessel kernels.

Ascending power series summed in 40-digit arithmetic with mpmath; no code
from the package under test is used here.  Slow but exact enough to pin
every frozen constant in the suite.
"""

from mpmath import exp, factorial, mp, mpf

mp.dps = 40

_TINY = mpf(10) ** -35


def j_series(n: int, x) -> mpf:
    """J_n(x) from the ascending series sum_k (-1)^k (x/2)^(n+2k) / (k! (n+k)!)."""
    if n < 0:
        return (-1) ** n * j_series(-n, x)
    x = mpf(x)
    total = mpf(0)
    k = 0
    while True:
        term = (-1) ** k * (x / 2) ** (n + 2 * k) / (factorial(k) * factorial(n + k))
        total += term
        if abs(term) < _TINY and k > x / 2:
            return total
        k += 1


def i_scaled_series(n: int, x) -> mpf:
    """e^{-x} I_n(x) from the ascending series with the explicit scale factor."""
    n = abs(n)
    x = mpf(x)
    total = mpf(0)
    k = 0
    while True:
        term = (x / 2) ** (n + 2 * k) / (factorial(k) * factorial(n + k))
        total += term
        if abs(term) < _TINY * max(mpf(1), total) and k > x / 2:
            return exp(-x) * total
        k += 1
