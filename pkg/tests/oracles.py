"""Reference computations that share no code with the package."""
from fractions import Fraction
from math import comb, gamma


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def poly_mul(a, b, n):
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x == 0:
            continue
        for j, y in enumerate(b[: n + 1 - i]):
            out[i + j] += x * y
    return out


def poly_recip(a, n):
    out = [0] * (n + 1)
    out[0] = 1 / a[0]
    for m in range(1, n + 1):
        out[m] = -sum(a[j] * out[m - j] for j in range(1, min(m, len(a) - 1) + 1)) / a[0]
    return out


def lagrange_inverse(f, n):
    """Inverse-series coefficients by Lagrange inversion.

    ``[w^m] g = (1/m) [z^{m-1}] (z / f(z))^m`` with ``f = [0, 1, a2, ...]``.
    Works with Fractions for exact results.
    """
    h = poly_recip(list(f[1:]) + [0] * (n + 1), n)  # z / f(z)
    g = [0, 1] + [0] * (n - 1)
    power = [1] + [0] * n
    for m in range(1, n + 1):
        power = poly_mul(power, h, n)
        if m >= 2:
            g[m] = Fraction(power[m - 1]) / m if isinstance(power[m - 1], (int, Fraction)) \
                else power[m - 1] / m
    return g


def binom_gamma(x, m):
    """Generalized binomial through the gamma function (x > m - 1)."""
    return gamma(x + 1) / (gamma(m + 1) * gamma(x - m + 1))
