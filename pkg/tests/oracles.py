"""Slow, independent reference computations used only by the tests.

Nothing here imports the package: every oracle works on plain lists.
"""
import cmath
import itertools
import math
from functools import lru_cache


@lru_cache(maxsize=None)
def count_partitions(n, largest=None):
    """Partitions of n into parts <= largest, by direct recursion."""
    if largest is None:
        largest = n
    if n == 0:
        return 1
    return sum(count_partitions(n - part, part) for part in range(1, min(n, largest) + 1))


def times_factor(coeffs, a, e):
    """coeffs * (1 - q^a)^e for any integer e, dense and truncated."""
    c = list(coeffs)
    for _ in range(abs(e)):
        if e > 0:
            for i in range(len(c) - 1, a - 1, -1):
                c[i] -= c[i - a]
        else:
            for i in range(a, len(c)):
                c[i] += c[i - a]
    return c


def product_expansion(factors, T):
    """prod over (a, e) of (1 - q^a)^e through q^(T-1)."""
    c = [1] + [0] * (T - 1)
    for a, e in factors:
        if a < T:
            c = times_factor(c, a, e)
    return c


def cphi2_product(T):
    factors = [(4 * n - 2, 1) for n in range(1, T)]
    factors += [(2 * n - 1, -4) for n in range(1, T)]
    factors += [(4 * n, -1) for n in range(1, T)]
    return product_expansion(factors, T)


def naive_Q(m):
    return sum(x * x for x in m) + sum(m[i] * m[j] for i in range(len(m)) for j in range(i + 1, len(m)))


def naive_theta(k, T):
    out = [0] * T
    if k == 1:
        out[0] = 1 if T else 0
        return out
    bound = math.isqrt(2 * (T - 1))
    for m in itertools.product(range(-bound, bound + 1), repeat=k - 1):
        q = naive_Q(m)
        if q < T:
            out[q] += 1
    return out


def naive_cphi(k, T):
    """theta (naive) divided by prod (1 - q^n)^k via repeated prefix sums."""
    c = naive_theta(k, T)
    for n in range(1, T):
        c = times_factor(c, n, -k)
    return c


def lattice_theta(k, z, box):
    """sum over m in [-box, box]^(k-1) of exp(2 pi i z Q(m))."""
    total = 0j
    for m in itertools.product(range(-box, box + 1), repeat=k - 1):
        total += cmath.exp(2j * math.pi * z * naive_Q(m))
    return total


def euler_criterion(a, p):
    """Legendre symbol (a|p) for an odd prime p."""
    v = pow(a % p, (p - 1) // 2, p)
    return -1 if v == p - 1 else v
