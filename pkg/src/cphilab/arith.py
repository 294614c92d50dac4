"""Small integer helpers: Kronecker symbol, square classes, radicals."""
from __future__ import annotations

from fractions import Fraction
from math import prod

from sympy import factorint, primefactors


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n) for arbitrary integers a, n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = (n & -n).bit_length() - 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
        n >>= v
    # Jacobi symbol (a|n), n odd positive
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def squarefree_part(x: Fraction | int) -> int:
    """The squarefree integer D with x = D * (rational square)."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("zero has no square class")
    sign = -1 if x < 0 else 1
    num = abs(x.numerator) * abs(x.denominator)
    return sign * prod(p for p, e in factorint(num).items() if e % 2)


def fundamental_discriminant(x: Fraction | int) -> int:
    """Discriminant of Q(sqrt(x)); 1 when x is a rational square."""
    d = squarefree_part(x)
    return d if d % 4 == 1 else 4 * d


def radical_product(n: int) -> Fraction:
    """prod over primes p | n of (1 - 1/p^2)."""
    out = Fraction(1)
    for p in primefactors(n):
        out *= 1 - Fraction(1, p * p)
    return out
