"""Eta-quotients, Delta, the theta series of Q, and their modular metadata.

Q(m) = sum m_i^2 + sum_{i<j} m_i m_j on Z^(k-1).  Since
2 Q(m) = sum m_i^2 + (sum m_i)^2, theta coefficients are counted by a
dynamic program over (partial sum, partial sum of squares).

Metadata for eta-quotients follows the Gordon-Hughes-Newman criteria and
Ligozat's cusp-order formula: for prod eta(delta z)^r_delta on Gamma_0(N),
the order of vanishing at a cusp c/d (d | N) is

    N/24 * sum_delta gcd(d, delta)^2 r_delta / (gcd(d, N/d) d delta).

Characters are reported as the discriminant D of the Kronecker symbol
(D | .).  For integral weight w the character is ((-1)^w s | .) with
s = prod delta^r_delta; for half-integral weight (with the theta
multiplier (c/d) eps_d^(-2w) factored out) it is (2 s | .).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

import numpy as np
from sympy import divisors

from .arith import fundamental_discriminant, kronecker
from .qseries import (
    QSeries,
    WindowError,
    eval_complex,
    invert,
    mul,
    pow_,
    substitute_power,
    tail_bound,
)


@dataclass(frozen=True)
class EtaQuotient:
    """prod eta(delta z)^exponent, stored as sorted (delta, exponent) pairs."""

    factors: tuple

    def __post_init__(self):
        merged: dict[int, int] = {}
        for delta, r in self.factors:
            delta, r = int(delta), int(r)
            if delta < 1:
                raise ValueError(f"eta argument must be positive, got delta={delta}")
            if delta in merged:
                raise ValueError(f"repeated delta {delta}")
            merged[delta] = r
        object.__setattr__(
            self, "factors", tuple(sorted((d, r) for d, r in merged.items() if r))
        )

    @classmethod
    def parse(cls, text: str) -> "EtaQuotient":
        """Parse ``192^2,12^-2,96^-1``."""
        factors = []
        for term in text.replace(" ", "").split(","):
            if not term:
                continue
            base, _, exp = term.partition("^")
            try:
                factors.append((int(base), int(exp) if exp else 1))
            except ValueError:
                raise ValueError(f"malformed eta term {term!r}") from None
        return cls(tuple(factors))

    def __str__(self):
        return ",".join(f"{d}^{r}" for d, r in self.factors)

    def __mul__(self, other: "EtaQuotient") -> "EtaQuotient":
        acc = dict(self.factors)
        for d, r in other.factors:
            acc[d] = acc.get(d, 0) + r
        return EtaQuotient(tuple(acc.items()))

    @property
    def weight_halves(self) -> int:
        return sum(r for _, r in self.factors)

    @property
    def q_order_24(self) -> int:
        """24 times the leading q-exponent."""
        return sum(d * r for d, r in self.factors)


@dataclass(frozen=True)
class FormMeta:
    weight_halves: int
    level: int
    character_disc: int
    holomorphic_flag: str  # "cusp" | "holomorphic" | "weakly"
    cusp_orders: dict | None = field(default=None, compare=False)

    @property
    def weight(self) -> Fraction:
        return Fraction(self.weight_halves, 2)

    def character(self, d: int) -> int:
        return kronecker(self.character_disc, d)


# series


def euler_series(T: int) -> QSeries:
    """prod_{n>=1} (1 - q^n) through q^(T-1), by the pentagonal number theorem."""
    T = max(T, 0)
    coeffs = [0] * T
    k = 0
    while k * (3 * k - 1) // 2 < T:
        sign = -1 if k % 2 else 1
        coeffs[k * (3 * k - 1) // 2] = sign
        if k and k * (3 * k + 1) // 2 < T:
            coeffs[k * (3 * k + 1) // 2] = sign
        k += 1
    return QSeries.from_coeffs(coeffs)


def _euler_power(delta: int, r: int, n: int) -> QSeries:
    base = substitute_power(euler_series(-(-n // delta)), delta).truncate(n)
    return pow_(base, r)


def eta_quotient_series(eq: EtaQuotient, T: int, prefactor: bool = True) -> QSeries:
    """Expansion of the eta-quotient through q^(T-1).

    With ``prefactor=False`` the q^(sum delta r / 24) factor is dropped and
    the pure product prod (1 - q^(delta n))^r_delta is returned.
    """
    if prefactor:
        if eq.q_order_24 % 24:
            raise ValueError(
                f"fractional exponent: sum delta*r = {eq.q_order_24} is not divisible by 24"
            )
        offset = eq.q_order_24 // 24
    else:
        offset = 0
    n = T - offset
    if n <= 0:
        return QSeries.zero(T, T)
    num = QSeries.one(n)
    den = QSeries.one(n)
    for delta, r in eq.factors:
        if r > 0:
            num = mul(num, _euler_power(delta, r, n))
        else:
            den = mul(den, _euler_power(delta, -r, n))
    body = num if den.coeffs == (1,) + (0,) * (n - 1) else mul(num, invert(den, n))
    return body.shift(offset)


def delta_mod2(T: int) -> QSeries:
    """Delta(z) mod 2: ones exactly at the odd squares below T."""
    T = max(T, 0)
    coeffs = [0] * T
    m = 1
    while m * m < T:
        coeffs[m * m] = 1
        m += 2
    return QSeries(0, tuple(coeffs), T, 2)


def delta_series(T: int) -> QSeries:
    return eta_quotient_series(EtaQuotient(((1, 24),)), T)


# metadata


def _level_ok(eq: EtaQuotient, N: int) -> bool:
    return sum(Fraction(N * r, d) for d, r in eq.factors) % 24 == 0


def cusp_orders(eq: EtaQuotient, N: int) -> dict:
    """Ligozat order of vanishing at the cusps c/d, keyed by the divisor d of N."""
    out = {}
    for d in divisors(N):
        g = math.gcd(d, N // d)
        total = sum(Fraction(math.gcd(d, delta) ** 2 * r, delta) for delta, r in eq.factors)
        out[d] = Fraction(N, 24) * total / (g * d)
    return out


def _flag(orders) -> str:
    values = list(orders.values())
    if all(v > 0 for v in values):
        return "cusp"
    if all(v >= 0 for v in values):
        return "holomorphic"
    return "weakly"


def eta_quotient_meta(eq: EtaQuotient, level: int | None = None) -> FormMeta:
    if not eq.factors:
        return FormMeta(0, level or 1, 1, "holomorphic", {1: Fraction(0)})
    if eq.q_order_24 % 24:
        raise ValueError(
            f"Newman condition failed: sum delta*r_delta = {eq.q_order_24} is not 0 mod 24"
        )
    base = reduce(math.lcm, (d for d, _ in eq.factors))
    if level is None:
        level = base
        while not _level_ok(eq, level):
            level += base
    else:
        if level % base:
            raise ValueError(f"level {level} is not a multiple of every delta (lcm {base})")
        if not _level_ok(eq, level):
            raise ValueError(
                f"Newman condition failed: sum (N/delta)*r_delta is not 0 mod 24 for N={level}"
            )
    s = Fraction(1)
    for d, r in eq.factors:
        s *= Fraction(d) ** r
    w2 = eq.weight_halves
    if w2 % 2 == 0:
        disc = fundamental_discriminant((-1) ** (w2 // 2) * s)
    else:
        disc = fundamental_discriminant(2 * s)
    orders = cusp_orders(eq, level)
    return FormMeta(w2, level, disc, _flag(orders), orders)


def theta_meta(k: int) -> FormMeta:
    """Weight, level and character of the theta series of Q, with the even-k flag recorded as "weakly"."""
    if k < 2:
        raise ValueError(f"theta_meta needs k >= 2, got {k}")
    if k % 2:
        return FormMeta(k - 1, k, (-1) ** ((k - 1) // 2) * k, "holomorphic")
    return FormMeta(k - 1, 2 * k, 2 * k, "weakly")


# theta series


def quad_form(m) -> int:
    s = sum(m)
    return (sum(x * x for x in m) + s * s) // 2


def theta_series(k: int, T: int) -> QSeries:
    """Number of m in Z^(k-1) with Q(m) = n, for n < T."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    T = max(T, 0)
    if k == 1 or T <= 1:
        return QSeries.from_poly([1], T)
    E = 2 * (T - 1)  # 2 Q(m) <= E
    M = math.isqrt(E)  # |m_i| <= M since m_i^2 <= 2 Q(m)
    S = math.isqrt((k - 1) * E)  # |partial sum| <= sqrt(i * partial sumsq)
    dtype = np.int64 if (2 * M + 1) ** (k - 1) < 2**62 else object
    arr = np.zeros((2 * S + 1, E + 1), dtype=dtype)
    arr[S, 0] = 1
    for _ in range(k - 1):
        new = np.zeros_like(arr)
        for m in range(-M, M + 1):
            m2 = m * m
            if m >= 0:
                src, dst = slice(0, 2 * S + 1 - m), slice(m, 2 * S + 1)
            else:
                src, dst = slice(-m, 2 * S + 1), slice(0, 2 * S + 1 + m)
            new[dst, m2:] += arr[src, : E + 1 - m2]
        arr = new
    s_vals = np.arange(-S, S + 1)
    twice_q = s_vals[:, None] ** 2 + np.arange(E + 1)[None, :]
    mask = (twice_q <= E) & (arr != 0)
    out = [0] * T
    for two_n, count in zip(twice_q[mask].tolist(), arr[mask].tolist()):
        out[two_n // 2] += int(count)
    return QSeries.from_coeffs(out)


def theta_coeff_bound(k: int):
    """Crude bound B(n) >= #{m : Q(m) = n} used for evaluation tails."""
    return lambda n: (2.0 * math.sqrt(2.0 * n) + 1.0) ** (k - 1)


def theta_value(k: int, z: complex, tol: float = 1e-12, max_trunc: int = 200_000):
    """Numerically evaluate the theta series of Q at z with tail below tol."""
    if z.imag <= 0:
        raise ValueError(f"z must lie in the upper half-plane, got {z}")
    bound = theta_coeff_bound(k)
    abs_q = math.exp(-2 * math.pi * z.imag)
    T = 16
    while tail_bound(abs_q, T, bound) > tol:
        T *= 2
        if T > max_trunc:
            raise WindowError(
                f"theta at Im z = {z.imag:.3g} needs more than {max_trunc} terms for tol {tol}",
                T,
            )
    return eval_complex(theta_series(k, T), z, tol=tol, coeff_bound=bound)


@dataclass(frozen=True)
class SpotCheck:
    passed: bool
    residual: float
    lhs: complex
    rhs: complex
    tail: float


def automorphy_spot_check(k: int, gamma, z: complex, tol: float = 1e-8) -> SpotCheck:
    """Compare theta(gamma z) with chi_k(d) (cz+d)^((k-1)/2) theta(z) for odd k."""
    if k % 2 == 0 or k < 1:
        raise ValueError("automorphy spot checks are implemented for odd k only")
    (a, b), (c, d) = gamma
    if a * d - b * c != 1:
        raise ValueError(f"matrix {gamma} does not have determinant 1")
    if c % k:
        raise ValueError(f"matrix {gamma} is not in Gamma_0({k}): c = {c} not divisible by {k}")
    if z.imag <= 0:
        raise ValueError(f"z must lie in the upper half-plane, got {z}")
    gz = (a * z + b) / (c * z + d)
    inner_tol = tol * 1e-3
    left = theta_value(k, gz, inner_tol)
    right = theta_value(k, z, inner_tol)
    chi = kronecker((-1) ** ((k - 1) // 2) * k, d)
    factor = chi * (c * z + d) ** ((k - 1) // 2)
    lhs, rhs = left.value, factor * right.value
    scale = max(abs(lhs), abs(rhs))
    tail = left.tail_bound + abs(factor) * right.tail_bound
    if scale == 0 or tail / scale > tol:
        raise WindowError(f"tail bound {tail:.3e} exceeds tolerance {tol} relative to |value|")
    residual = abs(lhs - rhs) / scale
    return SpotCheck(residual < tol, residual, lhs, rhs, tail)
