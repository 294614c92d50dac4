"""Generating functions for p(n), c phi_k(n) and the quarter of cbar phi_2(n).

Several functions are computed along two unrelated routes so they can be
checked against each other:

* ``cphi_series(2, T)`` (theta series times 1/P(q)^2) against
  ``cphi2_product_series(T)`` (the product over odd and even parts);
* ``4 * cphibar2_quarter_series(T)`` against ``sellers_series(T)``.
"""
from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from functools import lru_cache

from .etatheta import EtaQuotient, eta_quotient_series, theta_series
from .qseries import QSeries, exact_divide, invert, mul, scale, sub, substitute_power

_partition_table = [1]
_partition_lock = threading.Lock()


def _extend_partitions(n: int) -> None:
    # Euler: p(m) = sum_{k>=1} (-1)^(k+1) [p(m - k(3k-1)/2) + p(m - k(3k+1)/2)]
    with _partition_lock:
        table = _partition_table
        for m in range(len(table), n):
            total, k = 0, 1
            while True:
                g1 = k * (3 * k - 1) // 2
                if g1 > m:
                    break
                g2 = g1 + k
                term = table[m - g1] + (table[m - g2] if g2 <= m else 0)
                total += term if k % 2 else -term
                k += 1
            table.append(total)


def partition_numbers(n: int) -> list[int]:
    """[p(0), ..., p(n-1)]."""
    if len(_partition_table) < n:
        _extend_partitions(n)
    return _partition_table[:n]


def partition_series(T: int) -> QSeries:
    return QSeries.from_coeffs(partition_numbers(max(T, 0)))


@lru_cache(maxsize=32)
def cphi_series(k: int, T: int) -> QSeries:
    """theta_Q(q) / prod (1 - q^n)^k."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    inv_euler_k = eta_quotient_series(EtaQuotient(((1, -k),)), T, prefactor=False)
    return mul(theta_series(k, T), inv_euler_k)


def _times_binomial(coeffs: list, a: int) -> list:
    """coeffs * (1 - q^a), truncated to the same length."""
    return coeffs[:a] + [x - y for x, y in zip(coeffs[a:], coeffs)]


@lru_cache(maxsize=8)
def cphi2_product_series(T: int) -> QSeries:
    """prod (1 - q^(4n-2)) / ((1 - q^(2n-1))^4 (1 - q^(4n)))."""
    if T <= 0:
        return QSeries.zero(0, 0)
    num = [1] + [0] * (T - 1)
    for a in range(2, T, 4):
        num = _times_binomial(num, a)
    den = [1] + [0] * (T - 1)
    for a in range(1, T, 2):
        for _ in range(4):
            den = _times_binomial(den, a)
    for a in range(4, T, 4):
        den = _times_binomial(den, a)
    return mul(QSeries.from_coeffs(num), invert(QSeries.from_coeffs(den), T))


@lru_cache(maxsize=8)
def cphibar2_quarter_series(T: int) -> QSeries:
    """(c phi_2(n) - p(n/2)) / 4, with p(n/2) = 0 for odd n."""
    if T <= 0:
        return QSeries.zero(0, 0)
    p_half = substitute_power(partition_series(-(-T // 2)), 2).truncate(T)
    diff = sub(cphi_series(2, T), p_half)
    try:
        return exact_divide(diff, 4)
    except ArithmeticError as exc:
        raise ArithmeticError(f"mod-4 identity violated: {exc}") from None


def cphibar2_series(T: int) -> QSeries:
    return scale(cphibar2_quarter_series(T), 4)


@lru_cache(maxsize=8)
def sellers_series(T: int) -> QSeries:
    """4 q prod (1 - q^(16n))^2 / ((1 - q^n)^2 (1 - q^(8n)))."""
    if T <= 1:
        return QSeries.zero(0, max(T, 0))
    eq = EtaQuotient(((16, 2), (1, -2), (8, -1)))
    body = eta_quotient_series(eq, T - 1, prefactor=False)
    return scale(body, 4).shift(1).reframe(0)


@lru_cache(maxsize=8)
def treneer_f_series(k: int, T: int) -> QSeries:
    """theta_Q(q^24) / eta(24z)^k; the coefficient of q^n is c phi_k((n+k)/24)."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if T <= -k:
        return QSeries.zero(T, T)
    theta24 = substitute_power(theta_series(k, -(-(T + k) // 24)), 24)
    eta24k = eta_quotient_series(EtaQuotient(((24, k),)), T + 2 * k)
    return mul(theta24, invert(eta24k, T + k)).truncate(T)


# series specifications

_SPEC_RE = re.compile(r"^(partition|cphi2prod|cphibar2q|sellers|cphi:(\d+)|treneerf:(\d+))$")


@dataclass(frozen=True)
class SeriesSpec:
    kind: str
    k: int | None = None

    KINDS = ("partition", "cphi", "cphi2prod", "cphibar2q", "sellers", "treneerf")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown series kind {self.kind!r}")
        if self.kind in ("cphi", "treneerf"):
            if self.k is None or self.k < 1:
                raise ValueError(f"{self.kind} needs k >= 1")
        elif self.k is not None:
            raise ValueError(f"{self.kind} takes no parameter")

    @classmethod
    def parse(cls, text: str) -> "SeriesSpec":
        m = _SPEC_RE.match(text.strip())
        if not m:
            raise ValueError(
                f"malformed series spec {text!r}; expected one of "
                "partition | cphi:k | cphi2prod | cphibar2q | sellers | treneerf:k"
            )
        if m.group(2):
            return cls("cphi", int(m.group(2)))
        if m.group(3):
            return cls("treneerf", int(m.group(3)))
        return cls(m.group(1))

    def __str__(self):
        return f"{self.kind}:{self.k}" if self.k is not None else self.kind

    def build(self, T: int) -> QSeries:
        """The series through q^(T-1)."""
        if self.kind == "partition":
            return partition_series(T)
        if self.kind == "cphi":
            return cphi_series(self.k, T)
        if self.kind == "cphi2prod":
            return cphi2_product_series(T)
        if self.kind == "cphibar2q":
            return cphibar2_quarter_series(T)
        if self.kind == "sellers":
            return sellers_series(T)
        return treneer_f_series(self.k, T)
