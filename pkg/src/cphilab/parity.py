"""Parity of coefficients of weakly holomorphic forms and of cbar phi_2(n)/4.

For a form sum c(n) q^(alpha n + beta) of weight k on Gamma_0(N0),

    f_t(z) = Delta(alpha t z)^(2^j) * sum c(n) q^(alpha n + beta)

is a cusp form of weight 12 * 2^j + k on Gamma_0(lcm(alpha t, N0)) once j
is large, and modulo 2 it factors as

    f_t = (sum_{n>=0} q^(alpha 2^j t (2n+1)^2)) * sum c(n) q^(alpha n + beta).

Sieving f_t on the progression r mod t and applying the Sturm bound gives
the explicit bound C_{r,t} on the smallest odd c(M) with M = r mod t.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import radical_product
from .etatheta import EtaQuotient, cusp_orders, delta_mod2, eta_quotient_meta, eta_quotient_series
from .frobenius import cphibar2_quarter_series
from .qseries import QSeries, WindowError, lift, mul, reduce_mod, substitute_power

# sum (cbar phi_2(n)/4) q^(12n-1) = eta(192z)^2 / (eta(12z)^2 eta(96z))
CPHIBAR2_ETA = EtaQuotient(((192, 2), (12, -2), (96, -1)))
# the same series mod 2, times eta(z)^2/eta(2z) = 1 mod 2; weight 0 on Gamma_0(576)
CPHIBAR2_COMPANION = CPHIBAR2_ETA * EtaQuotient(((1, 2), (2, -1)))


@dataclass(frozen=True)
class ParityParams:
    alpha: int
    beta: int
    t: int
    r: int = 0
    N0: int = 1
    weight_k: int = 0
    j: int = 0

    def __post_init__(self):
        if self.alpha < 1 or self.t < 1 or self.N0 < 1:
            raise ValueError("alpha, t and N0 must be positive")
        if self.j < 0:
            raise ValueError("j must be nonnegative")

    @property
    def N(self) -> int:
        return math.lcm(self.alpha * self.t, self.N0)

    @property
    def d(self) -> int:
        return math.gcd(self.alpha * self.r + self.beta, self.t)

    def with_j(self, j: int) -> "ParityParams":
        return ParityParams(self.alpha, self.beta, self.t, self.r, self.N0, self.weight_k, j)

    @classmethod
    def cphibar2(cls, t: int, r: int = 0, j: int | None = None) -> "ParityParams":
        return cls(12, -1, t, r, 576, 0, min_j_cphibar(t) if j is None else j)


# choice of j


def min_j_cphibar(t: int) -> int:
    """Smallest j >= 0 with 2^j > t / 12."""
    j = 0
    while 12 * 2**j <= t:
        j += 1
    return j


def min_j_eta(eq: EtaQuotient, alpha: int, t: int, N0: int, strict: bool = True, j_max: int = 64) -> int:
    """Smallest j with eq * Delta(alpha t z)^(2^j) vanishing at every cusp.

    ``strict`` asks for positive order at every cusp (a cusp form); otherwise
    nonnegative orders suffice.
    """
    level = math.lcm(alpha * t, N0, eta_quotient_meta(eq).level)
    for j in range(j_max + 1):
        product = eq * EtaQuotient(((alpha * t, 24 * 2**j),))
        orders = cusp_orders(product, level).values()
        if all(v > 0 for v in orders) if strict else all(v >= 0 for v in orders):
            return j
    raise ValueError(f"no j <= {j_max} clears the poles of {eq}")


def min_j(params: ParityParams, eq: EtaQuotient | None = None, strict: bool = True) -> int:
    """2^j > t/12 for the cbar phi_2 pipeline; Ligozat orders for a general eta-quotient."""
    if eq is None:
        if (params.alpha, params.beta, params.N0, params.weight_k) != (12, -1, 576, 0):
            raise ValueError("general inputs need their eta-quotient to locate the poles")
        return min_j_cphibar(params.t)
    return min_j_eta(eq, params.alpha, params.t, params.N0, strict)


# f_t and its mod-2 factorization


def cphibar2_form_series(T: int) -> QSeries:
    """sum (cbar phi_2(n)/4) q^(12n-1) through q^(T-1), starting at its leading term q^11."""
    n = max(-(-(T + 1) // 12), 1)
    s = substitute_power(cphibar2_quarter_series(n), 12).shift(-1)
    return s.truncate(max(T, s.offset)).normalize()


def delta_power_series(params: ParityParams, T: int) -> QSeries:
    """Delta(alpha t z)^(2^j) through q^(T-1)."""
    return eta_quotient_series(EtaQuotient(((params.alpha * params.t, 24 * 2**params.j),)), T)


def build_ft(c: QSeries, params: ParityParams, T: int, delta: QSeries | None = None) -> QSeries:
    """f_t = Delta(alpha t z)^(2^j) * c, known through q^(T-1).

    ``delta`` overrides the Delta factor (for negative controls).
    """
    lead = 2**params.j * params.alpha * params.t
    need_c = T - lead
    if c.trunc < need_c:
        raise WindowError(f"input series must be known below q^{need_c}", need_c)
    if delta is None:
        delta = delta_power_series(params, T - c.offset)
    elif delta.trunc < T - c.offset:
        raise WindowError(f"Delta factor must be known below q^{T - c.offset}", T - c.offset)
    return mul(lift(delta), lift(c)).truncate(T)


@dataclass(frozen=True)
class FactorizationCheck:
    passed: bool
    first_mismatch: int | None
    trunc: int


def odd_square_factor(params: ParityParams, T: int) -> QSeries:
    """sum_{n>=0} q^(alpha 2^j t (2n+1)^2) mod 2, through q^(T-1)."""
    step = params.alpha * params.t * 2**params.j
    return substitute_power(delta_mod2(-(-T // step)), step).truncate(T)


def check_mod2_factorization(
    c: QSeries, params: ParityParams, T: int, delta: QSeries | None = None
) -> FactorizationCheck:
    lhs = reduce_mod(build_ft(c, params, T, delta), 2)
    rhs = mul(odd_square_factor(params, T - c.offset), reduce_mod(lift(c), 2)).truncate(T)
    lo = min(lhs.offset, rhs.offset)
    for n in range(lo, T):
        if lhs[n] != rhs[n]:
            return FactorizationCheck(False, n, T)
    return FactorizationCheck(True, None, T)


# bounds


def bound_general_exact(params: ParityParams, level: int | None = None) -> Fraction:
    """((2^j 12 + k)/(12 alpha)) [N alpha^2 t^2 / d]^2 prod_{p | N alpha t}(1 - 1/p^2) - 2^j."""
    if params.t <= 1:
        raise ValueError("theorem requires t>1")
    N = params.N if level is None else level
    if level is not None and level % params.N:
        raise ValueError(f"level {level} is not a multiple of lcm(alpha t, N0) = {params.N}")
    a, t, j = params.alpha, params.t, params.j
    sieved = Fraction(N * a * a * t * t, params.d)
    prefactor = Fraction(2**j * 12 + params.weight_k, 12 * a)
    return prefactor * sieved**2 * radical_product(N * a * t) - 2**j


def bound_general(params: ParityParams, level: int | None = None) -> int:
    """Ceiling of :func:`bound_general_exact`; a valid upper bound never shrinks."""
    return math.ceil(bound_general_exact(params, level))


def bound_cphibar_exact(r: int, t: int, j: int | None = None) -> Fraction:
    """2^(18+j) 3^7 t^6 / d^2 * prod_{p | 6t}(1 - 1/p^2) - 2^j with d = gcd(12r - 1, t)."""
    if t < 1:
        raise ValueError("t must be positive")
    if j is None:
        j = min_j_cphibar(t)
    d = math.gcd(12 * r - 1, t)
    return Fraction(2 ** (18 + j) * 3**7 * t**6, d * d) * radical_product(6 * t) - 2**j


def bound_cphibar(r: int, t: int, j: int | None = None) -> int:
    return math.ceil(bound_cphibar_exact(r, t, j))


# search


@dataclass
class ParityReport:
    r: int
    t: int
    limit: int
    odd: list = field(default_factory=list)
    even_count: int = 0
    smallest_odd: int | None = None
    bound: int = 0
    bound_rounded: bool = False
    conclusive: bool = False
    verdict: str = ""

    def to_dict(self):
        return {
            "r": self.r,
            "t": self.t,
            "limit": self.limit,
            "odd": self.odd,
            "even_count": self.even_count,
            "smallest_odd": self.smallest_odd,
            "bound": str(self.bound),
            "conclusive": self.conclusive,
        }


def parity_search(r: int, t: int, limit: int, series: QSeries | None = None) -> ParityReport:
    """Parities of cbar phi_2(M)/4 for M = r mod t, 0 <= M <= limit."""
    if t < 1 or not 0 <= r < t:
        raise ValueError(f"need 0 <= r < t, got r={r}, t={t}")
    if series is None:
        series = cphibar2_quarter_series(limit + 1)
    elif series.trunc <= limit:
        raise WindowError(f"series must be known through index {limit}", limit + 1)
    exact = bound_cphibar_exact(r, t)
    bound = math.ceil(exact)
    report = ParityReport(r, t, limit, bound=bound, bound_rounded=exact.denominator != 1)
    for M in range(r, limit + 1, t):
        if series[M] % 2:
            report.odd.append(M)
        else:
            report.even_count += 1
    if report.odd:
        report.smallest_odd = report.odd[0]
        if not report.smallest_odd < bound:
            raise AssertionError(
                f"smallest odd index {report.smallest_odd} is not below C_(r,t) = {bound}"
            )
        report.conclusive = True
        report.verdict = "odd value found; infinitely many odd values in this progression"
    elif limit >= bound:
        report.conclusive = True
        report.verdict = "no odd value up to C_(r,t): every value in this progression is even"
    else:
        report.verdict = f"no odd value up to {limit} < C_(r,t); inconclusive"
    return report
