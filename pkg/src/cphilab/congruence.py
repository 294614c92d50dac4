"""Finite congruence checks on arithmetic progressions, with Sturm certification."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime, primerange

from .arith import radical_product
from .frobenius import SeriesSpec, cphi_series
from .qseries import QSeries, WindowError


def sturm_bound(weight, N: int) -> int:
    """ceil(weight/12 * N^2 * prod_{p | N} (1 - 1/p^2)) for M_weight(Gamma_1(N)).

    A form with algebraic integer coefficients whose first nonzero coefficient
    mod m sits at an index above this value is 0 mod m.
    """
    weight = Fraction(weight)
    if weight.denominator != 1 or weight < 1:
        raise ValueError(f"Sturm bound needs a positive integral weight, got {weight}")
    if N < 1:
        raise ValueError(f"level must be positive, got {N}")
    return math.ceil(weight / 12 * N * N * radical_product(N))


def progression_level(N: int, r: int, t: int) -> int:
    """Level N t^2 / gcd(r, t) of the sieved form sum_{n = r mod t} a(n) q^n."""
    if t < 1 or not 0 <= r < t:
        raise ValueError(f"need 0 <= r < t, got r={r}, t={t}")
    return N * t * t // math.gcd(r, t)


_CLAIM_RE = re.compile(r"^(?P<spec>[^;]+);A=(?P<A>-?\d+);B=(?P<B>-?\d+);M=(?P<M>-?\d+)$")


@dataclass(frozen=True)
class CongruenceClaim:
    """coefficient(A n + B) = 0 mod M for all n >= 0.

    ``spec`` may be a plain label when the caller always supplies the series.
    """

    spec: SeriesSpec | str
    A: int
    B: int
    M: int

    def __post_init__(self):
        if self.A < 1:
            raise ValueError(f"A must be positive, got {self.A}")
        if self.B < 0:
            raise ValueError(f"B must be nonnegative, got {self.B}")
        if self.M < 2:
            raise ValueError(f"M must be at least 2, got {self.M}")

    @classmethod
    def parse(cls, text: str) -> "CongruenceClaim":
        m = _CLAIM_RE.match(text.replace(" ", ""))
        if not m:
            raise ValueError(f"malformed claim {text!r}; expected <spec>;A=<int>;B=<int>;M=<int>")
        return cls(SeriesSpec.parse(m["spec"]), int(m["A"]), int(m["B"]), int(m["M"]))

    def __str__(self):
        return f"{self.spec};A={self.A};B={self.B};M={self.M}"

    def normalized(self) -> "CongruenceClaim":
        """Same family of indices with 0 <= B < A (drops the finitely many n with An+B < B mod A)."""
        return CongruenceClaim(self.spec, self.A, self.B % self.A, self.M)


@dataclass(frozen=True)
class VerificationReport:
    claim: CongruenceClaim
    n_checked: int
    status: str  # "holds" | "counterexample" | "certified"
    counterexample: tuple | None = None  # (n, coefficient)
    sturm: int | None = None

    @property
    def holds(self):
        return self.status != "counterexample"

    def to_dict(self):
        return {
            "claim": str(self.claim),
            "n_checked": self.n_checked,
            "status": self.status,
            "counterexample": None
            if self.counterexample is None
            else {"n": self.counterexample[0], "value": str(self.counterexample[1])},
            "sturm_bound": self.sturm,
        }


def verify_claim(
    claim: CongruenceClaim,
    n_max: int,
    series: QSeries | None = None,
    form: tuple | None = None,
) -> VerificationReport:
    """Check coefficient(A n + B) mod M for 0 <= n <= n_max.

    ``form=(weight, level)`` asserts that the series is a modular form of that
    integral weight on Gamma_1(level); when every index up to the Sturm bound
    of the sieved form has been checked the claim is reported as certified.
    """
    A, B, M = claim.A, claim.B, claim.M
    top = A * n_max + B
    if series is None:
        if not isinstance(claim.spec, SeriesSpec):
            raise ValueError(f"no series supplied for label {claim.spec!r}")
        series = claim.spec.build(top + 1)
    elif series.trunc <= top:
        raise WindowError(
            f"series known below q^{series.trunc}; claim needs trunc {top + 1}", top + 1
        )
    for n in range(n_max + 1):
        c = series[A * n + B]
        if c % M:
            return VerificationReport(claim, n + 1, "counterexample", (n, c))
    bound = None
    status = "holds"
    if form is not None:
        weight, level = form
        bound = sturm_bound(weight, progression_level(level, B % A, A))
        if top >= bound:
            status = "certified"
    return VerificationReport(claim, n_max + 1, status, None, bound)


def scan_ramanujan(
    spec: SeriesSpec, ell_max: int, n_max: int, ell_min: int = 2, series: QSeries | None = None
) -> list[tuple[int, int]]:
    """Pairs (ell, beta) with coefficient(ell n + beta) = 0 mod ell for all n <= n_max.

    Surviving pairs are candidates only; nothing here proves a congruence.
    """
    ells = list(primerange(ell_min, ell_max + 1))
    if not ells:
        return []
    need = max(ells) * n_max + max(ells)
    if series is None:
        series = spec.build(need)
    elif series.trunc < need:
        raise WindowError(f"scan needs trunc {need}", need)
    found = []
    for ell in ells:
        for beta in range(ell):
            if all(series[ell * n + beta] % ell == 0 for n in range(n_max + 1)):
                found.append((ell, beta))
    return found


# Treneer-type claims c phi_k((P^3 ell^m n + k) / 24) = 0 mod ell^j


@dataclass(frozen=True)
class TreneerClaim:
    k: int
    P: int
    ell: int
    m: int
    j: int

    def __post_init__(self):
        if self.k < 1 or self.m < 1 or self.j < 1:
            raise ValueError("k, m and j must be positive")

    def hypothesis_failures(self) -> list[str]:
        out = []
        if not isprime(self.ell):
            out.append(f"ell={self.ell} is not prime")
        elif math.gcd(self.ell, 6 * self.k) != 1:
            out.append(f"gcd(ell, 6k) = {math.gcd(self.ell, 6 * self.k)} != 1")
        if not isprime(self.P):
            out.append(f"P={self.P} is not prime")
        modulus = 576 * self.k * self.ell**self.j
        if (self.P + 1) % modulus:
            out.append(f"P is not -1 mod 576 k ell^j = {modulus}")
        return out

    def indices(self, n_max: int):
        """(n, index) for 1 <= n <= n_max with gcd(n, P ell) = 1 and 24 | P^3 ell^m n + k."""
        step = self.P**3 * self.ell**self.m
        for n in range(1, n_max + 1):
            if math.gcd(n, self.P * self.ell) != 1:
                continue
            num = step * n + self.k
            if num % 24 == 0:
                yield n, num // 24


def verify_treneer(
    claim: TreneerClaim, n_max: int, max_index: int = 200_000, strict: bool = True
) -> VerificationReport:
    """Evaluate a user-supplied instance of the Treneer-type congruence at desk scale.

    With ``strict`` the hypotheses on P and ell are enforced; without it the
    same arithmetic is run on arbitrary parameters (useful for exploring
    which instances fail).
    """
    if strict:
        failures = claim.hypothesis_failures()
        if failures:
            raise ValueError("hypotheses not met: " + "; ".join(failures))
    pairs = list(claim.indices(n_max))
    spec = SeriesSpec("cphi", claim.k)
    modulus = claim.ell**claim.j
    as_claim = CongruenceClaim(spec, claim.P**3 * claim.ell**claim.m, 0, max(modulus, 2))
    if not pairs:
        return VerificationReport(as_claim, 0, "holds")
    top = max(idx for _, idx in pairs)
    if top >= max_index:
        raise WindowError(
            f"instance needs c phi_{claim.k} up to index {top}, above max_index={max_index}",
            top + 1,
        )
    series = cphi_series(claim.k, top + 1)
    for count, (n, idx) in enumerate(pairs, 1):
        if series[idx] % modulus:
            return VerificationReport(as_claim, count, "counterexample", (n, series[idx]))
    return VerificationReport(as_claim, len(pairs), "holds")
