"""Truncated Laurent series in q over Python integers.

A :class:`QSeries` stores the coefficients of q^offset, ..., q^(trunc-1).
Coefficients at exponents >= trunc are *unknown*, not zero, and every
operation tracks that window pessimistically.

Products go through Kronecker substitution: both operands are packed into
one big integer, multiplied (through GMP when gmpy2 is importable) and unpacked.
This is exact, so it agrees bit for bit with the schoolbook product
(:func:`mul_schoolbook`, kept as a reference).
"""
from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

try:
    import gmpy2
except ImportError:  # pragma: no cover
    gmpy2 = None


class ModulusConflict(ValueError):
    pass


class NotInvertible(ValueError):
    pass


class WindowError(ValueError):
    """Raised when a series window is too short; ``required`` is the needed trunc."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


@dataclass(frozen=True)
class ProgressionTarget:
    r: int
    t: int

    def __post_init__(self):
        if self.t < 1:
            raise ValueError(f"progression modulus must be positive, got t={self.t}")
        if not 0 <= self.r < self.t:
            raise ValueError(f"residue must satisfy 0 <= r < t, got r={self.r}, t={self.t}")


@dataclass(frozen=True, eq=False)
class QSeries:
    offset: int
    coeffs: tuple
    trunc: int
    modulus: int | None = field(default=None)

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if self.modulus is not None:
            if self.modulus < 1:
                raise ValueError("modulus must be positive")
            coeffs = tuple(c % self.modulus for c in coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if self.offset > self.trunc:
            raise ValueError(f"offset {self.offset} exceeds trunc {self.trunc}")
        if len(coeffs) != self.trunc - self.offset:
            raise ValueError(
                f"window [{self.offset}, {self.trunc}) needs {self.trunc - self.offset} "
                f"coefficients, got {len(coeffs)}"
            )

    # constructors

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], offset: int = 0, modulus=None):
        """Series whose window is exactly the given coefficients."""
        coeffs = tuple(coeffs)
        return cls(offset, coeffs, offset + len(coeffs), modulus)

    @classmethod
    def from_poly(cls, coeffs: Sequence[int], trunc: int, offset: int = 0, modulus=None):
        """A polynomial (known to be zero beyond its degree) viewed through [offset, trunc)."""
        n = trunc - offset
        if n < 0:
            raise ValueError("trunc below offset")
        coeffs = list(coeffs[:n]) + [0] * max(0, n - len(coeffs))
        return cls(offset, tuple(coeffs), trunc, modulus)

    @classmethod
    def one(cls, trunc: int, modulus=None):
        return cls.from_poly([1], trunc, modulus=modulus)

    @classmethod
    def zero(cls, offset: int, trunc: int, modulus=None):
        return cls(offset, (0,) * (trunc - offset), trunc, modulus)

    def __eq__(self, other):
        """Equal modulus, equal trunc and equal coefficients (zeros below an offset count)."""
        if not isinstance(other, QSeries):
            return NotImplemented
        if self.modulus != other.modulus or self.trunc != other.trunc:
            return False
        lo = min(self.offset, other.offset)
        return all(self[n] == other[n] for n in range(lo, self.trunc))

    def __hash__(self):
        s = self.normalize()
        return hash((s.offset, s.coeffs, s.trunc, s.modulus))

    # access

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n: int) -> int:
        """Coefficient of q^n; zero below the window, an error at or above trunc."""
        if n >= self.trunc:
            raise WindowError(f"coefficient of q^{n} unknown (trunc={self.trunc})", n + 1)
        if n < self.offset:
            return 0
        return self.coeffs[n - self.offset]

    def items(self):
        return zip(range(self.offset, self.trunc), self.coeffs)

    def valuation(self):
        """Exponent of the first nonzero coefficient, or None for the zero window."""
        for n, c in self.items():
            if c:
                return n
        return None

    def normalize(self) -> "QSeries":
        """Drop leading zero coefficients."""
        v = self.valuation()
        if v is None:
            return QSeries.zero(self.trunc, self.trunc, self.modulus)
        return QSeries(v, self.coeffs[v - self.offset:], self.trunc, self.modulus)

    def is_zero(self):
        return not any(self.coeffs)

    def truncate(self, trunc: int) -> "QSeries":
        if trunc > self.trunc:
            raise WindowError(f"cannot extend trunc {self.trunc} to {trunc}", trunc)
        if trunc <= self.offset:
            return QSeries.zero(trunc, trunc, self.modulus)
        return QSeries(self.offset, self.coeffs[: trunc - self.offset], trunc, self.modulus)

    def reframe(self, offset: int) -> "QSeries":
        """Same series with the window starting at ``offset`` (pads zeros or drops known zeros)."""
        if offset > self.trunc:
            raise ValueError("offset past trunc")
        if offset <= self.offset:
            pad = (0,) * (self.offset - offset)
            return QSeries(offset, pad + self.coeffs, self.trunc, self.modulus)
        dropped = self.coeffs[: offset - self.offset]
        if any(dropped):
            raise ValueError("reframe would drop nonzero coefficients")
        return QSeries(offset, self.coeffs[offset - self.offset:], self.trunc, self.modulus)

    def shift(self, s: int) -> "QSeries":
        """Multiply by q^s."""
        return QSeries(self.offset + s, self.coeffs, self.trunc + s, self.modulus)

    # operators

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, int):
            return scale(self, other)
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return pow_(self, e)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if len(self.coeffs) > 8 else ""
        return (
            f"QSeries(offset={self.offset}, trunc={self.trunc}, "
            f"modulus={self.modulus}, coeffs=[{head}{more}])"
        )

    # serialization

    def to_text(self) -> str:
        mod = "none" if self.modulus is None else str(self.modulus)
        lines = [f"#qseries offset={self.offset} trunc={self.trunc} modulus={mod}"]
        lines.extend(f"{n} {c}" for n, c in self.items())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "QSeries":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("#qseries"):
            raise ValueError("missing #qseries header")
        header = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
        offset, trunc = int(header["offset"]), int(header["trunc"])
        mod = None if header["modulus"] == "none" else int(header["modulus"])
        body = lines[1:]
        if len(body) != trunc - offset:
            raise ValueError(
                f"header promises {trunc - offset} coefficients, file holds {len(body)}"
            )
        coeffs = []
        for expected, line in zip(range(offset, trunc), body):
            n, c = line.split()
            if int(n) != expected:
                raise ValueError(f"expected exponent {expected}, found {n}")
            coeffs.append(int(c))
        return cls(offset, tuple(coeffs), trunc, mod)


def _common_modulus(a: QSeries, b: QSeries):
    if a.modulus != b.modulus:
        raise ModulusConflict(f"modulus conflict: {a.modulus} vs {b.modulus}")
    return a.modulus


# dense list kernels (relative indexing, truncated to n terms)


def _bigmul(x: int, y: int) -> int:
    if gmpy2 is not None and x.bit_length() > 50_000:
        return int(gmpy2.mpz(x) * gmpy2.mpz(y))
    return x * y


def _pack(xs, nbytes):
    return int.from_bytes(b"".join(x.to_bytes(nbytes, "little") for x in xs), "little")


def _kronecker(x: list, y: list, n: int) -> list:
    """First n coefficients of the product of integer lists x and y."""
    x, y = x[:n], y[:n]
    if not x or not y or n <= 0:
        return [0] * max(n, 0)
    mx = max(abs(c) for c in x)
    my = max(abs(c) for c in y)
    if mx == 0 or my == 0:
        return [0] * n
    # slot width: |product coefficient| < 2^(bits-1)
    bits = mx.bit_length() + my.bit_length() + min(len(x), len(y)).bit_length() + 2
    nbytes = (bits + 7) // 8
    width = 8 * nbytes

    def pack_signed(zs):
        pos = _pack([c if c > 0 else 0 for c in zs], nbytes)
        neg = _pack([-c if c < 0 else 0 for c in zs], nbytes)
        return pos - neg

    if min(x) >= 0 and min(y) >= 0:
        prod = _bigmul(_pack(x, nbytes), _pack(y, nbytes))
    else:
        prod = _bigmul(pack_signed(x), pack_signed(y))
    m = min(n, len(x) + len(y) - 1)
    raw = (prod & ((1 << (width * m)) - 1)).to_bytes(nbytes * m, "little")
    half, base = 1 << (width - 1), 1 << width
    out, carry = [], 0
    for i in range(m):
        d = int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") + carry
        if d >= half:
            d -= base
            carry = 1
        else:
            carry = 0
        out.append(d)
    return out + [0] * (n - m)


def _dense_mul(x: list, y: list, n: int, modulus=None, workers: int = 1) -> list:
    if workers > 1 and len(x) > 2 * workers:
        # blocks of x against all of y, summed in block order
        size = -(-len(x[:n]) // workers)
        starts = list(range(0, min(len(x), n), size))

        def part(s):
            return s, _kronecker(x[s:s + size], y, n - s)

        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(part, starts))
        out = [0] * n
        for s, p in parts:
            for i, c in enumerate(p):
                out[s + i] += c
    else:
        out = _kronecker(x, y, n)
    if modulus is not None:
        out = [c % modulus for c in out]
    return out


def _window_mul(a: QSeries, b: QSeries):
    offset = a.offset + b.offset
    trunc = min(a.offset + b.trunc, b.offset + a.trunc)
    return offset, max(trunc, offset)


def mul(a: QSeries, b: QSeries, workers: int = 1) -> QSeries:
    """Cauchy product with the window rule trunc = min(a.off + b.trunc, b.off + a.trunc)."""
    mod = _common_modulus(a, b)
    offset, trunc = _window_mul(a, b)
    coeffs = _dense_mul(list(a.coeffs), list(b.coeffs), trunc - offset, mod, workers)
    return QSeries(offset, tuple(coeffs), trunc, mod)


def mul_schoolbook(a: QSeries, b: QSeries) -> QSeries:
    mod = _common_modulus(a, b)
    offset, trunc = _window_mul(a, b)
    n = trunc - offset
    out = [0] * n
    for i, ai in enumerate(a.coeffs[:n]):
        if ai:
            for j, bj in enumerate(b.coeffs[: n - i]):
                out[i + j] += ai * bj
    return QSeries(offset, tuple(out), trunc, mod)


def _dense_invert(x: list, n: int, modulus=None) -> list:
    """First n coefficients of 1/x, by Newton iteration b <- b(2 - x b)."""
    lead = x[0]
    if modulus is None:
        if lead not in (1, -1):
            raise NotInvertible(f"not invertible: leading coefficient {lead} is not a unit")
        inv0 = lead
    else:
        try:
            inv0 = pow(lead, -1, modulus)
        except ValueError:
            raise NotInvertible(
                f"not invertible: leading coefficient {lead} has no inverse mod {modulus}"
            ) from None
    b = [inv0]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        xb = _dense_mul(x, b, prec, modulus)
        # e = 1 - x*b vanishes on [0, len(b))
        e = [-c for c in xb]
        e[0] += 1
        corr = _dense_mul(b, e, prec, modulus)
        b = b + corr[len(b):prec]
        if modulus is not None:
            b = [c % modulus for c in b]
    return b[:n]


def invert(a: QSeries, T: int) -> QSeries:
    """Reciprocal with a * invert(a, T) = 1 + O(q^T), clipped to the precision a carries."""
    if len(a.coeffs) == 0:
        raise NotInvertible("not invertible: empty window")
    offset = -a.offset
    trunc = min(T - a.offset, a.trunc - 2 * a.offset)
    n = max(trunc - offset, 0)
    coeffs = _dense_invert(list(a.coeffs), n, a.modulus) if n else []
    return QSeries(offset, tuple(coeffs), offset + n, a.modulus)


def pow_(a: QSeries, e: int) -> QSeries:
    if e < 0:
        raise ValueError("negative exponent; use invert")
    result = QSeries.one(a.trunc - a.offset, a.modulus)
    base = a
    while True:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if not e:
            return result
        base = mul(base, base)


def substitute_power(a: QSeries, d: int) -> QSeries:
    """q -> q^d."""
    if d < 1:
        raise ValueError("substitution exponent must be positive")
    if d == 1:
        return a
    offset, trunc = d * a.offset, d * a.trunc
    coeffs = [0] * (trunc - offset)
    coeffs[::d] = a.coeffs
    return QSeries(offset, tuple(coeffs), trunc, a.modulus)


def extract_progression(a: QSeries, target: ProgressionTarget) -> QSeries:
    r, t = target.r, target.t
    coeffs = tuple(c if (n - r) % t == 0 else 0 for n, c in a.items())
    return QSeries(a.offset, coeffs, a.trunc, a.modulus)


def reduce_mod(a: QSeries, m: int) -> QSeries:
    if m < 2:
        raise ValueError(f"modulus must be at least 2, got {m}")
    if a.modulus is not None and a.modulus % m:
        raise ModulusConflict(f"modulus conflict: cannot reduce mod {a.modulus} to mod {m}")
    return QSeries(a.offset, a.coeffs, a.trunc, m)


def lift(a: QSeries) -> QSeries:
    """Forget the modulus (coefficients stay as their least nonnegative residues)."""
    return QSeries(a.offset, a.coeffs, a.trunc, None)


def _aligned(a: QSeries, b: QSeries):
    mod = _common_modulus(a, b)
    offset = min(a.offset, b.offset)
    trunc = max(min(a.trunc, b.trunc), offset)
    xa = [a[n] if n < a.trunc else 0 for n in range(offset, trunc)]
    xb = [b[n] if n < b.trunc else 0 for n in range(offset, trunc)]
    return offset, trunc, mod, xa, xb


def add(a: QSeries, b: QSeries) -> QSeries:
    offset, trunc, mod, xa, xb = _aligned(a, b)
    return QSeries(offset, tuple(x + y for x, y in zip(xa, xb)), trunc, mod)


def sub(a: QSeries, b: QSeries) -> QSeries:
    offset, trunc, mod, xa, xb = _aligned(a, b)
    return QSeries(offset, tuple(x - y for x, y in zip(xa, xb)), trunc, mod)


def scale(a: QSeries, s: int) -> QSeries:
    return QSeries(a.offset, tuple(s * c for c in a.coeffs), a.trunc, a.modulus)


def exact_divide(a: QSeries, s: int) -> QSeries:
    """Divide every coefficient by s, raising if any division is inexact."""
    out = []
    for n, c in a.items():
        qt, rem = divmod(c, s)
        if rem:
            raise ArithmeticError(f"coefficient of q^{n} ({c}) is not divisible by {s}")
        out.append(qt)
    return QSeries(a.offset, tuple(out), a.trunc, None)


# numerics


@dataclass(frozen=True)
class Evaluation:
    value: complex
    tail_bound: float


def tail_bound(abs_q: float, trunc: int, coeff_bound: Callable[[int], float]) -> float:
    """Upper bound for sum_{n >= trunc} B(n) |q|^n.

    B must be positive with B(n+1)/B(n) nonincreasing (constants and
    polynomials qualify); the remainder is then dominated by a geometric series.
    """
    if abs_q == 0.0:
        return 0.0
    total, n = 0.0, trunc
    while True:
        b = coeff_bound(n)
        term = b * abs_q ** n
        if term == 0.0:
            return total
        total += term
        ratio = coeff_bound(n + 1) / b * abs_q
        if ratio < 1.0:
            rest = term * ratio / (1.0 - ratio)
            if rest <= 1e-6 * total:
                return total + rest
        n += 1


def eval_complex(
    a: QSeries,
    z: complex,
    tol: float | None = None,
    coeff_bound: Callable[[int], float] | None = None,
) -> Evaluation:
    """Sum c(n) e^(2 pi i n z) over the window and bound the omitted tail.

    Without ``coeff_bound`` the tail uses max(1, max |c(n)|) as a constant
    bound on unseen coefficients.
    """
    if z.imag <= 0:
        raise ValueError(f"z must lie in the upper half-plane, got {z}")
    if a.modulus is not None:
        raise ValueError("cannot evaluate a series reduced modulo m")
    q = cmath.exp(2j * math.pi * z)
    if coeff_bound is None:
        cmax = max([1] + [abs(c) for c in a.coeffs])
        coeff_bound = lambda n: float(cmax)  # noqa: E731
    bound = tail_bound(abs(q), a.trunc, coeff_bound)
    if tol is not None and bound > tol:
        raise WindowError(
            f"truncation at {a.trunc} leaves tail bound {bound:.3e} > tol {tol:.3e}", None
        )
    total = 0j
    # Horner in q from the top of the window
    for c in reversed(a.coeffs):
        total = total * q + c
    value = total * cmath.exp(2j * math.pi * z * a.offset)
    return Evaluation(value, bound)


def sum_series(series: Iterable[QSeries]) -> QSeries:
    it = iter(series)
    total = next(it)
    for s in it:
        total = add(total, s)
    return total
