import pytest
from hypothesis import given
from hypothesis import strategies as st

from cphilab.qseries import (
    ModulusConflict,
    NotInvertible,
    ProgressionTarget,
    QSeries,
    WindowError,
    add,
    eval_complex,
    extract_progression,
    invert,
    mul,
    mul_schoolbook,
    pow_,
    reduce_mod,
    substitute_power,
    sum_series,
)
from oracles import count_partitions, product_expansion

coeff = st.integers(min_value=-(10**40), max_value=10**40)


@st.composite
def series(draw, modulus=None, max_len=25):
    coeffs = draw(st.lists(coeff, min_size=1, max_size=max_len))
    offset = draw(st.integers(min_value=-4, max_value=4))
    return QSeries.from_coeffs(coeffs, offset, modulus)


@st.composite
def unit_series(draw):
    s = draw(series())
    lead = draw(st.sampled_from([1, -1]))
    return QSeries.from_coeffs((lead,) + s.coeffs[1:], s.offset)


def poly(coeffs, trunc):
    return QSeries.from_poly(coeffs, trunc)


def test_difference_of_squares():
    assert mul(poly([1, 1], 10), poly([1, -1], 10)) == poly([1, 0, -1], 10)


def test_partition_series_times_euler_product_is_one():
    T = 200
    p = QSeries.from_coeffs([count_partitions(n) for n in range(T)])
    euler = QSeries.from_coeffs(product_expansion([(n, 1) for n in range(1, T)], T))
    assert mul(p, euler) == QSeries.one(T)


def test_mul_window_rule():
    a = QSeries.from_coeffs([1, 2, 3], offset=-1)  # [-1, 2)
    b = QSeries.from_coeffs([1] * 10, offset=2)  # [2, 12)
    c = mul(a, b)
    assert (c.offset, c.trunc) == (1, min(-1 + 12, 2 + 2))


def test_modulus_conflict():
    with pytest.raises(ModulusConflict, match="modulus conflict"):
        mul(reduce_mod(poly([1, 1], 5), 2), reduce_mod(poly([1, 1], 5), 3))
    with pytest.raises(ModulusConflict):
        mul(reduce_mod(poly([1, 1], 5), 2), poly([1, 1], 5))


@given(series(), series())
def test_kronecker_product_matches_schoolbook(a, b):
    assert mul(a, b).coeffs == mul_schoolbook(a, b).coeffs


@given(series(), series(), st.integers(min_value=2, max_value=5))
def test_blocked_product_is_deterministic(a, b, workers):
    assert mul(a, b, workers=workers).coeffs == mul(a, b).coeffs


@given(series(), series(), series())
def test_ring_laws(a, b, c):
    assert mul(a, b) == mul(b, a)
    left, right = mul(mul(a, b), c), mul(a, mul(b, c))
    T = min(left.trunc, right.trunc)
    assert left.truncate(T) == right.truncate(T)
    d1 = mul(a, add(b, c))
    d2 = add(mul(a, b), mul(a, c))
    T = min(d1.trunc, d2.trunc)
    assert d1.truncate(T) == d2.truncate(T)


def test_invert_geometric():
    assert invert(poly([1, -1], 5), 5).coeffs == (1, 1, 1, 1, 1)


def test_invert_euler_product_gives_partitions():
    euler = QSeries.from_coeffs(product_expansion([(n, 1) for n in range(1, 10)], 10))
    assert invert(euler, 10).coeffs == (1, 1, 2, 3, 5, 7, 11, 15, 22, 30)


@given(unit_series(), st.integers(min_value=1, max_value=30))
def test_invert_is_a_right_inverse(a, T):
    T = min(T, len(a))
    b = invert(a, T)
    assert b.offset == -a.offset
    assert mul(a, b).truncate(T) == QSeries.one(T)


@given(unit_series())
def test_invert_is_an_involution(a):
    T = len(a)
    back = invert(invert(a, T), T)
    assert back.truncate(min(back.trunc, a.trunc)) == a.truncate(min(back.trunc, a.trunc))


def test_invert_modular():
    a = reduce_mod(poly([3, 1, 4, 1, 5], 6), 7)
    b = invert(a, 6)
    assert mul(a, b) == reduce_mod(QSeries.one(6), 7)


def test_not_invertible():
    with pytest.raises(NotInvertible, match="not invertible"):
        invert(poly([2, 1], 5), 5)
    with pytest.raises(NotInvertible):
        invert(reduce_mod(poly([2, 1], 5), 4), 5)


def test_pow_binomial():
    assert pow_(poly([1, -1], 6), 4).coeffs == (1, -4, 6, -4, 1, 0)
    assert pow_(poly([1, -1], 6), 0) == QSeries.one(6)


def test_freshman_binomial_mod_four():
    # (1 - x^2)^2 = (1 - x)^4 mod 4
    T = 12
    assert reduce_mod(pow_(poly([1, 0, -1], T), 2), 4) == reduce_mod(pow_(poly([1, -1], T), 4), 4)


@given(series(modulus=2))
def test_frobenius_mod_two(f):
    square = mul(f, f)
    sub2 = substitute_power(f, 2)
    T =min(square.trunc, sub2.trunc)
    assert square.truncate(T) == sub2.truncate(T)
    assert pow_(f, 2).truncate(T) == sub2.truncate(T)


def test_substitute_power():
    assert substitute_power(poly([1, 1], 2), 3).coeffs == (1, 0, 0, 1, 0, 0)
    a = QSeries.from_coeffs([1, 2, 3], offset=-1)
    assert substitute_power(a, 1) is a
    s = substitute_power(a, 2)
    assert (s.offset, s.trunc) == (-2, 4)
    assert s.coeffs == (1, 0, 2, 0, 3, 0)


def test_substitute_partitions_into_half_indices():
    p = QSeries.from_coeffs([count_partitions(n) for n in range(20)])
    s = substitute_power(p, 2)
    assert all(s[n] == (count_partitions(n // 2) if n % 2 == 0 else 0) for n in range(40))


def test_extract_progression():
    s = extract_progression(poly([1, 1, 1, 1], 4), ProgressionTarget(1, 2))
    assert s.coeffs == (0, 1, 0, 1)
    a = poly([5, 6, 7], 3)
    assert extract_progression(a, ProgressionTarget(0, 1)) == a


@given(series(), st.integers(min_value=1, max_value=7))
def test_progressions_sum_to_whole(a, t):
    parts = [extract_progression(a, ProgressionTarget(r, t)) for r in range(t)]
    assert sum_series(parts) == a


def test_progression_target_validation():
    with pytest.raises(ValueError):
        ProgressionTarget(3, 3)
    with pytest.raises(ValueError):
        ProgressionTarget(0, 0)


def test_reduce_mod():
    assert reduce_mod(poly([1, -4, 6], 3), 4).coeffs == (1, 0, 2)
    with pytest.raises(ValueError):
        reduce_mod(poly([1], 1), 1)


@given(series())
def test_modulus_tower(a):
    assert reduce_mod(reduce_mod(a, 4), 2) == reduce_mod(a, 2)


def test_truncation_monotonicity():
    # same pipeline at two windows agrees on the overlap
    def pipeline(T):
        base = QSeries.from_coeffs(product_expansion([(n, 1) for n in range(1, T)], T))
        return mul(invert(pow_(base, 3), T), substitute_power(base, 2).truncate(T))

    small, large = pipeline(40), pipeline(90)
    assert large.truncate(40) == small


def test_unknown_coefficients_raise():
    a = poly([1, 2], 2)
    with pytest.raises(WindowError):
        a[2]
    assert a[-5] == 0


def test_text_roundtrip():
    a = QSeries.from_coeffs([3, -(10**50), 0, 7], offset=-2, modulus=None)
    assert QSeries.from_text(a.to_text()) == a
    b = reduce_mod(a, 5)
    text = b.to_text()
    assert text.splitlines()[0] == "#qseries offset=-2 trunc=2 modulus=5"
    assert text.splitlines()[1] == "-2 3"
    assert QSeries.from_text(text) == b


def test_text_truncated_body_detected():
    text = QSeries.from_coeffs([1, 2, 3]).to_text()
    with pytest.raises(ValueError, match="promises"):
        QSeries.from_text("\n".join(text.splitlines()[:-1]))


def test_eval_constant_and_linearity():
    z = complex(0.3, 0.8)
    assert eval_complex(QSeries.one(5), z).value == pytest.approx(1.0)
    a, b = poly([1, 2, 3, 4], 40), poly([0, -1, 0, 5], 40)
    lhs = eval_complex(add(a, b), z).value
    rhs = eval_complex(a, z).value + eval_complex(b, z).value
    assert abs(lhs - rhs) < 1e-12


def test_eval_rejects_lower_half_plane_and_short_windows():
    with pytest.raises(ValueError):
        eval_complex(QSeries.one(5), complex(0, -1))
    with pytest.raises(WindowError):
        eval_complex(QSeries.one(3), complex(0, 0.01), tol=1e-10)
