from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from prolifera.pitch import (
    Kind,
    Series,
    SeriesError,
    TransformSpec,
    apply_transform,
    normalize_to_zero,
    retrograde_inversion_dual,
    self_inverses,
)

import oracle


@st.composite
def zero_series(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    rest = draw(st.permutations(list(range(1, n))))
    return Series([0] + list(rest))


def test_normalize_examples():
    assert normalize_to_zero([0, 3, 4, 2, 1, 6, 5]).notes == (0, 3, 4, 2, 1, 6, 5)
    expected = [(x - 4) % 7 for x in [4, 3, 1, 0, 5, 6, 2]]
    assert expected == [0, 6, 4, 3, 1, 2, 5]
    assert normalize_to_zero([4, 3, 1, 0, 5, 6, 2]).notes == tuple(expected)
    assert normalize_to_zero([1, 0]).notes == (0, 1)


def test_series_validation():
    with pytest.raises(SeriesError):
        Series([0, 1, 1])
    with pytest.raises(SeriesError):
        Series([])
    with pytest.raises(SeriesError):
        Series([1, 2, 3])


def test_apply_transform_examples():
    assert apply_transform(TransformSpec("RI", 2), [0, 3, 4, 2, 1, 6, 5]).notes == (4, 3, 1, 0, 5, 6, 2)
    s = Series([0, 1, 2, 3, 5, 4, 7, 6])
    assert apply_transform(TransformSpec("P", 0), s) == s
    assert apply_transform(TransformSpec("R", 1), s).notes == (7, 0, 5, 6, 4, 3, 2, 1)


def test_inversion_requires_zero_start():
    with pytest.raises(SeriesError, match="normalize"):
        apply_transform(TransformSpec("I", 0), [1, 0, 2])
    with pytest.raises(SeriesError):
        apply_transform(TransformSpec("RI", 3), [0, 1, 2])
    # P and R accept any series
    assert apply_transform(TransformSpec("R", 0), [2, 0, 1]).notes == (1, 0, 2)


def test_kind_parsing():
    assert Kind.parse("ri") is Kind.RI
    with pytest.raises(SeriesError):
        Kind.parse("IR")


@pytest.mark.parametrize("kind", list(Kind))
def test_matches_oracle_transform(kind):
    for n in range(1, 7):
        for s in oracle.all_series(n):
            for t in range(n):
                assert list(apply_transform(TransformSpec(kind, t), s)) == oracle.transform(kind.value, s, t, n)


@pytest.mark.parametrize("kind", list(Kind))
def test_transform_is_bijection(kind):
    n = 6
    for t in range(n):
        images = {apply_transform(TransformSpec(kind, t), s) for s in oracle.all_series(n)}
        assert len(images) == 120


@given(zero_series(), st.integers(0, 11))
def test_inversion_and_transposition_commute(s, t):
    t %= s.n
    inverted_then_moved = apply_transform(TransformSpec("I", t), s)
    moved = s.transpose(t)
    # invert the transposed series about its own first note
    moved_then_inverted = Series((2 * moved[0] - x) % s.n for x in moved)
    assert inverted_then_moved == moved_then_inverted


@given(zero_series(), st.integers(0, 11))
def test_retrograde_and_transposition_commute(s, t):
    t %= s.n
    assert s.retrograde().transpose(t) == s.transpose(t).retrograde()


@given(zero_series())
def test_double_inversion_is_identity(s):
    spec = TransformSpec("I", 0)
    assert apply_transform(spec, apply_transform(spec, s)) == s


def test_ri_ir_round_trip_exhaustive():
    for n in range(1, 8):
        for s in oracle.all_series(n):
            for t in range(n):
                b = apply_transform(TransformSpec("RI", t), s)
                assert retrograde_inversion_dual(b, (n - t) % n) == Series(s)


def test_ri_then_ir_returns_original():
    b = apply_transform(TransformSpec("RI", 2), [0, 3, 4, 2, 1, 6, 5])
    assert retrograde_inversion_dual(b, 5).notes == (0, 3, 4, 2, 1, 6, 5)


def test_self_inverse_counts():
    assert self_inverses(7, 0) == [0]
    assert len(self_inverses(7, 3)) == 1
    assert self_inverses(12, 0) == [0, 6]
    assert self_inverses(12, 1) == []
