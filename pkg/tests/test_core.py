from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_workbench.core import (
    DiscreteSampleSet,
    DomainError,
    IntervalUnion,
    PeriodicSet,
    fiber,
    fold_multiplicity,
    measure,
    normalize_domain,
    to_rational,
)


@st.composite
def interval_unions(draw, max_n=4, max_den=6):
    """Disjoint rational unions with gaps, in no particular normalization."""
    n = draw(st.integers(1, max_n))
    q = draw(st.integers(1, max_den))
    steps = draw(st.lists(st.integers(1, 6), min_size=2 * n, max_size=2 * n))
    start = F(draw(st.integers(-10, 10)), q)
    pairs, x = [], start
    for i in range(n):
        a = x
        b = a + F(steps[2 * i], q)
        pairs.append((a, b))
        x = b + F(steps[2 * i + 1], q)
    return IntervalUnion.from_pairs(pairs)


def brute_fold(omega, d, x):
    """Count ``k`` with ``x + k/d`` in omega by scanning a range wide enough to cover it."""
    lo = int((omega.lefts[0] - x) * d) - 2
    hi = int((omega.rights[-1] - x) * d) + 2
    return sum(omega.contains(x + F(k) / d) for k in range(lo, hi + 1))


def test_to_rational_accepts_exact_and_rejects_float():
    assert to_rational("2/6") == F(1, 3)
    assert to_rational(4) == F(4)
    with pytest.raises(TypeError):
        to_rational(0.5)
    with pytest.raises(TypeError):
        to_rational(True)
    with pytest.raises(DomainError):
        to_rational("one third")


def test_interval_union_validation():
    with pytest.raises(DomainError):
        IntervalUnion.from_pairs([(0, 1), (F(1, 2), 2)])
    with pytest.raises(DomainError):
        IntervalUnion.from_pairs([(1, 1)])
    u = IntervalUnion.from_pairs([(2, 3), (0, 1)])
    assert u.lefts == (0, 2) and u.rights == (1, 3)


def test_merged_fuses_touching_pieces():
    u = IntervalUnion.from_pairs([(0, F(1, 2)), (F(1, 2), 1)])
    assert not u.is_normalized()
    assert u.merged().pairs() == [(0, 1)]


def test_normalize_example():
    omega, amap = normalize_domain(IntervalUnion.from_pairs([(0, 1), (2, 4)]))
    assert omega.pairs() == [(0, F(1, 3)), (F(2, 3), F(4, 3))]
    assert amap.scale == F(1, 3) and amap.shift == 0


def test_json_roundtrip(omega_c):
    assert IntervalUnion.from_json(omega_c.to_json()) == omega_c
    lam = PeriodicSet(3, (0, F(1, 3), F(2, 3)))
    assert PeriodicSet.from_json(lam.to_json()) == lam


def test_fold_examples(omega_c):
    assert fold_multiplicity(omega_c, 3).is_constant(3)
    F2 = fold_multiplicity(omega_c, 2)
    assert not F2.is_constant()
    assert F2.integral() == 1


def test_fiber_of_split_domain(omega_e):
    assert fiber(omega_e, F(0), F(2)) == [0, 3]
    assert fiber(omega_e, F(1, 3), F(2)) == [0, 2]


def test_periodic_set_basics():
    lam = PeriodicSet.from_points(2, [F(5, 2), 4, -2])
    assert lam.offsets == (0, F(1, 2))
    assert lam.density == 1
    assert lam.contains(F(-3, 2)) and not lam.contains(1)
    assert PeriodicSet(6, (0, F(1, 3), F(2, 3), 3, F(10, 3), F(11, 3))).minimal() == PeriodicSet(
        3, (0, F(1, 3), F(2, 3))
    )
    with pytest.raises(DomainError):
        PeriodicSet(1, (F(3, 2),))


def test_sample_is_closed_range():
    pts = PeriodicSet(1, (0,)).sample(F(-1), F(2)).points
    assert pts == (-1, 0, 1, 2)


def test_discrete_sample_set_membership():
    s = DiscreteSampleSet.from_unsorted([3, 1, F(1, 2)])
    assert s.points == (F(1, 2), 1, 3)
    assert F(1, 2) in s and 2 not in s
    with pytest.raises(DomainError):
        DiscreteSampleSet((1, 1))


@given(interval_unions())
def test_normalize_invariants(omega):
    out, amap = normalize_domain(omega)
    assert out.is_normalized()
    assert measure(out) == 1 and out.lefts[0] == 0
    # idempotent up to the identity map
    again, m2 = normalize_domain(out)
    assert again == out and m2.is_identity()


@settings(max_examples=60)
@given(interval_unions(), st.integers(1, 6), st.integers(1, 4))
def test_fold_matches_brute_force(omega, num, den):
    d = F(num, den)
    Fm = fold_multiplicity(omega, d)
    assert Fm.integral() == measure(omega)
    period = 1 / d
    for lo, hi, c in Fm.cells():
        for x in (lo, (lo + hi) / 2):
            assert brute_fold(omega, d, x) == c
        assert hi <= period
