from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_workbench.core import DiscreteSampleSet, DomainError, IntervalUnion, PeriodicSet
from spectral_workbench.search import verify_spectrum
from spectral_workbench.structure import (
    count_words,
    decompose,
    discover_period,
    gap_alphabet,
    landau_counts,
    periodic_from_sample,
    verify_decomposition,
    window_profile,
)


def brute_words(alphabet, L):
    """Oracle: breadth-first enumeration of all words with total length <= L."""
    count, frontier = 1, [F(0)]
    while frontier:
        nxt = [s + g for s in frontier for g in alphabet if s + g <= L]
        count += len(nxt)
        frontier = nxt
    return count


def test_gap_alphabet(lam_c):
    assert gap_alphabet(lam_c.sample(F(0), F(9))).gaps == (F(1, 3), F(7, 3))


@given(st.sets(st.fractions(min_value=F(1, 4), max_value=3, max_denominator=4), min_size=1, max_size=3),
       st.integers(1, 3))
def test_count_words_matches_enumeration(alphabet, L):
    alphabet = sorted(alphabet)
    assert count_words(alphabet, F(L)) == brute_words(alphabet, F(L))


def test_window_profile_golden(omega_c, lam_c):
    prof = window_profile(omega_c, lam_c.sample(F(0), F(9)), 3)
    full = [e for e in prof.entries if e.k in (0, 1, 2)]
    assert len(full) == 3
    for e in full:
        assert e.word == (F(1, 3), F(1, 3))
        assert e.dim == 3
    assert full[0].exit_gap == F(7, 3)
    assert prof.epsilon == 1 / (2 * F(3) * (prof.word_bound + 1))


@pytest.mark.parametrize(
    "which, lam, L, expected",
    [
        ("a", PeriodicSet(1, (0,)), 2, 1),
        ("b", PeriodicSet(2, (0, F(1, 2))), 2, 2),
        ("c", PeriodicSet(3, (0, F(1, 3), F(2, 3))), 3, 3),
    ],
)
def test_discover_period(which, lam, L, expected, omega_a, omega_b, omega_c):
    omega = {"a": omega_a, "b": omega_b, "c": omega_c}[which]
    window = lam.sample(F(0), 10 * lam.period)
    cands = discover_period(omega, window, [L])
    assert expected in cands
    assert cands == sorted(cands)
    for d in cands:
        assert verify_spectrum(omega, periodic_from_sample(window, d)).is_spectrum


def test_periodic_from_sample(lam_c):
    w = lam_c.sample(F(0), F(12))
    assert periodic_from_sample(w, 3) == lam_c


def test_landau_golden(lam_b):
    rep = landau_counts(lam_b.sample(F(0), F(100)), 10)
    assert rep.n_minus == rep.n_plus == 10
    assert rep.density == 1
    assert rep.csv_row() == "10,10,10,1.0"


def test_landau_rejects_long_window():
    with pytest.raises(DomainError):
        landau_counts(DiscreteSampleSet((F(0), F(1))), 5)


@settings(max_examples=40, deadline=None)
@given(st.sets(st.integers(0, 11), min_size=1, max_size=6), st.integers(1, 4), st.integers(3, 40))
def test_landau_brackets_density(idx, q, R):
    d = F(12, q)
    lam = PeriodicSet.from_points(d, [F(i, q) for i in idx])
    rep = landau_counts(lam.sample(F(0), 20 * max(d, R)), R)
    dens = lam.density
    assert rep.n_minus <= dens * R <= rep.n_plus
    assert rep.n_plus - rep.n_minus <= 2 * len(lam.offsets)


def test_decompose_golden(omega_c, omega_e, lam_c):
    dec = decompose(omega_c, 3)
    assert [(c.E, c.A) for c in dec.classes] == [(((F(0), F(1, 3)),), (0, 3, 6))]
    assert verify_decomposition(omega_c, lam_c, dec)
    dec = decompose(omega_e, 2)
    assert [(c.E, c.A) for c in dec.classes] == [
        (((F(0), F(1, 4)),), (0, 3)),
        (((F(1, 4), F(1, 2)),), (0, 2)),
    ]
    assert dec.component(0) == IntervalUnion.from_pairs([(0, F(1, 2)), (F(3, 2), 2)])


def test_decompose_requires_tiling(omega_c):
    with pytest.raises(DomainError):
        decompose(omega_c, 2)


@st.composite
def tiling_unions(draw):
    d = draw(st.integers(1, 4))
    q = draw(st.integers(1, 4))
    cuts = sorted(draw(st.sets(st.integers(1, q - 1), max_size=2))) if q > 1 else []
    edges = [F(0)] + [F(c, q * d) for c in cuts] + [F(1, d)]
    pairs = []
    for lo, hi in zip(edges, edges[1:]):
        A = draw(st.lists(st.integers(0, 3 * d), min_size=d, max_size=d, unique=True))
        pairs += [(lo + F(k, d), hi + F(k, d)) for k in A]
    omega = IntervalUnion.from_pairs(pairs).merged()
    return omega.translate(-omega.lefts[0]), d


@settings(max_examples=60, deadline=None)
@given(tiling_unions())
def test_decomposition_invariants(case):
    omega, d = case
    dec = decompose(omega, d)
    assert dec.check_invariants(omega) == []
    assert dec.reconstruct() == omega
    assert sum(c.measure() for c in dec.classes) == F(1, d)
    assert len({c.A for c in dec.classes}) == len(dec.classes)
