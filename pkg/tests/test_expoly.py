import math
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_workbench.core import IntervalUnion
from spectral_workbench.expoly import (
    ExpPolynomial,
    eval_chi_hat,
    eval_numeric,
    from_domain,
    is_zero_exact,
    scan_zeros_numeric,
    zero_verdict,
)

mpmath.mp.dps = 50


def hp_abs(P, xi):
    return abs(sum(c * mpmath.expjpi(2 * mpmath.mpf((f * xi).numerator) / (f * xi).denominator)
                   for c, f in P.terms))


def test_from_domain_terms(omega_c):
    P = from_domain(omega_c)
    assert P.frequencies == (0, F(1, 3), 1, F(4, 3), 2, F(7, 3))
    assert P.coefficients == (-1, 1, -1, 1, -1, 1)


def test_shared_endpoints_cancel():
    P = from_domain(IntervalUnion.from_pairs([(0, F(1, 2)), (F(1, 2), 1)]))
    assert P.terms == ((-1, 0), (1, 1))


def test_zeros_of_unit_interval(omega_a):
    zs = scan_zeros_numeric(from_domain(omega_a), -2.5, 2.5)
    assert zs == pytest.approx([-2, -1, 0, 1, 2], abs=1e-9)


def test_zeros_of_two_piece_domain(omega_b):
    zs = scan_zeros_numeric(from_domain(omega_b), 0.1, 2.9)
    assert zs == pytest.approx([0.5, 1.5, 2.0, 2.5], abs=1e-9)


def test_zeros_of_three_piece_domain(omega_c):
    zs = scan_zeros_numeric(from_domain(omega_c), 0.1, 3.2)
    expected = [1 / 3, 2 / 3, 4 / 3, 5 / 3, 7 / 3, 8 / 3, 3]
    assert zs == pytest.approx(expected, abs=1e-9)


def test_golden_exact_zeros(omega_c):
    P = from_domain(omega_c)
    assert is_zero_exact(P, F(1, 3)).is_zero
    assert is_zero_exact(P, 3).is_zero
    assert not is_zero_exact(P, 1).is_zero
    assert is_zero_exact(P, 0).method == "exact"


def test_float_needs_numeric_path(omega_a):
    P = from_domain(omega_a)
    with pytest.raises(TypeError):
        is_zero_exact(P, 0.5)
    v = zero_verdict(P, 1.0)
    assert v.is_zero and v.method == "numeric" and v.witness < 1e-12


def test_chi_hat_at_zero(omega_c):
    assert eval_chi_hat(omega_c, 0) == 1
    assert abs(eval_chi_hat(omega_c, F(1, 3))) < 1e-12


def test_combines_repeated_frequencies():
    P = ExpPolynomial(((1, F(1, 2)), (2, F(1, 2)), (1, 0), (-1, 0)))
    assert P.terms == ((3, F(1, 2)),)


@st.composite
def small_domains(draw):
    q = draw(st.sampled_from([1, 2, 3, 4, 6]))
    n = draw(st.integers(1, 3))
    steps = draw(st.lists(st.integers(1, 4), min_size=2 * n, max_size=2 * n))
    pairs, x = [], F(0)
    for i in range(n):
        pairs.append((x, x + F(steps[2 * i], q)))
        x += F(steps[2 * i] + steps[2 * i + 1], q)
    return IntervalUnion.from_pairs(pairs)


@settings(max_examples=200)
@given(small_domains(), st.integers(-300, 300), st.integers(1, 24))
def test_exact_matches_high_precision(omega, p, q):
    P = from_domain(omega)
    xi = F(p, q)
    if xi == 0:
        return
    assert is_zero_exact(P, xi).is_zero == (hp_abs(P, xi) < mpmath.mpf(10) ** -35)


@settings(max_examples=100)
@given(small_domains(), st.integers(1, 200), st.integers(1, 24))
def test_hermitian_symmetry_of_zero_set(omega, p, q):
    P = from_domain(omega)
    xi = F(p, q)
    assert is_zero_exact(P, xi).is_zero == is_zero_exact(P, -xi).is_zero
    assert abs(eval_numeric(P, -xi) - eval_numeric(P, xi).conjugate()) < 1e-9


@settings(max_examples=40, deadline=None)
@given(small_domains())
def test_scan_finds_exact_zeros(omega):
    P = from_domain(omega)
    zs = scan_zeros_numeric(P, 0.05, 4.0)
    q = 24
    for k in range(2, 4 * q):
        xi = F(k, q)
        if is_zero_exact(P, xi).is_zero:
            assert any(math.isclose(z, float(xi), abs_tol=1e-6) for z in zs)
    for z in zs:
        assert abs(eval_numeric(P, z)) <= 1e-9
