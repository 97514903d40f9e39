import cmath
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_workbench.cyclotomic import (
    CyclotomicElement,
    IntegerPolynomial,
    RootOfUnityTerm,
    cyclotomic_polynomial,
    euler_phi,
    is_prime,
    normalize_element,
    prime_embeddings,
    sum_is_zero,
)

mpmath.mp.dps = 60


def hp_sum(terms):
    """Oracle: the same sum at 60 significant digits."""
    return abs(sum(t.coeff * mpmath.expjpi(2 * mpmath.mpf(t.exponent.numerator) / t.exponent.denominator)
                   for t in terms))


def test_phi9():
    assert cyclotomic_polynomial(9).coeffs == (1, 0, 0, 1, 0, 0, 1)


@pytest.mark.parametrize("n", [1, 2, 6, 12, 15, 30, 105])
def test_divisor_product_is_x_n_minus_1(n):
    prod = IntegerPolynomial((1,))
    for d in range(1, n + 1):
        if n % d == 0:
            prod = prod * cyclotomic_polynomial(d)
    assert prod.coeffs == (-1,) + (0,) * (n - 1) + (1,)
    assert cyclotomic_polynomial(n).degree == euler_phi(n)


def test_phi105_has_a_coefficient_minus_two():
    assert -2 in cyclotomic_polynomial(105).coeffs


def test_invalid_order():
    with pytest.raises(ValueError):
        cyclotomic_polynomial(0)


def test_reduction_of_x6_mod_phi9():
    e = normalize_element(CyclotomicElement.root(9, 6))
    assert e.coeffs == (-1, 0, 0, -1, 0, 0)


def test_cube_roots_cancel():
    assert sum_is_zero([RootOfUnityTerm(1, 0), RootOfUnityTerm(1, F(1, 3)), RootOfUnityTerm(1, F(2, 3))])
    assert not sum_is_zero([RootOfUnityTerm(1, 0), RootOfUnityTerm(1, F(1, 3))])
    with pytest.raises(ValueError):
        sum_is_zero([])


def test_exact_division():
    z = CyclotomicElement.root(5, 1)
    three_z = z * 3
    assert three_z / 3 == z
    with pytest.raises(ArithmeticError):
        three_z / 2


def test_exponent_reduced_mod_one():
    assert RootOfUnityTerm(2, F(7, 3)).exponent == F(1, 3)


terms = st.lists(
    st.builds(
        RootOfUnityTerm,
        st.integers(-3, 3),
        st.builds(F, st.integers(0, 23), st.sampled_from([1, 2, 3, 4, 6, 8, 12, 24])),
    ),
    min_size=1,
    max_size=8,
)


@settings(max_examples=300)
@given(terms)
def test_sum_is_zero_matches_high_precision(ts):
    v = hp_sum(ts)
    assert sum_is_zero(ts) == (v < mpmath.mpf(10) ** -40)


@given(st.integers(1, 40), st.integers(0, 200), st.integers(0, 200))
def test_ring_laws(n, j, k):
    a, b = CyclotomicElement.root(n, j), CyclotomicElement.root(n, k)
    assert a * b == CyclotomicElement.root(n, j + k)
    assert (a + b) - b == a
    assert a ** n == CyclotomicElement.root(n, 0)
    assert cmath.isclose((a * b).evaluate(), a.evaluate() * b.evaluate(), abs_tol=1e-9)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=30), st.integers(1, 30))
def test_canonical_form_preserves_value(coeffs, n):
    coeffs = coeffs[:n]
    e = CyclotomicElement(n, tuple(coeffs))
    c = e.normalized()
    assert len(c.coeffs) == euler_phi(n)
    assert cmath.isclose(e.evaluate(), c.evaluate(), abs_tol=1e-8)
    assert c == e


def test_is_prime_matches_trial_division():
    def slow(n):
        return n > 1 and all(n % k for k in range(2, int(n**0.5) + 1))

    assert [n for n in range(2000) if is_prime(n)] == [n for n in range(2000) if slow(n)]
    assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)


@pytest.mark.parametrize("order", [1, 2, 9, 12, 360, 27720])
def test_prime_embeddings_give_primitive_roots(order):
    gen = prime_embeddings(order)
    for _ in range(3):
        p, w = next(gen)
        assert (p - 1) % order == 0 and is_prime(p)
        assert pow(w, order, p) == 1
        assert all(pow(w, k, p) != 1 for k in range(1, min(order, 50)))


def test_large_order_polynomial_is_fast_and_correct():
    phi = cyclotomic_polynomial(27720)
    assert phi.degree == euler_phi(27720) == 5760
    # Phi_n(x) = Phi_rad(n)(x^(n/rad n))
    assert phi.coeffs[::12] == cyclotomic_polynomial(2310).coeffs
