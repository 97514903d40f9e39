"""
Exact arithmetic in Z[zeta_N].

An element of order ``N`` is an integer vector ``c`` standing for
``sum_k c[k] * zeta_N**k``. Sums are accumulated modulo ``x**N - 1`` (cheap, one slot
per term) and only reduced modulo the cyclotomic polynomial ``Phi_N`` when a canonical
form is needed. Two elements are equal iff their canonical forms agree, and a sum of
roots of unity vanishes iff its residue is divisible by ``Phi_N``.
"""
from __future__ import annotations

import dataclasses
import functools
import math
from fractions import Fraction
from typing import Iterable, Sequence

from .core import lcm_of_denominators, to_rational


@dataclasses.dataclass(frozen=True)
class IntegerPolynomial:
    """Dense integer polynomial, constant term first, trailing zeros trimmed."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: IntegerPolynomial) -> IntegerPolynomial:
        return IntegerPolynomial(tuple(_poly_mul(self.coeffs, other.coeffs)))

    def __repr__(self) -> str:
        return f"IntegerPolynomial({list(self.coeffs)})"


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _divmod_monic(num: Sequence[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    """Long division by a monic integer polynomial; both results are integral."""
    rem = list(num)
    dd = len(den) - 1
    if len(rem) <= dd:
        return [], rem
    quot = [0] * (len(rem) - dd)
    support = [(j, c) for j, c in enumerate(den) if c]
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i]
        if c:
            quot[i - dd] = c
            for j, dj in support:
                rem[i - dd + j] -= c * dj
    return quot, rem[:dd]


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@functools.lru_cache(maxsize=None)
def _cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    primes = _prime_factors(n)
    m = math.prod(primes)
    if m != n:
        # Phi_n(x) = Phi_rad(n)(x^(n/rad(n)))
        s = n // m
        out = [0] * ((len(_cyclotomic_coeffs(m)) - 1) * s + 1)
        for i, c in enumerate(_cyclotomic_coeffs(m)):
            out[i * s] = c
        return tuple(out)
    # squarefree: Phi_n = prod_{e | n} (x^e - 1)^mu(n/e); multiply first, then divide
    ups, downs = [], []
    for mask in range(1 << len(primes)):
        sub = [p for i, p in enumerate(primes) if mask >> i & 1]
        e = n // math.prod(sub)
        (ups if len(sub) % 2 == 0 else downs).append(e)
    poly = [1]
    for e in ups:  # times (x^e - 1)
        nxt = [0] * (len(poly) + e)
        for i, c in enumerate(poly):
            nxt[i + e] += c
            nxt[i] -= c
        poly = nxt
    for e in downs:  # exact division by (x^e - 1): q_i = q_{i-e} - r_i read from the top
        deg = len(poly) - 1 - e
        q = [0] * (deg + 1)
        for i in range(deg, -1, -1):
            q[i] = poly[i + e] + (q[i + e] if i + e <= deg else 0)
        poly = q
    return tuple(poly)


def cyclotomic_polynomial(n: int) -> IntegerPolynomial:
    """
    The ``n``-th cyclotomic polynomial, from ``prod_{e | n} (x**e - 1)**mu(n/e)`` on the
    squarefree part of ``n``.

    >>> cyclotomic_polynomial(6)
    IntegerPolynomial([1, -1, 1])
    """
    if n < 1:
        raise ValueError("cyclotomic order must be a positive integer")
    return IntegerPolynomial(_cyclotomic_coeffs(n))


def euler_phi(n: int) -> int:
    return len(_cyclotomic_coeffs(n)) - 1


@dataclasses.dataclass(frozen=True)
class RootOfUnityTerm:
    """``coeff * exp(2 pi i * exponent)`` with ``exponent`` reduced into ``[0, 1)``."""

    coeff: int
    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", to_rational(self.exponent) % 1)

    def evaluate(self) -> complex:
        e = self.exponent
        angle = 2 * math.pi * e.numerator / e.denominator
        return self.coeff * complex(math.cos(angle), math.sin(angle))


@dataclasses.dataclass(frozen=True)
class CyclotomicElement:
    """
    ``sum_k coeffs[k] * zeta_N**k``. ``coeffs`` may have length ``N`` (raw residue mod
    ``x**N - 1``) or ``phi(N)`` (canonical, reduced mod ``Phi_N``); equality and hashing
    always go through the canonical form.
    """

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        if len(self.coeffs) > self.order:
            raise ValueError("more coefficients than the order allows")

    @classmethod
    def zero(cls, order: int) -> CyclotomicElement:
        return cls(order, (0,) * euler_phi(order))

    @classmethod
    def from_terms(cls, terms: Iterable[RootOfUnityTerm], order: int | None = None) -> CyclotomicElement:
        terms = list(terms)
        if order is None:
            order = lcm_of_denominators(t.exponent for t in terms)
        acc = [0] * order
        for t in terms:
            k = t.exponent * order
            if k.denominator != 1:
                raise ValueError(f"exponent {t.exponent} is not a multiple of 1/{order}")
            acc[int(k)] += t.coeff
        return cls(order, tuple(acc))

    @classmethod
    def root(cls, order: int, k: int, coeff: int = 1) -> CyclotomicElement:
        acc = [0] * order
        acc[k % order] = coeff
        return cls(order, tuple(acc))

    def canonical(self) -> tuple[int, ...]:
        return _canonical(self.order, self.coeffs)

    def normalized(self) -> CyclotomicElement:
        return CyclotomicElement(self.order, self.canonical())

    def is_zero(self) -> bool:
        return not any(self.canonical())

    def _check(self, other: CyclotomicElement) -> None:
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def _lift(self, other) -> CyclotomicElement:
        if isinstance(other, int) and not isinstance(other, bool):
            return CyclotomicElement.root(self.order, 0, other)
        return other

    def __add__(self, other) -> CyclotomicElement:
        other = self._lift(other)
        self._check(other)
        a, b = self.canonical(), other.canonical()
        return CyclotomicElement(self.order, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __sub__(self, other) -> CyclotomicElement:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> CyclotomicElement:
        return (-self) + other

    def __neg__(self) -> CyclotomicElement:
        return CyclotomicElement(self.order, tuple(-x for x in self.coeffs))

    def __mul__(self, other) -> CyclotomicElement:
        if isinstance(other, int):
            return CyclotomicElement(self.order, tuple(other * x for x in self.coeffs))
        self._check(other)
        prod = _poly_mul(self.canonical(), other.canonical())
        return CyclotomicElement(self.order, _canonical(self.order, prod))

    __rmul__ = __mul__

    def __truediv__(self, k: int) -> CyclotomicElement:
        """Exact division by a nonzero integer (the canonical coefficients must all divide)."""
        if not isinstance(k, int) or k == 0:
            raise TypeError("only exact division by a nonzero int is supported")
        c = self.canonical()
        if any(x % k for x in c):
            raise ArithmeticError(f"element is not divisible by {k} in Z[zeta_{self.order}]")
        return CyclotomicElement(self.order, tuple(x // k for x in c))

    def __pow__(self, e: int) -> CyclotomicElement:
        if e < 0:
            raise ValueError("negative powers are not supported")
        out = CyclotomicElement.root(self.order, 0)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        return self.order == other.order and self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash((self.order, self.canonical()))

    def evaluate(self) -> complex:
        w = 2 * math.pi / self.order
        return sum(
            (c * complex(math.cos(w * k), math.sin(w * k)) for k, c in enumerate(self.coeffs) if c),
            0j,
        )


def _canonical(order: int, coeffs: Sequence[int]) -> tuple[int, ...]:
    phi = _cyclotomic_coeffs(order)
    deg = len(phi) - 1
    raw = list(coeffs)
    if len(raw) > order:  # fold back modulo x^N - 1 first
        folded = [0] * order
        for i, c in enumerate(raw):
            folded[i % order] += c
        raw = folded
    if len(raw) <= deg:
        return tuple(raw) + (0,) * (deg - len(raw))
    _, rem = _divmod_monic(raw, phi)
    return tuple(rem)


def normalize_element(e: CyclotomicElement) -> CyclotomicElement:
    """Reduce modulo ``Phi_N`` to the canonical representative of degree < phi(N)."""
    return e.normalized()


def sum_is_zero(terms: Iterable[RootOfUnityTerm]) -> bool:
    """
    Decide ``sum coeff_j * exp(2 pi i e_j) == 0`` exactly.

    >>> sum_is_zero([RootOfUnityTerm(1, Fraction(k, 3)) for k in range(3)])
    True
    """
    terms = list(terms)
    if not terms:
        raise ValueError("sum_is_zero needs at least one term")
    return CyclotomicElement.from_terms(terms).is_zero()


def common_order(exponents: Iterable[Fraction]) -> int:
    return lcm_of_denominators(to_rational(e) % 1 for e in exponents)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases; deterministic for ``n < 3.3e24``."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_embeddings(order: int, min_bits: int = 40):
    """
    Endless stream of ``(p, w)``: primes ``p = 1 (mod order)`` above ``2**min_bits`` and
    an element ``w`` of exact multiplicative order ``order`` mod ``p``.

    ``zeta_order -> w`` extends to a ring map ``Z[zeta] -> F_p``; an element it kills has
    norm divisible by ``p``.
    """
    qs = _prime_factors(order)
    k = (1 << min_bits) // order + 1
    while True:
        p = k * order + 1
        k += 1
        if not is_prime(p):
            continue
        for g in range(2, p):
            w = pow(g, (p - 1) // order, p)
            if all(pow(w, order // q, p) != 1 for q in qs):
                yield p, w
                break
