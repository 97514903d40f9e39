"""
The torus embedding ``x -> (exp(2 pi i b_j x))_j, (exp(2 pi i a_j x))_j`` of frequencies
into ``C^n x C^n`` and the indefinite form ``v . w = <v1, w1> - <v2, w2>``.

For frequencies ``x, y`` the form evaluates to ``P(x - y)``; orthogonality of
exponentials therefore becomes mutual nullity of their images, and every exact decision
here is routed through that scalar identity.
"""
from __future__ import annotations

import dataclasses
import itertools
import math
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .core import (
    DiscreteSampleSet,
    DomainError,
    IntervalUnion,
    PeriodicSet,
    format_rational,
    lcm_of_denominators,
    to_rational,
)
from .cyclotomic import RootOfUnityTerm, euler_phi, prime_embeddings, sum_is_zero
from .expoly import from_domain, is_zero
from .newton import APVerdict, check_ap_zeroset

NUMERIC_RANK_TOL = 1e-8


@dataclasses.dataclass(frozen=True)
class PhiVector:
    first: tuple[complex, ...]
    second: tuple[complex, ...]
    base_point: object
    exponents: Optional[tuple[Fraction, ...]] = None  # right-end phases then left-end phases, mod 1

    @property
    def n(self) -> int:
        return len(self.first)

    def as_array(self) -> np.ndarray:
        return np.array(self.first + self.second, dtype=complex)


def phi(omega: IntervalUnion, x) -> PhiVector:
    """Image of the frequency ``x``; rational ``x`` also carries the exact phases."""
    if isinstance(x, float):
        first = tuple(complex(np.exp(2j * np.pi * float(b) * x)) for b in omega.rights)
        second = tuple(complex(np.exp(2j * np.pi * float(a) * x)) for a in omega.lefts)
        return PhiVector(first, second, x)
    x = to_rational(x)
    exps = tuple((b * x) % 1 for b in omega.rights) + tuple((a * x) % 1 for a in omega.lefts)
    vals = tuple(RootOfUnityTerm(1, e).evaluate() for e in exps)
    n = omega.n
    return PhiVector(vals[:n], vals[n:], x, exps)


def null_form(v: PhiVector, w: PhiVector) -> complex:
    if v.n != w.n:
        raise ValueError(f"dimension mismatch: {v.n} vs {w.n}")
    a = sum((p * q.conjugate() for p, q in zip(v.first, w.first)), 0j)
    b = sum((p * q.conjugate() for p, q in zip(v.second, w.second)), 0j)
    return a - b


def null_form_is_zero(v: PhiVector, w: PhiVector) -> bool:
    """Exact vanishing of ``v . w`` from the phases carried by both vectors."""
    if v.exponents is None or w.exponents is None:
        raise ValueError("exact decision needs vectors built at rational points")
    if v.n != w.n:
        raise ValueError(f"dimension mismatch: {v.n} vs {w.n}")
    n = v.n
    terms = [RootOfUnityTerm(1, p - q) for p, q in zip(v.exponents[:n], w.exponents[:n])]
    terms += [RootOfUnityTerm(-1, p - q) for p, q in zip(v.exponents[n:], w.exponents[n:])]
    return sum_is_zero(terms)


def orthogonal(omega: IntervalUnion, x: Fraction, y: Fraction) -> bool:
    """``phi(x) . phi(y) == 0``, decided as ``P(x - y) == 0``."""
    return is_zero(from_domain(omega), to_rational(x) - to_rational(y))


@dataclasses.dataclass(frozen=True)
class SpanBasis:
    points: tuple
    rank: int
    method: str  # "exact" | "numeric"
    mutually_null: Optional[bool] = None

    def to_json(self) -> dict:
        return {
            "basis": [format_rational(p) if isinstance(p, Fraction) else p for p in self.points],
            "rank": self.rank,
            "method": self.method,
            "mutually_null": self.mutually_null,
        }


def _modular_prefix_ranks(rows: list[list[int]], p: int) -> list[int]:
    """Rank of every prefix of ``rows`` over ``F_p``, by incremental elimination."""
    pivots: list[tuple[int, list[int]]] = []
    ranks = []
    for row in rows:
        row = [x % p for x in row]
        for col, piv in pivots:
            c = row[col]
            if c:
                row = [(x - c * y) % p for x, y in zip(row, piv)]
        for col, x in enumerate(row):
            if x:
                inv = pow(x, -1, p)
                pivots.append((col, [(y * inv) % p for y in row]))
                break
        ranks.append(len(pivots))
    return ranks


def _exact_prefix_ranks(exponents: list[list[int]], order: int) -> list[int]:
    """
    Ranks over ``Q(zeta_order)`` of every prefix of the matrix ``(zeta**e)``.

    Reduction through ``zeta -> w (mod p)`` never raises a rank, and a nonzero ``r x r``
    minor survives at some prime unless the primes' product divides its norm, which is
    at most ``r**(r phi / 2)`` in absolute value (Hadamard). Taking the maximum over
    enough primes therefore gives the exact ranks.
    """
    width = len(exponents[0])
    r = min(len(exponents), width)
    bound_bits = euler_phi(order) * r * max(1.0, math.log2(r)) / 2 + 1
    best = [0] * len(exponents)
    cap = [min(i + 1, width) for i in range(len(exponents))]
    bits = 0.0
    for p, w in prime_embeddings(order):
        ranks = _modular_prefix_ranks([[pow(w, e, p) for e in row] for row in exponents], p)
        best = [max(a, b) for a, b in zip(best, ranks)]
        bits += math.log2(p)
        if best == cap or bits > bound_bits:
            return best


def _mutually_null(P, points: Sequence[Fraction]) -> bool:
    return all(is_zero(P, x - y) for x, y in itertools.combinations(points, 2))


def rank_span(omega: IntervalUnion, points, check_null: bool = True) -> SpanBasis:
    """
    Greedy basis of ``span{phi(x) : x in points}``, scanning points in increasing order.

    All-rational input is handled exactly: ranks over ``Q(zeta_N)``, which equal those
    over C, come from elimination modulo enough primes to certify them. Any float
    forces the numeric path with singular-value threshold ``1e-8``. A mutually null family of rank above ``n`` is impossible and
    raises ``AssertionError``.
    """
    pts = tuple(points)
    if not pts:
        raise DomainError("rank_span needs at least one point")
    n = omega.n
    exact = not any(isinstance(p, float) for p in pts)
    if exact:
        pts = tuple(sorted(to_rational(p) for p in pts))
        exps = [[(e * x) % 1 for e in omega.rights + omega.lefts] for x in pts]
        order = lcm_of_denominators(e for row in exps for e in row)
        ranks = _exact_prefix_ranks([[int(e * order) for e in row] for row in exps], order)
        basis = [x for x, r, prev in zip(pts, ranks, [0] + ranks) if r > prev]
        method = "exact"
    else:
        pts = tuple(sorted(float(p) for p in pts))
        basis, kept = [], []
        for x in pts:
            trial = kept + [phi(omega, x).as_array()]
            s = np.linalg.svd(np.array(trial), compute_uv=False)
            if s[-1] > NUMERIC_RANK_TOL:
                kept = trial
                basis.append(x)
        method = "numeric"

    null = None
    if check_null and exact:
        null = _mutually_null(from_domain(omega), pts)
        if null and len(basis) > n:
            raise AssertionError(
                f"mutually null family of rank {len(basis)} exceeds n = {n}"
            )
    return SpanBasis(tuple(basis), len(basis), method, null)


def membership_test(omega: IntervalUnion, basis: SpanBasis, x) -> bool:
    """``x`` is orthogonal to every basis point (hence, for a spectrum, belongs to it)."""
    P = from_domain(omega)
    x = to_rational(x)
    return all(is_zero(P, x - y) for y in basis.points)


def basis_translate_period(
    omega: IntervalUnion, window: DiscreteSampleSet, basis: SpanBasis, d
) -> bool:
    """Whether ``basis + d`` lies inside the observed window."""
    d = to_rational(d)
    return all(y + d in window for y in basis.points)


@dataclasses.dataclass(frozen=True)
class ExtensionCertificate:
    orthogonal: bool
    checks: int
    failing: Optional[tuple[Fraction, Fraction, int]] = None
    ap: Optional[APVerdict] = None

    def to_json(self) -> dict:
        out = {
            "orthogonal": self.orthogonal,
            "method": "exact",
            "checks": self.checks,
            "failing": None,
            "ap": self.ap.to_json() if self.ap is not None else None,
        }
        if self.failing is not None:
            x, y, k = self.failing
            out["failing"] = {"x": format_rational(x), "y": format_rational(y), "k": k}
        return out


class ExtensionError(DomainError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def periodic_extension(
    omega: IntervalUnion, gamma: DiscreteSampleSet, basis: SpanBasis, d
) -> tuple[PeriodicSet, ExtensionCertificate]:
    """
    Extend a mutually orthogonal family ``gamma`` to ``gamma + dZ``.

    Preconditions (all checked exactly): ``gamma`` is mutually null, ``basis`` is a
    subset of ``gamma`` spanning ``V(gamma)``, and ``basis + d`` lies in ``gamma``.
    The returned certificate checks every offset difference ``delta + kd`` for
    ``|k| <= n`` and, when ``d`` qualifies, the progression ``dZ`` itself.
    """
    d = to_rational(d)
    if d <= 0:
        raise ExtensionError("d must be positive")
    P = from_domain(omega)
    n = omega.n
    pts = gamma.points
    for x, y in itertools.combinations(pts, 2):
        if not is_zero(P, y - x):
            raise ExtensionError("gamma is not mutually null", (x, y))
    for y in basis.points:
        if y not in gamma:
            raise ExtensionError("basis point outside gamma", y)
    full = rank_span(omega, pts, check_null=False)
    own = rank_span(omega, basis.points, check_null=False)
    if own.rank != len(basis.points) or own.rank != full.rank:
        raise ExtensionError(
            f"basis does not span V(gamma): rank {own.rank} of {len(basis.points)} points, "
            f"dim V(gamma) = {full.rank}"
        )
    for y in basis.points:
        if y + d not in gamma:
            raise ExtensionError("translated basis not contained in gamma", y + d)

    ext = PeriodicSet.from_points(d, pts)
    offs = ext.offsets
    checks = 0
    failing = None
    for x in offs:
        for y in offs:
            ks = range(-n, n + 1) if x != y else range(1, n + 1)
            for k in ks:
                checks += 1
                if not is_zero(P, x - y + k * d):
                    failing = (x, y, k)
                    break
            if failing:
                break
        if failing:
            break
    ap = check_ap_zeroset(omega, d) if failing is None else None
    ok = failing is None and ap is not None and ap.full_ap_in_zeroset
    return ext, ExtensionCertificate(ok, checks, failing, ap)
