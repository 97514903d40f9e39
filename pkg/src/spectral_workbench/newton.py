"""
Arithmetic progressions in the zero set and in a spectrum.

If ``d, 2d, ..., nd`` are zeros of ``P`` then the two families of roots of unity
``exp(2 pi i d b_j)`` and ``exp(2 pi i d a_j)`` have equal power sums up to order ``n``,
hence (Newton's identities) equal elementary symmetric functions, hence they coincide
as multisets. Pairing them off shows every multiple of ``d`` is a zero.
"""
from __future__ import annotations

import dataclasses
from fractions import Fraction
from typing import Optional, Sequence

from .core import (
    DiscreteSampleSet,
    DomainError,
    IntervalUnion,
    fold_multiplicity,
    format_rational,
    lcm_of_denominators,
    to_rational,
)
from .cyclotomic import CyclotomicElement
from .expoly import from_domain, is_zero

K_CHECK = 50


def power_sums_to_coeffs(W: Sequence) -> list:
    """
    Elementary coefficients ``S_1..S_n`` of ``z**n + S_1 z**(n-1) + ... + S_n`` from the
    power sums ``W_1..W_n`` of its roots, via
    ``W_k + S_1 W_{k-1} + ... + S_{k-1} W_1 + k S_k = 0``.

    Values may be ints, Fractions or :class:`CyclotomicElement` (for which the division
    by ``k`` is exact in ``Z[zeta]``).

    >>> power_sums_to_coeffs([3, 5])
    [Fraction(-3, 1), Fraction(2, 1)]
    """
    if len(W) < 1:
        raise ValueError("need at least one power sum")
    W = [Fraction(w) if isinstance(w, int) else w for w in W]
    S: list = []
    for k in range(1, len(W) + 1):
        total = W[k - 1]
        for i in range(1, k):
            total = total + S[i - 1] * W[k - 1 - i]
        S.append((-total) / k)
    return S


def expand_roots(roots: Sequence) -> list:
    """Coefficients ``[S_1..S_n]`` of ``prod (z - r)``, by repeated multiplication."""
    coeffs: list = [1]  # leading first
    for r in roots:
        nxt = coeffs + [0]
        for i in range(1, len(nxt)):
            nxt[i] = nxt[i] - r * coeffs[i - 1]
        coeffs = nxt
    return coeffs[1:]


@dataclasses.dataclass(frozen=True)
class APVerdict:
    d: Fraction
    hypothesis_holds: bool
    full_ap_in_zeroset: bool
    d_is_integer: bool
    tiles: bool
    pairing: Optional[tuple[tuple[int, int], ...]] = None
    failure_witness: Optional[tuple[int, Fraction]] = None
    spot_checks: int = 0
    note: str = ""

    def __post_init__(self):
        if self.full_ap_in_zeroset and not self.hypothesis_holds:
            raise ValueError("a full progression cannot be certified without the hypothesis")

    def to_json(self) -> dict:
        out = {
            "d": format_rational(self.d),
            "hypothesis_holds": self.hypothesis_holds,
            "full_ap_in_zeroset": self.full_ap_in_zeroset,
            "d_is_integer": self.d_is_integer,
            "tiles": self.tiles,
            "method": "exact",
            "spot_checks": self.spot_checks,
            "pairing": [list(p) for p in self.pairing] if self.pairing is not None else None,
            "failure_witness": None,
        }
        if self.failure_witness is not None:
            k, x = self.failure_witness
            out["failure_witness"] = {"k": k, "value": format_rational(x)}
        if self.note:
            out["note"] = self.note
        return out


def verify_tiling(omega: IntervalUnion, d: int) -> bool:
    """``True`` iff ``sum_k 1_omega(x + k/d) == d`` for almost every ``x``."""
    d = to_rational(d)
    if d.denominator != 1 or d < 1:
        return False
    return fold_multiplicity(omega, d).is_constant(int(d))


def _tiles(omega: IntervalUnion, d: Fraction) -> bool:
    return d.denominator == 1 and fold_multiplicity(omega, d).is_constant(int(d))


def _roots_of_unity(omega: IntervalUnion, d: Fraction):
    """The two root families ``exp(2 pi i d b_j)`` (right ends) and ``exp(2 pi i d a_j)``."""
    rights = [d * b for b in omega.rights]
    lefts = [d * a for a in omega.lefts]
    order = lcm_of_denominators(x % 1 for x in rights + lefts)

    def root(x: Fraction) -> CyclotomicElement:
        return CyclotomicElement.root(order, int((x % 1) * order))

    return order, [root(x) for x in rights], [root(x) for x in lefts]


def _pair_roots(first: list, second: list) -> Optional[tuple[tuple[int, int], ...]]:
    """Match equal roots across the two families, ties resolved in index order."""
    used = [False] * len(second)
    pairs = []
    for i, z in enumerate(first):
        for j, w in enumerate(second):
            if not used[j] and z == w:
                used[j] = True
                pairs.append((i, j))
                break
        else:
            return None
    return tuple(pairs)


def check_ap_zeroset(omega: IntervalUnion, d, k_check: int = K_CHECK) -> APVerdict:
    """
    Test whether ``d, 2d, ..., nd`` are zeros and, if so, certify all of ``dZ``.

    The certificate is the pairing of the right-end roots with the left-end roots,
    obtained from the equality of the two monic polynomials they generate; it is then
    spot-checked exactly at ``kd`` for ``|k| <= k_check``.
    """
    if isinstance(d, float):
        raise TypeError("d must be rational")
    d = to_rational(d)
    if d <= 0:
        raise DomainError("progression step d must be positive")
    omega.require_normalized()
    n = omega.n
    P = from_domain(omega)
    d_int = d.denominator == 1
    tiles = _tiles(omega, d)

    for k in range(1, n + 1):
        if not is_zero(P, k * d):
            return APVerdict(d, False, False, d_int, tiles, failure_witness=(k, k * d))

    order, odd, even = _roots_of_unity(omega, d)
    W1 = [sum((z ** k for z in odd), CyclotomicElement.zero(order)) for k in range(1, n + 1)]
    W2 = [sum((z ** k for z in even), CyclotomicElement.zero(order)) for k in range(1, n + 1)]
    S1 = power_sums_to_coeffs(W1)
    S2 = power_sums_to_coeffs(W2)
    if S1 != S2:
        # impossible when the hypothesis holds; reaching this means an arithmetic bug
        raise AssertionError("equal power sums produced different symmetric functions")
    pairing = _pair_roots(odd, even)
    if pairing is None:
        raise AssertionError("equal polynomials with unmatched roots")

    bad = None
    for k in range(-k_check, k_check + 1):
        if not is_zero(P, k * d):
            bad = (k, k * d)
            break
    return APVerdict(
        d,
        True,
        bad is None,
        d_int,
        tiles,
        pairing=pairing,
        failure_witness=bad,
        spot_checks=2 * k_check + 1,
    )


def extend_ap_in_spectrum(
    omega: IntervalUnion,
    window: DiscreteSampleSet,
    a,
    d,
    k_check: int = K_CHECK,
) -> APVerdict:
    """
    Given ``a, a+d, ..., a+nd`` in a spectrum window, certify that ``a + dZ`` is
    compatible with every observed spectrum point.

    For each observed ``lam`` the frequencies ``a + kd`` must be orthogonal to ``lam``,
    i.e. ``kd - (lam - a)`` must be a zero of ``P``; this is checked exactly for
    ``|k| <= k_check``.
    """
    a, d = to_rational(a), to_rational(d)
    if d <= 0:
        raise DomainError("progression step d must be positive")
    omega.require_normalized()
    n = omega.n
    pts = window.points
    if not pts or a < pts[0] or a + n * d > pts[-1]:
        raise DomainError(
            f"window does not span the {n + 1} terms {format_rational(a)}, ..., "
            f"{format_rational(a + n * d)}"
        )
    d_int = d.denominator == 1
    for k in range(n + 1):
        if a + k * d not in window:
            return APVerdict(
                d, False, False, d_int, _tiles(omega, d), failure_witness=(k, a + k * d),
                note="progression term missing from the window",
            )

    ap = check_ap_zeroset(omega, d, k_check)
    if not ap.full_ap_in_zeroset:
        return ap
    P = from_domain(omega)
    for lam in pts:
        for k in range(-k_check, k_check + 1):
            x = k * d - (lam - a)
            if not is_zero(P, x):
                return dataclasses.replace(
                    ap,
                    full_ap_in_zeroset=False,
                    failure_witness=(k, a + k * d),
                    note=f"a+kd is not orthogonal to window point {format_rational(lam)}",
                )
    return dataclasses.replace(ap, spot_checks=ap.spot_checks + len(pts) * (2 * k_check + 1))
