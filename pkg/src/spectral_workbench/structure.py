"""
Finite-window diagnostics of a spectrum and the fiber decomposition of a d-tile.

A spectrum sample is read as a word over its (finite) gap alphabet. Cutting the line
into windows ``[kL, (k+1)L)`` gives finitely many distinct words, so two windows must
repeat; a repeat at distance ``d`` whose window carries a basis of the embedding span
makes ``d`` a period candidate.
"""
from __future__ import annotations

import bisect
import dataclasses
import functools
import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .core import (
    DiscreteSampleSet,
    DomainError,
    IntervalUnion,
    PeriodicSet,
    fiber,
    format_rational,
    to_rational,
)
from .embedding import basis_translate_period, rank_span
from .newton import verify_tiling
from .search import verify_spectrum


@dataclasses.dataclass(frozen=True)
class GapAlphabet:
    gaps: tuple[Fraction, ...]

    def __post_init__(self):
        if any(g <= 0 for g in self.gaps):
            raise DomainError("gaps must be positive")

    def to_json(self) -> list:
        return [format_rational(g) for g in self.gaps]


def gap_alphabet(window: DiscreteSampleSet) -> GapAlphabet:
    pts = window.points
    if len(pts) < 2:
        raise DomainError("need at least two points to read gaps")
    return GapAlphabet(tuple(sorted({b - a for a, b in zip(pts, pts[1:])})))


def count_words(alphabet: Sequence[Fraction], L: Fraction) -> int:
    """Number of words (the empty word included) over ``alphabet`` of total length <= L."""
    gaps = tuple(alphabet)

    @functools.lru_cache(maxsize=None)
    def words(budget: Fraction) -> int:
        return 1 + sum(words(budget - g) for g in gaps if g <= budget)

    return words(to_rational(L))


@dataclasses.dataclass(frozen=True)
class WindowEntry:
    k: int
    points: tuple[Fraction, ...]
    word: tuple[Fraction, ...]  # gaps between consecutive points inside the window
    exit_gap: Optional[Fraction]  # gap from the last point to the next sample point, if any
    dim: int
    full: bool  # the window lies inside the observed span

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "points": [format_rational(p) for p in self.points],
            "word": [format_rational(g) for g in self.word],
            "exit_gap": format_rational(self.exit_gap) if self.exit_gap is not None else None,
            "dim": self.dim,
            "full": self.full,
        }


@dataclasses.dataclass(frozen=True)
class WindowProfile:
    L: Fraction
    entries: tuple[WindowEntry, ...]
    distinct_words: int
    word_bound: int  # N_L: all words over the alphabet of length <= L
    max_dim: int
    dim_counts: dict  # s -> number of full windows with dim >= s

    @property
    def epsilon(self) -> Fraction:
        """The diagnostic ``1 / (2 L (N_L + 1))``."""
        return 1 / (2 * self.L * (self.word_bound + 1))

    def to_json(self) -> dict:
        return {
            "L": format_rational(self.L),
            "windows": [e.to_json() for e in self.entries],
            "distinct_words": self.distinct_words,
            "word_bound": self.word_bound,
            "epsilon": format_rational(self.epsilon),
            "max_dim": self.max_dim,
            "dims_at_least": {str(s): c for s, c in sorted(self.dim_counts.items())},
            "method": "exact",
        }


def window_profile(omega: IntervalUnion, window: DiscreteSampleSet, L) -> WindowProfile:
    L = to_rational(L)
    if L <= 0:
        raise DomainError("window length must be positive")
    pts = window.points
    if not pts:
        raise DomainError("empty sample")
    lo, hi = pts[0], pts[-1]
    entries = []
    for k in range(math.floor(lo / L), math.floor(hi / L) + 1):
        inside = tuple(p for p in pts if k * L <= p < (k + 1) * L)
        word = tuple(b - a for a, b in zip(inside, inside[1:]))
        exit_gap = None
        if inside:
            later = [p for p in pts if p > inside[-1]]
            exit_gap = later[0] - inside[-1] if later else None
        dim = rank_span(omega, inside, check_null=False).rank if inside else 0
        full = lo <= k * L and (k + 1) * L <= hi
        entries.append(WindowEntry(k, inside, word, exit_gap, dim, full))
    alphabet = gap_alphabet(window).gaps if len(pts) > 1 else ()
    full_entries = [e for e in entries if e.full]
    dims = [e.dim for e in full_entries]
    max_dim = max((e.dim for e in entries), default=0)
    return WindowProfile(
        L,
        tuple(entries),
        len({e.word for e in full_entries}),
        count_words(alphabet, L),
        max_dim,
        {s: sum(1 for x in dims if x >= s) for s in range(1, max_dim + 1)},
    )


def discover_period(
    omega: IntervalUnion, window: DiscreteSampleSet, L_range: Iterable
) -> list[Fraction]:
    """
    Period candidates from repeated window words.

    For every ``L``, fully observed windows with identical gap words are translates of
    each other; the translation ``d`` is kept when a basis drawn from the earlier window
    still lies in the sample after shifting by ``d``. Each kept ``d`` is also tried
    divided by small integers (a window grid only sees multiples of ``L``), so the
    minimal period appears when the sample supports it. Sorted ascending.
    """
    pts = window.points
    if len(pts) < 2:
        raise DomainError("need at least two sample points")
    m = rank_span(omega, pts, check_null=False).rank
    min_gap = gap_alphabet(window).gaps[0]
    raw: set[Fraction] = set()
    bases: dict[Fraction, object] = {}
    for L in L_range:
        prof = window_profile(omega, window, L)
        full = [e for e in prof.entries if e.full and e.points]
        if len(full) < 2:
            raise DomainError(f"sample too short for two full windows of length {format_rational(prof.L)}")
        for i, e1 in enumerate(full):
            if e1.dim != m:
                continue
            basis = rank_span(omega, e1.points, check_null=False)
            for e2 in full[i + 1:]:
                if e2.word != e1.word:
                    continue
                d = e2.points[0] - e1.points[0]
                if d not in raw and basis_translate_period(omega, window, basis, d):
                    raw.add(d)
                    bases[d] = basis
    out: set[Fraction] = set(raw)
    for d in raw:
        basis = bases[d]
        for j in range(2, int(d / min_gap) + 1):
            if d / j not in out and basis_translate_period(omega, window, basis, d / j):
                out.add(d / j)
    return sorted(out)


def periodic_from_sample(window: DiscreteSampleSet, d) -> PeriodicSet:
    """Read one period of offsets starting at the first sample point."""
    d = to_rational(d)
    x0 = window.points[0]
    return PeriodicSet.from_points(d, (p for p in window.points if x0 <= p < x0 + d))


@dataclasses.dataclass(frozen=True)
class DensityReport:
    R: Fraction
    n_minus: int
    n_plus: int
    density: Fraction
    windows: int

    def __post_init__(self):
        if self.n_minus > self.n_plus:
            raise ValueError("n_minus cannot exceed n_plus")

    def to_json(self) -> dict:
        return {
            "R": format_rational(self.R),
            "n_minus": self.n_minus,
            "n_plus": self.n_plus,
            "density": format_rational(self.density),
            "windows": self.windows,
        }

    def csv_row(self) -> str:
        return f"{format_rational(self.R)},{self.n_minus},{self.n_plus},{float(self.density)!r}"


def landau_counts(points: DiscreteSampleSet, R) -> DensityReport:
    """
    Extremal counts of sample points in half-open windows ``[x, x + R)`` lying inside
    the sample span, plus the mean density over consecutive windows.

    The count is piecewise constant in ``x`` with jumps only where ``x`` or ``x + R``
    crosses a point, so evaluating at those positions realises every value.
    """
    R = to_rational(R)
    if R <= 0:
        raise DomainError("R must be positive")
    pts = points.points
    if len(pts) < 2 or R > pts[-1] - pts[0]:
        raise DomainError("R exceeds the sample span")
    lo, hi = pts[0], pts[-1] - R
    xs = sorted({p for p in pts if lo <= p <= hi} | {p - R for p in pts if lo <= p - R <= hi} | {hi})

    def count(x: Fraction) -> int:
        return bisect.bisect_left(pts, x + R) - bisect.bisect_left(pts, x)

    counts = [count(x) for x in xs]
    blocks = int((pts[-1] - pts[0]) / R)
    total = sum(count(pts[0] + j * R) for j in range(blocks))
    return DensityReport(R, min(counts), max(counts), Fraction(total) / (blocks * R), len(xs))


@dataclasses.dataclass(frozen=True)
class FiberClass:
    E: tuple[tuple[Fraction, Fraction], ...]  # disjoint half-open pieces of [0, 1/d)
    A: tuple[int, ...]

    def measure(self) -> Fraction:
        return sum((b - a for a, b in self.E), Fraction(0))

    def to_json(self) -> dict:
        return {
            "E": [[format_rational(a), format_rational(b)] for a, b in self.E],
            "A": list(self.A),
        }


@dataclasses.dataclass(frozen=True)
class FiberDecomposition:
    d: int
    classes: tuple[FiberClass, ...]

    def reconstruct(self) -> IntervalUnion:
        """``union_j (E_j + A_j / d)``, touching pieces merged."""
        pieces = [
            (a + Fraction(k, self.d), b + Fraction(k, self.d))
            for c in self.classes
            for k in c.A
            for a, b in c.E
        ]
        return IntervalUnion.from_pairs(sorted(pieces)).merged()

    def component(self, j: int) -> IntervalUnion:
        """``[0, 1/d) + A_j / d``, shifted so its leftmost point is 0."""
        A = self.classes[j].A
        base = min(A)
        return IntervalUnion.from_pairs(
            (Fraction(k - base, self.d), Fraction(k - base + 1, self.d)) for k in A
        ).merged()

    def check_invariants(self, omega: Optional[IntervalUnion] = None) -> list[str]:
        problems = []
        cells = sorted(p for c in self.classes for p in c.E)
        edge = Fraction(0)
        for a, b in cells:
            if a != edge or b <= a:
                problems.append("the E_j do not partition [0, 1/d)")
                break
            edge = b
        else:
            if edge != Fraction(1, self.d):
                problems.append("the E_j do not partition [0, 1/d)")
        for c in self.classes:
            if len(set(c.A)) != self.d:
                problems.append(f"class with A={list(c.A)} does not have {self.d} elements")
        if omega is not None:
            try:
                if self.reconstruct() != omega.merged():
                    problems.append("union of E_j + A_j/d differs from omega")
            except DomainError as exc:
                problems.append(f"reconstruction is not a valid interval union: {exc}")
        return problems

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "classes": [c.to_json() for c in self.classes],
            "components": [self.component(j).to_json() for j in range(len(self.classes))],
        }


def decompose(omega: IntervalUnion, d: int) -> FiberDecomposition:
    """
    Group the points of ``[0, 1/d)`` by their fiber ``A_x = {k : x + k/d in omega}``.

    ``omega`` must ``d``-tile, so every fiber has exactly ``d`` elements.
    """
    if not verify_tiling(omega, d):
        raise DomainError(f"omega does not {d}-tile the line")
    d = int(d)
    period = Fraction(1, d)
    bps = sorted({Fraction(0), period} | {x % period for pair in omega.pairs() for x in pair})
    order: list[tuple[int, ...]] = []
    pieces: dict[tuple[int, ...], list[list[Fraction]]] = {}
    for lo, hi in zip(bps, bps[1:]):
        A = tuple(fiber(omega, lo, Fraction(d)))
        if A not in pieces:
            order.append(A)
            pieces[A] = []
        runs = pieces[A]
        if runs and runs[-1][1] == lo:
            runs[-1][1] = hi
        else:
            runs.append([lo, hi])
    classes = tuple(FiberClass(tuple((a, b) for a, b in pieces[A]), A) for A in order)
    dec = FiberDecomposition(d, classes)
    problems = dec.check_invariants(omega)
    if problems:
        raise AssertionError("; ".join(problems))
    return dec


def verify_decomposition(omega: IntervalUnion, lam: PeriodicSet, dec: FiberDecomposition) -> bool:
    """Structural invariants hold and every component ``[0,1/d) + A_j/d`` has ``lam`` as a spectrum."""
    if dec.check_invariants(omega):
        return False
    for j in range(len(dec.classes)):
        try:
            comp = dec.component(j)
        except DomainError:
            return False
        if not comp.is_normalized() or not verify_spectrum(comp, lam).is_spectrum:
            return False
    return True
