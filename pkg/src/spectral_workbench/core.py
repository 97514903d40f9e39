"""
Exact data model: interval unions, sample sets, periodic sets and fold multiplicities.

Every number that enters this module is a :class:`fractions.Fraction`. Floats are
rejected rather than silently converted, since a float endpoint would make every
downstream zero test inexact.
"""
from __future__ import annotations

import dataclasses
import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]


class DomainError(ValueError):
    """Raised when an input violates a precondition (overlap, empty set, bad period...)."""


def to_rational(value: RationalLike) -> Fraction:
    """Convert ints, Fractions and ``"p/q"`` strings to a Fraction; reject floats."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational literal: {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v.denominator)
    return out


@dataclasses.dataclass(frozen=True)
class IntervalUnion:
    """
    A finite union of half-open intervals ``[left, left + length)``.

    Intervals are stored sorted by left endpoint. Touching intervals are allowed
    here; :meth:`merged` (and :func:`normalize_domain`) fuses them.

    >>> IntervalUnion.from_pairs([("1", "4/3"), ("0", "1/3")]).intervals[0]
    (Fraction(0, 1), Fraction(1, 3))
    """

    intervals: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        ivs = tuple(sorted((to_rational(a), to_rational(r)) for a, r in self.intervals))
        if not ivs:
            raise DomainError("empty interval union")
        for a, r in ivs:
            if r <= 0:
                raise DomainError(f"interval at {format_rational(a)} has non-positive length")
        for (a, r), (b, _) in zip(ivs, ivs[1:]):
            if a + r > b:
                raise DomainError(
                    f"intervals [{format_rational(a)},{format_rational(a + r)}) and "
                    f"[{format_rational(b)},...) overlap"
                )
        object.__setattr__(self, "intervals", ivs)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[RationalLike, RationalLike]]) -> IntervalUnion:
        """Build from ``(left, right)`` endpoint pairs."""
        ivs = []
        for left, right in pairs:
            a, b = to_rational(left), to_rational(right)
            ivs.append((a, b - a))
        return cls(tuple(ivs))

    @property
    def n(self) -> int:
        return len(self.intervals)

    @property
    def lefts(self) -> tuple[Fraction, ...]:
        return tuple(a for a, _ in self.intervals)

    @property
    def rights(self) -> tuple[Fraction, ...]:
        return tuple(a + r for a, r in self.intervals)

    def pairs(self) -> list[tuple[Fraction, Fraction]]:
        return [(a, a + r) for a, r in self.intervals]

    def merged(self) -> IntervalUnion:
        out: list[list[Fraction]] = []
        for a, b in self.pairs():
            if out and out[-1][1] == a:
                out[-1][1] = b
            else:
                out.append([a, b])
        return IntervalUnion.from_pairs(out)

    def is_normalized(self) -> bool:
        return (
            self.intervals[0][0] == 0
            and measure(self) == 1
            and all(b < c for b, c in zip(self.rights, self.lefts[1:]))
        )

    def require_normalized(self) -> None:
        if not self.is_normalized():
            raise DomainError(
                "domain must be normalized (leftmost endpoint 0, measure 1, no touching "
                "intervals); run normalize_domain first"
            )

    def contains(self, x: Fraction) -> bool:
        return any(a <= x < a + r for a, r in self.intervals)

    def translate(self, t: Fraction) -> IntervalUnion:
        return IntervalUnion(tuple((a + t, r) for a, r in self.intervals))

    def scale(self, s: Fraction) -> IntervalUnion:
        if s <= 0:
            raise DomainError("scale factor must be positive")
        return IntervalUnion(tuple((a * s, r * s) for a, r in self.intervals))

    def to_json(self) -> dict:
        return {"intervals": [[format_rational(a), format_rational(b)] for a, b in self.pairs()]}

    @classmethod
    def from_json(cls, data: dict) -> IntervalUnion:
        try:
            pairs = data["intervals"]
            return cls.from_pairs((p[0], p[1]) for p in pairs)
        except (KeyError, IndexError, TypeError) as exc:
            raise DomainError(f"malformed domain JSON: {exc}") from exc


@dataclasses.dataclass(frozen=True)
class AffineMap:
    """``x -> scale * x + shift``."""

    scale: Fraction
    shift: Fraction

    def __post_init__(self):
        if self.scale == 0:
            raise DomainError("affine map scale must be nonzero")

    def __call__(self, x: Fraction) -> Fraction:
        return self.scale * x + self.shift

    def is_identity(self) -> bool:
        return self.scale == 1 and self.shift == 0

    def to_json(self) -> dict:
        return {"scale": format_rational(self.scale), "shift": format_rational(self.shift)}


def measure(omega: IntervalUnion) -> Fraction:
    return sum((r for _, r in omega.intervals), Fraction(0))


def normalize_domain(omega: IntervalUnion) -> tuple[IntervalUnion, AffineMap]:
    """
    Merge touching pieces, move the leftmost endpoint to 0 and rescale to measure 1.

    Returns the normalized set together with the map taking the original set onto it.
    Spectra transform by the inverse scale: if ``L`` is a spectrum of the original set,
    ``L / scale`` is a spectrum of the normalized one.
    """
    merged = omega.merged()
    m = measure(merged)
    s = 1 / m
    shift = -merged.intervals[0][0] * s
    amap = AffineMap(s, shift)
    out = IntervalUnion(tuple((amap(a), r * s) for a, r in merged.intervals))
    return out, amap


@dataclasses.dataclass(frozen=True)
class DiscreteSampleSet:
    """A finite, strictly increasing list of rational points (a window of a spectrum)."""

    points: tuple[Fraction, ...]

    def __post_init__(self):
        pts = tuple(to_rational(p) for p in self.points)
        for p, q in zip(pts, pts[1:]):
            if q <= p:
                raise DomainError("sample points must be strictly increasing without duplicates")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_unsorted(cls, points: Iterable[RationalLike]) -> DiscreteSampleSet:
        pts = [to_rational(p) for p in points]
        if len(set(pts)) != len(pts):
            raise DomainError("duplicate sample points")
        return cls(tuple(sorted(pts)))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, x) -> bool:
        return x in self._members

    @property
    def _members(self) -> frozenset:
        # cached lazily; the dataclass is frozen so we go through __dict__
        cache = self.__dict__.get("_member_cache")
        if cache is None:
            cache = frozenset(self.points)
            object.__setattr__(self, "_member_cache", cache)
        return cache

    def restrict(self, lo: Fraction, hi: Fraction) -> DiscreteSampleSet:
        """Points in the half-open range ``[lo, hi)``."""
        return DiscreteSampleSet(tuple(p for p in self.points if lo <= p < hi))

    def to_json(self) -> dict:
        return {"points": [format_rational(p) for p in self.points]}


@dataclasses.dataclass(frozen=True)
class PeriodicSet:
    """``{offsets} + period * Z`` with offsets reduced into ``[0, period)``."""

    period: Fraction
    offsets: tuple[Fraction, ...]

    def __post_init__(self):
        d = to_rational(self.period)
        if d <= 0:
            raise DomainError("period must be positive")
        offs = tuple(to_rational(o) for o in self.offsets)
        if not offs:
            raise DomainError("a periodic set needs at least one offset")
        for o in offs:
            if not 0 <= o < d:
                raise DomainError(f"offset {format_rational(o)} outside [0, {format_rational(d)})")
        for o, p in zip(offs, offs[1:]):
            if p <= o:
                raise DomainError("offsets must be strictly increasing")
        object.__setattr__(self, "period", d)
        object.__setattr__(self, "offsets", offs)

    @classmethod
    def from_points(cls, period: RationalLike, points: Iterable[RationalLike]) -> PeriodicSet:
        """Reduce arbitrary representatives mod ``period`` and deduplicate."""
        d = to_rational(period)
        return cls(d, tuple(sorted({to_rational(p) % d for p in points})))

    @property
    def density(self) -> Fraction:
        return Fraction(len(self.offsets)) / self.period

    def contains(self, x: Fraction) -> bool:
        return (x % self.period) in self.offsets

    def minimal(self) -> PeriodicSet:
        """The same point set written with its smallest period."""
        d, offs = self.period, set(self.offsets)
        m = len(self.offsets)
        # the minimal period is d/j for some j dividing the number of offsets
        for j in range(m, 1, -1):
            if m % j == 0:
                p = d / j
                if all(((o + p) % d) in offs for o in offs):
                    return PeriodicSet(p, tuple(o for o in self.offsets if o < p))
        return self

    def translate(self, t: Fraction) -> PeriodicSet:
        return PeriodicSet.from_points(self.period, (o + t for o in self.offsets))

    def scale(self, s: Fraction) -> PeriodicSet:
        return PeriodicSet.from_points(self.period * s, (o * s for o in self.offsets))

    def sample(self, lo: Fraction, hi: Fraction) -> DiscreteSampleSet:
        """All points of the set lying in the closed range ``[lo, hi]``."""
        lo, hi = to_rational(lo), to_rational(hi)
        d = self.period
        pts = []
        k = math.floor(lo / d)
        while k * d <= hi:
            for o in self.offsets:
                x = k * d + o
                if lo <= x <= hi:
                    pts.append(x)
            k += 1
        return DiscreteSampleSet(tuple(pts))

    def to_json(self) -> dict:
        return {
            "period": format_rational(self.period),
            "offsets": [format_rational(o) for o in self.offsets],
        }

    @classmethod
    def from_json(cls, data: dict) -> PeriodicSet:
        try:
            return cls.from_points(data["period"], data["offsets"])
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed periodic set JSON: {exc}") from exc


@dataclasses.dataclass(frozen=True)
class MultiplicityFunction:
    """
    Step function on ``[0, 1/d)``: ``counts[i]`` is the value on
    ``[breakpoints[i], breakpoints[i+1])``. The last breakpoint is ``1/d``.
    """

    d: Fraction
    breakpoints: tuple[Fraction, ...]
    counts: tuple[int, ...]

    def cells(self) -> list[tuple[Fraction, Fraction, int]]:
        return [
            (lo, hi, c) for lo, hi, c in zip(self.breakpoints, self.breakpoints[1:], self.counts)
        ]

    def integral(self) -> Fraction:
        return sum(((hi - lo) * c for lo, hi, c in self.cells()), Fraction(0))

    def is_constant(self, value: int | None = None) -> bool:
        vals = set(self.counts)
        if len(vals) != 1:
            return False
        return value is None or vals == {value}

    def __call__(self, x: Fraction) -> int:
        x = x % (1 / self.d)
        for lo, hi, c in self.cells():
            if lo <= x < hi:
                return c
        raise AssertionError("breakpoints do not cover [0, 1/d)")


def _reduced_cuts(omega: IntervalUnion, period: Fraction) -> list[Fraction]:
    cuts = {Fraction(0), period}
    for a, b in omega.pairs():
        cuts.add(a % period)
        cuts.add(b % period)
    return sorted(cuts)


def fiber(omega: IntervalUnion, x: Fraction, d: Fraction) -> list[int]:
    """Sorted integers ``k`` with ``x + k/d`` in ``omega``."""
    out: list[int] = []
    for a, b in omega.pairs():
        # a <= x + k/d < b  <=>  d(a - x) <= k < d(b - x)
        lo = math.ceil(d * (a - x))
        hi = math.ceil(d * (b - x))
        out.extend(range(lo, hi))
    return sorted(out)


def fold_multiplicity(omega: IntervalUnion, d: RationalLike) -> MultiplicityFunction:
    """
    ``F(x) = sum_k 1_omega(x + k/d)`` on ``[0, 1/d)``, exactly.

    Every endpoint is reduced mod ``1/d``; on each resulting cell ``F`` is constant and
    is evaluated at the cell's left end.
    """
    d = to_rational(d)
    if d <= 0:
        raise DomainError("fold period d must be positive")
    period = 1 / d
    cuts = _reduced_cuts(omega, period)
    counts = tuple(len(fiber(omega, lo, d)) for lo in cuts[:-1])
    # merge equal neighbours so the representation is canonical
    bps, cs = [cuts[0]], []
    for hi, c in zip(cuts[1:], counts):
        if cs and cs[-1] == c:
            bps[-1] = hi
        else:
            cs.append(c)
            bps.append(hi)
    return MultiplicityFunction(d, tuple(bps), tuple(cs))


def as_rationals(values: Sequence[RationalLike]) -> tuple[Fraction, ...]:
    return tuple(to_rational(v) for v in values)
