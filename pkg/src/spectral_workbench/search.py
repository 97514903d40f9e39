"""
Certification and enumeration of periodic spectra.

A ``d``-periodic set with ``d`` offsets (density 1) whose exponentials are mutually
orthogonal is a spectrum. Orthogonality of ``{offsets} + dZ`` reduces to finitely many
exact zero tests: ``kd`` for ``k = 1..n`` (which then forces all of ``dZ``) and
``delta + kd`` for every offset difference ``delta`` and ``|k| <= n``.
"""
from __future__ import annotations

import dataclasses
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional

import numpy as np

from .core import (
    DomainError,
    IntervalUnion,
    PeriodicSet,
    format_rational,
    lcm_of_denominators,
    measure,
)
from .expoly import from_domain, is_zero
from .newton import APVerdict, check_ap_zeroset, verify_tiling

log = logging.getLogger(__name__)

PARANOID_K = 50


@dataclasses.dataclass(frozen=True)
class SpectrumVerdict:
    is_spectrum: bool
    orthogonality_certified: bool
    density_ok: bool
    d_integer: bool
    tiles: bool
    failing_pair: Optional[tuple[Fraction, Fraction, int]] = None
    ap: Optional[APVerdict] = None
    checks: int = 0
    failing_difference: Optional[Fraction] = None

    def __post_init__(self):
        if self.is_spectrum != (self.orthogonality_certified and self.density_ok):
            raise ValueError("is_spectrum must equal orthogonality and density")

    def __bool__(self) -> bool:
        return self.is_spectrum

    def to_json(self) -> dict:
        out = {
            "is_spectrum": self.is_spectrum,
            "orthogonality_certified": self.orthogonality_certified,
            "density_ok": self.density_ok,
            "d_integer": self.d_integer,
            "tiles": self.tiles,
            "failing_pair": None,
            "checks": self.checks,
            "methods": {"orthogonality": "exact", "density": "exact", "tiling": "exact"},
            "ap": self.ap.to_json() if self.ap is not None else None,
        }
        if self.failing_pair is not None:
            x, y, k = self.failing_pair
            out["failing_pair"] = {
                "lambda_i": format_rational(x),
                "lambda_j": format_rational(y),
                "k": k,
                "difference": format_rational(self.failing_difference),
            }
        return out


def _k_order(kmax: int):
    """0, 1, -1, 2, -2, ... so that the most basic failure is reported first."""
    yield 0
    for k in range(1, kmax + 1):
        yield k
        yield -k


def verify_spectrum(omega: IntervalUnion, lam: PeriodicSet, paranoid: bool = False) -> SpectrumVerdict:
    """
    Exact certificate that ``lam`` is a spectrum of the normalized set ``omega``.

    >>> from fractions import Fraction as F
    >>> omega = IntervalUnion.from_pairs([(0, F(1, 3)), (1, F(4, 3)), (2, F(7, 3))])
    >>> verify_spectrum(omega, PeriodicSet(3, (0, F(1, 3), F(2, 3)))).is_spectrum
    True
    """
    if not isinstance(lam, PeriodicSet):
        raise DomainError("spectrum must be a PeriodicSet")
    omega.require_normalized()
    n = omega.n
    P = from_domain(omega)
    d = lam.period
    offs = lam.offsets
    d_int = d.denominator == 1
    density_ok = d_int and len(offs) == d
    tiles = verify_tiling(omega, d) if d_int else False
    kmax = PARANOID_K if paranoid else n

    checks = 0
    failing = None
    ap = None
    for k in range(1, n + 1):
        checks += 1
        if not is_zero(P, k * d):
            failing = (offs[0], offs[0], k)
            break
    if failing is None:
        ap = check_ap_zeroset(omega, d)
        if not ap.full_ap_in_zeroset:
            failing = (offs[0], offs[0], ap.failure_witness[0] if ap.failure_witness else 0)
    if failing is None:
        for x in offs:
            for y in offs:
                if x == y:
                    continue
                for k in _k_order(kmax):
                    checks += 1
                    if not is_zero(P, y - x + k * d):
                        failing = (x, y, k)
                        break
                if failing:
                    break
            if failing:
                break

    ortho = failing is None
    diff = None if ortho else failing[1] - failing[0] + failing[2] * d
    verdict = SpectrumVerdict(
        ortho and density_ok, ortho, density_ok, d_int, tiles, failing, ap, checks, diff
    )
    if verdict.is_spectrum and not (verdict.tiles and verdict.d_integer):
        raise AssertionError("a verified periodic spectrum must come with an integer d-tiling")
    return verdict


def parseval_partial_sum(
    omega: IntervalUnion, lam: PeriodicSet, u, v, M: float
) -> tuple[float, float]:
    """
    ``sum_{lam, |lam| <= M} |<f, e_lam>|^2`` and ``||f||^2`` for ``f = 1_[u, v)``.

    Numeric, non-authoritative: a complete orthonormal system makes the first number
    tend to the second as ``M`` grows.
    """
    u, v = float(u), float(v)
    scale = 1.0 / math.sqrt(float(measure(omega)))
    pts = np.array([float(x) for x in lam.sample(Fraction(-int(M) - 1), Fraction(int(M) + 1)).points])
    pts = pts[np.abs(pts) <= M]
    coef = np.empty(len(pts), dtype=complex)
    nz = pts != 0
    x = pts[nz]
    coef[nz] = (np.exp(-2j * np.pi * x * v) - np.exp(-2j * np.pi * x * u)) / (-2j * np.pi * x)
    coef[~nz] = v - u
    return float(np.sum(np.abs(coef * scale) ** 2)), v - u


@dataclasses.dataclass(frozen=True)
class SearchConfig:
    d_max: int
    denom: Optional[int] = None  # None: use d * q, q = lcm of endpoint denominators
    node_budget: int = 1_000_000
    paranoid: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.d_max < 1:
            raise ValueError("d_max must be positive")
        if self.denom is not None and self.denom < 1:
            raise ValueError("denom must be positive")
        if self.node_budget < 1 or self.workers < 1:
            raise ValueError("budget and workers must be positive")


@dataclasses.dataclass
class PeriodReport:
    d: int
    tiles: bool
    ap_ok: bool
    grid_denominator: int
    candidates: int = 0
    nodes: int = 0
    exhausted: bool = False
    spectra: list = dataclasses.field(default_factory=list)
    translates: dict = dataclasses.field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "tiles": self.tiles,
            "ap_ok": self.ap_ok,
            "grid": f"offsets in (1/{self.grid_denominator})Z cap [0,{self.d})",
            "candidates": self.candidates,
            "nodes": self.nodes,
            "budget_exhausted": self.exhausted,
            "spectra": [s.to_json() for s in self.spectra],
        }


@dataclasses.dataclass
class SearchResult:
    spectra: list
    periods: list
    exhausted: bool

    def __iter__(self):
        return iter(self.spectra)

    def __len__(self) -> int:
        return len(self.spectra)

    def to_json(self) -> dict:
        return {
            "spectra": [s.to_json() for s in self.spectra],
            "periods": [p.to_json() for p in self.periods],
            "budget_exhausted": self.exhausted,
        }


def canonical_translate(offsets, d: Fraction) -> tuple[Fraction, ...]:
    """Lexicographically least rotation of ``offsets`` (mod ``d``) that contains 0."""
    best = None
    for o in offsets:
        rot = tuple(sorted((x - o) % d for x in offsets))
        if best is None or rot < best:
            best = rot
    return best


def _grid_denominator(omega: IntervalUnion, d: int, denom: Optional[int]) -> int:
    if denom is not None:
        return denom
    q = lcm_of_denominators(x for pair in omega.pairs() for x in pair)
    return d * q


def _search_period(omega: IntervalUnion, d: int, cfg: SearchConfig) -> PeriodReport:
    n = omega.n
    P = from_domain(omega)
    g = _grid_denominator(omega, d, cfg.denom)
    report = PeriodReport(d, verify_tiling(omega, d), False, g)
    if not report.tiles:
        return report
    report.ap_ok = check_ap_zeroset(omega, Fraction(d)).full_ap_in_zeroset
    if not report.ap_ok:
        return report
    kmax = PARANOID_K if cfg.paranoid else n
    D = Fraction(d)
    edge_cache: dict[Fraction, bool] = {}

    def compatible(delta: Fraction) -> bool:
        hit = edge_cache.get(delta)
        if hit is None:
            hit = all(is_zero(P, delta + k * D) for k in _k_order(kmax))
            edge_cache[delta] = hit
        return hit

    cands = [Fraction(j, g) for j in range(1, d * g) if compatible(Fraction(j, g))]
    adj = {t: {s for s in cands if s != t and compatible(s - t)} for t in cands}
    # vertex degree within the full graph (0 included) must reach d - 1
    cands = [t for t in cands if len(adj[t]) + 1 >= d - 1]
    report.candidates = len(cands)
    alive = set(cands)

    found: list[tuple[Fraction, ...]] = []
    nodes = 0

    def extend(clique: list[Fraction], pool: list[Fraction]) -> bool:
        nonlocal nodes
        if len(clique) == d:
            found.append(tuple(clique))
            return True
        for i, t in enumerate(pool):
            nodes += 1
            if nodes > cfg.node_budget:
                return False
            if len(clique) + 1 + (len(pool) - i - 1) < d:
                break
            nxt = [s for s in pool[i + 1:] if s in adj[t]]
            if not extend(clique + [t], nxt):
                return False
        return True

    completed = extend([Fraction(0)], [t for t in cands if t in alive])
    report.nodes = nodes
    report.exhausted = not completed

    seen: dict[tuple, PeriodicSet] = {}
    for clique in found:
        key = canonical_translate(clique, D)
        rep = PeriodicSet(D, key)
        if key not in seen:
            if not verify_spectrum(omega, rep, paranoid=cfg.paranoid).is_spectrum:
                raise AssertionError(f"search produced an unverifiable set {rep}")
            seen[key] = rep
            report.translates[key] = []
        report.translates[key].append(PeriodicSet(D, tuple(sorted(clique))))
    report.spectra = [seen[k] for k in sorted(seen)]
    return report


def search_spectra(omega: IntervalUnion, cfg: SearchConfig) -> SearchResult:
    """
    Enumerate ``d``-periodic spectra for ``d = 1..d_max`` on a rational offset grid.

    For each ``d`` that tiles and whose progression ``dZ`` lies in the zero set,
    offsets compatible with 0 form the vertices of an orthogonality graph; cliques of
    size ``d`` through 0 are exactly the candidate spectra. Results are deduplicated up
    to translation and each one is re-verified.
    """
    omega.require_normalized()
    ds = list(range(1, cfg.d_max + 1))
    if cfg.workers > 1 and len(ds) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            reports = list(pool.map(_search_period, [omega] * len(ds), ds, [cfg] * len(ds)))
    else:
        reports = [_search_period(omega, d, cfg) for d in ds]
    spectra, seen = [], set()
    for r in reports:
        for s in r.spectra:
            m = s.minimal()
            key = (m.period, canonical_translate(m.offsets, m.period))
            if key not in seen:
                seen.add(key)
                spectra.append(PeriodicSet(m.period, key[1]))
    exhausted = any(r.exhausted for r in reports)
    if exhausted:
        log.warning("node budget exhausted; results are partial")
    return SearchResult(spectra, reports, exhausted)


@dataclasses.dataclass(frozen=True)
class CrosscheckRow:
    d: int
    tiles: bool
    spectrum_found: bool
    grid_denominator: int
    example: Optional[PeriodicSet] = None
    budget_exhausted: bool = False

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "tiles": self.tiles,
            "spectrum_found": self.spectrum_found,
            "grid": f"1/{self.grid_denominator}",
            "example": self.example.to_json() if self.example else None,
            "budget_exhausted": self.budget_exhausted,
        }


def fuglede_crosscheck(omega: IntervalUnion, d_max: int, denom: Optional[int] = None) -> list[CrosscheckRow]:
    """Per period: does ``omega`` tile by ``Z/d``, and did the grid search find a spectrum?"""
    omega.require_normalized()
    cfg = SearchConfig(d_max=d_max, denom=denom)
    rows = []
    for d in range(1, d_max + 1):
        rep = _search_period(omega, d, cfg)
        rows.append(
            CrosscheckRow(
                d,
                rep.tiles,
                bool(rep.spectra),
                rep.grid_denominator,
                rep.spectra[0] if rep.spectra else None,
                rep.exhausted,
            )
        )
    return rows
