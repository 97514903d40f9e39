"""Command-line front end. Rationals cross the boundary as ``"p/q"`` strings."""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .core import (
    DiscreteSampleSet,
    DomainError,
    IntervalUnion,
    PeriodicSet,
    fold_multiplicity,
    format_rational,
    measure,
    normalize_domain,
    to_rational,
)
from .embedding import ExtensionError, rank_span
from .expoly import eval_chi_hat, eval_numeric_array, from_domain, is_zero, scan_zeros_numeric
from .newton import extend_ap_in_spectrum, verify_tiling
from .search import SearchConfig, fuglede_crosscheck, search_spectra, verify_spectrum
from .structure import decompose, discover_period, landau_counts, periodic_from_sample

EXIT_OK, EXIT_REFUTED, EXIT_BUDGET = 0, 1, 2
EXIT_USAGE, EXIT_DATAERR = 64, 65

VERBS = (
    "normalize", "zeros", "verify-spectrum", "verify-tiling", "ap-extend", "rank",
    "discover-period", "density", "decompose", "search", "crosscheck", "plot-data",
)


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: {exc}") from exc
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from exc


def _load_domain(path: str, require_normalized: bool = True) -> IntervalUnion:
    data = _read_json(path)
    try:
        omega = IntervalUnion.from_json(data).merged()
    except (DomainError, TypeError) as exc:
        raise DataError(f"{path}: {exc}") from exc
    if require_normalized:
        omega.require_normalized()
    return omega


def _load_points(path: str, rng: Optional[Sequence[str]], default_periods: int = 10) -> DiscreteSampleSet:
    """A sample set from either ``{"points": [...]}`` or a periodic set sampled over --range."""
    data = _read_json(path)
    try:
        if isinstance(data, dict) and "points" in data:
            return DiscreteSampleSet.from_unsorted(data["points"])
        lam = PeriodicSet.from_json(data)
    except (DomainError, TypeError) as exc:
        raise DataError(f"{path}: {exc}") from exc
    if rng is None:
        return lam.sample(Fraction(0), default_periods * lam.period)
    return lam.sample(to_rational(rng[0]), to_rational(rng[1]))


def _load_spectrum(path: str) -> PeriodicSet:
    data = _read_json(path)
    try:
        return PeriodicSet.from_json(data)
    except (DomainError, TypeError) as exc:
        raise DataError(f"{path}: {exc}") from exc


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _workers(args) -> int:
    if getattr(args, "workers", None):
        return args.workers
    env = os.environ.get("SPECTRAL_WORKBENCH_WORKERS")
    return int(env) if env and env.isdigit() and int(env) > 0 else 1


def _snap(P, x: float, max_den: int = 1000) -> Optional[str]:
    """Rational guess for a numeric zero, kept only if it is an exact zero."""
    q = Fraction(x).limit_denominator(max_den)
    if abs(float(q) - x) < 1e-7 and is_zero(P, q):
        return format_rational(q)
    return None


# --- verbs -----------------------------------------------------------------------------


def cmd_normalize(args) -> int:
    data = _read_json(args.domain)
    try:
        omega = IntervalUnion.from_json(data)
    except (DomainError, TypeError) as exc:
        raise DataError(f"{args.domain}: {exc}") from exc
    out, amap = normalize_domain(omega)
    _emit({
        "domain": out.to_json(),
        "map": amap.to_json(),
        "original_measure": format_rational(measure(omega)),
        "n": out.n,
    })
    return EXIT_OK


def cmd_zeros(args) -> int:
    omega = _load_domain(args.domain, require_normalized=False)
    P = from_domain(omega)
    lo, hi = (float(Fraction(x)) for x in args.range)
    zs = scan_zeros_numeric(P, lo, hi, args.tol)
    _emit({
        "range": args.range,
        "tol": args.tol,
        "method": "numeric",
        "zeros": [{"value": z, "exact": _snap(P, z)} for z in zs],
    })
    return EXIT_OK


def cmd_verify_spectrum(args) -> int:
    omega = _load_domain(args.domain)
    lam = _load_spectrum(args.spectrum)
    v = verify_spectrum(omega, lam, paranoid=args.paranoid)
    _emit(v.to_json())
    return EXIT_OK if v.is_spectrum else EXIT_REFUTED


def cmd_verify_tiling(args) -> int:
    omega = _load_domain(args.domain)
    F = fold_multiplicity(omega, args.d)
    ok = verify_tiling(omega, args.d)
    _emit({
        "d": args.d,
        "tiles": ok,
        "method": "exact",
        "multiplicity": [
            {"from": format_rational(a), "to": format_rational(b), "count": c}
            for a, b, c in F.cells()
        ],
    })
    return EXIT_OK if ok else EXIT_REFUTED


def cmd_ap_extend(args) -> int:
    omega = _load_domain(args.domain)
    window = _load_points(args.spectrum, args.range)
    if args.d is None:
        raise UsageError("ap-extend needs --d")
    v = extend_ap_in_spectrum(omega, window, to_rational(args.a), to_rational(args.d))
    _emit(v.to_json())
    return EXIT_OK if v.full_ap_in_zeroset else EXIT_REFUTED


def cmd_rank(args) -> int:
    omega = _load_domain(args.domain)
    pts = _load_points(args.spectrum, args.range)
    _emit(rank_span(omega, pts.points).to_json())
    return EXIT_OK


def cmd_discover_period(args) -> int:
    omega = _load_domain(args.domain)
    pts = _load_points(args.spectrum, args.range)
    Ls = [to_rational(x) for x in (args.window or ["1"])]
    cands = discover_period(omega, pts, Ls)
    rows = []
    for d in cands:
        lam = periodic_from_sample(pts, d)
        rows.append({
            "d": format_rational(d),
            "periodic_set": lam.to_json(),
            "verdict": verify_spectrum(omega, lam).to_json(),
        })
    _emit({"windows": [format_rational(L) for L in Ls], "candidates": rows})
    return EXIT_OK if cands else EXIT_REFUTED


def cmd_density(args) -> int:
    pts = _load_points(args.spectrum, args.range, default_periods=100)
    Rs = args.window or ["10"]
    sys.stdout.write("R,n_minus,n_plus,density\n")
    for R in Rs:
        sys.stdout.write(landau_counts(pts, to_rational(R)).csv_row() + "\n")
    return EXIT_OK


def cmd_decompose(args) -> int:
    omega = _load_domain(args.domain)
    if args.d is None:
        raise UsageError("decompose needs --d")
    _emit(decompose(omega, args.d).to_json())
    return EXIT_OK


def cmd_search(args) -> int:
    omega = _load_domain(args.domain)
    cfg = SearchConfig(
        d_max=args.d_max, denom=args.denom, node_budget=args.budget,
        paranoid=args.paranoid, workers=_workers(args),
    )
    res = search_spectra(omega, cfg)
    _emit(res.to_json())
    if res.exhausted:
        return EXIT_BUDGET
    return EXIT_OK if res.spectra else EXIT_REFUTED


def cmd_crosscheck(args) -> int:
    omega = _load_domain(args.domain)
    rows = fuglede_crosscheck(omega, args.d_max, args.denom)
    _emit({
        "rows": [r.to_json() for r in rows],
        "scope": "tilings by Z/d and d-periodic spectra on the stated offset grids only",
    })
    return EXIT_BUDGET if any(r.budget_exhausted for r in rows) else EXIT_OK


def cmd_plot_data(args) -> int:
    import numpy as np

    omega = _load_domain(args.domain, require_normalized=False)
    P = from_domain(omega)
    lo, hi = (float(Fraction(x)) for x in args.range)
    xs = np.linspace(lo, hi, args.samples)
    vals = eval_numeric_array(P, xs)
    sys.stdout.write("xi,re_P,im_P,abs_chi_hat\n")
    for x, p in zip(xs, vals):
        x, p = float(x), complex(p)
        chi = abs(eval_chi_hat(omega, 0)) if x == 0 else abs(p / (2j * np.pi * x))
        sys.stdout.write(f"{x!r},{p.real!r},{p.imag!r},{float(chi)!r}\n")
    return EXIT_OK


HANDLERS = {
    "normalize": cmd_normalize,
    "zeros": cmd_zeros,
    "verify-spectrum": cmd_verify_spectrum,
    "verify-tiling": cmd_verify_tiling,
    "ap-extend": cmd_ap_extend,
    "rank": cmd_rank,
    "discover-period": cmd_discover_period,
    "density": cmd_density,
    "decompose": cmd_decompose,
    "search": cmd_search,
    "crosscheck": cmd_crosscheck,
    "plot-data": cmd_plot_data,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="spectral-workbench", description="Exact spectral-set workbench for interval unions.")
    sub = p.add_subparsers(dest="verb", parser_class=_Parser)
    for verb in VERBS:
        s = sub.add_parser(verb)
        s.add_argument("--domain", required=verb != "density")
        s.add_argument("--spectrum", required=verb in ("verify-spectrum", "ap-extend", "rank", "discover-period", "density"))
        s.add_argument("--d", type=int if verb in ("verify-tiling", "decompose") else str,
                       required=verb == "verify-tiling")
        s.add_argument("--a", default="0")
        s.add_argument("--d-max", type=int, default=3)
        s.add_argument("--denom", type=int)
        s.add_argument("--range", nargs=2, metavar=("LO", "HI"),
                       default=None if verb not in ("zeros", "plot-data") else ["-3", "3"])
        s.add_argument("--tol", type=float, default=1e-9)
        s.add_argument("--window", action="append", metavar="L")
        s.add_argument("--samples", type=int, default=1001)
        s.add_argument("--budget", type=int, default=1_000_000)
        s.add_argument("--workers", type=int)
        s.add_argument("--paranoid", action="store_true")
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        if not argv or argv[0] not in VERBS:
            raise UsageError(f"unknown verb {argv[0]!r}" if argv else "missing verb")
        args = build_parser().parse_args(argv)
        return HANDLERS[args.verb](args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\nverbs: {', '.join(VERBS)}\n")
        return EXIT_USAGE
    except DataError as exc:
        sys.stderr.write(f"malformed input: {exc}\n")
        return EXIT_DATAERR
    except (DomainError, ValueError, TypeError) as exc:
        err = {"type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ExtensionError) and exc.witness is not None:
            err["witness"] = str(exc.witness)
        _emit({"error": err})
        return EXIT_REFUTED


def main() -> None:
    sys.exit(run())
