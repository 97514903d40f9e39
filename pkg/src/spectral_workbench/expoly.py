"""
The exponential polynomial ``P(xi) = sum_j (exp(2 pi i b_j xi) - exp(2 pi i a_j xi))``
of an interval union and the Fourier transform of its indicator, ``P(xi) / (2 pi i xi)``.
"""
from __future__ import annotations

import dataclasses
import math
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .core import IntervalUnion, format_rational, measure, to_rational
from .cyclotomic import RootOfUnityTerm, sum_is_zero


@dataclasses.dataclass(frozen=True)
class ExpPolynomial:
    """Terms ``(coeff, frequency)`` with distinct frequencies, sorted by frequency."""

    terms: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        acc: dict[Fraction, int] = {}
        for c, f in self.terms:
            f = to_rational(f)
            acc[f] = acc.get(f, 0) + int(c)
        object.__setattr__(
            self, "terms", tuple((c, f) for f, c in sorted(acc.items()) if c != 0)
        )

    @property
    def frequencies(self) -> tuple[Fraction, ...]:
        return tuple(f for _, f in self.terms)

    @property
    def coefficients(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.terms)

    @property
    def bandwidth(self) -> Fraction:
        fs = self.frequencies
        return fs[-1] - fs[0] if fs else Fraction(0)

    def root_terms(self, xi: Fraction) -> list[RootOfUnityTerm]:
        return [RootOfUnityTerm(c, f * xi) for c, f in self.terms]

    def to_json(self) -> list:
        return [[c, format_rational(f)] for c, f in self.terms]


@dataclasses.dataclass(frozen=True)
class ZeroVerdict:
    is_zero: bool
    method: str  # "exact" | "numeric"
    witness: Optional[float] = None

    def __post_init__(self):
        if self.method not in ("exact", "numeric"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.method == "exact" and self.witness is not None:
            raise ValueError("exact verdicts carry no numeric witness")

    def __bool__(self) -> bool:
        return self.is_zero

    def to_json(self) -> dict:
        out = {"is_zero": self.is_zero, "method": self.method}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def from_domain(omega: IntervalUnion) -> ExpPolynomial:
    """``+1`` at every right endpoint, ``-1`` at every left endpoint; shared endpoints cancel."""
    terms = []
    for a, b in omega.pairs():
        terms.append((1, b))
        terms.append((-1, a))
    return ExpPolynomial(tuple(terms))


def _phase(f: Fraction, xi: Fraction) -> complex:
    # reduce the phase exactly before going to floating point
    t = (f * xi) % 1
    angle = 2 * math.pi * t.numerator / t.denominator
    return complex(math.cos(angle), math.sin(angle))


def eval_numeric(P: ExpPolynomial, xi: Union[float, Fraction, int]) -> complex:
    """Double-precision value of ``P(xi)``. Rational arguments get exactly reduced phases."""
    if isinstance(xi, (Fraction, int)) and not isinstance(xi, bool):
        xi = Fraction(xi)
        return sum((c * _phase(f, xi) for c, f in P.terms), 0j)
    return complex(
        sum(c * np.exp(2j * np.pi * float(f) * float(xi)) for c, f in P.terms)
    )


def eval_numeric_array(P: ExpPolynomial, xs: np.ndarray) -> np.ndarray:
    xs = np.asarray(xs, dtype=float)
    freqs = np.array([float(f) for f in P.frequencies])
    coeffs = np.array(P.coefficients, dtype=float)
    return np.exp(2j * np.pi * np.outer(xs, freqs)) @ coeffs


def eval_chi_hat(omega: IntervalUnion, xi: Union[float, Fraction, int]) -> complex:
    """Fourier transform of the indicator of ``omega`` (value ``|omega|`` at 0)."""
    if xi == 0:
        return complex(float(measure(omega)))
    return eval_numeric(from_domain(omega), xi) / (2j * math.pi * float(xi))


def is_zero_exact(P: ExpPolynomial, xi: Union[Fraction, int]) -> ZeroVerdict:
    """
    Exact membership of a rational ``xi`` in the zero set (with 0 adjoined by convention).

    >>> is_zero_exact(from_domain(IntervalUnion.from_pairs([(0, 1)])), Fraction(5)).is_zero
    True
    """
    if isinstance(xi, float):
        raise TypeError("exact zero tests need a rational argument; use zero_verdict for floats")
    xi = to_rational(xi)
    if xi == 0:
        return ZeroVerdict(True, "exact")
    return ZeroVerdict(sum_is_zero(P.root_terms(xi)), "exact")


def is_zero(P: ExpPolynomial, xi: Union[Fraction, int]) -> bool:
    return is_zero_exact(P, xi).is_zero


def zero_verdict(P: ExpPolynomial, xi, tol: float = 1e-9) -> ZeroVerdict:
    """Exact verdict for rationals, numeric (with the magnitude as witness) otherwise."""
    if isinstance(xi, (Fraction, int)) and not isinstance(xi, bool):
        return is_zero_exact(P, xi)
    mag = abs(eval_numeric(P, float(xi)))
    return ZeroVerdict(mag <= tol, "numeric", mag)


def _refine(P: ExpPolynomial, x: float, lo: float, hi: float) -> float:
    """Gauss-Newton on the complex residual: ``x -= Re(conj(P') P) / |P'|^2``."""
    freqs = np.array([float(f) for f in P.frequencies])
    coeffs = np.array(P.coefficients, dtype=float)
    dcoeffs = 2j * np.pi * freqs * coeffs
    for _ in range(80):
        e = np.exp(2j * np.pi * freqs * x)
        p = e @ coeffs
        dp = e @ dcoeffs
        denom = (dp.conjugate() * dp).real
        if denom == 0:
            break
        step = (dp.conjugate() * p).real / denom
        x_new = min(max(x - step, lo), hi)
        if abs(x_new - x) <= 1e-16 * max(1.0, abs(x)):
            x = x_new
            break
        x = x_new
    return x


def scan_zeros_numeric(P: ExpPolynomial, lo: float, hi: float, tol: float = 1e-9) -> list[float]:
    """
    Approximate real zeros of ``P`` in ``[lo, hi]``.

    Local minima of ``|P|`` on a grid of pitch at most ``1/(32 * bandwidth)`` are
    polished by Gauss-Newton and kept when ``|P| <= tol``. Zeros closer together than
    the pitch may be reported once.
    """
    lo, hi, tol = float(lo), float(hi), float(tol)
    if not lo < hi:
        raise ValueError("scan range must satisfy lo < hi")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not P.terms:
        raise ValueError("P is identically zero")
    bw = float(P.bandwidth) or 1.0
    pitch = 1.0 / (32.0 * bw)
    count = int(math.ceil((hi - lo) / pitch)) + 1
    xs = np.linspace(lo, hi, count)
    h = xs[1] - xs[0]
    mags = np.abs(eval_numeric_array(P, xs))
    left = np.concatenate(([np.inf], mags[:-1]))
    right = np.concatenate((mags[1:], [np.inf]))
    seeds = np.nonzero((mags <= left) & (mags <= right))[0]

    found: list[float] = []
    for i in seeds:
        x0 = float(xs[i])
        x = _refine(P, x0, max(lo, x0 - h), min(hi, x0 + h))
        if abs(eval_numeric(P, x)) <= tol:
            found.append(float(x))
    found.sort()
    merge = max(tol, 1e-8)
    out: list[float] = []
    for x in found:
        if out and x - out[-1] <= merge:
            continue
        out.append(x)
    return out
