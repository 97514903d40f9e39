"""Exact-arithmetic workbench for spectral sets that are finite unions of intervals."""
from .core import (
    AffineMap,
    DiscreteSampleSet,
    DomainError,
    IntervalUnion,
    MultiplicityFunction,
    PeriodicSet,
    fold_multiplicity,
    measure,
    normalize_domain,
)
from .cyclotomic import (
    CyclotomicElement,
    IntegerPolynomial,
    RootOfUnityTerm,
    cyclotomic_polynomial,
    normalize_element,
    sum_is_zero,
)
from .embedding import (
    PhiVector,
    SpanBasis,
    basis_translate_period,
    membership_test,
    null_form,
    periodic_extension,
    phi,
    rank_span,
)
from .expoly import (
    ExpPolynomial,
    ZeroVerdict,
    eval_chi_hat,
    eval_numeric,
    from_domain,
    is_zero_exact,
    scan_zeros_numeric,
)
from .newton import (
    APVerdict,
    check_ap_zeroset,
    extend_ap_in_spectrum,
    power_sums_to_coeffs,
    verify_tiling,
)
from .search import SearchConfig, SpectrumVerdict, fuglede_crosscheck, search_spectra, verify_spectrum
from .structure import (
    DensityReport,
    FiberDecomposition,
    GapAlphabet,
    WindowProfile,
    decompose,
    discover_period,
    gap_alphabet,
    landau_counts,
    verify_decomposition,
    window_profile,
)

__version__ = "0.1.0"
