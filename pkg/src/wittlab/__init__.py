"""Exact arithmetic for p-typical Witt vectors over normed rings.

The package computes with truncated Witt vectors, their ghost coordinates,
coherent Frobenius towers and their overconvergence norms, finite-precision
tilts, p-power root sequences in cyclotomic towers, and Frobenius-equation
solvers, all in exact rational arithmetic.  Norms are carried as rational
exponents of p, never floats.
"""

from .errors import (
    BOutOfRange,
    CapabilityMissing,
    DepthExceeded,
    InsufficientDepth,
    IntegralityViolation,
    LengthMismatch,
    MalformedConfig,
    NoRoot,
    NotDivisible,
    NotEnumerable,
    PrecisionExhausted,
    RescaleInfeasible,
    RingMismatch,
    UnknownSuite,
    WittError,
)
from .norms import NormValue, norm_max, norm_min
from .rings import Integers, Rationals, Ring, TruncInt, ZModPM
from .cyclotomic import (
    CycloModPM,
    CyclotomicField,
    CyclotomicTower,
    GaussianField,
    TruncVec,
    cyclotomic_field,
)
from .perfpoly import PerfPolyRing
from .univ import (
    UPoly,
    canonical_dump,
    component_labels,
    ghost_poly,
    structure_cap,
    structure_poly,
    structure_poly_labels,
)
from .witt import (
    GhostVec,
    WittVec,
    frobenius,
    frobenius_iter,
    ghost,
    integer_witt_components,
    mul_by_int,
    restrict,
    teich_mul,
    teichmuller,
    unghost,
    verschiebung,
    witt_add,
    witt_eq,
    witt_from_integer,
    witt_mul,
    witt_neg,
    witt_norm,
    witt_norm_attained,
    witt_norm_profile,
    witt_one,
    witt_sub,
    witt_vec,
    witt_zero,
)
from .arrow import (
    ArrowElt,
    ArrowNorm,
    arrow_add,
    arrow_eq,
    arrow_from_integer,
    arrow_mul,
    arrow_neg,
    arrow_norm,
    arrow_sub,
    arrow_teichmuller,
    frobenius_arrow,
    inverse_frobenius,
    inverse_frobenius_sandwich,
    lift_arrow_precision,
    make_arrow,
    project,
    rigidity_profile,
    sample_coherent,
    theta,
    theta_series,
)
from .perfect import (
    PerfectReport,
    RootSequence,
    build_root_sequence,
    power_ideal_check,
    solve_frobenius,
    solve_frobenius_normed,
    witt_perfect_test,
)
from .tilt import (
    TiltElt,
    TiltRing,
    charp_arrow_realization,
    charp_limit_norm,
    charp_overconv_norm,
    charp_overconv_profile,
    enumerate_tilts,
    growth_family,
    growth_profile_report,
    make_tilt,
    tilt_add,
    tilt_constant,
    tilt_eq,
    tilt_frobenius,
    tilt_from_top,
    tilt_is_zero,
    tilt_mul,
    tilt_neg,
    tilt_norm,
    tilt_pth_root,
    tilt_residue,
    tilt_sub,
    untilt,
    untilt_isometry,
)
from .kernelnorm import (
    kernel_element_from_w1,
    kernel_exponent,
    symbolic_kernel_identity,
    verify_kernel_norm,
)
from .artin import (
    ghost_constant_profile,
    invariant_classify,
    predicted_invariant_member,
    teichmuller_phi_invariance,
)
from .config import ring_from_config, ring_from_spec
from .suites import SUITE_NAMES, CaseResult, SuiteReport, run_suite

__version__ = "0.1.0"
