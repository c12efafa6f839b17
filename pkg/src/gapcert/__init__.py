"""Certified spectral enclosures for relatively bounded perturbations."""

from .applications import (
    CoulombRegion,
    CoulombSpec,
    DiracSpec,
    EnvelopeCurve,
    ManifoldBounds,
    ManifoldSpec,
    TwoChannelResult,
    TwoChannelSpec,
    dirac2d_constants,
    dirac2d_cp,
    dirac2d_envelope,
    dirac3d_coulomb,
    envelope_im_at_re,
    manifold_relbounds,
    two_channel_bound,
)
from .blocks import (
    BlockMinima,
    DiagBounds,
    EigCountInterval,
    NumRangeBounds,
    OffDiagBounds,
    OffDiagGapResult,
    almost_gap_eig_bound,
    even_lowerbound,
    even_lowerbound_quadratic,
    odd_symmetric_gap,
    offdiag_gap,
)
from .enclosures import (
    Disk,
    EigStrip,
    Gap,
    GKCover,
    IsolatedEigSpec,
    LinBound,
    QuadBound,
    StripResult,
    SymmetricGapResult,
    gap_condition,
    gk_sector_cover,
    hyperbola_excluded,
    isolated_eigenvalue_strip,
    lower_semicont_balls,
    optimal_shift_linear,
    perturbed_strip,
    perturbed_strip_linear,
    quad_from_linear,
    resolvent_bound_offreal,
    resolvent_bound_strip,
    resolvent_bound_strip_refined,
    semibounded_lower_bound,
    subordination_family,
    symmetric_gap_strip,
)
from .errors import BoundNotValid, ConditionNotApplicable, NearSingular, NumericalFailure
from .gap_sequences import (
    BandProfile,
    ConstModel,
    GapSequence,
    GrowthDiagnostic,
    GrowthTerm,
    PerGapConstants,
    PerGapResult,
    PowerlawBound,
    RatioResult,
    TailModel,
    Verdict,
    kappa_s,
    necessary_growth_check,
    per_gap_criterion,
    powerlaw_example,
    ratio_criterion,
)
from .matrix_lab import (
    CheckResult,
    MatrixInstance,
    SuiteResult,
    VerificationReport,
    VerifyOptions,
    eig,
    gen_instance,
    gen_isolated_instance,
    measure_quad_bound,
    numrange_extremes,
    resolvent_norm,
    run_suite,
    standard_suite_specs,
    verify_instance,
)

__version__ = "0.1.0"
