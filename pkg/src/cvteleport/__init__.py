"""Phase-space toolkit for continuous-variable teleportation.

Closed-form and numerical teleportation fidelities, a seeded Monte Carlo
realization of the protocol as a classical phase-space process, two-mode
Gaussian resource classification with its extremal bounds, and the
Gaussian-kick hidden-variable model with its 2/3 gold standard.
"""

from .exceptions import (
    ConvergenceError,
    CVTeleportError,
    DomainError,
    InternalConsistencyError,
    NumericalError,
    SamplerEfficiencyError,
    ThresholdNotFoundError,
    UnsupportedSamplerError,
)
from .fidelity import (
    CurveMethod,
    FidelityCurve,
    FormsReport,
    MaxFidelityResult,
    closed_form,
    fidelity_coherent,
    fidelity_fock,
    fidelity_generating,
    fidelity_numeric,
    fidelity_superposition01,
    forms_consistency,
    max_fidelity,
    scaling_residual,
    taylor_fock_fidelities,
)
from .hv_model import (
    CheatEstimate,
    HETERODYNE_T,
    KickReport,
    Verdict,
    VerdictClass,
    cheat_run,
    kicked_quasidist,
    min_kick_threshold,
    sample_husimi,
    threshold_fidelity,
    verdict,
)
from .numerics import (
    ConvergenceReport,
    QuadratureSpec,
    StreamKey,
    block_stream,
    gauss_legendre_1d,
    gaussian_pair,
    integrate_plane,
    laguerre_assoc,
    legendre,
    make_stream,
    plane_nodes,
)
from .phase_space import (
    HUSIMI_KIND,
    WIGNER_KIND,
    QuasiDistKind,
    characteristic_fn,
    displacement_element,
    husimi_q,
    quasidist,
    s_ordered,
    smoothed_on_grid,
    smoothing_spec,
    wigner,
)
from .resource import (
    Correlation,
    ResourceClass,
    ResourceParams,
    classify,
    from_squeeze,
    g_distribution,
    g_tilde,
    gaussian_pair_overlap,
    i_integral,
    overlap_bound,
    separable_fidelity,
    violated_inequality,
    wigner_ab,
)
from .simulate import (
    BLOCK_SIZE,
    ResidualEntry,
    TeleportRunResult,
    as_stream_key,
    empirical_g_check,
    estimate_fidelity,
    resource_cholesky,
    run_protocol,
    sample_input,
    sample_resource,
)
from .states import (
    MAX_FOCK_INDEX,
    Coherent,
    FockVector,
    StateSpec,
    describe,
    fock,
    superposition01,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # exceptions
    "CVTeleportError",
    "DomainError",
    "UnsupportedSamplerError",
    "NumericalError",
    "InternalConsistencyError",
    "ConvergenceError",
    "SamplerEfficiencyError",
    "ThresholdNotFoundError",
    # numerics
    "QuadratureSpec",
    "ConvergenceReport",
    "StreamKey",
    "laguerre_assoc",
    "legendre",
    "gauss_legendre_1d",
    "plane_nodes",
    "integrate_plane",
    "make_stream",
    "block_stream",
    "gaussian_pair",
    # states
    "MAX_FOCK_INDEX",
    "Coherent",
    "FockVector",
    "StateSpec",
    "fock",
    "superposition01",
    "describe",
    # phase space
    "QuasiDistKind",
    "WIGNER_KIND",
    "HUSIMI_KIND",
    "displacement_element",
    "characteristic_fn",
    "wigner",
    "husimi_q",
    "s_ordered",
    "smoothed_on_grid",
    "smoothing_spec",
    "quasidist",
    # resource
    "ResourceParams",
    "ResourceClass",
    "Correlation",
    "from_squeeze",
    "classify",
    "violated_inequality",
    "wigner_ab",
    "g_distribution",
    "g_tilde",
    "gaussian_pair_overlap",
    "i_integral",
    "overlap_bound",
    "separable_fidelity",
    # simulation
    "BLOCK_SIZE",
    "TeleportRunResult",
    "ResidualEntry",
    "as_stream_key",
    "resource_cholesky",
    "sample_resource",
    "sample_input",
    "run_protocol",
    "estimate_fidelity",
    "empirical_g_check",
    # fidelity
    "fidelity_coherent",
    "fidelity_fock",
    "fidelity_superposition01",
    "fidelity_generating",
    "taylor_fock_fidelities",
    "fidelity_numeric",
    "closed_form",
    "FormsReport",
    "forms_consistency",
    "scaling_residual",
    "MaxFidelityResult",
    "max_fidelity",
    "CurveMethod",
    "FidelityCurve",
    # hidden-variable model
    "HETERODYNE_T",
    "kicked_quasidist",
    "KickReport",
    "min_kick_threshold",
    "threshold_fidelity",
    "CheatEstimate",
    "sample_husimi",
    "cheat_run",
    "VerdictClass",
    "Verdict",
    "verdict",
]
