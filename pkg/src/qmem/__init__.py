"""Classical capacity of correlated two-qubit Pauli channels.

Channels, closed-form output spectra, optimal-input phase classification,
parameter-plane phase diagrams, a Gaussian random-rotation memory model, and
an independent brute-force verification oracle.
"""

from .analytic import (
    ClassificationResult,
    InputState,
    OutputEntries,
    PhaseLabel,
    classify_subclass,
    holevo_covariant,
    optimize_symmetric,
    output_entries,
    subclass_candidates,
    subclass_eigenvalues,
    symmetric_entropy,
    symmetric_spectrum,
    y_functional,
)
from .channel import (
    Channel,
    SubclassParams,
    SymmetricChannelParams,
    subclass_params_from_matrix,
    symmetric_params_from_matrix,
)
from .errors import (
    ContractViolationError,
    InternalConsistencyError,
    QmemError,
    ValidationError,
)
from .gaussian import (
    GaussianModelParams,
    MonteCarloChannelEstimate,
    classify_gaussian,
    monte_carlo_channel,
    phase_boundary_sigma,
    reduce_to_subclass,
)
from .kernels import backend, bruteforce_entropies
from .linalg import binary_entropy, von_neumann_entropy
from .oracle import (
    bisect_gaussian_flip,
    entropy_bruteforce,
    global_minimum_search,
    report_passed,
    run_verification_suite,
    verify_gaussian_reduction,
)
from .phasediag import (
    CoexistenceBand,
    Domain,
    PhasePoint,
    ScanGrid,
    coexistence_band,
    correlation_contours,
    extract_boundaries,
    scan_gaussian,
    scan_subclass,
)
from .serialize import channel_from_doc, channel_from_json

__version__ = "0.1.0"

__all__ = [
    "Channel",
    "SubclassParams",
    "SymmetricChannelParams",
    "symmetric_params_from_matrix",
    "subclass_params_from_matrix",
    "InputState",
    "OutputEntries",
    "PhaseLabel",
    "ClassificationResult",
    "classify_subclass",
    "subclass_candidates",
    "subclass_eigenvalues",
    "symmetric_spectrum",
    "symmetric_entropy",
    "output_entries",
    "y_functional",
    "optimize_symmetric",
    "holevo_covariant",
    "GaussianModelParams",
    "MonteCarloChannelEstimate",
    "classify_gaussian",
    "monte_carlo_channel",
    "phase_boundary_sigma",
    "reduce_to_subclass",
    "backend",
    "bruteforce_entropies",
    "binary_entropy",
    "von_neumann_entropy",
    "entropy_bruteforce",
    "global_minimum_search",
    "bisect_gaussian_flip",
    "run_verification_suite",
    "report_passed",
    "verify_gaussian_reduction",
    "Domain",
    "ScanGrid",
    "PhasePoint",
    "CoexistenceBand",
    "scan_subclass",
    "scan_gaussian",
    "extract_boundaries",
    "correlation_contours",
    "coexistence_band",
    "channel_from_doc",
    "channel_from_json",
    "QmemError",
    "ValidationError",
    "ContractViolationError",
    "InternalConsistencyError",
]
