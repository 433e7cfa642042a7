"""Entropic (Rényi/Tsallis) separability tests for bipartite states.

Joint measurements are assembled from local POVMs by cyclic convolution of
outcome labels; local uncertainty bounds then turn into inequalities that
every separable state satisfies.
"""

from .criteria import (
    ConvolutionPOVM,
    CriterionReport,
    build_convolution_povm,
    correlation_measure,
    gsic_criterion,
    maj_criterion,
    maj_criterion_qubit,
    mu_criterion,
    mub_criterion,
    mum_criterion,
    sic_criterion,
)
from .entropy import INFINITY, alpha_log, convolve, majorizes, norm_alpha, renyi, shannon, tsallis
from .linalg import DensityMatrix, kron, partial_trace, spectral_norm, validate_density
from .majorization import SValueProfile, s_values, subset_bound
from .measurements import (
    GeneralPOVM,
    RankOnePOVM,
    eta,
    overlap_matrix,
    probabilities,
    qubit_pauli_mubs,
    rotated_qubit_basis,
    sic_povm,
)
from .scan import ThresholdResult, scan_threshold
from .states import qutrit_family, werner_qubit

__version__ = "0.1.0"

__all__ = [
    "ConvolutionPOVM",
    "CriterionReport",
    "DensityMatrix",
    "GeneralPOVM",
    "INFINITY",
    "RankOnePOVM",
    "SValueProfile",
    "ThresholdResult",
    "alpha_log",
    "build_convolution_povm",
    "convolve",
    "correlation_measure",
    "eta",
    "gsic_criterion",
    "kron",
    "maj_criterion",
    "maj_criterion_qubit",
    "majorizes",
    "mu_criterion",
    "mub_criterion",
    "mum_criterion",
    "norm_alpha",
    "overlap_matrix",
    "partial_trace",
    "probabilities",
    "qubit_pauli_mubs",
    "qutrit_family",
    "renyi",
    "rotated_qubit_basis",
    "s_values",
    "scan_threshold",
    "shannon",
    "sic_criterion",
    "sic_povm",
    "spectral_norm",
    "subset_bound",
    "tsallis",
    "validate_density",
    "werner_qubit",
]
