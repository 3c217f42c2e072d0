"""Permutation-twirl channel numerics.

Dense linear algebra for the channel that averages a matrix over
conjugation by every permutation matrix, its closed forms on single and
bipartite systems, twirl-derived coherence bounds, and
positive-partial-transpose separability checks.
"""

from . import errors
from .coherence import (
    AssistanceEstimate,
    CoherenceReport,
    MEASURE_L1,
    MEASURE_REL_ENT,
    MEASURES,
    assistance_estimate,
    coherence_report,
    dephase,
    l1_coherence,
    l1_lower_bound,
    rel_ent_coherence,
    rel_ent_lower_bound,
    von_neumann_entropy,
)
from .entanglement import PptReport, Verdict, bell_octahedron_member, is_ppt, separable_verdict
from .linalg import (
    DEFAULT_TOL,
    dagger,
    hermitian_eigen,
    hs_inner,
    kron,
    max_abs_diff,
    partial_trace,
    partial_transpose,
    trace,
)
from .states import (
    DensityMatrix,
    PAULIS,
    SIGMA_1,
    SIGMA_2,
    SIGMA_3,
    all_ones_projector,
    bell_diagonal_state,
    bloch_of_qubit,
    enumerate_permutations,
    maximally_coherent_mixed_state,
    maximally_coherent_state,
    maximally_entangled_state,
    permutation_matrix,
    qubit_from_bloch,
    random_density,
    random_hermitian,
    sanitize_density,
    validate_density,
)
from .twirl import (
    BipartiteTwirlCoefficients,
    EntanglementBreakingCertificate,
    TwirlSummary,
    choi_matrix,
    collective_twirl_bruteforce,
    entanglement_breaking_certificate,
    reconstruct_output_state,
    twirl_bruteforce,
    twirl_closed_form,
    twirl_one_sided,
    twirl_one_sided_bruteforce,
    twirl_params,
    twirl_two_sided,
    twirl_two_sided_bruteforce,
)

__version__ = "0.1.0"

__all__ = [
    "AssistanceEstimate",
    "BipartiteTwirlCoefficients",
    "CoherenceReport",
    "DEFAULT_TOL",
    "DensityMatrix",
    "EntanglementBreakingCertificate",
    "MEASURES",
    "MEASURE_L1",
    "MEASURE_REL_ENT",
    "PAULIS",
    "PptReport",
    "SIGMA_1",
    "SIGMA_2",
    "SIGMA_3",
    "TwirlSummary",
    "Verdict",
    "all_ones_projector",
    "assistance_estimate",
    "bell_diagonal_state",
    "bell_octahedron_member",
    "bloch_of_qubit",
    "choi_matrix",
    "coherence_report",
    "collective_twirl_bruteforce",
    "dagger",
    "dephase",
    "entanglement_breaking_certificate",
    "enumerate_permutations",
    "errors",
    "hermitian_eigen",
    "hs_inner",
    "is_ppt",
    "kron",
    "l1_coherence",
    "l1_lower_bound",
    "max_abs_diff",
    "maximally_coherent_mixed_state",
    "maximally_coherent_state",
    "maximally_entangled_state",
    "partial_trace",
    "partial_transpose",
    "permutation_matrix",
    "qubit_from_bloch",
    "random_density",
    "random_hermitian",
    "reconstruct_output_state",
    "rel_ent_coherence",
    "rel_ent_lower_bound",
    "sanitize_density",
    "separable_verdict",
    "trace",
    "twirl_bruteforce",
    "twirl_closed_form",
    "twirl_one_sided",
    "twirl_one_sided_bruteforce",
    "twirl_params",
    "twirl_two_sided",
    "twirl_two_sided_bruteforce",
    "validate_density",
    "von_neumann_entropy",
]
