"""Collective-noise-immune qudit encoding.

Builds the (d+1)-qudit unitary whose leading block protects one qudit from
any collective single-site map, chains it recursively over k*d + 1 qudits,
and verifies the protection numerically.  The top-level entry point is the
scikit-learn style :class:`NoiselessSubsystemEncoder`; the underlying
construction, combinatorics, and simulation tools are importable from the
submodules re-exported here.
"""

from .channel import (
    DEFAULT_MAX_ENTRIES,
    NoiseModel,
    RecursiveCode,
    ResourceLimitError,
    SimulationReport,
    apply_noise,
    assemble_state,
    decode,
    encode,
    encoding_rate,
    extract_data,
    make_code,
    max_entries_limit,
    rate_table,
    rate_table_csv,
    rate_table_json_dict,
    simulate,
)
from .encoder import (
    AlignmentError,
    BlockReport,
    EncoderSpec,
    align_copies,
    build_encoder,
    encoder_from_copies,
    isotypic_fundamental_basis,
    load_encoder,
    reference_encoder_qubit,
    save_encoder,
    spin_three_half_generators,
    symmetrizer_projector,
    verify_block_structure,
)
from .estimator import NoiselessSubsystemEncoder
from .linalg import (
    basis_state,
    canonical_phase,
    collective_operator,
    fidelity,
    is_unitary,
    kron,
    kron_all,
    matrix_from_json_dict,
    matrix_to_json_dict,
    partial_trace,
    polar_unitary_factor,
    random_special_linear,
    random_special_unitary,
    random_state_vector,
    reduced_density_matrix,
    unitarity_residual,
)
from .tableaux import (
    StandardTableau,
    YoungDiagram,
    frobenius_multiplicity,
    fundamental_equivalent_shape,
    irrep_dimension,
    partitions,
    standard_tableau_count,
    standard_tableaux,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentError",
    "BlockReport",
    "DEFAULT_MAX_ENTRIES",
    "EncoderSpec",
    "NoiseModel",
    "NoiselessSubsystemEncoder",
    "RecursiveCode",
    "ResourceLimitError",
    "SimulationReport",
    "StandardTableau",
    "YoungDiagram",
    "align_copies",
    "apply_noise",
    "assemble_state",
    "basis_state",
    "build_encoder",
    "canonical_phase",
    "collective_operator",
    "decode",
    "encode",
    "encoder_from_copies",
    "encoding_rate",
    "extract_data",
    "fidelity",
    "frobenius_multiplicity",
    "fundamental_equivalent_shape",
    "irrep_dimension",
    "is_unitary",
    "isotypic_fundamental_basis",
    "kron",
    "kron_all",
    "load_encoder",
    "make_code",
    "matrix_from_json_dict",
    "matrix_to_json_dict",
    "max_entries_limit",
    "partial_trace",
    "partitions",
    "polar_unitary_factor",
    "random_special_linear",
    "random_special_unitary",
    "random_state_vector",
    "rate_table",
    "rate_table_csv",
    "rate_table_json_dict",
    "reduced_density_matrix",
    "reference_encoder_qubit",
    "save_encoder",
    "simulate",
    "spin_three_half_generators",
    "standard_tableau_count",
    "standard_tableaux",
    "symmetrizer_projector",
    "unitarity_residual",
    "verify_block_structure",
]
