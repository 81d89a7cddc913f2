"""Maslov-type ω-index, splitting numbers and iteration of symplectic paths."""

from .config import RunConfig
from .core import (
    J,
    NormalFormFactor,
    compose,
    d_omega,
    diamond,
    elliptic_height,
    is_symplectic,
    make_normal_form,
    nu_omega,
    random_symplectic,
    rotation,
    undiamond,
    unit_spectrum,
)
from .errors import (
    ClassificationError,
    ContractError,
    DecompositionError,
    DegeneracyError,
    DimensionError,
    DocumentError,
    EngineInconsistencyError,
    ExhaustionError,
    NumericalConsistencyError,
    ParameterError,
    PreconditionError,
    SymplecticError,
)
from .index_jump import JumpCertificate, JumpReport, common_multiple, find_jump, verify_jump
from .iteration import (
    OmegaIndexProfile,
    index_iterates,
    iteration_gap_check,
    mean_index,
    omega_profile,
)
from .ledger import (
    CriticalAssignment,
    GeodesicEnsemble,
    GeodesicModel,
    expected_window_count,
    hypothesis_check,
    kappa_sequence,
    rational_average_audit,
    sigma_ratio_check,
    visible_map,
    window_degrees,
)
from .normal_form import NormalFormDecomposition, decompose, invariant_report, recompose
from .paths import (
    SymplecticPath,
    concat,
    diamond_paths,
    from_generators,
    from_hamiltonian,
    from_samples,
    index_omega,
    iterate_path,
    rotation_path,
    xi_path,
)
from .splitting import SplittingPair, splitting_numbers, splitting_of_product, splitting_table, table_rows

__version__ = "0.1.0"
