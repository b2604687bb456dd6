"""Schmidt-number lower bounds for bipartite mixed states via degenerating loci."""

from .bounds import (BoundReport, analyze, generic_t_condition, optimal_generic_bound,
                     theorem1_case_bounds, theorem2_bound)
from .errors import InvalidInputError, UnsupportedConfigurationError
from .experiments import example3_subspace, export_summary, run_generic_experiment
from .linalg import (RankPolicy, column_space_basis, hermitian_eig, numerical_rank,
                     sample_unit_vector)
from .locus import (BlockFamily, EmptinessCertificate, ProbeConfig, Verdict, build_blocks,
                    locus_empty, min_pencil_rank, pencil_eval, stacked_row_rank,
                    v0_empty_exact)
from .states import (EnsembleState, PureState, coefficient_matrix, example_state,
                     from_density, random_rank_r_state, range_basis, schmidt_rank)
from .statefile import parse_state_file, write_state_file

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "analyze",
    "generic_t_condition",
    "optimal_generic_bound",
    "theorem1_case_bounds",
    "theorem2_bound",
    "InvalidInputError",
    "UnsupportedConfigurationError",
    "example3_subspace",
    "export_summary",
    "run_generic_experiment",
    "RankPolicy",
    "column_space_basis",
    "hermitian_eig",
    "numerical_rank",
    "sample_unit_vector",
    "BlockFamily",
    "EmptinessCertificate",
    "ProbeConfig",
    "Verdict",
    "build_blocks",
    "locus_empty",
    "min_pencil_rank",
    "pencil_eval",
    "stacked_row_rank",
    "v0_empty_exact",
    "EnsembleState",
    "PureState",
    "coefficient_matrix",
    "example_state",
    "from_density",
    "random_rank_r_state",
    "range_basis",
    "schmidt_rank",
    "parse_state_file",
    "write_state_file",
]
