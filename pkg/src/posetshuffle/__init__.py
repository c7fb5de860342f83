"""Exact spectral analysis and sampling for the position-shuffle Markov
chain on linear extensions of finite posets.

The package builds exact rational transition matrices for the chain that
carries a uniformly chosen entry to a uniformly chosen position, verifies
the second-eigenvalue bound (1 + 1/n)(1 - 2/n) across small posets, splits
the matrix as an outer product of the carry-to-end chain, certifies the
two-chains-plus-one-cover family by an explicit rank-one update, and
measures exact and empirical mixing times.
"""

from ._backend import backend_name, use_backend
from .chains import (
    ChainSpec,
    FactorizationReport,
    adjacent_weights,
    chain_matrix,
    conjugate_by_reversal,
    factorization_report,
    lazy_adjacent_matrix,
    lumped_matrix,
    random_to_random_matrix,
    random_to_top_matrix,
    reversal_permutation,
    sort_fibers,
    swap_word_matrix,
)
from .errors import (
    ConnectedPoset,
    CycleError,
    DimensionMismatch,
    IncompatiblePosets,
    LabelError,
    LengthMismatch,
    NoConvergence,
    NotADistribution,
    NotAPermutation,
    NotLumpable,
    NotStochastic,
    NotSymmetric,
    PosetShuffleError,
    PositionRange,
    RangeError,
    SizeMismatch,
    TrivialPoset,
)
from .extensions import (
    ExtensionSet,
    apply_move,
    apply_swap_word,
    apply_tau,
    enumerate_extensions,
    format_word,
    is_linear_extension,
    parse_word,
    reverse_extension,
    sort_map,
    sorting_path,
)
from .mixing import (
    MixingReport,
    SampleBatch,
    SampleTrace,
    ScalingReport,
    ScalingRow,
    chain_step,
    default_burn_in,
    diameter,
    distance_profile,
    exact_mixing_time,
    identity_start_mixing_time,
    lazy_adjacent_mixing,
    sample_batch,
    sample_extensions,
    scaling_experiment,
    shuffle_mixing,
    step_frequencies,
    trace_chain,
    tv_distance,
)
from .poset import (
    Poset,
    antichain,
    canonical_form,
    chain,
    chain_ordering,
    direct_sum,
    dual,
    enumerate_posets,
    is_connected,
    n_shape_triple,
    poset_from_covers,
    poset_from_json_dict,
    poset_inclusion,
    random_poset,
    relabel,
    sum_of_chains,
)
from .ratmat import RationalMatrix
from .spectral import (
    RankOneCertificate,
    SpectralReport,
    conjecture_bound,
    conjecture_check,
    eigenvalues_symmetric,
    interlacing_check,
    lifted_spectrum_check,
    rank_one_certificate,
    special_extensions,
)
from .survey import (
    ScanReport,
    SurveyRecord,
    SurveySummary,
    bound_table,
    inclusion_ordered_table,
    monotonicity_scan,
    summarize,
    survey_csv_lines,
    verify_all,
)

__version__ = "0.1.0"

__all__ = [
    "ChainSpec",
    "ConnectedPoset",
    "CycleError",
    "DimensionMismatch",
    "ExtensionSet",
    "FactorizationReport",
    "IncompatiblePosets",
    "LabelError",
    "LengthMismatch",
    "MixingReport",
    "NoConvergence",
    "NotADistribution",
    "NotAPermutation",
    "NotLumpable",
    "NotStochastic",
    "NotSymmetric",
    "Poset",
    "PosetShuffleError",
    "PositionRange",
    "RangeError",
    "RankOneCertificate",
    "RationalMatrix",
    "SampleBatch",
    "SampleTrace",
    "ScalingReport",
    "ScalingRow",
    "ScanReport",
    "SizeMismatch",
    "SpectralReport",
    "SurveyRecord",
    "SurveySummary",
    "TrivialPoset",
    "adjacent_weights",
    "antichain",
    "apply_move",
    "apply_swap_word",
    "apply_tau",
    "backend_name",
    "bound_table",
    "canonical_form",
    "chain",
    "chain_matrix",
    "chain_ordering",
    "chain_step",
    "conjecture_bound",
    "conjecture_check",
    "conjugate_by_reversal",
    "default_burn_in",
    "diameter",
    "direct_sum",
    "distance_profile",
    "dual",
    "eigenvalues_symmetric",
    "enumerate_extensions",
    "enumerate_posets",
    "exact_mixing_time",
    "factorization_report",
    "format_word",
    "identity_start_mixing_time",
    "inclusion_ordered_table",
    "interlacing_check",
    "is_connected",
    "is_linear_extension",
    "lazy_adjacent_matrix",
    "lazy_adjacent_mixing",
    "lifted_spectrum_check",
    "lumped_matrix",
    "monotonicity_scan",
    "n_shape_triple",
    "parse_word",
    "poset_from_covers",
    "poset_from_json_dict",
    "poset_inclusion",
    "random_poset",
    "random_to_random_matrix",
    "random_to_top_matrix",
    "rank_one_certificate",
    "relabel",
    "reversal_permutation",
    "reverse_extension",
    "sample_batch",
    "sample_extensions",
    "scaling_experiment",
    "shuffle_mixing",
    "sort_fibers",
    "sort_map",
    "sorting_path",
    "special_extensions",
    "step_frequencies",
    "sum_of_chains",
    "summarize",
    "survey_csv_lines",
    "swap_word_matrix",
    "trace_chain",
    "tv_distance",
    "use_backend",
    "verify_all",
]
