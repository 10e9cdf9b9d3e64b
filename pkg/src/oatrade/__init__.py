"""Inclusion matrices of orthogonal arrays, Latin trades and intercalate bases."""
from .exact_linalg import ExactMatrix, are_independent, exact_rank, multiply, rank_mod_p
from .frequency import FrequencyVector
from .inclusion_matrix import (
    InclusionMatrix,
    SignedColumnCombination,
    SizeGuardError,
    build_matrix,
    contains,
    pivot_row,
    reduce_column,
    shadow_relation,
)
from .oa import OrthogonalArray, oa_to_frequency, verify_frequency, verify_oa_direct
from .trades import (
    GenIntercalate,
    LatinTrade,
    NotATradeError,
    PartialLatinSquare,
    SignedCombination,
    basis_intercalate,
    decompose,
    general_intercalate,
    intercalate_basis,
    reconstruct,
    to_polynomial,
    trade_to_frequency,
    verify_general_trade,
    verify_trade,
)
from .tuples import RowKey, rank_rowkey, rank_tuple, shadow, support, t_subsets, unrank_tuple

__version__ = "0.1.0"
