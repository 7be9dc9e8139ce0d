"""Pairwise CHSH trade-offs and correlation-tensor bounds for small pure states."""

__version__ = "0.1.0"

from .constants import TOL
from .errors import (
    ChshTradeoffError,
    DegenerateInput,
    DimensionError,
    NormalizationError,
    NumericalError,
    ParamError,
    StateFormatError,
)
from .qcore import (
    BlochData,
    CorrelationMatrix,
    DensityMatrix,
    PureState,
    bloch_decompose,
    density,
    haar_random_state,
    partial_trace,
    pauli_expectation,
    pure_state,
    purity,
)
from .chsh import ChshSettings, EigenTriple, chsh_value, max_chsh, mtm_eigs, optimize_settings
from .slocc import (
    BiseparableParams,
    GhzParams,
    SloccClass,
    WParams,
    classify,
    make_biseparable,
    make_ghz,
    make_product,
    make_w,
    three_tangle,
)
from .tradeoff3 import (
    TradeoffReport,
    closed_form_biseparable,
    closed_form_ghz,
    closed_form_w,
    pairwise_chsh_squares,
    tradeoff_sum,
    trace_identity,
)
from .conjecture4 import (
    ConjectureResult,
    PairTensor,
    SearchResult,
    conjecture_sum,
    conjecture_sum_n,
    generalized_ghz4,
    local_ascent,
    pair_tensor,
    search_max,
)

__all__ = [
    "TOL",
    "ChshTradeoffError",
    "DegenerateInput",
    "DimensionError",
    "NormalizationError",
    "NumericalError",
    "ParamError",
    "StateFormatError",
    "BlochData",
    "CorrelationMatrix",
    "DensityMatrix",
    "PureState",
    "bloch_decompose",
    "density",
    "haar_random_state",
    "partial_trace",
    "pauli_expectation",
    "pure_state",
    "purity",
    "ChshSettings",
    "EigenTriple",
    "chsh_value",
    "max_chsh",
    "mtm_eigs",
    "optimize_settings",
    "BiseparableParams",
    "GhzParams",
    "SloccClass",
    "WParams",
    "classify",
    "make_biseparable",
    "make_ghz",
    "make_product",
    "make_w",
    "three_tangle",
    "TradeoffReport",
    "closed_form_biseparable",
    "closed_form_ghz",
    "closed_form_w",
    "pairwise_chsh_squares",
    "tradeoff_sum",
    "trace_identity",
    "ConjectureResult",
    "PairTensor",
    "SearchResult",
    "conjecture_sum",
    "conjecture_sum_n",
    "generalized_ghz4",
    "local_ascent",
    "pair_tensor",
    "search_max",
]
