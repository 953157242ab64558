"""Optimal zero-error block computation of symmetric Boolean functions
in a collocated broadcast network."""

from .complexity import (
    CodebookSizeTable,
    RateResult,
    codebook_size,
    delta_complexity,
    diagnostics,
    interval_bounds,
    percentile_interval,
    rate,
    residual_ratio,
    threshold_complexity,
    union_asymptotic,
)
from .errors import (
    BoolCommError,
    BudgetExceeded,
    DecodeError,
    DecodeMismatch,
    DomainError,
    InvariantViolation,
    SpecParseError,
    UnsupportedFunction,
)
from .foolingset import ColumnFamily, construct_family, family, lower_bound_bits, verify_fooling
from .prefixcode import CanonicalCode, LengthProfile, comb_rank, comb_unrank, kraft_check, target_length
from .protocol import MeasurementMatrix, Transcript, rate_estimate, replay, run, verify, worst_case_bits
from .symfunc import (
    SymmetricFunction,
    constant_value,
    evaluate,
    make_delta,
    make_interval,
    make_levels,
    make_threshold,
    make_union,
    parse_spec,
    residual,
)

__version__ = "0.1.0"
