"""Exact combinatorics of signed closed paths on bouquet graphs.

A bouquet graph is a single vertex carrying R oriented loops.  Closed paths
are encoded as words of (loop, exponent) letters; this package enumerates
them, groups them into rotation classes, signs the aperiodic classes, and
verifies that the brute-force class counts match their closed forms and the
product identities they satisfy.
"""

from ._kernel import BACKEND, available_backends
from .counting import (
    SequenceCounts,
    WittRecord,
    a_coeff,
    b_coeff,
    c_coeff,
    dim_L,
    mobius,
    sequence_counts,
    sequence_weight,
    stirling2,
    theta_ccw,
    theta_minus,
    theta_plus,
    theta_plus_via_witt,
    theta_total,
    witt_partition,
    witt_record,
    word_total,
)
from .identities import (
    VerificationReport,
    brute_force_aperiodic_necklaces,
    verify_denominator,
    verify_exp_log,
    verify_feynman,
    verify_partial_product,
    verify_theorem32,
    verify_witt_routes,
)
from .series import (
    MultiPoly,
    TruncatedSeries,
    d_coeffs,
    f_r_ccw,
    f_r_signed,
    series_exp,
    series_log,
    series_mul,
    series_pow,
)
from .signs import (
    CrossingCounts,
    Decomposition,
    SignData,
    decompose,
    periodic_sign_check,
    relabel_loops,
    sign,
    type1_crossings,
    type2_crossings,
)
from .words import (
    DEFAULT_WORD_BUDGET,
    Census,
    CyclicClass,
    Letter,
    PathWord,
    canonical_rotation,
    census,
    cyclic_class,
    enumerate_words,
    format_word,
    parse_word,
    period,
    rotations,
    validate_word,
)

__version__ = "0.1.0"
