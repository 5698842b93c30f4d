"""Closed-form counting: admissible loop sequences, word totals, aperiodic
class counts by sign, Witt partition values and graded dimensions.

Everything here is exact.  Divisor sums that involve division (Moebius
weights, the 1/l and 1/alpha factors) are evaluated in ``fractions.Fraction``
and asserted integral at the end; no floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt

from .errors import FormulaMismatchError, NonIntegralResultError

__all__ = [
    "SequenceCounts",
    "WittRecord",
    "a_coeff",
    "b_coeff",
    "c_coeff",
    "dim_L",
    "divisors",
    "mobius",
    "sequence_counts",
    "sequence_weight",
    "stirling2",
    "theta_ccw",
    "theta_minus",
    "theta_plus",
    "theta_plus_via_witt",
    "theta_total",
    "witt_partition",
    "witt_record",
    "word_total",
]


# ---------------------------------------------------------------------------
# number-theoretic helpers


@lru_cache(maxsize=None)
def mobius(g: int) -> int:
    """Moebius function: 0 on square divisors, else (-1)^(#prime factors)."""
    if g < 1:
        raise ValueError("mobius is defined for positive integers")
    if g == 1:
        return 1
    result = 1
    p = 2
    while p * p <= g:
        if g % p == 0:
            g //= p
            if g % p == 0:
                return 0
            result = -result
        p += 1 if p == 2 else 2
    if g > 1:
        result = -result
    return result


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    """Positive divisors of n in increasing order."""
    if n < 1:
        raise ValueError("divisors is defined for positive integers")
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return tuple(small + large[::-1])


@lru_cache(maxsize=None)
def stirling2(l: int, k: int) -> int:
    """Stirling number of the second kind, S(l, k); zero when l < k."""
    if l < 0 or k < 0:
        raise ValueError("stirling2 needs nonnegative arguments")
    if l == k:
        return 1
    if l < k or k == 0:
        return 0
    return k * stirling2(l - 1, k) + stirling2(l - 1, k - 1)


def _as_int(value: Fraction, context: str) -> int:
    if value.denominator != 1:
        raise NonIntegralResultError(f"{context} evaluated to non-integer {value}")
    return value.numerator


# ---------------------------------------------------------------------------
# loop-index sequences


@dataclass(frozen=True)
class SequenceCounts:
    """Counts of length-l loop-index sequences over r loops (first index fixed).

    closed: sequences ending where they started; non_covering: sequences that
    miss at least one loop; admissible: sequences usable as word skeletons
    (adjacent-distinct, cyclically distinct, covering all r loops).
    """

    r: int
    l: int
    closed: int
    non_covering: int
    admissible: int


def _closed_count(r: int, l: int) -> int:
    value = Fraction((r - 1) ** (l - 1) + (-1) ** (l - 1) * (r - 1), r)
    return _as_int(value, f"closed_count({r},{l})")


def _non_covering_count(r: int, l: int) -> int:
    total = Fraction(0)
    for k in range(0, r - 1):
        term = Fraction(k**l + (-1) ** l * k, k + 1)
        total += (-1) ** (r + k) * comb(r - 1, k) * term
    return _as_int(total, f"non_covering_count({r},{l})")


def _admissible_count(r: int, l: int) -> int:
    if r == 1:
        # Single-loop words have exactly one letter; longer sequences would
        # repeat the loop adjacently.
        return 1 if l == 1 else 0
    total = Fraction(0)
    for k in range(1, r):
        term = Fraction(k**l + k * (-1) ** l, k + 1)
        total += (-1) ** (r + k + 1) * comb(r - 1, k) * term
    return _as_int(total, f"admissible_count({r},{l})")


@lru_cache(maxsize=None)
def sequence_counts(r: int, l: int) -> SequenceCounts:
    """Sequence census for r loops and length l.

    For r = 1 only the one-letter skeleton exists; the closed/non-covering
    split degenerates and both are reported as zero.
    """
    if r < 1 or l < 1:
        raise ValueError("sequence_counts needs r >= 1 and l >= 1")
    if r == 1:
        return SequenceCounts(r, l, closed=0, non_covering=0, admissible=_admissible_count(1, l))
    return SequenceCounts(
        r,
        l,
        closed=_closed_count(r, l),
        non_covering=_non_covering_count(r, l),
        admissible=_admissible_count(r, l),
    )


@lru_cache(maxsize=None)
def sequence_weight(r: int, l: int) -> int:
    """The weight r * w_r(l) used throughout the divisor sums.

    For r >= 2 this equals r times the admissible sequence count for every
    l >= 1.  For r = 1 it is the alternating extension (-1)^(l+1), which is
    what the counterclockwise Witt sums require; the true one-loop count
    (1 at l = 1, else 0) is available via sequence_counts.
    """
    if r < 1 or l < 1:
        raise ValueError("sequence_weight needs r >= 1 and l >= 1")
    total = (-1) ** (l + r)
    for j in range(2, r + 1):
        total += (-1) ** (r + j) * comb(r, j) * (j - 1) ** l
    return total


def word_total(r: int, N: int) -> int:
    """Number of valid words of total length N on loops 1..r, all loops used."""
    if r < 1 or N < 1:
        raise ValueError("word_total needs r >= 1 and N >= 1")
    total = 0
    for l in range(1, N + 1):
        if r == 1:
            weight = sequence_counts(1, l).admissible
        else:
            weight = sequence_weight(r, l)
        if weight:
            total += 2**l * comb(N - 1, l - 1) * weight
    return total


# ---------------------------------------------------------------------------
# aperiodic class counts


def _partition_sum(y: int, r: int, doubling: bool) -> Fraction:
    """sum over l of (1/l) C(y-1, l-1) 2^(l-1) [or 1] * r w_r(l)."""
    total = Fraction(0)
    for l in range(1, y + 1):
        weight = sequence_weight(r, l)
        if weight == 0:
            continue
        factor = 2 ** (l - 1) if doubling else 1
        total += Fraction(comb(y - 1, l - 1) * factor * weight, l)
    return total


def _signed_class_density(y: int, r: int) -> Fraction:
    """Per-divisor weight for theta_plus: (sum_k +-(2k+1)^y binomials) / 2y."""
    total = 0
    for k in range(-1, r):
        total += (-1) ** (r + k + 1) * comb(r, k + 1) * (2 * k + 1) ** y
    return Fraction(total, 2 * y)


def theta_plus(N: int, r: int) -> int:
    """Number of aperiodic cyclic classes of positive sign, length N, r loops."""
    if r < 2:
        raise ValueError("theta_plus is defined for r >= 2")
    if N < 1:
        raise ValueError("theta_plus needs N >= 1")
    if N < r:
        return 0
    total = Fraction(0)
    for g in divisors(N):
        if g % 2 == 0:
            continue
        mu = mobius(g)
        if mu:
            total += Fraction(mu, g) * _signed_class_density(N // g, r)
    value = _as_int(total, f"theta_plus({N},{r})")
    if value < 0:
        raise NonIntegralResultError(f"theta_plus({N},{r}) negative: {value}")
    return value


def theta_plus_via_witt(N: int, r: int) -> int:
    """theta_plus computed through the odd-divisor sum of signed Witt values
    instead of the closed per-divisor form; the two must agree."""
    if r < 2:
        raise ValueError("theta_plus_via_witt is defined for r >= 2")
    if N < 1:
        raise ValueError("theta_plus_via_witt needs N >= 1")
    total = Fraction(0)
    for g in divisors(N):
        if g % 2 == 0:
            continue
        mu = mobius(g)
        if mu:
            total += Fraction(mu, g) * _partition_sum(N // g, r, doubling=True)
    return _as_int(total, f"theta_plus_via_witt({N},{r})")


def theta_minus(N: int, r: int) -> int:
    """Number of aperiodic cyclic classes of negative sign, length N, r loops.

    Equals theta_plus unless N is even, composite and at least 2r, in which
    case the length-N/2 positive count is subtracted.
    """
    if r < 2:
        raise ValueError("theta_minus is defined for r >= 2")
    if N < 1:
        raise ValueError("theta_minus needs N >= 1")
    plus = theta_plus(N, r)
    if N % 2 == 1 or _is_prime(N) or N < 2 * r:
        return plus
    return plus - theta_plus(N // 2, r)


@lru_cache(maxsize=None)
def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in range(2, isqrt(n) + 1):
        if n % p == 0:
            return False
    return True


def theta_ccw(N: int, r: int) -> int:
    """Aperiodic counterclockwise classes of length N covering r fixed loops."""
    if r < 1 or N < 1:
        raise ValueError("theta_ccw needs r >= 1 and N >= 1")
    total = Fraction(0)
    for g in divisors(N):
        mu = mobius(g)
        if mu:
            total += Fraction(mu, g) * _partition_sum(N // g, r, doubling=False)
    value = _as_int(total, f"theta_ccw({N},{r})")
    if value < 0:
        raise NonIntegralResultError(f"theta_ccw({N},{r}) negative: {value}")
    return value


def theta_total(N: int, R: int, route: str = "witt") -> int:
    """Aperiodic counterclockwise classes of length N on the full R-loop graph.

    route="witt" evaluates the divisor sum (1/N) sum mu(g) R^(N/g);
    route="binomial_sum" sums theta_ccw over sublattice sizes with binomial
    multiplicity.  Both routes are exact and must agree.
    """
    if R < 1 or N < 1:
        raise ValueError("theta_total needs R >= 1 and N >= 1")
    if route == "witt":
        total = Fraction(0)
        for g in divisors(N):
            mu = mobius(g)
            if mu:
                total += mu * Fraction(R ** (N // g), N)
        return _as_int(total, f"theta_total({N},{R})")
    if route == "binomial_sum":
        return sum(comb(R, r) * theta_ccw(N, r) for r in range(1, R + 1))
    raise ValueError(f"unknown theta_total route: {route!r}")


def a_coeff(R: int, alpha: int, route: str = "closed") -> int:
    """Binomial-collapsed sequence weight A(R, alpha).

    route="closed" is (-1)^alpha (R-1) + (R-1)^alpha; route="double_sum"
    keeps the full double binomial sum.  Equality of the two is the collapse
    mechanism behind the witt-route agreement.
    """
    if R < 1 or alpha < 1:
        raise ValueError("a_coeff needs R >= 1 and alpha >= 1")
    if route == "closed":
        return (-1) ** alpha * (R - 1) + (R - 1) ** alpha
    if route == "double_sum":
        total = (-1) ** alpha * sum((-1) ** r * comb(R, r) for r in range(2, R + 1))
        for q in range(1, R + 1):
            for p in range(q, R + 1):
                total += (-1) ** (p + q) * comb(R, p) * comb(p, q) * (q - 1) ** alpha
        return total
    raise ValueError(f"unknown a_coeff route: {route!r}")


# ---------------------------------------------------------------------------
# Witt partition values and graded dimensions


def witt_partition(n: int, r: int, mode: str = "ccw") -> Fraction:
    """Witt partition value for degree n over r loops.

    mode="ccw": the undoubled partition sum, cross-checked against its power
    closed form sum_j (-1)^(j+r) C(r,j) j^n / n.  mode="signed": the partition
    sum with the extra 2^(l-1) sign-assignment factor.
    """
    if n < 1 or r < 1:
        raise ValueError("witt_partition needs n >= 1 and r >= 1")
    if mode == "ccw":
        value = _partition_sum(n, r, doubling=False)
        power_form = Fraction(
            sum((-1) ** (j + r) * comb(r, j) * j**n for j in range(1, r + 1)), n
        )
        if value != power_form:
            raise FormulaMismatchError(
                f"ccw Witt partition routes disagree at n={n}, r={r}: "
                f"{value} != {power_form}"
            )
        return value
    if mode == "signed":
        return _partition_sum(n, r, doubling=True)
    raise ValueError(f"unknown witt_partition mode: {mode!r}")


def dim_L(N: int, r: int) -> int:
    """Graded dimension: Moebius divisor sum of twice the signed Witt values."""
    if r < 2:
        raise ValueError("dim_L is defined for r >= 2")
    if N < 1:
        raise ValueError("dim_L needs N >= 1")
    total = Fraction(0)
    for g in divisors(N):
        mu = mobius(g)
        if mu:
            total += Fraction(mu, g) * 2 * witt_partition(N // g, r, "signed")
    value = _as_int(total, f"dim_L({N},{r})")
    if value < 0:
        raise NonIntegralResultError(f"dim_L({N},{r}) negative: {value}")
    return value


def c_coeff(r: int, j: int) -> int:
    """Exponent of the (1 - jz) factor in the counterclockwise product form."""
    if not 1 <= j <= r:
        raise ValueError("c_coeff needs 1 <= j <= r")
    return (-1) ** (j + r) * comb(r, j)


def b_coeff(r: int, k: int) -> int:
    """Exponent of the (1 - (2k+1)z) factor in the signed product form.

    Defined as r (-1)^(r+k) C(r-1, k) / (k+1); integrality is asserted by
    reducing to the binomial (-1)^(r+k) C(r, k+1).
    """
    if r < 1 or not 0 <= k <= r - 1:
        raise ValueError("b_coeff needs r >= 1 and 0 <= k <= r-1")
    rational = Fraction(r * (-1) ** (r + k) * comb(r - 1, k), k + 1)
    value = _as_int(rational, f"b_coeff({r},{k})")
    if value != (-1) ** (r + k) * comb(r, k + 1):
        raise NonIntegralResultError(f"b_coeff({r},{k}) reduction failed")
    return value


@dataclass(frozen=True)
class WittRecord:
    """Bundle of Witt data for one loop count r (audit/reporting aid)."""

    r: int
    W_ccw: dict[int, Fraction]
    W_signed: dict[int, Fraction]
    dims: dict[int, int]
    generator_dims_ccw: dict[int, int]
    generator_dims_signed: dict[int, int]
    c_coeffs: dict[int, int]
    b_coeffs: dict[int, int]
    a_table: dict[int, int]


def witt_record(r: int, max_n: int) -> WittRecord:
    """Assemble the Witt data for loop count r up to degree max_n."""
    if r < 2 or max_n < 1:
        raise ValueError("witt_record needs r >= 2 and max_n >= 1")
    from . import series  # deferred: series imports this module

    f_ccw = series.f_r_ccw(r, max_n)
    f_signed = series.f_r_signed(r, max_n)
    return WittRecord(
        r=r,
        W_ccw={n: witt_partition(n, r, "ccw") for n in range(1, max_n + 1)},
        W_signed={n: witt_partition(n, r, "signed") for n in range(1, max_n + 1)},
        dims={N: dim_L(N, r) for N in range(1, max_n + 1)},
        generator_dims_ccw=series.d_coeffs(f_ccw),
        generator_dims_signed=series.d_coeffs(f_signed),
        c_coeffs={j: c_coeff(r, j) for j in range(1, r + 1)},
        b_coeffs={k: b_coeff(r, k) for k in range(0, r)},
        a_table={alpha: a_coeff(r, alpha) for alpha in range(1, max_n + 1)},
    )
