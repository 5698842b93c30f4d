"""Verification harness tying the census oracle, the closed-form counts and
the series machinery together.

Each verifier returns a :class:`VerificationReport`; nothing is rounded or
truncated beyond the stated degree bounds, so a pass is an exact statement.
The product identity over the class counts is checked in two shapes: the
multivariate truncated form on the full graph, and the univariate partial
product, which is an equality of honest polynomials.  The latter is decided
in factored form — products of (1 +- z^k) are equal iff they collect to the
same (1 - z^j)-exponent vector, because the series log(1 - z^j) are linearly
independent — and additionally expanded coefficient-by-coefficient whenever
the expanded degree stays small.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Sequence

from . import counting, words
from .series import MultiPoly, TruncatedSeries, f_r_ccw, f_r_signed

__all__ = [
    "VerificationReport",
    "brute_force_aperiodic_necklaces",
    "verify_denominator",
    "verify_exp_log",
    "verify_feynman",
    "verify_partial_product",
    "verify_theorem32",
    "verify_witt_routes",
]

DENSE_EXPANSION_LIMIT = 4000


@dataclass
class VerificationReport:
    identity: str
    params: dict
    status: str = "pass"
    first_mismatch: dict | None = None
    audit: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def fail(self, term, lhs, rhs) -> None:
        if self.status == "pass":
            self.status = "fail"
            self.first_mismatch = {"term": str(term), "lhs": str(lhs), "rhs": str(rhs)}

    def to_json_dict(self, include_elapsed: bool = True) -> dict:
        out = {"identity": self.identity, "params": self.params, "status": self.status}
        if self.first_mismatch is not None:
            out["first_mismatch"] = self.first_mismatch
        if include_elapsed:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        if self.audit:
            out["audit"] = self.audit
        return out


def _timed(report: VerificationReport, start: float) -> VerificationReport:
    report.elapsed_ms = (time.perf_counter() - start) * 1000.0
    return report


# ---------------------------------------------------------------------------
# the multivariate product identity


def _binomial_factor(nvars: int, D: int, monomial: Sequence[int], sign: int, e: int) -> MultiPoly:
    """(1 + sign * Z^monomial)^e expanded directly (few surviving powers)."""
    from math import comb

    deg = sum(monomial)
    terms = {}
    k = 0
    while k * deg <= D:
        terms[tuple(k * x for x in monomial)] = comb(e, k) * (sign**k)
        k += 1
        if k > e:
            break
    return MultiPoly(nvars, D, terms)


def verify_feynman(
    R: int, D: int, *, budget: int = words.DEFAULT_WORD_BUDGET
) -> VerificationReport:
    """Census-driven check of the product identity on the R-loop graph.

    For every sublattice with at least two loops and every multiplicity
    vector of total degree <= D, the aperiodic class counts by sign become
    the exponents of (1 +- z^m); together with the single-traversal factors
    (1 + z_j) the product must reduce to prod (1 + z_j), truncated at total
    degree D.
    """
    start = time.perf_counter()
    if R < 1 or D < 1:
        raise ValueError("verify_feynman needs R >= 1 and D >= 1")
    report = VerificationReport("feynman", {"R": R, "D": D})

    specs = []  # (monomial, theta_plus, theta_minus)
    for j in range(R):
        mono = [0] * R
        mono[j] = 1
        specs.append((tuple(mono), 1, 0))
    census_words = 0
    vectors = 0
    subgraphs = 0
    for r in range(2, R + 1):
        for loops in combinations(range(1, R + 1), r):
            subgraphs += 1
            for total in range(r, D + 1):
                for mvec in _positive_vectors(total, r):
                    c = words.census(r, m=mvec, budget=budget)
                    vectors += 1
                    census_words += c.word_total
                    mono = [0] * R
                    for loop, mult in zip(loops, mvec):
                        mono[loop - 1] = mult
                    specs.append((tuple(mono), c.theta_plus, c.theta_minus))
    specs.sort(key=lambda spec: (sum(spec[0]), spec[0]))

    lhs = MultiPoly.one(R, D)
    for mono, tp, tm in specs:
        if tp:
            lhs = lhs * _binomial_factor(R, D, mono, +1, tp)
        if tm:
            lhs = lhs * _binomial_factor(R, D, mono, -1, tm)
    rhs = MultiPoly.one(R, D)
    for j in range(R):
        mono = [0] * R
        mono[j] = 1
        rhs = rhs * _binomial_factor(R, D, mono, +1, 1)

    report.audit = {
        "subgraphs": subgraphs,
        "vectors": vectors,
        "census_words": census_words,
    }
    _compare_multipoly(report, lhs, rhs)
    return _timed(report, start)


def _positive_vectors(total: int, parts: int):
    """All compositions of total into ``parts`` positive parts, lex order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _positive_vectors(total - first, parts - 1):
            yield (first,) + rest


def _compare_multipoly(report: VerificationReport, lhs: MultiPoly, rhs: MultiPoly) -> None:
    keys = set(lhs.terms) | set(rhs.terms)
    for key in sorted(keys, key=lambda e: (sum(e), e)):
        a = lhs.terms.get(key, 0)
        b = rhs.terms.get(key, 0)
        if a != b:
            term = " ".join(f"z{i + 1}^{x}" for i, x in enumerate(key) if x) or "1"
            report.fail(term, a, b)
            return


# ---------------------------------------------------------------------------
# the univariate partial product (an exact polynomial identity)


def _expand_binomial_products(factors: Sequence[tuple[int, int, int]]) -> list[int]:
    """Expand prod (1 + sign z^d)^e into a dense integer coefficient list."""
    from math import comb

    out = [1]
    for sign, d, e in factors:
        width = len(out) + d * e
        new = [0] * width
        for k in range(e + 1):
            c = comb(e, k) * (sign**k)
            base = k * d
            for i, a in enumerate(out):
                if a:
                    new[base + i] += c * a
        out = new
    return out


def verify_partial_product(
    r: int, n: int, *, dense_limit: int = DENSE_EXPANSION_LIMIT
) -> VerificationReport:
    """Exact polynomial identity for the partial product of signed class
    factors: everything up to length n collapses to plain (1 - z^(2j)) factors
    indexed by j > n/2.

    Always decided exactly in factored form; additionally expanded to dense
    coefficients whenever the full degree is at most ``dense_limit``.
    """
    start = time.perf_counter()
    if r < 2 or n < 2 * r:
        raise ValueError("verify_partial_product needs r >= 2 and n >= 2r")
    report = VerificationReport("partial_product", {"r": r, "n": n})

    tp = {N: counting.theta_plus(N, r) for N in range(r, n + 1)}
    tm = {N: counting.theta_minus(N, r) for N in range(r, n + 1)}

    lhs_exp: dict[int, int] = {}
    for N in range(r, n + 1):
        # (1 + z^N)^a = (1 - z^(2N))^a (1 - z^N)^(-a)
        lhs_exp[2 * N] = lhs_exp.get(2 * N, 0) + tp[N]
        lhs_exp[N] = lhs_exp.get(N, 0) - tp[N] + tm[N]
    rhs_exp: dict[int, int] = {}
    for j in range(n // 2 + 1, n + 1):
        rhs_exp[2 * j] = rhs_exp.get(2 * j, 0) + tp[j]

    degree = sum(N * (tp[N] + tm[N]) for N in range(r, n + 1))
    report.audit = {
        "expanded_degree": degree,
        "dense_checked": degree <= dense_limit,
        "rhs_exponents": {str(2 * j): tp[j] for j in range(n // 2 + 1, n + 1)},
    }

    for j in sorted(set(lhs_exp) | set(rhs_exp)):
        a = lhs_exp.get(j, 0)
        b = rhs_exp.get(j, 0)
        if a != b:
            report.fail(f"(1-z^{j})", a, b)
            return _timed(report, start)

    if degree <= dense_limit:
        lhs_factors = []
        for N in range(r, n + 1):
            if tp[N]:
                lhs_factors.append((+1, N, tp[N]))
            if tm[N]:
                lhs_factors.append((-1, N, tm[N]))
        rhs_factors = [(-1, 2 * j, tp[j]) for j in range(n // 2 + 1, n + 1) if tp[j]]
        dense_lhs = _expand_binomial_products(lhs_factors)
        dense_rhs = _expand_binomial_products(rhs_factors)
        width = max(len(dense_lhs), len(dense_rhs))
        dense_lhs += [0] * (width - len(dense_lhs))
        dense_rhs += [0] * (width - len(dense_rhs))
        for d, (a, b) in enumerate(zip(dense_lhs, dense_rhs)):
            if a != b:
                report.fail(f"z^{d}", a, b)
                return _timed(report, start)

    return _timed(report, start)


# ---------------------------------------------------------------------------
# multivariate parity relations between theta_plus and theta_minus


def verify_theorem32(
    r: int, max_total: int, *, budget: int = words.DEFAULT_WORD_BUDGET
) -> VerificationReport:
    """Census check of the per-multiplicity sign relations: the negative
    count equals the positive one except when every multiplicity is even
    (and the halved vector is then subtracted)."""
    start = time.perf_counter()
    if r < 2 or max_total < r:
        raise ValueError("verify_theorem32 needs r >= 2 and max_total >= r")
    report = VerificationReport("theorem32", {"r": r, "max_total": max_total})

    cache: dict[tuple[int, ...], words.Census] = {}

    def censused(m: tuple[int, ...]) -> words.Census:
        if m not in cache:
            cache[m] = words.census(r, m=m, budget=budget)
        return cache[m]

    vectors = 0
    all_even_below_2r = 0
    for total in range(r, max_total + 1):
        for m in _positive_vectors(total, r):
            vectors += 1
            c = censused(m)
            all_even = all(x % 2 == 0 for x in m)
            if all_even and total < 2 * r:
                all_even_below_2r += 1  # unreachable: even parts force N >= 2r
            if all_even and total >= 2 * r:
                half = censused(tuple(x // 2 for x in m))
                expected = c.theta_plus - half.theta_plus
            else:
                expected = c.theta_plus
            if c.theta_minus != expected:
                report.fail(f"m={m}", c.theta_minus, expected)
                report.audit = {"vectors": vectors}
                return _timed(report, start)

    report.audit = {"vectors": vectors, "all_even_below_2r": all_even_below_2r}
    return _timed(report, start)


# ---------------------------------------------------------------------------
# Witt route agreement


def brute_force_aperiodic_necklaces(N: int, R: int) -> int:
    """Count aperiodic length-N necklaces over R symbols by direct grouping."""
    seen: set[tuple[int, ...]] = set()
    count = 0
    for word in product(range(R), repeat=N):
        if word in seen:
            continue
        rots = {word[d:] + word[:d] for d in range(N)}
        seen.update(rots)
        if len(rots) == N:
            count += 1
    return count


def verify_witt_routes(
    R: int, max_n: int, *, necklace_limit: int = 3, necklace_max_n: int = 10
) -> VerificationReport:
    """Divisor-sum route vs binomial-sum route for the full-graph class
    count, the collapse-coefficient route agreement, and (small R) equality
    with brute-force aperiodic necklace counting."""
    start = time.perf_counter()
    if R < 1 or max_n < 1:
        raise ValueError("verify_witt_routes needs R >= 1 and max_n >= 1")
    report = VerificationReport("witt_routes", {"R": R, "max_n": max_n})

    theta_values = []
    for N in range(1, max_n + 1):
        via_witt = counting.theta_total(N, R, "witt")
        via_binomial = counting.theta_total(N, R, "binomial_sum")
        theta_values.append(via_witt)
        if via_witt != via_binomial:
            report.fail(f"theta({N})", via_witt, via_binomial)
            return _timed(report, start)
        if R <= necklace_limit and N <= necklace_max_n:
            brute = brute_force_aperiodic_necklaces(N, R)
            if via_witt != brute:
                report.fail(f"theta({N}) vs necklaces", via_witt, brute)
                return _timed(report, start)

    if theta_values[0] != R:
        report.fail("theta(1)", theta_values[0], R)
        return _timed(report, start)

    a_table = {}
    for alpha in range(1, max_n + 1):
        closed = counting.a_coeff(R, alpha, "closed")
        double = counting.a_coeff(R, alpha, "double_sum")
        a_table[alpha] = closed
        if closed != double:
            report.fail(f"A({R},{alpha})", closed, double)
            return _timed(report, start)

    report.audit = {"theta": theta_values, "a_table": a_table}
    return _timed(report, start)


# ---------------------------------------------------------------------------
# denominator identities and the exp/log relation


def _product_one_minus_powers(exponents: dict[int, int], D: int) -> TruncatedSeries:
    out = TruncatedSeries.one(D)
    for n in sorted(exponents):
        if n > D:
            break
        e = exponents[n]
        if e:
            out = out * TruncatedSeries([1] + [0] * (n - 1) + [-1], D) ** e
    return out


def _compare_series(report: VerificationReport, lhs: TruncatedSeries, rhs: TruncatedSeries) -> None:
    for d in range(lhs.max_degree + 1):
        if lhs[d] != rhs[d]:
            report.fail(f"z^{d}", lhs[d], rhs[d])
            return


def verify_denominator(kind: str, r_or_R: int, D: int) -> VerificationReport:
    """prod (1 - z^n)^(graded dimension) against its closed form.

    kind="bouquet": full-graph class counts against 1 - Rz; kind="ccw":
    sublattice counts against the counterclockwise generator series;
    kind="signed": graded dimensions against the signed generator series.
    """
    start = time.perf_counter()
    if D < 1:
        raise ValueError("verify_denominator needs D >= 1")
    report = VerificationReport("denominator_" + kind, {"r": r_or_R, "D": D})
    if kind == "bouquet":
        exps = {n: counting.theta_total(n, r_or_R, "witt") for n in range(1, D + 1)}
        rhs = TruncatedSeries([1, -r_or_R], D)
    elif kind == "ccw":
        exps = {n: counting.theta_ccw(n, r_or_R) for n in range(1, D + 1)}
        rhs = TruncatedSeries.one(D) - f_r_ccw(r_or_R, D)
    elif kind == "signed":
        exps = {n: counting.dim_L(n, r_or_R) for n in range(1, D + 1)}
        rhs = TruncatedSeries.one(D) - f_r_signed(r_or_R, D)
    else:
        raise ValueError(f"unknown denominator kind {kind!r}")
    lhs = _product_one_minus_powers(exps, D)
    report.audit = {"exponents": {str(k): v for k, v in exps.items()}}
    _compare_series(report, lhs, rhs)
    return _timed(report, start)


def verify_exp_log(r: int, D: int, mode: str = "ccw") -> VerificationReport:
    """exp(-g) = 1 - f with g the Witt-value generating function."""
    start = time.perf_counter()
    if D < 1:
        raise ValueError("verify_exp_log needs D >= 1")
    report = VerificationReport("exp_log", {"r": r, "D": D, "mode": mode})
    if mode == "ccw":
        if r < 1:
            raise ValueError("ccw mode needs r >= 1")
        coeffs = [0] + [counting.witt_partition(n, r, "ccw") for n in range(1, D + 1)]
        f = f_r_ccw(r, D)
    elif mode == "signed":
        if r < 2:
            raise ValueError("signed mode needs r >= 2")
        coeffs = [0] + [2 * counting.witt_partition(n, r, "signed") for n in range(1, D + 1)]
        f = f_r_signed(r, D)
    else:
        raise ValueError(f"unknown exp_log mode {mode!r}")
    g = TruncatedSeries(coeffs, D)
    lhs = (-g).exp()
    rhs = TruncatedSeries.one(D) - f
    _compare_series(report, lhs, rhs)
    return _timed(report, start)
