"""Pure-Python census kernel.

Enumerates every valid word of the requested scope, bins the (l, s, T)
histogram, groups words into rotation classes via canonical-representative
filtering, and signs the aperiodic classes.  The compiled kernel in
``_census_core`` implements exactly the same procedure; this module is the
portable fallback and the executable reference for backend-parity tests.

A word is processed as three parallel pieces: the loop-index skeleton
``seq``, the exponent magnitudes ``comp`` (a composition of the total
length), and a sign mask (bit k set means letter k has a negative exponent).
"""

from __future__ import annotations

from itertools import combinations

from .errors import ScopeTooLargeError

_PC16 = [bin(i).count("1") for i in range(1 << 16)]

_MAX_LETTERS = 62  # sign masks are machine words in the compiled kernel


def _popcount(x: int) -> int:
    total = 0
    while x:
        total += _PC16[x & 0xFFFF]
        x >>= 16
    return total


def _sequences(r, l, caps):
    """Loop-index skeletons in lexicographic order.

    Adjacent entries distinct, cyclically distinct for l >= 2, every loop
    1..r present; ``caps`` (per-loop occurrence maxima) prunes skeletons that
    cannot carry a multiplicity-constrained word.
    """
    seq = [0] * l
    counts = [0] * (r + 1)

    def rec(pos, covered):
        if pos == l:
            if covered == r and (l == 1 or seq[-1] != seq[0]):
                yield tuple(seq)
            return
        remaining = l - pos - 1
        prev = seq[pos - 1] if pos else 0
        for v in range(1, r + 1):
            if v == prev:
                continue
            if caps is not None and counts[v] >= caps[v - 1]:
                continue
            newly = 1 if counts[v] == 0 else 0
            if r - covered - newly > remaining:
                continue
            seq[pos] = v
            counts[v] += 1
            yield from rec(pos + 1, covered + newly)
            counts[v] -= 1

    yield from rec(0, 0)


def _compositions(total, parts):
    """Compositions of ``total`` into ``parts`` positive parts."""
    if parts == 1:
        yield (total,)
        return
    for cuts in combinations(range(1, total), parts - 1):
        prev = 0
        comp = []
        for c in cuts:
            comp.append(c - prev)
            prev = c
        comp.append(total - prev)
        yield tuple(comp)


def _seq_profile(seq):
    """Run structure of a skeleton: (T, t, n1) with runs = maximal strictly
    ascending stretches, t = runs containing no 1."""
    T = 1
    t_runs = 0
    run_has_one = seq[0] == 1
    for k in range(1, len(seq)):
        if seq[k] < seq[k - 1]:
            if not run_has_one:
                t_runs += 1
            T += 1
            run_has_one = seq[k] == 1
        elif seq[k] == 1:
            run_has_one = True
    if not run_has_one:
        t_runs += 1
    n1 = sum(1 for v in seq if v == 1)
    return T, t_runs, n1


def _rotation_t(seq, start):
    """t of the rotation of ``seq`` beginning at index ``start``."""
    l = len(seq)
    t_runs = 0
    prev = seq[start]
    run_has_one = prev == 1
    for k in range(1, l):
        v = seq[(start + k) % l]
        if v < prev:
            if not run_has_one:
                t_runs += 1
            run_has_one = v == 1
        elif v == 1:
            run_has_one = True
        prev = v
    if not run_has_one:
        t_runs += 1
    return t_runs


def run_census(r, total, mvec, budget, audit):
    """Full scope census; see the module docstring for the word model.

    mvec constrains per-loop traversal totals when given (its sum must equal
    ``total``).  Raises ScopeTooLargeError as soon as more than ``budget``
    words have been processed.
    """
    word_total = 0
    histogram = {}
    theta_plus = theta_minus = ccw_classes = 0
    class_count = periodic_classes = class_size_sum = 0

    aud = None
    if audit:
        aud = {
            "words_checked": 0,
            "formula_checks": 0,
            "formula_failures": 0,
            "formula_first_failure": None,
            "type1_checks": 0,
            "type1_failures": 0,
            "type1_first_failure": None,
            "type2_checks": 0,
            "type2_failures": 0,
            "type2_first_failure": None,
            "rotation_classes_checked": 0,
            "rotation_failures": 0,
            "rotation_first_failure": None,
            "corollary2_checks": 0,
            "corollary2_failures": 0,
            "corollary2_first_failure": None,
        }

    N = total
    caps = tuple(mvec) if mvec is not None else None

    for l in range(r, N + 1):
        two_l = 1 << l
        for seq in _sequences(r, l, caps):
            if l > _MAX_LETTERS:
                # any budget that admits 2^62 sign masks is out of reach anyway
                raise ScopeTooLargeError(
                    f"words with {l} letters exceed the kernel mask width"
                )
            T, t_runs, n1 = _seq_profile(seq)
            n = l - n1
            starts_at_one = seq[0] == 1
            one_positions = [k for k, v in enumerate(seq) if v == 1]
            if audit:
                loop_masks = [0] * (r + 1)
                for k, v in enumerate(seq):
                    loop_masks[v] |= 1 << k
                # type-1 coefficients: 1, 2, 4, ... on loop 1; 1, 3, 5, ...
                # on the others, following occurrence order
                occ = [0] * (r + 1)
                coef = [0] * l
                for k, v in enumerate(seq):
                    occ[v] += 1
                    a = occ[v]
                    coef[k] = (1 if a == 1 else 2 * (a - 1)) if v == 1 else 2 * a - 1

            if caps is None:
                comp_iter = _compositions(N, l)
            else:
                comp_iter = _constrained_compositions(seq, caps, r, l)

            for comp in comp_iter:
                # histogram keys share (l, T) within a skeleton; only s varies
                local_hist = [0] * (l + 1)
                for mask in range(two_l):
                    word_total += 1
                    if word_total > budget:
                        raise ScopeTooLargeError(
                            f"census scope exceeds word budget {budget}"
                        )
                    s_cnt = _popcount(mask)
                    local_hist[s_cnt] += 1

                    if audit:
                        aud["words_checked"] += 1
                        # the two sign formulas must agree on every word
                        e_lemma = (N + n + s_cnt + t_runs + 1) & 1
                        e_coroll = (N + l + s_cnt + T + 1) & 1
                        aud["formula_checks"] += 1
                        if e_lemma != e_coroll or T != t_runs + n1:
                            aud["formula_failures"] += 1
                            if aud["formula_first_failure"] is None:
                                aud["formula_first_failure"] = (seq, comp, mask)
                        aud["type2_checks"] += 1
                        for i in range(1, r + 1):
                            s_i = _popcount(mask & loop_masks[i])
                            v_i = s_i * (2 * s_i - 1)
                            if (v_i - s_i) & 1:
                                aud["type2_failures"] += 1
                                if aud["type2_first_failure"] is None:
                                    aud["type2_first_failure"] = (seq, comp, mask)
                                break
                        if mask == 0:
                            aud["type1_checks"] += 1
                            v_total = sum(c * (e - 1) for c, e in zip(coef, comp))
                            v_total += sum(comp[k] for k in one_positions[1:])
                            if (v_total - (N + n + 1)) & 1:
                                aud["type1_failures"] += 1
                                if aud["type1_first_failure"] is None:
                                    aud["type1_first_failure"] = (seq, comp)

                    # ---- rotation-class bookkeeping ----------------------
                    if not starts_at_one:
                        continue  # canonical rotation always starts on loop 1
                    e0 = comp[0] if not (mask & 1) else -comp[0]
                    canonical = True
                    shift = 0
                    letters = None
                    for d in one_positions[1:]:
                        ed = comp[d] if not ((mask >> d) & 1) else -comp[d]
                        if ed < e0:
                            canonical = False
                            break
                        if ed > e0:
                            continue
                        if letters is None:
                            expo = [
                                comp[k] if not ((mask >> k) & 1) else -comp[k]
                                for k in range(l)
                            ]
                            letters = tuple(zip(seq, expo))
                            doubled = letters + letters
                        rot = doubled[d : d + l]
                        if rot < letters:
                            canonical = False
                            break
                        if rot == letters:
                            shift = d
                            break
                    if not canonical:
                        continue

                    g = l // shift if shift else 1
                    class_count += 1
                    class_size_sum += l // g

                    path_periodic = g > 1 or (l == 1 and comp[0] > 1)
                    if path_periodic:
                        periodic_classes += 1
                        if audit and g > 1:
                            aud["corollary2_checks"] += 1
                            if not _corollary2_holds(seq, comp, mask, l, g, N, s_cnt, n, t_runs):
                                aud["corollary2_failures"] += 1
                                if aud["corollary2_first_failure"] is None:
                                    aud["corollary2_first_failure"] = (seq, comp, mask)
                        continue

                    if l == 1 and mask:
                        continue  # reversed one-loop words stay outside the census classes
                    word_sign_exp = (N + n + s_cnt + t_runs + 1) & 1
                    if word_sign_exp == 0:
                        theta_plus += 1
                    else:
                        theta_minus += 1
                    if mask == 0:
                        ccw_classes += 1

                    if audit:
                        aud["rotation_classes_checked"] += 1
                        for d in one_positions[1:]:
                            t_d = _rotation_t(seq, d)
                            if ((N + n + s_cnt + t_d + 1) & 1) != word_sign_exp:
                                aud["rotation_failures"] += 1
                                if aud["rotation_first_failure"] is None:
                                    aud["rotation_first_failure"] = (seq, comp, mask, d)
                                break

                for s_cnt, cnt in enumerate(local_hist):
                    if cnt:
                        key = (l, s_cnt, T)
                        histogram[key] = histogram.get(key, 0) + cnt

    return {
        "word_total": word_total,
        "histogram": histogram,
        "theta_plus": theta_plus,
        "theta_minus": theta_minus,
        "ccw_classes": ccw_classes,
        "class_count": class_count,
        "periodic_classes": periodic_classes,
        "class_size_sum": class_size_sum,
        "audit": aud,
    }


def _constrained_compositions(seq, caps, r, l):
    """Compositions meeting per-loop traversal totals: the letters on each
    loop i must sum to caps[i-1]."""
    positions = [[] for _ in range(r + 1)]
    for k, v in enumerate(seq):
        positions[v].append(k)
    per_loop = []
    for i in range(1, r + 1):
        n_i = len(positions[i])
        m_i = caps[i - 1]
        if n_i > m_i:
            return  # skeleton infeasible (pruned earlier, kept for safety)
        per_loop.append(list(_compositions(m_i, n_i)))

    comp = [0] * l

    def rec(i):
        if i > r:
            yield tuple(comp)
            return
        for parts in per_loop[i - 1]:
            for k, part in zip(positions[i], parts):
                comp[k] = part
            yield from rec(i + 1)

    yield from rec(1)


def _corollary2_holds(seq, comp, mask, l, g, N, s_cnt, n, t_runs):
    """Periodic-word sign rule: sign(w^g) is -1 for even g, sign(w) for odd."""
    word_sign = -1 if (N + n + s_cnt + t_runs + 1) & 1 else 1
    if g % 2 == 0:
        return word_sign == -1
    j = l // g
    sub_seq = seq[:j]
    sub_T, sub_t, sub_n1 = _seq_profile(sub_seq)
    sub_N = sum(comp[:j])
    sub_s = _popcount(mask & ((1 << j) - 1))
    sub_sign = -1 if (sub_N + (j - sub_n1) + sub_s + sub_t + 1) & 1 else 1
    return word_sign == sub_sign
