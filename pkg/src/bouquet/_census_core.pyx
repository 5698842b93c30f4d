# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled census kernel: same procedure as ``_census_py``, C speed.

Words are processed as (skeleton, composition, sign mask) triples; see the
pure-Python module for the full commentary.  Backend-parity tests assert the
two kernels return identical results.
"""

from .errors import ScopeTooLargeError

cdef extern from *:
    int __builtin_popcountll(unsigned long long x)

cdef enum:
    MAXL = 62


cdef class _CensusRun:
    cdef int r, l, total
    cdef bint audit, mscope
    cdef long long budget
    cdef long long word_total, theta_plus, theta_minus, ccw
    cdef long long class_count, periodic_classes, class_size_sum
    cdef long long hist[MAXL + 2][MAXL + 2][MAXL + 2]

    cdef int seq[MAXL + 2]
    cdef int comp[MAXL + 2]
    cdef int caps[MAXL + 2]
    cdef int counts[MAXL + 2]
    cdef int one_positions[MAXL + 2]
    cdef int n_ones
    cdef int T, t_runs, n1
    cdef unsigned long long loop_masks[MAXL + 2]
    cdef int coef[MAXL + 2]
    cdef int cuts[MAXL + 2]
    cdef int pos_by_loop[MAXL + 2][MAXL + 2]
    cdef int npos[MAXL + 2]
    cdef int loop_cuts[MAXL + 2][MAXL + 2]

    cdef long long a_words, a_f_checks, a_f_fail, a_t1_checks, a_t1_fail
    cdef long long a_t2_checks, a_t2_fail, a_rot_checked, a_rot_fail
    cdef long long a_c2_checks, a_c2_fail
    cdef object f_first, t1_first, t2_first, rot_first, c2_first

    cdef object _word_tuple(self, bint with_mask, unsigned long long mask):
        seq = tuple(self.seq[k] for k in range(self.l))
        comp = tuple(self.comp[k] for k in range(self.l))
        if with_mask:
            return (seq, comp, int(mask))
        return (seq, comp)

    cdef int _expo(self, unsigned long long mask, int k):
        if (mask >> k) & 1:
            return -self.comp[k]
        return self.comp[k]

    cdef int _rotation_t(self, int start):
        cdef int l = self.l
        cdef int t_runs = 0
        cdef int prev = self.seq[start]
        cdef bint has_one = prev == 1
        cdef int k, v
        for k in range(1, l):
            v = self.seq[(start + k) % l]
            if v < prev:
                if not has_one:
                    t_runs += 1
                has_one = v == 1
            elif v == 1:
                has_one = True
            prev = v
        if not has_one:
            t_runs += 1
        return t_runs

    cdef bint _corollary2_holds(self, unsigned long long mask, int g, int s_cnt):
        cdef int l = self.l
        cdef int j = l // g
        cdef int word_exp = (self.total + (l - self.n1) + s_cnt + self.t_runs + 1) & 1
        if g % 2 == 0:
            return word_exp == 1  # exponent odd means sign -1
        cdef int sub_T = 1, sub_t = 0, sub_n1 = 0, sub_N = 0, k
        cdef bint has_one = self.seq[0] == 1
        for k in range(1, j):
            if self.seq[k] < self.seq[k - 1]:
                if not has_one:
                    sub_t += 1
                sub_T += 1
                has_one = self.seq[k] == 1
            elif self.seq[k] == 1:
                has_one = True
        if not has_one:
            sub_t += 1
        for k in range(j):
            if self.seq[k] == 1:
                sub_n1 += 1
            sub_N += self.comp[k]
        cdef int sub_s = __builtin_popcountll(mask & ((<unsigned long long> 1 << j) - 1))
        cdef int sub_exp = (sub_N + (j - sub_n1) + sub_s + sub_t + 1) & 1
        return word_exp == sub_exp

    cdef void _process_comp(self) except *:
        cdef int l = self.l
        cdef int N = self.total
        cdef int n = l - self.n1
        cdef int T = self.T
        cdef int t_runs = self.t_runs
        cdef bint starts_at_one = self.seq[0] == 1
        cdef unsigned long long two_l = (<unsigned long long> 1) << l
        cdef unsigned long long mask
        cdef int s_cnt, e0, ed, k, d, di, shift, g, v_total, s_i, i
        cdef int a_loop, b_loop, a_e, b_e, word_exp
        cdef bint canonical, decided

        for mask in range(two_l):
            self.word_total += 1
            if self.word_total > self.budget:
                raise ScopeTooLargeError(
                    "census scope exceeds word budget %d" % self.budget
                )
            s_cnt = __builtin_popcountll(mask)
            self.hist[l][s_cnt][T] += 1

            if self.audit:
                self.a_words += 1
                self.a_f_checks += 1
                if ((N + n + s_cnt + t_runs + 1) & 1) != ((N + l + s_cnt + T + 1) & 1) \
                        or T != t_runs + self.n1:
                    self.a_f_fail += 1
                    if self.f_first is None:
                        self.f_first = self._word_tuple(True, mask)
                self.a_t2_checks += 1
                for i in range(1, self.r + 1):
                    s_i = __builtin_popcountll(mask & self.loop_masks[i])
                    if ((s_i * (2 * s_i - 1)) - s_i) & 1:
                        self.a_t2_fail += 1
                        if self.t2_first is None:
                            self.t2_first = self._word_tuple(True, mask)
                        break
                if mask == 0:
                    self.a_t1_checks += 1
                    v_total = 0
                    for k in range(l):
                        v_total += self.coef[k] * (self.comp[k] - 1)
                    for di in range(1, self.n_ones):
                        v_total += self.comp[self.one_positions[di]]
                    if (v_total - (N + n + 1)) & 1:
                        self.a_t1_fail += 1
                        if self.t1_first is None:
                            self.t1_first = self._word_tuple(False, 0)

            # ---- rotation-class bookkeeping ------------------------------
            if not starts_at_one:
                continue
            e0 = self._expo(mask, 0)
            canonical = True
            shift = 0
            for di in range(1, self.n_ones):
                d = self.one_positions[di]
                ed = self._expo(mask, d)
                if ed < e0:
                    canonical = False
                    break
                if ed > e0:
                    continue
                # full lexicographic compare of rotation d against rotation 0
                decided = False
                for k in range(l):
                    a_loop = self.seq[(d + k) % l]
                    b_loop = self.seq[k]
                    if a_loop != b_loop:
                        canonical = a_loop > b_loop
                        decided = True
                        break
                    a_e = self._expo(mask, (d + k) % l)
                    b_e = self._expo(mask, k)
                    if a_e != b_e:
                        canonical = a_e > b_e
                        decided = True
                        break
                if decided:
                    if not canonical:
                        break
                else:
                    shift = d  # rotation d reproduces the word: periodic
                    break
            if not canonical:
                continue

            g = l // shift if shift else 1
            self.class_count += 1
            self.class_size_sum += l // g

            if g > 1 or (l == 1 and self.comp[0] > 1):
                self.periodic_classes += 1
                if self.audit and g > 1:
                    self.a_c2_checks += 1
                    if not self._corollary2_holds(mask, g, s_cnt):
                        self.a_c2_fail += 1
                        if self.c2_first is None:
                            self.c2_first = self._word_tuple(True, mask)
                continue

            if l == 1 and mask:
                continue  # reversed one-loop words carry no class weight
            word_exp = (N + n + s_cnt + t_runs + 1) & 1
            if word_exp == 0:
                self.theta_plus += 1
            else:
                self.theta_minus += 1
            if mask == 0:
                self.ccw += 1

            if self.audit:
                self.a_rot_checked += 1
                for di in range(1, self.n_ones):
                    d = self.one_positions[di]
                    if ((N + n + s_cnt + self._rotation_t(d) + 1) & 1) != word_exp:
                        self.a_rot_fail += 1
                        if self.rot_first is None:
                            self.rot_first = self._word_tuple(True, mask) + (d,)
                        break

    cdef void _iterate_compositions(self) except *:
        cdef int l = self.l
        cdef int total = self.total
        cdef int i, j, prev
        if l == 1:
            self.comp[0] = total
            self._process_comp()
            return
        for j in range(l - 1):
            self.cuts[j] = j + 1
        while True:
            prev = 0
            for j in range(l - 1):
                self.comp[j] = self.cuts[j] - prev
                prev = self.cuts[j]
            self.comp[l - 1] = total - prev
            self._process_comp()
            i = l - 2
            while i >= 0 and self.cuts[i] == total - 1 - (l - 2 - i):
                i -= 1
            if i < 0:
                return
            self.cuts[i] += 1
            for j in range(i + 1, l - 1):
                self.cuts[j] = self.cuts[j - 1] + 1

    cdef void _load_loop_comp(self, int i):
        """Write loop i's current composition into the comp array."""
        cdef int parts = self.npos[i]
        cdef int cap = self.caps[i - 1]
        cdef int prev = 0, k, value
        for k in range(parts):
            if k == parts - 1:
                value = cap - prev
            else:
                value = self.loop_cuts[i][k] - prev
                prev = self.loop_cuts[i][k]
            self.comp[self.pos_by_loop[i][k]] = value

    cdef bint _advance_loop_comp(self, int i):
        """Next composition for loop i; False (and reset) on wrap."""
        cdef int parts = self.npos[i]
        cdef int cap = self.caps[i - 1]
        cdef int j, k
        if parts <= 1:
            return False
        j = parts - 2
        while j >= 0 and self.loop_cuts[i][j] == cap - 1 - (parts - 2 - j):
            j -= 1
        if j < 0:
            for k in range(parts - 1):
                self.loop_cuts[i][k] = k + 1
            return False
        self.loop_cuts[i][j] += 1
        for k in range(j + 1, parts - 1):
            self.loop_cuts[i][k] = self.loop_cuts[i][k - 1] + 1
        return True

    cdef void _iterate_constrained(self) except *:
        cdef int i, k
        for i in range(1, self.r + 1):
            if self.npos[i] > self.caps[i - 1]:
                return  # pruned in the skeleton search; kept for safety
            for k in range(self.npos[i] - 1):
                self.loop_cuts[i][k] = k + 1
            self._load_loop_comp(i)
        while True:
            self._process_comp()
            i = 1
            while i <= self.r:
                if self._advance_loop_comp(i):
                    self._load_loop_comp(i)
                    break
                self._load_loop_comp(i)
                i += 1
            if i > self.r:
                return

    cdef void _process_seq(self) except *:
        cdef int l = self.l
        cdef int k, v, a
        cdef int occ[MAXL + 2]
        # run profile
        self.T = 1
        self.t_runs = 0
        cdef bint has_one = self.seq[0] == 1
        for k in range(1, l):
            if self.seq[k] < self.seq[k - 1]:
                if not has_one:
                    self.t_runs += 1
                self.T += 1
                has_one = self.seq[k] == 1
            elif self.seq[k] == 1:
                has_one = True
        if not has_one:
            self.t_runs += 1
        self.n_ones = 0
        self.n1 = 0
        for k in range(l):
            if self.seq[k] == 1:
                self.one_positions[self.n_ones] = k
                self.n_ones += 1
                self.n1 += 1
        if self.audit:
            for v in range(1, self.r + 1):
                self.loop_masks[v] = 0
                occ[v] = 0
            for k in range(l):
                v = self.seq[k]
                self.loop_masks[v] |= (<unsigned long long> 1) << k
                occ[v] += 1
                a = occ[v]
                if v == 1:
                    self.coef[k] = 1 if a == 1 else 2 * (a - 1)
                else:
                    self.coef[k] = 2 * a - 1
        if self.mscope:
            for v in range(1, self.r + 1):
                self.npos[v] = 0
            for k in range(l):
                v = self.seq[k]
                self.pos_by_loop[v][self.npos[v]] = k
                self.npos[v] += 1
            self._iterate_constrained()
        else:
            self._iterate_compositions()

    cdef void _seq_rec(self, int pos, int covered) except *:
        cdef int l = self.l
        cdef int v, newly, prev
        if pos == l:
            if covered == self.r and (l == 1 or self.seq[l - 1] != self.seq[0]):
                self._process_seq()
            return
        prev = self.seq[pos - 1] if pos else 0
        for v in range(1, self.r + 1):
            if v == prev:
                continue
            if self.mscope and self.counts[v] >= self.caps[v - 1]:
                continue
            newly = 1 if self.counts[v] == 0 else 0
            if self.r - covered - newly > l - pos - 1:
                continue
            self.seq[pos] = v
            self.counts[v] += 1
            self._seq_rec(pos + 1, covered + newly)
            self.counts[v] -= 1


def run_census(int r, int total, mvec, budget, bint audit):
    """Scope census; same contract and result layout as the Python kernel."""
    cdef _CensusRun st = _CensusRun()
    cdef int l, i
    if r < 1 or total < 1 or r > MAXL:
        raise ValueError("census kernel needs 1 <= r <= %d and total >= 1" % MAXL)
    st.r = r
    st.total = total
    st.audit = audit
    st.mscope = mvec is not None
    st.budget = min(budget, (<long long> 1) << 62)
    if st.mscope:
        for i in range(r):
            st.caps[i] = mvec[i]
    st.f_first = st.t1_first = st.t2_first = st.rot_first = st.c2_first = None

    for l in range(r, total + 1):
        if l > MAXL:
            raise ScopeTooLargeError(
                "words with %d letters exceed the kernel mask width" % l
            )
        st.l = l
        for i in range(1, r + 1):
            st.counts[i] = 0
        st._seq_rec(0, 0)

    histogram = {}
    cdef int s, T
    for l in range(1, min(total, MAXL) + 1):
        for s in range(l + 1):
            for T in range(1, l + 1):
                if st.hist[l][s][T]:
                    histogram[(l, s, T)] = st.hist[l][s][T]

    aud = None
    if audit:
        aud = {
            "words_checked": st.a_words,
            "formula_checks": st.a_f_checks,
            "formula_failures": st.a_f_fail,
            "formula_first_failure": st.f_first,
            "type1_checks": st.a_t1_checks,
            "type1_failures": st.a_t1_fail,
            "type1_first_failure": st.t1_first,
            "type2_checks": st.a_t2_checks,
            "type2_failures": st.a_t2_fail,
            "type2_first_failure": st.t2_first,
            "rotation_classes_checked": st.a_rot_checked,
            "rotation_failures": st.a_rot_fail,
            "rotation_first_failure": st.rot_first,
            "corollary2_checks": st.a_c2_checks,
            "corollary2_failures": st.a_c2_fail,
            "corollary2_first_failure": st.c2_first,
        }

    return {
        "word_total": st.word_total,
        "histogram": histogram,
        "theta_plus": st.theta_plus,
        "theta_minus": st.theta_minus,
        "ccw_classes": st.ccw,
        "class_count": st.class_count,
        "periodic_classes": st.periodic_classes,
        "class_size_sum": st.class_size_sum,
        "audit": aud,
    }
