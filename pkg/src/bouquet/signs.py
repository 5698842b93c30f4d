"""The sign calculus for path words.

The sign of a path is read off its word: with N the total length, n the
occurrences of loops other than the minimal one, s the negative exponents and
t the ascending runs of the index sequence that avoid the minimal loop, the
sign is (-1)^(N+n+s+t+1).  An equivalent form uses the letter count l and the
total run count T instead of n and t.  Both are evaluated here and must agree.

The formulas assume the word is written with the minimal traversed loop
first; rotate with :func:`bouquet.words.canonical_rotation` to sign a class.
Crossing counts provide an independent parity route for the all-positive
case, plus the per-loop parity of direction reversals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import FormulaMismatchError, NegativeExponentError
from .words import PathWord, period, validate_word

__all__ = [
    "CrossingCounts",
    "Decomposition",
    "SignData",
    "decompose",
    "periodic_sign_check",
    "relabel_loops",
    "sign",
    "type1_crossings",
    "type2_crossings",
]


@dataclass(frozen=True)
class Decomposition:
    """Maximal strictly ascending runs of a loop-index sequence."""

    runs: tuple[tuple[int, ...], ...]
    T: int
    t: int


def decompose(seq: Sequence[int]) -> Decomposition:
    """Split an index sequence into maximal strictly ascending runs.

    A new run begins whenever the strict increase fails.  T is the run
    count, t the number of runs in which loop 1 does not appear.
    """
    if not seq:
        raise ValueError("cannot decompose an empty sequence")
    runs: list[tuple[int, ...]] = []
    current = [seq[0]]
    for v in seq[1:]:
        if v > current[-1]:
            current.append(v)
        else:
            runs.append(tuple(current))
            current = [v]
    runs.append(tuple(current))
    t = sum(1 for run in runs if 1 not in run)
    return Decomposition(runs=tuple(runs), T=len(runs), t=t)


def relabel_loops(word: PathWord) -> PathWord:
    """Relabel the traversed loops to 1..r by ascending original index."""
    mapping = {loop: i + 1 for i, loop in enumerate(word.loops)}
    if all(loop == new for loop, new in mapping.items()):
        return word
    return validate_word([(mapping[loop], e) for loop, e in word.letters])


@dataclass(frozen=True)
class SignData:
    N: int
    n: int
    l: int
    s: int
    T: int
    t: int
    sign: int


def sign(word: PathWord) -> SignData:
    """Sign of the path that starts with the word's first letter.

    Loops are relabeled so the minimal traversed loop becomes 1.  The first
    letter is taken as the traversal start; for the sign of a rotation class
    pass the canonical rotation, which begins on the minimal loop.
    """
    word = relabel_loops(word)
    deco = decompose(word.index_sequence)
    N, l, s, n = word.N, word.l, word.s, word.n
    exp_runs = N + n + s + deco.t + 1
    exp_total = N + l + s + deco.T + 1
    if (exp_runs - exp_total) % 2:
        raise FormulaMismatchError(
            f"sign formulas disagree on {word}: (-1)^{exp_runs} vs (-1)^{exp_total}"
        )
    return SignData(N=N, n=n, l=l, s=s, T=deco.T, t=deco.t, sign=-1 if exp_runs % 2 else 1)


def periodic_sign_check(word: PathWord) -> tuple[int, int, int]:
    """(sign of word, period g, sign of the aperiodic block).

    Verifies the periodic-word sign rule: a word repeating its block an even
    number of times has sign -1, an odd number of times the block's sign.
    """
    g = period(word)
    word_sign = sign(word).sign
    if g == 1:
        return word_sign, 1, word_sign
    block = validate_word(word.letters[: word.l // g])
    block_sign = sign(block).sign
    expected = -1 if g % 2 == 0 else block_sign
    if word_sign != expected:
        raise FormulaMismatchError(
            f"periodic sign rule fails on {word}: sign {word_sign}, period {g}, "
            f"block sign {block_sign}"
        )
    return word_sign, g, block_sign


@dataclass(frozen=True)
class CrossingCounts:
    """Self-crossing tallies of the normal curve of an all-positive word.

    a1: crossings of the windings around loop 1; b: one entry per further
    loop; c: crossings made regaining the start point; v: their total.
    v2 holds the per-loop direction-reversal crossings (all zero here).
    """

    a1: int
    b: tuple[int, ...]
    c: int
    v: int
    v2: tuple[int, ...]

    def __post_init__(self):
        if self.v != self.a1 + sum(self.b) + self.c:
            raise FormulaMismatchError("crossing total does not match its parts")


def type1_crossings(word: PathWord) -> CrossingCounts:
    """Winding crossings for a word with all exponents positive.

    The winding coefficients grow with the occurrence index: 1, 2, 4, 6, ...
    on loop 1 and 1, 3, 5, ... on every other loop; the return leg crosses
    every completed loop-1 winding once.  Asserts the crossing parity equals
    the parity of N + n + 1.
    """
    if word.s:
        raise NegativeExponentError("type-1 counts need all exponents positive")
    word = relabel_loops(word)
    r = len(word.loops)
    occurrence = [0] * (r + 1)
    a1 = 0
    b = [0] * (r + 1)
    c = 0
    for loop, e in word.letters:
        occurrence[loop] += 1
        alpha = occurrence[loop]
        if loop == 1:
            coef = 1 if alpha == 1 else 2 * (alpha - 1)
            a1 += coef * (e - 1)
            if alpha >= 2:
                c += e
        else:
            b[loop] += (2 * alpha - 1) * (e - 1)
    v = a1 + sum(b) + c
    if (v - (word.N + word.n + 1)) % 2:
        raise FormulaMismatchError(
            f"type-1 parity fails on {word}: V={v}, N+n+1={word.N + word.n + 1}"
        )
    return CrossingCounts(
        a1=a1,
        b=tuple(b[2 : r + 1]),
        c=c,
        v=v,
        v2=tuple(0 for _ in range(r)),
    )


def type2_crossings(s_i: int) -> int:
    """Crossings from s_i reversed windings of one loop: 1 + 5 + 9 + ...

    The parity equals s_i, which is how reversals enter the sign rule.
    """
    if s_i < 0:
        raise ValueError("reversal count must be nonnegative")
    v_i = sum(4 * x - 3 for x in range(1, s_i + 1))
    if (v_i - s_i) % 2:
        raise FormulaMismatchError(f"type-2 parity fails for s_i={s_i}")
    return v_i
