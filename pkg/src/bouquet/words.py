"""Path words on the bouquet graph: validation, cyclic classes, exhaustive
enumeration and the brute-force census that serves as the oracle for every
closed formula in :mod:`bouquet.counting`.

A word is an ordered sequence of letters, each a (loop, exponent) pair with
nonzero exponent; the sign of the exponent is the traversal direction.
Adjacent letters (cyclically, once there are two or more) must sit on
distinct loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

from . import _kernel, counting
from .errors import (
    AdjacentSameLoopError,
    EmptyWordError,
    InfeasibleScopeError,
    ScopeTooLargeError,
    WordFormatError,
    ZeroExponentError,
)

__all__ = [
    "DEFAULT_WORD_BUDGET",
    "Census",
    "CyclicClass",
    "Letter",
    "PathWord",
    "canonical_rotation",
    "census",
    "cyclic_class",
    "enumerate_words",
    "format_word",
    "parse_word",
    "period",
    "rotations",
    "validate_word",
]

DEFAULT_WORD_BUDGET = 10**8


class Letter(NamedTuple):
    loop: int
    exponent: int


@dataclass(frozen=True)
class PathWord:
    """A validated word.  Construct through :func:`validate_word`.

    Derived quantities follow the usual naming: l letters, total length N,
    s negative exponents, per-loop traversal totals (loop weights) and
    occurrence counts, and n = occurrences of every loop except the minimal
    traversed one.
    """

    letters: tuple[Letter, ...]

    @property
    def l(self) -> int:
        return len(self.letters)

    @cached_property
    def N(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    @cached_property
    def s(self) -> int:
        return sum(1 for _, e in self.letters if e < 0)

    @cached_property
    def loops(self) -> tuple[int, ...]:
        return tuple(sorted({loop for loop, _ in self.letters}))

    @property
    def min_loop(self) -> int:
        return self.loops[0]

    @cached_property
    def loop_weights(self) -> dict[int, int]:
        """Traversal total per loop (how many times each loop is covered)."""
        weights: dict[int, int] = {}
        for loop, e in self.letters:
            weights[loop] = weights.get(loop, 0) + abs(e)
        return weights

    @cached_property
    def loop_counts(self) -> dict[int, int]:
        """Occurrence count per loop in the index sequence."""
        counts: dict[int, int] = {}
        for loop, _ in self.letters:
            counts[loop] = counts.get(loop, 0) + 1
        return counts

    @property
    def n(self) -> int:
        return self.l - self.loop_counts[self.min_loop]

    @property
    def index_sequence(self) -> tuple[int, ...]:
        return tuple(loop for loop, _ in self.letters)

    def __str__(self) -> str:
        return format_word(self)


def validate_word(pairs: Iterable[tuple[int, int]]) -> PathWord:
    """Validate (loop, exponent) pairs and build a PathWord."""
    letters = tuple(Letter(int(loop), int(exponent)) for loop, exponent in pairs)
    if not letters:
        raise EmptyWordError("a word needs at least one letter")
    for loop, exponent in letters:
        if loop < 1:
            raise WordFormatError(f"loop indices start at 1, got {loop}")
        if exponent == 0:
            raise ZeroExponentError(f"zero exponent on loop {loop}")
    l = len(letters)
    if l >= 2:
        for k in range(l):
            if letters[k].loop == letters[(k + 1) % l].loop:
                raise AdjacentSameLoopError(
                    f"letters {k} and {(k + 1) % l} both sit on loop {letters[k].loop}"
                )
    return PathWord(letters)


def rotations(word: PathWord) -> list[PathWord]:
    """All l letter-rotations of the word (with repetitions when periodic)."""
    doubled = word.letters + word.letters
    l = word.l
    return [PathWord(doubled[d : d + l]) for d in range(l)]


def canonical_rotation(word: PathWord) -> PathWord:
    """The lexicographically minimal rotation under (loop, exponent) order."""
    doubled = word.letters + word.letters
    l = word.l
    best = word.letters
    for d in range(1, l):
        rot = doubled[d : d + l]
        if rot < best:
            best = rot
    return PathWord(best)


def period(word: PathWord) -> int:
    """Largest g with word = block^g for a block of l/g letters; 1 if aperiodic."""
    letters = word.letters
    l = word.l
    doubled = letters + letters
    for d in range(1, l):
        if l % d == 0 and doubled[d : d + l] == letters:
            return l // d
    return 1


@dataclass(frozen=True)
class CyclicClass:
    """A rotation class: canonical representative, period and class size."""

    representative: PathWord
    period: int
    class_size: int


def cyclic_class(word: PathWord) -> CyclicClass:
    g = period(word)
    return CyclicClass(
        representative=canonical_rotation(word),
        period=g,
        class_size=word.l // g,
    )


# ---------------------------------------------------------------------------
# word text format: comma-separated loop:exponent pairs


def parse_word(text: str) -> PathWord:
    """Parse the textual form ``1:3,2:-1`` (whitespace around separators ok)."""
    pairs = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            raise WordFormatError(f"empty letter in word text {text!r}")
        loop_text, sep, expo_text = chunk.partition(":")
        if not sep:
            raise WordFormatError(f"letter {chunk!r} is not of the form loop:exponent")
        try:
            loop = int(loop_text.strip())
            exponent = int(expo_text.strip())
        except ValueError as exc:
            raise WordFormatError(f"letter {chunk!r} is not numeric") from exc
        pairs.append((loop, exponent))
    return validate_word(pairs)


def format_word(word: PathWord) -> str:
    return ",".join(f"{loop}:{exponent}" for loop, exponent in word.letters)


# ---------------------------------------------------------------------------
# exhaustive enumeration


def _skeletons(r: int, l: int, caps: Sequence[int] | None) -> Iterator[tuple[int, ...]]:
    """Loop-index skeletons in lexicographic order (see the census kernel)."""
    seq = [0] * l
    counts = [0] * (r + 1)

    def rec(pos: int, covered: int) -> Iterator[tuple[int, ...]]:
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


def _compositions_colex(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Compositions of total into positive parts, colexicographic order."""
    if parts == 1:
        yield (total,)
        return
    for last in range(1, total - parts + 2):
        for rest in _compositions_colex(total - last, parts - 1):
            yield rest + (last,)


def _constrained_compositions(
    seq: tuple[int, ...], m: Sequence[int], r: int
) -> Iterator[tuple[int, ...]]:
    positions: list[list[int]] = [[] for _ in range(r + 1)]
    for k, v in enumerate(seq):
        positions[v].append(k)
    per_loop = []
    for i in range(1, r + 1):
        n_i = len(positions[i])
        if n_i > m[i - 1]:
            return
        per_loop.append(list(_compositions_colex(m[i - 1], n_i)))
    comp = [0] * len(seq)

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i > r:
            yield tuple(comp)
            return
        for parts in per_loop[i - 1]:
            for k, part in zip(positions[i], parts):
                comp[k] = part
            yield from rec(i + 1)

    yield from rec(1)


def _validate_scope(r: int, N: int | None, m: Sequence[int] | None) -> int:
    if r < 1:
        raise ValueError("loop count r must be >= 1")
    if (N is None) == (m is None):
        raise ValueError("specify exactly one of N and m")
    if m is not None:
        m = tuple(int(x) for x in m)
        if len(m) != r:
            raise ValueError(f"multiplicity vector needs {r} components, got {len(m)}")
        if any(x < 1 for x in m):
            raise ValueError("multiplicity components must be >= 1")
        N = sum(m)
    assert N is not None
    if N < 1:
        raise ValueError("total length N must be >= 1")
    if N < r:
        raise InfeasibleScopeError(f"cannot cover {r} loops with total length {N}")
    return N


def enumerate_words(
    r: int,
    N: int | None = None,
    select: str | Sequence[int] = "all",
    *,
    budget: int = DEFAULT_WORD_BUDGET,
) -> Iterator[PathWord]:
    """Stream every valid word of the scope exactly once, deterministically.

    Order: letter count ascending, skeletons lexicographic, exponent
    magnitudes in colex composition order, then signs by binary counter
    (first letter = most significant bit).  ``select`` is "all", "ccw"
    (all exponents positive), or a per-loop multiplicity vector.
    """
    m: tuple[int, ...] | None = None
    if not isinstance(select, str):
        m = tuple(int(x) for x in select)
        if N is not None and N != sum(m):
            raise ValueError("N disagrees with the multiplicity vector total")
        N = sum(m)
    elif select not in ("all", "ccw"):
        raise ValueError(f"unknown selection {select!r}")
    if m is None:
        N = _validate_scope(r, N, None)
    else:
        N = _validate_scope(r, None, m)

    ccw_only = select == "ccw"
    emitted = 0
    for l in range(r, N + 1):
        for seq in _skeletons(r, l, m):
            comp_iter = (
                _compositions_colex(N, l) if m is None else _constrained_compositions(seq, m, r)
            )
            for comp in comp_iter:
                for mask in range(1 if ccw_only else 1 << l):
                    emitted += 1
                    if emitted > budget:
                        raise ScopeTooLargeError(
                            f"enumeration exceeds word budget {budget}"
                        )
                    letters = tuple(
                        Letter(seq[k], comp[k] if not ((mask >> (l - 1 - k)) & 1) else -comp[k])
                        for k in range(l)
                    )
                    yield PathWord(letters)


# ---------------------------------------------------------------------------
# census


@dataclass(frozen=True)
class Census:
    """Brute-force class counts for one scope.

    theta_plus/theta_minus count aperiodic rotation classes by sign (for a
    multiplicity scope these are the per-monomial exponents of the product
    identity); ccw_classes counts the aperiodic all-positive classes.  The
    histogram maps (l, s, T) to the number of words with those statistics.
    """

    r: int
    scope: tuple[str, int | tuple[int, ...]]
    word_total: int
    theta_plus: int
    theta_minus: int
    ccw_classes: int
    histogram: dict[tuple[int, int, int], int]
    class_count: int
    periodic_classes: int
    class_size_sum: int
    audit: dict | None = None

    def to_json_dict(self) -> dict:
        kind, value = self.scope
        return {
            "r": self.r,
            "scope": {kind: list(value) if isinstance(value, tuple) else value},
            "word_total": self.word_total,
            "theta_plus": self.theta_plus,
            "theta_minus": self.theta_minus,
            "ccw_classes": self.ccw_classes,
            "histogram": [
                {"l": l, "s": s, "T": T, "count": count}
                for (l, s, T), count in sorted(self.histogram.items())
            ],
        }


def census(
    r: int,
    N: int | None = None,
    m: Sequence[int] | None = None,
    *,
    budget: int = DEFAULT_WORD_BUDGET,
    audit: bool = False,
    backend=None,
) -> Census:
    """Enumerate the scope and group words into rotation classes.

    Aperiodic classes are signed on the rotation that begins at the minimal
    traversed loop.  One-loop scopes follow the path conventions: a word
    repeating its single loop is a periodic path, and the reversed one-loop
    words carry no class weight.

    ``audit=True`` additionally cross-checks, word by word, the two sign
    formulas, the crossing-count parities, rotation-invariance of the sign
    and the periodic-word sign rule; counters land in ``Census.audit``.
    """
    total = _validate_scope(r, N, m)
    mvec = tuple(int(x) for x in m) if m is not None else None
    if mvec is None and counting.word_total(r, total) > budget:
        raise ScopeTooLargeError(
            f"scope holds {counting.word_total(r, total)} words, budget is {budget}"
        )
    impl = backend if backend is not None else _kernel.backend_module()
    raw = impl.run_census(r, total, mvec, budget, audit)
    return Census(
        r=r,
        scope=("m", mvec) if mvec is not None else ("N", total),
        word_total=raw["word_total"],
        theta_plus=raw["theta_plus"],
        theta_minus=raw["theta_minus"],
        ccw_classes=raw["ccw_classes"],
        histogram=dict(raw["histogram"]),
        class_count=raw["class_count"],
        periodic_classes=raw["periodic_classes"],
        class_size_sum=raw["class_size_sum"],
        audit=raw["audit"],
    )
