"""Exact truncated formal power series.

Two coefficient rings, each the smallest that stays exact for its use:
univariate series over the rationals (exp/log and the Witt generating
functions need divisions) and multivariate polynomials over the integers
(the product identity only ever multiplies unit-constant factors).  All
operations truncate eagerly at the fixed (total) degree bound.
"""

from __future__ import annotations

from fractions import Fraction

from .counting import b_coeff, c_coeff
from .errors import (
    BadConstantTermError,
    BoundMismatchError,
    NonIntegralResultError,
    NonUnitConstantTermError,
)

__all__ = [
    "MultiPoly",
    "TruncatedSeries",
    "d_coeffs",
    "f_r_ccw",
    "f_r_signed",
    "series_exp",
    "series_log",
    "series_mul",
    "series_pow",
]


class TruncatedSeries:
    """Univariate series with rational coefficients, truncated at max_degree."""

    __slots__ = ("max_degree", "coeffs")

    def __init__(self, coeffs, max_degree: int):
        if max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        coeffs = [Fraction(c) for c in coeffs[: max_degree + 1]]
        coeffs += [Fraction(0)] * (max_degree + 1 - len(coeffs))
        self.max_degree = max_degree
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, max_degree: int) -> "TruncatedSeries":
        return cls([], max_degree)

    @classmethod
    def one(cls, max_degree: int) -> "TruncatedSeries":
        return cls([1], max_degree)

    @classmethod
    def x(cls, max_degree: int) -> "TruncatedSeries":
        return cls([0, 1], max_degree)

    def __getitem__(self, degree: int) -> Fraction:
        if not 0 <= degree <= self.max_degree:
            raise IndexError(f"degree {degree} outside 0..{self.max_degree}")
        return self.coeffs[degree]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.max_degree == other.max_degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.max_degree, self.coeffs))

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            if other.max_degree != self.max_degree:
                raise BoundMismatchError(
                    f"degree bounds differ: {self.max_degree} vs {other.max_degree}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([other], self.max_degree)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return TruncatedSeries(
            [a + b for a, b in zip(self.coeffs, other.coeffs)], self.max_degree
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-a for a in self.coeffs], self.max_degree)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        D = self.max_degree
        out = [Fraction(0)] * (D + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(0, D + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncatedSeries(out, D)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise NonUnitConstantTermError("cannot invert a series with constant term 0")
        D = self.max_degree
        out = [Fraction(0)] * (D + 1)
        out[0] = 1 / c0
        for n in range(1, D + 1):
            acc = Fraction(0)
            for k in range(1, n + 1):
                if self.coeffs[k]:
                    acc += self.coeffs[k] * out[n - k]
            out[n] = -acc / c0
        return TruncatedSeries(out, D)

    def __pow__(self, e: int) -> "TruncatedSeries":
        if not isinstance(e, int):
            return NotImplemented
        base = self.inverse() if e < 0 else self
        e = abs(e)
        result = TruncatedSeries.one(self.max_degree)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def exp(self) -> "TruncatedSeries":
        """Exponential of a series with zero constant term."""
        if self.coeffs[0] != 0:
            raise BadConstantTermError("exp needs constant term 0")
        D = self.max_degree
        out = [Fraction(0)] * (D + 1)
        out[0] = Fraction(1)
        for n in range(1, D + 1):
            acc = Fraction(0)
            for k in range(1, n + 1):
                if self.coeffs[k]:
                    acc += k * self.coeffs[k] * out[n - k]
            out[n] = acc / n
        return TruncatedSeries(out, D)

    def log(self) -> "TruncatedSeries":
        """Logarithm of a series with constant term 1."""
        if self.coeffs[0] != 1:
            raise BadConstantTermError("log needs constant term 1")
        D = self.max_degree
        out = [Fraction(0)] * (D + 1)
        for n in range(1, D + 1):
            acc = Fraction(0)
            for k in range(1, n):
                if out[k] and self.coeffs[n - k]:
                    acc += k * out[k] * self.coeffs[n - k]
            out[n] = self.coeffs[n] - acc / n
        return TruncatedSeries(out, D)

    def to_json_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "terms": [
                {"exponents": [i], "num": c.numerator, "den": c.denominator}
                for i, c in enumerate(self.coeffs)
                if c
            ],
        }

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[: min(6, len(self.coeffs))])
        return f"TruncatedSeries([{head}, ...], max_degree={self.max_degree})"


class MultiPoly:
    """Sparse multivariate polynomial over the integers, truncated at a
    total-degree bound.  Terms map exponent tuples to nonzero coefficients."""

    __slots__ = ("nvars", "max_degree", "terms")

    def __init__(self, nvars: int, max_degree: int, terms=None):
        if nvars < 1:
            raise ValueError("nvars must be >= 1")
        if max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        self.nvars = nvars
        self.max_degree = max_degree
        clean: dict[tuple[int, ...], int] = {}
        for expo, coeff in (terms or {}).items():
            expo = tuple(int(x) for x in expo)
            if len(expo) != nvars or any(x < 0 for x in expo):
                raise ValueError(f"bad exponent vector {expo}")
            if sum(expo) > max_degree or coeff == 0:
                continue
            clean[expo] = int(coeff)
        self.terms = clean

    @classmethod
    def one(cls, nvars: int, max_degree: int) -> "MultiPoly":
        return cls(nvars, max_degree, {(0,) * nvars: 1})

    @classmethod
    def zero(cls, nvars: int, max_degree: int) -> "MultiPoly":
        return cls(nvars, max_degree)

    @classmethod
    def monomial(cls, nvars: int, max_degree: int, expo, coeff=1) -> "MultiPoly":
        return cls(nvars, max_degree, {tuple(expo): coeff})

    def _check(self, other: "MultiPoly"):
        if self.nvars != other.nvars or self.max_degree != other.max_degree:
            raise BoundMismatchError("variable counts or degree bounds differ")

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.max_degree == other.max_degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, self.max_degree, tuple(sorted(self.terms.items()))))

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        terms = dict(self.terms)
        for expo, coeff in other.terms.items():
            terms[expo] = terms.get(expo, 0) + coeff
        return MultiPoly(self.nvars, self.max_degree, terms)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(
            self.nvars, self.max_degree, {e: -c for e, c in self.terms.items()}
        )

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        D = self.max_degree
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            deg1 = sum(e1)
            for e2, c2 in other.terms.items():
                if deg1 + sum(e2) > D:
                    continue
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        return MultiPoly(self.nvars, D, out)

    def _inverse(self) -> "MultiPoly":
        const = self.terms.get((0,) * self.nvars, 0)
        if const not in (1, -1):
            raise NonUnitConstantTermError(
                "integer-coefficient inversion needs constant term +-1"
            )
        # A = c(1 - Y) with Y free of constant term; A^-1 = c(1 + Y + Y^2 + ...)
        one = MultiPoly.one(self.nvars, self.max_degree)
        y_terms = {e: -const * c for e, c in self.terms.items() if any(e)}
        y = MultiPoly(self.nvars, self.max_degree, y_terms)
        acc = one
        power = one
        for _ in range(self.max_degree):
            power = power * y
            if not power.terms:
                break
            acc = acc + power
        if const == -1:
            acc = -acc
        return acc

    def __pow__(self, e: int) -> "MultiPoly":
        if not isinstance(e, int):
            return NotImplemented
        base = self._inverse() if e < 0 else self
        e = abs(e)
        result = MultiPoly.one(self.nvars, self.max_degree)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def to_json_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "terms": [
                {"exponents": list(expo), "num": coeff, "den": 1}
                for expo, coeff in sorted(self.terms.items())
            ],
        }

    def __repr__(self):
        return (
            f"MultiPoly(nvars={self.nvars}, max_degree={self.max_degree}, "
            f"terms={dict(sorted(self.terms.items()))})"
        )


# ---------------------------------------------------------------------------
# functional aliases


def series_mul(a, b):
    return a * b


def series_pow(a, e: int):
    return a**e


def series_exp(a: TruncatedSeries) -> TruncatedSeries:
    return a.exp()


def series_log(a: TruncatedSeries) -> TruncatedSeries:
    return a.log()


# ---------------------------------------------------------------------------
# generating functions of the graded generator dimensions


def _one_minus_cz(c: int, D: int) -> TruncatedSeries:
    return TruncatedSeries([1, -c], D)


def f_r_ccw(r: int, D: int) -> TruncatedSeries:
    """Generator-dimension series for the counterclockwise grading:
    1 - prod_j (1 - jz)^(C_j) with binomial exponents C_j of alternating sign."""
    if r < 1:
        raise ValueError("f_r_ccw needs r >= 1")
    prod = TruncatedSeries.one(D)
    for j in range(1, r + 1):
        prod = prod * _one_minus_cz(j, D) ** c_coeff(r, j)
    return TruncatedSeries.one(D) - prod


def f_r_signed(r: int, D: int) -> TruncatedSeries:
    """Generator-dimension series for the signed grading:
    1 - (1+z)^((-1)^r) prod_k (1 - (2k+1)z)^(-b_k)."""
    if r < 2:
        raise ValueError("f_r_signed needs r >= 2")
    prod = TruncatedSeries([1, 1], D) ** ((-1) ** r)
    for k in range(0, r):
        prod = prod * _one_minus_cz(2 * k + 1, D) ** (-b_coeff(r, k))
    return TruncatedSeries.one(D) - prod


def d_coeffs(f: TruncatedSeries) -> dict[int, int]:
    """Coefficients of a generator-dimension series as integers >= 0."""
    out = {}
    for i, c in enumerate(f.coeffs):
        if c.denominator != 1:
            raise NonIntegralResultError(f"coefficient of degree {i} is {c}")
        if c.numerator < 0:
            raise NonIntegralResultError(f"coefficient of degree {i} is negative: {c}")
        out[i] = c.numerator
    return out
