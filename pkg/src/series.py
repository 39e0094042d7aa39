"""Exact rational scalars and truncated Laurent series."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import TYPE_CHECKING, Dict, Iterable, List, Optional, Tuple, Union

from .errors import TruncationError, ZeroLeadingTerm

if TYPE_CHECKING:
    from .ratfunc import RationalFn

logger = logging.getLogger(__name__)

Scalar = Fraction
ScalarLike = Union[int, str, Fraction]


def to_scalar(value: ScalarLike) -> Fraction:
    """Coerce ints, "num/den" strings and Fractions to a Scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact scalar {value!r}")
    return Fraction(value)


@dataclass(frozen=True)
class TruncSeries:
    """Laurent series sum_{k >= lo} c_k x^k known for exponents below ``trunc``."""

    lo: int
    coeffs: Tuple[Fraction, ...]
    trunc: int

    def __post_init__(self):
        if self.lo > self.trunc:
            raise ValueError(f"lo={self.lo} exceeds trunc={self.trunc}")
        if len(self.coeffs) != self.trunc - self.lo:
            raise ValueError("coefficient list length must equal trunc - lo")

    @classmethod
    def make(cls, lo: int, coeffs: Iterable[ScalarLike], trunc: Optional[int] = None) -> "TruncSeries":
        """Build a normalized series: leading zeros are absorbed into ``lo``."""
        values = [to_scalar(c) for c in coeffs]
        if trunc is None:
            trunc = lo + len(values)
        if trunc <= lo:
            return cls.zero(trunc)
        values = values[: trunc - lo]
        values += [Fraction(0)] * (trunc - lo - len(values))
        start = 0
        while start < len(values) and values[start] == 0:
            start += 1
        return cls(lo + start, tuple(values[start:]), trunc)

    @classmethod
    def zero(cls, trunc: int) -> "TruncSeries":
        return cls(trunc, (), trunc)

    @classmethod
    def one(cls, trunc: int) -> "TruncSeries":
        return cls.make(0, [1], trunc)

    @classmethod
    def from_polynomial(cls, coeffs: Iterable[ScalarLike], trunc: int) -> "TruncSeries":
        """Ascending coefficient list of a polynomial, truncated at ``trunc``."""
        return cls.make(0, list(coeffs), trunc)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        """Coefficient of x^k; raises TruncationError beyond the known window."""
        if k >= self.trunc:
            raise TruncationError(f"coefficient x^{k} requested but series is known only below x^{self.trunc}")
        if k < self.lo:
            return Fraction(0)
        return self.coeffs[k - self.lo]

    def truncate(self, trunc: int) -> "TruncSeries":
        if trunc > self.trunc:
            raise TruncationError(f"cannot extend truncation from {self.trunc} to {trunc}")
        if trunc <= self.lo:
            return TruncSeries.zero(trunc)
        return TruncSeries.make(self.lo, self.coeffs[: trunc - self.lo], trunc)

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by x^k."""
        return TruncSeries(self.lo + k, self.coeffs, self.trunc + k)

    def scale(self, c: ScalarLike) -> "TruncSeries":
        c = to_scalar(c)
        return TruncSeries.make(self.lo, [c * a for a in self.coeffs], self.trunc)

    def reflect(self) -> "TruncSeries":
        """f(x) -> f(-x)."""
        return TruncSeries.make(
            self.lo, [a if (self.lo + k) % 2 == 0 else -a for k, a in enumerate(self.coeffs)], self.trunc
        )

    def derivative(self) -> "TruncSeries":
        if self.is_zero():
            return TruncSeries.zero(self.trunc - 1)
        return TruncSeries.make(
            self.lo - 1, [(self.lo + k) * a for k, a in enumerate(self.coeffs)], self.trunc - 1
        )

    def agrees_with(self, other: "TruncSeries", upto: Optional[int] = None) -> bool:
        """Equality of coefficients below ``upto`` (default: the common truncation)."""
        bound = min(self.trunc, other.trunc) if upto is None else upto
        low = min(self.lo, other.lo)
        return all(self.coeff(k) == other.coeff(k) for k in range(low, bound))

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        return series_add(self, other)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return series_add(self, other.scale(-1))

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        return series_mul(self, other)

    def __neg__(self) -> "TruncSeries":
        return self.scale(-1)

    def __str__(self) -> str:
        if self.is_zero():
            return f"O(x^{self.trunc})"
        parts = [f"({a})*x^{self.lo + k}" for k, a in enumerate(self.coeffs) if a != 0]
        return " + ".join(parts) + f" + O(x^{self.trunc})"


def series_add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Coefficientwise sum, truncated at the smaller truncation."""
    trunc = min(a.trunc, b.trunc)
    lo = min(a.lo, b.lo, trunc)
    return TruncSeries.make(lo, [a.coeff(k) + b.coeff(k) for k in range(lo, trunc)], trunc)


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product on the tightest sound window."""
    trunc = min(a.trunc + b.lo, b.trunc + a.lo)
    lo = a.lo + b.lo
    if a.is_zero() or b.is_zero() or trunc <= lo:
        return TruncSeries.zero(trunc)
    out: List[Fraction] = []
    for n in range(lo, trunc):
        total = Fraction(0)
        for i in range(a.lo, n - b.lo + 1):
            ai = a.coeffs[i - a.lo]
            if ai:
                total += ai * b.coeffs[n - i - b.lo]
        out.append(total)
    return TruncSeries.make(lo, out, trunc)


def series_inv(a: TruncSeries) -> TruncSeries:
    """Multiplicative inverse; the result starts at x^(-a.lo)."""
    if a.is_zero():
        raise ZeroLeadingTerm("cannot invert a series that vanishes up to its truncation")
    n_terms = a.trunc - a.lo
    c0 = a.coeffs[0]
    inv0 = 1 / c0
    out = [inv0]
    for n in range(1, n_terms):
        acc = sum((a.coeffs[k] * out[n - k] for k in range(1, n + 1)), Fraction(0))
        out.append(-inv0 * acc)
    return TruncSeries.make(-a.lo, out, -a.lo + n_terms)


def exp_scaled(c: ScalarLike, trunc: int) -> TruncSeries:
    """e^{c x} = sum c^k x^k / k!, truncated at ``trunc``."""
    c = to_scalar(c)
    if trunc <= 0:
        return TruncSeries.zero(trunc)
    return TruncSeries.make(0, [c ** k / factorial(k) for k in range(trunc)], trunc)


def _quotient_series(num: TruncSeries, den: TruncSeries, trunc: int) -> TruncSeries:
    result = series_mul(num, series_inv(den))
    if result.trunc < trunc:
        raise TruncationError(f"working precision too small: got {result.trunc}, need {trunc}")
    return result.truncate(trunc)


def _working_precision(g: "RationalFn", trunc: int) -> int:
    return trunc + 2 * (g.num_degree + g.den_degree) + 2


def _substitute_exp(coeffs: Tuple[Fraction, ...], trunc: int) -> TruncSeries:
    total = TruncSeries.zero(trunc)
    for k, c in enumerate(coeffs):
        if c:
            total = series_add(total, exp_scaled(k, trunc).scale(c))
    return total


def iota_exp(g: "RationalFn", trunc: int) -> TruncSeries:
    """Laurent expansion of g(e^x) at x = 0."""
    work = _working_precision(g, trunc)
    num = _substitute_exp(g.num, work)
    den = _substitute_exp(g.den, work)
    return _quotient_series(num, den, trunc)


def iota_z0(g: "RationalFn", trunc: int) -> TruncSeries:
    """Laurent expansion of g at z = 0."""
    work = _working_precision(g, trunc)
    num = TruncSeries.from_polynomial(g.num, work)
    den = TruncSeries.from_polynomial(g.den, work)
    return _quotient_series(num, den, trunc)


def iota_zinf(g: "RationalFn", trunc: int) -> TruncSeries:
    """Expansion of g at infinity, returned as the series of g(1/z) at z = 0."""
    return iota_z0(g.reflected(), trunc)


@dataclass(frozen=True)
class BiTruncSeries:
    """Sparse series in (z, w) inside a rectangular window."""

    terms: Tuple[Tuple[Tuple[int, int], Fraction], ...]
    window: Tuple[int, int, int, int]

    def __post_init__(self):
        zmin, zmax, wmin, wmax = self.window
        for (i, j), _ in self.terms:
            if not (zmin <= i <= zmax and wmin <= j <= wmax):
                raise ValueError(f"term z^{i} w^{j} lies outside window {self.window}")

    def coeff(self, i: int, j: int) -> Fraction:
        zmin, zmax, wmin, wmax = self.window
        if not (zmin <= i <= zmax and wmin <= j <= wmax):
            raise TruncationError(f"z^{i} w^{j} lies outside window {self.window}")
        return dict(self.terms).get((i, j), Fraction(0))

    def as_dict(self) -> Dict[Tuple[int, int], Fraction]:
        return dict(self.terms)


def iota_wz_ratio(g: "RationalFn", window: Tuple[int, int, int, int], argument: str = "w/z") -> BiTruncSeries:
    """iota_{w,z} expansion of g(w/z) (coefficients gtilde_l at z^l w^-l) or of g(z/w) (g_l).

    Both expansions are diagonal: every term has the shape z^l w^{-l}.
    """
    if argument not in ("w/z", "z/w"):
        raise ValueError("argument must be 'w/z' or 'z/w'")
    zmin, zmax, wmin, wmax = window
    lo_l = max(zmin, -wmax)
    hi_l = min(zmax, -wmin)
    if hi_l < lo_l:
        return BiTruncSeries((), window)
    source = g.reflected() if argument == "w/z" else g
    coeffs = iota_z0(source, hi_l + 1)
    terms = []
    for l in range(lo_l, hi_l + 1):
        c = coeffs.coeff(l)
        if c:
            terms.append(((l, -l), c))
    return BiTruncSeries(tuple(terms), window)
