"""Rational functions g(z) with g(z)g(1/z) = 1 and the factorization of h."""

import json
import logging
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy import Poly, QQ, Rational, Symbol, fraction, together
from sympy.parsing.sympy_parser import parse_expr

from .errors import FactorizationMismatch, InvalidConfig, IrrationalRoots, SymmetryViolated
from .series import (
    ScalarLike,
    TruncSeries,
    exp_scaled,
    iota_exp,
    series_inv,
    series_mul,
    to_scalar,
)

logger = logging.getLogger(__name__)

Z = Symbol("z")

Coeffs = Tuple[Fraction, ...]


def _strip(coeffs: Iterable[ScalarLike]) -> Coeffs:
    values = [to_scalar(c) for c in coeffs]
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


def _to_poly(coeffs: Sequence[Fraction]) -> Poly:
    """Ascending Fractions -> sympy Poly over QQ."""
    if not coeffs:
        return Poly(0, Z, domain=QQ)
    return Poly([Rational(c.numerator, c.denominator) for c in reversed(coeffs)], Z, domain=QQ)


def _from_poly(poly: Poly) -> Coeffs:
    """sympy Poly -> ascending Fractions."""
    if poly.is_zero:
        return ()
    return _strip(Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs()))


def _reverse(coeffs: Coeffs) -> Coeffs:
    """z^deg * p(1/z)."""
    return _strip(reversed(coeffs))


def _valuation(coeffs: Coeffs) -> int:
    for k, c in enumerate(coeffs):
        if c:
            return k
    return len(coeffs)


@dataclass(frozen=True)
class RationalFn:
    """num(z)/den(z) with ascending exact coefficients, optionally with the roots of num."""

    num: Coeffs
    den: Coeffs
    roots: Optional[Tuple[Tuple[Fraction, int], ...]] = None

    def __post_init__(self):
        if not any(self.den):
            raise ValueError("denominator is identically zero")

    @classmethod
    def make(cls, num: Iterable[ScalarLike], den: Iterable[ScalarLike] = (1,),
             roots: Optional[Iterable[Tuple[ScalarLike, int]]] = None) -> "RationalFn":
        root_list = None
        if roots is not None:
            root_list = tuple((to_scalar(r), int(m)) for r, m in roots)
        return cls(_strip(num), _strip(den), root_list)

    @classmethod
    def monomial(cls, c: ScalarLike, l: int) -> "RationalFn":
        """c * z^l for any integer l."""
        if l >= 0:
            return cls.make([0] * l + [c], [1])
        return cls.make([c], [0] * (-l) + [1])

    @property
    def num_degree(self) -> int:
        return max(len(self.num) - 1, 0)

    @property
    def den_degree(self) -> int:
        return max(len(self.den) - 1, 0)

    def reflected(self) -> "RationalFn":
        """g(1/z) as a rational function."""
        if not self.num:
            return RationalFn.make([0], [1])
        # g(1/z) = rev(num) * z^dD / (rev(den) * z^dN)
        shift = self.den_degree - self.num_degree
        num = _reverse(self.num)
        den = _reverse(self.den)
        if shift >= 0:
            num = (Fraction(0),) * shift + num
        else:
            den = (Fraction(0),) * (-shift) + den
        return RationalFn(num, den).cancelled()

    def cancelled(self) -> "RationalFn":
        """Divide out gcd(num, den)."""
        p, q = _to_poly(self.num), _to_poly(self.den)
        common = p.gcd(q)
        p, q = p.exquo(common), q.exquo(common)
        q_coeffs = _from_poly(q)
        low = q_coeffs[_valuation(q_coeffs)]
        scale = Rational(low.numerator, low.denominator)
        # lowest nonzero denominator coefficient becomes 1
        return RationalFn(_from_poly(p.quo_ground(scale)), _from_poly(q.quo_ground(scale)), self.roots)

    def same_function(self, other: "RationalFn") -> bool:
        """Cross-multiplication identity num*other.den == other.num*den."""
        return _to_poly(self.num) * _to_poly(other.den) == _to_poly(other.num) * _to_poly(self.den)

    def evaluate(self, z: ScalarLike) -> Fraction:
        z = to_scalar(z)
        n = sum((c * z ** k for k, c in enumerate(self.num)), Fraction(0))
        d = sum((c * z ** k for k, c in enumerate(self.den)), Fraction(0))
        return n / d

    def to_expr(self):
        return _to_poly(self.num).as_expr() / _to_poly(self.den).as_expr()

    def __str__(self) -> str:
        return str(self.to_expr())


@dataclass(frozen=True)
class CanonicalG:
    """g = sign * z^l * p(z) / ptilde(z), ptilde(z) = z^n p(1/z), p monic."""

    sign: int
    l: int
    p: Coeffs
    roots: Tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return len(self.p) - 1

    def ptilde(self) -> Coeffs:
        return _reverse(self.p)

    @property
    def epsilon(self) -> int:
        """g(1) = sign since p(1) = ptilde(1)."""
        return self.sign

    def reconstruct(self) -> RationalFn:
        num = tuple(self.sign * c for c in self.p)
        den = self.ptilde()
        if self.l >= 0:
            num = (Fraction(0),) * self.l + num
        else:
            den = (Fraction(0),) * (-self.l) + den
        return RationalFn(num, den)


@dataclass(frozen=True)
class HFactorization:
    """h(x) = epsilon * q(x) * q(-x)^-1 with q(0) = 1."""

    h: TruncSeries
    q: TruncSeries
    epsilon: int


def check_symmetry(g: RationalFn) -> bool:
    """True iff g(z) g(1/z) = 1 as rational functions."""
    if not g.num:
        return False
    n, d = _to_poly(g.num), _to_poly(g.den)
    rn, rd = _to_poly(_reverse(g.num)), _to_poly(_reverse(g.den))
    # N(z)N(1/z) = D(z)D(1/z)  <=>  N rev(N) z^{dD} = D rev(D) z^{dN}
    lhs = n * rn * Poly(Z ** g.den_degree, Z, domain=QQ)
    rhs = d * rd * Poly(Z ** g.num_degree, Z, domain=QQ)
    return lhs == rhs


def rational_roots(p: Coeffs) -> List[Fraction]:
    """Roots of p over QQ with multiplicity; IrrationalRoots if p does not split."""
    poly = _to_poly(p)
    if poly.degree() <= 0:
        return []
    _, factors = poly.factor_list()
    roots: List[Fraction] = []
    for factor, mult in factors:
        if factor.degree() != 1:
            raise IrrationalRoots(f"factor {factor.as_expr()} has no rational root")
        a, b = factor.all_coeffs()
        root = -Fraction(int(b.p), int(b.q)) / Fraction(int(a.p), int(a.q))
        roots.extend([root] * int(mult))
    return sorted(roots)


def canonicalize(g: RationalFn) -> CanonicalG:
    """Bring a symmetric g to the form sign * z^l * p / ptilde."""
    if not check_symmetry(g):
        raise SymmetryViolated(f"g(z)g(1/z) != 1 for g = {g}")
    reduced = g.cancelled()
    a, b = _valuation(reduced.num), _valuation(reduced.den)
    n1 = reduced.num[a:]
    d1 = reduced.den[b:]
    lead = n1[-1]
    p = tuple(c / lead for c in n1)
    ptilde = _reverse(p)
    if len(ptilde) != len(d1) or any(d1[k] * ptilde[0] != d1[0] * ptilde[k] for k in range(len(d1))):
        raise SymmetryViolated(f"denominator of {g} is not proportional to the reversed numerator")
    sign = lead / d1[0]
    if sign not in (1, -1):
        raise SymmetryViolated(f"g = {g} has leading ratio {sign}, expected +-1")

    if g.roots is not None:
        supplied = sorted(r for r, m in g.roots for _ in range(m))
        monic = _to_poly((Fraction(1),))
        for r in supplied:
            monic = monic * _to_poly((-r, Fraction(1)))
        if _from_poly(monic) != p:
            raise InvalidConfig(f"supplied roots {supplied} do not match the monic numerator of {g}")
        roots = supplied
    else:
        roots = rational_roots(p)

    for r in roots:
        if r in (0, 1, -1):
            raise SymmetryViolated(f"root {r} is not allowed in canonical form")
        if 1 / r in roots:
            raise SymmetryViolated(f"roots {r} and {1 / r} are reciprocal")
    cg = CanonicalG(int(sign), a - b, p, tuple(roots))
    logger.debug("canonical form: sign=%s l=%s roots=%s", cg.sign, cg.l, cg.roots)
    return cg


def compute_h(cg: CanonicalG, trunc: int) -> TruncSeries:
    """h(x) = iota_{x,0}(g(e^x)) as a power series."""
    h = iota_exp(cg.reconstruct(), trunc)
    if h.lo < 0 or h.coeff(0) not in (1, -1):
        raise FactorizationMismatch(f"h(0) is not +-1 for sign={cg.sign}, l={cg.l}, roots={cg.roots}")
    return h


def raw_q(cg: CanonicalG, trunc: int) -> TruncSeries:
    """e^{lx/2} (e^x - q_1)...(e^x - q_n) e^{-nx/2}, before normalization."""
    q = series_mul(exp_scaled(Fraction(cg.l, 2), trunc), exp_scaled(Fraction(-cg.n, 2), trunc))
    ex = exp_scaled(1, trunc)
    for root in cg.roots:
        q = series_mul(q, ex - TruncSeries.one(trunc).scale(root))
    return q


def factor_h(cg: CanonicalG, trunc: int) -> HFactorization:
    """Factor h(x) = eps * q(x) * q(-x)^-1 with q(0) = 1 and check the identity."""
    h = compute_h(cg, trunc)
    q = raw_q(cg, trunc)
    q = q.scale(1 / q.coeff(0))
    eps = cg.epsilon
    rebuilt = series_mul(q, series_inv(q.reflect())).scale(eps)
    if not rebuilt.agrees_with(h, trunc):
        raise FactorizationMismatch(f"eps*q(x)/q(-x) disagrees with h(x) below x^{trunc}")
    if h.coeff(0) != eps:
        raise FactorizationMismatch(f"h(0) = {h.coeff(0)} but g(1) = {eps}")
    return HFactorization(h, q, eps)


def parse_rational_function(source: str) -> RationalFn:
    """Read g from a JSON document, a JSON file, or a sympy expression in z."""
    from .serialization import ratfn_from_json

    text = source.strip()
    if os.path.isfile(text):
        with open(text) as handle:
            text = handle.read().strip()
    if text.startswith("{"):
        try:
            return ratfn_from_json(json.loads(text))
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise InvalidConfig(f"could not read rational function JSON: {e}") from e
    try:
        expr = together(parse_expr(text.replace("^", "**"), local_dict={"z": Z}))
    except Exception as e:
        raise InvalidConfig(f"could not parse rational function {source!r}: {e}") from e
    num, den = fraction(expr)
    try:
        return RationalFn(_from_poly(Poly(num, Z, domain=QQ)), _from_poly(Poly(den, Z, domain=QQ))).cancelled()
    except Exception as e:
        raise InvalidConfig(f"{source!r} is not a rational function of z over QQ: {e}") from e
