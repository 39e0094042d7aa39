"""The vacuum module of A(h) realized on the Fock space.

Dressed modes are e(x) = e_bar(x) phi(x), f(x) = f_bar(x) phi(x) and
psi(x) = psi_bar(x) phi(x) phi(x). On a vector of weight W:

    e(m) v = sum_{i=0}^{W-m} e_bar(m+i) phi_i v
    psi(m) v = sum_{s=0}^{-1-m} psi_bar(m+s) sum_{i+j=s} phi_i phi_j v
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Tuple

from .errors import InvalidConfig
from .fock import (
    GENERATORS,
    RANK,
    FockMonomial,
    FockSpace,
    FockVector,
    act_on_factors,
    apply_bar_mode,
    derivation,
    enumerate_basis,
)
from .linalg import exact_rank
from .phi import PhiContext
from .ratfunc import CanonicalG, HFactorization, factor_h
from .report import Report
from .series import TruncSeries

logger = logging.getLogger(__name__)

Window = Tuple[int, int]


def required_trunc(degree_bound: int, window: Window) -> int:
    """Series truncation covering every coefficient the suites touch."""
    span = max(abs(window[0]), abs(window[1]), 1)
    return 3 * degree_bound + 4 * span + 8


@dataclass
class AhContext:
    """h, its factorization, the phi recursion and a cache of dressed modes."""

    h: TruncSeries
    factorization: HFactorization
    phi: PhiContext
    epsilon: int
    space: FockSpace = field(default_factory=FockSpace)

    def __post_init__(self):
        """Initialize the dressed-mode cache."""
        self._modes: Dict[Tuple[str, int, FockMonomial], FockVector] = {}

    @classmethod
    def build(cls, cg: CanonicalG, degree_bound: int = 4, window: Window = (-4, 5),
              koszul: bool = True, trunc: Optional[int] = None) -> "AhContext":
        """Factor h for ``cg`` and set up the Fock realization.

        ``koszul=False`` builds the super space without odd transposition
        signs; only the negative control asks for that.
        """
        if degree_bound < 0:
            raise InvalidConfig("degree_bound must be nonnegative")
        trunc = max(trunc or 0, required_trunc(degree_bound, window))
        fact = factor_h(cg, trunc)
        space = FockSpace(super_=fact.epsilon == -1, koszul=koszul)
        phi = PhiContext(fact.q.reflect(), fact.q, degree_bound + 2, space)
        logger.info("A(h) context: epsilon=%s trunc=%s super=%s", fact.epsilon, trunc, space.super)
        return cls(fact.h, fact, phi, fact.epsilon, space)

    def with_h(self, h: TruncSeries) -> "AhContext":
        """Same realization, checked against a different h."""
        return replace(self, h=h)

    @property
    def super(self) -> bool:
        return self.space.super

    def vacuum(self) -> FockVector:
        return self.space.vacuum()

    def mode_on_monomial(self, gen: str, m: int, mono: FockMonomial) -> FockVector:
        key = (gen, m, mono)
        cached = self._modes.get(key)
        if cached is None:
            cached = self._compute_mode(gen, m, mono)
            self._modes[key] = cached
        return cached

    def _compute_mode(self, gen: str, m: int, mono: FockMonomial) -> FockVector:
        rank = RANK[gen]
        w = mono.weight
        out: Dict[FockMonomial, Fraction] = defaultdict(Fraction)

        def emit(mode: int, inner: Dict, coeff: Fraction = Fraction(1)):
            for factors, c in inner.items():
                for result, k in act_on_factors(rank, mode, factors, self.space):
                    out[FockMonomial.from_factors(result)] += coeff * c * k

        if rank < 2:
            for i in range(w - m + 1):
                emit(m + i, self.phi.phi_factors(i, mono.factors))
        else:
            for s in range(-m):
                combined: Dict = defaultdict(Fraction)
                for i in range(s + 1):
                    for mid, c in self.phi.phi_factors(s - i, mono.factors).items():
                        for factors, k in self.phi.phi_factors(i, mid).items():
                            combined[factors] += c * k
                emit(m + s, combined)
        return FockVector(out, self.space)


def apply_mode(ctx: AhContext, gen: str, m: int, v: FockVector) -> FockVector:
    """Dressed mode e(m), f(m) or psi(m) applied to ``v``."""
    out: Dict[FockMonomial, Fraction] = defaultdict(Fraction)
    for mono, c in v.terms.items():
        for mono2, k in ctx.mode_on_monomial(gen, m, mono).terms.items():
            out[mono2] += c * k
    return FockVector(out, v.space)


def _apply_word(ctx: AhContext, factors, v: FockVector) -> FockVector:
    for rank, mode in reversed(factors):
        v = apply_mode(ctx, GENERATORS[rank], mode, v)
    return v


def pbw_vectors(ctx: AhContext, degree: int) -> List[Tuple[FockMonomial, FockVector]]:
    """e(-m1)...f(-n1)...psi(-k1)...|0> for every index tuple of total weight ``degree``."""
    return [(mono, _apply_word(ctx, mono.factors, ctx.vacuum())) for mono in enumerate_basis(degree, ctx.super)]


def _basis_vectors(ctx: AhContext, degree_bound: int):
    for w in range(degree_bound + 1):
        for mono in enumerate_basis(w, ctx.super):
            yield mono, FockVector({mono: 1}, ctx.space)


def verify_pbw_independence(ctx: AhContext, degree_bound: int) -> Report:
    """Exact rank of the P-B-W vectors per degree and cumulatively."""
    report = Report("independence", config={"degree_bound": degree_bound, "super": ctx.super})
    ranks = {}
    rows_so_far: List[Dict] = []
    for d in range(degree_bound + 1):
        rows = [vec.as_row() for _, vec in pbw_vectors(ctx, d)]
        rank = exact_rank(rows)
        rows_so_far.extend(rows)
        cumulative = exact_rank(rows_so_far)
        ranks[d] = {"rank": rank, "count": len(rows), "cumulative_rank": cumulative,
                    "cumulative_count": len(rows_so_far)}
        logger.info("degree %s: rank %s of %s", d, rank, len(rows))
        report.record("pbw-rank", rank == len(rows), modes=[d], detail=ranks[d])
        report.record("pbw-cumulative-rank", cumulative == len(rows_so_far), modes=[d], detail=ranks[d])
    report.summary["ranks"] = ranks
    return report


def relation_twists(ctx: AhContext) -> Dict[str, Tuple[str, str, TruncSeries, int]]:
    """(X, Y, H, sigma) for X_m Y_n = sigma sum_r sum_i H_r C(r,i) (-1)^i Y_{n+r-i} X_{m+i}."""
    h = ctx.h
    h_reflected = h.reflect()
    return {
        "ee": ("e", "e", h, 1),
        "ff": ("f", "f", h_reflected, 1),
        "psi-e": ("psi", "e", h, ctx.epsilon),
        "psi-f": ("psi", "f", h_reflected, ctx.epsilon),
    }


def _twisted_side(ctx: AhContext, x: str, y: str, twist: TruncSeries, m: int, n: int,
                  r_values, v: FockVector) -> FockVector:
    total = ctx.space.zero()
    for r in r_values:
        h_r = twist.coeff(r)
        if not h_r:
            continue
        for i in range(r + 1):
            c = h_r * comb(r, i) * (-1) ** i
            inner = apply_mode(ctx, x, m + i, v)
            if inner.is_zero():
                continue
            total = total + apply_mode(ctx, y, n + r - i, inner).scale(c)
    return total


def verify_relations(ctx: AhContext, degree_bound: int, window: Window) -> Report:
    """All six defining relations, componentwise, on every basis vector up to ``degree_bound``."""
    lo, hi = window
    report = Report("ah-relations", config={"degree_bound": degree_bound, "window": [lo, hi]})
    twists = relation_twists(ctx)
    ef_sign = -1 if ctx.super else 1
    for mono, v in _basis_vectors(ctx, degree_bound):
        w = mono.weight
        for m in range(lo, hi + 1):
            for n in range(lo, hi + 1):
                for name, (x, y, twist, sigma) in twists.items():
                    bound = w - m - n
                    lhs = apply_mode(ctx, x, m, apply_mode(ctx, y, n, v))
                    rhs = _twisted_side(ctx, x, y, twist, m, n, range(bound + 1), v).scale(sigma)
                    report.record(name, lhs == rhs, modes=[m, n], witness=str(mono))
                    if bound + 1 >= 0:
                        tail = _twisted_side(ctx, x, y, twist, m, n, [bound + 1], v)
                        report.record(f"{name}-tail", tail.is_zero(), modes=[m, n], witness=str(mono))

                ef = apply_mode(ctx, "e", m, apply_mode(ctx, "f", n, v))
                fe = apply_mode(ctx, "f", n, apply_mode(ctx, "e", m, v))
                psi = apply_mode(ctx, "psi", m + n, v)
                report.record("ef", ef - fe.scale(ef_sign) == psi, modes=[m, n], witness=str(mono))

                pp = apply_mode(ctx, "psi", m, apply_mode(ctx, "psi", n, v))
                pp_swapped = apply_mode(ctx, "psi", n, apply_mode(ctx, "psi", m, v))
                report.record("psi-psi", pp == pp_swapped, modes=[m, n], witness=str(mono))
    return report


def verify_derivation(ctx: AhContext, degree_bound: int, window: Window) -> Report:
    """d(a(m) v) - a(m) d(v) = -m a(m-1) v for a in {e, f, psi}, and d|0> = 0."""
    lo, hi = window
    report = Report("derivation", config={"degree_bound": degree_bound, "window": [lo, hi]})
    report.record("d-vacuum", derivation(ctx.vacuum()).is_zero())
    for mono, v in _basis_vectors(ctx, degree_bound):
        dv = derivation(v)
        for gen in GENERATORS:
            for m in range(lo, hi + 1):
                lhs = derivation(apply_mode(ctx, gen, m, v)) - apply_mode(ctx, gen, m, dv)
                rhs = apply_mode(ctx, gen, m - 1, v).scale(-m)
                report.record(f"d-{gen}", lhs == rhs, modes=[m], witness=str(mono))
    return report


def verify_vacuum_axioms(ctx: AhContext, degree_bound: int, window: Window) -> Report:
    """a(n)|0> = 0 for n >= 0, and weight(a(m) v) <= weight(v) - m."""
    lo, hi = window
    report = Report("vacuum-axioms", config={"degree_bound": degree_bound, "window": [lo, hi]})
    for gen in GENERATORS:
        for n in range(0, max(hi, 0) + 1):
            report.record(f"creation-{gen}", apply_mode(ctx, gen, n, ctx.vacuum()).is_zero(), modes=[n])
    for mono, v in _basis_vectors(ctx, degree_bound):
        for gen in GENERATORS:
            for m in range(lo, hi + 1):
                image = apply_mode(ctx, gen, m, v)
                ok = image.is_zero() or image.weight() <= mono.weight - m
                report.record(f"filtration-{gen}", ok, modes=[m], witness=str(mono))
    return report


def generator_vectors(ctx: AhContext) -> Dict[str, FockVector]:
    """e = e(-1)|0>, f = f(-1)|0>, psi = psi(-1)|0>."""
    return {gen: apply_mode(ctx, gen, -1, ctx.vacuum()) for gen in GENERATORS}


def verify_generator_products(ctx: AhContext, max_n: int = 5) -> Report:
    """e_0 f = psi, e_n f = 0 (n >= 1) and the products that vanish for n >= 0."""
    report = Report("generator-products", config={"max_n": max_n})
    vec = generator_vectors(ctx)
    report.record("e0f=psi", apply_mode(ctx, "e", 0, vec["f"]) == vec["psi"], modes=[0])
    for n in range(1, max_n + 1):
        report.record("enf=0", apply_mode(ctx, "e", n, vec["f"]).is_zero(), modes=[n])
    for u, w in (("psi", "psi"), ("psi", "e"), ("psi", "f"), ("e", "e"), ("f", "f")):
        for n in range(0, max_n + 1):
            report.record(f"{u}n{w}=0", apply_mode(ctx, u, n, vec[w]).is_zero(), modes=[n])
    return report


def verify_degeneration(ctx: AhContext, degree_bound: int, window: Window) -> Report:
    """Dressed modes agree with bar modes; expected exactly when h = 1."""
    lo, hi = window
    report = Report("degeneration", config={"degree_bound": degree_bound, "window": [lo, hi]})
    for mono, v in _basis_vectors(ctx, degree_bound):
        for gen in GENERATORS:
            for m in range(lo, hi + 1):
                same = apply_mode(ctx, gen, m, v) == apply_bar_mode(gen, m, v)
                report.record(f"bar-{gen}", same, modes=[m], witness=str(mono))
    return report
