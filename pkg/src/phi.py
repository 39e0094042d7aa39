"""The operators phi_i on the Fock space.

phi(t) = sum_i phi_i t^i is fixed by phi(t)|0> = |0> and

    phi(t) e(x) = p1(t - x) e(x) phi(t)
    phi(t) f(x) = p2(t - x) f(x) phi(t)
    phi(t) psi(x) = p1(t - x) p2(t - x) psi(x) phi(t)

In components, for a monomial a(mode) w:

    phi_i a(mode) w = sum_{j >= 0} sum_{r=j}^{i+j} P_r C(r, j) (-1)^j a(mode + j) phi_{i-r+j} w
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Optional

from .errors import NegativeIndex
from .fock import (
    GENERATORS,
    Factors,
    FockMonomial,
    FockSpace,
    FockVector,
    act_on_factors,
    apply_bar_mode,
    derivation,
    enumerate_basis,
)
from .report import Report
from .series import TruncSeries, series_mul

logger = logging.getLogger(__name__)


@dataclass
class PhiContext:
    """Recursion data for phi: the two twisting series and a memo table."""

    p1: TruncSeries
    p2: TruncSeries
    series_order: int
    space: FockSpace = field(default_factory=FockSpace)

    def __post_init__(self):
        """Initialize the per-generator series and the memo."""
        for name, p in (("p1", self.p1), ("p2", self.p2)):
            if p.lo < 0 or p.coeff(0) != 1:
                raise ValueError(f"{name} must be a power series with constant term 1")
        self._series = (self.p1, self.p2, series_mul(self.p1, self.p2))
        self._memo: Dict[tuple, Dict[Factors, Fraction]] = {}

    @property
    def cache_size(self) -> int:
        return len(self._memo)

    def phi_factors(self, i: int, factors: Factors) -> Dict[Factors, Fraction]:
        """phi_i on one normal-ordered monomial, memoized on (i, factors)."""
        key = (i, factors)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        if not factors:
            result = {(): Fraction(1)} if i == 0 else {}
        else:
            result = self._recurse(i, factors)
        self._memo[key] = result
        return result

    def _recurse(self, i: int, factors: Factors) -> Dict[Factors, Fraction]:
        (rank, mode), rest = factors[0], factors[1:]
        series = self._series[rank]
        rest_weight = -sum(m for _, m in rest)
        j_max = rest_weight - mode
        if rank == 2:
            j_max = min(j_max, -mode - 1)
        acc: Dict[Factors, Fraction] = defaultdict(Fraction)
        for j in range(j_max + 1):
            sign = -1 if j % 2 else 1
            for r in range(j, i + j + 1):
                p_r = series.coeff(r)
                if not p_r:
                    continue
                c = p_r * comb(r, j) * sign
                for mono, ci in self.phi_factors(i - r + j, rest).items():
                    for out, k in act_on_factors(rank, mode + j, mono, self.space):
                        acc[out] += c * ci * k
        return {k: v for k, v in acc.items() if v}


def apply_phi(ctx: PhiContext, i: int, v: FockVector) -> FockVector:
    """phi_i v."""
    if i < 0:
        raise NegativeIndex(f"phi_{i} is not defined")
    out: Dict[FockMonomial, Fraction] = defaultdict(Fraction)
    for mono, c in v.terms.items():
        for factors, k in ctx.phi_factors(i, mono.factors).items():
            out[FockMonomial.from_factors(factors)] += c * k
    return FockVector(out, v.space)


def _basis_vectors(space: FockSpace, weight_bound: int):
    for w in range(weight_bound + 1):
        for mono in enumerate_basis(w, space.super):
            yield mono, FockVector({mono: 1}, space)


def _low_part_only(diff: FockVector, below: int) -> bool:
    return all(m.weight < below for m in diff.terms)


def phi_preserves_filtration_check(ctx: PhiContext, weight_bound: int, order: Optional[int] = None) -> Report:
    """weight(phi_i v) <= weight(v), and phi_0 v = v modulo lower weight."""
    report = Report("phi-filtration", config={"weight_bound": weight_bound})
    order = ctx.series_order if order is None else order
    for mono, v in _basis_vectors(ctx.space, weight_bound):
        for i in range(order + 1):
            image = apply_phi(ctx, i, v)
            ok = image.is_zero() or image.weight() <= mono.weight
            report.record("filtration", ok, modes=[i], witness=str(mono))
        diff = apply_phi(ctx, 0, v) - v
        report.record("phi0-leading", _low_part_only(diff, mono.weight), witness=str(mono))
    return report


def phi_commutation_check(ctx: PhiContext, weight_bound: int, mode_bound: Optional[int] = None,
                          order: Optional[int] = None) -> Report:
    """phi_i a(m) v against the twisted sum sum_{j,r} P_r C(r,j)(-1)^j a(m+j) phi_{i-r+j} v."""
    report = Report("phi-commutation", config={"weight_bound": weight_bound})
    order = ctx.series_order if order is None else order
    mode_bound = weight_bound + 1 if mode_bound is None else mode_bound
    for mono, v in _basis_vectors(ctx.space, weight_bound):
        for rank, gen in enumerate(GENERATORS):
            series = ctx._series[rank]
            for m in range(-mode_bound, mode_bound + 1):
                moved = apply_bar_mode(gen, m, v)
                j_max = mono.weight - m
                if rank == 2:
                    j_max = min(j_max, -m - 1)
                for i in range(order + 1):
                    lhs = apply_phi(ctx, i, moved)
                    rhs = ctx.space.zero()
                    for j in range(j_max + 1):
                        for r in range(j, i + j + 1):
                            c = series.coeff(r) * comb(r, j) * (-1) ** j
                            if c:
                                rhs = rhs + apply_bar_mode(gen, m + j, apply_phi(ctx, i - r + j, v)).scale(c)
                    report.record(f"phi-{gen}", lhs == rhs, modes=[i, m], witness=str(mono))
    return report


def phi_commutativity_check(ctx: PhiContext, weight_bound: int, order: Optional[int] = None) -> Report:
    """phi_i phi_j v = phi_j phi_i v for i + j <= order."""
    report = Report("phi-commutativity", config={"weight_bound": weight_bound})
    order = ctx.series_order if order is None else order
    for mono, v in _basis_vectors(ctx.space, weight_bound):
        for i in range(order + 1):
            for j in range(i + 1, order - i + 1):
                ok = apply_phi(ctx, i, apply_phi(ctx, j, v)) == apply_phi(ctx, j, apply_phi(ctx, i, v))
                report.record("phi-commute", ok, modes=[i, j], witness=str(mono))
    return report


def phi_derivation_check(ctx: PhiContext, weight_bound: int, order: Optional[int] = None) -> Report:
    """d(phi_i v) - phi_i d(v) = (i + 1) phi_{i+1} v."""
    report = Report("phi-derivation", config={"weight_bound": weight_bound})
    order = ctx.series_order if order is None else order
    for mono, v in _basis_vectors(ctx.space, weight_bound):
        dv = derivation(v)
        for i in range(order):
            lhs = derivation(apply_phi(ctx, i, v)) - apply_phi(ctx, i, dv)
            rhs = apply_phi(ctx, i + 1, v).scale(i + 1)
            report.record("phi-derivation", lhs == rhs, modes=[i], witness=str(mono))
    report.summary["indices"] = list(range(order))
    return report
