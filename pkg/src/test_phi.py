"""Tests for the phi recursion."""

from fractions import Fraction

import pytest

from data.sample_functions import ACCEPTANCE_G, SAMPLE_SUPER
from src.errors import NegativeIndex
from src.fock import FockSpace
from src.phi import (
    PhiContext,
    apply_phi,
    phi_commutation_check,
    phi_commutativity_check,
    phi_derivation_check,
    phi_preserves_filtration_check,
)
from src.ratfunc import canonicalize, factor_h, parse_rational_function
from src.series import TruncSeries


def _context(source, order=4):
    fact = factor_h(canonicalize(parse_rational_function(source)), 20)
    space = FockSpace(super_=fact.epsilon == -1)
    return PhiContext(fact.q.reflect(), fact.q, order, space)


def test_constant_term_must_be_one():
    with pytest.raises(ValueError):
        PhiContext(TruncSeries.make(0, [2], 5), TruncSeries.one(5), 3)


def test_trivial_series_give_identity():
    ctx = PhiContext(TruncSeries.one(10), TruncSeries.one(10), 3)
    v = ctx.space.monomial_vector(e=[2], f=[1])
    assert apply_phi(ctx, 0, v) == v
    assert apply_phi(ctx, 1, v).is_zero()
    assert apply_phi(ctx, 0, ctx.space.vacuum()) == ctx.space.vacuum()


def test_phi_on_single_generators():
    ctx = _context(ACCEPTANCE_G["one_root"])
    e = ctx.space.monomial_vector(e=[1])
    f = ctx.space.monomial_vector(f=[1])
    # p1 = q(-x) = 1 + 3x/2 + ..., p2 = q(x) = 1 - 3x/2 + ...
    assert apply_phi(ctx, 1, e) == e.scale(Fraction(3, 2))
    assert apply_phi(ctx, 1, f) == f.scale(Fraction(-3, 2))
    assert apply_phi(ctx, 1, ctx.space.vacuum()).is_zero()


def test_negative_index():
    ctx = _context(ACCEPTANCE_G["one_root"])
    with pytest.raises(NegativeIndex):
        apply_phi(ctx, -1, ctx.space.vacuum())


def test_memo_is_reused():
    ctx = _context(ACCEPTANCE_G["two_roots"])
    v = ctx.space.monomial_vector(e=[2, 1], f=[1])
    first = apply_phi(ctx, 2, v)
    size = ctx.cache_size
    assert apply_phi(ctx, 2, v) == first
    assert ctx.cache_size == size


@pytest.mark.parametrize("source", [ACCEPTANCE_G["one_root"], SAMPLE_SUPER])
def test_phi_properties(source):
    ctx = _context(source)
    assert phi_preserves_filtration_check(ctx, 3).passed
    assert phi_commutation_check(ctx, 2, mode_bound=2, order=3).passed
    assert phi_commutativity_check(ctx, 3).passed
    assert phi_derivation_check(ctx, 3).passed
