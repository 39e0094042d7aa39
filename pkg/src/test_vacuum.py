"""Tests for the Fock realization of the A(h) vacuum module."""

from fractions import Fraction

import pytest

from data.sample_functions import ACCEPTANCE_G, EXPECTED_PBW_COUNTS, SAMPLE_SUPER
from src.errors import InvalidConfig
from src.fock import FockMonomial, apply_bar_mode
from src.ratfunc import canonicalize, parse_rational_function
from src.series import TruncSeries
from src.vacuum import (
    AhContext,
    apply_mode,
    generator_vectors,
    pbw_vectors,
    relation_twists,
    required_trunc,
    verify_degeneration,
    verify_derivation,
    verify_generator_products,
    verify_pbw_independence,
    verify_relations,
    verify_vacuum_axioms,
)

WINDOW = (-2, 3)


def _ctx(source, degree_bound=2, window=WINDOW, **kwargs):
    return AhContext.build(canonicalize(parse_rational_function(source)), degree_bound, window, **kwargs)


def test_required_trunc():
    assert required_trunc(4, (-4, 5)) == 40
    with pytest.raises(InvalidConfig):
        _ctx(ACCEPTANCE_G["one"], degree_bound=-1)


def test_super_space_follows_g_at_one():
    assert not _ctx(ACCEPTANCE_G["one_root"]).super
    assert _ctx(SAMPLE_SUPER).super
    assert _ctx(ACCEPTANCE_G["minus_z_squared"]).super


def test_generators_are_bar_generators():
    ctx = _ctx(ACCEPTANCE_G["two_roots"])
    for gen, vec in generator_vectors(ctx).items():
        assert vec == apply_bar_mode(gen, -1, ctx.vacuum())


def test_e_f_product_picks_up_the_twist():
    ctx = _ctx(ACCEPTANCE_G["one_root"])
    f = generator_vectors(ctx)["f"]
    out = apply_mode(ctx, "e", -1, f)
    assert out.coeff(FockMonomial.make(e=[1], f=[1])) == 1
    assert out.coeff(FockMonomial.make(psi=[1])) == Fraction(-3, 2)
    assert len(out) == 2


def test_e0_f_is_psi():
    # [e_m, f_n] = psi_{m+n}: e_0 f = psi, never psi_{m+n+1}
    for source in (ACCEPTANCE_G["one_root"], SAMPLE_SUPER):
        ctx = _ctx(source)
        vec = generator_vectors(ctx)
        assert apply_mode(ctx, "e", 0, vec["f"]) == vec["psi"]
        assert apply_mode(ctx, "e", 1, vec["f"]).is_zero()


def test_relation_twists():
    ctx = _ctx(SAMPLE_SUPER)
    twists = relation_twists(ctx)
    assert twists["ee"][2] == ctx.h
    assert twists["ff"][2] == ctx.h.reflect()
    assert twists["psi-e"][3] == -1
    assert twists["psi-f"][3] == -1


@pytest.mark.parametrize("name", ["one", "z", "one_root", "reciprocal_pair"])
def test_relations_hold(name):
    ctx = _ctx(ACCEPTANCE_G[name])
    report = verify_relations(ctx, 2, WINDOW)
    assert report.passed, report.to_dict()["records"][-5:]


def test_relations_hold_in_the_super_case():
    ctx = _ctx(SAMPLE_SUPER)
    assert verify_relations(ctx, 2, WINDOW).passed


def test_bumped_h_is_caught():
    ctx = _ctx(ACCEPTANCE_G["one_root"])
    h = ctx.h
    bumped = TruncSeries.make(0, [h.coeff(k) + (k == 1) for k in range(h.trunc)], h.trunc)
    report = verify_relations(ctx.with_h(bumped), 2, WINDOW)
    assert not report.passed
    failure = next(r for r in report.all_records() if not r.passed)
    assert failure.modes is not None and failure.witness is not None


def test_koszul_flip_is_caught():
    ctx = _ctx(SAMPLE_SUPER, koszul=False)
    report = verify_relations(ctx, 1, WINDOW)
    assert not report.passed
    assert any(r.check == "ee" for r in report.all_records() if not r.passed)


@pytest.mark.parametrize("source,kind", [(ACCEPTANCE_G["one_root"], "plain"), (SAMPLE_SUPER, "super")])
def test_pbw_vectors_are_independent(source, kind):
    ctx = _ctx(source, degree_bound=3)
    report = verify_pbw_independence(ctx, 3)
    assert report.passed
    ranks = report.summary["ranks"]
    assert [ranks[d]["rank"] for d in range(4)] == EXPECTED_PBW_COUNTS[kind][:4]
    assert ranks[3]["cumulative_rank"] == sum(EXPECTED_PBW_COUNTS[kind][:4])
    assert len(pbw_vectors(ctx, 2)) == EXPECTED_PBW_COUNTS[kind][2]


@pytest.mark.parametrize("source", [ACCEPTANCE_G["one_root"], ACCEPTANCE_G["two_roots"], SAMPLE_SUPER])
def test_generator_products(source):
    assert verify_generator_products(_ctx(source)).passed


@pytest.mark.parametrize("source", [ACCEPTANCE_G["one_root"], SAMPLE_SUPER])
def test_derivation_and_vacuum_axioms(source):
    ctx = _ctx(source)
    assert verify_derivation(ctx, 2, WINDOW).passed
    assert verify_vacuum_axioms(ctx, 2, WINDOW).passed


def test_degeneration_only_for_trivial_h():
    assert verify_degeneration(_ctx(ACCEPTANCE_G["one"]), 3, (-3, 4)).passed
    assert not verify_degeneration(_ctx(ACCEPTANCE_G["one_root"]), 2, WINDOW).passed
