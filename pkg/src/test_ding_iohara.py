"""Tests for A~(g) components and the degree-zero algebra A[alpha]."""

from fractions import Fraction

import numpy as np
import pytest

from data.sample_functions import ACCEPTANCE_G, ALPHA_SAMPLES
from src.ding_iohara import (
    AAlphaModule,
    aalpha_violations,
    classify_aalpha,
    component_table,
    instance_peak,
    invariant_lines,
    is_irreducible,
    nilpotency_certificate,
    relation_terms,
    relations_are_homogeneous,
    term_degrees,
    verify_aalpha,
)
from src.errors import UnsupportedG, ZeroAlpha
from src.ratfunc import canonicalize, parse_rational_function


def _cg(source):
    return canonicalize(parse_rational_function(source))


def test_component_table_of_one_root():
    table = component_table(_cg(ACCEPTANCE_G["one_root"]), 6)
    assert (table.p, table.q) == (0, 0)
    assert table.alpha == -2
    assert [table.g(l) for l in range(3)] == [-2, -3, -6]
    assert [table.gtilde(l) for l in range(3)] == [Fraction(-1, 2), Fraction(3, 4), Fraction(3, 8)]


def test_component_table_needs_l_zero():
    with pytest.raises(UnsupportedG):
        component_table(_cg(ACCEPTANCE_G["z"]), 6)
    with pytest.raises(UnsupportedG):
        component_table(_cg(ACCEPTANCE_G["minus_z_squared"]), 6)


def test_relation_terms_stop_at_the_grading():
    table = component_table(_cg(ACCEPTANCE_G["one_root"]), 6)
    terms = relation_terms(table, "EE", 0, 0, 1)
    # E_0 E_0 - gt_0 E_0 E_0 - gt_1 E_{-1} E_1
    assert len(terms) == 3
    assert terms[1] == (Fraction(1, 2), (("E", 0), ("E", 0)))
    assert relation_terms(table, "EF", 1, -1, 0)[-1] == (-1, (("Psi", 0),))
    with pytest.raises(ValueError):
        relation_terms(table, "EPsi", 0, 0, 0)


def test_term_degrees():
    assert term_degrees((("E", -1), ("F", 1)), 1) == [1, 0, 1]
    assert term_degrees((("E", 0), ("F", 1)), 0) is None
    assert instance_peak([(Fraction(1), (("E", 1), ("F", -2)))], 0) == 2


def test_u_lambda_satisfies_a_minus_one_only():
    u = AAlphaModule.u_lambda(2)
    assert verify_aalpha(u, -1)
    assert aalpha_violations(u, 2) == ["Psi0E0", "Psi0F0"]
    assert verify_aalpha(AAlphaModule.trivial(), 2)


def test_perturbed_u_lambda_fails():
    u = AAlphaModule.u_lambda(2).with_entry("F", 1, 0, 2)
    assert "[E0,F0]" in aalpha_violations(u, -1)
    assert AAlphaModule.u_lambda(2).F0[1, 0] == 1


def test_zero_alpha():
    with pytest.raises(ZeroAlpha):
        classify_aalpha(0)
    with pytest.raises(ZeroAlpha):
        verify_aalpha(AAlphaModule.trivial(), "0")


def test_relations_are_homogeneous():
    assert relations_are_homogeneous(2)
    assert relations_are_homogeneous(Fraction(-1, 3))


def test_nilpotency_certificate():
    cert = nilpotency_certificate(2)
    assert cert["passed"]
    assert cert["rules"] == ["EE", "FF", "EFE", "FEF"]
    assert not nilpotency_certificate(-1)["passed"]


def test_invariant_lines_and_irreducibility():
    u = AAlphaModule.u_lambda(2)
    assert invariant_lines(u) == []
    assert is_irreducible(u)
    # lambda = 0 leaves the second basis line stable
    degenerate = AAlphaModule.u_lambda(0)
    assert invariant_lines(degenerate)
    assert not is_irreducible(degenerate)


def test_matrices_are_exact():
    u = AAlphaModule.u_lambda("1/2")
    assert u.E0.dtype == np.dtype(object)
    assert u.Psi0[1, 1] == Fraction(-1, 2)


@pytest.mark.parametrize("alpha", [ALPHA_SAMPLES["open"], ALPHA_SAMPLES["u_lambda"]] + ALPHA_SAMPLES["nilpotent"])
def test_classification_passes(alpha):
    report = classify_aalpha(alpha)
    assert report.passed
    kind = report.summary["classification"]
    if Fraction(alpha) == 1:
        assert kind == "OPEN"
    elif Fraction(alpha) == -1:
        assert report.summary["irreducibles"] == ["trivial", "U(lambda)"]
    else:
        assert report.summary["irreducibles"] == ["trivial"]
