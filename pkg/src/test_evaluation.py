"""Tests for run configuration, suite orchestration and negative controls."""

from fractions import Fraction

import pytest

from data.sample_functions import ACCEPTANCE_G, NOT_SYMMETRIC, SAMPLE_SUPER
from src.ding_iohara import AAlphaModule
from src.errors import InvalidConfig, SymmetryViolated, UnsupportedG
from src.evaluation import (
    RunConfig,
    expansion_duality,
    negative_controls,
    run_suite,
    summarize,
)
from src.ratfunc import parse_rational_function
from src.report import Report


def _cfg(source, **kwargs):
    kwargs.setdefault("degree_bound", 1)
    kwargs.setdefault("mode_window", (-2, 3))
    return RunConfig(g=parse_rational_function(source), **kwargs)


@pytest.mark.parametrize("kwargs", [
    {"degree_bound": -1},
    {"mode_window": (3, -3)},
    {"word_cap": 1},
    {"verma_degree": -1},
    {"suites": ("ah", "nope")},
    {"series_trunc": 3},
    {"alpha": Fraction(0)},
])
def test_invalid_settings(kwargs):
    with pytest.raises(InvalidConfig):
        _cfg(ACCEPTANCE_G["one"], **kwargs).validate()


def test_trunc_is_sized_from_degree_and_window():
    cfg = _cfg(ACCEPTANCE_G["one"], degree_bound=2).validate()
    assert cfg.series_trunc == 26
    assert _cfg(ACCEPTANCE_G["one"], series_trunc=40).validate().series_trunc == 40


def test_selection_keeps_suite_order():
    cfg = _cfg(ACCEPTANCE_G["one"], suites=("factor", "expand"))
    assert cfg.selected == ("expand", "factor")
    assert not cfg.runs_everything
    assert cfg.validate().to_dict()["suites"] == ["expand", "factor"]


def test_expansion_duality():
    assert expansion_duality(parse_rational_function(ACCEPTANCE_G["one_root"]), 10)
    assert expansion_duality(parse_rational_function(ACCEPTANCE_G["two_roots"]), 8)


def test_run_selected_suites():
    report = run_suite(_cfg(ACCEPTANCE_G["one_root"], suites=("expand", "factor", "generator-products")))
    assert report.passed
    assert report.summary["suites"] == {"expand": "PASS", "factor": "PASS", "generator-products": "PASS"}
    assert report.summary["factor"]["epsilon"] == 1
    assert report.summary["factor"]["roots"] == ["2/1"]
    checks = {r.check for r in report.all_records()}
    assert "expand/duality" in checks
    assert "factor/h(x)h(-x)=1" in checks
    assert "expand/seconds" in report.timing
    assert "timing" not in report.to_dict()


def test_all_skips_atilde_suites_for_z():
    report = run_suite(_cfg(ACCEPTANCE_G["z"], degree_bound=1, mode_window=(-1, 2)))
    assert report.passed
    assert set(report.summary["skipped"]) == {"aalpha", "verma", "atilde"}
    assert "ah" in report.summary["suites"]


def test_explicit_atilde_suite_needs_l_zero():
    with pytest.raises(UnsupportedG):
        run_suite(_cfg(ACCEPTANCE_G["z"], suites=("verma",)))


def test_asymmetric_g_propagates():
    with pytest.raises(SymmetryViolated):
        run_suite(_cfg(NOT_SYMMETRIC[0], suites=("expand",)))


def test_aalpha_with_configured_module():
    good = run_suite(_cfg(ACCEPTANCE_G["one"], suites=("aalpha",), alpha=Fraction(-1),
                          module=AAlphaModule.u_lambda(3)))
    assert good.passed
    bad = run_suite(_cfg(ACCEPTANCE_G["one"], suites=("aalpha",), alpha=Fraction(2),
                         module=AAlphaModule.u_lambda(3)))
    assert not bad.passed
    assert any(r.check == "aalpha/module-relations" for r in bad.all_records() if not r.passed)


def test_verma_and_atilde_over_minus_one():
    report = run_suite(_cfg(ACCEPTANCE_G["reciprocal_pair"], suites=("verma", "atilde"),
                            verma_degree=1, word_cap=3))
    assert report.passed, report.to_dict()["records"][-5:]
    assert report.summary["verma"]["degree0_dim"] == 2
    assert report.summary["verma"]["u_dim"] == 2


def test_negative_controls_all_fail():
    controls = negative_controls(
        parse_rational_function(ACCEPTANCE_G["one_root"]),
        parse_rational_function(SAMPLE_SUPER),
        degree_bound=1,
    )
    assert set(controls) == {"h1+1", "koszul-flip", "perturbed-U", "corrupted-matrix"}
    for name, report in controls.items():
        assert not report.passed, name


def test_summarize():
    a, b = Report("a"), Report("b")
    a.record("x", True)
    b.record("y", False, modes=[1])
    table = summarize([a, b])
    assert list(table["suite"]) == ["a", "b"]
    assert table["failed"].sum() == 1
    assert summarize([]).empty


def test_derivation_covers_phi_indices_up_to_four():
    report = run_suite(_cfg(ACCEPTANCE_G["one_root"], suites=("derivation",)))
    assert report.passed
    assert report.summary["derivation"]["phi-derivation"]["indices"] == [0, 1, 2, 3, 4]
    counts = {r.check: r.count for r in report.all_records()}
    # 4 basis vectors of weight <= 1, five indices each
    assert counts["derivation/phi-derivation/phi-derivation"] == 20
