"""Tests for the JSON encodings."""

import json
from fractions import Fraction

import pytest

from data.sample_functions import SAMPLE_U2_JSON
from src.ding_iohara import AAlphaModule, verify_aalpha
from src.errors import InvalidConfig
from src.fock import FockMonomial, FockSpace
from src.ratfunc import RationalFn
from src.serialization import (
    module_from_json,
    module_to_json,
    monomial_from_json,
    ratfn_from_json,
    ratfn_to_json,
    scalar_from_json,
    scalar_to_json,
    series_from_json,
    series_to_json,
    vector_from_json,
    vector_to_json,
)
from src.series import TruncSeries


def test_scalars_are_written_as_fractions():
    assert scalar_to_json(Fraction(-3, 4)) == "-3/4"
    assert scalar_to_json(Fraction(2)) == "2/1"
    assert scalar_from_json("-3/4") == Fraction(-3, 4)
    assert scalar_from_json(7) == 7
    with pytest.raises(InvalidConfig):
        scalar_from_json(0.25)
    with pytest.raises(InvalidConfig):
        scalar_from_json("one half")


def test_series_encoding_keeps_truncation():
    s = TruncSeries.make(-1, [1, 0, "1/2"], 4)
    data = series_to_json(s)
    assert data["trunc"] == 4
    assert series_from_json(json.loads(json.dumps(data))) == s


def test_ratfn_roots_accept_bare_scalars():
    g = ratfn_from_json({"num": ["-2", "1"], "den": ["1", "-2"], "roots": ["2"]})
    assert g.roots == ((Fraction(2), 1),)
    assert ratfn_to_json(g)["roots"] == [["2/1", 1]]
    with pytest.raises(InvalidConfig):
        ratfn_from_json({"den": ["1"]})
    with pytest.raises(InvalidConfig):
        ratfn_from_json({"num": ["1"], "den": ["0"]})


def test_monomial_validation_depends_on_space():
    data = {"e": [1, 1]}
    assert monomial_from_json(data, FockSpace()) == FockMonomial.make(e=[1, 1])
    with pytest.raises(InvalidConfig):
        monomial_from_json(data, FockSpace(super_=True))
    with pytest.raises(InvalidConfig):
        monomial_from_json({"psi": [0]}, FockSpace())


def test_vector_terms_are_summed():
    space = FockSpace()
    v = vector_from_json([
        {"mono": {"e": [1]}, "c": "1/2"},
        {"mono": {"e": [1]}, "c": "1/2"},
        {"mono": {"f": [2]}},
    ], space)
    assert v.coeff(FockMonomial.make(e=[1])) == 1
    assert v.coeff(FockMonomial.make(f=[2])) == 1
    assert vector_to_json(v)[0] == {"mono": {"e": [1], "f": [], "psi": []}, "c": "1/1"}
    with pytest.raises(InvalidConfig):
        vector_from_json({"mono": {}}, space)


def test_module_json():
    u = module_from_json(SAMPLE_U2_JSON)
    assert verify_aalpha(u, -1)
    assert module_to_json(u) == module_to_json(AAlphaModule.u_lambda(2))
    with pytest.raises(InvalidConfig):
        module_from_json({"dim": 2, "E0": [["0"]], "F0": [["0"]], "Psi0": [["0"]]})
    with pytest.raises(InvalidConfig):
        module_from_json({"dim": 1, "E0": [["0"]]})


def test_ratfn_json_is_stable():
    g = RationalFn.make([-2, 1], [1, -2])
    assert json.dumps(ratfn_to_json(g)) == '{"num": ["-2/1", "1/1"], "den": ["1/1", "-2/1"]}'
