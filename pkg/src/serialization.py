"""JSON encodings of engine values.

Scalars are written as "num/den" strings so reports stay exact and
byte-for-byte reproducible.
"""

import logging
from fractions import Fraction
from typing import Any, Dict, List, Mapping

from .errors import InvalidConfig
from .ratfunc import RationalFn
from .series import BiTruncSeries, TruncSeries, to_scalar

logger = logging.getLogger(__name__)


def scalar_to_json(c: Fraction) -> str:
    c = to_scalar(c)
    return f"{c.numerator}/{c.denominator}"


def scalar_from_json(value: Any) -> Fraction:
    """Accept ints and "num/den" (or plain integer) strings."""
    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidConfig(f"inexact scalar {value!r}; write it as a fraction string")
    try:
        return to_scalar(value.strip() if isinstance(value, str) else value)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise InvalidConfig(f"could not read scalar {value!r}") from e


def series_to_json(s: TruncSeries) -> Dict[str, Any]:
    return {"lo": s.lo, "trunc": s.trunc, "coeffs": [scalar_to_json(c) for c in s.coeffs]}


def series_from_json(data: Mapping[str, Any]) -> TruncSeries:
    return TruncSeries.make(int(data["lo"]), [scalar_from_json(c) for c in data["coeffs"]], int(data["trunc"]))


def bi_series_to_json(s: BiTruncSeries) -> Dict[str, Any]:
    return {
        "window": list(s.window),
        "terms": [{"zw": [i, j], "c": scalar_to_json(c)} for (i, j), c in sorted(s.terms)],
    }


def ratfn_to_json(g: RationalFn) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "num": [scalar_to_json(c) for c in g.num],
        "den": [scalar_to_json(c) for c in g.den],
    }
    if g.roots is not None:
        data["roots"] = [[scalar_to_json(r), m] for r, m in g.roots]
    return data


def ratfn_from_json(data: Mapping[str, Any]) -> RationalFn:
    """Read {"num": [...], "den": [...], "roots": optional}.

    Roots may be given as bare scalars (repeated for multiplicity) or as
    [root, multiplicity] pairs.
    """
    if "num" not in data:
        raise InvalidConfig("rational function JSON needs a 'num' list")
    num = [scalar_from_json(c) for c in data["num"]]
    den = [scalar_from_json(c) for c in data.get("den", [1])]
    roots = None
    if data.get("roots") is not None:
        counts: Dict[Fraction, int] = {}
        for item in data["roots"]:
            if isinstance(item, (list, tuple)):
                r, m = scalar_from_json(item[0]), int(item[1])
            else:
                r, m = scalar_from_json(item), 1
            counts[r] = counts.get(r, 0) + m
        roots = sorted(counts.items())
    try:
        return RationalFn.make(num, den, roots)
    except ValueError as e:
        raise InvalidConfig(str(e)) from e


def monomial_to_json(mono) -> Dict[str, List[int]]:
    return {"e": list(mono.e), "f": list(mono.f), "psi": list(mono.psi)}


def monomial_from_json(data: Mapping[str, Any], space):
    from .fock import FockMonomial

    mono = FockMonomial.make(data.get("e", []), data.get("f", []), data.get("psi", []))
    if not mono.is_valid(space.super):
        raise InvalidConfig(f"{mono} is not a basis monomial of the {'super' if space.super else 'plain'} Fock space")
    return mono


def vector_to_json(v) -> List[Dict[str, Any]]:
    return [{"mono": monomial_to_json(mono), "c": scalar_to_json(c)} for mono, c in v.items()]


def vector_from_json(data: List[Mapping[str, Any]], space):
    """Read a list of {"mono": ..., "c": ...} terms into a vector of ``space``."""
    from .fock import FockVector

    if not isinstance(data, list):
        raise InvalidConfig("vector JSON must be a list of terms")
    terms: Dict[Any, Fraction] = {}
    for item in data:
        mono = monomial_from_json(item["mono"], space)
        terms[mono] = terms.get(mono, Fraction(0)) + scalar_from_json(item.get("c", 1))
    return FockVector(terms, space)


def module_to_json(module) -> Dict[str, Any]:
    return {
        "dim": module.dim,
        "E0": [[scalar_to_json(c) for c in row] for row in module.E0],
        "F0": [[scalar_to_json(c) for c in row] for row in module.F0],
        "Psi0": [[scalar_to_json(c) for c in row] for row in module.Psi0],
    }


def module_from_json(data: Mapping[str, Any]):
    """Read {"dim": n, "E0": [[...]], "F0": [[...]], "Psi0": [[...]]}."""
    from .ding_iohara import AAlphaModule

    try:
        dim = int(data["dim"])
        mats = [[[scalar_from_json(c) for c in row] for row in data[key]] for key in ("E0", "F0", "Psi0")]
    except KeyError as e:
        raise InvalidConfig(f"module JSON is missing {e}") from e
    for key, mat in zip(("E0", "F0", "Psi0"), mats):
        if len(mat) != dim or any(len(row) != dim for row in mat):
            raise InvalidConfig(f"{key} must be a {dim}x{dim} matrix")
    return AAlphaModule.from_lists(dim, *mats)
