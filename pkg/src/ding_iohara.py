"""The algebra A~(g) in components and its degree-zero algebra A[alpha].

Relations, for l >= 0 on an N-graded module (deg X_n = -n):

    E_m E_n = sum_l gt_l E_{n-l} E_{m+l}        F_m F_n = sum_l g_l F_{n-l} F_{m+l}
    Psi_m E_n = sum_l gt_l E_{n-l} Psi_{m+l}    Psi_m F_n = sum_l g_l F_{n-l} Psi_{m+l}
    [E_m, F_n] = Psi_{m+n}                      [Psi_m, Psi_n] = 0

with g_l from iota_{z,0} g(z) and gt_l from iota_{z,0} g(1/z).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix, Rational

from .errors import UnsupportedG, ZeroAlpha
from .linalg import RationalSubspace
from .ratfunc import CanonicalG
from .report import Report
from .series import ScalarLike, TruncSeries, iota_z0, iota_zinf, to_scalar

logger = logging.getLogger(__name__)

LETTERS = ("E", "F", "Psi")
RELATIONS = ("EE", "FF", "PsiE", "PsiF", "EF", "PsiPsi")

Word = Tuple[Tuple[str, int], ...]
Term = Tuple[Fraction, Word]


@dataclass(frozen=True)
class ComponentTable:
    """Coefficients g_l and gt_l of the two expansions."""

    g_coeffs: TruncSeries
    gtilde_coeffs: TruncSeries

    @property
    def p(self) -> int:
        return self.g_coeffs.lo

    @property
    def q(self) -> int:
        return self.gtilde_coeffs.lo

    @property
    def alpha(self) -> Fraction:
        return self.g_coeffs.coeff(0)

    @property
    def trunc(self) -> int:
        return min(self.g_coeffs.trunc, self.gtilde_coeffs.trunc)

    def g(self, l: int) -> Fraction:
        return self.g_coeffs.coeff(l)

    def gtilde(self, l: int) -> Fraction:
        return self.gtilde_coeffs.coeff(l)


def component_table(cg: CanonicalG, trunc: int) -> ComponentTable:
    """Expansions of g at 0 and at infinity; only g analytic at 0 with g(0) != 0 is supported."""
    if cg.l != 0:
        raise UnsupportedG(f"A~(g) needs g analytic at 0 with g(0) != 0; this g has l = {cg.l}")
    g = cg.reconstruct()
    table = ComponentTable(iota_z0(g, trunc), iota_zinf(g, trunc))
    logger.debug("component table: alpha=%s, trunc=%s", table.alpha, trunc)
    return table


def relation_terms(table: ComponentTable, name: str, m: int, n: int, degree: int) -> List[Term]:
    """LHS - RHS of one relation instance as (coeff, word) terms; words act right to left.

    The l-sums stop at l = degree - m, beyond which X_{m+l} leaves the grading.
    """
    ls = range(max(degree - m, -1) + 1)
    one = Fraction(1)
    if name == "EE":
        return [(one, (("E", m), ("E", n)))] + [(-table.gtilde(l), (("E", n - l), ("E", m + l))) for l in ls]
    if name == "FF":
        return [(one, (("F", m), ("F", n)))] + [(-table.g(l), (("F", n - l), ("F", m + l))) for l in ls]
    if name == "PsiE":
        return [(one, (("Psi", m), ("E", n)))] + [(-table.gtilde(l), (("E", n - l), ("Psi", m + l))) for l in ls]
    if name == "PsiF":
        return [(one, (("Psi", m), ("F", n)))] + [(-table.g(l), (("F", n - l), ("Psi", m + l))) for l in ls]
    if name == "EF":
        return [(one, (("E", m), ("F", n))), (-one, (("F", n), ("E", m))), (-one, (("Psi", m + n),))]
    if name == "PsiPsi":
        return [(one, (("Psi", m), ("Psi", n))), (-one, (("Psi", n), ("Psi", m)))]
    raise ValueError(f"unknown relation {name!r}")


def term_degrees(word: Word, degree: int) -> Optional[List[int]]:
    """Degrees visited while applying ``word`` to a vector of ``degree``; None if it leaves the grading."""
    degrees = [degree]
    for _, mode in reversed(word):
        degree -= mode
        if degree < 0:
            return None
        degrees.append(degree)
    return degrees


def instance_peak(terms: Sequence[Term], degree: int) -> Optional[int]:
    """Largest degree any surviving term passes through."""
    peaks = [max(d) for _, word in terms if (d := term_degrees(word, degree)) is not None]
    return max(peaks) if peaks else None


def evaluate_terms(terms: Sequence[Term], degree: int, base,
                   act: Callable, combine: Callable):
    """sum coeff * word(base), skipping words that leave the grading.

    ``act(letter, mode, vec, degree)`` applies one mode; ``combine`` takes a
    list of (coeff, vec) pairs.
    """
    pieces = []
    for coeff, word in terms:
        if not coeff or term_degrees(word, degree) is None:
            continue
        vec, deg = base, degree
        for letter, mode in reversed(word):
            vec = act(letter, mode, vec, deg)
            deg -= mode
        pieces.append((coeff, vec))
    return combine(pieces)


def _object_matrix(rows: Iterable[Iterable[ScalarLike]]) -> np.ndarray:
    data = [[to_scalar(c) for c in row] for row in rows]
    n = len(data)
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = data[i][j]
    return out


def _zero_matrix(n: int) -> np.ndarray:
    out = np.empty((n, n), dtype=object)
    out.fill(Fraction(0))
    return out


@dataclass(frozen=True)
class AAlphaModule:
    """Finite-dimensional representation of A[alpha] by exact matrices."""

    dim: int
    E0: np.ndarray
    F0: np.ndarray
    Psi0: np.ndarray

    @classmethod
    def from_lists(cls, dim: int, E0, F0, Psi0) -> "AAlphaModule":
        return cls(dim, _object_matrix(E0), _object_matrix(F0), _object_matrix(Psi0))

    @classmethod
    def trivial(cls) -> "AAlphaModule":
        return cls(1, _zero_matrix(1), _zero_matrix(1), _zero_matrix(1))

    @classmethod
    def u_lambda(cls, lam: ScalarLike) -> "AAlphaModule":
        """U(lambda): E0 = lambda E12, F0 = E21, Psi0 = lambda (E11 - E22)."""
        lam = to_scalar(lam)
        zero = Fraction(0)
        return cls.from_lists(
            2,
            [[zero, lam], [zero, zero]],
            [[zero, zero], [Fraction(1), zero]],
            [[lam, zero], [zero, -lam]],
        )

    def matrix(self, letter: str) -> np.ndarray:
        return {"E": self.E0, "F": self.F0, "Psi": self.Psi0}[letter]

    def with_entry(self, letter: str, i: int, j: int, value: ScalarLike) -> "AAlphaModule":
        """Copy with one matrix entry replaced."""
        mats = {"E": self.E0.copy(), "F": self.F0.copy(), "Psi": self.Psi0.copy()}
        mats[letter][i, j] = to_scalar(value)
        return AAlphaModule(self.dim, mats["E"], mats["F"], mats["Psi"])


def aalpha_relations(alpha: ScalarLike) -> Dict[str, List[Tuple[Fraction, Tuple[str, ...]]]]:
    """The five defining relations of A[alpha], each as sum coeff * letters = 0."""
    alpha = to_scalar(alpha)
    if alpha == 0:
        raise ZeroAlpha("A[alpha] needs alpha != 0")
    inv = 1 / alpha
    one = Fraction(1)
    return {
        "E0^2": [(one, ("E", "E")), (-inv, ("E", "E"))],
        "F0^2": [(one, ("F", "F")), (-alpha, ("F", "F"))],
        "Psi0E0": [(one, ("Psi", "E")), (-inv, ("E", "Psi"))],
        "Psi0F0": [(one, ("Psi", "F")), (-alpha, ("F", "Psi"))],
        "[E0,F0]": [(one, ("E", "F")), (-one, ("F", "E")), (-one, ("Psi",))],
    }


def _evaluate_letters(module: AAlphaModule, terms) -> np.ndarray:
    total = _zero_matrix(module.dim)
    for coeff, letters in terms:
        product = np.identity(module.dim, dtype=object)
        for letter in letters:
            product = product.dot(module.matrix(letter))
        total = total + product * coeff
    return total


def aalpha_violations(module: AAlphaModule, alpha: ScalarLike) -> List[str]:
    """Names of the A[alpha] relations the module breaks."""
    failing = []
    for name, terms in aalpha_relations(alpha).items():
        if any(x != 0 for x in _evaluate_letters(module, terms).flat):
            failing.append(name)
    return failing


def verify_aalpha(module: AAlphaModule, alpha: ScalarLike) -> bool:
    return not aalpha_violations(module, alpha)


def relations_are_homogeneous(alpha: ScalarLike = 2) -> bool:
    """Every A[alpha] relation is homogeneous for deg E0 = deg F0 = 1, deg Psi0 = 2."""
    weight = {"E": 1, "F": 1, "Psi": 2}
    for terms in aalpha_relations(alpha).values():
        if len({sum(weight[x] for x in letters) for _, letters in terms}) != 1:
            return False
    return True


# free-algebra polynomials in E, F: {word: coeff}
FreePoly = Dict[str, Fraction]

_PSI: FreePoly = {"EF": Fraction(1), "FE": Fraction(-1)}


def _poly_mul(a: FreePoly, b: FreePoly) -> FreePoly:
    out: FreePoly = {}
    for u, x in a.items():
        for v, y in b.items():
            out[u + v] = out.get(u + v, Fraction(0)) + x * y
    return {w: c for w, c in out.items() if c}


def _letters_to_poly(letters: Tuple[str, ...]) -> FreePoly:
    out: FreePoly = {"": Fraction(1)}
    for letter in letters:
        out = _poly_mul(out, _PSI if letter == "Psi" else {letter: Fraction(1)})
    return out


def _drop_forbidden(poly: FreePoly, forbidden: Iterable[str]) -> FreePoly:
    forbidden = list(forbidden)
    return {w: c for w, c in poly.items() if c and not any(f in w for f in forbidden)}


def nilpotency_certificate(alpha: ScalarLike) -> Dict:
    """Derive forbidden subwords from the A[alpha] relations with Psi0 = E0F0 - F0E0.

    A relation that reduces to a single word forbids that word. The
    certificate passes when (E0F0)^2, (F0E0)^2, (E0F0)(F0E0) and (F0E0)(E0F0)
    all reduce to zero, which happens exactly when alpha is not +-1.
    """
    relations = []
    for name, terms in aalpha_relations(alpha).items():
        if name == "[E0,F0]":
            continue
        poly: FreePoly = {}
        for coeff, letters in terms:
            for w, c in _letters_to_poly(letters).items():
                poly[w] = poly.get(w, Fraction(0)) + coeff * c
        relations.append({w: c for w, c in poly.items() if c})

    forbidden: List[str] = []
    changed = True
    while changed:
        changed = False
        for poly in relations:
            reduced = _drop_forbidden(poly, forbidden)
            if len(reduced) == 1:
                word = next(iter(reduced))
                if word not in forbidden:
                    forbidden.append(word)
                    changed = True

    targets = {"(E0F0)^2": "EFEF", "(F0E0)^2": "FEFE", "(E0F0)(F0E0)": "EFFE", "(F0E0)(E0F0)": "FEEF"}
    results = {name: not _drop_forbidden({w: Fraction(1)}, forbidden) for name, w in targets.items()}
    psi_squared = _drop_forbidden(_poly_mul(_PSI, _PSI), forbidden)
    results["Psi0^2"] = not psi_squared
    return {
        "alpha": str(to_scalar(alpha)),
        "rules": sorted(forbidden, key=lambda w: (len(w), w)),
        "targets": results,
        "passed": all(results.values()),
    }


def _sympy_matrix(mat: np.ndarray) -> Matrix:
    return Matrix([[Rational(c.numerator, c.denominator) for c in row] for row in mat])


def invariant_lines(module: AAlphaModule) -> List[Matrix]:
    """Lines of a 2-dimensional module stable under E0, F0 and Psi0."""
    if module.dim != 2:
        raise ValueError("invariant line search is implemented for dimension 2")
    mats = [_sympy_matrix(module.matrix(x)) for x in LETTERS]
    nonzero = [m for m in mats if not m.is_zero_matrix]
    if not nonzero:
        return [Matrix([1, 0]), Matrix([0, 1])]
    lines = []
    for _, _, vectors in nonzero[0].eigenvects():
        for v in vectors:
            if all(Matrix.hstack(v, m * v).rank(simplify=True) < 2 for m in mats):
                lines.append(v)
    return lines


def is_irreducible(module: AAlphaModule) -> bool:
    """Burnside: irreducible over C iff E0, F0, Psi0 generate all of M_n."""
    n = module.dim
    if n == 1:
        return True
    gens = [module.matrix(x) for x in LETTERS]

    def flat(mat):
        return {(i, j): mat[i, j] for i in range(n) for j in range(n) if mat[i, j] != 0}

    span = RationalSubspace()
    frontier = [np.identity(n, dtype=object)]
    span.add(flat(frontier[0]))
    while frontier and span.dim < n * n:
        nxt = []
        for mat in frontier:
            for gen in gens:
                product = gen.dot(mat)
                if span.add(flat(product)):
                    nxt.append(product)
        frontier = nxt
    return span.dim == n * n


def classify_aalpha(alpha: ScalarLike, lambdas: Sequence[ScalarLike] = (1, 2, -3)) -> Report:
    """Irreducible A[alpha]-modules, by case on alpha."""
    alpha = to_scalar(alpha)
    if alpha == 0:
        raise ZeroAlpha("A[alpha] needs alpha != 0")
    report = Report("classify-aalpha", config={"alpha": str(alpha)})
    trivial = AAlphaModule.trivial()
    report.record("trivial-module", verify_aalpha(trivial, alpha))
    report.record("homogeneous-relations", relations_are_homogeneous(alpha))

    if alpha == 1:
        report.summary.update({
            "classification": "OPEN",
            "identification": "A[1] is the enveloping algebra of the Heisenberg algebra on E0, F0, Psi0",
            "irreducibles": None,
        })
        return report

    if alpha == -1:
        for lam in lambdas:
            u = AAlphaModule.u_lambda(lam)
            report.record("U(lambda)-relations", verify_aalpha(u, alpha), witness=str(lam))
            report.record("U(lambda)-irreducible", is_irreducible(u) and not invariant_lines(u), witness=str(lam))
        report.summary.update({
            "classification": "trivial and U(lambda), lambda != 0",
            "irreducibles": ["trivial", "U(lambda)"],
        })
        return report

    cert = nilpotency_certificate(alpha)
    report.record("nilpotency-certificate", cert["passed"], detail=cert)
    report.summary.update({
        "classification": "trivial only",
        "irreducibles": ["trivial"],
        "certificate": cert,
    })
    return report
