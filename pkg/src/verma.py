"""Truncated Verma-type modules M(U) of A~(g) and relation checks on graded modules.

M(U)[0] is spanned by U. In degree d > 0 the spanning keys are
(Y, k, b) = Y_{-k} b for Y in {E, F, Psi}, k >= 1 and b a basis key of
degree d - k. Modes X_m with m >= 0 act on keys through the relations
rewritten with X_m moved to the right. Relation instances, closure under the
zero modes and annihilation by positive modes cut each degree down; a
nonzero consequence in a lower degree restarts the build from there.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from .ding_iohara import (
    LETTERS,
    RELATIONS,
    AAlphaModule,
    ComponentTable,
    aalpha_violations,
    evaluate_terms,
    instance_peak,
    relation_terms,
)
from .errors import InvalidConfig, RelationInconsistency
from .linalg import RationalSubspace
from .report import Report
from .series import ScalarLike, to_scalar

logger = logging.getLogger(__name__)

Key = Tuple
Vec = Dict[Key, Fraction]


def key_degree(key: Key) -> int:
    if key[0] == "U":
        return 0
    return key[1] + key_degree(key[2])


def key_word(key: Key) -> str:
    """E(-1)Psi(-2)u0 style rendering."""
    if key[0] == "U":
        return f"u{key[1]}"
    return f"{key[0]}(-{key[1]})" + key_word(key[2])


def _object_zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


@dataclass
class GradedModule:
    """Degrees 0..degree_cap of an N-graded module with exact action matrices.

    ``actions[(X, n, d)]`` maps degree d to degree d - n.
    """

    alpha: Fraction
    degree_cap: int
    dims: List[int]
    actions: Dict[Tuple[str, int, int], np.ndarray]
    word_cap: int = 0
    stabilized: List[bool] = field(default_factory=list)
    basis_words: List[List[str]] = field(default_factory=list)

    @classmethod
    def zero_module(cls, alpha: ScalarLike, degree_cap: int) -> "GradedModule":
        dims = [0] * (degree_cap + 1)
        actions = {}
        for letter in LETTERS:
            for n in range(-degree_cap, degree_cap + 1):
                for d in range(degree_cap + 1):
                    if 0 <= d - n <= degree_cap:
                        actions[(letter, n, d)] = _object_zeros((0, 0))
        return cls(to_scalar(alpha), degree_cap, dims, actions, 0, [True] * (degree_cap + 1),
                   [[] for _ in dims])

    def zero(self, degree: int) -> np.ndarray:
        return _object_zeros(self.dims[degree] if 0 <= degree <= self.degree_cap else 0)

    def unit(self, degree: int, j: int) -> np.ndarray:
        vec = self.zero(degree)
        vec[j] = Fraction(1)
        return vec

    def matrix(self, letter: str, n: int, degree: int) -> np.ndarray:
        return self.actions[(letter, n, degree)]

    def apply(self, letter: str, n: int, vec: np.ndarray, degree: int) -> np.ndarray:
        """X_n on a vector of ``degree``."""
        target = degree - n
        if target < 0:
            return _object_zeros(0)
        if target > self.degree_cap:
            raise ValueError(f"{letter}_{n} leaves the truncation (degree {target} > {self.degree_cap})")
        mat = self.actions[(letter, n, degree)]
        if mat.shape[1] == 0:
            return self.zero(target)
        return mat.dot(vec)

    def with_entry(self, letter: str, n: int, degree: int, i: int, j: int, value: ScalarLike) -> "GradedModule":
        """Copy with one action-matrix entry replaced."""
        actions = dict(self.actions)
        mat = actions[(letter, n, degree)].copy()
        mat[i, j] = to_scalar(value)
        actions[(letter, n, degree)] = mat
        return replace(self, actions=actions)


class _Collapse(Exception):
    def __init__(self, degree: int, vector: Vec):
        super().__init__(f"nonzero relation consequence in degree {degree}")
        self.degree = degree
        self.vector = vector


def _combine(pieces) -> Vec:
    out: Dict[Key, Fraction] = defaultdict(Fraction)
    for c, vec in pieces:
        for k, a in vec.items():
            out[k] += c * a
    return {k: a for k, a in out.items() if a}


class _VermaBuilder:
    """Degree-by-degree construction of M(U) up to ``ceiling``."""

    def __init__(self, table: ComponentTable, u: AAlphaModule, ceiling: int):
        """Initialize an empty build."""
        self.table = table
        self.u = u
        self.alpha = table.alpha
        self.ceiling = ceiling
        self.extras: Dict[int, List[Vec]] = defaultdict(list)
        self.keys: List[List[Key]] = []
        self.kernels: List[RationalSubspace] = []
        self.basis: List[List[Key]] = []
        self.top = 0
        self.restarts = 0
        self._cache: Dict[Tuple[str, int, Key], Vec] = {}

    # -- vectors -----------------------------------------------------------

    def _reduce(self, degree: int, vec: Vec) -> Vec:
        if degree >= self.top:
            return {k: c for k, c in vec.items() if c}
        return self.kernels[degree].reduce(vec)

    def _create(self, letter: str, k: int, vec: Vec, degree: int) -> Vec:
        return {(letter, k, b): c for b, c in self._reduce(degree, vec).items()}

    def act(self, letter: str, mode: int, vec: Vec, degree: int) -> Vec:
        """X_mode on a vector of ``degree``."""
        target = degree - mode
        if target < 0 or not vec:
            return {}
        if mode < 0:
            return self._reduce(target, self._create(letter, -mode, vec, degree))
        out: Dict[Key, Fraction] = defaultdict(Fraction)
        for key, c in vec.items():
            for k2, c2 in self._annihilate(letter, mode, key, degree).items():
                out[k2] += c * c2
        return self._reduce(target, out)

    def _annihilate(self, letter: str, m: int, key: Key, degree: int) -> Vec:
        cache_key = (letter, m, key)
        cached = self._cache.get(cache_key)
        if cached is None:
            cached = self._reduce(degree - m, self._rewrite(letter, m, key, degree))
            self._cache[cache_key] = cached
        return cached

    def _rewrite(self, x: str, m: int, key: Key, degree: int) -> Vec:
        if key[0] == "U":
            if m != 0:
                return {}
            mat = self.u.matrix(x)
            j = key[1]
            return {("U", i): mat[i, j] for i in range(self.u.dim) if mat[i, j] != 0}

        y, k, b = key
        src = degree - k
        w = {b: Fraction(1)}
        gt, g = self.table.gtilde, self.table.g
        pieces = []

        def twisted(coeff, inner: str):
            for l in range(src - m + 1):
                c = coeff(l)
                if c:
                    pieces.append((c, self._create(y, k + l, self.act(inner, m + l, w, src), src - m - l)))

        def psi_moved(coeff, scale):
            pieces.append((scale, self._create("Psi", k, self.act(x, m, w, src), src - m)))
            for l in range(1, degree + 1):
                c = coeff(l)
                if c:
                    lowered = self.act("Psi", l - k, w, src)
                    pieces.append((-scale * c, self.act(x, m - l, lowered, degree - l)))

        if (x, y) == ("E", "E"):
            twisted(gt, "E")
        elif (x, y) == ("F", "F"):
            twisted(g, "F")
        elif (x, y) == ("Psi", "E"):
            twisted(gt, "Psi")
        elif (x, y) == ("Psi", "F"):
            twisted(g, "Psi")
        elif (x, y) == ("Psi", "Psi"):
            pieces.append((Fraction(1), self._create("Psi", k, self.act("Psi", m, w, src), src - m)))
        elif (x, y) == ("E", "F"):
            pieces.append((Fraction(1), self._create("F", k, self.act("E", m, w, src), src - m)))
            pieces.append((Fraction(1), self.act("Psi", m - k, w, src)))
        elif (x, y) == ("F", "E"):
            pieces.append((Fraction(1), self._create("E", k, self.act("F", m, w, src), src - m)))
            pieces.append((Fraction(-1), self.act("Psi", m - k, w, src)))
        elif (x, y) == ("E", "Psi"):
            # E_m Psi_a = alpha (Psi_a E_m - sum_{l>=1} gt_l E_{m-l} Psi_{a+l})
            psi_moved(gt, self.alpha)
        elif (x, y) == ("F", "Psi"):
            psi_moved(g, 1 / self.alpha)
        else:
            raise ValueError(f"no rewrite for {x} against {y}")
        return _combine(pieces)

    def _eval_key(self, key: Key) -> Vec:
        """Re-evaluate a key as the word it names, in the current build."""
        if key[0] == "U":
            return {key: Fraction(1)}
        letter, k, inner = key
        return self._reduce(key_degree(key), self._create(letter, k, self._eval_key(inner), key_degree(inner)))

    # -- construction ------------------------------------------------------

    def _instances(self, d: int) -> Iterator[Tuple[int, Vec, dict]]:
        for d0 in range(d + 1):
            bases = self.keys[d0] if d0 == d else self.basis[d0]
            for m in range(d0 - d, d + 1):
                for n in range(d0 - d, d + 1):
                    if m + n > d0:
                        continue
                    for name in RELATIONS:
                        terms = relation_terms(self.table, name, m, n, d0)
                        if instance_peak(terms, d0) != d:
                            continue
                        for b in bases:
                            value = evaluate_terms(terms, d0, {b: Fraction(1)}, self.act, _combine)
                            yield d0 - m - n, value, {"relation": name, "modes": [m, n], "base": key_word(b)}

    def _close(self, d: int, kernel: RationalSubspace) -> None:
        changed = True
        while changed:
            changed = False
            for row in list(kernel.rows.values()):
                for letter in LETTERS:
                    if kernel.add(self.act(letter, 0, dict(row), d)):
                        changed = True
        for row in kernel.rows.values():
            for letter in LETTERS:
                for m in range(1, d + 1):
                    image = self.act(letter, m, dict(row), d)
                    if image:
                        raise _Collapse(d - m, image)

    def _build_degree(self, d: int) -> None:
        self.top = d
        if d == 0:
            keys = [("U", i) for i in range(self.u.dim)]
        else:
            keys = sorted((letter, k, b) for k in range(1, d + 1) for letter in LETTERS for b in self.basis[d - k])
        self.keys.append(keys)
        kernel = RationalSubspace()
        self.kernels.append(kernel)
        for vec in self.extras.get(d, []):
            kernel.add(_combine((c, self._eval_key(k)) for k, c in vec.items()))
        for target, value, where in self._instances(d):
            if target == d:
                kernel.add(value)
                continue
            rem = self._reduce(target, value)
            if rem:
                logger.debug("relation %s gives a new vector in degree %s", where, target)
                raise _Collapse(target, rem)
        self._close(d, kernel)
        if d == 0 and kernel.dim:
            raise RelationInconsistency(
                "relations kill a nonzero vector of U in degree 0",
                degree=0,
                witness={"kernel": [{key_word(k): str(c) for k, c in row.items()} for row in kernel.rows.values()]},
            )
        self.basis.append(kernel.complement(keys))
        logger.debug("degree %s: %s keys, kernel %s, dim %s", d, len(keys), kernel.dim, len(self.basis[d]))

    def build(self) -> "_VermaBuilder":
        d = 0
        while d <= self.ceiling:
            try:
                self._build_degree(d)
                d += 1
            except _Collapse as c:
                if c.degree == 0:
                    raise RelationInconsistency(
                        "a relation instance forces a nonzero vector of U to vanish",
                        degree=0,
                        witness={key_word(k): str(v) for k, v in c.vector.items()},
                    )
                self.extras[c.degree].append(c.vector)
                self.restarts += 1
                logger.info("restarting the build from degree %s", c.degree)
                del self.keys[c.degree:]
                del self.kernels[c.degree:]
                del self.basis[c.degree:]
                self._cache.clear()
                d = c.degree
        self.top = self.ceiling + 1
        return self

    def module(self, degree_cap: int, word_cap: int) -> GradedModule:
        dims = [len(self.basis[d]) for d in range(degree_cap + 1)]
        index = [{key: j for j, key in enumerate(self.basis[d])} for d in range(degree_cap + 1)]
        actions = {}
        for letter in LETTERS:
            for n in range(-degree_cap, degree_cap + 1):
                for d in range(degree_cap + 1):
                    t = d - n
                    if not 0 <= t <= degree_cap:
                        continue
                    mat = _object_zeros((dims[t], dims[d]))
                    for j, key in enumerate(self.basis[d]):
                        for k2, c in self.act(letter, n, {key: Fraction(1)}, d).items():
                            mat[index[t][k2], j] = c
                    actions[(letter, n, d)] = mat
        words = [[key_word(k) for k in self.basis[d]] for d in range(degree_cap + 1)]
        return GradedModule(self.alpha, degree_cap, dims, actions, word_cap, [], words)


def build_verma(table: ComponentTable, u: AAlphaModule, degree_cap: int, word_cap: int = 2,
                check_stability: bool = True) -> GradedModule:
    """Truncated M(U) in degrees 0..degree_cap.

    Relation instances are imposed up to degree degree_cap + word_cap - 2,
    so a larger word_cap can only shrink the dimensions.
    """
    if degree_cap < 0:
        raise InvalidConfig("degree_cap must be nonnegative")
    if word_cap < 2:
        raise InvalidConfig("word_cap must be at least 2")
    failing = aalpha_violations(u, table.alpha)
    if failing:
        logger.warning("U does not satisfy the A[%s] relations %s", table.alpha, failing)
    ceiling = degree_cap + word_cap - 2
    builder = _VermaBuilder(table, u, ceiling).build()
    module = builder.module(degree_cap, word_cap)
    logger.info("M(U) dims %s (word_cap %s, %s restarts)", module.dims, word_cap, builder.restarts)
    if check_stability:
        wider = _VermaBuilder(table, u, ceiling + 1).build()
        module.stabilized = [len(wider.basis[d]) == module.dims[d] for d in range(degree_cap + 1)]
    return module


def verify_graded_relations(table: ComponentTable, module: GradedModule, degree_cap: Optional[int] = None) -> Report:
    """Every relation instance whose terms stay within the truncation, on every basis vector."""
    cap = module.degree_cap if degree_cap is None else min(degree_cap, module.degree_cap)
    report = Report("atilde-relations", config={"degree_cap": cap, "dims": list(module.dims[:cap + 1])})
    for d0 in range(cap + 1):
        for j in range(module.dims[d0]):
            base = module.unit(d0, j)
            for m in range(d0 - cap, cap + 1):
                for n in range(d0 - cap, cap + 1):
                    if m + n > d0:
                        continue
                    target = d0 - m - n
                    for name in RELATIONS:
                        terms = relation_terms(table, name, m, n, d0)
                        peak = instance_peak(terms, d0)
                        if peak is None or peak > cap:
                            continue

                        def combine(pieces, target=target):
                            total = module.zero(target)
                            for c, vec in pieces:
                                total = total + vec * c
                            return total

                        value = evaluate_terms(terms, d0, base, module.apply, combine)
                        nonzero = {i: str(x) for i, x in enumerate(value) if x != 0}
                        witness = None
                        if nonzero:
                            word = module.basis_words[d0][j] if module.basis_words else str(j)
                            witness = {"degree": d0, "basis": word, "residual": nonzero}
                        report.record(name, not nonzero, modes=[m, n], witness=witness)
    return report
