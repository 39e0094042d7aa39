"""Fock modules of the loop Heisenberg and loop super-Heisenberg algebras.

Basis monomials are e(-m1)...e(-mr) f(-n1)...f(-ns) psi(-k1)...psi(-kl)|0>
with each block sorted by decreasing m. Internally a monomial is a tuple of
(rank, mode) factors in ascending order, rank 0 = e, 1 = f, 2 = psi.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple

from sympy.utilities.iterables import partitions

from .errors import ZeroVector
from .series import ScalarLike, TruncSeries, series_inv, series_mul, to_scalar

logger = logging.getLogger(__name__)

GENERATORS = ("e", "f", "psi")
RANK = {"e": 0, "f": 1, "psi": 2}

Factor = Tuple[int, int]
Factors = Tuple[Factor, ...]


@dataclass(frozen=True)
class FockMonomial:
    """Positive mode lists of the e, f and psi blocks."""

    e: Tuple[int, ...] = ()
    f: Tuple[int, ...] = ()
    psi: Tuple[int, ...] = ()

    @classmethod
    def make(cls, e: Iterable[int] = (), f: Iterable[int] = (), psi: Iterable[int] = ()) -> "FockMonomial":
        """Sort each block into normal order."""
        return cls(
            tuple(sorted((int(m) for m in e), reverse=True)),
            tuple(sorted((int(m) for m in f), reverse=True)),
            tuple(sorted((int(m) for m in psi), reverse=True)),
        )

    @classmethod
    def vacuum(cls) -> "FockMonomial":
        return cls()

    @staticmethod
    @lru_cache(maxsize=None)
    def from_factors(factors: Factors) -> "FockMonomial":
        blocks: List[List[int]] = [[], [], []]
        for rank, mode in factors:
            blocks[rank].append(-mode)
        return FockMonomial(tuple(blocks[0]), tuple(blocks[1]), tuple(blocks[2]))

    @cached_property
    def factors(self) -> Factors:
        out = []
        for rank, block in enumerate((self.e, self.f, self.psi)):
            out.extend((rank, -m) for m in block)
        return tuple(out)

    @property
    def weight(self) -> int:
        return sum(self.e) + sum(self.f) + sum(self.psi)

    @property
    def is_vacuum(self) -> bool:
        return not (self.e or self.f or self.psi)

    def is_valid(self, super_: bool) -> bool:
        """Positive modes, weakly decreasing; strictly decreasing e and f blocks when super."""
        for block in (self.e, self.f, self.psi):
            if any(m < 1 for m in block) or list(block) != sorted(block, reverse=True):
                return False
        if super_:
            return len(set(self.e)) == len(self.e) and len(set(self.f)) == len(self.f)
        return True

    def sort_key(self) -> Tuple:
        return (self.weight, self.e, self.f, self.psi)

    def __str__(self) -> str:
        if self.is_vacuum:
            return "|0>"
        parts = [f"{GENERATORS[rank]}({mode})" for rank, mode in self.factors]
        return "".join(parts) + "|0>"


@dataclass(frozen=True)
class FockSpace:
    """Plain (``super_=False``) or super Fock space.

    ``koszul=False`` drops the sign from transposing two odd factors; only
    the negative control uses it.
    """

    super_: bool = False
    koszul: bool = True

    @property
    def super(self) -> bool:
        return self.super_

    def zero(self) -> "FockVector":
        return FockVector({}, self)

    def vacuum(self) -> "FockVector":
        return FockVector({FockMonomial.vacuum(): Fraction(1)}, self)

    def monomial_vector(self, e: Iterable[int] = (), f: Iterable[int] = (), psi: Iterable[int] = (),
                        c: ScalarLike = 1) -> "FockVector":
        """Basis vector with positive mode lists (e.g. e=[2, 1] is e(-2)e(-1)|0>)."""
        mono = FockMonomial.make(e, f, psi)
        if not mono.is_valid(self.super_):
            return self.zero()
        return FockVector({mono: to_scalar(c)}, self)

    def basis(self, weight: int) -> List[FockMonomial]:
        return enumerate_basis(weight, self.super_)


class FockVector:
    """Sparse linear combination of basis monomials. Treated as immutable."""

    __slots__ = ["terms", "space"]

    def __init__(self, terms: Mapping[FockMonomial, ScalarLike], space: FockSpace):
        self.terms: Dict[FockMonomial, Fraction] = {m: to_scalar(c) for m, c in terms.items() if c}
        self.space = space

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, mono: FockMonomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def items(self) -> List[Tuple[FockMonomial, Fraction]]:
        """Terms in canonical order."""
        return sorted(self.terms.items(), key=lambda item: item[0].sort_key())

    def __iter__(self) -> Iterator[FockMonomial]:
        return iter(m for m, _ in self.items())

    def __len__(self) -> int:
        return len(self.terms)

    def weight(self) -> int:
        return weight(self)

    def scale(self, c: ScalarLike) -> "FockVector":
        c = to_scalar(c)
        return FockVector({m: c * a for m, a in self.terms.items()}, self.space)

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return FockVector(out, self.space)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + other.scale(-1)

    def __neg__(self) -> "FockVector":
        return self.scale(-1)

    def __rmul__(self, c: ScalarLike) -> "FockVector":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def as_row(self) -> Dict[FockMonomial, Fraction]:
        return dict(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{m}" for m, c in self.items())

    __repr__ = __str__


def _bracket(rank: int, mode: int, other: Factor, super_: bool) -> Tuple[int, int, int]:
    """[a(m), x(n)] (anticommutator for two odd factors in the super case) as (rank, mode, coeff)."""
    if rank == 0 and other[0] == 1:
        return 2, mode + other[1], 1
    if rank == 1 and other[0] == 0:
        return 2, mode + other[1], 1 if super_ else -1
    return 0, 0, 0


@lru_cache(maxsize=None)
def _act(rank: int, mode: int, factors: Factors, super_: bool, koszul: bool) -> Tuple[Tuple[Factors, int], ...]:
    """a(mode) applied to the monomial ``factors``, straightened to normal order."""
    key = (rank, mode)
    if rank == 2 and mode >= 0:
        # psi is central and its nonnegative modes kill the vacuum
        return ()
    if mode < 0 and (not factors or key <= factors[0]):
        if super_ and rank < 2 and factors and factors[0] == key:
            return ()
        return (((key,) + factors, 1),)
    if not factors:
        return ()

    head, rest = factors[0], factors[1:]
    sign = -1 if (super_ and koszul and rank < 2 and head[0] < 2) else 1
    out: Dict[Factors, int] = defaultdict(int)
    for mono, c in _act(rank, mode, rest, super_, koszul):
        for mono2, c2 in _act(head[0], head[1], mono, super_, koszul):
            out[mono2] += sign * c * c2
    b_rank, b_mode, b_coeff = _bracket(rank, mode, head, super_)
    if b_coeff:
        for mono, c in _act(b_rank, b_mode, rest, super_, koszul):
            out[mono] += b_coeff * c
    return tuple((mono, c) for mono, c in sorted(out.items()) if c)


def act_on_factors(rank: int, mode: int, factors: Factors, space: FockSpace) -> Tuple[Tuple[Factors, int], ...]:
    """Straightened action of one bar mode on a factor tuple."""
    return _act(rank, mode, factors, space.super_, space.koszul)


def apply_bar_mode(gen: str, m: int, v: FockVector) -> FockVector:
    """Act by e(m), f(m) or psi(m) of the loop (super-)Heisenberg algebra."""
    rank = RANK[gen]
    out: Dict[FockMonomial, Fraction] = defaultdict(Fraction)
    for mono, c in v.terms.items():
        for factors, k in act_on_factors(rank, m, mono.factors, v.space):
            out[FockMonomial.from_factors(factors)] += c * k
    return FockVector(out, v.space)


def _parts(n: int, strict: bool) -> List[Tuple[int, ...]]:
    if n == 0:
        return [()]
    out = []
    for p in partitions(n):
        if strict and any(mult > 1 for mult in p.values()):
            continue
        out.append(tuple(sorted((part for part, mult in p.items() for _ in range(mult)), reverse=True)))
    return out


@lru_cache(maxsize=None)
def _basis(weight: int, super_: bool) -> Tuple[FockMonomial, ...]:
    out = []
    for a in range(weight + 1):
        for b in range(weight - a + 1):
            c = weight - a - b
            for e in _parts(a, super_):
                for f in _parts(b, super_):
                    for psi in _parts(c, False):
                        out.append(FockMonomial(e, f, psi))
    out.sort(key=lambda m: (m.e, m.f, m.psi), reverse=True)
    return tuple(out)


def enumerate_basis(weight: int, super_: bool = False) -> List[FockMonomial]:
    """All basis monomials of exactly ``weight``, in canonical order."""
    if weight < 0:
        return []
    return list(_basis(weight, super_))


def weight(v: FockVector) -> int:
    """Largest weight among the terms of ``v``."""
    if v.is_zero():
        raise ZeroVector("the zero vector has no weight")
    return max(m.weight for m in v.terms)


def _rebuild(factors: Factors, space: FockSpace) -> Dict[Factors, int]:
    """Apply the factors right to left to the vacuum."""
    current: Dict[Factors, int] = {(): 1}
    for rank, mode in reversed(factors):
        nxt: Dict[Factors, int] = defaultdict(int)
        for mono, c in current.items():
            for mono2, k in act_on_factors(rank, mode, mono, space):
                nxt[mono2] += c * k
        current = {k: c for k, c in nxt.items() if c}
    return current


def derivation(v: FockVector) -> FockVector:
    """d(a(n)) = -n a(n-1) extended as a derivation with d|0> = 0."""
    out: Dict[FockMonomial, Fraction] = defaultdict(Fraction)
    for mono, c in v.terms.items():
        factors = mono.factors
        for pos, (rank, mode) in enumerate(factors):
            shifted = factors[:pos] + ((rank, mode - 1),) + factors[pos + 1:]
            for result, k in _rebuild(shifted, v.space).items():
                out[FockMonomial.from_factors(result)] += -mode * c * k
    return FockVector(out, v.space)


def basis_count(weight: int, super_: bool = False) -> int:
    """Number of basis monomials of ``weight``, read off the generating function.

    Plain: prod_k (1 - x^k)^-3. Super: prod_k (1 + x^k)^2 (1 - x^k)^-1.
    Independent of ``enumerate_basis``.
    """
    if weight < 0:
        return 0
    trunc = weight + 1
    total = TruncSeries.one(trunc)
    for k in range(1, trunc):
        bump = TruncSeries.make(0, [1] + [0] * (k - 1) + [1], trunc)
        dip = series_inv(TruncSeries.make(0, [1] + [0] * (k - 1) + [-1], trunc))
        factors = (bump, bump, dip) if super_ else (dip, dip, dip)
        for factor in factors:
            total = series_mul(total, factor)
    return int(total.coeff(weight))
