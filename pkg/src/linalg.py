"""Exact linear algebra over QQ on sparse rows."""

import logging
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)

Row = Dict[Hashable, Fraction]


class RationalSubspace:
    """
    A subspace of QQ^(columns), with a basis kept in reduced row-echelon form.

    Rows are sparse dicts; the pivot of a row is its smallest column, so
    columns must be mutually comparable. Mutable: new vectors are added
    one at a time.
    """

    __slots__ = ["rows"]

    def __init__(self, vectors: Optional[Iterable[Mapping[Hashable, Fraction]]] = None):
        self.rows: Dict[Hashable, Row] = {}
        for vec in vectors or ():
            self.add(vec)

    def reduce(self, vec: Mapping[Hashable, Fraction]) -> Row:
        """Remainder of ``vec`` after eliminating every pivot column."""
        out = {k: Fraction(c) for k, c in vec.items() if c}
        for pivot in [k for k in out if k in self.rows]:
            c = out.get(pivot)
            if not c:
                continue
            # rows are fully reduced, so this never touches another pivot
            for k, a in self.rows[pivot].items():
                value = out.get(k, Fraction(0)) - c * a
                if value:
                    out[k] = value
                else:
                    out.pop(k, None)
        return out

    def add(self, vec: Mapping[Hashable, Fraction]) -> bool:
        """Add ``vec`` to the span; True iff the dimension grew."""
        rem = self.reduce(vec)
        if not rem:
            return False
        pivot = min(rem)
        lead = rem[pivot]
        row = {k: c / lead for k, c in rem.items()}
        for other in self.rows.values():
            c = other.get(pivot)
            if c:
                for k, a in row.items():
                    value = other.get(k, Fraction(0)) - c * a
                    if value:
                        other[k] = value
                    else:
                        other.pop(k, None)
        self.rows[pivot] = row
        return True

    def __contains__(self, vec: Mapping[Hashable, Fraction]) -> bool:
        return not self.reduce(vec)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def pivots(self) -> List[Hashable]:
        return sorted(self.rows)

    def complement(self, columns: Sequence[Hashable]) -> List[Hashable]:
        """The non-pivot columns among ``columns``, in the given order."""
        return [c for c in columns if c not in self.rows]


def exact_rank(rows: Sequence[Mapping[Hashable, Fraction]]) -> int:
    """Rank over QQ of sparse rows, via a sparse DomainMatrix."""
    columns = sorted({k for row in rows for k, c in row.items() if c}, key=repr)
    if not rows or not columns:
        return 0
    index = {k: j for j, k in enumerate(columns)}
    data = {}
    for i, row in enumerate(rows):
        entries = {index[k]: QQ(Fraction(c).numerator, Fraction(c).denominator) for k, c in row.items() if c}
        if entries:
            data[i] = entries
    matrix = DomainMatrix(data, (len(rows), len(columns)), QQ)
    return matrix.rank()
