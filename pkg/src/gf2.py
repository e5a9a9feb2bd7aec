"""GF(2) elimination on vectors stored as Python int bitsets."""

from __future__ import annotations

from typing import Dict, Iterable


class XorBasis:
    """Row-echelon basis keyed by leading bit; vectors are int bitsets."""

    def __init__(self) -> None:
        self._pivots: Dict[int, int] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, vec: int) -> int:
        pivots = self._pivots
        while vec:
            lead = vec.bit_length() - 1
            row = pivots.get(lead)
            if row is None:
                return vec
            vec ^= row
        return 0

    def add(self, vec: int) -> bool:
        """Insert vec; returns False if it was already in the span."""
        vec = self.reduce(vec)
        if not vec:
            return False
        self._pivots[vec.bit_length() - 1] = vec
        return True

    def contains(self, vec: int) -> bool:
        return self.reduce(vec) == 0


def gf2_rank(vectors: Iterable[int]) -> int:
    """Rank over GF(2) of a set of bitset vectors."""
    basis = XorBasis()
    for v in vectors:
        basis.add(v)
    return basis.rank


def gf2_in_span(vec: int, vectors: Iterable[int]) -> bool:
    """Whether vec is a GF(2) combination of vectors."""
    basis = XorBasis()
    for v in vectors:
        basis.add(v)
    return basis.contains(vec)


__all__ = ["XorBasis", "gf2_rank", "gf2_in_span"]
