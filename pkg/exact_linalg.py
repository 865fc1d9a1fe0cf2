"""
Exact Linear Algebra Module - Matrix rank without floating point
Sparse row echelon reduction: fraction-free with content reduction over the
integers for the rationals, modular inverses for prime fields
"""

from math import gcd
from typing import Dict, Iterable, Mapping


SparseRow = Dict[int, int]


class RowEchelon:
    """
    Incrementally built row echelon basis of a row space

    Rows are sparse dicts {column: nonzero entry}. Each pivot row is stored
    under its leading (smallest) column; a new row is reduced against the
    pivots until it either vanishes or gets a fresh leading column.
    """

    __slots__ = ["characteristic", "pivots"]

    def __init__(self, characteristic: int = 0):
        """
        Args:
            characteristic: 0 for the rationals, otherwise a prime p
        """
        self.characteristic = characteristic
        self.pivots: Dict[int, SparseRow] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _normalize(self, row: Mapping[int, int]) -> SparseRow:
        p = self.characteristic
        if p:
            cleaned = {c: v % p for c, v in row.items() if v % p}
            if cleaned:
                inverse = pow(cleaned[min(cleaned)], p - 2, p)
                cleaned = {c: (v * inverse) % p for c, v in cleaned.items()}
            return cleaned
        cleaned = {c: v for c, v in row.items() if v}
        if cleaned:
            content = 0
            for v in cleaned.values():
                content = gcd(content, v)
            if cleaned[min(cleaned)] < 0:
                content = -content
            if content != 1:
                cleaned = {c: v // content for c, v in cleaned.items()}
        return cleaned

    def _eliminate(self, row: SparseRow, pivot: SparseRow, column: int) -> SparseRow:
        p = self.characteristic
        lead = row[column]
        result = dict(row)
        if p:
            # Pivot rows are monic in their leading column
            for c, v in pivot.items():
                result[c] = (result.get(c, 0) - lead * v) % p
        else:
            scale = pivot[column]
            for c in result:
                result[c] *= scale
            for c, v in pivot.items():
                result[c] = result.get(c, 0) - lead * v
        return self._normalize(result)

    def add_row(self, row: Mapping[int, int]) -> bool:
        """
        Reduce a row against the basis and keep it if independent

        Returns:
            True when the row increased the rank
        """
        current = self._normalize(row)
        while current:
            column = min(current)
            pivot = self.pivots.get(column)
            if pivot is None:
                self.pivots[column] = current
                return True
            current = self._eliminate(current, pivot, column)
        return False


def sparse_rank(rows: Iterable[Mapping[int, int]], characteristic: int = 0) -> int:
    """
    Rank of a sparse integer matrix over Q or GF(p)

    Args:
        rows: Matrix rows as {column: entry} mappings
        characteristic: 0 for Q, otherwise a prime

    Returns:
        The exact rank
    """
    echelon = RowEchelon(characteristic)
    for row in rows:
        echelon.add_row(row)
    return echelon.rank

