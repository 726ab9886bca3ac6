"""Cardinality constraints: CNF encodings of "at least b of these literals".

Uses the sequential-counter encoding, which is linear in n*k auxiliary
variables and clauses and whose auxiliaries are implied by the inputs, so
projecting models onto the constrained literals is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .formula import FormulaError, VarAllocator


@dataclass(frozen=True)
class CardConstraint:
    """Sum over literals >= bound.  bound == len(literals)+1 encodes "never"."""

    literals: tuple[int, ...]
    bound: int

    def __post_init__(self):
        if not 0 <= self.bound <= len(self.literals) + 1:
            raise FormulaError(
                f"bound {self.bound} out of range for {len(self.literals)} literals"
            )


def _at_most(lits: Sequence[int], k: int, alloc: VarAllocator) -> list[tuple[int, ...]]:
    """Sequential counter for sum(lits) <= k, 0 <= k < len(lits)."""
    n = len(lits)
    if k == 0:
        return [(-l,) for l in lits]
    # s[i][j] (1-based j<=k): the prefix x_1..x_i contains at least j true literals
    clauses: list[tuple[int, ...]] = []
    prev = [alloc.fresh() for _ in range(k)]
    clauses.append((-lits[0], prev[0]))
    for i in range(1, n - 1):
        cur = [alloc.fresh() for _ in range(k)]
        clauses.append((-lits[i], cur[0]))
        clauses.append((-prev[0], cur[0]))
        for j in range(1, k):
            clauses.append((-lits[i], -prev[j - 1], cur[j]))
            clauses.append((-prev[j], cur[j]))
        clauses.append((-lits[i], -prev[k - 1]))
        prev = cur
    clauses.append((-lits[n - 1], -prev[k - 1]))
    return clauses


def encode_geq(constraint: CardConstraint, alloc: VarAllocator) -> list[tuple[int, ...]]:
    """Clauses whose models, projected onto the literals, have >= bound true.

    bound 0 yields no clauses; bound n+1 yields the empty clause.
    """
    lits = constraint.literals
    n = len(lits)
    b = constraint.bound
    if b == 0:
        return []
    if b > n:
        return [()]
    if b == n:
        return [(l,) for l in lits]
    # sum(lits) >= b  <=>  sum(~lits) <= n - b
    return _at_most([-l for l in lits], n - b, alloc)
