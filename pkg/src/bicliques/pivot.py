"""Pivot selection: the minimum non-neighbour rule and the partition-based rule."""
from __future__ import annotations

from dataclasses import dataclass

from .branch import Branch
from .errors import ContractViolation
from .graph import iter_bits


@dataclass(frozen=True)
class PivotDecision:
    pivot: int
    pivot_in_c: bool
    targets: tuple[int, ...]


@dataclass(frozen=True)
class Partition:
    """C' as a uid mask: candidates with no X-side non-neighbour and at most two C-side ones."""

    c_prime: int
    left_mask: int

    @property
    def c_prime_left(self) -> int:
        return self.c_prime & self.left_mask

    @property
    def c_prime_right(self) -> int:
        return self.c_prime & ~self.left_mask


def _decision(b: Branch, pivot: int) -> PivotDecision:
    g = b.graph
    in_c = bool(b.c >> pivot & 1)
    others = tuple(iter_bits(b.c & g.opposite_mask(pivot) & ~g.nbr[pivot]))
    return PivotDecision(pivot, in_c, (pivot,) + others if in_c else others)


def pivot_basic(b: Branch) -> PivotDecision:
    """Vertex of C or X with the fewest non-neighbours in the opposite side of C.

    Ties go to the left side, then to C over X, then to the lower index.
    """
    if not b.c:
        raise ContractViolation("pivot requested on a branch with empty C")
    lm = b.graph.left_mask
    c = b.c
    cd = b.cd_c
    # uid order already puts left before right and ascending index within a side
    best = min(cd, key=lambda u: (cd[u], 0 if lm >> u & 1 else 1, 0 if c >> u & 1 else 1, u))
    return _decision(b, best)


def compute_partition(b: Branch) -> Partition:
    cd = b.cd_c
    cp = 0
    for u in iter_bits(b.c):
        if cd[u] <= 2 and b.cd_x(u) == 0:
            cp |= 1 << u
    return Partition(cp, b.graph.left_mask)


def candidate_pivots(b: Branch, p: Partition | None = None) -> int:
    """Uid mask of pivot candidates: (C \\ C') | X, plus C' vertices missing someone in C \\ C'."""
    if p is None:
        p = compute_partition(b)
    g = b.graph
    outside = b.c & ~p.c_prime
    cand = outside | b.x
    if outside:
        nbr = g.nbr
        for u in iter_bits(p.c_prime):
            if outside & g.opposite_mask(u) & ~nbr[u]:
                cand |= 1 << u
    return cand


def pivot_partitioned(b: Branch) -> PivotDecision | None:
    """Pivot among the partition candidates, or None when there are none.

    Minimum non-neighbour count against the opposite side of C wins; ties
    prefer X, then the left side, then the lower index.
    """
    cand = candidate_pivots(b)
    if not cand:
        return None
    lm = b.graph.left_mask
    x = b.x
    cd = b.cd_c
    best = min(
        iter_bits(cand),
        key=lambda u: (cd[u], 0 if x >> u & 1 else 1, 0 if lm >> u & 1 else 1, u),
    )
    return _decision(b, best)
