"""Exhaustive reference enumerator used as ground truth in tests."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import OracleGuardError
from .graph import BipartiteGraph, SizeConstraints, Side
from .results import Biclique

GUARD = 24


def oracle_enumerate(
    g: BipartiteGraph, k: SizeConstraints = SizeConstraints(), side: Side | None = None
) -> frozenset[Biclique]:
    """All maximal bicliques by closure over subsets of one side.

    A subset T of the chosen side, its common neighbourhood N(T), and the
    common neighbourhood of N(T) form a maximal biclique exactly when that
    last set equals T.  ``side`` defaults to the smaller side.
    """
    if side is None:
        side = Side.LEFT if g.left_count <= g.right_count else Side.RIGHT
    if side == Side.LEFT:
        ns, adj_s, adj_o, ids_s, ids_o = g.left_count, g.adj_left, g.adj_right, g.left_ids, g.right_ids
        n_other = g.right_count
    else:
        ns, adj_s, adj_o, ids_s, ids_o = g.right_count, g.adj_right, g.adj_left, g.right_ids, g.left_ids
        n_other = g.left_count
    if ns > GUARD:
        raise OracleGuardError(f"oracle needs a side of at most {GUARD} vertices, got {ns}")

    nb_s = [sum(1 << j for j in a) for a in adj_s]
    nb_o = [sum(1 << i for i in a) for a in adj_o]
    found: set[tuple[int, int]] = set()

    def closure(others: int) -> int:
        t = (1 << ns) - 1
        j = 0
        while others:
            if others & 1:
                t &= nb_o[j]
            others >>= 1
            j += 1
        return t

    # depth-first over subsets; an empty common neighbourhood stays empty for supersets
    stack = [(0, 0, (1 << n_other) - 1)]
    while stack:
        start, t, common = stack.pop()
        for i in range(start, ns):
            t2 = t | 1 << i
            c2 = common & nb_s[i]
            if not c2:
                continue
            if closure(c2) == t2:
                found.add((t2, c2))
            stack.append((i + 1, t2, c2))

    def ids(mask: int, table) -> tuple[int, ...]:
        return tuple(sorted(table[i] for i in range(mask.bit_length()) if mask >> i & 1))

    out = set()
    for t, c in found:
        a, b = ids(t, ids_s), ids(c, ids_o)
        left, right = (a, b) if side == Side.LEFT else (b, a)
        if len(left) >= k.tau_l and len(right) >= k.tau_r:
            out.add(Biclique(left, right))
    return frozenset(out)


@dataclass(frozen=True)
class Diff:
    only_a: frozenset
    only_b: frozenset

    @property
    def empty(self) -> bool:
        return not self.only_a and not self.only_b

    @property
    def size(self) -> int:
        return len(self.only_a) + len(self.only_b)

    def report(self, limit: int = 10) -> str:
        lines = [f"only in first: {len(self.only_a)}, only in second: {len(self.only_b)}"]
        for tag, items in (("-", self.only_a), ("+", self.only_b)):
            for r in sorted(items)[:limit]:
                lines.append(f"  {tag} {r.format_line()}")
        return "\n".join(lines)


def compare(a, b) -> Diff:
    a, b = frozenset(a), frozenset(b)
    return Diff(a - b, b - a)
