"""Batch output of every maximal biclique inside a 2-biplex branch.

When X is empty and each candidate misses at most two opposite-side
candidates, the cross-side complement of G[S | C] has maximum degree two, so
its components are isolated vertices, simple paths and even cycles.  Maximal
bicliques of the region are exactly the maximal independent sets of that
complement, i.e. one maximal independent set per component, combined.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence, TypeVar

from .branch import Branch
from .errors import ContractViolation
from .graph import SizeConstraints, iter_bits
from .results import Biclique

T = TypeVar("T")


@dataclass
class ComplementDecomposition:
    isolated: list[int] = field(default_factory=list)
    paths: list[list[int]] = field(default_factory=list)
    cycles: list[list[int]] = field(default_factory=list)

    def size(self) -> int:
        return len(self.isolated) + sum(map(len, self.paths)) + sum(map(len, self.cycles))


@dataclass
class WorkMeter:
    """Counts list mutations done while emitting; optionally samples (outputs, ops)."""

    ops: int = 0
    sample: bool = False
    samples: list[tuple[int, int]] = field(default_factory=list)


def decompose_complement(b: Branch) -> ComplementDecomposition:
    g = b.graph
    c = b.c
    nbr = g.nbr
    comp: dict[int, list[int]] = {}
    for u in iter_bits(c):
        miss = c & g.opposite_mask(u) & ~nbr[u]
        if miss:
            comp[u] = list(iter_bits(miss))
            if len(comp[u]) > 2:
                raise ContractViolation(f"{g.ref(u)!r} misses {len(comp[u])} candidates; not a 2-biplex")

    d = ComplementDecomposition()
    d.isolated = [u for u in iter_bits(b.s | c) if u not in comp]
    seen: set[int] = set()

    def walk(start: int) -> list[int]:
        chain = [start]
        seen.add(start)
        prev, cur = -1, start
        while True:
            nxt = [w for w in comp[cur] if w != prev and w not in seen]
            if not nxt:
                return chain
            prev, cur = cur, min(nxt)
            chain.append(cur)
            seen.add(cur)

    # paths start from their lower endpoint (endpoints have one complement neighbour)
    for u in sorted(comp):
        if u not in seen and len(comp[u]) == 1:
            d.paths.append(walk(u))
    # whatever is left lies on cycles; start each at its lowest uid
    for u in sorted(comp):
        if u not in seen:
            d.cycles.append(walk(u))
    return d


def _extend_path(p: Sequence[T], seed: list[T], last: int, out: list[list[T]]) -> None:
    """Grow ``seed`` (whose last member is ``p[last]``) by skipping one or two positions."""
    stack = [(seed, last)]
    while stack:
        chosen, i = stack.pop()
        if i + 2 >= len(p):
            out.append(chosen)
            continue
        # pushed in reverse so the i+2 branch is reported first
        if i + 3 < len(p):
            stack.append((chosen + [p[i + 3]], i + 3))
        stack.append((chosen + [p[i + 2]], i + 2))


def mis_from_path(p: Sequence[T]) -> list[list[T]]:
    """All maximal independent sets of the path p[0] - p[1] - ... - p[-1]."""
    if len(p) < 2:
        raise ContractViolation("a complement path needs at least two vertices")
    out: list[list[T]] = []
    _extend_path(p, [p[0]], 0, out)
    _extend_path(p, [p[1]], 1, out)
    return out


def mis_from_cycle(c: Sequence[T]) -> list[list[T]]:
    """All maximal independent sets of the even cycle c[0] - ... - c[-1] - c[0]."""
    k = len(c)
    if k < 4 or k % 2:
        raise ContractViolation(f"complement cycles are even with length >= 4, got {k}")
    if k == 4:
        return [[c[0], c[2]], [c[1], c[3]]]
    out: list[list[T]] = []
    # c[0] taken: c[-1] is covered, continue on c[0..k-2]
    _extend_path(c[: k - 1], [c[0]], 0, out)
    # c[1] taken: c[0] is covered, continue on c[1..k-1]
    _extend_path(c[1:], [c[1]], 0, out)
    # neither: c[2] and c[-1] are forced, c[-2] is covered
    _extend_path(c[2 : k - 2], [c[-1], c[2]], 0, out)
    return out


def emit_batch(
    b: Branch,
    d: ComplementDecomposition,
    k: SizeConstraints,
    sink: Callable[[Biclique], None],
    meter: WorkMeter | None = None,
) -> int:
    """Deliver every qualifying combination of per-component choices to ``sink``.

    Combinations are walked depth-first with the running left/right lists
    patched in place, and a prefix is abandoned as soon as the best possible
    completion cannot reach the size constraints.
    """
    g = b.graph
    nl = g.left_count
    lids, rids = g.left_ids, g.right_ids

    comps: list[list[tuple[list[int], list[int]]]] = []
    for choices in [mis_from_path(p) for p in d.paths] + [mis_from_cycle(c) for c in d.cycles]:
        comps.append([([lids[u] for u in ch if u < nl], [rids[u - nl] for u in ch if u >= nl]) for ch in choices])

    cur_l = [lids[u] for u in d.isolated if u < nl]
    cur_r = [rids[u - nl] for u in d.isolated if u >= nl]
    tl, tr = k.tau_l, k.tau_r

    depth = len(comps)
    # best achievable side sizes from component i onward
    rest_l = [0] * (depth + 1)
    rest_r = [0] * (depth + 1)
    for i in range(depth - 1, -1, -1):
        rest_l[i] = rest_l[i + 1] + max(len(ch[0]) for ch in comps[i])
        rest_r[i] = rest_r[i + 1] + max(len(ch[1]) for ch in comps[i])

    ops = 0
    emitted = 0
    sampling = meter is not None and meter.sample

    if len(cur_l) + rest_l[0] < tl or len(cur_r) + rest_r[0] < tr:
        return 0
    if depth == 0:
        if cur_l and cur_r:
            sink(Biclique(tuple(sorted(cur_l)), tuple(sorted(cur_r))))
            emitted = 1
        if meter is not None:
            meter.ops += 1
            if sampling and emitted:
                meter.samples.append((1, meter.ops))
        return emitted

    pos = [-1] * depth
    level = 0
    while level >= 0:
        choices = comps[level]
        j = pos[level]
        if j >= 0:
            cl, cr = choices[j]
            if cl:
                del cur_l[-len(cl):]
            if cr:
                del cur_r[-len(cr):]
            ops += len(cl) + len(cr)
        j += 1
        if j == len(choices):
            pos[level] = -1
            level -= 1
            continue
        pos[level] = j
        cl, cr = choices[j]
        cur_l.extend(cl)
        cur_r.extend(cr)
        ops += len(cl) + len(cr) + 1
        if len(cur_l) + rest_l[level + 1] < tl or len(cur_r) + rest_r[level + 1] < tr:
            continue
        if level + 1 < depth:
            level += 1
            continue
        # leaf: tau >= 1 already rules out one-sided combinations
        sink(Biclique(tuple(sorted(cur_l)), tuple(sorted(cur_r))))
        emitted += 1
        if sampling:
            meter.samples.append((emitted, meter.ops + ops))
    if meter is not None:
        meter.ops += ops
    return emitted
