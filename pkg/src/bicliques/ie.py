"""Inclusion-exclusion decomposition over the left side.

With the left vertices ordered v_0, v_1, ..., instance i seeds S = {v_i}
and keeps only v_i's neighbours plus the left vertices sharing a neighbour
with it.  Those earlier in the order go to X, so every maximal biclique is
produced by exactly one instance: the one of its earliest left vertex.
"""
from __future__ import annotations

import heapq
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from .branch import Branch
from .enumerator import EnumConfig, EnumStats, IeMode, Sink, _Delivery, _Stop, run_search
from .errors import ContractViolation
from .graph import BipartiteGraph, iter_bits, normalize_sides


@dataclass(frozen=True)
class VertexOrdering:
    order: tuple[int, ...]
    kind: IeMode


@dataclass(frozen=True)
class IeInstance:
    seed: int
    s: int
    c: int
    x: int

    def branch(self, g: BipartiteGraph) -> Branch:
        return Branch(g, self.s, self.c, self.x)


def two_hop(g: BipartiteGraph, i: int) -> int:
    """Left uids other than ``i`` sharing at least one neighbour with left vertex ``i``."""
    m = 0
    for j in g.adj_left[i]:
        m |= g.nbr[g.left_count + j]
    return m & ~(1 << i)


def order_vertices(g: BipartiteGraph, kind: IeMode | str) -> VertexOrdering:
    kind = IeMode(kind)
    nl = g.left_count
    if kind in (IeMode.ARBITRARY, IeMode.OFF):
        order = tuple(range(nl))
    elif kind is IeMode.DEGREE:
        order = tuple(sorted(range(nl), key=lambda i: (len(g.adj_left[i]), i)))
    elif kind is IeMode.DEGENERACY:
        order = _degeneracy_left(g)
    else:
        order = _projection_peel(g)
    return VertexOrdering(order, kind)


def _peel(n: int, degree: list[int], neighbours) -> list[int]:
    """Repeatedly remove a minimum-degree vertex (lowest id on ties)."""
    heap = [(d, u) for u, d in enumerate(degree)]
    heapq.heapify(heap)
    removed = [False] * n
    out = []
    while heap:
        d, u = heapq.heappop(heap)
        if removed[u] or d != degree[u]:
            continue
        removed[u] = True
        out.append(u)
        for w in neighbours(u):
            if not removed[w]:
                degree[w] -= 1
                heapq.heappush(heap, (degree[w], w))
    return out


def _degeneracy_left(g: BipartiteGraph) -> tuple[int, ...]:
    nbr = g.nbr
    peeled = _peel(g.n, [m.bit_count() for m in nbr], lambda u: iter_bits(nbr[u]))
    return tuple(u for u in peeled if u < g.left_count)


def _projection_peel(g: BipartiteGraph) -> tuple[int, ...]:
    # stand-in for unilateral ordering: peel the one-mode projection of L
    proj = [two_hop(g, i) for i in range(g.left_count)]
    return tuple(_peel(g.left_count, [m.bit_count() for m in proj], lambda u: iter_bits(proj[u])))


def build_instance(g: BipartiteGraph, ordering: VertexOrdering, i: int) -> IeInstance:
    if not 0 <= i < len(ordering.order):
        raise ValueError(f"position {i} out of range for {len(ordering.order)} vertices")
    v = ordering.order[i]
    earlier = 0
    for w in ordering.order[:i]:
        earlier |= 1 << w
    n1 = g.nbr[v]
    n2 = two_hop(g, v)
    c = (n1 | n2) & ~(earlier | 1 << v)
    x = n2 & earlier
    return IeInstance(v, 1 << v, c, x)


def gamma(g: BipartiteGraph, ordering: VertexOrdering | None = None) -> int:
    """Largest |C_i| + |X_i| over all root instances."""
    if ordering is None:
        ordering = order_vertices(g, IeMode.ARBITRARY)
    best = 0
    for i in range(len(ordering.order)):
        inst = build_instance(g, ordering, i)
        best = max(best, (inst.c | inst.x).bit_count())
    return best


def _seed_branch(g: BipartiteGraph, inst: IeInstance) -> Branch:
    b = inst.branch(g)
    if b.c & b.x:
        raise ContractViolation("instance C and X overlap")
    # every right-side candidate must be adjacent to the seed
    if (b.c | b.x) & g.right_mask & ~g.nbr[inst.seed]:
        raise ContractViolation("instance candidates not adjacent to seed")
    return b


def enumerate_ie(g: BipartiteGraph, cfg: EnumConfig, sink: Sink | None = None) -> EnumStats:
    if cfg.ie_mode is IeMode.OFF:
        raise ValueError("enumerate_ie needs an ordering kind")
    h, swapped = normalize_sides(g)
    run_cfg = cfg
    out = sink
    if swapped:
        run_cfg = replace(cfg, constraints=cfg.constraints.swapped())
        if sink is not None:
            out = lambda r: sink(r.swapped())  # noqa: E731
    ordering = order_vertices(h, cfg.ie_mode)
    # degree-0 seeds own no biclique
    positions = [i for i, v in enumerate(ordering.order) if h.nbr[v]]

    if cfg.workers > 1:
        return _run_parallel(h, ordering, positions, run_cfg, out)

    stats = EnumStats()
    deliver = _Delivery(out, run_cfg, stats)
    try:
        for i in positions:
            run_search([_seed_branch(h, build_instance(h, ordering, i))], run_cfg, deliver, stats)
    except _Stop:
        stats.partial = True
    return stats


def _run_parallel(h, ordering, positions, cfg: EnumConfig, sink: Sink | None) -> EnumStats:
    lock = threading.Lock()
    total = EnumStats()

    def serial_sink(r):
        with lock:
            if cfg.emit_limit is not None and total.outputs >= cfg.emit_limit:
                raise _Stop
            total.outputs += 1
            if sink is not None:
                sink(r)

    def one(i: int) -> EnumStats:
        st = EnumStats()
        local_cfg = EnumConfig(
            tier=cfg.tier,
            constraints=cfg.constraints,
            record_delays=cfg.record_delays,
            time_budget=cfg.time_budget,
            observer=cfg.observer,
        )
        deliver = _Delivery(serial_sink, local_cfg, st)
        try:
            run_search([_seed_branch(h, build_instance(h, ordering, i))], local_cfg, deliver, st)
        except _Stop:
            st.partial = True
        return st

    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        parts = list(pool.map(one, positions))
    for st in parts:
        st.outputs = 0  # counted centrally under the lock
        total.merge(st)
    return total
