"""Branch-and-bound driver for the three algorithm tiers.

* ``basic`` - minimum non-neighbour pivot, stop only when C and X are empty.
* ``bps``   - same pivot, plus the 2-biplex stopping rule with batch output.
* ``ips``   - 2-biplex stopping rule with partition-based pivoting.
"""
from __future__ import annotations

import enum
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

from .biplex import WorkMeter, decompose_complement, emit_batch
from .branch import (
    Branch,
    TerminalKind,
    Tier,
    classify_terminal,
    expand,
    make_root,
    prune_p1,
    prune_p2,
)
from .graph import BipartiteGraph, SizeConstraints, iter_bits
from .pivot import pivot_basic, pivot_partitioned
from .results import Biclique

Sink = Callable[[Biclique], None]
Observer = Callable[[str, Branch], None]


class IeMode(str, enum.Enum):
    OFF = "off"
    ARBITRARY = "arbitrary"
    DEGREE = "degree"
    DEGENERACY = "degeneracy"
    UNILATERAL = "unilateral"


@dataclass
class EnumConfig:
    tier: Tier = Tier.IPS
    constraints: SizeConstraints = SizeConstraints()
    ie_mode: IeMode = IeMode.OFF
    stats_enabled: bool = True
    emit_limit: int | None = None
    time_budget: float | None = None
    record_delays: bool = False
    depth_limit: int | None = None
    workers: int = 1
    # called with ("p1" | "p2" | "batch", branch); test instrumentation only
    observer: Observer | None = None
    meter: WorkMeter | None = None

    def __post_init__(self) -> None:
        self.tier = Tier(self.tier)
        self.ie_mode = IeMode(self.ie_mode)
        self.constraints = SizeConstraints(*self.constraints).validate()
        if self.emit_limit is not None and self.emit_limit <= 0:
            raise ValueError("emit_limit must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time_budget must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def echo(self) -> dict:
        return {
            "tier": self.tier.value,
            "tau_l": self.constraints.tau_l,
            "tau_r": self.constraints.tau_r,
            "ie_mode": self.ie_mode.value,
            "emit_limit": self.emit_limit,
            "time_budget": self.time_budget,
        }


@dataclass
class EnumStats:
    branches: int = 0
    biplex_batches: int = 0
    trivial_terminals: int = 0
    pruned_p1: int = 0
    pruned_p2: int = 0
    outputs: int = 0
    max_depth: int = 0
    partial: bool = False
    delay_samples: list[float] = field(default_factory=list)

    def merge(self, other: "EnumStats") -> None:
        self.branches += other.branches
        self.biplex_batches += other.biplex_batches
        self.trivial_terminals += other.trivial_terminals
        self.pruned_p1 += other.pruned_p1
        self.pruned_p2 += other.pruned_p2
        self.outputs += other.outputs
        self.max_depth = max(self.max_depth, other.max_depth)
        self.partial = self.partial or other.partial
        self.delay_samples.extend(other.delay_samples)

    def counters(self) -> dict:
        d = asdict(self)
        del d["delay_samples"]
        return d


class _Stop(Exception):
    pass


class _Delivery:
    """Wraps the user sink with counting, limits and delay sampling."""

    def __init__(self, sink: Sink | None, cfg: EnumConfig, stats: EnumStats):
        self.sink = sink
        self.limit = cfg.emit_limit
        self.stats = stats
        self.record = cfg.record_delays
        self.last = time.perf_counter()
        self.deadline = None if cfg.time_budget is None else self.last + cfg.time_budget

    def __call__(self, r: Biclique) -> None:
        if self.sink is not None:
            self.sink(r)
        st = self.stats
        st.outputs += 1
        if self.record:
            now = time.perf_counter()
            st.delay_samples.append(now - self.last)
            self.last = now
        if self.limit is not None and st.outputs >= self.limit:
            raise _Stop

    def out_of_time(self) -> bool:
        return self.deadline is not None and time.perf_counter() > self.deadline


def run_search(roots: Iterable[Branch], cfg: EnumConfig, deliver: _Delivery, stats: EnumStats) -> None:
    """Depth-first search from ``roots`` in order; raises _Stop on a limit."""
    tier = cfg.tier
    k = cfg.constraints
    observer = cfg.observer
    choose = pivot_partitioned if tier is Tier.IPS else pivot_basic
    stack: list[tuple[Branch, int]] = [(r, 0) for r in reversed(list(roots))]
    if not stack:
        return
    g = stack[0][0].graph
    depth_limit = cfg.depth_limit if cfg.depth_limit is not None else g.n + 1

    while stack:
        b, depth = stack.pop()
        stats.branches += 1
        if depth > stats.max_depth:
            stats.max_depth = depth
            if depth > depth_limit:
                raise RecursionError(f"search depth {depth} exceeds limit {depth_limit}")
        if deliver.out_of_time():
            raise _Stop

        kind = classify_terminal(b, tier)
        if kind is TerminalKind.BIPLEX_BATCH:
            stats.biplex_batches += 1
            if observer:
                observer("batch", b)
            emit_batch(b, decompose_complement(b), k, deliver, cfg.meter)
            continue
        if kind is TerminalKind.TRIVIAL_MAXIMAL:
            stats.trivial_terminals += 1
            _emit_s(b, k, deliver)
            continue
        if kind is TerminalKind.TRIVIAL_DEAD:
            stats.trivial_terminals += 1
            continue
        if prune_p1(b, k):
            stats.pruned_p1 += 1
            if observer:
                observer("p1", b)
            continue
        if prune_p2(b):
            stats.pruned_p2 += 1
            if observer:
                observer("p2", b)
            continue

        decision = choose(b)
        children = []
        preceding: list[int] = []
        for t in decision.targets:
            children.append((expand(b, t, preceding), depth + 1))
            preceding.append(t)
        stack.extend(reversed(children))


def _emit_s(b: Branch, k: SizeConstraints, deliver: _Delivery) -> None:
    g = b.graph
    left = [g.left_ids[u] for u in iter_bits(b.s & g.left_mask)]
    right = [g.right_ids[u - g.left_count] for u in iter_bits(b.s & g.right_mask)]
    if len(left) >= k.tau_l and len(right) >= k.tau_r:
        deliver(Biclique(tuple(sorted(left)), tuple(sorted(right))))


def enumerate_bicliques(
    g: BipartiteGraph, cfg: EnumConfig | None = None, sink: Sink | None = None
) -> EnumStats:
    """Deliver every maximal biclique of ``g`` meeting the size constraints to ``sink`` once."""
    cfg = cfg or EnumConfig()
    if cfg.ie_mode is not IeMode.OFF:
        from .ie import enumerate_ie

        return enumerate_ie(g, cfg, sink)
    stats = EnumStats()
    deliver = _Delivery(sink, cfg, stats)
    try:
        run_search([make_root(g)], cfg, deliver, stats)
    except _Stop:
        stats.partial = True
    return stats


def collect(g: BipartiteGraph, cfg: EnumConfig | None = None) -> tuple[list[Biclique], EnumStats]:
    out: list[Biclique] = []
    stats = enumerate_bicliques(g, cfg, out.append)
    return out, stats


def verify_result(g: BipartiteGraph, r: Biclique, k: SizeConstraints = SizeConstraints()) -> bool:
    """Direct check that ``r`` (original ids) is a maximal biclique of ``g`` meeting ``k``."""
    lpos = {v: i for i, v in enumerate(g.left_ids)}
    rpos = {v: j for j, v in enumerate(g.right_ids)}
    try:
        left = [lpos[v] for v in r.left]
        right = [rpos[v] for v in r.right]
    except KeyError as exc:
        raise ValueError(f"unknown vertex id {exc.args[0]}") from None
    if not left or not right or len(left) < k.tau_l or len(right) < k.tau_r:
        return False
    lset, rset = set(left), set(right)
    if len(lset) != len(left) or len(rset) != len(right):
        return False
    for i in left:
        if not rset <= set(g.adj_left[i]):
            return False
    # maximal: nobody outside sees the whole opposite side
    for i in range(g.left_count):
        if i not in lset and rset <= set(g.adj_left[i]):
            return False
    for j in range(g.right_count):
        if j not in rset and lset <= set(g.adj_right[j]):
            return False
    return True
