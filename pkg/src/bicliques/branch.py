"""The (S, C, X) search node, child expansion and the two pruning rules."""
from __future__ import annotations

import enum
from typing import Iterable

from .errors import ContractViolation
from .graph import BipartiteGraph, SizeConstraints, VertexRef, iter_bits


class Tier(str, enum.Enum):
    BASIC = "basic"
    BPS = "bps"
    IPS = "ips"


class TerminalKind(enum.Enum):
    NOT_TERMINAL = "not_terminal"
    TRIVIAL_MAXIMAL = "trivial_maximal"
    TRIVIAL_DEAD = "trivial_dead"
    BIPLEX_BATCH = "biplex_batch"


class Branch:
    """A search node.  ``s``, ``c`` and ``x`` are uid bitmasks.

    ``cd_c[u]`` holds, for every u in C or X, the number of non-neighbours of
    u on the opposite side of C.  ``cd_x(u)`` gives the same count against the
    opposite side of X for u in C.
    """

    __slots__ = ("graph", "s", "c", "x", "cd_c", "_cd_x")

    def __init__(self, graph: BipartiteGraph, s: int, c: int, x: int):
        self.graph = graph
        self.s = s
        self.c = c
        self.x = x
        lm = graph.left_mask
        nbr = graph.nbr
        cl = c & lm
        cr = c ^ cl
        ncl = cl.bit_count()
        ncr = cr.bit_count()
        cd = {}
        for u in iter_bits((c | x) & lm):
            cd[u] = ncr - (cr & nbr[u]).bit_count()
        for u in iter_bits((c | x) & ~lm):
            cd[u] = ncl - (cl & nbr[u]).bit_count()
        self.cd_c = cd
        self._cd_x: dict[int, int] | None = None

    # -- cached counters -----------------------------------------------------

    def cd_x(self, u: int) -> int:
        if not self.x:
            return 0
        if self._cd_x is None:
            lm = self.graph.left_mask
            nbr = self.graph.nbr
            xl = self.x & lm
            xr = self.x ^ xl
            nxl, nxr = xl.bit_count(), xr.bit_count()
            cache = {}
            for v in iter_bits(self.c & lm):
                cache[v] = nxr - (xr & nbr[v]).bit_count()
            for v in iter_bits(self.c & ~lm):
                cache[v] = nxl - (xl & nbr[v]).bit_count()
            self._cd_x = cache
        return self._cd_x[u]

    # -- side views used by tests and reports ----------------------------------

    def _side(self, mask: int, left: bool) -> frozenset[int]:
        g = self.graph
        if left:
            return frozenset(iter_bits(mask & g.left_mask))
        return frozenset(u - g.left_count for u in iter_bits(mask & g.right_mask))

    s_left = property(lambda self: self._side(self.s, True))
    s_right = property(lambda self: self._side(self.s, False))
    c_left = property(lambda self: self._side(self.c, True))
    c_right = property(lambda self: self._side(self.c, False))
    x_left = property(lambda self: self._side(self.x, True))
    x_right = property(lambda self: self._side(self.x, False))

    def __repr__(self) -> str:
        g = self.graph
        return f"Branch(S={g.refs(self.s)}, C={g.refs(self.c)}, X={g.refs(self.x)})"

    def check_invariants(self) -> None:
        """Full-scan validation; raises ContractViolation on the first breach."""
        g = self.graph
        s, c, x = self.s, self.c, self.x
        if s & c or s & x or c & x:
            raise ContractViolation("S, C and X must be disjoint")
        nbr = g.nbr
        for u in iter_bits(s):
            opp_s = s & g.opposite_mask(u)
            if opp_s & ~nbr[u]:
                raise ContractViolation(f"S is not a biclique at {g.ref(u)!r}")
        for u in iter_bits(c | x):
            opp_s = s & g.opposite_mask(u)
            if opp_s & ~nbr[u]:
                raise ContractViolation(f"{g.ref(u)!r} misses a vertex of S")
        fresh = Branch(g, s, c, x)
        if fresh.cd_c != self.cd_c:
            raise ContractViolation("stale complement-degree cache")


def make_root(g: BipartiteGraph) -> Branch:
    """Root branch; degree-0 vertices cannot join any biclique and are left out of C."""
    c = 0
    for u, m in enumerate(g.nbr):
        if m:
            c |= 1 << u
    return Branch(g, 0, c, 0)


def make_branch(
    g: BipartiteGraph,
    s: Iterable[VertexRef | int] = (),
    c: Iterable[VertexRef | int] = (),
    x: Iterable[VertexRef | int] = (),
) -> Branch:
    return Branch(g, g.mask_of(s), g.mask_of(c), g.mask_of(x))


def expand(b: Branch, v: VertexRef | int, preceding: Iterable[VertexRef | int] = ()) -> Branch:
    """Child that adds ``v`` to S and moves ``preceding`` targets to X.

    Both C and X are then refined by dropping every opposite-side vertex that
    is not adjacent to ``v``.
    """
    g = b.graph
    u = g.uid(v)
    bit = 1 << u
    if not b.c & bit:
        raise ContractViolation(f"{g.ref(u)!r} is not a candidate of {b!r}")
    prev = 0
    for w in preceding:
        prev |= 1 << g.uid(w)
    drop = g.opposite_mask(u) & ~g.nbr[u]
    c = b.c & ~(bit | prev | drop)
    x = (b.x | prev) & ~drop
    return Branch(g, b.s | bit, c, x)


def is_biplex_region(b: Branch) -> bool:
    """True when every candidate misses at most two opposite-side candidates."""
    return all(d <= 2 for u, d in b.cd_c.items() if b.c >> u & 1)


def classify_terminal(b: Branch, tier: Tier | str) -> TerminalKind:
    tier = Tier(tier)
    if tier is Tier.BASIC:
        if b.c:
            return TerminalKind.NOT_TERMINAL
        return TerminalKind.TRIVIAL_DEAD if b.x else TerminalKind.TRIVIAL_MAXIMAL
    if b.x:
        return TerminalKind.TRIVIAL_DEAD if not b.c else TerminalKind.NOT_TERMINAL
    # X empty; C empty is the degenerate batch holding only S
    if is_biplex_region(b):
        return TerminalKind.BIPLEX_BATCH
    return TerminalKind.NOT_TERMINAL


def prune_p1(b: Branch, k: SizeConstraints) -> bool:
    lm = b.graph.left_mask
    sc = b.s | b.c
    theta_l = (sc & lm).bit_count()
    theta_r = sc.bit_count() - theta_l
    return theta_l < k.tau_l or theta_r < k.tau_r


def prune_p2(b: Branch) -> bool:
    """Some excluded vertex sees every opposite-side candidate."""
    if not b.x:
        return False
    cd = b.cd_c
    return any(cd[u] == 0 for u in iter_bits(b.x))
