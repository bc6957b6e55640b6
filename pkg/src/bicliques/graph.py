"""Bipartite graph container, KONECT I/O and synthetic generators.

Vertices are addressed two ways.  The public form is a ``VertexRef`` (side,
index), with indices dense and 0-based per side.  Internally every algorithm
uses a *uid*: left vertex ``i`` is ``i`` and right vertex ``j`` is
``left_count + j``.  Vertex sets are Python ints used as bitmasks over uids,
which keeps membership, intersection and complement-degree counting cheap.
"""
from __future__ import annotations

import enum
import random
from typing import Iterable, Iterator, NamedTuple, Sequence, TextIO

from .errors import ContractViolation, KonectParseError


class Side(enum.IntEnum):
    LEFT = 0
    RIGHT = 1

    @property
    def other(self) -> "Side":
        return Side(1 - self)


class VertexRef(NamedTuple):
    side: Side
    index: int

    def __repr__(self) -> str:
        return f"{'u' if self.side == Side.LEFT else 'v'}{self.index}"


def L(i: int) -> VertexRef:
    return VertexRef(Side.LEFT, i)


def R(j: int) -> VertexRef:
    return VertexRef(Side.RIGHT, j)


class SizeConstraints(NamedTuple):
    tau_l: int = 1
    tau_r: int = 1

    def validate(self) -> "SizeConstraints":
        if self.tau_l < 1 or self.tau_r < 1:
            raise ValueError(f"size constraints must be >= 1, got {tuple(self)}")
        return self

    def swapped(self) -> "SizeConstraints":
        return SizeConstraints(self.tau_r, self.tau_l)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class BipartiteGraph:
    """Immutable bipartite graph with sorted cross-side adjacency."""

    __slots__ = (
        "left_count",
        "right_count",
        "adj_left",
        "adj_right",
        "edge_count",
        "left_ids",
        "right_ids",
        "nbr",
        "left_mask",
        "right_mask",
    )

    def __init__(
        self,
        left_count: int,
        right_count: int,
        edges: Iterable[tuple[int, int]],
        left_ids: Sequence[int] | None = None,
        right_ids: Sequence[int] | None = None,
    ):
        if left_count < 0 or right_count < 0:
            raise ValueError("side sizes must be non-negative")
        adj_l: list[set[int]] = [set() for _ in range(left_count)]
        adj_r: list[set[int]] = [set() for _ in range(right_count)]
        for i, j in edges:
            if not (0 <= i < left_count and 0 <= j < right_count):
                raise ValueError(f"edge ({i}, {j}) out of range")
            adj_l[i].add(j)
            adj_r[j].add(i)
        self.left_count = left_count
        self.right_count = right_count
        self.adj_left = tuple(tuple(sorted(a)) for a in adj_l)
        self.adj_right = tuple(tuple(sorted(a)) for a in adj_r)
        self.edge_count = sum(len(a) for a in self.adj_left)
        # external labels default to 1-based ids, KONECT style
        self.left_ids = tuple(left_ids) if left_ids is not None else tuple(range(1, left_count + 1))
        self.right_ids = tuple(right_ids) if right_ids is not None else tuple(range(1, right_count + 1))
        if len(self.left_ids) != left_count or len(self.right_ids) != right_count:
            raise ValueError("id tables must match side sizes")

        nbr = []
        for a in self.adj_left:
            m = 0
            for j in a:
                m |= 1 << (left_count + j)
            nbr.append(m)
        for a in self.adj_right:
            m = 0
            for i in a:
                m |= 1 << i
            nbr.append(m)
        self.nbr = tuple(nbr)
        self.left_mask = (1 << left_count) - 1
        self.right_mask = ((1 << right_count) - 1) << left_count

    # -- addressing -------------------------------------------------------

    @property
    def n(self) -> int:
        return self.left_count + self.right_count

    def uid(self, v: VertexRef | int) -> int:
        if isinstance(v, int):
            return v
        side, index = v
        limit = self.left_count if side == Side.LEFT else self.right_count
        if not 0 <= index < limit:
            raise ValueError(f"{v!r} out of range")
        return index if side == Side.LEFT else self.left_count + index

    def ref(self, uid: int) -> VertexRef:
        if uid < self.left_count:
            return VertexRef(Side.LEFT, uid)
        return VertexRef(Side.RIGHT, uid - self.left_count)

    def is_left(self, uid: int) -> bool:
        return uid < self.left_count

    def opposite_mask(self, uid: int) -> int:
        return self.right_mask if uid < self.left_count else self.left_mask

    def external_id(self, uid: int) -> int:
        if uid < self.left_count:
            return self.left_ids[uid]
        return self.right_ids[uid - self.left_count]

    def mask_of(self, vertices: Iterable[VertexRef | int]) -> int:
        m = 0
        for v in vertices:
            m |= 1 << self.uid(v)
        return m

    def refs(self, mask: int) -> list[VertexRef]:
        return [self.ref(u) for u in iter_bits(mask)]

    # -- queries ------------------------------------------------------------

    def neighbors(self, v: VertexRef) -> tuple[int, ...]:
        side, index = v
        return self.adj_left[index] if side == Side.LEFT else self.adj_right[index]

    def degree(self, v: VertexRef | int) -> int:
        return self.nbr[self.uid(v)].bit_count()

    def max_degree(self) -> int:
        return max((m.bit_count() for m in self.nbr), default=0)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.nbr[i] >> (self.left_count + j) & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for i, a in enumerate(self.adj_left):
            for j in a:
                yield i, j

    def swapped(self) -> "BipartiteGraph":
        return BipartiteGraph(
            self.right_count,
            self.left_count,
            ((j, i) for i, j in self.edges()),
            left_ids=self.right_ids,
            right_ids=self.left_ids,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (
            self.left_count == other.left_count
            and self.right_count == other.right_count
            and self.adj_left == other.adj_left
            and self.left_ids == other.left_ids
            and self.right_ids == other.right_ids
        )

    def __hash__(self) -> int:
        return hash((self.left_count, self.right_count, self.adj_left))

    def __repr__(self) -> str:
        return f"BipartiteGraph(|L|={self.left_count}, |R|={self.right_count}, m={self.edge_count})"


def complement_degree(g: BipartiteGraph, v: VertexRef, pool: Iterable[int]) -> int:
    """Number of vertices in ``pool`` (indices on v's opposite side) not adjacent to v."""
    nb = set(g.neighbors(v))
    pool = set(pool)
    return len(pool) - len(pool & nb)


def normalize_sides(g: BipartiteGraph) -> tuple[BipartiteGraph, bool]:
    """Make the smaller side the left one; ties keep the input orientation."""
    if g.left_count > g.right_count:
        return g.swapped(), True
    return g, False


# -- KONECT text format --------------------------------------------------------


def load_konect(stream: Iterable[str]) -> BipartiteGraph:
    left_index: dict[int, int] = {}
    right_index: dict[int, int] = {}
    edges: set[tuple[int, int]] = set()
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line or line.startswith("%"):
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise KonectParseError(lineno, f"expected two vertex ids, got {line!r}")
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise KonectParseError(lineno, f"non-integer vertex id in {line!r}") from None
        if a <= 0 or b <= 0:
            raise KonectParseError(lineno, "vertex ids must be positive")
        i = left_index.setdefault(a, len(left_index))
        j = right_index.setdefault(b, len(right_index))
        edges.add((i, j))
    return BipartiteGraph(
        len(left_index),
        len(right_index),
        edges,
        left_ids=list(left_index),
        right_ids=list(right_index),
    )


def dump_konect(g: BipartiteGraph, out: TextIO) -> None:
    out.write(f"% bip {g.left_count} {g.right_count} {g.edge_count}\n")
    pairs = sorted((g.left_ids[i], g.right_ids[j]) for i, j in g.edges())
    for a, b in pairs:
        out.write(f"{a} {b}\n")


# -- generators ------------------------------------------------------------------


def gen_crown(half: int) -> BipartiteGraph:
    """Complete bipartite K_{half,half} minus a perfect matching."""
    if half < 2:
        raise ValueError("crown graph needs half >= 2")
    return BipartiteGraph(half, half, ((i, j) for i in range(half) for j in range(half) if i != j))


def gen_random_bipartite(left: int, right: int, p: float, seed: int) -> BipartiteGraph:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    edges = [(i, j) for i in range(left) for j in range(right) if rng.random() < p]
    return BipartiteGraph(left, right, edges)


def gen_random_2biplex(left: int, right: int, seed: int) -> BipartiteGraph:
    """Random graph whose cross-side complement is a union of paths, even cycles and isolated vertices."""
    if left < 1 or right < 1:
        raise ValueError("both sides need at least one vertex")
    rng = random.Random(seed)
    pools = [list(range(left)), list(range(right))]
    rng.shuffle(pools[0])
    rng.shuffle(pools[1])
    missing: set[tuple[int, int]] = set()

    def link(a: tuple[int, int], b: tuple[int, int]) -> None:
        (sa, ia), (_, ib) = a, b
        missing.add((ia, ib) if sa == 0 else (ib, ia))

    while pools[0] or pools[1]:
        kind = rng.choice(("isolated", "path", "path", "cycle"))
        if kind == "cycle":
            half = min(len(pools[0]), len(pools[1]), rng.randint(2, 4))
            if half < 2:
                continue
            ring = []
            for _ in range(half):
                ring.append((0, pools[0].pop()))
                ring.append((1, pools[1].pop()))
            for a, b in zip(ring, ring[1:] + ring[:1]):
                link(a, b)
        elif kind == "path":
            side = rng.randrange(2)
            target = rng.randint(2, 7)
            chain: list[tuple[int, int]] = []
            while len(chain) < target and pools[side]:
                chain.append((side, pools[side].pop()))
                side = 1 - side
            for a, b in zip(chain, chain[1:]):
                link(a, b)
        else:
            side = rng.randrange(2)
            if pools[side]:
                pools[side].pop()

    g = BipartiteGraph(
        left, right, ((i, j) for i in range(left) for j in range(right) if (i, j) not in missing)
    )
    if not is_k_biplex(g, 2):
        raise ContractViolation("generated graph is not a 2-biplex")
    return g


def is_k_biplex(g: BipartiteGraph, k: int) -> bool:
    return all(g.right_count - len(a) <= k for a in g.adj_left) and all(
        g.left_count - len(a) <= k for a in g.adj_right
    )


def parse_gen_spec(spec: str) -> BipartiteGraph:
    """Build a graph from ``crown:H``, ``random:LxR:P:seedS`` or ``biplex:LxR:seedS``."""
    parts = spec.split(":")
    try:
        kind = parts[0]
        if kind == "crown" and len(parts) == 2:
            return gen_crown(int(parts[1]))
        if kind == "random" and len(parts) == 4:
            left, right = _dims(parts[1])
            return gen_random_bipartite(left, right, float(parts[2]), _seed(parts[3]))
        if kind == "biplex" and len(parts) == 3:
            left, right = _dims(parts[1])
            return gen_random_2biplex(left, right, _seed(parts[2]))
    except ValueError as exc:
        raise ValueError(f"bad generator spec {spec!r}: {exc}") from None
    raise ValueError(f"bad generator spec {spec!r}")


def _dims(text: str) -> tuple[int, int]:
    a, b = text.lower().split("x")
    return int(a), int(b)


def _seed(text: str) -> int:
    return int(text[4:] if text.startswith("seed") else text)
