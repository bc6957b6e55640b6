import itertools

import pytest

from bicliques.graph import BipartiteGraph
from bicliques.results import Biclique

ACCEPTANCE_LINES: list[str] = []


def naive_maximal_bicliques(g: BipartiteGraph) -> set[Biclique]:
    """Every (A, B) pair of non-empty vertex subsets, kept if complete and not extendable.

    Exponential in both sides; only for graphs with a handful of vertices.
    """
    lefts = range(g.left_count)
    rights = range(g.right_count)
    out = set()
    for a_size in range(1, g.left_count + 1):
        for a in itertools.combinations(lefts, a_size):
            for b_size in range(1, g.right_count + 1):
                for b in itertools.combinations(rights, b_size):
                    if not all(g.has_edge(i, j) for i in a for j in b):
                        continue
                    ext_l = any(i not in a and all(g.has_edge(i, j) for j in b) for i in lefts)
                    ext_r = any(j not in b and all(g.has_edge(i, j) for i in a) for j in rights)
                    if not ext_l and not ext_r:
                        out.add(
                            Biclique(
                                tuple(sorted(g.left_ids[i] for i in a)),
                                tuple(sorted(g.right_ids[j] for j in b)),
                            )
                        )
    return out


def brute_mis(n: int, edges: list[tuple[int, int]]) -> set[frozenset[int]]:
    """Maximal independent sets of a graph on 0..n-1 by checking all 2^n subsets."""
    adj = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    out = set()
    for mask in range(1 << n):
        chosen = {i for i in range(n) if mask >> i & 1}
        if any(adj[i] & chosen for i in chosen):
            continue
        if all(adj[i] & chosen for i in range(n) if i not in chosen):
            out.add(frozenset(chosen))
    return out


def path_edges(n: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(n - 1)]


def cycle_edges(n: int) -> list[tuple[int, int]]:
    return path_edges(n) + [(n - 1, 0)]


@pytest.fixture
def acceptance_report():
    def report(criterion: str, ok: bool, detail: str = "") -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] {criterion}" + (f" ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
