import pytest
from hypothesis import given, settings

from bicliques.branch import TerminalKind, classify_terminal, make_branch, make_root, prune_p2
from bicliques.errors import ContractViolation
from bicliques.graph import BipartiteGraph, L, R, gen_crown, iter_bits
from bicliques.pivot import candidate_pivots, compute_partition, pivot_basic, pivot_partitioned

from test_branch import random_branch

K22 = BipartiteGraph(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])


def heavy_left_witness() -> BipartiteGraph:
    """Left a=0 misses right 0, 1, 2; left 1..3 and right 3 see everything."""
    return BipartiteGraph(
        4, 4, [(i, j) for i in range(4) for j in range(4) if not (i == 0 and j < 3)]
    )


def excluded_pivot_witness():
    """Left x=0 (excluded) sees right 1 only; left a=1 misses right 0."""
    g = BipartiteGraph(2, 2, [(0, 1), (1, 1)])
    return g, make_branch(g, c=[L(1), R(0), R(1)], x=[L(0)])


class TestPivotBasic:
    def test_crown(self):
        g = gen_crown(3)
        d = pivot_basic(make_root(g))
        assert d.pivot == g.uid(L(0)) and d.pivot_in_c
        assert d.targets == (g.uid(L(0)), g.uid(R(0)))

    def test_complete(self):
        d = pivot_basic(make_root(K22))
        assert d.pivot == 0 and d.targets == (0,)

    def test_zero_cd_excluded_is_pruned_first(self):
        b = make_branch(K22, s=[R(0)], c=[L(1), R(1)], x=[L(0)])
        assert prune_p2(b)

    def test_empty_c(self):
        with pytest.raises(ContractViolation):
            pivot_basic(make_branch(K22, s=[L(0)], x=[L(1)]))


class TestPartition:
    def test_crown_all_in(self):
        b = make_root(gen_crown(3))
        assert compute_partition(b).c_prime == b.c

    def test_x_non_neighbour_excludes(self):
        g = BipartiteGraph(2, 2, [(1, 0), (1, 1), (0, 0)])
        # right 1 is excluded and misses left 0
        b = make_branch(g, c=[L(0), L(1), R(0)], x=[R(1)])
        p = compute_partition(b)
        assert not p.c_prime >> g.uid(L(0)) & 1
        assert p.c_prime >> g.uid(L(1)) & 1

    def test_three_misses_excludes(self):
        g = heavy_left_witness()
        p = compute_partition(make_root(g))
        assert not p.c_prime_left & 1
        assert p.c_prime_left == 0b1110


class TestCandidates:
    def test_crown_none(self):
        b = make_root(gen_crown(3))
        assert candidate_pivots(b, compute_partition(b)) == 0

    def test_heavy_vertex_and_its_misses(self):
        g = heavy_left_witness()
        b = make_root(g)
        cands = candidate_pivots(b, compute_partition(b))
        assert set(g.refs(cands)) == {L(0), R(0), R(1), R(2)}

    def test_excluded_always_candidate(self):
        g, b = excluded_pivot_witness()
        assert candidate_pivots(b) >> g.uid(L(0)) & 1


class TestPivotPartitioned:
    def test_crown_absent(self):
        assert pivot_partitioned(make_root(gen_crown(3))) is None

    def test_prefers_fewest_misses(self):
        g = heavy_left_witness()
        d = pivot_partitioned(make_root(g))
        # candidates: left 0 (3 misses), right 0..2 (1 miss each)
        assert d.pivot == g.uid(R(0))
        assert d.pivot_in_c
        assert d.targets == (g.uid(R(0)), g.uid(L(0)))

    def test_tie_prefers_excluded(self):
        g, b = excluded_pivot_witness()
        cands = candidate_pivots(b)
        assert {b.cd_c[u] for u in iter_bits(cands)} == {1}
        d = pivot_partitioned(b)
        assert d.pivot == g.uid(L(0)) and not d.pivot_in_c
        assert d.targets == (g.uid(R(0)),)


@given(random_branch())
@settings(max_examples=300, deadline=None)
def test_no_candidates_iff_batch(b):
    empty = candidate_pivots(b) == 0
    assert empty == (classify_terminal(b, "ips") is TerminalKind.BIPLEX_BATCH)


@given(random_branch())
@settings(max_examples=150, deadline=None)
def test_decisions_well_formed(b):
    if not b.c or prune_p2(b):
        return
    for choose in (pivot_basic, pivot_partitioned):
        d = choose(b)
        if d is None:
            continue
        assert d == choose(b)
        assert len(set(d.targets)) == len(d.targets)
        assert all(b.c >> t & 1 for t in d.targets)
        assert d.targets
        if d.pivot_in_c:
            assert d.targets[0] == d.pivot
