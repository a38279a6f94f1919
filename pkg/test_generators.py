"""
Tests for the gadget generators, their source deciders and witnesses,
and the random instance generator
"""

import itertools

import pytest

from core.errors import InvalidSource
from core.graph import Graph, is_cluster_graph, symmetric_difference_size
from core.instance import Measure, Variant, exact_modification_check, is_tight, verify_solution
from generators.gadgets import (
    CliqueSource,
    McCliqueSource,
    ThreePartitionSource,
    X3cSource,
    clique_witness,
    find_clique,
    find_exact_cover,
    find_multicolored_clique,
    find_three_partition,
    gen_3partition_completion_edge,
    gen_clique_editing_edge,
    gen_mcclique_deletion_edge,
    gen_x3c_deletion_matching,
    mcclique_witness,
    three_partition_witness,
    x3c_witness,
)
from generators.random_instances import gen_random
from solvers.oracle import oracle_solve

TRIPLES = list(itertools.combinations(range(6), 3))


def _complement(triple):
    return tuple(sorted(set(range(6)) - set(triple)))


def _x3c_sources(m):
    """Five sources with an exact cover and five without, over a universe of six elements."""
    sources = []
    for triple in TRIPLES[:5]:
        extra = [TRIPLES[-1]] if m == 3 else []
        sources.append(X3cSource(2, tuple(range(6)), tuple([triple, _complement(triple)] + extra)))
    overlapping = [t for t in TRIPLES if 0 in t]
    for start in range(5):
        sources.append(X3cSource(2, tuple(range(6)), tuple(overlapping[start : start + m])))
    return sources


class TestThreePartition:
    def test_layout_and_parameters(self):
        src = ThreePartitionSource(1, 6, (2, 2, 2))
        inst = gen_3partition_completion_edge(src)
        assert inst.n == 150
        assert inst.k == 876 and inst.d == 0
        assert inst.variant is Variant.COMPLETION and inst.measure is Measure.EDGE_DIST
        sizes = sorted(len(c) for c in inst.g.components())
        assert sizes == [2, 2, 2, 144]
        assert len(inst.gc) == 1

    def test_witness(self):
        src = ThreePartitionSource(1, 6, (2, 2, 2))
        inst = gen_3partition_completion_edge(src)
        sol = three_partition_witness(src, inst)
        verdict = verify_solution(inst, sol)
        assert verdict and verdict.edit_count == inst.k and verdict.distance == inst.d

    def test_decider(self):
        assert find_three_partition(ThreePartitionSource(2, 20, (6, 7, 7, 6, 6, 8))) is not None
        assert find_three_partition(ThreePartitionSource(2, 20, (9, 7, 6, 6, 6, 6))) is None

    @pytest.mark.parametrize(
        "m,bin_size,numbers",
        [(1, 8, (2, 3, 3)), (1, 6, (2, 2, 3)), (1, 6, (2, 2)), (0, 6, ())],
    )
    def test_invalid(self, m, bin_size, numbers):
        with pytest.raises(InvalidSource):
            ThreePartitionSource(m, bin_size, numbers)


class TestExactCover:
    def test_layout_and_parameters(self):
        src = X3cSource(1, (0, 1, 2), ((0, 1, 2), (2, 1, 0)))
        inst = gen_x3c_deletion_matching(src)
        assert inst.n == 10 and (inst.k, inst.d) == (9, 3)
        assert len(inst.g.components()) == 2 and is_cluster_graph(inst.g)
        assert oracle_solve(inst)

    def test_witness(self):
        src = X3cSource(1, ("x1", "x2", "x3"), (("x1", "x2", "x3"), ("x3", "x2", "x1")))
        inst = gen_x3c_deletion_matching(src)
        verdict = verify_solution(inst, x3c_witness(src, inst))
        assert verdict and verdict.edit_count == 9 and verdict.distance == 3

    @pytest.mark.parametrize(
        "q,universe,sets",
        [
            (1, (0, 1, 2), ((0, 0, 1),)),
            (1, (0, 1, 2), ((0, 1, 5),)),
            (1, (0, 1), ((0, 1, 2),)),
            (2, tuple(range(6)), ((0, 1, 2),)),
        ],
    )
    def test_invalid(self, q, universe, sets):
        with pytest.raises(InvalidSource):
            X3cSource(q, universe, sets)

    def test_decision_matches_source_for_two_sets(self):
        for src in _x3c_sources(2):
            inst = gen_x3c_deletion_matching(src)
            has_cover = find_exact_cover(src) is not None
            assert oracle_solve(inst).yes == has_cover
            if has_cover:
                assert verify_solution(inst, x3c_witness(src, inst))

    @pytest.mark.slow
    def test_decision_matches_source_for_three_sets(self):
        for src in _x3c_sources(3):
            inst = gen_x3c_deletion_matching(src)
            assert oracle_solve(inst, cap=15).yes == (find_exact_cover(src) is not None)


class TestClique:
    def test_invalid(self):
        with pytest.raises(InvalidSource):
            CliqueSource(Graph(3, [(0, 1)]), 2)

    def test_budget_formula(self):
        src = CliqueSource(Graph(3, [(0, 1), (1, 2), (0, 2)]), 3)
        assert src.bulk_size == 2188 and src.half_size == 9
        assert src.budget() == 7104

    def test_decider(self):
        k4 = Graph(5, list(itertools.combinations(range(4), 2)))
        assert find_clique(CliqueSource(k4, 3)) == (0, 1, 2)
        assert find_clique(CliqueSource(Graph(3, [(0, 1), (1, 2)]), 3)) is None

    @pytest.mark.slow
    def test_triangle_gadget_is_tight(self):
        src = CliqueSource(Graph(3, [(0, 1), (1, 2), (0, 2)]), 3)
        inst = gen_clique_editing_edge(src)
        assert inst.n == 6621 and inst.k == 7104 and inst.d == 0
        sizes = sorted(len(c) for c in inst.g.components())
        assert sizes == [18, 18, 18, 2189, 2189, 2189]
        assert is_tight(inst)
        verdict = verify_solution(inst, clique_witness(src, inst))
        assert verdict and verdict.edit_count == 7104 and verdict.distance == 0


class TestMulticoloredClique:
    def test_single_edge(self):
        src = McCliqueSource(Graph(2, [(0, 1)]), (1, 2), 2)
        inst = gen_mcclique_deletion_edge(src)
        assert inst.n == 9 and inst.d == 24 and inst.k == 0
        assert inst.g.edge_count == 36
        assert find_multicolored_clique(src) == (0, 1)
        assert verify_solution(inst, mcclique_witness(src, inst))
        answer = oracle_solve(inst)
        assert answer and is_tight(inst)
        assert exact_modification_check(inst, answer.solution)

    def test_monochromatic_edge_is_dropped(self):
        src = McCliqueSource(Graph(2, [(0, 1)]), (1, 1), 1)
        assert src.multicolored_edges() == []
        inst = gen_mcclique_deletion_edge(src)
        assert inst.n == 5 and (inst.k, inst.d) == (2, 2)
        assert symmetric_difference_size(inst.g, inst.gc) == 4
        verdict = verify_solution(inst, mcclique_witness(src, inst))
        assert verdict and verdict.edit_count == 2
        answer = oracle_solve(inst)
        assert answer and is_tight(inst)
        assert exact_modification_check(inst, answer.solution)

    def test_missing_color(self):
        src = McCliqueSource(Graph(2, [(0, 1)]), (1, 1), 2)
        assert find_multicolored_clique(src) is None
        assert mcclique_witness(src, None) is None

    def test_negative_budget(self):
        with pytest.raises(InvalidSource):
            gen_mcclique_deletion_edge(McCliqueSource(Graph(2), (1, 2), 2))

    @pytest.mark.parametrize("coloring,ell", [((1,), 1), ((1, 3), 2), ((1, 1), 0)])
    def test_invalid(self, coloring, ell):
        with pytest.raises(InvalidSource):
            McCliqueSource(Graph(2), coloring, ell)


class TestRandom:
    def test_deterministic(self):
        a = gen_random(10, 0.4, Variant.EDITING, Measure.EDGE_DIST, 3, 3, seed=99)
        b = gen_random(10, 0.4, Variant.EDITING, Measure.EDGE_DIST, 3, 3, seed=99)
        assert a == b

    def test_empty(self):
        inst = gen_random(0, 0.5, Variant.DELETION, Measure.MATCHING_DIST, 0, 0, seed=1)
        assert inst.n == 0
        assert oracle_solve(inst)

    def test_cluster_input(self):
        for seed in range(20):
            inst = gen_random(7, 0.5, Variant.EDITING, Measure.EDGE_DIST, 2, 2, seed=seed, cluster_input=True)
            assert is_cluster_graph(inst.g)

    def test_edge_probability_range(self):
        with pytest.raises(ValueError):
            gen_random(4, 1.5, Variant.EDITING, Measure.EDGE_DIST, 1, 1)

    def test_oracle_smoke(self):
        inst = gen_random(8, 0.4, Variant.EDITING, Measure.MATCHING_DIST, 3, 3, seed=7)
        result = oracle_solve(inst)
        if result:
            assert verify_solution(inst, result.solution)
