"""
Tests for the oracle, the part-wise MCK driver and the parameterized solvers
"""

import itertools
import random

import pytest

from core.errors import KernelTooLargeForOracle, MalformedParts, PreconditionViolated, SizeMismatch, TooLarge, WrongVariant
from core.graph import ClusterGraph, Graph, cluster_to_graph
from core.instance import Instance, Measure, Variant, verify_solution
from generators.random_instances import gen_random
from solvers.combined import solve_combined
from solvers.dispatch import solve_instance
from solvers.four_step import PartTuple, TupleSet, four_step_drive, local_edit_count
from solvers.fpt_completion import (
    fpt_completion_edge_d,
    fpt_completion_matching_d,
    majority_home,
    normalize_completion,
    t_map,
    tmap_merge_inequality,
)
from solvers.fpt_deletion import fpt_deletion_edge_k, split_parts
from solvers.oracle import oracle_solve
from solvers.partitions import PartitionSearch, vertex_units
from solvers.result import SCOPE_KERNEL, SCOPE_ORIGINAL

ALL_PAIRS = list(itertools.combinations(range(5), 2))
SWEEP_TARGETS = [
    [[0, 1, 2, 3, 4]],
    [[0, 1], [2, 3, 4]],
    [[0], [1, 2], [3], [4]],
]


def _inst(variant, measure, n, edges, clusters, k, d):
    return Instance(variant, measure, Graph(n, edges), ClusterGraph.from_clusters(n, clusters), k, d)


def _identical(variant, measure):
    gc = ClusterGraph.from_clusters(6, [[0, 1, 2], [3, 4], [5]])
    return Instance(variant, measure, cluster_to_graph(gc), gc, 0, 0)


def _assert_agrees(inst, solver):
    expected = oracle_solve(inst).yes
    result = solver(inst)
    assert result.yes == expected, inst.describe()
    if result.yes:
        assert verify_solution(inst, result.solution), inst.describe()


def _random_agreement(solver, variant, measure, count):
    for seed in range(count):
        inst = gen_random(
            n=seed % 8 + 1, edge_prob=[0.25, 0.45, 0.65][seed % 3], variant=variant, measure=measure,
            k=seed % 5, d=(seed // 5) % 5, seed=seed,
        )
        _assert_agrees(inst, solver)


def _sweep(solver, variant, measure, k, d):
    for mask in range(1 << len(ALL_PAIRS)):
        edges = [p for i, p in enumerate(ALL_PAIRS) if mask >> i & 1]
        for clusters in SWEEP_TARGETS:
            _assert_agrees(_inst(variant, measure, 5, edges, clusters, k, d), solver)


class TestPartitionSearch:
    def test_counts_bell_numbers(self):
        g = Graph(5)
        assert sum(1 for _ in PartitionSearch(g, vertex_units(range(5)))) == 52

    def test_deletion_only_yields_clique_partitions(self):
        g = Graph(4, [(0, 1), (1, 2), (2, 3)])
        for placement in PartitionSearch(g, vertex_units(range(4)), allow_insert=False):
            assert placement.insertions == 0
            for block in placement.blocks:
                assert all(g.has_edge(u, v) for u, v in itertools.combinations(block, 2))

    def test_limit_prunes(self):
        g = Graph(4, [(0, 1), (1, 2), (2, 3)])
        assert all(p.cost <= 1 for p in PartitionSearch(g, vertex_units(range(4)), limit=1))


class TestOracle:
    def test_identical_is_free(self):
        result = oracle_solve(_identical(Variant.EDITING, Measure.EDGE_DIST))
        assert result and result.stats["edits"] == 0

    def test_deletion_cannot_insert(self):
        inst = _inst(Variant.DELETION, Measure.EDGE_DIST, 2, [], [[0, 1]], 1, 0)
        assert not oracle_solve(inst)

    def test_worked_instance(self, worked_instance):
        result = oracle_solve(worked_instance)
        assert result and result.stats["distance"] == 4
        assert verify_solution(worked_instance, result.solution)
        assert not oracle_solve(worked_instance.with_budgets(0, 3))

    def test_negative_budget(self, worked_instance):
        assert not oracle_solve(worked_instance.with_budgets(-1, 4))

    def test_cap(self, worked_instance):
        with pytest.raises(TooLarge):
            oracle_solve(worked_instance, cap=5)

    def test_prefers_fewest_edits(self):
        inst = _inst(Variant.EDITING, Measure.EDGE_DIST, 3, [(0, 1), (1, 2)], [[0], [1], [2]], 2, 3)
        assert oracle_solve(inst).stats["edits"] == 1


class TestFourStep:
    def test_single_solved_part(self):
        inst = _inst(Variant.EDITING, Measure.EDGE_DIST, 2, [(0, 1)], [[0, 1]], 0, 0)
        part = frozenset({0, 1})
        outcome = four_step_drive([part], [TupleSet(0, (PartTuple(0, 0, (part,)),))], inst, 0)
        assert outcome and not outcome.solution.edits

    def test_budget_blocks_selection(self):
        inst = _inst(Variant.EDITING, Measure.EDGE_DIST, 6, [(0, 1), (1, 2), (3, 4), (4, 5)], [range(6)], 3, 9)
        parts = [frozenset({0, 1, 2}), frozenset({3, 4, 5})]
        tuple_sets = [
            TupleSet(i, (PartTuple(2, 1, tuple(frozenset({v}) for v in sorted(part))),))
            for i, part in enumerate(parts)
        ]
        outcome = four_step_drive(parts, tuple_sets, inst, 2)
        assert not outcome and outcome.solution is None

    def test_outside_vertices_keep_components(self):
        inst = _inst(Variant.EDITING, Measure.EDGE_DIST, 4, [(0, 1), (2, 3)], [range(4)], 0, 9)
        part = frozenset({0, 1})
        outcome = four_step_drive([part], [TupleSet(0, (PartTuple(0, 0, (part,)),))], inst, 0)
        assert outcome.solution.gprime.clusters == (frozenset({0, 1}), frozenset({2, 3}))

    def test_local_edit_count(self):
        inst = _inst(Variant.EDITING, Measure.EDGE_DIST, 3, [(0, 1), (1, 2)], [range(3)], 0, 0)
        assert local_edit_count(inst, frozenset({0, 1, 2}), [frozenset({0, 1, 2})]) == 1
        assert local_edit_count(inst, frozenset({0, 1, 2}), [frozenset({0}), frozenset({1, 2})]) == 1

    @pytest.mark.parametrize(
        "parts,tuples",
        [
            ([{0, 1}, {1, 2}], [[(0, 0, [{0, 1}])], [(0, 0, [{1, 2}])]]),
            ([{0}], [[(0, 0, [{0}])]]),
            ([{0, 1, 2}], [[]]),
            ([{0, 1, 2}], [[(0, 0, [{0, 1}])]]),
            ([{0, 1, 2}], [[(3, 0, [{0, 1, 2}])]]),
        ],
    )
    def test_malformed(self, parts, tuples):
        inst = _inst(Variant.EDITING, Measure.EDGE_DIST, 3, [(0, 1), (1, 2)], [range(3)], 5, 5)
        tuple_sets = [
            TupleSet(i, tuple(PartTuple(c, p, tuple(frozenset(b) for b in blocks)) for c, p, blocks in options))
            for i, options in enumerate(tuples)
        ]
        with pytest.raises(MalformedParts):
            four_step_drive([frozenset(p) for p in parts], tuple_sets, inst, 0)


class TestDeletionSolver:
    def test_identical(self):
        assert fpt_deletion_edge_k(_identical(Variant.DELETION, Measure.EDGE_DIST))

    def test_wrong_variant(self, worked_instance):
        with pytest.raises(WrongVariant):
            fpt_deletion_edge_k(worked_instance)

    def test_split_parts(self):
        inst = _inst(Variant.DELETION, Measure.EDGE_DIST, 7, [(0, 1), (1, 2), (3, 4), (5, 6), (4, 6)], [range(7)], 0, 0)
        assert split_parts(inst) == [frozenset({0, 1, 2, 3, 4, 5, 6})]
        inst = _inst(Variant.DELETION, Measure.EDGE_DIST, 6, [(0, 1), (1, 2), (3, 4)], [range(6)], 0, 0)
        assert split_parts(inst) == [frozenset({0, 1, 2}), frozenset({3, 4}), frozenset({5})]

    def test_distance_forces_no(self):
        inst = _inst(Variant.DELETION, Measure.EDGE_DIST, 3, [(0, 1), (1, 2)], [[0, 1, 2]], 1, 0)
        assert not fpt_deletion_edge_k(inst)

    def test_against_oracle(self):
        _random_agreement(fpt_deletion_edge_k, Variant.DELETION, Measure.EDGE_DIST, 300)

    def test_five_vertex_sweep(self):
        _sweep(fpt_deletion_edge_k, Variant.DELETION, Measure.EDGE_DIST, 3, 2)


class TestCompletionHelpers:
    def test_normalize(self):
        path = _inst(Variant.COMPLETION, Measure.EDGE_DIST, 3, [(0, 1), (1, 2)], [range(3)], 1, 0)
        normalized = normalize_completion(path)
        assert normalized.k == 0 and normalized.g.edge_count == 3
        p4 = _inst(Variant.COMPLETION, Measure.EDGE_DIST, 4, [(0, 1), (1, 2), (2, 3)], [range(4)], 1, 0)
        assert normalize_completion(p4).k == -2
        clustered = _identical(Variant.COMPLETION, Measure.EDGE_DIST)
        assert normalize_completion(clustered) == clustered

    def test_normalize_wrong_variant(self, worked_instance):
        with pytest.raises(WrongVariant):
            normalize_completion(worked_instance)

    def test_majority_home(self):
        gc = ClusterGraph.from_clusters(9, [[0, 1], [2, 3, 4, 5], [6, 7, 8]])
        assert majority_home(frozenset({6, 7, 8}), gc) == 3
        assert majority_home(frozenset({2, 3, 6, 7}), gc) == 0
        assert majority_home(frozenset({2, 3, 4, 0, 6}), gc) == 2

    def test_t_map(self):
        gc = ClusterGraph.from_clusters(6, [[0, 1, 2], [3, 4, 5]])
        cliques = ClusterGraph.from_clusters(6, [[0, 1], [2, 3], [4, 5]])
        assert t_map(cliques, gc) == {0: 1, 1: 0, 2: 2}
        with pytest.raises(SizeMismatch):
            t_map(ClusterGraph.from_labels([0]), gc)

    def test_merge_inequality_examples(self):
        gc = ClusterGraph.from_clusters(6, [[0, 1, 2], [3, 4, 5]])
        inside, outside = tmap_merge_inequality(frozenset({2, 3}), [frozenset({0, 1})], gc)
        assert (inside, outside) == (2, 2)
        with pytest.raises(PreconditionViolated):
            tmap_merge_inequality(frozenset({0}), [frozenset({1, 2})], gc)
        with pytest.raises(PreconditionViolated):
            tmap_merge_inequality(frozenset({0, 1}), [frozenset({1})], gc)

    def test_merge_inequality_random(self):
        rnd = random.Random(8)
        trials = 0
        while trials < 1000:
            n = 12
            gc = ClusterGraph.from_labels([rnd.randrange(3) for _ in range(n)])
            order = list(range(n))
            rnd.shuffle(order)
            c0 = frozenset(order[: rnd.randrange(1, 5)])
            rest = order[len(c0):]
            others = []
            for _ in range(rnd.randrange(1, 4)):
                size = rnd.randrange(1, 4)
                if len(rest) < size:
                    break
                others.append(frozenset(rest[:size]))
                rest = rest[size:]
            home = majority_home(c0, gc)
            if home and any(majority_home(o, gc) == home for o in others):
                continue
            inside, outside = tmap_merge_inequality(c0, others, gc)
            assert inside <= outside
            trials += 1


class TestCompletionEdgeSolver:
    def test_identical(self):
        result = fpt_completion_edge_d(_identical(Variant.COMPLETION, Measure.EDGE_DIST))
        assert result and not result.solution.edits

    def test_forced_merge_too_heavy(self):
        inst = _inst(Variant.COMPLETION, Measure.EDGE_DIST, 4, [(0, 1), (2, 3)], [range(4)], 3, 0)
        assert not fpt_completion_edge_d(inst)
        assert not oracle_solve(inst)

    def test_wrong_measure(self):
        with pytest.raises(WrongVariant):
            fpt_completion_edge_d(_identical(Variant.COMPLETION, Measure.MATCHING_DIST))

    def test_against_oracle(self):
        _random_agreement(fpt_completion_edge_d, Variant.COMPLETION, Measure.EDGE_DIST, 300)

    def test_five_vertex_sweep(self):
        _sweep(fpt_completion_edge_d, Variant.COMPLETION, Measure.EDGE_DIST, 4, 2)


class TestCompletionMatchingSolver:
    def test_identical(self):
        result = fpt_completion_matching_d(_identical(Variant.COMPLETION, Measure.MATCHING_DIST))
        assert result and not result.solution.edits

    def test_too_many_spanning_cliques(self):
        inst = _inst(Variant.COMPLETION, Measure.MATCHING_DIST, 4, [(1, 2)], [[0, 1], [2, 3]], 5, 0)
        result = fpt_completion_matching_d(inst)
        assert not result and result.stats["spanning"] == 1

    def test_leaves_out_the_larger_clique(self):
        edges = [(0, 1), (2, 3), (4, 5), (6, 7), (6, 8), (7, 8)]
        inst = _inst(Variant.COMPLETION, Measure.MATCHING_DIST, 9, edges, [range(9)], 12, 3)
        result = fpt_completion_matching_d(inst)
        assert result and verify_solution(inst, result.solution)
        assert oracle_solve(inst)

    def test_against_oracle(self):
        _random_agreement(fpt_completion_matching_d, Variant.COMPLETION, Measure.MATCHING_DIST, 300)

    def test_five_vertex_sweep(self):
        _sweep(fpt_completion_matching_d, Variant.COMPLETION, Measure.MATCHING_DIST, 4, 1)


class TestCombined:
    def test_identical_vanishes(self):
        result = solve_combined(_identical(Variant.EDITING, Measure.MATCHING_DIST))
        assert result and result.stats["kernel_vertices"] == 0

    def test_no_from_rules(self):
        inst = _inst(Variant.EDITING, Measure.MATCHING_DIST, 2, [], [[0, 1]], 0, 0)
        result = solve_combined(inst)
        assert not result and result.stats["rule"] == "RR7_ManyCliquesMatching"

    def test_kernel_level_witness(self):
        edges = list(itertools.combinations(range(6), 2))
        inst = _inst(Variant.EDITING, Measure.MATCHING_DIST, 7, edges, [range(7)], 1, 1)
        result = solve_combined(inst)
        assert result and result.scope == SCOPE_KERNEL
        assert verify_solution(result.kernel.reduced, result.solution)

    def test_kernel_too_large(self):
        path = [(v, v + 1) for v in range(7)]
        inst = _inst(Variant.EDITING, Measure.EDGE_DIST, 8, path, [[v] for v in range(8)], 8, 30)
        with pytest.raises(KernelTooLargeForOracle):
            solve_combined(inst, cap=5)

    @pytest.mark.parametrize("variant,measure", list(itertools.product(Variant, Measure)))
    def test_against_oracle(self, variant, measure):
        for seed in range(500):
            inst = gen_random(
                n=seed % 8 + 1, edge_prob=[0.3, 0.5][seed % 2], variant=variant, measure=measure,
                k=seed % 4, d=(seed // 4) % 4, seed=1000 + seed,
            )
            expected = oracle_solve(inst).yes
            result = solve_combined(inst)
            assert result.yes == expected, f"seed {seed}"
            if result.yes:
                target = inst if result.scope == SCOPE_ORIGINAL else result.kernel.reduced
                assert verify_solution(target, result.solution)


class TestDispatch:
    @pytest.mark.parametrize(
        "variant,measure,solver",
        [
            (Variant.DELETION, Measure.EDGE_DIST, "fpt-k"),
            (Variant.COMPLETION, Measure.EDGE_DIST, "fpt-d"),
            (Variant.COMPLETION, Measure.MATCHING_DIST, "fpt-d"),
            (Variant.EDITING, Measure.EDGE_DIST, "combined"),
            (Variant.EDITING, Measure.MATCHING_DIST, "combined"),
            (Variant.DELETION, Measure.MATCHING_DIST, "combined"),
        ],
    )
    def test_auto(self, variant, measure, solver):
        result = solve_instance(_identical(variant, measure))
        assert result and result.solver == solver

    def test_explicit(self, worked_instance):
        assert solve_instance(worked_instance, "oracle").solver == "oracle"
        with pytest.raises(WrongVariant):
            solve_instance(worked_instance, "fpt-k")
        with pytest.raises(WrongVariant):
            solve_instance(worked_instance, "fpt-d")

    def test_unknown(self, worked_instance):
        with pytest.raises(ValueError):
            solve_instance(worked_instance, "simplex")
