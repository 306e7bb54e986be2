"""Interval scheduling, interval/bipartite solvers, and round robin."""

import itertools
import random

import pytest

from conflictfair import (
    Additive,
    ConflictGraph,
    Instance,
    IntervalSet,
    Uniform,
    bipartite_ef1,
    bipartition,
    chain_ef1,
    evaluate,
    interval_chains,
    interval_ef1,
    interval_scheduling_greedy,
    is_ef1,
    is_maximal,
    is_ordered_adjacent,
    round_robin_small,
    validate_allocation,
)
from conflictfair.oracle import exists_maximal_ef1

from conftest import (
    brute_max_schedule_size,
    random_additive,
    random_graph,
    random_intervals,
    random_monotone_table,
    schedule_feasible,
)


class TestIntervalSet:
    def test_rejects_empty_interval(self):
        with pytest.raises(ValueError, match="empty"):
            IntervalSet([(1, 1)])

    def test_touching_intervals_do_not_conflict(self):
        iv = IntervalSet([(0, 2), (2, 4)])
        assert not iv.overlaps(0, 1)
        assert iv.induced_graph().edges == frozenset()

    def test_perturbation_preserves_overlap_graph(self, rng):
        # small integer endpoints force plenty of coincidences
        for _ in range(200):
            m = rng.randint(1, 8)
            raw = []
            for _g in range(m):
                l = rng.randint(0, 6)
                raw.append((l, rng.randint(l + 1, 7)))
            iv = IntervalSet(raw)
            keys = [k for pair in iv.keys for k in pair]
            assert len(set(keys)) == 2 * m
            for i in range(m):
                for j in range(i + 1, m):
                    li, ri = raw[i]
                    lj, rj = raw[j]
                    assert iv.overlaps(i, j) == (li < rj and lj < ri)


class TestSchedulingGreedy:
    def test_capacity_one_example(self):
        iv = IntervalSet([(0, 2), (1, 3), (2, 4)])
        assert interval_scheduling_greedy(iv, c=1).chosen == (0, 2)

    def test_capacity_two_takes_all(self):
        iv = IntervalSet([(0, 2), (1, 3), (2, 4)])
        assert interval_scheduling_greedy(iv, c=2).chosen == (0, 1, 2)

    def test_single_interval(self):
        iv = IntervalSet([(5, 9)])
        assert interval_scheduling_greedy(iv, c=1).chosen == (0,)

    def test_matches_brute_force_optimum(self, rng):
        for _ in range(60):
            m = rng.randint(1, 10)
            iv = random_intervals(rng, m, span=12)
            subset = [g for g in range(m) if rng.random() < 0.8]
            for c in (1, 2):
                for direction in ("forward", "reverse"):
                    sol = interval_scheduling_greedy(iv, subset, c, direction)
                    assert schedule_feasible(iv, sol.chosen, c)
                    assert len(sol.chosen) == brute_max_schedule_size(iv, subset, c)

    def test_feasibility_oracles_agree(self, rng):
        # cross-check the pairwise-overlap shortcut used by the brute
        # force against the direct endpoint sweep
        from conftest import _schedule_feasible

        for _ in range(100):
            m = rng.randint(1, 9)
            iv = random_intervals(rng, m, span=10)
            members = [g for g in range(m) if rng.random() < 0.5]
            overlap_mask = {
                g: sum(1 << h for h in range(m) if h != g and iv.overlaps(g, h))
                for g in members
            }
            mask = sum(1 << g for g in members)
            for c in (1, 2):
                assert _schedule_feasible(members, mask, overlap_mask, c) == schedule_feasible(
                    iv, members, c
                )

    def test_greedy_prefix_dominates_same_size_solutions(self, rng):
        # i-th greedy right endpoint is never later than the i-th right
        # endpoint of any feasible solution of the same size
        for _ in range(40):
            m = rng.randint(2, 9)
            iv = random_intervals(rng, m, span=12)
            for c in (1, 2):
                greedy = interval_scheduling_greedy(iv, c=c).chosen
                k = len(greedy)
                rights = [iv.keys[g][1] for g in greedy]
                goods = list(range(m))
                for pick in itertools.combinations(goods, k):
                    if not schedule_feasible(iv, pick, c):
                        continue
                    other = sorted(iv.keys[g][1] for g in pick)
                    assert all(a <= b for a, b in zip(rights, other))

    def test_prefix_splice_feasible_and_optimal(self, rng):
        for _ in range(40):
            m = rng.randint(1, 9)
            iv = random_intervals(rng, m, span=12)
            greedy = interval_scheduling_greedy(iv, c=1).chosen
            k = len(greedy)
            optima = [
                pick
                for pick in itertools.combinations(range(m), k)
                if schedule_feasible(iv, pick, 1)
            ]
            for optimum in optima[:20]:
                ordered = sorted(optimum, key=lambda g: iv.keys[g][1])
                for i in range(k + 1):
                    spliced = set(greedy[:i]) | set(ordered[i:])
                    assert schedule_feasible(iv, spliced, 1)
                    assert len(spliced) == k


class TestIntervalEf1:
    def test_single_interval(self):
        iv = IntervalSet([(0, 1)])
        instance = Instance(iv.induced_graph(), 2, Uniform())
        allocation = interval_ef1(instance, iv)
        assert set(allocation[0]) == {0} and not allocation[1]

    def test_two_disjoint_intervals_split(self):
        iv = IntervalSet([(0, 1), (2, 3)])
        instance = Instance(iv.induced_graph(), 2, Uniform())
        allocation = interval_ef1(instance, iv)
        assert is_maximal(instance, allocation) and is_ef1(instance, allocation)
        assert len(allocation[0]) == len(allocation[1]) == 1

    def test_graph_mismatch_rejected(self):
        iv = IntervalSet([(0, 2), (1, 3)])
        instance = Instance(ConflictGraph(2), 2, Uniform())
        with pytest.raises(ValueError, match="induce"):
            interval_ef1(instance, iv)

    def test_random_instances_verified_and_match_oracle(self, rng):
        for _ in range(50):
            m = rng.randint(1, 8)
            iv = random_intervals(rng, m, span=12)
            graph = iv.induced_graph()
            model = random_monotone_table(rng, m) if rng.random() < 0.5 else random_additive(rng, m)
            instance = Instance(graph, 2, model)
            allocation = interval_ef1(instance, iv)
            assert validate_allocation(instance, allocation).wellformed
            assert is_maximal(instance, allocation)
            assert is_ef1(instance, allocation)
            assert exists_maximal_ef1(instance).exists

    def test_chain_segments_are_maximal_and_gapless(self, rng):
        for _ in range(40):
            m = rng.randint(1, 9)
            iv = random_intervals(rng, m, span=14)
            instance = Instance(iv.induced_graph(), 2, random_additive(rng, m))
            model = instance.identical_model
            chains = interval_chains(instance, iv)
            for segment in (chains.narrowing, chains.core, chains.widening):
                for step in segment:
                    assert validate_allocation(instance, step).wellformed
                    assert is_maximal(instance, step)
            combined = chains.combined
            assert evaluate(model, combined[0][0]) >= evaluate(model, combined[0][1])
            assert evaluate(model, combined[-1][0]) <= evaluate(model, combined[-1][1])
            for prev, cur in zip(combined, combined[1:]):
                assert is_ordered_adjacent(prev, cur)
            # endpoints are (Z1, Z2) and (Z2, Z1)
            assert combined[0][0] == combined[-1][1]
            assert combined[0][1] == combined[-1][0]


class TestBipartite:
    def test_k22_heavy_left(self):
        graph = ConflictGraph(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
        instance = Instance(graph, 2, Additive([3, 3, 2, 2]))
        allocation = bipartite_ef1(instance)
        assert tuple(set(b) for b in allocation) == ({0, 1}, {2, 3})
        outcome = chain_ef1(instance, [0, 1])
        assert outcome.step_index == 0

    def test_single_edge(self):
        instance = Instance(ConflictGraph(2, [(0, 1)]), 2, Additive([1, 1]))
        allocation = bipartite_ef1(instance)
        assert tuple(set(b) for b in allocation) == ({0}, {1})

    def test_edgeless_uniform(self):
        instance = Instance(ConflictGraph(3), 2, Uniform())
        allocation = bipartite_ef1(instance)
        assert is_maximal(instance, allocation) and is_ef1(instance, allocation)

    def test_rejects_odd_cycle(self):
        triangle = ConflictGraph(3, [(0, 1), (1, 2), (0, 2)])
        with pytest.raises(ValueError, match="bipartite"):
            bipartite_ef1(Instance(triangle, 2, Uniform()))

    def test_supplied_parts_validation(self):
        graph = ConflictGraph(3, [(0, 1)])
        instance = Instance(graph, 2, Additive([1, 5, 1]))
        with pytest.raises(ValueError, match="partition"):
            bipartite_ef1(instance, parts=({0}, {1}))
        with pytest.raises(ValueError, match="bipartition"):
            bipartite_ef1(instance, parts=({0, 1}, {2}))
        with pytest.raises(ValueError, match="isolated"):
            bipartite_ef1(instance, parts=({0}, {1, 2}))
        with pytest.raises(ValueError, match="swap"):
            bipartite_ef1(instance, parts=({0, 2}, {1}))

    def test_random_bipartite_graphs(self, rng):
        for _ in range(60):
            left = rng.randint(1, 6)
            right = rng.randint(0, 6)
            m = left + right
            edges = [
                (u, left + v)
                for u in range(left)
                for v in range(right)
                if rng.random() < 0.5
            ]
            instance = Instance(ConflictGraph(m, edges), 2, random_additive(rng, m))
            allocation = bipartite_ef1(instance)
            assert validate_allocation(instance, allocation).wellformed
            assert is_maximal(instance, allocation)
            assert is_ef1(instance, allocation)


class TestRoundRobin:
    def test_path_with_leftover(self):
        graph = ConflictGraph(4, [(0, 1), (1, 2), (2, 3)])
        instance = Instance(graph, 3, Additive([4, 3, 2, 1]))
        allocation = round_robin_small(instance)
        assert tuple(set(b) for b in allocation) == ({0, 3}, {1}, {2})

    def test_fewer_goods_than_agents(self):
        instance = Instance(ConflictGraph(2), 3, Uniform())
        allocation = round_robin_small(instance)
        sizes = sorted(len(b) for b in allocation)
        assert sizes == [0, 1, 1]

    def test_triangle_blocks_leftover(self):
        triangle = ConflictGraph(3, [(0, 1), (1, 2), (0, 2)])
        instance = Instance(triangle, 2, Uniform())
        allocation = round_robin_small(instance)
        assert len(allocation.allocated) == 2
        assert is_maximal(instance, allocation)
        assert is_ef1(instance, allocation)

    def test_rejects_too_many_goods(self):
        instance = Instance(ConflictGraph(4), 2, Uniform())
        with pytest.raises(ValueError, match="n\\+1"):
            round_robin_small(instance)

    def test_deterministic_across_runs(self, rng):
        for _ in range(20):
            m = rng.randint(1, 8)
            iv = random_intervals(rng, m, span=10)
            instance = Instance(iv.induced_graph(), 2, random_additive(rng, m))
            assert interval_ef1(instance, iv) == interval_ef1(instance, iv)
            n = rng.randint(max(1, m - 1), m)
            rr = Instance(random_graph(rng, m), n, random_additive(rng, m))
            if rr.m <= rr.n + 1:
                assert round_robin_small(rr) == round_robin_small(rr)

    def test_per_agent_valuations_all_small_graphs(self, rng):
        for m in range(1, 5):
            for edges in itertools.chain.from_iterable(
                itertools.combinations(list(itertools.combinations(range(m), 2)), k)
                for k in range(m * (m - 1) // 2 + 1)
            ):
                graph = ConflictGraph(m, edges)
                for n in {max(1, m - 1), m}:
                    models = [random_additive(rng, m) for _ in range(n)]
                    instance = Instance(graph, n, models)
                    allocation = round_robin_small(instance)
                    assert validate_allocation(instance, allocation).wellformed
                    assert is_maximal(instance, allocation)
                    assert is_ef1(instance, allocation)
