"""Brute-force enumeration: completeness, gamma, budget handling."""

import random

import pytest

from conflictfair import (
    Additive,
    Allocation,
    BudgetExceededError,
    ConflictGraph,
    EnumerationBudget,
    Instance,
    Uniform,
    compute_gamma,
    enumerate_maximal_allocations,
    exists_maximal_ef1,
    gen_counterexample,
    is_ef1,
)

from conftest import (
    backtracking_maximal_allocations,
    random_graph,
    random_monotone_table,
)


class TestEnumeration:
    def test_single_good_single_agent(self):
        instance = Instance(ConflictGraph(1), 1, Additive([5]))
        allocations = list(enumerate_maximal_allocations(instance))
        assert allocations == [Allocation([{0}])]

    def test_k2_two_agents(self):
        instance = Instance(ConflictGraph(2, [(0, 1)]), 2, Uniform())
        allocations = list(enumerate_maximal_allocations(instance))
        assert allocations == [Allocation([{0}, {1}]), Allocation([{1}, {0}])]

    def test_counterexample_has_maximal_but_no_ef1(self):
        instance = gen_counterexample(3)
        allocations = list(enumerate_maximal_allocations(instance))
        assert allocations
        assert not any(is_ef1(instance, a) for a in allocations)

    def test_matches_backtracking_enumerator(self, rng):
        for _ in range(40):
            m = rng.randint(1, 4)
            n = rng.randint(1, 3)
            instance = Instance(random_graph(rng, m), n, Uniform())
            mine = list(enumerate_maximal_allocations(instance))
            theirs = backtracking_maximal_allocations(instance)
            assert sorted(mine, key=repr) == sorted(theirs, key=repr)
            assert len(set(map(repr, mine))) == len(mine)

    def test_assignment_budget(self):
        instance = Instance(ConflictGraph(4), 2, Uniform())
        with pytest.raises(BudgetExceededError, match="exceed"):
            list(enumerate_maximal_allocations(instance, EnumerationBudget(max_assignments=10)))

    def test_wall_clock_budget(self):
        instance = Instance(ConflictGraph(10), 3, Uniform())
        budget = EnumerationBudget(wall_clock_seconds=0.0)
        with pytest.raises(BudgetExceededError, match="wall-clock"):
            list(enumerate_maximal_allocations(instance, budget))


class TestExistence:
    def test_counterexample_three_agents(self):
        result = exists_maximal_ef1(gen_counterexample(3))
        assert not result.exists and result.witness is None

    def test_counterexample_four_agents(self):
        assert not exists_maximal_ef1(gen_counterexample(4)).exists

    def test_two_agent_identical_always_exists(self, rng):
        for _ in range(25):
            m = rng.randint(1, 6)
            instance = Instance(random_graph(rng, m), 2, random_monotone_table(rng, m))
            result = exists_maximal_ef1(instance)
            assert result.exists
            assert is_ef1(instance, result.witness)


class TestGamma:
    def test_four_agent_counterexample(self):
        assert compute_gamma(gen_counterexample(4)) == 1

    def test_single_good_single_agent(self):
        instance = Instance(ConflictGraph(1), 1, Additive([5]))
        assert compute_gamma(instance) == -5

    def test_three_agent_counterexample(self):
        assert compute_gamma(gen_counterexample(3)) == 1

    def test_requires_identical_valuations(self):
        instance = Instance(ConflictGraph(1), 2, [Additive([1]), Additive([2])])
        with pytest.raises(ValueError, match="identical"):
            compute_gamma(instance)

    def test_positive_gamma_forbids_ef1(self, rng):
        # the one direction that is literally true: gamma > 0 implies that
        # no maximal allocation is EF1
        for _ in range(30):
            m = rng.randint(1, 5)
            n = rng.randint(1, 3)
            instance = Instance(random_graph(rng, m), n, random_monotone_table(rng, m))
            if compute_gamma(instance) > 0:
                assert not exists_maximal_ef1(instance).exists
