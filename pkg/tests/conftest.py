"""Shared generators and independent brute-force oracles for the suite."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conflictfair import (
    Additive,
    Allocation,
    ConflictGraph,
    Instance,
    IntervalSet,
    Table,
    is_independent_set,
    is_maximal,
    validate_allocation,
)


def random_connected_graph(rng: random.Random, m: int, extra_edge_prob: float = 0.3) -> ConflictGraph:
    """Random spanning tree plus random extra edges."""
    edges = set()
    for v in range(1, m):
        edges.add((rng.randrange(v), v))
    for u in range(m):
        for v in range(u + 1, m):
            if (u, v) not in edges and rng.random() < extra_edge_prob:
                edges.add((u, v))
    return ConflictGraph(m, edges)


def random_graph(rng: random.Random, m: int, edge_prob: float = 0.4) -> ConflictGraph:
    edges = [(u, v) for u in range(m) for v in range(u + 1, m) if rng.random() < edge_prob]
    return ConflictGraph(m, edges)


def random_additive(rng: random.Random, m: int, hi: int = 10) -> Additive:
    return Additive([rng.randint(0, hi) for _ in range(m)])


def random_monotone_table(rng: random.Random, m: int, step: int = 3) -> Table:
    """Random monotone non-decreasing set function with v({}) = 0, built by
    adding a non-negative increment to the best sub-subset value."""
    entries = {0: Fraction(0)}
    for mask in sorted(range(1, 1 << m), key=lambda x: bin(x).count("1")):
        best = max(entries[mask & ~(1 << g)] for g in range(m) if mask & (1 << g))
        entries[mask] = best + rng.randint(0, step)
    return Table(m, entries)


def random_intervals(rng: random.Random, m: int, span: int = 20) -> IntervalSet:
    """Random integer-endpoint intervals; coincident endpoints are common on
    purpose, to exercise the tie perturbation."""
    raw = []
    for _ in range(m):
        l = rng.randint(0, span - 1)
        r = rng.randint(l + 1, span)
        raw.append((l, r))
    return IntervalSet(raw)


def random_tree_edges(rng: random.Random, nv: int):
    return [(rng.randrange(v), v) for v in range(1, nv)]


def random_wellformed_allocation(rng: random.Random, instance: Instance) -> Allocation:
    """Random wellformed (not necessarily maximal) allocation."""
    bundles = [set() for _ in range(instance.n)]
    for g in rng.sample(range(instance.m), instance.m):
        label = rng.randrange(instance.n + 1)
        if label and not (instance.graph.adj[g] & bundles[label - 1]):
            bundles[label - 1].add(g)
    return Allocation(bundles)


def random_maximal_allocation(rng: random.Random, instance: Instance) -> Allocation:
    """Random wellformed allocation greedily completed until maximal."""
    bundles = [set(b) for b in random_wellformed_allocation(rng, instance).bundles]
    assigned = set().union(*bundles) if bundles else set()
    while True:
        feasible = [
            (g, a)
            for g in range(instance.m)
            if g not in assigned
            for a in range(instance.n)
            if not (instance.graph.adj[g] & bundles[a])
        ]
        if not feasible:
            break
        g, a = rng.choice(feasible)
        bundles[a].add(g)
        assigned.add(g)
    allocation = Allocation(bundles)
    assert validate_allocation(instance, allocation).wellformed
    assert is_maximal(instance, allocation)
    return allocation


def all_maximal_independent_sets(graph: ConflictGraph):
    """Exhaustive maximal-independent-set listing for small graphs."""
    assert graph.m <= 16
    out = []
    for mask in range(1 << graph.m):
        subset = frozenset(g for g in range(graph.m) if mask & (1 << g))
        if not is_independent_set(graph, subset):
            continue
        if any(
            g not in subset and not (graph.adj[g] & subset) for g in range(graph.m)
        ):
            continue
        out.append(subset)
    return out


def backtracking_maximal_allocations(instance: Instance):
    """Independent recursive enumerator used to cross-check the oracle."""
    results = []
    bundles = [set() for _ in range(instance.n)]

    def place(g: int):
        if g == instance.m:
            allocation = Allocation(bundles)
            if is_maximal(instance, allocation):
                results.append(allocation)
            return
        place_unassigned_last = list(range(1, instance.n + 1)) + [0]
        for label in place_unassigned_last:
            if label == 0:
                place(g + 1)
            else:
                bundle = bundles[label - 1]
                if not (instance.graph.adj[g] & bundle):
                    bundle.add(g)
                    place(g + 1)
                    bundle.remove(g)

    place(0)
    return results


def brute_max_schedule_size(intervals: IntervalSet, subset, c: int) -> int:
    """Exhaustive maximum feasible pick size. Uses the 1-D Helly property:
    a point is covered more than c times iff some c+1 intervals pairwise
    overlap."""
    goods = sorted(subset)
    overlap_mask = {g: 0 for g in goods}
    for g in goods:
        for h in goods:
            if g != h and intervals.overlaps(g, h):
                overlap_mask[g] |= 1 << h
    best = 0
    for pick in range(1 << len(goods)):
        members = [g for i, g in enumerate(goods) if pick & (1 << i)]
        mask = 0
        for g in members:
            mask |= 1 << g
        if _schedule_feasible(members, mask, overlap_mask, c):
            best = max(best, len(members))
    return best


def _schedule_feasible(members, mask, overlap_mask, c: int) -> bool:
    if c == 1:
        return all(overlap_mask[g] & mask == 0 for g in members)
    if c == 2:
        for g in members:
            common = overlap_mask[g] & mask
            for h in members:
                if h > g and (common >> h) & 1:
                    if overlap_mask[h] & common & ~(1 << g) & ~(1 << h):
                        return False
        return True
    raise ValueError("brute force supports c in {1, 2}")


def schedule_feasible(intervals: IntervalSet, members, c: int) -> bool:
    """Direct feasibility check of a pick by sweeping its endpoint events."""
    events = []
    for g in members:
        l, r = intervals.keys[g]
        events.append((l, 1))
        events.append((r, -1))
    events.sort()
    cur = 0
    for _point, delta in events:
        cur += delta
        if cur > c:
            return False
    return True


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
