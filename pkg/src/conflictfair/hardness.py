"""Negative instances and the independent-set reduction.

The reduction plants n mutually hostile copies of an IS instance next to a
constant-size base instance that has no maximal EF1 allocation: an agent
who falls behind on the base goods can catch up only by packing an
independent set of filler goods, each worth gamma/t, so EF1 becomes
achievable exactly when the IS instance has an independent set of size t.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Tuple

from .core import (
    Additive,
    Allocation,
    ConflictGraph,
    Instance,
    Restriction,
    Sum,
    Table,
    evaluate,
    is_independent_set,
    value_minus_one,
)
from .oracle import EnumerationBudget, compute_gamma, enumerate_maximal_allocations, exists_maximal_ef1


def _three_agent_table() -> Table:
    value3 = {
        (1 << 1) | (1 << 6),
        (1 << 2) | (1 << 6),
        (1 << 4) | (1 << 6),
        (1 << 5) | (1 << 6),
    }
    entries = {}
    for mask in range(1 << 7):
        size = bin(mask).count("1")
        if size == 0:
            entries[mask] = 0
        elif size == 1:
            entries[mask] = 1 if mask in (1 << 0, 1 << 3) else 2
        elif mask in value3:
            entries[mask] = 3
        else:
            entries[mask] = 4
    return Table(7, entries)


def gen_counterexample(n: int) -> Instance:
    """Instance with identical valuations and no maximal EF1 allocation.

    n = 3: seven goods on K_{3,3} plus a degree-2 pendant, with a monotone
    table valuation. n >= 4: m = n+2 goods on K_{3,n-1} with additive values
    2 on the left triple and 3 on the right part.
    """
    if n < 3:
        raise ValueError("counterexamples exist only for n >= 3")
    if n == 3:
        edges = [(a, b) for a in (0, 1, 2) for b in (3, 4, 5)] + [(0, 6), (3, 6)]
        return Instance(ConflictGraph(7, edges), 3, _three_agent_table())
    m = n + 2
    edges = [(a, b) for a in (0, 1, 2) for b in range(3, m)]
    values = [2, 2, 2] + [3] * (n - 1)
    return Instance(ConflictGraph(m, edges), n, Additive(values))


class ISInstance:
    """Independent-set decision instance: graph H and target size t."""

    __slots__ = ("graph", "t")

    def __init__(self, graph: ConflictGraph, t: int):
        if not 1 <= t <= graph.m:
            raise ValueError(f"target size t={t} must lie in [1, {graph.m}]")
        self.graph = graph
        self.t = t

    def __repr__(self):
        return f"ISInstance(|V|={self.graph.m}, |E|={len(self.graph.edges)}, t={self.t})"


@dataclass(frozen=True)
class GoodMap:
    """Index ranges of the reduced instance: base goods first, then per
    copy i a block of x-goods followed by its y-goods."""

    base: range
    x: tuple
    y: tuple

    def x_good(self, copy: int, vertex: int) -> int:
        return self.x[copy].start + vertex

    def y_good(self, copy: int, vertex: int) -> int:
        return self.y[copy].start + vertex


@dataclass(frozen=True)
class ReductionSpec:
    base: Instance
    is_instance: ISInstance
    gamma: Fraction
    lam: Fraction
    good_map: GoodMap


def build_reduction(
    base: Instance,
    is_instance: ISInstance,
    budget: Optional[EnumerationBudget] = None,
) -> Tuple[Instance, ReductionSpec]:
    """Compose the base no-EF1 instance with n copies of the IS graph."""
    if not base.identical:
        raise ValueError("base instance must have identical valuations")
    if base.mode != "goods":
        raise ValueError("negate a chores base into goods mode before reducing")
    if exists_maximal_ef1(base, budget).exists:
        raise ValueError("base instance admits a maximal EF1 allocation")
    gamma = compute_gamma(base, budget)
    if gamma <= 0:
        raise ValueError(f"base instance has gamma = {gamma}; need gamma > 0")
    lam = gamma / is_instance.t

    n = base.n
    h = is_instance.graph.m
    m_base = base.m
    x_ranges = []
    y_ranges = []
    offset = m_base
    for _ in range(n):
        x_ranges.append(range(offset, offset + h))
        y_ranges.append(range(offset + h, offset + 2 * h))
        offset += 2 * h
    good_map = GoodMap(range(m_base), tuple(x_ranges), tuple(y_ranges))

    edges = list(base.graph.edges)
    for i in range(n):
        for u, w in is_instance.graph.edges:
            edges.append((good_map.x_good(i, u), good_map.x_good(i, w)))
        for w in range(h):
            edges.append((good_map.x_good(i, w), good_map.y_good(i, w)))
    for i in range(n):
        for j in range(i + 1, n):
            block_i = list(x_ranges[i]) + list(y_ranges[i])
            block_j = list(x_ranges[j]) + list(y_ranges[j])
            edges.extend((a, b) for a in block_i for b in block_j)
    graph = ConflictGraph(offset, edges)

    tail = [Fraction(0)] * offset
    for rng in x_ranges:
        for g in rng:
            tail[g] = lam
    base_model = base.identical_model
    if isinstance(base_model, Additive):
        values = list(base_model.values) + tail[m_base:]
        model = Additive(values)
    else:
        model = Sum((Restriction(base_model, m_base), Additive(tail)))
    instance = Instance(graph, n, model)
    return instance, ReductionSpec(base, is_instance, gamma, lam, good_map)


def _gamma_allocation(spec: ReductionSpec) -> Allocation:
    """First enumerated base allocation attaining gamma, with bundles
    reordered (stable) so agent 1 has the largest one-removed value."""
    model = spec.base.identical_model
    for allocation in enumerate_maximal_allocations(spec.base):
        worst = max(value_minus_one(model, b) for b in allocation.bundles) - min(
            evaluate(model, b) for b in allocation.bundles
        )
        if worst == spec.gamma:
            order = sorted(
                range(spec.base.n),
                key=lambda i: -value_minus_one(model, allocation[i]),
            )
            return Allocation([allocation[i] for i in order])
    raise RuntimeError("no gamma-attaining maximal allocation found")


def _assemble(spec: ReductionSpec, base_bundles, picks: Iterable[Iterable[int]]) -> Allocation:
    """Attach copy i's x-goods for the picked vertices and the complementary
    y-goods to agent i's base bundle."""
    h = spec.is_instance.graph.m
    bundles = []
    for i, (base_bundle, pick) in enumerate(zip(base_bundles, picks)):
        pick = frozenset(pick)
        extra = {spec.good_map.x_good(i, w) for w in pick}
        extra |= {spec.good_map.y_good(i, w) for w in range(h) if w not in pick}
        bundles.append(frozenset(base_bundle) | extra)
    return Allocation(bundles)


def yes_certificate(spec: ReductionSpec, witness: Iterable[int]) -> Allocation:
    """Maximal EF1 allocation of the reduced instance from an independent
    set of size t in H."""
    witness = frozenset(witness)
    if len(witness) != spec.is_instance.t:
        raise ValueError(f"witness has size {len(witness)}, expected t={spec.is_instance.t}")
    if not is_independent_set(spec.is_instance.graph, witness):
        raise ValueError("witness is not an independent set of H")

    base_alloc = _gamma_allocation(spec)
    model = spec.base.identical_model
    top = value_minus_one(model, base_alloc[0])
    ordered_witness = sorted(witness)
    picks = []
    for i in range(spec.base.n):
        gap = top - evaluate(model, base_alloc[i])
        c_i = max(0, math.ceil(gap / spec.lam))
        if c_i > spec.is_instance.t:
            raise RuntimeError("certificate needs more filler goods than the witness provides")
        picks.append(ordered_witness[:c_i])
    return _assemble(spec, base_alloc.bundles, picks)


def independent_sets(graph: ConflictGraph) -> List[frozenset]:
    """All independent sets (including the empty one); small graphs only."""
    if graph.m > 20:
        raise ValueError("exhaustive independent-set listing is limited to 20 vertices")
    out = []
    for mask in range(1 << graph.m):
        subset = frozenset(g for g in range(graph.m) if mask & (1 << g))
        if is_independent_set(graph, subset):
            out.append(subset)
    return out


def max_independent_set_size(graph: ConflictGraph) -> int:
    return max(len(s) for s in independent_sets(graph))


def structured_maximal_allocations(
    spec: ReductionSpec,
    per_size_representatives: bool = True,
    budget: Optional[EnumerationBudget] = None,
) -> Iterator[Allocation]:
    """Certificate-shaped maximal allocations of the reduced instance: every
    base maximal allocation combined with per-agent independent-set picks
    from the agent's own copy (y-goods forced to the complement).

    The composed valuation sees a pick only through its size, so with
    ``per_size_representatives`` one independent set per size decides the
    same EF1-existence question as the full product enumeration.
    """
    all_sets = independent_sets(spec.is_instance.graph)
    if per_size_representatives:
        by_size = {}
        for s in sorted(all_sets, key=lambda s: (len(s), sorted(s))):
            by_size.setdefault(len(s), s)
        choices = [by_size[size] for size in sorted(by_size)]
    else:
        choices = sorted(all_sets, key=lambda s: (len(s), sorted(s)))
    for base_alloc in enumerate_maximal_allocations(spec.base, budget):
        for picks in itertools.product(choices, repeat=spec.base.n):
            yield _assemble(spec, base_alloc.bundles, picks)
