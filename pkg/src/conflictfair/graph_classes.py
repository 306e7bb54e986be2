"""Polynomial solvers for special graph classes: bipartite graphs, interval
graphs, and the m <= n+1 round-robin procedure."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

from .core import (
    GOODS,
    Allocation,
    ConflictGraph,
    Instance,
    Rational,
    as_fraction,
    evaluate,
    is_ef1,
)
from .chain import build_chain, chain_ef1, _require_two_agent_identical_goods


class IntervalSet:
    """Half-open intervals [l, r), one per good, with exact endpoints.

    Equal endpoints are allowed on input; the algorithms run on perturbed
    keys that make all 2m endpoints distinct while preserving the overlap
    graph exactly (at a tie, right endpoints are ordered before left ones,
    matching half-open semantics; remaining ties break by good index).
    """

    __slots__ = ("intervals", "keys")

    def __init__(self, intervals: Iterable[Sequence[Rational]]):
        parsed = []
        for l, r in intervals:
            l, r = as_fraction(l), as_fraction(r)
            if not l < r:
                raise ValueError(f"interval [{l},{r}) is empty")
            parsed.append((l, r))
        self.intervals = tuple(parsed)
        self.keys = self._distinct_keys(self.intervals)

    @staticmethod
    def _distinct_keys(intervals) -> tuple:
        values = sorted({x for l, r in intervals for x in (l, r)})
        if len(values) < 2:
            gap = Fraction(1)
        else:
            gap = min(b - a for a, b in zip(values, values[1:]))
        eps = gap / (2 * len(intervals) + 2)
        # kind 0 = right endpoint, 1 = left endpoint; rights sort first at ties
        records = []
        for g, (l, r) in enumerate(intervals):
            records.append((l, 1, g, "l"))
            records.append((r, 0, g, "r"))
        records.sort(key=lambda rec: rec[:3])
        keys = [[None, None] for _ in intervals]
        for rank, (value, _kind, g, side) in enumerate(records):
            keys[g][0 if side == "l" else 1] = value + eps * rank
        return tuple((l, r) for l, r in keys)

    def __len__(self):
        return len(self.intervals)

    def overlaps(self, i: int, j: int) -> bool:
        li, ri = self.keys[i]
        lj, rj = self.keys[j]
        return li < rj and lj < ri

    def induced_graph(self) -> ConflictGraph:
        m = len(self.intervals)
        edges = [(i, j) for i in range(m) for j in range(i + 1, m) if self.overlaps(i, j)]
        return ConflictGraph(m, edges)


@dataclass(frozen=True)
class SchedulingSolution:
    """A feasible interval-scheduling pick: chosen goods in ascending order
    of right endpoint, with no point covered by more than ``capacity``."""

    chosen: tuple
    capacity: int


def _fits(intervals: IntervalSet, chosen, candidate: int, c: int) -> bool:
    """True iff adding ``candidate`` keeps point coverage at most ``c``."""
    lo, hi = intervals.keys[candidate]
    events = []
    for g in chosen:
        l, r = intervals.keys[g]
        if l < hi and lo < r:
            events.append((max(l, lo), 1))
            events.append((min(r, hi), -1))
    events.sort()
    cur = 0
    for point, delta in events:
        cur += delta
        if point < hi and cur > c - 1:
            return False
    return True


def interval_scheduling_greedy(
    intervals: IntervalSet,
    subset: Optional[Iterable[int]] = None,
    c: int = 1,
    direction: str = "forward",
) -> SchedulingSolution:
    """Maximum-size subset covering no point more than ``c`` times.

    Forward scans by increasing right endpoint; reverse is the mirror scan
    by decreasing left endpoint.
    """
    if c < 1:
        raise ValueError("capacity must be at least 1")
    goods = range(len(intervals)) if subset is None else set(subset)
    if direction == "forward":
        order = sorted(goods, key=lambda g: intervals.keys[g][1])
    elif direction == "reverse":
        order = sorted(goods, key=lambda g: intervals.keys[g][0], reverse=True)
    else:
        raise ValueError("direction must be 'forward' or 'reverse'")
    chosen = []
    for g in order:
        if _fits(intervals, chosen, g, c):
            chosen.append(g)
    chosen.sort(key=lambda g: intervals.keys[g][1])
    return SchedulingSolution(tuple(chosen), c)


@dataclass(frozen=True)
class IntervalChains:
    """The three chain segments of the interval solver and their gapless
    concatenation (junction duplicates dropped)."""

    narrowing: tuple  # (Z1, Z2) -> (Z1, X'2)
    core: tuple  # (Z1, X'2) -> (X'1, Z1), the maximal-IS chain
    widening: tuple  # (X'1, Z1) -> (Z2, Z1)
    combined: tuple


def _two_color_pick(intervals: IntervalSet, chosen) -> Tuple[set, set]:
    """Proper 2-coloring of a capacity-2-feasible pick, scanning by left
    endpoint. At each interval at most one color is blocked (a third
    overlapping interval would cover its left endpoint three times), so two
    colors always suffice; with no nested intervals this reproduces the
    odd/even alternation along the right-endpoint order.
    """
    last = [None, None]
    sides = (set(), set())
    for g in sorted(chosen, key=lambda g: intervals.keys[g][0]):
        l, r = intervals.keys[g]
        free = [i for i in range(2) if last[i] is None or last[i] <= l]
        if not free:
            raise RuntimeError("pick covers a point three times; not a c=2 solution")
        idx = free[0]
        sides[idx].add(g)
        if last[idx] is None or r > last[idx]:
            last[idx] = r
    return sides


def _splice_steps(prefix_order, tail_order, fixed: frozenset, fixed_side: int):
    """Allocations obtained by replacing ever-longer greedy prefixes of an
    optimal solution, per the prefix-splice argument; both orders must list
    the same-size solutions in scan order."""
    k = len(tail_order)
    steps = []
    for i in range(k + 1):
        moving = frozenset(prefix_order[:i]) | frozenset(tail_order[i:])
        pair = (fixed, moving) if fixed_side == 0 else (moving, fixed)
        steps.append(Allocation(pair))
    return steps


def interval_chains(instance: Instance, intervals: IntervalSet) -> IntervalChains:
    """Build the full three-segment chain used by the interval solver."""
    model = _require_two_agent_identical_goods(instance)
    if len(intervals) != instance.m:
        raise ValueError("interval count does not match the good count")
    if intervals.induced_graph() != instance.graph:
        raise ValueError("intervals do not induce the instance graph")

    by_right = lambda g: intervals.keys[g][1]
    by_left = lambda g: intervals.keys[g][0]

    z = interval_scheduling_greedy(intervals, c=2).chosen
    z1, z2 = _two_color_pick(intervals, z)
    if evaluate(model, z1) < evaluate(model, z2):
        z1, z2 = z2, z1
    for g in sorted(z2, key=by_right):
        if all(not intervals.overlaps(g, h) for h in z1):
            z1.add(g)
            z2.discard(g)
    z1 = frozenset(z1)
    z2 = frozenset(z2)

    rest = frozenset(range(instance.m)) - z1
    x1 = frozenset(interval_scheduling_greedy(intervals, rest, c=1, direction="forward").chosen)
    x2 = frozenset(interval_scheduling_greedy(intervals, rest, c=1, direction="reverse").chosen)
    if not (len(x1) == len(x2) == len(z2)):
        raise RuntimeError("one-side greedy solutions must match |Z_2|; optimality violated")

    # Bundle 1 fixed at Z_1; bundle 2 morphs Z_2 -> X'_2 along the mirrored
    # (decreasing left endpoint) scan order.
    narrowing = _splice_steps(
        sorted(x2, key=by_left, reverse=True),
        sorted(z2, key=by_left, reverse=True),
        z1,
        fixed_side=0,
    )
    core = list(build_chain(instance, sorted(z1, key=by_left), x1=x1, x2=x2).steps)
    # Bundle 2 fixed at Z_1; bundle 1 morphs X'_1 -> Z_2 against the forward
    # (increasing right endpoint) scan order.
    widening = _splice_steps(
        sorted(x1, key=by_right),
        sorted(z2, key=by_right),
        z1,
        fixed_side=1,
    )
    widening.reverse()

    combined = list(narrowing)
    for step in core:
        if not combined or step != combined[-1]:
            combined.append(step)
    for step in widening:
        if not combined or step != combined[-1]:
            combined.append(step)
    return IntervalChains(tuple(narrowing), tuple(core), tuple(widening), tuple(combined))


def interval_ef1(instance: Instance, intervals: IntervalSet) -> Allocation:
    """Maximal EF1 allocation for an interval graph via the concatenated
    gapless chain; some member is always EF1."""
    chains = interval_chains(instance, intervals)
    for step in chains.combined:
        if is_ef1(instance, step):
            return step
    raise RuntimeError("gapless chain contained no EF1 step; invariant violated")


def bipartition(graph: ConflictGraph) -> Tuple[frozenset, frozenset]:
    """2-color the graph by breadth-first search (isolated vertices go to
    side 0); raises ValueError if an odd cycle exists."""
    color = [None] * graph.m
    for root in range(graph.m):
        if color[root] is not None:
            continue
        color[root] = 0
        queue = [root]
        while queue:
            u = queue.pop(0)
            for w in graph.adj[u]:
                if color[w] is None:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    raise ValueError("graph is not bipartite")
    side0 = frozenset(g for g in range(graph.m) if color[g] == 0)
    return side0, frozenset(range(graph.m)) - side0


def is_bipartite(graph: ConflictGraph) -> bool:
    try:
        bipartition(graph)
        return True
    except ValueError:
        return False


def bipartite_ef1(
    instance: Instance,
    parts: Optional[Tuple[Iterable[int], Iterable[int]]] = None,
) -> Allocation:
    """Maximal EF1 allocation on a bipartite graph: run the chain with the
    heavier part (holding all isolated vertices) as the maximal set."""
    model = _require_two_agent_identical_goods(instance)
    graph = instance.graph
    isolated = frozenset(g for g in range(graph.m) if not graph.adj[g])
    if parts is None:
        side0, side1 = bipartition(graph)
        side0 -= isolated
        side1 -= isolated
        if evaluate(model, side0) >= evaluate(model, side1):
            m1, m2 = side0 | isolated, side1
        else:
            m1, m2 = side1 | isolated, side0
    else:
        m1, m2 = frozenset(parts[0]), frozenset(parts[1])
        if m1 & m2 or (m1 | m2) != frozenset(range(graph.m)):
            raise ValueError("parts do not partition the goods")
        for u, w in graph.edges:
            if (u in m1) == (w in m1):
                raise ValueError("parts are not a bipartition: edge inside one part")
        if not isolated <= m1:
            raise ValueError("all isolated vertices must be in the first part")
        if evaluate(model, m1) < evaluate(model, m2):
            raise ValueError("first part must have the larger value; swap the parts")

    outcome = chain_ef1(instance, sorted(m1))
    if not outcome.found:
        raise RuntimeError("bipartite chain contained no EF1 step; invariant violated")
    return outcome.allocation


def round_robin_small(instance: Instance) -> Allocation:
    """One round-robin cycle plus a feasibility pass for the single leftover
    good; valid whenever m <= n+1."""
    if instance.m > instance.n + 1:
        raise ValueError(f"round robin needs m <= n+1, got m={instance.m}, n={instance.n}")
    if instance.mode != GOODS:
        raise ValueError("chores instances must be negated into goods mode first")
    remaining = set(range(instance.m))
    bundles = [set() for _ in range(instance.n)]
    for agent in range(instance.n):
        if not remaining:
            break
        model = instance.model_for(agent)
        pick = max(remaining, key=lambda g: (evaluate(model, (g,)), -g))
        bundles[agent].add(pick)
        remaining.remove(pick)
    if remaining:
        leftover = remaining.pop()
        for agent in range(instance.n):
            if not (instance.graph.adj[leftover] & bundles[agent]):
                bundles[agent].add(leftover)
                break
    return Allocation(bundles)
