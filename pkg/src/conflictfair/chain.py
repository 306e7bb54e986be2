"""Gapless-chain construction from a maximal independent set.

Given an ordered maximal independent set S = (s_1, ..., s_k) of the conflict
graph, the chain walks bundle 1 down from S while bundle 2 grows up to S,
padding both sides with greedily chosen independent sets X_1, X_2 so that
every intermediate allocation stays maximal. Whenever v(S) dominates both
side sets, the end-to-end value gap flips sign and some step must be EF1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .core import (
    GOODS,
    Allocation,
    Chain,
    Instance,
    Negated,
    ValuationModel,
    evaluate,
    is_ef1,
    is_independent_set,
)


@dataclass(frozen=True)
class ChainOutcome:
    """Result of scanning a chain for an EF1 step; the full chain is kept
    for invariant testing."""

    allocation: Optional[Allocation]
    step_index: Optional[int]
    chain: Chain

    @property
    def found(self) -> bool:
        return self.allocation is not None


def _require_two_agent_identical_goods(instance: Instance) -> ValuationModel:
    if instance.n != 2:
        raise ValueError("chain construction needs exactly 2 agents")
    if not instance.identical:
        raise ValueError("chain construction needs identical valuations")
    if instance.mode != GOODS:
        raise ValueError("chores instances must be negated into goods mode first")
    return instance.identical_model


def build_chain(
    instance: Instance,
    source: Sequence[int],
    *,
    x1: Optional[frozenset] = None,
    x2: Optional[frozenset] = None,
) -> Chain:
    """Build the full chain A^(0)..A^(k) for the ordered maximal independent
    set ``source``, without the EF1 short-circuit.

    ``x1``/``x2`` override the greedily computed side sets; an override must
    itself be a valid outcome of the greedy scan under some tie-break of
    equal q (resp. p) values, which is how the interval solver injects its
    endpoint-ordered greedy solutions.
    """
    _require_two_agent_identical_goods(instance)
    graph = instance.graph
    s = tuple(source)
    s_set = frozenset(s)
    if len(s) != len(s_set):
        raise ValueError("source contains duplicate goods")
    if not is_independent_set(graph, s_set):
        raise ValueError("source is not an independent set")
    k = len(s)
    pos = {g: i + 1 for i, g in enumerate(s)}  # 1-based positions in S

    p = {}
    q = {}
    for t in range(graph.m):
        if t in s_set:
            continue
        hits = [pos[u] for u in graph.adj[t] if u in s_set]
        if not hits:
            raise ValueError(f"source is not maximal: good {t} has no neighbor in it")
        p[t] = min(hits)
        q[t] = max(hits)

    outside = sorted(p)
    if x1 is None:
        chosen = set()
        for t in sorted(outside, key=lambda t: (q[t], t)):
            if not (graph.adj[t] & chosen):
                chosen.add(t)
        x1 = frozenset(chosen)
    if x2 is None:
        chosen = set()
        for t in sorted(outside, key=lambda t: (-p[t], -t)):
            if not (graph.adj[t] & chosen):
                chosen.add(t)
        x2 = frozenset(chosen)

    steps = []
    for i in range(k + 1):
        a1 = frozenset(s[i:]) | frozenset(t for t in x1 if q[t] <= i)
        a2 = frozenset(s[:i]) | frozenset(t for t in x2 if p[t] > i)
        steps.append(Allocation([a1, a2]))
    return Chain(tuple(steps), s, x1, x2, p, q)


def chain_ef1(instance: Instance, source: Sequence[int]) -> ChainOutcome:
    """Walk the chain for ``source`` and return its first EF1 step, or a
    null outcome when no step is EF1."""
    chain = build_chain(instance, source)
    for i, step in enumerate(chain.steps):
        if is_ef1(instance, step):
            return ChainOutcome(step, i, chain)
    return ChainOutcome(None, None, chain)


def cut_and_choose(
    instance: Instance,
    solve: Optional[Callable[[Instance], Allocation]] = None,
) -> Allocation:
    """Two-agent protocol for possibly distinct valuations: solve the
    identical-valuation problem under agent 1's valuation, then let agent 2
    take her preferred bundle.

    Works in both modes: for chores the identical sub-problem is negated
    into goods form, while the choice step always compares agent 2's true
    valuation (a chores agent prefers the bundle of higher, i.e. less
    negative, value).
    """
    if instance.n != 2:
        raise ValueError("cut-and-choose needs exactly 2 agents")
    if solve is None:
        from .swap import swap_ef1

        solve = lambda inst: swap_ef1(inst)[0]

    v1 = instance.model_for(0)
    inner_model = Negated(v1) if instance.mode != GOODS else v1
    identical = Instance(instance.graph, 2, inner_model, GOODS)
    allocation = solve(identical)

    v2 = instance.model_for(1)
    if evaluate(v2, allocation[1]) < evaluate(v2, allocation[0]):
        allocation = Allocation([allocation[1], allocation[0]])
    return allocation
