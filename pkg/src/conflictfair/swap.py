"""Escalating maximal-independent-set solver for two agents.

Starts from a maximal independent set containing the single most valuable
good and runs the chain construction; whenever the chain yields no EF1
step, the more valuable side set seeds the next maximal independent set.
Each failed round strictly increases v(S), so the loop terminates, and for
additive valuations the increase is by a factor of at least m/(m-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .core import Allocation, Instance, complete_to_maximal_is, evaluate
from .chain import chain_ef1, _require_two_agent_identical_goods


@dataclass(frozen=True)
class SwapIteration:
    """One loop round: the set tried, its value, and which side set seeded
    the next round (``None`` on the terminal round)."""

    source: tuple
    value: Fraction
    chosen: Optional[int]


@dataclass(frozen=True)
class SwapTrace:
    iterations: tuple

    def __len__(self):
        return len(self.iterations)


def swap_ef1(instance: Instance) -> Tuple[Allocation, SwapTrace]:
    """Find a maximal EF1 allocation for 2 agents with identical monotone
    valuation (goods mode; negate chores first)."""
    model = _require_two_agent_identical_goods(instance)
    graph = instance.graph
    m = graph.m
    if m == 0:
        return Allocation([(), ()]), SwapTrace(())

    g_star = max(range(m), key=lambda g: (evaluate(model, (g,)), -g))
    source = complete_to_maximal_is(graph, (g_star,))

    # Distinct maximal independent sets bound the loop; exceeding it means
    # the strict-escalation invariant was violated.
    limit = 3 ** ((m + 2) // 3) + 1
    iterations = []
    for _ in range(limit):
        ordered = tuple(sorted(source))
        outcome = chain_ef1(instance, ordered)
        value = evaluate(model, source)
        if outcome.found:
            iterations.append(SwapIteration(ordered, value, None))
            return outcome.allocation, SwapTrace(tuple(iterations))
        v1 = evaluate(model, outcome.chain.x1)
        v2 = evaluate(model, outcome.chain.x2)
        chosen = 1 if v1 >= v2 else 2
        iterations.append(SwapIteration(ordered, value, chosen))
        source = complete_to_maximal_is(graph, outcome.chain.x1 if chosen == 1 else outcome.chain.x2)
    raise RuntimeError("escalation failed to terminate within the maximal-IS bound")


def iteration_bound_additive(m: int) -> int:
    """Iteration ceiling for additive valuations: ceil(log_{m/(m-1)} m) + 1.

    Computed by exact integer search: the smallest j with (m/(m-1))^j >= m.
    """
    if m < 2:
        raise ValueError("bound is defined for m >= 2")
    j = 0
    num = 1  # m^j
    den = 1  # (m-1)^j
    while num < m * den:
        num *= m
        den *= m - 1
        j += 1
    return j + 1
