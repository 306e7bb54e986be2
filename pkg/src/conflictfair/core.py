"""Exact-arithmetic domain types and definitional checkers.

All values are :class:`fractions.Fraction`; there is no floating point
anywhere in this package, since every fairness test reduces to an exact
sign comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rational = Union[int, Fraction]

GOODS = "goods"
CHORES = "chores"

TABLE_MAX_GOODS = 20


def as_fraction(x: Rational) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class ConflictGraph:
    """Undirected graph over goods 0..m-1; an edge forbids both endpoints
    in one bundle."""

    __slots__ = ("m", "edges", "adj")

    def __init__(self, m: int, edges: Iterable[Sequence[int]] = ()):
        if m < 0:
            raise ValueError("good count must be non-negative")
        normalized = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop on good {u}")
            if not (0 <= u < m and 0 <= v < m):
                raise ValueError(f"edge ({u},{v}) out of range [0,{m})")
            normalized.add((min(u, v), max(u, v)))
        self.m = m
        self.edges = frozenset(normalized)
        adj = [set() for _ in range(m)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self.adj = tuple(frozenset(s) for s in adj)

    def neighbors(self, g: int) -> frozenset:
        return self.adj[g]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def __eq__(self, other):
        return (
            isinstance(other, ConflictGraph)
            and self.m == other.m
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.m, self.edges))

    def __repr__(self):
        return f"ConflictGraph(m={self.m}, edges={sorted(self.edges)})"


class ValuationModel:
    """Base for the valuation family; subclasses implement ``value``."""

    def value(self, subset: frozenset) -> Fraction:
        raise NotImplementedError


@dataclass(frozen=True)
class Additive(ValuationModel):
    """v(S) = sum of fixed per-good values."""

    values: tuple

    def __init__(self, values: Iterable[Rational]):
        object.__setattr__(self, "values", tuple(as_fraction(v) for v in values))

    def value(self, subset: frozenset) -> Fraction:
        total = Fraction(0)
        for g in subset:
            if not 0 <= g < len(self.values):
                raise ValueError(f"good {g} outside additive vector of length {len(self.values)}")
            total += self.values[g]
        return total


@dataclass(frozen=True)
class Uniform(ValuationModel):
    """v(S) = |S|."""

    def value(self, subset: frozenset) -> Fraction:
        return Fraction(len(subset))


class Table(ValuationModel):
    """Explicit oracle over all 2^m subsets, keyed by bitmask (bit g = good g).

    The table must be total and assign the empty set value 0; the per-mode
    monotonicity direction is checked when the model enters an Instance.
    """

    __slots__ = ("m", "entries")

    def __init__(self, m: int, entries: Mapping[int, Rational]):
        if m > TABLE_MAX_GOODS:
            raise ValueError(f"table valuations support at most {TABLE_MAX_GOODS} goods, got {m}")
        if m < 0:
            raise ValueError("good count must be non-negative")
        table = {int(mask): as_fraction(v) for mask, v in entries.items()}
        if len(table) != 1 << m or set(table) != set(range(1 << m)):
            raise ValueError(f"table must cover all {1 << m} subsets of {m} goods")
        if table[0] != 0:
            raise ValueError("table must assign value 0 to the empty set")
        self.m = m
        self.entries = table

    def value(self, subset: frozenset) -> Fraction:
        mask = 0
        for g in subset:
            mask |= 1 << g
        try:
            return self.entries[mask]
        except KeyError:
            raise ValueError(f"table model is missing subset mask {mask}") from None

    def __eq__(self, other):
        return isinstance(other, Table) and self.m == other.m and self.entries == other.entries

    def __repr__(self):
        return f"Table(m={self.m})"


@dataclass(frozen=True)
class Negated(ValuationModel):
    """v(S) = -inner(S); maps goods models to chores models and back."""

    inner: ValuationModel

    def value(self, subset: frozenset) -> Fraction:
        return -self.inner.value(subset)


@dataclass(frozen=True)
class Restriction(ValuationModel):
    """v(S) = inner(S intersected with goods 0..size-1).

    Embeds a model over a good prefix into a larger good universe; used by
    the hardness reduction, whose composed valuation ignores filler goods.
    """

    inner: ValuationModel
    size: int

    def value(self, subset: frozenset) -> Fraction:
        return self.inner.value(frozenset(g for g in subset if g < self.size))


@dataclass(frozen=True)
class Sum(ValuationModel):
    """v(S) = sum of part values."""

    parts: tuple

    def __init__(self, parts: Iterable[ValuationModel]):
        object.__setattr__(self, "parts", tuple(parts))

    def value(self, subset: frozenset) -> Fraction:
        total = Fraction(0)
        for part in self.parts:
            total += part.value(subset)
        return total


def _check_model(model: ValuationModel, m: int, mode: str) -> None:
    """Structural monotonicity/sign check; raises ValueError on violation.

    Goods mode requires monotone non-decreasing with v({}) = 0, chores mode
    monotone non-increasing with v({}) = 0. Tables are checked exhaustively,
    additive vectors by sign.
    """
    if isinstance(model, Additive):
        if len(model.values) != m:
            raise ValueError(f"additive vector has length {len(model.values)}, expected {m}")
        bad = [v for v in model.values if (v < 0 if mode == GOODS else v > 0)]
        if bad:
            raise ValueError(f"additive values must be {'non-negative' if mode == GOODS else 'non-positive'} in {mode} mode")
    elif isinstance(model, Uniform):
        if mode == CHORES:
            raise ValueError("uniform valuation is monotone non-decreasing; negate it for chores")
    elif isinstance(model, Table):
        if model.m != m:
            raise ValueError(f"table is over {model.m} goods, expected {m}")
        for mask in range(1 << m):
            base = model.entries[mask]
            for g in range(m):
                if mask & (1 << g):
                    continue
                grown = model.entries[mask | (1 << g)]
                if mode == GOODS and grown < base:
                    raise ValueError("table is not monotone non-decreasing")
                if mode == CHORES and grown > base:
                    raise ValueError("table is not monotone non-increasing")
    elif isinstance(model, Negated):
        _check_model(model.inner, m, CHORES if mode == GOODS else GOODS)
    elif isinstance(model, Restriction):
        if not 0 <= model.size <= m:
            raise ValueError("restriction size out of range")
        _check_model(model.inner, model.size, mode)
    elif isinstance(model, Sum):
        for part in model.parts:
            _check_model(part, m, mode)
    else:
        raise TypeError(f"unknown valuation model {type(model).__name__}")


class Instance:
    """A fair-division instance: conflict graph, agents, valuations, mode.

    ``valuations`` is either a single model (identical for all agents) or a
    sequence of one model per agent.
    """

    __slots__ = ("graph", "n", "mode", "identical", "models")

    def __init__(
        self,
        graph: ConflictGraph,
        agents: int,
        valuations: Union[ValuationModel, Sequence[ValuationModel]],
        mode: str = GOODS,
    ):
        if agents < 1:
            raise ValueError("need at least one agent")
        if mode not in (GOODS, CHORES):
            raise ValueError(f"mode must be '{GOODS}' or '{CHORES}'")
        if isinstance(valuations, ValuationModel):
            identical = True
            models = (valuations,) * agents
        else:
            models = tuple(valuations)
            if len(models) != agents:
                raise ValueError(f"expected {agents} models, got {len(models)}")
            identical = all(v is models[0] or v == models[0] for v in models)
        seen = []
        for model in models:
            if any(model is s for s in seen):
                continue
            _check_model(model, graph.m, mode)
            seen.append(model)
        self.graph = graph
        self.n = agents
        self.mode = mode
        self.identical = identical
        self.models = models

    @property
    def m(self) -> int:
        return self.graph.m

    def model_for(self, agent: int) -> ValuationModel:
        """Model of agent ``agent`` (0-based)."""
        return self.models[agent]

    @property
    def identical_model(self) -> ValuationModel:
        if not self.identical:
            raise ValueError("instance does not have identical valuations")
        return self.models[0]

    def __eq__(self, other):
        return (
            isinstance(other, Instance)
            and self.graph == other.graph
            and self.n == other.n
            and self.mode == other.mode
            and self.identical == other.identical
            and self.models == other.models
        )

    def __repr__(self):
        kind = "identical" if self.identical else "per-agent"
        return f"Instance(n={self.n}, m={self.m}, {kind}, mode={self.mode})"


class Allocation:
    """Ordered list of n disjoint bundles; some goods may stay unassigned."""

    __slots__ = ("bundles",)

    def __init__(self, bundles: Iterable[Iterable[int]]):
        self.bundles = tuple(frozenset(b) for b in bundles)

    @property
    def n(self) -> int:
        return len(self.bundles)

    @property
    def allocated(self) -> frozenset:
        out = frozenset()
        for b in self.bundles:
            out |= b
        return out

    def unallocated(self, m: int) -> frozenset:
        return frozenset(range(m)) - self.allocated

    def __getitem__(self, i: int) -> frozenset:
        return self.bundles[i]

    def __iter__(self):
        return iter(self.bundles)

    def __eq__(self, other):
        return isinstance(other, Allocation) and self.bundles == other.bundles

    def __hash__(self):
        return hash(self.bundles)

    def __repr__(self):
        return "Allocation(%s)" % ", ".join("{%s}" % ",".join(map(str, sorted(b))) for b in self.bundles)


@dataclass(frozen=True)
class ValidationReport:
    disjoint: bool
    independent: tuple
    wellformed: bool


@dataclass(frozen=True)
class Chain:
    """The allocation sequence built from an ordered maximal independent set,
    with the side sets and per-good (p, q) indices that define each step."""

    steps: tuple
    source: tuple
    x1: frozenset
    x2: frozenset
    p: Mapping[int, int]
    q: Mapping[int, int]


def evaluate(model: ValuationModel, subset: Iterable[int]) -> Fraction:
    """Exact value of ``subset`` under ``model``."""
    return model.value(frozenset(subset))


def value_minus_one(model: ValuationModel, subset: Iterable[int]) -> Fraction:
    """min over g in subset of v(subset - {g}); 0 for the empty set."""
    s = frozenset(subset)
    if not s:
        return Fraction(0)
    return min(model.value(s - {g}) for g in s)


def is_independent_set(graph: ConflictGraph, subset: Iterable[int]) -> bool:
    """True iff no edge has both endpoints in ``subset``."""
    s = set(subset)
    for g in s:
        if graph.adj[g] & s:
            return False
    return True


def validate_allocation(instance: Instance, allocation: Allocation) -> ValidationReport:
    """Check disjointness and per-bundle independence."""
    if allocation.n != instance.n:
        raise ValueError(f"allocation has {allocation.n} bundles, instance has {instance.n} agents")
    m = instance.m
    for b in allocation.bundles:
        for g in b:
            if not 0 <= g < m:
                raise ValueError(f"bundle references good {g} outside [0,{m})")
    total = sum(len(b) for b in allocation.bundles)
    disjoint = total == len(allocation.allocated)
    independent = tuple(is_independent_set(instance.graph, b) for b in allocation.bundles)
    return ValidationReport(disjoint, independent, disjoint and all(independent))


def is_maximal(instance: Instance, allocation: Allocation) -> bool:
    """True iff every unallocated good is adjacent to some good in every
    bundle, so no agent could feasibly receive it."""
    adj = instance.graph.adj
    for g in allocation.unallocated(instance.m):
        for bundle in allocation.bundles:
            if not (adj[g] & bundle):
                return False
    return True


def is_ef1(instance: Instance, allocation: Allocation) -> bool:
    """Envy-freeness up to one good (goods mode) or one chore (chores mode),
    under each agent's own valuation."""
    bundles = allocation.bundles
    if instance.mode == GOODS:
        for i in range(instance.n):
            model = instance.models[i]
            own = model.value(bundles[i])
            for j in range(instance.n):
                if i == j or not bundles[j]:
                    continue
                if own < value_minus_one(model, bundles[j]):
                    return False
        return True
    for i in range(instance.n):
        model = instance.models[i]
        mine = bundles[i]
        if not mine:
            continue
        best_after_removal = max(model.value(mine - {c}) for c in mine)
        for j in range(instance.n):
            if i == j:
                continue
            if best_after_removal < model.value(bundles[j]):
                return False
    return True


def is_ordered_adjacent(first: Allocation, second: Allocation) -> bool:
    """At most one good leaves bundle 1 and at most one enters bundle 2."""
    if first.n != 2 or second.n != 2:
        raise ValueError("ordered adjacency is defined for 2-agent allocations")
    return len(first[0] - second[0]) <= 1 and len(second[1] - first[1]) <= 1


def complete_to_maximal_is(graph: ConflictGraph, seed: Iterable[int]) -> frozenset:
    """Grow ``seed`` into a maximal independent set, scanning candidate goods
    in ascending index."""
    result = set(seed)
    if not is_independent_set(graph, result):
        raise ValueError("seed is not an independent set")
    for g in range(graph.m):
        if g not in result and not (graph.adj[g] & result):
            result.add(g)
    return frozenset(result)
