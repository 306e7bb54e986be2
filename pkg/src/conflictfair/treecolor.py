"""Maximal equitable n-coloring of trees.

A maximal equitable n-coloring partitions part of the vertex set into n
independent classes whose sizes differ by at most one, such that every
uncolored vertex has a neighbor in every class. The construction is a
post-order merge: child subtrees are colored recursively, their classes are
relabeled largest-first, and a rotating offset distributes them so the
merged coloring stays equitable; the root is then either left uncolored or
given the smallest class after freeing that color along offending subtrees.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .core import ConflictGraph


class RootedTree:
    """Tree described by a parent array; children are kept in ascending
    vertex order for deterministic output."""

    __slots__ = ("parents", "root", "children", "order")

    def __init__(self, parents: Sequence[Optional[int]], root: int):
        nv = len(parents)
        if not 0 <= root < nv:
            raise ValueError("root out of range")
        if parents[root] is not None:
            raise ValueError("root must have no parent")
        children = [[] for _ in range(nv)]
        seen_root = 0
        for v, parent in enumerate(parents):
            if parent is None:
                seen_root += 1
                continue
            if not 0 <= parent < nv:
                raise ValueError(f"parent of {v} out of range")
            children[parent].append(v)
        if seen_root != 1:
            raise ValueError("exactly one vertex may lack a parent")
        order = []
        stack = [root]
        while stack:
            u = stack.pop()
            order.append(u)
            stack.extend(reversed(children[u]))
        if len(order) != nv:
            raise ValueError("parent array does not describe a single tree")
        self.parents = tuple(parents)
        self.root = root
        self.children = tuple(tuple(c) for c in children)
        self.order = tuple(order)

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Sequence[int]], root: int = 0) -> "RootedTree":
        edges = [tuple(e) for e in edges]
        if len(edges) != vertex_count - 1:
            raise ValueError("a tree on v vertices has exactly v-1 edges")
        adj = [set() for _ in range(vertex_count)]
        for u, w in edges:
            if u == w or not (0 <= u < vertex_count and 0 <= w < vertex_count):
                raise ValueError(f"bad edge ({u},{w})")
            adj[u].add(w)
            adj[w].add(u)
        parents: List[Optional[int]] = [None] * vertex_count
        seen = {root}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(adj[u]):
                if w not in seen:
                    seen.add(w)
                    parents[w] = u
                    queue.append(w)
        if len(seen) != vertex_count:
            raise ValueError("graph is not connected")
        return cls(parents, root)

    @property
    def vertex_count(self) -> int:
        return len(self.parents)

    def edges(self) -> List[Tuple[int, int]]:
        return [(min(v, p), max(v, p)) for v, p in enumerate(self.parents) if p is not None]

    def to_conflict_graph(self) -> ConflictGraph:
        return ConflictGraph(self.vertex_count, self.edges())


@dataclass(frozen=True)
class PartialColoring:
    """Per-vertex color in 1..n or ``None``, with class sizes."""

    n: int
    colors: tuple
    class_sizes: tuple

    def classes(self) -> List[frozenset]:
        out = [set() for _ in range(self.n)]
        for v, c in enumerate(self.colors):
            if c is not None:
                out[c - 1].add(v)
        return [frozenset(s) for s in out]


def coloring_violations(graph: ConflictGraph, colors: Sequence[Optional[int]], n: int) -> List[str]:
    """All violated maximal-equitable-coloring conditions, empty if valid."""
    problems = []
    sizes = [0] * (n + 1)
    for v, c in enumerate(colors):
        if c is None:
            continue
        if not 1 <= c <= n:
            problems.append(f"vertex {v} has color {c} outside 1..{n}")
            continue
        sizes[c] += 1
    for u, w in graph.edges:
        if colors[u] is not None and colors[u] == colors[w]:
            problems.append(f"adjacent vertices {u},{w} share color {colors[u]}")
    for v, c in enumerate(colors):
        if c is not None:
            continue
        for cls in range(1, n + 1):
            if not any(colors[w] == cls for w in graph.adj[v]):
                problems.append(f"uncolored vertex {v} has no neighbor of color {cls}")
    if max(sizes[1:]) - min(sizes[1:]) > 1:
        problems.append(f"class sizes {sizes[1:]} differ by more than one")
    return problems


def _sizes(coloring: Dict[int, Optional[int]], n: int) -> List[int]:
    sizes = [0] * (n + 1)
    for c in coloring.values():
        if c is not None:
            sizes[c] += 1
    return sizes


def _relabel_desc(coloring: Dict[int, Optional[int]], n: int) -> Dict[int, Optional[int]]:
    """Stable relabel so class 1 is largest; ties keep original order."""
    sizes = _sizes(coloring, n)
    ranked = sorted(range(1, n + 1), key=lambda c: (-sizes[c], c))
    perm = {old: rank + 1 for rank, old in enumerate(ranked)}
    return {v: (perm[c] if c is not None else None) for v, c in coloring.items()}


def _color_subtree(tree: RootedTree, u: int, n: int) -> Dict[int, Optional[int]]:
    children = tree.children[u]
    if not children:
        return {u: 1}

    reports = []
    for child in children:
        coloring = _relabel_desc(_color_subtree(tree, child, n), n)
        sizes = _sizes(coloring, n)
        top = max(sizes[1:])
        higher = sum(1 for c in range(1, n + 1) if sizes[c] == top)
        singular = coloring[child] is not None and higher == 1
        reports.append((child, coloring, higher, singular))

    reports.sort(key=lambda rep: (not rep[3],))  # singular subtrees first, stable
    merged: Dict[int, Optional[int]] = {}
    child_span: Dict[int, List[int]] = {}
    offset = 0
    for child, coloring, higher, _singular in reports:
        for v, c in coloring.items():
            merged[v] = ((c - 1 + offset) % n) + 1 if c is not None else None
        child_span[child] = list(coloring)
        offset = (offset + higher) % n

    singular_count = sum(1 for rep in reports if rep[3])
    if singular_count >= n:
        merged[u] = None
        return merged

    for child in children:
        if merged[child] != n:
            continue
        span = child_span[child]
        sizes = [0] * (n + 1)
        for v in span:
            if merged[v] is not None:
                sizes[merged[v]] += 1
        top = max(sizes[1:])
        # non-singular child: another equally large class exists to trade with
        swap_color = min(c for c in range(1, n + 1) if sizes[c] == top and c != n)
        for v in span:
            if merged[v] == swap_color:
                merged[v] = n
            elif merged[v] == n:
                merged[v] = swap_color
    merged[u] = n
    return merged


def equitable_tree_coloring(tree: RootedTree, n: int) -> PartialColoring:
    """Construct a maximal equitable n-coloring; the root ends up in a class
    of maximum size or uncolored."""
    if n < 1:
        raise ValueError("need at least one color")
    coloring = _color_subtree(tree, tree.root, n)
    colors = tuple(coloring[v] for v in range(tree.vertex_count))
    problems = coloring_violations(tree.to_conflict_graph(), colors, n)
    if problems:
        raise AssertionError("construction violated its own invariants: " + "; ".join(problems))
    sizes = _sizes(coloring, n)
    root_color = colors[tree.root]
    if root_color is not None and sizes[root_color] != max(sizes[1:]):
        raise AssertionError("root is colored but not with a higher color")
    return PartialColoring(n, colors, tuple(sizes[1:]))
