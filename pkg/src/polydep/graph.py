"""Immutable DAGs and polytrees.

Nodes carry a name and a dense index fixed at build time (input order).
Sets of nodes are ``frozenset`` of indices; anything that needs a stable
order sorts by index.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from heapq import heapify, heappop, heappush
from typing import Iterable, NamedTuple, Sequence

import networkx as nx

from .errors import (
    CycleError,
    DuplicateEdgeError,
    DuplicateNodeError,
    EmptyNameError,
    SelfLoopError,
    UndirectedCycleError,
    UnknownNodeError,
)

VarSet = frozenset  # frozenset[int] of node indices


class NodeId(NamedTuple):
    name: str
    index: int


class Dag:
    """A labeled directed acyclic graph. Build with :func:`build_dag`."""

    def __init__(self, names: Sequence[str], edges: Sequence[tuple[int, int]]):
        # trusted constructor: callers validate first
        self._names = tuple(names)
        self._index = {name: i for i, name in enumerate(self._names)}
        self._edges = tuple(edges)
        parents = [[] for _ in self._names]
        children = [[] for _ in self._names]
        for p, c in self._edges:
            parents[c].append(p)
            children[p].append(c)
        self._parents = tuple(tuple(sorted(ps)) for ps in parents)
        self._children = tuple(tuple(sorted(cs)) for cs in children)

    @property
    def n(self) -> int:
        return len(self._names)

    @property
    def names(self) -> tuple[str, ...]:
        return self._names

    @property
    def nodes(self) -> list[NodeId]:
        return [NodeId(name, i) for i, name in enumerate(self._names)]

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as ``(parent, child)`` index pairs in construction order."""
        return self._edges

    def name(self, i: int) -> str:
        return self._names[i]

    def index(self, node) -> int:
        """Resolve a name, index or :class:`NodeId` to an index."""
        if isinstance(node, NodeId):
            node = node.index
        if isinstance(node, int) and not isinstance(node, bool):
            if 0 <= node < len(self._names):
                return node
            raise UnknownNodeError(node)
        try:
            return self._index[node]
        except (KeyError, TypeError):
            raise UnknownNodeError(node) from None

    def varset(self, nodes: Iterable = ()) -> frozenset[int]:
        if isinstance(nodes, (str, int, NodeId)):
            nodes = [nodes]
        return frozenset(self.index(v) for v in nodes)

    def parents(self, node) -> tuple[int, ...]:
        return self._parents[self.index(node)]

    def children(self, node) -> tuple[int, ...]:
        return self._children[self.index(node)]

    def neighbors(self, node) -> tuple[int, ...]:
        i = self.index(node)
        return tuple(sorted(self._parents[i] + self._children[i]))

    def has_edge(self, parent, child) -> bool:
        return self.index(child) in self._children[self.index(parent)]

    def format_set(self, nodes: Iterable[int]) -> str:
        return ",".join(self._names[i] for i in sorted(nodes))

    @cached_property
    def _descendants(self) -> tuple[frozenset[int], ...]:
        out: list[frozenset[int]] = [frozenset()] * self.n
        for v in reversed(topological_order(self)):
            acc = set()
            for c in self._children[v]:
                acc.add(c)
                acc |= out[c]
            out[v] = frozenset(acc)
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, Dag):
            return NotImplemented
        return self._names == other._names and set(self._edges) == set(other._edges)

    def __hash__(self):
        return hash((self._names, frozenset(self._edges)))

    def __repr__(self):
        arcs = ", ".join(f"{self._names[p]}->{self._names[c]}" for p, c in self._edges)
        return f"{type(self).__name__}(nodes={list(self._names)}, edges=[{arcs}])"


class Polytree(Dag):
    """A DAG whose skeleton is a forest. Obtain via :func:`validate_polytree`."""

    @property
    def underlying(self) -> Dag:
        return Dag(self._names, self._edges)

    @cached_property
    def _component(self) -> tuple[int, ...]:
        comp = [-1] * self.n
        label = 0
        for s in range(self.n):
            if comp[s] >= 0:
                continue
            comp[s] = label
            stack = [s]
            while stack:
                u = stack.pop()
                for w in self.neighbors(u):
                    if comp[w] < 0:
                        comp[w] = label
                        stack.append(w)
            label += 1
        return tuple(comp)

    @property
    def n_components(self) -> int:
        return max(self._component, default=-1) + 1

    def connected(self, a, b) -> bool:
        return self._component[self.index(a)] == self._component[self.index(b)]

    def branch(self, node, via) -> frozenset[int]:
        """Nodes reachable from ``node`` by a skeleton path whose first step is ``via``."""
        u, v = self.index(node), self.index(via)
        if v not in self.neighbors(u):
            raise ValueError(f"{self.name(v)} is not adjacent to {self.name(u)}")
        seen = {u, v}
        stack = [v]
        while stack:
            x = stack.pop()
            for w in self.neighbors(x):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        seen.discard(u)
        return frozenset(seen)


@dataclass(frozen=True)
class Path:
    """A simple skeleton path; ``collider[k]`` flags ``nodes[k]`` as head-to-head.

    Endpoints are never flagged.
    """

    nodes: tuple[int, ...]
    collider: tuple[bool, ...]

    def __len__(self):
        return len(self.nodes)

    @property
    def interior(self) -> tuple[int, ...]:
        return self.nodes[1:-1]

    def reversed(self) -> "Path":
        return Path(self.nodes[::-1], self.collider[::-1])

    def names(self, g: Dag) -> list[str]:
        return [g.name(i) for i in self.nodes]


def make_path(g: Dag, nodes: Sequence[int]) -> Path:
    """Attach head-to-head flags to a node sequence that is a simple skeleton path."""
    nodes = tuple(nodes)
    if len(set(nodes)) != len(nodes):
        raise ValueError("path repeats a node")
    for u, v in zip(nodes, nodes[1:]):
        if not (g.has_edge(u, v) or g.has_edge(v, u)):
            raise ValueError(f"{g.name(u)} and {g.name(v)} are not adjacent")
    flags = [False] * len(nodes)
    for k in range(1, len(nodes) - 1):
        c = nodes[k]
        flags[k] = g.has_edge(nodes[k - 1], c) and g.has_edge(nodes[k + 1], c)
    return Path(nodes, tuple(flags))


def build_dag(nodes: Iterable[str], edges: Iterable[tuple[str, str]]) -> Dag:
    names = []
    seen = set()
    for name in nodes:
        if not isinstance(name, str) or not name:
            raise EmptyNameError()
        if name in seen:
            raise DuplicateNodeError(name)
        seen.add(name)
        names.append(name)
    index = {name: i for i, name in enumerate(names)}

    pairs = []
    seen_edges = set()
    for parent, child in edges:
        for end in (parent, child):
            if end not in index:
                raise UnknownNodeError(end)
        if parent == child:
            raise SelfLoopError(parent)
        e = (index[parent], index[child])
        if e in seen_edges:
            raise DuplicateEdgeError(parent, child)
        seen_edges.add(e)
        pairs.append(e)

    cycle = _find_directed_cycle(len(names), pairs)
    if cycle is not None:
        raise CycleError([names[i] for i in cycle])
    return Dag(names, pairs)


def _find_directed_cycle(n: int, edges: Sequence[tuple[int, int]]):
    children = [[] for _ in range(n)]
    for p, c in edges:
        children[p].append(c)
    state = [0] * n  # 0 new, 1 on stack, 2 done
    for root in range(n):
        if state[root]:
            continue
        stack = [(root, iter(children[root]))]
        trail = [root]
        state[root] = 1
        while stack:
            u, it = stack[-1]
            for w in it:
                if state[w] == 1:
                    return trail[trail.index(w):] + [w]
                if state[w] == 0:
                    state[w] = 1
                    trail.append(w)
                    stack.append((w, iter(children[w])))
                    break
            else:
                state[u] = 2
                trail.pop()
                stack.pop()
    return None


def validate_polytree(g: Dag) -> Polytree:
    """Certify that the skeleton of ``g`` has no cycle; forests are accepted."""
    if isinstance(g, Polytree):
        return g
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k, (u, v) in enumerate(g.edges):
        ru, rv = find(u), find(v)
        if ru == rv:
            # path between u and v through the edges accepted so far
            partial = Dag(g.names, g.edges[:k])
            route = _skeleton_route(partial, u, v)
            raise UndirectedCycleError([g.name(i) for i in route + [u]])
        parent[ru] = rv
    return Polytree(g.names, g.edges)


def _skeleton_route(g: Dag, a: int, b: int):
    prev = {a: None}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            break
        for w in g.neighbors(u):
            if w not in prev:
                prev[w] = u
                queue.append(w)
    if b not in prev:
        return None
    route = []
    x = b
    while x is not None:
        route.append(x)
        x = prev[x]
    return route[::-1]


def descendants(g: Dag, v) -> frozenset[int]:
    """Strict descendants of ``v``."""
    return g._descendants[g.index(v)]


def unique_path(pt: Polytree, a, b) -> Path | None:
    a, b = pt.index(a), pt.index(b)
    if a == b:
        raise ValueError("path endpoints must differ")
    route = _skeleton_route(pt, a, b)
    if route is None:
        return None
    return make_path(pt, route)


def head_to_head_nodes(path: Path) -> list[int]:
    return [v for v, flag in zip(path.nodes, path.collider) if flag]


def topological_order(g: Dag) -> list[int]:
    """Kahn's algorithm, always releasing the smallest ready index first."""
    indeg = [len(g.parents(i)) for i in range(g.n)]
    ready = [i for i in range(g.n) if indeg[i] == 0]
    heapify(ready)
    order = []
    while ready:
        u = heappop(ready)
        order.append(u)
        for c in g.children(u):
            indeg[c] -= 1
            if indeg[c] == 0:
                heappush(ready, c)
    return order


def default_names(n: int) -> list[str]:
    """Spreadsheet-style labels: A..Z, AA, AB, ..."""
    out = []
    for i in range(n):
        label = ""
        k = i + 1
        while k:
            k, r = divmod(k - 1, 26)
            label = chr(ord("A") + r) + label
        out.append(label)
    return out


def _random_tree_edges(n: int, rng: random.Random) -> list[tuple[int, int]]:
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    tree = nx.from_prufer_sequence(seq)
    return sorted(tuple(sorted(e)) for e in tree.edges())


def random_polytree(n: int, seed: int) -> Polytree:
    """Uniform labeled skeleton (Prüfer) with every edge oriented by a fair coin."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    names = default_names(n)
    edges = []
    for u, v in _random_tree_edges(n, rng):
        edges.append((u, v) if rng.random() < 0.5 else (v, u))
    return validate_polytree(build_dag(names, [(names[p], names[c]) for p, c in edges]))


def random_directed_tree(n: int, seed: int) -> Polytree:
    """Uniform labeled skeleton oriented away from a uniformly chosen root."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    names = default_names(n)
    skeleton = _random_tree_edges(n, rng)
    root = rng.randrange(n)
    adj = [[] for _ in range(n)]
    for u, v in skeleton:
        adj[u].append(v)
        adj[v].append(u)
    edges = []
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(adj[u]):
            if w not in seen:
                seen.add(w)
                edges.append((names[u], names[w]))
                queue.append(w)
    return validate_polytree(build_dag(names, edges))
