"""d-separation on DAGs, plus the single-path check used on polytrees."""

from __future__ import annotations

from collections import deque

from .errors import EmptySetError, OverlapError
from .graph import Dag, Path, Polytree, descendants, unique_path


def check_triple(g: Dag, X, Y, Z=(), *, allow_empty=False):
    """Resolve X, Y, Z to index sets and enforce non-emptiness and disjointness."""
    X, Y, Z = g.varset(X), g.varset(Y), g.varset(Z)
    if not allow_empty:
        if not X:
            raise EmptySetError("X")
        if not Y:
            raise EmptySetError("Y")
    for a, b in ((X, Y), (X, Z), (Y, Z)):
        common = a & b
        if common:
            raise OverlapError(g.name(min(common)))
    return X, Y, Z


def _ancestral_closure(g: Dag, Z: frozenset[int]) -> set[int]:
    out = set(Z)
    stack = list(Z)
    while stack:
        v = stack.pop()
        for p in g.parents(v):
            if p not in out:
                out.add(p)
                stack.append(p)
    return out


def reachable(g: Dag, X: frozenset[int], Z: frozenset[int]) -> set[int]:
    """Nodes reachable from X along an active trail given Z (Bayes-ball)."""
    anc = _ancestral_closure(g, Z)
    up, down = 0, 1  # arrived from a child / from a parent
    queue = deque((x, up) for x in X)
    visited = set()
    found = set()
    while queue:
        v, d = queue.popleft()
        if (v, d) in visited:
            continue
        visited.add((v, d))
        if v not in Z:
            found.add(v)
        if d == up and v not in Z:
            queue.extend((p, up) for p in g.parents(v))
            queue.extend((c, down) for c in g.children(v))
        elif d == down:
            if v not in Z:
                queue.extend((c, down) for c in g.children(v))
            if v in anc:
                queue.extend((p, up) for p in g.parents(v))
    return found


def sep_dag(g: Dag, X, Y, Z=()) -> bool:
    """True iff every path between X and Y is blocked by Z."""
    X, Y, Z = check_triple(g, X, Y, Z)
    return not (reachable(g, X, Z) & Y)


def path_blocked(g: Dag, path: Path, Z) -> bool:
    Z = g.varset(Z)
    for v, collider in zip(path.interior, path.collider[1:-1]):
        if collider:
            if v not in Z and not (descendants(g, v) & Z):
                return True
        elif v in Z:
            return True
    return False


def sep_polytree(pt: Polytree, a, b, Z=()) -> bool:
    X, Y, Z = check_triple(pt, a, b, Z)
    if len(X) != 1 or len(Y) != 1:
        raise ValueError("sep_polytree takes single nodes")
    path = unique_path(pt, next(iter(X)), next(iter(Y)))
    return path is None or path_blocked(pt, path, Z)
