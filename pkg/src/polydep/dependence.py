"""The ``dep`` criterion: graphical certification of dependencies on a polytree."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Path, Polytree, descendants, head_to_head_nodes, unique_path
from .separation import check_triple, path_blocked


@dataclass(frozen=True)
class DepWitness:
    """A pair ``(a, b)`` whose path certifies the dependence.

    ``justification`` has one ``(collider, via)`` entry per head-to-head node
    of ``path`` in path order; ``via`` is ``None`` when the collider itself is
    conditioned on, otherwise it is the collider's unique maximal conditioned
    descendant.
    """

    a: int
    b: int
    path: Path
    justification: tuple[tuple[int, int | None], ...]

    def describe(self, pt: Polytree) -> str:
        parts = []
        for c, via in self.justification:
            if via is None:
                parts.append(f"{pt.name(c)} in Z")
            else:
                parts.append(f"{pt.name(c)} via {pt.name(via)}")
        route = "-".join(self.path.names(pt))
        return route + (f" ({'; '.join(parts)})" if parts else "")


def maximal_conditioned_descendants(pt: Polytree, c, Z) -> frozenset[int]:
    """Members of Z among the descendants of ``c`` that do not descend from another such member."""
    Z = pt.varset(Z)
    below = descendants(pt, c) & Z
    return frozenset(d for d in below if not any(d in descendants(pt, e) for e in below if e != d))


def _justify(pt: Polytree, path: Path, Z: frozenset[int]):
    out = []
    for c in head_to_head_nodes(path):
        if c in Z:
            out.append((c, None))
            continue
        top = maximal_conditioned_descendants(pt, c, Z)
        if len(top) != 1:
            return None
        out.append((c, next(iter(top))))
    return tuple(out)


def _pair_witness(pt: Polytree, a: int, b: int, Z: frozenset[int]) -> DepWitness | None:
    path = unique_path(pt, a, b)
    if path is None or path_blocked(pt, path, Z):
        return None
    just = _justify(pt, path, Z)
    if just is None:
        return None
    return DepWitness(a, b, path, just)


def dep_pair(pt: Polytree, a, b, Z=()) -> bool:
    X, Y, Z = check_triple(pt, a, b, Z)
    (a,), (b,) = X, Y
    if a == b:
        raise ValueError("endpoints must differ")
    return _pair_witness(pt, a, b, Z) is not None


def dep(pt: Polytree, X, Y, Z=()) -> DepWitness | None:
    """Witness for ``dep(X, Y | Z)`` with the smallest ``(a, b)``, or ``None``."""
    X, Y, Z = check_triple(pt, X, Y, Z)
    for a in sorted(X):
        for b in sorted(Y):
            w = _pair_witness(pt, a, b, Z)
            if w is not None:
                return w
    return None
