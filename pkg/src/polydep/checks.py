"""Self-test: ``dep`` against the closure oracle on small random polytrees."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .dependence import dep
from .graph import Polytree, random_polytree
from .graphoid import Statement, cwt_closure


def all_triples(n: int):
    """Every disjoint (X, Y, Z) over ``range(n)`` with X, Y non-empty, one per symmetry class."""
    for assign in itertools.product(range(4), repeat=n):
        X = frozenset(i for i, t in enumerate(assign) if t == 1)
        Y = frozenset(i for i, t in enumerate(assign) if t == 2)
        if not X or not Y or min(X) > min(Y):
            continue
        yield X, Y, frozenset(i for i, t in enumerate(assign) if t == 3)


def compare_with_closure(pt: Polytree) -> tuple[int, list[str]]:
    closure = cwt_closure(pt)
    mismatches = []
    count = 0
    for X, Y, Z in all_triples(pt.n):
        count += 1
        s = Statement.dependence(X, Y, Z)
        by_dep = dep(pt, X, Y, Z) is not None
        if by_dep != (s in closure):
            side = "dep only" if by_dep else "closure only"
            mismatches.append(f"{pt!r}: {s.format(pt)} ({side})")
    return count, mismatches


@dataclass
class SelftestResult:
    graphs: int = 0
    triples: int = 0
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def corpus(n_graphs: int = 300, sizes=(3, 4, 5), seed: int = 0) -> list[Polytree]:
    """Random polytrees cycling through ``sizes``; graph k uses seed ``seed + k``."""
    return [random_polytree(sizes[k % len(sizes)], seed + k) for k in range(n_graphs)]


def equivalence_suite(n_graphs: int = 300, sizes=(3, 4, 5), seed: int = 0) -> SelftestResult:
    res = SelftestResult()
    for pt in corpus(n_graphs, sizes, seed):
        count, bad = compare_with_closure(pt)
        res.graphs += 1
        res.triples += count
        res.mismatches.extend(bad)
    return res
