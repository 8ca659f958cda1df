"""Linear-Gaussian models on a polytree and exact partial correlations.

Each node is a weighted sum of its parents plus independent zero-mean noise.
The covariance is computed exactly, so conditional independence shows up as
a partial correlation that is zero up to rounding.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .dependence import dep_pair
from .graph import Polytree, topological_order
from .separation import sep_polytree

MAX_REPORT_NODES = 12


@dataclass(frozen=True)
class GaussianPolytreeModel:
    graph: Polytree
    edge_weight: dict[tuple[int, int], float]
    noise_variance: tuple[float, ...]

    def __post_init__(self):
        if set(self.edge_weight) != set(self.graph.edges):
            raise ValueError("edge_weight must have exactly one entry per edge")
        if len(self.noise_variance) != self.graph.n or min(self.noise_variance, default=1.0) <= 0:
            raise ValueError("noise variances must be positive, one per node")

    def to_dict(self) -> dict:
        g = self.graph
        return {
            "edges": [
                {"parent": g.name(p), "child": g.name(c), "weight": self.edge_weight[(p, c)]} for p, c in g.edges
            ],
            "noise_variance": {g.name(i): v for i, v in enumerate(self.noise_variance)},
        }


def random_model(pt: Polytree, seed: int, w_min: float = 0.3, w_max: float = 1.0) -> GaussianPolytreeModel:
    """Weights uniform on ±[w_min, w_max], noise variances uniform on [0.5, 1.5]."""
    if not 0 < w_min <= w_max:
        raise ValueError("need 0 < w_min <= w_max")
    rng = np.random.default_rng(seed)
    weights = {}
    for e in pt.edges:
        mag = rng.uniform(w_min, w_max)
        weights[e] = float(mag if rng.random() < 0.5 else -mag)
    noise = tuple(float(v) for v in rng.uniform(0.5, 1.5, size=pt.n))
    return GaussianPolytreeModel(pt, weights, noise)


def covariance(model: GaussianPolytreeModel) -> np.ndarray:
    g = model.graph
    S = np.zeros((g.n, g.n))
    done: list[int] = []
    for x in topological_order(g):
        pa = g.parents(x)
        w = np.array([model.edge_weight[(u, x)] for u in pa])
        for p in done:
            S[x, p] = S[p, x] = sum(wu * S[u, p] for wu, u in zip(w, pa))
        S[x, x] = (w @ S[np.ix_(pa, pa)] @ w if pa else 0.0) + model.noise_variance[x]
        done.append(x)
    return S


def partial_correlation(S: np.ndarray, a: int, b: int, Z=()) -> float:
    """Correlation of ``a`` and ``b`` given ``Z``, from the precision of the sub-covariance."""
    Z = sorted(Z)
    if a == b or a in Z or b in Z:
        raise ValueError("a, b must differ and lie outside Z")
    idx = [a, b] + Z
    omega = np.linalg.inv(S[np.ix_(idx, idx)])
    return float(-omega[0, 1] / np.sqrt(omega[0, 0] * omega[1, 1]))


@dataclass
class FaithfulnessReport:
    n_sep: int = 0
    n_dep: int = 0
    n_neither: int = 0
    max_sep_abs: float = 0.0
    min_dep_abs: float = float("inf")
    violations: list[dict] = field(default_factory=list)
    triples: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: "FaithfulnessReport") -> None:
        self.n_sep += other.n_sep
        self.n_dep += other.n_dep
        self.n_neither += other.n_neither
        self.max_sep_abs = max(self.max_sep_abs, other.max_sep_abs)
        self.min_dep_abs = min(self.min_dep_abs, other.min_dep_abs)
        self.violations.extend(other.violations)
        self.triples.extend(other.triples)

    def to_dict(self, include_triples: bool = False) -> dict:
        out = {
            "n_sep": self.n_sep,
            "n_dep": self.n_dep,
            "n_neither": self.n_neither,
            "max_sep_abs": self.max_sep_abs,
            "min_dep_abs": None if self.n_dep == 0 else self.min_dep_abs,
            "violations": self.violations,
            "ok": self.ok,
        }
        if include_triples:
            out["triples"] = self.triples
        return out


def faithfulness_report(
    pt: Polytree, model: GaussianPolytreeModel, zero_tol: float = 1e-9, dep_tol: float = 1e-7
) -> FaithfulnessReport:
    """Classify every (a, b, Z) as sep / dep / neither and compare with |partial correlation|."""
    if model.graph != pt:
        raise ValueError("model is defined on a different graph")
    S = covariance(model)
    rep = FaithfulnessReport()
    for a, b, Z, kind in classify_pairs(pt):
        rho = partial_correlation(S, a, b, Z)
        if kind == "sep":
            rep.n_sep += 1
            rep.max_sep_abs = max(rep.max_sep_abs, abs(rho))
            bad = abs(rho) >= zero_tol
        elif kind == "dep":
            rep.n_dep += 1
            rep.min_dep_abs = min(rep.min_dep_abs, abs(rho))
            bad = abs(rho) <= dep_tol
        else:
            rep.n_neither += 1
            bad = False
        row = {"a": pt.name(a), "b": pt.name(b), "z": [pt.name(v) for v in Z], "class": kind, "rho": rho}
        rep.triples.append(row)
        if bad:
            rep.violations.append(row)
    return rep


@lru_cache(maxsize=64)
def classify_pairs(pt: Polytree) -> tuple[tuple[int, int, tuple[int, ...], str], ...]:
    """Every ``(a, b, Z)`` with a < b, labeled "sep", "dep" or "neither"."""
    if pt.n > MAX_REPORT_NODES:
        raise ValueError(f"report enumerates all triples; at most {MAX_REPORT_NODES} nodes")
    out = []
    for a, b in itertools.combinations(range(pt.n), 2):
        others = [v for v in range(pt.n) if v not in (a, b)]
        for r in range(len(others) + 1):
            for Z in itertools.combinations(others, r):
                if sep_polytree(pt, a, b, Z):
                    kind = "sep"
                elif dep_pair(pt, a, b, Z):
                    kind = "dep"
                else:
                    kind = "neither"
                out.append((a, b, Z, kind))
    return tuple(out)
