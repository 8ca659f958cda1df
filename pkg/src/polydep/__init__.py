"""Sound and complete reading of dependencies from polytree-shaped Bayesian networks."""

from .dependence import DepWitness, dep, dep_pair, maximal_conditioned_descendants
from .derivation import Trace, TraceStep, derive, partition_context, verify_trace
from .errors import PolydepError
from .gaussian import covariance, faithfulness_report, partial_correlation, random_model
from .graph import (
    Dag,
    NodeId,
    Path,
    Polytree,
    build_dag,
    descendants,
    head_to_head_nodes,
    random_directed_tree,
    random_polytree,
    topological_order,
    unique_path,
    validate_polytree,
)
from .graphoid import Rule, Statement, apply_rule, cwt_closure, dependence_base
from .separation import path_blocked, sep_dag, sep_polytree

__all__ = [
    "Dag", "DepWitness", "NodeId", "Path", "Polytree", "PolydepError", "Rule", "Statement", "Trace",
    "TraceStep", "apply_rule", "build_dag", "covariance", "cwt_closure", "dep", "dep_pair",
    "dependence_base", "derive", "descendants", "faithfulness_report", "head_to_head_nodes",
    "maximal_conditioned_descendants", "partial_correlation", "partition_context", "path_blocked",
    "random_directed_tree", "random_model", "random_polytree", "sep_dag", "sep_polytree",
    "topological_order", "unique_path", "validate_polytree", "verify_trace",
]
