"""Checkable derivations of ``dep``-certified dependencies from the dependence base.

:func:`derive` follows the constructive soundness argument: an edge is
handled by peeling the conditioning set off in four groups; longer paths are
split at an interior node and joined by weak transitivity; unconditioned
colliders are replaced by their unique maximal conditioned descendant.
:func:`verify_trace` re-checks a trace from scratch.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field

from .dependence import dep, dep_pair, maximal_conditioned_descendants
from .errors import DerivationError, ParseError
from .graph import Dag, Polytree, topological_order, unique_path
from .graphoid import Rule, Statement, check_instance, dependence_base
from .separation import check_triple, sep_dag

log = logging.getLogger(__name__)

Triple = tuple[frozenset, frozenset, frozenset]


@dataclass(frozen=True)
class TraceStep:
    index: int
    statement: Statement
    rule: Rule
    premise_indices: tuple[int, ...] = ()
    sep_conditions: tuple[Triple, ...] = ()

    def __post_init__(self):
        # store each condition with its sides in canonical order
        canon = tuple((s.x, s.y, s.z) for s in (Statement.independence(*t) for t in self.sep_conditions))
        object.__setattr__(self, "sep_conditions", canon)

    def format(self, g: Dag) -> str:
        text = f"({self.index}) {self.statement.format(g)} by {self.rule.value}"
        if self.premise_indices:
            text += " on (" + ", ".join(map(str, self.premise_indices)) + ")"
        if self.sep_conditions:
            seps = "; ".join(Statement.independence(*t).format(g) for t in self.sep_conditions)
            text += f" [sep: {seps}]"
        return text

    def to_dict(self, g: Dag) -> dict:
        return {
            "index": self.index,
            "statement": self.statement.to_dict(g),
            "rule": self.rule.value,
            "premises": list(self.premise_indices),
            "sep": [Statement.independence(*t).to_dict(g) for t in self.sep_conditions],
        }


@dataclass(frozen=True)
class Trace:
    graph: Polytree
    goal: Statement
    steps: tuple[TraceStep, ...]

    def format(self) -> str:
        lines = [f"goal: {self.goal.format(self.graph)}"]
        lines += [s.format(self.graph) for s in self.steps]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "goal": self.goal.to_dict(self.graph),
            "steps": [s.to_dict(self.graph) for s in self.steps],
        }


@dataclass(frozen=True)
class ContextPartition:
    """Z split around an edge ``a -> b``: the branches through Pa(a), Ch(a)\\b,
    Pa(b)\\a and Ch(b), and whatever lies in other components."""

    zA: frozenset[int]
    zA_low: frozenset[int]
    zB: frozenset[int]
    zB_low: frozenset[int]
    rest: frozenset[int]

    def parts(self):
        return (self.zA, self.zA_low, self.zB, self.zB_low, self.rest)


def _through(pt: Polytree, node: int, via, Z: frozenset[int]) -> frozenset[int]:
    out = frozenset()
    for v in via:
        out |= pt.branch(node, v)
    return out & Z


def partition_context(pt: Polytree, a, b, Z) -> ContextPartition:
    a, b = pt.index(a), pt.index(b)
    if not pt.has_edge(a, b):
        raise ValueError(f"{pt.name(a)} -> {pt.name(b)} is not an edge")
    Z = pt.varset(Z)
    if a in Z or b in Z:
        raise ValueError("edge endpoints must not be in Z")
    zA = _through(pt, a, pt.parents(a), Z)
    zA_low = _through(pt, a, [c for c in pt.children(a) if c != b], Z)
    zB = _through(pt, b, [p for p in pt.parents(b) if p != a], Z)
    zB_low = _through(pt, b, pt.children(b), Z)
    rest = Z - zA - zA_low - zB - zB_low
    return ContextPartition(zA, zA_low, zB, zB_low, rest)


def _below(pt: Polytree, node: int, Z: frozenset[int]) -> frozenset[int]:
    """Members of Z in Ch(node) or connected to node through Ch(node)."""
    return _through(pt, node, pt.children(node), Z)


def _closest_to_center(indices, length):
    mid = (length - 1) / 2
    return min(indices, key=lambda k: (abs(k - mid), k))


@dataclass
class _Builder:
    pt: Polytree
    order: list[int]
    steps: list[TraceStep] = field(default_factory=list)
    memo: dict[Statement, int] = field(default_factory=dict)

    def _emit(self, stmt, rule, premises=(), seps=()):
        if stmt in self.memo:
            return self.memo[stmt]
        idx = len(self.steps) + 1
        self.steps.append(TraceStep(idx, stmt, rule, tuple(premises), tuple(seps)))
        self.memo[stmt] = idx
        return idx

    def sep(self, x, y, z):
        x, y, z = frozenset(x), frozenset(y), frozenset(z)
        # degenerate antecedents are skipped upstream, so every claim here is real
        if not sep_dag(self.pt, x, y, z):
            raise DerivationError(
                "expected separation fails: " + Statement.independence(x, y, z).format(self.pt)
            )
        return (x, y, z)

    def pair(self, a: int, b: int, Z: frozenset[int]) -> int:
        stmt = Statement.dependence({a}, {b}, Z)
        if stmt in self.memo:
            return self.memo[stmt]
        if not dep_pair(self.pt, a, b, Z):
            log.error("dep fails on subquery %s", stmt.format(self.pt))
            raise DerivationError("dep does not hold for " + stmt.format(self.pt))
        path = unique_path(self.pt, a, b)
        free = [k for k, c in enumerate(path.nodes) if path.collider[k] and c not in Z]
        if free:
            return self._via_descendant(a, b, Z, path.nodes[_closest_to_center(free, len(path))])
        if len(path) == 2:
            return self._edge(a, b, Z)
        k = _closest_to_center(range(1, len(path) - 1), len(path))
        c = path.nodes[k]
        if path.collider[k]:
            return self._via_collider(a, b, Z, c)
        return self._via_chain(a, b, Z, c)

    def _edge(self, a: int, b: int, Z: frozenset[int]) -> int:
        pt = self.pt
        if not pt.has_edge(a, b):
            a, b = b, a
        pos = self.order.index(b)
        pa = frozenset(pt.parents(b))
        pre_rest = frozenset(self.order[:pos]) - pa
        others = pa - {a}

        cur = self._emit(Statement.dependence({a} | pre_rest, {b}, others), Rule.BASE)
        if pre_rest:
            cur = self._emit(
                Statement.dependence({a}, {b}, others), Rule.CONTRACTION1, [cur], [self.sep(pre_rest, {b}, pa)]
            )
        if others:
            cur = self._emit(Statement.dependence({a}, {b} | others), Rule.WEAK_UNION, [cur])
            cur = self._emit(
                Statement.dependence({a}, {b}), Rule.COMPOSITION, [cur], [self.sep({a}, others, ())]
            )

        part = partition_context(pt, a, b, Z)
        cond = frozenset()
        upper = part.zA | part.zA_low
        if upper:
            cur = self._emit(Statement.dependence({a} | upper, {b}), Rule.DECOMPOSITION, [cur])
            cur = self._emit(
                Statement.dependence({a}, {b}, upper), Rule.INTERSECTION, [cur], [self.sep(upper, {b}, {a})]
            )
            cond = upper
        if part.zB:
            cur = self._emit(Statement.dependence({a}, {b} | part.zB, cond), Rule.DECOMPOSITION, [cur])
            cur = self._emit(
                Statement.dependence({a}, {b}, cond | part.zB),
                Rule.CONTRACTION2,
                [cur],
                [self.sep({a}, part.zB, cond)],
            )
            cond = cond | part.zB
        if part.zB_low:
            cur = self._emit(Statement.dependence({a}, {b} | part.zB_low, cond), Rule.DECOMPOSITION, [cur])
            cur = self._emit(
                Statement.dependence({a}, {b}, cond | part.zB_low),
                Rule.INTERSECTION,
                [cur],
                [self.sep({a}, part.zB_low, cond | {b})],
            )
            cond = cond | part.zB_low
        if part.rest:
            cur = self._emit(Statement.dependence({a}, {b} | part.rest, cond), Rule.DECOMPOSITION, [cur])
            cur = self._emit(
                Statement.dependence({a}, {b}, Z), Rule.CONTRACTION2, [cur], [self.sep({a}, part.rest, cond)]
            )
        return cur

    def _via_chain(self, a, b, Z, c) -> int:
        left = self.pair(a, c, Z)
        right = self.pair(c, b, Z)
        return self._emit(
            Statement.dependence({a}, {b}, Z), Rule.WEAK_TRANSITIVITY2, [left, right], [self.sep({a}, {b}, Z | {c})]
        )

    def _join_below(self, a, b, Z, pivot) -> int:
        # pivot is a conditioned collider or its unique top conditioned descendant
        low = _below(self.pt, pivot, Z)
        inner = Z - low - {pivot}
        left = self.pair(a, pivot, inner)
        right = self.pair(pivot, b, inner)
        cur = self._emit(
            Statement.dependence({a}, {b}, Z - low),
            Rule.WEAK_TRANSITIVITY1,
            [left, right],
            [self.sep({a}, {b}, inner)],
        )
        if low:
            cur = self._emit(Statement.dependence({a}, {b} | low, Z - low), Rule.DECOMPOSITION, [cur])
            cur = self._emit(
                Statement.dependence({a}, {b}, Z), Rule.CONTRACTION2, [cur], [self.sep({a}, low, Z - low)]
            )
        return cur

    def _via_collider(self, a, b, Z, c) -> int:
        return self._join_below(a, b, Z, c)

    def _via_descendant(self, a, b, Z, c) -> int:
        (d,) = maximal_conditioned_descendants(self.pt, c, Z)
        return self._join_below(a, b, Z, d)


def derive(pt: Polytree, X, Y, Z=()) -> Trace:
    """Derivation of ``X ⊥̸ Y | Z``; raises :class:`DerivationError` if ``dep`` fails."""
    X, Y, Z = check_triple(pt, X, Y, Z)
    goal = Statement.dependence(X, Y, Z)
    witness = dep(pt, X, Y, Z)
    if witness is None:
        raise DerivationError("dep does not hold for " + goal.format(pt))
    b = _Builder(pt, topological_order(pt))
    a_, b_ = witness.a, witness.b
    cur = b.pair(a_, b_, Z)
    if Y != {b_}:
        cur = b._emit(Statement.dependence({a_}, Y, Z), Rule.DECOMPOSITION, [cur])
    if X != {a_}:
        cur = b._emit(goal, Rule.DECOMPOSITION, [cur])
    return Trace(pt, goal, _prune(b.steps, cur))


def _prune(steps: list[TraceStep], last: int) -> tuple[TraceStep, ...]:
    """Keep only the steps ``last`` depends on, renumbered so ``last`` comes last."""
    needed = set()
    stack = [last]
    while stack:
        i = stack.pop()
        if i not in needed:
            needed.add(i)
            stack.extend(steps[i - 1].premise_indices)
    renumber = {old: new for new, old in enumerate(sorted(needed), start=1)}
    return tuple(
        TraceStep(renumber[s.index], s.statement, s.rule, tuple(renumber[p] for p in s.premise_indices), s.sep_conditions)
        for s in steps
        if s.index in needed
    )


@dataclass(frozen=True)
class Verdict:
    ok: bool
    step: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def verify_trace(pt: Polytree, trace: Trace) -> Verdict:
    """Independent check of a trace; the verdict names the first failing step."""
    base = dependence_base(pt, topological_order(pt))
    seen: dict[int, Statement] = {}
    for k, step in enumerate(trace.steps, start=1):
        if step.index != k:
            return Verdict(False, step.index, f"expected step number {k}")
        stmt = step.statement
        if not stmt.is_dependence:
            return Verdict(False, k, "trace statements must be dependencies")
        if step.rule is Rule.BASE:
            if step.premise_indices or step.sep_conditions:
                return Verdict(False, k, "base step with premises")
            if stmt not in base:
                return Verdict(False, k, "not in the dependence base: " + stmt.format(pt))
        else:
            if any(i not in seen for i in step.premise_indices):
                return Verdict(False, k, "premise refers to a later or missing step")
            premises = [seen[i] for i in step.premise_indices]
            if not check_instance(step.rule, premises, step.sep_conditions, stmt):
                return Verdict(False, k, f"not an instance of {step.rule.value}")
            for x, y, z in step.sep_conditions:
                try:
                    ok = sep_dag(pt, x, y, z)
                except Exception as exc:  # malformed triple
                    return Verdict(False, k, f"bad separation condition: {exc}")
                if not ok:
                    return Verdict(False, k, "separation fails: " + Statement.independence(x, y, z).format(pt))
        seen[k] = stmt
    if not trace.steps:
        return Verdict(False, None, "empty trace")
    if trace.steps[-1].statement != trace.goal:
        return Verdict(False, len(trace.steps), "last statement differs from the goal")
    return Verdict(True)


# -- text form -------------------------------------------------------------------

_STEP = re.compile(
    r"^\((?P<idx>\d+)\)\s+(?P<stmt>.+?)\s+by\s+(?P<rule>\w+)"
    r"(?:\s+on\s+\((?P<prem>[\d,\s]*)\))?"
    r"(?:\s+\[sep:\s*(?P<sep>[^\]]*)\])?\s*$"
)


def parse_trace(pt: Polytree, text: str) -> Trace:
    from .text import parse_statement

    goal = None
    steps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("goal:"):
            goal = parse_statement(pt, line[5:], line=lineno)
            continue
        m = _STEP.match(line)
        if m is None:
            raise ParseError("malformed trace step", line=lineno, column=1)
        try:
            rule = Rule(m["rule"])
        except ValueError:
            raise ParseError(f"unknown rule {m['rule']!r}", line=lineno, column=m.start("rule") + 1) from None
        prem = tuple(int(p) for p in re.split(r"[,\s]+", m["prem"].strip()) if p) if m["prem"] else ()
        seps = ()
        if m["sep"]:
            conds = [parse_statement(pt, part, line=lineno) for part in m["sep"].split(";")]
            if any(c.is_dependence for c in conds):
                raise ParseError("separation conditions must be independencies", line=lineno)
            seps = tuple((c.x, c.y, c.z) for c in conds)
        stmt = parse_statement(pt, m["stmt"], line=lineno)
        steps.append(TraceStep(int(m["idx"]), stmt, rule, prem, seps))
    if goal is None:
        if not steps:
            raise ParseError("empty trace")
        goal = steps[-1].statement
    return Trace(pt, goal, tuple(steps))
