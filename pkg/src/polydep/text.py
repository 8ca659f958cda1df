"""Line-oriented text formats: graph files, queries and statements.

Graph file::

    # comment
    node A
    edge A -> B

Query::

    dep A,B ; C | D,E

Statement (``!_||_`` for dependence, ``_||_`` for independence)::

    A,B !_||_ C | D,E
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import CycleError, EmptySetError, GraphError, ParseError, UndirectedCycleError
from .graph import Dag, Polytree, build_dag, validate_polytree
from .graphoid import Statement

NAME = r"[A-Za-z0-9_][A-Za-z0-9_.']*"
_NAME_RE = re.compile(rf"^{NAME}$")
_NODE_RE = re.compile(r"^node\s+(?P<name>\S+)\s*$")
_EDGE_RE = re.compile(rf"^edge\s+(?P<p>{NAME})\s*->\s*(?P<c>{NAME})\s*$")

QUERY_KINDS = ("sep", "dep", "derive", "closure")


def parse_graph_file(text: str, polytree: bool = False) -> Dag | Polytree:
    names: list[str] = []
    declared: dict[str, int] = {}
    edges: list[tuple[str, str]] = []
    edge_lines: list[int] = []
    edge_seen: dict[tuple[str, str], int] = {}

    def add(name):
        if name not in declared and name not in names:
            names.append(name)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        col = len(raw) - len(raw.lstrip()) + 1
        if not line or line.startswith("#"):
            continue
        if line.startswith("node") and (len(line) == 4 or line[4].isspace()):
            m = _NODE_RE.match(line)
            if m is None:
                raise ParseError("expected 'node <name>'", lineno, col)
            name = m["name"]
            if not _NAME_RE.match(name):
                raise ParseError(f"invalid node name {name!r}", lineno, col + m.start("name"))
            if name in declared:
                raise ParseError(f"duplicate node {name!r} (first declared on line {declared[name]})", lineno, col)
            add(name)
            declared[name] = lineno
        elif line.startswith("edge") and (len(line) == 4 or line[4].isspace()):
            m = _EDGE_RE.match(line)
            if m is None:
                raise ParseError("expected 'edge <parent> -> <child>'", lineno, col)
            p, c = m["p"], m["c"]
            if p == c:
                raise ParseError(f"self-loop on {p!r}", lineno, col + m.start("c"))
            if (p, c) in edge_seen:
                raise ParseError(f"duplicate edge {p} -> {c} (first on line {edge_seen[(p, c)]})", lineno, col)
            edge_seen[(p, c)] = lineno
            add(p)
            add(c)
            edges.append((p, c))
            edge_lines.append(lineno)
        else:
            raise ParseError(f"unrecognized line {line.split()[0]!r}", lineno, col)

    try:
        g = build_dag(names, edges)
    except CycleError as exc:
        k = _first_failing_prefix(lambda es: build_dag(names, es), edges)
        raise ParseError(str(exc), edge_lines[k], 1) from exc
    except GraphError as exc:
        raise ParseError(str(exc)) from exc
    if polytree:
        try:
            g = validate_polytree(g)
        except UndirectedCycleError as exc:
            k = _first_failing_prefix(lambda es: validate_polytree(build_dag(names, es)), edges)
            raise ParseError(str(exc), edge_lines[k], 1) from exc
    return g


def _first_failing_prefix(check, edges) -> int:
    for k in range(1, len(edges) + 1):
        try:
            check(edges[:k])
        except GraphError:
            return k - 1
    return len(edges) - 1


def format_graph_file(g: Dag) -> str:
    lines = [f"node {name}" for name in g.names]
    lines += [f"edge {g.name(p)} -> {g.name(c)}" for p, c in g.edges]
    return "\n".join(lines) + "\n"


def _split_names(text: str, offset: int, line=None) -> list[tuple[str, int]]:
    """Comma-separated names with their 1-based columns."""
    out = []
    if not text.strip():
        return out
    pos = 0
    for part in text.split(","):
        stripped = part.strip()
        col = offset + pos + (len(part) - len(part.lstrip())) + 1
        if not _NAME_RE.match(stripped):
            raise ParseError(f"invalid node name {stripped!r}", line, col)
        out.append((stripped, col))
        pos += len(part) + 1
    return out


@dataclass(frozen=True)
class Query:
    kind: str
    x: tuple[str, ...]
    y: tuple[str, ...]
    z: tuple[str, ...] = ()

    def resolve(self, g: Dag):
        """Index sets for X, Y, Z; unknown names become :class:`ParseError`."""
        out = []
        for part in (self.x, self.y, self.z):
            try:
                out.append(g.varset(part))
            except GraphError as exc:
                raise ParseError(str(exc)) from exc
        return tuple(out)


def parse_query(text: str) -> Query:
    raw = text.rstrip("\n")
    m = re.match(r"\s*(\S+)", raw)
    if m is None:
        raise ParseError("empty query", column=1)
    kind = m.group(1)
    if kind not in QUERY_KINDS:
        raise ParseError(f"unknown query kind {kind!r}; expected one of {', '.join(QUERY_KINDS)}", column=m.start(1) + 1)
    body_start = m.end(1)
    body = raw[body_start:]
    if body.count(";") != 1:
        raise ParseError("expected exactly one ';' separating X and Y", column=body_start + 1)
    semi = body_start + body.index(";")
    left = raw[body_start:semi]
    right = raw[semi + 1:]
    bar = right.find("|")
    if right.count("|") > 1:
        raise ParseError("more than one '|'", column=semi + 2 + right.rindex("|"))
    if bar >= 0:
        ytext, ztext = right[:bar], right[bar + 1:]
        zoff = semi + 1 + bar + 1
    else:
        ytext, ztext, zoff = right, "", len(raw)
    x = _split_names(left, body_start)
    y = _split_names(ytext, semi + 1)
    z = _split_names(ztext, zoff)
    if not x:
        raise ParseError(str(EmptySetError("X")), column=body_start + 1)
    if not y:
        raise ParseError(str(EmptySetError("Y")), column=semi + 2)
    return Query(kind, tuple(n for n, _ in x), tuple(n for n, _ in y), tuple(n for n, _ in z))


def parse_statement(g: Dag, text: str, line=None) -> Statement:
    if "!_||_" in text:
        sym, dependence = "!_||_", True
    elif "_||_" in text:
        sym, dependence = "_||_", False
    else:
        raise ParseError(f"malformed statement {text.strip()!r}", line)
    left, _, right = text.partition(sym)
    ytext, _, ztext = right.partition("|")
    parts = []
    for chunk in (left, ytext, ztext):
        names = [n for n, _ in _split_names(chunk, 0, line)]
        try:
            parts.append(g.varset(names))
        except GraphError as exc:
            raise ParseError(str(exc), line) from exc
    try:
        if dependence:
            return Statement.dependence(*parts)
        return Statement.independence(*parts)
    except Exception as exc:
        raise ParseError(str(exc), line) from exc
