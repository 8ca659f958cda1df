"""JSON Schemas for the ``--json`` output of every CLI command."""

_names = {"type": "array", "items": {"type": "string"}}

STATEMENT = {
    "type": "object",
    "required": ["polarity", "x", "y", "z"],
    "properties": {
        "polarity": {"enum": ["dependence", "independence"]},
        "x": _names,
        "y": _names,
        "z": _names,
    },
    "additionalProperties": False,
}

QUERY = {
    "type": "object",
    "required": ["kind", "x", "y", "z"],
    "properties": {"kind": {"enum": ["sep", "dep", "derive", "closure"]}, "x": _names, "y": _names, "z": _names},
}

WITNESS = {
    "type": "object",
    "required": ["a", "b", "path", "colliders"],
    "properties": {
        "a": {"type": "string"},
        "b": {"type": "string"},
        "path": _names,
        "colliders": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["node", "via"],
                "properties": {"node": {"type": "string"}, "via": {"type": ["string", "null"]}},
            },
        },
    },
}

TRACE = {
    "type": "object",
    "required": ["goal", "steps"],
    "properties": {
        "goal": STATEMENT,
        "steps": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["index", "statement", "rule", "premises", "sep"],
                "properties": {
                    "index": {"type": "integer", "minimum": 1},
                    "statement": STATEMENT,
                    "rule": {"type": "string"},
                    "premises": {"type": "array", "items": {"type": "integer"}},
                    "sep": {"type": "array", "items": STATEMENT},
                },
            },
        },
    },
}

REPORT = {
    "type": "object",
    "required": ["n_sep", "n_dep", "n_neither", "max_sep_abs", "min_dep_abs", "violations", "ok"],
    "properties": {
        "n_sep": {"type": "integer"},
        "n_dep": {"type": "integer"},
        "n_neither": {"type": "integer"},
        "max_sep_abs": {"type": "number"},
        "min_dep_abs": {"type": ["number", "null"]},
        "violations": {"type": "array"},
        "ok": {"type": "boolean"},
    },
}

ERROR = {
    "type": "object",
    "required": ["command", "error"],
    "properties": {
        "command": {"type": "string"},
        "error": {
            "type": "object",
            "required": ["message", "line", "column"],
            "properties": {
                "message": {"type": "string"},
                "line": {"type": ["integer", "null"]},
                "column": {"type": ["integer", "null"]},
            },
        },
    },
}


def _command(name, required, props):
    return {
        "type": "object",
        "required": ["command", *required],
        "properties": {"command": {"const": name}, **props},
    }


COMMANDS = {
    "check": _command(
        "check",
        ["query", "holds"],
        {"query": QUERY, "holds": {"type": "boolean"}, "witness": {"anyOf": [WITNESS, {"type": "null"}]}},
    ),
    "closure": _command(
        "closure",
        ["count", "statements"],
        {"count": {"type": "integer"}, "statements": {"type": "array", "items": STATEMENT}},
    ),
    "derive": _command(
        "derive",
        ["query", "holds", "trace", "verified"],
        {
            "query": QUERY,
            "holds": {"type": "boolean"},
            "trace": {"anyOf": [TRACE, {"type": "null"}]},
            "verified": {"type": "boolean"},
        },
    ),
    "verify": _command(
        "verify",
        ["ok", "step", "reason"],
        {"ok": {"type": "boolean"}, "step": {"type": ["integer", "null"]}, "reason": {"type": "string"}},
    ),
    "gen": _command(
        "gen",
        ["nodes", "edges"],
        {
            "nodes": _names,
            "edges": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["parent", "child"],
                    "properties": {"parent": {"type": "string"}, "child": {"type": "string"}},
                },
            },
        },
    ),
    "gaussian-validate": _command(
        "gaussian-validate",
        ["graphs", "models", "zero_tol", "dep_tol", "report"],
        {
            "graphs": {"type": "integer"},
            "models": {"type": "integer"},
            "zero_tol": {"type": "number"},
            "dep_tol": {"type": "number"},
            "report": REPORT,
        },
    ),
    "selftest": _command(
        "selftest",
        ["graphs", "triples", "mismatches", "ok"],
        {
            "graphs": {"type": "integer"},
            "triples": {"type": "integer"},
            "mismatches": _names,
            "ok": {"type": "boolean"},
        },
    ),
}
