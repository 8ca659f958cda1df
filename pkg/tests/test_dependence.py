import itertools

from hypothesis import given, settings

from polydep import (
    dep,
    dep_pair,
    maximal_conditioned_descendants,
    random_directed_tree,
    random_polytree,
    sep_dag,
    unique_path,
)

from .oracles import naive_top_descendants
from .strategies import query


def names(g, idxs):
    return {g.name(i) for i in idxs}


class TestMaximalConditionedDescendants:
    def test_siblings(self, P1):
        assert names(P1, maximal_conditioned_descendants(P1, "C", list("DE"))) == {"D", "E"}

    def test_masked(self, P1p):
        assert names(P1p, maximal_conditioned_descendants(P1p, "C", list("DF"))) == {"D"}

    def test_empty(self, P1):
        assert maximal_conditioned_descendants(P1, "C", []) == frozenset()

    def test_matches_set_definition(self):
        for seed in range(100):
            pt = random_polytree(7, seed)
            for c in range(pt.n):
                for r in range(4):
                    for Z in itertools.combinations(range(pt.n), r):
                        assert maximal_conditioned_descendants(pt, c, Z) == naive_top_descendants(pt, c, Z)


class TestDepPair:
    def test_conditioned_collider(self, P1):
        assert dep_pair(P1, "A", "B", "C")

    def test_two_top_descendants(self, P1):
        assert not dep_pair(P1, "A", "B", list("DE"))

    def test_chain(self, P2):
        assert not dep_pair(P2, "A", "C", "B")
        assert dep_pair(P2, "A", "C", [])


class TestDep:
    def test_witness_via_descendant(self, P1):
        w = dep(P1, "A", "B", "D")
        assert (P1.name(w.a), P1.name(w.b)) == ("A", "B")
        assert w.path.names(P1) == ["A", "C", "B"]
        assert [(P1.name(c), P1.name(d)) for c, d in w.justification] == [("C", "D")]

    def test_witness_masked_descendant(self, P1p):
        w = dep(P1p, "A", "B", list("DF"))
        assert [(P1p.name(c), P1p.name(d)) for c, d in w.justification] == [("C", "D")]

    def test_collider_in_z(self, P1):
        w = dep(P1, "A", "B", list("CDE"))
        assert w.justification == ((P1.index("C"), None),)

    def test_absent(self, P2):
        assert dep(P2, "A", "C", "B") is None

    def test_smallest_pair(self, P1):
        w = dep(P1, list("AB"), list("DE"), [])
        assert (P1.name(w.a), P1.name(w.b)) == ("A", "D")
        assert w.path == unique_path(P1, "A", "D")

    def test_different_components(self):
        from polydep import build_dag, validate_polytree

        pt = validate_polytree(build_dag(list("ABC"), [("A", "B")]))
        assert dep(pt, "A", "C", []) is None


@settings(max_examples=300, deadline=None)
@given(query())
def test_dep_implies_not_sep_and_is_symmetric(q):
    pt, X, Y, Z = q
    d = dep(pt, X, Y, Z)
    if d is not None:
        assert not sep_dag(pt, X, Y, Z)
        assert d.a in X and d.b in Y
    assert (d is None) == (dep(pt, Y, X, Z) is None)


def test_directed_tree_faithfulness_exhaustive():
    for seed in range(60):
        t = random_directed_tree(2 + seed % 7, seed)
        for a, b in itertools.combinations(range(t.n), 2):
            rest = [v for v in range(t.n) if v not in (a, b)]
            for r in range(len(rest) + 1):
                for Z in itertools.combinations(rest, r):
                    assert (dep(t, {a}, {b}, Z) is not None) == (not sep_dag(t, {a}, {b}, Z))
