import itertools

import pytest
from hypothesis import given, settings

from polydep import path_blocked, random_polytree, sep_dag, sep_polytree, unique_path
from polydep.errors import EmptySetError, OverlapError
from polydep.graph import make_path

from .oracles import naive_sep
from .strategies import query


def test_chain_blocked_by_middle(P2):
    assert sep_dag(P2, "A", "C", "B")


def test_collider_descendant_unblocks(P1):
    assert sep_dag(P1, "A", "B", [])
    assert not sep_dag(P1, "A", "B", "D")


def test_g3_two_paths(G3):
    assert sep_dag(G3, "Y", "V", "X")
    assert naive_sep(G3, [G3.index("Y")], [G3.index("V")], {G3.index("X")})


def test_polytree_examples(P1, P1p, P2):
    assert not sep_polytree(P1, "A", "B", "C")
    assert not sep_polytree(P1p, "A", "B", "F")
    assert not sep_polytree(P2, "A", "C", [])


def test_path_blocked_examples(P1, P2):
    acb = make_path(P1, [P1.index(v) for v in "ACB"])
    assert path_blocked(P1, acb, [])
    assert not path_blocked(P1, acb, ["E"])
    abc = unique_path(P2, "A", "C")
    assert path_blocked(P2, abc, ["B"])


def test_errors(P2):
    with pytest.raises(OverlapError) as info:
        sep_dag(P2, "A", ["B", "C"], "B")
    assert info.value.node == "B"
    with pytest.raises(EmptySetError):
        sep_dag(P2, [], "C")
    with pytest.raises(EmptySetError):
        sep_dag(P2, "A", [])


def test_g3_matches_path_enumeration(G3):
    nodes = range(G3.n)
    for a, b in itertools.permutations(nodes, 2):
        rest = [v for v in nodes if v not in (a, b)]
        for r in range(4):
            for Z in itertools.combinations(rest, r):
                assert sep_dag(G3, {a}, {b}, Z) == naive_sep(G3, [a], [b], set(Z))


@settings(max_examples=300, deadline=None)
@given(query())
def test_symmetry_and_pairwise_consistency(q):
    pt, X, Y, Z = q
    s = sep_dag(pt, X, Y, Z)
    assert s == sep_dag(pt, Y, X, Z)
    assert s == all(sep_dag(pt, {a}, {b}, Z) for a in X for b in Y)
    assert s == naive_sep(pt, X, Y, Z)


def test_polytree_agreement_exhaustive():
    for seed in range(200):
        pt = random_polytree(2 + seed % 5, seed)
        for a, b in itertools.permutations(range(pt.n), 2):
            rest = [v for v in range(pt.n) if v not in (a, b)]
            for r in range(len(rest) + 1):
                for Z in itertools.combinations(rest, r):
                    assert sep_polytree(pt, a, b, Z) == sep_dag(pt, {a}, {b}, Z)
