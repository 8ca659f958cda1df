import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polydep import (
    build_dag,
    descendants,
    head_to_head_nodes,
    random_directed_tree,
    random_polytree,
    topological_order,
    unique_path,
    validate_polytree,
)
from polydep.errors import (
    CycleError,
    DuplicateEdgeError,
    DuplicateNodeError,
    EmptyNameError,
    SelfLoopError,
    UndirectedCycleError,
    UnknownNodeError,
)
from polydep.graph import default_names, make_path


def names(g, idxs):
    return {g.name(i) for i in idxs}


class TestBuildDag:
    def test_single_node(self):
        g = build_dag(["A"], [])
        assert g.n == 1 and g.edges == ()

    def test_adjacency_readback(self, P2):
        assert names(P2, P2.parents("C")) == {"B"}
        assert names(P2, P2.children("A")) == {"B"}

    def test_indices_follow_input_order(self):
        g = build_dag(["Q", "P"], [("P", "Q")])
        assert [(n.name, n.index) for n in g.nodes] == [("Q", 0), ("P", 1)]

    @pytest.mark.parametrize(
        "nodes, edges, err",
        [
            (["A", "B"], [("A", "B"), ("B", "A")], CycleError),
            (["A", "A"], [], DuplicateNodeError),
            (["A", ""], [], EmptyNameError),
            (["A"], [("A", "B")], UnknownNodeError),
            (["A"], [("A", "A")], SelfLoopError),
            (["A", "B"], [("A", "B"), ("A", "B")], DuplicateEdgeError),
        ],
    )
    def test_errors(self, nodes, edges, err):
        with pytest.raises(err):
            build_dag(nodes, edges)

    def test_cycle_is_named(self):
        with pytest.raises(CycleError) as info:
            build_dag(list("ABC"), [("A", "B"), ("B", "C"), ("C", "A")])
        assert info.value.cycle[0] == info.value.cycle[-1]
        assert set(info.value.cycle) == {"A", "B", "C"}


class TestValidatePolytree:
    def test_star_accepted(self, P1):
        assert validate_polytree(P1) is P1

    def test_tree_accepted(self, P3):
        assert P3.n_components == 1

    def test_forest_accepted(self):
        pt = validate_polytree(build_dag(list("ABC"), [("A", "B")]))
        assert pt.n_components == 2

    def test_g3_rejected(self, G3):
        with pytest.raises(UndirectedCycleError) as info:
            validate_polytree(G3)
        assert set(info.value.cycle) == {"X", "Y", "Z", "W", "V"}


class TestDescendants:
    def test_children_only(self, P1):
        assert names(P1, descendants(P1, "C")) == {"D", "E"}

    def test_transitive(self, P1p):
        assert names(P1p, descendants(P1p, "C")) == {"D", "E", "F"}

    def test_leaf(self, P2):
        assert descendants(P2, "C") == frozenset()

    def test_unknown(self, P2):
        with pytest.raises(UnknownNodeError):
            descendants(P2, "Q")


class TestUniquePath:
    def test_collider(self, P1):
        p = unique_path(P1, "A", "B")
        assert p.names(P1) == ["A", "C", "B"]
        assert names(P1, head_to_head_nodes(p)) == {"C"}

    def test_chain(self, P2):
        p = unique_path(P2, "A", "C")
        assert p.names(P2) == ["A", "B", "C"]
        assert head_to_head_nodes(p) == []

    def test_disconnected(self):
        pt = validate_polytree(build_dag(list("ABC"), [("A", "B")]))
        assert unique_path(pt, "A", "C") is None

    def test_same_endpoint(self, P2):
        with pytest.raises(ValueError):
            unique_path(P2, "A", "A")

    def test_serial_through_collider_parent(self, P1):
        p = make_path(P1, [P1.index(v) for v in "ACD"])
        assert head_to_head_nodes(p) == []


class TestTopologicalOrder:
    def test_chain(self, P2):
        assert [P2.name(i) for i in topological_order(P2)] == ["A", "B", "C"]

    def test_index_tie_break(self, P1):
        assert [P1.name(i) for i in topological_order(P1)] == list("ABCDE")

    def test_single(self):
        assert topological_order(build_dag(["A"], [])) == [0]


class TestRandomPolytree:
    def test_single_node(self):
        assert random_polytree(1, 3).n == 1

    def test_deterministic(self):
        assert random_polytree(5, 7).edges == random_polytree(5, 7).edges

    def test_seeds_differ(self):
        first = random_polytree(6, 0).edges
        assert any(random_polytree(6, s).edges != first for s in range(1, 101))

    def test_zero_nodes(self):
        with pytest.raises(ValueError):
            random_polytree(0, 0)

    @pytest.mark.parametrize("n", range(1, 51))
    def test_always_valid_and_connected(self, n):
        for seed in range(100):
            pt = random_polytree(n, seed)
            validate_polytree(pt.underlying)
            assert len(pt.edges) == n - 1

    def test_directed_tree_has_single_parents(self):
        for seed in range(50):
            t = random_directed_tree(8, seed)
            assert all(len(t.parents(v)) <= 1 for v in range(t.n))


def test_default_names():
    assert default_names(28)[:3] == ["A", "B", "C"]
    assert default_names(28)[25:] == ["Z", "AA", "AB"]


@st.composite
def polytree_and_pair(draw):
    n = draw(st.integers(2, 9))
    pt = random_polytree(n, draw(st.integers(0, 10_000)))
    a, b = draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
    return pt, a, b


@settings(max_examples=200, deadline=None)
@given(polytree_and_pair())
def test_path_reversal(case):
    pt, a, b = case
    p, q = unique_path(pt, a, b), unique_path(pt, b, a)
    assert p.reversed() == q


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 12), st.integers(0, 10_000))
def test_order_and_descendant_invariants(n, seed):
    pt = random_polytree(n, seed)
    order = topological_order(pt)
    assert sorted(order) == list(range(n))
    pos = {v: k for k, v in enumerate(order)}
    assert all(pos[p] < pos[c] for p, c in pt.edges)
    assert all(v not in descendants(pt, v) for v in range(n))
    assert len(pt.edges) == n - pt.n_components
