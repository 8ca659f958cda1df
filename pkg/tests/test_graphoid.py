import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polydep import Rule, Statement, apply_rule, cwt_closure, dependence_base, random_polytree, sep_dag
from polydep.errors import PolydepError, UniverseTooLargeError
from polydep.graph import build_dag, validate_polytree
from polydep.graphoid import CLOSURE_MAX_NODES, check_instance, set_sep_oracle


def S(g, x, y, z=""):
    return Statement.dependence(g.varset(list(x)), g.varset(list(y)), g.varset(list(z)))


class TestStatement:
    def test_symmetric_canonical_form(self, P2):
        assert S(P2, "C", "AB") == S(P2, "AB", "C")

    def test_format(self, P1):
        assert S(P1, "BA", "C", "ED").format(P1) == "A,B !_||_ C | D,E"
        assert S(P1, "A", "C").format(P1) == "A !_||_ C"
        ind = Statement.independence(P1.varset(["A"]), P1.varset(["B"]))
        assert ind.format(P1) == "A _||_ B"

    @pytest.mark.parametrize("x,y,z", [("A", "A", ""), ("A", "B", "A"), ("", "B", "")])
    def test_rejects_bad_triples(self, P1, x, y, z):
        with pytest.raises(PolydepError):
            S(P1, x, y, z)


class TestDependenceBase:
    def test_chain(self, P2):
        assert dependence_base(P2) == {S(P2, "A", "B"), S(P2, "AB", "C")}

    def test_collider(self, P1):
        assert S(P1, "A", "C", "B") in dependence_base(P1)
        assert S(P1, "B", "C", "A") in dependence_base(P1)

    def test_single_node(self):
        g = validate_polytree(build_dag(["A"], []))
        assert dependence_base(g) == set()

    def test_one_per_edge(self, P1, P1p, P3):
        for g in (P1, P1p, P3):
            assert len(dependence_base(g)) == len(g.edges)

    def test_non_topological_order(self, P2):
        with pytest.raises(ValueError):
            dependence_base(P2, order=["C", "B", "A"])

    def test_base_statements_hold(self):
        from polydep import dep

        for seed in range(50):
            pt = random_polytree(2 + seed % 7, seed)
            for s in dependence_base(pt):
                assert dep(pt, s.x, s.y, s.z) is not None


class TestApplyRule:
    def test_weak_union(self, P2):
        out = apply_rule(Rule.WEAK_UNION, [S(P2, "AB", "C")], set_sep_oracle(P2), range(3))
        assert out == set()

    def test_weak_union_moves_context(self, P1):
        out = apply_rule(Rule.WEAK_UNION, [S(P1, "A", "B", "C")], set_sep_oracle(P1), range(P1.n))
        assert S(P1, "A", "BC") in out and S(P1, "AC", "B") in out

    def test_decomposition(self, P2):
        out = apply_rule(Rule.DECOMPOSITION, [S(P2, "A", "B")], set_sep_oracle(P2), range(3))
        assert S(P2, "AC", "B") in out and S(P2, "A", "BC") in out

    def test_contraction1(self, P2):
        # AB !_||_ C with A _||_ C | B gives B !_||_ C
        out = apply_rule(Rule.CONTRACTION1, [S(P2, "AB", "C")], set_sep_oracle(P2), range(3))
        assert S(P2, "B", "C") in out

    def test_composition_needs_antecedent(self, P2):
        # A _||_ C fails in a chain, so AB !_||_ C does not give B !_||_ C by composition
        out = apply_rule(Rule.COMPOSITION, [S(P2, "AB", "C")], set_sep_oracle(P2), range(3))
        assert S(P2, "B", "C") not in out
        out = apply_rule(Rule.COMPOSITION, [S(P2, "AB", "C")], lambda *_: True, range(3))
        assert S(P2, "B", "C") in out and S(P2, "A", "C") in out

    def test_weak_transitivity2(self, P2):
        out = apply_rule(Rule.WEAK_TRANSITIVITY2, [S(P2, "A", "B"), S(P2, "B", "C")], set_sep_oracle(P2), range(3))
        assert out == {S(P2, "A", "C")}

    def test_weak_transitivity1(self, P1):
        out = apply_rule(Rule.WEAK_TRANSITIVITY1, [S(P1, "A", "C"), S(P1, "B", "C")], set_sep_oracle(P1), range(P1.n))
        assert S(P1, "A", "B", "C") in out

    def test_base_is_not_a_rule(self, P2):
        with pytest.raises(ValueError):
            apply_rule(Rule.BASE, [], set_sep_oracle(P2), range(3))

    def test_independence_premise_rejected(self, P2):
        ind = Statement.independence(P2.varset(["A"]), P2.varset(["C"]), P2.varset(["B"]))
        with pytest.raises(ValueError):
            apply_rule(Rule.SYMMETRY, [ind], set_sep_oracle(P2), range(3))


class TestCheckInstance:
    def test_accepts_and_rejects(self, P2):
        idx = P2.varset
        premises = [S(P2, "AB", "C")]
        seps = [(idx(["A"]), idx(["C"]), idx(["B"]))]
        assert check_instance(Rule.CONTRACTION1, premises, seps, S(P2, "B", "C"))
        assert not check_instance(Rule.CONTRACTION1, premises, [], S(P2, "B", "C"))
        assert not check_instance(Rule.CONTRACTION2, premises, seps, S(P2, "B", "C"))


class TestClosure:
    def test_chain(self, P2):
        c = cwt_closure(P2)
        assert S(P2, "A", "C") in c
        assert S(P2, "A", "C", "B") not in c

    def test_single_node(self):
        assert cwt_closure(validate_polytree(build_dag(["A"], []))) == frozenset()

    def test_too_large(self):
        with pytest.raises(UniverseTooLargeError):
            cwt_closure(random_polytree(CLOSURE_MAX_NODES + 1, 0))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.integers(0, 10_000))
def test_closure_invariants(n, seed):
    pt = random_polytree(n, seed)
    c = cwt_closure(pt)
    assert dependence_base(pt) <= c
    sep = set_sep_oracle(pt)
    for s in c:
        assert not (s.x & s.y or s.x & s.z or s.y & s.z)
        assert not sep_dag(pt, s.x, s.y, s.z)
    # fixpoint: no rule adds anything new
    universe = range(pt.n)
    for rule in Rule:
        if rule is Rule.BASE or rule in (Rule.WEAK_TRANSITIVITY1, Rule.WEAK_TRANSITIVITY2):
            continue
        assert apply_rule(rule, c, sep, universe) <= c
    singles = [s for s in c if len(s.x) == 1 or len(s.y) == 1]
    for p, q in itertools.product(singles, repeat=2):
        for rule in (Rule.WEAK_TRANSITIVITY1, Rule.WEAK_TRANSITIVITY2):
            assert apply_rule(rule, [p, q], sep, universe) <= c
