"""Tests for the formula AST and atom-set utilities."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from uakit.exceptions import VocabularyError
from uakit.syntax import (
    TOP,
    A,
    And,
    Atom,
    K,
    L,
    Not,
    atoms_key,
    atoms_of,
    between,
    conjoin_all,
    depth,
    enumerate_formulas,
    expand_k,
    in_sublanguage,
    make_vocab,
    parse_atoms_key,
    print_formula,
    subsets,
)

p, q = Atom("p"), Atom("q")


def formulas(atoms=("p", "q"), agents=2):
    leaves = st.sampled_from([TOP, *(Atom(a) for a in atoms)])
    agent = st.integers(min_value=0, max_value=agents - 1)

    def extend(children):
        return st.one_of(
            children.map(Not),
            st.tuples(children, children).map(lambda pair: And(*pair)),
            st.tuples(agent, children).map(lambda pair: L(*pair)),
            st.tuples(agent, children).map(lambda pair: A(*pair)),
            st.tuples(agent, children).map(lambda pair: K(*pair)),
        )

    return st.recursive(leaves, extend, max_leaves=8)


class TestAtomsOf:
    def test_nested(self):
        assert atoms_of(K(0, And(p, Not(A(0, q))))) == {"p", "q"}

    def test_top(self):
        assert atoms_of(TOP) == frozenset()

    def test_under_modalities(self):
        assert atoms_of(L(0, A(1, p))) == {"p"}


class TestInSublanguage:
    def test_conjunction_outside(self):
        assert not in_sublanguage(And(p, q), frozenset({"p"}))

    def test_top_in_empty(self):
        assert in_sublanguage(TOP, frozenset())

    def test_awareness_in_larger(self):
        assert in_sublanguage(A(0, p), frozenset({"p", "q"}))

    @given(formulas())
    def test_monotone(self, formula):
        if in_sublanguage(formula, frozenset({"p"})):
            assert in_sublanguage(formula, frozenset({"p", "q"}))


class TestExpandK:
    def test_single(self):
        assert expand_k(K(0, p)) == And(L(0, p), A(0, p))

    def test_no_k(self):
        assert expand_k(p) == p

    def test_nested(self):
        inner = And(L(1, p), A(1, p))
        assert expand_k(K(0, K(1, p))) == And(L(0, inner), A(0, inner))

    @given(formulas())
    def test_keeps_atoms(self, formula):
        assert atoms_of(expand_k(formula)) == atoms_of(formula)

    @given(formulas())
    def test_result_has_no_k(self, formula):
        assert "K" not in print_formula(expand_k(formula))


class TestPrint:
    def test_top(self):
        assert print_formula(TOP) == "T"

    def test_explicit(self):
        assert print_formula(K(0, p)) == "K1 p"

    def test_conjunction_parenthesized(self):
        assert print_formula(And(p, q)) == "(p & q)"

    def test_negated_awareness(self):
        assert print_formula(Not(A(1, q))) == "~A2 q"


class TestEnumerate:
    def test_depth_zero(self):
        assert list(enumerate_formulas(frozenset({"p"}), 1, 0)) == [TOP, p]

    def test_empty_vocab_depth_one(self):
        got = set(enumerate_formulas(frozenset(), 1, 1))
        assert got == {TOP, Not(TOP), L(0, TOP), A(0, TOP), K(0, TOP), And(TOP, TOP)}

    def test_count_one_atom_depth_one(self):
        assert len(list(enumerate_formulas(frozenset({"p"}), 1, 1))) == 14

    def test_duplicate_free(self):
        listed = list(enumerate_formulas(frozenset({"p", "q"}), 2, 2))
        assert len(listed) == len(set(listed))

    def test_deterministic(self):
        first = list(enumerate_formulas(frozenset({"p"}), 2, 2))
        assert first == list(enumerate_formulas(frozenset({"p"}), 2, 2))

    def test_depth_bound(self):
        assert max(depth(f) for f in enumerate_formulas(frozenset({"p"}), 1, 2)) == 2

    def test_negative_depth(self):
        with pytest.raises(ValueError):
            list(enumerate_formulas(frozenset(), 1, -1))


class TestAtomSets:
    def test_key_sorted(self):
        assert atoms_key({"q", "p"}) == "p,q"

    def test_empty_key(self):
        assert atoms_key(()) == ""
        assert parse_atoms_key("") == frozenset()

    def test_key_round_trip(self):
        assert parse_atoms_key(atoms_key({"b", "a", "c"})) == {"a", "b", "c"}

    def test_subsets_order(self):
        assert subsets({"q", "p"}) == [
            frozenset(),
            frozenset({"p"}),
            frozenset({"q"}),
            frozenset({"p", "q"}),
        ]

    def test_between(self):
        got = between(frozenset({"p"}), frozenset({"p", "q"}))
        assert got == [frozenset({"p"}), frozenset({"p", "q"})]

    def test_conjoin_all_empty(self):
        assert conjoin_all([]) == TOP


class TestMakeVocab:
    def test_accepts(self):
        assert make_vocab(["p", "q2", "rain_now"]) == {"p", "q2", "rain_now"}

    @pytest.mark.parametrize("name", ["T", "P", "2p", "", "p-q"])
    def test_rejects_name(self, name):
        with pytest.raises(VocabularyError):
            make_vocab([name])

    def test_rejects_duplicates(self):
        with pytest.raises(VocabularyError):
            make_vocab(["p", "p"])

    def test_cap(self):
        with pytest.raises(VocabularyError):
            make_vocab(["p", "q", "r"], cap=2)

    def test_sixteen_allowed(self):
        names = [f"a{n}" for n in range(16)]
        assert len(make_vocab(names)) == 16
