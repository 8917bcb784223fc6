"""Tests for HMS satisfaction, definedness and transfer checks."""

import json
from pathlib import Path

import pytest
from hypothesis import given

from uakit.category import build_category
from uakit.exceptions import ModelError, UndefinedFormulaError
from uakit.fh import FHAlgebra, truth_set
from uakit.harness import gen_fh
from uakit.lattice import Event
from uakit.parser import parse_formula
from uakit.search import evaluate, explore
from uakit.semantics import (
    HMSEvaluator,
    defined_at,
    extension,
    find_failure,
    find_transfer_failure,
    hms_sat,
    valid_in,
)
from uakit.serialization import load_hms
from uakit.syntax import atoms_of
from uakit.transforms import hms_transform, truncated_hms_transform

from .test_syntax import formulas

P = frozenset({"p"})
PQ = frozenset({"p", "q"})

AWARE = load_hms(
    json.loads((Path(__file__).parent / "fixtures" / "aware-of-p.json").read_text(encoding="utf-8"))
)
BASE = gen_fh(2, 3, 1, 5)


def _sat(model, state, text):
    return hms_sat(model, state, parse_formula(text))


class TestExtension:
    def test_atom(self, aware_of_p):
        assert extension(aware_of_p, parse_formula("p")) == Event(P, frozenset({"p"}))

    def test_conjunction_joins_spaces(self, aware_of_p):
        assert extension(aware_of_p, parse_formula("p & q")) == Event(PQ, frozenset({"pq"}))

    def test_unknown_atom(self, aware_of_p):
        with pytest.raises(UndefinedFormulaError):
            extension(aware_of_p, parse_formula("r"))

    def test_evaluator_memoizes(self, aware_of_p):
        evaluator = HMSEvaluator(aware_of_p)
        formula = parse_formula("K1 p & ~A1 q")
        assert evaluator.extension(formula) is evaluator.extension(formula)


class TestDefinedness:
    def test_bottom_space(self, aware_of_p):
        assert not defined_at(aware_of_p, "s_empty", parse_formula("p"))
        assert defined_at(aware_of_p, "s_empty", parse_formula("T"))

    def test_lower_space(self, aware_of_p):
        assert defined_at(aware_of_p, "~p", parse_formula("K1 p"))
        assert not defined_at(aware_of_p, "~p", parse_formula("p & q"))

    def test_undefined_atoms(self, aware_of_p):
        evaluator = HMSEvaluator(aware_of_p)
        assert evaluator.undefined_atoms("q", parse_formula("p & q")) == P

    def test_sat_raises(self, aware_of_p):
        with pytest.raises(UndefinedFormulaError) as info:
            _sat(aware_of_p, "s_empty", "p")
        assert info.value.atoms == ("p",)
        assert info.value.state == "s_empty"

    def test_unknown_state(self, aware_of_p):
        with pytest.raises(ModelError):
            _sat(aware_of_p, "nowhere", "p")


class TestSatisfaction:
    def test_knows_p(self, aware_of_p):
        assert _sat(aware_of_p, "pq", "K1 p")
        assert _sat(aware_of_p, "p", "K1 p")
        assert not _sat(aware_of_p, "~pq", "K1 p")

    def test_unaware_of_q(self, aware_of_p):
        assert _sat(aware_of_p, "pq", "U1 q")
        assert _sat(aware_of_p, "pq", "~K1 U1 q")

    def test_implicit_without_explicit(self, implicit_only):
        assert _sat(implicit_only, "pq", "L1 q")
        assert not _sat(implicit_only, "pq", "K1 q")
        assert not _sat(implicit_only, "pq", "A1 q")
        assert _sat(implicit_only, "pq", "K1 p")

    def test_awareness_at_lower_state(self, implicit_only):
        assert _sat(implicit_only, "p", "A1 p")


class TestValidity:
    def test_hms(self, aware_of_p):
        assert valid_in(aware_of_p, parse_formula("A1 p"))
        assert not valid_in(aware_of_p, parse_formula("A1 q"))

    def test_failure_is_defined(self, aware_of_p):
        formula = parse_formula("A1 q")
        state = find_failure(aware_of_p, formula)
        assert state is not None
        assert defined_at(aware_of_p, state, formula)

    def test_fh(self, fh_pq):
        assert valid_in(fh_pq, parse_formula("K1 p"))
        assert find_failure(fh_pq, parse_formula("K1 q")) == "w1"

    def test_fh_outside_vocabulary(self, fh_aware):
        assert find_failure(fh_aware, parse_formula("q")) is None

    def test_category(self, fh_pq):
        category = build_category(fh_pq)
        assert valid_in(category, parse_formula("L1 p"))
        assert not valid_in(category, parse_formula("A1 q"))


class TestTransfer:
    def test_agent_mismatch(self, fh_pq):
        with pytest.raises(ModelError):
            find_transfer_failure(fh_pq, hms_transform(gen_fh(2, 2, 2, 0)), {}, 1)

    def test_detects_mismatch(self, fh_pq):
        model = hms_transform(fh_pq)
        swapped = {"w1": {"p,q": "w2"}, "w2": {"p,q": "w1"}}
        found = find_transfer_failure(fh_pq, model, swapped, 1)
        assert found is not None
        assert found[2] == "p,q"


class TestExplore:
    def test_representatives_match_truth_sets(self, fh_aware):
        classes = list(explore(P, 1, 2, (FHAlgebra(fh_aware),)))
        signatures = [(cls.atoms, cls.values) for cls in classes]
        assert len(signatures) == len(set(signatures))
        for cls in classes:
            assert cls.values[0] == truth_set(fh_aware, cls.formula)

    def test_negative_depth(self, fh_aware):
        with pytest.raises(ValueError):
            list(explore(P, 1, -1, (FHAlgebra(fh_aware),)))

    def test_evaluate_uses_cache(self, fh_aware):
        cache = {}
        evaluate(FHAlgebra(fh_aware), parse_formula("~p"), cache)
        assert parse_formula("p") in cache


@given(formulas(atoms=("p", "q"), agents=1))
def test_defined_where_atoms_are_expressible(formula):
    for state in AWARE.frame.states:
        assert defined_at(AWARE, state, formula) == (
            atoms_of(formula) <= AWARE.frame.space_of(state)
        )


@given(formulas(atoms=("p", "q"), agents=1))
def test_every_formula_denotes_an_event(formula):
    event = extension(AWARE, formula)
    assert event.base <= set(AWARE.frame.space(event.base_space))


@given(formulas(atoms=("p", "q"), agents=1))
def test_ikb_and_complemented_agree(formula):
    ikb = truncated_hms_transform(BASE)
    full = hms_transform(BASE)
    assert ikb.frame.up_closure(extension(ikb, formula)) == full.frame.up_closure(
        extension(full, formula)
    )
