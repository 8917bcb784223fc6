"""Tests for axiom schemas, tautology recognition, proofs and countermodel search."""

import pytest

from uakit.const import SCHEMA_EK, SCHEMA_PL, SCHEMA_T
from uakit.exceptions import SearchBoundError
from uakit.fh import fh_sat
from uakit.harness import gen_fh
from uakit.logic import (
    K_DIST,
    SCHEMAS,
    AXIOM_SCHEMAS,
    KInference,
    ModusPonens,
    Proof,
    ProofLine,
    SchemaStep,
    bounded_countermodel_search,
    check_proof,
    instantiate,
    instantiate_axioms,
    is_tautology_instance,
    soundness_suite,
    tautology_sample,
)
from uakit.parser import parse_formula, parse_many
from uakit.serialization import load_proof
from uakit.syntax import A, K, L, And, Atom, iff

from .conftest import load_fixture

p = Atom("p")


def _proof(*lines):
    return Proof(tuple(ProofLine(parse_formula(text), by) for text, by in lines))


class TestSchemas:
    def test_table_size(self):
        assert len(AXIOM_SCHEMAS) == 12
        assert set(SCHEMAS) == {s.name for s in AXIOM_SCHEMAS} | {K_DIST.name}

    def test_explicit_knowledge(self):
        assert instantiate(SCHEMA_EK, {"phi": p, "i": 0}) == iff(K(0, p), And(L(0, p), A(0, p)))

    def test_missing_psi(self):
        with pytest.raises(ValueError):
            instantiate("K", {"phi": p})

    def test_missing_j(self):
        with pytest.raises(ValueError):
            instantiate("A3", {"phi": p, "i": 0})

    def test_unknown_schema(self):
        with pytest.raises(KeyError):
            instantiate("Z", {"phi": p})

    def test_instance_count(self):
        # nine schemas per agent, three more ranging over a second agent
        assert len(instantiate_axioms([p], 2)) == 9 * 2 + 3 * 4

    def test_empty_pool(self):
        with pytest.raises(ValueError):
            instantiate_axioms([], 1)


class TestTautologies:
    def test_modal_letters(self):
        assert is_tautology_instance(parse_formula("K1 p | ~K1 p"))
        assert not is_tautology_instance(parse_formula("K1 p -> L1 p"))

    def test_sample_is_tautological(self):
        pool = parse_many(["p", "A1 q", "L1 (p & q)"])
        assert all(is_tautology_instance(f) for f in tautology_sample(pool))

    def test_letter_cap(self):
        formula = Atom("a0")
        for n in range(1, 17):
            formula = And(formula, Atom(f"a{n}"))
        with pytest.raises(SearchBoundError):
            is_tautology_instance(formula)


class TestProofs:
    def test_fixture_accepted(self):
        result = check_proof(load_proof(load_fixture("explicit-implies-implicit.json")))
        assert result.ok
        assert result.diagnostics == ()

    def test_k_inference(self):
        proof = _proof(
            ("p | ~p", SchemaStep(SCHEMA_PL)),
            ("L1 (p | ~p)", KInference(1, 0)),
        )
        assert check_proof(proof).ok

    def test_every_bad_line_reported(self):
        proof = _proof(
            ("p -> q", SchemaStep(SCHEMA_PL)),
            ("L1 p -> q", SchemaStep(SCHEMA_T, {"phi": p, "i": 0})),
            ("q", ModusPonens(1, 3)),
            ("L2 (p -> q)", KInference(1, 0)),
            ("p", SchemaStep("Z")),
        )
        result = check_proof(proof)
        assert not result.ok
        assert [d.line for d in result.diagnostics] == [1, 2, 3, 4, 5]
        assert "does not match" in result.diagnostics[1].message
        assert result.as_dict()["ok"] is False

    def test_modus_ponens_either_order(self):
        proof = _proof(
            ("p -> p", SchemaStep(SCHEMA_PL)),
            ("(p -> p) -> (q | ~q)", SchemaStep(SCHEMA_PL)),
            ("q | ~q", ModusPonens(2, 1)),
        )
        assert check_proof(proof).ok

    def test_letter_cap_is_a_diagnostic(self):
        formula = Atom("a0")
        for n in range(1, 17):
            formula = And(formula, Atom(f"a{n}"))
        result = check_proof(Proof((ProofLine(formula, SchemaStep(SCHEMA_PL)),)))
        assert [d.line for d in result.diagnostics] == [1]


class TestSoundness:
    POOL = ("p", "q", "A1 p", "L1 q", "K1 p")

    def test_complemented_model(self, aware_of_p):
        report = soundness_suite(aware_of_p, parse_many(self.POOL), 1)
        assert report.ok, report.failed()
        assert report.result("lpa_EK").instances == len(self.POOL)

    def test_fh_model(self, fh_pq):
        assert soundness_suite(fh_pq, parse_many(self.POOL), 1).ok

    def test_generated_two_agents(self):
        pool = parse_many(["p", "A2 q", "L1 p"])
        report = soundness_suite(gen_fh(2, 3, 2, 11), pool, 2)
        assert report.ok
        assert "lpa_rules" in report.names()


class TestCountermodel:
    def test_implicit_knowledge_not_valid(self):
        formula = parse_formula("L1 p")
        found = bounded_countermodel_search(formula)
        assert found is not None
        model, world = found
        assert model.worlds == ("w1",)
        assert not fh_sat(model, world, formula)

    def test_awareness_does_not_give_knowledge(self):
        formula = parse_formula("A1 p -> K1 p")
        model, world = bounded_countermodel_search(formula, max_worlds=2)
        assert not fh_sat(model, world, formula)

    @pytest.mark.parametrize("text", ["L1 p -> p", "K1 p -> A1 p", "A1 p -> L1 A1 p"])
    def test_valid_formula(self, text):
        assert bounded_countermodel_search(parse_formula(text), max_worlds=3) is None

    def test_second_agent(self):
        found = bounded_countermodel_search(parse_formula("L1 p -> L2 p"), 2, 1, 2)
        assert found is not None

    @pytest.mark.parametrize(
        ("text", "kwargs"),
        [
            ("p", {"max_worlds": 5}),
            ("p & q", {"max_atoms": 1}),
            ("L2 p", {}),
        ],
    )
    def test_bounds(self, text, kwargs):
        with pytest.raises(SearchBoundError):
            bounded_countermodel_search(parse_formula(text), **kwargs)
