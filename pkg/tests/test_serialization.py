"""Tests for the JSON file formats."""

import json

import pytest

from uakit.category import FHCategory, build_category, validate_category
from uakit.const import MODE_QUOTIENT, MODEL_COMPLEMENTED, TARGET_CATEGORY, TARGET_HMS
from uakit.exceptions import ModelFileError
from uakit.fh import FHModel
from uakit.hms import HMSModel
from uakit.logic import KInference, SchemaStep
from uakit.serialization import (
    dump_category,
    dump_fh,
    dump_hms,
    dump_proof,
    dump_trace,
    load_category,
    load_fh,
    load_hms,
    load_model,
    load_proof,
    load_trace,
    read_json,
    write_json,
)
from uakit.syntax import Atom
from uakit.transforms import transform_with_trace

from .conftest import fixture_path, load_fixture


class TestFixtures:
    def test_aware_of_p(self, aware_of_p):
        assert aware_of_p.kind == MODEL_COMPLEMENTED
        assert aware_of_p.name == "aware of p, knows p"
        assert aware_of_p.lambda_set(0, "q") == {"q", "~q"}

    def test_implicit_only_partition_form(self, implicit_only):
        assert implicit_only.lambda_set(0, "pq") == {"pq"}
        assert implicit_only.alpha_of(0, "q") == frozenset()

    def test_fh(self):
        model = load_fh(load_fixture("fh-two-worlds.json"))
        assert model.worlds == ("w1", "w2")
        assert model.aware_of(0, "w2") == {"p"}

    def test_dispatch(self):
        assert isinstance(load_model(load_fixture("fh-two-worlds.json")), FHModel)
        assert isinstance(load_model(load_fixture("aware-of-p.json")), HMSModel)


class TestHMS:
    def test_reload(self, implicit_only):
        assert load_hms(dump_hms(implicit_only)) == implicit_only

    def test_lambda_written_as_mapping(self, implicit_only):
        assert dump_hms(implicit_only)["lambda"][0]["pq"] == ["pq"]

    def test_duplicate_block_member(self):
        data = load_fixture("implicit-only.json")
        data["lambda"][0][0] = ["pq", "p~q"]
        with pytest.raises(ModelFileError):
            load_hms(data)

    def test_missing_valuation(self):
        data = load_fixture("aware-of-p.json")
        del data["valuation"]
        with pytest.raises(ModelFileError):
            load_hms(data)

    def test_projection_key_without_arrow(self):
        data = load_fixture("aware-of-p.json")
        data["projections"]["p,q"] = data["projections"].pop("p,q->p")
        with pytest.raises(ModelFileError):
            load_hms(data)


class TestFH:
    def test_reload(self, fh_pq):
        assert load_fh(dump_fh(fh_pq)) == fh_pq

    def test_embedded_has_no_kind(self, fh_pq):
        assert "kind" not in dump_fh(fh_pq, embedded=True)

    def test_bad_atom_name(self, fh_pq):
        data = dump_fh(fh_pq)
        data["atoms"] = ["P"]
        with pytest.raises(ModelFileError):
            load_fh(data)

    def test_kind_required(self, fh_pq):
        with pytest.raises(ModelFileError):
            load_fh(dump_fh(fh_pq, embedded=True))


class TestCategory:
    def test_expanded_form_is_stable(self, fh_pq):
        dumped = dump_category(build_category(fh_pq))
        assert dump_category(load_category(dumped)) == dumped

    def test_short_form(self, fh_pq):
        data = {"kind": "fh-category", "base": dump_fh(fh_pq, embedded=True), "mode": "quotient"}
        category = load_category(data)
        assert category.mode == MODE_QUOTIENT
        assert validate_category(category).ok

    def test_missing_model(self, fh_pq):
        dumped = dump_category(build_category(fh_pq))
        del dumped["models"]["p"]
        with pytest.raises(ModelFileError):
            load_category(dumped)

    def test_unsupported_kind(self):
        with pytest.raises(ModelFileError):
            load_model(load_fixture("explicit-implies-implicit.json"))
        with pytest.raises(ModelFileError):
            load_model([])


class TestProof:
    def test_agents_are_zero_based(self):
        proof = load_proof(load_fixture("explicit-implies-implicit.json"))
        assert proof.lines[0].by == SchemaStep("EK", {"phi": Atom("p"), "i": 0})

    def test_reload(self):
        proof = load_proof(load_fixture("explicit-implies-implicit.json"))
        assert load_proof(dump_proof(proof)) == proof

    def test_k_inference(self):
        data = {
            "lines": [
                {"formula": "p | ~p", "by": {"schema": "PL"}},
                {"formula": "L2 (p | ~p)", "by": {"kinf": {"line": 1, "agent": 2}}},
            ]
        }
        assert load_proof(data).lines[1].by == KInference(1, 1)

    def test_syntax_error_names_line(self):
        data = {"lines": [{"formula": "p &", "by": {"schema": "PL"}}]}
        with pytest.raises(ModelFileError, match="proof line 1"):
            load_proof(data)

    def test_atom_outside_vocabulary(self):
        data = {"atoms": ["p"], "lines": [{"formula": "q", "by": {"schema": "PL"}}]}
        with pytest.raises(ModelFileError):
            load_proof(data)

    def test_agent_zero_rejected(self):
        data = {"lines": [{"formula": "L1 p", "by": {"kinf": {"line": 1, "agent": 0}}}]}
        with pytest.raises(ModelFileError):
            load_proof(data)

    def test_empty(self):
        with pytest.raises(ModelFileError):
            load_proof({"lines": []})


class TestTrace:
    def test_reload(self, fh_pq):
        trace = transform_with_trace(fh_pq, TARGET_HMS)
        loaded = load_trace(dump_trace(trace))
        assert loaded.target == trace.target
        assert loaded.correspondence == trace.correspondence
        assert loaded.steps == trace.steps

    def test_category_target(self, fh_pq):
        loaded = load_trace(dump_trace(transform_with_trace(fh_pq, TARGET_CATEGORY)))
        assert isinstance(loaded.target, FHCategory)

    def test_mismatched_target(self, fh_pq):
        data = dump_trace(transform_with_trace(fh_pq, TARGET_HMS))
        data["target_kind"] = TARGET_CATEGORY
        with pytest.raises(ModelFileError):
            load_trace(data)


class TestFiles:
    def test_write_then_read(self, tmp_path, aware_of_p):
        path = tmp_path / "model.json"
        write_json(path, dump_hms(aware_of_p), pretty=True)
        assert load_hms(read_json(path)) == aware_of_p

    def test_missing_file(self, tmp_path):
        with pytest.raises(ModelFileError):
            read_json(tmp_path / "absent.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{", encoding="utf-8")
        with pytest.raises(ModelFileError):
            read_json(path)

    def test_fixture_is_json(self):
        text = fixture_path("aware-of-p.json").read_text(encoding="utf-8")
        assert json.loads(text)["kind"] == "hms"
