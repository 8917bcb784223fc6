"""Tests for bounded morphisms and the category of FH models."""

from dataclasses import replace

import pytest

from uakit.category import (
    BoundedMorphism,
    build_category,
    check_category_equivalence,
    check_lattice_bounds,
    compose,
    join_meet,
    restrict_model,
    validate_bounded_morphism,
    validate_category,
)
from uakit.const import (
    CLAUSE_ATOMIC_HARMONY,
    CLAUSE_AWARENESS_CONSISTENCY,
    CLAUSE_BACK,
    CLAUSE_COMMUTATION,
    CLAUSE_IDENTITY,
    CLAUSE_SURJECTIVITY,
    MODE_COPY,
    MODE_QUOTIENT,
    PROP_JOIN_EQUIVALENCE,
    PROP_MEET_EQUIVALENCE,
    PROP_MODAL_EQUIVALENCE,
)
from uakit.exceptions import VocabularyError
from uakit.fh import build_fh_model
from uakit.harness import gen_fh

P = frozenset({"p"})
PQ = frozenset({"p", "q"})
EMPTY = frozenset()


def _one_world():
    return build_fh_model(
        vocab=P,
        agents=1,
        worlds=["w"],
        valuation={"p": ["w"]},
        relations=[[["w"]]],
        awareness=[{"w": ["p"]}],
    )


def _with_model(category, key, model):
    """Swap the model at ``key`` and re-point every morphism touching it."""
    old = category.models[key]
    models = {**category.models, key: model}
    morphisms = {
        pair: BoundedMorphism(
            model if m.source is old else m.source,
            model if m.target is old else m.target,
            m.mapping,
        )
        for pair, m in category.morphisms.items()
    }
    return replace(category, models=models, morphisms=morphisms)


class TestRestrict:
    def test_full_copy(self, fh_pq):
        model, morphism = restrict_model(fh_pq, PQ)
        assert len(model.worlds) == len(fh_pq.worlds)
        assert validate_bounded_morphism(morphism).ok

    def test_one_world_to_empty(self):
        model, morphism = restrict_model(_one_world(), EMPTY)
        assert len(model.worlds) == 1
        assert model.valuation == {}
        assert model.aware_of(0, model.worlds[0]) == EMPTY
        assert validate_bounded_morphism(morphism).ok

    def test_quotient_merges_worlds_told_apart_by_q(self, fh_pq):
        model, morphism = restrict_model(fh_pq, P, MODE_QUOTIENT)
        assert len(model.worlds) == 1
        assert validate_bounded_morphism(morphism).ok

    def test_copy_keeps_worlds_told_apart_by_q(self, fh_pq):
        model, _ = restrict_model(fh_pq, P, MODE_COPY)
        assert len(model.worlds) == 2

    def test_outside_vocab(self, fh_pq):
        with pytest.raises(VocabularyError):
            restrict_model(fh_pq, {"r"})


class TestBuild:
    def test_one_atom(self):
        category = build_category(_one_world())
        assert len(category.models) == 2
        assert len(category.morphisms) == 3

    def test_two_atoms_commute(self, fh_pq):
        category = build_category(fh_pq)
        assert len(category.models) == 4
        direct = category.morphism(PQ, EMPTY)
        path = compose(category.morphism(PQ, P), category.morphism(P, EMPTY))
        assert dict(direct.mapping) == dict(path.mapping)

    def test_worlds_disjoint(self, fh_pq):
        category = build_category(fh_pq)
        seen = [w for key in category.keys for w in category.models[key].worlds]
        assert len(seen) == len(set(seen))

    def test_top_worlds_are_tagged(self, fh_pq):
        category = build_category(fh_pq, MODE_COPY)
        assert category.top.worlds == ("w1[p,q]", "w2[p,q]")
        assert not set(category.top.worlds) & set(fh_pq.worlds)
        assert dict(category.entry) == {"w1": "w1[p,q]", "w2": "w2[p,q]"}
        assert category.morphism(PQ, P)("w1[p,q]") == "w1[p]"

    @pytest.mark.parametrize("mode", [MODE_COPY, MODE_QUOTIENT])
    @pytest.mark.parametrize("seed", range(4))
    def test_valid(self, mode, seed):
        assert validate_category(build_category(gen_fh(3, 3, 2, seed), mode)).ok

    @pytest.mark.parametrize("seed", range(4))
    def test_quotient_never_larger(self, seed):
        base = gen_fh(2, 4, 1, seed)
        copy = build_category(base, MODE_COPY)
        quotient = build_category(base, MODE_QUOTIENT)
        for key in copy.keys:
            assert len(quotient.models[key].worlds) <= len(copy.models[key].worlds)

    def test_unknown_mode(self, fh_pq):
        with pytest.raises(ValueError):
            build_category(fh_pq, "merge")

    def test_keys_ordered(self, fh_pq):
        assert build_category(fh_pq).keys == (EMPTY, P, frozenset({"q"}), PQ)


class TestValidateMorphism:
    def test_identity(self, fh_pq):
        identity = BoundedMorphism(fh_pq, fh_pq, {w: w for w in fh_pq.worlds})
        assert validate_bounded_morphism(identity).ok

    def test_collapsing_p(self):
        source = build_fh_model(
            vocab=P,
            agents=1,
            worlds=["a", "b"],
            valuation={"p": ["a"]},
            relations=[[["a"], ["b"]]],
            awareness=[{"a": ["p"], "b": ["p"]}],
        )
        morphism = BoundedMorphism(source, _one_world(), {"a": "w", "b": "w"})
        report = validate_bounded_morphism(morphism)
        assert CLAUSE_ATOMIC_HARMONY in report.clauses()

    def test_not_surjective(self, fh_pq):
        report = validate_bounded_morphism(BoundedMorphism(fh_pq, fh_pq, {"w1": "w1", "w2": "w1"}))
        assert CLAUSE_SURJECTIVITY in report.clauses()

    def test_awareness_mismatch(self, fh_pq):
        aware = replace(fh_pq, awareness=({"w1": PQ, "w2": PQ},))
        report = validate_bounded_morphism(BoundedMorphism(aware, fh_pq, {"w1": "w1", "w2": "w2"}))
        assert CLAUSE_AWARENESS_CONSISTENCY in report.clauses()

    def test_back_fails(self, fh_pq):
        split = replace(fh_pq, relations=((frozenset({"w1"}), frozenset({"w2"})),))
        report = validate_bounded_morphism(BoundedMorphism(split, fh_pq, {"w1": "w1", "w2": "w2"}))
        assert CLAUSE_BACK in report.clauses()


class TestValidateCategory:
    def test_one_world(self):
        assert validate_category(build_category(_one_world())).ok

    def test_repointed_morphism(self, fh_pq):
        category = build_category(fh_pq)
        bad = category.morphism(PQ, EMPTY)
        low = bad.target.worlds
        first, second = bad.source.worlds
        swapped = BoundedMorphism(bad.source, bad.target, {first: low[1], second: low[0]})
        broken = replace(category, morphisms={**category.morphisms, (PQ, EMPTY): swapped})
        assert CLAUSE_COMMUTATION in validate_category(broken).clauses()

    def test_identity_clause(self):
        base = build_fh_model(
            vocab=P,
            agents=1,
            worlds=["a", "b"],
            valuation={"p": ["a", "b"]},
            relations=[[["a", "b"]]],
            awareness=[{"a": ["p"], "b": ["p"]}],
        )
        category = build_category(base)
        top = category.top
        first, second = top.worlds
        swap = BoundedMorphism(top, top, {first: second, second: first})
        broken = replace(category, morphisms={**category.morphisms, (P, P): swap})
        assert CLAUSE_IDENTITY in validate_category(broken).clauses()


class TestEquivalence:
    @pytest.mark.parametrize("seed", range(3))
    def test_copy_category(self, seed):
        report = check_category_equivalence(build_category(gen_fh(2, 3, 1, seed)), 3)
        assert report.ok
        assert report.result(PROP_MODAL_EQUIVALENCE).instances == 5

    def test_empty_vocab(self):
        base = build_fh_model(
            vocab=EMPTY,
            agents=1,
            worlds=["w"],
            valuation={},
            relations=[[["w"]]],
            awareness=[{"w": []}],
        )
        report = check_category_equivalence(build_category(base), 3)
        assert report.ok
        assert report.result(PROP_MODAL_EQUIVALENCE).instances == 0

    def test_corrupted_awareness_witness(self, fh_pq):
        category = build_category(fh_pq)
        lower = category.models[P]
        blind = replace(lower, awareness=({w: EMPTY for w in lower.worlds},))
        report = check_category_equivalence(_with_model(category, P, blind), 2)
        result = report.result(PROP_MODAL_EQUIVALENCE)
        assert not result.ok
        assert "A1" in result.failures[0].detail or "K1" in result.failures[0].detail


class TestLattice:
    def test_join_meet(self, fh_pq):
        category = build_category(fh_pq)
        join, meet = join_meet(category, [P, frozenset({"q"})])
        assert join.vocab == PQ
        assert meet.vocab == EMPTY

    def test_bounds_hold(self, fh_pq):
        report = check_lattice_bounds(build_category(fh_pq), 2)
        assert report.result(PROP_JOIN_EQUIVALENCE).ok
        assert report.result(PROP_MEET_EQUIVALENCE).ok

    def test_empty_family(self, fh_pq):
        with pytest.raises(ValueError):
            join_meet(build_category(fh_pq), [])


@pytest.mark.slow
@pytest.mark.parametrize("mode", [MODE_COPY, MODE_QUOTIENT])
@pytest.mark.parametrize("seed", range(50))
def test_acceptance_equivalence(mode, seed):
    category = build_category(gen_fh(1 + seed % 2, 3, 1 + seed % 2, seed), mode)
    assert validate_category(category).ok
    report = check_category_equivalence(category, 3)
    assert report.ok, report.failed()
