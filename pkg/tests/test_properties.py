"""Tests for the operator laws of HMS models."""

from dataclasses import replace

import pytest

from uakit.const import (
    PROP_A_STAR_IS_A,
    PROP_DOUBLE_NEGATION,
    PROP_K_IS_L_AND_A,
    PROP_K_IS_L_AND_A_STAR,
    PROP_K_TRUTH,
    PROP_L_TRUTH,
    PROP_OPERATORS_ARE_EVENTS,
    PROP_PI_STAR_DERIVATION,
    PROP_STRONG_PLAUSIBILITY,
    SUITE_ALPHA,
    SUITE_LAMBDA,
    SUITE_PI,
)
from uakit.harness import gen_fh, gen_hms, gen_ikb, mutation_fixtures
from uakit.lattice import enumerate_events
from uakit.properties import derived_laws, event_algebra_laws, operator_laws, projection_lemma
from uakit.transforms import hms_transform


class TestFixtureModels:
    def test_complemented(self, aware_of_p):
        report = operator_laws(aware_of_p)
        assert report.ok, report.failed()
        assert PROP_DOUBLE_NEGATION in report.names()
        assert PROP_STRONG_PLAUSIBILITY in report.names()
        assert report.result(PROP_K_IS_L_AND_A).instances == 26

    def test_ikb(self, implicit_only):
        report = operator_laws(implicit_only)
        assert report.ok, report.failed()
        assert report.result(PROP_PI_STAR_DERIVATION).ok
        assert report.result(PROP_A_STAR_IS_A).instances == 26
        assert PROP_K_TRUTH in report.names()

    def test_projection_lemma(self, aware_of_p):
        assert projection_lemma(aware_of_p).ok

    def test_event_algebra(self, aware_of_p):
        frame = aware_of_p.frame
        assert all(r.ok for r in event_algebra_laws(frame, list(enumerate_events(frame))))


class TestSuites:
    def test_pi_only(self, aware_of_p):
        names = operator_laws(aware_of_p, SUITE_PI).names()
        assert PROP_K_TRUTH in names
        assert PROP_L_TRUTH not in names
        assert PROP_DOUBLE_NEGATION not in names

    def test_lambda_only(self, aware_of_p):
        names = operator_laws(aware_of_p, SUITE_LAMBDA).names()
        assert PROP_L_TRUTH in names
        assert PROP_K_IS_L_AND_A in names
        assert PROP_K_TRUTH not in names

    def test_alpha_without_awareness(self, aware_of_p):
        assert operator_laws(aware_of_p, SUITE_ALPHA).names() == [PROP_OPERATORS_ARE_EVENTS]

    def test_alpha_on_ikb(self, implicit_only):
        names = operator_laws(implicit_only, SUITE_ALPHA).names()
        assert PROP_K_IS_L_AND_A_STAR in names
        assert PROP_L_TRUTH not in names


class TestInvalidModels:
    def test_skipped(self):
        _, model = mutation_fixtures()[0]
        report = operator_laws(model)
        assert not report.ok
        assert report.results == ()
        assert not report.validations[0].ok

    def test_broken_derivation(self, implicit_only):
        alpha = {**implicit_only.alpha[0], "p": frozenset(), "~p": frozenset()}
        broken = replace(implicit_only, alpha=(alpha,))
        results, completed = derived_laws(broken, list(enumerate_events(broken.frame)))
        assert completed is None
        assert [r.name for r in results if not r.ok] == [PROP_PI_STAR_DERIVATION]


@pytest.mark.parametrize("seed", range(3))
def test_generated_complemented(seed):
    report = operator_laws(hms_transform(gen_fh(2, 2, 1, seed)))
    assert report.ok, report.failed()


@pytest.mark.parametrize("seed", range(3))
def test_generated_ikb(seed):
    report = operator_laws(gen_ikb(2, 2, 1, seed))
    assert report.ok, report.failed()


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(200))
def test_acceptance_complemented(seed):
    model = gen_hms(1 + seed % 3, 3, 2, seed)
    report = operator_laws(model)
    assert report.ok, report.failed()


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(200))
def test_acceptance_ikb(seed):
    model = gen_ikb(1 + seed % 3, 3, 2, seed)
    report = operator_laws(model)
    assert report.ok, report.failed()
    assert report.result(PROP_PI_STAR_DERIVATION).ok
