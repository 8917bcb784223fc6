"""Tests for the space lattice and the event algebra."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from uakit.const import (
    CLAUSE_DISJOINT,
    CLAUSE_PROJECTION,
    CLAUSE_PROJECTION_SURJECTIVE,
    CLAUSE_SPACES,
)
from uakit.exceptions import EventError, ModelError
from uakit.lattice import (
    Event,
    build_frame,
    enumerate_events,
    event_from_states,
    event_full,
    event_intersect,
    event_negate,
    event_subset,
    event_top,
    event_union,
    event_vacuous,
    validate_frame,
)

P = frozenset({"p"})
Q = frozenset({"q"})
PQ = frozenset({"p", "q"})
EMPTY = frozenset()

_SPACES = {
    PQ: ["pq", "p~q", "~pq", "~p~q"],
    P: ["p", "~p"],
    Q: ["q", "~q"],
    EMPTY: ["s_empty"],
}
_PROJECTIONS = {
    (PQ, P): {"pq": "p", "p~q": "p", "~pq": "~p", "~p~q": "~p"},
    (PQ, Q): {"pq": "q", "p~q": "~q", "~pq": "q", "~p~q": "~q"},
    (P, EMPTY): {"p": "s_empty", "~p": "s_empty"},
    (Q, EMPTY): {"q": "s_empty", "~q": "s_empty"},
}


def _make_frame(spaces=None, projections=None):
    return build_frame(
        vocab=PQ,
        spaces=_SPACES if spaces is None else spaces,
        projections=_PROJECTIONS if projections is None else projections,
    )


FRAME = _make_frame()
EVENTS = list(enumerate_events(FRAME))


class TestProjection:
    def test_identity(self):
        assert FRAME.project("pq", PQ) == "pq"

    def test_drop_q(self):
        assert FRAME.project("pq", P) == "p"

    def test_to_bottom(self):
        assert {FRAME.project(s, EMPTY) for s in FRAME.states} == {"s_empty"}

    def test_upward_rejected(self):
        with pytest.raises(ModelError):
            FRAME.project("p", PQ)

    def test_unknown_state(self):
        with pytest.raises(ModelError):
            FRAME.space_of("nowhere")


class TestUpClosure:
    def test_full_bottom_is_omega(self):
        assert FRAME.up_closure(event_top(FRAME)) == FRAME.omega

    def test_vacuous(self):
        assert FRAME.up_closure(event_vacuous(P)) == frozenset()

    def test_p(self):
        assert FRAME.up_closure(Event(P, frozenset({"p"}))) == {"p", "pq", "p~q"}

    def test_up_set(self):
        assert FRAME.up_set(["q"]) == {"q", "pq", "~pq"}


class TestEventAlgebra:
    def test_double_negation(self):
        event = Event(P, frozenset({"p"}))
        assert event_negate(FRAME, event_negate(FRAME, event)) == event

    def test_excluded_middle_is_not_omega(self):
        event = Event(P, frozenset({"p"}))
        union = event_union(FRAME, [event, event_negate(FRAME, event)])
        assert FRAME.up_closure(union) == FRAME.up_closure(event_full(FRAME, P))
        assert FRAME.up_closure(union) != FRAME.omega

    def test_intersect_joins_base_spaces(self):
        got = event_intersect(FRAME, [Event(P, frozenset({"p"})), Event(Q, frozenset({"q"}))])
        assert got == Event(PQ, frozenset({"pq"}))

    def test_intersect_needs_events(self):
        with pytest.raises(ValueError):
            event_intersect(FRAME, [])

    def test_subset(self):
        assert event_subset(FRAME, Event(PQ, frozenset({"pq"})), Event(P, frozenset({"p"})))
        assert not event_subset(FRAME, Event(P, frozenset({"p"})), Event(PQ, frozenset({"pq"})))

    def test_from_states_canonical(self):
        got = event_from_states(FRAME, {"p", "pq", "p~q"}, P)
        assert got == Event(P, frozenset({"p"}))

    def test_from_states_rejects_non_event(self):
        with pytest.raises(EventError):
            event_from_states(FRAME, {"pq"}, P)

    def test_from_states_empty(self):
        assert event_from_states(FRAME, (), Q) == event_vacuous(Q)

    def test_render(self):
        assert Event(P, frozenset({"p"})).render() == "{p}@[p]"


class TestEnumerate:
    def test_two_atom_frame_count(self):
        assert len(EVENTS) == 26

    def test_single_state_frame(self):
        frame = build_frame(vocab=EMPTY, spaces={EMPTY: ["*"]}, projections={})
        assert list(enumerate_events(frame)) == [
            Event(EMPTY, frozenset()),
            Event(EMPTY, frozenset({"*"})),
        ]

    def test_power_set_per_space(self):
        assert sum(1 for e in EVENTS if e.base_space == PQ) == 16


events = st.sampled_from(EVENTS)


@given(events)
def test_negation_extension(event):
    full = FRAME.up_closure(event_full(FRAME, event.base_space))
    assert FRAME.up_closure(event_negate(FRAME, event)) == full - FRAME.up_closure(event)


@given(events, events)
def test_intersection_extension(first, second):
    got = FRAME.up_closure(event_intersect(FRAME, [first, second]))
    assert got == FRAME.up_closure(first) & FRAME.up_closure(second)


@given(events, events)
def test_union_extension(first, second):
    joined = event_full(FRAME, first.base_space | second.base_space)
    expected = (FRAME.up_closure(first) | FRAME.up_closure(second)) & FRAME.up_closure(joined)
    assert FRAME.up_closure(event_union(FRAME, [first, second])) == expected


@given(events)
def test_closure_round_trip(event):
    closure = FRAME.up_closure(event)
    assert event_from_states(FRAME, closure, event.base_space) == event


class TestValidateFrame:
    def test_two_atom_frame(self):
        assert validate_frame(FRAME).ok

    def test_missing_space(self):
        spaces = {k: v for k, v in _SPACES.items() if k != Q}
        assert CLAUSE_SPACES in validate_frame(_make_frame(spaces=spaces)).clauses()

    def test_overlapping_spaces(self):
        spaces = {**_SPACES, Q: ["q", "p"]}
        assert CLAUSE_DISJOINT in validate_frame(_make_frame(spaces=spaces)).clauses()

    def test_missing_projection(self):
        projections = {k: v for k, v in _PROJECTIONS.items() if k != (PQ, Q)}
        report = validate_frame(_make_frame(projections=projections))
        assert CLAUSE_PROJECTION in report.clauses()

    def test_not_surjective(self):
        projections = {**_PROJECTIONS, (PQ, P): dict.fromkeys(_SPACES[PQ], "p")}
        report = validate_frame(_make_frame(projections=projections))
        assert CLAUSE_PROJECTION_SURJECTIVE in report.clauses()
