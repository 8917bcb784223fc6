"""HMS frames: the lattice of state spaces, projections and the event algebra."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .const import (
    CLAUSE_DISJOINT,
    CLAUSE_PROJECTION,
    CLAUSE_PROJECTION_COMMUTES,
    CLAUSE_PROJECTION_SURJECTIVE,
    CLAUSE_SPACES,
)
from .exceptions import EventError, ModelError
from .report import ReportBuilder, ValidationReport
from .syntax import AtomSet, atoms_key, space_order, subsets

_LOGGER = logging.getLogger(__name__)

type StateId = str


@dataclass(frozen=True)
class Event:
    """Canonical event: a base space S(E) and a base D ⊆ S(E).

    An empty base is the vacuous event tagged with its base space.
    """

    base_space: AtomSet
    base: frozenset[StateId]

    @property
    def empty(self) -> bool:
        return not self.base

    def render(self) -> str:
        members = ",".join(sorted(self.base))
        return f"{{{members}}}@[{atoms_key(self.base_space)}]"


@dataclass(frozen=True)
class HMSFrame:
    """Lattice of disjoint spaces indexed by atom subsets, with projections.

    ``projections`` holds at least every covering pair Φ → Φ∖{x}; any other
    stored pair must agree with the composed covering maps.
    """

    vocab: AtomSet
    spaces: Mapping[AtomSet, tuple[StateId, ...]]
    projections: Mapping[tuple[AtomSet, AtomSet], Mapping[StateId, StateId]]

    @cached_property
    def space_keys(self) -> tuple[AtomSet, ...]:
        """Spaces from least to most expressive."""
        return tuple(sorted(self.spaces, key=space_order))

    @cached_property
    def _space_of(self) -> dict[StateId, AtomSet]:
        index: dict[StateId, AtomSet] = {}
        for key in self.space_keys:
            for state in self.spaces[key]:
                index.setdefault(state, key)
        return index

    @cached_property
    def states(self) -> tuple[StateId, ...]:
        """Every state of Ω, grouped by space in lattice order."""
        return tuple(state for key in self.space_keys for state in self.spaces[key])

    @cached_property
    def omega(self) -> frozenset[StateId]:
        return frozenset(self.states)

    @cached_property
    def _memo(self) -> dict[tuple[StateId, AtomSet], StateId]:
        return {}

    @cached_property
    def _closures(self) -> dict[Event, frozenset[StateId]]:
        return {}

    def has_state(self, state: StateId) -> bool:
        return state in self._space_of

    def space_of(self, state: StateId) -> AtomSet:
        try:
            return self._space_of[state]
        except KeyError as err:
            raise ModelError(f"unknown state {state!r}") from err

    def space(self, key: AtomSet) -> tuple[StateId, ...]:
        try:
            return self.spaces[key]
        except KeyError as err:
            raise ModelError(f"no space for [{atoms_key(key)}]") from err

    def project(self, state: StateId, target: AtomSet) -> StateId:
        """Project ``state`` to S_target by removing atoms in sorted order."""
        cached = self._memo.get((state, target))
        if cached is not None:
            return cached
        source = self.space_of(state)
        if not target <= source:
            raise ModelError(
                f"cannot project {state!r} from [{atoms_key(source)}] to [{atoms_key(target)}]"
            )
        current, here = state, source
        for atom in sorted(source - target):
            lower = here - {atom}
            mapping = self.projections.get((here, lower))
            if mapping is None or current not in mapping:
                raise ModelError(
                    f"missing projection [{atoms_key(here)}] -> [{atoms_key(lower)}] "
                    f"for {current!r}"
                )
            current, here = mapping[current], lower
        self._memo[(state, target)] = current
        return current

    def project_set(self, states: Iterable[StateId], target: AtomSet) -> frozenset[StateId]:
        return frozenset(self.project(s, target) for s in states)

    def up_closure(self, event: Event) -> frozenset[StateId]:
        """All states in spaces at least as expressive as S(E) projecting into the base."""
        cached = self._closures.get(event)
        if cached is not None:
            return cached
        result: set[StateId] = set()
        if event.base:
            for key in self.space_keys:
                if event.base_space <= key:
                    result.update(
                        s
                        for s in self.spaces[key]
                        if self.project(s, event.base_space) in event.base
                    )
        closure = frozenset(result)
        self._closures[event] = closure
        return closure

    def up_set(self, states: Iterable[StateId]) -> frozenset[StateId]:
        """Up-closure of a set of states from one space (D^↑ for D ⊆ S_Φ)."""
        listed = frozenset(states)
        if not listed:
            return frozenset()
        keys = {self.space_of(s) for s in listed}
        if len(keys) != 1:
            raise ModelError("states span more than one space")
        return self.up_closure(Event(keys.pop(), listed))


# ---------------------------------------------------------------------------
# Event algebra
# ---------------------------------------------------------------------------


def event_full(frame: HMSFrame, base_space: AtomSet) -> Event:
    """S_Φ^↑."""
    return Event(base_space, frozenset(frame.space(base_space)))


def event_top(frame: HMSFrame) -> Event:
    """Ω, the full event based on S_∅."""
    return event_full(frame, frozenset())


def event_vacuous(base_space: AtomSet) -> Event:
    return Event(base_space, frozenset())


def event_from_states(
    frame: HMSFrame, states: Iterable[StateId], base_space: AtomSet
) -> Event:
    """Canonicalize a raw state set as an event based on S_base_space.

    Raises:
        EventError: the set is not the up-closure of its trace on the base space.
    """
    raw = frozenset(states)
    if not raw:
        return event_vacuous(base_space)
    base = raw & frozenset(frame.space(base_space))
    event = Event(base_space, base)
    closure = frame.up_closure(event)
    if closure != raw:
        extra = sorted(raw - closure)[:3]
        missing = sorted(closure - raw)[:3]
        raise EventError(
            f"set of {len(raw)} states is not an event based on [{atoms_key(base_space)}] "
            f"(outside closure: {extra}, missing: {missing})"
        )
    return event


def event_negate(frame: HMSFrame, event: Event) -> Event:
    """¬E := (S(E) ∖ D)^↑."""
    return Event(event.base_space, frozenset(frame.space(event.base_space)) - event.base)


def event_intersect(frame: HMSFrame, events: Sequence[Event]) -> Event:
    """Conjunction: based on the join of the base spaces."""
    if not events:
        raise ValueError("event_intersect needs at least one event")
    joined: AtomSet = frozenset().union(*(e.base_space for e in events))
    base = frozenset(
        s
        for s in frame.space(joined)
        if all(frame.project(s, e.base_space) in e.base for e in events)
    )
    return Event(joined, base)


def event_union(frame: HMSFrame, events: Sequence[Event]) -> Event:
    """Disjunction by De Morgan: ¬(⋂ ¬E_k)."""
    if not events:
        raise ValueError("event_union needs at least one event")
    return event_negate(frame, event_intersect(frame, [event_negate(frame, e) for e in events]))


def event_subset(frame: HMSFrame, first: Event, second: Event) -> bool:
    """Set inclusion of the up-closures."""
    return frame.up_closure(first) <= frame.up_closure(second)


def enumerate_events(frame: HMSFrame) -> Iterator[Event]:
    """Every event, grouped by base space in lattice order, bases by size."""
    for key in frame.space_keys:
        ordered = sorted(frame.spaces[key])
        for size in range(len(ordered) + 1):
            for combo in combinations(ordered, size):
                yield Event(key, frozenset(combo))


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate_frame(frame: HMSFrame) -> ValidationReport:
    """Check spaces, disjointness, projections, surjectivity and commutation."""
    report = ReportBuilder(f"frame[{atoms_key(frame.vocab)}]")
    expected = set(subsets(frame.vocab))
    for key in sorted(expected - set(frame.spaces), key=space_order):
        report.fail(CLAUSE_SPACES, f"space [{atoms_key(key)}] is missing")
    for key in sorted(set(frame.spaces) - expected, key=space_order):
        report.fail(
            CLAUSE_SPACES, f"space [{atoms_key(key)}] is not indexed by a vocabulary subset"
        )
    for key, states in frame.spaces.items():
        if not states:
            report.fail(CLAUSE_SPACES, f"space [{atoms_key(key)}] is empty")
        if len(set(states)) != len(states):
            report.fail(CLAUSE_SPACES, f"space [{atoms_key(key)}] repeats a state")

    owners: dict[StateId, AtomSet] = {}
    for key in frame.space_keys:
        for state in frame.spaces[key]:
            if state in owners and owners[state] != key:
                report.fail(
                    CLAUSE_DISJOINT,
                    f"state is in [{atoms_key(owners[state])}] and [{atoms_key(key)}]",
                    state=state,
                )
            owners.setdefault(state, key)
    if not report.build().ok:
        return report.build()

    structural_ok = True
    for upper in frame.space_keys:
        for atom in sorted(upper):
            lower = upper - {atom}
            label = f"[{atoms_key(upper)}] -> [{atoms_key(lower)}]"
            mapping = frame.projections.get((upper, lower))
            if mapping is None:
                report.fail(CLAUSE_PROJECTION, f"projection {label} is missing")
                structural_ok = False
                continue
            lower_states = set(frame.spaces[lower])
            for state in frame.spaces[upper]:
                image = mapping.get(state)
                if image is None:
                    report.fail(CLAUSE_PROJECTION, f"projection {label} undefined", state=state)
                    structural_ok = False
                elif image not in lower_states:
                    report.fail(
                        CLAUSE_PROJECTION,
                        f"projection {label} leaves the target space ({image!r})",
                        state=state,
                    )
                    structural_ok = False
            missed = lower_states - set(mapping.values())
            if missed:
                report.fail(
                    CLAUSE_PROJECTION_SURJECTIVE,
                    f"projection {label} misses {sorted(missed)}",
                )
    if not structural_ok:
        return report.build()

    for upper in frame.space_keys:
        for x, y in combinations(sorted(upper), 2):
            via_x = frame.projections[(upper, upper - {x})]
            via_y = frame.projections[(upper, upper - {y})]
            bottom = upper - {x, y}
            from_x = frame.projections[(upper - {x}, bottom)]
            from_y = frame.projections[(upper - {y}, bottom)]
            for state in frame.spaces[upper]:
                if from_x[via_x[state]] != from_y[via_y[state]]:
                    report.fail(
                        CLAUSE_PROJECTION_COMMUTES,
                        f"removing {x} then {y} disagrees with {y} then {x}",
                        state=state,
                    )
    for (upper, lower), mapping in sorted(
        frame.projections.items(),
        key=lambda item: (space_order(item[0][0]), space_order(item[0][1])),
    ):
        if len(upper - lower) == 1 and lower <= upper:
            continue
        if not lower <= upper or upper not in frame.spaces or lower not in frame.spaces:
            report.fail(
                CLAUSE_PROJECTION,
                f"projection [{atoms_key(upper)}] -> [{atoms_key(lower)}] "
                "is not between nested spaces",
            )
            continue
        for state in frame.spaces[upper]:
            if upper == lower:
                if mapping.get(state, state) != state:
                    report.fail(
                        CLAUSE_PROJECTION, "identity projection moves the state", state=state
                    )
            elif mapping.get(state) != frame.project(state, lower):
                report.fail(
                    CLAUSE_PROJECTION_COMMUTES,
                    f"stored projection to [{atoms_key(lower)}] disagrees with composition",
                    state=state,
                )
    result = report.build()
    _LOGGER.debug("Frame validation: %d violations", len(result.violations))
    return result


def build_frame(
    *,
    vocab: Iterable[str],
    spaces: Mapping[AtomSet, Sequence[StateId]],
    projections: Mapping[tuple[AtomSet, AtomSet], Mapping[StateId, StateId]],
) -> HMSFrame:
    return HMSFrame(
        vocab=frozenset(vocab),
        spaces={frozenset(k): tuple(v) for k, v in spaces.items()},
        projections={(frozenset(u), frozenset(lo)): dict(m) for (u, lo), m in projections.items()},
    )
