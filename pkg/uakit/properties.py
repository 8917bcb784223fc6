"""Operator laws of HMS models, checked exhaustively over the event lattice."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Sequence
from dataclasses import replace
from itertools import combinations

from .const import (
    CLAUSE_COHERENCE,
    CLAUSE_COINCIDENCE,
    CLAUSE_EXPLICIT_MEASURABILITY,
    CLAUSE_IMPLICIT_MEASURABILITY,
    CLAUSE_PI_CONFINEMENT,
    CLAUSE_PI_PPI,
    CLAUSE_PI_PPK,
    CLAUSE_PI_REFLEXIVITY,
    CLAUSE_PI_STATIONARITY,
    CLAUSE_PI_TOTAL,
    DEFAULT_FAMILY_SIZE,
    PROP_A_CONJUNCTION,
    PROP_A_INTROSPECTION,
    PROP_A_IS_LA,
    PROP_A_STAR_IS_A,
    PROP_AA_SELF_REFLECTION,
    PROP_AK_SELF_REFLECTION,
    PROP_AL_IS_A,
    PROP_AU_INTROSPECTION,
    PROP_DOUBLE_NEGATION,
    PROP_INTERSECTION_EXTENSION,
    PROP_JOINT_MEASURABILITY,
    PROP_K_CONJUNCTION,
    PROP_K_IS_L_AND_A,
    PROP_K_IS_L_AND_A_STAR,
    PROP_K_MONOTONICITY,
    PROP_K_NECESSITATION,
    PROP_K_POSITIVE_INTROSPECTION,
    PROP_K_TRUTH,
    PROP_K_WEAK_NEGATIVE_INTROSPECTION,
    PROP_KU_INTROSPECTION,
    PROP_L_CONJUNCTION,
    PROP_L_MONOTONICITY,
    PROP_L_NECESSITATION,
    PROP_L_NEGATIVE_INTROSPECTION,
    PROP_L_POSITIVE_INTROSPECTION,
    PROP_L_TRUTH,
    PROP_NEGATION_EXTENSION,
    PROP_OPERATORS_ARE_EVENTS,
    PROP_PI_PROJECTION_LEMMA,
    PROP_PI_STAR_ABOVE_AWARENESS,
    PROP_PI_STAR_AT_STATE,
    PROP_PI_STAR_BELOW_AWARENESS,
    PROP_PI_STAR_DERIVATION,
    PROP_PI_STAR_VALID,
    PROP_PLAUSIBILITY,
    PROP_STRONG_PLAUSIBILITY,
    PROP_SYMMETRY,
    PROP_U_IS_LU,
    PROP_UNION_EXTENSION,
    PROP_WEAK_NECESSITATION,
    PROP_WEAK_NEGATIVE_INTROSPECTION_II,
    SUITE_ALL,
    SUITE_ALPHA,
    SUITE_LAMBDA,
    SUITE_OPERATORS,
    SUITE_PI,
)
from .exceptions import DerivationError, EventError
from .hms import (
    HMSModel,
    a_op,
    a_star_op,
    derive_pi_star,
    k_op,
    l_op,
    validate_lambda,
    validate_model,
    validate_pi,
)
from .lattice import (
    Event,
    HMSFrame,
    enumerate_events,
    event_full,
    event_intersect,
    event_negate,
    event_subset,
    event_top,
    event_union,
    event_vacuous,
)
from .report import PropertyReport, PropertyResult, PropertyTally, Witness
from .syntax import atoms_key, between, subsets

_LOGGER = logging.getLogger(__name__)

type _Operator = Callable[[HMSModel, int, Event], Event]

_PI_CLAUSES = (
    CLAUSE_PI_TOTAL,
    CLAUSE_PI_CONFINEMENT,
    CLAUSE_PI_REFLEXIVITY,
    CLAUSE_PI_STATIONARITY,
    CLAUSE_PI_PPI,
    CLAUSE_PI_PPK,
)
_MEASURABILITY_CLAUSES = (
    CLAUSE_EXPLICIT_MEASURABILITY,
    CLAUSE_IMPLICIT_MEASURABILITY,
    CLAUSE_COINCIDENCE,
    CLAUSE_COHERENCE,
)


class _Operators:
    """Memoized operators of one agent in one model."""

    def __init__(self, model: HMSModel, agent: int) -> None:
        self.model = model
        self.frame = model.frame
        self.agent = agent
        self._memo: dict[tuple[str, Event], Event] = {}

    def apply(self, name: str, operator: _Operator, event: Event) -> Event:
        key = (name, event)
        value = self._memo.get(key)
        if value is None:
            value = self._memo[key] = operator(self.model, self.agent, event)
        return value

    def k(self, event: Event) -> Event:
        return self.apply("K", k_op, event)

    def a(self, event: Event) -> Event:
        return self.apply("A", a_op, event)

    def u(self, event: Event) -> Event:
        return self.neg(self.a(event))

    def l(self, event: Event) -> Event:  # noqa: E743
        return self.apply("L", l_op, event)

    def a_star(self, event: Event) -> Event:
        return self.apply("A*", a_star_op, event)

    def neg(self, event: Event) -> Event:
        return event_negate(self.frame, event)

    def meet(self, *events: Event) -> Event:
        return event_intersect(self.frame, events)

    def join(self, *events: Event) -> Event:
        return event_union(self.frame, events)

    def sub(self, first: Event, second: Event) -> bool:
        return event_subset(self.frame, first, second)


class _Tallies:
    """Named tallies that build witnesses only for failures."""

    def __init__(self, subject: str, names: Iterable[str]) -> None:
        self.subject = subject
        self._tallies = {name: PropertyTally(name) for name in names}

    def check(
        self,
        name: str,
        holds: bool,
        *events: Event,
        agent: int | None = None,
        state: str | None = None,
        detail: str = "",
    ) -> bool:
        witness = None
        if not holds:
            rendered = ", ".join(e.render() for e in events)
            text = f"{detail}: {rendered}" if detail and rendered else detail or rendered
            witness = Witness(self.subject, text, agent=agent, state=state)
        return self._tallies[name].check(holds, witness)

    def results(self) -> list[PropertyResult]:
        return [tally.result() for tally in self._tallies.values()]


def _families(events: Sequence[Event], family_size: int) -> Iterable[tuple[Event, ...]]:
    for size in range(2, family_size + 1):
        yield from combinations(events, size)


def _included_pairs(
    frame: HMSFrame, events: Sequence[Event]
) -> list[tuple[Event, Event]]:
    closures = [frame.up_closure(e) for e in events]
    return [
        (first, second)
        for first, low in zip(events, closures, strict=True)
        for second, high in zip(events, closures, strict=True)
        if first != second and low <= high
    ]


# ---------------------------------------------------------------------------
# Canonical operator outputs
# ---------------------------------------------------------------------------


def _available(model: HMSModel) -> list[tuple[str, _Operator]]:
    available: list[tuple[str, _Operator]] = []
    if model.pi is not None:
        available += [("K", k_op), ("A", a_op)]
    if model.lam is not None:
        available.append(("L", l_op))
    if model.alpha is not None:
        available.append(("A*", a_star_op))
    return available


def operator_output_law(
    ops_by_agent: Sequence[_Operators], events: Sequence[Event]
) -> PropertyResult:
    """Every available operator maps every event to an S(E)-based event."""
    model = ops_by_agent[0].model
    tallies = _Tallies(model.label(), [PROP_OPERATORS_ARE_EVENTS])
    for ops in ops_by_agent:
        for name, operator in _available(model):
            for event in events:
                try:
                    ops.apply(name, operator, event)
                    holds, detail = True, ""
                except EventError as err:
                    holds, detail = False, str(err)
                tallies.check(
                    PROP_OPERATORS_ARE_EVENTS, holds, event, agent=ops.agent, detail=detail
                )
    return tallies.results()[0]


# ---------------------------------------------------------------------------
# Event algebra
# ---------------------------------------------------------------------------


def event_algebra_laws(frame: HMSFrame, events: Sequence[Event]) -> list[PropertyResult]:
    """Involution of negation and the set-extension homomorphism for ¬, ∩ and ∪."""
    tallies = _Tallies(
        f"frame[{atoms_key(frame.vocab)}]",
        [
            PROP_DOUBLE_NEGATION,
            PROP_NEGATION_EXTENSION,
            PROP_INTERSECTION_EXTENSION,
            PROP_UNION_EXTENSION,
        ],
    )
    closure = frame.up_closure
    for event in events:
        negated = event_negate(frame, event)
        tallies.check(PROP_DOUBLE_NEGATION, event_negate(frame, negated) == event, event)
        full = closure(event_full(frame, event.base_space))
        tallies.check(
            PROP_NEGATION_EXTENSION, closure(negated) == full - closure(event), event
        )
    for first, second in combinations(events, 2):
        meet = event_intersect(frame, [first, second])
        tallies.check(
            PROP_INTERSECTION_EXTENSION,
            closure(meet) == closure(first) & closure(second),
            first,
            second,
        )
        expressible = closure(event_full(frame, first.base_space | second.base_space))
        tallies.check(
            PROP_UNION_EXTENSION,
            closure(event_union(frame, [first, second]))
            == (closure(first) | closure(second)) & expressible,
            first,
            second,
        )
    return tallies.results()


# ---------------------------------------------------------------------------
# Explicit knowledge and awareness
# ---------------------------------------------------------------------------


def _strong_plausibility(ops: _Operators, event: Event, bound: int) -> tuple[bool, str]:
    """U(E) against ⋂ (¬K)^n(E), iterated until the sequence repeats."""
    current = ops.neg(ops.k(event))
    meet = current
    seen = {current}
    for _ in range(bound):
        current = ops.neg(ops.k(current))
        if current in seen:
            break
        seen.add(current)
        meet = ops.meet(meet, current)
    else:
        return False, f"(¬K)^n did not stabilize within {bound} steps"
    return ops.u(event) == meet, ""


def explicit_laws(
    ops_by_agent: Sequence[_Operators],
    events: Sequence[Event],
    family_size: int = DEFAULT_FAMILY_SIZE,
) -> list[PropertyResult]:
    """Properties of K and A (and U) on a model with an explicit correspondence."""
    model = ops_by_agent[0].model
    frame = model.frame
    tallies = _Tallies(
        model.label(),
        [
            PROP_K_NECESSITATION,
            PROP_K_CONJUNCTION,
            PROP_K_TRUTH,
            PROP_K_POSITIVE_INTROSPECTION,
            PROP_K_MONOTONICITY,
            PROP_K_WEAK_NEGATIVE_INTROSPECTION,
            PROP_KU_INTROSPECTION,
            PROP_AU_INTROSPECTION,
            PROP_WEAK_NECESSITATION,
            PROP_PLAUSIBILITY,
            PROP_STRONG_PLAUSIBILITY,
            PROP_WEAK_NEGATIVE_INTROSPECTION_II,
            PROP_SYMMETRY,
            PROP_A_CONJUNCTION,
            PROP_AK_SELF_REFLECTION,
            PROP_AA_SELF_REFLECTION,
            PROP_A_INTROSPECTION,
        ],
    )
    top = event_top(frame)
    pairs = _included_pairs(frame, events)
    bound = len(events) + 1
    for ops in ops_by_agent:
        agent = ops.agent
        tallies.check(PROP_K_NECESSITATION, ops.k(top) == top, top, agent=agent)
        for event in events:
            known = ops.k(event)
            not_known = ops.neg(known)
            tallies.check(PROP_K_TRUTH, ops.sub(known, event), event, agent=agent)
            tallies.check(
                PROP_K_POSITIVE_INTROSPECTION,
                ops.sub(known, ops.k(known)),
                event,
                agent=agent,
            )
            unknown_unknown = ops.neg(ops.k(not_known))
            tallies.check(
                PROP_K_WEAK_NEGATIVE_INTROSPECTION,
                ops.sub(
                    ops.meet(not_known, unknown_unknown),
                    ops.neg(ops.k(ops.neg(ops.k(not_known)))),
                ),
                event,
                agent=agent,
            )

            aware = ops.a(event)
            unaware = ops.u(event)
            tallies.check(
                PROP_KU_INTROSPECTION,
                ops.k(unaware) == event_vacuous(event.base_space),
                event,
                agent=agent,
            )
            tallies.check(PROP_AU_INTROSPECTION, unaware == ops.u(unaware), event, agent=agent)
            tallies.check(
                PROP_WEAK_NECESSITATION,
                aware == ops.k(event_full(frame, event.base_space)),
                event,
                agent=agent,
            )
            tallies.check(
                PROP_PLAUSIBILITY,
                aware == ops.join(known, ops.k(not_known)),
                event,
                agent=agent,
            )
            holds, detail = _strong_plausibility(ops, event, bound)
            tallies.check(PROP_STRONG_PLAUSIBILITY, holds, event, agent=agent, detail=detail)
            tallies.check(
                PROP_WEAK_NEGATIVE_INTROSPECTION_II,
                ops.meet(not_known, ops.a(not_known)) == ops.k(not_known),
                event,
                agent=agent,
            )
            tallies.check(PROP_SYMMETRY, aware == ops.a(ops.neg(event)), event, agent=agent)
            tallies.check(PROP_AK_SELF_REFLECTION, aware == ops.a(known), event, agent=agent)
            tallies.check(PROP_AA_SELF_REFLECTION, aware == ops.a(aware), event, agent=agent)
            tallies.check(PROP_A_INTROSPECTION, aware == ops.k(aware), event, agent=agent)

        for first, second in pairs:
            tallies.check(
                PROP_K_MONOTONICITY,
                ops.sub(ops.k(first), ops.k(second)),
                first,
                second,
                agent=agent,
            )
        for family in _families(events, family_size):
            meet = ops.meet(*family)
            tallies.check(
                PROP_K_CONJUNCTION,
                ops.k(meet) == ops.meet(*(ops.k(e) for e in family)),
                *family,
                agent=agent,
            )
            tallies.check(
                PROP_A_CONJUNCTION,
                ops.a(meet) == ops.meet(*(ops.a(e) for e in family)),
                *family,
                agent=agent,
            )
    return tallies.results()


def projection_lemma(model: HMSModel) -> PropertyResult:
    """Π(ω_Ψ) = Π(ω) whenever Π(ω) lies in a space below Ψ and Ψ ⊆ S_ω."""
    frame = model.frame
    tallies = _Tallies(model.label(), [PROP_PI_PROJECTION_LEMMA])
    for agent in range(model.agents):
        for state in frame.states:
            possible = model.pi_set(agent, state)
            low = model.pi_space(agent, state)
            for psi in between(low, frame.space_of(state)):
                lower = frame.project(state, psi)
                tallies.check(
                    PROP_PI_PROJECTION_LEMMA,
                    model.pi_set(agent, lower) == possible,
                    agent=agent,
                    state=lower,
                    detail=f"Π differs from Π({state})",
                )
    return tallies.results()[0]


# ---------------------------------------------------------------------------
# Implicit knowledge
# ---------------------------------------------------------------------------


def implicit_laws(
    ops_by_agent: Sequence[_Operators],
    events: Sequence[Event],
    family_size: int = DEFAULT_FAMILY_SIZE,
) -> list[PropertyResult]:
    """S5 properties of L, with necessitation checked for every space."""
    model = ops_by_agent[0].model
    frame = model.frame
    tallies = _Tallies(
        model.label(),
        [
            PROP_L_NECESSITATION,
            PROP_L_CONJUNCTION,
            PROP_L_MONOTONICITY,
            PROP_L_TRUTH,
            PROP_L_POSITIVE_INTROSPECTION,
            PROP_L_NEGATIVE_INTROSPECTION,
        ],
    )
    pairs = _included_pairs(frame, events)
    for ops in ops_by_agent:
        agent = ops.agent
        for key in frame.space_keys:
            full = event_full(frame, key)
            tallies.check(PROP_L_NECESSITATION, ops.l(full) == full, full, agent=agent)
        for event in events:
            known = ops.l(event)
            tallies.check(PROP_L_TRUTH, ops.sub(known, event), event, agent=agent)
            tallies.check(
                PROP_L_POSITIVE_INTROSPECTION, ops.sub(known, ops.l(known)), event, agent=agent
            )
            not_known = ops.neg(known)
            tallies.check(
                PROP_L_NEGATIVE_INTROSPECTION,
                ops.sub(not_known, ops.l(not_known)),
                event,
                agent=agent,
            )
        for first, second in pairs:
            tallies.check(
                PROP_L_MONOTONICITY,
                ops.sub(ops.l(first), ops.l(second)),
                first,
                second,
                agent=agent,
            )
        for family in _families(events, family_size):
            tallies.check(
                PROP_L_CONJUNCTION,
                ops.l(ops.meet(*family)) == ops.meet(*(ops.l(e) for e in family)),
                *family,
                agent=agent,
            )
    return tallies.results()


def interaction_laws(
    ops_by_agent: Sequence[_Operators], events: Sequence[Event]
) -> list[PropertyResult]:
    """How implicit knowledge, awareness and explicit knowledge fit together."""
    model = ops_by_agent[0].model
    tallies = _Tallies(
        model.label(), [PROP_K_IS_L_AND_A, PROP_U_IS_LU, PROP_A_IS_LA, PROP_AL_IS_A]
    )
    for ops in ops_by_agent:
        agent = ops.agent
        for event in events:
            aware = ops.a(event)
            unaware = ops.u(event)
            tallies.check(
                PROP_K_IS_L_AND_A,
                ops.k(event) == ops.meet(ops.l(event), aware),
                event,
                agent=agent,
            )
            tallies.check(PROP_U_IS_LU, unaware == ops.l(unaware), event, agent=agent)
            tallies.check(PROP_A_IS_LA, aware == ops.l(aware), event, agent=agent)
            tallies.check(PROP_AL_IS_A, ops.a(ops.l(event)) == aware, event, agent=agent)
    return tallies.results()


# ---------------------------------------------------------------------------
# Derived explicit correspondence
# ---------------------------------------------------------------------------


def derived_laws(
    model: HMSModel, events: Sequence[Event]
) -> tuple[list[PropertyResult], HMSModel | None]:
    """Derive Π* and check what the derivation promises.

    Returns the results and the completed model, or ``None`` when the
    derivation itself failed.
    """
    frame = model.frame
    subject = model.label()
    tallies = _Tallies(
        subject,
        [
            PROP_PI_STAR_DERIVATION,
            PROP_PI_STAR_VALID,
            PROP_JOINT_MEASURABILITY,
            PROP_PI_STAR_AT_STATE,
            PROP_PI_STAR_BELOW_AWARENESS,
            PROP_PI_STAR_ABOVE_AWARENESS,
            PROP_A_STAR_IS_A,
            PROP_K_IS_L_AND_A_STAR,
        ],
    )
    try:
        derived = derive_pi_star(model)
    except DerivationError as err:
        tallies.check(PROP_PI_STAR_DERIVATION, False, detail=str(err))
        return tallies.results(), None
    tallies.check(PROP_PI_STAR_DERIVATION, True)
    completed = replace(model, pi=derived)

    pi_clauses = validate_pi(completed).clauses()
    for clause in _PI_CLAUSES:
        tallies.check(PROP_PI_STAR_VALID, clause not in pi_clauses, detail=clause)
    lambda_clauses = validate_lambda(completed).clauses()
    for clause in _MEASURABILITY_CLAUSES:
        tallies.check(PROP_JOINT_MEASURABILITY, clause not in lambda_clauses, detail=clause)

    assert model.lam is not None and model.alpha is not None
    for agent in range(model.agents):
        lam, alpha, pi = model.lam[agent], model.alpha[agent], derived[agent]
        for state in frame.states:
            aware = alpha[state]
            tallies.check(
                PROP_PI_STAR_AT_STATE,
                pi[state] == frame.project_set(lam[state], aware),
                agent=agent,
                state=state,
            )
            for phi in subsets(aware):
                lower = frame.project(state, phi)
                tallies.check(
                    PROP_PI_STAR_BELOW_AWARENESS,
                    pi[lower] == frame.project_set(lam[state], phi),
                    agent=agent,
                    state=lower,
                    detail=f"projection of {state} to [{atoms_key(phi)}]",
                )
            expected = frame.project_set(lam[state], aware)
            for phi in between(aware, frame.space_of(state)):
                lower = frame.project(state, phi)
                tallies.check(
                    PROP_PI_STAR_ABOVE_AWARENESS,
                    pi[lower] == expected,
                    agent=agent,
                    state=lower,
                    detail=f"projection of {state} to [{atoms_key(phi)}]",
                )

    for agent in range(model.agents):
        ops = _Operators(completed, agent)
        for event in events:
            a_star = ops.a_star(event)
            tallies.check(PROP_A_STAR_IS_A, a_star == ops.a(event), event, agent=agent)
            tallies.check(
                PROP_K_IS_L_AND_A_STAR,
                ops.k(event) == ops.meet(ops.l(event), a_star),
                event,
                agent=agent,
            )
    return tallies.results(), completed


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def operator_laws(
    model: HMSModel,
    suite: str = SUITE_ALL,
    family_size: int = DEFAULT_FAMILY_SIZE,
) -> PropertyReport:
    """Every operator law the model's kind supports, restricted to ``suite``.

    ``pi`` runs the laws of K and A, ``lambda`` those of L and the
    interaction laws, ``alpha`` the Π* derivation; ``operators`` and ``all``
    run everything plus the event algebra. An ikb model is completed with
    its derived Π* before the Π laws run.
    """
    subject = model.label()
    validation = validate_model(model)
    if not validation.ok:
        _LOGGER.debug("Skipping operator laws: %s is not valid", subject)
        return PropertyReport(subject, validations=(validation,))

    everything = suite in (SUITE_ALL, SUITE_OPERATORS)
    events = list(enumerate_events(model.frame))
    _LOGGER.debug("Operator laws for %s over %d events", subject, len(events))
    results: list[PropertyResult] = []

    if everything:
        results.extend(event_algebra_laws(model.frame, events))

    subject_model: HMSModel | None = model
    if model.lam is not None and model.alpha is not None and (everything or suite == SUITE_ALPHA):
        derived, completed = derived_laws(model, events)
        results.extend(derived)
        if model.pi is None:
            subject_model = completed
        _LOGGER.debug("Derived-correspondence laws done: %d properties", len(derived))
    if subject_model is None:
        return PropertyReport(subject, tuple(results), (validation,))

    ops_by_agent = [_Operators(subject_model, agent) for agent in range(subject_model.agents)]
    outputs = operator_output_law(ops_by_agent, events)
    results.append(outputs)
    if not outputs.ok:
        return PropertyReport(subject, tuple(results), (validation,))

    has_pi = subject_model.pi is not None
    has_lam = subject_model.lam is not None
    if has_pi and (everything or suite == SUITE_PI):
        results.extend(explicit_laws(ops_by_agent, events, family_size))
        results.append(projection_lemma(subject_model))
        _LOGGER.debug("Explicit-knowledge laws done for %s", subject)
    if has_lam and (everything or suite == SUITE_LAMBDA):
        results.extend(implicit_laws(ops_by_agent, events, family_size))
        if has_pi:
            results.extend(interaction_laws(ops_by_agent, events))
        _LOGGER.debug("Implicit-knowledge laws done for %s", subject)
    return PropertyReport(subject, tuple(results), (validation,))
