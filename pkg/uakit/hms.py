"""HMS unawareness models: correspondences, operators, validators, Π* derivation."""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field, replace

from .const import (
    CLAUSE_ALPHA_ABOVE,
    CLAUSE_ALPHA_BELOW,
    CLAUSE_ALPHA_CONCEPTION,
    CLAUSE_ALPHA_MEASURABILITY,
    CLAUSE_ALPHA_MONOTONE,
    CLAUSE_ALPHA_TOTAL,
    CLAUSE_COHERENCE,
    CLAUSE_COINCIDENCE,
    CLAUSE_EXPLICIT_MEASURABILITY,
    CLAUSE_IMPLICIT_MEASURABILITY,
    CLAUSE_LAMBDA_CONFINEMENT,
    CLAUSE_LAMBDA_PPII,
    CLAUSE_LAMBDA_PPIK,
    CLAUSE_LAMBDA_REFLEXIVITY,
    CLAUSE_LAMBDA_STATIONARITY,
    CLAUSE_LAMBDA_TOTAL,
    CLAUSE_MODEL_KIND,
    CLAUSE_PI_CONFINEMENT,
    CLAUSE_PI_PPI,
    CLAUSE_PI_PPK,
    CLAUSE_PI_PROJECTION_INVARIANCE,
    CLAUSE_PI_REFLEXIVITY,
    CLAUSE_PI_STAR_AUDIT,
    CLAUSE_PI_STATIONARITY,
    CLAUSE_PI_TOTAL,
    CLAUSE_VALUATION_BASE_SPACE,
    CLAUSE_VALUATION_EVENT,
    MODEL_COMPLEMENTED,
    MODEL_COMPLEMENTED_IKB,
    MODEL_IKB,
    MODEL_PLAIN,
)
from .exceptions import DerivationError, EventError, MissingCorrespondenceError, ModelError
from .lattice import (
    Event,
    HMSFrame,
    StateId,
    event_from_states,
    event_negate,
    validate_frame,
)
from .report import ReportBuilder, ValidationReport
from .syntax import AtomSet, atoms_key, between, subsets

_LOGGER = logging.getLogger(__name__)

type Correspondence = Mapping[StateId, frozenset[StateId]]
type AwarenessMap = Mapping[StateId, AtomSet]


@dataclass(frozen=True)
class HMSModel:
    """An HMS model over a frame, with any admissible mix of Π, Λ and α.

    Correspondences are tuples indexed by agent. The kind follows from
    which of them are present.
    """

    frame: HMSFrame
    agents: int
    valuation: Mapping[str, Event]
    pi: tuple[Correspondence, ...] | None = None
    lam: tuple[Correspondence, ...] | None = None
    alpha: tuple[AwarenessMap, ...] | None = None
    name: str = field(default="", compare=False)

    @property
    def kind(self) -> str:
        has_pi, has_lam, has_alpha = (
            self.pi is not None,
            self.lam is not None,
            self.alpha is not None,
        )
        if has_lam and has_alpha:
            return MODEL_COMPLEMENTED_IKB if has_pi else MODEL_IKB
        if has_alpha:
            raise ModelError("an awareness function needs an implicit correspondence")
        if has_pi:
            return MODEL_COMPLEMENTED if has_lam else MODEL_PLAIN
        if has_lam:
            raise ModelError("an implicit correspondence needs Π or an awareness function")
        raise ModelError("model has no possibility correspondence")

    @property
    def vocab(self) -> AtomSet:
        return self.frame.vocab

    def label(self) -> str:
        return self.name or f"M[{atoms_key(self.frame.vocab)}]"

    def check_agent(self, agent: int) -> None:
        if not 0 <= agent < self.agents:
            raise ModelError(f"unknown agent {agent + 1} (model has {self.agents})")

    def pi_set(self, agent: int, state: StateId) -> frozenset[StateId]:
        if self.pi is None:
            raise MissingCorrespondenceError("model has no explicit possibility correspondence")
        self.check_agent(agent)
        try:
            return self.pi[agent][state]
        except KeyError as err:
            raise ModelError(f"Π_{agent + 1} undefined at {state!r}") from err

    def pi_space(self, agent: int, state: StateId) -> AtomSet:
        """Space containing Π_i(ω)."""
        members = self.pi_set(agent, state)
        if not members:
            raise ModelError(f"Π_{agent + 1} is empty at {state!r}")
        return self.frame.space_of(next(iter(members)))

    def lambda_set(self, agent: int, state: StateId) -> frozenset[StateId]:
        if self.lam is None:
            raise MissingCorrespondenceError("model has no implicit possibility correspondence")
        self.check_agent(agent)
        try:
            return self.lam[agent][state]
        except KeyError as err:
            raise ModelError(f"Λ_{agent + 1} undefined at {state!r}") from err

    def alpha_of(self, agent: int, state: StateId) -> AtomSet:
        if self.alpha is None:
            raise MissingCorrespondenceError("model has no awareness function")
        self.check_agent(agent)
        try:
            return self.alpha[agent][state]
        except KeyError as err:
            raise ModelError(f"α_{agent + 1} undefined at {state!r}") from err

    def forget_alpha(self) -> HMSModel:
        return replace(self, alpha=None)

    def forget_pi(self) -> HMSModel:
        return replace(self, pi=None)


# ---------------------------------------------------------------------------
# Operators on events
# ---------------------------------------------------------------------------


def _canonical(model: HMSModel, raw: frozenset[StateId], event: Event, operator: str) -> Event:
    try:
        return event_from_states(model.frame, raw, event.base_space)
    except EventError as err:
        raise EventError(
            f"{operator} of {event.render()} is not an S(E)-based event; "
            f"the correspondences violate their assumptions ({err})"
        ) from err


def k_op(model: HMSModel, agent: int, event: Event) -> Event:
    """Explicit knowledge K_i(E)."""
    closure = model.frame.up_closure(event)
    raw = frozenset(s for s in model.frame.states if model.pi_set(agent, s) <= closure)
    return _canonical(model, raw, event, f"K{agent + 1}")


def a_op(model: HMSModel, agent: int, event: Event) -> Event:
    """Awareness A_i(E) from the explicit correspondence."""
    raw = frozenset(
        s for s in model.frame.states if event.base_space <= model.pi_space(agent, s)
    )
    return _canonical(model, raw, event, f"A{agent + 1}")


def u_op(model: HMSModel, agent: int, event: Event) -> Event:
    """Unawareness U_i(E) := ¬A_i(E)."""
    return event_negate(model.frame, a_op(model, agent, event))


def l_op(model: HMSModel, agent: int, event: Event) -> Event:
    """Implicit knowledge L_i(E)."""
    closure = model.frame.up_closure(event)
    raw = frozenset(s for s in model.frame.states if model.lambda_set(agent, s) <= closure)
    return _canonical(model, raw, event, f"L{agent + 1}")


def a_star_op(model: HMSModel, agent: int, event: Event) -> Event:
    """Awareness A*_i(E) from the awareness function."""
    raw = frozenset(
        s for s in model.frame.states if event.base_space <= model.alpha_of(agent, s)
    )
    return _canonical(model, raw, event, f"A*{agent + 1}")


# ---------------------------------------------------------------------------
# Validators
# ---------------------------------------------------------------------------


def _entries(
    frame: HMSFrame,
    mapping: Correspondence,
    agent: int,
    report: ReportBuilder,
    clause: str,
) -> dict[StateId, frozenset[StateId]]:
    """Well-formed entries of one correspondence; the rest are reported."""
    good: dict[StateId, frozenset[StateId]] = {}
    for state in frame.states:
        value = mapping.get(state)
        if value is None:
            report.fail(clause, "no possibility set", agent=agent, state=state)
            continue
        if not value:
            report.fail(clause, "empty possibility set", agent=agent, state=state)
            continue
        unknown = sorted(s for s in value if not frame.has_state(s))
        if unknown:
            report.fail(clause, f"unknown states {unknown}", agent=agent, state=state)
            continue
        good[state] = frozenset(value)
    for state in sorted(set(mapping) - frame.omega):
        report.fail(clause, "entry for an unknown state", agent=agent, state=state)
    return good


def _pi_view(model: HMSModel, agent: int) -> dict[StateId, tuple[frozenset[StateId], AtomSet]]:
    """Π_i entries that lie in a single space below their state, with that space."""
    frame = model.frame
    view: dict[StateId, tuple[frozenset[StateId], AtomSet]] = {}
    if model.pi is None or agent >= len(model.pi):
        return view
    for state, value in model.pi[agent].items():
        if not value or not frame.has_state(state) or not all(frame.has_state(s) for s in value):
            continue
        keys = {frame.space_of(s) for s in value}
        if len(keys) == 1 and (key := keys.pop()) <= frame.space_of(state):
            view[state] = (frozenset(value), key)
    return view


def validate_valuation(model: HMSModel) -> ValidationReport:
    """Every atom maps to a well-formed event."""
    frame = model.frame
    report = ReportBuilder(f"{model.label()} valuation")
    for atom in sorted(frame.vocab):
        event = model.valuation.get(atom)
        if event is None:
            report.fail(CLAUSE_VALUATION_EVENT, f"{atom} has no event")
        elif event.base_space not in frame.spaces:
            report.fail(
                CLAUSE_VALUATION_EVENT,
                f"{atom} is based on [{atoms_key(event.base_space)}], which is not a space",
            )
        elif not event.base <= frozenset(frame.spaces[event.base_space]):
            report.fail(CLAUSE_VALUATION_EVENT, f"base of {atom} leaves its base space")
        elif frozenset((atom,)) < event.base_space:
            _LOGGER.warning(
                "Valuation of %s is based on [%s], above S_{%s}",
                atom,
                atoms_key(event.base_space),
                atom,
            )
            report.warn(
                CLAUSE_VALUATION_BASE_SPACE,
                f"{atom} is based on [{atoms_key(event.base_space)}], above its own space",
            )
    for atom in sorted(set(model.valuation) - frame.vocab):
        report.fail(CLAUSE_VALUATION_EVENT, f"{atom} is not in the vocabulary")
    return report.build()


def validate_pi(model: HMSModel) -> ValidationReport:
    """Confinement, generalized reflexivity, stationarity, PPI, PPK and invariance."""
    frame = model.frame
    report = ReportBuilder(f"{model.label()} Π")
    if model.pi is None:
        report.fail(CLAUSE_MODEL_KIND, "model has no explicit possibility correspondence")
        return report.build()
    if len(model.pi) != model.agents:
        report.fail(CLAUSE_PI_TOTAL, f"expected {model.agents} agents, got {len(model.pi)}")
        return report.build()

    for agent, mapping in enumerate(model.pi):
        sets = _entries(frame, mapping, agent, report, CLAUSE_PI_TOTAL)
        spaces: dict[StateId, AtomSet] = {}
        for state, value in sets.items():
            keys = {frame.space_of(s) for s in value}
            own = frame.space_of(state)
            if len(keys) != 1:
                report.fail(
                    CLAUSE_PI_CONFINEMENT,
                    f"possibility set spans {len(keys)} spaces",
                    agent=agent,
                    state=state,
                )
                continue
            key = keys.pop()
            if not key <= own:
                report.fail(
                    CLAUSE_PI_CONFINEMENT,
                    f"possibility set lies in [{atoms_key(key)}], above the state's space",
                    agent=agent,
                    state=state,
                )
                continue
            spaces[state] = key

        for state, key in spaces.items():
            value = sets[state]
            own = frame.space_of(state)
            if frame.project(state, key) not in value:
                report.fail(
                    CLAUSE_PI_REFLEXIVITY,
                    "state is not in the up-closure of its possibility set",
                    agent=agent,
                    state=state,
                )
            for other in sorted(value):
                if other in sets and sets[other] != value:
                    report.fail(
                        CLAUSE_PI_STATIONARITY,
                        f"possibility set differs at member {other!r}",
                        agent=agent,
                        state=state,
                    )
            for psi in subsets(own):
                lower = frame.project(state, psi)
                lower_key = spaces.get(lower)
                if lower_key is None:
                    continue
                if not (
                    lower_key <= key and frame.project_set(value, lower_key) <= sets[lower]
                ):
                    report.fail(
                        CLAUSE_PI_PPI,
                        f"up-closure is not within that of the projection to [{atoms_key(psi)}]",
                        agent=agent,
                        state=state,
                    )
            for upsilon in subsets(key):
                lower = frame.project(state, upsilon)
                if lower in sets and frame.project_set(value, upsilon) != sets[lower]:
                    report.fail(
                        CLAUSE_PI_PPK,
                        f"projected possibility set differs at [{atoms_key(upsilon)}]",
                        agent=agent,
                        state=state,
                    )
            for psi in between(key, own):
                lower = frame.project(state, psi)
                if lower in sets and sets[lower] != value:
                    report.fail(
                        CLAUSE_PI_PROJECTION_INVARIANCE,
                        f"possibility set changes at the projection to [{atoms_key(psi)}]",
                        agent=agent,
                        state=state,
                    )
    return report.build()


def validate_lambda(model: HMSModel) -> ValidationReport:
    """Implicit correspondence properties, plus measurability and coherence when Π is present."""
    frame = model.frame
    report = ReportBuilder(f"{model.label()} Λ")
    if model.lam is None:
        report.fail(CLAUSE_MODEL_KIND, "model has no implicit possibility correspondence")
        return report.build()
    if len(model.lam) != model.agents:
        report.fail(CLAUSE_LAMBDA_TOTAL, f"expected {model.agents} agents, got {len(model.lam)}")
        return report.build()

    for agent, mapping in enumerate(model.lam):
        sets = _entries(frame, mapping, agent, report, CLAUSE_LAMBDA_TOTAL)
        confined: dict[StateId, frozenset[StateId]] = {}
        for state, value in sets.items():
            own = frame.space_of(state)
            if any(frame.space_of(s) != own for s in value):
                report.fail(
                    CLAUSE_LAMBDA_CONFINEMENT,
                    "implicit possibility set leaves the state's space",
                    agent=agent,
                    state=state,
                )
            else:
                confined[state] = value
            if state not in value:
                report.fail(
                    CLAUSE_LAMBDA_REFLEXIVITY,
                    "state is not in its implicit possibility set",
                    agent=agent,
                    state=state,
                )
            for other in sorted(value):
                if other in sets and sets[other] != value:
                    report.fail(
                        CLAUSE_LAMBDA_STATIONARITY,
                        f"implicit possibility set differs at member {other!r}",
                        agent=agent,
                        state=state,
                    )

        for state, value in confined.items():
            own = frame.space_of(state)
            for psi in subsets(own):
                if psi == own:
                    continue
                lower = frame.project(state, psi)
                if lower not in confined:
                    continue
                projected = frame.project_set(value, psi)
                if projected != confined[lower]:
                    report.fail(
                        CLAUSE_LAMBDA_PPIK,
                        f"projection to [{atoms_key(psi)}] is not the implicit set there",
                        agent=agent,
                        state=state,
                    )
                if not projected <= confined[lower]:
                    report.fail(
                        CLAUSE_LAMBDA_PPII,
                        f"up-closure is not within that of the projection to [{atoms_key(psi)}]",
                        agent=agent,
                        state=state,
                    )

        if model.pi is None:
            continue
        view = _pi_view(model, agent)
        for state, value in sets.items():
            here = view.get(state)
            if here is None:
                continue
            explicit, key = here
            for other in sorted(value):
                there = view.get(other)
                if there is not None and there[0] != explicit:
                    report.fail(
                        CLAUSE_EXPLICIT_MEASURABILITY,
                        f"Π differs at implicitly possible {other!r}",
                        agent=agent,
                        state=state,
                    )
            if state in confined:
                projected = frame.project_set(value, key)
                if projected != explicit:
                    report.fail(
                        CLAUSE_COHERENCE,
                        f"implicit set projected to [{atoms_key(key)}] is not Π",
                        agent=agent,
                        state=state,
                    )
                for other in sorted(explicit):
                    if other in sets and sets[other] != projected:
                        report.fail(
                            CLAUSE_IMPLICIT_MEASURABILITY,
                            f"Λ at explicitly possible {other!r} "
                            "is not the projected implicit set",
                            agent=agent,
                            state=state,
                        )
            for other in sorted(explicit):
                there = view.get(other)
                if other in sets and there is not None and sets[other] != there[0]:
                    report.fail(
                        CLAUSE_COINCIDENCE,
                        f"Λ and Π differ at explicitly possible {other!r}",
                        agent=agent,
                        state=state,
                    )
    return report.build()


def validate_alpha(model: HMSModel) -> ValidationReport:
    """Properties O and I to IV of awareness functions."""
    frame = model.frame
    report = ReportBuilder(f"{model.label()} α")
    if model.alpha is None:
        report.fail(CLAUSE_MODEL_KIND, "model has no awareness function")
        return report.build()
    if len(model.alpha) != model.agents:
        report.fail(CLAUSE_ALPHA_TOTAL, f"expected {model.agents} agents, got {len(model.alpha)}")
        return report.build()

    for agent, mapping in enumerate(model.alpha):
        good: dict[StateId, AtomSet] = {}
        for state in frame.states:
            level = mapping.get(state)
            if level is None:
                report.fail(CLAUSE_ALPHA_TOTAL, "no awareness level", agent=agent, state=state)
            elif level not in frame.spaces:
                report.fail(
                    CLAUSE_ALPHA_TOTAL,
                    f"awareness level [{atoms_key(level)}] is not a space",
                    agent=agent,
                    state=state,
                )
            else:
                good[state] = level
        for state in sorted(set(mapping) - frame.omega):
            report.fail(CLAUSE_ALPHA_TOTAL, "entry for an unknown state", agent=agent, state=state)

        implicit = model.lam[agent] if model.lam is not None and agent < len(model.lam) else {}
        for state, level in good.items():
            own = frame.space_of(state)
            if not level <= own:
                report.fail(
                    CLAUSE_ALPHA_CONCEPTION,
                    f"awareness level [{atoms_key(level)}] exceeds the state's space",
                    agent=agent,
                    state=state,
                )
            for other in sorted(implicit.get(state, ())):
                if other in good and good[other] != level:
                    report.fail(
                        CLAUSE_ALPHA_MEASURABILITY,
                        f"awareness level differs at implicitly possible {other!r}",
                        agent=agent,
                        state=state,
                    )
            for psi in subsets(own):
                if psi == own:
                    continue
                lower = frame.project(state, psi)
                low = good.get(lower)
                if low is None:
                    continue
                if psi <= level and low != psi:
                    report.fail(
                        CLAUSE_ALPHA_BELOW,
                        f"projection to [{atoms_key(psi)}] has level [{atoms_key(low)}]",
                        agent=agent,
                        state=state,
                    )
                if level <= psi and low != level:
                    report.fail(
                        CLAUSE_ALPHA_ABOVE,
                        f"projection to [{atoms_key(psi)}] has level [{atoms_key(low)}]",
                        agent=agent,
                        state=state,
                    )
                if not low <= level:
                    report.fail(
                        CLAUSE_ALPHA_MONOTONE,
                        f"projection to [{atoms_key(psi)}] is aware of more",
                        agent=agent,
                        state=state,
                    )
    return report.build()


def _audit_pi_star(
    model: HMSModel, derived: tuple[Correspondence, ...], subject: str
) -> ValidationReport:
    """Check Π*(ω_Φ) = Λ(ω) projected onto α(ω_Φ) for every ω and Φ ⊆ S_ω."""
    frame = model.frame
    report = ReportBuilder(subject)
    assert model.lam is not None and model.alpha is not None
    for agent in range(model.agents):
        lam, alpha, pi = model.lam[agent], model.alpha[agent], derived[agent]
        for state in frame.states:
            for phi in subsets(frame.space_of(state)):
                lower = frame.project(state, phi)
                expected = frame.project_set(lam[state], alpha[lower])
                if pi.get(lower) != expected:
                    report.fail(
                        CLAUSE_PI_STAR_AUDIT,
                        f"Π* at {lower!r} differs from Λ({state!r}) projected to "
                        f"[{atoms_key(alpha[lower])}]",
                        agent=agent,
                        state=lower,
                    )
    return report.build()


def validate_model(model: HMSModel) -> ValidationReport:
    """Frame, valuation and every validator the model's kind calls for."""
    subject = model.label()
    frame_report = validate_frame(model.frame)
    if not frame_report.ok:
        return frame_report.merge(subject=subject)
    report = ReportBuilder(subject)
    report.extend(frame_report)
    if model.agents < 1:
        report.fail(CLAUSE_MODEL_KIND, "at least one agent is required")
        return report.build()
    try:
        kind = model.kind
    except ModelError as err:
        report.fail(CLAUSE_MODEL_KIND, str(err))
        return report.build()
    report.extend(validate_valuation(model))
    if kind in (MODEL_PLAIN, MODEL_COMPLEMENTED, MODEL_COMPLEMENTED_IKB):
        report.extend(validate_pi(model))
    if kind in (MODEL_COMPLEMENTED, MODEL_IKB, MODEL_COMPLEMENTED_IKB):
        report.extend(validate_lambda(model))
    if kind in (MODEL_IKB, MODEL_COMPLEMENTED_IKB):
        report.extend(validate_alpha(model))
    built = report.build()
    if kind == MODEL_COMPLEMENTED_IKB and built.ok:
        assert model.pi is not None
        report.extend(_audit_pi_star(model, model.pi, subject))
        built = report.build()
    _LOGGER.debug("Validated %s (%s): %d violations", subject, kind, len(built.violations))
    return built


# ---------------------------------------------------------------------------
# Derived explicit correspondence
# ---------------------------------------------------------------------------


def derive_pi_star(model: HMSModel) -> tuple[dict[StateId, frozenset[StateId]], ...]:
    """Derive Π*_i(ω) = Λ*_i(ω) projected onto α_i(ω) for every agent and state.

    Raises:
        MissingCorrespondenceError: the model lacks Λ or α.
        DerivationError: a premise validator, the defining-equation audit or a
            post-condition failed; ``err.report`` names the clauses.
    """
    if model.lam is None or model.alpha is None:
        raise MissingCorrespondenceError("Π* needs an implicit correspondence and α")
    frame = model.frame
    subject = f"{model.label()} Π*"

    premises = validate_lambda(model.forget_pi()).merge(validate_alpha(model), subject=subject)
    _LOGGER.debug("Π* step 1 (premises): %d violations", len(premises.violations))
    if not premises.ok:
        raise DerivationError(
            f"premises of the derivation fail: {sorted(premises.clauses())}", premises
        )

    derived = tuple(
        {
            state: frame.project_set(model.lam[i][state], model.alpha[i][state])
            for state in frame.states
        }
        for i in range(model.agents)
    )
    _LOGGER.debug("Π* step 2 (pointwise): %d agents, %d states", model.agents, len(frame.states))

    audit = _audit_pi_star(model, derived, subject)
    _LOGGER.debug("Π* step 3 (audit): %d violations", len(audit.violations))
    if not audit.ok:
        raise DerivationError("Π* is not well defined on projections", audit)

    completed = replace(model, pi=derived)
    post = validate_pi(completed).merge(validate_lambda(completed), subject=subject)
    _LOGGER.debug("Π* step 4 (post-conditions): %d violations", len(post.violations))
    if not post.ok:
        raise DerivationError(f"derived Π* fails {sorted(post.clauses())}", post)
    return derived


def complete_with_pi_star(model: HMSModel) -> HMSModel:
    """The complemented implicit knowledge-based model (Λ, α and derived Π*)."""
    return replace(model, pi=derive_pi_star(model))
