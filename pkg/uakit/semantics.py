"""Model checking the awareness language over HMS models, with partial definedness."""

from __future__ import annotations

import logging
from collections.abc import Mapping
from typing import TYPE_CHECKING

from .exceptions import ModelError, UndefinedFormulaError
from .fh import FHAlgebra, FHModel, fh_sat
from .hms import HMSModel, a_op, a_star_op, k_op, l_op
from .lattice import Event, StateId, event_intersect, event_negate, event_top
from .search import evaluate, explore
from .syntax import AtomSet, Formula, atoms_of, parse_atoms_key, print_formula

if TYPE_CHECKING:
    from .category import FHCategory

_LOGGER = logging.getLogger(__name__)


class HMSAlgebra:
    """Extensions of formulas as canonical events of one HMS model.

    Awareness and explicit knowledge use Π when the model carries it and
    fall back to α and Λ otherwise.
    """

    def __init__(self, model: HMSModel) -> None:
        self._model = model
        self._frame = model.frame
        self._explicit = model.pi is not None

    def top(self) -> Event:
        return event_top(self._frame)

    def atom(self, name: str) -> Event:
        event = self._model.valuation.get(name)
        if event is None:
            raise UndefinedFormulaError([name])
        return event

    def negate(self, value: Event) -> Event:
        return event_negate(self._frame, value)

    def conjoin(self, left: Event, right: Event) -> Event:
        return event_intersect(self._frame, [left, right])

    def implicit(self, agent: int, value: Event) -> Event:
        return l_op(self._model, agent, value)

    def aware(self, agent: int, value: Event, atoms: AtomSet) -> Event:
        if self._explicit:
            return a_op(self._model, agent, value)
        return a_star_op(self._model, agent, value)

    def explicit(self, agent: int, value: Event, atoms: AtomSet) -> Event:
        if self._explicit:
            return k_op(self._model, agent, value)
        return event_intersect(
            self._frame,
            [l_op(self._model, agent, value), a_star_op(self._model, agent, value)],
        )


class HMSEvaluator:
    """Memoized extensions for repeated queries against one model."""

    def __init__(self, model: HMSModel) -> None:
        self.model = model
        self._algebra = HMSAlgebra(model)
        self._cache: dict[Formula, Event] = {}

    def extension(self, formula: Formula) -> Event:
        missing = atoms_of(formula) - frozenset(self.model.valuation)
        if missing:
            raise UndefinedFormulaError(missing)
        return evaluate(self._algebra, formula, self._cache)

    def undefined_atoms(self, state: StateId, formula: Formula) -> AtomSet:
        """Atoms of ``formula`` neither true nor false at ``state``."""
        frame = self.model.frame
        missing: set[str] = set()
        for atom in atoms_of(formula):
            event = self.model.valuation.get(atom)
            if event is None:
                missing.add(atom)
                continue
            closure = frame.up_closure(event) | frame.up_closure(event_negate(frame, event))
            if state not in closure:
                missing.add(atom)
        return frozenset(missing)

    def defined_at(self, state: StateId, formula: Formula) -> bool:
        return not self.undefined_atoms(state, formula)

    def sat(self, state: StateId, formula: Formula) -> bool:
        if not self.model.frame.has_state(state):
            raise ModelError(f"unknown state {state!r}")
        missing = self.undefined_atoms(state, formula)
        if missing:
            raise UndefinedFormulaError(missing, state)
        return state in self.model.frame.up_closure(self.extension(formula))


def extension(model: HMSModel, formula: Formula) -> Event:
    """[φ] as a canonical event.

    Raises:
        MissingCorrespondenceError: a modality needs a correspondence the
            model lacks.
        EventError: an operator produced a non-event.
    """
    return HMSEvaluator(model).extension(formula)


def defined_at(model: HMSModel, state: StateId, formula: Formula) -> bool:
    return HMSEvaluator(model).defined_at(state, formula)


def hms_sat(model: HMSModel, state: StateId, formula: Formula) -> bool:
    """Satisfaction at a state where ``formula`` is defined.

    Raises:
        UndefinedFormulaError: some atom of ``formula`` is undefined at ``state``.
    """
    return HMSEvaluator(model).sat(state, formula)


def find_failure(subject: HMSModel | FHModel | FHCategory, formula: Formula) -> str | None:
    """A state or world where ``formula`` is defined and false, if any."""
    if isinstance(subject, HMSModel):
        evaluator = HMSEvaluator(subject)
        for state in subject.frame.states:
            if evaluator.defined_at(state, formula) and not evaluator.sat(state, formula):
                return state
        return None
    if isinstance(subject, FHModel):
        if not atoms_of(formula) <= subject.vocab:
            return None
        for world in subject.worlds:
            if not fh_sat(subject, world, formula):
                return world
        return None
    needed = atoms_of(formula)
    for key in subject.keys:
        if needed <= key:
            failed = find_failure(subject.models[key], formula)
            if failed is not None:
                return failed
    return None


def valid_in(subject: HMSModel | FHModel | FHCategory, formula: Formula) -> bool:
    """True at every state or world where ``formula`` is defined."""
    return find_failure(subject, formula) is None


def find_transfer_failure(
    fh_model: FHModel,
    hms_model: HMSModel,
    correspondence: Mapping[str, Mapping[str, StateId]],
    depth: int,
) -> tuple[Formula, str, str] | None:
    """A formula, world and space key where FH and HMS satisfaction disagree.

    ``correspondence`` sends each FH world to its HMS counterparts keyed by
    space; only spaces that contain the formula's atoms are compared.
    """
    if fh_model.agents != hms_model.agents:
        raise ModelError(f"agent counts differ: {fh_model.agents} vs {hms_model.agents}")
    frame = hms_model.frame
    algebras = (FHAlgebra(fh_model), HMSAlgebra(hms_model))
    pairs = [
        (world, key, parse_atoms_key(key), state)
        for world, targets in correspondence.items()
        for key, state in targets.items()
    ]
    for cls in explore(fh_model.vocab & frame.vocab, fh_model.agents, depth, algebras):
        truth, event = cls.values
        closure = frame.up_closure(event)
        for world, key, space, state in pairs:
            if cls.atoms <= space and (world in truth) != (state in closure):
                _LOGGER.debug(
                    "Transfer fails for %s at %s / %s", print_formula(cls.formula), world, state
                )
                return cls.formula, world, key
    return None

