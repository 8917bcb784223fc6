"""Transformations between FH categories and HMS models."""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field, replace
from typing import Any

from .category import FHCategory, build_category
from .const import (
    MODE_COPY,
    MODEL_COMPLEMENTED,
    MODEL_COMPLEMENTED_IKB,
    MODEL_IKB,
    TARGET_CATEGORY,
    TARGET_FH,
    TARGET_FH_STAR,
    TARGET_HMS,
    TARGET_IKB,
)
from .exceptions import MissingCorrespondenceError, ModelError
from .fh import FHModel, validate_fh
from .hms import HMSModel, complete_with_pi_star
from .lattice import Event, HMSFrame, StateId, event_from_states
from .syntax import AtomSet, atoms_key

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class TransformTrace:
    """Result of one transform together with its state correspondence.

    ``correspondence`` maps each source world or state to the states that
    stand for it in the target, keyed by space (``""`` for a single space).
    """

    source: str
    target_kind: str
    target: Any
    correspondence: Mapping[str, Mapping[str, str]]
    steps: tuple[str, ...] = field(default=())


# ---------------------------------------------------------------------------
# FH category → HMS
# ---------------------------------------------------------------------------


def t_transform(category: FHCategory) -> HMSModel:
    """The implicit knowledge-based HMS model of a valid category.

    Spaces are the world sets, projections are the morphisms, Λ is read off
    the accessibility blocks and α off the awareness atom sets.

    Raises:
        EventError: some v(p) is not an event, so the category is invalid.
    """
    frame = HMSFrame(
        vocab=category.vocab,
        spaces={key: category.models[key].worlds for key in category.keys},
        projections={
            (upper, upper - {atom}): dict(category.morphism(upper, upper - {atom}).mapping)
            for upper in category.keys
            for atom in sorted(upper)
        },
    )
    agents = category.top.agents
    lam = tuple(
        {
            world: model.block(agent, world)
            for model in category.models.values()
            for world in model.worlds
        }
        for agent in range(agents)
    )
    alpha = tuple(
        {
            world: model.aware_of(agent, world)
            for model in category.models.values()
            for world in model.worlds
        }
        for agent in range(agents)
    )
    valuation: dict[str, Event] = {}
    for atom in sorted(category.vocab):
        raw = frozenset().union(
            *(model.valuation.get(atom, frozenset()) for model in category.models.values())
        )
        valuation[atom] = event_from_states(frame, raw, frozenset((atom,)))
    return HMSModel(
        frame=frame,
        agents=agents,
        valuation=valuation,
        lam=lam,
        alpha=alpha,
        name=f"T({category.top.label()})",
    )


def _require_valid_fh(base: FHModel) -> None:
    report = validate_fh(base)
    if not report.ok:
        raise ModelError(f"{base.label()} is not a valid FH model: {sorted(report.clauses())}")


def truncated_hms_transform(base: FHModel, mode: str = MODE_COPY) -> HMSModel:
    """Build the category and T-transform it (the ikb model, before Π*)."""
    return _truncated(base, mode)[1]


def _truncated(base: FHModel, mode: str) -> tuple[FHCategory, HMSModel]:
    _require_valid_fh(base)
    category = build_category(base, mode)
    _LOGGER.debug(
        "HMS-transform step 1 (category): %d models, %d morphisms",
        len(category.models),
        len(category.morphisms),
    )
    model = t_transform(category)
    _LOGGER.debug(
        "HMS-transform step 2 (T-transform): %d spaces, %d states",
        len(model.frame.spaces),
        len(model.frame.states),
    )
    return category, model


def hms_transform(base: FHModel, mode: str = MODE_COPY) -> HMSModel:
    """The complemented HMS model of ``base``: category, T-transform, Π*, drop α."""
    return _hms(base, mode)[1]


def _hms(base: FHModel, mode: str) -> tuple[FHCategory, HMSModel]:
    category, ikb = _truncated(base, mode)
    completed = complete_with_pi_star(ikb)
    _LOGGER.debug("HMS-transform step 3 (Π*): derived for %d agents", completed.agents)
    model = completed.forget_alpha()
    _LOGGER.debug("HMS-transform step 4: awareness functions erased")
    return category, replace(model, name=f"HMS({base.label()})")


# ---------------------------------------------------------------------------
# HMS → FH
# ---------------------------------------------------------------------------


type _TopParts = tuple[
    AtomSet,
    tuple[StateId, ...],
    dict[str, frozenset[StateId]],
    tuple[tuple[frozenset[StateId], ...], ...],
]


def _top_components(model: HMSModel) -> _TopParts:
    frame = model.frame
    top = frame.vocab
    worlds = frame.space(top)
    top_closure = frozenset(worlds)
    valuation = {
        atom: frame.up_closure(event) & top_closure
        for atom, event in sorted(model.valuation.items())
    }
    relations = tuple(
        tuple(dict.fromkeys(frozenset(model.lambda_set(agent, w)) for w in worlds))
        for agent in range(model.agents)
    )
    return top, worlds, valuation, relations


def fh_transform(model: HMSModel) -> FHModel:
    """FH model on the top space, aware of the space of each explicit possibility set.

    Raises:
        MissingCorrespondenceError: the model is not complemented.
    """
    if model.kind not in (MODEL_COMPLEMENTED, MODEL_COMPLEMENTED_IKB):
        raise MissingCorrespondenceError(
            f"FH-transform needs a complemented model, got {model.kind}"
        )
    top, worlds, valuation, relations = _top_components(model)
    awareness = tuple(
        {w: model.pi_space(agent, w) for w in worlds} for agent in range(model.agents)
    )
    return FHModel(
        top, model.agents, worlds, valuation, relations, awareness, f"FH({model.label()})"
    )


def fh_star_transform(model: HMSModel) -> FHModel:
    """FH model on the top space with awareness read from α.

    Raises:
        MissingCorrespondenceError: the model has no awareness function.
    """
    if model.kind not in (MODEL_IKB, MODEL_COMPLEMENTED_IKB):
        raise MissingCorrespondenceError(f"FH*-transform needs an ikb model, got {model.kind}")
    top, worlds, valuation, relations = _top_components(model)
    awareness = tuple(
        {w: model.alpha_of(agent, w) for w in worlds} for agent in range(model.agents)
    )
    return FHModel(
        top, model.agents, worlds, valuation, relations, awareness, f"FH*({model.label()})"
    )


# ---------------------------------------------------------------------------
# Traces
# ---------------------------------------------------------------------------


def category_correspondence(category: FHCategory) -> dict[str, dict[str, str]]:
    """w ↦ {Φ: w_Φ} for every world the category was built from."""
    top = category.vocab
    entry = category.entry or {w: w for w in category.top.worlds}
    return {
        world: {
            atoms_key(key): category.morphism(top, key)(image) for key in category.keys
        }
        for world, image in entry.items()
    }


def _identity_correspondence(model: HMSModel) -> dict[str, dict[str, str]]:
    key = atoms_key(model.frame.vocab)
    return {state: {key: state} for state in model.frame.space(model.frame.vocab)}


def transform_with_trace(
    source: FHModel | HMSModel, target: str, mode: str = MODE_COPY
) -> TransformTrace:
    """Run the transform to ``target`` and record its state correspondence."""
    steps: list[str] = []
    if target in (TARGET_HMS, TARGET_IKB, TARGET_CATEGORY):
        if not isinstance(source, FHModel):
            raise ModelError(f"transform to {target} needs an FH model")
        if target == TARGET_CATEGORY:
            _require_valid_fh(source)
            category = build_category(source, mode)
            steps.append(f"category: {len(category.models)} models ({mode})")
            result: Any = category
        elif target == TARGET_IKB:
            category, result = _truncated(source, mode)
            steps.extend(
                [
                    f"category: {len(category.models)} models ({mode})",
                    f"T-transform: {len(result.frame.states)} states",
                ]
            )
        else:
            category, result = _hms(source, mode)
            steps.extend(
                [
                    f"category: {len(category.models)} models ({mode})",
                    f"T-transform: {len(result.frame.states)} states",
                    "derived Π*",
                    "erased α",
                ]
            )
        return TransformTrace(
            source.label(), target, result, category_correspondence(category), tuple(steps)
        )
    if target in (TARGET_FH, TARGET_FH_STAR):
        if not isinstance(source, HMSModel):
            raise ModelError(f"transform to {target} needs an HMS model")
        result = fh_transform(source) if target == TARGET_FH else fh_star_transform(source)
        steps.append(f"top space: {len(result.worlds)} worlds")
        return TransformTrace(
            source.label(), target, result, _identity_correspondence(source), tuple(steps)
        )
    raise ValueError(f"unknown transform target {target!r}")
