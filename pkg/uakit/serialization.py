"""JSON file formats for FH models, categories, HMS models, proofs and traces."""

from __future__ import annotations

import json
import logging
from collections.abc import Callable, Mapping
from pathlib import Path
from typing import Any

import voluptuous as vol

from .category import BoundedMorphism, FHCategory, build_category
from .const import (
    ATOM_PATTERN,
    CONF_AGENT,
    CONF_AGENTS,
    CONF_ALPHA,
    CONF_ATOMS,
    CONF_AWARENESS,
    CONF_BASE,
    CONF_BY,
    CONF_CORRESPONDENCE,
    CONF_ENTRY,
    CONF_EVENT_BASE,
    CONF_FORMULA,
    CONF_KIND,
    CONF_KINF,
    CONF_LAMBDA,
    CONF_LINE,
    CONF_LINES,
    CONF_MODE,
    CONF_MODELS,
    CONF_MORPHISMS,
    CONF_MP,
    CONF_NAME,
    CONF_PI,
    CONF_PROJECTIONS,
    CONF_RELATIONS,
    CONF_SCHEMA,
    CONF_SOURCE,
    CONF_SPACE,
    CONF_SPACES,
    CONF_STEPS,
    CONF_SUBST,
    CONF_TARGET,
    CONF_TARGET_KIND,
    CONF_VALUATION,
    CONF_WORLDS,
    KIND_CATEGORY,
    KIND_FH,
    KIND_HMS,
    KIND_PROOF,
    KIND_TRACE,
    MODE_COPY,
    MODE_QUOTIENT,
    PROJECTION_ARROW,
    SUBST_I,
    SUBST_J,
    SUBST_PHI,
    SUBST_PSI,
    TARGET_CATEGORY,
    TARGETS,
)
from .exceptions import FormulaSyntaxError, ModelFileError, UakitError
from .fh import FHModel, build_fh_model
from .hms import HMSModel
from .lattice import Event, HMSFrame, build_frame
from .logic import KInference, ModusPonens, Proof, ProofLine, SchemaStep
from .parser import parse_formula
from .syntax import AtomSet, atoms_key, make_vocab, parse_atoms_key, print_formula, space_order
from .transforms import TransformTrace

_LOGGER = logging.getLogger(__name__)

type JSONDict = dict[str, Any]

# ---------------------------------------------------------------------------
# Schemas
# ---------------------------------------------------------------------------

_ATOM = vol.All(str, vol.Match(f"^{ATOM_PATTERN}$"))
_ID = vol.All(str, vol.Length(min=1))
_SPACE_KEY = vol.All(str, vol.Match(f"^({ATOM_PATTERN}(,{ATOM_PATTERN})*)?$"))
_AGENTS = vol.All(int, vol.Range(min=1))
_STATES = [_ID]

_FH_FIELDS = {
    vol.Required(CONF_ATOMS): [_ATOM],
    vol.Required(CONF_AGENTS): _AGENTS,
    vol.Required(CONF_WORLDS): vol.All([_ID], vol.Length(min=1)),
    vol.Required(CONF_VALUATION): {_ATOM: [_ID]},
    vol.Required(CONF_RELATIONS): [[vol.All([_ID], vol.Length(min=1))]],
    vol.Required(CONF_AWARENESS): [{_ID: [_ATOM]}],
    vol.Optional(CONF_NAME, default=""): str,
}

FH_SCHEMA = vol.Schema({vol.Required(CONF_KIND): KIND_FH, **_FH_FIELDS})
_EMBEDDED_FH_SCHEMA = vol.Schema({vol.Optional(CONF_KIND): KIND_FH, **_FH_FIELDS})

CATEGORY_SCHEMA = vol.Schema(
    vol.Any(
        {
            vol.Required(CONF_KIND): KIND_CATEGORY,
            vol.Required(CONF_BASE): _EMBEDDED_FH_SCHEMA,
            vol.Optional(CONF_MODE, default=MODE_COPY): vol.In([MODE_COPY, MODE_QUOTIENT]),
        },
        {
            vol.Required(CONF_KIND): KIND_CATEGORY,
            vol.Required(CONF_ATOMS): [_ATOM],
            vol.Required(CONF_MODE): vol.In([MODE_COPY, MODE_QUOTIENT]),
            vol.Required(CONF_MODELS): {_SPACE_KEY: _EMBEDDED_FH_SCHEMA},
            vol.Required(CONF_MORPHISMS): {str: {_ID: _ID}},
            vol.Optional(CONF_ENTRY, default=dict): {_ID: _ID},
        },
    )
)

_EVENT = {vol.Required(CONF_SPACE): _SPACE_KEY, vol.Required(CONF_EVENT_BASE): _STATES}

HMS_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_KIND): KIND_HMS,
        vol.Required(CONF_ATOMS): [_ATOM],
        vol.Required(CONF_AGENTS): _AGENTS,
        vol.Required(CONF_SPACES): {_SPACE_KEY: _STATES},
        vol.Required(CONF_PROJECTIONS): {str: {_ID: _ID}},
        vol.Required(CONF_VALUATION): {_ATOM: _EVENT},
        vol.Optional(CONF_PI): [{_ID: _STATES}],
        vol.Optional(CONF_LAMBDA): [vol.Any({_ID: _STATES}, [vol.All(_STATES, vol.Length(min=1))])],
        vol.Optional(CONF_ALPHA): [{_ID: _SPACE_KEY}],
        vol.Optional(CONF_NAME, default=""): str,
    }
)

_LINE_NUMBER = vol.All(int, vol.Range(min=1))

PROOF_SCHEMA = vol.Schema(
    {
        vol.Optional(CONF_KIND): KIND_PROOF,
        vol.Optional(CONF_ATOMS): [_ATOM],
        vol.Required(CONF_LINES): vol.All(
            [
                {
                    vol.Required(CONF_FORMULA): str,
                    vol.Required(CONF_BY): vol.Any(
                        {
                            vol.Required(CONF_SCHEMA): str,
                            vol.Optional(CONF_SUBST, default=dict): {
                                vol.In([SUBST_PHI, SUBST_PSI]): str,
                                vol.In([SUBST_I, SUBST_J]): _LINE_NUMBER,
                            },
                        },
                        {vol.Required(CONF_MP): vol.All([_LINE_NUMBER], vol.Length(min=2, max=2))},
                        {
                            vol.Required(CONF_KINF): {
                                vol.Required(CONF_LINE): _LINE_NUMBER,
                                vol.Required(CONF_AGENT): _LINE_NUMBER,
                            }
                        },
                    ),
                }
            ],
            vol.Length(min=1),
        ),
    }
)

TRACE_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_KIND): KIND_TRACE,
        vol.Required(CONF_SOURCE): str,
        vol.Required(CONF_TARGET_KIND): vol.In(TARGETS),
        vol.Required(CONF_TARGET): dict,
        vol.Required(CONF_CORRESPONDENCE): {_ID: {_SPACE_KEY: _ID}},
        vol.Optional(CONF_STEPS, default=list): [str],
    }
)


def _check(schema: vol.Schema, data: Any, what: str) -> JSONDict:
    try:
        return schema(data)
    except vol.Invalid as err:
        raise ModelFileError(f"invalid {what} file: {err}") from err


def _guard[T](what: str, build: Callable[[], T]) -> T:
    """Run ``build`` and report structural problems as file errors."""
    try:
        return build()
    except FormulaSyntaxError:
        raise
    except (UakitError, KeyError, ValueError) as err:
        raise ModelFileError(f"invalid {what} file: {err}") from err


# ---------------------------------------------------------------------------
# FH models and categories
# ---------------------------------------------------------------------------


def _fh_from(data: JSONDict) -> FHModel:
    return build_fh_model(
        vocab=make_vocab(data[CONF_ATOMS]),
        agents=data[CONF_AGENTS],
        worlds=data[CONF_WORLDS],
        valuation=data[CONF_VALUATION],
        relations=data[CONF_RELATIONS],
        awareness=data[CONF_AWARENESS],
        name=data.get(CONF_NAME, ""),
    )


def load_fh(data: Any) -> FHModel:
    """Raises ModelFileError for anything that is not an FH model file."""
    checked = _check(FH_SCHEMA, data, KIND_FH)
    return _guard(KIND_FH, lambda: _fh_from(checked))


def dump_fh(model: FHModel, *, embedded: bool = False) -> JSONDict:
    data: JSONDict = {} if embedded else {CONF_KIND: KIND_FH}
    data.update(
        {
            CONF_ATOMS: sorted(model.vocab),
            CONF_AGENTS: model.agents,
            CONF_WORLDS: list(model.worlds),
            CONF_VALUATION: {p: sorted(ws) for p, ws in sorted(model.valuation.items())},
            CONF_RELATIONS: [sorted(sorted(b) for b in blocks) for blocks in model.relations],
            CONF_AWARENESS: [
                {w: sorted(aware[w]) for w in model.worlds if w in aware}
                for aware in model.awareness
            ],
        }
    )
    if model.name:
        data[CONF_NAME] = model.name
    return data


def _projection_key(upper: AtomSet, lower: AtomSet) -> str:
    return f"{atoms_key(upper)}{PROJECTION_ARROW}{atoms_key(lower)}"


def _parse_projection_key(key: str) -> tuple[AtomSet, AtomSet]:
    upper, sep, lower = key.partition(PROJECTION_ARROW)
    if not sep:
        raise ValueError(f"projection key {key!r} lacks {PROJECTION_ARROW!r}")
    return parse_atoms_key(upper), parse_atoms_key(lower)


def _category_from(data: JSONDict) -> FHCategory:
    if CONF_BASE in data:
        return build_category(_fh_from(data[CONF_BASE]), data[CONF_MODE])
    models = {parse_atoms_key(k): _fh_from(m) for k, m in data[CONF_MODELS].items()}
    morphisms: dict[tuple[AtomSet, AtomSet], BoundedMorphism] = {}
    for key, mapping in data[CONF_MORPHISMS].items():
        upper, lower = _parse_projection_key(key)
        if upper not in models or lower not in models:
            raise ValueError(f"morphism {key!r} names a missing model")
        morphisms[(upper, lower)] = BoundedMorphism(models[upper], models[lower], dict(mapping))
    return FHCategory(
        make_vocab(data[CONF_ATOMS]), data[CONF_MODE], models, morphisms, dict(data[CONF_ENTRY])
    )


def load_category(data: Any) -> FHCategory:
    """A category from a base model and mode, or from its expanded form."""
    checked = _check(CATEGORY_SCHEMA, data, KIND_CATEGORY)
    return _guard(KIND_CATEGORY, lambda: _category_from(checked))


def dump_category(category: FHCategory) -> JSONDict:
    """The expanded form: every model and every morphism."""
    return {
        CONF_KIND: KIND_CATEGORY,
        CONF_ATOMS: sorted(category.vocab),
        CONF_MODE: category.mode,
        CONF_MODELS: {
            atoms_key(key): dump_fh(category.models[key], embedded=True) for key in category.keys
        },
        CONF_MORPHISMS: {
            _projection_key(upper, lower): dict(sorted(morphism.mapping.items()))
            for (upper, lower), morphism in sorted(
                category.morphisms.items(),
                key=lambda item: (space_order(item[0][0]), space_order(item[0][1])),
            )
        },
        CONF_ENTRY: dict(sorted(category.entry.items())),
    }


# ---------------------------------------------------------------------------
# HMS models
# ---------------------------------------------------------------------------


def _frame_from(data: JSONDict) -> HMSFrame:
    return build_frame(
        vocab=make_vocab(data[CONF_ATOMS]),
        spaces={parse_atoms_key(k): v for k, v in data[CONF_SPACES].items()},
        projections={
            _parse_projection_key(k): mapping for k, mapping in data[CONF_PROJECTIONS].items()
        },
    )


def _implicit_from(entry: Mapping[str, list[str]] | list[list[str]]) -> dict[str, frozenset[str]]:
    """Λ_i as a mapping; a list of blocks is the partition form."""
    if isinstance(entry, Mapping):
        return {state: frozenset(states) for state, states in entry.items()}
    mapping: dict[str, frozenset[str]] = {}
    for block in entry:
        members = frozenset(block)
        for state in block:
            if state in mapping:
                raise ValueError(f"state {state!r} appears in two blocks")
            mapping[state] = members
    return mapping


def _hms_from(data: JSONDict) -> HMSModel:
    frame = _frame_from(data)
    valuation = {
        atom: Event(parse_atoms_key(spec[CONF_SPACE]), frozenset(spec[CONF_EVENT_BASE]))
        for atom, spec in data[CONF_VALUATION].items()
    }
    pi = lam = alpha = None
    if CONF_PI in data:
        pi = tuple(
            {state: frozenset(states) for state, states in entry.items()}
            for entry in data[CONF_PI]
        )
    if CONF_LAMBDA in data:
        lam = tuple(_implicit_from(entry) for entry in data[CONF_LAMBDA])
    if CONF_ALPHA in data:
        alpha = tuple(
            {state: parse_atoms_key(key) for state, key in entry.items()}
            for entry in data[CONF_ALPHA]
        )
    return HMSModel(
        frame=frame,
        agents=data[CONF_AGENTS],
        valuation=valuation,
        pi=pi,
        lam=lam,
        alpha=alpha,
        name=data.get(CONF_NAME, ""),
    )


def load_hms(data: Any) -> HMSModel:
    """Raises ModelFileError for anything that is not an HMS model file."""
    checked = _check(HMS_SCHEMA, data, KIND_HMS)
    return _guard(KIND_HMS, lambda: _hms_from(checked))


def _dump_correspondence(mapping: Mapping[str, frozenset[str]]) -> dict[str, list[str]]:
    return {state: sorted(states) for state, states in sorted(mapping.items())}


def dump_hms(model: HMSModel) -> JSONDict:
    frame = model.frame
    data: JSONDict = {
        CONF_KIND: KIND_HMS,
        CONF_ATOMS: sorted(frame.vocab),
        CONF_AGENTS: model.agents,
        CONF_SPACES: {atoms_key(key): list(frame.spaces[key]) for key in frame.space_keys},
        CONF_PROJECTIONS: {
            _projection_key(upper, lower): dict(sorted(mapping.items()))
            for (upper, lower), mapping in sorted(
                frame.projections.items(),
                key=lambda item: (space_order(item[0][0]), space_order(item[0][1])),
            )
        },
        CONF_VALUATION: {
            atom: {
                CONF_SPACE: atoms_key(event.base_space),
                CONF_EVENT_BASE: sorted(event.base),
            }
            for atom, event in sorted(model.valuation.items())
        },
    }
    if model.pi is not None:
        data[CONF_PI] = [_dump_correspondence(m) for m in model.pi]
    if model.lam is not None:
        data[CONF_LAMBDA] = [_dump_correspondence(m) for m in model.lam]
    if model.alpha is not None:
        data[CONF_ALPHA] = [
            {state: atoms_key(level) for state, level in sorted(m.items())} for m in model.alpha
        ]
    if model.name:
        data[CONF_NAME] = model.name
    return data


# ---------------------------------------------------------------------------
# Proofs
# ---------------------------------------------------------------------------


def _proof_from(data: JSONDict) -> Proof:
    vocab = data.get(CONF_ATOMS)
    lines: list[ProofLine] = []
    for number, raw in enumerate(data[CONF_LINES], start=1):
        try:
            formula = parse_formula(raw[CONF_FORMULA], vocab)
            by = raw[CONF_BY]
            if CONF_SCHEMA in by:
                subst: dict[str, Any] = {}
                for key, value in by[CONF_SUBST].items():
                    if key in (SUBST_I, SUBST_J):
                        subst[key] = value - 1
                    else:
                        subst[key] = parse_formula(value, vocab)
                justification: Any = SchemaStep(by[CONF_SCHEMA], subst)
            elif CONF_MP in by:
                first, second = by[CONF_MP]
                justification = ModusPonens(first, second)
            else:
                justification = KInference(by[CONF_KINF][CONF_LINE], by[CONF_KINF][CONF_AGENT] - 1)
        except FormulaSyntaxError as err:
            raise ModelFileError(f"proof line {number}: {err}") from err
        lines.append(ProofLine(formula, justification))
    return Proof(tuple(lines))


def load_proof(data: Any) -> Proof:
    """Line numbers and agents in the file are 1-based."""
    checked = _check(PROOF_SCHEMA, data, KIND_PROOF)
    return _guard(KIND_PROOF, lambda: _proof_from(checked))


def dump_proof(proof: Proof) -> JSONDict:
    lines: list[JSONDict] = []
    for line in proof.lines:
        match line.by:
            case SchemaStep(schema, subst):
                by: JSONDict = {
                    CONF_SCHEMA: schema,
                    CONF_SUBST: {
                        key: value + 1 if isinstance(value, int) else print_formula(value)
                        for key, value in subst.items()
                    },
                }
            case ModusPonens(first, second):
                by = {CONF_MP: [first, second]}
            case KInference(number, agent):
                by = {CONF_KINF: {CONF_LINE: number, CONF_AGENT: agent + 1}}
        lines.append({CONF_FORMULA: print_formula(line.formula), CONF_BY: by})
    return {CONF_KIND: KIND_PROOF, CONF_LINES: lines}


# ---------------------------------------------------------------------------
# Traces and dispatch
# ---------------------------------------------------------------------------


def dump_model(model: FHModel | FHCategory | HMSModel) -> JSONDict:
    if isinstance(model, FHModel):
        return dump_fh(model)
    if isinstance(model, HMSModel):
        return dump_hms(model)
    return dump_category(model)


def load_model(data: Any) -> FHModel | FHCategory | HMSModel:
    """Dispatch on the ``kind`` field."""
    kind = data.get(CONF_KIND) if isinstance(data, Mapping) else None
    loaders: dict[str, Callable[[Any], FHModel | FHCategory | HMSModel]] = {
        KIND_FH: load_fh,
        KIND_CATEGORY: load_category,
        KIND_HMS: load_hms,
    }
    if kind not in loaders:
        raise ModelFileError(f"unsupported model kind {kind!r}")
    return loaders[kind](data)


def dump_trace(trace: TransformTrace) -> JSONDict:
    return {
        CONF_KIND: KIND_TRACE,
        CONF_SOURCE: trace.source,
        CONF_TARGET_KIND: trace.target_kind,
        CONF_TARGET: dump_model(trace.target),
        CONF_CORRESPONDENCE: {
            world: dict(sorted(targets.items()))
            for world, targets in sorted(trace.correspondence.items())
        },
        CONF_STEPS: list(trace.steps),
    }


def load_trace(data: Any) -> TransformTrace:
    checked = _check(TRACE_SCHEMA, data, KIND_TRACE)
    target = load_model(checked[CONF_TARGET])
    if checked[CONF_TARGET_KIND] == TARGET_CATEGORY and not isinstance(target, FHCategory):
        raise ModelFileError("trace target does not match its kind")
    return TransformTrace(
        checked[CONF_SOURCE],
        checked[CONF_TARGET_KIND],
        target,
        checked[CONF_CORRESPONDENCE],
        tuple(checked[CONF_STEPS]),
    )


def read_json(path: str | Path) -> Any:
    try:
        with Path(path).open(encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as err:
        raise ModelFileError(f"cannot read {path}: {err.strerror or err}") from err
    except json.JSONDecodeError as err:
        raise ModelFileError(f"{path} is not valid JSON: {err}") from err


def write_json(path: str | Path, data: Any, *, pretty: bool = False) -> None:
    try:
        with Path(path).open("w", encoding="utf-8") as handle:
            json.dump(data, handle, indent=2 if pretty else None, ensure_ascii=False)
            handle.write("\n")
    except OSError as err:
        raise ModelFileError(f"cannot write {path}: {err.strerror or err}") from err
    _LOGGER.debug("Wrote %s", path)
