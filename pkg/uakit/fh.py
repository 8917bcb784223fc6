"""Partitional, propositionally determined FH awareness models."""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .const import (
    CLAUSE_AGENT_COUNT,
    CLAUSE_AWARENESS_DOMAIN,
    CLAUSE_KNOW_AWARENESS,
    CLAUSE_PARTITION,
    CLAUSE_VALUATION_DOMAIN,
    CLAUSE_WORLDS,
)
from .exceptions import ModelError, UndefinedFormulaError
from .report import ReportBuilder, ValidationReport
from .search import evaluate, explore
from .syntax import AtomSet, Formula, atoms_key, atoms_of, print_formula

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class FHModel:
    """FH model K_Φ over vocabulary Φ.

    Relations are stored as partitions (one tuple of blocks per agent) and
    awareness as the generating atom set per agent and world.
    """

    vocab: AtomSet
    agents: int
    worlds: tuple[str, ...]
    valuation: Mapping[str, frozenset[str]]
    relations: tuple[tuple[frozenset[str], ...], ...]
    awareness: tuple[Mapping[str, frozenset[str]], ...]
    name: str = field(default="", compare=False)

    @cached_property
    def _blocks(self) -> tuple[dict[str, frozenset[str]], ...]:
        index: list[dict[str, frozenset[str]]] = []
        for blocks in self.relations:
            per_world: dict[str, frozenset[str]] = {}
            for block in blocks:
                for world in block:
                    per_world.setdefault(world, block)
            index.append(per_world)
        return tuple(index)

    @cached_property
    def world_set(self) -> frozenset[str]:
        return frozenset(self.worlds)

    def label(self) -> str:
        return self.name or f"K[{atoms_key(self.vocab)}]"

    def check_agent(self, agent: int) -> None:
        if not 0 <= agent < self.agents:
            raise ModelError(f"unknown agent {agent + 1} (model has {self.agents})")

    def check_world(self, world: str) -> None:
        if world not in self.world_set:
            raise ModelError(f"unknown world {world!r}")

    def block(self, agent: int, world: str) -> frozenset[str]:
        """Worlds agent ``agent`` cannot distinguish from ``world``."""
        self.check_agent(agent)
        self.check_world(world)
        try:
            return self._blocks[agent][world]
        except (IndexError, KeyError) as err:
            raise ModelError(f"world {world!r} has no block for agent {agent + 1}") from err

    def aware_of(self, agent: int, world: str) -> frozenset[str]:
        self.check_agent(agent)
        self.check_world(world)
        try:
            return self.awareness[agent][world]
        except (IndexError, KeyError) as err:
            raise ModelError(f"world {world!r} has no awareness for agent {agent + 1}") from err

    def truths(self, world: str) -> frozenset[str]:
        return frozenset(p for p, worlds in self.valuation.items() if world in worlds)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate_fh(model: FHModel) -> ValidationReport:
    """Check partition well-formedness, awareness constancy and domains."""
    report = ReportBuilder(model.label())
    worlds = model.world_set
    if not model.worlds:
        report.fail(CLAUSE_WORLDS, "model has no worlds")
    if len(worlds) != len(model.worlds):
        report.fail(CLAUSE_WORLDS, "world ids are not unique")
    if model.agents < 1:
        report.fail(CLAUSE_AGENT_COUNT, "at least one agent is required")
    if len(model.relations) != model.agents or len(model.awareness) != model.agents:
        report.fail(
            CLAUSE_AGENT_COUNT,
            f"expected {model.agents} relations and awareness maps, got "
            f"{len(model.relations)} and {len(model.awareness)}",
        )
        return report.build()

    for agent, blocks in enumerate(model.relations):
        seen: dict[str, int] = {}
        for index, block in enumerate(blocks):
            if not block:
                report.fail(CLAUSE_PARTITION, f"block {index} is empty", agent=agent)
            for world in sorted(block):
                if world not in worlds:
                    report.fail(
                        CLAUSE_PARTITION, "block mentions unknown world", agent=agent, state=world
                    )
                elif world in seen:
                    report.fail(
                        CLAUSE_PARTITION,
                        f"world is in blocks {seen[world]} and {index}",
                        agent=agent,
                        state=world,
                    )
                else:
                    seen[world] = index
        for world in model.worlds:
            if world not in seen:
                report.fail(CLAUSE_PARTITION, "world is in no block", agent=agent, state=world)

    for agent, aware in enumerate(model.awareness):
        for world in model.worlds:
            atoms = aware.get(world)
            if atoms is None:
                report.fail(CLAUSE_AWARENESS_DOMAIN, "no awareness set", agent=agent, state=world)
            elif not atoms <= model.vocab:
                report.fail(
                    CLAUSE_AWARENESS_DOMAIN,
                    f"awareness {sorted(atoms)} is not within the vocabulary",
                    agent=agent,
                    state=world,
                )
        for world in sorted(set(aware) - worlds):
            report.fail(
                CLAUSE_AWARENESS_DOMAIN, "awareness for unknown world", agent=agent, state=world
            )
        for block in model.relations[agent]:
            levels = {aware.get(w) for w in block if w in worlds}
            if len(levels) > 1:
                report.fail(
                    CLAUSE_KNOW_AWARENESS,
                    f"awareness differs within block {sorted(block)}",
                    agent=agent,
                    state=min(block),
                )

    if set(model.valuation) != set(model.vocab):
        report.fail(
            CLAUSE_VALUATION_DOMAIN,
            f"valuation atoms {sorted(model.valuation)} "
            f"differ from vocabulary {sorted(model.vocab)}",
        )
    for atom, truth in sorted(model.valuation.items()):
        stray = truth - worlds
        if stray:
            report.fail(CLAUSE_VALUATION_DOMAIN, f"{atom} holds at unknown worlds {sorted(stray)}")
    return report.build()


# ---------------------------------------------------------------------------
# Semantics
# ---------------------------------------------------------------------------


class FHAlgebra:
    """Truth sets of a single FH model."""

    def __init__(self, model: FHModel) -> None:
        self._model = model
        self._all = model.world_set

    def top(self) -> frozenset[str]:
        return self._all

    def atom(self, name: str) -> frozenset[str]:
        truth = self._model.valuation.get(name)
        if truth is None:
            raise UndefinedFormulaError([name])
        return truth

    def negate(self, value: frozenset[str]) -> frozenset[str]:
        return self._all - value

    def conjoin(self, left: frozenset[str], right: frozenset[str]) -> frozenset[str]:
        return left & right

    def implicit(self, agent: int, value: frozenset[str]) -> frozenset[str]:
        return frozenset(w for w in self._model.worlds if self._model.block(agent, w) <= value)

    def aware(self, agent: int, value: frozenset[str], atoms: AtomSet) -> frozenset[str]:
        return frozenset(w for w in self._model.worlds if atoms <= self._model.aware_of(agent, w))

    def explicit(self, agent: int, value: frozenset[str], atoms: AtomSet) -> frozenset[str]:
        return self.implicit(agent, value) & self.aware(agent, value, atoms)


class FHEvaluator:
    """Cached truth sets for repeated queries against one model."""

    def __init__(self, model: FHModel) -> None:
        self.model = model
        self._algebra = FHAlgebra(model)
        self._cache: dict[Formula, frozenset[str]] = {}

    def defined(self, formula: Formula) -> bool:
        return atoms_of(formula) <= self.model.vocab

    def truth_set(self, formula: Formula) -> frozenset[str]:
        missing = atoms_of(formula) - self.model.vocab
        if missing:
            raise UndefinedFormulaError(missing)
        return evaluate(self._algebra, formula, self._cache)


def aw_contains(model: FHModel, agent: int, world: str, formula: Formula) -> bool:
    """Whether ``formula`` is in the awareness set of ``agent`` at ``world``."""
    return atoms_of(formula) <= model.aware_of(agent, world)


def truth_set(model: FHModel, formula: Formula) -> frozenset[str]:
    return FHEvaluator(model).truth_set(formula)


def fh_sat(model: FHModel, world: str, formula: Formula) -> bool:
    """Satisfaction of ``formula`` at ``world``.

    Raises:
        UndefinedFormulaError: the formula uses atoms outside the vocabulary.
        ModelError: unknown world or agent.
    """
    model.check_world(world)
    return world in truth_set(model, formula)


def find_distinguishing_formula(
    first: FHModel,
    second: FHModel,
    pairing: Mapping[str, str],
    depth: int,
) -> tuple[Formula, str] | None:
    """Return a formula and world of ``first`` where the paired models disagree."""
    if first.agents != second.agents:
        raise ModelError(f"agent counts differ: {first.agents} vs {second.agents}")
    missing = first.world_set - set(pairing)
    if missing:
        raise ModelError(f"pairing is not total, missing {sorted(missing)}")
    shared = first.vocab & second.vocab
    algebras = (FHAlgebra(first), FHAlgebra(second))
    for cls in explore(shared, first.agents, depth, algebras):
        here, there = cls.values
        for world in first.worlds:
            if (world in here) != (pairing[world] in there):
                _LOGGER.debug(
                    "Distinguishing formula %s at %s", print_formula(cls.formula), world
                )
                return cls.formula, world
    return None


def fh_modally_equivalent(
    first: FHModel,
    second: FHModel,
    pairing: Mapping[str, str],
    depth: int,
) -> bool:
    """Whether paired worlds agree on every shared-sublanguage formula up to ``depth``."""
    return find_distinguishing_formula(first, second, pairing, depth) is None


def build_fh_model(
    *,
    vocab: AtomSet,
    agents: int,
    worlds: Sequence[str],
    valuation: Mapping[str, Sequence[str] | frozenset[str]],
    relations: Sequence[Sequence[Sequence[str] | frozenset[str]]],
    awareness: Sequence[Mapping[str, Sequence[str] | frozenset[str]]],
    name: str = "",
) -> FHModel:
    """Build an FH model from plain containers."""
    return FHModel(
        vocab=frozenset(vocab),
        agents=agents,
        worlds=tuple(worlds),
        valuation={p: frozenset(ws) for p, ws in valuation.items()},
        relations=tuple(tuple(frozenset(b) for b in blocks) for blocks in relations),
        awareness=tuple({w: frozenset(a) for w, a in aware.items()} for aware in awareness),
        name=name,
    )
