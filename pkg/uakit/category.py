"""Bounded morphisms and the category of subjective FH models."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .const import (
    CLAUSE_ATOMIC_HARMONY,
    CLAUSE_AWARENESS_CONSISTENCY,
    CLAUSE_BACK,
    CLAUSE_CATEGORY_DISJOINT,
    CLAUSE_CATEGORY_MODELS,
    CLAUSE_CATEGORY_MORPHISMS,
    CLAUSE_COMMUTATION,
    CLAUSE_HOMOMORPHISM,
    CLAUSE_IDENTITY,
    CLAUSE_MORPHISM_TOTAL,
    CLAUSE_MORPHISM_VOCABULARY,
    CLAUSE_SURJECTIVITY,
    DEFAULT_FAMILY_SIZE,
    MODE_COPY,
    MODE_QUOTIENT,
    PROP_JOIN_EQUIVALENCE,
    PROP_MEET_EQUIVALENCE,
    PROP_MODAL_EQUIVALENCE,
)
from .exceptions import ModelError, VocabularyError
from .fh import FHModel, find_distinguishing_formula, validate_fh
from .report import (
    PropertyReport,
    PropertyTally,
    ReportBuilder,
    ValidationReport,
    Witness,
)
from .settings import max_atoms
from .syntax import AtomSet, atoms_key, print_formula, space_order, subsets

_LOGGER = logging.getLogger(__name__)

@dataclass(frozen=True)
class BoundedMorphism:
    """f^Φ_Ψ from ``source`` (vocabulary Φ) onto ``target`` (vocabulary Ψ ⊆ Φ)."""

    source: FHModel
    target: FHModel
    mapping: Mapping[str, str]

    def __call__(self, world: str) -> str:
        try:
            return self.mapping[world]
        except KeyError as err:
            raise ModelError(f"morphism undefined at {world!r}") from err

    def label(self) -> str:
        return f"f[{atoms_key(self.source.vocab)}->{atoms_key(self.target.vocab)}]"


def compose(first: BoundedMorphism, second: BoundedMorphism) -> BoundedMorphism:
    """``second ∘ first``."""
    return BoundedMorphism(
        first.source,
        second.target,
        {w: second(t) for w, t in first.mapping.items()},
    )


@dataclass(frozen=True)
class FHCategory:
    """One FH model per atom subset, joined by commuting bounded morphisms."""

    vocab: AtomSet
    mode: str
    models: Mapping[AtomSet, FHModel]
    morphisms: Mapping[tuple[AtomSet, AtomSet], BoundedMorphism]
    entry: Mapping[str, str] = field(default_factory=dict)

    @cached_property
    def keys(self) -> tuple[AtomSet, ...]:
        """Model indices from least to most expressive."""
        return tuple(sorted(self.models, key=space_order))

    @property
    def top(self) -> FHModel:
        return self.model(self.vocab)

    def model(self, key: AtomSet) -> FHModel:
        try:
            return self.models[key]
        except KeyError as err:
            raise ModelError(f"category has no model for [{atoms_key(key)}]") from err

    def morphism(self, upper: AtomSet, lower: AtomSet) -> BoundedMorphism:
        try:
            return self.morphisms[(upper, lower)]
        except KeyError as err:
            raise ModelError(
                f"category has no morphism [{atoms_key(upper)}] -> [{atoms_key(lower)}]"
            ) from err


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def _tag(world: str, key: AtomSet) -> str:
    return f"{world}[{atoms_key(key)}]"


def _refine(base: FHModel, phi: AtomSet) -> dict[str, int]:
    """Class index per world under modal equivalence for L_phi."""
    initial = {
        w: (
            base.truths(w) & phi,
            tuple(base.aware_of(i, w) & phi for i in range(base.agents)),
        )
        for w in base.worlds
    }
    classes = _number(initial, base.worlds)
    while True:
        signature = {
            w: (
                classes[w],
                tuple(
                    frozenset(classes[t] for t in base.block(i, w)) for i in range(base.agents)
                ),
            )
            for w in base.worlds
        }
        refined = _number(signature, base.worlds)
        if len(set(refined.values())) == len(set(classes.values())):
            return refined
        classes = refined


def _number(signature: Mapping[str, object], worlds: Sequence[str]) -> dict[str, int]:
    ids: dict[object, int] = {}
    return {w: ids.setdefault(signature[w], len(ids)) for w in worlds}


def _copy_embedding(base: FHModel, phi: AtomSet) -> dict[str, str]:
    return {w: _tag(w, phi) for w in base.worlds}


def _quotient_embedding(base: FHModel, phi: AtomSet) -> dict[str, str]:
    classes = _refine(base, phi)
    names: dict[int, str] = {}
    for w in sorted(base.worlds):
        names.setdefault(classes[w], _tag(w, phi))
    return {w: names[classes[w]] for w in base.worlds}


def _induced_model(base: FHModel, phi: AtomSet, embed: Mapping[str, str]) -> FHModel:
    """Components of ``base`` pushed along ``embed`` and cut down to ``phi``."""
    worlds = tuple(dict.fromkeys(embed[w] for w in base.worlds))
    valuation = {
        p: frozenset(embed[w] for w in base.valuation.get(p, ())) for p in sorted(phi)
    }
    relations = tuple(
        tuple(dict.fromkeys(frozenset(embed[w] for w in block) for block in base.relations[i]))
        for i in range(base.agents)
    )
    awareness = tuple(
        {embed[w]: base.aware_of(i, w) & phi for w in base.worlds} for i in range(base.agents)
    )
    return FHModel(
        vocab=phi,
        agents=base.agents,
        worlds=worlds,
        valuation=valuation,
        relations=relations,
        awareness=awareness,
        name=f"K[{atoms_key(phi)}]",
    )


def _embedding(base: FHModel, phi: AtomSet, mode: str) -> dict[str, str]:
    if mode == MODE_COPY:
        return _copy_embedding(base, phi)
    if mode == MODE_QUOTIENT:
        return _quotient_embedding(base, phi)
    raise ValueError(f"unknown restriction mode {mode!r}")


def restrict_model(
    base: FHModel, phi: Iterable[str], mode: str = MODE_COPY
) -> tuple[FHModel, BoundedMorphism]:
    """Build the subjective model K_phi of ``base`` and the morphism onto it.

    Copy keeps one tagged world per world of ``base``; Quotient merges worlds
    that are modally equivalent for L_phi.

    Raises:
        VocabularyError: ``phi`` is not within the vocabulary of ``base``.
    """
    target = frozenset(phi)
    if not target <= base.vocab:
        raise VocabularyError(
            f"[{atoms_key(target)}] is not within the vocabulary [{atoms_key(base.vocab)}]"
        )
    embed = _embedding(base, target, mode)
    model = _induced_model(base, target, embed)
    return model, BoundedMorphism(base, model, embed)


def build_category(base: FHModel, mode: str = MODE_COPY) -> FHCategory:
    """One model per subset of the vocabulary of ``base``, with all morphisms.

    Every model, the top one included, gets freshly tagged worlds; in
    quotient mode the top model is the contraction of ``base``.
    """
    if len(base.vocab) > max_atoms():
        raise VocabularyError(f"{len(base.vocab)} atoms exceed the cap of {max_atoms()}")
    if mode not in (MODE_COPY, MODE_QUOTIENT):
        raise ValueError(f"unknown restriction mode {mode!r}")
    embeddings: dict[AtomSet, dict[str, str]] = {}
    models: dict[AtomSet, FHModel] = {}
    for key in subsets(base.vocab):
        embeddings[key] = _embedding(base, key, mode)
        models[key] = _induced_model(base, key, embeddings[key])
        _LOGGER.debug(
            "Category model [%s]: %d worlds", atoms_key(key), len(models[key].worlds)
        )

    morphisms: dict[tuple[AtomSet, AtomSet], BoundedMorphism] = {}
    for upper in models:
        for lower in subsets(upper):
            mapping = {
                embeddings[upper][w]: embeddings[lower][w] for w in base.worlds
            }
            morphisms[(upper, lower)] = BoundedMorphism(models[upper], models[lower], mapping)
    _LOGGER.debug(
        "Built %s category: %d models, %d morphisms", mode, len(models), len(morphisms)
    )
    return FHCategory(base.vocab, mode, models, morphisms, embeddings[base.vocab])


def join_meet(category: FHCategory, family: Iterable[AtomSet]) -> tuple[FHModel, FHModel]:
    """K of the union and K of the intersection of ``family``."""
    members = [frozenset(m) for m in family]
    if not members:
        raise ValueError("join_meet needs a non-empty family")
    join = frozenset().union(*members)
    meet = frozenset(members[0]).intersection(*members[1:])
    return category.model(join), category.model(meet)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate_bounded_morphism(morphism: BoundedMorphism) -> ValidationReport:
    """Surjectivity, atomic harmony, awareness consistency, homomorphism and back."""
    source, target = morphism.source, morphism.target
    report = ReportBuilder(morphism.label())
    if not target.vocab <= source.vocab:
        report.fail(
            CLAUSE_MORPHISM_VOCABULARY,
            f"target vocabulary [{atoms_key(target.vocab)}] is not within "
            f"[{atoms_key(source.vocab)}]",
        )
        return report.build()
    if source.agents != target.agents:
        report.fail(
            CLAUSE_MORPHISM_VOCABULARY,
            f"agent counts differ: {source.agents} vs {target.agents}",
        )
        return report.build()

    total = True
    for world in source.worlds:
        image = morphism.mapping.get(world)
        if image is None:
            report.fail(CLAUSE_MORPHISM_TOTAL, "no image", state=world)
            total = False
        elif image not in target.world_set:
            report.fail(
                CLAUSE_MORPHISM_TOTAL, f"image {image!r} is not a target world", state=world
            )
            total = False
    if not total:
        return report.build()

    missed = target.world_set - {morphism(w) for w in source.worlds}
    for world in sorted(missed):
        report.fail(CLAUSE_SURJECTIVITY, "target world has no preimage", state=world)

    for world in source.worlds:
        image = morphism(world)
        for p in sorted(target.vocab):
            if (world in source.valuation.get(p, ())) != (image in target.valuation.get(p, ())):
                report.fail(
                    CLAUSE_ATOMIC_HARMONY,
                    f"{p} differs at image {image!r}",
                    state=world,
                )
        for agent in range(source.agents):
            expected = source.aware_of(agent, world) & target.vocab
            if expected != target.aware_of(agent, image):
                report.fail(
                    CLAUSE_AWARENESS_CONSISTENCY,
                    f"awareness [{atoms_key(expected)}] maps to "
                    f"[{atoms_key(target.aware_of(agent, image))}]",
                    agent=agent,
                    state=world,
                )
            forward = {morphism(t) for t in source.block(agent, world)}
            reachable = target.block(agent, image)
            if not forward <= reachable:
                report.fail(
                    CLAUSE_HOMOMORPHISM,
                    f"images {sorted(forward - reachable)} are not accessible from {image!r}",
                    agent=agent,
                    state=world,
                )
            if not reachable <= forward:
                report.fail(
                    CLAUSE_BACK,
                    f"accessible {sorted(reachable - forward)} have no accessible preimage",
                    agent=agent,
                    state=world,
                )
    return report.build()


def validate_category(category: FHCategory) -> ValidationReport:
    """Models, morphisms, disjointness, identities and commutation of every chain."""
    report = ReportBuilder(f"category[{atoms_key(category.vocab)}]")
    expected = subsets(category.vocab)
    for key in expected:
        model = category.models.get(key)
        if model is None:
            report.fail(CLAUSE_CATEGORY_MODELS, f"no model for [{atoms_key(key)}]")
        elif model.vocab != key:
            report.fail(
                CLAUSE_CATEGORY_MODELS,
                f"model for [{atoms_key(key)}] has vocabulary [{atoms_key(model.vocab)}]",
            )
        else:
            report.extend(validate_fh(model))
    for key in sorted(set(category.models) - set(expected), key=space_order):
        report.fail(CLAUSE_CATEGORY_MODELS, f"[{atoms_key(key)}] is not a vocabulary subset")
    if not report.build().ok:
        return report.build()

    owners: dict[str, AtomSet] = {}
    for key in category.keys:
        for world in category.models[key].worlds:
            if world in owners:
                report.fail(
                    CLAUSE_CATEGORY_DISJOINT,
                    f"world is in [{atoms_key(owners[world])}] and [{atoms_key(key)}]",
                    state=world,
                )
            owners.setdefault(world, key)

    complete = True
    for upper in category.keys:
        for lower in subsets(upper):
            morphism = category.morphisms.get((upper, lower))
            label = f"[{atoms_key(upper)}] -> [{atoms_key(lower)}]"
            if morphism is None:
                report.fail(CLAUSE_CATEGORY_MORPHISMS, f"morphism {label} is missing")
                complete = False
                continue
            if (
                morphism.source != category.models[upper]
                or morphism.target != category.models[lower]
            ):
                report.fail(CLAUSE_CATEGORY_MORPHISMS, f"morphism {label} has wrong endpoints")
                complete = False
                continue
            checked = validate_bounded_morphism(morphism)
            report.extend(checked)
            if any(v.clause == CLAUSE_MORPHISM_TOTAL for v in checked.violations):
                complete = False
            if upper == lower:
                for world in category.models[upper].worlds:
                    if morphism.mapping.get(world) != world:
                        report.fail(
                            CLAUSE_IDENTITY,
                            f"morphism {label} moves the world",
                            state=world,
                        )
    if not complete:
        return report.build()

    for upper in category.keys:
        for middle in subsets(upper):
            for lower in subsets(middle):
                direct = category.morphisms[(upper, lower)]
                first = category.morphisms[(upper, middle)]
                second = category.morphisms[(middle, lower)]
                for world in category.models[upper].worlds:
                    if direct(world) != second(first(world)):
                        report.fail(
                            CLAUSE_COMMUTATION,
                            f"[{atoms_key(upper)}] -> [{atoms_key(lower)}] differs from the "
                            f"path through [{atoms_key(middle)}]",
                            state=world,
                        )
    result = report.build()
    _LOGGER.debug("Category validation: %d violations", len(result.violations))
    return result


# ---------------------------------------------------------------------------
# Modal equivalence along morphisms
# ---------------------------------------------------------------------------


def _check_pair(
    tally: PropertyTally,
    first: FHModel,
    second: FHModel,
    pairing: Mapping[str, str],
    depth: int,
) -> None:
    found = find_distinguishing_formula(first, second, pairing, depth)
    witness = None
    if found is not None:
        formula, world = found
        witness = Witness(
            subject=f"{first.label()} vs {second.label()}",
            detail=print_formula(formula),
            state=world,
        )
    tally.check(found is None, witness)


def check_category_equivalence(category: FHCategory, depth: int) -> PropertyReport:
    """Every K_Φ agrees with every K_Ψ (Ψ ⊆ Φ) on L_Ψ along f^Φ_Ψ."""
    tally = PropertyTally(PROP_MODAL_EQUIVALENCE)
    for upper in category.keys:
        for lower in subsets(upper):
            if lower == upper:
                continue
            morphism = category.morphism(upper, lower)
            _check_pair(tally, morphism.source, morphism.target, morphism.mapping, depth)
    result = tally.result()
    _LOGGER.debug(
        "Category equivalence at depth %d: %d pairs, %d failures",
        depth,
        result.instances,
        result.failure_count,
    )
    return PropertyReport(f"category[{atoms_key(category.vocab)}]", (result,))


def check_lattice_bounds(
    category: FHCategory, depth: int, family_size: int = DEFAULT_FAMILY_SIZE
) -> PropertyReport:
    """Join and meet of every small family agree with each member on the right sublanguage."""
    joins = PropertyTally(PROP_JOIN_EQUIVALENCE)
    meets = PropertyTally(PROP_MEET_EQUIVALENCE)
    for size in range(1, family_size + 1):
        for family in combinations(category.keys, size):
            join, meet = join_meet(category, family)
            for member in family:
                down = category.morphism(join.vocab, member)
                _check_pair(joins, join, down.target, down.mapping, depth)
                up = category.morphism(member, meet.vocab)
                _check_pair(meets, up.source, meet, up.mapping, depth)
    return PropertyReport(
        f"category[{atoms_key(category.vocab)}] lattice",
        (joins.result(), meets.result()),
    )
