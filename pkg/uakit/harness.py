"""Random generators, mutation fixtures and the property suites built on them."""

from __future__ import annotations

import logging
import random
from collections.abc import Callable, Iterable, Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import combinations, product

from .category import (
    FHCategory,
    check_category_equivalence,
    check_lattice_bounds,
    validate_category,
)
from .const import (
    CLAUSE_ALPHA_ABOVE,
    CLAUSE_ALPHA_BELOW,
    CLAUSE_ALPHA_CONCEPTION,
    CLAUSE_ALPHA_MEASURABILITY,
    CLAUSE_ALPHA_MONOTONE,
    CLAUSE_EXPLICIT_MEASURABILITY,
    CLAUSE_IMPLICIT_MEASURABILITY,
    CLAUSE_LAMBDA_PPIK,
    CLAUSE_LAMBDA_REFLEXIVITY,
    CLAUSE_LAMBDA_STATIONARITY,
    CLAUSE_PI_CONFINEMENT,
    CLAUSE_PI_PPI,
    CLAUSE_PI_PPK,
    CLAUSE_PI_REFLEXIVITY,
    CLAUSE_PI_STATIONARITY,
    DEFAULT_DEPTH,
    DEFAULT_DIRECT_RETRIES,
    DEFAULT_FAMILY_SIZE,
    DEFAULT_POOL_DEPTH,
    GEN_ATOM_NAMES,
    GEN_MAX_AGENTS,
    GEN_MAX_ATOMS,
    GEN_MAX_WORLDS,
    MODE_COPY,
    MODEL_COMPLEMENTED,
    MODEL_COMPLEMENTED_IKB,
    MODEL_IKB,
    PROP_FH_TO_HMS,
    PROP_FH_TO_IKB,
    PROP_HMS_TO_FH,
    PROP_IKB_TO_FH_STAR,
    PROP_MODEL_VALID,
    PROP_ROUND_TRIP,
    STRATEGY_DIRECT,
    STRATEGY_VIA_TRANSFORM,
    SUITE_ALL,
    SUITE_ALPHA,
    SUITE_EQUIVALENCE,
    SUITE_LAMBDA,
    SUITE_LPA,
    SUITE_OPERATORS,
    SUITE_PI,
    TARGET_HMS,
    TARGET_IKB,
)
from .exceptions import GenerationError
from .fh import FHModel, find_distinguishing_formula, validate_fh
from .hms import HMSModel, complete_with_pi_star, validate_model
from .lattice import Event, HMSFrame, StateId, build_frame
from .logic import soundness_suite
from .properties import operator_laws
from .report import PropertyReport, PropertyTally, ValidationReport, Witness, merge_reports
from .semantics import find_transfer_failure
from .syntax import AtomSet, Formula, atoms_key, enumerate_formulas, print_formula, subsets
from .transforms import (
    fh_star_transform,
    fh_transform,
    t_transform,
    transform_with_trace,
)

_LOGGER = logging.getLogger(__name__)

# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def _check_caps(atoms: int, worlds: int, agents: int) -> None:
    if not 0 <= atoms <= GEN_MAX_ATOMS:
        raise GenerationError(f"atoms must be between 0 and {GEN_MAX_ATOMS}, got {atoms}")
    if not 1 <= worlds <= GEN_MAX_WORLDS:
        raise GenerationError(f"worlds must be between 1 and {GEN_MAX_WORLDS}, got {worlds}")
    if not 1 <= agents <= GEN_MAX_AGENTS:
        raise GenerationError(f"agents must be between 1 and {GEN_MAX_AGENTS}, got {agents}")


def _random_partition(rng: random.Random, items: Sequence[str]) -> tuple[frozenset[str], ...]:
    labels = [rng.randrange(len(items)) for _ in items]
    blocks: dict[int, set[str]] = {}
    for item, label in zip(items, labels, strict=True):
        blocks.setdefault(label, set()).add(item)
    return tuple(frozenset(block) for _, block in sorted(blocks.items()))


def _random_subset(rng: random.Random, items: Sequence[str]) -> frozenset[str]:
    return frozenset(item for item in items if rng.random() < 0.5)


def gen_fh(atoms: int, worlds: int, agents: int, seed: int) -> FHModel:
    """A random partitional, propositionally determined FH model.

    Deterministic in its arguments. Awareness is drawn once per block, so
    the result always passes ``validate_fh``.

    Raises:
        GenerationError: a parameter is outside the generator caps.
    """
    _check_caps(atoms, worlds, agents)
    rng = random.Random(seed)
    names = GEN_ATOM_NAMES[:atoms]
    world_ids = tuple(f"w{n}" for n in range(1, worlds + 1))
    valuation = {p: _random_subset(rng, world_ids) for p in names}
    relations = []
    awareness = []
    for _ in range(agents):
        blocks = _random_partition(rng, world_ids)
        relations.append(blocks)
        aware: dict[str, frozenset[str]] = {}
        for block in blocks:
            level = _random_subset(rng, names)
            aware.update(dict.fromkeys(block, level))
        awareness.append(aware)
    model = FHModel(
        frozenset(names),
        agents,
        world_ids,
        valuation,
        tuple(relations),
        tuple(awareness),
        name=f"gen_fh(seed={seed})",
    )
    _LOGGER.debug("Generated %s: %d worlds, %d agents", model.label(), worlds, agents)
    return model


def literal_state(row: dict[str, bool], key: AtomSet) -> StateId:
    """State id naming a truth assignment on ``key``, e.g. ``p~q``."""
    if not key:
        return "s_empty"
    return "".join(p if row[p] else f"~{p}" for p in sorted(key))


def literal_frame(vocab: AtomSet, rows: Iterable[dict[str, bool]]) -> HMSFrame:
    """Frame whose spaces hold the restrictions of ``rows`` to each atom subset."""
    listed = list(rows)
    keys = subsets(vocab)
    spaces = {
        key: sorted({literal_state(row, key) for row in listed}) for key in keys
    }
    projections = {
        (key, key - {atom}): {
            literal_state(row, key): literal_state(row, key - {atom}) for row in listed
        }
        for key in keys
        for atom in sorted(key)
    }
    return build_frame(vocab=vocab, spaces=spaces, projections=projections)


def literal_valuation(frame: HMSFrame) -> dict[str, Event]:
    """v(p) based on S_{p}: the states there that assert ``p``."""
    valuation: dict[str, Event] = {}
    for p in sorted(frame.vocab):
        key = frozenset((p,))
        valuation[p] = Event(key, frozenset(frame.space(key)) & {p})
    return valuation


class _Blocks:
    """Union-find over top-space states."""

    def __init__(self, items: Iterable[str]) -> None:
        self._parent = {item: item for item in items}

    def find(self, item: str) -> str:
        while self._parent[item] != item:
            self._parent[item] = self._parent[self._parent[item]]
            item = self._parent[item]
        return item

    def union(self, first: str, second: str) -> bool:
        a, b = self.find(first), self.find(second)
        if a == b:
            return False
        self._parent[max(a, b)] = min(a, b)
        return True

    def blocks(self) -> list[frozenset[str]]:
        grouped: dict[str, set[str]] = {}
        for item in self._parent:
            grouped.setdefault(self.find(item), set()).add(item)
        return [frozenset(group) for _, group in sorted(grouped.items())]


def _draw_lambda(rng: random.Random, frame: HMSFrame) -> dict[StateId, frozenset[StateId]]:
    """A random partition of the top space, projected down every space."""
    top = frame.space(frame.vocab)
    blocks = _Blocks(top)
    for block in _random_partition(rng, top):
        members = sorted(block)
        for other in members[1:]:
            blocks.union(members[0], other)
    # Repair: merge top blocks until projected blocks are disjoint in every space.
    changed = True
    while changed:
        changed = False
        groups = blocks.blocks()
        for key in frame.space_keys:
            images = [frame.project_set(group, key) for group in groups]
            for (i, first), (j, second) in combinations(enumerate(images), 2):
                if first != second and first & second:
                    changed |= blocks.union(min(groups[i]), min(groups[j]))
            if changed:
                break
    implicit: dict[StateId, frozenset[StateId]] = {}
    for block in blocks.blocks():
        for key in frame.space_keys:
            projected = frame.project_set(block, key)
            for state in projected:
                implicit[state] = projected
    return implicit


def _ancestors(frame: HMSFrame) -> dict[StateId, list[StateId]]:
    """States in strictly larger spaces that project onto each state."""
    found: dict[StateId, list[StateId]] = {state: [] for state in frame.states}
    for key in frame.space_keys:
        for lower in subsets(key):
            if lower == key:
                continue
            for state in frame.space(key):
                found[frame.project(state, lower)].append(state)
    return found


def _draw_pi(
    rng: random.Random, frame: HMSFrame, implicit: Mapping[StateId, frozenset[StateId]]
) -> dict[StateId, frozenset[StateId]]:
    """Random Π: each Λ-block draws the space its Π sits in, and Π is Λ seen from there.

    A drawn space is cut down to the spaces drawn above it. It is forced to
    the block's own space when a state above sees all of it, and to the
    space seen from above when that one lies inside it.

    Raises:
        GenerationError: states above force two different spaces.
    """
    ancestors = _ancestors(frame)
    levels: dict[StateId, AtomSet] = {}
    for key in sorted(frame.space_keys, key=lambda k: (-len(k), atoms_key(k))):
        for block in sorted({implicit[s] for s in frame.space(key)}, key=min):
            level = frozenset(p for p in sorted(key) if rng.random() < 0.5)
            forced: set[AtomSet] = set()
            for state in sorted(block):
                for upper in ancestors[state]:
                    above = levels[upper]
                    level &= above
                    if key <= above:
                        forced.add(key)
                    elif above <= key:
                        forced.add(above)
            if len(forced) > 1:
                raise GenerationError(f"conflicting spaces for Π at {min(block)!r}")
            if forced:
                (level,) = forced
            levels.update(dict.fromkeys(block, level))
    return {state: frame.project_set(implicit[state], levels[state]) for state in frame.states}


def _direct_attempt(
    rng: random.Random, atoms: int, worlds: int, agents: int, label: str
) -> HMSModel:
    """Draw Λ and Π on a random propositional frame, then validate.

    Raises:
        GenerationError: the repaired draw still fails a validator clause.
    """
    names = GEN_ATOM_NAMES[:atoms]
    vocab = frozenset(names)
    rows = [dict(zip(names, bits, strict=True)) for bits in product((True, False), repeat=atoms)]
    chosen = rng.sample(rows, min(len(rows), rng.randint(1, worlds)))
    frame = literal_frame(vocab, chosen)

    lam = []
    pi = []
    for _ in range(agents):
        implicit = _draw_lambda(rng, frame)
        lam.append(implicit)
        pi.append(_draw_pi(rng, frame, implicit))

    model = HMSModel(
        frame=frame,
        agents=agents,
        valuation=literal_valuation(frame),
        pi=tuple(pi),
        lam=tuple(lam),
        name=label,
    )
    report = validate_model(model)
    if not report.ok:
        raise GenerationError(f"rejected: {sorted(report.clauses())}")
    return model


def gen_hms_direct(
    atoms: int, worlds: int, agents: int, seed: int, retries: int = DEFAULT_DIRECT_RETRIES
) -> HMSModel:
    """A complemented HMS model drawn without going through FH models.

    Raises:
        GenerationError: every one of ``retries`` attempts was rejected.
    """
    _check_caps(atoms, worlds, agents)
    rng = random.Random(seed)
    label = f"gen_hms(seed={seed}, direct)"
    last = "no attempts"
    for attempt in range(retries):
        try:
            return _direct_attempt(rng, atoms, worlds, agents, label)
        except GenerationError as err:
            last = str(err)
            _LOGGER.debug("Direct attempt %d for seed %d rejected: %s", attempt + 1, seed, err)
    raise GenerationError(f"direct generation failed after {retries} attempts ({last})")


def gen_hms(
    atoms: int,
    worlds: int,
    agents: int,
    seed: int,
    strategy: str = STRATEGY_VIA_TRANSFORM,
    mode: str = MODE_COPY,
    retries: int = DEFAULT_DIRECT_RETRIES,
) -> HMSModel:
    """A complemented HMS model; the direct strategy falls back to the transform."""
    if strategy == STRATEGY_DIRECT:
        try:
            return gen_hms_direct(atoms, worlds, agents, seed, retries)
        except GenerationError as err:
            _LOGGER.warning("Falling back to %s for seed %d: %s", STRATEGY_VIA_TRANSFORM, seed, err)
    elif strategy != STRATEGY_VIA_TRANSFORM:
        raise ValueError(f"unknown strategy {strategy!r}")
    base = gen_fh(atoms, worlds, agents, seed)
    model = transform_with_trace(base, TARGET_HMS, mode).target
    return replace(model, name=f"gen_hms(seed={seed})")


def gen_ikb(atoms: int, worlds: int, agents: int, seed: int, mode: str = MODE_COPY) -> HMSModel:
    """An implicit knowledge-based model: the truncated transform of ``gen_fh``."""
    base = gen_fh(atoms, worlds, agents, seed)
    model = transform_with_trace(base, TARGET_IKB, mode).target
    return replace(model, name=f"gen_ikb(seed={seed})")


# ---------------------------------------------------------------------------
# Mutation fixtures
# ---------------------------------------------------------------------------


def mutation_base() -> HMSModel:
    """Complemented ikb model on {p, q}: aware of p only, knowing the truth value of p.

    Λ splits the top space by p and S_{p} into singletons; α is S_{p} on the
    top space and its meet with each lower space.
    """
    vocab = frozenset(("p", "q"))
    rows = [dict(zip(("p", "q"), bits, strict=True)) for bits in product((True, False), repeat=2)]
    frame = literal_frame(vocab, rows)
    lam = {
        "pq": frozenset({"pq", "p~q"}),
        "p~q": frozenset({"pq", "p~q"}),
        "~pq": frozenset({"~pq", "~p~q"}),
        "~p~q": frozenset({"~pq", "~p~q"}),
        "p": frozenset({"p"}),
        "~p": frozenset({"~p"}),
        "q": frozenset({"q", "~q"}),
        "~q": frozenset({"q", "~q"}),
        "s_empty": frozenset({"s_empty"}),
    }
    aware = frozenset(("p",))
    alpha = {state: aware & frame.space_of(state) for state in frame.states}
    ikb = HMSModel(
        frame=frame,
        agents=1,
        valuation=literal_valuation(frame),
        lam=(lam,),
        alpha=(alpha,),
        name="mutation-base",
    )
    return complete_with_pi_star(ikb)


def _with_pi(model: HMSModel, changes: Mapping[StateId, frozenset[StateId]]) -> HMSModel:
    assert model.pi is not None
    return replace(model, pi=({**model.pi[0], **changes},))


def _with_lambda(model: HMSModel, changes: Mapping[StateId, frozenset[StateId]]) -> HMSModel:
    assert model.lam is not None
    return replace(model, lam=({**model.lam[0], **changes},))


def _with_alpha(model: HMSModel, changes: Mapping[StateId, AtomSet]) -> HMSModel:
    assert model.alpha is not None
    return replace(model, alpha=({**model.alpha[0], **changes},))


_TOP = frozenset({"pq", "p~q", "~pq", "~p~q"})
_P_SIDE = frozenset({"p", "~p"})


def _full_awareness(model: HMSModel) -> dict[StateId, AtomSet]:
    return {state: model.frame.space_of(state) for state in model.frame.states}


@dataclass(frozen=True)
class Mutation:
    """One deliberate violation of an assumption clause.

    ``family`` names the validator group the clause belongs to. ``entails``
    lists the clauses of that group any violation of ``clause`` brings along.
    """

    clause: str
    family: str
    description: str
    build: Callable[[HMSModel], HMSModel]
    entails: frozenset[str] = frozenset()


MUTATIONS: tuple[Mutation, ...] = (
    Mutation(
        CLAUSE_PI_CONFINEMENT,
        SUITE_PI,
        "Π at q lies in a more expressive space",
        lambda m: _with_pi(m, {"q": frozenset({"pq"})}),
    ),
    Mutation(
        CLAUSE_PI_REFLEXIVITY,
        SUITE_PI,
        "Π at p and above it is {~p}",
        lambda m: _with_pi(m, dict.fromkeys(("pq", "p~q", "p"), frozenset({"~p"}))),
    ),
    Mutation(
        CLAUSE_PI_STATIONARITY,
        SUITE_PI,
        "Π at p and above it holds ~p, whose own Π is {~p}",
        lambda m: _with_pi(m, dict.fromkeys(("pq", "p~q", "p"), _P_SIDE)),
    ),
    Mutation(
        CLAUSE_PI_PPI,
        SUITE_PI,
        "Π at q lies in S_{q}, above the space of Π at pq",
        lambda m: _with_pi(m, {"q": frozenset({"q"})}),
    ),
    Mutation(
        CLAUSE_PI_PPK,
        SUITE_PI,
        "Π at pq and p~q is their top block, which projects to {q, ~q} on S_{q}",
        lambda m: _with_pi(m, dict.fromkeys(("pq", "p~q"), frozenset({"pq", "p~q"}))),
    ),
    Mutation(
        CLAUSE_LAMBDA_REFLEXIVITY,
        SUITE_LAMBDA,
        "Λ sends every state with a q to its ~q neighbour",
        lambda m: _with_lambda(
            m,
            {
                **dict.fromkeys(("pq", "p~q"), frozenset({"p~q"})),
                **dict.fromkeys(("~pq", "~p~q"), frozenset({"~p~q"})),
                **dict.fromkeys(("q", "~q"), frozenset({"~q"})),
            },
        ),
    ),
    Mutation(
        CLAUSE_LAMBDA_STATIONARITY,
        SUITE_LAMBDA,
        "Λ at the ~q states shrinks to the state itself",
        lambda m: _with_lambda(m, {s: frozenset({s}) for s in ("p~q", "~p~q", "~q")}),
    ),
    Mutation(
        CLAUSE_LAMBDA_PPIK,
        SUITE_LAMBDA,
        "Λ splits {pq, p~q} but not its projection to S_{q}",
        lambda m: _with_lambda(m, {"pq": frozenset({"pq"}), "p~q": frozenset({"p~q"})}),
    ),
    Mutation(
        CLAUSE_EXPLICIT_MEASURABILITY,
        SUITE_LAMBDA,
        "Λ merges p with ~p everywhere while Π separates them",
        lambda m: _with_lambda(m, {**dict.fromkeys(_TOP, _TOP), **dict.fromkeys(_P_SIDE, _P_SIDE)}),
    ),
    Mutation(
        CLAUSE_IMPLICIT_MEASURABILITY,
        SUITE_LAMBDA,
        "Π merges p with ~p while Λ keeps them apart",
        lambda m: _with_pi(m, dict.fromkeys(_TOP | _P_SIDE, _P_SIDE)),
    ),
    Mutation(
        CLAUSE_ALPHA_CONCEPTION,
        SUITE_ALPHA,
        "α at the q states is S_{p}, outside their space",
        lambda m: _with_alpha(m, dict.fromkeys(("q", "~q"), frozenset({"p"}))),
    ),
    Mutation(
        CLAUSE_ALPHA_MEASURABILITY,
        SUITE_ALPHA,
        "q, pq and ~pq become aware of q while their Λ-partners do not",
        lambda m: _with_alpha(
            m,
            {
                **dict.fromkeys(("pq", "~pq"), frozenset({"p", "q"})),
                "q": frozenset({"q"}),
            },
        ),
    ),
    Mutation(
        CLAUSE_ALPHA_BELOW,
        SUITE_ALPHA,
        "full awareness except at p, which falls to S_∅",
        lambda m: _with_alpha(m, {**_full_awareness(m), "p": frozenset()}),
    ),
    Mutation(
        CLAUSE_ALPHA_ABOVE,
        SUITE_ALPHA,
        "α at pq and p~q is S_∅ while α at p is S_{p}",
        lambda m: _with_alpha(m, dict.fromkeys(("pq", "p~q"), frozenset())),
        # p keeps S_{p}, which is not within the new S_∅ level at pq.
        entails=frozenset({CLAUSE_ALPHA_MONOTONE}),
    ),
    Mutation(
        CLAUSE_ALPHA_MONOTONE,
        SUITE_ALPHA,
        "α at q and ~q is S_{q}, not below α at the top",
        lambda m: _with_alpha(m, dict.fromkeys(("q", "~q"), frozenset({"q"}))),
    ),
)


def mutation_fixtures() -> list[tuple[Mutation, HMSModel]]:
    """Every mutation applied to ``mutation_base()``."""
    base = mutation_base()
    return [(mutation, mutation.build(base)) for mutation in MUTATIONS]


# ---------------------------------------------------------------------------
# Property suites
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SuiteOptions:
    """What ``property_suite`` runs and how deep it looks."""

    suite: str = SUITE_ALL
    depth: int = DEFAULT_DEPTH
    pool_depth: int = DEFAULT_POOL_DEPTH
    family_size: int = DEFAULT_FAMILY_SIZE
    mode: str = MODE_COPY

    def wants(self, *suites: str) -> bool:
        return self.suite == SUITE_ALL or self.suite in suites


def _validity(name: str, report: ValidationReport) -> PropertyReport:
    tally = PropertyTally(PROP_MODEL_VALID)
    tally.check(report.ok, Witness(report.subject, ", ".join(sorted(report.clauses()))))
    return PropertyReport(name, (tally.result(),), (report,))


def _transfer(
    name: str,
    fh_model: FHModel,
    hms_model: HMSModel,
    correspondence: Mapping[str, Mapping[str, StateId]],
    depth: int,
) -> PropertyReport:
    tally = PropertyTally(name)
    found = find_transfer_failure(fh_model, hms_model, correspondence, depth)
    witness = None
    if found is not None:
        formula, world, key = found
        witness = Witness(
            f"{fh_model.label()} vs {hms_model.label()}",
            f"{print_formula(formula)} in [{key}]",
            state=world,
        )
    tally.check(found is None, witness)
    return PropertyReport(hms_model.label(), (tally.result(),))


def _identity(model: HMSModel) -> dict[str, dict[str, str]]:
    key = atoms_key(model.frame.vocab)
    return {state: {key: state} for state in model.frame.space(model.frame.vocab)}


def _pool(vocab: AtomSet, agents: int, depth: int) -> list[Formula]:
    return list(enumerate_formulas(vocab, agents, depth))


def _fh_suite(model: FHModel, options: SuiteOptions) -> list[PropertyReport]:
    report = validate_fh(model)
    reports = [_validity(model.label(), report)]
    if not report.ok:
        return reports
    hms_trace = transform_with_trace(model, TARGET_HMS, options.mode)
    ikb_trace = transform_with_trace(model, TARGET_IKB, options.mode)
    hms, ikb = hms_trace.target, ikb_trace.target
    if options.wants(SUITE_EQUIVALENCE):
        depth = options.depth
        reports.append(_transfer(PROP_FH_TO_HMS, model, hms, hms_trace.correspondence, depth))
        reports.append(_transfer(PROP_FH_TO_IKB, model, ikb, ikb_trace.correspondence, depth))
        reports.append(_transfer(PROP_HMS_TO_FH, fh_transform(hms), hms, _identity(hms), depth))
        reports.append(
            _transfer(PROP_IKB_TO_FH_STAR, fh_star_transform(ikb), ikb, _identity(ikb), depth)
        )
        back = fh_transform(hms)
        top = atoms_key(hms.frame.vocab)
        pairing = {w: targets[top] for w, targets in hms_trace.correspondence.items()}
        tally = PropertyTally(PROP_ROUND_TRIP)
        found = find_distinguishing_formula(model, back, pairing, depth)
        witness = None
        if found is not None:
            witness = Witness(model.label(), print_formula(found[0]), state=found[1])
        tally.check(found is None, witness)
        reports.append(PropertyReport(model.label(), (tally.result(),)))
    if options.wants(SUITE_OPERATORS, SUITE_PI, SUITE_LAMBDA):
        reports.append(operator_laws(hms, options.suite, options.family_size))
    if options.wants(SUITE_OPERATORS, SUITE_ALPHA):
        reports.append(operator_laws(ikb, SUITE_ALPHA, options.family_size))
    if options.wants(SUITE_LPA):
        pool = _pool(model.vocab, model.agents, options.pool_depth)
        reports.append(soundness_suite(model, pool, model.agents))
    return reports


def _category_suite(category: FHCategory, options: SuiteOptions) -> list[PropertyReport]:
    name = f"category[{atoms_key(category.vocab)}]"
    report = validate_category(category)
    reports = [_validity(name, report)]
    if not report.ok:
        return reports
    if options.wants(SUITE_EQUIVALENCE):
        reports.append(check_category_equivalence(category, options.depth))
        reports.append(check_lattice_bounds(category, options.depth, options.family_size))
    if options.wants(SUITE_OPERATORS, SUITE_PI, SUITE_LAMBDA, SUITE_ALPHA):
        reports.append(operator_laws(t_transform(category), options.suite, options.family_size))
    if options.wants(SUITE_LPA):
        pool = _pool(category.vocab, category.top.agents, options.pool_depth)
        reports.append(soundness_suite(category, pool, category.top.agents))
    return reports


def _hms_suite(model: HMSModel, options: SuiteOptions) -> list[PropertyReport]:
    laws = operator_laws(model, options.suite, options.family_size)
    reports = [laws]
    if not all(v.ok for v in laws.validations):
        return reports
    kind = model.kind
    if options.wants(SUITE_EQUIVALENCE):
        if kind in (MODEL_COMPLEMENTED, MODEL_COMPLEMENTED_IKB):
            reports.append(
                _transfer(
                    PROP_HMS_TO_FH, fh_transform(model), model, _identity(model), options.depth
                )
            )
        if kind in (MODEL_IKB, MODEL_COMPLEMENTED_IKB):
            ikb = model.forget_pi()
            reports.append(
                _transfer(
                    PROP_IKB_TO_FH_STAR, fh_star_transform(ikb), ikb, _identity(ikb), options.depth
                )
            )
    if options.wants(SUITE_LPA):
        pool = _pool(model.vocab, model.agents, options.pool_depth)
        reports.append(soundness_suite(model, pool, model.agents))
    return reports


def property_suite(
    subject: FHModel | FHCategory | HMSModel, options: SuiteOptions | None = None
) -> PropertyReport:
    """Run the named suite on an FH model, a category or an HMS model.

    FH models get the transform equivalences, categories the category and
    lattice equivalences, HMS models every operator law of their kind. All
    three get the soundness suite under ``lpa``.
    """
    options = options or SuiteOptions()
    if isinstance(subject, HMSModel):
        name, reports = subject.label(), _hms_suite(subject, options)
    elif isinstance(subject, FHModel):
        name, reports = subject.label(), _fh_suite(subject, options)
    else:
        name, reports = f"category[{atoms_key(subject.vocab)}]", _category_suite(subject, options)
    merged = merge_reports(name, reports)
    _LOGGER.debug(
        "Suite %s on %s: %d properties, %d failed",
        options.suite,
        name,
        len(merged.results),
        len(merged.failed()),
    )
    return merged


# ---------------------------------------------------------------------------
# Batch runs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RandomCell:
    """One seed of a random batch."""

    atoms: int
    worlds: int
    agents: int
    seed: int
    strategy: str = STRATEGY_VIA_TRANSFORM
    options: SuiteOptions = field(default_factory=SuiteOptions)


def generate(cell: RandomCell) -> FHModel | HMSModel:
    """The model a cell checks: an FH model, or an HMS model for the direct strategy."""
    if cell.strategy == STRATEGY_DIRECT:
        return gen_hms(cell.atoms, cell.worlds, cell.agents, cell.seed, STRATEGY_DIRECT)
    return gen_fh(cell.atoms, cell.worlds, cell.agents, cell.seed)


def run_cell(cell: RandomCell) -> PropertyReport:
    return property_suite(generate(cell), cell.options)


def run_suites(
    subjects: Sequence[FHModel | FHCategory | HMSModel],
    options: SuiteOptions,
    jobs: int = 1,
) -> list[PropertyReport]:
    """``property_suite`` for every subject, in order, across ``jobs`` processes."""
    if jobs <= 1 or len(subjects) <= 1:
        return [property_suite(s, options) for s in subjects]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(property_suite, subjects, [options] * len(subjects)))


def run_random(cells: Sequence[RandomCell], jobs: int = 1) -> list[PropertyReport]:
    """Generate and check every cell; results keep the order of ``cells``."""
    _LOGGER.info("Running %d random cells with %d jobs", len(cells), jobs)
    if jobs <= 1 or len(cells) <= 1:
        return [run_cell(cell) for cell in cells]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_cell, cells))
