"""Axiom schemas, tautology recognition, proof checking and countermodel search."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from itertools import product
from typing import TYPE_CHECKING

from .const import (
    MAX_TAUTOLOGY_LETTERS,
    SCHEMA_4,
    SCHEMA_5,
    SCHEMA_A1,
    SCHEMA_A2,
    SCHEMA_A3,
    SCHEMA_A4,
    SCHEMA_A5,
    SCHEMA_A11,
    SCHEMA_A12,
    SCHEMA_EK,
    SCHEMA_K,
    SCHEMA_K_DIST,
    SCHEMA_PL,
    SCHEMA_T,
    SEARCH_MAX_ATOMS,
    SEARCH_MAX_WORLDS,
    SUBST_I,
    SUBST_J,
    SUBST_PHI,
    SUBST_PSI,
)
from .exceptions import SearchBoundError
from .fh import FHModel, truth_set
from .report import PropertyReport, PropertyTally, Witness
from .semantics import find_failure
from .syntax import (
    A,
    K,
    L,
    FORMULA_TYPES,
    And,
    Formula,
    Not,
    Top,
    agents_of,
    atoms_of,
    disjoin,
    iff,
    implies,
    print_formula,
    subsets,
)

if TYPE_CHECKING:
    from .category import FHCategory
    from .hms import HMSModel

_LOGGER = logging.getLogger(__name__)

type Substitution = Mapping[str, Formula | int]


@dataclass(frozen=True)
class AxiomSchema:
    """An axiom pattern over φ, ψ and agents i, j (0-based)."""

    name: str
    title: str
    build: Callable[[Formula, Formula, int, int], Formula]
    uses_psi: bool = False
    uses_j: bool = False

    def instantiate(
        self, phi: Formula, psi: Formula | None = None, i: int = 0, j: int = 0
    ) -> Formula:
        if self.uses_psi and psi is None:
            raise ValueError(f"schema {self.name} needs psi")
        return self.build(phi, psi if psi is not None else phi, i, j)


def _distribution(phi: Formula, psi: Formula, i: int, j: int) -> Formula:
    return implies(And(L(i, phi), implies(L(i, phi), L(i, psi))), L(i, psi))


AXIOM_SCHEMAS: tuple[AxiomSchema, ...] = (
    AxiomSchema(SCHEMA_K, "Distribution", _distribution, uses_psi=True),
    AxiomSchema(
        SCHEMA_EK,
        "Explicit Knowledge",
        lambda phi, psi, i, j: iff(K(i, phi), And(L(i, phi), A(i, phi))),
    ),
    AxiomSchema(
        SCHEMA_A1,
        "Awareness Distribution",
        lambda phi, psi, i, j: iff(A(i, And(phi, psi)), And(A(i, phi), A(i, psi))),
        uses_psi=True,
    ),
    AxiomSchema(SCHEMA_A2, "Symmetry", lambda phi, psi, i, j: iff(A(i, Not(phi)), A(i, phi))),
    AxiomSchema(
        SCHEMA_A3,
        "Awareness of Explicit Knowledge",
        lambda phi, psi, i, j: iff(A(i, K(j, phi)), A(i, phi)),
        uses_j=True,
    ),
    AxiomSchema(
        SCHEMA_A4,
        "Awareness Reflection",
        lambda phi, psi, i, j: iff(A(i, A(j, phi)), A(i, phi)),
        uses_j=True,
    ),
    AxiomSchema(
        SCHEMA_A5,
        "Awareness of Implicit Knowledge",
        lambda phi, psi, i, j: iff(A(i, L(j, phi)), A(i, phi)),
        uses_j=True,
    ),
    AxiomSchema(
        SCHEMA_A11,
        "Awareness Introspection",
        lambda phi, psi, i, j: implies(A(i, phi), L(i, A(i, phi))),
    ),
    AxiomSchema(
        SCHEMA_A12,
        "Unawareness Introspection",
        lambda phi, psi, i, j: implies(Not(A(i, phi)), L(i, Not(A(i, phi)))),
    ),
    AxiomSchema(SCHEMA_T, "Truth", lambda phi, psi, i, j: implies(L(i, phi), phi)),
    AxiomSchema(
        SCHEMA_4,
        "Positive Introspection",
        lambda phi, psi, i, j: implies(L(i, phi), L(i, L(i, phi))),
    ),
    AxiomSchema(
        SCHEMA_5,
        "Negative Introspection",
        lambda phi, psi, i, j: implies(Not(L(i, phi)), L(i, Not(L(i, phi)))),
    ),
)

K_DIST = AxiomSchema(
    SCHEMA_K_DIST,
    "Distribution over implication",
    lambda phi, psi, i, j: implies(L(i, implies(phi, psi)), implies(L(i, phi), L(i, psi))),
    uses_psi=True,
)

SCHEMAS: dict[str, AxiomSchema] = {s.name: s for s in (*AXIOM_SCHEMAS, K_DIST)}


def instantiate_axioms(
    pool: Sequence[Formula],
    agents: int,
    schemas: Sequence[AxiomSchema] = AXIOM_SCHEMAS,
) -> list[tuple[str, Formula]]:
    """Every instance of ``schemas`` over ``pool`` × agents."""
    if not pool:
        raise ValueError("instantiate_axioms needs a non-empty pool")
    instances: list[tuple[str, Formula]] = []
    agent_ids = range(agents)
    for schema in schemas:
        psis: Sequence[Formula | None] = pool if schema.uses_psi else (None,)
        js: Sequence[int] = agent_ids if schema.uses_j else (0,)
        for phi, psi, i, j in product(pool, psis, agent_ids, js):
            instances.append((schema.name, schema.instantiate(phi, psi, i, j)))
    return instances


def instantiate(name: str, subst: Substitution) -> Formula:
    """Instance of schema ``name`` under ``subst`` (agents 0-based).

    Raises:
        KeyError: unknown schema.
        ValueError: ``subst`` lacks a metavariable the schema uses.
    """
    schema = SCHEMAS[name]
    phi = subst.get(SUBST_PHI)
    psi = subst.get(SUBST_PSI)
    i = subst.get(SUBST_I, 0)
    j = subst.get(SUBST_J, 0)
    if not isinstance(phi, FORMULA_TYPES) or isinstance(i, FORMULA_TYPES):
        raise ValueError(f"schema {name} needs a formula for phi and an agent for i")
    if schema.uses_psi and not isinstance(psi, FORMULA_TYPES):
        raise ValueError(f"schema {name} needs a formula for psi")
    if schema.uses_j and SUBST_J not in subst:
        raise ValueError(f"schema {name} needs an agent for j")
    return schema.instantiate(phi, psi if schema.uses_psi else None, int(i), int(j))


# ---------------------------------------------------------------------------
# Propositional tautologies
# ---------------------------------------------------------------------------


def _letters(formula: Formula, found: dict[Formula, int]) -> None:
    match formula:
        case Top():
            return
        case Not(sub):
            _letters(sub, found)
        case And(left, right):
            _letters(left, found)
            _letters(right, found)
        case _:
            found.setdefault(formula, len(found))


def _truth(formula: Formula, letters: Mapping[Formula, int], row: Sequence[bool]) -> bool:
    match formula:
        case Top():
            return True
        case Not(sub):
            return not _truth(sub, letters, row)
        case And(left, right):
            return _truth(left, letters, row) and _truth(right, letters, row)
        case _:
            return row[letters[formula]]


def is_tautology_instance(formula: Formula) -> bool:
    """Whether ``formula`` is a substitution instance of a classical tautology.

    Atoms and maximal modal subformulas become propositional letters.

    Raises:
        SearchBoundError: more letters than the truth table allows.
    """
    letters: dict[Formula, int] = {}
    _letters(formula, letters)
    if len(letters) > MAX_TAUTOLOGY_LETTERS:
        raise SearchBoundError(
            f"{len(letters)} propositional letters exceed {MAX_TAUTOLOGY_LETTERS}"
        )
    return all(
        _truth(formula, letters, row) for row in product((False, True), repeat=len(letters))
    )


def tautology_sample(pool: Sequence[Formula]) -> list[Formula]:
    """A few propositional tautologies built from ``pool``."""
    sample: list[Formula] = []
    for phi in pool:
        sample.append(disjoin(phi, Not(phi)))
        sample.append(implies(phi, phi))
        for psi in pool:
            sample.append(implies(And(phi, psi), psi))
            sample.append(implies(phi, disjoin(phi, psi)))
    return sample


# ---------------------------------------------------------------------------
# Proofs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SchemaStep:
    """Axiom instance; ``schema`` is a primitive schema name or ``PL``."""

    schema: str
    subst: Substitution = field(default_factory=dict)


@dataclass(frozen=True)
class ModusPonens:
    """From lines ``first`` and ``second`` (1-based), one an implication into this line."""

    first: int
    second: int


@dataclass(frozen=True)
class KInference:
    """ℓ_agent applied to an earlier line (``line`` 1-based, ``agent`` 0-based)."""

    line: int
    agent: int


type Justification = SchemaStep | ModusPonens | KInference


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    by: Justification


@dataclass(frozen=True)
class Proof:
    lines: tuple[ProofLine, ...]


@dataclass(frozen=True)
class LineDiagnostic:
    line: int
    message: str


@dataclass(frozen=True)
class ProofCheck:
    """Outcome of checking a proof; ``diagnostics`` name rejected lines."""

    ok: bool
    diagnostics: tuple[LineDiagnostic, ...] = ()

    def as_dict(self) -> dict[str, object]:
        return {
            "ok": self.ok,
            "diagnostics": [{"line": d.line, "message": d.message} for d in self.diagnostics],
        }


def _earlier(ref: int, number: int) -> bool:
    return 1 <= ref < number


def _check_line(lines: Sequence[ProofLine], number: int) -> str | None:
    line = lines[number - 1]
    match line.by:
        case SchemaStep(schema, subst):
            if schema == SCHEMA_PL:
                if is_tautology_instance(line.formula):
                    return None
                return "not a propositional tautology instance"
            if schema not in SCHEMAS:
                return f"unknown schema {schema!r}"
            try:
                expected = instantiate(schema, subst)
            except ValueError as err:
                return str(err)
            if expected != line.formula:
                return f"does not match schema {schema}: expected {print_formula(expected)}"
            return None
        case ModusPonens(first, second):
            if not (_earlier(first, number) and _earlier(second, number)):
                return f"modus ponens must cite earlier lines, got {first} and {second}"
            a, b = lines[first - 1].formula, lines[second - 1].formula
            if b == implies(a, line.formula) or a == implies(b, line.formula):
                return None
            return f"lines {first} and {second} do not yield this formula by modus ponens"
        case KInference(ref, agent):
            if not _earlier(ref, number):
                return f"K-inference must cite an earlier line, got {ref}"
            if line.formula == L(agent, lines[ref - 1].formula):
                return None
            return f"not L{agent + 1} of line {ref}"
    return "unknown justification"


def check_proof(proof: Proof) -> ProofCheck:
    """Check every line independently; the proof is valid iff all lines are."""
    diagnostics: list[LineDiagnostic] = []
    for number in range(1, len(proof.lines) + 1):
        try:
            problem = _check_line(proof.lines, number)
        except SearchBoundError as err:
            problem = str(err)
        if problem is not None:
            diagnostics.append(LineDiagnostic(number, problem))
    _LOGGER.debug(
        "Checked proof of %d lines: %d rejected", len(proof.lines), len(diagnostics)
    )
    return ProofCheck(not diagnostics, tuple(diagnostics))


# ---------------------------------------------------------------------------
# Soundness
# ---------------------------------------------------------------------------


def _subject_label(subject: HMSModel | FHModel | FHCategory) -> str:
    label = getattr(subject, "label", None)
    if callable(label):
        return label()
    return f"category[{','.join(sorted(subject.vocab))}]"


def soundness_suite(
    subject: HMSModel | FHModel | FHCategory,
    pool: Sequence[Formula],
    agents: int,
) -> PropertyReport:
    """Validity of every schema instance, a tautology sample, and rule preservation."""
    name = _subject_label(subject)
    results = []
    for schema in (*AXIOM_SCHEMAS, K_DIST):
        tally = PropertyTally(f"lpa_{schema.name}")
        for _, instance in instantiate_axioms(pool, agents, (schema,)):
            failed = find_failure(subject, instance)
            tally.check(
                failed is None,
                Witness(name, print_formula(instance), state=failed),
            )
        results.append(tally.result())

    tautologies = PropertyTally(f"lpa_{SCHEMA_PL}")
    for formula in tautology_sample(pool):
        failed = find_failure(subject, formula)
        tautologies.check(
            is_tautology_instance(formula) and failed is None,
            Witness(name, print_formula(formula), state=failed),
        )
    results.append(tautologies.result())

    valid = [phi for phi in pool if find_failure(subject, phi) is None]
    rules = PropertyTally("lpa_rules")
    for phi in valid:
        for agent in range(agents):
            necessitated = L(agent, phi)
            failed = find_failure(subject, necessitated)
            rules.check(failed is None, Witness(name, print_formula(necessitated), state=failed))
        for psi in pool:
            if find_failure(subject, implies(phi, psi)) is None:
                failed = find_failure(subject, psi)
                rules.check(
                    failed is None,
                    Witness(name, f"modus ponens to {print_formula(psi)}", state=failed),
                )
    results.append(rules.result())
    _LOGGER.debug("Soundness suite on %s: %d properties", name, len(results))
    return PropertyReport(name, tuple(results))


# ---------------------------------------------------------------------------
# Countermodel search
# ---------------------------------------------------------------------------


def _set_partitions(items: Sequence[str]) -> Iterator[list[list[str]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in _set_partitions(rest):
        yield [[first], *partition]
        for index in range(len(partition)):
            yield [*partition[:index], [first, *partition[index]], *partition[index + 1 :]]


def _agent_views(
    worlds: Sequence[str], vocab: frozenset[str]
) -> Iterator[tuple[tuple[frozenset[str], ...], dict[str, frozenset[str]]]]:
    """Every partition of ``worlds`` with every block-constant awareness."""
    levels = subsets(vocab)
    for partition in _set_partitions(list(worlds)):
        blocks = tuple(frozenset(b) for b in partition)
        for choice in product(levels, repeat=len(blocks)):
            yield blocks, {
                w: level for block, level in zip(blocks, choice, strict=True) for w in block
            }


def _valuations(
    worlds: Sequence[str], atoms: Sequence[str]
) -> Iterator[dict[str, frozenset[str]]]:
    """Valuations with world truth-assignments in non-decreasing order."""
    rows = list(product((False, True), repeat=len(atoms)))
    for assignment in product(range(len(rows)), repeat=len(worlds)):
        if any(a > b for a, b in zip(assignment, assignment[1:], strict=False)):
            continue
        yield {
            p: frozenset(w for w, r in zip(worlds, assignment, strict=True) if rows[r][k])
            for k, p in enumerate(atoms)
        }


def bounded_countermodel_search(
    formula: Formula,
    max_worlds: int = SEARCH_MAX_WORLDS,
    max_atoms: int = SEARCH_MAX_ATOMS,
    agents: int = 1,
) -> tuple[FHModel, str] | None:
    """Smallest FH model and world (by world count) where ``formula`` fails.

    Only the atoms and agents of ``formula`` are varied; other agents get a
    single block with full awareness, which cannot affect its truth.

    Raises:
        SearchBoundError: bounds above the caps, or the formula needs more
            atoms or agents than allowed.
    """
    if not 1 <= max_worlds <= SEARCH_MAX_WORLDS or not 0 <= max_atoms <= SEARCH_MAX_ATOMS:
        raise SearchBoundError(
            f"search is limited to {SEARCH_MAX_WORLDS} worlds and {SEARCH_MAX_ATOMS} atoms"
        )
    vocab = atoms_of(formula)
    if len(vocab) > max_atoms:
        raise SearchBoundError(f"formula has {len(vocab)} atoms, the bound is {max_atoms}")
    used = agents_of(formula)
    if any(a >= agents for a in used):
        raise SearchBoundError(f"formula mentions agent {max(used) + 1} of {agents}")
    atoms = sorted(vocab)
    active = sorted(used)
    for size in range(1, max_worlds + 1):
        worlds = tuple(f"w{n}" for n in range(1, size + 1))
        whole = (frozenset(worlds),)
        full = {w: vocab for w in worlds}
        views = list(_agent_views(worlds, vocab))
        for valuation in _valuations(worlds, atoms):
            for combo in product(views, repeat=len(active)):
                relations = [whole] * agents
                awareness = [full] * agents
                for agent, (blocks, aware) in zip(active, combo, strict=True):
                    relations[agent] = blocks
                    awareness[agent] = aware
                model = FHModel(
                    vocab, agents, worlds, valuation, tuple(relations), tuple(awareness),
                    name="countermodel",
                )
                truth = truth_set(model, formula)
                for world in worlds:
                    if world not in truth:
                        _LOGGER.debug("Countermodel with %d worlds at %s", size, world)
                        return model, world
    return None
