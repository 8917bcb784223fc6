"""Formula AST, atom sets and sublanguage utilities."""

from __future__ import annotations

import re
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass
from functools import reduce
from itertools import combinations

from .const import ATOM_PATTERN, TOP_TOKEN
from .exceptions import VocabularyError
from .settings import max_atoms

_ATOM_RE = re.compile(rf"^{ATOM_PATTERN}$")

type AtomSet = frozenset[str]

EMPTY: AtomSet = frozenset()


# ---------------------------------------------------------------------------
# Formula nodes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Top:
    """The formula true everywhere; needs no atoms to be defined."""


@dataclass(frozen=True)
class Atom:
    """A propositional atom."""

    name: str


@dataclass(frozen=True)
class Not:
    """Negation of ``sub``."""

    sub: Formula


@dataclass(frozen=True)
class And:
    """Conjunction of ``left`` and ``right``."""

    left: Formula
    right: Formula


@dataclass(frozen=True)
class L:
    """Implicit knowledge of agent ``agent`` (0-based)."""

    agent: int
    sub: Formula


@dataclass(frozen=True)
class A:
    """Awareness of agent ``agent`` (0-based)."""

    agent: int
    sub: Formula


@dataclass(frozen=True)
class K:
    """Explicit knowledge of agent ``agent`` (0-based)."""

    agent: int
    sub: Formula


type Formula = Top | Atom | Not | And | L | A | K

TOP = Top()
MODAL_TYPES = (L, A, K)
FORMULA_TYPES = (Top, Atom, Not, And, L, A, K)


# ---------------------------------------------------------------------------
# Surface sugar (desugared to primitives)
# ---------------------------------------------------------------------------


def implies(antecedent: Formula, consequent: Formula) -> Formula:
    return Not(And(antecedent, Not(consequent)))


def disjoin(left: Formula, right: Formula) -> Formula:
    return Not(And(Not(left), Not(right)))


def iff(left: Formula, right: Formula) -> Formula:
    return And(implies(left, right), implies(right, left))


def unaware(agent: int, sub: Formula) -> Formula:
    return Not(A(agent, sub))


def conjoin_all(formulas: Iterable[Formula]) -> Formula:
    """Left-nested conjunction; the empty conjunction is Top."""
    items = list(formulas)
    if not items:
        return TOP
    return reduce(And, items)


# ---------------------------------------------------------------------------
# Atom sets
# ---------------------------------------------------------------------------


def make_vocab(names: Iterable[str], *, cap: int | None = None) -> AtomSet:
    """Validate atom names and return them as an atom set.

    Raises:
        VocabularyError: for malformed or duplicate names, the reserved
            ``T`` token, or more atoms than the cap allows.
    """
    listed = list(names)
    for name in listed:
        if name == TOP_TOKEN or not isinstance(name, str) or not _ATOM_RE.match(name):
            raise VocabularyError(f"invalid atom name: {name!r}")
    vocab = frozenset(listed)
    if len(vocab) != len(listed):
        raise VocabularyError("duplicate atom names in vocabulary")
    limit = max_atoms() if cap is None else cap
    if len(vocab) > limit:
        raise VocabularyError(f"{len(vocab)} atoms exceed the cap of {limit}")
    return vocab


def atoms_key(atoms: Iterable[str]) -> str:
    """Comma-joined sorted atom names; ``""`` for the empty set."""
    return ",".join(sorted(atoms))


def parse_atoms_key(key: str) -> AtomSet:
    return frozenset(part for part in key.split(",") if part)


def subsets(atoms: Iterable[str]) -> list[AtomSet]:
    """All subsets ordered by size, then lexicographically."""
    ordered = sorted(atoms)
    return [
        frozenset(combo)
        for size in range(len(ordered) + 1)
        for combo in combinations(ordered, size)
    ]


def between(lower: AtomSet, upper: AtomSet) -> list[AtomSet]:
    """All Ψ with lower ⊆ Ψ ⊆ upper."""
    return [lower | extra for extra in subsets(upper - lower)]


def space_order(atoms: AtomSet) -> tuple[int, list[str]]:
    return (len(atoms), sorted(atoms))


# ---------------------------------------------------------------------------
# Structural queries
# ---------------------------------------------------------------------------


def atoms_of(formula: Formula) -> AtomSet:
    """Atoms occurring in ``formula``; empty for Top."""
    match formula:
        case Top():
            return EMPTY
        case Atom(name):
            return frozenset((name,))
        case Not(sub) | L(_, sub) | A(_, sub) | K(_, sub):
            return atoms_of(sub)
        case And(left, right):
            return atoms_of(left) | atoms_of(right)
    raise TypeError(f"not a formula: {formula!r}")


def agents_of(formula: Formula) -> frozenset[int]:
    match formula:
        case Top() | Atom():
            return frozenset()
        case Not(sub):
            return agents_of(sub)
        case L(agent, sub) | A(agent, sub) | K(agent, sub):
            return agents_of(sub) | {agent}
        case And(left, right):
            return agents_of(left) | agents_of(right)
    raise TypeError(f"not a formula: {formula!r}")


def in_sublanguage(formula: Formula, atoms: AtomSet) -> bool:
    return atoms_of(formula) <= atoms


def depth(formula: Formula) -> int:
    match formula:
        case Top() | Atom():
            return 0
        case Not(sub) | L(_, sub) | A(_, sub) | K(_, sub):
            return 1 + depth(sub)
        case And(left, right):
            return 1 + max(depth(left), depth(right))
    raise TypeError(f"not a formula: {formula!r}")


def expand_k(formula: Formula) -> Formula:
    """Replace every explicit-knowledge node by implicit knowledge plus awareness."""
    match formula:
        case Top() | Atom():
            return formula
        case Not(sub):
            return Not(expand_k(sub))
        case And(left, right):
            return And(expand_k(left), expand_k(right))
        case L(agent, sub):
            return L(agent, expand_k(sub))
        case A(agent, sub):
            return A(agent, expand_k(sub))
        case K(agent, sub):
            inner = expand_k(sub)
            return And(L(agent, inner), A(agent, inner))
    raise TypeError(f"not a formula: {formula!r}")


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------


def print_formula(formula: Formula) -> str:
    """Render with 1-based agents and fully parenthesized conjunctions."""
    match formula:
        case Top():
            return TOP_TOKEN
        case Atom(name):
            return name
        case Not(sub):
            return "~" + print_formula(sub)
        case And(left, right):
            return f"({print_formula(left)} & {print_formula(right)})"
        case L(agent, sub):
            return f"L{agent + 1} {print_formula(sub)}"
        case A(agent, sub):
            return f"A{agent + 1} {print_formula(sub)}"
        case K(agent, sub):
            return f"K{agent + 1} {print_formula(sub)}"
    raise TypeError(f"not a formula: {formula!r}")


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def unary_operators(agents: int) -> list[Callable[[Formula], Formula]]:
    """Constructors for ¬ and every agent's ℓ, a, k, in enumeration order."""
    ops: list[Callable[[Formula], Formula]] = [Not]
    for agent in range(agents):
        ops.extend(
            [
                lambda sub, i=agent: L(i, sub),
                lambda sub, i=agent: A(i, sub),
                lambda sub, i=agent: K(i, sub),
            ]
        )
    return ops


def enumerate_formulas(atoms: AtomSet, agents: int, max_depth: int) -> Iterator[Formula]:
    """Yield every formula of L_atoms with depth ≤ max_depth exactly once.

    Each formula has a unique top-level decomposition, so building depth d
    only from parts whose maximum depth is d - 1 never repeats a formula.
    """
    if max_depth < 0:
        raise ValueError("max_depth must be non-negative")
    levels: list[list[Formula]] = [[TOP, *(Atom(name) for name in sorted(atoms))]]
    yield from levels[0]
    ops = unary_operators(agents)
    for d in range(1, max_depth + 1):
        newest = levels[d - 1]
        older = [f for level in levels[: d - 1] for f in level]
        upto = older + newest
        current: list[Formula] = []
        for op in ops:
            current.extend(op(sub) for sub in newest)
        for left in upto:
            for right in upto:
                if depth(left) == d - 1 or depth(right) == d - 1:
                    current.append(And(left, right))
        levels.append(current)
        yield from current
