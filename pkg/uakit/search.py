"""Generic formula evaluation and depth-bounded formula-class exploration.

Every semantics in the package (FH truth sets, HMS events) is an algebra
over the connectives. ``evaluate`` folds a formula through one algebra;
``explore`` walks all formulas of a sublanguage up to a depth while keeping
only one representative per *signature*: the atom set together with the
value in every algebra being compared. Two formulas with equal signatures
behave identically under every connective, so checking representatives
decides the same question as checking every formula.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, MutableMapping, Sequence
from dataclasses import dataclass
from typing import Any, Protocol

from .syntax import A, K, L, TOP, And, Atom, AtomSet, Formula, Not, Top, atoms_of

_LOGGER = logging.getLogger(__name__)


class Algebra(Protocol):
    """Interpretation of the connectives over some value domain."""

    def top(self) -> Any: ...

    def atom(self, name: str) -> Any: ...

    def negate(self, value: Any) -> Any: ...

    def conjoin(self, left: Any, right: Any) -> Any: ...

    def implicit(self, agent: int, value: Any) -> Any: ...

    def aware(self, agent: int, value: Any, atoms: AtomSet) -> Any: ...

    def explicit(self, agent: int, value: Any, atoms: AtomSet) -> Any: ...


def evaluate(
    algebra: Algebra, formula: Formula, cache: MutableMapping[Formula, Any] | None = None
) -> Any:
    """Fold ``formula`` through ``algebra``, memoizing subformulas in ``cache``."""
    memo: MutableMapping[Formula, Any] = {} if cache is None else cache
    return _evaluate(algebra, formula, memo)


def _evaluate(algebra: Algebra, formula: Formula, memo: MutableMapping[Formula, Any]) -> Any:
    cached = memo.get(formula)
    if cached is not None:
        return cached
    match formula:
        case Top():
            value = algebra.top()
        case Atom(name):
            value = algebra.atom(name)
        case Not(sub):
            value = algebra.negate(_evaluate(algebra, sub, memo))
        case And(left, right):
            value = algebra.conjoin(_evaluate(algebra, left, memo), _evaluate(algebra, right, memo))
        case L(agent, sub):
            value = algebra.implicit(agent, _evaluate(algebra, sub, memo))
        case A(agent, sub):
            value = algebra.aware(agent, _evaluate(algebra, sub, memo), atoms_of(sub))
        case K(agent, sub):
            value = algebra.explicit(agent, _evaluate(algebra, sub, memo), atoms_of(sub))
        case _:
            raise TypeError(f"not a formula: {formula!r}")
    memo[formula] = value
    return value


@dataclass(frozen=True)
class FormulaClass:
    """Representative formula of one signature."""

    formula: Formula
    atoms: AtomSet
    values: tuple[Any, ...]
    depth: int


def explore(
    atoms: AtomSet,
    agents: int,
    max_depth: int,
    algebras: Sequence[Algebra],
) -> Iterator[FormulaClass]:
    """Yield one representative per signature for formulas of depth ≤ max_depth.

    Classes are yielded as soon as they are found, shallow first, so callers
    looking for a counterexample can stop at the smallest one.
    """
    if max_depth < 0:
        raise ValueError("max_depth must be non-negative")
    seen: set[tuple[AtomSet, tuple[Any, ...]]] = set()
    classes: list[FormulaClass] = []

    def admit(formula: Formula, formula_atoms: AtomSet, values: tuple[Any, ...], d: int):
        key = (formula_atoms, values)
        if key in seen:
            return None
        seen.add(key)
        found = FormulaClass(formula, formula_atoms, values, d)
        classes.append(found)
        return found

    base = [(TOP, frozenset(), tuple(alg.top() for alg in algebras))]
    base.extend(
        (Atom(name), frozenset((name,)), tuple(alg.atom(name) for alg in algebras))
        for name in sorted(atoms)
    )
    for formula, formula_atoms, values in base:
        found = admit(formula, formula_atoms, values, 0)
        if found is not None:
            yield found

    for d in range(1, max_depth + 1):
        previous = [c for c in classes if c.depth == d - 1]
        if not previous:
            _LOGGER.debug("Formula classes saturated at depth %d (%d classes)", d - 1, len(classes))
            return
        upto = list(classes)
        for cls in previous:
            yield from _unary_classes(cls, agents, algebras, admit, d)
        for left in upto:
            for right in upto:
                if left.depth != d - 1 and right.depth != d - 1:
                    continue
                values = tuple(
                    alg.conjoin(lv, rv)
                    for alg, lv, rv in zip(algebras, left.values, right.values, strict=True)
                )
                found = admit(And(left.formula, right.formula), left.atoms | right.atoms, values, d)
                if found is not None:
                    yield found
        _LOGGER.debug("Formula classes up to depth %d: %d", d, len(classes))


def _unary_classes(cls: FormulaClass, agents: int, algebras, admit, d: int):
    values = tuple(alg.negate(v) for alg, v in zip(algebras, cls.values, strict=True))
    found = admit(Not(cls.formula), cls.atoms, values, d)
    if found is not None:
        yield found
    for agent in range(agents):
        steps = (
            (L(agent, cls.formula), lambda alg, v, i=agent: alg.implicit(i, v)),
            (A(agent, cls.formula), lambda alg, v, i=agent: alg.aware(i, v, cls.atoms)),
            (K(agent, cls.formula), lambda alg, v, i=agent: alg.explicit(i, v, cls.atoms)),
        )
        for formula, apply in steps:
            values = tuple(apply(alg, v) for alg, v in zip(algebras, cls.values, strict=True))
            found = admit(formula, cls.atoms, values, d)
            if found is not None:
                yield found
