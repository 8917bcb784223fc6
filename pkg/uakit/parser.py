"""Concrete formula grammar and parser.

Precedence from tightest to loosest: ``~`` and modal prefixes, ``&``, ``|``,
``->`` (right associative), ``<->``. Agent indices are 1-based in text and
0-based in the AST. ``|``, ``->``, ``<->`` and ``U<i>`` are desugared.
"""

from __future__ import annotations

from collections.abc import Iterable

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import (
    LarkError,
    UnexpectedCharacters,
    UnexpectedEOF,
    UnexpectedInput,
    VisitError,
)

from .exceptions import FormulaSyntaxError, UakitError, UnknownAtomError
from .syntax import (
    A,
    K,
    L,
    TOP,
    And,
    Atom,
    Formula,
    Not,
    atoms_of,
    disjoin,
    iff,
    implies,
    unaware,
)

GRAMMAR = r"""
?start: iff

?iff: imp
    | iff "<->" imp -> equivalence

?imp: disj
    | disj "->" imp -> implication

?disj: conj
    | disj "|" conj -> disjunction

?conj: unary
    | conj "&" unary -> conjunction

?unary: "~" unary -> negation
    | MODAL unary -> modal
    | primary

?primary: "T" -> top
    | NAME -> atom
    | "(" iff ")"

MODAL: /[LAKU][0-9]+/
NAME: /[a-z][A-Za-z0-9_]*/

%import common.WS
%ignore WS
"""


@v_args(inline=True)
class _ToFormula(Transformer):
    """Build AST nodes bottom-up from the parse tree."""

    def top(self) -> Formula:
        return TOP

    def atom(self, name: Token) -> Formula:
        return Atom(str(name))

    def negation(self, sub: Formula) -> Formula:
        return Not(sub)

    def modal(self, token: Token, sub: Formula) -> Formula:
        op, index = token[0], int(token[1:])
        if index < 1:
            raise FormulaSyntaxError(
                f"agent index must be 1 or more, got {token}",
                line=token.line,
                column=token.column,
            )
        agent = index - 1
        if op == "L":
            return L(agent, sub)
        if op == "A":
            return A(agent, sub)
        if op == "K":
            return K(agent, sub)
        return unaware(agent, sub)

    def conjunction(self, left: Formula, right: Formula) -> Formula:
        return And(left, right)

    def disjunction(self, left: Formula, right: Formula) -> Formula:
        return disjoin(left, right)

    def implication(self, left: Formula, right: Formula) -> Formula:
        return implies(left, right)

    def equivalence(self, left: Formula, right: Formula) -> Formula:
        return iff(left, right)


_PARSER = Lark(GRAMMAR, parser="lalr")
_TRANSFORMER = _ToFormula()


def parse_formula(text: str, vocab: Iterable[str] | None = None) -> Formula:
    """Parse formula text into an AST.

    Args:
        text: formula in the concrete grammar.
        vocab: atoms the formula may use; ``None`` accepts any atom.

    Raises:
        FormulaSyntaxError: lexical or syntax error, with position.
        UnknownAtomError: an atom outside ``vocab``.
    """
    try:
        tree = _PARSER.parse(text)
    except UnexpectedCharacters as err:
        raise FormulaSyntaxError(
            f"unexpected character {text[err.pos_in_stream]!r}", line=err.line, column=err.column
        ) from err
    except UnexpectedEOF as err:
        raise FormulaSyntaxError("unexpected end of formula (unbalanced parentheses?)") from err
    except UnexpectedInput as err:
        token = getattr(err, "token", None)
        if token is not None and token.type == "$END":
            raise FormulaSyntaxError(
                "unexpected end of formula (unbalanced parentheses?)"
            ) from err
        raise FormulaSyntaxError(
            f"unexpected token {token!s}", line=err.line, column=err.column
        ) from err
    except LarkError as err:
        raise FormulaSyntaxError(str(err)) from err

    try:
        formula = _TRANSFORMER.transform(tree)
    except VisitError as err:
        if isinstance(err.orig_exc, UakitError):
            raise err.orig_exc from err
        raise

    if vocab is not None:
        unknown = atoms_of(formula) - frozenset(vocab)
        if unknown:
            raise UnknownAtomError(unknown)
    return formula


def parse_many(texts: Iterable[str], vocab: Iterable[str] | None = None) -> list[Formula]:
    allowed = None if vocab is None else frozenset(vocab)
    return [parse_formula(text, allowed) for text in texts]
