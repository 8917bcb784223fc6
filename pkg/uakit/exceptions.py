"""Exception hierarchy for uakit."""

from __future__ import annotations

from collections.abc import Iterable
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .report import ValidationReport


class UakitError(Exception):
    """Base class for all uakit errors."""


class FormulaSyntaxError(UakitError, ValueError):
    """Formula text does not conform to the grammar."""

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None) -> None:
        self.line = line
        self.column = column
        if line is not None and column is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class UnknownAtomError(UakitError, LookupError):
    """An atom is not part of the vocabulary in use."""

    def __init__(self, atoms: Iterable[str]) -> None:
        self.atoms = tuple(sorted(atoms))
        super().__init__(f"unknown atom(s): {', '.join(self.atoms)}")


class VocabularyError(UakitError, ValueError):
    """Malformed vocabulary or vocabulary above the atom cap."""


class SearchBoundError(UakitError, ValueError):
    """Requested enumeration bounds exceed the supported caps."""


class ModelError(UakitError, ValueError):
    """A model is structurally unusable (unknown world, state or agent, bad shape)."""


class EventError(ModelError):
    """A set of states is not an event based on the expected space."""


class MissingCorrespondenceError(ModelError):
    """A modality needs a correspondence the model does not carry."""


class UndefinedFormulaError(UakitError, ValueError):
    """A formula has no truth value at the requested state."""

    def __init__(self, atoms: Iterable[str], state: str | None = None) -> None:
        self.atoms = tuple(sorted(atoms))
        self.state = state
        where = f" at {state}" if state is not None else ""
        super().__init__(f"formula undefined{where}: atom(s) {', '.join(self.atoms)}")


class DerivationError(UakitError):
    """Deriving the explicit correspondence failed its audit."""

    def __init__(self, message: str, report: ValidationReport) -> None:
        self.report = report
        super().__init__(message)


class GenerationError(UakitError):
    """A random generator could not produce a valid model."""


class ModelFileError(UakitError):
    """A model, proof or trace file could not be read or failed its schema."""
