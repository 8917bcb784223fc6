"""Result records for validators and property checks."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Any

from .const import MAX_WITNESSES


@dataclass(frozen=True)
class Violation:
    """One failed clause of a validator."""

    clause: str
    detail: str
    agent: int | None = None
    state: str | None = None

    def as_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"clause": self.clause, "detail": self.detail}
        if self.agent is not None:
            data["agent"] = self.agent + 1
        if self.state is not None:
            data["state"] = self.state
        return data


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validating a model, morphism, frame or category.

    An empty ``violations`` tuple means the subject is valid. Warnings never
    affect validity.
    """

    subject: str
    violations: tuple[Violation, ...] = ()
    warnings: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def clauses(self) -> set[str]:
        """Return the set of clause codes that failed."""
        return {v.clause for v in self.violations}

    def merge(self, *others: ValidationReport, subject: str | None = None) -> ValidationReport:
        violations = list(self.violations)
        warnings = list(self.warnings)
        for other in others:
            violations.extend(other.violations)
            warnings.extend(other.warnings)
        return ValidationReport(
            subject=subject or self.subject,
            violations=tuple(violations),
            warnings=tuple(warnings),
        )

    def as_dict(self) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "violations": [v.as_dict() for v in self.violations],
            "warnings": [w.as_dict() for w in self.warnings],
        }


class ReportBuilder:
    """Collects violations while a validator runs."""

    def __init__(self, subject: str) -> None:
        self._subject = subject
        self._violations: list[Violation] = []
        self._warnings: list[Violation] = []

    def fail(
        self, clause: str, detail: str, *, agent: int | None = None, state: str | None = None
    ) -> None:
        self._violations.append(Violation(clause, detail, agent, state))

    def warn(
        self, clause: str, detail: str, *, agent: int | None = None, state: str | None = None
    ) -> None:
        self._warnings.append(Violation(clause, detail, agent, state))

    def extend(self, report: ValidationReport) -> None:
        self._violations.extend(report.violations)
        self._warnings.extend(report.warnings)

    def build(self) -> ValidationReport:
        return ValidationReport(self._subject, tuple(self._violations), tuple(self._warnings))


@dataclass(frozen=True)
class Witness:
    """A concrete instance on which a property failed."""

    subject: str
    detail: str = ""
    agent: int | None = None
    state: str | None = None

    def as_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"subject": self.subject}
        if self.detail:
            data["detail"] = self.detail
        if self.agent is not None:
            data["agent"] = self.agent + 1
        if self.state is not None:
            data["state"] = self.state
        return data


@dataclass(frozen=True)
class PropertyResult:
    """Instance count and failures of one named property."""

    name: str
    instances: int
    failure_count: int = 0
    failures: tuple[Witness, ...] = ()

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    def as_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "instances": self.instances,
            "failures": self.failure_count,
            "witnesses": [w.as_dict() for w in self.failures],
        }


class PropertyTally:
    """Counts instances of a property and keeps the first few witnesses."""

    def __init__(self, name: str) -> None:
        self.name = name
        self.instances = 0
        self.failure_count = 0
        self._witnesses: list[Witness] = []

    def check(self, holds: bool, witness: Witness | None = None) -> bool:
        self.instances += 1
        if not holds:
            self.failure_count += 1
            if witness is not None and len(self._witnesses) < MAX_WITNESSES:
                self._witnesses.append(witness)
        return holds

    def result(self) -> PropertyResult:
        return PropertyResult(
            name=self.name,
            instances=self.instances,
            failure_count=self.failure_count,
            failures=tuple(self._witnesses),
        )


@dataclass(frozen=True)
class PropertyReport:
    """Aggregated outcome of a property suite run."""

    subject: str
    results: tuple[PropertyResult, ...] = ()
    validations: tuple[ValidationReport, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results) and all(v.ok for v in self.validations)

    def failed(self) -> list[PropertyResult]:
        return [r for r in self.results if not r.ok]

    def result(self, name: str) -> PropertyResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def names(self) -> list[str]:
        return [r.name for r in self.results]

    def as_dict(self) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "validations": [v.as_dict() for v in self.validations],
            "properties": [r.as_dict() for r in self.results],
        }


def merge_reports(subject: str, reports: Iterable[PropertyReport]) -> PropertyReport:
    """Concatenate reports in the given order."""
    results: list[PropertyResult] = []
    validations: list[ValidationReport] = []
    for report in reports:
        results.extend(report.results)
        validations.extend(report.validations)
    return PropertyReport(subject, tuple(results), tuple(validations))
