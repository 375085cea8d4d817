from __future__ import annotations

from dataclasses import dataclass


class PegError(Exception):
    """Base class for every error raised by the library."""


@dataclass(frozen=True)
class SourceSpan:
    """Byte offsets ``[start, end)`` inside a grammar file."""

    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start <= self.end:
            raise ValueError(f"invalid span {self.start}..{self.end}")


@dataclass(frozen=True)
class GrammarFileError:
    message: str
    span: SourceSpan


class GrammarSyntaxError(PegError):
    """A grammar file could not be read; carries every error found."""

    def __init__(self, errors: list[GrammarFileError]):
        super().__init__(f"{len(errors)} error(s) in grammar file")
        self.errors = errors


class EngineLimitError(PegError):
    """The engine gave up before finishing a match."""


class StepBudgetExceeded(EngineLimitError):
    def __init__(self, budget: int):
        super().__init__(f"step budget of {budget} exceeded")
        self.budget = budget


class TransformError(PegError):
    pass


class DiagnosticError(PegError):
    pass
