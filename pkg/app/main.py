from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional, Union

from app.diagnostics import Diagnostic, line_col, render_ffl, render_label, render_position
from app.engine import VarStrategy, join, match_ffl, match_fft, match_labeled, match_plain, smallest
from app.exceptions import EngineLimitError, GrammarSyntaxError, TransformError
from app.grammar import (
    EPSN, classify_outcome, desugar_star, format_grammar, four_values, load_grammar, validate,
)
from app.models import Consumed, FailureRecord, Grammar, PredicateItem, Raised
from app.utils.logger import AppLogger

logger = AppLogger.get_logger(__name__)

EXIT_OK = 0
EXIT_SYNTAX_ERROR = 1
EXIT_PROBLEM = 2

END_OF_INPUT_ITEM = PredicateItem("!.")


class Mode(str, Enum):
    PLAIN = "plain"
    FARTHEST = "farthest"
    EXPECTED = "expected"
    LABELED = "labeled"


class Transform(str, Enum):
    NONE = "none"
    FOUR_VALUES = "four-values"


@dataclass(frozen=True)
class RunConfig:
    grammar_path: Path
    input_path: Optional[Path] = None
    mode: Mode = Mode.EXPECTED
    start: Optional[str] = None
    require_eof: bool = True
    var_strategy: VarStrategy = VarStrategy.JOIN
    transform: Transform = Transform.NONE
    validate_only: bool = False
    print_grammar: bool = False
    step_budget: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "grammar_path", Path(self.grammar_path))
        if self.input_path is not None:
            object.__setattr__(self, "input_path", Path(self.input_path))
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "var_strategy", VarStrategy(self.var_strategy))
        object.__setattr__(self, "transform", Transform(self.transform))
        if self.transform is Transform.FOUR_VALUES and self.mode is not Mode.LABELED:
            raise ValueError("the four-values transform needs --mode labeled")
        if self.input_path is None and not (self.validate_only or self.print_grammar):
            raise ValueError("an input file is required")
        if self.step_budget is not None and self.step_budget <= 0:
            raise ValueError("the step budget must be positive")


@dataclass
class RunReport:
    status: int
    output: list[str] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    diagnostic: Optional[Diagnostic] = None


def _eof_failure(record: FailureRecord, end: int) -> FailureRecord:
    return join(record, FailureRecord.single(end, END_OF_INPUT_ITEM))


class GrammarRunner:
    """Loads a grammar, matches one input and turns the outcome into a report."""

    def __init__(self, config: RunConfig):
        self.config = config

    def run(self) -> RunReport:
        config = self.config
        logger.info(f"Running {config.mode.value} match with grammar {config.grammar_path}")
        try:
            grammar = self._prepare_grammar()
        except GrammarSyntaxError as e:
            return RunReport(EXIT_PROBLEM, errors=self._grammar_errors(e))
        except (OSError, TransformError) as e:
            logger.info(f"Grammar {config.grammar_path} is unusable: {str(e)}")
            return RunReport(EXIT_PROBLEM, errors=[f"{config.grammar_path}: {e}"])
        if isinstance(grammar, RunReport):
            return grammar

        if config.print_grammar:
            return RunReport(EXIT_OK, output=[format_grammar(grammar).rstrip("\n")])
        if config.validate_only:
            return RunReport(EXIT_OK)

        try:
            data = config.input_path.read_bytes()
        except OSError as e:
            logger.info(f"Cannot read input {config.input_path}: {str(e)}")
            return RunReport(EXIT_PROBLEM, errors=[f"{config.input_path}: {e.strerror or e}"])

        try:
            diagnostic = self.diagnose(grammar, data, config.input_path.name)
        except (EngineLimitError, TransformError) as e:
            return RunReport(EXIT_PROBLEM, errors=[f"{config.input_path.name}: {e}"])

        if diagnostic is None:
            logger.info(f"{config.input_path.name} matched")
            return RunReport(EXIT_OK)
        logger.info(f"{config.input_path.name} rejected at {diagnostic.line}:{diagnostic.column}")
        return RunReport(EXIT_SYNTAX_ERROR, errors=[diagnostic.message], diagnostic=diagnostic)

    def _prepare_grammar(self) -> Union[Grammar, RunReport]:
        config = self.config
        grammar = load_grammar(config.grammar_path, config.start)
        issues = validate(grammar)
        if issues:
            logger.info(f"Grammar {config.grammar_path} failed validation with {len(issues)} issue(s)")
            return RunReport(EXIT_PROBLEM, errors=[f"{config.grammar_path}: {issue}" for issue in issues])
        if config.transform is Transform.FOUR_VALUES:
            grammar = four_values(desugar_star(grammar))
        return grammar

    def _grammar_errors(self, error: GrammarSyntaxError) -> list[str]:
        path = self.config.grammar_path
        try:
            text = path.read_bytes()
        except OSError:
            text = b""
        lines = []
        for item in error.errors:
            line, column = line_col(text, min(item.span.start, len(text)))
            lines.append(f"{path}:{line}:{column}: {item.message}")
        return lines

    def diagnose(self, grammar: Grammar, data: bytes, name: str) -> Optional[Diagnostic]:
        """None when the input is accepted, else the diagnostic for the mode."""
        match self.config.mode:
            case Mode.PLAIN:
                return self._plain(grammar, data, name)
            case Mode.FARTHEST:
                return self._farthest(grammar, data, name)
            case Mode.EXPECTED:
                return self._expected(grammar, data, name)
            case Mode.LABELED:
                return self._labeled(grammar, data, name)

    def _leftover(self, end: int, data: bytes) -> bool:
        return self.config.require_eof and end < len(data)

    def _plain(self, grammar: Grammar, data: bytes, name: str) -> Optional[Diagnostic]:
        result = match_plain(grammar, data, step_budget=self.config.step_budget)
        if not isinstance(result, Consumed):
            return render_position(name, data, 0)
        if self._leftover(result.end, data):
            return render_position(name, data, result.end)
        return None

    def _farthest(self, grammar: Grammar, data: bytes, name: str) -> Optional[Diagnostic]:
        result, farthest = match_fft(grammar, data, step_budget=self.config.step_budget)
        if isinstance(result, Consumed):
            if not self._leftover(result.end, data):
                return None
            farthest = smallest(farthest, result.end)
        return render_position(name, data, farthest if farthest is not None else 0)

    def _expected(self, grammar: Grammar, data: bytes, name: str) -> Optional[Diagnostic]:
        result, record = match_ffl(grammar, data, var_strategy=self.config.var_strategy,
                                   step_budget=self.config.step_budget)
        if isinstance(result, Consumed):
            if not self._leftover(result.end, data):
                return None
            record = _eof_failure(record, result.end)
        return render_ffl(name, data, record)

    def _labeled(self, grammar: Grammar, data: bytes, name: str) -> Optional[Diagnostic]:
        outcome, record = match_labeled(grammar, data, var_strategy=self.config.var_strategy,
                                        step_budget=self.config.step_budget)
        if self.config.transform is Transform.FOUR_VALUES:
            logger.info(f"Four-values outcome: {classify_outcome(outcome, 0)}")
            if isinstance(outcome, Raised) and outcome.label == EPSN:
                outcome = Consumed(0)
        if isinstance(outcome, Consumed):
            if not self._leftover(outcome.end, data):
                return None
            return render_ffl(name, data, _eof_failure(record, outcome.end))
        return render_label(grammar, outcome.label, outcome.at, data, name, record)
