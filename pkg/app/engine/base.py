from __future__ import annotations

import sys
import threading
from typing import Any, Callable, Optional, Union

from app.exceptions import EngineLimitError, StepBudgetExceeded
from app.models import AnySymbol, CharClass, Expression, Grammar, Literal, NonTerminal, Terminal
from app.utils.logger import AppLogger
from config import Config

logger = AppLogger.get_logger(__name__)

Input = Union[bytes, bytearray, str]


def as_bytes(data: Input) -> bytes:
    """Engines work on bytes; text is matched through its UTF-8 encoding."""
    if isinstance(data, str):
        return data.encode("utf-8")
    return bytes(data)


_deep_lock = threading.Lock()


def run_deep(fn: Callable[..., Any], *args: Any) -> Any:
    """Call ``fn`` on a worker thread with a large stack and a raised recursion limit.

    Both settings are process-wide, so runs are serialized and the previous
    values restored afterwards. Exceptions from ``fn`` are re-raised here.
    """
    outcome: dict[str, Any] = {}

    def target() -> None:
        try:
            outcome["value"] = fn(*args)
        except BaseException as e:
            outcome["error"] = e

    with _deep_lock:
        previous_limit = sys.getrecursionlimit()
        previous_stack = threading.stack_size(Config.STACK_MB * 1024 * 1024)
        sys.setrecursionlimit(max(previous_limit, Config.RECURSION_LIMIT))
        try:
            worker = threading.Thread(target=target, name="peg-match")
            worker.start()
            worker.join()
        finally:
            threading.stack_size(previous_stack)
            sys.setrecursionlimit(previous_limit)
    if "error" in outcome:
        raise outcome["error"]
    return outcome["value"]


class BaseMatcher:
    """State shared by every semantics: grammar, subject and the step budget.

    Subclasses implement ``match(expr, pos)``; one matcher instance serves a
    single top-level call and is never shared.
    """

    mode = "base"

    def __init__(self, grammar: Grammar, data: Input, step_budget: Optional[int] = None):
        self.grammar = grammar
        self.data = as_bytes(data)
        self.budget = Config.STEP_BUDGET if step_budget is None else step_budget
        self.steps = 0

    def tick(self) -> None:
        self.steps += 1
        if self.steps > self.budget:
            raise StepBudgetExceeded(self.budget)

    def match(self, expr: Expression, pos: int):
        raise NotImplementedError

    def run(self, start: int = 0):
        if not 0 <= start <= len(self.data):
            raise ValueError(f"start position {start} outside input of length {len(self.data)}")
        return run_deep(self._run_from, start)

    def _run_from(self, start: int):
        try:
            return self.match(NonTerminal(self.grammar.start), start)
        except StepBudgetExceeded:
            logger.info(f"{self.mode} match of rule {self.grammar.start} exceeded {self.budget} steps")
            raise
        except RecursionError:
            logger.info(f"{self.mode} match of rule {self.grammar.start} exhausted the stack")
            raise EngineLimitError("nesting too deep for the interpreter stack") from None
        finally:
            logger.debug(f"{self.mode} match finished after {self.steps} steps")

    def match_atom(self, expr: Expression, pos: int) -> Optional[int]:
        """End position for a single-token atom, or None on mismatch."""
        data = self.data
        match expr:
            case Terminal(symbol):
                return pos + 1 if pos < len(data) and data[pos] == symbol else None
            case AnySymbol():
                return pos + 1 if pos < len(data) else None
            case CharClass(members, _):
                return pos + 1 if pos < len(data) and data[pos] in members else None
            case Literal(text):
                return pos + len(text) if data.startswith(text, pos) else None
        raise TypeError(f"not an atom: {expr!r}")


ATOMS = (Terminal, AnySymbol, CharClass, Literal)
