from dotenv import load_dotenv

from .diagnostics import Diagnostic, line_col, render_ffl, render_label, render_position, unexpected_lexeme
from .engine import VarStrategy, join, join_var, match_ffl, match_fft, match_labeled, match_plain, smallest
from .exceptions import (
    DiagnosticError, EngineLimitError, GrammarSyntaxError, PegError, StepBudgetExceeded, TransformError,
)
from .grammar import (
    classify_outcome, desugar, desugar_star, expand_nofail, expand_try, format_grammar, four_values,
    load_grammar, nullable, parse_grammar, validate,
)
from .main import GrammarRunner, Mode, RunConfig, Transform

load_dotenv()  # Load environment variables

__version__ = "0.1.0"

__all__ = [
    "Diagnostic", "line_col", "render_ffl", "render_label", "render_position", "unexpected_lexeme",
    "VarStrategy", "join", "join_var", "match_ffl", "match_fft", "match_labeled", "match_plain", "smallest",
    "DiagnosticError", "EngineLimitError", "GrammarSyntaxError", "PegError", "StepBudgetExceeded",
    "TransformError",
    "classify_outcome", "desugar", "desugar_star", "expand_nofail", "expand_try", "format_grammar",
    "four_values", "load_grammar", "nullable", "parse_grammar", "validate",
    "GrammarRunner", "Mode", "RunConfig", "Transform",
]
