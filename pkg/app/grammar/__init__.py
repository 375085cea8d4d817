from app.grammar.printer import class_name, format_expression, format_grammar
from app.grammar.reader import desugar, load_grammar, parse_grammar
from app.grammar.transforms import (
    EPSN, ERROR, FourValue, Outcome, classify_outcome, desugar_star, expand_nofail,
    expand_try, four_values,
)
from app.grammar.validator import nullable, nullable_rules, validate

__all__ = [
    "class_name", "format_expression", "format_grammar",
    "desugar", "load_grammar", "parse_grammar",
    "EPSN", "ERROR", "FourValue", "Outcome", "classify_outcome", "desugar_star",
    "expand_nofail", "expand_try", "four_values",
    "nullable", "nullable_rules", "validate",
]
