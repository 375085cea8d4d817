from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from app.engine import VarStrategy
from app.main import GrammarRunner, Mode, RunConfig, Transform
from app.utils.logger import AppLogger

logger = AppLogger.get_logger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="peglab",
        description="Match an input file against a parsing expression grammar and report syntax errors.",
    )
    parser.add_argument("--grammar", required=True, help="grammar file (.peg)")
    parser.add_argument("--input", help="file to match")
    parser.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.EXPECTED.value,
                        help="matching semantics (default: expected)")
    parser.add_argument("--start", help="start rule (default: first rule in the grammar)")
    parser.add_argument("--no-require-eof", dest="require_eof", action="store_false",
                        help="accept a match that leaves input unconsumed")
    parser.add_argument("--var-strategy", choices=[s.value for s in VarStrategy],
                        default=VarStrategy.JOIN.value,
                        help="how non-lexical rules report inner failures (default: join)")
    parser.add_argument("--transform", choices=[t.value for t in Transform], default=Transform.NONE.value)
    parser.add_argument("--validate-only", action="store_true", help="check the grammar and stop")
    parser.add_argument("--print-grammar", action="store_true",
                        help="print the grammar after any transform and stop")
    parser.add_argument("--steps", type=int, dest="step_budget", help="step budget for the engine")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            grammar_path=args.grammar,
            input_path=args.input,
            mode=args.mode,
            start=args.start,
            require_eof=args.require_eof,
            var_strategy=args.var_strategy,
            transform=args.transform,
            validate_only=args.validate_only,
            print_grammar=args.print_grammar,
            step_budget=args.step_budget,
        )
    except ValueError as e:
        parser.error(str(e))

    report = GrammarRunner(config).run()
    for line in report.output:
        print(line)
    for line in report.errors:
        print(line, file=sys.stderr)
    return report.status
