"""Batch command-line driver: parse, type-check, and normalize scripts.

Each input file is a sequence of statements (see `parser`).  `assert` runs
the checker, `eval` normalizes under the beta-step budget, and `eval` and
`print` emit canonical text, one line each, with binder names recomputed
so the output never shows two variables under one name and is identical
across runs.

Exit codes: 0 on success, 1 on a parse or type error, 2 when the step
budget runs out.  Errors go to stderr as `file:line:col: code: message`.
"""

from __future__ import annotations

import argparse
import sys
from typing import IO, Optional

from ._stack import call_with_deep_stack
from .core import enable_debug, phase1_lookup_count
from .parser import AssertType, Def, Eval, ParseError, Print, Script, parse_script
from .systemf import StepBudgetExceeded, nf, print_te, update_names
from .typecheck import TypeCheckError, check

__all__ = ["main", "run_script"]

DEFAULT_STEPS = 1_000_000


def run_script(
    script: Script,
    filename: str,
    steps: int = DEFAULT_STEPS,
    ascii_out: bool = False,
    out: Optional[IO[str]] = None,
    err: Optional[IO[str]] = None,
) -> int:
    """Process statements in order; returns the exit code for the script."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    for stmt in script:
        try:
            if isinstance(stmt, Def):
                if stmt.annot is not None:
                    check([], stmt.te, stmt.annot)
            elif isinstance(stmt, AssertType):
                check([], stmt.te, stmt.ty)
            elif isinstance(stmt, Eval):
                result = nf(stmt.te, max_steps=steps)
                print(print_te(update_names(result), ascii=ascii_out), file=out)
            elif isinstance(stmt, Print):
                print(print_te(update_names(stmt.te), ascii=ascii_out), file=out)
        except TypeCheckError as e:
            print(
                f"{filename}:{stmt.line}:{stmt.col}: {e.code.value}: {e.message}",
                file=err,
            )
            return 1
        except StepBudgetExceeded as e:
            print(
                f"{filename}:{stmt.line}:{stmt.col}: budget-exhausted: {e}",
                file=err,
            )
            return 2
    return 0


def _run_files(files: list[str], steps: int, ascii_out: bool) -> int:
    for path in files:
        try:
            with open(path, encoding="utf-8") as handle:
                text = handle.read()
        except OSError as e:
            print(f"{path}: syntax-error: {e}", file=sys.stderr)
            return 1
        try:
            script = parse_script(text)
        except ParseError as e:
            print(f"{path}:{e.line}:{e.col}: {e.code}: {e.message}", file=sys.stderr)
            return 1
        code = run_script(script, path, steps, ascii_out)
        if code != 0:
            return code
    return 0


def main(argv: Optional[list[str]] = None) -> int:
    ap = argparse.ArgumentParser(
        prog="bindcore",
        description="Type-check and normalize System F script files.",
    )
    ap.add_argument("files", nargs="+", metavar="FILE", help="script files to process")
    ap.add_argument(
        "--steps",
        type=int,
        default=DEFAULT_STEPS,
        help=f"beta-step budget for eval statements (default {DEFAULT_STEPS})",
    )
    ap.add_argument(
        "--ascii",
        action="store_true",
        help="emit the ASCII grammar instead of unicode",
    )
    ap.add_argument(
        "--debug",
        action="store_true",
        help="enable internal checks and report slot-lookup counts",
    )
    ns = ap.parse_args(argv)
    if ns.debug:
        enable_debug(True)
    code = call_with_deep_stack(_run_files, ns.files, ns.steps, ns.ascii)
    if ns.debug:
        print(f"phase1 lookups: {phase1_lookup_count()}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
