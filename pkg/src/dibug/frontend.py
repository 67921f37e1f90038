"""Source-to-CheckedProgram pipeline: lex, parse, check."""

from .checker import CheckedProgram, check_program
from .diagnostics import CompileError
from .parser import parse_program

__all__ = ["compile_program", "CheckedProgram", "CompileError"]


def compile_program(text: str) -> CheckedProgram:
    """Compile source text; raises CompileError carrying all diagnostics."""
    program = parse_program(text)
    line_count = max(1, text.count("\n") + (0 if text.endswith("\n") else 1))
    return check_program(program, line_count)
