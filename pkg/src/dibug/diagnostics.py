"""Source diagnostics shared by the program front end and the expression parser."""

from dataclasses import dataclass

KIND_LEX = "lex"
KIND_PARSE = "parse"
KIND_CHECK = "check"


@dataclass(frozen=True, slots=True)
class Diagnostic:
    """One problem found in source text; line and column are 1-based."""

    line: int
    column: int
    kind: str
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.kind} error: {self.message}"


class CompileError(Exception):
    """Raised when source text cannot be turned into a checked program or expression."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))
