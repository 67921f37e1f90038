"""Hand-rolled scanner for wlang source and relational expression text."""

from dataclasses import dataclass

from .diagnostics import KIND_LEX, CompileError, Diagnostic

KEYWORDS = {"int", "if", "else", "while", "return"}

# Two-character operators must be tried before their one-character prefixes.
_TWO_CHAR = ("==", "!=", "<=", ">=", "&&", "||")
_ONE_CHAR = "+-*/%<>=!(){}[];,."


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # "ident", "number", "eof", a keyword, or the operator text itself
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    """Scan source into tokens, ending with an "eof" token.

    Accepts LF and CRLF line endings; // comments run to end of line.
    Raises CompileError on the first illegal character.
    """
    tokens: list[Token] = []
    line = 1
    col = 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\r":
            # CRLF is treated as a single newline; a stray CR is just skipped.
            i += 1
            continue
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t":
            i += 1
            col += 1
            continue
        if ch == "/" and i + 1 < n and text[i + 1] == "/":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isdigit():
            start = i
            start_col = col
            while i < n and text[i].isdigit():
                i += 1
                col += 1
            tokens.append(Token("number", text[start:i], line, start_col))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            start_col = col
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
                col += 1
            word = text[start:i]
            kind = word if word in KEYWORDS else "ident"
            tokens.append(Token(kind, word, line, start_col))
            continue
        pair = text[i : i + 2]
        if pair in _TWO_CHAR:
            tokens.append(Token(pair, pair, line, col))
            i += 2
            col += 2
            continue
        if ch in _ONE_CHAR:
            tokens.append(Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        raise CompileError(
            [Diagnostic(line, col, KIND_LEX, f"illegal character {ch!r}")]
        )
    tokens.append(Token("eof", "", line, col))
    return tokens
