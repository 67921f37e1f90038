"""Stable line-oriented text rendering of session snapshots.

The format is part of the CLI contract (scripts are golden-file tested):
one line per program, one per visible binding, one per watch, one halt line.

    A line 8 status running final returned(2)
    A.a = 2
    watch 0 "A.a != B.b" = true
    halt conditional 0
"""

from .relexpr import UNKNOWN, Bool, Int


def value_text(v):
    """An integer or array binding value."""
    if isinstance(v, tuple):
        return "[" + ", ".join(str(x) for x in v) + "]"
    return str(v)


def result_text(r):
    """A relational evaluation result."""
    if r is UNKNOWN:
        return "?"
    if isinstance(r, Bool):
        return "true" if r.value else "false"
    if isinstance(r, Int):
        return str(r.value)
    raise TypeError(f"unexpected result {r!r}")


def halt_text(halt):
    return " ".join(str(part) for part in halt)


def format_snapshot(snap) -> str:
    lines = []
    for p in snap.programs:
        lines.append(
            f"{p.pid} line {p.line} status {p.status} final {p.final_status}"
        )
        for name, value in p.bindings.items():
            lines.append(f"{p.pid}.{name} = {value_text(value)}")
    for w in snap.watches:
        lines.append(f'watch {w.wid} "{w.text}" = {result_text(w.value)}')
    lines.append(f"halt {halt_text(snap.halt_reason)}")
    return "\n".join(lines)


def format_diagnostics(diagnostics) -> str:
    """One line per diagnostic, grouped by program id."""
    lines = []
    for pid in sorted(diagnostics):
        for d in diagnostics[pid]:
            lines.append(f"{pid}: {d}")
    return "\n".join(lines)
