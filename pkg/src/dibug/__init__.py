"""dibug: a relational time-travel debugger for a small C subset.

Traces k programs completely up front, then steps them in lockstep with
per-program step sizes, breakpoints, and cross-program watch expressions and
conditional breakpoints.
"""

from .diagnostics import CompileError, Diagnostic
from .frontend import compile_program
from .interp import ExecutionLimits, Trace, execute
from .quickeval import run_result
from .relexpr import UNKNOWN, MissingProgramError, evaluate, parse_relational
from .session import DebugSession, SessionError, create_session

__all__ = [
    "CompileError",
    "Diagnostic",
    "compile_program",
    "ExecutionLimits",
    "Trace",
    "execute",
    "run_result",
    "UNKNOWN",
    "MissingProgramError",
    "evaluate",
    "parse_relational",
    "DebugSession",
    "SessionError",
    "create_session",
]

__version__ = "0.1.0"
