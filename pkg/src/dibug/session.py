"""Lockstep debugging session over k programs.

The session is a two-mode state machine. In edit mode, programs, inputs and
step sizes can change. Entering debug mode compiles every program and runs
every trace up front; all movement operations are then pure cursor arithmetic
over the precomputed traces. Line breakpoints freeze only their own program
during Continue, while conditional breakpoints (relational, shared) halt the
whole session when they evaluate to true at a reached cursor tuple.
"""

from dataclasses import dataclass, field

from .diagnostics import KIND_CHECK, CompileError, Diagnostic
from .frontend import compile_program
from .interp import execute
from .relexpr import KIND_BOOLEAN, Bool, evaluate, parse_relational

MAX_PROGRAMS = 26

HALT_NONE = ("none",)
HALT_ALL_TERMINATED = ("all_terminated",)


class SessionError(Exception):
    """Base for all session-level failures; code is the wire error code."""

    code = 0

    def __init__(self, message, data=None):
        super().__init__(message)
        self.message = message
        self.data = data


class WrongModeError(SessionError):
    code = 101


class InvalidOperationError(SessionError):
    code = 102


class InvalidArgumentError(SessionError):
    code = 103


class UnknownProgramError(SessionError):
    code = 201

    def __init__(self, pid):
        super().__init__(f"unknown program '{pid}'")


class UnknownBreakpointError(SessionError):
    code = 202

    def __init__(self, cbid):
        super().__init__(f"unknown conditional breakpoint {cbid}")


class UnknownWatchError(SessionError):
    code = 203

    def __init__(self, wid):
        super().__init__(f"unknown watch {wid}")


class UnknownMethodError(SessionError):
    code = 204


class SourceErrors(SessionError):
    """Compilation failed; data maps pid -> list of Diagnostic."""

    code = 301

    def __init__(self, diagnostics):
        super().__init__("compilation failed", data=diagnostics)
        self.diagnostics = diagnostics


class ExpressionError(SessionError):
    code = 302


class NonBooleanError(SessionError):
    code = 303


class FileFormatError(SessionError):
    code = 304


@dataclass
class ProgramSlot:
    pid: str
    name: str
    source: str = ""
    inputs: list = field(default_factory=list)
    step_size: int = 1
    breakpoints: set = field(default_factory=set)
    compiled: object = None
    trace: object = None
    cursor: int = 0

    @property
    def last_index(self):
        return len(self.trace.points) - 1

    def current_point(self):
        return self.trace.points[self.cursor]


@dataclass
class ConditionalBreakpoint:
    cbid: int
    expr: object
    scope: dict
    enabled: bool = True


@dataclass
class Watch:
    wid: int
    expr: object
    scope: dict


@dataclass(frozen=True)
class ProgramView:
    pid: str
    cursor: int
    line: int
    status: object
    bindings: dict
    final_status: object


@dataclass(frozen=True)
class WatchView:
    wid: int
    text: str
    value: object


@dataclass(frozen=True)
class SessionSnapshot:
    programs: tuple
    watches: tuple
    halt_reason: tuple


class DebugSession:
    def __init__(self):
        self.slots = [ProgramSlot("A", "A")]
        self.cond_breakpoints = []
        self.watches = []
        self.mode = "edit"
        self.halt_reason = HALT_NONE
        self._next_pid = 1
        self._next_cbid = 0
        self._next_wid = 0
        self._last_continue_rounds = 0

    # --- mode and lookup guards ---

    def _require_edit(self, what):
        if self.mode != "edit":
            raise WrongModeError(f"{what} requires edit mode")

    def _require_debug(self, what):
        if self.mode != "debug":
            raise WrongModeError(f"{what} requires debug mode")

    def slot(self, pid):
        for s in self.slots:
            if s.pid == pid:
                return s
        raise UnknownProgramError(pid)

    def pids(self):
        return [s.pid for s in self.slots]

    # --- edit-mode program management ---

    def add_program(self):
        self._require_edit("adding a program")
        if self._next_pid >= MAX_PROGRAMS:
            raise InvalidOperationError(f"program limit reached ({MAX_PROGRAMS})")
        pid = chr(ord("A") + self._next_pid)
        self._next_pid += 1
        self.slots.append(ProgramSlot(pid, pid))
        return pid

    def remove_program(self, pid):
        self._require_edit("removing a program")
        slot = self.slot(pid)
        if len(self.slots) < 2:
            raise InvalidOperationError("cannot remove the last program")
        self.slots.remove(slot)
        self.cond_breakpoints = [
            cb for cb in self.cond_breakpoints if not self._references(cb, pid)
        ]
        self.watches = [w for w in self.watches if not self._references(w, pid)]

    @staticmethod
    def _references(item, pid):
        return pid in item.expr.pids or pid in item.scope

    def set_source(self, pid, text):
        self._require_edit("changing a source")
        if not isinstance(text, str):
            raise InvalidArgumentError("source must be a string")
        self.slot(pid).source = text

    def set_inputs(self, pid, values):
        self._require_edit("changing inputs")
        if not isinstance(values, (list, tuple)) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in values
        ):
            raise InvalidArgumentError("inputs must be a list of integers")
        self.slot(pid).inputs = list(values)

    def set_step_size(self, pid, n):
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise InvalidArgumentError("step size must be an integer >= 1")
        self.slot(pid).step_size = n

    def toggle_breakpoint(self, pid, line):
        if not isinstance(line, int) or isinstance(line, bool) or line < 1:
            raise InvalidArgumentError("breakpoint line must be an integer >= 1")
        bp = self.slot(pid).breakpoints
        if line in bp:
            bp.discard(line)
        else:
            bp.add(line)

    # --- watches and conditional breakpoints ---

    def _validate_scope(self, scope):
        scope = scope or {}
        for pid, span in scope.items():
            try:
                start, end = span
            except (TypeError, ValueError):
                raise InvalidArgumentError("scope entry must be a line pair") from None
            if not all(isinstance(v, int) and not isinstance(v, bool) for v in (start, end)):
                raise InvalidArgumentError("scope lines must be integers")
            if not 1 <= start <= end:
                raise InvalidArgumentError(
                    f"invalid scope range {start}-{end} for program '{pid}'"
                )
        return {pid: (span[0], span[1]) for pid, span in scope.items()}

    def _parse_expression(self, text):
        if not isinstance(text, str):
            raise InvalidArgumentError("expression must be a string")
        try:
            return parse_relational(text)
        except CompileError as e:
            raise ExpressionError(str(e.diagnostics[0])) from None

    def _check_pids_exist(self, expr, scope):
        known = set(self.pids())
        for pid in sorted(expr.pids | set(scope)):
            if pid not in known:
                raise UnknownProgramError(pid)

    def add_conditional_breakpoint(self, text, scope=None):
        expr = self._parse_expression(text)
        if expr.kind != KIND_BOOLEAN:
            raise NonBooleanError("conditional breakpoint must be a boolean expression")
        scope = self._validate_scope(scope)
        self._check_pids_exist(expr, scope)
        cbid = self._next_cbid
        self._next_cbid += 1
        self.cond_breakpoints.append(ConditionalBreakpoint(cbid, expr, scope))
        return cbid

    def remove_conditional_breakpoint(self, cbid):
        for cb in self.cond_breakpoints:
            if cb.cbid == cbid:
                self.cond_breakpoints.remove(cb)
                return
        raise UnknownBreakpointError(cbid)

    def add_watch(self, text, scope=None):
        expr = self._parse_expression(text)
        scope = self._validate_scope(scope)
        self._check_pids_exist(expr, scope)
        wid = self._next_wid
        self._next_wid += 1
        self.watches.append(Watch(wid, expr, scope))
        return wid

    def remove_watch(self, wid):
        for w in self.watches:
            if w.wid == wid:
                self.watches.remove(w)
                return
        raise UnknownWatchError(wid)

    # --- mode switching ---

    def start_debug(self):
        self._require_edit("starting")
        diagnostics = {}
        compiled = {}
        for s in self.slots:
            try:
                program = compile_program(s.source)
            except CompileError as e:
                diagnostics[s.pid] = list(e.diagnostics)
                continue
            main = program.main
            if len(s.inputs) != len(main.params):
                diagnostics[s.pid] = [
                    Diagnostic(
                        main.line,
                        main.column,
                        KIND_CHECK,
                        f"main expects {len(main.params)} inputs, got {len(s.inputs)}",
                    )
                ]
                continue
            compiled[s.pid] = program
        if diagnostics:
            raise SourceErrors(diagnostics)
        for s in self.slots:
            s.compiled = compiled[s.pid]
            s.trace = execute(s.compiled, s.inputs)
            s.cursor = 0
            s.breakpoints = {b for b in s.breakpoints if b <= s.compiled.line_count}
        self.mode = "debug"
        self.halt_reason = HALT_NONE
        return self.get_snapshot()

    def stop_debug(self):
        self._require_debug("stopping")
        for s in self.slots:
            s.compiled = None
            s.trace = None
            s.cursor = 0
        self.mode = "edit"
        self.halt_reason = HALT_NONE

    # --- movement ---

    def step(self):
        self._require_debug("stepping")
        for s in self.slots:
            s.cursor = min(s.cursor + s.step_size, s.last_index)
        self.halt_reason = HALT_NONE
        return self.get_snapshot()

    def step_back(self):
        self._require_debug("stepping")
        for s in self.slots:
            s.cursor = max(s.cursor - s.step_size, 0)
        self.halt_reason = HALT_NONE
        return self.get_snapshot()

    @staticmethod
    def _over_step(trace, i):
        points = trace.points
        if i >= len(points) - 1:
            return i
        depth = points[i].depth
        j = i + 1
        while j < len(points) and points[j].depth > depth:
            j += 1
        return min(j, len(points) - 1)

    def step_over(self):
        self._require_debug("stepping")
        for s in self.slots:
            i = s.cursor
            for _ in range(s.step_size):
                i = self._over_step(s.trace, i)
            s.cursor = i
        self.halt_reason = HALT_NONE
        return self.get_snapshot()

    def step_out(self):
        self._require_debug("stepping")
        for s in self.slots:
            points = s.trace.points
            depth = points[s.cursor].depth
            if depth <= 1:
                s.cursor = s.last_index
                continue
            j = s.cursor + 1
            while j < len(points) and points[j].depth >= depth:
                j += 1
            s.cursor = min(j, s.last_index)
        self.halt_reason = HALT_NONE
        return self.get_snapshot()

    def single_step(self, pid):
        self._require_debug("stepping")
        s = self.slot(pid)
        s.cursor = min(s.cursor + 1, s.last_index)
        self.halt_reason = HALT_NONE
        return self.get_snapshot()

    def continue_run(self):
        """Advance all programs in joint rounds until a breakpoint, a true
        conditional breakpoint, or the end of every trace."""
        self._require_debug("continuing")
        frozen = {}
        for s in self.slots:
            frozen[s.pid] = "end" if s.cursor >= s.last_index else None
        halt = None
        rounds = 0
        while not all(frozen.values()):
            rounds += 1
            for s in self.slots:
                if frozen[s.pid]:
                    continue
                s.cursor = min(s.cursor + s.step_size, s.last_index)
                if s.current_point().line in s.breakpoints:
                    frozen[s.pid] = "breakpoint"
                elif s.cursor >= s.last_index:
                    frozen[s.pid] = "end"
            points = {s.pid: s.current_point() for s in self.slots}
            for cb in self.cond_breakpoints:
                if cb.enabled and evaluate(cb.expr, points, cb.scope) == Bool(True):
                    halt = ("conditional", cb.cbid)
                    break
            if halt:
                break
        self._last_continue_rounds = rounds
        if halt is None:
            for s in self.slots:
                if frozen[s.pid] == "breakpoint":
                    halt = ("breakpoint", s.pid, s.current_point().line)
                    break
            else:
                halt = HALT_ALL_TERMINATED
        self.halt_reason = halt
        return self.get_snapshot()

    # --- inspection ---

    def get_snapshot(self):
        self._require_debug("inspecting state")
        points = {s.pid: s.current_point() for s in self.slots}
        programs = []
        for s in self.slots:
            point = points[s.pid]
            programs.append(
                ProgramView(
                    s.pid,
                    s.cursor,
                    point.line,
                    point.status,
                    dict(point.stack[-1].bindings),
                    s.trace.final_status,
                )
            )
        watches = [
            WatchView(w.wid, w.expr.text, evaluate(w.expr, points, w.scope))
            for w in self.watches
        ]
        return SessionSnapshot(tuple(programs), tuple(watches), self.halt_reason)


def create_session() -> DebugSession:
    """Fresh edit-mode session with a single empty program slot A."""
    return DebugSession()
