"""Tracing interpreter: runs a checked program and materializes its full trace.

One execution point is recorded after every executed statement and after every
evaluated `if`/`while` condition, holding the post-state. Calls additionally
record an entry point at the callee's signature line with parameters bound,
mirroring point 0 of main; this keeps the stack depth between consecutive
points within +/-1 even for immediately nested calls.

Each language-level frame runs as one Python generator so call depth lives on
the heap, not the interpreter's own stack. A frame generator yields point and
call requests up to the driver loop, which owns the trace, the point budget,
and the frame stack.
"""

from dataclasses import dataclass
from functools import lru_cache

from . import ast
from .numerics import div_trunc, mod_trunc, wrap

# --- terminal statuses ---


@dataclass(frozen=True, slots=True)
class Running:
    def __str__(self):
        return "running"


@dataclass(frozen=True, slots=True)
class Returned:
    value: int

    def __str__(self):
        return f"returned({self.value})"


@dataclass(frozen=True, slots=True)
class Error:
    kind: str
    message: str

    def __str__(self):
        return f"error({self.kind})"


@dataclass(frozen=True, slots=True)
class BudgetExceeded:
    def __str__(self):
        return "budget_exceeded"


RUNNING = Running()
BUDGET_EXCEEDED = BudgetExceeded()


@dataclass(frozen=True, slots=True)
class ExecutionLimits:
    max_points: int = 1_000_000
    max_stack_depth: int = 1024


DEFAULT_LIMITS = ExecutionLimits()


# --- trace data ---


@dataclass(frozen=True, slots=True)
class FrameView:
    """Immutable snapshot of one frame: bindings in declaration order."""

    function: str
    call_line: int  # 0 for main
    bindings: dict  # name -> int | tuple of ints; treated as frozen


@dataclass(frozen=True, slots=True)
class ExecutionPoint:
    index: int
    line: int
    stack: tuple  # of FrameView, outermost first
    status: object

    @property
    def depth(self):
        return len(self.stack)

    @property
    def frame(self):
        """Innermost frame."""
        return self.stack[-1]


@dataclass(frozen=True, slots=True)
class Trace:
    points: tuple
    inputs: tuple
    program: object

    def __len__(self):
        return len(self.points)

    @property
    def final_status(self):
        return self.points[-1].status


@lru_cache(maxsize=64)
def _zeros(n):
    return (0,) * n


# --- live frames ---


class _Frame:
    __slots__ = ("function", "call_line", "bindings", "_version", "_snap", "_snap_version")

    def __init__(self, function, call_line, bindings):
        self.function = function
        self.call_line = call_line
        self.bindings = bindings
        self._version = 0
        self._snap = None
        self._snap_version = -1

    def set(self, name, value):
        self.bindings[name] = value
        self._version += 1

    def unbind(self, name):
        del self.bindings[name]
        self._version += 1

    def snapshot(self):
        if self._snap_version != self._version:
            self._snap = FrameView(self.function, self.call_line, dict(self.bindings))
            self._snap_version = self._version
        return self._snap


# --- driver protocol ---


@dataclass(frozen=True, slots=True)
class _EmitPoint:
    line: int


@dataclass(frozen=True, slots=True)
class _CallRequest:
    name: str
    args: tuple
    line: int


class _Fault(Exception):
    """Runtime fault; carries the faulting frame's snapshot taken at raise time."""

    def __init__(self, kind, message, line, snapshot):
        super().__init__(message)
        self.kind = kind
        self.message = message
        self.line = line
        self.snapshot = snapshot


class _ReturnLocal(Exception):
    """Unwinds one frame; snapshot is taken before block scopes are torn down."""

    def __init__(self, value, line, snapshot):
        super().__init__()
        self.value = value
        self.line = line
        self.snapshot = snapshot


# --- per-frame execution (generators composed with yield from) ---


def _run_frame(func, frame):
    yield _EmitPoint(func.line)  # entry point: parameters just bound
    try:
        yield from _exec_block(func.body, frame)
    except _ReturnLocal as r:
        return r.value, r.line, r.snapshot
    raise _Fault(
        "missing_return",
        f"function '{func.name}' did not return",
        func.body.end_line,
        frame.snapshot(),
    )


def _exec_block(block, frame):
    declared = []
    try:
        for stmt in block.body:
            yield from _exec_stmt(stmt, frame, declared)
    finally:
        for name in declared:
            frame.unbind(name)


def _exec_stmt(stmt, frame, declared):
    if isinstance(stmt, ast.VarDecl):
        value = yield from _eval(stmt.init, frame)
        frame.set(stmt.name, value)
        declared.append(stmt.name)
        yield _EmitPoint(stmt.line)
    elif isinstance(stmt, ast.ArrayDecl):
        frame.set(stmt.name, _zeros(stmt.size))
        declared.append(stmt.name)
        yield _EmitPoint(stmt.line)
    elif isinstance(stmt, ast.Assign):
        value = yield from _eval(stmt.value, frame)
        frame.set(stmt.name, value)
        yield _EmitPoint(stmt.line)
    elif isinstance(stmt, ast.IndexAssign):
        index = yield from _eval(stmt.index, frame)
        value = yield from _eval(stmt.value, frame)
        arr = frame.bindings[stmt.name]
        if not 0 <= index < len(arr):
            raise _Fault(
                "index_out_of_bounds",
                f"array index {index} out of bounds for length {len(arr)}",
                stmt.line,
                frame.snapshot(),
            )
        frame.set(stmt.name, arr[:index] + (value,) + arr[index + 1 :])
        yield _EmitPoint(stmt.line)
    elif isinstance(stmt, ast.IfStmt):
        cond = yield from _eval(stmt.cond, frame)
        yield _EmitPoint(stmt.line)
        if cond:
            yield from _exec_block(stmt.then_body, frame)
        elif stmt.else_body is not None:
            yield from _exec_block(stmt.else_body, frame)
    elif isinstance(stmt, ast.WhileStmt):
        while True:
            cond = yield from _eval(stmt.cond, frame)
            yield _EmitPoint(stmt.line)
            if not cond:
                break
            yield from _exec_block(stmt.body, frame)
    elif isinstance(stmt, ast.ReturnStmt):
        value = yield from _eval(stmt.value, frame)
        raise _ReturnLocal(value, stmt.line, frame.snapshot())
    elif isinstance(stmt, ast.CallStmt):
        yield from _eval(stmt.call, frame)
        yield _EmitPoint(stmt.line)
    elif isinstance(stmt, ast.Block):
        yield from _exec_block(stmt, frame)
    else:
        raise TypeError(f"unexpected statement {type(stmt).__name__}")


def _eval(e, frame):
    if isinstance(e, ast.IntLit):
        return e.value
    if isinstance(e, ast.VarRef):
        return frame.bindings[e.name]
    if isinstance(e, ast.IndexRef):
        index = yield from _eval(e.index, frame)
        arr = frame.bindings[e.name]
        if not 0 <= index < len(arr):
            raise _Fault(
                "index_out_of_bounds",
                f"array index {index} out of bounds for length {len(arr)}",
                e.line,
                frame.snapshot(),
            )
        return arr[index]
    if isinstance(e, ast.UnaryNeg):
        value = yield from _eval(e.operand, frame)
        return wrap(-value)
    if isinstance(e, ast.NotOp):
        value = yield from _eval(e.operand, frame)
        return not value
    if isinstance(e, ast.BinOp):
        left = yield from _eval(e.left, frame)
        right = yield from _eval(e.right, frame)
        if e.op == "+":
            return wrap(left + right)
        if e.op == "-":
            return wrap(left - right)
        if e.op == "*":
            return wrap(left * right)
        if e.op == "/":
            if right == 0:
                raise _Fault("division_by_zero", "division by zero", e.line, frame.snapshot())
            return div_trunc(left, right)
        if right == 0:
            raise _Fault("modulo_by_zero", "modulo by zero", e.line, frame.snapshot())
        return mod_trunc(left, right)
    if isinstance(e, ast.Compare):
        left = yield from _eval(e.left, frame)
        right = yield from _eval(e.right, frame)
        if e.op == "==":
            return left == right
        if e.op == "!=":
            return left != right
        if e.op == "<":
            return left < right
        if e.op == "<=":
            return left <= right
        if e.op == ">":
            return left > right
        return left >= right
    if isinstance(e, ast.LogicOp):
        left = yield from _eval(e.left, frame)
        if e.op == "&&" and not left:
            return False
        if e.op == "||" and left:
            return True
        return (yield from _eval(e.right, frame))
    if isinstance(e, ast.CallExpr):
        args = []
        for a in e.args:
            args.append((yield from _eval(a, frame)))
        result = yield _CallRequest(e.name, tuple(args), e.line)
        return result
    raise TypeError(f"unexpected expression {type(e).__name__}")


# --- driver ---


def execute(program, inputs, limits=None):
    """Run to completion and return the full Trace.

    Runtime faults end the trace with an error point; exceeding max_points
    ends it with budget_exceeded. The terminal point is appended on top of
    the budget, so a trace holds at most max_points running points plus one.
    """
    limits = limits or DEFAULT_LIMITS
    main = program.main
    if len(inputs) != len(main.params):
        raise ValueError(
            f"main expects {len(main.params)} inputs, got {len(inputs)}"
        )
    inputs = tuple(wrap(v) for v in inputs)
    frame0 = _Frame("main", 0, dict(zip(main.params, inputs)))
    frames = [frame0]
    gens = [_run_frame(main, frame0)]
    points = []

    def emit_running(line, stack):
        """Append a running point; returns False when the budget ends the trace."""
        if len(points) >= limits.max_points:
            points.append(ExecutionPoint(len(points), line, stack, BUDGET_EXCEEDED))
            return False
        points.append(ExecutionPoint(len(points), line, stack, RUNNING))
        return True

    feed = None
    while True:
        try:
            req = gens[-1].send(feed)
        except StopIteration as stop:
            value, line, snap = stop.value
            if len(gens) == 1:
                points.append(ExecutionPoint(len(points), line, (snap,), Returned(value)))
                break
            stack = tuple(f.snapshot() for f in frames[:-1]) + (snap,)
            gens.pop()
            frames.pop()
            if not emit_running(line, stack):
                break
            feed = value
            continue
        except _Fault as fault:
            stack = tuple(f.snapshot() for f in frames[:-1]) + (fault.snapshot,)
            points.append(
                ExecutionPoint(len(points), fault.line, stack, Error(fault.kind, fault.message))
            )
            break
        feed = None
        if isinstance(req, _EmitPoint):
            stack = tuple(f.snapshot() for f in frames)
            if not emit_running(req.line, stack):
                break
        else:  # _CallRequest
            if len(frames) >= limits.max_stack_depth:
                stack = tuple(f.snapshot() for f in frames)
                points.append(
                    ExecutionPoint(
                        len(points),
                        req.line,
                        stack,
                        Error(
                            "stack_overflow",
                            f"call depth exceeded {limits.max_stack_depth}",
                        ),
                    )
                )
                break
            func = program.by_name[req.name]
            callee = _Frame(func.name, req.line, dict(zip(func.params, req.args)))
            frames.append(callee)
            gens.append(_run_frame(func, callee))

    return Trace(tuple(points), inputs, program)
