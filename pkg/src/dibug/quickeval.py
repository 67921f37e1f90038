"""Non-tracing reference evaluator.

Computes only the final status of a run. Kept deliberately separate from the
tracing interpreter so the two can be checked against each other: flat
per-call environments instead of scoped frames, its own arithmetic, and a
tick counter standing in for the point budget (each would-be execution point
costs one tick, terminal statuses are free).

Frames are generators here too, so recursion depth is bounded by the heap.
"""

from . import ast
from .interp import BUDGET_EXCEEDED, DEFAULT_LIMITS, Error, Returned

_U64 = 1 << 64
_BIAS = 1 << 63


def _wrap(v):
    return (v + _BIAS) % _U64 - _BIAS


def _div(a, b):
    q = a // b
    if a % b != 0 and (a < 0) != (b < 0):
        q += 1
    return _wrap(q)


def _mod(a, b):
    r = a % b
    if r != 0 and (r < 0) != (a < 0):
        r -= b
    return _wrap(r)


class _Halt(Exception):
    """Ends the run immediately with the carried status."""

    def __init__(self, status):
        super().__init__()
        self.status = status


class _Return(Exception):
    def __init__(self, value):
        super().__init__()
        self.value = value


class _Call:
    __slots__ = ("name", "args")

    def __init__(self, name, args):
        self.name = name
        self.args = args


class _Machine:
    def __init__(self, program, limits):
        self.program = program
        self.ticks_left = limits.max_points
        self.max_depth = limits.max_stack_depth
        self.depth = 0

    def tick(self):
        if self.ticks_left == 0:
            raise _Halt(BUDGET_EXCEEDED)
        self.ticks_left -= 1

    def frame(self, func, args, outermost):
        env = dict(zip(func.params, args))
        self.tick()  # entry
        try:
            yield from self.stmts(func.body.body, env)
        except _Return as r:
            if not outermost:
                self.tick()
            return r.value
        raise _Halt(Error("missing_return", f"function '{func.name}' did not return"))

    def stmts(self, body, env):
        for stmt in body:
            kind = type(stmt)
            if kind is ast.VarDecl:
                env[stmt.name] = yield from self.expr(stmt.init, env)
                self.tick()
            elif kind is ast.ArrayDecl:
                env[stmt.name] = [0] * stmt.size
                self.tick()
            elif kind is ast.Assign:
                env[stmt.name] = yield from self.expr(stmt.value, env)
                self.tick()
            elif kind is ast.IndexAssign:
                index = yield from self.expr(stmt.index, env)
                value = yield from self.expr(stmt.value, env)
                arr = env[stmt.name]
                if index < 0 or index >= len(arr):
                    raise _Halt(
                        Error(
                            "index_out_of_bounds",
                            f"array index {index} out of bounds for length {len(arr)}",
                        )
                    )
                arr[index] = value
                self.tick()
            elif kind is ast.IfStmt:
                cond = yield from self.expr(stmt.cond, env)
                self.tick()
                if cond:
                    yield from self.stmts(stmt.then_body.body, env)
                elif stmt.else_body is not None:
                    yield from self.stmts(stmt.else_body.body, env)
            elif kind is ast.WhileStmt:
                while True:
                    cond = yield from self.expr(stmt.cond, env)
                    self.tick()
                    if not cond:
                        break
                    yield from self.stmts(stmt.body.body, env)
            elif kind is ast.ReturnStmt:
                value = yield from self.expr(stmt.value, env)
                raise _Return(value)
            elif kind is ast.CallStmt:
                yield from self.expr(stmt.call, env)
                self.tick()
            else:  # nested block
                yield from self.stmts(stmt.body, env)

    def expr(self, e, env):
        kind = type(e)
        if kind is ast.IntLit:
            return e.value
        if kind is ast.VarRef:
            return env[e.name]
        if kind is ast.IndexRef:
            index = yield from self.expr(e.index, env)
            arr = env[e.name]
            if index < 0 or index >= len(arr):
                raise _Halt(
                    Error(
                        "index_out_of_bounds",
                        f"array index {index} out of bounds for length {len(arr)}",
                    )
                )
            return arr[index]
        if kind is ast.UnaryNeg:
            return _wrap(-(yield from self.expr(e.operand, env)))
        if kind is ast.NotOp:
            return not (yield from self.expr(e.operand, env))
        if kind is ast.BinOp:
            left = yield from self.expr(e.left, env)
            right = yield from self.expr(e.right, env)
            op = e.op
            if op == "+":
                return _wrap(left + right)
            if op == "-":
                return _wrap(left - right)
            if op == "*":
                return _wrap(left * right)
            if right == 0:
                if op == "/":
                    raise _Halt(Error("division_by_zero", "division by zero"))
                raise _Halt(Error("modulo_by_zero", "modulo by zero"))
            return _div(left, right) if op == "/" else _mod(left, right)
        if kind is ast.Compare:
            left = yield from self.expr(e.left, env)
            right = yield from self.expr(e.right, env)
            op = e.op
            if op == "==":
                return left == right
            if op == "!=":
                return left != right
            if op == "<":
                return left < right
            if op == "<=":
                return left <= right
            if op == ">":
                return left > right
            return left >= right
        if kind is ast.LogicOp:
            left = yield from self.expr(e.left, env)
            if e.op == "&&" and not left:
                return False
            if e.op == "||" and left:
                return True
            return (yield from self.expr(e.right, env))
        # CallExpr
        args = []
        for a in e.args:
            args.append((yield from self.expr(a, env)))
        return (yield _Call(e.name, args))

    def run(self, inputs):
        main = self.program.main
        stack = [self.frame(main, [_wrap(v) for v in inputs], True)]
        self.depth = 1
        feed = None
        while True:
            try:
                req = stack[-1].send(feed)
            except StopIteration as stop:
                stack.pop()
                self.depth -= 1
                if not stack:
                    return Returned(stop.value)
                feed = stop.value
                continue
            feed = None
            if self.depth >= self.max_depth:
                raise _Halt(
                    Error("stack_overflow", f"call depth exceeded {self.max_depth}")
                )
            func = self.program.by_name[req.name]
            stack.append(self.frame(func, req.args, False))
            self.depth += 1


def run_result(program, inputs, limits=None):
    """Final status of running `program` on `inputs`: Returned, Error, or budget."""
    limits = limits or DEFAULT_LIMITS
    if len(inputs) != len(program.main.params):
        raise ValueError(
            f"main expects {len(program.main.params)} inputs, got {len(inputs)}"
        )
    try:
        return _Machine(program, limits).run(inputs)
    except _Halt as h:
        return h.status
