"""Relational expressions: program-qualified expressions over execution points.

An expression like `A.a != B.b` is evaluated against the current execution
point of each referenced program, looking variables up in the innermost frame
only. Evaluation is total: anything that cannot be resolved (variable not in
scope, program not running, bad index, division by zero, sort mismatch, or a
program outside its configured line range) yields Unknown. Unknown is strict:
it propagates through every operator with no short-circuiting.
"""

from dataclasses import dataclass

from . import ast
from .interp import Running
from .numerics import div_trunc, mod_trunc, wrap
from .parser import parse_relational_tree

KIND_INTEGER = "integer"
KIND_BOOLEAN = "boolean"


@dataclass(frozen=True, slots=True)
class Int:
    value: int


@dataclass(frozen=True, slots=True)
class Bool:
    value: bool


class _Unknown:
    __slots__ = ()

    def __repr__(self):
        return "Unknown"


UNKNOWN = _Unknown()


class MissingProgramError(LookupError):
    """A referenced program has no current point: caller bug, not Unknown."""

    def __init__(self, pid):
        super().__init__(f"no execution point for program '{pid}'")
        self.pid = pid


@dataclass(frozen=True)
class RelationalExpression:
    text: str
    tree: object
    kind: str  # KIND_INTEGER | KIND_BOOLEAN
    pids: frozenset


def _collect_pids(node, out):
    if isinstance(node, ast.QualifiedRef):
        out.add(node.pid)
        if node.index is not None:
            _collect_pids(node.index, out)
    elif isinstance(node, (ast.UnaryNeg, ast.NotOp)):
        _collect_pids(node.operand, out)
    elif isinstance(node, (ast.BinOp, ast.Compare, ast.LogicOp)):
        _collect_pids(node.left, out)
        _collect_pids(node.right, out)


def parse_relational(text: str) -> RelationalExpression:
    """Parse expression text; all variables must be written P.name or P.name[e]."""
    tree = parse_relational_tree(text)
    kind = (
        KIND_BOOLEAN
        if isinstance(tree, (ast.Compare, ast.LogicOp, ast.NotOp))
        else KIND_INTEGER
    )
    pids = set()
    _collect_pids(tree, pids)
    return RelationalExpression(text, tree, kind, frozenset(pids))


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)


def _lookup(node, points):
    point = points[node.pid]
    if not isinstance(point.status, Running):
        return UNKNOWN
    bindings = point.stack[-1].bindings
    if node.name not in bindings:
        return UNKNOWN
    value = bindings[node.name]
    if node.index is None:
        return value if _is_int(value) else UNKNOWN
    if not isinstance(value, tuple):
        return UNKNOWN
    index = _ev(node.index, points)
    if not _is_int(index) or not 0 <= index < len(value):
        return UNKNOWN
    return value[index]


def _ev(node, points):
    """Returns int, bool, or UNKNOWN; evaluates all operands (strict)."""
    if isinstance(node, ast.IntLit):
        return node.value
    if isinstance(node, ast.QualifiedRef):
        return _lookup(node, points)
    if isinstance(node, ast.UnaryNeg):
        v = _ev(node.operand, points)
        return wrap(-v) if _is_int(v) else UNKNOWN
    if isinstance(node, ast.NotOp):
        v = _ev(node.operand, points)
        return (not v) if isinstance(v, bool) else UNKNOWN
    if isinstance(node, ast.BinOp):
        left = _ev(node.left, points)
        right = _ev(node.right, points)
        if not (_is_int(left) and _is_int(right)):
            return UNKNOWN
        op = node.op
        if op == "+":
            return wrap(left + right)
        if op == "-":
            return wrap(left - right)
        if op == "*":
            return wrap(left * right)
        if right == 0:
            return UNKNOWN
        return div_trunc(left, right) if op == "/" else mod_trunc(left, right)
    if isinstance(node, ast.Compare):
        left = _ev(node.left, points)
        right = _ev(node.right, points)
        if not (_is_int(left) and _is_int(right)):
            return UNKNOWN
        op = node.op
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
    if isinstance(node, ast.LogicOp):
        left = _ev(node.left, points)
        right = _ev(node.right, points)
        if not (isinstance(left, bool) and isinstance(right, bool)):
            return UNKNOWN
        return (left and right) if node.op == "&&" else (left or right)
    raise TypeError(f"unexpected node {type(node).__name__}")


def evaluate(expr, points, scope=None):
    """Evaluate against current points; scope maps pid -> (start_line, end_line).

    Any program that has a scope entry and a current point but sits outside
    its line range forces Unknown, whether or not the expression mentions it.
    """
    for pid in expr.pids:
        if pid not in points:
            raise MissingProgramError(pid)
    if scope:
        for pid, (start, end) in scope.items():
            point = points.get(pid)
            if point is not None and not start <= point.line <= end:
                return UNKNOWN
    result = _ev(expr.tree, points)
    if result is UNKNOWN:
        return UNKNOWN
    return Bool(result) if isinstance(result, bool) else Int(result)
