"""AST node definitions for the debugged language and relational expressions.

Every node carries the source line and column of its first token so later
stages can report precise diagnostics and the tracer can attribute execution
points to lines.
"""

from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class Node:
    line: int
    column: int


# --- expressions ---


@dataclass(frozen=True, slots=True)
class IntLit(Node):
    value: int


@dataclass(frozen=True, slots=True)
class VarRef(Node):
    name: str


@dataclass(frozen=True, slots=True)
class IndexRef(Node):
    name: str
    index: "Expr"


@dataclass(frozen=True, slots=True)
class CallExpr(Node):
    name: str
    args: tuple


@dataclass(frozen=True, slots=True)
class UnaryNeg(Node):
    operand: "Expr"


@dataclass(frozen=True, slots=True)
class NotOp(Node):
    operand: "Expr"


@dataclass(frozen=True, slots=True)
class BinOp(Node):
    op: str  # + - * / %
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True, slots=True)
class Compare(Node):
    op: str  # == != < <= > >=
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True, slots=True)
class LogicOp(Node):
    op: str  # && ||
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True, slots=True)
class QualifiedRef(Node):
    """Program-qualified variable in a relational expression: A.x or A.xs[e]."""

    pid: str
    name: str
    index: "Expr | None"


Expr = (
    IntLit
    | VarRef
    | IndexRef
    | CallExpr
    | UnaryNeg
    | NotOp
    | BinOp
    | Compare
    | LogicOp
    | QualifiedRef
)


# --- statements ---


@dataclass(frozen=True, slots=True)
class VarDecl(Node):
    name: str
    init: Expr


@dataclass(frozen=True, slots=True)
class ArrayDecl(Node):
    name: str
    size: int


@dataclass(frozen=True, slots=True)
class Assign(Node):
    name: str
    value: Expr


@dataclass(frozen=True, slots=True)
class IndexAssign(Node):
    name: str
    index: Expr
    value: Expr


@dataclass(frozen=True, slots=True)
class Block(Node):
    body: tuple
    end_line: int  # line of the closing brace


@dataclass(frozen=True, slots=True)
class IfStmt(Node):
    cond: Expr
    then_body: Block
    else_body: "Block | None"


@dataclass(frozen=True, slots=True)
class WhileStmt(Node):
    cond: Expr
    body: Block


@dataclass(frozen=True, slots=True)
class ReturnStmt(Node):
    value: Expr


@dataclass(frozen=True, slots=True)
class CallStmt(Node):
    call: CallExpr


Stmt = VarDecl | ArrayDecl | Assign | IndexAssign | Block | IfStmt | WhileStmt | ReturnStmt | CallStmt


# --- top level ---


@dataclass(frozen=True, slots=True)
class FunctionDef(Node):
    name: str
    params: tuple  # of str
    body: Block


@dataclass(frozen=True, slots=True)
class Program:
    functions: tuple  # of FunctionDef
