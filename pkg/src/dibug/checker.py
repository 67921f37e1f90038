"""Static checks: name resolution, arity, and the int/boolean sort rules.

The language is two-sorted. Arithmetic, comparisons and calls work on ints;
`&& || !` and the conditions of `if`/`while` work on booleans; there is no
boolean variable type. Sort violations, undeclared names, shadowing, and
arity mismatches are collected as diagnostics (several per run).
"""

from dataclasses import dataclass

from . import ast
from .diagnostics import KIND_CHECK, CompileError, Diagnostic

INT = "int"
BOOL = "boolean"
ARRAY = "array"
ERR = "error"  # poisoned: already reported, satisfies everything


@dataclass(frozen=True)
class CheckedProgram:
    functions: tuple
    main: ast.FunctionDef
    by_name: dict
    line_count: int


class _Checker:
    def __init__(self, program):
        self.program = program
        self.diags = []
        self.functions = {}
        # scopes: list of dicts name -> INT | ARRAY, innermost last
        self.scopes = []

    def report(self, node, message):
        self.diags.append(Diagnostic(node.line, node.column, KIND_CHECK, message))

    def run(self):
        for f in self.program.functions:
            if f.name in self.functions:
                self.report(f, f"duplicate function name '{f.name}'")
            else:
                self.functions[f.name] = f
        main = self.functions.get("main")
        if main is None:
            self.diags.append(Diagnostic(1, 1, KIND_CHECK, "no function named 'main'"))
        for f in self.program.functions:
            self.check_function(f)
        if self.diags:
            raise CompileError(self.diags)
        return self.functions, main

    def check_function(self, f):
        params = {}
        for p in f.params:
            if p in params:
                self.report(f, f"duplicate parameter '{p}'")
            params[p] = INT
        self.scopes = [params]
        self.check_block(f.body)

    def resolve(self, name):
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        return None

    def declare(self, node, name, sort):
        if self.resolve(name) is not None:
            self.report(node, f"redeclaration of variable '{name}'")
            return
        self.scopes[-1][name] = sort

    def check_block(self, block):
        self.scopes.append({})
        for stmt in block.body:
            self.check_stmt(stmt)
        self.scopes.pop()

    def check_stmt(self, stmt):
        if isinstance(stmt, ast.VarDecl):
            self.want(stmt.init, INT, "initializer")
            self.declare(stmt, stmt.name, INT)
        elif isinstance(stmt, ast.ArrayDecl):
            self.declare(stmt, stmt.name, ARRAY)
        elif isinstance(stmt, ast.Assign):
            sort = self.resolve(stmt.name)
            if sort is None:
                self.report(stmt, f"undeclared variable '{stmt.name}'")
            elif sort == ARRAY:
                self.report(stmt, f"cannot assign to array '{stmt.name}' without an index")
            self.want(stmt.value, INT, "assigned value")
        elif isinstance(stmt, ast.IndexAssign):
            sort = self.resolve(stmt.name)
            if sort is None:
                self.report(stmt, f"undeclared variable '{stmt.name}'")
            elif sort != ARRAY:
                self.report(stmt, f"variable '{stmt.name}' is not an array")
            self.want(stmt.index, INT, "array index")
            self.want(stmt.value, INT, "assigned value")
        elif isinstance(stmt, ast.IfStmt):
            self.want(stmt.cond, BOOL, "condition")
            self.check_block(stmt.then_body)
            if stmt.else_body is not None:
                self.check_block(stmt.else_body)
        elif isinstance(stmt, ast.WhileStmt):
            self.want(stmt.cond, BOOL, "condition")
            self.check_block(stmt.body)
        elif isinstance(stmt, ast.ReturnStmt):
            self.want(stmt.value, INT, "return value")
        elif isinstance(stmt, ast.CallStmt):
            self.check_expr(stmt.call)
        elif isinstance(stmt, ast.Block):
            self.check_block(stmt)

    def want(self, expr, sort, what):
        got = self.check_expr(expr)
        if got in (sort, ERR):
            return
        kinds = {INT: "an integer", BOOL: "a boolean"}
        self.report(expr, f"{what} must be {kinds[sort]} expression")

    def check_expr(self, e):
        if isinstance(e, ast.IntLit):
            return INT
        if isinstance(e, ast.VarRef):
            sort = self.resolve(e.name)
            if sort is None:
                self.report(e, f"undeclared variable '{e.name}'")
                return ERR
            if sort == ARRAY:
                self.report(e, f"array '{e.name}' used without an index")
                return ERR
            return INT
        if isinstance(e, ast.IndexRef):
            sort = self.resolve(e.name)
            if sort is None:
                self.report(e, f"undeclared variable '{e.name}'")
            elif sort != ARRAY:
                self.report(e, f"variable '{e.name}' is not an array")
            self.want(e.index, INT, "array index")
            return INT
        if isinstance(e, ast.CallExpr):
            f = self.functions.get(e.name)
            if f is None:
                self.report(e, f"call to undefined function '{e.name}'")
            elif len(f.params) != len(e.args):
                self.report(
                    e,
                    f"function '{e.name}' expects {len(f.params)} "
                    f"arguments, got {len(e.args)}",
                )
            for a in e.args:
                self.want(a, INT, "argument")
            return INT
        if isinstance(e, ast.UnaryNeg):
            self.want(e.operand, INT, "operand of '-'")
            return INT
        if isinstance(e, ast.NotOp):
            self.want(e.operand, BOOL, "operand of '!'")
            return BOOL
        if isinstance(e, ast.BinOp):
            self.want(e.left, INT, f"operand of '{e.op}'")
            self.want(e.right, INT, f"operand of '{e.op}'")
            return INT
        if isinstance(e, ast.Compare):
            self.want(e.left, INT, f"operand of '{e.op}'")
            self.want(e.right, INT, f"operand of '{e.op}'")
            return BOOL
        if isinstance(e, ast.LogicOp):
            self.want(e.left, BOOL, f"operand of '{e.op}'")
            self.want(e.right, BOOL, f"operand of '{e.op}'")
            return BOOL
        raise TypeError(f"unexpected node {type(e).__name__}")


def check_program(program, line_count):
    """Validate a parsed Program; returns CheckedProgram or raises CompileError."""
    functions, main = _Checker(program).run()
    return CheckedProgram(program.functions, main, functions, line_count)
