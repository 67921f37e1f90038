"""Recursive descent parser for program sources and relational expressions.

Both grammars share one expression core with C precedence:
    || < && < == != < relationals < + - < * / % < unary - ! < postfix.
Program mode resolves names to variables, array reads, and calls; relational
mode requires every name to be qualified as `P.var` or `P.var[e]`.

Nesting depth is capped so that later tree walks (checker, evaluators) have a
bounded recursion depth regardless of input.
"""

import sys

from . import ast
from .diagnostics import KIND_PARSE, CompileError, Diagnostic
from .lexer import tokenize
from .numerics import wrap

MAX_EXPR_NEST = 150
MAX_STMT_NEST = 100
MAX_ARRAY_SIZE = 1 << 20

# descending through one paren level costs ~15 interpreter frames, so the
# nesting caps need more headroom than the default recursion limit provides
_STACK_HEADROOM = 6000


def _with_headroom(fn):
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, _STACK_HEADROOM))
    try:
        return fn()
    finally:
        sys.setrecursionlimit(old)


class _Parser:
    def __init__(self, tokens, relational=False):
        self.toks = tokens
        self.i = 0
        self.relational = relational
        self.expr_nest = 0
        self.stmt_nest = 0

    # --- token plumbing ---

    def peek(self):
        return self.toks[self.i]

    def at(self, kind):
        return self.toks[self.i].kind == kind

    def advance(self):
        tok = self.toks[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise CompileError([Diagnostic(tok.line, tok.column, KIND_PARSE, message)])

    def expect(self, kind, what=None):
        if not self.at(kind):
            tok = self.peek()
            found = "end of input" if tok.kind == "eof" else f"'{tok.text}'"
            self.fail(f"expected {what or repr(kind)}, found {found}", tok)
        return self.advance()

    # --- expressions ---

    def parse_expr(self):
        self.expr_nest += 1
        if self.expr_nest > MAX_EXPR_NEST:
            self.fail("expression nesting too deep")
        try:
            return self.parse_or()
        finally:
            self.expr_nest -= 1

    def _binary(self, sub, ops, node):
        e = sub()
        while self.peek().kind in ops:
            op = self.advance()
            e = node(e.line, e.column, op.kind, e, sub())
        return e

    def parse_or(self):
        return self._binary(self.parse_and, ("||",), ast.LogicOp)

    def parse_and(self):
        return self._binary(self.parse_eq, ("&&",), ast.LogicOp)

    def parse_eq(self):
        return self._binary(self.parse_rel, ("==", "!="), ast.Compare)

    def parse_rel(self):
        return self._binary(self.parse_add, ("<", "<=", ">", ">="), ast.Compare)

    def parse_add(self):
        return self._binary(self.parse_mul, ("+", "-"), ast.BinOp)

    def parse_mul(self):
        return self._binary(self.parse_unary, ("*", "/", "%"), ast.BinOp)

    def parse_unary(self):
        self.expr_nest += 1
        if self.expr_nest > MAX_EXPR_NEST:
            self.fail("expression nesting too deep")
        try:
            tok = self.peek()
            if tok.kind == "-":
                self.advance()
                return ast.UnaryNeg(tok.line, tok.column, self.parse_unary())
            if tok.kind == "!":
                self.advance()
                return ast.NotOp(tok.line, tok.column, self.parse_unary())
            return self.parse_primary()
        finally:
            self.expr_nest -= 1

    def parse_primary(self):
        tok = self.peek()
        if tok.kind == "number":
            self.advance()
            # out-of-range literals wrap like every other arithmetic result
            return ast.IntLit(tok.line, tok.column, wrap(int(tok.text)))
        if tok.kind == "(":
            self.advance()
            e = self.parse_expr()
            self.expect(")", "')'")
            return e
        if tok.kind == "ident":
            return self.parse_name()
        found = "end of input" if tok.kind == "eof" else f"'{tok.text}'"
        self.fail(f"expected expression, found {found}", tok)

    def parse_name(self):
        name = self.advance()
        if self.relational:
            if not self.at("."):
                self.fail(
                    f"unqualified variable '{name.text}': write <pid>.{name.text}",
                    name,
                )
            if not (len(name.text) == 1 and "A" <= name.text <= "Z"):
                self.fail(f"invalid program id '{name.text}'", name)
            self.advance()
            var = self.expect("ident", "variable name")
            index = None
            if self.at("["):
                self.advance()
                index = self.parse_expr()
                self.expect("]", "']'")
            return ast.QualifiedRef(name.line, name.column, name.text, var.text, index)
        if self.at("("):
            self.advance()
            args = []
            if not self.at(")"):
                args.append(self.parse_expr())
                while self.at(","):
                    self.advance()
                    args.append(self.parse_expr())
            self.expect(")", "')'")
            return ast.CallExpr(name.line, name.column, name.text, tuple(args))
        if self.at("["):
            self.advance()
            index = self.parse_expr()
            self.expect("]", "']'")
            return ast.IndexRef(name.line, name.column, name.text, index)
        return ast.VarRef(name.line, name.column, name.text)

    # --- statements ---

    def parse_block(self):
        lb = self.expect("{", "'{'")
        body = []
        while not self.at("}"):
            if self.at("eof"):
                self.fail("unexpected end of input: missing '}'")
            body.append(self.parse_stmt())
        rb = self.advance()
        return ast.Block(lb.line, lb.column, tuple(body), rb.line)

    def parse_stmt(self):
        self.stmt_nest += 1
        if self.stmt_nest > MAX_STMT_NEST:
            self.fail("statement nesting too deep")
        try:
            return self._stmt()
        finally:
            self.stmt_nest -= 1

    def _stmt(self):
        tok = self.peek()
        if tok.kind == "int":
            return self.parse_decl()
        if tok.kind == "if":
            self.advance()
            self.expect("(", "'('")
            cond = self.parse_expr()
            self.expect(")", "')'")
            then_body = self.parse_body()
            else_body = None
            if self.at("else"):
                self.advance()
                else_body = self.parse_body()
            return ast.IfStmt(tok.line, tok.column, cond, then_body, else_body)
        if tok.kind == "while":
            self.advance()
            self.expect("(", "'('")
            cond = self.parse_expr()
            self.expect(")", "')'")
            return ast.WhileStmt(tok.line, tok.column, cond, self.parse_body())
        if tok.kind == "return":
            self.advance()
            e = self.parse_expr()
            self.expect(";", "';'")
            return ast.ReturnStmt(tok.line, tok.column, e)
        if tok.kind == "{":
            return self.parse_block()
        if tok.kind == "ident":
            return self.parse_simple()
        found = "end of input" if tok.kind == "eof" else f"'{tok.text}'"
        self.fail(f"expected statement, found {found}", tok)

    def parse_body(self):
        """A branch or loop body: a block, or a single non-declaration statement."""
        if self.at("{"):
            return self.parse_block()
        if self.at("int"):
            self.fail("declaration must be inside a block")
        stmt = self.parse_stmt()
        end = self.toks[self.i - 1].line
        return ast.Block(stmt.line, stmt.column, (stmt,), end)

    def parse_decl(self):
        kw = self.advance()
        name = self.expect("ident", "variable name")
        if self.at("["):
            self.advance()
            size_tok = self.expect("number", "array size")
            size = int(size_tok.text)
            if size < 1:
                self.fail("array size must be a positive integer", size_tok)
            if size > MAX_ARRAY_SIZE:
                self.fail(f"array size exceeds limit of {MAX_ARRAY_SIZE}", size_tok)
            self.expect("]", "']'")
            self.expect(";", "';'")
            return ast.ArrayDecl(kw.line, kw.column, name.text, size)
        self.expect("=", "'=' or '[' after variable name")
        e = self.parse_expr()
        self.expect(";", "';'")
        return ast.VarDecl(kw.line, kw.column, name.text, e)

    def parse_simple(self):
        """Statement starting with an identifier: assignment or call."""
        name = self.advance()
        if self.at("("):
            self.i -= 1
            call = self.parse_name()
            self.expect(";", "';'")
            return ast.CallStmt(name.line, name.column, call)
        if self.at("["):
            self.advance()
            index = self.parse_expr()
            self.expect("]", "']'")
            self.expect("=", "'='")
            value = self.parse_expr()
            self.expect(";", "';'")
            return ast.IndexAssign(name.line, name.column, name.text, index, value)
        self.expect("=", "'=', '[' or '(' after identifier")
        value = self.parse_expr()
        self.expect(";", "';'")
        return ast.Assign(name.line, name.column, name.text, value)

    # --- top level ---

    def parse_function(self):
        kw = self.expect("int", "'int'")
        name = self.expect("ident", "function name")
        self.expect("(", "'('")
        params = []
        if not self.at(")"):
            while True:
                self.expect("int", "'int'")
                params.append(self.expect("ident", "parameter name").text)
                if not self.at(","):
                    break
                self.advance()
        self.expect(")", "')'")
        body = self.parse_block()
        return ast.FunctionDef(kw.line, kw.column, name.text, tuple(params), body)

    def parse_program(self):
        functions = [self.parse_function()]
        while not self.at("eof"):
            functions.append(self.parse_function())
        return ast.Program(tuple(functions))


def parse_program(text):
    """Parse source text into an unchecked Program. Raises CompileError."""
    return _with_headroom(_Parser(tokenize(text)).parse_program)


def parse_relational_tree(text):
    """Parse a relational expression; every variable must be pid-qualified."""
    p = _Parser(tokenize(text), relational=True)

    def go():
        e = p.parse_expr()
        if not p.at("eof"):
            p.fail(f"unexpected trailing input '{p.peek().text}'")
        return e

    return _with_headroom(go)
