"""Tokenizer and polynomial-expression syntax shared by the script language.

Expressions use ``+ - * / ^`` with explicit products, natural-number
literals and identifiers.  ``/`` is only meaningful with a constant
divisor, which is how ``3/2`` fraction literals are written.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .poly import PolyRing, Polynomial


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0, expected=()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(expected)
        where = f"{line}:{col}: " if line else ""
        exp = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{where}{message}{exp}")


HYPHENATED = ("check-exp", "tensor-extend", "ak-upper-bound", "pool-degree")

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<kw>(?:%s)(?![A-Za-z0-9_]))
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<arrow>->)
  | (?P<sym>[-+*/^()\[\]{},;=<>:])
    """
    % "|".join(re.escape(k) for k in HYPHENATED),
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "ident", "kw", "sym", "eof"
    value: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "arrow":
            tokens.append(Token("sym", "->", line, col))
        elif kind in ("num", "ident", "kw", "sym"):
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# -- expression AST -------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int
    pos: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    name: str
    pos: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Neg:
    operand: object
    pos: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    pos: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    pos: tuple = field(default=(0, 0), compare=False, repr=False)


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def format_expr(node) -> str:
    """Print with the minimal parentheses needed to re-parse to the same tree."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        inner = format_expr(node.operand)
        return "-" + (inner if _prec(node.operand) >= 4 else f"({inner})")
    if isinstance(node, Pow):
        base = format_expr(node.base)
        if _prec(node.base) < 5:
            base = f"({base})"
        return f"{base}^{node.exponent}"
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        left = format_expr(node.left)
        right = format_expr(node.right)
        if _prec(node.left) < p:
            left = f"({left})"
        if _prec(node.right) <= p:
            right = f"({right})"
        sep = f" {node.op} " if p == 1 else node.op
        return f"{left}{sep}{right}"
    raise TypeError(f"not an expression node: {node!r}")


def expr_variables(node) -> list[str]:
    """Variable names in order of first appearance."""
    seen: list[str] = []

    def walk(n):
        if isinstance(n, Var):
            if n.name not in seen:
                seen.append(n.name)
        elif isinstance(n, Neg):
            walk(n.operand)
        elif isinstance(n, Pow):
            walk(n.base)
        elif isinstance(n, BinOp):
            walk(n.left)
            walk(n.right)

    walk(node)
    return seen


def evaluate(node, ring: PolyRing) -> Polynomial:
    if isinstance(node, Num):
        return ring.const(node.value)
    if isinstance(node, Var):
        if node.name not in ring.index:
            line, col = node.pos
            raise ParseError(f"unknown variable {node.name!r} in {ring!r}", line, col)
        return ring.gen(node.name)
    if isinstance(node, Neg):
        return -evaluate(node.operand, ring)
    if isinstance(node, Pow):
        return evaluate(node.base, ring) ** node.exponent
    if isinstance(node, BinOp):
        a = evaluate(node.left, ring)
        b = evaluate(node.right, ring)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if not b.is_constant() or b.is_zero():
            line, col = node.pos
            raise ParseError("division only by a nonzero constant", line, col)
        return a / b
    raise TypeError(f"not an expression node: {node!r}")


class TokenStream:
    """Cursor over a token list with error helpers."""

    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def at(self, value: str) -> bool:
        tok = self.peek
        return tok.kind in ("sym", "ident", "kw") and tok.value == value

    def accept(self, value: str) -> bool:
        if self.at(value):
            self.next()
            return True
        return False

    def error(self, message: str, expected=()) -> ParseError:
        tok = self.peek
        found = "end of input" if tok.kind == "eof" else repr(tok.value)
        return ParseError(f"{message}, found {found}", tok.line, tok.col, expected)

    def expect(self, value: str) -> Token:
        if not self.at(value):
            raise self.error("syntax error", (repr(value),))
        return self.next()

    def expect_ident(self, what: str = "identifier") -> Token:
        if self.peek.kind != "ident":
            raise self.error("syntax error", (what,))
        return self.next()

    def expect_num(self) -> int:
        if self.peek.kind != "num":
            raise self.error("syntax error", ("integer",))
        return int(self.next().value)


def parse_expr(ts: TokenStream):
    node = _parse_term(ts)
    while ts.peek.kind == "sym" and ts.peek.value in ("+", "-"):
        tok = ts.next()
        node = BinOp(tok.value, node, _parse_term(ts), (tok.line, tok.col))
    return node


def _parse_term(ts: TokenStream):
    node = _parse_unary(ts)
    while ts.peek.kind == "sym" and ts.peek.value in ("*", "/"):
        tok = ts.next()
        node = BinOp(tok.value, node, _parse_unary(ts), (tok.line, tok.col))
    return node


def _parse_unary(ts: TokenStream):
    if ts.at("-"):
        tok = ts.next()
        return Neg(_parse_unary(ts), (tok.line, tok.col))
    return _parse_power(ts)


def _parse_power(ts: TokenStream):
    base = _parse_atom(ts)
    if ts.at("^"):
        tok = ts.next()
        return Pow(base, ts.expect_num(), (tok.line, tok.col))
    return base


def _parse_atom(ts: TokenStream):
    tok = ts.peek
    if tok.kind == "num":
        ts.next()
        return Num(int(tok.value), (tok.line, tok.col))
    if tok.kind == "ident":
        ts.next()
        return Var(tok.value, (tok.line, tok.col))
    if ts.accept("("):
        node = parse_expr(ts)
        ts.expect(")")
        return node
    raise ts.error("syntax error", ("number", "variable", "'('", "'-'"))


def parse_expression(text: str):
    ts = TokenStream(tokenize(text))
    node = parse_expr(ts)
    if ts.peek.kind != "eof":
        raise ts.error("trailing input", ("end of input",))
    return node


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    return evaluate(parse_expression(text), ring)

