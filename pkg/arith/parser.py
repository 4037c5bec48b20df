"""
Text grammar for polynomials and matrices.

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | "+" unary | power
    power  := atom ("^" INT)?
    atom   := INT ("/" INT)? | NAME | "(" expr ")"

The parser is generic over the ring: callers pass the values bound to each
variable name and a constructor for constants, so the same grammar reads
Q[D, v], Q[v] and the (noncommutative) Weyl algebra.  Columns in errors
are 1-based.
"""
import re
from dataclasses import dataclass
from sympy.polys.domains import QQ

from arith.matrix import MatrixDV
from arith.poly import PolyDV, PolyV
from utils.errors import ParseError

TOKEN_RE = re.compile(r"(?P<num>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*^/()])|(?P<space>\s+)")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    column: int


def tokenize(text, offset=0):
    tokens = []
    pos = 0
    while pos < len(text):
        m = TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", offset + pos + 1, text)
        kind = m.lastgroup
        if kind != "space":
            tokens.append(Token(kind, m.group(), offset + pos + 1))
        pos = m.end()
    tokens.append(Token("end", "", offset + len(text) + 1))
    return tokens


class ExpressionParser:
    def __init__(self, text, variables, constant, offset=0):
        self.text = text
        self.variables = variables
        self.constant = constant
        self.tokens = tokenize(text, offset)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, text):
        tok = self.advance()
        if tok.text != text:
            found = repr(tok.text) if tok.kind != "end" else "end of input"
            raise ParseError(f"expected {text!r}, found {found}", tok.column, self.text)
        return tok

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            if tok.text == ")":
                raise ParseError("unbalanced parenthesis", tok.column, self.text)
            raise ParseError(f"unexpected {tok.text!r}", tok.column, self.text)
        return value

    def expr(self):
        value = self.term()
        while self.peek().text in ("+", "-"):
            op = self.advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek().text == "*":
            self.advance()
            value = value * self.unary()
        return value

    def unary(self):
        tok = self.peek()
        if tok.text == "-":
            self.advance()
            return -self.unary()
        if tok.text == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().text == "^":
            self.advance()
            tok = self.advance()
            if tok.kind != "num":
                raise ParseError("exponent must be a non-negative integer", tok.column, self.text)
            base = base ** int(tok.text)
        return base

    def atom(self):
        tok = self.advance()
        if tok.kind == "num":
            value = QQ(int(tok.text))
            if self.peek().text == "/":
                self.advance()
                den = self.advance()
                if den.kind != "num":
                    raise ParseError("expected an integer denominator", den.column, self.text)
                if int(den.text) == 0:
                    raise ParseError("zero denominator", den.column, self.text)
                value = QQ(int(tok.text), int(den.text))
            return self.constant(value)
        if tok.kind == "name":
            if tok.text not in self.variables:
                allowed = ", ".join(sorted(self.variables))
                raise ParseError(f"unknown variable {tok.text!r} (expected one of {allowed})", tok.column, self.text)
            return self.variables[tok.text]
        if tok.text == "(":
            value = self.expr()
            closing = self.peek()
            if closing.text != ")":
                raise ParseError("unbalanced parenthesis", closing.column, self.text)
            self.advance()
            return value
        if tok.kind == "end":
            raise ParseError("unexpected end of input", tok.column, self.text)
        raise ParseError(f"unexpected {tok.text!r}", tok.column, self.text)


def parse_polynomial(text, offset=0):
    """Parse an element of Q[D, v]"""
    variables = {"D": PolyDV.D(), "v": PolyDV.v()}
    return ExpressionParser(text, variables, PolyDV.constant, offset).parse()


def parse_polyv(text, var="v", offset=0):
    """Parse a univariate polynomial in ``var``"""
    return ExpressionParser(text, {var: PolyV.var()}, PolyV.constant, offset).parse()


def split_matrix(text):
    """
    Split ``[[a, b], [c, d]]`` into rows of (entry text, offset) pairs.

    Text without a leading bracket is a single 1x1 entry.
    """
    stripped = text.lstrip()
    lead = len(text) - len(stripped)
    if not stripped.startswith("["):
        return [[(text, 0)]]
    end = len(text) + 1
    pos = lead + 1
    rows = []

    def skip_space(i):
        while i < len(text) and text[i].isspace():
            i += 1
        return i

    while True:
        pos = skip_space(pos)
        if pos >= len(text):
            raise ParseError("unbalanced bracket", end, text)
        if text[pos] != "[":
            raise ParseError("expected '['", pos + 1, text)
        pos += 1
        row = []
        start = pos
        depth = 0
        while True:
            if pos >= len(text):
                raise ParseError("unbalanced bracket", end, text)
            ch = text[pos]
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "[":
                raise ParseError("unexpected '['", pos + 1, text)
            elif depth == 0 and ch in ",]":
                row.append((text[start:pos], start))
                pos += 1
                if ch == "]":
                    break
                start = pos
                continue
            pos += 1
        rows.append(row)
        pos = skip_space(pos)
        if pos >= len(text):
            raise ParseError("unbalanced bracket", end, text)
        if text[pos] == ",":
            pos += 1
            continue
        if text[pos] == "]":
            pos += 1
            break
        raise ParseError(f"unexpected {text[pos]!r}", pos + 1, text)
    pos = skip_space(pos)
    if pos < len(text):
        raise ParseError(f"trailing input {text[pos]!r}", pos + 1, text)
    return rows


def parse_matrix(text, entry=parse_polynomial):
    """Parse the element grammar into a MatrixDV"""
    rows = split_matrix(text)
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise ParseError(f"matrix is not square ({n} rows, a row of {len(row)} entries)", None, text)
    parsed = []
    for row in rows:
        out = []
        for chunk, offset in row:
            if not chunk.strip():
                raise ParseError("empty entry", offset + 1, text)
            out.append(entry(chunk, offset=offset))
        parsed.append(out)
    return MatrixDV(parsed)
