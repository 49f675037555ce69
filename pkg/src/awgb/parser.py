"""Parser for the algebra expression language.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (['*'|'/'] factor)*        juxtaposition is product
    factor := atom ['^' ['-'] uint]
    atom   := uint | 'q' | gen | 'comm(' expr ',' expr ')'
            | 'qcomm(' expr ',' expr [',' expr] ')' | '(' expr ')'
    gen    := 'a[' uint ',' uint ']' | 'C[' uint '..' uint ']'

Division and negative powers are only allowed for scalar (coefficient)
operands, which is how ``q^-1`` and ``(1/(q^2-1))`` are written.
"""

from __future__ import annotations

import re
from typing import List, NamedTuple

from .coeff import Q, RatFunc
from .errors import AlphabetMismatch, DivisionByZero, ExprSyntaxError, IndexOutOfRange
from .ncpoly import Alphabet, GenSymbol, NcPoly, comm, qcomm


class Tok(NamedTuple):
    kind: str
    text: str
    pos: int


_TOKEN = re.compile(r"\s*(?:(\d+)|(qcomm|comm|q|a|C)|(\.\.|[\[\](),+\-*/^]))")


def tokenize(src: str) -> List[Tok]:
    out = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if not m:
            p = pos + (len(src[pos:]) - len(src[pos:].lstrip()))
            raise ExprSyntaxError(f"unexpected character {src[p]!r}", src, p)
        if m.group(1):
            out.append(Tok("int", m.group(1), m.start(1)))
        elif m.group(2):
            out.append(Tok("name", m.group(2), m.start(2)))
        else:
            out.append(Tok("op", m.group(3), m.start(3)))
        pos = m.end()
    out.append(Tok("end", "", len(src)))
    return out


class _Parser:
    def __init__(self, src: str, alph: Alphabet):
        self.src = src
        self.alph = alph
        self.toks = tokenize(src)
        self.i = 0

    def peek(self) -> Tok:
        return self.toks[self.i]

    def next(self) -> Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ExprSyntaxError(msg, self.src, tok.pos)

    def expect(self, text: str) -> Tok:
        t = self.next()
        if t.text != text:
            self.error(f"expected {text!r}, found {t.text or 'end of input'!r}", t)
        return t

    def uint(self) -> int:
        t = self.next()
        if t.kind != "int":
            self.error("expected an unsigned integer", t)
        return int(t.text)

    # grammar

    def parse(self) -> NcPoly:
        p = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}")
        return p

    def expr(self) -> NcPoly:
        sign = 1
        if self.peek().text in ("+", "-"):
            sign = -1 if self.next().text == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek().text in ("+", "-"):
            op = self.next().text
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def _starts_atom(self, t: Tok) -> bool:
        return t.kind in ("int", "name") or t.text == "("

    def term(self) -> NcPoly:
        acc = self.factor()
        while True:
            t = self.peek()
            if t.text == "*":
                self.next()
                acc = acc * self.factor()
            elif t.text == "/":
                self.next()
                d = self.factor()
                acc = acc.scale(self._scalar_inverse(d, t))
            elif self._starts_atom(t):
                acc = acc * self.factor()
            else:
                return acc

    def _scalar_inverse(self, d: NcPoly, tok: Tok) -> RatFunc:
        if not d.is_scalar():
            self.error("division by a non-scalar expression", tok)
        c = d.scalar_value()
        if not c:
            raise DivisionByZero(f"division by zero at column {tok.pos + 1}")
        return c.inv()

    def factor(self) -> NcPoly:
        base = self.atom()
        if self.peek().text == "^":
            hat = self.next()
            neg = False
            if self.peek().text == "-":
                self.next()
                neg = True
            e = self.uint()
            if neg:
                return NcPoly.scalar(self.alph, self._scalar_inverse(base, hat) ** e)
            return base ** e
        return base

    def atom(self) -> NcPoly:
        t = self.next()
        if t.kind == "int":
            return NcPoly.scalar(self.alph, RatFunc.coerce(int(t.text)))
        if t.text == "(":
            p = self.expr()
            self.expect(")")
            return p
        if t.kind != "name":
            self.error(f"unexpected {t.text or 'end of input'!r}", t)
        if t.text == "q":
            return NcPoly.scalar(self.alph, Q)
        if t.text in ("a", "C"):
            return self.gen(t)
        if t.text == "comm":
            self.expect("(")
            x = self.expr()
            self.expect(",")
            y = self.expr()
            self.expect(")")
            return comm(x, y)
        # qcomm
        self.expect("(")
        x = self.expr()
        self.expect(",")
        y = self.expr()
        p = Q
        if self.peek().text == ",":
            ptok = self.next()
            pe = self.expr()
            if not pe.is_scalar():
                self.error("q-bracket parameter must be a scalar", ptok)
            p = pe.scalar_value()
        self.expect(")")
        return qcomm(x, y, p)

    def gen(self, t: Tok) -> NcPoly:
        kind = "A" if t.text == "a" else "C"
        self.expect("[")
        i = self.uint()
        self.expect("," if kind == "A" else "..")
        j = self.uint()
        self.expect("]")
        if kind != self.alph.kind:
            raise AlphabetMismatch(f"{t.text}[...] at column {t.pos + 1} is not in the {self.alph.kind} alphabet")
        sym = GenSymbol(kind, i, j)
        if sym not in self.alph.index:
            raise IndexOutOfRange(f"{sym} at column {t.pos + 1} is outside {kind}({self.alph.n})")
        return NcPoly.gen(self.alph, sym)


def parse_expr(src: str, alph: Alphabet) -> NcPoly:
    """Evaluate ``src`` to an NcPoly over ``alph``."""
    return _Parser(src, alph).parse()
