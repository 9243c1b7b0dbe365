"""Mini parser for polynomial expressions over x, y, z.

Grammar: + - * ^ with parentheses, rational literals as integers,
decimals or a/b fractions.  Products of sums are expanded, so the result
is always a flat term list.
"""

from __future__ import annotations

import re

from .kernel import Polynomial, StructureError

_TOKEN = re.compile(r"\s*(\d+/\d+|\d+\.\d*|\.\d+|\d+|[xyz]|[-+*^()])")
_VARS = {"x": 0, "y": 1, "z": 2}


class PolyParseError(StructureError):
    pass


def _tokenize(src: str):
    pos = 0
    out = []
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise PolyParseError(f"bad character at {src[pos:pos + 8]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def _literal(tok: str) -> float:
    if "/" in tok:
        num, den = tok.split("/")
        return int(num) / int(den)
    return float(tok)


# polynomials as {exponent tuple: coefficient} over 3 slots during parsing

def _padd(a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0.0) + c
    return out


def _pneg(a):
    return {e: -c for e, c in a.items()}


def _pmul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(i + j for i, j in zip(ea, eb))
            out[e] = out.get(e, 0.0) + ca * cb
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expr(self):
        sign = 1.0
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        acc = self.term()
        if sign < 0:
            acc = _pneg(acc)
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            acc = _padd(acc, _pneg(rhs) if op == "-" else rhs)
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() == "*":
            self.take()
            acc = _pmul(acc, self.factor())
        return acc

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if tok is None or not tok.isdigit():
                raise PolyParseError("exponent must be a nonnegative integer")
            out = {(0, 0, 0): 1.0}
            for _ in range(int(tok)):
                out = _pmul(out, base)
            return out
        return base

    def atom(self):
        tok = self.take()
        if tok is None:
            raise PolyParseError("unexpected end of expression")
        if tok == "(":
            inner = self.expr()
            if self.take() != ")":
                raise PolyParseError("missing closing parenthesis")
            return inner
        if tok == "-":
            return _pneg(self.atom())
        if tok == "+":
            return self.atom()
        if tok in _VARS:
            e = [0, 0, 0]
            e[_VARS[tok]] = 1
            return {tuple(e): 1.0}
        if tok[0].isdigit() or tok[0] == ".":
            return {(0, 0, 0): _literal(tok)}
        raise PolyParseError(f"unexpected token {tok!r}")


def parse_polynomial(src: str, arity: int | None = None,
                     allow_constant_term: bool = True) -> Polynomial:
    """Parse an expression like "x^2*y - x*y^2" into a Polynomial.

    With arity=None the arity is the highest variable used (x -> 1,
    y -> 2, z -> 3), at least 1.
    """
    parser = _Parser(_tokenize(src))
    table = parser.expr()
    if parser.peek() is not None:
        raise PolyParseError(f"trailing input {parser.peek()!r}")
    table = {e: c for e, c in table.items() if c != 0.0}
    used = max((max(i for i in range(3) if e[i]) + 1 for e in table
                if any(e)), default=1)
    if arity is None:
        arity = used
    elif used > arity:
        raise PolyParseError(f"expression uses {used} variables, arity {arity}")
    terms = tuple(sorted(((c, e[:arity]) for e, c in table.items()),
                         key=lambda t: t[1]))
    return Polynomial(terms=terms, arity=arity,
                      allow_constant_term=allow_constant_term)
