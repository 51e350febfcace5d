"""Recursive-descent parser for manifold expressions.

Grammar::

    expr  := unary ( ("#" | "#s1") unary )*          left-associative
    unary := INT "*" "(" expr ")"                     repeated connected sum
           | "csum" "(" INT "," expr ")"              repeated circle sum
           | FUNC "(" expr ")"
           | ATOM
           | "(" expr ")"
    FUNC  := bar | twist | gluck | cover
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import expr as E
from .errors import CoverError, ParseError, PinetaError, PreconditionError

FUNCS = ("bar", "twist", "gluck", "cover")

_TOKEN = re.compile(r"\s*(?:(?P<csum>#s1)|(?P<hash>#)|(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<punct>[*(),]))")


@dataclass(frozen=True)
class Token:
    kind: str  # "#", "#s1", "int", "name", "*", "(", ")", ",", "eof"
    text: str
    pos: int


def tokenize(text: str) -> list:
    tokens, pos = [], 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            tokens.append(Token("eof", "", pos))
            return tokens
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastgroup)
        value = m.group(m.lastgroup)
        kind = {"csum": "#s1", "hash": "#", "int": "int", "name": "name"}.get(m.lastgroup, value)
        tokens.append(Token(kind, value, start))
        pos = m.end()


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message, tok=None, expected=()):
        tok = tok or self.tok
        return ParseError(message, self.text, tok.pos, expected)

    def expect(self, kind, what=None):
        tok = self.tok
        if tok.kind != kind:
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise self.error(f"unexpected {found}", tok, (what or repr(kind),))
        self.i += 1
        return tok

    def build(self, fn, tok, *args):
        try:
            return fn(*args)
        except (PreconditionError, CoverError) as err:
            raise self.error(str(err), tok) from err

    def parse(self):
        out = self.expr()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}", expected=("'#'", "'#s1'", "end of input"))
        return out

    def expr(self):
        left = self.unary()
        while self.tok.kind in ("#", "#s1"):
            op = self.tok
            self.i += 1
            right = self.unary()
            if op.kind == "#":
                left = self.build(E.conn_sum, op, left, right)
            else:
                left = self.build(E.circle_sum, op, left, right)
        return left

    def unary(self):
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            count = int(tok.text)
            self.expect("*", "'*'")
            self.expect("(", "'('")
            body = self.expr()
            self.expect(")", "')'")
            if count < 1:
                raise self.error("repetition count must be positive", tok)
            return self.build(E.repeat, tok, count, body)
        if tok.kind == "name":
            self.i += 1
            if tok.text == "csum":
                self.expect("(", "'('")
                count_tok = self.expect("int", "repetition count")
                self.expect(",", "','")
                body = self.expr()
                self.expect(")", "')'")
                return self.build(E.csum, count_tok, int(count_tok.text), body)
            if tok.text in FUNCS:
                self.expect("(", "'('")
                arg = self.expr()
                if self.tok.kind == ",":
                    raise self.error(f"{tok.text} takes exactly one argument", expected=("')'",))
                self.expect(")", "')'")
                return self.build(_FUNC_IMPL[tok.text], tok, arg)
            if tok.text in E.ATOMS:
                return E.Atom(tok.text)
            raise ParseError(f"unknown atom {tok.text!r}", self.text, tok.pos,
                             ("atom", "function"))
        if tok.kind == "(":
            self.i += 1
            inner = self.expr()
            self.expect(")", "')'")
            return inner
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise self.error(f"unexpected {found}", tok, ("atom", "function", "integer", "'('"))


def _cover(x):
    from .cover import orientation_cover

    return orientation_cover(x)


_FUNC_IMPL = {"bar": E.bar, "twist": E.twist, "gluck": E.gluck_twist, "cover": _cover}


def parse_raw(text: str) -> E.Expr:
    """Parse without normalizing."""
    return _Parser(text).parse()


def parse(text: str) -> E.Expr:
    return E.normalize(parse_raw(text))


__all__ = ["ParseError", "PinetaError", "parse", "parse_raw", "tokenize"]
