"""S-expression tokenizer and reader for the surface DSL.

Parens and brackets are interchangeable (but must match pairwise).
Supported sugar: 'x -> (quote x), `x -> (quasiquote x), ,x -> (unquote x).
Dotted tails are allowed: (a b . c).  Comments run from ';' to end of line.
All forms carry 1-based line/column for diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .errors import ReadError

_DELIMS = "()[]'`,;"


@dataclass(frozen=True)
class Sym:
    name: str
    line: int = 0
    col: int = 0

    def pos(self):
        return f"{self.line}:{self.col}"


@dataclass(frozen=True)
class Num:
    value: int
    line: int = 0
    col: int = 0

    def pos(self):
        return f"{self.line}:{self.col}"


@dataclass(frozen=True)
class Lst:
    items: tuple
    tail: Optional[object] = None  # dotted tail, or None for a proper list
    line: int = 0
    col: int = 0

    def pos(self):
        return f"{self.line}:{self.col}"


def _sugar(name: str, inner, line, col) -> Lst:
    return Lst((Sym(name, line, col), inner), None, line, col)


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.i = 0
        self.line = 1
        self.col = 1

    def _advance(self, c):
        if c == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        self.i += 1

    def tokens(self):
        text = self.text
        n = len(text)
        while self.i < n:
            c = text[self.i]
            if c in " \t\r\n":
                self._advance(c)
                continue
            if c == ";":
                while self.i < n and text[self.i] != "\n":
                    self._advance(text[self.i])
                continue
            line, col = self.line, self.col
            if c in "()[]'`,":
                self._advance(c)
                yield (c, c, line, col)
                continue
            start = self.i
            while self.i < n and text[self.i] not in " \t\r\n" + _DELIMS:
                self._advance(text[self.i])
            yield ("atom", text[start : self.i], line, col)
        yield ("eof", "", self.line, self.col)


def _atom(tok: str, line, col):
    if tok == ".":
        return Sym(".", line, col)  # handled by the list reader
    neg = tok.startswith("-") and len(tok) > 1
    body = tok[1:] if neg else tok
    if body.isdigit():
        return Num(int(tok), line, col)
    return Sym(tok, line, col)


def read(text: str) -> List:
    """Read every top-level form in text."""
    toks = list(_Tokenizer(text).tokens())
    pos = 0

    def peek():
        return toks[pos]

    def next_tok():
        nonlocal pos
        t = toks[pos]
        pos += 1
        return t

    def read_form():
        kind, val, line, col = next_tok()
        if kind == "eof":
            raise ReadError("unexpected end of input", line, col)
        if kind in ("(", "["):
            return read_list(")" if kind == "(" else "]", line, col)
        if kind in (")", "]"):
            raise ReadError(f"unexpected '{val}'", line, col)
        if kind == "'":
            return _sugar("quote", read_form(), line, col)
        if kind == "`":
            return _sugar("quasiquote", read_form(), line, col)
        if kind == ",":
            return _sugar("unquote", read_form(), line, col)
        if val == ".":
            raise ReadError("stray '.'", line, col)
        return _atom(val, line, col)

    def read_list(closer, line, col):
        items = []
        tail = None
        while True:
            kind, val, tline, tcol = peek()
            if kind == "eof":
                raise ReadError(f"unclosed list opened here", line, col)
            if kind in (")", "]"):
                next_tok()
                if kind != closer:
                    raise ReadError(f"mismatched delimiter '{val}'", tline, tcol)
                return Lst(tuple(items), tail, line, col)
            if kind == "atom" and val == "." and tail is None:
                if not items:
                    raise ReadError("stray '.'", tline, tcol)
                next_tok()
                tail = read_form()
                kind2, val2, l2, c2 = peek()
                if kind2 not in (")", "]"):
                    raise ReadError("exactly one form may follow '.'", l2, c2)
                continue
            if tail is not None:
                raise ReadError("exactly one form may follow '.'", tline, tcol)
            items.append(read_form())

    forms = []
    while peek()[0] != "eof":
        forms.append(read_form())
    return forms


def print_form(f) -> str:
    """Render a form so that read(print_form(f)) round-trips."""
    if isinstance(f, Num):
        return str(f.value)
    if isinstance(f, Sym):
        return f.name
    if isinstance(f, Lst):
        if len(f.items) == 2 and isinstance(f.items[0], Sym) and f.tail is None:
            sugar = {"quote": "'", "quasiquote": "`", "unquote": ","}.get(f.items[0].name)
            if sugar:
                return sugar + print_form(f.items[1])
        inner = " ".join(print_form(x) for x in f.items)
        if f.tail is not None:
            inner += " . " + print_form(f.tail)
        return "(" + inner + ")"
    raise TypeError(f"not a form: {f!r}")
