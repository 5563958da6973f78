"""Parser for the bundle expression grammar shared with the CLI.

    expr  := atom | expr "*" expr | "dual(" expr ")" | expr "(" twist ")"
    atom  := "O(" lin ")" | "U" | "Ud" | "K" | "Kd" | "Sprime"
    lin   := signed integer combination of "h" and "H", or "0"

Whitespace is insignificant.  A postfix twist binds tighter than "*", so
``U*U(h)`` is the tensor product of U with the twisted U.  Errors carry the
offending position and the tokens that would have been accepted.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cohomology import LineClass


class ParseError(ValueError):
    def __init__(self, position: int, message: str, expected: tuple[str, ...] = ()):
        self.position = position
        self.expected = expected
        detail = f"at position {position}: {message}"
        if expected:
            detail += f" (expected {' or '.join(expected)})"
        super().__init__(detail)


@dataclass(frozen=True)
class _Token:
    kind: str  # "name" | "int" | punctuation literal
    text: str
    pos: int


def _tokenize(source: str) -> list[_Token]:
    out = []
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "()*+-":
            out.append(_Token(ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            out.append(_Token("int", source[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and source[j].isalnum():
                j += 1
            out.append(_Token("name", source[i:j], i))
            i = j
            continue
        raise ParseError(i, f"unexpected character {ch!r}")
    out.append(_Token("end", "", n))
    return out


_ATOMS = ("O", "U", "Ud", "K", "Kd", "Sprime")


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = _tokenize(source)
        self.idx = 0

    def peek(self) -> _Token:
        return self.tokens[self.idx]

    def advance(self) -> _Token:
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(tok.pos, f"found {tok.text or 'end of input'!r}", (kind,))
        return self.advance()

    # expr := postfix ("*" postfix)*
    def parse_expr(self):
        from .bundles import tensor

        node = self.parse_postfix()
        while self.peek().kind == "*":
            self.advance()
            node = tensor(node, self.parse_postfix())
        return node

    # postfix := primary ("(" lin ")")*
    def parse_postfix(self):
        from .bundles import twist

        node = self.parse_primary()
        while self.peek().kind == "(":
            self.advance()
            lin = self.parse_lin()
            self.expect(")")
            node = twist(node, lin)
        return node

    def parse_primary(self):
        from .bundles import BUILTINS, dual, line_bundle

        tok = self.peek()
        if tok.kind == "name" and tok.text == "dual":
            self.advance()
            self.expect("(")
            inner = self.parse_expr()
            self.expect(")")
            return dual(inner)
        if tok.kind == "name" and tok.text == "O":
            self.advance()
            self.expect("(")
            lin = self.parse_lin()
            self.expect(")")
            return line_bundle(lin)
        if tok.kind == "name" and tok.text in BUILTINS:
            self.advance()
            return BUILTINS[tok.text]
        raise ParseError(tok.pos, f"found {tok.text or 'end of input'!r}",
                         _ATOMS + ("dual",))

    def parse_lin(self) -> LineClass:
        a = b = 0
        first = True
        while True:
            tok = self.peek()
            sign = 1
            if tok.kind in "+-":
                sign = -1 if tok.kind == "-" else 1
                self.advance()
            elif not first:
                break
            coeff = 1
            tok = self.peek()
            if tok.kind == "int":
                coeff = int(tok.text)
                self.advance()
                tok = self.peek()
                if tok.kind != "name":
                    if coeff != 0:
                        raise ParseError(tok.pos, "bare nonzero constant in line class",
                                         ("h", "H"))
                    first = False
                    continue
            if tok.kind == "name" and tok.text in ("h", "H"):
                self.advance()
                if tok.text == "h":
                    a += sign * coeff
                else:
                    b += sign * coeff
            else:
                raise ParseError(tok.pos, f"found {tok.text or 'end of input'!r}",
                                 ("h", "H", "integer"))
            first = False
        return LineClass(a, b)


def parse_bundle(source: str):
    """Parse an expression into a FilteredBundle; raise ParseError on bad input."""
    p = _Parser(source)
    node = p.parse_expr()
    tok = p.peek()
    if tok.kind != "end":
        raise ParseError(tok.pos, f"trailing input {tok.text!r}")
    return node


def parse_line_form(source: str) -> LineClass | None:
    """Parse just a line class like ``3h-2H``; None instead of raising."""
    try:
        p = _Parser(source)
        lin = p.parse_lin()
        if p.peek().kind != "end":
            return None
        return lin
    except ParseError:
        return None
