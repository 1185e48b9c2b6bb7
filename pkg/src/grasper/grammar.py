"""Recursive-descent parser for words, ring elements and diffeomorphism expressions.

Grammar (whitespace is insignificant)::

    word   := atom ("*" atom)*
    atom   := "1" | IDENT ("^" SIGNED_INT)? | "(" word ")" ("^" SIGNED_INT)?
    ring   := ("+"|"-")? term (("+"|"-") term)*
    term   := INT "*"? word | INT | word
    expr   := power ("*" power)*
    power  := primary ("^" SIGNED_INT)*
    primary:= "id" | "wat(" word "," word ")" | "bg(" word ")"
            | "bg_knotted1(" word ")" | SREF "(" ring ")" | "r(" ring ")"
            | "ps(" "r(" ring ")" ")" | "inv(" expr ")" | "(" expr ")"

``SREF`` is one of ``sref``, ``sref_r``, ``sref_l``, ``sref_rr``, ``sref_lower``.
In expressions ``*`` is composition of diffeomorphisms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Mapping

from . import calculus as calc
from .errors import MalformedExponent, ParseError, UnknownGenerator
from .ring import RingElement, coerce
from .words import GroupSpec, Word, word_multiply, word_power

_TOKEN = re.compile(r"\s*(?:(?P<IDENT>[A-Za-z][A-Za-z0-9_]*)|(?P<INT>\d+)|(?P<OP>==|[*^(),+\-=]))")

SREF_KEYWORDS: dict[str, type[calc.Sref]] = {
    "sref": calc.Sref,
    "sref_r": calc.SrefR,
    "sref_l": calc.SrefL,
    "sref_rr": calc.SrefRR,
    "sref_lower": calc.SrefLower,
}
EXPR_KEYWORDS = frozenset({"id", "wat", "bg", "bg_knotted1", "r", "ps", "inv", *SREF_KEYWORDS})


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, INT, OP or END
    text: str
    pos: int


def tokenize(text: str, line: int = 1) -> list[Token]:
    tokens = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("END", "", n))
    return tokens


class Parser:
    """Token cursor with one method per grammar production.

    ``ctx`` is the group words are parsed in; ``ring_ctx`` (for expressions)
    is the surgery group that ring arguments of ``sref``/``r`` are moved to.
    ``bindings`` maps let-bound names to ring elements of ``ctx``.
    """

    def __init__(
        self,
        text: str,
        ctx: GroupSpec,
        *,
        ring_ctx: GroupSpec | None = None,
        bindings: Mapping[str, RingElement] | None = None,
        line: int = 1,
    ):
        self.text = text
        self.ctx = ctx
        self.ring_ctx = ring_ctx
        self.bindings = bindings or {}
        self.line = line
        self.tokens = tokenize(text, line)
        self.i = 0

    # -- cursor ----------------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tok
        if tok.kind != "END":
            self.i += 1
        return tok

    def at(self, text: str) -> bool:
        return self.tok.kind != "END" and self.tok.text == text

    def error(self, message: str, tok: Token | None = None, cls: type[ParseError] = ParseError) -> ParseError:
        tok = tok or self.tok
        found = "end of input" if tok.kind == "END" else repr(tok.text)
        return cls(f"{message}, found {found}", self.line, tok.pos + 1)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}")
        return self.advance()

    def expect_end(self) -> None:
        if self.tok.kind != "END":
            raise self.error("unexpected trailing input")

    # -- numbers ---------------------------------------------------------------

    def signed_int(self) -> int:
        start = self.tok
        sign = 1
        if self.tok.kind == "OP" and self.tok.text in "+-":
            sign = -1 if self.advance().text == "-" else 1
        if self.tok.kind != "INT":
            raise self.error("expected an integer exponent", cls=MalformedExponent)
        value = sign * int(self.advance().text)
        if abs(value) >= 2**63:
            raise ParseError("exponent does not fit in 64 bits", self.line, start.pos + 1)
        return value

    def _exponent(self) -> int | None:
        if self.at("^"):
            self.advance()
            return self.signed_int()
        return None

    # -- words -----------------------------------------------------------------

    def word(self) -> Word:
        w = self.atom()
        while self.at("*"):
            self.advance()
            w = word_multiply(w, self.atom())
        return w

    @staticmethod
    def _starts_atom(tok: Token) -> bool:
        return tok.kind == "IDENT" or (tok.kind == "OP" and tok.text == "(") or (
            tok.kind == "INT" and tok.text == "1"
        )

    def atom(self) -> Word:
        tok = self.tok
        if tok.kind == "INT":
            if tok.text != "1":
                raise self.error("expected a generator or 1")
            self.advance()
            return self.ctx.identity
        if tok.kind == "OP" and tok.text == "(":
            self.advance()
            w = self.word()
            self.expect(")")
        elif tok.kind == "IDENT":
            self.advance()
            w = self._generator(tok)
        else:
            raise self.error("expected a generator")
        exp = self._exponent()
        return w if exp is None else word_power(w, exp)

    def _generator(self, tok: Token) -> Word:
        name = tok.text
        if self.ctx.has(name):
            return self.ctx.gen(name)
        if name in self.bindings:
            w = self.bindings[name].monomial()
            if w is None:
                raise ParseError(
                    f"{name!r} is bound to a ring element, not a group element",
                    self.line,
                    tok.pos + 1,
                )
            return w
        err = UnknownGenerator(name)
        err.line, err.column = self.line, tok.pos + 1
        raise err

    # -- ring elements ---------------------------------------------------------

    def ring(self) -> RingElement:
        sign = 1
        if self.tok.kind == "OP" and self.tok.text in "+-":
            sign = -1 if self.advance().text == "-" else 1
        total = self.term().scale(sign)
        while self.tok.kind == "OP" and self.tok.text in "+-":
            sign = -1 if self.advance().text == "-" else 1
            total = total + self.term().scale(sign)
        return total

    def term(self) -> RingElement:
        coeff = 1
        tok = self.tok
        if tok.kind == "INT":
            nxt = self.peek()
            if self._starts_atom(nxt) or (nxt.kind == "OP" and nxt.text == "*"):
                coeff = int(self.advance().text)
                if self.at("*"):
                    self.advance()
            else:
                return RingElement.scalar(self.ctx, int(self.advance().text))
        tok = self.tok
        if tok.kind == "IDENT" and tok.text in self.bindings and not self.ctx.has(tok.text):
            value = self.bindings[tok.text]
            nxt = self.peek()
            if value.monomial() is None and not (nxt.kind == "OP" and nxt.text in "*^"):
                self.advance()
                return value.scale(coeff)
        return RingElement.word(self.word(), coeff)

    # -- diffeomorphism expressions ------------------------------------------------

    def expr(self) -> calc.DiffeoExpr:
        parts = [self.power()]
        while self.at("*"):
            self.advance()
            parts.append(self.power())
        return parts[0] if len(parts) == 1 else calc.Compose(tuple(parts))

    def power(self) -> calc.DiffeoExpr:
        e = self.primary()
        while self.at("^"):
            self.advance()
            e = calc.Power(e, self.signed_int())
        return e

    def _ring_arg(self) -> RingElement:
        xi = self.ring()
        return coerce(xi, self.ring_ctx) if self.ring_ctx is not None else xi

    def primary(self) -> calc.DiffeoExpr:
        tok = self.tok
        if tok.kind == "OP" and tok.text == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if tok.kind != "IDENT" or tok.text not in EXPR_KEYWORDS:
            raise self.error("expected a diffeomorphism expression")
        name = self.advance().text
        if name == "id":
            return calc.Identity()
        self.expect("(")
        node: calc.DiffeoExpr
        if name == "wat":
            g1 = self.word()
            self.expect(",")
            g2 = self.word()
            node = calc.Wat(calc.ThetaData(g1, g2))
        elif name in ("bg", "bg_knotted1"):
            node = calc.Bg(calc.BarbellSpec(self.word(), cuff1_unknotted=(name == "bg")))
        elif name in SREF_KEYWORDS:
            node = SREF_KEYWORDS[name](self._ring_arg())
        elif name == "r":
            node = calc.PsR(self._ring_arg())
        elif name == "ps":
            self.expect("r")
            self.expect("(")
            node = calc.PsR(self._ring_arg())
            self.expect(")")
        else:  # inv
            node = calc.Inverse(self.expr())
        self.expect(")")
        return node


def _parse_all(text: str, ctx: GroupSpec, production: Callable[[Parser], object], **kw):
    p = Parser(text, ctx, **kw)
    result = production(p)
    p.expect_end()
    return result


def parse_word(text: str, ctx: GroupSpec, **kw) -> Word:
    return _parse_all(text, ctx, Parser.word, **kw)


def parse_ring(text: str, ctx: GroupSpec, **kw) -> RingElement:
    return _parse_all(text, ctx, Parser.ring, **kw)


def parse_expr(text: str, ctx: GroupSpec, **kw) -> calc.DiffeoExpr:
    return _parse_all(text, ctx, Parser.expr, **kw)
