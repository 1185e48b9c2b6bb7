"""The script language: manifold declarations, bindings, checks and reductions.

A script is a sequence of lines; ``#`` starts a comment::

    manifold free(g1,g2)
    let h = g1*g2^-1
    check bg(y*h*x*g2) == wat(g1,g2)
    reduce t^-3 + 2t
    eval inv(bg(y*x^2))

Expressions are written over ``G * <t> * <x> * <y>``; ring arguments and
``reduce`` operate in ``G * <t>``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import calculus as calc
from .errors import GrasperError, ParseError, UnsupportedContext
from .grammar import EXPR_KEYWORDS, Parser, tokenize
from .quotient import FULL, WEAK, ReductionContext, reduce_to_class
from .ring import RingElement
from .words import RESERVED, FactorSpec, GroupSpec

PASS, FAIL, ERROR = "pass", "fail", "error"
STATEMENTS = ("manifold", "let", "check", "reduce", "eval")
FACTOR_KINDS = ("trivial", "free", "cyclic", "Z")


@dataclass
class Record:
    name: str
    status: str
    lhs: str = ""
    rhs: str = ""
    details: str = ""
    unsupported: bool = False

    def as_json(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "details": self.details,
        }


@dataclass
class Report:
    suite: str
    results: list[Record] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(r.status == PASS for r in self.results)

    @property
    def failed(self) -> int:
        return len(self.results) - self.passed

    def exit_code(self) -> int:
        if any(r.unsupported for r in self.results):
            return 3
        return 0 if self.failed == 0 else 1

    def summary(self) -> str:
        return f"{self.suite}: {self.passed} passed, {self.failed} failed"


def emit_json(report: Report) -> str:
    payload = {
        "suite": report.suite,
        "results": [r.as_json() for r in report.results],
        "passed": report.passed,
        "failed": report.failed,
    }
    return json.dumps(payload, indent=2, ensure_ascii=False)


# -- manifold declarations ------------------------------------------------------


def _factor(p: Parser) -> FactorSpec:
    tok = p.tok
    if tok.kind != "IDENT" or tok.text not in FACTOR_KINDS:
        raise p.error("expected a group factor or manifold name")
    kind = p.advance().text
    if kind == "trivial":
        return FactorSpec.trivial()
    p.expect("(")
    if kind == "free":
        names = [_name(p)]
        while p.at(","):
            p.advance()
            names.append(_name(p))
        spec = FactorSpec.free(*names)
    elif kind == "cyclic":
        order = _order(p)
        name = "g"
        if p.at(","):
            p.advance()
            name = _name(p)
        spec = FactorSpec.cyclic(name, order)
    else:  # Z
        spec = FactorSpec.integer(_name(p))
    p.expect(")")
    return spec


def _name(p: Parser) -> str:
    tok = p.tok
    if tok.kind != "IDENT":
        raise p.error("expected a generator name")
    if tok.text in RESERVED:
        raise p.error(f"{tok.text!r} is reserved")
    return p.advance().text


def _order(p: Parser) -> int:
    tok = p.tok
    if tok.kind != "INT" or int(tok.text) < 2:
        raise p.error("expected a cyclic order >= 2")
    return int(p.advance().text)


def parse_manifold(p: Parser) -> tuple[str, tuple[FactorSpec, ...]]:
    """``S4 | D3xS1 | factor | freeprod(factor, ...)`` -> (tag, base factors)."""
    tok = p.tok
    if tok.kind == "IDENT" and tok.text == "S4":
        p.advance()
        return "S4", ()
    if tok.kind == "IDENT" and tok.text == "D3xS1":
        p.advance()
        return "D3xS1", (FactorSpec.integer("g"),)
    if tok.kind == "IDENT" and tok.text == "freeprod":
        p.advance()
        p.expect("(")
        factors = [_factor(p)]
        while p.at(","):
            p.advance()
            factors.append(_factor(p))
        p.expect(")")
    else:
        factors = [_factor(p)]
    base = tuple(f for f in factors if f.kind != "trivial")
    try:
        ctx = GroupSpec(base)
    except GrasperError as exc:
        raise ParseError(str(exc), p.line, tok.pos + 1) from None
    return ("S4" if not base else f"pi1M = {ctx.describe()}"), base


# -- running -----------------------------------------------------------------


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


class ScriptRunner:
    def __init__(self, suite: str = "script"):
        self.report = Report(suite)
        self.bar_ctx: GroupSpec | None = None
        self.rctx: ReductionContext | None = None
        self.bindings: dict[str, RingElement] = {}

    # parsing helpers

    def _parser(self, text: str, line: int) -> Parser:
        return Parser(text, self.bar_ctx, ring_ctx=self.rctx.ctx, bindings=self.bindings, line=line)

    def _side(self, p: Parser):
        """An expression, or failing that a ring element."""
        start = p.i
        tok = p.tok
        committed = tok.kind == "IDENT" and tok.text in EXPR_KEYWORDS and not self.bar_ctx.has(tok.text)
        try:
            return p.expr()
        except ParseError as exc:
            if committed:
                raise
            expr_error = exc
        p.i = start
        try:
            return p.ring()
        except ParseError as exc:
            raise exc if exc.column >= expr_error.column else expr_error from None

    # statements

    def run(self, source: str) -> Report:
        for lineno, raw in enumerate(source.splitlines(), start=1):
            text = _strip_comment(raw)
            if not text.strip():
                continue
            self.statement(text, lineno)
        return self.report

    def statement(self, text: str, line: int) -> None:
        tokens = tokenize(text, line)
        head = tokens[0]
        if head.kind != "IDENT" or head.text not in STATEMENTS:
            raise ParseError(f"expected one of {', '.join(STATEMENTS)}", line, head.pos + 1)
        name = f"line {line}: {text.strip()}"
        if head.text == "manifold":
            self._manifold(text, line, head)
            return
        if self.bar_ctx is None:
            raise ParseError("a manifold declaration must come first", line, head.pos + 1)
        p = self._parser(text, line)
        p.advance()
        try:
            record = getattr(self, "_" + head.text)(p, name)
        except ParseError:
            raise
        except UnsupportedContext as exc:
            record = Record(name, ERROR, details=f"{type(exc).__name__}: {exc}", unsupported=True)
        except GrasperError as exc:
            where = f" (line {exc.line}, column {exc.column})" if hasattr(exc, "column") else ""
            record = Record(name, ERROR, details=f"{type(exc).__name__}: {exc}{where}")
        if record is not None:
            self.report.results.append(record)

    def _manifold(self, text: str, line: int, head) -> None:
        if self.bar_ctx is not None:
            raise ParseError("only one manifold declaration is allowed", line, head.pos + 1)
        p = Parser(text, GroupSpec(()), line=line)
        p.advance()
        tag, base = parse_manifold(p)
        p.expect_end()
        self.bar_ctx = calc.bar_context(base)
        self.rctx = ReductionContext.for_base(base, FULL, tag)

    def _let(self, p: Parser, name: str) -> None:
        tok = p.tok
        if tok.kind != "IDENT":
            raise p.error("expected a name to bind")
        p.advance()
        p.expect("=")
        value = p.ring()
        p.expect_end()
        if self.bar_ctx.has(tok.text) or tok.text in EXPR_KEYWORDS or tok.text in STATEMENTS:
            raise ParseError(f"{tok.text!r} would shadow a generator or keyword", p.line, tok.pos + 1)
        if tok.text in self.bindings:
            raise ParseError(f"{tok.text!r} is already bound", p.line, tok.pos + 1)
        self.bindings[tok.text] = value
        return None

    def _check(self, p: Parser, name: str) -> Record:
        lhs = self._side(p)
        p.expect("==")
        rhs = self._side(p)
        p.expect_end()
        if isinstance(lhs, RingElement) and isinstance(rhs, RingElement):
            a = reduce_to_class(lhs, self.rctx)
            b = reduce_to_class(rhs, self.rctx)
            ok = a == b
            return Record(name, PASS if ok else FAIL, str(a), str(b), "equal grasper classes" if ok else "grasper classes differ")
        lhs, rhs = (calc.PsR(s) if isinstance(s, RingElement) else s for s in (lhs, rhs))
        cert = calc.diffeo_equal(lhs, rhs, self.rctx)
        return Record(name, PASS if cert else FAIL, cert.lhs, cert.rhs, f"{cert.status}: {cert.details}")

    def _reduce(self, p: Parser, name: str) -> Record:
        value = p.ring()
        p.expect_end()
        cls = reduce_to_class(value, self.rctx)
        details = ""
        if self.rctx.is_s4:
            details = f"ps: {calc.s4_ps_normal_form(cls)} mod 2"
        return Record(name, PASS, str(value), str(cls), details)

    def _eval(self, p: Parser, name: str) -> Record:
        expr = p.expr()
        p.expect_end()
        rctx = self.rctx.with_mode(WEAK) if calc.needs_weak_mode(expr) else self.rctx
        nf = calc.eval_diffeo_expr(expr, rctx)
        return Record(name, PASS, str(expr), str(nf), f"{rctx.mode} reduction, {nf.manifold_tag}")


def run_script(source: str, suite: str = "script") -> Report:
    """Run ``source``; raises :class:`ParseError` on malformed input."""
    return ScriptRunner(suite).run(source)
