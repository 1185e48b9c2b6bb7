"""Normal forms for grasper classes: Z[pi] modulo the Dax kernel relations.

For ``pi = G * <t>`` the kernel contains ``1`` and ``h + h^-1 t^-1`` for every
``h``.  Writing ``sigma(h) = h^-1 t^-1``, applying the relation twice gives
``h == t h t^-1``, so the quotient is the free abelian group on pairs of
t-conjugation orbits ``{orbit(h), orbit(sigma h)}`` with ``[sigma h] = -[h]``.
An orbit is never paired with itself: the t-exponent sum ``e`` of ``h``
becomes ``-e - 1`` under ``sigma``, and ``2e = -1`` has no integer solution.

In ``full`` mode (``X = M # S^1 x S^3`` with ``t`` the surgery generator) the
whole of ``Z[G]`` is killed as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import CoefficientOverflow, ContextMismatch, NoTFactor, UnsupportedWeakContext
from .ring import RingElement, coerce, render_terms
from .words import GroupSpec, Word, check_int64, word_invert, word_multiply

FULL = "full"
WEAK = "weak"


@dataclass(frozen=True)
class ReductionContext:
    """Group ``G * <t>`` plus the relation set in force.

    The basepoint class is always the generator ``t``.
    """

    ctx: GroupSpec
    mode: str = FULL
    tag: str = ""

    def __post_init__(self):
        if self.mode not in (FULL, WEAK):
            raise ValueError(f"mode must be {FULL!r} or {WEAK!r}")
        t_index = self.ctx.factor_of("t")
        if t_index is None:
            if self.mode == WEAK:
                raise UnsupportedWeakContext("weak reduction needs t as a free Z factor")
            raise NoTFactor("reduction needs a t factor")
        if self.ctx.factors[t_index].kind != "integer":
            raise UnsupportedWeakContext("t must generate a free infinite cyclic factor")
        if self.ctx.has("x") or self.ctx.has("y"):
            raise ContextMismatch("reduction contexts must not contain x or y")
        if not self.tag:
            tag = "S4" if self.ctx.base_is_trivial else f"pi1M = {GroupSpec(self.ctx.base).describe()}"
            object.__setattr__(self, "tag", tag)

    @classmethod
    def for_base(cls, base: Iterable = (), mode: str = FULL, tag: str = "") -> ReductionContext:
        return cls(GroupSpec.build(base, t=True), mode, tag)

    @property
    def t_index(self) -> int:
        return self.ctx.factor_of("t")

    @property
    def is_s4(self) -> bool:
        return self.ctx.base_is_trivial

    def with_mode(self, mode: str) -> ReductionContext:
        return ReductionContext(self.ctx, mode, self.tag)


def _checked(c: int) -> int:
    return check_int64(c, CoefficientOverflow)


def _has_t(w: Word, t_index: int) -> bool:
    return any(fi == t_index for fi, _ in w.syllables)


def orbit_canonical_rep(h: Word, rctx: ReductionContext) -> Word:
    """Representative of ``{t^k h t^-k}`` that is a t-power or starts outside <t>."""
    if h.ctx != rctx.ctx:
        raise ContextMismatch("word is not in the reduction context")
    t_index = rctx.t_index
    syl = h.syllables
    if len(syl) <= 1 or syl[0][0] != t_index:
        return h
    # h = t^a u t^b with u starting off <t>; conjugate by t^-a to get u t^(a+b)
    head = Word(h.ctx, syl[:1])
    rest = Word(h.ctx, syl[1:])
    return word_multiply(rest, head)


def _sigma(h: Word, rctx: ReductionContext) -> Word:
    return word_multiply(word_invert(h), rctx.ctx.gen("t", -1))


def sigma_partner(h: Word, rctx: ReductionContext) -> Word:
    """Canonical representative of the orbit of ``h^-1 t^-1``."""
    return orbit_canonical_rep(_sigma(h, rctx), rctx)


def _vanishes(rep: Word, rctx: ReductionContext) -> bool:
    if rctx.mode == FULL:
        return not _has_t(rep, rctx.t_index)
    return rep.is_identity()


def _canonical_term(h: Word, rctx: ReductionContext) -> tuple[Word, int] | None:
    """(representative, sign) with ``[h] = sign * [representative]``; None if zero."""
    r1 = orbit_canonical_rep(h, rctx)
    r2 = sigma_partner(h, rctx)
    # both reps must be inspected: g^-1 t^-1 dies because its partner is g
    if _vanishes(r1, rctx) or _vanishes(r2, rctx):
        return None
    if r1.sort_key() < r2.sort_key():
        return r1, 1
    return r2, -1


@dataclass(frozen=True)
class GrasperClass:
    """Element of ``Z[pi]/ker``: coefficients on canonical pair representatives."""

    rctx: ReductionContext
    terms: tuple[tuple[Word, int], ...] = ()

    @classmethod
    def _from_dict(cls, rctx: ReductionContext, acc: dict[Word, int]) -> GrasperClass:
        items = sorted(((w, c) for w, c in acc.items() if c), key=lambda it: it[0].sort_key())
        return cls(rctx, tuple(items))

    @classmethod
    def zero(cls, rctx: ReductionContext) -> GrasperClass:
        return cls(rctx)

    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> dict[Word, int]:
        return dict(self.terms)

    def coefficient(self, rep: Word) -> int:
        return self.as_dict().get(rep, 0)

    def _check(self, other: GrasperClass) -> None:
        if self.rctx != other.rctx:
            raise ContextMismatch("grasper classes from different reduction contexts")

    def __add__(self, other: GrasperClass) -> GrasperClass:
        return class_add(self, other)

    def __neg__(self) -> GrasperClass:
        return self.scale(-1)

    def __sub__(self, other: GrasperClass) -> GrasperClass:
        return class_add(self, other.scale(-1))

    def scale(self, k: int) -> GrasperClass:
        if k == 0:
            return GrasperClass(self.rctx)
        return GrasperClass(self.rctx, tuple((w, _checked(c * k)) for w, c in self.terms))

    def __mul__(self, k: int) -> GrasperClass:
        return self.scale(k)

    __rmul__ = __mul__

    def to_ring(self) -> RingElement:
        """A ring element lifting this class (its representatives)."""
        return RingElement.from_dict(self.rctx.ctx, self.as_dict())

    def __str__(self) -> str:
        return render_terms(self.terms)

    def __repr__(self) -> str:
        return f"GrasperClass({str(self)!r}, {self.rctx.mode})"


def class_add(a: GrasperClass, b: GrasperClass) -> GrasperClass:
    a._check(b)
    acc = a.as_dict()
    for w, c in b.terms:
        acc[w] = _checked(acc.get(w, 0) + c)
    return GrasperClass._from_dict(a.rctx, acc)


def reduce_to_class(a: RingElement, rctx: ReductionContext) -> GrasperClass:
    """Normal form of ``a`` in the quotient by the kernel relations."""
    if a.ctx != rctx.ctx:
        a = coerce(a, rctx.ctx)
    acc: dict[Word, int] = {}
    for h, c in a.terms:
        term = _canonical_term(h, rctx)
        if term is None:
            continue
        rep, sign = term
        acc[rep] = _checked(acc.get(rep, 0) + sign * c)
    return GrasperClass._from_dict(rctx, acc)


def class_of(text_or_word: Word | str, rctx: ReductionContext) -> GrasperClass:
    """Convenience: the class of a single word."""
    w = rctx.ctx.word(text_or_word) if isinstance(text_or_word, str) else text_or_word
    return reduce_to_class(RingElement.word(w), rctx)
