"""From theta graphs, barbells and semisimple graspers to grasper classes.

Bar words live in ``B * <y>`` where ``B = G * <x>``: ``x`` is the meridian of
the first cuff and ``y`` the meridian of the second.  The inclusion of the
complement of the second cuff sends ``y`` to 1, and when the first cuff is
unknotted its meridian ``x`` is the surgery generator ``t``.  Bar words may
also use ``t`` directly.

All mapping classes are compared after the homomorphism ``ps o r``: a
composite of diffeomorphisms becomes a sum of grasper classes, an inverse
becomes a negation.  Loops that only rotate the circle or its framing are not
representable here; they map to the identity under ``ps``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    BaseLettersPresent,
    ContextMismatch,
    CuffKnotted,
    NonBaseElement,
    NotS4Context,
    NoYLetter,
    UnsupportedContext,
)
from .quotient import FULL, WEAK, GrasperClass, ReductionContext, reduce_to_class
from .ring import (
    RingElement,
    apply_generator_map,
    coerce,
    coerce_word,
    drop_identity_coeff,
    identity_images,
    involution_bar,
    map_word,
)
from .words import RESERVED, GroupSpec, Word, word_invert, word_multiply

# Compose/Inverse keep every route's class; this caps the combinatorics.
MAX_ROUTES = 32


# -- contexts and the map i_L ------------------------------------------------


def bar_context(base: Iterable = ()) -> GroupSpec:
    """``G * <t> * <x> * <y>``: the group in which bar words are written."""
    return GroupSpec.build(base, t=True, x=True, y=True)


def surgery_context(ctx: GroupSpec) -> GroupSpec:
    """``G * <t>`` for the base of ``ctx``."""
    return ctx.with_reserved(t=True)


def leaf_images(source: GroupSpec, target: GroupSpec) -> dict[str, Word]:
    """``y -> 1`` (inclusion of the leaf complement) and ``x -> t``."""
    overrides = {}
    if source.has("y"):
        overrides["y"] = target.identity
    if source.has("x"):
        overrides["x"] = target.gen("t")
    return identity_images(source, target, **overrides)


def include_leaf(a: RingElement | Word, target: GroupSpec) -> RingElement | Word:
    images = leaf_images(a.ctx, target)
    if isinstance(a, Word):
        return map_word(a, images, target)
    return apply_generator_map(a, images, target)


# -- semisimple graspers and theta classes ------------------------------------


def sref_class(xi: RingElement, rctx: ReductionContext) -> GrasperClass:
    """Class of the semisimple grasper family on ``xi``: ``r(xi + bar(xi))``.

    All four semisimple variants give this same class.
    """
    xi = coerce(xi, rctx.ctx)
    return reduce_to_class(xi + involution_bar(xi), rctx)


@dataclass(frozen=True)
class ThetaData:
    """An embedded theta graph, determined by two elements of the base group."""

    g1: Word
    g2: Word

    def __post_init__(self):
        for w in (self.g1, self.g2):
            bad = [name for name, _ in w.letters() if name in RESERVED]
            if bad:
                raise NonBaseElement(f"theta data {w} uses {bad[0]}")

    def argument(self, ctx: GroupSpec) -> Word:
        """``g1 g2^-1 t g2`` in ``ctx``."""
        g1 = coerce_word(self.g1, ctx)
        g2 = coerce_word(self.g2, ctx)
        return g1 * g2.inverse() * ctx.gen("t") * g2


def theta_class(d: ThetaData, rctx: ReductionContext) -> GrasperClass:
    if rctx.mode != FULL:
        raise UnsupportedContext("theta classes need the full surgered context")
    return sref_class(RingElement.word(d.argument(rctx.ctx)), rctx)


# -- barbells -------------------------------------------------------------


@dataclass(frozen=True)
class BarbellSpec:
    """A barbell given by its bar word; the cuff flags say which cuffs bound balls."""

    bar_word: Word
    cuff1_unknotted: bool = True
    cuff2_unknotted: bool = True

    def __post_init__(self):
        if not self.bar_word.ctx.has("y"):
            raise ContextMismatch("bar words need the y generator")


Factor = tuple[Word, int, Word]


def barword_factorize(W: Word) -> list[Factor]:
    """Split ``W`` as ``prod f_i y^e_i h_i`` with ``e_i = +-1``.

    Segments between consecutive y letters go into the ``f``; only the last
    ``h`` is nontrivial.
    """
    y_index = W.ctx.factor_of("y")
    if y_index is None:
        raise ContextMismatch("bar words need the y generator")
    ctx = W.ctx
    segments: list[list] = [[]]
    signs: list[int] = []
    for fi, elem in W.syllables:
        if fi == y_index:
            step = 1 if elem > 0 else -1
            for _ in range(abs(elem)):
                signs.append(step)
                segments.append([])
        else:
            segments[-1].append((fi, elem))
    if not signs:
        raise NoYLetter(f"bar word {W} has no y letter")
    words = [Word(ctx, tuple(seg)) for seg in segments]
    r = len(signs)
    return [
        (words[i], signs[i], words[r] if i == r - 1 else ctx.identity)
        for i in range(r)
    ]


def sref_argument_from_factors(factors: Sequence[Factor], target: GroupSpec) -> RingElement:
    """``w * sum e_i f_i^-1 w_{i-1}^-1`` with ``w_i = prod_{j<=i} f_j h_j`` (y -> 1)."""
    prefix = target.identity
    partial: list[tuple[int, Word]] = []
    for f, eps, h in factors:
        f_img = include_leaf(f, target)
        # w_{i-1} f_i is everything before the i-th y letter
        partial.append((eps, word_multiply(prefix, f_img)))
        prefix = word_multiply(word_multiply(prefix, f_img), include_leaf(h, target))
    w = prefix
    return RingElement.from_terms(target, ((eps, w * word_invert(before)) for eps, before in partial))


def barbell_sref_argument(spec: BarbellSpec, target: GroupSpec | None = None) -> RingElement:
    """The ring element ``h`` with ``bg(spec) = ps o sref(h)``."""
    if not spec.cuff2_unknotted:
        raise CuffKnotted("the explicit formula needs the second cuff unknotted")
    target = target or surgery_context(spec.bar_word.ctx)
    try:
        factors = barword_factorize(spec.bar_word)
    except NoYLetter:
        return RingElement.zero(target)  # the bar never passes the second cuff
    return sref_argument_from_factors(factors, target)


def barbell_class(spec: BarbellSpec, rctx: ReductionContext) -> GrasperClass:
    if not spec.cuff1_unknotted and rctx.mode == FULL:
        raise CuffKnotted("a knotted first cuff only supports weak reduction")
    return sref_class(barbell_sref_argument(spec, rctx.ctx), rctx)


def dual_bar_word(W: Word) -> Word:
    """Bar word seen from the other cuff: reversed, with x and y exchanged."""
    letters: list[tuple[str, int]] = []
    for name, exp in W.letters():
        if name not in ("x", "y"):
            raise BaseLettersPresent(f"{W} contains {name}; duality needs an x,y-only word")
        step = 1 if exp > 0 else -1
        letters.extend([(name, step)] * abs(exp))
    swap = {"x": "y", "y": "x"}
    if not W.ctx.has("x"):
        raise ContextMismatch("dual bar words need the x generator")
    return Word.from_letters(W.ctx, ((swap[n], e) for n, e in reversed(letters)))


def simple_null_class(
    W: Word, rctx: ReductionContext, dax_term: RingElement | None = None
) -> GrasperClass:
    """Grasper class of a simple-null grasper with bar word ``W``.

    The reduced intersection pairing is read off the y letters of ``W``: the
    i-th letter contributes ``-e_i * W f_i^-1 (prod_{j<i} f_j y^e_j h_j)^-1``.
    ``dax_term`` is the Dax invariant of the bounding 3-sphere in the leaf
    complement; it is 0 when the leaf bounds an embedded ball.
    """
    ctx = W.ctx
    target = rctx.ctx
    pairing_terms: list[tuple[int, Word]] = []
    prefix = ctx.identity  # prod_{j<i} f_j y^e_j h_j, y letters kept
    try:
        factors = barword_factorize(W)
    except NoYLetter:
        factors = []
    for f, eps, h in factors:
        loop = W * word_invert(prefix * f)
        pairing_terms.append((-eps, include_leaf(loop, target)))
        prefix = prefix * f * ctx.gen("y", eps) * h
    pairing = drop_identity_coeff(RingElement.from_terms(target, pairing_terms))
    total = -pairing - involution_bar(pairing)
    if dax_term is not None and not dax_term.is_zero():
        dax_term = coerce(dax_term, ctx)
        total = total + include_leaf(RingElement.word(W) * dax_term * W.inverse(), target)
    return reduce_to_class(total, rctx)


def s4_ps_normal_form(c: GrasperClass) -> int:
    """Image of ``c`` in the mod-2 group ``ps o r(Z<t, t^2, ...>)`` for S^4.

    The barbell symmetry ``bg(W)^-1 = bg(dual W)`` applied to ``W = y x^i``
    gives ``[t^i] - [t^(i-1)] + i[t] = 0``, hence ``2[t] = 0`` and
    ``[t^i] = (i(i+1)/2) [t]``.
    """
    if not c.rctx.is_s4:
        raise NotS4Context("the ps normal form is only computed for S^4")
    t_index = c.rctx.t_index
    total = 0
    for rep, coeff in c.terms:
        ((fi, k),) = rep.syllables
        assert fi == t_index and k >= 1, rep
        total += coeff * (k * (k + 1) // 2)
    return total % 2


# -- diffeomorphism expressions ---------------------------------------------


class DiffeoExpr:
    """Base class; ``*`` composes, ``**`` takes powers."""

    def __mul__(self, other: DiffeoExpr) -> DiffeoExpr:
        return Compose((self, other))

    def __pow__(self, n: int) -> DiffeoExpr:
        return Power(self, n)

    def inverse(self) -> DiffeoExpr:
        return Inverse(self)


@dataclass(frozen=True)
class Identity(DiffeoExpr):
    def __str__(self) -> str:
        return "id"


@dataclass(frozen=True)
class Wat(DiffeoExpr):
    theta: ThetaData

    def __str__(self) -> str:
        return f"wat({self.theta.g1},{self.theta.g2})"


@dataclass(frozen=True)
class Bg(DiffeoExpr):
    spec: BarbellSpec

    def __str__(self) -> str:
        name = "bg" if self.spec.cuff1_unknotted else "bg_knotted1"
        return f"{name}({self.spec.bar_word})"


@dataclass(frozen=True)
class Sref(DiffeoExpr):
    xi: RingElement
    keyword = "sref"

    def __str__(self) -> str:
        return f"{self.keyword}({self.xi})"


class SrefR(Sref):
    keyword = "sref_r"


class SrefL(Sref):
    keyword = "sref_l"


class SrefRR(Sref):
    keyword = "sref_rr"


class SrefLower(Sref):
    keyword = "sref_lower"


@dataclass(frozen=True)
class PsR(DiffeoExpr):
    xi: RingElement

    def __str__(self) -> str:
        return f"r({self.xi})"


@dataclass(frozen=True)
class Compose(DiffeoExpr):
    parts: tuple[DiffeoExpr, ...]

    def __str__(self) -> str:
        return " * ".join(_wrap(p) for p in self.parts) if self.parts else "id"


@dataclass(frozen=True)
class Inverse(DiffeoExpr):
    expr: DiffeoExpr

    def __str__(self) -> str:
        return f"inv({self.expr})"


@dataclass(frozen=True)
class Power(DiffeoExpr):
    expr: DiffeoExpr
    n: int

    def __str__(self) -> str:
        return f"{_wrap(self.expr)}^{self.n}"


def _wrap(e: DiffeoExpr) -> str:
    return f"({e})" if isinstance(e, (Compose, Power)) else str(e)


def needs_weak_mode(e: DiffeoExpr) -> bool:
    """True when some barbell has a knotted first cuff."""
    if isinstance(e, Bg):
        return not e.spec.cuff1_unknotted
    if isinstance(e, Compose):
        return any(needs_weak_mode(p) for p in e.parts)
    if isinstance(e, (Inverse, Power)):
        return needs_weak_mode(e.expr)
    return False


@dataclass(frozen=True)
class DiffeoNormalForm:
    """Normal form of a mapping class under ``ps o r``.

    ``routes`` lists the class computed along every recorded inversion route
    (the first entry is ``cls``); each is a valid representative.
    ``s4_scalar`` is set only for S^4.
    """

    cls: GrasperClass
    manifold_tag: str
    s4_scalar: int | None = None
    routes: tuple[GrasperClass, ...] = field(default=())

    def __str__(self) -> str:
        if self.s4_scalar is not None:
            return f"{self.cls} [ps: {self.s4_scalar} mod 2]"
        return str(self.cls)


def _routes(e: DiffeoExpr, rctx: ReductionContext) -> list[GrasperClass]:
    """Classes of ``e`` along every inversion route; the first uses negation only."""
    if isinstance(e, Identity):
        return [GrasperClass.zero(rctx)]
    if isinstance(e, Wat):
        return [theta_class(e.theta, rctx)]
    if isinstance(e, Bg):
        return [barbell_class(e.spec, rctx)]
    if isinstance(e, Sref):
        return [sref_class(e.xi, rctx)]
    if isinstance(e, PsR):
        return [reduce_to_class(e.xi, rctx)]
    if isinstance(e, Compose):
        combos: list[GrasperClass] = [GrasperClass.zero(rctx)]
        for part in e.parts:
            options = _routes(part, rctx)
            combos = _dedupe(a + b for a, b in itertools.product(combos, options))
        return combos
    if isinstance(e, Inverse):
        routes = [-c for c in _routes(e.expr, rctx)]
        if isinstance(e.expr, Bg):
            try:
                dual = BarbellSpec(
                    dual_bar_word(e.expr.spec.bar_word),
                    e.expr.spec.cuff2_unknotted,
                    e.expr.spec.cuff1_unknotted,
                )
            except BaseLettersPresent:
                pass  # negation is always valid
            else:
                routes = _dedupe(routes + [barbell_class(dual, rctx)])
        return routes
    if isinstance(e, Power):
        return [c.scale(e.n) for c in _routes(e.expr, rctx)]
    raise TypeError(f"not a diffeomorphism expression: {e!r}")


def _dedupe(classes: Iterable[GrasperClass]) -> list[GrasperClass]:
    out: list[GrasperClass] = []
    seen = set()
    for c in classes:
        if c.terms not in seen:
            seen.add(c.terms)
            out.append(c)
        if len(out) >= MAX_ROUTES:
            break
    return out


class RouteDisagreement(AssertionError):
    """Two inversion routes gave different S^4 normal forms."""


def eval_diffeo_expr(e: DiffeoExpr, rctx: ReductionContext) -> DiffeoNormalForm:
    if needs_weak_mode(e) and rctx.mode == FULL:
        raise CuffKnotted("expression has a barbell with knotted first cuff; use weak mode")
    routes = tuple(_routes(e, rctx))
    scalar = None
    if rctx.is_s4:
        scalars = {s4_ps_normal_form(c) for c in routes}
        if len(scalars) != 1:
            raise RouteDisagreement(f"inversion routes disagree for {e}: {sorted(scalars)}")
        (scalar,) = scalars
    return DiffeoNormalForm(routes[0], rctx.tag, scalar, routes)


CERTIFIED_EQUAL = "CertifiedEqual"
NOT_CERTIFIED = "NotCertified"


@dataclass(frozen=True)
class Certificate:
    """Outcome of comparing two expressions; never a proof of inequality."""

    status: str
    lhs: str
    rhs: str
    details: str = ""

    def __bool__(self) -> bool:
        return self.status == CERTIFIED_EQUAL


def diffeo_equal(a: DiffeoExpr, b: DiffeoExpr, rctx: ReductionContext) -> Certificate:
    if (needs_weak_mode(a) or needs_weak_mode(b)) and rctx.mode == FULL:
        rctx = rctx.with_mode(WEAK)
    na = eval_diffeo_expr(a, rctx)
    nb = eval_diffeo_expr(b, rctx)
    lhs, rhs = str(na), str(nb)
    if na.s4_scalar is not None:
        if na.s4_scalar == nb.s4_scalar:
            return Certificate(CERTIFIED_EQUAL, lhs, rhs, "equal ps normal form in pi0 Diff(S4)")
        return Certificate(NOT_CERTIFIED, lhs, rhs, "ps normal forms differ")
    if na.cls == nb.cls:
        return Certificate(CERTIFIED_EQUAL, lhs, rhs, "equal grasper classes")
    keys_b = {c.terms for c in nb.routes}
    if any(c.terms in keys_b for c in na.routes):
        return Certificate(CERTIFIED_EQUAL, lhs, rhs, "equal grasper classes via the dual bar word route")
    return Certificate(NOT_CERTIFIED, lhs, rhs, "grasper classes differ; ps may have further kernel")


__all__ = [
    "BarbellSpec",
    "Bg",
    "Certificate",
    "Compose",
    "DiffeoExpr",
    "DiffeoNormalForm",
    "Identity",
    "Inverse",
    "Power",
    "PsR",
    "Sref",
    "SrefL",
    "SrefLower",
    "SrefR",
    "SrefRR",
    "ThetaData",
    "Wat",
    "bar_context",
    "barbell_class",
    "barbell_sref_argument",
    "barword_factorize",
    "diffeo_equal",
    "dual_bar_word",
    "eval_diffeo_expr",
    "s4_ps_normal_form",
    "simple_null_class",
    "sref_argument_from_factors",
    "sref_class",
    "surgery_context",
    "theta_class",
]
