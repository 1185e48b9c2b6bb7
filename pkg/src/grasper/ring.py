"""The integral group ring Z[pi] of a :class:`~grasper.words.GroupSpec`."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import CoefficientOverflow, ContextMismatch, InvalidImage, MissingImage
from .words import GroupSpec, Word, check_int64, word_invert, word_multiply, word_power


def _checked(c: int) -> int:
    return check_int64(c, CoefficientOverflow)


@dataclass(frozen=True)
class RingElement:
    """A finite integer combination of words.

    ``terms`` holds ``(word, coefficient)`` pairs sorted by
    :func:`~grasper.words.compare_words`, with no zero coefficients, so
    structural equality is equality in the ring.
    """

    ctx: GroupSpec
    terms: tuple[tuple[Word, int], ...] = ()

    @classmethod
    def from_dict(cls, ctx: GroupSpec, coeffs: Mapping[Word, int]) -> RingElement:
        items = []
        for w, c in coeffs.items():
            if w.ctx != ctx:
                raise ContextMismatch(f"term {w} is not in {ctx.describe()}")
            if c:
                items.append((w, _checked(c)))
        items.sort(key=lambda item: item[0].sort_key())
        return cls(ctx, tuple(items))

    @classmethod
    def from_terms(cls, ctx: GroupSpec, terms: Iterable[tuple[int, Word]]) -> RingElement:
        acc: dict[Word, int] = {}
        for c, w in terms:
            acc[w] = _checked(acc.get(w, 0) + c)
        return cls.from_dict(ctx, acc)

    @classmethod
    def word(cls, w: Word, coeff: int = 1) -> RingElement:
        return cls.from_dict(w.ctx, {w: coeff})

    @classmethod
    def scalar(cls, ctx: GroupSpec, n: int) -> RingElement:
        return cls.from_dict(ctx, {ctx.identity: n})

    @classmethod
    def zero(cls, ctx: GroupSpec) -> RingElement:
        return cls(ctx)

    def as_dict(self) -> dict[Word, int]:
        return dict(self.terms)

    def coefficient(self, w: Word) -> int:
        return self.as_dict().get(w, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def monomial(self) -> Word | None:
        """The word if this element is a single word with coefficient 1."""
        if len(self.terms) == 1 and self.terms[0][1] == 1:
            return self.terms[0][0]
        return None

    def __add__(self, other: RingElement) -> RingElement:
        return ring_add(self, other)

    def __sub__(self, other: RingElement) -> RingElement:
        return ring_add(self, other.scale(-1))

    def __neg__(self) -> RingElement:
        return self.scale(-1)

    def __mul__(self, other: RingElement | Word | int) -> RingElement:
        if isinstance(other, int):
            return self.scale(other)
        if isinstance(other, Word):
            other = RingElement.word(other)
        return ring_multiply(self, other)

    def __rmul__(self, other: Word | int) -> RingElement:
        if isinstance(other, int):
            return self.scale(other)
        return ring_multiply(RingElement.word(other), self)

    def scale(self, k: int) -> RingElement:
        if k == 0:
            return RingElement(self.ctx)
        return RingElement(self.ctx, tuple((w, _checked(c * k)) for w, c in self.terms))

    def bar(self) -> RingElement:
        return involution_bar(self)

    def __str__(self) -> str:
        return render_terms(self.terms)

    def __repr__(self) -> str:
        return f"RingElement({str(self)!r})"


def render_terms(terms: Iterable[tuple[object, int]]) -> str:
    """Render ``(word, coeff)`` pairs with the ring grammar, e.g. ``2t - t^-1``."""
    out: list[str] = []
    for w, c in terms:
        body = str(w)
        mag = abs(c)
        if body == "1":
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}{body}"
        if not out:
            out.append(("-" if c < 0 else "") + text)
        else:
            out.append((" - " if c < 0 else " + ") + text)
    return "".join(out) if out else "0"


def _same_ctx(a: RingElement, b: RingElement) -> None:
    if a.ctx != b.ctx:
        raise ContextMismatch(f"{a.ctx.describe()} vs {b.ctx.describe()}")


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    _same_ctx(a, b)
    acc = a.as_dict()
    for w, c in b.terms:
        acc[w] = _checked(acc.get(w, 0) + c)
    return RingElement.from_dict(a.ctx, acc)


def ring_scale(k: int, a: RingElement) -> RingElement:
    return a.scale(k)


def ring_negate(a: RingElement) -> RingElement:
    return a.scale(-1)


def ring_multiply(a: RingElement, b: RingElement) -> RingElement:
    _same_ctx(a, b)
    acc: dict[Word, int] = {}
    for wa, ca in a.terms:
        for wb, cb in b.terms:
            w = word_multiply(wa, wb)
            acc[w] = _checked(acc.get(w, 0) + _checked(ca * cb))
    return RingElement.from_dict(a.ctx, acc)


def involution_bar(a: RingElement) -> RingElement:
    """Send every group element to its inverse, keeping coefficients."""
    return RingElement.from_dict(a.ctx, {word_invert(w): c for w, c in a.terms})


def map_word(w: Word, images: Mapping[str, Word], target: GroupSpec) -> Word:
    """Image of ``w`` under the homomorphism given on generators."""
    result = target.identity
    for name, exp in w.letters():
        try:
            image = images[name]
        except KeyError:
            raise MissingImage(name) from None
        if image.ctx != target:
            raise ContextMismatch(f"image of {name} is not in {target.describe()}")
        result = word_multiply(result, word_power(image, exp))
    return result


def _check_images(ctx: GroupSpec, images: Mapping[str, Word]) -> None:
    for factor in ctx.factors:
        if factor.kind == "cyclic":
            name = factor.names[0]
            if name in images and not word_power(images[name], factor.order).is_identity():
                raise InvalidImage(f"image of {name} must have order dividing {factor.order}")


def apply_generator_map(
    a: RingElement, images: Mapping[str, Word], target: GroupSpec
) -> RingElement:
    """Apply the ring map induced by ``images`` (generator name -> target word)."""
    _check_images(a.ctx, images)
    acc: dict[Word, int] = {}
    for w, c in a.terms:
        image = map_word(w, images, target)
        acc[image] = _checked(acc.get(image, 0) + c)
    return RingElement.from_dict(target, acc)


def identity_images(source: GroupSpec, target: GroupSpec, **overrides: Word) -> dict[str, Word]:
    """Images sending each generator of ``source`` to the same-named generator of
    ``target`` where one exists; ``overrides`` take precedence."""
    images = {name: target.gen(name) for name in source.generator_names if target.has(name)}
    images.update(overrides)
    return images


def coerce(a: RingElement, target: GroupSpec) -> RingElement:
    """Move ``a`` into ``target`` by generator name; fails on unknown letters."""
    if a.ctx == target:
        return a
    return apply_generator_map(a, identity_images(a.ctx, target), target)


def coerce_word(w: Word, target: GroupSpec) -> Word:
    if w.ctx == target:
        return w
    return map_word(w, identity_images(w.ctx, target), target)


def drop_identity_coeff(a: RingElement) -> RingElement:
    """Remove the coefficient at the identity element."""
    return RingElement(a.ctx, tuple((w, c) for w, c in a.terms if not w.is_identity()))


def dax_from_double_points(points: Iterable[tuple[int, Word]], ctx: GroupSpec | None = None) -> RingElement:
    """Signed sum of double-point loops, ``sum(sign * loop)``.

    ``ctx`` is only needed when ``points`` is empty.
    """
    points = list(points)
    if not points:
        if ctx is None:
            raise ValueError("an empty double-point list needs an explicit ctx")
        return RingElement.zero(ctx)
    ctx = ctx or points[0][1].ctx
    for sign, _ in points:
        if sign not in (-1, 1):
            raise ValueError(f"double point sign must be +1 or -1, got {sign}")
    return RingElement.from_terms(ctx, points)


def parse_ring(text: str, ctx: GroupSpec) -> RingElement:
    from .grammar import parse_ring as _parse

    return _parse(text, ctx)
