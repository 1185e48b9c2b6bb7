"""Words in free products of cyclic and free groups.

A :class:`GroupSpec` is an ordered free product of base factors followed by
the reserved infinite cyclic factors ``t``, ``x`` and ``y`` (in that order,
each optional).  A :class:`Word` is stored in free-product normal form: a
tuple of ``(factor index, element)`` syllables with adjacent syllables in
distinct factors and every element nontrivial.  Normal forms are unique, so
``==`` on words is equality in the group.

Element encodings per factor kind:

* ``integer``: a nonzero int exponent;
* ``cyclic``: an int in ``1..k-1``;
* ``free``: a nonempty tuple of ``(generator index, nonzero exponent)`` runs,
  adjacent runs on distinct generators (a freely reduced word).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator

from .errors import (
    ContextMismatch,
    ExponentOverflow,
    GroupSpecError,
    NoTFactor,
    UnknownGenerator,
)

RESERVED = ("t", "x", "y")
INT64_MAX = 2**63 - 1

KINDS = ("trivial", "integer", "cyclic", "free")


def check_int64(value: int, exc: type[Exception] = ExponentOverflow) -> int:
    if not -INT64_MAX - 1 <= value <= INT64_MAX:
        raise exc(f"{value} does not fit in a signed 64-bit integer")
    return value


def _encode_int(e: int) -> int:
    # 1, -1, 2, -2, ... so positive powers sort before their inverses
    return 2 * e - 1 if e > 0 else -2 * e


@dataclass(frozen=True)
class FactorSpec:
    """One free factor: trivial, Z, Z/k or a free group on named letters."""

    kind: str
    names: tuple[str, ...] = ()
    order: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GroupSpecError(
                f"unsupported factor kind {self.kind!r}; only free products of "
                "trivial, Z, Z/k and free factors are decidable here"
            )
        if self.kind == "trivial" and self.names:
            raise GroupSpecError("the trivial factor has no generators")
        if self.kind in ("integer", "cyclic") and len(self.names) != 1:
            raise GroupSpecError(f"a {self.kind} factor needs exactly one generator name")
        if self.kind == "free" and not self.names:
            raise GroupSpecError("a free factor needs at least one generator")
        if self.kind == "cyclic":
            if self.order is None or self.order < 2:
                raise GroupSpecError("finite cyclic factors need order k >= 2")
        elif self.order is not None:
            raise GroupSpecError(f"order is meaningless for a {self.kind} factor")
        if len(set(self.names)) != len(self.names):
            raise GroupSpecError(f"repeated generator in {self.names}")

    @classmethod
    def trivial(cls) -> FactorSpec:
        return cls("trivial")

    @classmethod
    def integer(cls, name: str) -> FactorSpec:
        return cls("integer", (name,))

    @classmethod
    def cyclic(cls, name: str, order: int) -> FactorSpec:
        return cls("cyclic", (name,), order)

    @classmethod
    def free(cls, *names: str) -> FactorSpec:
        return cls("free", tuple(names))

    def describe(self) -> str:
        if self.kind == "trivial":
            return "1"
        if self.kind == "integer":
            return f"Z<{self.names[0]}>"
        if self.kind == "cyclic":
            return f"Z/{self.order}<{self.names[0]}>"
        return f"F<{','.join(self.names)}>"

    # -- element arithmetic -------------------------------------------------

    def letter(self, local: int, exp: int) -> Any:
        """The element ``generator**exp``, or None when it is trivial."""
        check_int64(exp)
        if self.kind == "integer":
            return exp or None
        if self.kind == "cyclic":
            return exp % self.order or None
        if self.kind == "free":
            return ((local, exp),) if exp else None
        return None

    def combine(self, a: Any, b: Any) -> Any:
        """Product of two nontrivial elements; None when it is trivial."""
        if self.kind == "integer":
            return check_int64(a + b) or None
        if self.kind == "cyclic":
            return (a + b) % self.order or None
        runs = list(a)
        for gen, exp in b:
            if runs and runs[-1][0] == gen:
                total = check_int64(runs[-1][1] + exp)
                runs.pop()
                if total:
                    runs.append((gen, total))
            else:
                runs.append((gen, exp))
        return tuple(runs) or None

    def inverse(self, a: Any) -> Any:
        if self.kind == "integer":
            return -a
        if self.kind == "cyclic":
            return self.order - a
        return tuple((gen, -exp) for gen, exp in reversed(a))

    def encode(self, a: Any) -> Any:
        if self.kind == "integer":
            return _encode_int(a)
        if self.kind == "cyclic":
            return a
        return tuple((gen, _encode_int(exp)) for gen, exp in a)

    def render(self, a: Any) -> list[str]:
        if self.kind == "integer":
            return [_power(self.names[0], a)]
        if self.kind == "cyclic":
            return [_power(self.names[0], a)]
        return [_power(self.names[gen], exp) for gen, exp in a]

    def letters(self, a: Any) -> Iterator[tuple[str, int]]:
        """The element as ``(generator name, exponent)`` pairs."""
        if self.kind in ("integer", "cyclic"):
            yield self.names[0], a
        else:
            for gen, exp in a:
                yield self.names[gen], exp


def _power(name: str, exp: int) -> str:
    return name if exp == 1 else f"{name}^{exp}"


@dataclass(frozen=True)
class GroupSpec:
    """Free product of base factors followed by the reserved t, x, y factors.

    Use :meth:`build` to construct one; it places the reserved factors last in
    the canonical order.  Equality is structural.
    """

    factors: tuple[FactorSpec, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        index: dict[str, tuple[int, int]] = {}
        seen_reserved: list[str] = []
        for fi, factor in enumerate(self.factors):
            if not isinstance(factor, FactorSpec):
                raise GroupSpecError(f"{factor!r} is not a FactorSpec")
            for local, name in enumerate(factor.names):
                if name in index:
                    raise GroupSpecError(f"generator {name!r} declared twice")
                if not _is_ident(name) or name == "id":
                    raise GroupSpecError(f"invalid generator name {name!r}")
                index[name] = (fi, local)
                if name in RESERVED:
                    if factor.kind != "integer":
                        raise GroupSpecError(f"{name!r} is reserved for an infinite cyclic factor")
                    seen_reserved.append(name)
                elif seen_reserved:
                    raise GroupSpecError("base factors must precede the reserved t, x, y factors")
        if seen_reserved != sorted(seen_reserved, key=RESERVED.index):
            raise GroupSpecError("reserved factors must appear in the order t, x, y")
        object.__setattr__(self, "_index", index)

    @classmethod
    def build(
        cls,
        base: Iterable[FactorSpec] = (),
        *,
        t: bool = False,
        x: bool = False,
        y: bool = False,
    ) -> GroupSpec:
        factors = list(base)
        for name, wanted in zip(RESERVED, (t, x, y)):
            if wanted:
                factors.append(FactorSpec.integer(name))
        return cls(tuple(factors))

    @property
    def base(self) -> tuple[FactorSpec, ...]:
        return tuple(f for f in self.factors if not (f.kind == "integer" and f.names[0] in RESERVED))

    def with_reserved(self, *, t: bool = False, x: bool = False, y: bool = False) -> GroupSpec:
        return GroupSpec.build(self.base, t=t, x=x, y=y)

    def has(self, name: str) -> bool:
        return name in self._index

    @property
    def generator_names(self) -> tuple[str, ...]:
        return tuple(self._index)

    @property
    def base_generator_names(self) -> tuple[str, ...]:
        return tuple(n for n in self._index if n not in RESERVED)

    @property
    def base_is_trivial(self) -> bool:
        return all(f.kind == "trivial" for f in self.base)

    def locate(self, name: str) -> tuple[int, int]:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def factor_of(self, name: str) -> int | None:
        loc = self._index.get(name)
        return None if loc is None else loc[0]

    @property
    def identity(self) -> Word:
        return Word(self)

    def gen(self, name: str, exp: int = 1) -> Word:
        fi, local = self.locate(name)
        elem = self.factors[fi].letter(local, exp)
        return Word(self, () if elem is None else ((fi, elem),))

    def word(self, text: str) -> Word:
        return parse_word(text, self)

    def describe(self) -> str:
        parts = [f.describe() for f in self.factors]
        return " * ".join(parts) if parts else "1"


def _is_ident(name: str) -> bool:
    return (
        bool(name)
        and name[0].isascii()
        and name[0].isalpha()
        and all(c.isascii() and (c.isalnum() or c == "_") for c in name)
    )


@dataclass(frozen=True)
class Word:
    """An element of a :class:`GroupSpec` in free-product normal form."""

    ctx: GroupSpec
    syllables: tuple[tuple[int, Any], ...] = ()

    @classmethod
    def from_syllables(cls, ctx: GroupSpec, syllables: Iterable[tuple[int, Any]]) -> Word:
        """Normalize an arbitrary syllable sequence (elements must be nontrivial)."""
        stack: list[tuple[int, Any]] = []
        for fi, elem in syllables:
            if stack and stack[-1][0] == fi:
                merged = ctx.factors[fi].combine(stack.pop()[1], elem)
                if merged is not None:
                    stack.append((fi, merged))
            else:
                stack.append((fi, elem))
        return cls(ctx, tuple(stack))

    @classmethod
    def from_letters(cls, ctx: GroupSpec, letters: Iterable[tuple[str, int]]) -> Word:
        syllables = []
        for name, exp in letters:
            fi, local = ctx.locate(name)
            elem = ctx.factors[fi].letter(local, exp)
            if elem is not None:
                syllables.append((fi, elem))
        return cls.from_syllables(ctx, syllables)

    def letters(self) -> Iterator[tuple[str, int]]:
        for fi, elem in self.syllables:
            yield from self.ctx.factors[fi].letters(elem)

    def is_identity(self) -> bool:
        return not self.syllables

    def __len__(self) -> int:
        return len(self.syllables)

    def __mul__(self, other: Word) -> Word:
        return word_multiply(self, other)

    def __pow__(self, n: int) -> Word:
        return word_power(self, n)

    def inverse(self) -> Word:
        return word_invert(self)

    def sort_key(self) -> tuple:
        factors = self.ctx.factors
        return (
            len(self.syllables),
            tuple((fi, factors[fi].encode(elem)) for fi, elem in self.syllables),
        )

    def contains(self, name: str) -> bool:
        return any(n == name for n, _ in self.letters())

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        parts: list[str] = []
        for fi, elem in self.syllables:
            parts.extend(self.ctx.factors[fi].render(elem))
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def _same_ctx(a: Word, b: Word) -> None:
    if a.ctx != b.ctx:
        raise ContextMismatch(f"{a.ctx.describe()} vs {b.ctx.describe()}")


def parse_word(text: str, ctx: GroupSpec) -> Word:
    """Parse ``text`` (generators joined by ``*``, ``^`` exponents) to normal form."""
    from .grammar import parse_word as _parse

    return _parse(text, ctx)


def word_multiply(a: Word, b: Word) -> Word:
    _same_ctx(a, b)
    if not a.syllables:
        return b
    if not b.syllables:
        return a
    return Word.from_syllables(a.ctx, a.syllables + b.syllables)


def word_invert(a: Word) -> Word:
    factors = a.ctx.factors
    return Word(a.ctx, tuple((fi, factors[fi].inverse(elem)) for fi, elem in reversed(a.syllables)))


def word_power(a: Word, n: int) -> Word:
    check_int64(n)
    if n < 0:
        a, n = word_invert(a), -n
    result = a.ctx.identity
    base = a
    while n:
        if n & 1:
            result = word_multiply(result, base)
        n >>= 1
        if n:
            base = word_multiply(base, base)
    return result


def t_exponent_sum(a: Word) -> int:
    """Exponent sum of ``t``; the abelianisation onto the t factor."""
    t_index = a.ctx.factor_of("t")
    if t_index is None:
        raise NoTFactor("the group has no t factor")
    return sum(elem for fi, elem in a.syllables if fi == t_index)


def compare_words(a: Word, b: Word) -> int:
    """-1, 0 or 1: shorter words first, then lexicographic on syllable encodings."""
    _same_ctx(a, b)
    ka, kb = a.sort_key(), b.sort_key()
    return (ka > kb) - (ka < kb)
