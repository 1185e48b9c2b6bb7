"""Seeded random words, bar words and expressions for property checks."""

from __future__ import annotations

import os
import random

from . import calculus as calc
from .ring import RingElement
from .words import GroupSpec, Word

DEFAULT_SEED = 20240917


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    """``GRASPER_SEED`` if set, else a fixed default."""
    raw = os.environ.get("GRASPER_SEED")
    return int(raw) if raw else default


def make_rng(seed: int | None = None) -> random.Random:
    return random.Random(seed_from_env() if seed is None else seed)


def _nonzero(rng: random.Random, bound: int) -> int:
    return rng.choice([e for e in range(-bound, bound + 1) if e])


def random_word(
    ctx: GroupSpec,
    rng: random.Random,
    max_letters: int = 8,
    names: list[str] | None = None,
    max_exp: int = 3,
) -> Word:
    """Product of random generator powers; may reduce to the identity."""
    names = names if names is not None else list(ctx.generator_names)
    if not names:
        return ctx.identity
    letters = [(rng.choice(names), _nonzero(rng, max_exp)) for _ in range(rng.randint(0, max_letters))]
    return Word.from_letters(ctx, letters)


def random_xy_bar_word(ctx: GroupSpec, rng: random.Random, max_letters: int = 6) -> Word:
    """Random x,y word containing at least one y."""
    while True:
        w = random_word(ctx, rng, max_letters, ["x", "y"])
        if w.contains("y"):
            return w


def random_bar_word(ctx: GroupSpec, rng: random.Random, max_letters: int = 7) -> Word:
    """Random word in all generators of ``ctx`` containing at least one y."""
    while True:
        w = random_word(ctx, rng, max_letters, max_exp=2)
        if w.contains("y"):
            return w


def random_ring(ctx: GroupSpec, rng: random.Random, max_terms: int = 4, max_coeff: int = 5) -> RingElement:
    terms = [
        (rng.randint(-max_coeff, max_coeff), random_word(ctx, rng, 5))
        for _ in range(rng.randint(0, max_terms))
    ]
    return RingElement.from_terms(ctx, terms)


def random_expr(bar_ctx: GroupSpec, surgery_ctx: GroupSpec, rng: random.Random, depth: int = 3) -> calc.DiffeoExpr:
    """Random expression tree over unknotted barbells, graspers and theta classes."""
    base = list(bar_ctx.base_generator_names)
    leaf = depth <= 0 or rng.random() < 0.35
    if leaf:
        kind = rng.choice(["bg", "sref", "r", "id"] + (["wat"] if base else []))
        if kind == "bg":
            return calc.Bg(calc.BarbellSpec(random_bar_word(bar_ctx, rng, 5)))
        if kind == "sref":
            cls = rng.choice([calc.Sref, calc.SrefR, calc.SrefL, calc.SrefRR, calc.SrefLower])
            return cls(random_ring(surgery_ctx, rng, 3))
        if kind == "r":
            return calc.PsR(random_ring(surgery_ctx, rng, 3))
        if kind == "wat":
            g1 = random_word(bar_ctx, rng, 3, base)
            g2 = random_word(bar_ctx, rng, 3, base)
            return calc.Wat(calc.ThetaData(g1, g2))
        return calc.Identity()
    kind = rng.choice(["compose", "inverse", "power"])
    if kind == "compose":
        return calc.Compose(tuple(random_expr(bar_ctx, surgery_ctx, rng, depth - 1) for _ in range(rng.randint(2, 3))))
    if kind == "inverse":
        return calc.Inverse(random_expr(bar_ctx, surgery_ctx, rng, depth - 1))
    return calc.Power(random_expr(bar_ctx, surgery_ctx, rng, depth - 1), rng.randint(-3, 3))
