from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from grasper import FactorSpec, GroupSpec, ReductionContext, RingElement, Word, bar_context

settings.register_profile(
    "grasper", deadline=None, max_examples=150, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("grasper")

Z_BASE = (FactorSpec.integer("g"),)
F2_BASE = (FactorSpec.free("g1", "g2"),)
MIXED_BASE = (FactorSpec.integer("a"), FactorSpec.cyclic("c", 3), FactorSpec.free("u", "v"))


def letters(names, max_exp: int = 3, max_size: int = 8):
    return st.lists(
        st.tuples(st.sampled_from(list(names)), st.integers(-max_exp, max_exp)), max_size=max_size
    )


def words(ctx: GroupSpec, names=None, **kw):
    names = names if names is not None else ctx.generator_names
    return letters(names, **kw).map(lambda ls: Word.from_letters(ctx, ls))


def rings(ctx: GroupSpec, max_terms: int = 4):
    return st.lists(st.tuples(st.integers(-6, 6), words(ctx, max_size=5)), max_size=max_terms).map(
        lambda ts: RingElement.from_terms(ctx, ts)
    )


def xy_bar_words(ctx: GroupSpec, max_size: int = 6):
    return words(ctx, ["x", "y"], max_size=max_size).filter(lambda w: w.contains("y"))


@pytest.fixture
def s4():
    return ReductionContext.for_base(())


@pytest.fixture
def s4_bar():
    return bar_context(())


@pytest.fixture
def zg():
    return ReductionContext.for_base(Z_BASE)


@pytest.fixture
def zg_bar():
    return bar_context(Z_BASE)


@pytest.fixture
def f2():
    return ReductionContext.for_base(F2_BASE)


@pytest.fixture
def f2_bar():
    return bar_context(F2_BASE)
