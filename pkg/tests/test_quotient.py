from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F2_BASE, MIXED_BASE, Z_BASE, rings, words
from grasper import quotient
from grasper.errors import ContextMismatch, NoTFactor, UnsupportedWeakContext
from grasper.quotient import (
    FULL,
    WEAK,
    GrasperClass,
    ReductionContext,
    class_of,
    orbit_canonical_rep,
    reduce_to_class,
    sigma_partner,
)
from grasper.ring import RingElement, parse_ring
from grasper.suite import check_s4_kernel_table
from grasper.words import FactorSpec, GroupSpec, parse_word

CONTEXTS = {
    "S4": ReductionContext.for_base(()),
    "Zg": ReductionContext.for_base(Z_BASE),
    "F2": ReductionContext.for_base(F2_BASE),
    "mixed": ReductionContext.for_base(MIXED_BASE),
}


def orbit(h, rctx, bound=6):
    t = rctx.ctx.gen("t")
    return {t**k * h * t**-k for k in range(-bound, bound + 1)}


def test_orbit_rep_examples(zg):
    w = parse_word("t*g*t^2", zg.ctx)
    rep = orbit_canonical_rep(w, zg)
    assert rep == parse_word("g*t^3", zg.ctx)
    assert rep in orbit(w, zg)
    assert orbit_canonical_rep(parse_word("t^5", zg.ctx), zg) == parse_word("t^5", zg.ctx)
    assert orbit_canonical_rep(parse_word("g", zg.ctx), zg) == parse_word("g", zg.ctx)


def test_sigma_partner_examples(s4, zg):
    assert sigma_partner(s4.ctx.gen("t"), s4) == s4.ctx.gen("t", -2)
    partner = sigma_partner(parse_word("g*t", zg.ctx), zg)
    assert partner == parse_word("g^-1*t^-2", zg.ctx)
    assert partner in orbit(parse_word("t^-1*g^-1*t^-1", zg.ctx), zg)
    for k in range(1, 11):
        assert sigma_partner(s4.ctx.gen("t", -k), s4) == s4.ctx.gen("t", k - 1)


def test_s4_reduction_table(s4):
    t = s4.ctx.gen("t")
    assert class_of(s4.ctx.identity, s4).is_zero()
    assert class_of(t.inverse(), s4).is_zero()
    for k in range(2, 11):
        assert str(class_of(t**-k, s4)) == ("-t" if k == 2 else f"-t^{k - 1}")
    assert reduce_to_class(parse_ring("t + t^-1", s4.ctx), s4) == class_of(t, s4)


def test_full_mode_kills_base_group(f2):
    assert class_of(f2.ctx.gen("g1"), f2).is_zero()
    assert class_of(parse_word("g1*g2^-1", f2.ctx), f2).is_zero()


def test_inverse_times_t_inverse_vanishes_in_full_mode(zg, f2):
    # the partner of g^-1 t^-1 is g, which lies in the base group
    assert class_of(parse_word("g^-1*t^-1", zg.ctx), zg).is_zero()
    assert class_of(parse_word("g2*g1^-1*t^-1", f2.ctx), f2).is_zero()
    weak = zg.with_mode(WEAK)
    assert class_of(parse_word("g^-1*t^-1", weak.ctx), weak) == -class_of(parse_word("g", weak.ctx), weak)


def test_weak_mode_keeps_base_elements(zg):
    weak = zg.with_mode(WEAK)
    assert not class_of(parse_word("g", weak.ctx), weak).is_zero()
    assert class_of(weak.ctx.identity, weak).is_zero()


def test_context_validation():
    with pytest.raises(NoTFactor):
        ReductionContext(GroupSpec.build(Z_BASE))
    with pytest.raises(UnsupportedWeakContext):
        ReductionContext(GroupSpec.build(Z_BASE), WEAK)
    with pytest.raises(ContextMismatch):
        ReductionContext(GroupSpec.build(Z_BASE, t=True, x=True))
    with pytest.raises(ValueError):
        ReductionContext(GroupSpec.build(Z_BASE, t=True), "strong")
    with pytest.raises(ContextMismatch):
        orbit_canonical_rep(GroupSpec.build(F2_BASE, t=True).gen("t"), ReductionContext.for_base(Z_BASE))


def test_tags():
    assert CONTEXTS["S4"].tag == "S4" and CONTEXTS["S4"].is_s4
    assert CONTEXTS["Zg"].tag == "pi1M = Z<g>"


def test_class_arithmetic(s4):
    a = class_of(s4.ctx.gen("t"), s4)
    assert a + a == a.scale(2) == 2 * a
    assert (a - a).is_zero()
    assert str(GrasperClass.zero(s4)) == "0"
    with pytest.raises(ContextMismatch):
        a + class_of(CONTEXTS["Zg"].ctx.gen("t"), CONTEXTS["Zg"])


@pytest.mark.parametrize("name", sorted(CONTEXTS))
@pytest.mark.parametrize("mode", [FULL, WEAK])
@given(data=st.data())
def test_kernel_relations_are_annihilated(name, mode, data):
    rctx = CONTEXTS[name].with_mode(mode)
    h = data.draw(words(rctx.ctx))
    xi = data.draw(rings(rctx.ctx))
    t = rctx.ctx.gen("t")
    relation = RingElement.word(h) + RingElement.word(h.inverse() * t.inverse())
    assert reduce_to_class(relation, rctx).is_zero()
    assert class_of(t * h * t.inverse(), rctx) == class_of(h, rctx)
    k = data.draw(st.integers(-3, 3))
    assert reduce_to_class(xi + relation.scale(k), rctx) == reduce_to_class(xi, rctx)
    assert class_of(rctx.ctx.identity, rctx).is_zero()


@pytest.mark.parametrize("name", sorted(CONTEXTS))
@given(data=st.data())
def test_reduction_is_linear(name, data):
    rctx = CONTEXTS[name]
    a, b = data.draw(rings(rctx.ctx)), data.draw(rings(rctx.ctx))
    assert reduce_to_class(a + b, rctx) == reduce_to_class(a, rctx) + reduce_to_class(b, rctx)
    assert reduce_to_class(a.scale(-3), rctx) == reduce_to_class(a, rctx).scale(-3)


@pytest.mark.parametrize("name", sorted(CONTEXTS))
@given(data=st.data())
def test_no_orbit_is_paired_with_itself(name, data):
    rctx = CONTEXTS[name].with_mode(WEAK)
    h = data.draw(words(rctx.ctx))
    rep, partner = orbit_canonical_rep(h, rctx), sigma_partner(h, rctx)
    assert rep != partner
    assert sigma_partner(partner, rctx) == rep
    assert orbit_canonical_rep(rep, rctx) == rep


@pytest.mark.parametrize("name", sorted(CONTEXTS))
@given(data=st.data())
def test_normal_forms_are_fixed_points(name, data):
    rctx = CONTEXTS[name]
    c = reduce_to_class(data.draw(rings(rctx.ctx)), rctx)
    assert reduce_to_class(c.to_ring(), rctx) == c


def test_sign_flip_in_sigma_breaks_the_table(monkeypatch):
    assert check_s4_kernel_table().status == "pass"
    original = quotient.sigma_partner

    def flipped(h, rctx):
        # h^-1 t instead of h^-1 t^-1
        return quotient.orbit_canonical_rep(h.inverse() * rctx.ctx.gen("t"), rctx)

    monkeypatch.setattr(quotient, "sigma_partner", flipped)
    assert check_s4_kernel_table().status == "fail"
    monkeypatch.setattr(quotient, "sigma_partner", original)
    assert check_s4_kernel_table().status == "pass"
