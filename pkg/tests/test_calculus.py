from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import F2_BASE, Z_BASE, rings, xy_bar_words
from grasper import calculus as calc
from grasper.calculus import (
    BarbellSpec,
    Bg,
    Compose,
    Identity,
    Inverse,
    Power,
    PsR,
    Sref,
    SrefL,
    SrefLower,
    SrefR,
    SrefRR,
    ThetaData,
    Wat,
    bar_context,
    barbell_class,
    barbell_sref_argument,
    barword_factorize,
    diffeo_equal,
    dual_bar_word,
    eval_diffeo_expr,
    s4_ps_normal_form,
    simple_null_class,
    sref_class,
    theta_class,
)
from grasper.errors import (
    BaseLettersPresent,
    CuffKnotted,
    NonBaseElement,
    NotS4Context,
    NoYLetter,
    UnsupportedContext,
    UnsupportedInverse,
)
from grasper.quotient import WEAK, ReductionContext, class_of, reduce_to_class
from grasper.ring import RingElement, parse_ring
from grasper.sampling import random_bar_word, random_expr
from grasper.words import parse_word

S4 = ReductionContext.for_base(())
S4_BAR = bar_context(())
ZG = ReductionContext.for_base(Z_BASE)
ZG_BAR = bar_context(Z_BASE)
F2 = ReductionContext.for_base(F2_BASE)
F2_BAR = bar_context(F2_BASE)


def bg(text, bar=S4_BAR, **kw):
    return Bg(BarbellSpec(parse_word(text, bar), **kw))


def tpow(k, rctx=S4):
    return rctx.ctx.gen("t", k)


# -- semisimple graspers and theta classes ---------------------------------


def test_sref_examples():
    assert sref_class(RingElement.scalar(S4.ctx, 1), S4).is_zero()
    assert sref_class(RingElement.word(tpow(1)), S4) == class_of(tpow(1), S4)
    assert sref_class(RingElement.word(tpow(-1)), S4) == class_of(tpow(1), S4)
    for i in range(-4, 5):
        assert sref_class(RingElement.word(tpow(1), i), S4) == class_of(tpow(1), S4).scale(i)


def test_sref_of_powers_of_t():
    for i in range(2, 9):
        got = sref_class(RingElement.word(tpow(i)), S4)
        assert got == class_of(tpow(i), S4) - class_of(tpow(i - 1), S4)


def test_theta_examples():
    one = S4_BAR.identity
    assert theta_class(ThetaData(one, one), S4) == class_of(tpow(1), S4)
    for p in range(4, 11):
        d = ThetaData(parse_word(f"g^{p - 1}", ZG_BAR), parse_word("g", ZG_BAR))
        assert theta_class(d, ZG) == sref_class(parse_ring(f"g^{p - 2}*t*g", ZG.ctx), ZG)
    d = ThetaData(parse_word("g1", F2_BAR), parse_word("g2", F2_BAR))
    got = theta_class(d, F2)
    # h + h^-1 with h = g1 g2^-1 t g2; neither orbit pair meets the base group
    h = parse_word("g1*g2^-1*t*g2", F2.ctx)
    assert dict(got.terms) == {h: 1, h.inverse(): 1}


def test_theta_errors():
    with pytest.raises(NonBaseElement):
        ThetaData(parse_word("g*t", ZG_BAR), ZG_BAR.identity)
    with pytest.raises(NonBaseElement):
        ThetaData(ZG_BAR.identity, parse_word("x", ZG_BAR))
    with pytest.raises(UnsupportedContext):
        theta_class(ThetaData(ZG_BAR.identity, ZG_BAR.identity), ZG.with_mode(WEAK))


# -- barbells ------------------------------------------------------------------


def test_factorize_examples():
    W = parse_word("y*x", S4_BAR)
    assert barword_factorize(W) == [(S4_BAR.identity, 1, S4_BAR.gen("x"))]
    for m in range(4, 8):
        W = parse_word(f"g*y*g^{m - 3}*x*g^2", ZG_BAR)
        assert barword_factorize(W) == [
            (ZG_BAR.gen("g"), 1, parse_word(f"g^{m - 3}*x*g^2", ZG_BAR))
        ]
    W = parse_word("y^-1*x*y*x", S4_BAR)
    one, x = S4_BAR.identity, S4_BAR.gen("x")
    assert barword_factorize(W) == [(one, -1, one), (x, 1, x)]
    with pytest.raises(NoYLetter):
        barword_factorize(parse_word("x^2", S4_BAR))


@given(st.integers(0, 2**32))
def test_factorization_reassembles(seed):
    W = random_bar_word(F2_BAR, random.Random(seed))
    rebuilt = F2_BAR.identity
    factors = barword_factorize(W)
    for f, eps, h in factors:
        rebuilt = rebuilt * f * F2_BAR.gen("y", eps) * h
    assert rebuilt == W
    assert all(not f.contains("y") and not h.contains("y") for f, _, h in factors)


def test_barbell_argument_examples():
    assert barbell_sref_argument(BarbellSpec(parse_word("y*x", S4_BAR))) == RingElement.word(tpow(1))
    assert barbell_sref_argument(BarbellSpec(parse_word("y*x^-1", S4_BAR))) == RingElement.word(tpow(-1))
    for m in range(4, 11):
        spec = BarbellSpec(parse_word(f"g*y*g^{m - 3}*x*g^2", ZG_BAR))
        assert barbell_sref_argument(spec) == parse_ring(f"g^{m - 2}*t*g", ZG.ctx)
    with pytest.raises(CuffKnotted):
        barbell_sref_argument(BarbellSpec(parse_word("y*x", S4_BAR), cuff2_unknotted=False))
    # a bar that never links the second cuff
    assert barbell_sref_argument(BarbellSpec(parse_word("x^2", S4_BAR))).is_zero()


def test_barbell_class_examples():
    W = parse_word("y*(g1*g2^-1*x*g2)", F2_BAR)
    theta = theta_class(ThetaData(parse_word("g1", F2_BAR), parse_word("g2", F2_BAR)), F2)
    assert barbell_class(BarbellSpec(W), F2) == theta
    for i in range(1, 9):
        W = parse_word(f"y*x^{i}", S4_BAR)
        assert barbell_class(BarbellSpec(W), S4) == sref_class(RingElement.word(tpow(i)), S4)
    W = parse_word("(g2^-1*y^-1*x^-1)*(y*x*g2*g1*g2^-1)", F2_BAR)
    arg = parse_ring("g1*g2^-1*t*g2 - g1", F2.ctx)
    assert barbell_sref_argument(BarbellSpec(W), F2.ctx) == arg
    assert barbell_class(BarbellSpec(W), F2) == sref_class(arg, F2) == theta
    weak = F2.with_mode(WEAK)
    assert barbell_class(BarbellSpec(W), weak) != sref_class(parse_ring("g1*g2^-1*t*g2", F2.ctx), weak)


def test_knotted_first_cuff_needs_weak_mode():
    spec = BarbellSpec(parse_word("y*g*x", ZG_BAR), cuff1_unknotted=False)
    with pytest.raises(CuffKnotted):
        barbell_class(spec, ZG)
    assert not barbell_class(spec, ZG.with_mode(WEAK)).is_zero()


def test_dual_examples():
    for i in range(1, 6):
        assert dual_bar_word(parse_word(f"y*x^{i}", S4_BAR)) == parse_word(f"y^{i}*x", S4_BAR)
    assert dual_bar_word(parse_word("y*x", S4_BAR)) == parse_word("y*x", S4_BAR)
    assert dual_bar_word(parse_word("y*x^-1", S4_BAR)) == parse_word("y^-1*x", S4_BAR)
    with pytest.raises(BaseLettersPresent):
        dual_bar_word(parse_word("y*g*x", ZG_BAR))
    assert issubclass(BaseLettersPresent, UnsupportedInverse)


@given(xy_bar_words(S4_BAR))
def test_dual_is_an_involution(W):
    assert dual_bar_word(dual_bar_word(W)) == W


@settings(max_examples=100)
@given(xy_bar_words(S4_BAR))
def test_dual_consistency_in_s4(W):
    dual = eval_diffeo_expr(Bg(BarbellSpec(dual_bar_word(W))), S4)
    inverse = eval_diffeo_expr(Inverse(Bg(BarbellSpec(W))), S4)
    assert dual.s4_scalar == inverse.s4_scalar


# -- simple null graspers ----------------------------------------------------


def test_simple_null_examples():
    W = parse_word("y*x", S4_BAR)
    assert simple_null_class(W, S4) == class_of(tpow(1), S4) == barbell_class(BarbellSpec(W), S4)
    W = parse_word("x*g", ZG_BAR)
    dax = parse_ring("g*t", ZG.ctx)
    want = reduce_to_class(parse_ring("t*g^2*t*g^-1*t^-1", ZG.ctx), ZG.with_mode(WEAK))
    assert simple_null_class(W, ZG.with_mode(WEAK), dax) == want
    assert simple_null_class(W, ZG).is_zero()


@pytest.mark.parametrize("bar, rctx", [(F2_BAR, F2), (ZG_BAR, ZG), (S4_BAR, S4)])
def test_simple_null_matches_barbell_class(bar, rctx):
    rng = random.Random(7)
    for _ in range(200):
        W = random_bar_word(bar, rng)
        for mode_ctx in (rctx, rctx.with_mode(WEAK)):
            assert simple_null_class(W, mode_ctx) == barbell_class(BarbellSpec(W), mode_ctx), W


# -- the S4 normal form --------------------------------------------------------


def test_s4_scalar_examples():
    assert s4_ps_normal_form(class_of(tpow(1), S4)) == 1
    assert s4_ps_normal_form(class_of(tpow(0), S4)) == 0
    assert [s4_ps_normal_form(class_of(tpow(k), S4)) for k in range(1, 9)] == [1, 1, 0, 0, 1, 1, 0, 0]
    with pytest.raises(NotS4Context):
        s4_ps_normal_form(class_of(tpow(1, ZG), ZG))


def test_linear_parity_would_break_two_torsion():
    # [t^2] = [t] is forced by inv(bg(y*x^2)) = bg(y*x)^2, so t^2 -> 0 is impossible
    inv = eval_diffeo_expr(Inverse(bg("y*x^2")), S4)
    square = eval_diffeo_expr(Power(bg("y*x"), 2), S4)
    linear = sum(k * c for k, c in ((rep.syllables[0][1], c) for rep, c in inv.cls.terms)) % 2
    assert inv.s4_scalar == square.s4_scalar == 0
    assert linear == 1


# -- expressions -------------------------------------------------------------


def test_eval_examples():
    one = S4_BAR.identity
    nf = eval_diffeo_expr(Wat(ThetaData(one, one)), S4)
    assert nf.cls == class_of(tpow(1), S4) and nf.s4_scalar == 1
    assert str(nf) == "t [ps: 1 mod 2]"
    assert eval_diffeo_expr(Power(bg("y*x"), 2), S4).s4_scalar == 0
    assert eval_diffeo_expr(Identity(), S4).cls.is_zero()
    for i in range(1, 9):
        a = eval_diffeo_expr(Inverse(bg(f"y*x^{i}")), S4)
        b = eval_diffeo_expr(Power(bg("y*x"), i), S4)
        assert a.s4_scalar == b.s4_scalar
        assert len(a.routes) == 2


def test_inverse_with_base_letters_uses_negation_only():
    nf = eval_diffeo_expr(Inverse(bg("y*g*x", ZG_BAR)), ZG)
    assert nf.routes == (nf.cls,)
    assert nf.cls == -eval_diffeo_expr(bg("y*g*x", ZG_BAR), ZG).cls


def test_sref_aliases_agree():
    xi = parse_ring("2g*t - t^-2 + g", ZG.ctx)
    classes = {eval_diffeo_expr(k(xi), ZG).cls for k in (Sref, SrefR, SrefL, SrefRR, SrefLower)}
    assert len(classes) == 1


def test_certificates():
    one = S4_BAR.identity
    wat = Wat(ThetaData(one, one))
    assert diffeo_equal(wat, bg("y*x"), S4).status == calc.CERTIFIED_EQUAL
    assert diffeo_equal(bg("y*x"), bg("y*x^-1"), S4)
    assert not diffeo_equal(bg("y*x"), Identity(), S4)
    for p in range(4, 11):
        theta = Wat(ThetaData(parse_word(f"g^{p - 1}", ZG_BAR), parse_word("g", ZG_BAR)))
        assert diffeo_equal(theta, bg(f"g*y*g^{p - 3}*x*g^2", ZG_BAR), ZG)
    cert = diffeo_equal(bg("y*g*x", ZG_BAR), Identity(), ZG)
    assert cert.status == calc.NOT_CERTIFIED and cert.lhs and cert.rhs == "0"


def test_dual_route_certifies_outside_s4():
    # in Z<g> the dual route is recorded next to negation for an x,y-only word
    lhs = Inverse(bg("y*x^2", ZG_BAR))
    rhs = bg("y^2*x", ZG_BAR)
    cert = diffeo_equal(lhs, rhs, ZG)
    assert cert, cert


def test_knotted_barbells_switch_to_weak_mode():
    knotted = bg("y*g*x", ZG_BAR, cuff1_unknotted=False)
    assert calc.needs_weak_mode(Compose((knotted, Identity())))
    with pytest.raises(CuffKnotted):
        eval_diffeo_expr(knotted, ZG)
    assert diffeo_equal(knotted, knotted, ZG)
    with pytest.raises(UnsupportedContext):
        diffeo_equal(knotted, Wat(ThetaData(ZG_BAR.identity, ZG_BAR.identity)), ZG)


@pytest.mark.parametrize("bar, rctx", [(S4_BAR, S4), (ZG_BAR, ZG), (F2_BAR, F2)])
@given(seed=st.integers(0, 2**32))
def test_evaluation_is_a_homomorphism(bar, rctx, seed):
    rng = random.Random(seed)
    a = random_expr(bar, rctx.ctx, rng, 2)
    b = random_expr(bar, rctx.ctx, rng, 2)
    ea, eb = eval_diffeo_expr(a, rctx).cls, eval_diffeo_expr(b, rctx).cls
    assert eval_diffeo_expr(Compose((a, b)), rctx).cls == ea + eb
    assert eval_diffeo_expr(Inverse(a), rctx).cls == -ea
    assert eval_diffeo_expr(Power(a, 3), rctx).cls == ea.scale(3)


@given(rings(S4.ctx))
def test_r_and_ps_agree_with_reduction(xi):
    assert eval_diffeo_expr(PsR(xi), S4).cls == reduce_to_class(xi, S4)


def test_factorization_invariance_over_many_words():
    from grasper.suite import resplit

    rng = random.Random(11)
    for _ in range(100):
        W = random_bar_word(F2_BAR, rng, 9)
        factors = barword_factorize(W)
        base = calc.sref_argument_from_factors(factors, F2.ctx)
        for _ in range(25):
            alt = resplit(factors, rng)
            assert calc.sref_argument_from_factors(alt, F2.ctx) == base
