"""The batch of identity and property checks behind ``grasper paper-suite``.

Each check returns a :class:`~grasper.script.Record`; the suite runs them in
a fixed order so the report is deterministic for a given ``GRASPER_SEED``.
"""

from __future__ import annotations

import itertools
from typing import Callable

from . import calculus as calc
from . import oracles
from .grammar import parse_word
from .quotient import WEAK, ReductionContext, class_of, orbit_canonical_rep, reduce_to_class, sigma_partner
from .ring import RingElement, dax_from_double_points
from .sampling import make_rng, random_bar_word, random_word, random_xy_bar_word
from .script import ERROR, FAIL, PASS, Record, Report
from .words import FactorSpec, GroupSpec, Word

S4_BASE: tuple[FactorSpec, ...] = ()
Z_BASE = (FactorSpec.integer("g"),)
F2_BASE = (FactorSpec.free("g1", "g2"),)


def _record(name: str, ok: bool, lhs: object = "", rhs: object = "", details: str = "") -> Record:
    return Record(name, PASS if ok else FAIL, str(lhs), str(rhs), details)


def _contexts(base):
    return calc.bar_context(base), ReductionContext.for_base(base)


def _t_poly(cls) -> dict[int, int]:
    """A class over S^4 as {exponent: coefficient}."""
    return {rep.syllables[0][1] if rep.syllables else 0: c for rep, c in cls.terms}


# -- the checks ----------------------------------------------------------------


def check_s4_kernel_table() -> Record:
    _, rctx = _contexts(S4_BASE)
    t = rctx.ctx.gen("t")
    bad = []
    for k in range(1, 11):
        got = class_of(t ** -k, rctx)
        want = class_of(t ** (k - 1), rctx).scale(-1) if k > 1 else class_of(rctx.ctx.identity, rctx)
        if got != want or (k > 1 and _t_poly(got) != {k - 1: -1}):
            bad.append(f"t^-{k} -> {got}")
    zero_ok = class_of(rctx.ctx.identity, rctx).is_zero() and class_of(t.inverse(), rctx).is_zero()
    rows = ", ".join(f"t^-{k} -> {class_of(t ** -k, rctx)}" for k in (1, 2, 3, 10))
    return _record("S4 kernel table", not bad and zero_ok, rows, "t^-k -> -t^(k-1), 1 -> 0", "; ".join(bad))


def check_selfref() -> Record:
    _, rctx = _contexts(S4_BASE)
    ctx = rctx.ctx
    t = RingElement.word(ctx.gen("t"))
    one = RingElement.scalar(ctx, 1)
    t_inv = RingElement.word(ctx.gen("t", -1))
    target = class_of(ctx.gen("t"), rctx)
    values = [calc.sref_class(one, rctx), calc.sref_class(t, rctx), calc.sref_class(t_inv, rctx)]
    ok = values[0].is_zero() and values[1] == target and values[2] == target
    return _record("sref of 1, t, t^-1", ok, ", ".join(map(str, values)), f"0, {target}, {target}")


def check_theta_s4() -> Record:
    bar, rctx = _contexts(S4_BASE)
    one = bar.identity
    got = calc.theta_class(calc.ThetaData(one, one), rctx)
    want = class_of(rctx.ctx.gen("t"), rctx)
    return _record("theta class in S4", got == want, got, want)


def check_wat_implant() -> Record:
    bar, rctx = _contexts(F2_BASE)
    W = parse_word("y*g1*g2^-1*x*g2", bar)
    got = calc.barbell_class(calc.BarbellSpec(W), rctx)
    want = calc.theta_class(calc.ThetaData(parse_word("g1", bar), parse_word("g2", bar)), rctx)
    return _record("barbell y*g1*g2^-1*x*g2 vs theta(g1,g2)", got == want and not got.is_zero(), got, want)


def check_d3xs1_arguments() -> Record:
    bar, rctx = _contexts(Z_BASE)
    bad = []
    for m in range(4, 11):
        W = parse_word(f"g*y*g^{m - 3}*x*g^2", bar)
        got = calc.barbell_sref_argument(calc.BarbellSpec(W), rctx.ctx)
        want = RingElement.word(parse_word(f"g^{m - 2}*t*g", rctx.ctx))
        if got != want:
            bad.append(f"m={m}: {got}")
    return _record("D3xS1 barbell arguments, m = 4..10", not bad, "g^(m-2)*t*g for all m", "", "; ".join(bad))


def check_list_agreement() -> Record:
    bar, rctx = _contexts(Z_BASE)
    bad = []
    for p in range(4, 11):
        theta = calc.ThetaData(parse_word(f"g^{p - 1}", bar), parse_word("g", bar))
        bg = calc.BarbellSpec(parse_word(f"g*y*g^{p - 3}*x*g^2", bar))
        arg_theta = RingElement.word(theta.argument(rctx.ctx))
        arg_bg = calc.barbell_sref_argument(bg, rctx.ctx)
        cert = calc.diffeo_equal(calc.Wat(theta), calc.Bg(bg), rctx)
        if arg_theta != arg_bg or not cert:
            bad.append(f"p={p}: {arg_theta} vs {arg_bg} ({cert.status})")
    return _record("theta and barbell lists agree, p = 4..10", not bad, "wat(g^(p-1), g)", "bg(delta_p)", "; ".join(bad))


def check_bar_element_examples() -> Record:
    problems = []
    # (1) W = y h
    bar, rctx = _contexts(F2_BASE)
    h = parse_word("g1*g2^-1*x*g2", bar)
    arg = calc.barbell_sref_argument(calc.BarbellSpec(bar.gen("y") * h), rctx.ctx)
    if arg != RingElement.word(parse_word("g1*g2^-1*t*g2", rctx.ctx)):
        problems.append(f"(1) gave {arg}")
    # (2) and (3) with symbolic h1, h2, f1 as free generators
    sym = GroupSpec.build((FactorSpec.free("f1", "h1", "h2"),), t=True, x=True, y=True)
    target = sym.with_reserved(t=True)
    f1, h1, h2, y = (sym.gen(n) for n in ("f1", "h1", "h2", "y"))
    F1, H1, H2 = (target.gen(n) for n in ("f1", "h1", "h2"))
    for e1, e2 in itertools.product((1, -1), repeat=2):
        W2 = y ** e1 * h1 * y ** e2 * h2
        got = calc.barbell_sref_argument(calc.BarbellSpec(W2), target)
        want = RingElement.from_terms(target, [(e1, H1 * H2), (e2, H1 * H2 * H1.inverse())])
        if got != want:
            problems.append(f"(2) e=({e1},{e2}) gave {got}")
        W3 = f1 * y ** e1 * h1 * y ** e2 * h2
        got = calc.barbell_sref_argument(calc.BarbellSpec(W3), target)
        want = RingElement.from_terms(
            target, [(e1, F1 * H1 * H2 * F1.inverse()), (e2, F1 * H1 * H2 * (F1 * H1).inverse())]
        )
        if got != want:
            problems.append(f"(3) e=({e1},{e2}) gave {got}")
    # (3) in particular, and the -g1 term dying in full mode only
    W = parse_word("(g2^-1*y^-1*x^-1)*(y*x*g2*g1*g2^-1)", bar)
    spec = calc.BarbellSpec(W)
    arg = calc.barbell_sref_argument(spec, rctx.ctx)
    want = RingElement.from_terms(rctx.ctx, [(1, parse_word("g1*g2^-1*t*g2", rctx.ctx)), (-1, parse_word("g1", rctx.ctx))])
    if arg != want:
        problems.append(f"(3) particular gave {arg}")
    theta = calc.theta_class(calc.ThetaData(parse_word("g1", bar), parse_word("g2", bar)), rctx)
    full = calc.barbell_class(spec, rctx)
    weak = calc.barbell_class(spec, rctx.with_mode(WEAK))
    weak_theta = calc.sref_class(RingElement.word(parse_word("g1*g2^-1*t*g2", rctx.ctx)), rctx.with_mode(WEAK))
    if full != theta:
        problems.append(f"(3) full class {full} != {theta}")
    if weak == weak_theta:
        problems.append("(3) -g1 term vanished in weak mode")
    return _record("bar element examples (1), (2), (3)", not problems, arg, want, "; ".join(problems))


def check_implant_d4_vx() -> Record:
    bar, rctx = _contexts(S4_BASE)
    a = calc.Bg(calc.BarbellSpec(parse_word("y*x", bar)))
    b = calc.Bg(calc.BarbellSpec(parse_word("y*x^-1", bar)))
    cert = calc.diffeo_equal(a, b, rctx)
    return _record("bg(y*x) == bg(y*x^-1) in S4", bool(cert), cert.lhs, cert.rhs, cert.status)


def check_two_torsion() -> Record:
    bar, rctx = _contexts(S4_BASE)
    yx = calc.Bg(calc.BarbellSpec(parse_word("y*x", bar)))
    bad = []
    for i in range(1, 9):
        inv = calc.Inverse(calc.Bg(calc.BarbellSpec(parse_word(f"y*x^{i}", bar))))
        cert = calc.diffeo_equal(inv, calc.Power(yx, i), rctx)
        if not cert:
            bad.append(f"i={i}: {cert.lhs} vs {cert.rhs}")
    square = calc.diffeo_equal(calc.Power(yx, 2), calc.Identity(), rctx)
    if not square:
        bad.append(f"square: {square.lhs}")
    return _record("inv(bg(y*x^i)) == bg(y*x)^i, bg(y*x)^2 == id", not bad, "i = 1..8", square.lhs, "; ".join(bad))


def check_s4_closure(count: int = 500) -> Record:
    bar, rctx = _contexts(S4_BASE)
    rng = make_rng()
    wat = calc.Wat(calc.ThetaData(bar.identity, bar.identity))
    bad = []
    nonzero = 0
    for _ in range(count):
        W = random_xy_bar_word(bar, rng)
        bg = calc.Bg(calc.BarbellSpec(W))
        nf = calc.eval_diffeo_expr(bg, rctx)
        if nf.s4_scalar not in (0, 1):
            bad.append(f"{W}: scalar {nf.s4_scalar}")
            continue
        if nf.s4_scalar:
            nonzero += 1
            if not calc.diffeo_equal(bg, wat, rctx):
                bad.append(f"{W}: not certified equal to wat")
    return _record(f"S4 closure over {count} random bar words", not bad, f"{nonzero} nonzero", "wat(1,1)", "; ".join(bad[:5]))


def _unit_letters(w: Word) -> list[tuple[str, int]]:
    return [(n, 1 if e > 0 else -1) for n, e in w.letters() for _ in range(abs(e))]


def resplit(factors, rng):
    """Move each boundary between ``h_(i-1)`` and ``f_i`` to a random point of
    the segment between two y letters."""
    ctx = factors[0][0].ctx
    out = [list(factors[0])]
    for f, eps, h in factors[1:]:
        seg = _unit_letters(f)
        cut = rng.randint(0, len(seg))
        out[-1][2] = Word.from_letters(ctx, seg[:cut])
        out.append([Word.from_letters(ctx, seg[cut:]), eps, h])
    return [tuple(item) for item in out]


def check_factorization_invariance(words: int = 20, splits: int = 100) -> Record:
    bar, rctx = _contexts(F2_BASE)
    rng = make_rng()
    bad = []
    for _ in range(words):
        W = random_bar_word(bar, rng, 9)
        factors = calc.barword_factorize(W)
        base = calc.sref_argument_from_factors(factors, rctx.ctx)
        for _ in range(splits):
            alt = resplit(factors, rng)
            rebuilt = bar.identity
            for f, eps, h in alt:
                rebuilt = rebuilt * f * bar.gen("y", eps) * h
            if rebuilt != W or calc.sref_argument_from_factors(alt, rctx.ctx) != base:
                bad.append(str(W))
                break
    return _record(f"factorization invariance ({words} words x {splits} re-splits)", not bad, "", "", "; ".join(bad[:5]))


def check_no_self_pairing(count: int = 1000) -> Record:
    rng = make_rng()
    bad = []
    for base in (S4_BASE, Z_BASE, F2_BASE):
        rctx = ReductionContext.for_base(base, WEAK)
        for _ in range(count):
            h = random_word(rctx.ctx, rng, 8)
            rep = orbit_canonical_rep(h, rctx)
            partner = sigma_partner(h, rctx)
            if rep == partner or sigma_partner(partner, rctx) != rep:
                bad.append(f"{rctx.tag}: {h}")
    return _record(f"no self-paired orbits ({count} words x 3 groups)", not bad, "", "", "; ".join(bad[:5]))


def check_oracles(bound: int = 12) -> Record:
    _, rctx = _contexts(S4_BASE)
    kernel = oracles.LaurentKernelOracle(bound)
    t = rctx.ctx.gen("t")
    bad = []
    rng = make_rng()
    polys = [{k: 1} for k in range(-bound, bound + 1)]
    polys += [{rng.randint(-bound, bound): rng.randint(-9, 9) for _ in range(4)} for _ in range(200)]
    for poly in polys:
        ring = RingElement.from_terms(rctx.ctx, [(c, t ** k) for k, c in poly.items()])
        if _t_poly(reduce_to_class(ring, rctx)) != kernel.normal_form(poly):
            bad.append(f"kernel mismatch at {poly}")
    rows = oracles.barbell_symmetry_relations(bound)
    invariants = oracles.smith_invariants(rows, bound)
    if invariants != [1] * (bound - 1) + [2]:
        bad.append(f"invariant factors {invariants}")
    hnf, pivots = oracles.hermite_rows(rows, bound)

    def closed_form(k: int) -> int:
        return calc.s4_ps_normal_form(class_of(t ** k, rctx))

    for row in rows:
        if sum(c * closed_form(k) for k, c in enumerate(row, start=1)) % 2:
            bad.append(f"closed form does not kill {row}")
    for k in range(1, bound + 1):
        vec = [0] * bound
        vec[k - 1] += 1
        vec[0] -= closed_form(k)
        if any(oracles.reduce_mod_rows(vec, hnf, pivots)):
            bad.append(f"t^{k} - {closed_form(k)}t not in the lattice")
    if closed_form(1) != 1:
        bad.append("t is not the generator")
    return _record(
        "oracle equivalence (row reduction, Smith form)",
        not bad,
        f"{len(polys)} kernel normal forms; invariants {invariants[-1:]}",
        "Z/2 generated by t",
        "; ".join(bad[:5]),
    )


def check_dax_datasets() -> Record:
    ctx = GroupSpec.build(F2_BASE, t=True)
    h = parse_word("g1*t*g2^-1", ctx)
    hi = h.inverse()
    want = RingElement.from_terms(ctx, [(1, h), (1, hi)])
    datasets = {
        "sref_r": [(1, hi), (1, h)],
        "sref_l": [(1, h), (1, hi)],
        "sref_lower": [(1, h), (1, hi)],
        "sref_rr": [(1, h), (-1, h), (1, hi), (1, h)],
    }
    bad = [name for name, pts in datasets.items() if dax_from_double_points(pts) != want]
    if dax_from_double_points([(1, h)]) != RingElement.word(h):
        bad.append("r(h)")
    return _record("Dax double-point datasets", not bad, want, "h + h^-1 for all four", ", ".join(bad))


CHECKS: list[tuple[str, Callable[[], Record]]] = [
    ("1", check_s4_kernel_table),
    ("2", check_selfref),
    ("3", check_theta_s4),
    ("4", check_wat_implant),
    ("5", check_d3xs1_arguments),
    ("6", check_list_agreement),
    ("7", check_bar_element_examples),
    ("8", check_implant_d4_vx),
    ("9", check_two_torsion),
    ("10", check_s4_closure),
    ("11", check_factorization_invariance),
    ("12", check_no_self_pairing),
    ("13", check_oracles),
    ("14", check_dax_datasets),
]


def run_check(index: str, check: Callable[[], Record]) -> Record:
    try:
        record = check()
    except Exception as exc:  # a crashing check is a failed entry, not a crashed suite
        record = Record(check.__name__, ERROR, details=f"{type(exc).__name__}: {exc}")
    record.name = f"[{index:>2}] {record.name}"
    return record


def paper_suite() -> Report:
    report = Report("paper-suite")
    for index, check in CHECKS:
        report.results.append(run_check(index, check))
    return report
