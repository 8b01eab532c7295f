"""Acceptance tests, one per numbered criterion.

Each test is self-contained and asserts both the mathematical outcome and,
where stated, the time budget. The conftest hook prints a one-line
PASS/FAIL summary per criterion at the end of the run.
"""

import itertools
import random
import time

import pytest

from invalg.checker import (BudgetExceeded, check_identity,
                            check_idempotent_image, image_set, render_report)
from invalg.claims import build_algebra, run_claims
from invalg.families import (b2, b21, kadourek_generators, kadourek_semigroup,
                             partial_compose, partial_invert, rook_monoid,
                             rook_monoid_restricted_3, sigma7)
from invalg.structure import classify_hm, principal_series, BrandtTag
from invalg.terms import (ComposedWord, Word, build_v, build_v_composed,
                          build_w, evaluate, phi_psi, substitute)


def _claims(pattern):
    results = run_claims(pattern)
    assert results, f"no claims match {pattern!r}"
    return results


def _assert_pass(results, budget=None):
    for r in results:
        assert r.ok, f"claim {r.claim_id} failed: {r.detail}"
    if budget is not None:
        spent = sum(r.elapsed for r in results)
        assert spent < budget, f"took {spent:.1f}s, budget {budget}s"


def test_criterion_01_family_sizes():
    start = time.perf_counter()
    sizes = {
        "rook:1": 2, "rook:2": 7, "rook:3": 34,
        "b2": 5, "b21": 6, "sigma7": 7, "rook3-restricted": 31,
    }
    for spec, want in sizes.items():
        assert build_algebra(spec).size == want, spec
    assert time.perf_counter() - start < 1.0


def test_criterion_02_square_idempotency_sweep():
    _assert_pass(_claims("lemma2.1"), budget=120.0)


def test_criterion_03_tower_subsemigroups():
    _assert_pass(_claims("lemma2.2"), budget=10.0)


def test_criterion_04_level2_images_on_rook2():
    _assert_pass(_claims("prop2.6.1"), budget=30.0)


def test_criterion_05_level4_image_on_rook3_and_parity():
    _assert_pass(_claims("prop2.6.2"), budget=300.0)
    _assert_pass(_claims("rprime3-containment"), budget=300.0)


def test_criterion_06_product_semigroup_instance():
    hm = classify_hm(build_algebra("product:group:2,brandt:2:2"))
    assert (hm.is_hm, hm.h, hm.m) == (True, 1, 2)
    _assert_pass(_claims("prop2.5"), budget=60.0)


def _random_composed(rng, fresh, slot_seq, depth):
    """Random part; leaf words draw fresh variables so slots stay disjoint."""
    if depth == 0:
        vs = [fresh() for _ in range(rng.randint(1, 2))]
        letters = tuple(rng.choice(vs) for _ in range(rng.randint(1, 4)))
        return Word(letters)
    slots = [(next(slot_seq),) for _ in range(rng.randint(1, 3))]
    outer = Word(tuple(rng.choice(slots) for _ in range(rng.randint(1, 4))))
    used = sorted(set(outer.letters))
    inner = {}
    for s in used:
        child_depth = depth - 1 if rng.random() < 0.5 else 0
        inner[s] = _random_composed(rng, fresh, slot_seq, child_depth)
    return ComposedWord(outer=outer, inner=inner)


def test_criterion_07_image_set_matches_brute_force():
    algebras = [b2(), b21(), rook_monoid(2), build_algebra("brandt:2:2")]
    rng = random.Random(20260819)
    slot_seq = itertools.count(1000)
    accepted = 0
    attempts = 0
    while accepted < 24 and attempts < 400:
        attempts += 1
        S = algebras[attempts % len(algebras)]
        counter = itertools.count(1)
        fresh = lambda: (next(counter),)
        cw = _random_composed(rng, fresh, slot_seq, depth=2)
        if isinstance(cw, Word):
            continue
        flat = cw.flatten()
        nvars = len(flat.variables())
        if S.size ** nvars > 10 ** 7:
            continue
        hier = image_set(S, cw)
        brute = image_set(S, flat)
        assert hier.values == brute.values
        assert hier.covered == brute.covered == S.size ** nvars
        for val in hier.values:
            assert evaluate(flat, S, hier.witnesses[val]) == val
            assert evaluate(flat, S, brute.witnesses[val]) == val
        accepted += 1
    assert accepted >= 20


def _fold_injections(word, gens):
    acc = None
    for var, sign in word.letters:
        g = gens[var] if sign > 0 else partial_invert(gens[var])
        acc = g if acc is None else partial_compose(acc, g)
    return acc


def test_criterion_08_generator_construction():
    # level 1: one up-shift pair per plain letter position of w_2^(1)
    gens1 = dict(kadourek_generators(2, 1))
    assert gens1[(1,)].as_dict() == {0: 1, 3: 2}
    assert gens1[(2,)].as_dict() == {1: 2, 4: 3}

    # level 2 pair sets, variable by variable
    gens2 = dict(kadourek_generators(2, 2))
    assert gens2[(1, 1)].as_dict() == {0: 1, 3: 2, 9: 10, 12: 11}
    assert gens2[(1, 2)].as_dict() == {4: 5, 7: 6, 13: 14, 16: 15}
    assert gens2[(2, 1)].as_dict() == {1: 2, 4: 3, 8: 9, 11: 10}
    assert gens2[(2, 2)].as_dict() == {5: 6, 8: 7, 12: 13, 15: 14}
    for g in gens2.values():
        assert len(g.pairs) == 4  # 2^(h-1) = 2 pairs per sign

    # evaluating the unary words at the inverse generators, composition with
    # the right factor acting first
    for h, expect in ((1, {4: 0}), (2, {16: 0})):
        gens = {v: partial_invert(g) for v, g in kadourek_generators(2, h)}
        w = build_w(2, h)
        img = _fold_injections(w, gens)
        assert img.as_dict() == expect
        img2 = _fold_injections(type(w)(letters=w.letters + w.letters), gens)
        assert img2.as_dict() == {}

    # the same values through the closure's multiplication table
    for h, label in ((1, "{4->0}"), (2, "{16->0}")):
        sg, _, gen_map = kadourek_semigroup(2, h)
        tau = {v: int(sg.inv[e]) for v, e in gen_map.items()}
        w = build_w(2, h)
        val = evaluate(w, sg, tau)
        assert sg.labels[val] == label
        sq = evaluate(type(w)(letters=w.letters + w.letters), sg, tau)
        assert sg.labels[sq] == "{}"


def test_criterion_09_power_law_on_closures():
    _assert_pass(_claims("cor3.2"))


def test_criterion_10_witness_refutes_square_identity():
    _assert_pass(_claims("prop3.3"))


def _check_with_fallback(S, lhs, rhs):
    try:
        return check_identity(S, lhs, rhs, budget=2_000_000)
    except BudgetExceeded:
        return check_identity(S, lhs, rhs, mode="sampled",
                              trials=1_000_000, seed=11)


def test_criterion_11_substitution_semantics():
    algebras = [b21(), rook_monoid(2)]
    for n, h in [(2, 1), (2, 2), (3, 1), (3, 2)]:
        phi, psi = phi_psi(n, h)
        w = build_w(n, h)
        for m in (1, 2):
            v = build_v(n, m, h)
            lhs_phi = substitute(v, phi)
            lhs_psi = substitute(v, psi)
            for S in algebras:
                rep = _check_with_fallback(S, lhs_phi, w)
                assert rep.verdict in ("holds", "holds-sampled"), (n, h, m)
                rep = _check_with_fallback(S, lhs_psi, w.inverse())
                assert rep.verdict in ("holds", "holds-sampled"), (n, h, m)


def test_criterion_12_infimum_formulas():
    _assert_pass(_claims("lemma4.1"), budget=5.0)


def test_criterion_13_additive_separation():
    results = _claims("remark4.3")
    _assert_pass(results)
    assert results[0].checked == 49 + 7  # full pass plus least counterexample


def test_criterion_14_two_element_collapse():
    results = _claims("remark1.3")
    _assert_pass(results)
    assert results[0].checked == 4


def test_criterion_15_series_classification():
    hm2 = classify_hm(rook_monoid(2))
    assert (hm2.is_hm, hm2.h, hm2.m) == (True, 2, 2)
    hmr = classify_hm(rook_monoid_restricted_3())
    assert (hmr.is_hm, hmr.h, hmr.m) == (True, 3, 6)
    hm4 = classify_hm(rook_monoid(4))
    assert not hm4.is_hm

    want = {
        1: ["BrandtOverGroup(abelian,exp=1,index=1)"],
        2: ["BrandtOverGroup(abelian,exp=1,index=2)",
            "BrandtOverGroup(abelian,exp=2,index=1)"],
        3: ["BrandtOverGroup(abelian,exp=1,index=3)",
            "BrandtOverGroup(abelian,exp=2,index=3)",
            "BrandtOverGroup(non-abelian,exp=6,index=1)"],
    }
    for t, tags in want.items():
        ser = principal_series(rook_monoid(t))
        got = [tag for _, tag in ser.factors[1:]]
        assert all(isinstance(tag, BrandtTag) for tag in got)
        assert [str(tag) for tag in got] == tags


def _witness_report(workers):
    sg, _, gen_map = kadourek_semigroup(2, 2)
    phi, _ = phi_psi(2, 2)
    v = build_v(2, 1, 2)
    tau = {}
    for var in sorted(set(v.letters)):
        (base, sign), = phi[var].letters
        e = gen_map[base]
        tau[var] = int(sg.inv[e]) if sign > 0 else int(e)
    rep = check_identity(sg, v, v * v, mode="witness", witness=tau,
                         workers=workers)
    return render_report(rep, sg, v, v * v)


def _image_reports(workers):
    chunks = []
    S2 = rook_monoid(2)
    for n in (2, 3):
        rep = check_idempotent_image(S2, build_v_composed(n, 2, 2),
                                     workers=workers)
        chunks.append(render_report(rep, S2))
    S3 = rook_monoid(3)
    rep = check_idempotent_image(S3, build_v_composed(2, 6, 4), workers=workers)
    chunks.append(render_report(rep, S3))
    img = image_set(S3, build_v(2, 6, 1), workers=workers)
    chunks.append(repr(img.values))
    chunks.append(repr(sorted((v, sorted(w.items()))
                              for v, w in img.witnesses.items())))
    chunks.append(_witness_report(workers))
    return "\n".join(chunks)


def test_criterion_16_worker_count_determinism():
    baseline = _image_reports(1)
    assert "verdict: holds" in baseline and "verdict: fails" in baseline
    for workers in (2, 8):
        assert _image_reports(workers) == baseline
