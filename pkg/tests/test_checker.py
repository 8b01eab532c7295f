import itertools

import pytest

from invalg.checker import (BudgetExceeded, check_identity,
                            check_idempotent_image, image_set, render_report,
                            transfer_spotcheck)
from invalg.claims import build_algebra, wrap_for_terms
from invalg.core_algebra import FiniteSemigroup
from invalg.families import b2, b21, kadourek_semigroup, rook_monoid, sigma7
from invalg.terms import (ComposedWord, FlavorMismatch, Word, build_v,
                          build_v_composed, evaluate, parse_term, x)


def test_exhaustive_check_holds():
    rep = check_identity(b21(), parse_term("x x"), parse_term("x x x"))
    assert rep.verdict == "holds"
    assert rep.substitutions_checked == 6
    assert rep.counterexample is None
    assert rep.machine_line() == "VERDICT holds CHECKED 6 CEX none"


def test_exhaustive_counterexample_is_lexicographically_least():
    rep = check_identity(b21(), parse_term("x"), parse_term("x x"))
    assert rep.verdict == "fails"
    subs, lhs, rhs = rep.counterexample
    # elements 0 and 1 satisfy x = x^2, element 2 is the first that does not
    assert subs == (((1,), 2),)
    assert (lhs, rhs) == (2, 0)
    assert rep.substitutions_checked == 3

    # two variables: substitutions ordered with the last variable fastest
    rep = check_identity(b21(), parse_term("x y"), parse_term("y x"))
    assert rep.verdict == "fails"
    subs, _, _ = rep.counterexample
    assert subs == (((1,), 1), ((2,), 2))  # x=E11 y=E12 first in scan order


def test_budget_is_enforced():
    lhs = Word(tuple((i,) for i in range(1, 9)))
    rhs = Word(tuple((i,) for i in range(8, 0, -1)))
    with pytest.raises(BudgetExceeded) as info:
        check_identity(b21(), lhs, rhs, budget=1000)
    assert info.value.count == 6 ** 8
    assert info.value.budget == 1000


def test_sampled_mode_is_deterministic_and_needs_a_seed():
    S = rook_monoid(2)
    lhs, rhs = parse_term("x y z t x"), parse_term("x y z t y")
    a = check_identity(S, lhs, rhs, mode="sampled", trials=500, seed=42)
    b = check_identity(S, lhs, rhs, mode="sampled", trials=500, seed=42)
    assert a == b
    assert a.verdict == "fails"
    with pytest.raises(ValueError):
        check_identity(S, lhs, rhs, mode="sampled", trials=500)
    # identities that hold everywhere survive sampling
    rep = check_identity(S, parse_term("x x^-1 x"), parse_term("x"),
                         mode="sampled", trials=500, seed=7)
    assert rep.verdict == "holds-sampled"
    assert rep.trials == 500


def test_witness_mode_checks_a_single_substitution():
    S = b21()
    rep = check_identity(S, parse_term("x y"), parse_term("y x"),
                         mode="witness", witness={(1,): 1, (2,): 2})
    assert rep.verdict == "fails"
    assert rep.substitutions_checked == 1
    subs, lhs, rhs = rep.counterexample
    assert subs == (((1,), 1), ((2,), 2))
    assert (lhs, rhs) == (2, 0)  # E11*E12 = E12 but E12*E11 = 0
    rep = check_identity(S, parse_term("x y"), parse_term("y x"),
                         mode="witness", witness={(1,): 0, (2,): 2})
    assert rep.verdict == "holds-sampled"


def test_worker_count_does_not_change_the_report():
    S = rook_monoid(2)
    lhs = Word(((1,), (2,), (3,), (4,), (5,), (6,)))
    rhs = Word(((6,), (5,), (4,), (3,), (2,), (1,)))
    reports = [check_identity(S, lhs, rhs, workers=w) for w in (1, 2, 8)]
    assert reports[0].verdict == "fails"
    assert reports.count(reports[0]) == 3
    texts = {render_report(r, S, lhs, rhs) for r in reports}
    assert len(texts) == 1


def test_semiring_terms_require_a_semiring():
    with pytest.raises(FlavorMismatch):
        check_identity(b21(), parse_term("x+y"), parse_term("y+x"))
    lhs, rhs = parse_term("x+y"), parse_term("y+x")
    A = wrap_for_terms(b21(), lhs, rhs)
    rep = check_identity(A, lhs, rhs)
    assert rep.verdict == "holds"
    # plain words leave the algebra untouched
    assert wrap_for_terms(b21(), parse_term("x"), parse_term("x x")) is not A


def test_unary_terms_require_inverses():
    S = b21()
    bare = FiniteSemigroup(mul=S.mul, inv=None, labels=S.labels)
    with pytest.raises(FlavorMismatch):
        check_identity(bare, parse_term("x x^-1 x"), parse_term("x"))


def test_image_set_against_a_pure_python_enumeration():
    S = b2()
    cw = ComposedWord(
        outer=Word((x(10), x(11), x(10))),
        inner={x(10): Word((x(1), x(2))), x(11): Word((x(3),))})
    flat = cw.flatten()
    img = image_set(S, cw)
    values = set()
    first = {}
    for a, b, c in itertools.product(range(S.size), repeat=3):
        val = evaluate(flat, S, {x(1): a, x(2): b, x(3): c})
        values.add(val)
        first.setdefault(val, {x(1): a, x(2): b, x(3): c})
    assert set(img.values) == values
    assert img.covered == S.size ** 3
    for val in img.values:
        assert evaluate(flat, S, img.witnesses[val]) == val


def test_image_witnesses_use_distinct_variables_per_copy():
    S = b21()
    cw = build_v_composed(2, 1, 2)
    img = image_set(S, cw)
    leaf_vars = set(cw.flatten().variables())
    for val, witness in img.witnesses.items():
        assert set(witness) == leaf_vars
        assert evaluate(cw.flatten(), S, witness) == val


def test_idempotent_image_verdicts():
    # holds on an index-2 Brandt semigroup whose group exponent divides the
    # occurrence count of each variable
    rep = check_idempotent_image(build_algebra("brandt:2:2"),
                                 build_v_composed(2, 1, 1))
    assert rep.verdict == "holds"
    assert rep.substitutions_checked == 9 ** 4
    # fails when the group exponent does not divide it
    rep = check_idempotent_image(build_algebra("brandt:3:1"),
                                 build_v_composed(2, 1, 1))
    assert rep.verdict == "fails"
    subs, lhs, rhs = rep.counterexample
    S = build_algebra("brandt:3:1")
    word = build_v(2, 1, 1)
    assert evaluate(word, S, dict(subs)) == lhs
    assert evaluate(Word(word.letters * 2), S, dict(subs)) == rhs
    assert lhs != rhs


def test_transfer_spotcheck_finds_no_violations():
    big, _, _ = kadourek_semigroup(3, 1)
    report = transfer_spotcheck(big, b21(), gens_count=2, trials=5, seed=7)
    assert report.violations == ()
    assert report.identities_tested > 0
    assert report.subsemigroups_tested == 5


def test_render_report_is_plain_text():
    S = b21()
    rep = check_identity(S, parse_term("x"), parse_term("x x"))
    text = render_report(rep, S, parse_term("x"), parse_term("x x"))
    assert text == (
        "identity: x[1] ~ x[1] x[1]\n"
        "algebra size: 6\n"
        "mode: exhaustive\n"
        "verdict: fails\n"
        "substitutions checked: 3\n"
        "counterexample:\n"
        "  x[1] = 01/00 (element 2)\n"
        "  lhs value: 01/00 (element 2)\n"
        "  rhs value: 00/00 (element 0)\n"
        "VERDICT fails CHECKED 3 CEX x[1]=2\n")
