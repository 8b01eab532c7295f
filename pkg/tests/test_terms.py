import pytest

from invalg.families import b21
from invalg.terms import (BadParameters, ComposedWord, DisjointnessViolated,
                          SizeExceeded, UnaryTerm, UnboundVariable, Word,
                          build_u, build_v, build_v_composed, build_w,
                          evaluate, parse_term, phi_psi, print_term,
                          rewrite_plus, substitute, x)


def test_block_word_shapes():
    assert print_term(build_u(2, 2, 1)) == \
        "x[1] x[2] x[3] x[4] x[2] x[1] x[3] x[4]"
    # degenerate shapes: one of the two groups may be empty
    assert print_term(build_u(0, 2, 1)) == "x[1] x[2] x[1] x[2]"
    assert print_term(build_u(2, 0, 1)) == "x[1] x[2] x[2] x[1]"
    assert print_term(build_u(1, 1, 2)) == \
        "x[1] x[2] x[1] x[2] x[1] x[2] x[1] x[2]"
    with pytest.raises(BadParameters):
        build_u(0, 0, 1)
    assert len(build_u(3, 2, 4).letters) == 2 * 4 * (3 + 2)


def test_nested_word_lengths_and_flattening():
    for n, m, h in [(1, 1, 2), (2, 1, 2), (2, 2, 2), (2, 1, 3)]:
        v = build_v(n, m, h)
        assert len(v.letters) == (4 * n * m) ** h
        assert build_v_composed(n, m, h).flatten() == v
    assert build_v(2, 3, 1) == build_u(2, 2, 3)


def test_unary_word_construction():
    assert print_term(build_w(2, 1)) == "x[1] x[2] x[1]^-1 x[2]^-1"
    assert print_term(build_w(2, 2)) == (
        "x[1,1] x[2,1] x[1,1]^-1 x[2,1]^-1 "
        "x[1,2] x[2,2] x[1,2]^-1 x[2,2]^-1 "
        "x[2,1] x[1,1] x[2,1]^-1 x[1,1]^-1 "
        "x[2,2] x[1,2] x[2,2]^-1 x[1,2]^-1")
    w = build_w(2, 2)
    assert len(w.letters) == 16
    # every variable occurs twice plain and twice inverted
    for v in w.variables():
        signs = [s for u, s in w.letters if u == v]
        assert sorted(signs) == [-1, -1, 1, 1]
    # inverse reverses and flips signs
    assert w.inverse().letters == tuple((v, -s) for v, s in reversed(w.letters))


def test_composed_word_invariants():
    inner = {x(10): Word((x(1), x(2))), x(11): Word((x(3),))}
    cw = ComposedWord(outer=Word((x(10), x(11), x(10))), inner=inner)
    assert cw.flatten() == Word((x(1), x(2), x(3), x(1), x(2)))
    with pytest.raises(UnboundVariable):
        ComposedWord(outer=Word((x(10), x(12))), inner=inner)
    with pytest.raises(UnboundVariable):
        ComposedWord(outer=Word((x(10),)), inner=inner)
    with pytest.raises(DisjointnessViolated):
        ComposedWord(outer=Word((x(10), x(11))),
                     inner={x(10): Word((x(1),)), x(11): Word((x(1), x(2)))})


def test_substitution_composes_signs():
    w = UnaryTerm(letters=(((1,), -1),))
    image = substitute(w, {(1,): UnaryTerm(letters=(((2,), -1),))})
    assert image == UnaryTerm(letters=(((2,), 1),))
    # words map to words when every image is a word
    u = Word((x(1), x(2), x(1)))
    image = substitute(u, {x(1): Word((x(3),)), x(2): Word((x(4), x(5)))})
    assert image == Word((x(3), x(4), x(5), x(3)))


def test_level_one_assignments():
    phi, psi = phi_psi(2, 1)
    assert phi == {
        (1,): UnaryTerm(letters=(((1,), 1),)),
        (2,): UnaryTerm(letters=(((2,), 1),)),
        (3,): UnaryTerm(letters=(((1,), -1),)),
        (4,): UnaryTerm(letters=(((2,), -1),)),
    }
    assert psi == {
        (1,): UnaryTerm(letters=(((2,), 1),)),
        (2,): UnaryTerm(letters=(((1,), 1),)),
        (3,): UnaryTerm(letters=(((2,), -1),)),
        (4,): UnaryTerm(letters=(((1,), -1),)),
    }
    # each level-h assignment sends every level-h variable to a single letter
    phi2, psi2 = phi_psi(2, 2)
    assert sorted(phi2) == sorted(psi2) == build_v(2, 1, 2).variables()
    for t in list(phi2.values()) + list(psi2.values()):
        assert len(t.letters) == 1


def test_plus_rewriting_eliminates_additions():
    term = parse_term("x+y")
    word = rewrite_plus(term, p=2)
    assert print_term(word) == "x[1] x[2]^-1 x[1] x[2]^-1 x[1]"
    S = b21()
    # the rewriting realizes the infimum, checked against a direct evaluation
    from invalg.order_semiring import inf_table, natural_order
    inf = inf_table(natural_order(S))
    for a in range(S.size):
        for b in range(S.size):
            got = evaluate(word, S, {(1,): a, (2,): b})
            assert got == int(inf[a, b])


def test_parse_and_print_round_trip():
    for text in ("x[1] x[2] x[1]^-1 x[2]^-1",
                 "x[1] x[2] x[3] x[4] x[2] x[1] x[3] x[4]",
                 "x[1]*x[2] + x[2]*x[1]",
                 "x[1] + x[2]"):
        assert print_term(parse_term(text)) == text
    # sugar names and powers
    assert parse_term("x y^-1 (x y)^2") == UnaryTerm(letters=(
        ((1,), 1), ((2,), -1), ((1,), 1), ((2,), 1), ((1,), 1), ((2,), 1)))
    assert parse_term("x x") == Word(((1,), (1,)))
    assert parse_term("(x*y+y*x)^2") == parse_term(
        "(x*y+y*x) * (x*y+y*x)")
    with pytest.raises(ValueError):
        parse_term("x^-1 + y")
    with pytest.raises(ValueError):
        parse_term("x +")


def test_evaluate_matches_manual_products():
    S = b21()
    word = parse_term("x y x^-1")
    # E12 * E22 * E21 = E11
    assert evaluate(word, S, {(1,): 2, (2,): 4}) == 1
    with pytest.raises(UnboundVariable):
        evaluate(word, S, {(1,): 2})


def test_size_guard_on_flat_builders_only():
    with pytest.raises(SizeExceeded):
        build_v(2, 6, 5)
    with pytest.raises(SizeExceeded):
        build_w(100, 3)
    # the composed representation deliberately has no such cap: it exists to
    # carry words whose flat form exceeds it
    cw = build_v_composed(2, 6, 4)
    assert len(cw.flatten().letters) == 48 ** 4
