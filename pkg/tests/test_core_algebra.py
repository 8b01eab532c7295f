import numpy as np
import pytest

from invalg.core_algebra import (FiniteSemigroup, GeneratorSet, LimitExceeded,
                                 NotInverse, compute_inverses, find_identity,
                                 find_zero, from_cayley_text, generate_closure,
                                 idempotents, subsemigroup, to_cayley_text,
                                 verify_associativity, with_inverses)
from invalg.families import (b2, b21, partial_compose, PartialInjection,
                             rook_monoid, sigma7)


def test_generate_closure_reaches_the_whole_semigroup():
    chi1 = PartialInjection(5, ((0, 1), (3, 2)))
    chi2 = PartialInjection(5, ((1, 2), (4, 3)))
    gens = GeneratorSet(elements=[chi1, chi2], product=partial_compose,
                        key=lambda p: p.pairs)
    sg, elements = generate_closure(gens, labeler=lambda p: p.label())
    assert sg.size == len(elements) == len(set(e.pairs for e in elements))
    assert verify_associativity(sg)
    # generators come first, in the order given
    assert sg.labels[0] == "{0->1,3->2}"
    assert sg.labels[1] == "{1->2,4->3}"


def test_generate_closure_respects_limit():
    chi1 = PartialInjection(5, ((0, 1), (3, 2)))
    chi2 = PartialInjection(5, ((1, 2), (4, 3)))
    gens = GeneratorSet(elements=[chi1, chi2], product=partial_compose,
                        key=lambda p: p.pairs)
    with pytest.raises(LimitExceeded):
        generate_closure(gens, limit=3)


def test_associativity_holds_on_builtin_families():
    for S in (b2(), b21(), rook_monoid(2), sigma7().reduct):
        assert verify_associativity(S)


def test_inverses_match_matrix_transpose():
    S = rook_monoid(2)
    from invalg.families import parse_matrix, format_matrix, _transpose
    for i in range(S.size):
        j = int(S.inv[i])
        assert S.labels[j] == format_matrix(_transpose(parse_matrix(S.labels[i])))


def test_compute_inverses_rejects_non_inverse_semigroup():
    # left-zero band: xyx = x and yxy = y for every pair, so the inverse
    # element is not unique
    mul = np.array([[0, 0], [1, 1]], dtype=np.int32)
    S = FiniteSemigroup(mul=mul, inv=None, labels=("a", "b"))
    with pytest.raises(NotInverse):
        compute_inverses(S)


def test_zero_and_identity_detection():
    S = b21()
    assert find_zero(S.mul) == 0 == S.zero
    assert find_identity(S.mul) == 5 == S.identity
    assert b2().identity is None
    assert find_identity(b2().mul) is None


def test_with_inverses_is_idempotent():
    S = with_inverses(b2())
    assert S.inv is not None
    assert with_inverses(S) is S


def test_idempotents_of_b21():
    assert idempotents(b21()) == [0, 1, 4, 5]


def test_subsemigroup_closure_with_inverses():
    S = b21()
    # one rank-one non-idempotent generates all of B2 when inverses are added
    sub, embedding = subsemigroup(S, [2], closed_under_inv=True)
    assert sorted(embedding.tolist()) == [0, 1, 2, 3, 4]
    assert sub.inv is not None and sub.zero is not None
    # the embedding respects multiplication
    for i in range(sub.size):
        for j in range(sub.size):
            assert int(S.mul[embedding[i], embedding[j]]) == \
                int(embedding[sub.mul[i, j]])
    # without inverses it only reaches its own products
    sub, embedding = subsemigroup(S, [2], closed_under_inv=False)
    assert sorted(embedding.tolist()) == [0, 2]


def test_cayley_text_round_trip():
    for S in (b21(), sigma7().reduct):
        T = from_cayley_text(to_cayley_text(S))
        assert np.array_equal(T.mul, S.mul)
        assert T.labels == S.labels
        assert T.zero == S.zero
        assert T.identity == S.identity
        if S.inv is not None:
            assert np.array_equal(T.inv, S.inv)
