import itertools
import random
from fractions import Fraction

import pytest

from permutiple import (
    EMPTY,
    ContinuedFraction,
    PerfectParameters,
    Permutation,
    bracket_views,
    classify,
    concat,
    concat_witness,
    continuant,
    evaluate,
    palindromic_concat,
    perfect_from_parameters,
    two_digit,
)

CF = ContinuedFraction
P = Permutation


def witness(digits, permuted, k=None):
    from permutiple import canonical_sigma

    cf = CF(digits)
    return classify(cf, canonical_sigma(digits, permuted), k, allow_noncanonical=True)


class TestConcat:
    def test_examples(self):
        assert concat(CF((7, 1, 3)), CF((7, 1, 3))) == CF((7, 1, 3, 7, 1, 3))
        assert concat(CF((2, 1, 5, 1, 2)), CF((7, 1, 3))) == CF((2, 1, 5, 1, 2, 7, 1, 3))
        assert concat(CF((5, 3, 1)), CF((2,))) == CF((5, 3, 1, 2))

    def test_canonicality_follows_right_factor(self):
        assert concat(CF((5, 3, 1)), CF((2,))).is_canonical
        assert not concat(CF((7, 1, 3)), CF((5, 3, 1))).is_canonical

    def test_empty_is_identity(self):
        cf = CF((7, 1, 3))
        assert concat(EMPTY, cf) == cf
        assert concat(cf, EMPTY) == cf
        assert concat(EMPTY, EMPTY) is EMPTY

    def test_associative(self):
        rng = random.Random(3)
        for _ in range(100):
            strings = [
                CF(tuple(rng.randint(1, 9) for _ in range(rng.randint(1, 4))))
                for _ in range(3)
            ]
            a, b, c = strings
            assert concat(concat(a, b), c) == concat(a, concat(b, c))


class TestBracketViews:
    def test_match_value(self):
        rng = random.Random(5)
        for _ in range(100):
            ds = tuple(rng.randint(1, 9) for _ in range(rng.randint(1, 6)))
            views = bracket_views(CF(ds))
            value = evaluate(CF(ds))
            assert views.full == value.numerator
            assert views.drop_first == value.denominator
            assert views.drop_last == continuant(ds[:-1])

    def test_concatenation_identity_exhaustive_short(self):
        for n1, n2 in itertools.product((1, 2, 3), repeat=2):
            for d1 in itertools.product((1, 2, 3), repeat=n1):
                for d2 in itertools.product((1, 2, 3), repeat=n2):
                    left, right = CF(d1), CF(d2)
                    joined = bracket_views(concat(left, right))
                    v1, v2 = bracket_views(left), bracket_views(right)
                    assert joined.full == v1.full * v2.full + v1.drop_last * v2.drop_first

    def test_concatenation_identity_randomized_long(self):
        rng = random.Random(7)
        for _ in range(200):
            d1 = tuple(rng.randint(1, 50) for _ in range(rng.randint(1, 10)))
            d2 = tuple(rng.randint(1, 50) for _ in range(rng.randint(1, 10)))
            joined = bracket_views(concat(CF(d1), CF(d2)))
            v1, v2 = bracket_views(CF(d1)), bracket_views(CF(d2))
            assert joined.full == v1.full * v2.full + v1.drop_last * v2.drop_first
            assert joined.drop_first == v1.drop_first * v2.full + v1.drop_both * v2.drop_first


class TestConcatWitness:
    def test_reverse_multiple_with_itself(self):
        w = witness((7, 1, 3), (3, 1, 7))
        joined = concat_witness(w, w)
        assert joined.cf == CF((7, 1, 3, 7, 1, 3))
        assert joined.value == Fraction(993, 128)
        assert joined.permuted_value == Fraction(993, 256)
        assert joined.flags.reverse_multiple
        assert joined.flags.continuant_preserving

    def test_landess_left_factor(self):
        landess = witness((2, 1, 5, 1, 2), (1, 2, 2, 1, 5))
        reverse = witness((7, 1, 3), (3, 1, 7))
        joined = concat_witness(landess, reverse)
        assert joined.cf == CF((2, 1, 5, 1, 2, 7, 1, 3))
        assert joined.permuted == CF((1, 2, 2, 1, 5, 3, 1, 7))
        assert joined.k == 2
        assert joined.flags.landess

    def test_perfect_closure(self):
        perfect = perfect_from_parameters(PerfectParameters(P((1, 0, 3, 2)), 7, (1, 2)))
        joined = concat_witness(perfect, perfect)
        assert len(joined.cf) == 8
        assert joined.flags.perfect

    def test_block_permutation_shape(self):
        w = witness((7, 1, 3), (3, 1, 7))
        joined = concat_witness(w, w)
        assert joined.sigma.images == (2, 1, 0, 5, 4, 3)

    def test_multiplier_mismatch_rejected(self):
        with pytest.raises(ValueError, match="multiplier"):
            concat_witness(witness((7, 1, 3), (3, 1, 7)), witness((6, 2), (2, 6)))

    def test_left_factor_must_be_landess(self):
        not_landess = witness((11, 1, 10, 2, 3), (1, 3, 11, 10, 2))
        assert not not_landess.flags.landess
        with pytest.raises(ValueError, match="landess"):
            concat_witness(not_landess, not_landess)

    def test_every_perfect_witness_is_accepted_as_left_factor(self):
        perfects = [
            perfect_from_parameters(PerfectParameters(P((1, 0, 3, 2)), k, (s, t)))
            for k in (2, 3) for s in (1, 2) for t in (1, 3)
        ]
        closer = two_digit(2, 2)
        for w in perfects:
            if w.k == 2:
                assert concat_witness(w, closer).flags.continuant_preserving


class TestPalindromicConcat:
    def test_singleton(self):
        w = witness((7, 1, 3), (3, 1, 7))
        assert palindromic_concat([w], 2).cf == CF((7, 1, 3))

    def test_three_blocks(self):
        a = witness((7, 1, 3), (3, 1, 7))
        b = witness((7, 2, 1, 3), (3, 1, 2, 7))
        joined = palindromic_concat([a, b, a], 2)
        assert joined.cf == CF((7, 1, 3, 7, 2, 1, 3, 7, 1, 3))
        assert joined.flags.reverse_multiple
        assert joined.value == 2 * evaluate(joined.cf.reverse())

    def test_non_palindromic_rejected(self):
        a = witness((7, 1, 3), (3, 1, 7))
        b = witness((6, 2), (2, 6), 3)
        with pytest.raises(ValueError):
            palindromic_concat([a, b], 2)

    def test_mixed_multiplier_rejected(self):
        a = witness((7, 1, 3), (3, 1, 7))
        with pytest.raises(ValueError, match="multiplier"):
            palindromic_concat([a], 3)


class TestMonoidClosure:
    def test_landess_corpus_is_closed(self):
        corpus = [two_digit(2, s) for s in range(2, 7)]
        corpus.append(witness((7, 1, 3), (3, 1, 7)))
        corpus.append(witness((2, 1, 5, 1, 2), (1, 2, 2, 1, 5)))
        for w1, w2 in itertools.product(corpus, repeat=2):
            joined = concat_witness(w1, w2)
            assert joined.flags.landess
            assert joined.value == 2 * joined.permuted_value
