import json
import random

import pytest
from hypothesis import given

from freegroup import (
    Alphabet,
    FreeGroupError,
    Letter,
    ParseError,
    Word,
    apply_hom,
    concat,
    cyclically_reduce,
    invert,
    parse_word,
    random_word,
    reduce,
)
from freegroup.errors import AlphabetMismatch

from .conftest import F2, F3, raw_codes

A, B = 1, 2
a_, b_ = -1, -2


class TestParse:
    def test_spelled_out(self, w2):
        assert w2("a b^-1 a").codes == (A, b_, A)

    def test_uppercase_inverse_cancels(self, w2):
        assert w2("a A") == F2.identity()

    def test_exponent_expansion(self, w2):
        assert w2("b^3").codes == (B, B, B)

    def test_concatenated_tokens(self, w2):
        assert w2("ab^-1a") == w2("a b^-1 a")
        assert w2("aBBa") == w2("a b^-2 a")

    def test_negative_and_zero_exponents(self, w2):
        assert w2("a^-2").codes == (a_, a_)
        assert w2("a^0 b") == w2("b")
        assert w2("A^2") == w2("a^-2")
        assert w2("A^-1") == w2("a")

    def test_identity_token(self, w2):
        assert w2("1") == w2("") == F2.identity()

    def test_multichar_names_longest_match(self):
        alpha = Alphabet(("x", "x1", "y"))
        assert parse_word("x1x y", alpha).codes == (2, 1, 3)

    @pytest.mark.parametrize("text", ["c", "a^", "a^x", "a ^ 2", "a^-"])
    def test_errors(self, w2, text):
        with pytest.raises(ParseError):
            w2(text)

    def test_rank_zero(self):
        empty = Alphabet.default(0)
        assert parse_word("", empty) == empty.identity()
        with pytest.raises(ParseError):
            parse_word("a", empty)

    @given(raw_codes(2))
    def test_format_parse_round_trip(self, codes):
        w = Word(F2, codes)
        assert parse_word(str(w), F2) == w


class TestAlphabet:
    def test_default_names(self):
        assert F3.names == ("a", "b", "c")
        assert F3.rank == 3

    @pytest.mark.parametrize("names", [("a", "a"), ("",), ("a b",), ("1",), ("x^",)])
    def test_invalid(self, names):
        with pytest.raises(FreeGroupError):
            Alphabet(names)

    def test_large_rank_needs_names(self):
        with pytest.raises(FreeGroupError):
            Alphabet.default(27)


class TestReduce:
    def test_single_cancellation(self):
        assert reduce([Letter(0, 1), Letter(0, -1), Letter(1, 1)], F2).letters == (Letter(1, 1),)

    def test_nested_to_identity(self):
        assert reduce([A, B, b_, a_], F2) == F2.identity()

    def test_already_reduced(self):
        assert reduce([A, B, a_], F2).codes == (A, B, a_)

    def test_pairs_accepted(self):
        assert reduce([(0, 1), (1, -1)], F2).codes == (A, b_)

    @given(raw_codes())
    def test_idempotent_and_parity(self, codes):
        w = reduce(codes, F3)
        assert reduce(w.codes, F3) == w
        assert (len(codes) - len(w)) % 2 == 0
        assert all(x != -y for x, y in zip(w.codes, w.codes[1:]))

    def test_out_of_range_letter(self):
        with pytest.raises(FreeGroupError):
            Word(F2, [3])


class TestGroupLaws:
    def test_concat_middle_cancellation(self, w2):
        assert concat(w2("a b"), w2("b^-1 a")) == w2("a^2")

    def test_identity_and_inverse(self, w2):
        w = w2("a b^-1 a b a")
        assert concat(w, F2.identity()) == w
        assert concat(w, invert(w)) == F2.identity()

    def test_invert(self, w2):
        assert invert(w2("a b^-1")) == w2("b a^-1")
        assert invert(F2.identity()) == F2.identity()

    @given(raw_codes(), raw_codes(), raw_codes())
    def test_axioms(self, x, y, z):
        u, v, w = (Word(F3, c) for c in (x, y, z))
        assert concat(concat(u, v), w) == concat(u, concat(v, w))
        assert concat(u, invert(u)) == F3.identity() == concat(invert(u), u)
        assert invert(invert(u)) == u
        assert concat(u, v) == reduce(list(x) + list(y), F3)

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetMismatch):
            concat(F2.generators()[0], F3.generators()[0])

    def test_power(self, w2):
        assert w2("a b") ** 2 == w2("a b a b")
        assert w2("a b a^-1") ** 3 == w2("a b^3 a^-1")
        assert w2("a b") ** -1 == w2("b^-1 a^-1")
        assert w2("a") ** 0 == F2.identity()


class TestCyclicallyReduce:
    def test_one_peel(self, w2):
        core, conj = cyclically_reduce(w2("a b a^-1"))
        assert core == w2("b") and conj == w2("a")

    def test_already_cyclic(self, w2):
        core, conj = cyclically_reduce(w2("b a"))
        assert core == w2("b a") and conj == F2.identity()

    @given(raw_codes(max_size=30))
    def test_reassembly(self, codes):
        w = Word(F3, codes)
        core, conj = cyclically_reduce(w)
        assert concat(concat(conj, core), invert(conj)) == w
        if len(core) > 1:
            assert core.codes[0] != -core.codes[-1]


class TestApplyHom:
    def test_swap(self, w2):
        assert apply_hom([w2("b"), w2("a")], w2("a b^-1")) == w2("b a^-1")

    def test_identity_hom(self, w2):
        w = w2("a b^-1 a^3 b")
        assert apply_hom(F2.generators(), w) == w

    def test_into_other_alphabet(self):
        xy = Alphabet(("x", "y"))
        images = [parse_word("x y", xy), parse_word("y", xy)]
        assert apply_hom(images, parse_word("a b^-1", F2)) == parse_word("x", xy)

    def test_length_mismatch(self, w2):
        with pytest.raises(FreeGroupError):
            apply_hom([w2("a")], w2("a"))

    @given(raw_codes(2), raw_codes(2), raw_codes(3, 6), raw_codes(3, 6))
    def test_is_homomorphism(self, x, y, f0, f1):
        images = [Word(F3, f0), Word(F3, f1)]
        u, v = Word(F2, x), Word(F2, y)
        assert apply_hom(images, concat(u, v)) == concat(apply_hom(images, u), apply_hom(images, v))


class TestRandomWord:
    def test_empty(self):
        assert random_word(0, F2, 1) == F2.identity()

    def test_deterministic(self):
        assert random_word(50, F3, 7).codes == random_word(50, F3, 7).codes

    def test_reduced_scan(self):
        for seed in range(10**4):
            w = random_word(seed % 13, F2, seed)
            assert len(w) == seed % 13
            assert Word(F2, w.codes).codes == w.codes

    def test_rank_zero(self):
        with pytest.raises(FreeGroupError):
            random_word(1, Alphabet.default(0), 0)


def test_json_round_trip(w2):
    w = w2("a b^-1 a^2")
    data = json.loads(json.dumps(w.to_json()))
    assert data == {"alphabet": ["a", "b"], "letters": [[0, 1], [1, -1], [0, 1], [0, 1]]}
    assert Word.from_json(data) == w


def test_random_confluence_small():
    # reduction result is independent of which cancelling pair goes first
    rng = random.Random(3)
    for _ in range(2000):
        codes = [rng.choice((1, -1, 2, -2)) for _ in range(rng.randint(0, 12))]
        work = list(codes)
        while True:
            spots = [i for i in range(len(work) - 1) if work[i] == -work[i + 1]]
            if not spots:
                break
            i = rng.choice(spots)
            del work[i : i + 2]
        assert tuple(work) == reduce(codes, F2).codes
