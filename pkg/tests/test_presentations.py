import pytest
from hypothesis import given, settings, strategies as st

from pochette.abelian import abelian_invariants
from pochette.coset_enum import Completed, certify_trivial, enumerate_cosets
from pochette.errors import InputError
from pochette.presentations import (
    FinitePresentation,
    MissingSection,
    PresentationParseError,
    add_relator,
    format_presentation,
    parse_presentation,
    relators_equivalent,
    tietze_simplify,
)
from pochette.words import AlphabetMismatch, Generator, Word, parse_word

X = Generator("x")
Y = Generator("y")


def w(text, alphabet=(X, Y)):
    return parse_word(text, alphabet)


class TestParse:
    def test_surgery_presentation(self):
        P = parse_presentation("gens: x,y\nrels: y x^-1 y x y^-1 x ; y^2 x")
        assert P.alphabet == (X, Y)
        assert P.relators == (w("y x^-1 y x y^-1 x"), w("y^2 x"))

    def test_free_group(self):
        P = parse_presentation("gens: x\nrels:")
        assert P.alphabet == (Generator("x"),)
        assert P.relators == ()

    def test_s3_order_via_enumeration(self):
        P = parse_presentation("gens: a,b\nrels: a^2; b^2; a b a b a b")
        result = enumerate_cosets(P)
        assert isinstance(result, Completed) and result.index == 6

    def test_comments_and_blank_lines(self):
        text = "# spun trefoil\n\ngens: x, y  # generators\n\nrels: y x^-1 y x y^-1 x\n"
        P = parse_presentation(text)
        assert len(P.relators) == 1

    def test_missing_sections(self):
        with pytest.raises(MissingSection):
            parse_presentation("rels: x")
        with pytest.raises(MissingSection):
            parse_presentation("gens: x")

    def test_word_errors_carry_line(self):
        with pytest.raises(PresentationParseError) as exc:
            parse_presentation("gens: x\nrels: x ; z")
        assert exc.value.line == 2

    def test_unrecognized_line(self):
        with pytest.raises(PresentationParseError):
            parse_presentation("gens: x\nstuff\nrels:")

    def test_duplicate_generators_rejected(self):
        with pytest.raises(InputError):
            parse_presentation("gens: x, x\nrels:")

    def test_round_trip(self):
        for text in (
            "gens: x, y\nrels: y x^-1 y x y^-1 x ; y^2 x",
            "gens: x\nrels: ",
            "gens: \nrels: ",
            "gens: a, b, c\nrels: a b^-2 c ; c^3",
        ):
            P = parse_presentation(text)
            assert parse_presentation(format_presentation(P)) == P


class TestConstruction:
    def test_relators_stored_cyclically_reduced(self):
        P = FinitePresentation((X, Y), (w("x y x^-1"),))
        assert P.relators == (w("y"),)

    def test_identity_relator_dropped(self):
        P = FinitePresentation((X,), (Word(),))
        assert P.relators == ()

    def test_duplicates_up_to_rotation_and_inversion_dropped(self):
        P = FinitePresentation((X, Y), (w("x y"), w("y x"), w("y^-1 x^-1")))
        assert len(P.relators) == 1

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetMismatch):
            FinitePresentation((X,), (w("x y"),))


class TestAddRelator:
    def test_appends(self):
        P = parse_presentation("gens: x,y\nrels: y x^-1 y x y^-1 x")
        Q = add_relator(P, w("y^2 x"))
        assert Q.relators == P.relators + (w("y^2 x"),)

    def test_identity_unchanged(self):
        P = parse_presentation("gens: x,y\nrels: x y")
        assert add_relator(P, Word()) == P

    def test_idempotent(self):
        P = parse_presentation("gens: x,y\nrels: x y")
        once = add_relator(P, w("y^2 x"))
        assert add_relator(once, w("y^2 x")) == once


class TestRelatorsEquivalent:
    def test_lemma_family_anchor(self):
        # (yx)^(p-1) y^2 x vs y (xy)^p at p = 2
        assert relators_equivalent(w("y x y^2 x"), w("y x y x y"))

    def test_reflexive(self):
        word = w("x y^-1 x")
        assert relators_equivalent(word, word)

    def test_distinct_generators(self):
        assert not relators_equivalent(w("x"), w("y"))

    @given(st.lists(st.tuples(st.sampled_from([X, Y]), st.sampled_from([1, -1])), max_size=8))
    def test_rotations_and_inverses_equivalent(self, letters):
        word = Word(tuple(letters))
        for k in range(max(1, len(word))):
            rotated = Word(word.letters[k:] + word.letters[:k])
            assert relators_equivalent(word, rotated)
        assert relators_equivalent(word, Word(tuple((g, -s) for g, s in reversed(word.letters))))


def random_presentations():
    gens = st.sampled_from([(X,), (X, Y)])
    return gens.flatmap(
        lambda alphabet: st.lists(
            st.lists(
                st.tuples(st.sampled_from(alphabet), st.sampled_from([1, -1])),
                max_size=6,
            ).map(lambda ls: Word(tuple(ls))),
            max_size=3,
        ).map(lambda rels: FinitePresentation(alphabet, tuple(rels)))
    )


class TestTietze:
    def test_eliminates_to_empty(self):
        P = parse_presentation("gens: x, y\nrels: y^2 x ; y")
        result = tietze_simplify(P, 100)
        assert result.presentation == FinitePresentation((), ())
        assert not result.budget_exhausted

    def test_nothing_to_do(self):
        P = parse_presentation("gens: x\nrels:")
        result = tietze_simplify(P, 10)
        assert result.presentation == P and result.steps == 0

    def test_surgered_spun_trefoil_simplifies_to_trivial_group(self):
        P = parse_presentation("gens: x,y\nrels: y x^-1 y x y^-1 x ; y^2 x")
        result = tietze_simplify(P, 1000)
        assert certify_trivial(result.presentation, 10_000).is_trivial()
        assert abelian_invariants(result.presentation).is_trivial()

    def test_budget_exhaustion_flag(self):
        P = parse_presentation("gens: x,y\nrels: y x^-1 y x y^-1 x ; y^2 x")
        result = tietze_simplify(P, 1)
        assert result.steps == 1 and result.budget_exhausted

    def test_bad_budget(self):
        with pytest.raises(InputError):
            tietze_simplify(parse_presentation("gens: x\nrels:"), 0)

    @given(random_presentations())
    @settings(max_examples=60, deadline=None)
    def test_preserves_abelian_invariants(self, P):
        result = tietze_simplify(P, 500)
        assert abelian_invariants(result.presentation) == abelian_invariants(P)

    @given(random_presentations())
    @settings(max_examples=60, deadline=None)
    def test_never_grows(self, P):
        result = tietze_simplify(P, 500)
        assert result.presentation.total_relator_length() <= P.total_relator_length()

    def test_preserves_enumeration_verdicts(self):
        for text in (
            "gens: x,y\nrels: y x^-1 y x y^-1 x ; y^2 x",
            "gens: a,b\nrels: a^2; b^2; a b a b a b",
            "gens: x\nrels: x^5",
            "gens: x,y\nrels: y^2; x y x y; x^4",
        ):
            P = parse_presentation(text)
            before = enumerate_cosets(P, max_cosets=50_000)
            after = enumerate_cosets(
                tietze_simplify(P, 1000).presentation, max_cosets=50_000
            )
            assert isinstance(before, Completed) and isinstance(after, Completed)
            assert before.index == after.index
