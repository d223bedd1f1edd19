import pytest
from hypothesis import given
from hypothesis import strategies as st

from sqiis.errors import MalformedConfigError, UnknownTagError
from sqiis.lexicon import (
    load_lexicons,
    normalize_phrase,
    normalize_words,
    serialize_lexicons,
)
from sqiis.registry import load_registries

REGISTRY = "[tags]\naddress\tplace\ncategory\tbusiness kind\nmovie_title\tfilm\n[domains]\nd\tx\n"


@pytest.fixture()
def tags():
    return load_registries(REGISTRY)[0]


def test_two_single_word_entries(tags):
    lex = load_lexicons(tags, "category\trestaurant\naddress\tandheri\n")
    assert len(lex) == 2
    assert lex.max_phrase_words == 1
    assert lex.lookup("restaurant") == {tags.position("category")}
    assert lex.lookup("andheri") == {tags.position("address")}


def test_multi_word_phrase_raises_max_phrase_words(tags):
    lex = load_lexicons(tags, "movie_title\tslumdog millionaire\n")
    assert lex.max_phrase_words == 2
    assert lex.lookup("slumdog millionaire") == {tags.position("movie_title")}


def test_unknown_tag_rejected(tags):
    with pytest.raises(UnknownTagError):
        load_lexicons(tags, "colour\tred\n")


@pytest.mark.parametrize("text", ["category\t...\n", "category\t\n", "restaurant\n"])
def test_malformed_lines_rejected(tags, text):
    with pytest.raises(MalformedConfigError):
        load_lexicons(tags, text)


def test_lookup_miss_is_empty_set(tags):
    lex = load_lexicons(tags, "category\trestaurant\n")
    assert lex.lookup("zzzz-unknown") == frozenset()


def test_phrase_under_two_tags_returns_both(tags):
    # Ambiguity is permitted; both owning tags must come back.
    lex = load_lexicons(tags, "category\tpalace\naddress\tpalace\n")
    result = lex.lookup("palace")
    assert tags.position("category") in result
    assert tags.position("address") in result
    assert len(result) == 2


def test_lookup_normalizes_its_argument(tags):
    lex = load_lexicons(tags, "category\trestaurant\n")
    assert lex.lookup("  Restaurant, ") == {tags.position("category")}
    assert lex.lookup("RESTAURANT") == {tags.position("category")}


def test_entries_normalized_at_load(tags):
    lex = load_lexicons(tags, 'address\t "Linking   Road," \n')
    assert lex.lookup("linking road") == {tags.position("address")}


def test_duplicate_entry_collapses(tags):
    lex = load_lexicons(tags, "category\trestaurant\ncategory\tRestaurant\n")
    assert len(lex) == 1


def test_comments_and_blanks_ignored(tags):
    lex = load_lexicons(tags, "# comment\n\ncategory\trestaurant\n")
    assert len(lex) == 1


def test_normalize_words_strips_boundary_punctuation():
    assert normalize_words('Hello, "World"!') == ["hello", "world"]
    assert normalize_words("  a   b  ") == ["a", "b"]
    assert normalize_words("don't") == ["don't"]  # interior punctuation kept
    assert normalize_words("?!.,") == []


def test_normalize_phrase_collapses_whitespace():
    assert normalize_phrase("  Slumdog   MILLIONAIRE. ") == "slumdog millionaire"


@given(st.text(max_size=40))
def test_normalization_is_idempotent(text):
    once = normalize_phrase(text)
    assert normalize_phrase(once) == once


@given(st.text(max_size=40))
def test_lookup_invariant_under_normalization(text):
    registry = load_registries(REGISTRY)[0]
    lex = load_lexicons(registry, "category\trestaurant\naddress\tlinking road\n")
    assert lex.lookup(normalize_phrase(text)) == lex.lookup(text)


def test_serialize_round_trip(tags):
    lex = load_lexicons(tags, "category\trestaurant\naddress\tlinking road\naddress\tandheri\n")
    reloaded = load_lexicons(tags, serialize_lexicons(tags, lex))
    assert reloaded.phrase_tags == lex.phrase_tags
    assert reloaded.max_phrase_words == lex.max_phrase_words
