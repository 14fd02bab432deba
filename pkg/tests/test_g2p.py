import pytest

from phonocoach.g2p import graphemes_to_phonemes, load_lexicon, word_to_phonemes, words_of
from phonocoach.phonemes import INVENTORY


def test_lexicon_words_resolve_without_fallback():
    lex = load_lexicon()
    assert len(lex) > 1000
    for word in ("THE", "HELLO", "MORNING", "RED", "SEE"):
        assert word in lex
        phones, fallback = word_to_phonemes(word)
        assert not fallback
        assert all(p in INVENTORY for p in phones)


def test_fallback_stays_in_inventory():
    for word in ("ZORBLE", "QUIXLY", "BRELTH", "SNOOPLE"):
        phones, fallback = word_to_phonemes(word)
        assert fallback
        assert phones, word
        assert all(p in INVENTORY for p in phones), (word, phones)


def test_fallback_is_deterministic():
    assert word_to_phonemes("GLORPIT") == word_to_phonemes("GLORPIT")


def test_sentence_conversion_concatenates_words():
    seq = graphemes_to_phonemes("Red door.")
    red, _ = word_to_phonemes("RED")
    door, _ = word_to_phonemes("DOOR")
    assert seq.phonemes == red + door
    assert not seq.fallback and not seq.skipped


def test_unknown_words_flagged_as_fallback():
    seq = graphemes_to_phonemes("The zorble.")
    assert seq.fallback


def test_unmappable_characters_flagged_as_skipped():
    seq = graphemes_to_phonemes("abc #42 def")
    assert seq.skipped


def test_words_of_strips_punctuation_and_uppercases():
    assert words_of("The red, fast car!") == ["THE", "RED", "FAST", "CAR"]
    assert words_of("") == []


def test_result_iterates_over_phonemes():
    seq = graphemes_to_phonemes("go")
    assert tuple(seq) == seq.phonemes


@pytest.mark.parametrize("word", ["", "123"])
def test_unpronounceable_tokens_give_empty(word):
    phones, _ = word_to_phonemes(word)
    assert phones == ()
