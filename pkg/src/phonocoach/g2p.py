"""Grapheme-to-phoneme conversion: lexicon lookup with a letter-rule fallback.

Lookup order per word: bundled lexicon first, then deterministic letter
rules. The rules are crude but stable, which is all downstream scoring
needs when a generated sentence contains an out-of-lexicon word:

1. Uppercase the word and drop apostrophes.
2. Drop a final silent E (word length > 2, preceded by a consonant letter).
3. Scan left to right, longest match first, against the digraph table
   (TH, SH, CH, PH, WH, CK, NG, QU and the common vowel teams).
4. A letter identical to the previous letter is skipped (LL -> L).
5. Remaining single letters map through the letter table; Y is a consonant
   word-initially and the vowel IY elsewhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .phonemes import INVENTORY

_WORD_RE = re.compile(r"[A-Z']+")

DIGRAPHS: dict[str, tuple[str, ...]] = {
    "TH": ("TH",),
    "SH": ("SH",),
    "CH": ("CH",),
    "PH": ("F",),
    "WH": ("W",),
    "CK": ("K",),
    "NG": ("NG",),
    "QU": ("K", "W"),
    "EE": ("IY",),
    "EA": ("IY",),
    "OO": ("UW",),
    "AI": ("EY",),
    "AY": ("EY",),
    "OA": ("OW",),
    "OU": ("AW",),
    "OW": ("OW",),
    "OI": ("OY",),
    "OY": ("OY",),
    "AU": ("AO",),
    "AW": ("AO",),
    "AR": ("AA", "R"),
    "OR": ("AO", "R"),
    "ER": ("ER",),
    "IR": ("ER",),
    "UR": ("ER",),
}

LETTERS: dict[str, tuple[str, ...]] = {
    "A": ("AE",),
    "B": ("B",),
    "C": ("K",),
    "D": ("D",),
    "E": ("EH",),
    "F": ("F",),
    "G": ("G",),
    "H": ("HH",),
    "I": ("IH",),
    "J": ("JH",),
    "K": ("K",),
    "L": ("L",),
    "M": ("M",),
    "N": ("N",),
    "O": ("AA",),
    "P": ("P",),
    "Q": ("K",),
    "R": ("R",),
    "S": ("S",),
    "T": ("T",),
    "U": ("AH",),
    "V": ("V",),
    "W": ("W",),
    "X": ("K", "S"),
    "Y": ("Y",),
    "Z": ("Z",),
}

_VOWEL_LETTERS = set("AEIOU")


@lru_cache(maxsize=1)
def load_lexicon() -> dict[str, tuple[str, ...]]:
    """Parse the bundled word -> phonemes lexicon."""
    text = resources.files("phonocoach.data").joinpath("lexicon.txt").read_text()
    lexicon: dict[str, tuple[str, ...]] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        word, *phones = line.split()
        lexicon[word] = tuple(phones)
    return lexicon


def letter_rules(word: str) -> tuple[str, ...]:
    """Apply the documented fallback rules to a single uppercase word."""
    word = word.replace("'", "")
    if len(word) > 2 and word.endswith("E") and word[-2] not in _VOWEL_LETTERS:
        word = word[:-1]
    phones: list[str] = []
    i = 0
    while i < len(word):
        pair = word[i : i + 2]
        if pair in DIGRAPHS:
            phones.extend(DIGRAPHS[pair])
            i += 2
            continue
        ch = word[i]
        if i > 0 and word[i - 1] == ch:
            i += 1
            continue
        if ch == "Y" and i > 0:
            phones.append("IY")
        elif ch in LETTERS:
            phones.extend(LETTERS[ch])
        i += 1
    return tuple(phones)


@dataclass(frozen=True)
class G2PResult:
    """Phoneme sequence for a text, with per-word provenance flags."""

    phonemes: tuple[str, ...]
    fallback: bool = False  # at least one word went through letter rules
    skipped: bool = False  # at least one character could not be mapped

    def __iter__(self):
        return iter(self.phonemes)

    def __len__(self):
        return len(self.phonemes)


@lru_cache(maxsize=4096)
def word_to_phonemes(word: str) -> tuple[tuple[str, ...], bool]:
    """Single uppercase word -> (phonemes, used_fallback)."""
    lexicon = load_lexicon()
    hit = lexicon.get(word) or lexicon.get(word.replace("'", ""))
    if hit is not None:
        return hit, False
    return letter_rules(word), True


def graphemes_to_phonemes(text: str) -> G2PResult:
    """Convert a word sequence to its concatenated phoneme sequence.

    Characters outside letters/apostrophes/spaces/terminal punctuation are
    skipped and flagged on the result rather than raising.
    """
    upper = text.upper()
    stripped = re.sub(r"[.!?,;:]", " ", upper)
    skipped = bool(re.search(r"[^A-Z' ]", stripped.strip()))
    phones: list[str] = []
    fallback = False
    for match in _WORD_RE.finditer(stripped):
        word = match.group().strip("'")
        if not word:
            continue
        word_phones, used_rules = word_to_phonemes(word)
        phones.extend(word_phones)
        fallback = fallback or used_rules
    assert all(p in INVENTORY for p in phones)
    return G2PResult(tuple(phones), fallback=fallback, skipped=skipped)


def words_of(text: str) -> list[str]:
    """Uppercase word tokens of a sentence, punctuation stripped."""
    return [m.group().strip("'") for m in _WORD_RE.finditer(text.upper()) if m.group().strip("'")]
