"""The fixed 39-symbol ARPAbet phoneme inventory (no stress digits).

Every phoneme symbol that enters the pipeline is validated against this
inventory. Vowel/consonant membership drives consonant-cluster detection,
syllable counting, and the contextual difficulty factor in relevance
scoring.
"""

from __future__ import annotations

VOWELS: frozenset[str] = frozenset(
    "AA AE AH AO AW AY EH ER EY IH IY OW OY UH UW".split()
)

CONSONANTS: frozenset[str] = frozenset(
    "B CH D DH F G HH JH K L M N NG P R S SH T TH V W Y Z ZH".split()
)

INVENTORY: frozenset[str] = VOWELS | CONSONANTS

# Sorted once; used wherever a stable iteration order matters (bag vectors,
# synthetic sampling).
INVENTORY_ORDER: tuple[str, ...] = tuple(sorted(INVENTORY))


def is_vowel(symbol: str) -> bool:
    return symbol in VOWELS


def is_consonant(symbol: str) -> bool:
    return symbol in CONSONANTS


def strip_stress(symbol: str) -> str:
    """Drop a trailing ARPAbet stress digit (AH0 -> AH)."""
    return symbol.rstrip("012")


def cluster_positions(symbols: list[str] | tuple[str, ...]) -> set[int]:
    """Indices of phonemes sitting inside a run of 2+ consonants.

    A phoneme is "clustered" when it is a consonant and at least one
    immediate neighbour is also a consonant. Sequence boundaries count as
    non-consonants.
    """
    clustered: set[int] = set()
    n = len(symbols)
    for i, sym in enumerate(symbols):
        if not is_consonant(sym):
            continue
        before = i > 0 and is_consonant(symbols[i - 1])
        after = i + 1 < n and is_consonant(symbols[i + 1])
        if before or after:
            clustered.add(i)
    return clustered


def syllable_count(symbols: list[str] | tuple[str, ...]) -> int:
    """Syllables approximated as the number of vowel phonemes."""
    return sum(1 for s in symbols if is_vowel(s))
