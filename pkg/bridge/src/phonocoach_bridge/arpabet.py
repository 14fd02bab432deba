"""The 39-symbol ARPAbet inventory and the model-label folding table.

Acoustic models emit label sets that are larger than the inventory the
engine understands: extended ARPAbet adds syllabic consonants, flaps and
reduced vowels, and most CTC heads add non-speech labels. ``fold_label``
maps every known model label onto the engine inventory (or to ``None``
for labels that carry no phone, which the aggregator treats as blanks).
"""

from __future__ import annotations

PHONEME_INVENTORY: frozenset[str] = frozenset(
    {
        "AA", "AE", "AH", "AO", "AW", "AY", "EH", "ER", "EY", "IH",
        "IY", "OW", "OY", "UH", "UW",
        "B", "CH", "D", "DH", "F", "G", "HH", "JH", "K", "L", "M",
        "N", "NG", "P", "R", "S", "SH", "T", "TH", "V", "W", "Y",
        "Z", "ZH",
    }
)

# Extended-label folding. Left column: labels seen in common acoustic model
# vocabularies (extended ARPAbet plus CTC housekeeping symbols). Right
# column: the inventory symbol, or None for blank/non-speech.
LABEL_FOLD: dict[str, str | None] = {
    "AX": "AH",    # schwa
    "AXR": "ER",   # r-colored schwa
    "IX": "IH",    # reduced high vowel
    "UX": "UW",    # fronted UW
    "EL": "L",     # syllabic L
    "EM": "M",     # syllabic M
    "EN": "N",     # syllabic N
    "DX": "D",     # alveolar flap
    "NX": "N",     # nasal flap
    "WH": "W",     # voiceless W
    "Q": None,     # glottal stop: no inventory phone
    "SIL": None,
    "SP": None,
    "SPN": None,
    "NSN": None,
    "<blank>": None,
    "<pad>": None,
    "|": None,     # word separator in wav2vec-style vocabularies
}


def fold_label(label: str) -> str | None:
    """Map a model label to an inventory symbol, or None for blanks.

    Unknown labels raise: a silent drop would skew the per-phoneme
    aggregation without anyone noticing.
    """
    if label in LABEL_FOLD:
        return LABEL_FOLD[label]
    sym = label.strip().upper()
    if sym in PHONEME_INVENTORY:
        return sym
    if sym in LABEL_FOLD:
        return LABEL_FOLD[sym]
    raise KeyError(f"model label {label!r} has no inventory mapping")
