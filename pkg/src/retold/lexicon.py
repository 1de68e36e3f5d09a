"""Closed lexicon of lemmas and verb frames.

Entries carry irregular morphology (strong pasts, mutated plurals), synonym
sets tagged by register, and optional onset splits used by the stuttering
transform. Frames map thematic roles of a predicate to deep-syntactic
relations so the clause builder knows where each argument goes.

Both tables load from plain-text data files shipped with the package; see
``data/lexicon.txt`` and ``data/frames.txt`` for the record formats.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Mapping, Optional

NOUN = "noun"
VERB = "verb"
ADJECTIVE = "adjective"
ADVERB = "adverb"
PREPOSITION = "preposition"
FUNCTION = "function"

POS_TAGS = frozenset({NOUN, VERB, ADJECTIVE, ADVERB, PREPOSITION, FUNCTION})
REGISTERS = frozenset({"neutral", "casual"})

# surface-form slots an entry may override
IRREGULAR_KEYS = ("past", "past_plural", "past_participle", "plural", "third_singular")

VOWELS = "aeiou"

FINITE = "finite_clause"
INFINITIVE = "infinitive_clause"


class LexiconError(Exception):
    """Base error for lexicon lookups and morphology."""


class UnknownLemmaError(LexiconError):
    def __init__(self, lemma: str, pos: str):
        super().__init__(f"no {pos} entry for lemma {lemma!r}")
        self.lemma = lemma
        self.pos = pos


class UnknownFrameError(LexiconError):
    def __init__(self, frame_id: str):
        super().__init__(f"unknown frame {frame_id!r}")
        self.frame_id = frame_id


class FeatureMismatchError(LexiconError):
    pass


@dataclass(frozen=True)
class LexemeEntry:
    lemma: str
    pos: str
    irregular: Mapping[str, str] = field(default_factory=dict)
    onset_split: Optional[tuple[str, str]] = None
    synonyms: tuple[tuple[str, str], ...] = ()  # (lemma, register)


@dataclass(frozen=True)
class FrameDef:
    """Maps thematic roles of one predicate frame to syntactic relations.

    ``mandatory_roles`` and ``optional_roles`` are (role, relation) pairs in
    realization order; relations are I/II/III for arguments, ATTR for a
    copular attribute, or ``prep:<word>`` for an oblique realized as a
    prepositional phrase. ``complement_kind`` says how a nested proposition
    bound to an argument slot is rendered.
    """

    frame_id: str
    mandatory_roles: tuple[tuple[str, str], ...] = ()
    optional_roles: tuple[tuple[str, str], ...] = ()
    complement_kind: Optional[str] = None

    def all_roles(self) -> tuple[tuple[str, str], ...]:
        return self.mandatory_roles + self.optional_roles

    def subject_role(self) -> Optional[str]:
        for role, rel in self.all_roles():
            if rel == "I":
                return role
        return None


class Lexicon:
    def __init__(self, entries: list[LexemeEntry], frames: list[FrameDef]):
        self._entries: dict[tuple[str, str], LexemeEntry] = {}
        for e in entries:
            key = (e.lemma, e.pos)
            if key in self._entries:
                raise LexiconError(f"duplicate entry {e.lemma}/{e.pos}")
            self._entries[key] = e
        self._frames: dict[str, FrameDef] = {}
        for f in frames:
            if f.frame_id in self._frames:
                raise LexiconError(f"duplicate frame {f.frame_id}")
            seen = [rel for _, rel in f.all_roles() if rel in ("I", "II", "III")]
            if len(seen) != len(set(seen)):
                raise LexiconError(f"frame {f.frame_id} maps two roles to one relation")
            self._frames[f.frame_id] = f

    def lookup(self, lemma: str, pos: str) -> LexemeEntry:
        try:
            return self._entries[(lemma, pos)]
        except KeyError:
            raise UnknownLemmaError(lemma, pos) from None

    def has(self, lemma: str, pos: str) -> bool:
        return (lemma, pos) in self._entries

    def frame(self, frame_id: str) -> FrameDef:
        try:
            return self._frames[frame_id]
        except KeyError:
            raise UnknownFrameError(frame_id) from None

    def has_frame(self, frame_id: str) -> bool:
        return frame_id in self._frames

    @property
    def frames(self) -> dict[str, FrameDef]:
        return dict(self._frames)

    @property
    def entries(self) -> list[LexemeEntry]:
        return list(self._entries.values())


def _syllable_groups(word: str) -> int:
    count = 0
    in_vowels = False
    for ch in word:
        if ch in VOWELS:
            if not in_vowels:
                count += 1
            in_vowels = True
        else:
            in_vowels = False
    return count


def _should_double(word: str) -> bool:
    # consonant-vowel-consonant monosyllable, final consonant not w/x/y
    if len(word) < 3:
        return False
    a, b, c = word[-3], word[-2], word[-1]
    if c in VOWELS or c in "wxy":
        return False
    if b not in VOWELS or a in VOWELS:
        return False
    return _syllable_groups(word) == 1


def regular_past(lemma: str) -> str:
    if lemma.endswith("e"):
        return lemma + "d"
    if lemma.endswith("y") and len(lemma) > 1 and lemma[-2] not in VOWELS:
        return lemma[:-1] + "ied"
    if _should_double(lemma):
        return lemma + lemma[-1] + "ed"
    return lemma + "ed"


def regular_plural(lemma: str) -> str:
    if lemma.endswith(("s", "x", "z", "ch", "sh")):
        return lemma + "es"
    if lemma.endswith("y") and len(lemma) > 1 and lemma[-2] not in VOWELS:
        return lemma[:-1] + "ies"
    return lemma + "s"


def inflect(entry: LexemeEntry, features: Optional[Mapping[str, str]] = None) -> str:
    """Surface form of ``entry`` under a grammatical feature set.

    The irregular table wins over the regular rules. Verbs accept ``tense``
    (plus ``number`` for the handful of number-sensitive pasts such as
    was/were); nouns accept ``number``; anything else must be featureless.
    """
    feats = dict(features or {})
    tense = feats.pop("tense", None)
    number = feats.pop("number", None)
    if feats:
        raise FeatureMismatchError(f"unsupported inflection features {sorted(feats)}")

    if entry.pos == VERB:
        if number not in (None, "sg", "pl"):
            raise FeatureMismatchError(f"bad number {number!r}")
        if tense is None:
            return entry.lemma
        if tense != "past":
            raise FeatureMismatchError(f"unsupported tense {tense!r}")
        if number == "pl" and "past_plural" in entry.irregular:
            return entry.irregular["past_plural"]
        if "past" in entry.irregular:
            return entry.irregular["past"]
        return regular_past(entry.lemma)

    if entry.pos == NOUN:
        if tense is not None:
            raise FeatureMismatchError(f"tense on {entry.pos} {entry.lemma!r}")
        if number in (None, "sg"):
            return entry.lemma
        if number != "pl":
            raise FeatureMismatchError(f"bad number {number!r}")
        return entry.irregular.get("plural") or regular_plural(entry.lemma)

    if tense is not None or number not in (None, "sg"):
        raise FeatureMismatchError(f"{entry.pos} {entry.lemma!r} does not inflect")
    return entry.lemma


def synonym(entry: LexemeEntry, register: str, rng: random.Random) -> Optional[str]:
    """A synonym of the requested register, or None; deterministic per rng."""
    candidates = [lem for lem, reg in entry.synonyms if reg == register and lem != entry.lemma]
    if not candidates:
        return None
    return rng.choice(candidates)


def split_onset(entry: LexemeEntry) -> tuple[str, str]:
    """Split before the first vowel: ("tr", "ellis"). Vowel-initial lemmas
    (and lemmas without any vowel) yield an empty onset, which callers treat
    as "skip stuttering"."""
    if entry.onset_split is not None:
        return entry.onset_split
    return split_onset_of(entry.lemma)


def split_onset_of(lemma: str) -> tuple[str, str]:
    for i, ch in enumerate(lemma):
        if ch in VOWELS:
            return (lemma[:i], lemma[i:])
    return ("", lemma)


# ---------------------------------------------------------------------------
# data file loading

def _parse_lexicon_line(line: str, lineno: int) -> LexemeEntry:
    parts = line.split()
    if len(parts) < 2:
        raise LexiconError(f"lexicon line {lineno}: expected '<lemma> <pos> ...'")
    lemma, pos = parts[0], parts[1]
    if pos not in POS_TAGS:
        raise LexiconError(f"lexicon line {lineno}: bad part of speech {pos!r}")
    irregular: dict[str, str] = {}
    onset = None
    synonyms: list[tuple[str, str]] = []
    short = {"pp": "past_participle", "third": "third_singular"}
    for tok in parts[2:]:
        if "=" not in tok:
            raise LexiconError(f"lexicon line {lineno}: bad field {tok!r}")
        key, value = tok.split("=", 1)
        key = short.get(key, key)
        if key in IRREGULAR_KEYS:
            irregular[key] = value
        elif key == "onset":
            if "+" not in value:
                raise LexiconError(f"lexicon line {lineno}: onset needs '+'")
            head, rest = value.split("+", 1)
            if head + rest != lemma:
                raise LexiconError(f"lexicon line {lineno}: onset parts must spell the lemma")
            onset = (head, rest)
        elif key == "syn":
            for item in value.split(","):
                if "@" not in item:
                    raise LexiconError(f"lexicon line {lineno}: synonym needs '@register'")
                lem, reg = item.split("@", 1)
                if reg not in REGISTERS:
                    raise LexiconError(f"lexicon line {lineno}: bad register {reg!r}")
                synonyms.append((lem, reg))
        else:
            raise LexiconError(f"lexicon line {lineno}: unknown field {key!r}")
    return LexemeEntry(lemma, pos, irregular, onset, tuple(synonyms))


def _parse_frame_line(line: str, lineno: int) -> FrameDef:
    head, sep, body = line.partition(":")
    parts = head.split()
    if len(parts) != 2 or parts[0] != "frame" or not sep:
        raise LexiconError(f"frames line {lineno}: expected 'frame <id> : ...'")
    frame_id = parts[1]
    mandatory: list[tuple[str, str]] = []
    optional: list[tuple[str, str]] = []
    complement = None
    bucket = mandatory
    for tok in body.split():
        if tok == "opt":
            bucket = optional
            continue
        if "=" not in tok:
            raise LexiconError(f"frames line {lineno}: bad token {tok!r}")
        key, value = tok.split("=", 1)
        if key == "complement":
            if value not in ("finite", "infinitive"):
                raise LexiconError(f"frames line {lineno}: bad complement {value!r}")
            complement = FINITE if value == "finite" else INFINITIVE
            continue
        if value not in ("I", "II", "III", "ATTR") and not value.startswith("prep:"):
            raise LexiconError(f"frames line {lineno}: bad relation {value!r}")
        bucket.append((key, value))
    return FrameDef(frame_id, tuple(mandatory), tuple(optional), complement)


def _data_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def load_lexicon(lexicon_text: str, frames_text: str) -> Lexicon:
    entries = [_parse_lexicon_line(line, n) for n, line in _data_lines(lexicon_text)]
    frames = [_parse_frame_line(line, n) for n, line in _data_lines(frames_text)]
    return Lexicon(entries, frames)


@lru_cache(maxsize=1)
def default_lexicon() -> Lexicon:
    data = resources.files("retold").joinpath("data")
    return load_lexicon(
        data.joinpath("lexicon.txt").read_text(encoding="utf-8"),
        data.joinpath("frames.txt").read_text(encoding="utf-8"),
    )
