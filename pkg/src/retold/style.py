"""Parameterized voice transformations over built documents.

A voice model maps stylistic parameters to activation strengths in [0, 1].
For every sentence and every active parameter, the transform fires with
probability equal to the activation, drawing from a random stream derived
from (seed, sentence index) so sentences are independent and the whole
application is reproducible. Every applied transform is recorded as a
StyleDecision.

Marker vocabulary (hedges, pauses, interjections, expletives, tags) is a
fixed word list; insertions never change propositional content. The two
content-adjacent transforms are lexical variation (register-tagged synonym
swap) and negation paraphrase ("did not obtain" -> "failed to get"), which
keeps a semantic-negation flag on the clause for content checks.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Mapping, Optional

from . import dsynt as d
from .lexicon import (
    ADJECTIVE,
    NOUN,
    VERB,
    Lexicon,
    default_lexicon,
    split_onset,
    split_onset_of,
    synonym,
)
from .transform import enable_contractions, pronominalize_sentences

PARAM_NAMES = frozenset({
    "softener_hedges", "emphasizer_hedges", "filled_pauses", "stuttering",
    "exclamation", "expletives", "tag_question", "initial_interjection",
    "lexical_variation", "negation_paraphrase", "restatement",
    "contractions", "pronominalization",
})

# application order; pronominalization runs first because it tracks
# mentions across the whole document
PARAM_ORDER = (
    "pronominalization", "lexical_variation", "negation_paraphrase",
    "restatement", "contractions", "softener_hedges", "emphasizer_hedges",
    "filled_pauses", "initial_interjection", "expletives", "stuttering",
    "tag_question", "exclamation",
)

SOFTENER_CLAUSAL = ("I think that", "it seems that", "it seems to me that")
SOFTENER_CLAUSAL_PAST = {
    "I think that": "I thought that",
    "it seems that": "it seemed that",
    "it seems to me that": "it seemed to me that",
}
SOFTENER_ADVERBIAL = ("sort of", "kind of", "somewhat", "quite", "around", "rather")
EMPHASIZERS = ("really", "basically", "actually")
FILLED_PAUSES = ("I mean", "err", "mmhm", "like", "you know")
EXPLETIVES = ("damn",)
INTERJECTIONS = ("well", "ok", "oh")
EXTERNAL_TAGS = ("okay", "alright", "you see")

NEGATIVE_AUX = {"did": "didn't", "was": "wasn't", "were": "weren't", "could": "couldn't"}


class VoiceError(Exception):
    pass


@dataclass(frozen=True)
class VoiceModel:
    name: str
    params: Mapping[str, float]

    def activation(self, param: str) -> float:
        return float(self.params.get(param, 0.0))

    def __post_init__(self) -> None:
        for key, value in self.params.items():
            if key not in PARAM_NAMES:
                raise VoiceError(f"unknown style parameter {key!r}")
            if not 0.0 <= float(value) <= 1.0:
                raise VoiceError(f"activation for {key} outside [0, 1]: {value}")


@dataclass(frozen=True)
class StyleDecision:
    """One applied transform. ``site`` is a dotted child path into the
    styled sentence as of application time; when a later transform
    restructures the clause so the path no longer resolves, it degrades
    to "root" so that every recorded site exists in the final output."""

    sentence_index: int
    param: str
    site: str
    payload: str


BUILTIN_VOICES = {
    "NEUTRAL": VoiceModel("NEUTRAL", {}),
    "FORMAL": VoiceModel("FORMAL", {"contractions": 1.0, "pronominalization": 1.0}),
    "SHY": VoiceModel("SHY", {
        "softener_hedges": 0.4, "stuttering": 0.3, "filled_pauses": 0.3,
        "initial_interjection": 0.2, "pronominalization": 1.0, "contractions": 1.0,
    }),
    "LAID-BACK": VoiceModel("LAID-BACK", {
        "emphasizer_hedges": 0.3, "tag_question": 0.4, "expletives": 0.2,
        "initial_interjection": 0.3, "lexical_variation": 0.4,
        "negation_paraphrase": 0.5, "restatement": 0.3, "exclamation": 0.2,
        "pronominalization": 1.0, "contractions": 1.0,
    }),
}


def parse_voice(text: str) -> VoiceModel:
    """Voice file: a `voice <name>` line, then `param: value` lines."""
    name = None
    params: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if name is None:
            m = re.fullmatch(r"voice\s+(\S+)", line)
            if not m:
                raise VoiceError(f"line {lineno}: expected 'voice <name>'")
            name = m.group(1)
            continue
        m = re.fullmatch(r"([a-z_]+)\s*:\s*([0-9.]+)", line)
        if not m:
            raise VoiceError(f"line {lineno}: expected 'param: value'")
        params[m.group(1)] = float(m.group(2))
    if name is None:
        raise VoiceError("empty voice file")
    return VoiceModel(name, params)


def load_voice(name_or_path: str) -> VoiceModel:
    if name_or_path in BUILTIN_VOICES:
        return BUILTIN_VOICES[name_or_path]
    p = Path(name_or_path)
    if p.exists():
        return parse_voice(p.read_text(encoding="utf-8"))
    raise VoiceError(f"no built-in voice or voice file {name_or_path!r}")


def _path_str(path: tuple[int, ...]) -> str:
    return ".".join(map(str, path)) if path else "root"


def _prepend(root: d.DSyntNode, marker: d.DSyntNode) -> d.DSyntNode:
    return replace(root, children=(marker,) + root.children)


def _append_child(root: d.DSyntNode, child: d.DSyntNode) -> d.DSyntNode:
    return replace(root, children=root.children + (child,))


def _marker_node(lexeme: str) -> d.DSyntNode:
    return d.DSyntNode(lexeme, d.FUNCTION_WORD, d.APPEND, {"position": "pre"})


# --- individual transforms --------------------------------------------------
# each returns (new_sentence, site_path, payload) or None when inapplicable


def _softener(sent, rng, lex):
    choice = rng.choice(SOFTENER_CLAUSAL + SOFTENER_ADVERBIAL)
    if choice in SOFTENER_CLAUSAL_PAST:
        new = _prepend(sent, _marker_node(SOFTENER_CLAUSAL_PAST[choice]))
        return new, (0,), choice
    adv = d.DSyntNode(choice, d.ADVERB, d.ATTR, {"position": "pre"})
    new = _append_child(sent, adv)
    return new, (len(new.children) - 1,), choice


def _emphasizer(sent, rng, lex):
    choice = rng.choice(EMPHASIZERS)
    adv = d.DSyntNode(choice, d.ADVERB, d.ATTR, {"position": "pre"})
    new = _append_child(sent, adv)
    return new, (len(new.children) - 1,), choice


def _filled_pause(sent, rng, lex):
    choice = rng.choice(FILLED_PAUSES)
    new = _prepend(sent, _marker_node(choice + "..."))
    return new, (0,), choice


def _interjection(sent, rng, lex):
    choice = rng.choice(INTERJECTIONS)
    new = _prepend(sent, _marker_node(choice + ","))
    return new, (0,), choice


def _expletive(sent, rng, lex):
    choice = rng.choice(EXPLETIVES)
    adv = d.DSyntNode(choice, d.ADVERB, d.ATTR, {"position": "pre"})
    new = _append_child(sent, adv)
    return new, (len(new.children) - 1,), choice


def _stutter_sites(sent, lex):
    sites = []
    for path, node in d.walk(sent):
        if node.cls not in (d.COMMON_NOUN, d.ADJECTIVE):
            continue
        if " " in node.lexeme or node.feature("stutter"):
            continue
        pos = NOUN if node.cls == d.COMMON_NOUN else ADJECTIVE
        if lex.has(node.lexeme, pos):
            onset, _ = split_onset(lex.lookup(node.lexeme, pos))
        else:
            onset, _ = split_onset_of(node.lexeme)
        if onset:
            sites.append((path, node, onset))
    return sites


def apply_stuttering(sentence: d.DSyntNode, rng: random.Random,
                     lexicon: Optional[Lexicon] = None) -> d.DSyntNode:
    """Duplicate the onset of one content word: "tr-trellis". Vowel-initial
    lemmas are never picked."""
    result = _stutter(sentence, rng, lexicon or default_lexicon())
    return sentence if result is None else result[0]


def _stutter(sent, rng, lex):
    sites = _stutter_sites(sent, lex)
    if not sites:
        return None
    path, node, onset = rng.choice(sites)
    k = rng.choice((1, 2))
    new = d.replace_at(sent, path, node.with_feature("stutter", str(k)))
    return new, path, f"{onset}-" * k


def _subject_tag_pronoun(sent) -> str:
    subject = sent.child(d.I)
    if subject is None:
        return "it"
    if subject.cls == d.FUNCTION_WORD:
        return subject.lexeme
    pron = subject.feature("pron")
    if pron:
        return pron
    return "they" if subject.feature("number") == "pl" else "it"


def _aux_for(sent, lex) -> str:
    from .realize import MODAL_LEMMAS
    from .lexicon import inflect

    number = "sg"
    subject = sent.child(d.I)
    if subject is not None:
        number = subject.feature("number", "sg")
    if sent.lexeme == "be" or sent.lexeme in MODAL_LEMMAS:
        return inflect(lex.lookup(sent.lexeme, VERB), {"tense": "past", "number": number})
    return "did"


def _tag_question(sent, rng, lex):
    if sent.feature("punct", "period") != "period":
        return None
    if rng.random() < 0.5:
        tag = rng.choice(EXTERNAL_TAGS)
    else:
        aux = _aux_for(sent, lex)
        if sent.feature("polarity") == "neg":
            tag = f"{aux} {_subject_tag_pronoun(sent)}"
        else:
            tag = f"{NEGATIVE_AUX.get(aux, aux)} {_subject_tag_pronoun(sent)}"
    node = d.DSyntNode(tag, d.FUNCTION_WORD, d.APPEND, {"position": "post"})
    new = _append_child(sent, node).with_feature("punct", "question")
    return new, (len(sent.children),), tag + "?"


def _exclamation(sent, rng, lex):
    if sent.feature("punct", "period") != "period":
        return None
    return sent.with_feature("punct", "exclaim"), (), "!"


def _lexical_variation(sent, rng, lex):
    pos_of = {d.VERB: VERB, d.COMMON_NOUN: NOUN, d.ADJECTIVE: ADJECTIVE}
    sites = []
    for path, node in d.walk(sent):
        pos = pos_of.get(node.cls)
        if pos is None or not lex.has(node.lexeme, pos):
            continue
        if any(reg == "casual" for _, reg in lex.lookup(node.lexeme, pos).synonyms):
            sites.append((path, node, pos))
    if not sites:
        return None
    path, node, pos = rng.choice(sites)
    sub = synonym(lex.lookup(node.lexeme, pos), "casual", rng)
    if sub is None:
        return None
    new = d.replace_at(sent, path, replace(node, lexeme=sub))
    return new, path, f"{node.lexeme}->{sub}"


def _negation_paraphrase(sent, rng, lex):
    """Rewrite "did not V ..." as affirmative "failed to V' ...". Returns
    (tree, site, payload, (original lemma, direct object node or None))."""
    if sent.feature("polarity") != "neg" or not lex.has(sent.lexeme, VERB):
        return None
    if sent.lexeme in ("be", "can", "do", "fail"):
        return None
    entry = lex.lookup(sent.lexeme, VERB)
    sub = synonym(entry, "casual", rng)
    if sub is None:
        return None
    moved, kept = [], []
    direct_object = None
    for c in sent.children:
        if c.relation in (d.II, d.III) or (c.relation == d.APPEND and c.cls == d.PREPOSITION):
            moved.append(c)
            if c.relation == d.II and c.cls != d.VERB:
                direct_object = c
        else:
            kept.append(c)
    infinitive = d.DSyntNode(sub, d.VERB, d.II, {"polarity": "aff"}, tuple(moved))
    feats = dict(sent.features)
    feats["polarity"] = "aff"
    feats["sem_neg"] = "on"
    new = replace(sent, lexeme="fail", features=feats,
                  children=tuple(kept) + (infinitive,))
    site = (len(kept),)
    return new, site, f"fail to {sub}", (sent.lexeme, direct_object)


def apply_negation_paraphrase(sentence: d.DSyntNode, rng: random.Random,
                              lexicon: Optional[Lexicon] = None) -> d.DSyntNode:
    result = _negation_paraphrase(sentence, rng, lexicon or default_lexicon())
    return sentence if result is None else result[0]


def _object_pronoun(obj: d.DSyntNode) -> str:
    acc = {"he": "him", "she": "her", "it": "it", "they": "them"}
    if obj.cls == d.FUNCTION_WORD:
        return acc.get(obj.lexeme, "it")
    pron = obj.feature("pron")
    if pron:
        return acc[pron]
    return "them" if obj.feature("number") == "pl" else "it"


def _restatement(sent, info):
    """Append ", did not V it" after a paraphrased clause, restating the
    original negated verb with a pronominal object."""
    if info is None:
        return None
    orig_lemma, obj = info
    children = ()
    if obj is not None:
        children = (d.DSyntNode(_object_pronoun(obj), d.FUNCTION_WORD, d.II,
                                {"number": obj.feature("number", "sg")}),)
    restate = d.DSyntNode(orig_lemma, d.VERB, d.APPEND,
                          {"polarity": "neg", "tense": "past"}, children)
    insert_at = len(sent.children)
    for i, c in enumerate(sent.children):
        if c.relation == d.APPEND and c.cls == d.FUNCTION_WORD:
            insert_at = i
            break
    new = replace(sent, children=sent.children[:insert_at] + (restate,)
                  + sent.children[insert_at:])
    return new, (insert_at,), f"did not {orig_lemma}"


def insert_marker(sentence: d.DSyntNode, param: str, rng: random.Random,
                  lexicon: Optional[Lexicon] = None) -> d.DSyntNode:
    """Apply one marker-insertion parameter unconditionally; inapplicable
    sites (e.g. a tag on a non-period sentence) return the input."""
    lex = lexicon or default_lexicon()
    fns = {
        "softener_hedges": _softener,
        "emphasizer_hedges": _emphasizer,
        "filled_pauses": _filled_pause,
        "initial_interjection": _interjection,
        "expletives": _expletive,
        "tag_question": _tag_question,
        "exclamation": _exclamation,
    }
    if param not in fns:
        raise VoiceError(f"{param!r} is not a marker-insertion parameter")
    result = fns[param](sentence, rng, lex)
    return sentence if result is None else result[0]


# --- the engine ---------------------------------------------------------------

def apply_voice(doc: d.Document, model: VoiceModel, seed: int,
                lexicon: Optional[Lexicon] = None
                ) -> tuple[d.Document, list[StyleDecision]]:
    """Apply a voice model to a document.

    Reproducible: equal (doc, model, seed) triples give equal outputs and
    decision lists. The all-zero model is the identity.
    """
    lex = lexicon or default_lexicon()
    sentences = list(doc.sentences)
    n = len(sentences)
    rngs = [random.Random(f"{seed}:{i}") for i in range(n)]
    decisions: list[StyleDecision] = []
    paraphrase_info: dict[int, tuple] = {}

    def fires(param: str, i: int) -> bool:
        a = model.activation(param)
        if a <= 0.0:
            return False
        return rngs[i].random() < a

    for param in PARAM_ORDER:
        if param == "pronominalization":
            if model.activation(param) <= 0.0:
                continue
            mask = [fires(param, i) for i in range(n)]
            sentences, sites = pronominalize_sentences(sentences, mask)
            for i, sentence_sites in enumerate(sites):
                for path, pron in sentence_sites:
                    decisions.append(StyleDecision(i, param, _path_str(path), pron))
            continue
        for i in range(n):
            if not fires(param, i):
                continue
            if param == "contractions":
                new = enable_contractions(sentences[i])
                if new != sentences[i]:
                    sentences[i] = new
                    decisions.append(StyleDecision(i, param, "root", "on"))
                continue
            if param == "lexical_variation":
                result = _lexical_variation(sentences[i], rngs[i], lex)
            elif param == "negation_paraphrase":
                result = _negation_paraphrase(sentences[i], rngs[i], lex)
                if result is not None:
                    paraphrase_info[i] = result[3]
                    result = result[:3]
            elif param == "restatement":
                result = _restatement(sentences[i], paraphrase_info.get(i))
            elif param == "softener_hedges":
                result = _softener(sentences[i], rngs[i], lex)
            elif param == "emphasizer_hedges":
                result = _emphasizer(sentences[i], rngs[i], lex)
            elif param == "filled_pauses":
                result = _filled_pause(sentences[i], rngs[i], lex)
            elif param == "initial_interjection":
                result = _interjection(sentences[i], rngs[i], lex)
            elif param == "expletives":
                result = _expletive(sentences[i], rngs[i], lex)
            elif param == "stuttering":
                result = _stutter(sentences[i], rngs[i], lex)
            elif param == "tag_question":
                result = _tag_question(sentences[i], rngs[i], lex)
            elif param == "exclamation":
                result = _exclamation(sentences[i], rngs[i], lex)
            else:
                raise VoiceError(f"unhandled parameter {param!r}")
            if result is None:
                continue
            new, site, payload = result
            sentences[i] = new
            decisions.append(StyleDecision(i, param, _path_str(site), payload))

    final = []
    for dec in decisions:
        site = dec.site
        if site != "root":
            try:
                d.node_at(sentences[dec.sentence_index],
                          tuple(int(x) for x in site.split(".")))
            except IndexError:
                site = "root"
        final.append(dec if site == dec.site else replace(dec, site=site))
    return d.Document(tuple(sentences)), final
