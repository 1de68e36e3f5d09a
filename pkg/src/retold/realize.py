"""Surface realization: trees to text.

Word order within a clause is subject, pre-verbal adverbs, verb group,
copular attribute, indirect then direct object, post-verbal adverbs,
adjuncts in attachment order, then any tag. Negation takes do-support
("did not obtain") except for copular "be" ("was not able") and the modal
"can" ("could not reach"). Morphology always goes through the lexicon, so
irregular forms live in exactly one place.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import dsynt as d
from .lexicon import (
    ADJECTIVE as ADJ_POS,
    NOUN,
    VERB,
    Lexicon,
    default_lexicon,
    inflect,
    split_onset,
    split_onset_of,
)

MODAL_LEMMAS = frozenset({"can"})

ACCUSATIVE = {"he": "him", "she": "her", "it": "it", "they": "them", "i": "me", "you": "you"}

PUNCT_MARKS = {"period": ".", "exclaim": "!", "question": "?"}

CONTRACTIBLE = {("did", "not"): "didn't",
                ("could", "not"): "couldn't",
                ("was", "not"): "wasn't"}


class RealizationError(Exception):
    pass


@dataclass(frozen=True)
class Token:
    surface: str
    kind: str = "word"  # word | punctuation
    no_space_before: bool = False


def _words(text: str) -> list[Token]:
    return [Token(w) for w in text.replace("_", " ").split()]


def apply_contractions(tokens: list[Token]) -> list[Token]:
    """Rewrite "did not" / "could not" / "was not" into their contractions."""
    out: list[Token] = []
    i = 0
    while i < len(tokens):
        t = tokens[i]
        if (i + 1 < len(tokens) and t.kind == "word" and tokens[i + 1].kind == "word"
                and not tokens[i + 1].no_space_before
                and (t.surface, tokens[i + 1].surface) in CONTRACTIBLE):
            out.append(Token(CONTRACTIBLE[(t.surface, tokens[i + 1].surface)],
                             "word", t.no_space_before))
            i += 2
        else:
            out.append(t)
            i += 1
    return out


def _join(tokens: list[Token]) -> str:
    parts: list[str] = []
    for i, t in enumerate(tokens):
        if i == 0 or t.kind == "punctuation" or t.no_space_before:
            parts.append(t.surface)
        else:
            parts.append(" " + t.surface)
    text = "".join(parts)
    for i, ch in enumerate(text):
        if ch.isalpha():
            return text[:i] + ch.upper() + text[i + 1:]
    return text


class _Realizer:
    def __init__(self, lexicon: Lexicon):
        self.lexicon = lexicon

    # -- noun phrases --------------------------------------------------------

    def np_tokens(self, node: d.DSyntNode, case: str = "nom") -> list[Token]:
        if node.cls == d.FUNCTION_WORD:
            surface = node.lexeme if case == "nom" else ACCUSATIVE.get(node.lexeme, node.lexeme)
            return _words(surface)
        if node.cls == d.ADJECTIVE:
            return _words(node.lexeme)
        if node.cls != d.COMMON_NOUN:
            raise RealizationError(f"cannot realize {node.cls} as a noun phrase")
        toks: list[Token] = []
        article = node.feature("article", "none")
        if article == "def":
            toks.append(Token("the"))
        elif article == "indef":
            toks.append(Token("a"))
        for c in node.children:
            if c.relation == d.ATTR:
                toks.extend(self._modifier_tokens(c))
        toks.extend(self._noun_head(node))
        for c in node.children:
            if c.relation == d.APPEND and c.cls == d.PREPOSITION:
                toks.extend(self.prep_tokens(c))
        return toks

    def _stuttered(self, node: d.DSyntNode, surface: str, onset: str) -> list[Token]:
        count = node.feature("stutter")
        if not count or not onset or " " in surface:
            return _words(surface)
        frags = [Token(onset + "-", no_space_before=(k > 0)) for k in range(int(count))]
        return frags + [Token(surface, no_space_before=True)]

    def _noun_head(self, node: d.DSyntNode) -> list[Token]:
        number = node.feature("number", "sg")
        if self.lexicon.has(node.lexeme, NOUN):
            entry = self.lexicon.lookup(node.lexeme, NOUN)
            return self._stuttered(node, inflect(entry, {"number": number}),
                                   split_onset(entry)[0])
        # literal noun phrase; realized verbatim
        return self._stuttered(node, node.lexeme, split_onset_of(node.lexeme)[0])

    def _modifier_tokens(self, node: d.DSyntNode) -> list[Token]:
        if node.cls == d.ADJECTIVE and node.feature("stutter"):
            if self.lexicon.has(node.lexeme, ADJ_POS):
                onset = split_onset(self.lexicon.lookup(node.lexeme, ADJ_POS))[0]
            else:
                onset = split_onset_of(node.lexeme)[0]
            return self._stuttered(node, node.lexeme, onset)
        return _words(node.lexeme)

    def prep_tokens(self, node: d.DSyntNode) -> list[Token]:
        toks = _words(node.lexeme)
        first = True
        for c in node.children:
            if c.relation != d.APPEND:
                continue
            if not first:
                toks.append(Token("and"))
            toks.extend(self.np_tokens(c, case="acc"))
            first = False
        return toks

    # -- clauses ---------------------------------------------------------------

    def clause_tokens(self, v: d.DSyntNode, *, include_subject: bool = True,
                      form: str = "finite") -> list[Token]:
        if v.cls != d.VERB:
            raise RealizationError(f"clause root must be a verb, got {v.cls}")

        pre_markers, tags = [], []
        subject = None
        pre_advs, post_advs, attrs = [], [], []
        obj2 = obj3 = None
        appends = []
        for c in v.children:
            if c.relation == d.I:
                subject = c
            elif c.relation == d.II:
                obj2 = c
            elif c.relation == d.III:
                obj3 = c
            elif c.relation == d.ATTR and c.cls == d.ADVERB:
                (post_advs if c.feature("position") == "post" else pre_advs).append(c)
            elif c.relation == d.ATTR:
                attrs.append(c)
            elif c.relation == d.APPEND and c.cls == d.FUNCTION_WORD and c.feature("position") == "pre":
                pre_markers.append(c)
            elif c.relation == d.APPEND and c.cls == d.FUNCTION_WORD and c.feature("position") == "post":
                tags.append(c)
            elif c.relation == d.APPEND:
                appends.append(c)
            else:
                raise RealizationError(
                    f"cannot linearize {c.cls} under verb via {c.relation}")

        toks: list[Token] = []
        for m in pre_markers:
            toks.extend(_words(m.lexeme))
        number = "sg"
        if subject is not None:
            number = subject.feature("number", "sg")
            if include_subject:
                toks.extend(self.np_tokens(subject, case="nom"))
        for a in pre_advs:
            toks.extend(_words(a.lexeme))
        toks.extend(self._verb_group(v, number, form))
        for a in attrs:
            toks.extend(self._modifier_tokens(a))
        if obj3 is not None:
            toks.extend(self._complement_tokens(obj3, v))
        if obj2 is not None:
            toks.extend(self._complement_tokens(obj2, v))
        for a in post_advs:
            toks.extend(_words(a.lexeme))
        for i, ap in enumerate(appends):
            toks.extend(self._append_tokens(ap, more_follows=i + 1 < len(appends)))
        for t in tags:
            toks.append(Token(",", "punctuation"))
            toks.extend(_words(t.lexeme))
        return toks

    def _verb_group(self, v: d.DSyntNode, number: str, form: str) -> list[Token]:
        negated = v.feature("polarity") == "neg"
        lemma = v.lexeme
        if form == "bare":
            return [Token(lemma)]
        if form == "infinitive":
            head = [Token("to"), Token(lemma)]
            return [Token("not")] + head if negated else head
        entry = self.lexicon.lookup(lemma, VERB)
        past = inflect(entry, {"tense": "past", "number": number})
        if not negated:
            return [Token(past)]
        if lemma == "be" or lemma in MODAL_LEMMAS:
            return [Token(past), Token("not")]
        return [Token("did"), Token("not"), Token(lemma)]

    def _complement_tokens(self, node: d.DSyntNode, governor: d.DSyntNode) -> list[Token]:
        if node.cls == d.VERB:
            if "tense" in node.features:
                return self.clause_tokens(node, form="finite")
            if governor.lexeme in MODAL_LEMMAS:
                return self.clause_tokens(node, include_subject=False, form="bare")
            return self.clause_tokens(node, include_subject=False, form="infinitive")
        return self.np_tokens(node, case="acc")

    def _append_tokens(self, node: d.DSyntNode, more_follows: bool) -> list[Token]:
        if node.cls == d.PREPOSITION:
            return self.prep_tokens(node)
        if node.cls == d.FUNCTION_WORD and node.lexeme == "because":
            clause = self._single_clause_child(node)
            return [Token("because")] + self.clause_tokens(clause, form="finite")
        if node.cls == d.FUNCTION_WORD and node.lexeme == "in_order":
            clause = self._single_clause_child(node)
            toks = [Token("in"), Token("order")]
            subject = clause.child(d.I)
            if subject is not None:
                toks.append(Token("for"))
                toks.extend(self.np_tokens(subject, case="acc"))
            toks.extend(self.clause_tokens(clause, include_subject=False, form="infinitive"))
            return toks
        if node.cls == d.VERB:
            # appended restating clause: ", didn't obtain it,"
            toks = [Token(",", "punctuation")]
            toks.extend(self.clause_tokens(node, include_subject=False, form="finite"))
            if more_follows:
                toks.append(Token(",", "punctuation"))
            return toks
        if node.cls == d.FUNCTION_WORD:
            return _words(node.lexeme)
        raise RealizationError(f"cannot linearize appended {node.cls}")

    def _single_clause_child(self, node: d.DSyntNode) -> d.DSyntNode:
        for c in node.children:
            if c.cls == d.VERB:
                return c
        raise RealizationError(f"{node.lexeme!r} governs no clause")


def sentence_tokens(root: d.DSyntNode, lexicon: Optional[Lexicon] = None) -> list[Token]:
    lex = lexicon or default_lexicon()
    if "tense" not in root.features:
        raise RealizationError("sentence root must be finite")
    toks = _Realizer(lex).clause_tokens(root, form="finite")
    if root.feature("contract") == "on":
        toks = apply_contractions(toks)
    toks.append(Token(PUNCT_MARKS[root.feature("punct", "period")], "punctuation"))
    return toks


def realize_sentence(root: d.DSyntNode, lexicon: Optional[Lexicon] = None) -> str:
    return _join(sentence_tokens(root, lexicon))


def realize_document(doc: d.Document, lexicon: Optional[Lexicon] = None) -> str:
    lex = lexicon or default_lexicon()
    return " ".join(realize_sentence(sentence, lex) for sentence in doc.sentences)
