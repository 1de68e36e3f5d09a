"""Builds deep-syntactic trees from story timelines.

Each top-level proposition becomes one clause: the predicate turns into a
tensed verb node, role bindings land on I/II/III per the verb frame, entity
references expand to definite noun phrases ("the group of grapes" keeps its
singular head), discourse attachments become subordinate structure
("in order" / "because" function words governing embedded clauses), and
prepositional adjuncts hang off the clause in source order.

Referring-expression and contraction decisions are made here (or by the
style engine, which reuses the passes at the bottom of this module); the
realizer only executes them.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from . import dsynt as d
from . import story as s
from .lexicon import (
    FINITE,
    INFINITIVE,
    PREPOSITION,
    FrameDef,
    Lexicon,
    LexiconError,
    default_lexicon,
)

FULL_NP = "full_np"
PRONOMINALIZE = "pronominalize_after_first"


@dataclass(frozen=True)
class TransformOptions:
    referring_expression: str = FULL_NP
    contractions: bool = False


NEUTRAL = TransformOptions()


class TransformError(Exception):
    def __init__(self, message: str, proposition_id: Optional[str] = None):
        self.proposition_id = proposition_id
        where = f"{proposition_id}: " if proposition_id else ""
        super().__init__(where + message)


@dataclass
class DiscourseContext:
    graph: s.StoryGraph
    lexicon: Lexicon
    opts: TransformOptions = NEUTRAL
    mentions: dict[str, int] = field(default_factory=dict)


def default_pronoun(e: s.Entity) -> str:
    if e.pronoun:
        return e.pronoun
    if e.number == "pl":
        return "they"
    return "he" if e.kind == s.CHARACTER else "it"


def realize_entity_np(e: s.Entity, ctx: DiscourseContext,
                      opts: Optional[TransformOptions] = None) -> d.DSyntNode:
    """Definite noun phrase for an entity mention.

    Collectives realize as head + "of" + plural member noun with singular
    agreement on the head. Under pronominalize_after_first, character
    mentions after the document-first one become a bare pronoun node.
    """
    opts = opts or ctx.opts
    ctx.mentions[e.id] = ctx.mentions.get(e.id, 0) + 1
    pron = default_pronoun(e)
    if (opts.referring_expression == PRONOMINALIZE and e.kind == s.CHARACTER
            and ctx.mentions[e.id] > 1):
        return d.DSyntNode(pron, d.FUNCTION_WORD, features={"number": e.number})
    feats = {"article": "def", "number": e.number}
    if e.kind == s.CHARACTER:
        feats["pron"] = pron
    node = d.DSyntNode(e.head_lemma, d.COMMON_NOUN, features=feats)
    for adj in e.fixed_modifiers:
        node = d.attach(node, d.DSyntNode(adj, d.ADJECTIVE), d.ATTR)
    if e.group_of:
        member = d.DSyntNode(e.group_of, d.COMMON_NOUN,
                             features={"article": "none", "number": "pl"})
        of = d.attach(d.DSyntNode("of", d.PREPOSITION), member, d.APPEND)
        node = d.attach(node, of, d.APPEND)
    return node


def _np_for_target(arg, ctx: DiscourseContext) -> d.DSyntNode:
    if isinstance(arg, s.EntityRef):
        return realize_entity_np(ctx.graph.entity(arg.entity_id), ctx)
    if isinstance(arg, s.Text):
        return d.DSyntNode(arg.value, d.COMMON_NOUN, features={"article": "none"})
    if isinstance(arg, s.Property):
        return d.DSyntNode(arg.adjective, d.ADJECTIVE)
    raise TransformError(f"cannot realize {type(arg).__name__} as a noun phrase")


def _subject_binding(p: s.Proposition, frame: FrameDef):
    role = frame.subject_role()
    return p.frame.binding(role) if role else None


def build_clause(p: s.Proposition, ctx: DiscourseContext, *,
                 finite: bool = True, skip_subject: bool = False) -> d.DSyntNode:
    """Verb-rooted clause for one proposition.

    ``finite`` distinguishes tensed clauses from to-infinitives; infinitive
    complements drop their (controlled) subject, so their re-bound agent is
    expressed only through the matrix clause.
    """
    try:
        frame = ctx.lexicon.frame(p.frame.frame_id)
    except LexiconError as exc:
        raise TransformError(str(exc), p.id) from exc

    feats = {"polarity": "neg" if p.polarity == s.NEGATED else "aff"}
    if finite:
        feats["tense"] = "past"
    root = d.DSyntNode(p.frame.predicate_lemma, d.VERB, features=feats)

    bound_roles = set()
    for role, rel in frame.all_roles():
        arg = p.frame.binding(role)
        if arg is None:
            if (role, rel) in frame.mandatory_roles:
                raise TransformError(f"mandatory role {role} unbound", p.id)
            continue
        bound_roles.add(role)
        if rel == "I" and skip_subject:
            continue
        if rel in d.ARGUMENT_RELATIONS:
            root = d.attach(root, _argument_node(arg, p, frame, ctx), rel)
        elif rel == "ATTR":
            if not isinstance(arg, s.Property):
                raise TransformError(f"role {role} expects an adjective property", p.id)
            root = d.attach(root, d.DSyntNode(arg.adjective, d.ADJECTIVE), d.ATTR)
        elif rel.startswith("prep:"):
            word = rel.split(":", 1)[1]
            if isinstance(arg, s.Proposition):
                raise TransformError(f"role {role} cannot nest a proposition", p.id)
            pp = d.attach(d.DSyntNode(word, d.PREPOSITION), _np_for_target(arg, ctx), d.APPEND)
            root = d.attach(root, pp, d.APPEND)
        else:
            raise TransformError(f"role {role} has unsupported relation {rel!r}", p.id)

    for role in p.frame.roles():
        if role not in bound_roles:
            raise TransformError(f"unknown role {role} for frame {p.frame.frame_id!r}", p.id)

    for lemma, pos in p.adverbs:
        adv = d.DSyntNode(lemma, d.ADVERB,
                          features={"position": "pre" if pos == s.PRE_VERB else "post"})
        root = d.attach(root, adv, d.ATTR)

    root = attach_adjuncts(root, p, ctx)
    return root


def _argument_node(arg, p: s.Proposition, frame: FrameDef, ctx: DiscourseContext) -> d.DSyntNode:
    if isinstance(arg, s.Proposition):
        if frame.complement_kind == INFINITIVE:
            return build_clause(arg, ctx, finite=False, skip_subject=True)
        if frame.complement_kind == FINITE:
            return build_clause(arg, ctx, finite=True)
        raise TransformError(
            f"frame {frame.frame_id!r} does not take a propositional argument", p.id)
    if isinstance(arg, s.Property):
        raise TransformError("property argument outside a copular slot", p.id)
    return _np_for_target(arg, ctx)


def attach_adjuncts(clause: d.DSyntNode, p: s.Proposition, ctx: DiscourseContext) -> d.DSyntNode:
    """Adds attachment-derived structure in source order. Consecutive
    prepositional attachments sharing a preposition coalesce into one
    phrase ("with dignity and unconcern")."""
    atts = p.attachments
    i = 0
    while i < len(atts):
        a = atts[i]
        if a.relation == s.PREPOSITIONAL:
            word = a.preposition or ""
            if not ctx.lexicon.has(word, PREPOSITION):
                raise TransformError(f"unknown preposition {word!r}", p.id)
            pp = d.DSyntNode(word, d.PREPOSITION)
            pp = d.attach(pp, _np_for_target(a.target, ctx), d.APPEND)
            while (i + 1 < len(atts) and atts[i + 1].relation == s.PREPOSITIONAL
                   and atts[i + 1].preposition == word):
                i += 1
                pp = d.attach(pp, _np_for_target(atts[i].target, ctx), d.APPEND)
            clause = d.attach(clause, pp, d.APPEND)
        elif a.relation in s.CLAUSE_RELATIONS:
            target = a.target
            if not isinstance(target, s.Proposition):
                raise TransformError(f"{a.relation} attachment must nest a proposition", p.id)
            if a.relation == s.PURPOSE:
                skip = (ctx.opts.referring_expression == PRONOMINALIZE
                        and _corefer(_subject_binding(p, ctx.lexicon.frame(p.frame.frame_id)),
                                     _subject_binding(target, ctx.lexicon.frame(target.frame.frame_id))))
                sub = build_clause(target, ctx, finite=False, skip_subject=skip)
            else:
                sub = build_clause(target, ctx, finite=True)
            clause = attach_discourse(clause, a.relation, sub)
        else:
            raise TransformError(f"unsupported attachment relation {a.relation!r}", p.id)
        i += 1
    return clause


def _corefer(a, b) -> bool:
    return isinstance(a, s.EntityRef) and isinstance(b, s.EntityRef) and a == b


def attach_discourse(main: d.DSyntNode, relation: str, sub: d.DSyntNode) -> d.DSyntNode:
    """Wire a subordinate clause onto a main clause.

    purpose  ->  "in order (for X) to VP" via an "in_order" function word
    cause    ->  "because" + finite clause, appended after the main clause
    complement -> finite clause as the II argument of the main verb
    """
    if relation == s.PURPOSE:
        sub = sub.without_feature("tense")
        wrapper = d.attach(d.DSyntNode("in_order", d.FUNCTION_WORD), sub, d.APPEND)
        return d.attach(main, wrapper, d.APPEND)
    if relation == s.CAUSE:
        if "tense" not in sub.features:
            sub = sub.with_feature("tense", "past")
        wrapper = d.attach(d.DSyntNode("because", d.FUNCTION_WORD), sub, d.APPEND)
        return d.attach(main, wrapper, d.APPEND)
    if relation == s.COMPLEMENT:
        if "tense" not in sub.features:
            sub = sub.with_feature("tense", "past")
        return d.attach(main, sub, d.II)
    raise TransformError(f"unsupported discourse relation {relation!r}")


def transform_story(g: s.StoryGraph, opts: TransformOptions = NEUTRAL,
                    lexicon: Optional[Lexicon] = None) -> d.Document:
    """One sentence root per top-level proposition, in timeline order."""
    ctx = DiscourseContext(g, lexicon or default_lexicon(), opts)
    sentences = []
    for p in s.timeline_propositions(g):
        try:
            clause = build_clause(p, ctx)
        except (d.TreeError, LexiconError) as exc:
            raise TransformError(str(exc), p.id) from exc
        clause = clause.with_feature("punct", "period")
        if opts.contractions:
            clause = enable_contractions(clause)
        sentences.append(clause)
    return d.Document(tuple(sentences))


# ---------------------------------------------------------------------------
# document passes shared with the style engine

def coref_head(node: d.DSyntNode) -> Optional[str]:
    """Identity key for subject-coreference checks over full-NP trees."""
    if node.cls == d.COMMON_NOUN:
        return node.lexeme
    if node.cls == d.FUNCTION_WORD:
        return node.lexeme
    return None


def drop_coreferent_purpose_subject(sentence: d.DSyntNode
                                    ) -> tuple[d.DSyntNode, list[tuple[int, ...]]]:
    """Remove the subject of an "in order" clause when it restates the
    matrix subject, yielding "in order to VP". Returns the new sentence and
    the paths of the embedded clauses whose subject was dropped."""
    dropped: list[tuple[int, ...]] = []

    def rewrite(node: d.DSyntNode, path: tuple[int, ...]) -> d.DSyntNode:
        node = replace(node, children=tuple(rewrite(c, path + (i,))
                                            for i, c in enumerate(node.children)))
        if node.cls != d.VERB:
            return node
        matrix_subject = node.child(d.I)
        if matrix_subject is None:
            return node
        new_children = []
        for i, c in enumerate(node.children):
            if (c.cls == d.FUNCTION_WORD and c.lexeme == "in_order" and c.children
                    and c.children[0].cls == d.VERB):
                emb = c.children[0]
                emb_subject = emb.child(d.I)
                if (emb_subject is not None
                        and coref_head(emb_subject) == coref_head(matrix_subject)):
                    emb = replace(emb, children=tuple(x for x in emb.children
                                                      if x is not emb_subject))
                    c = replace(c, children=(emb,) + c.children[1:])
                    dropped.append(path + (i, 0))
            new_children.append(c)
        return replace(node, children=tuple(new_children))

    return rewrite(sentence, ()), dropped


def pronominalize_sentences(sentences: list[d.DSyntNode],
                            fire: Optional[list[bool]] = None
                            ) -> tuple[list[d.DSyntNode], list[list[tuple[tuple[int, ...], str]]]]:
    """Document-order pronominalization pass over built trees.

    Mentions are counted across the whole document whether or not a given
    sentence's gate fired; rewrites (and purpose-subject drops) happen only
    in fired sentences. Character noun phrases carry their pronoun in the
    ``pron`` feature, so the pass needs no story graph.
    """
    if fire is None:
        fire = [True] * len(sentences)
    counts: dict[tuple[str, str], int] = {}
    out_sentences: list[d.DSyntNode] = []
    out_sites: list[list[tuple[tuple[int, ...], str]]] = []
    for sentence, hot in zip(sentences, fire):
        sites: list[tuple[tuple[int, ...], str]] = []
        if hot:
            sentence, dropped = drop_coreferent_purpose_subject(sentence)
            sites.extend((path, "subject-drop") for path in dropped)
        replacements: list[tuple[tuple[int, ...], str]] = []
        for path, node in d.walk(sentence):
            pron = node.feature("pron")
            if node.cls != d.COMMON_NOUN or pron is None:
                continue
            key = (node.lexeme, pron)
            counts[key] = counts.get(key, 0) + 1
            if counts[key] > 1 and hot:
                replacements.append((path, pron))
        # replace bottom-up so earlier paths stay valid
        for path, pron in reversed(replacements):
            old = d.node_at(sentence, path)
            new = d.DSyntNode(pron, d.FUNCTION_WORD, old.relation,
                              {"number": old.feature("number", "sg")})
            sentence = d.replace_at(sentence, path, new)
        sites.extend(replacements)
        out_sentences.append(sentence)
        out_sites.append(sites)
    return out_sentences, out_sites


def rewrite_unable_to_modal(node: d.DSyntNode) -> d.DSyntNode:
    """Collapse negated "be able to VP" into modal "can" (realized
    "could not VP", contracted to "couldn't VP")."""
    node = replace(node, children=tuple(rewrite_unable_to_modal(c) for c in node.children))
    if (node.cls == d.VERB and node.lexeme == "be"
            and node.feature("polarity") == "neg"):
        able = [c for c in node.children
                if c.relation == d.ATTR and c.cls == d.ADJECTIVE and c.lexeme == "able"]
        inf = [c for c in node.children
               if c.relation == d.II and c.cls == d.VERB and "tense" not in c.features]
        if able and inf:
            children = tuple(c for c in node.children if c is not able[0])
            return replace(node, lexeme="can", children=children)
    return node


def enable_contractions(sentence: d.DSyntNode) -> d.DSyntNode:
    """Mark a clause for surface contraction and apply the tree rewrites
    that only make sense in contracted register."""
    return rewrite_unable_to_modal(sentence).with_feature("contract", "on")
