"""Deep-syntactic dependency trees.

Nodes pair a lexeme with a lexico-syntactic class and hang off their
governor under a labelled relation: I/II/III for arguments, ATTR for
modifiers, APPEND for adjuncts and function-word structure. Grammatical
features ride along as a small string map. Trees are immutable values;
``attach`` returns a new parent.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator, Mapping, Optional
from xml.sax.saxutils import escape

from .diagnostics import ERROR, Diagnostic

COMMON_NOUN = "common_noun"
VERB = "verb"
ADJECTIVE = "adjective"
ADVERB = "adverb"
PREPOSITION = "preposition"
FUNCTION_WORD = "function_word"

CLASSES = frozenset({COMMON_NOUN, VERB, ADJECTIVE, ADVERB, PREPOSITION, FUNCTION_WORD})

ROOT = "ROOT"
I = "I"
II = "II"
III = "III"
ATTR = "ATTR"
APPEND = "APPEND"

RELATIONS = frozenset({ROOT, I, II, III, ATTR, APPEND})
ARGUMENT_RELATIONS = (I, II, III)

# relations a child may carry, per governor class
ALLOWED_CHILD_RELATIONS = {
    VERB: frozenset({I, II, III, ATTR, APPEND}),
    COMMON_NOUN: frozenset({ATTR, APPEND}),
    PREPOSITION: frozenset({APPEND}),
    FUNCTION_WORD: frozenset({APPEND}),
    ADJECTIVE: frozenset(),
    ADVERB: frozenset(),
}

# feature domains; the last four carry style/realization decisions made
# upstream of the realizer
FEATURE_DOMAIN: dict[str, frozenset[str]] = {
    "tense": frozenset({"past"}),
    "number": frozenset({"sg", "pl"}),
    "article": frozenset({"def", "indef", "none"}),
    "polarity": frozenset({"aff", "neg"}),
    "person": frozenset({"3rd"}),
    "punct": frozenset({"period", "exclaim", "question"}),
    "position": frozenset({"pre", "post"}),
    "contract": frozenset({"on"}),
    "sem_neg": frozenset({"on"}),
    "stutter": frozenset({"1", "2"}),
    "pron": frozenset({"he", "she", "it", "they"}),
}


class TreeError(Exception):
    pass


class RelationConflictError(TreeError):
    pass


class ClassError(TreeError):
    pass


@dataclass(frozen=True)
class DSyntNode:
    lexeme: str
    cls: str
    relation: str = ROOT
    features: Mapping[str, str] = field(default_factory=dict)
    children: tuple["DSyntNode", ...] = ()

    def feature(self, key: str, default: Optional[str] = None) -> Optional[str]:
        return self.features.get(key, default)

    def with_feature(self, key: str, value: str) -> "DSyntNode":
        feats = dict(self.features)
        feats[key] = value
        return replace(self, features=feats)

    def without_feature(self, key: str) -> "DSyntNode":
        feats = {k: v for k, v in self.features.items() if k != key}
        return replace(self, features=feats)

    def child(self, relation: str) -> Optional["DSyntNode"]:
        for c in self.children:
            if c.relation == relation:
                return c
        return None


@dataclass(frozen=True)
class Document:
    sentences: tuple[DSyntNode, ...] = ()


def attach(parent: DSyntNode, child: DSyntNode, relation: str) -> DSyntNode:
    """Append ``child`` to ``parent`` under ``relation``; returns the new
    parent, leaving both inputs untouched."""
    if relation not in RELATIONS or relation == ROOT:
        raise TreeError(f"bad child relation {relation!r}")
    allowed = ALLOWED_CHILD_RELATIONS.get(parent.cls)
    if allowed is None:
        raise ClassError(f"unknown class {parent.cls!r}")
    if relation not in allowed:
        raise ClassError(f"relation {relation} not allowed under {parent.cls}")
    if relation in ARGUMENT_RELATIONS and parent.child(relation) is not None:
        raise RelationConflictError(f"second {relation} child under {parent.lexeme!r}")
    return replace(parent, children=parent.children + (replace(child, relation=relation),))


def walk(node: DSyntNode, path: tuple[int, ...] = ()) -> Iterator[tuple[tuple[int, ...], DSyntNode]]:
    """Pre-order traversal yielding (path, node); paths index into children."""
    yield path, node
    for i, c in enumerate(node.children):
        yield from walk(c, path + (i,))


def node_at(root: DSyntNode, path: tuple[int, ...]) -> DSyntNode:
    node = root
    for i in path:
        node = node.children[i]
    return node


def replace_at(root: DSyntNode, path: tuple[int, ...], new: DSyntNode) -> DSyntNode:
    if not path:
        return new
    i = path[0]
    children = root.children[:i] + (replace_at(root.children[i], path[1:], new),) + root.children[i + 1:]
    return replace(root, children=children)


def validate_tree(root: DSyntNode) -> list[Diagnostic]:
    """Empty iff every node invariant holds recursively from ``root`` down."""
    out: list[Diagnostic] = []

    def err(path: tuple[int, ...], message: str) -> None:
        loc = ".".join(map(str, path)) if path else "root"
        out.append(Diagnostic(ERROR, loc, message))

    if root.cls != VERB:
        err((), f"clause root must be a verb, got {root.cls}")
    if root.relation != ROOT:
        err((), f"clause root carries relation {root.relation}, expected ROOT")

    for path, node in walk(root):
        if node.cls not in CLASSES:
            err(path, f"unknown class {node.cls!r}")
            continue
        if node.relation not in RELATIONS:
            err(path, f"unknown relation {node.relation!r}")
        if path and node.relation == ROOT:
            err(path, "ROOT relation below the root")
        if not node.lexeme:
            err(path, "empty lexeme")
        for key, value in node.features.items():
            domain = FEATURE_DOMAIN.get(key)
            if domain is None:
                err(path, f"unknown feature {key!r}")
            elif value not in domain:
                err(path, f"bad value {value!r} for feature {key!r}")
        if "article" in node.features and node.cls != COMMON_NOUN:
            err(path, f"article feature on {node.cls}")
        if "tense" in node.features and node.cls != VERB:
            err(path, f"tense feature on {node.cls}")
        allowed = ALLOWED_CHILD_RELATIONS[node.cls] if node.cls in ALLOWED_CHILD_RELATIONS else frozenset()
        for rel in ARGUMENT_RELATIONS:
            if sum(1 for c in node.children if c.relation == rel) > 1:
                err(path, f"more than one {rel} child under {node.lexeme!r}")
        for i, c in enumerate(node.children):
            if c.relation == ROOT:
                continue  # reported at the child itself
            if c.relation in RELATIONS and c.relation not in allowed:
                err(path + (i,), f"relation {c.relation} not allowed under {node.cls}")
    return out


def validate_document(doc: Document) -> list[Diagnostic]:
    out = []
    for i, sentence in enumerate(doc.sentences):
        for d in validate_tree(sentence):
            out.append(Diagnostic(d.severity, f"s{i}.{d.location}", d.message))
    return out


# ---------------------------------------------------------------------------
# serialization: one element per lexico-syntactic unit, deterministic byte
# output for equal documents (feature keys in sorted order)

def _quote(value: str) -> str:
    return '"' + escape(value, {'"': "&quot;"}) + '"'


def _node_markup(node: DSyntNode, depth: int, lines: list[str]) -> None:
    pad = "  " * depth
    attrs = [f"lexeme={_quote(node.lexeme)}",
             f"class={_quote(node.cls)}",
             f"relation={_quote(node.relation)}"]
    for key in sorted(node.features):
        attrs.append(f"{key}={_quote(node.features[key])}")
    head = f"{pad}<node {' '.join(attrs)}"
    if node.children:
        lines.append(head + ">")
        for c in node.children:
            _node_markup(c, depth + 1, lines)
        lines.append(f"{pad}</node>")
    else:
        lines.append(head + "/>")


def serialize(doc: Document) -> str:
    lines = ["<document>"]
    for i, sentence in enumerate(doc.sentences):
        lines.append(f'  <sentence index="{i}">')
        _node_markup(sentence, 2, lines)
        lines.append("  </sentence>")
    lines.append("</document>")
    return "\n".join(lines) + "\n"
