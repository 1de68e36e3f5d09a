"""Story timeline encodings: data model, parser, serializer, validation.

A story document declares entities and a timeline of predicate-argument
propositions, optionally nested and decorated with discourse attachments.
The format is line-oriented with two-space indentation; ``#`` starts a
comment anywhere a line begins. Sketch:

    story fox_and_grapes "The Fox and the Grapes"

    entities
      fox character fox
      grapes object group group_of=grape

    timeline
      0:
        hang hang(Theme=grapes)
          prep on: vine
      1:
        jump jump(Agent=fox)
          purpose:
            obtain obtain(Agent=fox, Theme=grapes)

Inline arguments are entity ids, ``@adjective`` properties, or quoted
literals; nested propositions bind through indented ``role <Name>:`` blocks
or through the discourse lines ``purpose:``/``cause:``/``complement:``.
A proposition may carry ``id=<pid>`` and be reused later as ``ref <pid>``
(backward references only, which keeps the nesting graph acyclic).
The full grammar is documented in the README.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from .diagnostics import ERROR, WARNING, Diagnostic
from .lexicon import ADJECTIVE, NOUN, PREPOSITION, VERB, Lexicon, default_lexicon

CHARACTER = "character"
OBJECT = "object"
LOCATION = "location"
ENTITY_KINDS = frozenset({CHARACTER, OBJECT, LOCATION})

AFFIRMATIVE = "affirmative"
NEGATED = "negated"

PRE_VERB = "pre_verb"
POST_VERB = "post_verb"

PURPOSE = "purpose"
CAUSE = "cause"
COMPLEMENT = "complement"
PREPOSITIONAL = "prepositional"
CLAUSE_RELATIONS = (PURPOSE, CAUSE, COMPLEMENT)

PRONOUNS = frozenset({"he", "she", "it", "they"})


class StoryError(Exception):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


class StorySyntaxError(StoryError):
    pass


class StoryReferenceError(StoryError):
    pass


class StoryCycleError(StoryError):
    pass


# ---------------------------------------------------------------------------
# data model (immutable values; share freely across threads)

@dataclass(frozen=True)
class Entity:
    id: str
    kind: str
    head_lemma: str
    group_of: Optional[str] = None
    number: str = "sg"
    fixed_modifiers: tuple[str, ...] = ()
    pronoun: Optional[str] = None


@dataclass(frozen=True)
class EntityRef:
    entity_id: str


@dataclass(frozen=True)
class Property:
    adjective: str


@dataclass(frozen=True)
class Text:
    value: str


@dataclass(frozen=True)
class FrameInstance:
    predicate_lemma: str
    frame_id: str
    bindings: tuple[tuple[str, "Argument"], ...] = ()

    def binding(self, role: str) -> Optional["Argument"]:
        for name, arg in self.bindings:
            if name == role:
                return arg
        return None

    def roles(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.bindings)


@dataclass(frozen=True)
class Attachment:
    relation: str
    target: Union["Proposition", EntityRef, Property, Text]
    preposition: Optional[str] = None


@dataclass(frozen=True)
class Proposition:
    id: str
    frame: FrameInstance
    polarity: str = AFFIRMATIVE
    adverbs: tuple[tuple[str, str], ...] = ()  # (lemma, pre_verb|post_verb)
    attachments: tuple[Attachment, ...] = ()


Argument = Union[EntityRef, Property, Text, Proposition]


@dataclass(frozen=True)
class Timespan:
    index: int
    propositions: tuple[Proposition, ...]


@dataclass(frozen=True)
class StoryGraph:
    id: str
    title: str
    entities: tuple[Entity, ...]
    timeline: tuple[Timespan, ...]
    original_text: Optional[str] = None

    def entity(self, entity_id: str) -> Entity:
        for e in self.entities:
            if e.id == entity_id:
                return e
        raise KeyError(entity_id)

    def has_entity(self, entity_id: str) -> bool:
        return any(e.id == entity_id for e in self.entities)


def timeline_propositions(g: StoryGraph) -> list[Proposition]:
    """Top-level propositions in timeline order; nested ones stay nested."""
    return [p for ts in g.timeline for p in ts.propositions]


# ---------------------------------------------------------------------------
# parsing

_PROP_RE = re.compile(
    r"^(?P<frame>[A-Za-z_]\w*)\s+(?P<pred>[A-Za-z_]\w*)\((?P<args>[^)]*)\)(?P<rest>.*)$"
)
_BINDING_RE = re.compile(r'^(?P<role>[A-Za-z_]\w*)\s*=\s*(?P<arg>"[^"]*"|@[\w-]+|[\w.]+)$')
_STORY_RE = re.compile(r'^story\s+(?P<id>[A-Za-z_]\w*)\s+"(?P<title>[^"]*)"\s*$')


@dataclass
class _Line:
    indent: int
    text: str
    lineno: int


def _scan(encoded_text: str) -> list[_Line]:
    out = []
    for lineno, raw in enumerate(encoded_text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        stripped = raw.lstrip(" ")
        indent = len(raw) - len(stripped)
        if "\t" in raw[: indent + 1]:
            raise StorySyntaxError("tabs are not allowed in indentation", lineno)
        out.append(_Line(indent, stripped.rstrip(), lineno))
    return out


class _Parser:
    def __init__(self, lines: list[_Line], lexicon: Lexicon):
        self.lines = lines
        self.pos = 0
        self.lexicon = lexicon
        self.entities: dict[str, Entity] = {}
        # proposition id registry; None marks a block still being parsed,
        # which is how a `ref` to an ancestor (a nesting cycle) is caught
        self.props: dict[str, Optional[Proposition]] = {}

    def peek(self) -> Optional[_Line]:
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def take(self) -> _Line:
        line = self.lines[self.pos]
        self.pos += 1
        return line

    # -- top level ----------------------------------------------------------

    def parse(self) -> StoryGraph:
        line = self.peek()
        if line is None:
            raise StorySyntaxError("empty document")
        m = _STORY_RE.match(line.text)
        if line.indent != 0 or not m:
            raise StorySyntaxError('expected: story <id> "<title>"', line.lineno)
        self.take()
        story_id, title = m.group("id"), m.group("title")

        sections: dict[str, list[_Line]] = {}
        order: list[str] = []
        while (line := self.peek()) is not None:
            if line.indent != 0:
                raise StorySyntaxError(f"unexpected indented line {line.text!r}", line.lineno)
            name = line.text.split()[0]
            if name not in ("entities", "original", "timeline") or line.text != name:
                raise StorySyntaxError(f"unknown section {line.text!r}", line.lineno)
            if name in sections:
                raise StorySyntaxError(f"duplicate section {name!r}", line.lineno)
            self.take()
            body: list[_Line] = []
            while (inner := self.peek()) is not None and inner.indent > 0:
                body.append(self.take())
            sections[name] = body
            order.append(name)

        entities = tuple(self._parse_entity(l) for l in sections.get("entities", ()))
        original = None
        if "original" in sections:
            original = "\n".join(l.text for l in sections["original"]) or None
        timeline = self._parse_timeline(sections.get("timeline", []))
        return StoryGraph(story_id, title, entities, timeline, original)

    def _parse_entity(self, line: _Line) -> Entity:
        parts = line.text.split()
        if len(parts) < 3:
            raise StorySyntaxError("entity line needs '<id> <kind> <head_lemma>'", line.lineno)
        eid, kind, head = parts[0], parts[1], parts[2]
        if kind not in ENTITY_KINDS:
            raise StorySyntaxError(f"bad entity kind {kind!r}", line.lineno)
        if eid in self.entities:
            raise StorySyntaxError(f"duplicate entity id {eid!r}", line.lineno)
        group_of = None
        number = "sg"
        mods: tuple[str, ...] = ()
        pronoun = None
        for tok in parts[3:]:
            if "=" not in tok:
                raise StorySyntaxError(f"bad entity field {tok!r}", line.lineno)
            key, value = tok.split("=", 1)
            if key == "group_of":
                group_of = value
            elif key == "number":
                if value not in ("sg", "pl"):
                    raise StorySyntaxError(f"bad number {value!r}", line.lineno)
                number = value
            elif key == "mod":
                mods = tuple(m for m in value.split(",") if m)
                if not mods:
                    raise StorySyntaxError("empty modifier list", line.lineno)
            elif key == "pronoun":
                if value not in PRONOUNS:
                    raise StorySyntaxError(f"bad pronoun {value!r}", line.lineno)
                pronoun = value
            else:
                raise StorySyntaxError(f"unknown entity field {key!r}", line.lineno)
        entity = Entity(eid, kind, head, group_of, number, mods, pronoun)
        self.entities[eid] = entity
        return entity

    def _parse_timeline(self, body: list[_Line]) -> tuple[Timespan, ...]:
        if not body:
            return ()
        base = body[0].indent
        spans = []
        i = 0
        while i < len(body):
            line = body[i]
            if line.indent != base or not re.fullmatch(r"\d+:", line.text):
                raise StorySyntaxError(f"expected timespan header '<index>:', got {line.text!r}",
                                       line.lineno)
            index = int(line.text[:-1])
            i += 1
            block: list[_Line] = []
            while i < len(body) and body[i].indent > base:
                block.append(body[i])
                i += 1
            props = self._parse_prop_block(block, f"t{index}", line.lineno)
            spans.append(Timespan(index, tuple(props)))
        return tuple(spans)

    # -- propositions ---------------------------------------------------------

    def _parse_prop_block(self, block: list[_Line], prefix: str, header_line: int) -> list[Proposition]:
        if not block:
            raise StorySyntaxError("timespan has no propositions", header_line)
        base = block[0].indent
        props = []
        i = 0
        n = 0
        while i < len(block):
            if block[i].indent != base:
                raise StorySyntaxError(f"unexpected indentation in {block[i].text!r}",
                                       block[i].lineno)
            prop, i = self._parse_prop(block, i, f"{prefix}.p{n}")
            props.append(prop)
            n += 1
        return props

    def _sub_block(self, block: list[_Line], i: int) -> tuple[list[_Line], int]:
        base = block[i].indent
        i += 1
        sub = []
        while i < len(block) and block[i].indent > base:
            sub.append(block[i])
            i += 1
        return sub, i

    def _parse_prop(self, block: list[_Line], i: int, auto_id: str) -> tuple[Proposition, int]:
        line = block[i]
        m = _PROP_RE.match(line.text)
        if not m:
            raise StorySyntaxError(f"expected proposition, got {line.text!r}", line.lineno)
        frame_id, predicate = m.group("frame"), m.group("pred")
        if not self.lexicon.has_frame(frame_id):
            raise StoryReferenceError(f"unknown frame {frame_id!r}", line.lineno)

        bindings: list[tuple[str, Argument]] = []
        args = m.group("args").strip()
        if args:
            for piece in self._split_args(args, line.lineno):
                bm = _BINDING_RE.match(piece.strip())
                if not bm:
                    raise StorySyntaxError(f"bad role binding {piece.strip()!r}", line.lineno)
                bindings.append((bm.group("role"),
                                 self._parse_inline_arg(bm.group("arg"), line.lineno)))

        polarity = AFFIRMATIVE
        adverbs: list[tuple[str, str]] = []
        pid = auto_id
        for tok in m.group("rest").split():
            if "=" not in tok:
                raise StorySyntaxError(f"bad proposition field {tok!r}", line.lineno)
            key, value = tok.split("=", 1)
            if key == "polarity":
                if value not in ("aff", "neg"):
                    raise StorySyntaxError(f"bad polarity {value!r}", line.lineno)
                polarity = NEGATED if value == "neg" else AFFIRMATIVE
            elif key == "adv":
                am = re.fullmatch(r"([\w-]+)@(pre|post)", value)
                if not am:
                    raise StorySyntaxError(f"bad adverb {value!r}", line.lineno)
                adverbs.append((am.group(1), PRE_VERB if am.group(2) == "pre" else POST_VERB))
            elif key == "id":
                pid = value
            else:
                raise StorySyntaxError(f"unknown proposition field {key!r}", line.lineno)

        if pid in self.props:
            raise StorySyntaxError(f"duplicate proposition id {pid!r}", line.lineno)
        self.props[pid] = None  # open

        attachments: list[Attachment] = []
        sub, i = self._sub_block(block, i)
        j = 0
        nested_n = 0
        while j < len(sub):
            child = sub[j]
            if child.indent != sub[0].indent:
                raise StorySyntaxError(f"unexpected indentation in {child.text!r}", child.lineno)
            head = child.text
            if head.startswith("prep "):
                pm = re.fullmatch(r"prep\s+([\w-]+):\s*(.+)", head)
                if not pm:
                    raise StorySyntaxError(f"bad preposition line {head!r}", child.lineno)
                word = pm.group(1)
                for piece in self._split_args(pm.group(2), child.lineno):
                    target = self._parse_inline_arg(piece.strip(), child.lineno)
                    attachments.append(Attachment(PREPOSITIONAL, target, word))
                j += 1
            elif re.fullmatch(r"role\s+[A-Za-z_]\w*:", head):
                role = head.split()[1][:-1]
                inner, j = self._sub_block(sub, j)
                nested = self._parse_nested(inner, f"{pid}.n{nested_n}", child.lineno)
                nested_n += 1
                bindings.append((role, nested))
            elif head in ("purpose:", "cause:", "complement:"):
                relation = head[:-1]
                inner, j = self._sub_block(sub, j)
                nested = self._parse_nested(inner, f"{pid}.n{nested_n}", child.lineno)
                nested_n += 1
                attachments.append(Attachment(relation, nested))
            else:
                raise StorySyntaxError(f"unexpected line {head!r} under proposition", child.lineno)

        prop = Proposition(pid, FrameInstance(predicate, frame_id, tuple(bindings)),
                           polarity, tuple(adverbs), tuple(attachments))
        self.props[pid] = prop
        return prop, i

    def _parse_nested(self, inner: list[_Line], auto_id: str, header_line: int) -> Proposition:
        if not inner:
            raise StorySyntaxError("expected an indented proposition", header_line)
        if len(inner) == 1 and inner[0].text.startswith("ref "):
            target = inner[0].text[4:].strip()
            if target not in self.props:
                raise StoryReferenceError(f"unknown proposition id {target!r}", inner[0].lineno)
            resolved = self.props[target]
            if resolved is None:
                raise StoryCycleError(f"proposition {target!r} nests inside itself",
                                      inner[0].lineno)
            return resolved
        prop, end = self._parse_prop(inner, 0, auto_id)
        if end != len(inner):
            raise StorySyntaxError(f"unexpected line {inner[end].text!r}: "
                                   "a nested slot holds exactly one proposition",
                                   inner[end].lineno)
        return prop

    def _split_args(self, text: str, lineno: int) -> list[str]:
        out = []
        depth_quote = False
        current = []
        for ch in text:
            if ch == '"':
                depth_quote = not depth_quote
                current.append(ch)
            elif ch == "," and not depth_quote:
                out.append("".join(current))
                current = []
            else:
                current.append(ch)
        if depth_quote:
            raise StorySyntaxError("unterminated string literal", lineno)
        out.append("".join(current))
        return [p for p in out if p.strip()]

    def _parse_inline_arg(self, text: str, lineno: int) -> Argument:
        if text.startswith('"') and text.endswith('"'):
            return Text(text[1:-1])
        if text.startswith("@"):
            return Property(text[1:])
        if text in self.entities:
            return EntityRef(text)
        raise StoryReferenceError(f"unknown entity {text!r}", lineno)


def parse_story(encoded_text: str, lexicon: Optional[Lexicon] = None) -> StoryGraph:
    """Parse a story document.

    Raises StorySyntaxError for malformed input, StoryReferenceError for
    undeclared entity/frame/proposition ids, StoryCycleError when a ``ref``
    would nest a proposition inside itself. Cross-reference conditions that
    do not block construction (timeline gaps, role arity) are reported by
    :func:`validate_story` instead.
    """
    lex = lexicon or default_lexicon()
    return _Parser(_scan(encoded_text), lex).parse()


# ---------------------------------------------------------------------------
# serialization (canonical form; parse(serialize(g)) == g)

def _format_arg(arg: Argument) -> str:
    if isinstance(arg, EntityRef):
        return arg.entity_id
    if isinstance(arg, Property):
        return "@" + arg.adjective
    if isinstance(arg, Text):
        return f'"{arg.value}"'
    raise TypeError(f"not an inline argument: {arg!r}")


class _Writer:
    def __init__(self) -> None:
        self.lines: list[str] = []
        self.emitted: set[str] = set()

    def add(self, depth: int, text: str) -> None:
        self.lines.append("  " * depth + text)

    def prop(self, p: Proposition, depth: int) -> None:
        if p.id in self.emitted:
            self.add(depth, f"ref {p.id}")
            return
        self.emitted.add(p.id)
        inline = [(r, a) for r, a in p.frame.bindings if not isinstance(a, Proposition)]
        nested = [(r, a) for r, a in p.frame.bindings if isinstance(a, Proposition)]
        head = f"{p.frame.frame_id} {p.frame.predicate_lemma}"
        head += "(" + ", ".join(f"{r}={_format_arg(a)}" for r, a in inline) + ")"
        if p.polarity == NEGATED:
            head += " polarity=neg"
        for lemma, pos in p.adverbs:
            head += f" adv={lemma}@{'pre' if pos == PRE_VERB else 'post'}"
        head += f" id={p.id}"
        self.add(depth, head)
        for role, sub in nested:
            self.add(depth + 1, f"role {role}:")
            self.prop(sub, depth + 2)
        i = 0
        atts = p.attachments
        while i < len(atts):
            a = atts[i]
            if a.relation == PREPOSITIONAL:
                targets = [a.target]
                while (i + 1 < len(atts) and atts[i + 1].relation == PREPOSITIONAL
                       and atts[i + 1].preposition == a.preposition):
                    i += 1
                    targets.append(atts[i].target)
                joined = ", ".join(_format_arg(t) for t in targets)
                self.add(depth + 1, f"prep {a.preposition}: {joined}")
            else:
                self.add(depth + 1, f"{a.relation}:")
                self.prop(a.target, depth + 2)  # type: ignore[arg-type]
            i += 1


def serialize_story(g: StoryGraph) -> str:
    w = _Writer()
    w.add(0, f'story {g.id} "{g.title}"')
    w.add(0, "")
    w.add(0, "entities")
    for e in g.entities:
        line = f"{e.id} {e.kind} {e.head_lemma}"
        if e.group_of:
            line += f" group_of={e.group_of}"
        if e.number != "sg":
            line += f" number={e.number}"
        if e.pronoun:
            line += f" pronoun={e.pronoun}"
        if e.fixed_modifiers:
            line += " mod=" + ",".join(e.fixed_modifiers)
        w.add(1, line)
    if g.original_text:
        w.add(0, "")
        w.add(0, "original")
        for line in g.original_text.splitlines():
            w.add(1, line)
    w.add(0, "")
    w.add(0, "timeline")
    for ts in g.timeline:
        w.add(1, f"{ts.index}:")
        for p in ts.propositions:
            w.prop(p, 2)
    return "\n".join(w.lines) + "\n"


# ---------------------------------------------------------------------------
# validation

def _iter_propositions(g: StoryGraph):
    """Yield (proposition, ancestor_ids) over the whole nesting graph.

    A node already on its own ancestor chain is yielded once more (so the
    caller can report the cycle) but not descended into again.
    """

    def walk(p: Proposition, chain: tuple[int, ...]):
        yield p, chain
        if id(p) in chain:
            return
        children = [a for _, a in p.frame.bindings if isinstance(a, Proposition)]
        children += [a.target for a in p.attachments if isinstance(a.target, Proposition)]
        for child in children:
            yield from walk(child, chain + (id(p),))

    for ts in g.timeline:
        for p in ts.propositions:
            yield from walk(p, ())


def validate_story(g: StoryGraph, lexicon: Optional[Lexicon] = None) -> list[Diagnostic]:
    """Cross-reference checks over a structurally well-formed graph.

    Empty result means every invariant holds. Structural problems that the
    parser already rejects (bad syntax) cannot appear here.
    """
    lex = lexicon or default_lexicon()
    out: list[Diagnostic] = []

    def err(location: str, message: str) -> None:
        out.append(Diagnostic(ERROR, location, message))

    seen_entities = set()
    for e in g.entities:
        if e.id in seen_entities:
            err(e.id, "duplicate entity id")
        seen_entities.add(e.id)
        if e.kind not in ENTITY_KINDS:
            err(e.id, f"bad entity kind {e.kind!r}")
        if not e.head_lemma or not lex.has(e.head_lemma, NOUN):
            err(e.id, f"head lemma {e.head_lemma!r} is not a known noun")
        if e.group_of:
            if e.number != "sg":
                err(e.id, "collective entities take singular agreement")
            if not lex.has(e.group_of, NOUN):
                err(e.id, f"member lemma {e.group_of!r} is not a known noun")
        for adj in e.fixed_modifiers:
            if not lex.has(adj, ADJECTIVE):
                out.append(Diagnostic(WARNING, e.id, f"modifier {adj!r} is not a known adjective"))

    indices = [ts.index for ts in g.timeline]
    if indices != list(range(len(indices))):
        err("timeline", f"non-contiguous timeline indices {indices}")
    for ts in g.timeline:
        if not ts.propositions:
            err(f"t{ts.index}", "timespan has no propositions")

    def check_ref(arg: Argument, location: str) -> None:
        if isinstance(arg, EntityRef) and not g.has_entity(arg.entity_id):
            err(location, f"unknown entity {arg.entity_id!r}")
        elif isinstance(arg, Property) and not lex.has(arg.adjective, ADJECTIVE):
            err(location, f"property {arg.adjective!r} is not a known adjective")

    seen_ids: dict[str, int] = {}
    for p, chain in _iter_propositions(g):
        if id(p) in chain:
            err(p.id, "proposition nesting cycle")
            continue
        if seen_ids.setdefault(p.id, id(p)) != id(p):
            err(p.id, "duplicate proposition id")
        if not lex.has(p.frame.predicate_lemma, VERB):
            err(p.id, f"predicate {p.frame.predicate_lemma!r} is not a known verb")
        if not lex.has_frame(p.frame.frame_id):
            err(p.id, f"unknown frame {p.frame.frame_id!r}")
        else:
            frame = lex.frame(p.frame.frame_id)
            known = {role for role, _ in frame.all_roles()}
            bound = p.frame.roles()
            if len(bound) != len(set(bound)):
                err(p.id, "role bound twice")
            for role, _ in frame.mandatory_roles:
                if role not in bound:
                    err(p.id, f"mandatory role {role} unbound")
            for role in bound:
                if role not in known:
                    err(p.id, f"unknown role {role} for frame {p.frame.frame_id!r}")
        for role, arg in p.frame.bindings:
            check_ref(arg, p.id)
        for a in p.attachments:
            if a.relation in CLAUSE_RELATIONS:
                if not isinstance(a.target, Proposition):
                    err(p.id, f"{a.relation} attachment must nest a proposition")
                if a.preposition:
                    err(p.id, f"{a.relation} attachment does not take a preposition")
            elif a.relation == PREPOSITIONAL:
                if not a.preposition:
                    err(p.id, "prepositional attachment needs a preposition")
                elif not lex.has(a.preposition, PREPOSITION):
                    err(p.id, f"unknown preposition {a.preposition!r}")
                if not isinstance(a.target, (EntityRef, Text)):
                    err(p.id, "prepositional attachment target must be entity or "
                              "noun-phrase valued")
                else:
                    check_ref(a.target, p.id)
            else:
                err(p.id, f"unknown attachment relation {a.relation!r}")
        for lemma, pos in p.adverbs:
            if pos not in (PRE_VERB, POST_VERB):
                err(p.id, f"bad adverb position {pos!r}")
        if p.polarity not in (AFFIRMATIVE, NEGATED):
            err(p.id, f"bad polarity {p.polarity!r}")

    deduped: list[Diagnostic] = []
    for d in out:
        if d not in deduped:
            deduped.append(d)
    return deduped
