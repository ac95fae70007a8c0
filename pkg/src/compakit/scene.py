"""Acoustic-scene expressions: parse, print, and enumerate sub-scenes.

A scene is a binary tree over event labels with two operators: ``+``
(events in sequence) and ``*`` (events overlaid). ``*`` binds tighter
than ``+``, both associate left, parentheses override. Labels are free
text excluding the reserved characters ``+ * ( )``; labels that need a
reserved character can be double-quoted: ``"Howl (wind)" + Male singing``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Union

from .errors import SceneSyntaxError, TooManyEventsError

DEFAULT_MAX_EVENTS = 4

_RESERVED = set('+*()')


class Operator(Enum):
    SEQ = "+"
    PAR = "*"


@dataclass(frozen=True)
class Event:
    label: str

    def __post_init__(self):
        label = self.label
        if not label or label != label.strip():
            raise SceneSyntaxError(f"label must be non-empty and trimmed: {label!r}")
        if '"' in label or "\n" in label:
            raise SceneSyntaxError(f"label may not contain quotes or newlines: {label!r}")


@dataclass(frozen=True)
class Node:
    op: Operator
    left: "SceneExpr"
    right: "SceneExpr"


SceneExpr = Union[Event, Node]


def leaves(expr: SceneExpr) -> list[Event]:
    """Event leaves in left-to-right order."""
    if isinstance(expr, Event):
        return [expr]
    return leaves(expr.left) + leaves(expr.right)


def leaf_count(expr: SceneExpr) -> int:
    return len(leaves(expr))


def internal_nodes(expr: SceneExpr, order: str = "pre") -> list[tuple[tuple[str, ...], Node]]:
    """(path, node) for every internal node; path is a tuple of 'l'/'r' steps.

    ``order`` is "pre" (outer nodes first) or "post" (deepest first).
    """
    out: list[tuple[tuple[str, ...], Node]] = []

    def walk(e: SceneExpr, path: tuple[str, ...]):
        if isinstance(e, Event):
            return
        if order == "pre":
            out.append((path, e))
        walk(e.left, path + ("l",))
        walk(e.right, path + ("r",))
        if order == "post":
            out.append((path, e))

    walk(expr, ())
    return out


def replace_at(expr: SceneExpr, path: tuple[str, ...], replacement: SceneExpr) -> SceneExpr:
    if not path:
        return replacement
    assert isinstance(expr, Node)
    if path[0] == "l":
        return Node(expr.op, replace_at(expr.left, path[1:], replacement), expr.right)
    return Node(expr.op, expr.left, replace_at(expr.right, path[1:], replacement))


# --- parsing ---------------------------------------------------------------


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Tokens as (kind, value, position); kinds: label, op, lparen, rparen."""
    tokens: list[tuple[str, str, int]] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c in "+*":
            tokens.append(("op", c, i))
            i += 1
        elif c == "(":
            tokens.append(("lparen", c, i))
            i += 1
        elif c == ")":
            tokens.append(("rparen", c, i))
            i += 1
        elif c == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise SceneSyntaxError(f"unterminated quoted label at position {i}")
            label = text[i + 1:j].strip()
            if not label:
                raise SceneSyntaxError(f"empty quoted label at position {i}")
            tokens.append(("label", label, i))
            i = j + 1
        else:
            j = i
            while j < n and text[j] not in _RESERVED and text[j] != '"':
                j += 1
            label = text[i:j].strip()
            if label:
                tokens.append(("label", label, i))
            i = j
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str, int]]):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise SceneSyntaxError("unexpected end of expression")
        self.pos += 1
        return tok

    def expr(self) -> SceneExpr:
        left = self.term()
        while True:
            tok = self.peek()
            if tok is None or tok[1] != "+":
                return left
            self.next()
            left = Node(Operator.SEQ, left, self.term())

    def term(self) -> SceneExpr:
        left = self.atom()
        while True:
            tok = self.peek()
            if tok is None or tok[1] != "*":
                return left
            self.next()
            left = Node(Operator.PAR, left, self.atom())

    def atom(self) -> SceneExpr:
        kind, value, pos = self.next()
        if kind == "label":
            return Event(value)
        if kind == "lparen":
            inner = self.expr()
            tok = self.peek()
            if tok is None or tok[0] != "rparen":
                raise SceneSyntaxError(f"missing ')' for '(' at position {pos}")
            self.next()
            return inner
        if kind == "op":
            raise SceneSyntaxError(f"operand expected before {value!r} at position {pos}")
        raise SceneSyntaxError(f"unexpected ')' at position {pos}")


def parse_scene(text: str, max_events: int = DEFAULT_MAX_EVENTS) -> SceneExpr:
    """Parse a scene expression; raises SceneSyntaxError / TooManyEventsError."""
    if not text or not text.strip():
        raise SceneSyntaxError("empty scene expression")
    parser = _Parser(_tokenize(text))
    expr = parser.expr()
    trailing = parser.peek()
    if trailing is not None:
        kind, value, pos = trailing
        raise SceneSyntaxError(f"operator expected before {value!r} at position {pos}")
    n = leaf_count(expr)
    if n > max_events:
        raise TooManyEventsError(f"scene has {n} events, maximum is {max_events}")
    return expr


def print_scene(expr: SceneExpr) -> str:
    """Canonical text form: every nested node parenthesized, top level bare.

    Round-trips: ``parse_scene(print_scene(e)) == e``.
    """
    if isinstance(expr, Event):
        return _print_label(expr.label)
    return f"{_print_child(expr.left)} {expr.op.value} {_print_child(expr.right)}"


def _print_child(expr: SceneExpr) -> str:
    if isinstance(expr, Event):
        return _print_label(expr.label)
    return f"({_print_child(expr.left)} {expr.op.value} {_print_child(expr.right)})"


def _print_label(label: str) -> str:
    if any(c in _RESERVED for c in label):
        return f'"{label}"'
    return label


# --- sub-scene enumeration --------------------------------------------------


@dataclass(frozen=True)
class SubsceneVariant:
    """One entry of the sub-scene enumeration with how it was derived.

    ``kind`` is "self" for the input expression, "leaf" when a subtree was
    replaced by one of its own leaves, and "subtree" when it was replaced by
    one of its own internal subtrees (for the root site this yields the bare
    subtree). ``rightmost`` marks leaf replacements that kept the rightmost
    leaf of the replaced subtree.
    """

    expr: SceneExpr
    kind: str
    rightmost: bool = False


def subscene_variants(expr: SceneExpr) -> list[SubsceneVariant]:
    """The input plus every single-site simplification of it, deduplicated.

    Sites (internal nodes) are visited deepest-first; at each site the
    subtree is replaced by each of its own leaves (rightmost first) and then
    by each of its own proper internal subtrees. Single-leaf results are
    dropped whenever the input has two or more leaves.
    """
    out = [SubsceneVariant(expr, "self")]
    seen = {expr}
    multi = leaf_count(expr) >= 2

    def emit(variant: SceneExpr, kind: str, rightmost: bool = False):
        if multi and isinstance(variant, Event):
            return
        if variant in seen:
            return
        seen.add(variant)
        out.append(SubsceneVariant(variant, kind, rightmost))

    for path, node in internal_nodes(expr, order="post"):
        node_leaves = leaves(node)
        for i, leaf in enumerate(reversed(node_leaves)):
            emit(replace_at(expr, path, leaf), "leaf", rightmost=(i == 0))
        for sub_path, sub_node in internal_nodes(node, order="pre"):
            if sub_path:  # proper subtree only
                emit(replace_at(expr, path, sub_node), "subtree")
    return out


def enumerate_subscenes(expr: SceneExpr) -> list[SceneExpr]:
    """Sub-scene expressions whose renderings form the positive-caption set."""
    return [v.expr for v in subscene_variants(expr)]


# --- scene-list files --------------------------------------------------------


def read_scene_file(path: str | Path) -> list[tuple[int, str]]:
    """(line_number, expression_text) pairs; blank lines and # comments skipped."""
    out = []
    for i, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        out.append((i, line))
    return out
