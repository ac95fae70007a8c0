"""Template captions for scenes: fine-grained positives and swapped negatives.

Positives render the scene and its sub-scenes ("Hammer and Jet engine and
then Crackle", "Jet engine and then Crackle", ...). Negatives re-render
those sub-scenes after swapping operand order or flipping an operator, so
they contain the same words but describe a different composition.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import TooFewEventsError, TooShortError
from .scene import (
    Event,
    Node,
    Operator,
    SceneExpr,
    internal_nodes,
    leaf_count,
    leaves,
    replace_at,
    subscene_variants,
)

DEFAULT_K_POS = 7
DEFAULT_K_NEG = 7


@dataclass(frozen=True)
class TemplateTable:
    """Connective phrases per operator, in priority order (first = primary)."""

    seq_connectives: tuple[str, ...] = ("and then", "succeeded by", "followed by")
    par_connectives: tuple[str, ...] = ("and", "amidst", "overlayed by")

    def __post_init__(self):
        for name, conns in (("seq", self.seq_connectives), ("par", self.par_connectives)):
            if not conns:
                raise ValueError(f"{name}_connectives must be non-empty")
            for a in conns:
                for b in conns:
                    if a != b and b.startswith(a):
                        raise ValueError(
                            f"{name} connective {a!r} is a prefix of {b!r}; "
                            "negatives would not be reversible"
                        )

    def connective(self, op: Operator, index: int = 0) -> str:
        conns = self.seq_connectives if op is Operator.SEQ else self.par_connectives
        return conns[index % len(conns)]

    @classmethod
    def default(cls) -> "TemplateTable":
        return cls()

    @classmethod
    def strict(cls) -> "TemplateTable":
        """Verbatim connective set of the reference caption tables ("amidst by")."""
        return cls(par_connectives=("and", "amidst by", "overlayed by"))


@dataclass
class CaptionSet:
    """Ordered positives (full scene first) and their mined negatives."""

    positives: list[str]
    negatives: list[str] = field(default_factory=list)


def render_caption(
    expr: SceneExpr,
    table: TemplateTable | None = None,
    connective_index: int = 0,
    seed: int | None = None,
) -> str:
    """In-order rendering: leaves emit their label, nodes join with a connective.

    The connective is the table entry at ``connective_index`` (primary by
    default); with ``seed`` set, an index is drawn per node instead.
    """
    table = table or TemplateTable.default()
    rng = random.Random(seed) if seed is not None else None

    def render(e: SceneExpr) -> str:
        if isinstance(e, Event):
            return e.label
        if rng is not None:
            conns = table.seq_connectives if e.op is Operator.SEQ else table.par_connectives
            conn = conns[rng.randrange(len(conns))]
        else:
            conn = table.connective(e.op, connective_index)
        return f"{render(e.left)} {conn} {render(e.right)}"

    return render(expr)


def _ordered_subscenes(expr: SceneExpr, strict: bool) -> list[SceneExpr]:
    """Sub-scenes in caption priority order: full scene, then fewer events.

    In strict mode, leaf replacements that kept anything but the rightmost
    leaf of the replaced subtree are pruned, matching the suffix-style
    simplifications of the reference caption tables.
    """
    variants = subscene_variants(expr)
    if strict:
        variants = [v for v in variants if v.kind != "leaf" or v.rightmost]
    return sorted((v.expr for v in variants), key=lambda e: -leaf_count(e))


def generate_positives(
    expr: SceneExpr,
    table: TemplateTable | None = None,
    k_max: int | None = DEFAULT_K_POS,
    strict: bool = False,
    connective_index: int = 0,
) -> list[str]:
    """Captions for the scene and its sub-scenes, full scene first."""
    if leaf_count(expr) < 2:
        raise TooFewEventsError("positives need a scene with at least 2 events")
    table = table or TemplateTable.default()
    out: list[str] = []
    for sub in _ordered_subscenes(expr, strict):
        text = render_caption(sub, table, connective_index)
        if text not in out:
            out.append(text)
    return out if k_max is None else out[:k_max]


def _swap_variants(sub: SceneExpr) -> list[SceneExpr]:
    """Order-changing rewrites: operand swaps per node, then leaf transpositions."""
    out: list[SceneExpr] = []
    for path, node in internal_nodes(sub, order="pre"):
        out.append(replace_at(sub, path, Node(node.op, node.right, node.left)))
    sub_leaves = leaves(sub)
    paths = _leaf_paths(sub)
    for i in range(len(sub_leaves)):
        for j in range(i + 1, len(sub_leaves)):
            swapped = replace_at(sub, paths[i], sub_leaves[j])
            swapped = replace_at(swapped, paths[j], sub_leaves[i])
            out.append(swapped)
    return out


def _flip_variants(sub: SceneExpr) -> list[SceneExpr]:
    """Operator flips (sequence <-> overlay), one node at a time, outer first."""
    flipped = {Operator.SEQ: Operator.PAR, Operator.PAR: Operator.SEQ}
    return [
        replace_at(sub, path, Node(flipped[node.op], node.left, node.right))
        for path, node in internal_nodes(sub, order="pre")
    ]


def _leaf_paths(expr: SceneExpr) -> list[tuple[str, ...]]:
    if isinstance(expr, Event):
        return [()]
    return [("l",) + p for p in _leaf_paths(expr.left)] + [
        ("r",) + p for p in _leaf_paths(expr.right)
    ]


def generate_negatives(
    positives: list[str],
    expr: SceneExpr,
    table: TemplateTable | None = None,
    k_max: int | None = DEFAULT_K_NEG,
    strict: bool = False,
    connective_index: int = 0,
) -> list[str]:
    """Swapped/flipped re-renderings of each positive's sub-scene.

    Per positive: operand-order swaps first (outer nodes before inner, then
    leaf transpositions across operands), operator flips after. Duplicates
    and strings already present in ``positives`` are dropped; ``k_max=None``
    disables truncation.
    """
    if not positives:
        raise ValueError("positives must be non-empty")
    table = table or TemplateTable.default()
    by_render: dict[str, SceneExpr] = {}
    for sub in _ordered_subscenes(expr, strict):
        by_render.setdefault(render_caption(sub, table, connective_index), sub)

    pos_set = set(positives)
    out: list[str] = []
    for positive in positives:
        sub = by_render.get(positive)
        if sub is None or isinstance(sub, Event):
            continue
        for variant in _swap_variants(sub) + _flip_variants(sub):
            text = render_caption(variant, table, connective_index)
            if text not in pos_set and text not in out:
                out.append(text)
    return out if k_max is None else out[:k_max]


def build_caption_set(
    expr: SceneExpr,
    table: TemplateTable | None = None,
    k_pos_max: int = DEFAULT_K_POS,
    k_neg_max: int = DEFAULT_K_NEG,
    strict: bool = False,
    connective_index: int = 0,
) -> CaptionSet:
    positives = generate_positives(expr, table, k_pos_max, strict, connective_index)
    negatives = generate_negatives(positives, expr, table, k_neg_max, strict, connective_index)
    return CaptionSet(positives=positives, negatives=negatives)


def shuffle_caption(caption: str, seed: int) -> str:
    """Seeded uniform permutation of whitespace tokens; differs from the input
    whenever any two tokens differ."""
    tokens = caption.split()
    if len(tokens) < 2:
        raise TooShortError("caption must have at least 2 whitespace tokens")
    rng = random.Random(seed)
    if all(t == tokens[0] for t in tokens):
        return " ".join(tokens)
    while True:
        perm = tokens[:]
        rng.shuffle(perm)
        if perm != tokens:
            return " ".join(perm)
