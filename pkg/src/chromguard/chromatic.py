"""Guard placement with strong and conflict-free colorings.

Guards come from the pyramid decomposition of every node of the window
partition.  Nodes fall into six independence classes (depth mod 3 crossed
with the window side); each class colors its guard trees from a private
palette, by tree depth for the strong variant and by the ruler sequence
for the conflict-free variant.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .geometry import OrthoPolygon, Point
from .partition import VisTree, independence_classes, window_partition
from .pyramids import GuardTree, decompose


@lru_cache(maxsize=32)
def ruler_sequence(i: int) -> tuple[int, ...]:
    """s_i: s_1 = (1), s_i = s_{i-1} + (i,) + s_{i-1}; length 2^i - 1."""
    if i < 1:
        raise ValueError("index must be >= 1")
    if i == 1:
        return (1,)
    prev = ruler_sequence(i - 1)
    return prev + (i,) + prev


@dataclass(frozen=True)
class RulerWord:
    """Prefix view of the ruler sequence with its small-alphabet guarantees."""

    length: int

    @property
    def word(self) -> tuple[int, ...]:
        i = 1
        while 2**i - 1 < self.length:
            i += 1
        return ruler_sequence(i)[: self.length]

    def symbol(self, pos: int) -> int:
        """1-based position in the word."""
        if not 1 <= pos <= self.length:
            raise ValueError("position out of range")
        return self.word[pos - 1]

    def distinct(self) -> int:
        return len(set(self.word))


@dataclass(frozen=True)
class ChromaticGuarding:
    poly: OrthoPolygon
    guards: tuple[Point, ...]
    colors: tuple[int, ...]  # 1-based, consecutive

    @property
    def ncolors(self) -> int:
        return max(self.colors, default=0)

    def by_color(self) -> dict[int, tuple[Point, ...]]:
        out: dict[int, list[Point]] = {}
        for g, c in zip(self.guards, self.colors):
            out.setdefault(c, []).append(g)
        return {c: tuple(v) for c, v in sorted(out.items())}


def _decomposed(tree: VisTree) -> list[tuple[int, GuardTree]]:
    classes = independence_classes(tree)
    group_ids = {k: i for i, k in enumerate(sorted(classes.groups))}
    return [
        (group_ids[classes.group_of(node)], decompose(node.wvp))
        for node in tree.nodes
    ]


def _assemble(poly: OrthoPolygon, local_color) -> ChromaticGuarding:
    tree = window_partition(poly)
    decomposed = _decomposed(tree)
    width = max(
        max(local_color(n.depth, gt.height()) for n in gt.nodes)
        for _, gt in decomposed
    )
    guards: list[Point] = []
    flat: list[int] = []
    for group, gt in decomposed:
        for node in gt.nodes:
            guards.append(node.guard)
            flat.append(group * width + local_color(node.depth, gt.height()))
    compact = {c: i + 1 for i, c in enumerate(sorted(set(flat)))}
    return ChromaticGuarding(poly, tuple(guards), tuple(compact[c] for c in flat))


def strong_coloring(poly: OrthoPolygon) -> ChromaticGuarding:
    """Strong chromatic guarding: guards on a root-to-leaf path all differ."""
    return _assemble(poly, lambda depth, height: depth)


def cf_coloring(poly: OrthoPolygon) -> ChromaticGuarding:
    """Conflict-free guarding: depths are colored along the ruler sequence,
    so every contiguous depth range keeps a unique color."""
    return _assemble(
        poly, lambda depth, height: RulerWord(height).symbol(depth)
    )
