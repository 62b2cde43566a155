"""The Tamari order on binary trees of a fixed size.

The order is the reflexive-transitive closure of the upward rotation
``A v (B v C) -> (A v B) v C``.  :func:`build_poset` materialises it for
one size as up-set bitmasks over the enumerated trees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Tuple

from tamari_lab.limits import check_limit
from tamari_lab.trees import (
    BinaryTree,
    Node,
    backslash,
    encode,
    enumerate_binary_trees,
    size,
    slash,
)


def rotations_up(t: BinaryTree) -> List[BinaryTree]:
    """Trees covering ``t``: one rotation ``A v (B v C) -> (A v B) v C``."""
    if t is None:
        return []
    out = []
    if t.right is not None:
        a, (b, c) = t.left, t.right
        out.append(Node(Node(a, b), c))
    for u in rotations_up(t.left):
        out.append(Node(u, t.right))
    for u in rotations_up(t.right):
        out.append(Node(t.left, u))
    return out


@dataclass(frozen=True)
class TamariPoset:
    n: int
    elements: Tuple[BinaryTree, ...]
    index: Dict[BinaryTree, int] = field(repr=False)
    covers: Tuple[Tuple[int, ...], ...] = field(repr=False)
    # bit j of up[i] is set iff elements[i] <= elements[j]
    up: Tuple[int, ...] = field(repr=False)

    def __len__(self):
        return len(self.elements)

    def leq(self, s: BinaryTree, t: BinaryTree) -> bool:
        return bool(self.up[self.index[s]] >> self.index[t] & 1)

    def upper_set(self, s: BinaryTree) -> List[BinaryTree]:
        """Elements above ``s``, in enumeration order."""
        return [self.elements[j] for j in _bits(self.up[self.index[s]])]

    def interval(self, s: BinaryTree, t: BinaryTree) -> List[BinaryTree]:
        """Elements ``u`` with ``s <= u <= t``, in enumeration order."""
        jt = self.index[t]
        return [
            self.elements[j]
            for j in _bits(self.up[self.index[s]])
            if self.up[j] >> jt & 1
        ]

    def relation_count(self) -> int:
        return sum(bin(m).count("1") for m in self.up)

    def to_json(self) -> dict:
        """Hasse diagram as an adjacency list keyed by tree encoding."""
        return {
            "n": self.n,
            "elements": [encode(t) for t in self.elements],
            "covers": {
                encode(self.elements[i]): [encode(self.elements[j]) for j in cs]
                for i, cs in enumerate(self.covers)
            },
        }


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@lru_cache(maxsize=None)
def _build(n: int) -> TamariPoset:
    elements = enumerate_binary_trees(n)
    index = {t: i for i, t in enumerate(elements)}
    covers = tuple(tuple(sorted(index[u] for u in rotations_up(t))) for t in elements)
    up: List[int] = [0] * len(elements)
    done = [False] * len(elements)

    # Iterative post-order DFS over the cover graph (a DAG).
    for root in range(len(elements)):
        if done[root]:
            continue
        stack = [(root, 0)]
        while stack:
            i, k = stack.pop()
            if k < len(covers[i]):
                stack.append((i, k + 1))
                j = covers[i][k]
                if not done[j]:
                    stack.append((j, 0))
                continue
            if done[i]:
                continue
            mask = 1 << i
            for j in covers[i]:
                mask |= up[j]
            up[i] = mask
            done[i] = True
    return TamariPoset(n, elements, index, covers, tuple(up))


def build_poset(n: int) -> TamariPoset:
    """The Tamari lattice on trees with ``n`` internal nodes (cached)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    check_limit(n, "poset size")
    return _build(n)


def tamari_leq(s: BinaryTree, t: BinaryTree) -> bool:
    n = size(s)
    if n != size(t):
        raise ValueError(f"size mismatch: {n} vs {size(t)}")
    return build_poset(n).leq(s, t)


def star_trees(s: BinaryTree, t: BinaryTree):
    """``s * t`` as a tree series: every tree of the interval ``[s\\t, s/t]``."""
    from tamari_lab.dendriform import TreeSeries

    lo, hi = backslash(s, t), slash(s, t)
    poset = build_poset(size(lo))
    return TreeSeries({u: 1 for u in poset.interval(lo, hi)})

