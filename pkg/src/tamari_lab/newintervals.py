"""Grafting intervals along plane trees, new intervals, and the unique decoupage.

An interval is *new* when it cannot be produced by grafting smaller
intervals along a plane tree with two or more internal nodes.  The
operational witness is a :class:`Cut`: a leaf range spanned by a node in
both endpoints such that both the spanned pair and the quotient pair are
intervals.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Dict, List, NamedTuple, Tuple

from tamari_lab.intervals import Interval, enumerate_intervals
from tamari_lab.tamari import build_poset
from tamari_lab.trees import (
    LEAF,
    PLANE_LEAF,
    BinaryTree,
    Node,
    PlaneTree,
    graft_leaves,
    plane_internal_nodes,
    size,
    spanning_subtrees,
)

Path = Tuple[int, ...]


class Cut(NamedTuple):
    leaf_lo: int
    leaf_hi: int


class DecoupageError(RuntimeError):
    """The cuts of an interval are not laminar.  Never expected to fire."""


@dataclass(frozen=True)
class Decoupage:
    skeleton: PlaneTree
    pieces: Dict[Path, Interval]

    def to_json(self) -> dict:
        return {
            "skeleton": _plane_json(self.skeleton),
            "pieces": [
                {"path": list(path), "interval": self.pieces[path].to_json()}
                for path, _ in plane_internal_nodes(self.skeleton)
            ],
        }


def _plane_json(t: PlaneTree):
    return [_plane_json(c) for c in t]


def graft(skeleton: PlaneTree, pieces: Dict[Path, Interval]) -> Interval:
    """Substitute the pieces into the skeleton, minima and maxima separately.

    The piece at an internal node with ``c`` children must have size ``c - 1``.
    """

    def build(node: PlaneTree, path: Path) -> Tuple[BinaryTree, BinaryTree]:
        piece = pieces[path]
        if piece.size != len(node) - 1:
            raise ValueError(
                f"piece at {path} has size {piece.size}, node has {len(node)} children"
            )
        los, his = [], []
        for k, child in enumerate(node):
            if child:
                lo, hi = build(child, path + (k,))
            else:
                lo = hi = LEAF
            los.append(lo)
            his.append(hi)
        return graft_leaves(piece.lo, los), graft_leaves(piece.hi, his)

    if not skeleton:
        raise ValueError("skeleton must have an internal node")
    lo, hi = build(skeleton, ())
    return Interval(lo, hi)


def _cuts(i: Interval, first_only: bool) -> List[Cut]:
    n = i.size
    lo_map = spanning_subtrees(i.lo)
    hi_map = spanning_subtrees(i.hi)
    out = []
    for rng, (lo_sub, lo_quot) in lo_map.items():
        width = rng[1] - rng[0]
        if width >= n or rng not in hi_map:
            continue
        hi_sub, hi_quot = hi_map[rng]
        if not build_poset(width).leq(lo_sub, hi_sub):
            continue
        if not build_poset(n - width).leq(lo_quot, hi_quot):
            continue
        out.append(Cut(*rng))
        if first_only:
            break
    return sorted(out)


def find_cuts(i: Interval) -> List[Cut]:
    """All proper cuts of ``i``, sorted by leaf range."""
    return _cuts(i, first_only=False)


def is_new(i: Interval) -> bool:
    return not _cuts(i, first_only=True)


def _laminar(cuts: List[Cut]) -> bool:
    for k, a in enumerate(cuts):
        for b in cuts[k + 1:]:
            disjoint = a.leaf_hi < b.leaf_lo or b.leaf_hi < a.leaf_lo
            nested = (a.leaf_lo <= b.leaf_lo and b.leaf_hi <= a.leaf_hi) or (
                b.leaf_lo <= a.leaf_lo and a.leaf_hi <= b.leaf_hi
            )
            if not (disjoint or nested):
                return False
    return True


def decoupage(i: Interval) -> Decoupage:
    """The unique way of writing ``i`` as a grafting of new intervals.

    Built from the laminar family of all cuts: each cut range becomes a
    skeleton node, and its piece is the quotient of the spanned pair by
    the immediately nested ranges.
    """
    cuts = find_cuts(i)
    if not _laminar(cuts):
        raise DecoupageError(f"cuts of {i} are not laminar: {cuts}")
    ranges = set(cuts)
    n = i.size
    full = Cut(0, n)
    lo_map = spanning_subtrees(i.lo)
    hi_map = spanning_subtrees(i.hi)
    pieces: Dict[Path, Interval] = {}

    def build(rng: Cut, path: Path) -> PlaneTree:
        lo_sub = i.lo if rng == full else lo_map[rng][0]
        hi_sub = i.hi if rng == full else hi_map[rng][0]
        lo_children: list = []
        hi_children: list = []
        lo_piece = _collapse_below(lo_sub, rng.leaf_lo, ranges, lo_children)
        hi_piece = _collapse_below(hi_sub, rng.leaf_lo, ranges, hi_children)
        if lo_children != hi_children:
            raise DecoupageError(f"endpoints of {i} disagree below {rng}")
        pieces[path] = Interval(lo_piece, hi_piece)
        return tuple(
            PLANE_LEAF if c is None else build(c, path + (k,))
            for k, c in enumerate(lo_children)
        )

    skeleton = build(full, ())
    return Decoupage(skeleton, pieces)


def _collapse_below(
    t: BinaryTree, offset: int, ranges: set, children: list
) -> BinaryTree:
    """Fold every proper sub-range of ``t`` found in ``ranges`` to a leaf.

    ``children`` receives, left to right, ``None`` for each original leaf
    and the folded range for each folded subtree.
    """

    def walk(u: BinaryTree, off: int, top: bool) -> Tuple[BinaryTree, int]:
        if u is None:
            children.append(None)
            return LEAF, 1
        width = size(u) + 1
        rng = Cut(off, off + width - 1)
        if not top and rng in ranges:
            children.append(rng)
            return LEAF, width
        left, wl = walk(u.left, off, False)
        right, wr = walk(u.right, off + wl, False)
        return Node(left, right), wl + wr

    return walk(t, offset, True)[0]


@lru_cache(maxsize=None)
def count_new(n: int) -> int:
    """Number of new intervals of size ``n``, by exhaustive enumeration."""
    return sum(1 for i in enumerate_intervals(n) if is_new(i))


def closed_new_count(n: int) -> int:
    """``3 * 2^(n-2) * (2n-2)! / ((n-1)! (n+1)!)`` for ``n >= 2``."""
    if n < 2:
        raise ValueError("closed form holds for n >= 2")
    num = 3 * 2 ** (n - 2) * factorial(2 * n - 2)
    den = factorial(n - 1) * factorial(n + 1)
    q, r = divmod(num, den)
    assert r == 0
    return q
