"""Tamari intervals, their maximal /-decomposition and the Y *_s J factorisation."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import List, Optional, Sequence, Tuple

from tamari_lab.limits import check_limit
from tamari_lab.tamari import build_poset, tamari_leq
from tamari_lab.trees import (
    LEAF,
    Y,
    BinaryTree,
    Node,
    decode,
    encode,
    from_json,
    left_border_length,
    left_spine,
    size,
    slash,
    to_json,
)


class NotAnIntervalError(ValueError):
    """A pair ``(lo, hi)`` with ``lo`` not below ``hi``."""


@dataclass(frozen=True)
class Interval:
    lo: BinaryTree
    hi: BinaryTree

    @classmethod
    def checked(cls, lo: BinaryTree, hi: BinaryTree) -> "Interval":
        if size(lo) != size(hi):
            raise NotAnIntervalError(
                f"endpoints have different sizes {size(lo)} and {size(hi)}"
            )
        if not tamari_leq(lo, hi):
            raise NotAnIntervalError(f"{encode(lo)} is not below {encode(hi)}")
        return cls(lo, hi)

    @property
    def size(self) -> int:
        return size(self.lo)

    def __str__(self):
        return f"{encode(self.lo)};{encode(self.hi)}"

    def to_json(self) -> dict:
        return {"lo": to_json(self.lo), "hi": to_json(self.hi)}

    @classmethod
    def from_json(cls, obj) -> "Interval":
        return cls.checked(from_json(obj["lo"]), from_json(obj["hi"]))


def parse_interval(text: str) -> Interval:
    """Parse ``"lo;hi"``.  Tree syntax errors propagate as ``TreeParseError``."""
    lo_text, sep, hi_text = text.strip().partition(";")
    if not sep:
        raise ValueError("interval text must look like 'lo;hi'")
    return Interval.checked(decode(lo_text), decode(hi_text))


YY = Interval(Y, Y)


@lru_cache(maxsize=None)
def _intervals(n: int) -> Tuple[Interval, ...]:
    poset = build_poset(n)
    return tuple(
        Interval(s, t) for s in poset.elements for t in poset.upper_set(s)
    )


def enumerate_intervals(n: int) -> Tuple[Interval, ...]:
    """Every interval of the Tamari lattice of size ``n``.

    Ordered by the minimum's enumeration index, then by the maximum's.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    check_limit(n, "interval size")
    return _intervals(n)


def count_intervals(n: int) -> int:
    check_limit(n, "interval size")
    return build_poset(n).relation_count()


# ----------------------------------------------------------- decompositions


def tree_decomposition(t: BinaryTree) -> List[BinaryTree]:
    """Maximal factorisation ``t = t_1 / ... / t_k`` into indecomposables.

    Cutting every inner segment of the left border leaves one factor per
    left-spine node, namely that node with its left subtree dropped.  The
    factors come back in ``/`` order, the one holding the leftmost leaf first.
    """
    if t is None:
        raise ValueError("the leaf has no decomposition")
    return [Node(LEAF, v.right) for v in reversed(left_spine(t))]


def is_indecomposable_tree(t: BinaryTree) -> bool:
    return t is not None and t.left is None


def composition_of(t: BinaryTree) -> Tuple[int, ...]:
    return tuple(size(f) for f in tree_decomposition(t))


def slash_fold(factors: Sequence[BinaryTree]) -> BinaryTree:
    return reduce(slash, factors)


def slash_split(t: BinaryTree, parts: Sequence[int]) -> Optional[List[BinaryTree]]:
    """Write ``t = t_1 / ... / t_k`` with ``size(t_i) = parts[i]``, if possible."""
    if sum(parts) != size(t) or any(p < 1 for p in parts):
        return None
    factors = []
    rest = t
    for c in parts[:-1]:
        spine = left_spine(rest)
        depth = next(
            (d for d in range(len(spine) - 1, -1, -1) if size(spine[d]) == c), None
        )
        if depth is None:
            return None
        factors.append(spine[depth])
        rest = _replace_on_spine(rest, depth, LEAF)
    factors.append(rest)
    return factors


def _replace_on_spine(t: BinaryTree, depth: int, sub: BinaryTree) -> BinaryTree:
    if depth == 0:
        return sub
    return Node(_replace_on_spine(t.left, depth - 1, sub), t.right)


def interval_slash(j: Interval, k: Interval) -> Interval:
    return Interval(slash(j.lo, k.lo), slash(j.hi, k.hi))


def interval_decomposition(i: Interval) -> List[Interval]:
    """Maximal decomposition ``i = i_1 / ... / i_k`` into indecomposable intervals.

    The granularity is that of the minimum; the maximum is split with the
    same sizes, which is always possible for a genuine interval.
    """
    lo_factors = tree_decomposition(i.lo)
    parts = [size(f) for f in lo_factors]
    hi_factors = slash_split(i.hi, parts)
    if hi_factors is None:
        raise NotAnIntervalError(
            f"maximum {encode(i.hi)} does not split along composition {parts}"
        )
    return [Interval(a, b) for a, b in zip(lo_factors, hi_factors)]


def is_indecomposable(i: Interval) -> bool:
    return is_indecomposable_tree(i.lo)


# ------------------------------------------------------------ Y *_s J


def insert_left_edge(t: BinaryTree, segment: int) -> BinaryTree:
    """Put a new node with a leaf on its left onto a left-border segment of ``t``.

    Segments are numbered from the root edge (1) upward to the edge ending
    at the leftmost leaf (``left_border_length(t)``).
    """
    if segment == 1:
        return Node(LEAF, t)
    return Node(insert_left_edge(t.left, segment - 1), t.right)


def y_star(j: Interval, segment: int) -> Interval:
    """The indecomposable interval ``Y *_s j``."""
    n_segments = left_border_length(j.hi)
    if not 1 <= segment <= n_segments:
        raise ValueError(f"segment {segment} outside 1..{n_segments}")
    return Interval(Node(LEAF, j.lo), insert_left_edge(j.hi, segment))


def indecomposable_factor(i: Interval) -> Tuple[Interval, int]:
    """Inverse of :func:`y_star`: the unique ``(j, s)`` with ``Y *_s j = i``."""
    if not is_indecomposable(i):
        raise ValueError(f"{i} is decomposable")
    if i == YY:
        raise ValueError("[Y,Y] is not of the form Y *_s J")
    spine = left_spine(i.hi)
    # the inserted node is the topmost spine node; its left child is a leaf
    segment = len(spine)
    hi = _replace_on_spine(i.hi, segment - 1, spine[-1].right)
    return Interval(i.lo.right, hi), segment
