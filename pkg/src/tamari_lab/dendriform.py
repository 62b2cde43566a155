"""Integer series indexed by binary trees, and the functional equation they satisfy.

``bold_Phi`` weights each binary tree by the number of intervals having it
as maximum; ``bold_Theta`` does the same for indecomposable intervals.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Dict, List, Optional, Tuple

from tamari_lab.intervals import enumerate_intervals, is_indecomposable
from tamari_lab.trees import (
    LEAF,
    Y,
    BinaryTree,
    backslash,
    encode,
    enumerate_binary_trees,
    left_border_length,
    size,
    slash,
    vee,
)


class TreeSeries:
    """Finite integer combination of binary trees, optionally truncated by size.

    Terms of size greater than ``max_size`` are dropped as they are formed.
    """

    __slots__ = ("terms", "max_size")

    def __init__(self, terms: Optional[Dict[BinaryTree, int]] = None, max_size=None):
        self.max_size = max_size
        self.terms = {
            t: int(c)
            for t, c in (terms or {}).items()
            if c and (max_size is None or size(t) <= max_size)
        }

    @classmethod
    def of(cls, *trees: BinaryTree, max_size=None) -> "TreeSeries":
        out: Dict[BinaryTree, int] = defaultdict(int)
        for t in trees:
            out[t] += 1
        return cls(out, max_size)

    def _limit(self, other: "TreeSeries"):
        sizes = [m for m in (self.max_size, other.max_size) if m is not None]
        return min(sizes) if sizes else None

    def __add__(self, other: "TreeSeries") -> "TreeSeries":
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out.get(t, 0) + c
        return TreeSeries(out, self._limit(other))

    def __neg__(self):
        return TreeSeries({t: -c for t, c in self.terms.items()}, self.max_size)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c: int) -> "TreeSeries":
        return TreeSeries({t: c * v for t, v in self.terms.items()}, self.max_size)

    __rmul__ = __mul__

    def _bilinear(self, other: "TreeSeries", op) -> "TreeSeries":
        limit = self._limit(other)
        out: Dict[BinaryTree, int] = defaultdict(int)
        for s, a in self.terms.items():
            for t, b in other.terms.items():
                if limit is not None and size(s) + size(t) > limit:
                    continue
                for u, m in op(s, t):
                    out[u] += a * b * m
        return TreeSeries(out, limit)

    def slash(self, other: "TreeSeries") -> "TreeSeries":
        return self._bilinear(other, lambda s, t: [(slash(s, t), 1)])

    def backslash(self, other: "TreeSeries") -> "TreeSeries":
        return self._bilinear(other, lambda s, t: [(backslash(s, t), 1)])

    def star(self, other: "TreeSeries") -> "TreeSeries":
        from tamari_lab.tamari import star_trees

        return self._bilinear(other, lambda s, t: star_trees(s, t).terms.items())

    def __truediv__(self, other: "TreeSeries") -> "TreeSeries":
        return self.slash(other)

    def truncate(self, max_size: int) -> "TreeSeries":
        return TreeSeries(self.terms, max_size)

    def homogeneous(self, n: int) -> "TreeSeries":
        return TreeSeries({t: c for t, c in self.terms.items() if size(t) == n})

    def coefficient(self, t: BinaryTree) -> int:
        return self.terms.get(t, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TreeSeries):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_items(self) -> List[Tuple[BinaryTree, int]]:
        return sorted(self.terms.items(), key=lambda kv: (size(kv[0]), encode(kv[0])))

    def to_json(self) -> list:
        return [{"tree": encode(t), "coeff": c} for t, c in self.sorted_items()]

    def __repr__(self):
        body = " + ".join(f"{c}*{encode(t)}" for t, c in self.sorted_items())
        return f"TreeSeries({body or '0'})"


def series_slash(a: TreeSeries, b: TreeSeries) -> TreeSeries:
    return a.slash(b)


def series_star(a: TreeSeries, b: TreeSeries) -> TreeSeries:
    return a.star(b)


def _by_maximum(D: int, indecomposable_only: bool) -> TreeSeries:
    out: Dict[BinaryTree, int] = defaultdict(int)
    for n in range(1, D + 1):
        for i in enumerate_intervals(n):
            if not indecomposable_only or is_indecomposable(i):
                out[i.hi] += 1
    return TreeSeries(out, D)


def bold_Phi(D: int) -> TreeSeries:
    """Sum of maxima over all intervals of size at most ``D``."""
    return _by_maximum(D, False)


def bold_Theta(D: int) -> TreeSeries:
    return _by_maximum(D, True)


def check_relaF(
    D: int, Phi: TreeSeries = None, Theta: TreeSeries = None, star=None
) -> bool:
    """``Phi = Y + Phi/Y + Y*Phi + Phi/(Y*Phi)`` and its two halves, through size ``D``.

    ``star`` replaces the ``*`` product; the default is :meth:`TreeSeries.star`.
    """
    Phi = bold_Phi(D) if Phi is None else Phi
    Theta = bold_Theta(D) if Theta is None else Theta
    star = star or TreeSeries.star
    y = TreeSeries.of(Y, max_size=D)
    y_star_phi = star(y, Phi)
    full = y + Phi / y + y_star_phi + Phi / y_star_phi
    decomposition = Theta + Phi / Theta
    indecomposables = y + y_star_phi
    return (
        (Phi - full).is_zero()
        and (Phi - decomposition).is_zero()
        and (Theta - indecomposables).is_zero()
    )


def delta_series(D: int) -> TreeSeries:
    """``sum over T1, T2 (leaf allowed) of (-1)^(t1+t2) (t1+1) T1 v T2``."""
    out: Dict[BinaryTree, int] = {}
    for n1 in range(D):
        for n2 in range(D - n1):
            sign = -1 if (n1 + n2) % 2 else 1
            for t1 in enumerate_binary_trees(n1):
                for t2 in enumerate_binary_trees(n2):
                    out[vee(t1, t2)] = sign * (n1 + 1)
    return TreeSeries(out, D)


def left_edge_additions(t: BinaryTree) -> TreeSeries:
    """Sum over left-border segments of ``t`` of the tree with a left edge added there."""
    from tamari_lab.intervals import insert_left_edge

    if t is LEAF:
        return TreeSeries.of(Y)
    return TreeSeries.of(
        *(insert_left_edge(t, s) for s in range(1, left_border_length(t) + 1))
    )


def project(series: TreeSeries) -> Dict[Tuple[int, int], int]:
    """``T -> x^L(T) y^size(T)``: the refined counting shadow of a tree series."""
    out: Dict[Tuple[int, int], int] = defaultdict(int)
    for t, c in series.terms.items():
        out[(left_border_length(t), size(t))] += c
    return dict(out)

