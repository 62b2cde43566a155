"""Binary plane trees, plane trees, and the grafting operations on them.

A binary tree is either ``LEAF`` (``None``) or a :class:`Node` holding a
left and a right subtree.  Plain tuples keep trees immutable, hashable and
cheap to build, which matters when whole Catalan families are enumerated.

Text form::

    tree := "." | "(" tree tree ")"

so the one-node tree ``Y`` is ``"(..)"``.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterator, NamedTuple, Optional, Tuple


class Node(NamedTuple):
    left: "BinaryTree"
    right: "BinaryTree"


BinaryTree = Optional[Node]
LEAF: BinaryTree = None
Y = Node(LEAF, LEAF)

# A plane tree is the tuple of its children; a leaf has none.
PlaneTree = Tuple["PlaneTree", ...]
PLANE_LEAF: PlaneTree = ()


class TreeParseError(ValueError):
    """Malformed tree text; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


def size(t: BinaryTree) -> int:
    """Number of internal nodes."""
    return _size(t)


@lru_cache(maxsize=None)
def _size(t):
    if t is None:
        return 0
    return _size(t.left) + _size(t.right) + 1


def leaf_count(t: BinaryTree) -> int:
    return size(t) + 1


def encode(t: BinaryTree) -> str:
    parts = []
    stack = [t]
    while stack:
        cur = stack.pop()
        if cur is None:
            parts.append(".")
        elif isinstance(cur, str):
            parts.append(cur)
        else:
            parts.append("(")
            stack.append(")")
            stack.append(cur.right)
            stack.append(cur.left)
    return "".join(parts)


def decode(s: str) -> BinaryTree:
    """Parse the text form; raises :class:`TreeParseError` on bad input."""
    pos = 0
    n = len(s)

    def parse() -> BinaryTree:
        nonlocal pos
        if pos >= n:
            raise TreeParseError("unexpected end of input", pos)
        ch = s[pos]
        if ch == ".":
            pos += 1
            return LEAF
        if ch == "(":
            pos += 1
            left = parse()
            right = parse()
            if pos >= n:
                raise TreeParseError("missing ')'", pos)
            if s[pos] != ")":
                raise TreeParseError(f"expected ')', found {s[pos]!r}", pos)
            pos += 1
            return Node(left, right)
        raise TreeParseError(f"unexpected character {ch!r}", pos)

    tree = parse()
    if pos != n:
        raise TreeParseError("trailing characters", pos)
    return tree


def to_json(t: BinaryTree):
    """Nested-list form: leaf is ``None``, node is ``[left, right]``."""
    if t is None:
        return None
    return [to_json(t.left), to_json(t.right)]


def from_json(obj) -> BinaryTree:
    if obj is None:
        return LEAF
    if isinstance(obj, list) and len(obj) == 2:
        return Node(from_json(obj[0]), from_json(obj[1]))
    raise ValueError(f"not a binary tree in JSON form: {obj!r}")


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=None)
def enumerate_binary_trees(n: int) -> Tuple[BinaryTree, ...]:
    """All trees with ``n`` internal nodes.

    Ordered by left-subtree size, then recursively by the order of the
    left and right subtrees.  The order is part of the CLI output contract.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return (LEAF,)
    out = []
    for k in range(n):
        rights = enumerate_binary_trees(n - 1 - k)
        for left in enumerate_binary_trees(k):
            for right in rights:
                out.append(Node(left, right))
    return tuple(out)


def slash(s: BinaryTree, t: BinaryTree) -> BinaryTree:
    """``s/t``: graft the root of ``s`` on the leftmost leaf of ``t``."""
    if t is None:
        return s
    return Node(slash(s, t.left), t.right)


def backslash(s: BinaryTree, t: BinaryTree) -> BinaryTree:
    """``s\\t``: graft the root of ``t`` on the rightmost leaf of ``s``."""
    if s is None:
        return t
    return Node(s.left, backslash(s.right, t))


def vee(s: BinaryTree, t: BinaryTree) -> BinaryTree:
    return Node(s, t)


def left_spine(t: BinaryTree) -> list:
    """Internal nodes met from the root following left children."""
    spine = []
    while t is not None:
        spine.append(t)
        t = t.left
    return spine


def left_border_length(t: BinaryTree) -> int:
    """Number of edges (segments) on the left border, root edge included."""
    if t is None:
        raise ValueError("the leaf has no left border segments")
    return len(left_spine(t)) + 1


def left_comb(n: int) -> BinaryTree:
    t = LEAF
    for _ in range(n):
        t = Node(t, LEAF)
    return t


def right_comb(n: int) -> BinaryTree:
    t = LEAF
    for _ in range(n):
        t = Node(LEAF, t)
    return t


def graft_leaves(t: BinaryTree, subs) -> BinaryTree:
    """Replace the leaves of ``t``, left to right, by the trees in ``subs``."""
    it = iter(subs)

    def walk(u):
        if u is None:
            return next(it)
        left = walk(u.left)
        return Node(left, walk(u.right))

    out = walk(t)
    if next(it, _SENTINEL) is not _SENTINEL:
        raise ValueError("more substitutes than leaves")
    return out


_SENTINEL = object()


@lru_cache(maxsize=None)
def spanning_subtrees(t: BinaryTree) -> dict:
    """Map ``(a, b) -> (subtree, quotient)`` for every internal node of ``t``.

    ``a..b`` are the (0-based, inclusive) leaves below the node; the
    quotient is ``t`` with that subtree replaced by a leaf.
    """
    out = {}

    def walk(u, offset, rebuild):
        # rebuild(x) puts x back where u sits in t
        if u is None:
            return 1
        nl = walk(u.left, offset, lambda x, u=u: rebuild(Node(x, u.right)))
        nr = walk(u.right, offset + nl, lambda x, u=u: rebuild(Node(u.left, x)))
        width = nl + nr
        out[(offset, offset + width - 1)] = (u, rebuild(LEAF))
        return width

    walk(t, 0, lambda x: x)
    return out


# ---------------------------------------------------------------- plane trees


def plane_leaf_count(t: PlaneTree) -> int:
    if not t:
        return 1
    return sum(plane_leaf_count(c) for c in t)


def plane_internal_count(t: PlaneTree) -> int:
    if not t:
        return 0
    return 1 + sum(plane_internal_count(c) for c in t)


def is_plane_tree(t) -> bool:
    if not isinstance(t, tuple):
        return False
    if not t:
        return True
    return len(t) >= 2 and all(is_plane_tree(c) for c in t)


@lru_cache(maxsize=None)
def _plane_trees_with_leaves(m: int) -> Tuple[PlaneTree, ...]:
    if m == 1:
        return (PLANE_LEAF,)
    out = []
    for parts in _compositions(m, min_parts=2):
        for children in _product(parts):
            out.append(children)
    return tuple(out)


def _compositions(m: int, min_parts: int) -> Iterator[Tuple[int, ...]]:
    def rec(rest, acc):
        if rest == 0:
            if len(acc) >= min_parts:
                yield tuple(acc)
            return
        for first in range(1, rest + 1):
            acc.append(first)
            yield from rec(rest - first, acc)
            acc.pop()

    yield from rec(m, [])


def _product(parts) -> Iterator[PlaneTree]:
    if not parts:
        yield ()
        return
    for head in _plane_trees_with_leaves(parts[0]):
        for tail in _product(parts[1:]):
            yield (head,) + tail


def enumerate_plane_trees(n: int) -> Tuple[PlaneTree, ...]:
    """Plane trees with ``n + 1`` leaves, internal nodes of arity >= 2."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return _plane_trees_with_leaves(n + 1)


def plane_internal_nodes(t: PlaneTree, path: Tuple[int, ...] = ()):
    """Yield ``(path, node)`` for internal nodes in preorder."""
    if not t:
        return
    yield path, t
    for i, c in enumerate(t):
        yield from plane_internal_nodes(c, path + (i,))


def plane_subtree(t: PlaneTree, path) -> PlaneTree:
    for i in path:
        t = t[i]
    return t

