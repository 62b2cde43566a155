import itertools
from collections import Counter, defaultdict
from math import factorial

import pytest

from tamari_lab.intervals import (
    YY,
    Interval,
    enumerate_intervals,
    indecomposable_factor,
    is_indecomposable,
)
from tamari_lab.newintervals import (
    Cut,
    closed_new_count,
    count_new,
    decoupage,
    find_cuts,
    graft,
    is_new,
)
from tamari_lab.tamari import tamari_leq
from tamari_lab.trees import (
    LEAF,
    Node,
    decode,
    enumerate_plane_trees,
    plane_internal_nodes,
    size,
)

GAUCHE = decode("((..).)")
DROITE = decode("(.(..))")


def _all_grafts(n, piece_ok=lambda i: True):
    """Oracle: every ``(skeleton, pieces)`` of total size ``n``, with its graft."""
    for skeleton in enumerate_plane_trees(n):
        nodes = list(plane_internal_nodes(skeleton))
        choices = [
            [i for i in enumerate_intervals(len(node) - 1) if piece_ok(i)]
            for _, node in nodes
        ]
        for combo in itertools.product(*choices):
            pieces = {path: piece for (path, _), piece in zip(nodes, combo)}
            yield skeleton, pieces, graft(skeleton, pieces)


def _spans(t):
    """Leaf ranges of the nodes of ``t`` with the subtree and the quotient."""
    out = {}

    def leaves(u):
        return 1 if u is None else leaves(u.left) + leaves(u.right)

    def walk(u, offset, rebuild):
        if u is None:
            return
        width = leaves(u) - 1
        out[(offset, offset + width)] = (u, rebuild(LEAF))
        walk(u.left, offset, lambda x, u=u, r=rebuild: r(Node(x, u.right)))
        walk(u.right, offset + leaves(u.left), lambda x, u=u, r=rebuild: r(Node(u.left, x)))

    walk(t, 0, lambda x: x)
    return out


def _brute_cuts(i):
    lo, hi = _spans(i.lo), _spans(i.hi)
    out = []
    for rng in sorted(set(lo) & set(hi)):
        if not 1 <= rng[1] - rng[0] < i.size:
            continue
        (ls, lq), (hs, hq) = lo[rng], hi[rng]
        if tamari_leq(ls, hs) and tamari_leq(lq, hq):
            out.append(Cut(*rng))
    return out


# ----------------------------------------------------------------- graft


def test_graft_examples():
    i = Interval(DROITE, GAUCHE)
    assert graft(((), (), ()), {(): i}) == i
    assert graft(((), ((), ())), {(): YY, (1,): YY}) == Interval(DROITE, DROITE)
    assert graft((((), ()), ()), {(): YY, (0,): YY}) == Interval(GAUCHE, GAUCHE)


def test_graft_arity_mismatch():
    with pytest.raises(ValueError):
        graft(((), ()), {(): Interval(DROITE, GAUCHE)})


@pytest.mark.parametrize("n", range(1, 5))
def test_graft_yields_intervals(n):
    for _, _, i in _all_grafts(n):
        assert i.size == n and tamari_leq(i.lo, i.hi)


# ------------------------------------------------------------------ cuts


def test_find_cuts_examples():
    assert find_cuts(Interval(DROITE, GAUCHE)) == []
    assert find_cuts(Interval(DROITE, DROITE)) == [Cut(1, 2)]
    assert find_cuts(Interval(GAUCHE, GAUCHE)) == [Cut(0, 1)]


@pytest.mark.parametrize("n", range(1, 6))
def test_find_cuts_matches_oracle(n):
    for i in enumerate_intervals(n):
        assert find_cuts(i) == _brute_cuts(i)


def test_is_new_examples():
    assert is_new(YY)
    assert is_new(Interval(DROITE, GAUCHE))
    assert not is_new(Interval(GAUCHE, GAUCHE))


@pytest.mark.parametrize("n", range(1, 6))
def test_new_means_not_a_nontrivial_graft(n):
    nontrivial = {
        i
        for skeleton, _, i in _all_grafts(n)
        if len(list(plane_internal_nodes(skeleton))) >= 2
    }
    for i in enumerate_intervals(n):
        assert is_new(i) == (i not in nontrivial)


# ------------------------------------------------------------- decoupage


def test_decoupage_examples():
    d = decoupage(Interval(DROITE, GAUCHE))
    assert d.skeleton == ((), (), ()) and d.pieces == {(): Interval(DROITE, GAUCHE)}
    d = decoupage(Interval(DROITE, DROITE))
    assert d.skeleton == ((), ((), ()))
    assert d.pieces == {(): YY, (1,): YY}
    pieces_per_interval = Counter(len(decoupage(i).pieces) for i in enumerate_intervals(3))
    assert pieces_per_interval[1] == 3 and sum(pieces_per_interval.values()) == 13


@pytest.mark.parametrize("n", range(1, 7))
def test_decoupage_sound(n):
    for i in enumerate_intervals(n):
        d = decoupage(i)
        assert graft(d.skeleton, d.pieces) == i
        for path, node in plane_internal_nodes(d.skeleton):
            assert d.pieces[path].size == len(node) - 1
            assert is_new(d.pieces[path])
        cuts = find_cuts(i)
        for a, b in itertools.combinations(cuts, 2):
            disjoint = a.leaf_hi < b.leaf_lo or b.leaf_hi < a.leaf_lo
            nested = (a.leaf_lo <= b.leaf_lo and b.leaf_hi <= a.leaf_hi) or (
                b.leaf_lo <= a.leaf_lo and a.leaf_hi <= b.leaf_hi
            )
            assert disjoint or nested


@pytest.mark.parametrize("n", range(1, 5))
def test_decoupage_unique(n):
    found = defaultdict(list)
    for skeleton, pieces, i in _all_grafts(n, piece_ok=is_new):
        found[i].append((skeleton, pieces))
    for i in enumerate_intervals(n):
        d = decoupage(i)
        assert found[i] == [(d.skeleton, d.pieces)]


def test_decoupage_json():
    data = decoupage(Interval(DROITE, DROITE)).to_json()
    assert data["skeleton"] == [[], [[], []]]
    assert [p["path"] for p in data["pieces"]] == [[], [1]]


# ---------------------------------------------------------------- counts


def test_count_new_sequence():
    assert [count_new(n) for n in range(1, 8)] == [1, 1, 3, 12, 56, 288, 1584]


def test_closed_new_count():
    assert [closed_new_count(n) for n in range(2, 8)] == [1, 3, 12, 56, 288, 1584]
    with pytest.raises(ValueError):
        closed_new_count(1)


def test_closed_new_count_big_integer():
    # same formula evaluated independently with big integers at n = 10 and 30
    for n in (10, 30):
        num = 3 * 2 ** (n - 2) * factorial(2 * n - 2)
        den = factorial(n - 1) * factorial(n + 1)
        assert num % den == 0
        assert closed_new_count(n) == num // den


@pytest.mark.parametrize("n", range(1, 7))
def test_new_implies_indecomposable(n):
    assert all(is_indecomposable(i) for i in enumerate_intervals(n) if is_new(i))


@pytest.mark.parametrize("n", range(1, 7))
def test_skeleton_sum(n):
    total = 0
    for t in enumerate_plane_trees(n):
        prod = 1
        for _, node in plane_internal_nodes(t):
            prod *= count_new(len(node) - 1)
        total += prod
    assert total == len(enumerate_intervals(n))


@pytest.mark.parametrize("n", range(2, 6))
def test_descente(n):
    for i in enumerate_intervals(n):
        if not is_new(i):
            continue
        k, _ = indecomposable_factor(i)
        skeleton = decoupage(k).skeleton
        # a /-chain: only the first child of a skeleton node may be internal
        for _, node in plane_internal_nodes(skeleton):
            assert all(not c for c in node[1:])
        assert size(k.lo) == n - 1
