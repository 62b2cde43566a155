import itertools
from collections import Counter
from fractions import Fraction
from math import factorial

import pytest

from tamari_lab import prelie
from tamari_lab.power_series import Poly2, YSeries
from tamari_lab.prelie import (
    POINT,
    RootedTreeSeries,
    alpha,
    alphas,
    assemble_Psi,
    aut_order,
    check_Psi_equation,
    check_psi_sum,
    check_sommarb,
    check_u_recurrence,
    derivation_property_holds,
    enumerate_rooted_trees,
    graft_product,
    node_count,
    nu_functional,
    rooted,
    rooted_decode,
    rooted_encode,
    shape,
    u_recurrence,
    u_term,
)
from tamari_lab.series import compute_nu, compute_psi
from tamari_lab.trees import enumerate_plane_trees, plane_internal_nodes

PATH2 = rooted([POINT])
PATH3 = rooted([PATH2])
CHERRY = rooted([POINT, POINT])


def _parents(a):
    """Flatten to a parent list, root first (parent of the root is -1)."""
    out = []

    def walk(t, parent):
        me = len(out)
        out.append(parent)
        for c in t:
            walk(c, me)

    walk(a, -1)
    return out


def _brute_aut(a):
    """Oracle: permutations of the nodes that preserve the parent map."""
    parent = _parents(a)
    n = len(parent)
    count = 0
    for perm in itertools.permutations(range(1, n)):
        p = (0,) + perm
        if all(parent[p[v]] == (p[parent[v]] if parent[v] >= 0 else -1) for v in range(n)):
            count += 1
    return count


def _rooted_from_parents(parent):
    kids = [[] for _ in parent]
    for v, p in enumerate(parent):
        if p >= 0:
            kids[p].append(v)

    def build(v):
        return rooted(build(c) for c in kids[v])

    return build(0)


# --------------------------------------------------------------- trees


def test_rooted_tree_counts():
    assert [len(enumerate_rooted_trees(k)) for k in range(1, 8)] == [1, 1, 2, 4, 9, 20, 48]


def test_rooted_enumeration_matches_parent_arrays():
    # oracle: canonicalise every parent array with parent[v] < v
    for k in range(1, 7):
        found = set()
        for parent in itertools.product(*[range(v) for v in range(1, k)]):
            found.add(_rooted_from_parents((-1,) + parent))
        assert found == set(enumerate_rooted_trees(k))


def test_canonical_encoding():
    a = rooted([PATH2, POINT])
    b = rooted([POINT, PATH2])
    assert a == b and rooted_encode(a) == rooted_encode(b) == "((())())"
    assert rooted_decode(rooted_encode(a)) == a
    assert node_count(a) == 4
    with pytest.raises(ValueError):
        rooted_decode("(()")


def test_aut_order_examples():
    assert aut_order(POINT) == 1
    assert aut_order(CHERRY) == 2
    assert aut_order(PATH3) == 1


@pytest.mark.parametrize("k", range(1, 7))
def test_aut_order_brute_force(k):
    for a in enumerate_rooted_trees(k):
        assert aut_order(a) == _brute_aut(a)


# -------------------------------------------------------------- grafting


def test_graft_examples():
    assert graft_product(POINT, POINT) == RootedTreeSeries({PATH2: 1})
    assert graft_product(PATH2, POINT) == RootedTreeSeries({PATH3: 1, CHERRY: 1})


def test_graft_grading():
    for ka in range(1, 5):
        for kb in range(1, 5):
            for a in enumerate_rooted_trees(ka):
                for b in enumerate_rooted_trees(kb):
                    terms = graft_product(a, b).terms
                    assert all(node_count(t) == ka + kb for t in terms)
                    assert sum(terms.values()) == ka


def test_u_terms():
    assert u_term(1) == RootedTreeSeries({POINT: 1})
    assert u_term(2) == RootedTreeSeries({PATH2: 1})
    assert u_term(3) == RootedTreeSeries({PATH3: 2, CHERRY: 1})


def test_u_recurrence():
    assert check_u_recurrence(3)
    assert check_u_recurrence(6)
    assert any(u_term(k + 1) != u_recurrence(k, binomial_weights=False) for k in range(1, 6))


# ----------------------------------------------------------- functionals


def test_nu_functional_examples():
    f = compute_nu(8)
    assert nu_functional(POINT, f) == f
    assert nu_functional(PATH2, f) == f * f.derivative()
    assert nu_functional(CHERRY, f) == f * f * f.derivative().derivative()


@pytest.fixture(scope="module")
def nu10():
    return compute_nu(10)


def test_derivation_property(nu10):
    trees = [a for k in range(1, 5) for a in enumerate_rooted_trees(k)]
    for a in trees:
        for b in trees:
            assert derivation_property_holds(a, b, nu10)


def test_derivation_property_fails_for_wrong_product(nu10):
    # replacing the derivative by the identity breaks the identity
    a, b = PATH2, POINT
    lhs = sum(
        (nu_functional(t, nu10) * m for t, m in graft_product(a, b).terms.items()),
        YSeries.zero(nu10.order),
    )
    wrong = nu_functional(a, nu10) * nu_functional(b, nu10)
    assert not lhs.agrees_with(wrong)


def test_sommarb():
    assert check_sommarb(6)
    nu, psi = compute_nu(7), compute_psi(7)
    assert not check_sommarb(6, nu=nu, psi=psi.with_coeff(5, psi[5] + 1))


def test_alpha_examples():
    nu = compute_nu(8)
    assert alpha(1, nu) == nu
    assert alpha(2, nu) == nu.derivative() * nu
    for k, a in enumerate(alphas(5, nu), start=1):
        assert a.valuation() == k + 1


def test_psi_sum():
    assert check_psi_sum(5)
    assert check_psi_sum(9)


def test_psi_sum_without_alpha_2():
    N = 7
    nu, psi = compute_nu(N), compute_psi(N)
    total = prelie.alpha_sum(N, nu, N) - alpha(2, nu).truncate(N)
    assert total.truncate(N) != psi.truncate(N)


def test_psi_sum_mutations():
    N = 7
    nu, psi = compute_nu(N), compute_psi(N)
    for k in range(N + 1):
        assert not check_psi_sum(N, nu=nu, psi=psi.with_coeff(k, psi[k] + 1))
        assert not check_psi_sum(N, nu=nu.with_coeff(k, nu[k] + 1), psi=psi)


def test_Psi_equation():
    assert check_Psi_equation(8, 4)
    nu = compute_nu(8)
    Psi = assemble_Psi(nu, 4)
    at_zero = [Psi.coeff(j, 0) for j in range(6)]
    assert at_zero == [0, 0, 1, 1, 3, 12]


def test_Psi_sign_flipped_equation_fails():
    Psi = assemble_Psi(compute_nu(8), 4)
    y = Poly2({(1, 0): 1})
    # flipping the sign of the y^4 term of the constant part
    flipped = prelie.Psi_equation_residual(Psi) - 2 * y**4
    assert not flipped.is_zero()


def test_Psi_equation_mutations():
    N, M = 7, 3
    nu, psi = compute_nu(N), compute_psi(N)
    for k in range(N + 1):
        assert not check_Psi_equation(N, M, nu=nu.with_coeff(k, nu[k] + 1), psi=psi)


def test_Psi_pde_catches_wrong_alpha():
    Psi = assemble_Psi(compute_nu(8), 4)
    bad = Psi.with_coeff(4, 2, Psi.coeff(4, 2) + 1)
    assert not prelie.Psi_pde_residual(bad).is_zero()


# ----------------------------------------------------------------- shape


def test_shape_examples():
    assert shape(((), ())) == POINT
    assert shape((((), ()), ())) == PATH2
    assert shape((((), ()), ((), ()))) == CHERRY
    with pytest.raises(ValueError):
        shape(())


def _labelled_nodes(a):
    """In-degree (number of children) of every node of ``a``."""
    out = []

    def walk(t):
        out.append(len(t))
        for c in t:
            walk(c)

    walk(a)
    return out


@pytest.mark.parametrize("n", range(1, 7))
def test_shape_grouping(n):
    """Plane trees of a given shape counted against the injection formula."""
    new = [0, 1, 1, 3, 12, 56, 288]
    by_shape_count = Counter()
    by_shape_weight = Counter()
    for t in enumerate_plane_trees(n):
        a = shape(t)
        by_shape_count[a] += 1
        w = 1
        for _, node in plane_internal_nodes(t):
            w *= new[len(node) - 1]
        by_shape_weight[a] += w
    for k in range(1, 5):
        for a in enumerate_rooted_trees(k):
            v = _labelled_nodes(a)
            count = Fraction(0)
            weight = Fraction(0)
            # arities l_i >= 2 with sum(l_i - 1) = n
            for ls in itertools.product(range(2, n + 2), repeat=k):
                if sum(x - 1 for x in ls) != n:
                    continue
                inj = 1
                w = 1
                for li, vi in zip(ls, v):
                    inj *= factorial(li) // factorial(li - vi) if li >= vi else 0
                    w *= new[li - 1]
                count += inj
                weight += inj * w
            assert by_shape_count[a] == count / aut_order(a)
            assert by_shape_weight[a] == weight / aut_order(a)
