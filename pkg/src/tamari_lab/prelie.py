"""Rooted trees, the grafting product, and the series built on top of them.

A rooted tree is stored canonically as the tuple of its child subtrees,
sorted by their text encoding; isomorphic trees therefore compare equal.
The one-node tree is ``()``.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Iterable, List, Optional, Tuple

from tamari_lab.power_series import Poly2, YSeries
from tamari_lab.trees import PlaneTree

RootedTree = Tuple["RootedTree", ...]
POINT: RootedTree = ()


@lru_cache(maxsize=None)
def rooted_encode(a: RootedTree) -> str:
    return "(" + "".join(rooted_encode(c) for c in a) + ")"


def rooted(children: Iterable[RootedTree]) -> RootedTree:
    """Canonical rooted tree with the given child subtrees."""
    return tuple(sorted(children, key=rooted_encode))


def rooted_decode(s: str) -> RootedTree:
    pos = 0

    def parse():
        nonlocal pos
        if s[pos] != "(":
            raise ValueError(f"expected '(' at offset {pos}")
        pos += 1
        kids = []
        while pos < len(s) and s[pos] == "(":
            kids.append(parse())
        if pos >= len(s) or s[pos] != ")":
            raise ValueError(f"expected ')' at offset {pos}")
        pos += 1
        return rooted(kids)

    tree = parse()
    if pos != len(s):
        raise ValueError(f"trailing characters at offset {pos}")
    return tree


@lru_cache(maxsize=None)
def node_count(a: RootedTree) -> int:
    return 1 + sum(node_count(c) for c in a)


@lru_cache(maxsize=None)
def aut_order(a: RootedTree) -> int:
    """Order of the automorphism group: product over nodes of multiplicity factorials."""
    out = 1
    for c in a:
        out *= aut_order(c)
    for mult in _multiplicities(a):
        out *= factorial(mult)
    return out


def _multiplicities(a: RootedTree) -> List[int]:
    counts: Dict[RootedTree, int] = defaultdict(int)
    for c in a:
        counts[c] += 1
    return list(counts.values())


@lru_cache(maxsize=None)
def enumerate_rooted_trees(k: int) -> Tuple[RootedTree, ...]:
    """Rooted trees with ``k`` nodes, sorted by encoding."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if k == 1:
        return (POINT,)
    found = set()
    for a in enumerate_rooted_trees(k - 1):
        for path in _node_paths(a):
            found.add(_graft_at(a, path, POINT))
    return tuple(sorted(found, key=rooted_encode))


def _node_paths(a: RootedTree, path: Tuple[int, ...] = ()):
    yield path
    for i, c in enumerate(a):
        yield from _node_paths(c, path + (i,))


def _graft_at(a: RootedTree, path: Tuple[int, ...], b: RootedTree) -> RootedTree:
    if not path:
        return rooted(a + (b,))
    i = path[0]
    kids = list(a)
    kids[i] = _graft_at(a[i], path[1:], b)
    return rooted(kids)


class RootedTreeSeries:
    """Finite linear combination of rooted trees with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[RootedTree, Fraction]] = None):
        self.terms = {a: Fraction(c) for a, c in (terms or {}).items() if c}

    def __add__(self, other: "RootedTreeSeries") -> "RootedTreeSeries":
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, 0) + c
        return RootedTreeSeries(out)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, c):
        c = Fraction(c)
        return RootedTreeSeries({a: c * v for a, v in self.terms.items()})

    __rmul__ = __mul__

    def graft(self, other: "RootedTreeSeries") -> "RootedTreeSeries":
        """Bilinear extension of :func:`graft_product`."""
        out: Dict[RootedTree, Fraction] = defaultdict(Fraction)
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                for t, m in graft_product(a, b).terms.items():
                    out[t] += ca * cb * m
        return RootedTreeSeries(out)

    def __eq__(self, other):
        if not isinstance(other, RootedTreeSeries):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        body = " + ".join(
            f"{c}*{rooted_encode(a)}"
            for a, c in sorted(self.terms.items(), key=lambda kv: rooted_encode(kv[0]))
        )
        return f"RootedTreeSeries({body or '0'})"


@lru_cache(maxsize=None)
def _graft_product(a: RootedTree, b: RootedTree) -> Tuple[Tuple[RootedTree, int], ...]:
    counts: Dict[RootedTree, int] = defaultdict(int)
    for path in _node_paths(a):
        counts[_graft_at(a, path, b)] += 1
    return tuple(sorted(counts.items(), key=lambda kv: rooted_encode(kv[0])))


def graft_product(a: RootedTree, b: RootedTree) -> RootedTreeSeries:
    """``a <- b``: sum over nodes ``s`` of ``a`` of ``b`` hung below ``s``."""
    return RootedTreeSeries(dict(_graft_product(a, b)))


@lru_cache(maxsize=None)
def u_term(k: int) -> RootedTreeSeries:
    """``sum over k-node trees A of ((k-1)! / sigma_A) A``."""
    f = factorial(k - 1)
    return RootedTreeSeries(
        {a: Fraction(f, aut_order(a)) for a in enumerate_rooted_trees(k)}
    )


def u_recurrence(k: int, binomial_weights: bool = True) -> RootedTreeSeries:
    """Right-hand side ``sum_l C(k-1, l-1) U_l <- U_(k+1-l)`` for ``U_(k+1)``."""
    out = RootedTreeSeries()
    for ell in range(1, k + 1):
        w = comb(k - 1, ell - 1) if binomial_weights else 1
        out = out + u_term(ell).graft(u_term(k + 1 - ell)) * w
    return out


def check_u_recurrence(K: int) -> bool:
    """``U_(k+1)`` matches the recurrence for ``1 <= k < K``."""
    return all(u_term(k + 1) == u_recurrence(k) for k in range(1, K))


# -------------------------------------------------- functionals of nu


def nu_functional(a: RootedTree, f: YSeries) -> YSeries:
    """``f_A``: product of children's functionals times the derivative of ``f``
    of order the number of children."""
    d = f
    for _ in range(len(a)):
        d = d.derivative()
    out = d
    for c in a:
        out = out * nu_functional(c, f)
    return out


def derivation_property_holds(a: RootedTree, b: RootedTree, f: YSeries) -> bool:
    """``f_(A <- B) = (f_A)' f_B`` on every coefficient both sides know."""
    lhs: Optional[YSeries] = None
    for t, m in graft_product(a, b).terms.items():
        term = nu_functional(t, f) * m
        lhs = term if lhs is None else lhs + term
    rhs = nu_functional(a, f).derivative() * nu_functional(b, f)
    return lhs.agrees_with(rhs)


def tree_sum(K: int, f: YSeries) -> YSeries:
    """``sum over rooted trees A with at most K nodes of f_A / sigma_A``."""
    total: Optional[YSeries] = None
    for k in range(1, K + 1):
        for a in enumerate_rooted_trees(k):
            term = nu_functional(a, f) / aut_order(a)
            total = term if total is None else total + term
    return total


def check_sommarb(K: int, nu: YSeries = None, psi: YSeries = None) -> bool:
    """Trees with up to ``K`` nodes reproduce ``psi`` through ``y^(K+1)``."""
    from tamari_lab.series import compute_nu, compute_psi

    nu = compute_nu(K + 1) if nu is None else nu
    psi = compute_psi(K + 1) if psi is None else psi
    total = tree_sum(K, nu)
    order = min(total.order, psi.order, K + 1)
    return total.truncate(order) == psi.truncate(order)


def alphas(count: int, nu: YSeries) -> List[YSeries]:
    """``[alpha_1, ..., alpha_count]`` with ``alpha_1 = nu`` and
    ``alpha_(k+1) = sum_l C(k-1, l-1) alpha_l' alpha_(k+1-l)``."""
    out = [nu]
    for k in range(1, count):
        acc: Optional[YSeries] = None
        for ell in range(1, k + 1):
            term = out[ell - 1].derivative() * out[k - ell] * comb(k - 1, ell - 1)
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


def alpha(k: int, nu: YSeries) -> YSeries:
    return alphas(k, nu)[-1]


def alpha_sum(N: int, nu: YSeries, terms: int) -> YSeries:
    """``sum_{k < terms} alpha_(k+1) / k!`` truncated at ``y^N``."""
    total = YSeries.zero(N)
    for k, a in enumerate(alphas(terms, nu)):
        total = total + a.truncate(min(a.order, N)) / factorial(k)
    return total


def check_psi_sum(N: int, nu: YSeries = None, psi: YSeries = None) -> bool:
    """``psi = sum_{k>=0} alpha_(k+1) / k!`` through ``y^N``.

    ``alpha_(k+1)`` has valuation ``k + 2``, so ``k <= N - 2`` suffices.
    """
    from tamari_lab.series import compute_nu, compute_psi

    nu = compute_nu(N) if nu is None else nu
    psi = compute_psi(N) if psi is None else psi
    total = alpha_sum(N, nu, N)
    return total.order >= N and total.truncate(N) == psi.truncate(N)


def assemble_Psi(nu: YSeries, M: int) -> Poly2:
    """``sum_{k <= M} alpha_(k+1) z^k / k!`` as a :class:`Poly2` in ``(y, z)``."""
    N = nu.order
    terms = {}
    for k, a in enumerate(alphas(M + 1, nu)):
        for j in range(min(a.order, N) + 1):
            if a.coeffs[j]:
                terms[(j, k)] = a.coeffs[j] / factorial(k)
    return Poly2(terms, N, M)


def Psi_equation_residual(Psi: Poly2) -> Poly2:
    y = Poly2({(1, 0): 1})
    z = Poly2({(0, 1): 1})
    return (
        z**4 * Psi**4
        + (4 * z * y - 8 + 11 * z) * z**2 * Psi**3
        + (6 * z**2 * y**2 - z**2 + 33 * z**2 * y - 16 * z * y + 16 - 12 * z) * Psi**2
        + (-8 * y**2 - 2 * z * y + 1 + 4 * z * y**3 - 12 * y + 33 * z * y**2) * Psi
        + 11 * y**3
        + y**4
        - y**2
    )


def Psi_pde_residual(Psi: Poly2) -> Poly2:
    """``d_z Psi - (d_y Psi) Psi``."""
    return Psi.d_v() - Psi.d_u() * Psi


def check_Psi_equation(N: int, M: int, nu: YSeries = None, psi: YSeries = None) -> bool:
    """Algebraic equation, PDE, and both specialisations of ``Psi``.

    The ``z = 1`` specialisation is checked through ``y^min(N, M+2)``: the
    dropped terms ``alpha_(k+1)``, ``k > M``, start at ``y^(M+3)``.
    """
    from tamari_lab.series import compute_nu, compute_psi

    nu = compute_nu(N) if nu is None else nu
    psi = compute_psi(N) if psi is None else psi
    Psi = assemble_Psi(nu, M)
    if not Psi_equation_residual(Psi).is_zero():
        return False
    if not Psi_pde_residual(Psi).is_zero():
        return False
    at_zero = YSeries([Psi.coeff(j, 0) for j in range(N + 1)], N)
    if at_zero != nu.truncate(N):
        return False
    order = min(N, M + 2)
    at_one = YSeries(
        [sum(Psi.coeff(j, k) for k in range(M + 1)) for j in range(order + 1)], order
    )
    return at_one == psi.truncate(order)


# ------------------------------------------------------------ shape


def shape(t: PlaneTree) -> RootedTree:
    """Rooted tree of internal nodes and internal edges of a plane tree."""
    if not t:
        raise ValueError("a leaf has no internal node")
    return rooted(shape(c) for c in t if c)

