"""Named verification checks and the report the CLI emits for them."""

from __future__ import annotations

import itertools
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from tamari_lab import dendriform, prelie, series
from tamari_lab.intervals import (
    composition_of,
    enumerate_intervals,
    indecomposable_factor,
    interval_decomposition,
    is_indecomposable,
    slash_fold,
    tree_decomposition,
    y_star,
    YY,
)
from tamari_lab.newintervals import (
    closed_new_count,
    count_new,
    decoupage,
    find_cuts,
    graft,
    is_new,
)
from tamari_lab.tamari import build_poset
from tamari_lab.trees import (
    enumerate_binary_trees,
    enumerate_plane_trees,
    left_border_length,
    plane_internal_nodes,
)

# ----------------------------------------------------- structural checks


def check_interval_counts(order: int) -> bool:
    return all(
        len(enumerate_intervals(n)) == series.closed_interval_count(n)
        for n in range(1, order + 1)
    )


def check_new_counts(order: int) -> bool:
    return count_new(1) == 1 and all(
        count_new(n) == closed_new_count(n) for n in range(2, order + 1)
    )


def check_decomposition(order: int) -> bool:
    for n in range(1, order + 1):
        for i in enumerate_intervals(n):
            factors = interval_decomposition(i)
            if not all(is_indecomposable(f) for f in factors):
                return False
            if slash_fold([f.lo for f in factors]) != i.lo:
                return False
            if slash_fold([f.hi for f in factors]) != i.hi:
                return False
            if tuple(f.size for f in factors) != composition_of(i.lo):
                return False
            if not all(build_poset(f.size).leq(f.lo, f.hi) for f in factors):
                return False
    return True


def check_indecomposable_bijection(order: int) -> bool:
    """``(J, s) -> Y *_s J`` is a bijection onto the indecomposables of each size."""
    for n in range(1, order + 1):
        target = {i for i in enumerate_intervals(n) if is_indecomposable(i)}
        if n == 1:
            image = [YY]
        else:
            image = [
                y_star(j, s)
                for j in enumerate_intervals(n - 1)
                for s in range(1, left_border_length(j.hi) + 1)
            ]
        if len(image) != len(set(image)) or set(image) != target:
            return False
        for i in target:
            if i == YY:
                continue
            j, s = indecomposable_factor(i)
            if y_star(j, s) != i:
                return False
    return True


def _refines(fine, coarse) -> bool:
    """Every cut point of ``coarse`` is a cut point of ``fine``."""
    cuts = set(itertools.accumulate(fine))
    return set(itertools.accumulate(coarse)) <= cuts


def check_fusion(order: int) -> bool:
    """``s <= t`` forces ``c(s)`` coarser than ``c(t)``, factorwise order when equal."""
    for n in range(1, order + 1):
        for i in enumerate_intervals(n):
            cs, ct = composition_of(i.lo), composition_of(i.hi)
            if not _refines(ct, cs):
                return False
            if cs == ct:
                factors = zip(cs, tree_decomposition(i.lo), tree_decomposition(i.hi))
                if not all(build_poset(c).leq(a, b) for c, a, b in factors):
                    return False
    return True


def _compositions(n: int, max_parts: int):
    for k in range(1, max_parts + 1):
        for cut in itertools.combinations(range(1, n), k - 1):
            bounds = (0,) + cut + (n,)
            yield tuple(bounds[i + 1] - bounds[i] for i in range(k))


def check_factor_order(order: int, max_parts: int = 3) -> bool:
    """For equal-size factorisations, ``S <= T`` iff every ``S_i <= T_i``."""
    for n in range(1, order + 1):
        big = build_poset(n)
        for parts in _compositions(n, max_parts):
            families = [enumerate_binary_trees(c) for c in parts]
            tuples = list(itertools.product(*families))
            for ss in tuples:
                s = slash_fold(ss)
                for ts in tuples:
                    each = all(
                        build_poset(c).leq(a, b) for c, a, b in zip(parts, ss, ts)
                    )
                    if big.leq(s, slash_fold(ts)) != each:
                        return False
    return True


def check_decoupage(order: int) -> bool:
    for n in range(1, order + 1):
        for i in enumerate_intervals(n):
            d = decoupage(i)
            if graft(d.skeleton, d.pieces) != i:
                return False
            for path, node in plane_internal_nodes(d.skeleton):
                piece = d.pieces[path]
                if piece.size != len(node) - 1 or not is_new(piece):
                    return False
            if len(d.pieces) != len(find_cuts(i)) + 1:
                return False
    return True


def skeleton_sum(n: int) -> int:
    """``sum over plane trees with n+1 leaves of prod N_(arity - 1)``."""
    total = 0
    for t in enumerate_plane_trees(n):
        prod = 1
        for _, node in plane_internal_nodes(t):
            prod *= count_new(len(node) - 1)
        total += prod
    return total


def check_skeleton_sum(order: int) -> bool:
    return all(
        skeleton_sum(n) == len(enumerate_intervals(n)) for n in range(1, order + 1)
    )


def check_new_indecomposable(order: int) -> bool:
    return all(
        is_indecomposable(i)
        for n in range(1, order + 1)
        for i in enumerate_intervals(n)
        if is_new(i)
    )


def _is_slash_chain(skeleton) -> bool:
    """Only the first child of each skeleton node may be internal."""
    return all(not c for _, node in plane_internal_nodes(skeleton) for c in node[1:])


def check_descente(order: int) -> bool:
    """When ``Y *_s K`` is new, the decoupage of ``K`` is a /-chain of new pieces."""
    for n in range(2, order + 1):
        for i in enumerate_intervals(n):
            if not is_new(i) or i == YY:
                continue
            k, _ = indecomposable_factor(i)
            if not _is_slash_chain(decoupage(k).skeleton):
                return False
    return True


def check_lagrange(order: int) -> bool:
    phi = series.lagrange_phi(order)
    closed = all(phi[n] == series.closed_interval_count(n) for n in range(1, order + 1))
    return closed and series.check_eqphi(order, phi=phi)


def check_derivation(order: int, max_nodes: int = 4) -> bool:
    nu = series.compute_nu(order)
    trees = [a for k in range(1, max_nodes + 1) for a in prelie.enumerate_rooted_trees(k)]
    return all(prelie.derivation_property_holds(a, b, nu) for a in trees for b in trees)


# -------------------------------------------------------------- registry

def _upto(cap):
    return lambda order: min(order, cap)


def _same(order):
    return order


# name -> (check taking one order argument, map from requested to effective order)
CHECKS: Dict[str, Tuple[Callable[[int], bool], Callable[[int], int]]] = {
    "interval_counts": (check_interval_counts, _upto(8)),
    "new_counts": (check_new_counts, _upto(7)),
    "specialization": (series.check_specialization, _same),
    "relaphi": (series.check_relaphi, _same),
    "theta_relations": (series.check_theta_relations, _same),
    "diffPhi": (series.check_diffPhi, _same),
    "maxi8": (series.check_maxi8, _same),
    "maxi8_all_terms": (series.check_maxi8_all_terms, lambda order: max(order, 12)),
    "eqphi": (series.check_eqphi, _same),
    "nu": (series.check_nu, _same),
    "lagrange": (check_lagrange, lambda order: max(order, 12)),
    "relaF": (dendriform.check_relaF, _upto(5)),
    "decomposition": (check_decomposition, _upto(6)),
    "indecomposable_bijection": (check_indecomposable_bijection, _upto(6)),
    "fusion": (check_fusion, _upto(6)),
    "factor_order": (check_factor_order, _upto(6)),
    "decoupage": (check_decoupage, _upto(6)),
    "skeleton_sum": (check_skeleton_sum, _upto(6)),
    "new_indecomposable": (check_new_indecomposable, _upto(6)),
    "descente": (check_descente, _upto(5)),
    "u_recurrence": (prelie.check_u_recurrence, _same),
    "derivation": (check_derivation, _same),
    "sommarb": (prelie.check_sommarb, _same),
    "psi_sum": (prelie.check_psi_sum, _same),
    "Psi_equation": (lambda order: prelie.check_Psi_equation(order, 4), _same),
}


@dataclass
class CheckResult:
    name: str
    order: int
    passed: bool
    elapsed: float
    error: Optional[str] = None


@dataclass
class VerificationReport:
    items: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    def to_json(self, timings: bool = True) -> dict:
        checks = []
        for item in self.items:
            row = asdict(item)
            if not timings:
                del row["elapsed"]
            checks.append(row)
        return {"pass": self.passed, "checks": checks}


def run_checks(
    names: List[str], order: int, maxi8_path: Optional[Path] = None
) -> VerificationReport:
    """Run checks in the given order; exceptions count as failures."""
    report = VerificationReport()
    for name in names:
        fn, effective = CHECKS[name]
        used = effective(order)
        start = time.perf_counter()
        error = None
        try:
            if name == "maxi8":
                passed = series.check_maxi8(used, data_path=maxi8_path)
            elif name == "maxi8_all_terms":
                passed = series.check_maxi8_all_terms(used, data_path=maxi8_path)
            else:
                passed = bool(fn(used))
        except Exception as exc:  # report, do not abort the batch
            passed = False
            error = f"{type(exc).__name__}: {exc}"
        report.items.append(
            CheckResult(name, used, passed, time.perf_counter() - start, error)
        )
    return report
