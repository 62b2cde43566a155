"""Generating functions of Tamari intervals and exact checks of their equations.

Conventions: ``Phi`` and ``Theta`` are :class:`Poly2` in ``(x, y)`` with
``x`` untruncated and ``y`` truncated at ``N``.  ``phi``, ``theta``,
``psi`` and ``nu`` are :class:`YSeries`.  Every ``check_*`` function
accepts the series it tests as keyword arguments so a caller can feed
in a perturbed copy; by default the series come from enumeration.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from functools import lru_cache
from importlib import resources
from math import factorial
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from tamari_lab.intervals import enumerate_intervals, is_indecomposable
from tamari_lab.newintervals import closed_new_count, count_new
from tamari_lab.power_series import INF, Poly2, YSeries
from tamari_lab.trees import left_border_length


class DataIntegrityError(ValueError):
    """A coefficient data file fails its checksum or cannot be parsed."""


# ------------------------------------------------------- enumerated series


@lru_cache(maxsize=None)
def _border_stats(n: int) -> Tuple[Tuple[int, int, int], ...]:
    """``(L(hi), all, indecomposable)`` interval counts for size ``n``."""
    every: Counter = Counter()
    indec: Counter = Counter()
    for i in enumerate_intervals(n):
        k = left_border_length(i.hi)
        every[k] += 1
        if is_indecomposable(i):
            indec[k] += 1
    return tuple((k, every[k], indec[k]) for k in sorted(every))


def compute_Phi(N: int) -> Poly2:
    """``sum over intervals of x^L(max) y^size``, through ``y^N``."""
    terms = {}
    for n in range(1, N + 1):
        for k, total, _ in _border_stats(n):
            terms[(k, n)] = total
    return Poly2(terms, INF, N)


def compute_Theta(N: int) -> Poly2:
    terms = {}
    for n in range(1, N + 1):
        for k, _, indec in _border_stats(n):
            terms[(k, n)] = indec
    return Poly2(terms, INF, N)


def compute_phi(N: int) -> YSeries:
    return YSeries([0] + [len(enumerate_intervals(n)) for n in range(1, N + 1)], N)


def compute_theta(N: int) -> YSeries:
    counts = [sum(row[2] for row in _border_stats(n)) for n in range(1, N + 1)]
    return YSeries([0] + counts, N)


def compute_psi(N: int) -> YSeries:
    """``y * phi``: coefficient of ``y^(n+1)`` is the number of intervals of size n."""
    return compute_phi(N - 1).shift(1)


def compute_nu(N: int) -> YSeries:
    """Shifted series of new intervals: ``y^(n+1)`` counts new intervals of size n."""
    return YSeries([0, 0] + [count_new(n) for n in range(1, N)], N)


def closed_interval_count(n: int) -> int:
    """``2 (4n+1)! / ((n+1)! (3n+2)!)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    q, r = divmod(2 * factorial(4 * n + 1), factorial(n + 1) * factorial(3 * n + 2))
    assert r == 0
    return q


# ------------------------------------------------------------ helpers

X = Poly2({(1, 0): 1})
YV = Poly2({(0, 1): 1})


def _as_poly(phi: YSeries) -> Poly2:
    return Poly2.from_v_series(phi)


def _divided_difference(Phi: Poly2, phi: YSeries) -> Optional[Poly2]:
    """``(Phi - phi) / (x - 1)``, or ``None`` when the division is not exact."""
    try:
        return (Phi - _as_poly(phi)).div_u_minus_one()
    except ArithmeticError:
        return None


def _over_x(P: Poly2) -> Optional[Poly2]:
    try:
        return P.shift(du=-1)
    except ArithmeticError:
        return None


# -------------------------------------------------------------- checks


def check_relaphi(N: int, Phi: Poly2 = None, phi: YSeries = None) -> bool:
    """``Phi = x^2 y (1 + Phi/x) (1 + (Phi - phi)/(x - 1))`` through ``y^N``."""
    Phi = compute_Phi(N) if Phi is None else Phi
    phi = compute_phi(N) if phi is None else phi
    D = _divided_difference(Phi, phi)
    P_over_x = _over_x(Phi)
    if D is None or P_over_x is None:
        return False
    rhs = X**2 * YV * (1 + P_over_x) * (1 + D)
    return (Phi - rhs).is_zero()


def check_theta_relations(
    N: int, Phi: Poly2 = None, phi: YSeries = None, Theta: Poly2 = None
) -> bool:
    """``Phi = Theta + Phi*Theta/x`` and ``Theta = x^2 y + x^2 y (Phi - phi)/(x - 1)``."""
    Phi = compute_Phi(N) if Phi is None else Phi
    phi = compute_phi(N) if phi is None else phi
    Theta = compute_Theta(N) if Theta is None else Theta
    T_over_x = _over_x(Theta)
    D = _divided_difference(Phi, phi)
    if T_over_x is None or D is None:
        return False
    first = Phi - Theta - Phi * T_over_x
    second = Theta - X**2 * YV - X**2 * YV * D
    return first.is_zero() and second.is_zero()


def check_diffPhi(N: int, Phi: Poly2 = None) -> bool:
    """The differential equation in ``x``, cleared of ``1/x^2``, and ``Phi(0, y) = 0``.

    Checks ``x^2 Phi_x (1 - x + y (x + Phi)^2) = (x + Phi)^2 (1 - x^2 y) - x^2 (1 + Phi)``.
    """
    Phi = compute_Phi(N) if Phi is None else Phi
    if any(i == 0 for i, _ in Phi.terms):
        return False
    s = X + Phi
    lhs = X**2 * Phi.d_u() * (1 - X + YV * s**2)
    rhs = s**2 * (1 - X**2 * YV) - X**2 * (1 + Phi)
    return (lhs - rhs).is_zero()


def solve_Phi(N: int) -> Poly2:
    """``Phi`` through ``y^N`` as the fixed point of the relation in :func:`check_relaphi`.

    Each pass fixes one more power of ``y``; no enumeration is involved, so
    this reaches orders where listing intervals is out of reach.
    """
    Phi = Poly2({}, INF, N)
    for _ in range(N):
        phi = Phi.at_u(1).v_series()
        D = (Phi - Poly2.from_v_series(phi)).div_u_minus_one()
        Phi = X**2 * YV * (1 + Phi.shift(du=-1)) * (1 + D)
        Phi = Poly2(Phi.terms, INF, N)
    return Phi


def load_maxi8(path: Optional[Path] = None) -> Dict[int, Poly2]:
    """Coefficients ``{k: P_k(x, y)}`` of the degree-8 equation ``sum P_k Phi^k = 0``.

    The first line of the file carries a SHA-256 of the rest; a mismatch
    raises :class:`DataIntegrityError`.
    """
    if path is None:
        text = resources.files("tamari_lab.data").joinpath("maxi8.txt").read_text()
    else:
        text = Path(path).read_text()
    header, _, body = text.partition("\n")
    prefix = "# sha256:"
    if not header.startswith(prefix):
        raise DataIntegrityError("missing checksum header")
    expected = header[len(prefix):].strip()
    actual = hashlib.sha256(body.encode()).hexdigest()
    if actual != expected:
        raise DataIntegrityError(f"checksum mismatch: {actual} != {expected}")
    coeffs: Dict[int, Dict[Tuple[int, int], int]] = {}
    for lineno, line in enumerate(body.splitlines(), start=2):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            k, i, j, c = (int(tok) for tok in line.split())
        except ValueError:
            raise DataIntegrityError(f"line {lineno}: cannot parse {line!r}") from None
        coeffs.setdefault(k, {})[(i, j)] = c
    return {k: Poly2(terms) for k, terms in coeffs.items()}


def maxi8_residual(N: int, Phi: Poly2, coeffs: Dict[int, Poly2]) -> Poly2:
    total = Poly2({}, INF, N)
    power = Poly2.constant(1, INF, N)
    for k in range(max(coeffs) + 1):
        if k in coeffs:
            total = total + coeffs[k] * power
        power = power * Phi
    return total


def check_maxi8(N: int, Phi: Poly2 = None, data_path: Optional[Path] = None) -> bool:
    """The transcribed degree-8 polynomial in ``Phi`` vanishes through ``y^N``."""
    Phi = compute_Phi(N) if Phi is None else Phi
    try:
        coeffs = load_maxi8(data_path)
    except DataIntegrityError:
        return False
    return maxi8_residual(N, Phi, coeffs).is_zero()


def check_maxi8_all_terms(N: int = 12, data_path: Optional[Path] = None) -> bool:
    """:func:`check_maxi8` on the fixed-point ``Phi`` at an order where every
    transcribed term ``x^i y^j Phi^k`` (lowest power ``y^(j+k)``) is visible."""
    try:
        coeffs = load_maxi8(data_path)
    except DataIntegrityError:
        return False
    needed = max(j + k for k, P in coeffs.items() for _, j in P.terms)
    N = max(N, needed)
    return maxi8_residual(N, solve_Phi(N), coeffs).is_zero()


def eqphi_residual(phi: YSeries) -> YSeries:
    N = phi.order
    y = YSeries.monomial(1, N)
    one = YSeries([1], N)
    return (
        y**3 * phi**4
        + (4 * y + 3) * y**2 * phi**3
        + (6 * y**2 + 17 * y + 3) * y * phi**2
        + (4 * y**3 + 25 * y**2 - 14 * y + one) * phi
        + y * (y**2 + 11 * y - one)
    )


def eqpsi_residual(psi: YSeries) -> YSeries:
    N = psi.order
    y = YSeries.monomial(1, N)
    one = YSeries([1], N)
    return (
        psi**4
        + (4 * y + 3) * psi**3
        + (6 * y**2 + 17 * y + 3) * psi**2
        + (4 * y**3 + 25 * y**2 - 14 * y + one) * psi
        + y**2 * (y**2 + 11 * y - one)
    )


def check_eqphi(N: int, phi: YSeries = None, psi: YSeries = None) -> bool:
    """Quartic equations for ``phi`` and for ``psi = y phi``."""
    phi = compute_phi(N) if phi is None else phi
    psi = phi.shift(1).truncate(phi.order) if psi is None else psi
    return eqphi_residual(phi).is_zero() and eqpsi_residual(psi).is_zero()


def lagrange_tau(N: int) -> YSeries:
    """Solution of ``tau = y (1 + tau)^4`` by fixed-point iteration through ``y^N``."""
    y = YSeries.monomial(1, N)
    tau = YSeries.zero(N)
    for _ in range(N):
        tau = y * (1 + tau) ** 4
    return tau


def lagrange_phi(N: int) -> YSeries:
    """``phi = tau (1 - tau - tau^2)``, independent of any enumeration."""
    tau = lagrange_tau(N)
    return tau * (1 - tau - tau**2)


def nu_closed_form(N: int) -> YSeries:
    """``(-1 + 12y + 8y^2 + (1 - 8y)^(3/2)) / 32`` through ``y^N``."""
    base = YSeries([1, -8], N)
    root = base.sqrt()
    return (YSeries([-1, 12, 8], N) + base * root) / 32


def nu_quadratic_residual(nu: YSeries) -> YSeries:
    N = nu.order
    return (
        YSeries([0, 0, 1, -11, -1], N)
        + YSeries([-1, 12, 8], N) * nu
        - 16 * nu * nu
    )


def check_nu(N: int, nu: YSeries = None) -> bool:
    """Quadratic equation, closed form, and coefficient formula for ``nu``."""
    nu = compute_nu(N) if nu is None else nu
    if not nu_quadratic_residual(nu).is_zero():
        return False
    if not nu.agrees_with(nu_closed_form(N)):
        return False
    # y^(n+1) counts new intervals of size n; the closed count needs n >= 2
    return all(nu[n + 1] == closed_new_count(n) for n in range(2, nu.order))


def check_specialization(N: int) -> bool:
    """``Phi(1, y) = phi`` and ``Theta(1, y) = theta``."""
    ok_phi = compute_Phi(N).at_u(1).v_series().agrees_with(compute_phi(N))
    ok_theta = compute_Theta(N).at_u(1).v_series().agrees_with(compute_theta(N))
    return ok_phi and ok_theta


def series_table(name: str, order: int) -> List:
    """Coefficient rows for the CLI; see :func:`tamari_lab.cli.cmd_series`."""
    if name in ("Phi", "Theta"):
        P = compute_Phi(order) if name == "Phi" else compute_Theta(order)
        rows = []
        for n in range(1, order + 1):
            poly = P.v_coefficient(n)
            top = max(poly, default=-1)
            rows.append((n, [int(poly.get(i, 0)) for i in range(top + 1)]))
        return rows
    makers = {
        "phi": compute_phi,
        "theta": compute_theta,
        "psi": compute_psi,
        "nu": compute_nu,
    }
    if name not in makers:
        raise ValueError(f"unknown series {name!r}")
    s = makers[name](order)
    return [int(c) for c in s.coeffs]
