import hashlib
from fractions import Fraction
from importlib import resources
from math import comb, factorial

import pytest

from tamari_lab import series
from tamari_lab.power_series import INF, Poly2, YSeries
from tamari_lab.series import (
    DataIntegrityError,
    check_diffPhi,
    check_eqphi,
    check_maxi8,
    check_maxi8_all_terms,
    check_nu,
    check_relaphi,
    check_specialization,
    check_theta_relations,
    closed_interval_count,
    compute_Phi,
    compute_phi,
    compute_nu,
    compute_psi,
    compute_Theta,
    compute_theta,
    lagrange_phi,
    lagrange_tau,
    load_maxi8,
    nu_closed_form,
    solve_Phi,
)


def _xy(rows):
    """``{y_degree: {x_degree: c}}`` to a Poly2."""
    return {(i, j): c for j, row in rows.items() for i, c in row.items()}


# -------------------------------------------------------------- displays

PHI_3 = _xy({1: {2: 1}, 2: {3: 2, 2: 1}, 3: {4: 5, 3: 5, 2: 3}})
THETA_3 = _xy({1: {2: 1}, 2: {3: 1, 2: 1}, 3: {4: 2, 3: 3, 2: 3}})


def test_Phi_display():
    assert compute_Phi(3).terms == PHI_3


def test_Theta_display():
    assert compute_Theta(3).terms == THETA_3


def test_theta_display():
    assert compute_theta(4).coeffs == (0, 1, 2, 8, 41)


def test_nu_display():
    assert compute_nu(5).coeffs == (0, 0, 1, 1, 3, 12)


def test_phi_and_psi():
    assert compute_phi(6).coeffs == (0, 1, 3, 13, 68, 399, 2530)
    assert compute_psi(4).coeffs == (0, 0, 1, 3, 13)


# ----------------------------------------------------------- closed forms


def test_closed_interval_count():
    assert [closed_interval_count(n) for n in range(1, 7)] == [1, 3, 13, 68, 399, 2530]
    with pytest.raises(ValueError):
        closed_interval_count(0)


@pytest.mark.parametrize("n", range(1, 9))
def test_enumeration_matches_closed_count(n):
    assert compute_phi(n)[n] == closed_interval_count(n)


def test_lagrange_examples():
    tau = lagrange_tau(4)
    assert tau[1] == 1 and tau[2] == 4
    phi = lagrange_phi(12)
    assert [phi[n] for n in range(1, 7)] == [1, 3, 13, 68, 399, 2530]
    assert all(phi[n] == closed_interval_count(n) for n in range(1, 13))


def test_lagrange_tau_coefficients():
    # tau = y (1 + tau)^4 has coefficients binom(4n, n-1) / n
    tau = lagrange_tau(10)
    for n in range(1, 11):
        assert tau[n] == Fraction(comb(4 * n, n - 1), n)


def test_nu_closed_form():
    nu = nu_closed_form(8)
    assert nu.coeffs[:6] == (0, 0, 1, 1, 3, 12)
    for n in range(2, 8):
        expected = Fraction(3 * 2 ** (n - 2) * factorial(2 * n - 2),
                            factorial(n - 1) * factorial(n + 1))
        assert nu[n + 1] == expected


# ---------------------------------------------------------------- checks


@pytest.mark.parametrize("N", [3, 6, 8])
def test_checks_pass(N):
    assert check_relaphi(N)
    assert check_theta_relations(N)
    assert check_diffPhi(N)
    assert check_eqphi(N)
    assert check_nu(N)
    assert check_specialization(N)


@pytest.mark.parametrize("N", [4, 7])
def test_maxi8_passes(N):
    assert check_maxi8(N)


def test_checks_on_display_values():
    Phi = Poly2(PHI_3, INF, 3)
    phi = YSeries([0, 1, 3, 13], 3)
    Theta = Poly2(THETA_3, INF, 3)
    assert check_relaphi(3, Phi=Phi, phi=phi)
    assert check_theta_relations(3, Phi=Phi, phi=phi, Theta=Theta)
    assert check_diffPhi(3, Phi=Phi)
    assert check_maxi8(3, Phi=Phi)


def test_eqphi_lagrange_order_12():
    assert check_eqphi(12, phi=lagrange_phi(12))


def test_diffPhi_initial_condition():
    assert all(i > 0 for i, _ in compute_Phi(6).terms)
    assert not check_diffPhi(3, Phi=compute_Phi(3) + Poly2({(0, 2): 1}, INF, 3))


def test_phi_is_not_y():
    assert not check_eqphi(4, phi=YSeries([0, 1], 4))


def test_maxi8_rejects_theta():
    assert not check_maxi8(4, Phi=compute_Theta(4))


def test_relaphi_example_perturbation():
    assert not check_relaphi(3, Phi=compute_Phi(3) + Poly2({(2, 2): 1}, INF, 3))


# ------------------------------------------------------- mutation sweeps


def _poly_mutants(P, N):
    """Every single-coefficient change of ``P`` within its support box."""
    top = max(i for i, _ in P.terms)
    for j in range(1, N + 1):
        for i in range(top + 2):
            yield P.with_coeff(i, j, P.coeff(i, j) + 1)


def _series_mutants(s):
    for k in range(s.order + 1):
        yield s.with_coeff(k, s[k] + 1)


N_MUT = 5


def test_relaphi_mutations():
    Phi, phi = compute_Phi(N_MUT), compute_phi(N_MUT)
    assert all(not check_relaphi(N_MUT, Phi=m, phi=phi) for m in _poly_mutants(Phi, N_MUT))
    assert all(not check_relaphi(N_MUT, Phi=Phi, phi=m) for m in _series_mutants(phi))


def test_theta_relations_mutations():
    Phi, phi, Theta = compute_Phi(N_MUT), compute_phi(N_MUT), compute_Theta(N_MUT)
    for m in _poly_mutants(Theta, N_MUT):
        assert not check_theta_relations(N_MUT, Phi=Phi, phi=phi, Theta=m)
    for m in _poly_mutants(Phi, N_MUT):
        assert not check_theta_relations(N_MUT, Phi=m, phi=phi, Theta=Theta)


def test_diffPhi_mutations():
    Phi = compute_Phi(N_MUT)
    assert all(not check_diffPhi(N_MUT, Phi=m) for m in _poly_mutants(Phi, N_MUT))


def test_maxi8_mutations():
    Phi = compute_Phi(N_MUT)
    assert all(not check_maxi8(N_MUT, Phi=m) for m in _poly_mutants(Phi, N_MUT))


def test_eqphi_mutations():
    phi = compute_phi(N_MUT)
    assert all(not check_eqphi(N_MUT, phi=m) for m in _series_mutants(phi))
    psi = compute_psi(N_MUT)
    assert all(not check_eqphi(N_MUT, phi=phi, psi=m) for m in _series_mutants(psi))


def test_nu_mutations():
    nu = compute_nu(N_MUT)
    assert all(not check_nu(N_MUT, nu=m) for m in _series_mutants(nu))


# --------------------------------------------------------- data integrity


def test_maxi8_data_checksum(tmp_path):
    coeffs = load_maxi8()
    assert max(coeffs) == 8
    text = resources.files("tamari_lab.data").joinpath("maxi8.txt").read_text()
    bad = tmp_path / "maxi8.txt"
    lines = text.splitlines(keepends=True)
    k, i, j, c = lines[-1].split()
    lines[-1] = f"{k} {i} {j} {int(c) + 1}\n"
    bad.write_text("".join(lines))
    with pytest.raises(DataIntegrityError):
        load_maxi8(bad)
    assert not check_maxi8(4, data_path=bad)


def test_series_table():
    assert series.series_table("phi", 3) == [0, 1, 3, 13]
    assert series.series_table("Phi", 2) == [(1, [0, 0, 1]), (2, [0, 0, 1, 2])]
    with pytest.raises(ValueError):
        series.series_table("omega", 2)


def test_maxi8_rechecksummed_mutation(tmp_path):
    text = resources.files("tamari_lab.data").joinpath("maxi8.txt").read_text()
    _, _, body = text.partition("\n")
    lines = body.splitlines(keepends=True)
    data_rows = [n for n, line in enumerate(lines) if line.strip() and not line.startswith("#")]
    for n in data_rows:
        k, i, j, c = lines[n].split()
        changed = lines[:n] + [f"{k} {i} {j} {int(c) + 1}\n"] + lines[n + 1:]
        new_body = "".join(changed)
        path = tmp_path / f"maxi8_{n}.txt"
        digest = hashlib.sha256(new_body.encode()).hexdigest()
        path.write_text(f"# sha256: {digest}\n{new_body}")
        assert load_maxi8(path)  # checksum accepted
        assert not check_maxi8_all_terms(data_path=path)


def test_solve_Phi_matches_enumeration():
    assert solve_Phi(8) == compute_Phi(8)
    phi = solve_Phi(12).at_u(1).v_series()
    assert all(phi[n] == closed_interval_count(n) for n in range(1, 13))


def test_maxi8_every_term():
    assert check_maxi8_all_terms(12)
