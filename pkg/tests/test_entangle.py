import math

import numpy as np
import pytest
from scipy.stats import unitary_group

from rigidcavity.bogoliubov import bogoliubov_block_1d, bogoliubov_block_3d
from rigidcavity.cavity import CavitySpec1D, paraxial_cavity
from rigidcavity.entangle import (
    GaussianState,
    NotPassive,
    SymplecticGate,
    apply_gate,
    beamsplitter,
    coherent,
    entanglement_after_mixing,
    gate_from_mixing,
    log_negativity,
    partial_transpose,
    product,
    squeezed_vacuum,
    symplectic_defect,
    symplectic_eigenvalues,
    thermal,
    unitary_to_symplectic,
    vacuum,
)
from rigidcavity.profiles import ProfileWindow, Sinusoidal, VectorProfile, zero_profile
from rigidcavity.resonance import resonance_frequency, scenario_growth_rate


def en_oracle(cov):
    """Two-mode log-negativity from the local symplectic invariants."""
    A, B, C = cov[:2, :2], cov[2:, 2:], cov[:2, 2:]
    delta = np.linalg.det(A) + np.linalg.det(B) - 2 * np.linalg.det(C)
    nu2 = (delta - math.sqrt(max(delta**2 - 4 * np.linalg.det(cov), 0.0))) / 2
    return max(0.0, -0.5 * math.log(nu2))


def bs_oracle(a):
    """Symplectic matrix of exp([[0, a], [-a*, 0]]) acting on (x1, p1, x2, p2)."""
    t, ph = abs(a), np.angle(a)
    U = np.array([[math.cos(t), np.exp(1j * ph) * math.sin(t)], [-np.exp(-1j * ph) * math.sin(t), math.cos(t)]])
    S = np.zeros((4, 4))
    for i in range(2):
        for j in range(2):
            z = U[i, j]
            S[2 * i:2 * i + 2, 2 * j:2 * j + 2] = [[z.real, -z.imag], [z.imag, z.real]]
    return S


def two_mode_squeezed_input(r):
    return product(squeezed_vacuum(r, 0.0), squeezed_vacuum(r, math.pi / 2))


CAV = CavitySpec1D(1.0)
W = ProfileWindow(0.0, 30.0)


def mixing_block(h0, T=30.0, N=2):
    w = math.pi
    return bogoliubov_block_1d(CAV, Sinusoidal(h0, w, ProfileWindow(0.0, T)), N)


def test_identity_gate_from_zero_block():
    b = bogoliubov_block_1d(CAV, zero_profile(W), 3)
    g = gate_from_mixing(b, (1, 2))
    assert np.array_equal(g.matrix, np.eye(4))
    assert g.passive


def test_gate_matches_beamsplitter_oracle():
    b = mixing_block(0.004, T=2 * 80.0)
    g = gate_from_mixing(b, (1, 2))
    assert np.allclose(g.matrix, bs_oracle(b.ahat[0, 1]), rtol=0, atol=1e-14)
    assert symplectic_defect(g.matrix) <= 1e-12


def test_fifty_fifty_population_transfer():
    g = beamsplitter(math.pi / 4)
    # displaced mode 1 only: half the excitation moves to mode 2
    out = apply_gate(product(coherent(1.0), vacuum()), g)
    n1 = (out.mean[0] ** 2 + out.mean[1] ** 2) / 4
    n2 = (out.mean[2] ** 2 + out.mean[3] ** 2) / 4
    assert n1 == pytest.approx(0.5, abs=1e-15) and n2 == pytest.approx(0.5, abs=1e-15)


def test_not_passive_near_creation_resonance():
    b = bogoliubov_block_1d(CAV, Sinusoidal(0.004, 3 * math.pi, W), 2)
    with pytest.raises(NotPassive):
        gate_from_mixing(b, (1, 2))
    with pytest.raises(ValueError):
        gate_from_mixing(mixing_block(0.004), (1, 1))


def test_gate_rejects_non_symplectic():
    with pytest.raises(ValueError):
        SymplecticGate(np.diag([2.0, 1.0]))
    with pytest.raises(ValueError):
        SymplecticGate(np.eye(3))


def test_apply_gate_examples():
    rng = np.random.default_rng(3)
    g = SymplecticGate.from_unitary(unitary_group.rvs(2, random_state=rng))
    out = apply_gate(vacuum(2), g)
    assert np.allclose(out.cov, np.eye(4), rtol=0, atol=1e-14)
    s = product(squeezed_vacuum(0.3, 0.2), thermal(1.7))
    assert np.array_equal(apply_gate(s, SymplecticGate(np.eye(4))).cov, s.cov)
    with pytest.raises(ValueError):
        apply_gate(vacuum(1), g)


def random_symplectic(rng):
    U1 = unitary_group.rvs(2, random_state=rng)
    U2 = unitary_group.rvs(2, random_state=rng)
    r1, r2 = rng.normal(size=2)
    sq = np.diag(np.exp([r1, -r1, r2, -r2]))
    return unitary_to_symplectic(U1) @ sq @ unitary_to_symplectic(U2)


def test_symplectic_eigenvalues_invariant():
    rng = np.random.default_rng(11)
    for _ in range(10):
        s = apply_gate(product(thermal(1 + rng.random()), thermal(1 + 3 * rng.random())),
                       SymplecticGate(random_symplectic(rng)))
        before = symplectic_eigenvalues(s.cov)
        after = symplectic_eigenvalues(apply_gate(s, SymplecticGate(random_symplectic(rng))).cov)
        assert np.allclose(before, after, rtol=1e-9, atol=0)


def test_squeezed_vacuum_examples():
    assert np.allclose(squeezed_vacuum(0.0, 1.2).cov, np.eye(2), rtol=0, atol=1e-15)
    for r, phi in [(0.3, 0.0), (1.2, 0.7), (-0.5, 2.0)]:
        cov = squeezed_vacuum(r, phi).cov
        assert np.linalg.det(cov) == pytest.approx(1.0, rel=1e-12)
        assert np.linalg.eigvalsh(cov).min() == pytest.approx(math.exp(-2 * abs(r)), rel=1e-12)


def test_state_validation():
    with pytest.raises(ValueError):
        GaussianState(0.5 * np.eye(2), np.zeros(2))
    with pytest.raises(ValueError):
        GaussianState(np.array([[1.0, 0.2], [0.0, 1.0]]), np.zeros(2))
    with pytest.raises(ValueError):
        thermal(0.5)
    with pytest.raises(ValueError):
        log_negativity(vacuum(1))


def test_log_negativity_examples():
    assert log_negativity(vacuum(2)) == 0.0
    rng = np.random.default_rng(5)
    for _ in range(20):
        g = SymplecticGate.from_unitary(unitary_group.rvs(2, random_state=rng))
        s = product(coherent(complex(*rng.normal(size=2))), coherent(complex(*rng.normal(size=2))))
        assert log_negativity(apply_gate(s, g)) <= 1e-10
    for r in (0.1, 0.5, 1.0):
        out = apply_gate(two_mode_squeezed_input(r), beamsplitter(math.pi / 4))
        assert log_negativity(out) == pytest.approx(2 * r, abs=1e-12)
        assert log_negativity(out) == pytest.approx(en_oracle(out.cov), abs=1e-12)


def test_log_negativity_matches_invariant_oracle_random():
    rng = np.random.default_rng(17)
    for _ in range(30):
        s = product(squeezed_vacuum(rng.random(), 6 * rng.random()), thermal(1 + rng.random()))
        out = apply_gate(s, SymplecticGate(random_symplectic(rng)))
        assert log_negativity(out) == pytest.approx(en_oracle(out.cov), abs=1e-9)


def test_partial_transpose_flips_last_momentum():
    cov = np.arange(16.0).reshape(4, 4)
    cov = cov + cov.T
    pt = partial_transpose(cov)
    assert np.array_equal(pt[:3, :3], cov[:3, :3])
    assert np.array_equal(pt[3, :3], -cov[3, :3])
    assert pt[3, 3] == cov[3, 3]


def test_squeezing_criterion_properties():
    rng = np.random.default_rng(23)
    for _ in range(30):
        g = beamsplitter(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
        nu = 1 + 2 * rng.random()
        for s in (product(thermal(nu), thermal(nu)), vacuum(2),
                  product(coherent(complex(*rng.normal(size=2))), thermal(1.0))):
            assert log_negativity(apply_gate(s, g)) <= 1e-10
        r = rng.uniform(0.1, 1.5)
        g = beamsplitter(rng.uniform(math.pi / 8, 3 * math.pi / 8), rng.uniform(0, 2 * math.pi))
        assert log_negativity(apply_gate(two_mode_squeezed_input(r), g)) > 0


def test_passive_gate_preserves_photon_number():
    rng = np.random.default_rng(29)
    b = mixing_block(0.004, T=2 * 80.0)
    for _ in range(10):
        s = product(squeezed_vacuum(rng.random(), rng.random()), coherent(complex(*rng.normal(size=2))))
        for g in (gate_from_mixing(b, (1, 2)), SymplecticGate.from_unitary(unitary_group.rvs(2, random_state=rng))):
            assert apply_gate(s, g).mean_photon_number() == pytest.approx(s.mean_photon_number(), abs=1e-10)


def test_monotone_in_squeezing():
    rs = np.linspace(0.0, 2.0, 21)
    en = [log_negativity(apply_gate(two_mode_squeezed_input(r), beamsplitter(math.pi / 4))) for r in rs]
    assert en[0] == 0.0
    assert all(b > a for a, b in zip(en, en[1:]))


def test_entanglement_after_mixing_vacuum_and_thermal():
    b = mixing_block(0.004, T=2 * 80.0)
    assert entanglement_after_mixing(vacuum(2), b, (1, 2)) == (0.0, 0.0)
    before, after = entanglement_after_mixing(product(thermal(2.5), thermal(2.5)), b, (1, 2))
    assert before == 0.0 and after <= 1e-12


def test_desktop_block_at_quarter_pi():
    lam, L = 600e-9, 1e-2
    cav, p = paraxial_cavity(lam, L, L)
    a, b = (1, 1, p), (2, 1, p)
    omega = resonance_frequency(cav, a, b, "mixing")
    r_x = 1e-6
    T_guess = (math.pi / 4) / scenario_growth_rate(lam, L, 1, 2, r_x)
    T = round(T_guess * omega / (2 * math.pi)) * 2 * math.pi / omega
    prof = VectorProfile({"x": Sinusoidal(omega**2 * r_x, omega, ProfileWindow(0.0, T))})
    block = bogoliubov_block_3d(cav, prof, [a, b])
    assert abs(block.ahat[0, 1]) == pytest.approx(math.pi / 4, rel=1e-3)
    state = two_mode_squeezed_input(1.0)
    before, after = entanglement_after_mixing(state, block, (a, b))
    oracle = en_oracle(bs_oracle(block.ahat[0, 1]) @ state.cov @ bs_oracle(block.ahat[0, 1]).T)
    assert before == 0.0
    assert after > 0
    assert after == pytest.approx(oracle, abs=1e-10)
