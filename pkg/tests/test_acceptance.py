"""Acceptance criteria; each test records one PASS/FAIL line via the ``criterion`` fixture."""

import math

import numpy as np
import pytest

from rigidcavity import units
from rigidcavity.bogoliubov import bogoliubov_block_1d, bogoliubov_block_3d, compose
from rigidcavity.cavity import CavitySpec1D, CavitySpec3D, paraxial_cavity
from rigidcavity.entangle import (
    SymplecticGate,
    apply_gate,
    beamsplitter,
    coherent,
    log_negativity,
    product,
    squeezed_vacuum,
    thermal,
    vacuum,
)
from rigidcavity.profiles import PiecewiseConstant, ProfileWindow, Sampled, Sinusoidal, VectorProfile
from rigidcavity.quadrature import QuadratureSpec
from rigidcavity.resonance import (
    desktop_predictions,
    feasibility_report,
    resonance_frequency,
    scenario_growth_rate,
    scenario_resonance,
)
from scipy.stats import unitary_group

LAM, LX, LY, R = 600e-9, 1e-2, 1e-2, 1e-6
ADAPTIVE = QuadratureSpec("adaptive", abs_tol=1e-14, rel_tol=1e-12, max_subdivisions=500)


def rel(a, b):
    return abs(a - b) / abs(b)


def entrywise_rel(X, Y):
    """Largest relative deviation over nonzero reference entries; inf if the zero patterns differ."""
    nz = Y != 0
    if np.any(X[~nz]):
        return math.inf
    return float(np.max(np.abs(X[nz] - Y[nz]) / np.abs(Y[nz])))


def test_c1_desktop_resonance_number(criterion):
    w = units.per_metre_to_per_second(scenario_resonance(LAM, LX, 1, 2))
    f = units.angular_to_hz(w)
    e_w, e_f = rel(w, 4.2e6), rel(f, 0.7e6)
    criterion(
        "C1 desktop resonance",
        e_w <= 0.02 and e_f <= 0.02,
        f"omega_r = {w:.5g} 1/s (dev {e_w:.2%}, need <= 2%); "
        f"oscillation frequency = {f / 1e6:.5g} MHz (dev {e_f:.2%} from 0.7 MHz, need <= 2%)",
    )


def test_c2_millisecond_mixing(criterion):
    rate = units.per_metre_to_per_second(scenario_growth_rate(LAM, LX, 1, 2, R))
    t = 1.0 / rate
    criterion("C2 millisecond mixing", 0.5e-3 <= t <= 5e-3, f"time to |Ahat| = 1 per axis: {t * 1e3:.4g} ms")


def test_c3_ultracentrifuge_gap(criterion):
    pred = desktop_predictions(LAM, LX, LY, R, motion="circular")[0]
    rep = feasibility_report(pred)
    ok = rel(rep.required_rpm, 4e7) <= 0.05 and 100 <= rep.gap_ratio < 1000
    criterion("C3 ultracentrifuge gap", ok,
              f"required {rep.required_rpm:.4g} rpm, gap x{rep.gap_ratio:.4g} vs {rep.reference_rpm:.3g} rpm")


def test_c4_slope_agreement(criterion):
    cav, p = paraxial_cavity(LAM, LX, LY)
    a, b = (1, 1, p), (2, 1, p)
    omega = resonance_frequency(cav, a, b, "mixing")
    Ts, vals = [], []
    for k in (50, 100, 150, 200):
        T = k * 2 * math.pi / omega
        prof = VectorProfile({"x": Sinusoidal(omega**2 * R, omega, ProfileWindow(0.0, T))})
        block = bogoliubov_block_3d(cav, prof, [a, b])
        Ts.append(T)
        vals.append(abs(block.ahat[0, 1]))
    slope = np.polyfit(Ts, vals, 1)[0]
    expected = scenario_growth_rate(LAM, LX, 1, 2, R)
    criterion("C4 slope agreement", rel(slope, expected) <= 0.05,
              f"pipeline slope {slope:.8g} 1/m vs closed form {expected:.8g} 1/m, dev {rel(slope, expected):.2e}")


def random_profile(rng, window, amp):
    kind = rng.integers(3)
    if kind == 0:
        return Sinusoidal(amp * rng.uniform(0, 1), rng.uniform(0.1, 20.0), window, rng.uniform(0, 2 * math.pi))
    if kind == 1:
        edges = np.sort(rng.uniform(window.tau0, window.tau1, rng.integers(1, 6)))
        edges = np.concatenate([[window.tau0], edges, [window.tau1]])
        return PiecewiseConstant(edges, amp * rng.uniform(-1, 1, len(edges) - 1))
    f = lambda t: amp * np.sin(rng.uniform(0.5, 5.0) * t) * np.exp(-0.1 * t)
    return Sampled.from_function(f, window, int(rng.integers(50, 500)))


def test_c5_structural_invariants(criterion):
    rng = np.random.default_rng(20260501)
    worst_a = worst_b = 0.0
    parity_ok = diag_ok = True
    for case in range(100):
        tau0 = rng.uniform(-5, 5)
        w = ProfileWindow(tau0, tau0 + rng.uniform(0.5, 30.0))
        if case % 2 == 0:
            L = rng.uniform(0.3, 3.0)
            cav = CavitySpec1D(L, rng.uniform(0, 5))
            block = bogoliubov_block_1d(cav, random_profile(rng, w, 0.02 / L), int(rng.integers(3, 9)))
            same_parity = np.add.outer(np.arange(block.size), np.arange(block.size)) % 2 == 0
        else:
            Ls = rng.uniform(0.3, 3.0, 3)
            cav = CavitySpec3D(tuple(Ls), rng.uniform(0, 5))
            axes = [ax for ax in "xyz" if rng.random() < 0.6] or ["x"]
            vec = VectorProfile({ax: random_profile(rng, w, 0.02 / max(Ls)) for ax in axes})
            modes = sorted({tuple(int(v) for v in rng.integers(1, 4, 3)) for _ in range(8)})
            block = bogoliubov_block_3d(cav, vec, modes)
            same_parity = np.array([[sum(x) % 2 == sum(y) % 2 for y in modes] for x in modes])
        A, B = block.ahat, block.bhat
        if np.any(A):
            worst_a = max(worst_a, np.max(np.abs(A + A.conj().T)) / np.max(np.abs(A)))
            worst_b = max(worst_b, np.max(np.abs(B - B.T)) / np.max(np.abs(B)))
        parity_ok &= not np.any(A[same_parity]) and not np.any(B[same_parity])
        diag_ok &= not np.any(np.diag(A))
    ok = worst_a <= 1e-12 and worst_b <= 1e-12 and parity_ok and diag_ok
    criterion("C5 structural invariants", ok,
              f"100 cases: max ||A+A^dag||/scale {worst_a:.1e}, ||B-B^T||/scale {worst_b:.1e}, "
              f"parity-even zero {parity_ok}, diagonal zero {diag_ok}")


def test_c6_adiabatic_vanishing(criterion):
    cav = CavitySpec1D(1.0)
    N = 6

    def bump(T, n):
        return Sampled.from_function(lambda t: 0.01 * np.sin(np.pi * t / T) ** 4, ProfileWindow(0.0, T), n)

    short = bogoliubov_block_1d(cav, bump(10.37, 4000), N)
    long = bogoliubov_block_1d(cav, bump(103.7, 40000), N)
    tracked = [(m, n) for m in range(N) for n in range(m + 1, N) if (m + n) % 2]
    ratios = []
    for m, n in tracked:
        ratios.append(abs(short.ahat[m, n]) / abs(long.ahat[m, n]))
        ratios.append(abs(short.bhat[m, n]) / abs(long.bhat[m, n]))
    criterion("C6 adiabatic vanishing", min(ratios) >= 5,
              f"{len(ratios)} tracked elements, smallest decrease x{min(ratios):.3g} for x10 duration")


def test_c7_oracle_equivalence(criterion):
    rng = np.random.default_rng(7)
    cav = CavitySpec1D(1.0, 0.5)
    worst = 0.0
    for _ in range(50):
        tau0 = rng.uniform(-3, 3)
        w = ProfileWindow(tau0, tau0 + rng.uniform(1.0, 15.0))
        if rng.random() < 0.5:
            prof = Sinusoidal(0.02 * rng.uniform(0, 1), rng.uniform(0.2, 15.0), w, rng.uniform(0, 2 * math.pi))
        else:
            edges = np.concatenate([[w.tau0], np.sort(rng.uniform(w.tau0, w.tau1, rng.integers(1, 6))), [w.tau1]])
            prof = PiecewiseConstant(edges, 0.02 * rng.uniform(-1, 1, len(edges) - 1))
        closed = bogoliubov_block_1d(cav, prof, 4)
        adapt = bogoliubov_block_1d(cav, prof, 4, ADAPTIVE)
        for X, Y in ((closed.ahat, adapt.ahat), (closed.bhat, adapt.bhat)):
            worst = max(worst, entrywise_rel(X, Y))

    split = 0.0
    for _ in range(10):
        a0, om, T, ph = 0.02 * rng.uniform(0, 1), rng.uniform(0.2, 15.0), rng.uniform(2.0, 20.0), rng.uniform(0, 6)
        t = rng.uniform(0.2, 0.8) * T
        whole = bogoliubov_block_1d(cav, Sinusoidal(a0, om, ProfileWindow(0.0, T), ph), 5)
        first = bogoliubov_block_1d(cav, Sinusoidal(a0, om, ProfileWindow(0.0, t), ph), 5)
        second = bogoliubov_block_1d(cav, Sinusoidal(a0, om, ProfileWindow(t, T), ph + om * t), 5)
        c = compose(first, second)
        for X, Y in ((c.ahat, whole.ahat), (c.bhat, whole.bhat)):
            split = max(split, entrywise_rel(X, Y))
    criterion("C7 oracle equivalence", worst <= 1e-10 and split <= 1e-10,
              f"entrywise: closed vs adaptive max rel {worst:.1e} (50 profiles); "
              f"split-window compose max rel {split:.1e}")


def test_c8_entanglement_criterion(criterion):
    rng = np.random.default_rng(8)
    worst_unsqueezed = 0.0
    for _ in range(50):
        gate = SymplecticGate.from_unitary(unitary_group.rvs(2, random_state=rng))
        nu = 1 + 3 * rng.random()
        inputs = (
            vacuum(2),
            product(coherent(complex(*rng.normal(size=2))), coherent(complex(*rng.normal(size=2)))),
            product(thermal(nu), thermal(nu)),
        )
        for s in inputs:
            worst_unsqueezed = max(worst_unsqueezed, log_negativity(apply_gate(s, gate)))
    dev = 0.0
    for r in (0.1, 0.5, 1.0):
        s = product(squeezed_vacuum(r, 0.0), squeezed_vacuum(r, math.pi / 2))
        dev = max(dev, abs(log_negativity(apply_gate(s, beamsplitter(math.pi / 4))) - 2 * r))
    criterion("C8 entanglement criterion", worst_unsqueezed <= 1e-10 and dev <= 1e-8,
              f"max E_N unsqueezed {worst_unsqueezed:.1e}; max |E_N - 2r| squeezed {dev:.1e}")


def test_c9_unitarity_residue_scaling(criterion):
    cav = CavitySpec1D(1.0)
    residues = []
    for h0 in (0.02, 0.01):
        first = bogoliubov_block_1d(cav, Sinusoidal(h0, 2.3, ProfileWindow(0.0, 6.0), 0.4), 6)
        second = bogoliubov_block_1d(cav, Sinusoidal(h0, 2.3, ProfileWindow(6.0, 13.0), 0.4 + 2.3 * 6.0), 6)
        residues.append(compose(first, second).diagnostics["composition_residue"])
    ratio = residues[0] / residues[1]
    criterion("C9 unitarity residue scaling", 3.5 <= ratio <= 4.5,
              f"residue {residues[0]:.3e} -> {residues[1]:.3e}, ratio {ratio:.4f}")
