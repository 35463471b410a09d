import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rigidcavity.cavity import (
    CavitySpec1D,
    CavitySpec3D,
    ModeIndex3D,
    ParaxialWarning,
    mode_frequency_1d,
    mode_frequency_3d,
    mode_frequency_difference_1d,
    mode_frequency_difference_3d,
    paraxial_cavity,
    paraxial_frequency,
    reduce_to_1d,
)

# mpmath, 40 digits
PI_SQRT2 = 4.442882938158366247
PI_SQRT3 = 5.441398092702653552
DESKTOP_OMEGA_111 = 10471975.52139075541807
DESKTOP_DIFF_111_211 = -0.01413716691888803169658


def test_mode_frequency_1d_examples():
    assert mode_frequency_1d(CavitySpec1D(math.pi), 3) == pytest.approx(3.0, rel=1e-15)
    assert mode_frequency_1d(CavitySpec1D(1.0), 1) == pytest.approx(math.pi, rel=1e-15)
    assert mode_frequency_1d(CavitySpec1D(1.0, math.pi), 1) == pytest.approx(PI_SQRT2, rel=1e-15)


@pytest.mark.parametrize("kwargs", [dict(length=0.0), dict(length=-1.0), dict(length=1.0, mass=-0.1)])
def test_cavity_1d_rejects_bad_geometry(kwargs):
    with pytest.raises(ValueError):
        CavitySpec1D(**kwargs)


@pytest.mark.parametrize("n", [0, -1, 1.5])
def test_mode_index_must_be_positive_integer(n):
    with pytest.raises(ValueError):
        mode_frequency_1d(CavitySpec1D(1.0), n)
    with pytest.raises(ValueError):
        ModeIndex3D(1, n, 1)


def test_mode_frequency_3d_examples():
    cube = CavitySpec3D((1.0, 1.0, 1.0))
    assert mode_frequency_3d(cube, (1, 1, 1)) == pytest.approx(PI_SQRT3, rel=1e-15)
    cav, p = paraxial_cavity(6e-7, 1e-2, 1e-2)
    assert p == 33333
    w = mode_frequency_3d(cav, (1, 1, p))
    assert w == pytest.approx(DESKTOP_OMEGA_111, rel=1e-14)
    assert (w - 2 * math.pi / 6e-7) / w < 1e-9
    assert mode_frequency_3d(cav, (2, 3, p)) == mode_frequency_3d(cav, (2, 3, p))


def test_frequency_difference_is_stable_in_paraxial_cavity():
    cav, p = paraxial_cavity(6e-7, 1e-2, 1e-2)
    d = mode_frequency_difference_3d(cav, (1, 1, p), (2, 1, p))
    assert d == pytest.approx(DESKTOP_DIFF_111_211, rel=1e-12)
    red = reduce_to_1d(cav, "x", (1, p))
    assert mode_frequency_difference_1d(red, 1, 2) == pytest.approx(DESKTOP_DIFF_111_211, rel=1e-12)


def test_mode_frequency_3d_axis_exchange_symmetry():
    a = CavitySpec3D((1.0, 2.0, 3.0), 0.5)
    b = CavitySpec3D((3.0, 2.0, 1.0), 0.5)
    assert mode_frequency_3d(a, (1, 4, 7)) == pytest.approx(mode_frequency_3d(b, (7, 4, 1)), rel=1e-15)


def test_reduce_to_1d_example():
    cav = CavitySpec3D((0.3, 1.0, 1.0))
    red = reduce_to_1d(cav, "x", (1, 1))
    assert red.length == 0.3
    assert red.mass == pytest.approx(PI_SQRT2, rel=1e-15)


def test_reduce_to_1d_round_trip_random():
    rng = np.random.default_rng(7)
    for _ in range(20):
        cav = CavitySpec3D(tuple(rng.uniform(0.01, 5.0, 3)), rng.uniform(0.0, 10.0))
        q = rng.integers(1, 20, 3)
        for k, axis in enumerate("xyz"):
            trans = tuple(int(v) for i, v in enumerate(q) if i != k)
            red = reduce_to_1d(cav, axis, trans)
            exact = mode_frequency_3d(cav, tuple(int(v) for v in q))
            assert mode_frequency_1d(red, int(q[k])) == pytest.approx(exact, rel=1e-14)


def test_reduce_to_1d_mass_grows_linearly_in_transverse_numbers():
    cav = CavitySpec3D((1.0, 1.0, 1.0))
    masses = [reduce_to_1d(cav, "x", (q, q)).mass for q in (10, 20, 40)]
    assert masses[1] / masses[0] == pytest.approx(2.0, rel=1e-14)
    assert masses[2] / masses[1] == pytest.approx(2.0, rel=1e-14)


@given(
    L=st.floats(1e-3, 1e3),
    mass=st.floats(0.0, 1e3),
    n=st.integers(1, 10_000),
)
def test_frequency_strictly_increasing_1d(L, mass, n):
    cav = CavitySpec1D(L, mass)
    assert mode_frequency_1d(cav, n + 1) > mode_frequency_1d(cav, n)
    assert mode_frequency_difference_1d(cav, n + 1, n) > 0


@given(
    lengths=st.tuples(*[st.floats(1e-3, 1e2)] * 3),
    q=st.tuples(*[st.integers(1, 1000)] * 3),
    axis=st.integers(0, 2),
)
def test_frequency_strictly_increasing_3d(lengths, q, axis):
    cav = CavitySpec3D(lengths)
    bumped = list(q)
    bumped[axis] += 1
    assert mode_frequency_3d(cav, bumped) > mode_frequency_3d(cav, q)


def test_paraxial_frequency_example():
    lam, L = 6e-7, 1e-2
    approx = paraxial_frequency(lam, 1, 1, L, L)
    assert approx == pytest.approx(2 * math.pi / lam + 0.25 * math.pi * lam * 2e4, rel=1e-15)
    assert approx - 2 * math.pi / lam == pytest.approx(9.42477796e-3, rel=1e-6)
    cav, p = paraxial_cavity(lam, L, L)
    exact = mode_frequency_3d(CavitySpec3D((L, L, p * lam / 2)), (1, 1, p))
    assert abs(approx - exact) / exact < 1e-9


def test_paraxial_difference_algebra():
    lam, Lx, Ly = 6e-7, 1e-2, 2e-2
    d = paraxial_frequency(lam, 2, 1, Lx, Ly) - paraxial_frequency(lam, 1, 1, Lx, Ly)
    assert d == pytest.approx(0.25 * math.pi * lam * 3 / Lx**2, rel=1e-6)


def test_paraxial_rejects_zero_quantum_numbers():
    with pytest.raises(ValueError):
        paraxial_frequency(6e-7, 0, 0, 1e-2, 1e-2)


def test_paraxial_warns_outside_regime():
    with pytest.warns(ParaxialWarning):
        paraxial_frequency(1e-3, 20, 1, 1e-2, 1e-2)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        paraxial_frequency(6e-7, 1, 1, 1e-2, 1e-2)


@pytest.mark.parametrize("ratio", [1e-4, 1e-5])
def test_paraxial_accuracy_invariant(ratio):
    L = 1e-2
    lam = ratio * L
    p = round(2 * L / lam)
    cav = CavitySpec3D((L, L, p * lam / 2))
    for m in range(1, 6):
        for n in range(1, 6):
            exact = mode_frequency_3d(cav, (m, n, p))
            assert abs(paraxial_frequency(lam, m, n, L, L) - exact) / exact <= 1e-7
