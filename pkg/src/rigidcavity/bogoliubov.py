"""Linear-order Bogoliubov transformations between the early and late inertial segments.

For a rigid cavity whose centre has proper acceleration a(tau) on [tau0, tau1],

    alpha = exp(i omega (tau1 - tau0)) (1 + Ahat),    beta = exp(i omega (tau1 - tau0)) Bhat,

to first order in h = L a, where Ahat and Bhat are Fourier integrals of h at the
mode frequency differences and sums.  Composition of consecutive blocks uses
the exact product of the truncated transformations,

    [alpha  beta ]   [alpha2  beta2 ] [alpha1  beta1 ]
    [beta*  alpha*] = [beta2*  alpha2*] [beta1*  alpha1*],

i.e. alpha = alpha2 alpha1 + beta2 beta1*, beta = alpha2 beta1 + beta2 alpha1*.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .cavity import (
    AXES,
    CavitySpec1D,
    CavitySpec3D,
    ModeIndex3D,
    mode_frequency_1d,
    mode_frequency_3d,
    mode_frequency_difference_1d,
    reduce_to_1d,
)
from .profiles import AxisProfile, ProfileWindow, Validity, ValidityReport, VectorProfile, validate
from .quadrature import DEFAULT_QUADRATURE, QuadratureSpec, oscillatory_integrals

DEFAULT_TRUNCATION = 10
TRUNCATION_WARN_RATIO = 1e-6


class ValidityError(ValueError):
    """The profile breaks the rigidity bound |h| < 2."""

    def __init__(self, report: ValidityReport):
        super().__init__(f"profile violates the rigidity bound: max |h| = {report.max_h_norm:.6g}")
        self.report = report


class BasisMismatchError(ValueError):
    pass


def _require_valid(profile, cavity) -> ValidityReport:
    report = validate(profile, cavity)
    if report.status is Validity.HARD_INVALID:
        raise ValidityError(report)
    return report


def _parity_coupled(m: int, n: int) -> bool:
    return (m + n) % 2 == 1


def ahat_prefactor(cavity: CavitySpec1D, m: int, n: int) -> complex:
    """Coefficient multiplying int exp(-i(w_m - w_n)(tau - tau0)) h(tau) dtau in Ahat_mn."""
    if m == n or not _parity_coupled(m, n):
        return 0j
    L = cavity.length
    dw = mode_frequency_difference_1d(cavity, m, n)
    assert dw != 0.0, "parity-coupled modes must be non-degenerate"
    wm, wn = mode_frequency_1d(cavity, m), mode_frequency_1d(cavity, n)
    return -1j * 2.0 * math.pi**2 * m * n / (L**4 * dw**2 * math.sqrt(wm * wn))


def bhat_prefactor(cavity: CavitySpec1D, m: int, n: int) -> complex:
    if not _parity_coupled(m, n):
        return 0j
    L = cavity.length
    wm, wn = mode_frequency_1d(cavity, m), mode_frequency_1d(cavity, n)
    return 1j * 2.0 * math.pi**2 * m * n / (L**4 * (wm + wn) ** 2 * math.sqrt(wm * wn))


def ahat_element(cavity: CavitySpec1D, m: int, n: int, profile: AxisProfile,
                 quad: QuadratureSpec = DEFAULT_QUADRATURE) -> complex:
    """Mode-mixing generator Ahat_mn for acceleration ``profile`` (h = L a)."""
    _require_valid(profile, cavity)
    pref = ahat_prefactor(cavity, m, n)
    if pref == 0:
        return 0j
    dw = mode_frequency_difference_1d(cavity, m, n)
    return complex(pref * cavity.length * oscillatory_integrals(profile, [dw], quad)[0])


def bhat_element(cavity: CavitySpec1D, m: int, n: int, profile: AxisProfile,
                 quad: QuadratureSpec = DEFAULT_QUADRATURE) -> complex:
    """Particle-creation generator Bhat_mn for acceleration ``profile``."""
    _require_valid(profile, cavity)
    pref = bhat_prefactor(cavity, m, n)
    if pref == 0:
        return 0j
    sw = mode_frequency_1d(cavity, m) + mode_frequency_1d(cavity, n)
    return complex(pref * cavity.length * oscillatory_integrals(profile, [sw], quad)[0])


@dataclass(frozen=True, eq=False)
class BogoliubovBlock:
    """Truncated Bogoliubov block over one window.

    ``ahat``/``bhat`` are the phase-stripped linear-order generators.  For a
    single window ``alpha``/``beta`` are their linear assembly; for composed
    blocks they are the exact truncated products and the O(h^2) difference
    is kept in ``diagnostics['composition_residue']``.
    """

    modes: Tuple
    frequencies: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    ahat: np.ndarray
    bhat: np.ndarray
    window: ProfileWindow
    validity: ValidityReport | None = None
    diagnostics: Dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("frequencies", "alpha", "beta", "ahat", "bhat"):
            arr = np.array(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def size(self) -> int:
        return len(self.modes)

    def phase(self) -> np.ndarray:
        return np.exp(1j * self.frequencies * self.window.duration)

    def index(self, mode) -> int:
        key = ModeIndex3D.coerce(mode) if isinstance(self.modes[0], ModeIndex3D) else int(mode)
        return self.modes.index(key)

    def unitarity_defect(self) -> float:
        """max |alpha alpha^dag - beta beta^dag - 1|; O(h^2) at linear order."""
        a, b = self.alpha, self.beta
        d = a @ a.conj().T - b @ b.conj().T - np.eye(self.size)
        return float(np.max(np.abs(d)))

    def to_dict(self) -> dict:
        def cpx(mat):
            return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(mat)]

        modes = [list(m) if isinstance(m, ModeIndex3D) else int(m) for m in self.modes]
        return {
            "modes": modes,
            "frequencies_per_m": [float(w) for w in self.frequencies],
            "window": [self.window.tau0, self.window.tau1],
            "alpha": cpx(self.alpha),
            "beta": cpx(self.beta),
            "ahat": cpx(self.ahat),
            "bhat": cpx(self.bhat),
            "validity": self.validity.to_dict() if self.validity is not None else None,
            "diagnostics": _jsonable(self.diagnostics),
        }


def _jsonable(d):
    out = {}
    for k, v in d.items():
        if isinstance(v, (np.floating, np.integer)):
            v = v.item()
        elif isinstance(v, np.bool_):
            v = bool(v)
        out[k] = v
    return out


def _assemble(modes, freqs, ahat, bhat, window, validity, outer_shell):
    phase = np.exp(1j * freqs * window.duration)
    alpha = phase[:, None] * (np.eye(len(modes)) + ahat)
    beta = phase[:, None] * bhat
    rows_a = np.sum(np.abs(ahat), axis=1)
    rows_b = np.sum(np.abs(bhat), axis=1)
    total = float(max(rows_a.max(initial=0.0), rows_b.max(initial=0.0)))
    shell = float(max(rows_a[outer_shell].max(initial=0.0), rows_b[outer_shell].max(initial=0.0)))
    ratio = shell / total if total > 0 else 0.0
    diagnostics = {
        "outer_shell_mass": shell,
        "total_norm": total,
        "truncation_ratio": ratio,
        "truncation_warning": ratio > TRUNCATION_WARN_RATIO,
        "composition_residue": 0.0,
    }
    return BogoliubovBlock(tuple(modes), freqs, alpha, beta, ahat, bhat, window, validity, diagnostics)


def _fill(ahat, bhat, couplings, quad):
    """Fill generator entries from ``(i, j, cavity1d, m, n, axis_profile)`` couplings.

    Integrals are batched per axis profile so each kernel call sees all frequencies at once.
    """
    by_profile: Dict[int, list] = {}
    profiles = {}
    for c in couplings:
        by_profile.setdefault(id(c[5]), []).append(c)
        profiles[id(c[5])] = c[5]
    for key, group in by_profile.items():
        profile = profiles[key]
        omegas = []
        for i, j, cav, m, n, _ in group:
            omegas.append(mode_frequency_difference_1d(cav, m, n))
            omegas.append(mode_frequency_1d(cav, m) + mode_frequency_1d(cav, n))
        ints = oscillatory_integrals(profile, omegas, quad)
        for k, (i, j, cav, m, n, _) in enumerate(group):
            L = cav.length
            ahat[i, j] += ahat_prefactor(cav, m, n) * L * ints[2 * k]
            bhat[i, j] += bhat_prefactor(cav, m, n) * L * ints[2 * k + 1]


def bogoliubov_block_1d(cavity: CavitySpec1D, profile: AxisProfile, N: int = DEFAULT_TRUNCATION,
                        quad: QuadratureSpec = DEFAULT_QUADRATURE) -> BogoliubovBlock:
    """Generators and coefficients for modes 1..N of a (1+1) cavity."""
    if N < 2:
        raise ValueError("truncation N must be >= 2")
    validity = _require_valid(profile, cavity)
    modes = list(range(1, N + 1))
    freqs = np.array([mode_frequency_1d(cavity, n) for n in modes])
    couplings = [
        (m - 1, n - 1, cavity, m, n, profile)
        for m in modes for n in modes if m != n and _parity_coupled(m, n)
    ]
    ahat = np.zeros((N, N), dtype=complex)
    bhat = np.zeros((N, N), dtype=complex)
    _fill(ahat, bhat, couplings, quad)
    outer = np.zeros(N, dtype=bool)
    outer[-1] = True
    return _assemble(modes, freqs, ahat, bhat, profile.window, validity, outer)


def coupling_axis(mode_a: ModeIndex3D, mode_b: ModeIndex3D):
    """The single axis along which two modes differ by an odd amount, else ``None``."""
    diff = [i for i in range(3) if mode_a[i] != mode_b[i]]
    if len(diff) != 1 or (mode_a[diff[0]] - mode_b[diff[0]]) % 2 == 0:
        return None
    return AXES[diff[0]]


def transverse_numbers(mode: ModeIndex3D, axis: str) -> Tuple[int, int]:
    i = AXES.index(axis)
    return tuple(q for k, q in enumerate(mode) if k != i)


def bogoliubov_block_3d(cavity: CavitySpec3D, profile: VectorProfile, modes: Sequence,
                        quad: QuadratureSpec = DEFAULT_QUADRATURE) -> BogoliubovBlock:
    """Superpose the per-axis (1+1) problems over an explicit 3d mode basis.

    A pair of modes couples through axis ``x`` only when it differs in the x
    quantum number alone, by an odd amount; the transverse numbers fold into
    the effective mass of the reduced problem.
    """
    if isinstance(profile, AxisProfile):
        raise TypeError("a 3d block needs a VectorProfile keyed by axis")
    modes = [ModeIndex3D.coerce(m) for m in modes]
    if len(set(modes)) != len(modes):
        raise ValueError("mode basis contains duplicates")
    if len(modes) < 2:
        raise ValueError("need at least two modes")
    validity = _require_valid(profile, cavity)
    freqs = np.array([mode_frequency_3d(cavity, m) for m in modes])
    couplings = []
    for i, a in enumerate(modes):
        for j, b in enumerate(modes):
            axis = coupling_axis(a, b) if i != j else None
            if axis is None or axis not in profile.components:
                continue
            reduced = reduce_to_1d(cavity, axis, transverse_numbers(a, axis))
            k = AXES.index(axis)
            couplings.append((i, j, reduced, a[k], b[k], profile.components[axis]))
    n = len(modes)
    ahat = np.zeros((n, n), dtype=complex)
    bhat = np.zeros((n, n), dtype=complex)
    _fill(ahat, bhat, couplings, quad)
    driven = [AXES.index(a) for a in profile.components]
    outer = np.zeros(n, dtype=bool)
    for k in driven:
        top = max(m[k] for m in modes)
        outer |= np.array([m[k] == top for m in modes])
    return _assemble(modes, freqs, ahat, bhat, profile.window, validity, outer)


def zero_block(modes, frequencies, window: ProfileWindow) -> BogoliubovBlock:
    """Free evolution over ``window``: pure phases, no mixing or creation."""
    freqs = np.asarray(frequencies, dtype=float)
    n = len(modes)
    zeros = np.zeros((n, n), dtype=complex)
    outer = np.zeros(n, dtype=bool)
    return _assemble(list(modes), freqs, zeros, zeros.copy(), window, None, outer)


def compose(first: BogoliubovBlock, second: BogoliubovBlock) -> BogoliubovBlock:
    """Block for ``first`` followed by ``second``, with free evolution across any gap.

    Generators are referred to first.window.tau0: to linear order
    Ahat = Ahat1 + Q* Ahat2 Q and Bhat = Bhat1 + Q* Bhat2 Q*, where Q is the
    free phase from first.tau0 to second.tau0.  alpha/beta are the exact
    truncated products; their deviation from the linear assembly is reported
    as ``composition_residue``.
    """
    if first.modes != second.modes or not np.array_equal(first.frequencies, second.frequencies):
        raise BasisMismatchError("blocks must share the mode basis and spectrum")
    gap = second.window.tau0 - first.window.tau1
    if gap < 0:
        raise ValueError("second block must start after the first ends")
    w = first.frequencies
    G = np.exp(1j * w * gap)
    a1, b1, a2, b2 = first.alpha, first.beta, second.alpha, second.beta
    a1g = G[:, None] * a1
    b1g = G[:, None] * b1
    alpha = a2 @ a1g + b2 @ b1g.conj()
    beta = a2 @ b1g + b2 @ a1g.conj()

    window = ProfileWindow(first.window.tau0, second.window.tau1)
    Q = np.exp(1j * w * (second.window.tau0 - first.window.tau0))
    ahat = first.ahat + Q.conj()[:, None] * second.ahat * Q[None, :]
    bhat = first.bhat + Q.conj()[:, None] * second.bhat * Q.conj()[None, :]

    P = np.exp(1j * w * window.duration)
    exact_a = P.conj()[:, None] * alpha - np.eye(len(w))
    exact_b = P.conj()[:, None] * beta
    residue = float(max(np.max(np.abs(exact_a - ahat)), np.max(np.abs(exact_b - bhat))))

    validity = _worse(first.validity, second.validity)
    diagnostics = {
        "outer_shell_mass": max(first.diagnostics.get("outer_shell_mass", 0.0),
                                second.diagnostics.get("outer_shell_mass", 0.0)),
        "total_norm": float(max(np.max(np.sum(np.abs(ahat), axis=1)), np.max(np.sum(np.abs(bhat), axis=1)))),
        "truncation_warning": bool(first.diagnostics.get("truncation_warning", False)
                                   or second.diagnostics.get("truncation_warning", False)),
        "composition_residue": residue,
    }
    return BogoliubovBlock(first.modes, w, alpha, beta, ahat, bhat, window, validity, diagnostics)


def _worse(r1, r2):
    if r1 is None:
        return r2
    if r2 is None:
        return r1
    return r1 if r1.status >= r2.status else r2


def pair_generators(cavity, profile, mode_a, mode_b, quad: QuadratureSpec = DEFAULT_QUADRATURE
                    ) -> Tuple[complex, complex]:
    """(Ahat_ab, Bhat_ab) for a single pair, without assembling a block."""
    if isinstance(cavity, CavitySpec1D):
        if isinstance(profile, VectorProfile):
            (profile,) = profile.components.values()
        return (ahat_element(cavity, int(mode_a), int(mode_b), profile, quad),
                bhat_element(cavity, int(mode_a), int(mode_b), profile, quad))
    a, b = ModeIndex3D.coerce(mode_a), ModeIndex3D.coerce(mode_b)
    _require_valid(profile, cavity)
    axis = coupling_axis(a, b)
    if axis is None or axis not in profile.components:
        return 0j, 0j
    k = AXES.index(axis)
    red = reduce_to_1d(cavity, axis, transverse_numbers(a, axis))
    comp = profile.components[axis]
    return (ahat_element(red, a[k], b[k], comp, quad), bhat_element(red, a[k], b[k], comp, quad))
