"""Cavity geometry and the Dirichlet mode spectra in (1+1) and (3+1) dimensions."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Tuple

AXES = ("x", "y", "z")

# paraxial validity: lambda * max(m/Lx, n/Ly) above this is flagged
PARAXIAL_RATIO_LIMIT = 1e-2


class ParaxialWarning(UserWarning):
    """Raised (as a warning) when the paraxial two-term expansion is used outside its regime."""


def _axis_index(axis: str) -> int:
    try:
        return AXES.index(axis)
    except ValueError:
        raise ValueError(f"axis must be one of {AXES}, got {axis!r}") from None


def _check_quantum_number(q, name="quantum number"):
    if isinstance(q, bool) or int(q) != q or q < 1:
        raise ValueError(f"{name} must be a positive integer, got {q!r}")
    return int(q)


@dataclass(frozen=True)
class CavitySpec1D:
    """Rigid (1+1) cavity of proper length ``length`` holding a field of mass ``mass``.

    Both are in natural units: metres and inverse metres.
    """

    length: float
    mass: float = 0.0
    boundary: str = "dirichlet"

    def __post_init__(self):
        if not self.length > 0:
            raise ValueError(f"cavity length must be > 0, got {self.length!r}")
        if not self.mass >= 0:
            raise ValueError(f"field mass must be >= 0, got {self.mass!r}")
        if self.boundary != "dirichlet":
            raise ValueError("only Dirichlet boundary conditions are supported")

    def wavenumber(self, n: int) -> float:
        return math.pi * _check_quantum_number(n) / self.length


@dataclass(frozen=True)
class CavitySpec3D:
    lengths: Tuple[float, float, float]
    mass: float = 0.0
    boundary: str = "dirichlet"

    def __post_init__(self):
        lengths = tuple(float(v) for v in self.lengths)
        if len(lengths) != 3:
            raise ValueError("a rectangular cavity needs exactly three edge lengths")
        for axis, value in zip(AXES, lengths):
            if not value > 0:
                raise ValueError(f"edge length L_{axis} must be > 0, got {value!r}")
        if not self.mass >= 0:
            raise ValueError(f"field mass must be >= 0, got {self.mass!r}")
        if self.boundary != "dirichlet":
            raise ValueError("only Dirichlet boundary conditions are supported")
        object.__setattr__(self, "lengths", lengths)

    def edge(self, axis: str) -> float:
        return self.lengths[_axis_index(axis)]

    def wavenumbers(self, mode) -> Tuple[float, float, float]:
        mode = ModeIndex3D.coerce(mode)
        return tuple(math.pi * q / L for q, L in zip(mode, self.lengths))


@dataclass(frozen=True, order=True)
class ModeIndex3D:
    m: int
    n: int
    p: int

    def __post_init__(self):
        for name in ("m", "n", "p"):
            _check_quantum_number(getattr(self, name), name)

    def __iter__(self):
        return iter((self.m, self.n, self.p))

    def __getitem__(self, i):
        return (self.m, self.n, self.p)[i]

    def __str__(self):
        return f"{self.m}-{self.n}-{self.p}"

    @classmethod
    def coerce(cls, mode) -> "ModeIndex3D":
        if isinstance(mode, cls):
            return mode
        m, n, p = mode
        return cls(int(m), int(n), int(p))


def mode_frequency_1d(cavity: CavitySpec1D, n: int) -> float:
    """Angular frequency sqrt(mass^2 + (pi n / L)^2) of mode ``n``."""
    return math.hypot(cavity.mass, cavity.wavenumber(n))


def mode_frequency_difference_1d(cavity: CavitySpec1D, m: int, n: int) -> float:
    """omega_m - omega_n without the cancellation of a direct subtraction.

    Matters when the effective mass dwarfs the longitudinal wavenumbers
    (paraxial cavities), where the difference is ~1e-9 of either frequency.
    """
    km, kn = cavity.wavenumber(m), cavity.wavenumber(n)
    return (km - kn) * (km + kn) / (mode_frequency_1d(cavity, m) + mode_frequency_1d(cavity, n))


def mode_frequency_3d(cavity: CavitySpec3D, mode) -> float:
    kx, ky, kz = cavity.wavenumbers(mode)
    return math.sqrt(cavity.mass**2 + kx**2 + ky**2 + kz**2)


def mode_frequency_difference_3d(cavity: CavitySpec3D, mode_a, mode_b) -> float:
    """omega_a - omega_b computed as (|k_a|^2 - |k_b|^2) / (omega_a + omega_b)."""
    ka = cavity.wavenumbers(mode_a)
    kb = cavity.wavenumbers(mode_b)
    num = sum((x - y) * (x + y) for x, y in zip(ka, kb))
    return num / (mode_frequency_3d(cavity, mode_a) + mode_frequency_3d(cavity, mode_b))


def reduce_to_1d(cavity: CavitySpec3D, axis: str, transverse) -> CavitySpec1D:
    """Fold the two inert transverse quantum numbers into an effective (1+1) mass.

    ``transverse`` lists the quantum numbers of the two remaining axes in
    x, y, z order (for ``axis='y'`` that is ``(m, p)``).
    """
    i = _axis_index(axis)
    q1, q2 = (_check_quantum_number(q) for q in transverse)
    others = [j for j in range(3) if j != i]
    k1 = math.pi * q1 / cavity.lengths[others[0]]
    k2 = math.pi * q2 / cavity.lengths[others[1]]
    mu0 = math.sqrt(cavity.mass**2 + k1**2 + k2**2)
    return CavitySpec1D(length=cavity.lengths[i], mass=mu0, boundary=cavity.boundary)


def paraxial_ratio(wavelength: float, m: int, n: int, Lx: float, Ly: float) -> float:
    return wavelength * max(m / Lx, n / Ly)


def paraxial_frequency(wavelength: float, m: int, n: int, Lx: float, Ly: float) -> float:
    """Two-term expansion of omega_mnp for momenta aligned close to the z axis.

    omega ~ 2 pi / lambda + (pi lambda / 4) ((m/Lx)^2 + (n/Ly)^2).  Emits a
    :class:`ParaxialWarning` when lambda is not small against the transverse
    edges.
    """
    m = _check_quantum_number(m, "m")
    n = _check_quantum_number(n, "n")
    if not wavelength > 0 or not Lx > 0 or not Ly > 0:
        raise ValueError("wavelength and edge lengths must be positive")
    if wavelength >= min(Lx, Ly) / 10 or paraxial_ratio(wavelength, m, n, Lx, Ly) > PARAXIAL_RATIO_LIMIT:
        warnings.warn(
            f"paraxial expansion outside its regime (lambda={wavelength}, m={m}, n={n})",
            ParaxialWarning,
            stacklevel=2,
        )
    return 2.0 * math.pi / wavelength + 0.25 * math.pi * wavelength * ((m / Lx) ** 2 + (n / Ly) ** 2)


def paraxial_cavity(wavelength: float, Lx: float, Ly: float, p: int | None = None):
    """A massless cavity whose z edge holds exactly ``p`` half wavelengths.

    With ``p`` omitted it is the integer nearest to 2 Lz / lambda for Lz = max(Lx, Ly),
    so pi p / Lz = 2 pi / lambda exactly.  Returns ``(cavity, p)``.
    """
    if p is None:
        p = max(1, round(2.0 * max(Lx, Ly) / wavelength))
    p = _check_quantum_number(p, "p")
    return CavitySpec3D((Lx, Ly, p * wavelength / 2.0)), p
