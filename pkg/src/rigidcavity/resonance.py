"""Resonance conditions, the paraxial desktop formulas, scans and feasibility numbers."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from . import units
from .bogoliubov import ahat_prefactor, bhat_prefactor, coupling_axis, transverse_numbers
from .cavity import (
    AXES,
    CavitySpec1D,
    CavitySpec3D,
    ModeIndex3D,
    mode_frequency_1d,
    mode_frequency_3d,
    mode_frequency_difference_1d,
    mode_frequency_difference_3d,
    paraxial_ratio,
    reduce_to_1d,
)
from .profiles import Validity, classify_h

# linear growth is not trusted beyond this coefficient magnitude
PERTURBATIVE_TARGET_LIMIT = 0.3
ULTRACENTRIFUGE_RPM = 1.5e5


class Kind(str, enum.Enum):
    MIXING = "mode-mixing"
    CREATION = "particle-creation"


class NonCoupledPair(ValueError):
    pass


def _kind(kind) -> Kind:
    if isinstance(kind, Kind):
        return kind
    aliases = {"mixing": Kind.MIXING, "creation": Kind.CREATION}
    return aliases.get(kind) or Kind(kind)


def _coupled_1d(m: int, n: int) -> bool:
    return m != n and (m - n) % 2 == 1


def resonance_frequency(cavity, mode_a, mode_b, kind, axes: Optional[Iterable[str]] = None) -> float:
    """Drive angular frequency (1/m) resonant with the Ahat (mixing) or Bhat (creation) element.

    For 3d cavities the pair must differ in one quantum number, by an odd amount,
    along an axis in ``axes`` (all axes by default).
    """
    kind = _kind(kind)
    if isinstance(cavity, CavitySpec1D):
        m, n = int(mode_a), int(mode_b)
        if not _coupled_1d(m, n):
            raise NonCoupledPair(f"modes {m} and {n} do not couple (need m - n odd)")
        if kind is Kind.MIXING:
            return abs(mode_frequency_difference_1d(cavity, m, n))
        return mode_frequency_1d(cavity, m) + mode_frequency_1d(cavity, n)
    a, b = ModeIndex3D.coerce(mode_a), ModeIndex3D.coerce(mode_b)
    axis = coupling_axis(a, b)
    allowed = AXES if axes is None else tuple(axes)
    if axis is None or axis not in allowed:
        raise NonCoupledPair(f"modes {a} and {b} do not couple along {allowed}")
    if kind is Kind.MIXING:
        return abs(mode_frequency_difference_3d(cavity, a, b))
    return mode_frequency_3d(cavity, a) + mode_frequency_3d(cavity, b)


def resonant_growth_rate(cavity, mode_a, mode_b, kind, amplitude: float) -> float:
    """d|coefficient|/dtau (1/m) for a sinusoidal displacement of ``amplitude`` metres at resonance.

    The drive acceleration amplitude is omega_r^2 r, and on resonance the
    kernel integral grows as h0 T / 2.
    """
    kind = _kind(kind)
    omega_r = resonance_frequency(cavity, mode_a, mode_b, kind)
    if isinstance(cavity, CavitySpec1D):
        red, m, n = cavity, int(mode_a), int(mode_b)
    else:
        a, b = ModeIndex3D.coerce(mode_a), ModeIndex3D.coerce(mode_b)
        axis = coupling_axis(a, b)
        k = AXES.index(axis)
        red = reduce_to_1d(cavity, axis, transverse_numbers(a, axis))
        m, n = a[k], b[k]
    pref = ahat_prefactor(red, m, n) if kind is Kind.MIXING else bhat_prefactor(red, m, n)
    h0 = red.length * omega_r**2 * amplitude
    return abs(pref) * h0 / 2.0


def _check_scenario_pair(m: int, m_prime: int):
    if m < 1 or m_prime < 1 or m == m_prime or (m - m_prime) % 2 == 0:
        raise NonCoupledPair(f"scenario needs positive m != m' with m - m' odd, got ({m}, {m_prime})")


def scenario_resonance(wavelength: float, Lx: float, m: int, m_prime: int) -> float:
    """Paraxial mixing resonance (1/m): (pi lambda / 4) |m^2 - m'^2| / Lx^2."""
    _check_scenario_pair(m, m_prime)
    return 0.25 * math.pi * wavelength * abs(m**2 - m_prime**2) / Lx**2


def scenario_growth_rate(wavelength: float, Lx: float, m: int, m_prime: int, amplitude: float) -> float:
    """Paraxial d|Ahat_res|/dtau (1/m): (pi/2) m m' r lambda / Lx^3."""
    _check_scenario_pair(m, m_prime)
    if not amplitude > 0:
        raise ValueError("oscillation amplitude must be > 0")
    return 0.5 * math.pi * m * m_prime * amplitude * wavelength / Lx**3


@dataclass(frozen=True)
class ResonancePrediction:
    kind: Kind
    mode_a: object
    mode_b: object
    omega_r: float  # 1/m
    amplitude: float  # m
    rate: float  # 1/m
    target: float = 1.0
    axis: Optional[str] = None
    length: Optional[float] = None  # edge along the drive, for |h|
    paraxial_ratio: Optional[float] = None
    flags: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.omega_r > 0:
            raise ValueError("resonance frequency must be > 0")
        if self.rate < 0:
            raise ValueError("growth rate must be >= 0")

    @property
    def omega_r_per_s(self) -> float:
        return units.per_metre_to_per_second(self.omega_r)

    @property
    def frequency_hz(self) -> float:
        return units.angular_to_hz(self.omega_r_per_s)

    @property
    def rate_per_s(self) -> float:
        return units.per_metre_to_per_second(self.rate)

    @property
    def time_to_target(self) -> float:
        """Seconds until |coefficient| reaches ``target`` under linear growth."""
        return self.target / self.rate_per_s if self.rate > 0 else math.inf

    def time_to(self, target: float) -> float:
        return target / self.rate_per_s if self.rate > 0 else math.inf

    @property
    def max_h(self) -> Optional[float]:
        if self.length is None:
            return None
        return self.length * self.omega_r**2 * self.amplitude

    @property
    def h_class(self) -> Optional[Validity]:
        return None if self.max_h is None else classify_h(self.max_h)

    def all_flags(self) -> Tuple[str, ...]:
        flags = list(self.flags)
        if self.target > PERTURBATIVE_TARGET_LIMIT:
            flags.append("beyond-perturbative-target")
        if self.paraxial_ratio is not None and self.paraxial_ratio > 1e-2:
            flags.append("paraxial-suspect")
        if self.h_class is not None and self.h_class is not Validity.OK:
            flags.append(f"h-{self.h_class.name.lower()}")
        return tuple(flags)


def _fmt_mode(mode) -> str:
    if isinstance(mode, (ModeIndex3D, str)):
        return str(mode)
    return str(int(mode))


CSV_COLUMNS = ("kind", "modeA", "modeB", "omega_r_per_s", "rate_per_s", "time_to_unity_s", "flags")


def csv_row(pred: ResonancePrediction) -> dict:
    return {
        "kind": pred.kind.value,
        "modeA": _fmt_mode(pred.mode_a),
        "modeB": _fmt_mode(pred.mode_b),
        "omega_r_per_s": repr(pred.omega_r_per_s),
        "rate_per_s": repr(pred.rate_per_s),
        "time_to_unity_s": repr(pred.time_to(1.0)),
        "flags": ";".join(pred.all_flags()),
    }


def desktop_predictions(wavelength: float, Lx: float, Ly: float, amplitude: float, m: int = 1,
                        m_prime: int = 2, motion: str = "circular", target: float = 1.0,
                        ) -> List[ResonancePrediction]:
    """Paraxial mixing predictions for linear (x only) or circular (x and y) oscillation."""
    if motion not in ("linear", "circular"):
        raise ValueError("motion must be 'linear' or 'circular'")
    preds = []
    axes = [("x", Lx)] + ([("y", Ly)] if motion == "circular" else [])
    for axis, L in axes:
        omega = scenario_resonance(wavelength, L, m, m_prime)
        rate = scenario_growth_rate(wavelength, L, m, m_prime, amplitude)
        if axis == "x":
            modes = ((m, 1), (m_prime, 1))
        else:
            modes = ((1, m), (1, m_prime))
        ratio = paraxial_ratio(wavelength, max(modes[0][0], modes[1][0]), max(modes[0][1], modes[1][1]), Lx, Ly)
        preds.append(ResonancePrediction(
            Kind.MIXING, f"{modes[0][0]}-{modes[0][1]}-p", f"{modes[1][0]}-{modes[1][1]}-p",
            omega, amplitude, rate, target, axis, L, ratio,
        ))
    return preds


@dataclass(frozen=True)
class FeasibilityReport:
    omega_r_per_s: float
    frequency_hz: float
    required_rpm: float
    reference_rpm: float
    gap_ratio: float
    orders_of_magnitude: float
    h_class: Optional[str]
    max_h: Optional[float]

    def to_dict(self):
        return dict(self.__dict__)


def feasibility_report(prediction: ResonancePrediction, reference_rpm: float = ULTRACENTRIFUGE_RPM
                       ) -> FeasibilityReport:
    """Express the drive frequency as a rotation rate and compare with a reference machine."""
    rpm = units.angular_to_rpm(prediction.omega_r_per_s)
    gap = rpm / reference_rpm
    h_class = prediction.h_class
    return FeasibilityReport(
        omega_r_per_s=prediction.omega_r_per_s,
        frequency_hz=prediction.frequency_hz,
        required_rpm=rpm,
        reference_rpm=reference_rpm,
        gap_ratio=gap,
        orders_of_magnitude=math.log10(gap),
        h_class=None if h_class is None else h_class.name,
        max_h=prediction.max_h,
    )


def resonance_scan(cavity, modes: Sequence, omega_range: Tuple[float, float],
                   kinds: Iterable = (Kind.MIXING, Kind.CREATION), amplitude: float = 1e-6,
                   axes: Optional[Iterable[str]] = None, target: float = 1.0) -> List[ResonancePrediction]:
    """All coupled pairs in ``modes`` with resonance inside ``omega_range`` (1/m), ascending.

    (A, B) and (B, A) count once.  Growth rates assume a sinusoidal
    displacement of ``amplitude`` metres along the coupling axis.
    """
    lo, hi = omega_range
    kinds = [_kind(k) for k in kinds]
    if isinstance(cavity, CavitySpec3D):
        modes = sorted({ModeIndex3D.coerce(m) for m in modes})
        allowed = AXES if axes is None else tuple(axes)
    else:
        modes = sorted({int(m) for m in modes})
        allowed = None
    out = []
    if hi < lo:
        return out
    for i, a in enumerate(modes):
        for b in modes[i + 1:]:
            if allowed is None:
                if not _coupled_1d(a, b):
                    continue
                axis, length = None, cavity.length
            else:
                axis = coupling_axis(a, b)
                if axis is None or axis not in allowed:
                    continue
                length = cavity.edge(axis)
            for kind in kinds:
                omega = resonance_frequency(cavity, a, b, kind)
                if lo <= omega <= hi:
                    rate = resonant_growth_rate(cavity, a, b, kind, amplitude)
                    out.append(ResonancePrediction(kind, a, b, omega, amplitude, rate, target, axis, length))
    out.sort(key=lambda p: (p.omega_r, p.kind.value, str(p.mode_a), str(p.mode_b)))
    return out
