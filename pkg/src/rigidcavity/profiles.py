"""Proper-acceleration profiles a(tau) of the cavity centre.

Accelerations are in natural units (1/m); multiplying by an edge length gives
the dimensionless h = L a that enters the Bogoliubov integrals.  Every profile
vanishes outside its window [tau0, tau1]: the cavity is inertial before and
after.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Dict, Mapping, Sequence, Tuple

import numpy as np

from .cavity import AXES, CavitySpec1D, CavitySpec3D

# rigidity needs |h| < 2; above this the linear-order treatment is suspect
PERTURBATIVE_LIMIT = 0.1
RIGIDITY_LIMIT = 2.0

_GRID_TOL = 1e-9


@dataclass(frozen=True)
class ProfileWindow:
    tau0: float
    tau1: float

    def __post_init__(self):
        if not self.tau1 > self.tau0:
            raise ValueError(f"window needs tau1 > tau0, got [{self.tau0}, {self.tau1}]")

    @property
    def duration(self) -> float:
        return self.tau1 - self.tau0

    def contains(self, tau):
        return (tau >= self.tau0) & (tau <= self.tau1)


class AxisProfile:
    """Base for single-axis acceleration profiles."""

    window: ProfileWindow

    def _evaluate_inside(self, s):
        raise NotImplementedError

    def evaluate(self, tau):
        """Acceleration at proper time(s) ``tau``; exactly zero outside the window."""
        tau = np.asarray(tau, dtype=float)
        inside = self.window.contains(tau)
        s = np.where(inside, tau - self.window.tau0, 0.0)
        out = np.where(inside, self._evaluate_inside(s), 0.0)
        return out if out.ndim else float(out)

    __call__ = evaluate

    def scaled(self, factor: float) -> "AxisProfile":
        raise NotImplementedError

    def breakpoints(self) -> np.ndarray:
        """Offsets from tau0 where the profile or its slope may jump."""
        return np.array([0.0, self.window.duration])

    def max_abs(self) -> float:
        raise NotImplementedError


@dataclass(frozen=True)
class Sinusoidal(AxisProfile):
    """a(tau) = amplitude * sin(omega (tau - tau0) + phase) inside the window."""

    amplitude: float
    omega: float
    window: ProfileWindow
    phase: float = 0.0

    def __post_init__(self):
        if not self.amplitude >= 0:
            raise ValueError(f"sinusoid amplitude must be >= 0, got {self.amplitude!r}")
        if not self.omega > 0:
            raise ValueError(f"sinusoid angular frequency must be > 0, got {self.omega!r}")

    def _evaluate_inside(self, s):
        # expanded so phase-shifted partners share one rounded argument
        x = self.omega * s
        return self.amplitude * (np.sin(x) * math.cos(self.phase) + np.cos(x) * math.sin(self.phase))

    def scaled(self, factor):
        if factor < 0:
            return Sinusoidal(-factor * self.amplitude, self.omega, self.window, self.phase + math.pi)
        return Sinusoidal(factor * self.amplitude, self.omega, self.window, self.phase)

    def max_abs(self):
        if self.amplitude == 0:
            return 0.0
        T = self.window.duration
        # a full half period inside the window always reaches a crest
        if self.omega * T >= math.pi:
            return self.amplitude
        x0, x1 = self.phase, self.phase + self.omega * T
        k = math.ceil((x0 - math.pi / 2) / math.pi)
        if math.pi / 2 + k * math.pi <= x1:
            return self.amplitude
        return self.amplitude * max(abs(math.sin(x0)), abs(math.sin(x1)))


@dataclass(frozen=True)
class PiecewiseConstant(AxisProfile):
    """Constant accelerations on consecutive sub-intervals that tile the window.

    ``edges`` are absolute proper times (tau0 = edges[0], tau1 = edges[-1]);
    ``values[i]`` holds on [edges[i], edges[i+1]).
    """

    edges: Tuple[float, ...]
    values: Tuple[float, ...]
    window: ProfileWindow = field(init=False)

    def __post_init__(self):
        edges = tuple(float(e) for e in self.edges)
        values = tuple(float(v) for v in self.values)
        if len(edges) < 2 or len(values) != len(edges) - 1:
            raise ValueError("need len(values) == len(edges) - 1 >= 1")
        if any(b <= a for a, b in zip(edges, edges[1:])):
            raise ValueError("piecewise edges must be strictly increasing")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "window", ProfileWindow(edges[0], edges[-1]))

    @classmethod
    def from_segments(cls, segments: Sequence[Tuple[float, float, float]]):
        """Build from ``(start, stop, value)`` triples; they must abut exactly."""
        segments = list(segments)
        if not segments:
            raise ValueError("at least one segment is required")
        for (_, b, _), (a, _, _) in zip(segments, segments[1:]):
            if a != b:
                raise ValueError(f"segments must partition the window: gap or overlap at {b} / {a}")
        edges = [segments[0][0]] + [s[1] for s in segments]
        return cls(tuple(edges), tuple(s[2] for s in segments))

    @classmethod
    def constant(cls, value: float, window: ProfileWindow):
        return cls((window.tau0, window.tau1), (value,))

    def _evaluate_inside(self, s):
        rel = np.asarray(self.edges) - self.edges[0]
        idx = np.clip(np.searchsorted(rel, s, side="right") - 1, 0, len(self.values) - 1)
        return np.asarray(self.values)[idx]

    def scaled(self, factor):
        return PiecewiseConstant(self.edges, tuple(factor * v for v in self.values))

    def breakpoints(self):
        return np.asarray(self.edges) - self.edges[0]

    def max_abs(self):
        return max(abs(v) for v in self.values)


@dataclass(frozen=True, eq=False)
class Sampled(AxisProfile):
    """Acceleration samples on a uniform grid starting at tau0, linearly interpolated.

    The grid must span the window exactly: (len(values) - 1) * dt == duration.
    """

    values: np.ndarray
    dt: float
    window: ProfileWindow

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or values.size < 2:
            raise ValueError("sampled profile needs at least two samples")
        if not self.dt > 0:
            raise ValueError(f"sample spacing must be > 0, got {self.dt!r}")
        span = (values.size - 1) * self.dt
        if abs(span - self.window.duration) > _GRID_TOL * max(1.0, self.window.duration):
            raise ValueError(
                f"sample grid spans {span}, window duration is {self.window.duration}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, func, window: ProfileWindow, n_intervals: int):
        grid = np.linspace(window.tau0, window.tau1, n_intervals + 1)
        return cls(np.asarray(func(grid), dtype=float), window.duration / n_intervals, window)

    def _evaluate_inside(self, s):
        grid = np.arange(self.values.size) * self.dt
        return np.interp(s, grid, self.values)

    def scaled(self, factor):
        return Sampled(factor * self.values, self.dt, self.window)

    def breakpoints(self):
        return np.arange(self.values.size) * self.dt

    def max_abs(self):
        return float(np.max(np.abs(self.values)))


@dataclass(frozen=True)
class VectorProfile:
    """Per-axis acceleration components sharing one window (linear superposition)."""

    components: Mapping[str, AxisProfile]

    def __post_init__(self):
        comps = dict(self.components)
        if not comps:
            raise ValueError("a vector profile needs at least one component")
        for axis in comps:
            if axis not in AXES:
                raise ValueError(f"unknown axis {axis!r}")
        windows = {(p.window.tau0, p.window.tau1) for p in comps.values()}
        if len(windows) != 1:
            raise ValueError("all components of a vector profile must share the window")
        object.__setattr__(self, "components", dict(sorted(comps.items())))

    @property
    def window(self) -> ProfileWindow:
        return next(iter(self.components.values())).window

    def evaluate(self, tau) -> Dict[str, float]:
        return {axis: p.evaluate(tau) for axis, p in self.components.items()}

    def scaled(self, factor):
        return VectorProfile({a: p.scaled(factor) for a, p in self.components.items()})


def circular_profile(radius: float, omega: float, window: ProfileWindow) -> VectorProfile:
    """Uniform circular motion in the x-y plane: centripetal magnitude omega^2 r.

    x carries a0 sin(omega s), y carries a0 cos(omega s), with s = tau - tau0.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    a0 = omega**2 * radius
    return VectorProfile(
        {
            "x": Sinusoidal(a0, omega, window, 0.0),
            "y": Sinusoidal(a0, omega, window, math.pi / 2),
        }
    )


def zero_profile(window: ProfileWindow) -> PiecewiseConstant:
    return PiecewiseConstant.constant(0.0, window)


class Validity(enum.IntEnum):
    OK = 0
    PERTURBATIVE_SUSPECT = 1
    HARD_INVALID = 2


@dataclass(frozen=True)
class ValidityReport:
    max_h: Dict[str, float]
    max_h_norm: float
    status: Validity

    @property
    def ok(self) -> bool:
        return self.status is not Validity.HARD_INVALID

    def to_dict(self):
        return {"max_h": dict(self.max_h), "max_h_norm": self.max_h_norm, "status": self.status.name}


def classify_h(max_h: float) -> Validity:
    if max_h >= RIGIDITY_LIMIT:
        return Validity.HARD_INVALID
    if max_h > PERTURBATIVE_LIMIT:
        return Validity.PERTURBATIVE_SUSPECT
    return Validity.OK


def _norm_peak(components: Mapping[str, AxisProfile], lengths: Mapping[str, float]) -> float:
    # sample densely enough to resolve every sinusoid, plus all breakpoints
    window = next(iter(components.values())).window
    n = 4097
    for p in components.values():
        if isinstance(p, Sinusoidal):
            n = max(n, min(2**20, int(64 * p.omega * window.duration / (2 * math.pi)) + 1))
    offsets = np.linspace(0.0, window.duration, n)
    pts = [offsets] + [p.breakpoints() for p in components.values()]
    # piecewise values take effect from their left edge: probe just inside too
    pts += [p.breakpoints()[:-1] + 1e-12 * window.duration for p in components.values()
            if isinstance(p, PiecewiseConstant)]
    tau = window.tau0 + np.unique(np.concatenate(pts))
    tau = tau[tau <= window.tau1]
    sq = sum((lengths[a] * np.asarray(p.evaluate(tau))) ** 2 for a, p in components.items())
    return float(np.sqrt(np.max(sq)))


def validate(profile, cavity) -> ValidityReport:
    """Peak |h| = L |a| per axis and for the vector norm, with a validity class.

    For a 1d cavity every component is measured against its single length.
    """
    if isinstance(profile, AxisProfile):
        profile = VectorProfile({"x": profile})
    if isinstance(cavity, CavitySpec1D):
        lengths = {a: cavity.length for a in AXES}
    elif isinstance(cavity, CavitySpec3D):
        lengths = dict(zip(AXES, cavity.lengths))
    else:
        raise TypeError(f"unsupported cavity type {type(cavity).__name__}")
    max_h = {a: lengths[a] * p.max_abs() for a, p in profile.components.items()}
    norm = max(max(max_h.values()), _norm_peak(profile.components, lengths))
    if len(max_h) == 1:
        norm = next(iter(max_h.values()))
    status = max(classify_h(norm), *(classify_h(v) for v in max_h.values()))
    return ValidityReport(max_h, norm, Validity(status))
