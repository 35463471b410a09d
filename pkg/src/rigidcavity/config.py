"""Run configuration: a JSON document validated into a :class:`RunConfig`.

All validation problems are collected and reported together, each with the
path of the offending field.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, List, Optional

import numpy as np

from . import units
from .cavity import AXES, CavitySpec1D, CavitySpec3D, ModeIndex3D, paraxial_cavity
from .profiles import PiecewiseConstant, ProfileWindow, Sampled, Sinusoidal, VectorProfile, circular_profile
from .quadrature import QuadratureSpec
from .resonance import Kind, ULTRACENTRIFUGE_RPM

OUTPUTS = ("spectrum", "bogoliubov", "resonance-scan", "scenario", "entangle", "timeseries")


class ConfigError(ValueError):
    def __init__(self, errors: List[str]):
        self.errors = list(errors)
        super().__init__("invalid configuration:\n  " + "\n  ".join(self.errors))


@dataclass
class RunConfig:
    cavity: Any = None
    profile: Any = None
    truncation: int = 10
    modes: Optional[list] = None
    quadrature: QuadratureSpec = field(default_factory=QuadratureSpec)
    si: bool = True
    outputs: tuple = ()
    scan: dict = field(default_factory=dict)
    scenario: dict = field(default_factory=dict)
    entangle: dict = field(default_factory=dict)
    timeseries: dict = field(default_factory=dict)
    paraxial_p: Optional[int] = None


class _Checker:
    def __init__(self):
        self.errors: List[str] = []

    def fail(self, path, msg):
        self.errors.append(f"{path}: {msg}")

    def number(self, obj, key, path, *, positive=False, nonneg=False, required=True, default=None):
        if key not in obj:
            if required:
                self.fail(f"{path}.{key}", "is required")
            return default
        v = obj[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            self.fail(f"{path}.{key}", f"must be a finite number, got {v!r}")
            return default
        if positive and not v > 0:
            self.fail(f"{path}.{key}", f"must be > 0, got {v!r}")
            return default
        if nonneg and not v >= 0:
            self.fail(f"{path}.{key}", f"must be >= 0, got {v!r}")
            return default
        return float(v)

    def integer(self, obj, key, path, *, minimum=1, required=True, default=None):
        if key not in obj:
            if required:
                self.fail(f"{path}.{key}", "is required")
            return default
        v = obj[key]
        if isinstance(v, bool) or not isinstance(v, int) or v < minimum:
            self.fail(f"{path}.{key}", f"must be an integer >= {minimum}, got {v!r}")
            return default
        return v

    def section(self, doc, key, path="$", required=False):
        if key not in doc:
            if required:
                self.fail(f"{path}.{key}", "is required")
            return None
        v = doc[key]
        if not isinstance(v, dict):
            self.fail(f"{path}.{key}", "must be an object")
            return None
        return v


def _either(c: _Checker, obj, path, natural, si, convert, **kw):
    """Read ``natural`` or its SI twin ``si`` (converted), exactly one of them."""
    if natural in obj and si in obj:
        c.fail(path, f"give either {natural!r} or {si!r}, not both")
        return None
    if si in obj:
        v = c.number(obj, si, path, **kw)
        return None if v is None else convert(v)
    return c.number(obj, natural, path, **kw)


def _parse_cavity(c: _Checker, doc, cfg: RunConfig):
    sec = c.section(doc, "cavity", required=True)
    if sec is None:
        return
    path = "$.cavity"
    if "mass" in sec and "mass_ev" in sec:
        c.fail(path, "give either 'mass' or 'mass_ev', not both")
        mass = None
    elif "mass_ev" in sec:
        mass = c.number(sec, "mass_ev", path, nonneg=True)
        mass = None if mass is None else units.mass_from_ev(mass)
    else:
        mass = c.number(sec, "mass", path, nonneg=True, required=False, default=0.0)
    if "paraxial" in sec:
        par = sec["paraxial"]
        if not isinstance(par, dict):
            c.fail(f"{path}.paraxial", "must be an object")
            return
        lam = c.number(par, "wavelength", f"{path}.paraxial", positive=True)
        Lx = c.number(par, "Lx", f"{path}.paraxial", positive=True)
        Ly = c.number(par, "Ly", f"{path}.paraxial", positive=True)
        p = c.integer(par, "p", f"{path}.paraxial", required=False)
        if None not in (lam, Lx, Ly):
            cfg.cavity, cfg.paraxial_p = paraxial_cavity(lam, Lx, Ly, p)
        return
    if "lengths" in sec:
        ls = sec["lengths"]
        if not isinstance(ls, list) or len(ls) != 3:
            c.fail(f"{path}.lengths", "must be a list of three edge lengths")
            return
        ok = True
        for i, v in enumerate(ls):
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not v > 0:
                c.fail(f"{path}.lengths[{i}]", f"edge length must be > 0, got {v!r}")
                ok = False
        if ok and mass is not None:
            cfg.cavity = CavitySpec3D(tuple(float(v) for v in ls), mass)
        return
    L = c.number(sec, "length", path, positive=True)
    if L is not None and mass is not None:
        cfg.cavity = CavitySpec1D(L, mass)


def _parse_window(c: _Checker, sec, path):
    if "window" in sec and "window_s" in sec:
        c.fail(path, "give either 'window' or 'window_s', not both")
        return None
    key = "window_s" if "window_s" in sec else "window"
    if key not in sec:
        c.fail(f"{path}.window", "is required")
        return None
    w = sec[key]
    if (not isinstance(w, list) or len(w) != 2
            or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in w)):
        c.fail(f"{path}.{key}", "must be [tau0, tau1]")
        return None
    t0, t1 = (float(v) for v in w)
    if key == "window_s":
        t0, t1 = units.seconds_to_metres(t0), units.seconds_to_metres(t1)
    if not t1 > t0:
        c.fail(f"{path}.{key}", f"needs tau1 > tau0, got {w}")
        return None
    return ProfileWindow(t0, t1)


def _parse_omega(c, obj, path, required=True):
    return _either(c, obj, path, "omega", "omega_per_s", units.per_second_to_per_metre,
                   positive=True, required=required)


def _parse_component(c: _Checker, comp, path, window):
    kind = comp.get("kind")
    if kind == "sinusoidal":
        omega = _parse_omega(c, comp, path)
        phase = c.number(comp, "phase", path, required=False, default=0.0)
        if "displacement" in comp:
            r = c.number(comp, "displacement", path, nonneg=True)
            amp = None if r is None or omega is None else omega**2 * r
        else:
            amp = _either(c, comp, path, "amplitude", "amplitude_si", units.acceleration_from_si, nonneg=True)
        if None in (omega, amp, phase, window):
            return None
        return Sinusoidal(amp, omega, window, phase)
    if kind == "piecewise":
        segs = comp.get("segments")
        if not isinstance(segs, list) or not segs:
            c.fail(f"{path}.segments", "must be a non-empty list of [start, stop, value]")
            return None
        try:
            prof = PiecewiseConstant.from_segments([tuple(float(x) for x in s) for s in segs])
        except (TypeError, ValueError) as exc:
            c.fail(f"{path}.segments", str(exc))
            return None
        if window is not None and (prof.window.tau0, prof.window.tau1) != (window.tau0, window.tau1):
            c.fail(f"{path}.segments", "segments must partition the profile window exactly")
            return None
        return prof
    if kind == "sampled":
        vals = comp.get("values")
        if not isinstance(vals, list) or len(vals) < 2:
            c.fail(f"{path}.values", "must list at least two samples")
            return None
        if window is None:
            return None
        try:
            arr = np.array(vals, dtype=float)
        except (TypeError, ValueError):
            c.fail(f"{path}.values", "samples must be numbers")
            return None
        return Sampled(arr, window.duration / (arr.size - 1), window)
    c.fail(f"{path}.kind", f"must be 'sinusoidal', 'piecewise' or 'sampled', got {kind!r}")
    return None


def _parse_profile(c: _Checker, doc, cfg: RunConfig):
    sec = c.section(doc, "profile")
    if sec is None:
        return
    path = "$.profile"
    window = _parse_window(c, sec, path)
    if sec.get("kind") == "circular":
        r = c.number(sec, "radius", path, nonneg=True)
        omega = _parse_omega(c, sec, path)
        if None not in (r, omega, window):
            cfg.profile = circular_profile(r, omega, window)
        return
    comps = sec.get("components")
    if not isinstance(comps, list) or not comps:
        c.fail(f"{path}.components", "must be a non-empty list (or use kind 'circular')")
        return
    out = {}
    for i, comp in enumerate(comps):
        p = f"{path}.components[{i}]"
        if not isinstance(comp, dict):
            c.fail(p, "must be an object")
            continue
        axis = comp.get("axis", "x")
        if axis not in AXES:
            c.fail(f"{p}.axis", f"must be one of {list(AXES)}, got {axis!r}")
            continue
        if axis in out:
            c.fail(f"{p}.axis", f"duplicate component for axis {axis!r}")
            continue
        prof = _parse_component(c, comp, p, window)
        if prof is not None:
            out[axis] = prof
    if out and len(out) == len(comps):
        cfg.profile = VectorProfile(out)


def _parse_modes(c: _Checker, doc, cfg: RunConfig):
    sec = c.section(doc, "modes")
    if sec is None:
        return
    path = "$.modes"
    if "truncation" in sec:
        cfg.truncation = c.integer(sec, "truncation", path, minimum=2, default=cfg.truncation)
    if "list" in sec:
        lst = sec["list"]
        if not isinstance(lst, list) or len(lst) < 2:
            c.fail(f"{path}.list", "must list at least two modes")
            return
        modes = []
        for i, m in enumerate(lst):
            try:
                modes.append(ModeIndex3D.coerce(m) if isinstance(m, list) else int(m))
                if isinstance(m, int) and m < 1:
                    raise ValueError("quantum numbers must be positive")
            except (TypeError, ValueError) as exc:
                c.fail(f"{path}.list[{i}]", str(exc))
        cfg.modes = modes
    elif "grid" in sec:
        g = sec["grid"]
        ranges = []
        for key in ("m", "n", "p"):
            r = g.get(key) if isinstance(g, dict) else None
            if r is None and key == "p" and cfg.paraxial_p is not None:
                r = [cfg.paraxial_p, cfg.paraxial_p]
            if (not isinstance(r, list) or len(r) != 2 or not all(isinstance(v, int) and v >= 1 for v in r)
                    or r[1] < r[0]):
                c.fail(f"{path}.grid.{key}", "must be [lo, hi] with 1 <= lo <= hi")
                return
            ranges.append(range(r[0], r[1] + 1))
        cfg.modes = [ModeIndex3D(m, n, p) for m in ranges[0] for n in ranges[1] for p in ranges[2]]


def _parse_quadrature(c: _Checker, doc, cfg: RunConfig):
    sec = c.section(doc, "quadrature")
    if sec is None:
        return
    path = "$.quadrature"
    method = sec.get("method", "closed-form")
    if method not in ("closed-form", "adaptive"):
        c.fail(f"{path}.method", f"must be 'closed-form' or 'adaptive', got {method!r}")
        return
    a = c.number(sec, "abs_tol", path, positive=True, required=False, default=1e-12)
    r = c.number(sec, "rel_tol", path, positive=True, required=False, default=1e-10)
    n = c.integer(sec, "max_subdivisions", path, required=False, default=200)
    if None not in (a, r, n):
        cfg.quadrature = QuadratureSpec(method, a, r, n)


def _parse_sections(c: _Checker, doc, cfg: RunConfig):
    sec = c.section(doc, "scenario")
    if sec is not None:
        path = "$.scenario"
        s = {
            "wavelength": c.number(sec, "wavelength", path, positive=True),
            "Lx": c.number(sec, "Lx", path, positive=True),
            "Ly": c.number(sec, "Ly", path, positive=True, required=False),
            "m": c.integer(sec, "m", path, required=False, default=1),
            "m_prime": c.integer(sec, "m_prime", path, required=False, default=2),
            "amplitude": c.number(sec, "amplitude", path, positive=True),
            "target": c.number(sec, "target", path, positive=True, required=False, default=1.0),
            "reference_rpm": c.number(sec, "reference_rpm", path, positive=True, required=False,
                                      default=ULTRACENTRIFUGE_RPM),
            "motion": sec.get("motion", "circular"),
        }
        if s["Ly"] is None:
            s["Ly"] = s["Lx"]
        if s["motion"] not in ("linear", "circular"):
            c.fail(f"{path}.motion", "must be 'linear' or 'circular'")
        if s["m"] is not None and s["m_prime"] is not None and (s["m"] - s["m_prime"]) % 2 == 0:
            c.fail(f"{path}.m_prime", "m - m_prime must be odd")
        cfg.scenario = s

    sec = c.section(doc, "scan")
    if sec is not None:
        path = "$.scan"
        lo = _either(c, sec, path, "omega_min", "omega_min_per_s", units.per_second_to_per_metre,
                     nonneg=True, required=False, default=0.0)
        hi = _either(c, sec, path, "omega_max", "omega_max_per_s", units.per_second_to_per_metre,
                     nonneg=True, required=False, default=math.inf)
        kinds = sec.get("kinds", [Kind.MIXING.value, Kind.CREATION.value])
        try:
            kinds = [Kind(k) for k in kinds]
        except (TypeError, ValueError):
            c.fail(f"{path}.kinds", f"entries must be {[k.value for k in Kind]}")
            kinds = []
        axes = sec.get("axes")
        if axes is not None and (not isinstance(axes, list) or any(a not in AXES for a in axes)):
            c.fail(f"{path}.axes", f"must be a list drawn from {list(AXES)}")
        cfg.scan = {
            "omega_range": (lo, hi),
            "kinds": kinds,
            "axes": axes,
            "amplitude": c.number(sec, "amplitude", path, positive=True, required=False, default=1e-6),
        }

    sec = c.section(doc, "entangle")
    if sec is not None:
        path = "$.entangle"
        pair = sec.get("pair")
        if not isinstance(pair, list) or len(pair) != 2:
            c.fail(f"{path}.pair", "must name two modes")
        inputs = sec.get("input")
        if not isinstance(inputs, list) or len(inputs) != 2:
            c.fail(f"{path}.input", "must list one single-mode state per pair member")
            inputs = []
        for i, st in enumerate(inputs):
            kind = st.get("kind") if isinstance(st, dict) else None
            if kind not in ("vacuum", "coherent", "thermal", "squeezed"):
                c.fail(f"{path}.input[{i}].kind", "must be vacuum, coherent, thermal or squeezed")
        cfg.entangle = {"pair": pair, "input": inputs}

    sec = c.section(doc, "timeseries")
    if sec is not None:
        path = "$.timeseries"
        key = "durations_s" if "durations_s" in sec else "durations"
        durs = sec.get(key)
        if not isinstance(durs, list) or any(isinstance(v, bool) or not isinstance(v, (int, float)) or v <= 0
                                             for v in durs):
            c.fail(f"{path}.{key}", "must be a list of positive durations")
            durs = []
        if key == "durations_s":
            durs = [units.seconds_to_metres(v) for v in durs]
        pairs = sec.get("pairs")
        if not isinstance(pairs, list) or not pairs:
            c.fail(f"{path}.pairs", "must list at least one mode pair")
            pairs = []
        cfg.timeseries = {"durations": [float(v) for v in durs], "pairs": pairs}


def parse_config(document) -> RunConfig:
    """Validate a config mapping (or JSON text) into a :class:`RunConfig`.

    Raises :class:`ConfigError` listing every problem found.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ConfigError([f"$: not valid JSON ({exc})"]) from None
    if not isinstance(document, dict):
        raise ConfigError(["$: config must be a JSON object"])
    c = _Checker()
    cfg = RunConfig()
    _parse_cavity(c, document, cfg)
    _parse_profile(c, document, cfg)
    _parse_modes(c, document, cfg)
    _parse_quadrature(c, document, cfg)
    _parse_sections(c, document, cfg)
    si = document.get("si", True)
    if not isinstance(si, bool):
        c.fail("$.si", "must be true or false")
    cfg.si = bool(si)
    outputs = document.get("outputs", [])
    if not isinstance(outputs, list) or any(o not in OUTPUTS for o in outputs):
        c.fail("$.outputs", f"entries must be drawn from {list(OUTPUTS)}")
    else:
        cfg.outputs = tuple(outputs)

    if isinstance(cfg.cavity, CavitySpec3D) and cfg.profile is not None and cfg.modes is None:
        c.fail("$.modes", "a 3d cavity needs an explicit mode list or grid")
    if isinstance(cfg.cavity, CavitySpec1D) and isinstance(cfg.profile, VectorProfile) \
            and len(cfg.profile.components) != 1:
        c.fail("$.profile", "a 1d cavity takes a single profile component")
    if isinstance(cfg.cavity, CavitySpec1D) and cfg.modes is not None \
            and any(isinstance(m, ModeIndex3D) for m in cfg.modes):
        c.fail("$.modes.list", "a 1d cavity takes integer modes")
    if c.errors:
        raise ConfigError(c.errors)
    return cfg


def load_config(path) -> RunConfig:
    """Read and validate a JSON config file; I/O errors propagate as ``OSError``."""
    return parse_config(Path(path).read_text())
