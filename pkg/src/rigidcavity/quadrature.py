"""Oscillatory integrals of acceleration profiles against exp(-i Omega (tau - tau0)).

Two independent routes:

* ``closed-form`` -- exact antiderivatives for sinusoids and step functions,
  and exact cell weights for the linear interpolant of sampled data.
* ``adaptive`` -- QUADPACK (``scipy.integrate.quad``) with a cos/sin weight,
  split at every breakpoint and every drive period.  Slow; used as an oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import kernels
from .profiles import AxisProfile, PiecewiseConstant, Sampled, Sinusoidal

MAX_ADAPTIVE_CHUNKS = 200_000


class QuadratureError(RuntimeError):
    def __init__(self, message, error_estimate=float("nan")):
        super().__init__(f"{message} (estimated error {error_estimate:.3g})")
        self.error_estimate = error_estimate


@dataclass(frozen=True)
class QuadratureSpec:
    method: str = "closed-form"
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 200

    def __post_init__(self):
        if self.method not in ("closed-form", "adaptive"):
            raise ValueError(f"unknown quadrature method {self.method!r}")
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("quadrature tolerances must be > 0")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


DEFAULT_QUADRATURE = QuadratureSpec()


def exp_integral(nu, T):
    """int_0^T exp(i nu s) ds, stable through nu -> 0 (where it is T)."""
    nu = np.asarray(nu, dtype=float)
    x = 0.5 * nu * T
    return T * np.exp(1j * x) * np.sinc(x / np.pi)


def _sinusoid_closed(profile: Sinusoidal, omegas):
    A, w, phi = profile.amplitude, profile.omega, profile.phase
    T = profile.window.duration
    plus = np.exp(1j * phi) * exp_integral(w - omegas, T)
    minus = np.exp(-1j * phi) * exp_integral(-w - omegas, T)
    return A * (plus - minus) / 2j


def _closed_form(profile, omegas):
    if isinstance(profile, Sinusoidal):
        return _sinusoid_closed(profile, omegas)
    if isinstance(profile, PiecewiseConstant):
        return kernels.piecewise_constant(profile.breakpoints(), profile.values, omegas)
    if isinstance(profile, Sampled):
        return kernels.filon_linear(profile.values, profile.dt, omegas)
    raise TypeError(f"no closed form for {type(profile).__name__}")


def _chunk_edges(profile: AxisProfile):
    edges = profile.breakpoints()
    if isinstance(profile, Sinusoidal):
        T = profile.window.duration
        n = max(1, math.ceil(profile.omega * T / math.pi))
        if n > MAX_ADAPTIVE_CHUNKS:
            raise QuadratureError("window too long for the adaptive path")
        edges = np.union1d(edges, np.linspace(0.0, T, n + 1))
    if edges.size - 1 > MAX_ADAPTIVE_CHUNKS:
        raise QuadratureError("too many breakpoints for the adaptive path")
    return edges


def _adaptive_one(profile: AxisProfile, omega: float, edges, quad: QuadratureSpec):
    tau0 = profile.window.tau0

    def f(s):
        # evaluate at interior offsets only; chunk edges are handled by quad
        return float(profile.evaluate(tau0 + s))

    if isinstance(profile, PiecewiseConstant):
        vals = profile.values

        def piece(i):
            return lambda s, v=vals[i]: v
    else:
        def piece(i):
            a, b = edges[i], edges[i + 1]
            # keep evaluation on the chunk's own side of a jump
            return lambda s: f(min(max(s, a), b))

    total = 0.0 + 0.0j
    err = 0.0
    failures = []
    opts = dict(epsabs=quad.abs_tol, epsrel=quad.rel_tol, limit=quad.max_subdivisions, full_output=1)
    for i in range(edges.size - 1):
        a, b = float(edges[i]), float(edges[i + 1])
        if b <= a:
            continue
        g = piece(i)
        if omega == 0.0:
            parts = [integrate.quad(g, a, b, **opts)]
            re, im = parts[0][0], 0.0
        else:
            parts = [
                integrate.quad(g, a, b, weight="cos", wvar=omega, **opts),
                integrate.quad(g, a, b, weight="sin", wvar=omega, **opts),
            ]
            re, im = parts[0][0], -parts[1][0]
        total += re + 1j * im
        for res in parts:
            err += res[1]
            if len(res) > 3:
                failures.append(res[3])
    if failures and err > max(quad.abs_tol, quad.rel_tol * abs(total)):
        raise QuadratureError(f"adaptive quadrature did not converge: {failures[0]}", err)
    return total


def oscillatory_integrals(profile: AxisProfile, omegas, quad: QuadratureSpec = DEFAULT_QUADRATURE):
    """Vector of int_{tau0}^{tau1} exp(-i Omega (tau - tau0)) a(tau) dtau over ``omegas``.

    ``profile`` supplies both a(tau) and the window.  Omega may have either sign.
    """
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    if quad.method == "closed-form":
        return np.asarray(_closed_form(profile, omegas), dtype=complex)
    edges = _chunk_edges(profile)
    return np.array([_adaptive_one(profile, float(om), edges, quad) for om in omegas])


def oscillatory_integral(profile: AxisProfile, omega: float, quad: QuadratureSpec = DEFAULT_QUADRATURE,
                         window=None) -> complex:
    if window is not None and (window.tau0, window.tau1) != (profile.window.tau0, profile.window.tau1):
        raise ValueError("window does not match the profile's window")
    return complex(oscillatory_integrals(profile, [omega], quad)[0])
