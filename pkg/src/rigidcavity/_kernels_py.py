"""Pure-numpy implementations of the oscillatory-sum kernels.

Reference backend and fallback when the compiled extension is unavailable.
Both compute, for each kernel frequency ``omega``, an exact integral of a
piecewise polynomial profile against exp(-i omega s) on s in [0, T].
"""

import numpy as np

# below this |theta| the closed-form cell weights cancel badly; use series
SERIES_THRESHOLD = 0.25
_SERIES_TERMS = 18


def cell_weights(theta):
    """Weights (w0, w1) of a unit linear cell against exp(-i theta x), x in [0, 1].

    w0 = int (1 - x) exp(-i theta x) dx,  w1 = int x exp(-i theta x) dx.
    """
    theta = np.asarray(theta, dtype=float)
    w0 = np.empty(theta.shape, dtype=complex)
    w1 = np.empty(theta.shape, dtype=complex)
    small = np.abs(theta) < SERIES_THRESHOLD
    if np.any(small):
        t = theta[small]
        z = -1j * t
        term = np.ones_like(z)  # z^j / j!
        s0 = np.zeros_like(z)
        s1 = np.zeros_like(z)
        for j in range(_SERIES_TERMS):
            s0 += term / ((j + 1) * (j + 2))
            s1 += term / (j + 2)
            term = term * z / (j + 1)
        w0[small], w1[small] = s0, s1
    big = ~small
    if np.any(big):
        t = theta[big]
        e = np.exp(-1j * t)
        i0 = (1 - e) / (1j * t)
        i1 = e * (1j / t + 1 / t**2) - 1 / t**2
        w0[big], w1[big] = i0 - i1, i1
    return w0, w1


def filon_linear(values, dt, omegas):
    """Integral of the linear interpolant of ``values`` (spacing ``dt``) against exp(-i omega s)."""
    f = np.asarray(values, dtype=float)
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    s = np.arange(f.size - 1) * dt
    w0, w1 = cell_weights(omegas * dt)
    out = np.empty(omegas.size, dtype=complex)
    for k, om in enumerate(omegas):
        phase = np.exp(-1j * om * s)
        out[k] = dt * np.sum(phase * (f[:-1] * w0[k] + f[1:] * w1[k]))
    return out


def piecewise_constant(offsets, values, omegas):
    """Integral of a step function (``values[i]`` on [offsets[i], offsets[i+1]]) against exp(-i omega s)."""
    o = np.asarray(offsets, dtype=float)
    v = np.asarray(values, dtype=float)
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    d = np.diff(o)
    mid = o[:-1] + 0.5 * d
    out = np.empty(omegas.size, dtype=complex)
    for k, om in enumerate(omegas):
        # np.sinc(x) = sin(pi x) / (pi x)
        out[k] = np.sum(v * d * np.exp(-1j * om * mid) * np.sinc(om * d / (2 * np.pi)))
    return out
