"""Gaussian states, the beamsplitter gate carried by the mode mixing, and log-negativity.

Conventions: quadratures ordered (x1, p1, ..., xk, pk) with x = a + a^dag and
p = -i (a - a^dag), so the vacuum covariance is the identity and
[R_i, R_j] = 2 i Omega_ij.  Log-negativity uses the natural logarithm.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.linalg import expm

from .bogoliubov import BogoliubovBlock

SYMPLECTIC_TOL = 1e-10
PASSIVITY_RATIO = 1e-3
_PSD_TOL = 1e-10
_NU_FLOOR = 1e-12


class NotPassive(ValueError):
    """The selected pair carries non-negligible particle creation."""


def symplectic_form(k: int) -> np.ndarray:
    return np.kron(np.eye(k), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def _rotation(phi: float) -> np.ndarray:
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[c, -s], [s, c]])


@dataclass(frozen=True, eq=False)
class GaussianState:
    cov: np.ndarray
    mean: np.ndarray

    def __post_init__(self):
        cov = np.array(self.cov, dtype=float)
        mean = np.array(self.mean, dtype=float)
        n = cov.shape[0]
        if cov.shape != (n, n) or n % 2 or mean.shape != (n,):
            raise ValueError("covariance must be 2k x 2k and mean of length 2k")
        if not np.allclose(cov, cov.T, atol=1e-12, rtol=0):
            raise ValueError("covariance matrix is not symmetric")
        cov = 0.5 * (cov + cov.T)
        herm = cov + 1j * symplectic_form(n // 2)
        if np.linalg.eigvalsh(herm).min() < -_PSD_TOL * max(1.0, np.abs(cov).max()):
            raise ValueError("covariance violates the uncertainty relation")
        cov.setflags(write=False)
        mean.setflags(write=False)
        object.__setattr__(self, "cov", cov)
        object.__setattr__(self, "mean", mean)

    @property
    def modes(self) -> int:
        return self.cov.shape[0] // 2

    def mean_photon_number(self) -> float:
        return float(np.trace(self.cov) / 4 + self.mean @ self.mean / 4 - self.modes / 2)

    def to_dict(self):
        return {"cov": self.cov.tolist(), "mean": self.mean.tolist()}


def vacuum(k: int = 1) -> GaussianState:
    return GaussianState(np.eye(2 * k), np.zeros(2 * k))


def coherent(alpha: complex) -> GaussianState:
    return GaussianState(np.eye(2), 2.0 * np.array([np.real(alpha), np.imag(alpha)]))


def thermal(nu: float) -> GaussianState:
    """Single-mode thermal state with covariance nu * I (nu = 2 nbar + 1 >= 1)."""
    if nu < 1:
        raise ValueError("thermal covariance needs nu >= 1")
    return GaussianState(nu * np.eye(2), np.zeros(2))


def squeezed_vacuum(r: float, phi: float = 0.0) -> GaussianState:
    """Covariance R(phi) diag(e^{-2r}, e^{2r}) R(phi)^T."""
    R = _rotation(phi)
    return GaussianState(R @ np.diag([np.exp(-2 * r), np.exp(2 * r)]) @ R.T, np.zeros(2))


def product(*states: GaussianState) -> GaussianState:
    size = sum(s.cov.shape[0] for s in states)
    cov = np.zeros((size, size))
    pos = 0
    for s in states:
        n = s.cov.shape[0]
        cov[pos:pos + n, pos:pos + n] = s.cov
        pos += n
    return GaussianState(cov, np.concatenate([s.mean for s in states]))


@dataclass(frozen=True, eq=False)
class SymplecticGate:
    matrix: np.ndarray
    passive: bool = False

    def __post_init__(self):
        S = np.array(self.matrix, dtype=float)
        n = S.shape[0]
        if S.shape != (n, n) or n % 2:
            raise ValueError("symplectic gate must be 2k x 2k")
        if symplectic_defect(S) > SYMPLECTIC_TOL:
            raise ValueError("matrix is not symplectic")
        S.setflags(write=False)
        object.__setattr__(self, "matrix", S)

    @classmethod
    def from_unitary(cls, U) -> "SymplecticGate":
        """Passive gate for the mode map a -> U a."""
        return cls(unitary_to_symplectic(U), passive=True)


def symplectic_defect(S) -> float:
    S = np.asarray(S)
    Om = symplectic_form(S.shape[0] // 2)
    return float(np.max(np.abs(S.T @ Om @ S - Om)))


def unitary_to_symplectic(U) -> np.ndarray:
    """Real quadrature matrix of a -> U a in interleaved (x, p) order."""
    U = np.asarray(U, dtype=complex)
    k = U.shape[0]
    X, Y = U.real, U.imag
    S = np.zeros((2 * k, 2 * k))
    S[0::2, 0::2] = X
    S[0::2, 1::2] = -Y
    S[1::2, 0::2] = Y
    S[1::2, 1::2] = X
    return S


def beamsplitter(theta: float, phase: float = 0.0) -> SymplecticGate:
    """Beamsplitter exp(theta (e^{i phase} a1^dag a2 - h.c.)) as a gate; theta = pi/4 is 50:50."""
    G = np.array([[0.0, theta * np.exp(1j * phase)], [-theta * np.exp(-1j * phase), 0.0]])
    return SymplecticGate.from_unitary(expm(G))


def gate_from_mixing(block: BogoliubovBlock, pair) -> SymplecticGate:
    """Beamsplitter obtained by exponentiating the 2x2 restriction of Ahat to ``pair``.

    Free phases are dropped (they are local rotations).  Raises
    :class:`NotPassive` when Bhat on the pair is not negligible against Ahat.
    """
    i, j = (block.index(m) for m in pair)
    if i == j:
        raise ValueError("pair must name two distinct modes")
    idx = [i, j]
    A = block.ahat[np.ix_(idx, idx)]
    B = block.bhat[np.ix_(idx, idx)]
    if np.max(np.abs(B)) > PASSIVITY_RATIO * np.max(np.abs(A)):
        raise NotPassive(
            f"|Bhat| on the pair ({np.max(np.abs(B)):.3g}) is not negligible against |Ahat| ({np.max(np.abs(A)):.3g})"
        )
    return SymplecticGate.from_unitary(expm(0.5 * (A - A.conj().T)))


def apply_gate(state: GaussianState, gate: SymplecticGate) -> GaussianState:
    S = gate.matrix
    if S.shape != state.cov.shape:
        raise ValueError(f"gate acts on {S.shape[0] // 2} modes, state has {state.modes}")
    return GaussianState(S @ state.cov @ S.T, S @ state.mean)


def symplectic_eigenvalues(cov) -> np.ndarray:
    """Moduli of the eigenvalues of i Omega cov, each listed once, ascending."""
    cov = np.asarray(cov, dtype=float)
    ev = np.abs(np.linalg.eigvals(1j * symplectic_form(cov.shape[0] // 2) @ cov))
    return np.sort(ev)[::2]


def partial_transpose(cov) -> np.ndarray:
    """Flip the sign of the last mode's momentum."""
    cov = np.asarray(cov, dtype=float)
    T = np.ones(cov.shape[0])
    T[-1] = -1.0
    return cov * np.outer(T, T)


def log_negativity(state: GaussianState) -> float:
    """E_N = max(0, -ln nu~) with nu~ the smallest partial-transpose symplectic eigenvalue."""
    if state.modes != 2:
        raise ValueError("log-negativity is defined here for two-mode states")
    nu = symplectic_eigenvalues(partial_transpose(state.cov))[0]
    # eigenvalue roundoff puts separable states a few ulp below 1
    if nu >= 1.0 - _NU_FLOOR:
        return 0.0
    return -float(np.log(nu))


def entanglement_after_mixing(state: GaussianState, block: BogoliubovBlock, pair) -> Tuple[float, float]:
    """Log-negativity of a two-mode input before and after the block's beamsplitter on ``pair``."""
    gate = gate_from_mixing(block, pair)
    return log_negativity(state), log_negativity(apply_gate(state, gate))
