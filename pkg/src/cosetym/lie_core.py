"""2x2 complex matrix Lie algebra arithmetic for su(2) and sl(2, C).

Algebra elements are plain ``numpy`` arrays of shape ``(..., 2, 2)`` so that
every routine broadcasts over sample grids.  Potentials are stored
anti-hermitian (the ``i * sigma`` forms), never hermitian with an explicit i.

The root machinery is hard-coded to rank one (A1).  A general semisimple
algebra would replace ``ROOT_BASIS`` and ``tau_algebra``; everything else only
needs ``bracket`` and ``ad_eigen_decomposition``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "IDENTITY", "SIGMA1", "SIGMA2", "SIGMA3", "SIGMA_PLUS", "SIGMA_MINUS",
    "PAIRING_CONSTANT", "EIGEN_TOL",
    "RootBasis", "ROOT_BASIS",
    "bracket", "pairing", "conjugation", "dagger", "frozen",
    "tau_group", "tau_algebra", "ad_eigen_decomposition",
    "pauli_components", "from_pauli_components",
    "is_anti_hermitian", "NotInvariantError",
]


def frozen(a) -> np.ndarray:
    """Return a read-only complex copy of ``a``."""
    out = np.array(a, dtype=complex)
    out.flags.writeable = False
    return out


IDENTITY = frozen(np.eye(2))
SIGMA1 = frozen([[0, 1], [1, 0]])
SIGMA2 = frozen([[0, -1j], [1j, 0]])
SIGMA3 = frozen([[1, 0], [0, -1]])
SIGMA_PLUS = frozen((SIGMA1 + 1j * SIGMA2) / 2)
SIGMA_MINUS = frozen((SIGMA1 - 1j * SIGMA2) / 2)

# <X, Y> = c tr(XY).  Frozen after calibrating the S^2 action of the n=1, f=0
# monopole to pi / (2 e^2 R^2); reproduced by action.calibrate_pairing().
PAIRING_CONSTANT = -0.25

# Matching tolerance for the (integer) eigenvalues of ad.
EIGEN_TOL = 1e-9


class NotInvariantError(ValueError):
    """The supplied subspace is not mapped into itself by ad(h)."""


@dataclass(frozen=True)
class RootBasis:
    """Root vectors and Cartan element of A1: [h, e+-] = +-2 e+-, [e+, e-] = h."""

    e_plus: np.ndarray
    e_minus: np.ndarray
    h: np.ndarray

    def residuals(self) -> dict[str, float]:
        return {
            "h_e_plus": float(np.abs(bracket(self.h, self.e_plus) - 2 * self.e_plus).max()),
            "h_e_minus": float(np.abs(bracket(self.h, self.e_minus) + 2 * self.e_minus).max()),
            "e_plus_e_minus": float(np.abs(bracket(self.e_plus, self.e_minus) - self.h).max()),
        }


# The same Pauli combinations serve both for K = SU(2) (e_alpha, h_alpha) and
# for the gauge algebra G = A1 (E_alpha, H_alpha).
ROOT_BASIS = RootBasis(e_plus=SIGMA_PLUS, e_minus=SIGMA_MINUS, h=SIGMA3)


def bracket(x, y) -> np.ndarray:
    """Commutator XY - YX, broadcasting over leading axes."""
    x = np.asarray(x)
    y = np.asarray(y)
    return x @ y - y @ x


def pairing(x, y, c: float = PAIRING_CONSTANT):
    """Invariant bilinear form ``c * tr(XY)``."""
    return c * np.einsum("...ij,...ji->...", np.asarray(x), np.asarray(y))


def dagger(x) -> np.ndarray:
    return np.conj(np.swapaxes(np.asarray(x), -1, -2))


def conjugation(g, x) -> np.ndarray:
    """Group adjoint action g X g^-1."""
    g = np.asarray(g)
    return g @ np.asarray(x) @ np.linalg.inv(g)


def is_anti_hermitian(x, tol: float = 1e-12) -> bool:
    x = np.asarray(x)
    return bool(np.abs(x + dagger(x)).max() <= tol)


def pauli_components(x) -> np.ndarray:
    """Coordinates (x0, x1, x2, x3) with X = x0 I + sum_j xj sigma_j."""
    x = np.asarray(x)
    basis = (IDENTITY, SIGMA1, SIGMA2, SIGMA3)
    return np.stack([np.trace(b @ x, axis1=-2, axis2=-1) / 2 for b in basis], axis=-1)


def from_pauli_components(c) -> np.ndarray:
    c = np.asarray(c)
    basis = np.stack([IDENTITY, SIGMA1, SIGMA2, SIGMA3])
    return np.einsum("...k,kij->...ij", c, basis)


def tau_group(n: int, alpha) -> np.ndarray:
    """Image of exp(i sigma3 alpha / 2) under tau_n, i.e. exp(i n sigma3 alpha / 2).

    Uses the closed form cos(n alpha / 2) + i sigma3 sin(n alpha / 2).
    """
    half = n * np.asarray(alpha, dtype=float) / 2
    return (np.cos(half)[..., None, None] * IDENTITY
            + 1j * np.sin(half)[..., None, None] * SIGMA3)


def tau_algebra(n: int, tol: float = 1e-12) -> Callable[[np.ndarray], np.ndarray]:
    """Differential of tau_n: the linear map H -> G with h_alpha -> n H_alpha.

    The returned map rejects inputs that do not lie in H = C h_alpha.
    """

    def tau_prime(x):
        x = np.asarray(x, dtype=complex)
        coeff = np.trace(x @ ROOT_BASIS.h, axis1=-2, axis2=-1) / 2
        if np.abs(x - coeff[..., None, None] * ROOT_BASIS.h).max(initial=0.0) > tol:
            raise ValueError("tau_algebra: argument is not in the Cartan subalgebra")
        return n * coeff[..., None, None] * ROOT_BASIS.h

    return tau_prime


def ad_eigen_decomposition(h, space: Sequence[np.ndarray], tol: float = EIGEN_TOL):
    """Eigenpairs of ad(h) = [h, .] restricted to span(space).

    Returns a list of ``(eigenvalue, eigenvector)`` sorted by decreasing real
    part.  Eigenvalues within ``tol`` of a real number are returned as floats;
    each eigenvector is scaled so its largest basis coordinate equals one, so a
    diagonal action hands back the basis elements themselves.
    """
    h = np.asarray(h, dtype=complex)
    basis = np.stack([np.asarray(b, dtype=complex) for b in space])
    flat = basis.reshape(len(space), 4).T  # columns are basis vectors
    images = np.stack([bracket(h, b) for b in basis]).reshape(len(space), 4).T

    coords, *_ = np.linalg.lstsq(flat, images, rcond=None)
    if np.abs(flat @ coords - images).max(initial=0.0) > tol:
        raise NotInvariantError("span is not ad(h)-invariant")

    values, vectors = np.linalg.eig(coords)
    pairs = []
    for k in range(len(values)):
        v = vectors[:, k]
        v = v / v[np.argmax(np.abs(v))]
        lam = values[k]
        if abs(lam.imag) <= tol:
            lam = float(lam.real)
            if abs(lam - round(lam)) <= tol:
                lam = float(round(lam))
        vec = np.einsum("k,kij->ij", v, basis)
        pairs.append((lam, vec))
    pairs.sort(key=lambda p: -np.real(p[0]))
    return pairs
