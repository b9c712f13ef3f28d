"""Closed-form expressions for the SU(2)/U(1) example, typed in directly.

These are the independent oracles for the constructive code paths: nothing
here calls the intertwiner, the Maurer-Cartan machinery or a finite
difference.  Each formula is written in the normalization it is usually
displayed in (``native`` scale) and rescaled linearly to the requested
``scale`` (the inhomogeneous gauge term scales the same way, so rescaling is
exact).
"""
from __future__ import annotations

import numpy as np

from .connection import FIELD_SCALE
from .lie_core import SIGMA_MINUS, SIGMA_PLUS, SIGMA3

__all__ = [
    "maurer_cartan_closed", "monopole_potential", "family_potential",
    "global_family_potential", "global_monopole_f0", "global_coefficients",
    "family_curvature", "analytic_action", "analytic_action_gradient",
]


def _stack(shape, entries):
    out = np.zeros(shape + (2, 2), dtype=complex)
    for (i, j), v in entries.items():
        out[..., i, j] = v
    return out


def maurer_cartan_closed(chart: int, theta, phi):
    """(dtheta, dphi) coefficients of the pulled-back Maurer-Cartan form."""
    t, p = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    sh = t.shape
    if chart == 1:
        h = 1 - np.cos(t)
        m_t = (-np.sin(p), np.cos(p))
        m_p = (-np.sin(t) * np.cos(p), -np.sin(t) * np.sin(p))
    else:
        h = -(1 + np.cos(t))
        m_t = (np.sin(p), np.cos(p))
        m_p = (-np.sin(t) * np.cos(p), np.sin(t) * np.sin(p))
    # i sigma1/2 a + i sigma2/2 b = (i/2) [[0, a - i b], [a + i b, 0]]
    dt = _stack(sh, {(0, 1): 0.5j * (m_t[0] - 1j * m_t[1]), (1, 0): 0.5j * (m_t[0] + 1j * m_t[1])})
    dp = _stack(sh, {(0, 0): 0.5j * h, (1, 1): -0.5j * h,
                     (0, 1): 0.5j * (m_p[0] - 1j * m_p[1]), (1, 0): 0.5j * (m_p[0] + 1j * m_p[1])})
    return dt, dp


def monopole_potential(n: int, chart: int, theta, phi, scale: float = FIELD_SCALE):
    """Abelian n-monopole (i/2) n sigma3 (1 -+ cos theta) dphi; native scale 1."""
    t, p = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    if chart == 1:
        c = 0.5j * n * (1 - np.cos(t))
    else:
        c = -0.5j * n * (1 + np.cos(t))
    dp = c[..., None, None] * SIGMA3
    return scale * np.zeros_like(dp), scale * dp


def family_potential(f: complex, chart: int, theta, phi, scale: float = FIELD_SCALE):
    """n = 1 family as the explicit matrix i[[...]]; native scale 2."""
    t, p = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    sh = t.shape
    fc = np.conj(f)
    if chart == 1:
        diag = 1 - np.cos(t)
        ph = np.exp(-1j * p)
    else:
        diag = -(1 + np.cos(t))
        ph = np.exp(1j * p)
    dt = _stack(sh, {(0, 1): 1j * f * ph * (-1j), (1, 0): 1j * fc / ph * 1j})
    dp = _stack(sh, {(0, 0): 1j * diag, (1, 1): -1j * diag,
                     (0, 1): 1j * f * ph * (-np.sin(t)), (1, 0): 1j * fc / ph * (-np.sin(t))})
    r = scale / 2.0
    return r * dt, r * dp


def global_coefficients(f: complex, theta, phi):
    """(c_plus, c_minus, c3) of the globally regular n = 1 family.

    Each is returned as a (dtheta, dphi) pair of complex arrays.
    """
    t, p = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    fc = np.conj(f)
    c2 = np.cos(t / 2) ** 2
    s2 = np.sin(t / 2) ** 2
    e = np.exp(-1j * p)
    cp_t = e * 1j * (-1 + f * c2 + fc * s2)
    cp_p = e * (-np.cos(t) + (f * c2 - fc * s2)) * np.sin(t)
    c3_t = -1j * (f - fc) / 2 * np.sin(t)
    c3_p = (1 - (f + fc) / 2) * np.sin(t) ** 2
    return (cp_t, cp_p), (np.conj(cp_t), np.conj(cp_p)), (c3_t + 0 * t, c3_p)


def global_family_potential(f: complex, theta, phi, scale: float = FIELD_SCALE):
    """(i/2)(sigma+ c+ + sigma- c- + sigma3 c3); native scale 1."""
    (pt, pp), (mt, mp), (zt, zp) = global_coefficients(f, theta, phi)
    def build(a, b, c):
        return 0.5j * (a[..., None, None] * SIGMA_PLUS + b[..., None, None] * SIGMA_MINUS
                       + c[..., None, None] * SIGMA3)
    return scale * build(pt, mt, zt), scale * build(pp, mp, zp)


def global_monopole_f0(theta, phi, scale: float = FIELD_SCALE):
    """Regular kappa = 1 monopole, explicit matrix (i/2)[[...]]; native scale 2."""
    t, p = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    sh = t.shape
    e = np.exp(-1j * p)
    dt = _stack(sh, {(0, 1): 0.5j * e * (-2j), (1, 0): 0.5j / e * 2j})
    d = 1 - np.cos(2 * t)
    s = np.sin(2 * t)
    dp = _stack(sh, {(0, 0): 0.5j * d, (1, 1): -0.5j * d,
                     (0, 1): 0.5j * e * (-s), (1, 0): 0.5j / e * (-s)})
    r = scale / 2.0
    return r * dt, r * dp


def family_curvature(f: complex, theta, phi=0.0, n: int = 1, scale: float = FIELD_SCALE):
    """-i sigma3 (|f|^2 - 1) sin(theta) for n = +-1; native scale 2.

    For other n (forced f = 0) the abelian value -i n sigma3 (0 - 1) sin(theta).
    The n = -1 family is the n = 1 family conjugated by -i sigma1, which flips
    the sign of sigma3.
    """
    t = np.asarray(theta, float) + 0 * np.asarray(phi, float)
    if abs(n) == 1:
        amp = -1j * n * (abs(f) ** 2 - 1)
    else:
        amp = 1j * n
    return (scale / 2.0) * (amp * np.sin(t))[..., None, None] * SIGMA3


def analytic_action(f: complex, radius: float = 1.0, coupling: float = 1.0, n: int = 1) -> float:
    """pi / (2 e^2 R^2) (|f|^2 - 1)^2 for n = +-1; n^2 pi / (2 e^2 R^2) otherwise."""
    base = np.pi / (2 * coupling ** 2 * radius ** 2)
    if abs(n) == 1:
        return float(base * (abs(f) ** 2 - 1) ** 2)
    return float(base * n ** 2)


def analytic_action_gradient(f: complex, radius: float = 1.0, coupling: float = 1.0,
                             n: int = 1) -> np.ndarray:
    """Gradient of ``analytic_action`` in (Re f, Im f)."""
    if abs(n) != 1:
        return np.zeros(2)
    f = complex(f)
    k = 2 * np.pi / (coupling ** 2 * radius ** 2) * (abs(f) ** 2 - 1)
    return np.array([k * f.real, k * f.imag])
