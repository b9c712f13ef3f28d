"""Charts, local sections and the pulled-back Maurer-Cartan form of S^2 = SU(2)/U(1).

Only this coset is instantiated.  A general reductive K/H would provide its own
``section_eval`` and ``maurer_cartan_pullback`` plus an H/M projector; the rest
of the package consumes only those three.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .forms import DEFAULT_STEP, OneForm
from .lie_core import IDENTITY, SIGMA1, SIGMA2, SIGMA3, dagger

__all__ = [
    "ChartPoint", "ChartDomainError",
    "section_eval", "maurer_cartan_pullback", "maurer_cartan_numeric",
    "split_h_m", "interior_grid", "POLE_BAND",
]

POLE_BAND = 1e-3
TWO_PI = 2 * np.pi


class ChartDomainError(ValueError):
    """Point outside the chart (its excluded pole, or angles out of range)."""


def _check_domain(chart: int, theta, phi):
    theta = np.asarray(theta, float)
    phi = np.asarray(phi, float)
    if chart == 1:
        ok = (theta >= 0) & (theta < np.pi)
    elif chart == 2:
        ok = (theta > 0) & (theta <= np.pi)
    else:
        raise ChartDomainError(f"unknown chart {chart!r}")
    ok &= (phi >= 0) & (phi < TWO_PI)
    if not np.all(ok):
        raise ChartDomainError(f"point outside chart {chart}")
    return theta, phi


@dataclass(frozen=True)
class ChartPoint:
    chart: int
    theta: float
    phi: float

    def __post_init__(self):
        _check_domain(self.chart, self.theta, self.phi)


def _exp_i(sigma, angle):
    """exp(i angle sigma) for a Pauli matrix sigma."""
    angle = np.asarray(angle, float)[..., None, None]
    return np.cos(angle) * IDENTITY + 1j * np.sin(angle) * sigma


def _section(chart, theta, phi):
    if chart == 1:
        return _exp_i(SIGMA3, -phi / 2) @ _exp_i(SIGMA2, theta / 2) @ _exp_i(SIGMA3, phi / 2)
    return _exp_i(SIGMA3, phi / 2) @ _exp_i(SIGMA2, (theta - np.pi) / 2) @ _exp_i(SIGMA3, -phi / 2)


def section_eval(chart: int, theta, phi=None) -> np.ndarray:
    """Local representative k^(chart)(theta, phi) in SU(2).

    Accepts a ``ChartPoint`` as ``theta`` for convenience.
    """
    if isinstance(theta, ChartPoint):
        p = theta
        if p.chart != chart:
            raise ChartDomainError(f"point belongs to chart {p.chart}, not {chart}")
        theta, phi = p.theta, p.phi
    theta, phi = _check_domain(chart, theta, phi)
    return _section(chart, theta, phi)


def maurer_cartan_pullback(chart: int) -> tuple[OneForm, OneForm]:
    """Closed-form (H-part, M-part) of k^-1 dk for the given chart."""
    if chart not in (1, 2):
        raise ChartDomainError(f"unknown chart {chart!r}")
    sign = 1.0 if chart == 1 else -1.0
    s1 = 0.5j * SIGMA1
    s2 = 0.5j * SIGMA2
    s3 = 0.5j * SIGMA3

    def h_phi(t, p):
        t = np.asarray(t)
        if chart == 1:
            c = 1 - np.cos(t)
        else:
            c = -(1 + np.cos(t))
        return c[..., None, None] * s3 + 0 * np.asarray(p)[..., None, None]

    def m_theta(t, p):
        p = np.asarray(p) + 0 * np.asarray(t)
        return ((-sign * np.sin(p))[..., None, None] * s1
                + np.cos(p)[..., None, None] * s2)

    def m_phi(t, p):
        st = np.sin(t)
        return ((-st * np.cos(p))[..., None, None] * s1
                + (-sign * st * np.sin(p))[..., None, None] * s2)

    h_part = OneForm.make(chart, None, h_phi)
    m_part = OneForm.make(chart, m_theta, m_phi)
    return h_part, m_part


def maurer_cartan_numeric(chart: int, theta, phi, step: float = DEFAULT_STEP):
    """k^-1 dk by central differences; returns the (dtheta, dphi) coefficients.

    Independent of the closed forms: only ``section_eval`` is used.
    """
    if not step >= 1e-10:
        raise ValueError(f"step {step!r} underflows the central difference")
    theta, phi = _check_domain(chart, theta, phi)
    if chart == 1 and np.any(theta - step < 0) or chart == 2 and np.any(theta + step > np.pi):
        raise ChartDomainError("stencil leaves the chart; move away from the pole")
    k_inv = dagger(_section(chart, theta, phi))
    d_theta = (_section(chart, theta + step, phi) - _section(chart, theta - step, phi)) / (2 * step)
    d_phi = (_section(chart, theta, phi + step) - _section(chart, theta, phi - step)) / (2 * step)
    return k_inv @ d_theta, k_inv @ d_phi


def split_h_m(x):
    """Split a traceless element into its H = C sigma3 and M = span(sigma1, sigma2) parts."""
    x = np.asarray(x, dtype=complex)
    c3 = np.trace(x @ SIGMA3, axis1=-2, axis2=-1) / 2
    h = c3[..., None, None] * SIGMA3
    return h, x - h


def interior_grid(n_theta: int = 32, n_phi: int = 32, band: float = POLE_BAND):
    """Meshgrid over 0 < theta < pi (both poles banded out) and 0 <= phi < 2 pi."""
    if n_theta < 1 or n_phi < 1:
        raise ValueError("grid must be non-empty")
    theta = np.linspace(band, np.pi - band, n_theta)
    phi = TWO_PI * np.arange(n_phi) / n_phi
    return np.meshgrid(theta, phi, indexing="ij")
