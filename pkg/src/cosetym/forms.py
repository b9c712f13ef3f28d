"""Lie-algebra valued differential forms on the charted two-sphere.

Forms are chart-local and carried as coefficient callables of ``(theta, phi)``
returning arrays of shape ``(..., 2, 2)``.  A global object is a pair of chart
forms plus a patch-agreement check (see :mod:`cosetym.connection`).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .lie_core import PAIRING_CONSTANT, bracket, pairing

Coefficient = Callable[[np.ndarray, np.ndarray], np.ndarray]

DEFAULT_STEP = 1e-5
POLE_TOL = 1e-12


class ChartMismatchError(ValueError):
    pass


def _zero_coeff(theta, phi):
    shape = np.broadcast(np.asarray(theta), np.asarray(phi)).shape
    return np.zeros(shape + (2, 2), dtype=complex)


def _as_coeff(c) -> Coefficient:
    if callable(c):
        return c
    const = np.asarray(c, dtype=complex)

    def coeff(theta, phi):
        shape = np.broadcast(np.asarray(theta), np.asarray(phi)).shape
        return np.broadcast_to(const, shape + (2, 2)).copy()

    return coeff


@dataclass(frozen=True)
class ZeroForm:
    """Algebra-valued (or scalar times identity) function on a chart."""

    chart: int
    value: Coefficient

    def __call__(self, theta, phi):
        return self.value(np.asarray(theta, float), np.asarray(phi, float))


@dataclass(frozen=True)
class OneForm:
    """A = A_theta dtheta + A_phi dphi on one chart."""

    chart: int
    dtheta: Coefficient
    dphi: Coefficient

    @classmethod
    def make(cls, chart: int, dtheta=None, dphi=None) -> "OneForm":
        return cls(chart,
                   _zero_coeff if dtheta is None else _as_coeff(dtheta),
                   _zero_coeff if dphi is None else _as_coeff(dphi))

    def __call__(self, theta, phi):
        theta = np.asarray(theta, float)
        phi = np.asarray(phi, float)
        return self.dtheta(theta, phi), self.dphi(theta, phi)

    def __add__(self, other: "OneForm") -> "OneForm":
        _same_chart(self, other)
        return OneForm(self.chart,
                       lambda t, p: self.dtheta(t, p) + other.dtheta(t, p),
                       lambda t, p: self.dphi(t, p) + other.dphi(t, p))

    def __sub__(self, other: "OneForm") -> "OneForm":
        return self + other.scaled(-1.0)

    def scaled(self, s: complex) -> "OneForm":
        return OneForm(self.chart,
                       lambda t, p: s * self.dtheta(t, p),
                       lambda t, p: s * self.dphi(t, p))

    def mapped(self, fn: Callable[[np.ndarray], np.ndarray]) -> "OneForm":
        """Apply a (linear) map on the algebra to both coefficients."""
        return OneForm(self.chart,
                       lambda t, p: fn(self.dtheta(t, p)),
                       lambda t, p: fn(self.dphi(t, p)))


@dataclass(frozen=True)
class TwoForm:
    """F = coeff dtheta ^ dphi on one chart."""

    chart: int
    coeff: Coefficient

    def __call__(self, theta, phi):
        return self.coeff(np.asarray(theta, float), np.asarray(phi, float))

    def __add__(self, other: "TwoForm") -> "TwoForm":
        _same_chart(self, other)
        return TwoForm(self.chart, lambda t, p: self.coeff(t, p) + other.coeff(t, p))

    def scaled(self, s: complex) -> "TwoForm":
        return TwoForm(self.chart, lambda t, p: s * self.coeff(t, p))

    def mapped(self, fn) -> "TwoForm":
        return TwoForm(self.chart, lambda t, p: fn(self.coeff(t, p)))


@dataclass(frozen=True)
class RoundMetric:
    """gamma = R^2 (dtheta^2 + sin^2 theta dphi^2)."""

    radius: float = 1.0

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")

    def sqrt_det(self, theta):
        return self.radius ** 2 * np.sin(theta)


def _same_chart(a, b):
    if a.chart != b.chart:
        raise ChartMismatchError(f"chart {a.chart} vs chart {b.chart}")


def wedge_bracket(a: OneForm, b: OneForm) -> TwoForm:
    """[a ^ b] with coefficient [a_theta, b_phi] - [a_phi, b_theta].

    With this normalization (1/2)[A ^ A] has coefficient [A_theta, A_phi].
    """
    _same_chart(a, b)

    def coeff(t, p):
        at, ap = a(t, p)
        bt, bp = b(t, p)
        return bracket(at, bp) - bracket(ap, bt)

    return TwoForm(a.chart, coeff)


def _central(fn, t, p, step, axis):
    if axis == 0:
        return (fn(t + step, p) - fn(t - step, p)) / (2 * step)
    return (fn(t, p + step) - fn(t, p - step)) / (2 * step)


def exterior_derivative(form, step: float = DEFAULT_STEP):
    """Central-difference d of a ZeroForm (-> OneForm) or OneForm (-> TwoForm)."""
    if not step > 0:
        raise ValueError("step must be positive")
    if isinstance(form, ZeroForm):
        return OneForm(form.chart,
                       lambda t, p: _central(form.value, t, p, step, 0),
                       lambda t, p: _central(form.value, t, p, step, 1))
    if isinstance(form, OneForm):
        return TwoForm(form.chart,
                       lambda t, p: (_central(form.dphi, t, p, step, 0)
                                     - _central(form.dtheta, t, p, step, 1)))
    raise TypeError(f"cannot differentiate {type(form).__name__}")


def hodge_star_2form(f: TwoForm, metric: RoundMetric) -> Coefficient:
    """*(c dtheta ^ dphi) = c / (R^2 sin theta), as a 0-form."""

    def star(theta, phi):
        theta = np.asarray(theta, float)
        s = metric.sqrt_det(theta)
        if np.any(np.abs(np.sin(theta)) <= POLE_TOL):
            raise ValueError("Hodge star evaluated at a pole")
        return f(theta, phi) / np.asarray(s)[..., None, None]

    return star


@lru_cache(maxsize=32)
def sphere_quadrature(order: int = 64, n_phi: int = 16):
    """Gauss-Legendre nodes in u = cos(theta) times a periodic trapezoid in phi.

    Returns ``(theta, phi, weights)`` flattened over the product grid; the
    weights integrate g du dphi (not g sin(theta) dtheta dphi).
    """
    if order <= 0 or n_phi <= 0:
        raise ValueError("quadrature order must be positive")
    u, wu = np.polynomial.legendre.leggauss(order)
    phi = 2 * np.pi * np.arange(n_phi) / n_phi
    theta = np.arccos(u)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    ww = np.outer(wu, np.full(n_phi, 2 * np.pi / n_phi))
    out = tt.ravel(), pp.ravel(), ww.ravel()
    for a in out:
        a.flags.writeable = False
    return out


def integrate_action_density(f: TwoForm, metric: RoundMetric,
                             pair: Callable = None, quadrature_order: int = 64,
                             n_phi: int = 16) -> float:
    """Integral over S^2 of <F ^ *F>; the 1/(4 e^2) prefactor is left to the caller.

    <F ^ *F> = <*F, *F> sqrt(det gamma) dtheta dphi = R^2 <*F, *F> du dphi, so
    after u = cos(theta) the monopole integrands are polynomial in u.
    """
    if pair is None:
        def pair(x, y):
            return pairing(x, y, PAIRING_CONSTANT)
    theta, phi, w = sphere_quadrature(quadrature_order, n_phi)
    star = hodge_star_2form(f, metric)(theta, phi)
    density = pair(star, star) * metric.radius ** 2
    total = np.sum(w * density)
    if abs(total.imag) > 1e-9 * max(1.0, abs(total.real)):
        raise ValueError(f"action density is not real (imag part {total.imag:.3e})")
    return float(total.real)


def integrate_two_form(f: TwoForm, quadrature_order: int = 64, n_phi: int = 16) -> np.ndarray:
    """Integral over S^2 of the matrix-valued coefficient c in c dtheta ^ dphi.

    With u = cos(theta), dtheta dphi = du dphi / sin(theta).
    """
    theta, phi, w = sphere_quadrature(quadrature_order, n_phi)
    c = f(theta, phi) / np.sin(theta)[..., None, None]
    return np.einsum("k,kij->ij", w, c)
