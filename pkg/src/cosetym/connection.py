"""SU(2)-invariant connections on S^2: Schur intertwiner, potentials, curvature.

Normalization
-------------
The invariant potential is ``A = scale * (tau'_n(theta_H) + phi_f(theta_M))``
with ``scale = FIELD_SCALE = 2``, curvature ``F = dA + (1/scale) [A_theta, A_phi]``
and gauge action ``A -> V^-1 A V + scale * V^-1 dV``.  With ``scale = 1`` these
are the geometric conventions (A is literally the pulled-back connection form
and F = dA + 1/2 [A ^ A]); ``scale = 2`` is the same geometry with the field
rescaled, and is the normalization in which the n = 1 family reads

    A = i [[(1 - cos t) dp, f e^{-ip}(-i dt - sin t dp)], ...]
    F = -i sigma3 (|f|^2 - 1) sin t dt ^ dp.

Every scale-dependent function takes ``scale`` explicitly.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .coset_geometry import maurer_cartan_pullback, split_h_m
from .forms import (DEFAULT_STEP, ChartMismatchError, OneForm, TwoForm, exterior_derivative,
                    wedge_bracket)
from .lie_core import (EIGEN_TOL, IDENTITY, ROOT_BASIS, SIGMA1, ad_eigen_decomposition,
                       conjugation, dagger, tau_algebra, tau_group)

__all__ = [
    "FIELD_SCALE", "Intertwiner", "IntertwinerForcedZeroWarning", "build_intertwiner",
    "InvariantPotential", "assemble_potential",
    "curvature_direct", "curvature_reduced", "curvature_reduced_derivative",
    "GaugeTransformation", "V1", "V2", "constant_gauge", "identity_gauge",
    "monopole_transition", "globalizing_transforms", "gauge_transform", "conjugate_form",
    "PatchReport", "patch_agreement", "sup_norm", "MONOPOLE_FLIP", "equivariance_residual",
]

FIELD_SCALE = 2.0

# Constant gauge matrix exchanging the n and -n monopoles.
MONOPOLE_FLIP = -1j * SIGMA1


class IntertwinerForcedZeroWarning(UserWarning):
    pass


def sup_norm(x) -> float:
    """Largest entry modulus over a sampled array (componentwise sup norm)."""
    x = np.asarray(x)
    return float(np.abs(x).max()) if x.size else 0.0


@dataclass(frozen=True)
class Intertwiner:
    """Equivariant map M -> G, stored through its images of e_alpha, e_-alpha."""

    n: int
    f: complex
    image_plus: np.ndarray = field(repr=False)
    image_minus: np.ndarray = field(repr=False)

    @property
    def is_zero(self) -> bool:
        return not (np.any(self.image_plus) or np.any(self.image_minus))

    def __call__(self, m):
        """Apply to elements of M = C e_alpha + C e_-alpha (broadcasting)."""
        m = np.asarray(m, dtype=complex)
        a = m[..., 0, 1]  # coefficient of e_alpha = sigma_+
        b = m[..., 1, 0]  # coefficient of e_-alpha = sigma_-
        return a[..., None, None] * self.image_plus + b[..., None, None] * self.image_minus


def build_intertwiner(n: int, f: complex = 0.0, tol: float = EIGEN_TOL) -> Intertwiner:
    """Most general intertwiner M -> G for tau_n, by matching ad-eigenvalues.

    M decomposes under ad(h_alpha) and G under ad(tau'_n(h_alpha)); an
    eigenline of M is sent to f times the G eigenline of the same eigenvalue
    (Schur), and to zero when there is none.  The compact real form fixes the
    image of e_-alpha to be the hermitian conjugate of the image of e_alpha,
    which makes the coefficients (f, f*).
    """
    f = complex(f)
    basis = ROOT_BASIS
    m_pairs = ad_eigen_decomposition(basis.h, [basis.e_plus, basis.e_minus], tol)
    g_h = tau_algebra(n)(basis.h)
    g_pairs = ad_eigen_decomposition(g_h, [basis.e_plus, basis.e_minus, basis.h], tol)

    lam_plus = next(lam for lam, v in m_pairs if np.allclose(v, basis.e_plus))
    matches = [v for lam, v in g_pairs if abs(lam - lam_plus) <= tol]
    if len(matches) != 1:
        # no G eigenline of weight 2: n = 0 or |n| >= 2
        if f != 0:
            warnings.warn(f"intertwiner forced zero for n={n}; f={f} ignored",
                          IntertwinerForcedZeroWarning, stacklevel=2)
        zero = np.zeros((2, 2), dtype=complex)
        return Intertwiner(n, 0j, zero, zero)
    img_plus = f * matches[0]
    img_minus = dagger(img_plus)
    return Intertwiner(n, f, img_plus, img_minus)


def equivariance_residual(phi_map: Intertwiner, alphas) -> float:
    """max |phi(Ad(h) m) - Ad(tau_n(h)) phi(m)| over h = exp(i sigma3 alpha / 2), m = e_+-alpha."""
    alphas = np.asarray(alphas, dtype=float)
    h = tau_group(1, alphas)
    g = tau_group(phi_map.n, alphas)
    worst = 0.0
    for m in (ROOT_BASIS.e_plus, ROOT_BASIS.e_minus):
        lhs = phi_map(conjugation(h, m))
        rhs = conjugation(g, phi_map(m))
        worst = max(worst, sup_norm(lhs - rhs))
    return worst


@dataclass(frozen=True)
class InvariantPotential:
    n: int
    f: complex
    scale: float
    intertwiner: Intertwiner = field(repr=False)
    charts: dict = field(repr=False)

    def __getitem__(self, chart: int) -> OneForm:
        return self.charts[chart]


def _potential_form(chart: int, tau_prime, phi_map: Intertwiner, scale: float) -> OneForm:
    theta_h, theta_m = maurer_cartan_pullback(chart)
    return (theta_h.mapped(tau_prime) + theta_m.mapped(phi_map)).scaled(scale)


def assemble_potential(n: int, f: complex = 0.0, scale: float = FIELD_SCALE) -> InvariantPotential:
    """A = scale * (tau'_n(theta_H) + phi(theta_M)) on both charts (no M4 part)."""
    phi_map = build_intertwiner(n, f)
    tau_prime = tau_algebra(n)
    charts = {c: _potential_form(c, tau_prime, phi_map, scale) for c in (1, 2)}
    return InvariantPotential(n, phi_map.f, scale, phi_map, charts)


def curvature_direct(a: InvariantPotential | OneForm, chart: int | None = None,
                     step: float = DEFAULT_STEP, scale: float | None = None) -> TwoForm:
    """F = dA + (1/scale) [A_theta, A_phi] with a central-difference d."""
    if isinstance(a, InvariantPotential):
        form = a[chart]
        scale = a.scale if scale is None else scale
    else:
        form = a
        scale = FIELD_SCALE if scale is None else scale
    return exterior_derivative(form, step) + wedge_bracket(form, form).scaled(0.5 / scale)


def _m_bracket(chart):
    """Coefficient of [theta_M ^ theta_M] split into (H, M) parts."""
    _, theta_m = maurer_cartan_pullback(chart)
    full = wedge_bracket(theta_m, theta_m)

    def parts(t, p):
        return split_h_m(full(t, p))

    return theta_m, parts


def curvature_reduced(n: int, f: complex = 0.0, chart: int = 1,
                      scale: float = FIELD_SCALE) -> TwoForm:
    """Algebraic curvature of the invariant potential, term by term.

    F = (1/2)[phi(theta_M) ^ phi(theta_M)] - (1/2) phi([theta_M ^ theta_M]_M)
        - (1/2) tau'([theta_M ^ theta_M]_H)
    (no four-dimensional field, so the F and D phi terms vanish), times ``scale``.
    """
    phi_map = build_intertwiner(n, f)
    tau_prime = tau_algebra(n)
    theta_m, parts = _m_bracket(chart)
    phi_theta = theta_m.mapped(phi_map)
    quad = wedge_bracket(phi_theta, phi_theta)

    def coeff(t, p):
        mm_h, mm_m = parts(t, p)
        total = 0.5 * quad(t, p) - 0.5 * phi_map(mm_m) - 0.5 * tau_prime(mm_h)
        return scale * total

    return TwoForm(chart, coeff)


def curvature_reduced_derivative(n: int, f: complex, df: complex, chart: int = 1,
                                 scale: float = FIELD_SCALE) -> TwoForm:
    """Directional derivative of ``curvature_reduced`` along f -> f + t df.

    f enters through phi only (real-linearly), so the derivative is exact:
    (1/2)([phi_df ^ phi_f] + [phi_f ^ phi_df]) - (1/2) phi_df([theta_M ^ theta_M]_M).
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntertwinerForcedZeroWarning)
        phi_f = build_intertwiner(n, f)
        phi_d = build_intertwiner(n, df)
    theta_m, parts = _m_bracket(chart)
    a = theta_m.mapped(phi_f)
    b = theta_m.mapped(phi_d)
    cross = wedge_bracket(b, a) + wedge_bracket(a, b)

    def coeff(t, p):
        _, mm_m = parts(t, p)
        return scale * (0.5 * cross(t, p) - 0.5 * phi_d(mm_m))

    return TwoForm(chart, coeff)


@dataclass(frozen=True)
class GaugeTransformation:
    """SU(2)-valued function on one chart."""

    chart: int
    value: Callable[[np.ndarray, np.ndarray], np.ndarray]
    label: str = ""

    def __call__(self, theta, phi):
        return self.value(np.asarray(theta, float), np.asarray(phi, float))


def _v1(t, p):
    c = np.cos(t / 2)
    s = np.sin(t / 2)
    out = np.empty(np.broadcast(t, p).shape + (2, 2), dtype=complex)
    out[..., 0, 0] = c
    out[..., 0, 1] = np.exp(-1j * p) * s
    out[..., 1, 0] = np.exp(1j * p) * s
    out[..., 1, 1] = -c
    return 1j * out


def _v2(t, p):
    c = np.cos(t / 2)
    s = np.sin(t / 2)
    out = np.empty(np.broadcast(t, p).shape + (2, 2), dtype=complex)
    out[..., 0, 0] = np.exp(1j * p) * c
    out[..., 0, 1] = s
    out[..., 1, 0] = s
    out[..., 1, 1] = -np.exp(-1j * p) * c
    return 1j * out


V1 = GaugeTransformation(1, _v1, "V1")
V2 = GaugeTransformation(2, _v2, "V2")


def constant_gauge(chart: int, matrix, label: str = "") -> GaugeTransformation:
    m = np.array(matrix, dtype=complex)

    def value(t, p):
        shape = np.broadcast(t, p).shape
        return np.broadcast_to(m, shape + (2, 2)).copy()

    return GaugeTransformation(chart, value, label or "constant")


def identity_gauge(chart: int) -> GaugeTransformation:
    return constant_gauge(chart, IDENTITY, "identity")


def monopole_transition(n: int) -> GaugeTransformation:
    """exp(i n sigma3 phi) on chart 2; maps the chart-2 potential onto chart 1."""
    return GaugeTransformation(2, lambda t, p: tau_group(2 * n, p + 0 * t),
                               f"exp(i {n} sigma3 phi)")


def globalizing_transforms(n: int) -> tuple[GaugeTransformation, GaugeTransformation]:
    """Chart transformations after which both chart potentials coincide.

    n = 1 uses V1, V2; n = -1 their conjugates by the monopole flip; any other
    n uses the identity on chart 1 and the transition function on chart 2.
    """
    if n == 1:
        return V1, V2
    if n == -1:
        s = MONOPOLE_FLIP
        s_inv = np.linalg.inv(s)
        return (GaugeTransformation(1, lambda t, p: s_inv @ _v1(t, p) @ s, "S^-1 V1 S"),
                GaugeTransformation(2, lambda t, p: s_inv @ _v2(t, p) @ s, "S^-1 V2 S"))
    return identity_gauge(1), monopole_transition(n)


def gauge_transform(a: OneForm, v: GaugeTransformation, step: float = DEFAULT_STEP,
                    scale: float = FIELD_SCALE) -> OneForm:
    """A -> V^-1 A V + scale * V^-1 dV, with dV by central differences."""
    if a.chart != v.chart:
        raise ChartMismatchError(f"form on chart {a.chart}, transformation on chart {v.chart}")

    def piece(coeff, axis):
        def out(t, p):
            g = v(t, p)
            g_inv = np.linalg.inv(g)
            if axis == 0:
                dg = (v(t + step, p) - v(t - step, p)) / (2 * step)
            else:
                dg = (v(t, p + step) - v(t, p - step)) / (2 * step)
            return g_inv @ coeff(t, p) @ g + scale * (g_inv @ dg)
        return out

    return OneForm(a.chart, piece(a.dtheta, 0), piece(a.dphi, 1))


def conjugate_form(a: OneForm, s) -> OneForm:
    """Constant gauge transformation A -> S^-1 A S."""
    s = np.asarray(s, dtype=complex)
    return a.mapped(lambda x: conjugation(np.linalg.inv(s), x))


@dataclass(frozen=True)
class PatchReport:
    residual: float
    n_points: int
    transforms: tuple[str, str]


def patch_agreement(a: InvariantPotential, v1: GaugeTransformation, v2: GaugeTransformation,
                    grid: Iterable, step: float = DEFAULT_STEP) -> PatchReport:
    """Sup-norm difference of the transformed chart potentials over an overlap grid."""
    theta, phi = (np.asarray(g, float) for g in grid)
    if theta.size == 0:
        raise ValueError("empty overlap grid")
    if np.any(theta <= 0) or np.any(theta >= np.pi):
        raise ValueError("grid leaves the overlap 0 < theta < pi")
    a1 = gauge_transform(a[1], v1, step, a.scale)(theta, phi)
    a2 = gauge_transform(a[2], v2, step, a.scale)(theta, phi)
    residual = max(sup_norm(a1[0] - a2[0]), sup_norm(a1[1] - a2[1]))
    return PatchReport(residual, int(theta.size), (v1.label, v2.label))
