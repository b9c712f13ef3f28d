"""Yang-Mills action of the invariant family on the round S^2 and its extrema."""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from .connection import (FIELD_SCALE, assemble_potential,
                         curvature_direct, curvature_reduced, curvature_reduced_derivative)
from .forms import RoundMetric, integrate_action_density, sphere_quadrature, hodge_star_2form
from .lie_core import PAIRING_CONSTANT, pairing
from .reference import analytic_action, analytic_action_gradient

__all__ = [
    "ActionConfig", "action_value", "action_gradient", "calibrate_pairing",
    "ScanRow", "action_scan", "Extremum", "ConvergenceError", "find_extrema",
    "gradient_check",
]


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class ActionConfig:
    n: int = 1
    radius: float = 1.0
    coupling: float = 1.0
    quadrature_order: int = 64
    n_phi: int = 8
    pairing_constant: float = PAIRING_CONSTANT
    scale: float = FIELD_SCALE
    curvature: str = "reduced"  # or "direct" (finite-difference dA)

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        if not self.coupling > 0:
            raise ValueError("coupling must be positive")
        if self.quadrature_order <= 0 or self.n_phi <= 0:
            raise ValueError("quadrature order must be positive")
        if self.curvature not in ("reduced", "direct"):
            raise ValueError(f"unknown curvature route {self.curvature!r}")

    @property
    def metric(self) -> RoundMetric:
        return RoundMetric(self.radius)

    def pair(self, x, y):
        return pairing(x, y, self.pairing_constant)


def _effective_f(cfg: ActionConfig, f) -> complex:
    return complex(f) if abs(cfg.n) == 1 else 0j


def _curvature(cfg: ActionConfig, f: complex):
    if cfg.curvature == "reduced":
        return curvature_reduced(cfg.n, f, 1, cfg.scale)
    return curvature_direct(assemble_potential(cfg.n, f, cfg.scale), 1)


def action_value(cfg: ActionConfig, f) -> float:
    """(1 / 4e^2) times the integral of <F ^ *F> for the assembled family.

    For n other than +-1 the intertwiner is zero and f is ignored.
    """
    f = _effective_f(cfg, f)
    F = _curvature(cfg, f)
    total = integrate_action_density(F, cfg.metric, cfg.pair, cfg.quadrature_order, cfg.n_phi)
    return total / (4 * cfg.coupling ** 2)


def action_gradient(cfg: ActionConfig, f) -> np.ndarray:
    """Gradient of ``action_value`` in (Re f, Im f).

    dS = (1 / 4e^2) * 2 * integral of <*F, *dF>, with dF the exact derivative of
    the algebraic curvature along 1 and along i.
    """
    if abs(cfg.n) != 1:
        return np.zeros(2)
    f = complex(f)
    theta, phi, w = sphere_quadrature(cfg.quadrature_order, cfg.n_phi)
    metric = cfg.metric
    star = hodge_star_2form(curvature_reduced(cfg.n, f, 1, cfg.scale), metric)(theta, phi)
    grad = []
    for direction in (1.0, 1j):
        dF = curvature_reduced_derivative(cfg.n, f, direction, 1, cfg.scale)
        d_star = hodge_star_2form(dF, metric)(theta, phi)
        val = 2 * np.sum(w * cfg.pair(star, d_star)) * metric.radius ** 2
        grad.append(val.real / (4 * cfg.coupling ** 2))
    return np.array(grad)


def calibrate_pairing(cfg: ActionConfig | None = None) -> float:
    """Pairing constant c that makes the n=1, f=0 action equal pi / (2 e^2 R^2)."""
    cfg = replace(cfg or ActionConfig(), n=1, pairing_constant=1.0)
    raw = action_value(cfg, 0.0)
    return analytic_action(0.0, cfg.radius, cfg.coupling) / raw


@dataclass(frozen=True)
class ScanRow:
    re_f: float
    im_f: float
    abs_f: float
    S: float
    analytic_S: float
    rel_err: float


def _rel_err(value: float, exact: float) -> float:
    # absolute error where the exact action vanishes (|f| = 1)
    err = abs(value - exact)
    return err / abs(exact) if exact != 0 else err


def action_scan(cfg: ActionConfig, f_values: Iterable) -> list[ScanRow]:
    """Action and its closed-form value at each f."""
    f_values = [complex(f) for f in f_values]
    if not f_values:
        raise ValueError("empty f scan")
    rows = []
    for f in f_values:
        fe = _effective_f(cfg, f)
        s = action_value(cfg, fe)
        exact = analytic_action(fe, cfg.radius, cfg.coupling, cfg.n)
        rows.append(ScanRow(f.real, f.imag, abs(f), s, exact, _rel_err(s, exact)))
    return rows


@dataclass(frozen=True)
class Extremum:
    f: complex
    S: float
    kind: str
    iterations: int
    grad_norm: float
    seed: complex


def _classify_point(cfg, f, s0, radius=1e-3, n_dirs=8, eps=None):
    """Sign pattern of S(f + radius u) - S(f) over directions u."""
    if eps is None:
        eps = 1e-10 * analytic_action(0.0, cfg.radius, cfg.coupling)
    diffs = []
    for k in range(n_dirs):
        u = np.exp(2j * np.pi * k / n_dirs)
        diffs.append(action_value(cfg, f + radius * u) - s0)
    lo, hi = min(diffs), max(diffs)
    if lo >= -eps and hi > eps:
        return "minimum"
    if hi <= eps and lo < -eps:
        return "maximum"
    if lo < -eps and hi > eps:
        return "saddle"
    return "flat"


def find_extrema(cfg: ActionConfig, seeds: Sequence, tol: float = 1e-8,
                 mode: str = "descent", max_iter: int = 5000) -> list[Extremum]:
    """Gradient descent (or ascent) on S over (Re f, Im f) from each seed.

    Backtracking line search with an Armijo condition; the accepted step is
    reused (doubled) on the next iteration.  Converged points are classified by
    probing S on a small circle around them.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if mode not in ("descent", "ascent"):
        raise ValueError(f"unknown mode {mode!r}")
    sign = 1.0 if mode == "descent" else -1.0
    out = []
    for seed in seeds:
        x = np.array([complex(seed).real, complex(seed).imag])
        step = 1.0
        s = action_value(cfg, complex(*x))
        for it in range(max_iter + 1):
            g = action_gradient(cfg, complex(*x))
            gnorm = float(np.hypot(*g))
            if gnorm < tol:
                break
            if it == max_iter:
                raise ConvergenceError(f"no convergence from seed {seed} after {max_iter} iterations")
            step = min(2 * step, 1.0)
            while True:
                trial = x - sign * step * g
                s_trial = action_value(cfg, complex(*trial))
                if sign * (s_trial - s) <= -1e-4 * step * gnorm ** 2:
                    break
                # predicted change below the resolution of S: judge by the gradient
                if (step * gnorm ** 2 < 1e-12 * max(abs(s), 1.0)
                        and np.hypot(*action_gradient(cfg, complex(*trial))) < gnorm):
                    break
                step /= 2
                if step < 1e-16:
                    raise ConvergenceError(f"line search stalled from seed {seed}")
            x, s = trial, s_trial
        f_star = complex(*x)
        out.append(Extremum(f_star, s, _classify_point(cfg, f_star, s), it, gnorm, complex(seed)))
    return out


def gradient_check(cfg: ActionConfig, f, step: float = 1e-6) -> float:
    """Largest deviation of ``action_gradient`` from two independent gradients.

    Compared against central differences of ``action_value`` and against the
    closed-form gradient.  Deviations are relative to max(|reference|, S(0)) so
    critical points (zero gradient) stay well defined.
    """
    f = complex(f)
    g = action_gradient(cfg, f)
    fd = np.array([
        (action_value(cfg, f + step) - action_value(cfg, f - step)) / (2 * step),
        (action_value(cfg, f + 1j * step) - action_value(cfg, f - 1j * step)) / (2 * step),
    ])
    exact = analytic_action_gradient(_effective_f(cfg, f), cfg.radius, cfg.coupling, cfg.n)
    floor = analytic_action(0.0, cfg.radius, cfg.coupling)
    devs = [np.linalg.norm(g - ref) / max(np.linalg.norm(ref), floor) for ref in (fd, exact)]
    return float(max(devs))
