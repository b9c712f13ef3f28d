"""Invariant suites behind ``cosetym verify``.

Each check measures one residual and compares it with a tolerance; the
tolerances can be overridden by name.  Checks are deterministic (fixed seeds).
"""
from __future__ import annotations

import warnings
from dataclasses import asdict, dataclass, replace
from typing import Callable

import numpy as np

from . import bundles, lie_core
from .abelian import AbelianGroup, Z, Z2
from .action import ActionConfig, action_scan, action_value, calibrate_pairing, find_extrema, gradient_check
from .coset_geometry import interior_grid, maurer_cartan_numeric, maurer_cartan_pullback, split_h_m
from .connection import (FIELD_SCALE, MONOPOLE_FLIP, IntertwinerForcedZeroWarning, assemble_potential,
                         build_intertwiner, conjugate_form, curvature_direct, curvature_reduced,
                         equivariance_residual, globalizing_transforms, patch_agreement, sup_norm,
                         gauge_transform)
from .forms import (RoundMetric, ZeroForm, exterior_derivative, integrate_action_density,
                    integrate_two_form, wedge_bracket)
from .lie_core import (ROOT_BASIS, SIGMA3, bracket, pairing, tau_algebra, tau_group,
                       ad_eigen_decomposition)
from .reference import analytic_action, family_curvature, global_monopole_f0, maurer_cartan_closed
from .surface_complex import (PolygonComplex, brute_force_quotient_profile, cellular_cohomology,
                              order_profile, surface_word)

__all__ = ["Check", "SUITES", "DEFAULT_TOLERANCES", "run_suite", "run"]


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    residual: float
    tol: float
    passed: bool
    provenance: str = ""

    def to_dict(self):
        return asdict(self)


DEFAULT_TOLERANCES = {
    "jacobi": 1e-12,
    "root_relations": 1e-12,
    "tau_homomorphism": 1e-12,
    "tau_differential": 1e-6,
    "ad_eigenvalues": 1e-9,
    "mc_closed_vs_numeric": 1e-7,
    "hm_split": 1e-10,
    "structure_equation": 1e-6,
    "dd_zero": 1e-5,
    "quadrature_doubling": 1e-12,
    "monopole_flux": 1e-12,
    "hodge_isometry": 1e-12,
    "equivariance": 1e-10,
    "direct_vs_reduced": 1e-7,
    "flatness": 1e-8,
    "curvature_closed_form": 1e-7,
    "patch_agreement": 1e-8,
    "regular_monopole": 1e-8,
    "conjugation_n_to_minus_n": 1e-12,
    "gauge_covariance": 1e-7,
    "calibration": 1e-12,
    "action_formula": 1e-8,
    "scaling_laws": 1e-12,
    "gradient": 1e-5,
    "extrema": 1e-6,
    "golden_set": 0.0,
    "quotient_vs_brute_force": 0.0,
    "cohomology_vs_cw": 0.0,
    "classify_vs_sphere": 0.0,
}

# equation tag each check exercises (reported as the record's provenance)
PROVENANCE = {
    "jacobi": "ad-cG", "root_relations": "h-e", "tau_homomorphism": "SU2-hom",
    "tau_differential": "SU2-hom", "ad_eigenvalues": "M-decomp,G-decomp",
    "mc_closed_vs_numeric": "theta1,theta2", "hm_split": "theta1,theta2",
    "structure_equation": "theta1,theta2", "dd_zero": "F-form", "quadrature_doubling": "YM-form",
    "monopole_flux": "F-SU2", "hodge_isometry": "YM-form", "equivariance": "phi-equiv",
    "direct_vs_reduced": "F-repr", "flatness": "F-SU2", "curvature_closed_form": "F-SU2",
    "patch_agreement": "A-SU2-gen", "regular_monopole": "A-SU2-0",
    "conjugation_n_to_minus_n": "A-SU2", "gauge_covariance": "A-tr", "calibration": "S-SU2",
    "action_formula": "S-SU2", "scaling_laws": "S-SU2", "gradient": "S-SU2", "extrema": "S-SU2",
    "golden_set": "HBH", "quotient_vs_brute_force": "M-noncomp",
    "cohomology_vs_cw": "M-comp,M-noncomp", "classify_vs_sphere": "B-Sn",
}

GRID = 32


def _grid():
    return interior_grid(GRID, GRID)


# -- lie ---------------------------------------------------------------------

def _random_su2(rng, k):
    c = rng.normal(size=(k, 3))
    return np.einsum("kj,jab->kab", 1j * c, np.stack([lie_core.SIGMA1, lie_core.SIGMA2, SIGMA3]))


def _lie(ctx):
    rng = np.random.default_rng(0)
    x, y, z = (_random_su2(rng, 100) for _ in range(3))
    yield "jacobi", sup_norm(bracket(x, bracket(y, z)) + bracket(y, bracket(z, x))
                             + bracket(z, bracket(x, y)))
    yield "root_relations", max(ROOT_BASIS.residuals().values())
    a = np.linspace(-7, 7, 29)
    aa, bb = np.meshgrid(a, a)
    yield "tau_homomorphism", max(sup_norm(tau_group(n, aa) @ tau_group(n, bb) - tau_group(n, aa + bb))
                                  for n in range(-3, 4))
    h = 1e-6
    yield "tau_differential", max(
        sup_norm((tau_group(n, h) - tau_group(n, -h)) / (2 * h) - tau_algebra(n)(0.5j * SIGMA3))
        for n in range(-3, 4))
    worst = 0.0
    m = sorted(lam for lam, _ in ad_eigen_decomposition(ROOT_BASIS.h, [ROOT_BASIS.e_plus, ROOT_BASIS.e_minus]))
    worst = max(worst, abs(m[0] + 2), abs(m[1] - 2))
    for n in range(-3, 4):
        g = sorted(lam for lam, _ in ad_eigen_decomposition(
            tau_algebra(n)(ROOT_BASIS.h), [ROOT_BASIS.e_plus, ROOT_BASIS.e_minus, ROOT_BASIS.h]))
        worst = max(worst, *(abs(u - v) for u, v in zip(g, sorted([0, 2 * n, -2 * n]))))
    yield "ad_eigenvalues", worst


# -- coset ---------------------------------------------------------------------

def _coset(ctx):
    theta, phi = _grid()
    worst_mc = worst_split = worst_struct = 0.0
    for chart in (1, 2):
        num_t, num_p = maurer_cartan_numeric(chart, theta, phi, 1e-5)
        h, m = maurer_cartan_pullback(chart)
        cl_t, cl_p = (h + m)(theta, phi)
        worst_mc = max(worst_mc, sup_norm(num_t - cl_t), sup_norm(num_p - cl_p))
        ref_t, ref_p = maurer_cartan_closed(chart, theta, phi)
        worst_mc = max(worst_mc, sup_norm(num_t - ref_t), sup_norm(num_p - ref_p))
        for coeff in (num_t, num_p):
            hh, mm = split_h_m(coeff)
            worst_split = max(worst_split, sup_norm(hh + mm - coeff),
                              sup_norm(np.trace(mm @ SIGMA3, axis1=-2, axis2=-1)))
        theta_full = h + m
        struct = exterior_derivative(theta_full, 1e-5) + wedge_bracket(theta_full, theta_full).scaled(0.5)
        worst_struct = max(worst_struct, sup_norm(struct(theta, phi)))
    yield "mc_closed_vs_numeric", worst_mc
    yield "hm_split", worst_split
    yield "structure_equation", worst_struct


# -- forms -------------------------------------------------------------------

def _forms(ctx):
    theta, phi = _grid()
    scalar = ZeroForm(1, lambda t, p: (np.sin(2 * t) * np.cos(3 * p) + t ** 2)[..., None, None]
                      * np.eye(2))
    dd = exterior_derivative(exterior_derivative(scalar, 1e-4), 1e-4)
    yield "dd_zero", sup_norm(dd(theta, phi))
    F0 = curvature_reduced(1, 0.0, 1)
    metric = RoundMetric(1.0)
    yield "quadrature_doubling", abs(integrate_action_density(F0, metric, None, 64)
                                     - integrate_action_density(F0, metric, None, 128))
    # F0 = (scale / 2) i sigma3 sin(theta): flux 4 pi (scale / 2) i along sigma3, at any order
    want = 4j * np.pi * FIELD_SCALE / 2
    yield "monopole_flux", max(abs(np.trace(integrate_two_form(F0, order) @ SIGMA3) / 2 - want)
                               for order in (16, 64, 128))
    F = curvature_reduced(1, 0.3 + 0.4j, 1)(theta, phi)
    r = 1.7
    star = F / (r ** 2 * np.sin(theta))[..., None, None]
    lhs = pairing(F, F) / (r ** 2 * np.sin(theta))  # <F ^ *F> coefficient
    rhs = pairing(star, star) * r ** 2 * np.sin(theta)
    yield "hodge_isometry", sup_norm(lhs - rhs)


# -- connection ----------------------------------------------------------------

def _connection(ctx):
    theta, phi = _grid()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntertwinerForcedZeroWarning)
        alphas = np.random.default_rng(1).uniform(0, 4 * np.pi, 64)
        yield "equivariance", max(equivariance_residual(build_intertwiner(n, 0.6 - 0.2j), alphas)
                                  for n in (-1, 1))
        worst = 0.0
        for n in (-1, 0, 1, 2):
            for f in (0, 1, 0.5 + 0.5j):
                pot = assemble_potential(n, f)
                for c in (1, 2):
                    worst = max(worst, sup_norm(curvature_direct(pot, c)(theta, phi)
                                                - curvature_reduced(n, f, c)(theta, phi)))
        yield "direct_vs_reduced", worst
        yield "flatness", max(sup_norm(curvature_direct(assemble_potential(n, np.exp(2j * np.pi * k / 8)), c)
                                       (theta, phi))
                              for n in (-1, 1) for k in range(8) for c in (1, 2))
        yield "curvature_closed_form", max(
            sup_norm(curvature_direct(assemble_potential(1, f), 1)(theta, phi)
                     - family_curvature(f, theta, phi))
            for f in (0, 0.5, 1, 0.3 + 0.4j))
        worst = 0.0
        for n in (-1, 1, 2, 3):
            for f in (0, 0.5, 1, 0.3 + 0.4j, -1.2j):
                v1, v2 = globalizing_transforms(n)
                worst = max(worst, patch_agreement(assemble_potential(n, f), v1, v2, (theta, phi)).residual)
        yield "patch_agreement", worst
        v1, _ = globalizing_transforms(1)
        a_t, a_p = gauge_transform(assemble_potential(1, 0)[1], v1)(theta, phi)
        r_t, r_p = global_monopole_f0(theta, phi)
        yield "regular_monopole", max(sup_norm(a_t - r_t), sup_norm(a_p - r_p))
        worst = 0.0
        for n in (1, 2, 3):
            for c in (1, 2):
                got = conjugate_form(assemble_potential(n)[c], MONOPOLE_FLIP)(theta, phi)
                want = assemble_potential(-n)[c](theta, phi)
                worst = max(worst, sup_norm(got[0] - want[0]), sup_norm(got[1] - want[1]))
        yield "conjugation_n_to_minus_n", worst
        # F -> V^-1 F V under A -> V^-1 A V + scale V^-1 dV
        pot = assemble_potential(1, 0.3 + 0.4j)
        v1, _ = globalizing_transforms(1)
        f_new = curvature_direct(gauge_transform(pot[1], v1), scale=pot.scale)(theta, phi)
        g = v1(theta, phi)
        f_old = curvature_direct(pot, 1)(theta, phi)
        yield "gauge_covariance", sup_norm(f_new - np.linalg.inv(g) @ f_old @ g)


# -- action --------------------------------------------------------------------

def _action(ctx):
    c = ctx.get("pairing_constant")
    cfg = ActionConfig() if c is None else ActionConfig(pairing_constant=c)
    yield "calibration", abs(cfg.pairing_constant - calibrate_pairing(cfg))
    rng = np.random.default_rng(2)
    fs = np.sqrt(rng.uniform(0, 4, 20)) * np.exp(2j * np.pi * rng.uniform(size=20))
    worst = 0.0
    for radius in (0.5, 1.0, 2.0):
        for coupling in (0.5, 1.0, 2.0):
            rows = action_scan(replace(cfg, radius=radius, coupling=coupling), fs)
            worst = max(worst, max(r.rel_err for r in rows))
    yield "action_formula", worst
    base = action_value(cfg, 0.4 + 0.1j)
    worst = 0.0
    for radius in (0.5, 2.0, 3.0):
        for coupling in (0.5, 2.0):
            s = action_value(replace(cfg, radius=radius, coupling=coupling), 0.4 + 0.1j)
            worst = max(worst, abs(s * radius ** 2 * coupling ** 2 / base - 1))
    yield "scaling_laws", worst
    yield "gradient", max(gradient_check(cfg, f) for f in (0.7 + 0.2j, 0, 1, 1.5j))
    desc = find_extrema(cfg, [0.9, 1.6j, -0.3 + 0.2j])
    asc = find_extrema(cfg, [0.05], mode="ascent")
    s0 = analytic_action(0, cfg.radius, cfg.coupling)
    yield "extrema", max([abs(abs(e.f) - 1) for e in desc] + [abs(asc[0].f), abs(asc[0].S / s0 - 1)]
                         + [0.0 if e.kind == "minimum" else 1.0 for e in desc]
                         + [0.0 if asc[0].kind == "maximum" else 1.0])


# -- bundles -------------------------------------------------------------------

GOLDEN = [
    ("SU(2)", "sphere2", "trivial", "B-H2"),
    ("U(1)", "sphere2", "Z", "B-H2"),
    ("U(1)", "orientable:0", "Z", "B-H2"),
    ("U(1)", "orientable:1", "Z", "B-H2"),
    ("U(1)", "orientable:2", "Z", "B-H2"),
    ("SO(3)", "orientable:1", "Z2", "B-H2"),
    ("SO(3)", "orientable:2", "Z2", "B-H2"),
    ("SO(3)", "nonorientable:1", "Z2", "B-H2"),
    ("SO(3)", "nonorientable:2", "Z2", "B-H2"),
    ("SU(3)", "orientable:2", "trivial", "B-H2"),
    ("Sp(2)", "nonorientable:3", "trivial", "B-H2"),
    ("discrete:Z2", "sphere2", "trivial", "B-H1a"),
    ("U(1)", "sphere:2", "Z", "B-H2"),
    ("U(3)", "sphere:1", "trivial", "B-Sn"),
]


def _bundles(ctx):
    bad = 0
    for g, s, want, method in GOLDEN:
        r = bundles.classify(bundles.parse_group(g), bundles.parse_surface(s))
        bad += int(r.result is None or r.result.label() != want or r.method != method)
    mixed = bundles.classify(bundles.GroupDescriptor.explicit(Z2, Z), bundles.SurfaceDescriptor("orientable", 1))
    bad += int(mixed.method != "HBH-sequence" or mixed.resolved)
    yield "golden_set", float(bad)

    bad = 0
    for pi in _small_groups(64):
        bad += int(brute_force_quotient_profile(pi, 2) != order_profile(pi.mod_multiples(2)))
    yield "quotient_vs_brute_force", float(bad)

    bad = 0
    surfaces = [bundles.SurfaceDescriptor.sphere(2)] + [
        bundles.SurfaceDescriptor(k, g) for k in ("orientable", "nonorientable") for g in (1, 2, 3)]
    coeffs = [Z, Z2, AbelianGroup.parse("Z4"), AbelianGroup.parse("Z3"), AbelianGroup.parse("Z+Z6")]
    for m in surfaces:
        cx = PolygonComplex.from_word(surface_word(m.kind, m.genus))
        for pi in coeffs:
            for q in (1, 2):
                bad += int(bundles.surface_cohomology(m, pi, q) != cellular_cohomology(cx, pi, q))
    yield "cohomology_vs_cw", float(bad)

    bad = 0
    for name in ("SU(2)", "SU(5)", "Sp(3)", "SO(3)", "SO(7)", "U(1)", "U(4)"):
        g = bundles.parse_group(name)
        via_surface = bundles.classify(g, bundles.SurfaceDescriptor.sphere(2)).result
        bad += int(via_surface != bundles.classify_sphere(g, 2))
    yield "classify_vs_sphere", float(bad)


def _small_groups(max_order):
    out = []
    for orders in ([2], [3], [4], [6], [8], [9], [12], [2, 2], [2, 4], [2, 6], [3, 3], [2, 2, 2],
                   [4, 4], [2, 8], [2, 2, 4], [64], [2, 2, 2, 2, 2, 2], [4, 16], [3, 9]):
        g = AbelianGroup.from_cyclic(orders)
        if g.order <= max_order:
            out.append(g)
    return out


SUITES: dict[str, Callable] = {
    "lie": _lie,
    "coset": _coset,
    "forms": _forms,
    "connection": _connection,
    "action": _action,
    "bundles": _bundles,
}


def run_suite(name: str, tolerances: dict | None = None, **ctx) -> list[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    tol = {**DEFAULT_TOLERANCES, **(tolerances or {})}
    checks = []
    for check, residual in list(SUITES[name](ctx)):
        residual = float(residual)
        checks.append(Check(name, check, residual, tol[check], bool(residual <= tol[check]),
                            PROVENANCE[check]))
    return checks


def run(suite: str = "all", tolerances: dict | None = None, **ctx) -> list[Check]:
    names = list(SUITES) if suite == "all" else [suite]
    unknown = set(tolerances or {}) - set(DEFAULT_TOLERANCES)
    if unknown:
        raise KeyError(f"unknown tolerance names: {sorted(unknown)}")
    out = []
    for name in names:
        out += run_suite(name, tolerances, **ctx)
    return out
