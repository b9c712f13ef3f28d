"""CSV grid dumps and JSON summaries.

Floats are written with 17 significant digits so a dump round-trips exactly,
and JSON keys are sorted so repeated runs are byte-identical.
"""
from __future__ import annotations

import csv
import json
import math
import warnings
from pathlib import Path

import numpy as np

from .coset_geometry import interior_grid
from .connection import (IntertwinerForcedZeroWarning, assemble_potential, curvature_direct,
                         curvature_reduced, globalizing_transforms, patch_agreement, sup_norm)
from .reference import family_curvature

__all__ = ["fmt", "write_csv", "write_json", "potential_rows", "curvature_rows",
           "reduce_summary", "FLAT_TOL", "ENTRY_COLUMNS"]

FLAT_TOL = 1e-8
ENTRIES = ((0, 0), (0, 1), (1, 0), (1, 1))
ENTRY_COLUMNS = [f"{part}{i}{j}" for i, j in ENTRIES for part in ("re", "im")]


def fmt(x) -> str:
    return format(float(x), ".17g")


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def write_json(path, payload) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_clean(payload), sort_keys=True, indent=2) + "\n")
    return path


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return path


def _entries(m):
    out = []
    for i, j in ENTRIES:
        out += [m[i, j].real, m[i, j].imag]
    return out


def potential_rows(pot, grid):
    """Rows (chart, theta, phi, component, re/im of each entry) for both charts."""
    theta, phi = (np.asarray(g, float).ravel() for g in grid)
    rows = []
    for chart in (1, 2):
        a_t, a_p = pot[chart](theta, phi)
        for k in range(theta.size):
            rows.append([chart, float(theta[k]), float(phi[k]), "dtheta", *_entries(a_t[k])])
            rows.append([chart, float(theta[k]), float(phi[k]), "dphi", *_entries(a_p[k])])
    return ["chart", "theta", "phi", "component", *ENTRY_COLUMNS], rows


def curvature_rows(n, f, grid, scale):
    theta, phi = (np.asarray(g, float).ravel() for g in grid)
    rows = []
    for chart in (1, 2):
        F = curvature_reduced(n, f, chart, scale)(theta, phi)
        for k in range(theta.size):
            rows.append([chart, float(theta[k]), float(phi[k]), "dtheta^dphi", *_entries(F[k])])
    return ["chart", "theta", "phi", "component", *ENTRY_COLUMNS], rows


def reduce_summary(n: int, f: complex, grid_size: int, scale: float) -> dict:
    """Flatness, closed-form and patch checks for one (n, f)."""
    f = complex(f)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntertwinerForcedZeroWarning)
        pot = assemble_potential(n, f, scale)
    forced_zero = any(issubclass(w.category, IntertwinerForcedZeroWarning) for w in caught)
    grid = interior_grid(grid_size, grid_size)
    theta, phi = grid
    F1 = curvature_reduced(n, pot.f, 1, scale)(theta, phi)
    sup_f = sup_norm(F1)
    two_route = max(sup_norm(curvature_direct(pot, c)(theta, phi)
                             - curvature_reduced(n, pot.f, c, scale)(theta, phi)) for c in (1, 2))
    closed = sup_norm(F1 - family_curvature(pot.f, theta, phi, n, scale))
    v1, v2 = globalizing_transforms(n)
    patch = patch_agreement(pot, v1, v2, grid)
    return {
        "n": n,
        "f_re": f.real,
        "f_im": f.imag,
        "f_used_re": pot.f.real,
        "f_used_im": pot.f.imag,
        "scale": scale,
        "grid": [grid_size, grid_size],
        "intertwiner_forced_zero": forced_zero,
        "sup_F": sup_f,
        "flat": sup_f < FLAT_TOL,
        "closed_form_residual": closed,
        "direct_vs_reduced": two_route,
        "patch_residual": patch.residual,
        "patch_transforms": list(patch.transforms),
        "provenance": "F-SU2" if abs(n) == 1 else "A-SU2",
    }
