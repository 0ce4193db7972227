r"""Convergence experiments and machine-readable result tables.

Four experiments drive the library end to end:

* ``ellipsoid``: full-space integral with ellipsoidal phase against its
  closed form; radial rule sizes m = 2..8 reproduce the asymptotic error
  orders, and a reduced outer rule exposes the outer-integration plateau.
* ``duct``: the rectangle with the singular acoustic kernel, in three
  modes: the corner decomposition of the boundary term, the direct
  Cartesian descent (the documented failure), and the direct decomposition
  with the central term repaired by the polar rule.
* ``sphere``: the high-frequency sphere-scattering kernel; emits the local
  surface-field approximation -1/w0 and self-convergence diagnostics (the
  analytic reference would require a Mie-series evaluation, which is out of
  scope, so the reference column stays empty).
* ``example1``: the quarter-plane sanity case with known value
  -pi/(2 w^2), plus the stagnating direct origin term for contrast.

Every run is deterministic: identical inputs produce bit-identical tables.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import scenes
from .oracle import acoustics_reference
from .polar import (
    OuterPlan,
    _central_grid,
    _outer_grid,
    integrate_unbounded,
    rectangle_corner_contributions,
    rectangle_direct_terms,
)
from .rules import trapezoid_periodic
from .specfun import ellipsoid_reference

__all__ = [
    "ExperimentRow",
    "SlopeFit",
    "fit_slope",
    "run_ellipsoid",
    "run_duct",
    "run_sphere_scatter",
    "run_example1",
    "rows_to_csv",
    "rows_to_json",
    "sphere_table",
    "ellipsoid_inner_grid",
    "ERROR_FLOOR",
]

ERROR_FLOOR = 1e-14  # machine-saturated rows are excluded from slope fits


@dataclass(frozen=True)
class ExperimentRow:
    """One (omega, approximation, reference) record of a convergence table."""

    omega: float
    approx: complex
    reference: complex | None = None
    params: dict = field(default_factory=dict)

    @property
    def abs_err(self) -> float | None:
        if self.reference is None:
            return None
        return abs(self.approx - self.reference)

    @property
    def rel_err(self) -> float | None:
        if self.reference is None or abs(self.reference) == 0:
            return None
        return abs(self.approx - self.reference) / abs(self.reference)


@dataclass(frozen=True)
class SlopeFit:
    """Least-squares slope of log(err) against log(omega)."""

    slope: float
    intercept: float
    r_squared: float
    omega_range: tuple
    n_points: int


def fit_slope(rows, *, use: str = "abs", floor: float = ERROR_FLOOR) -> SlopeFit:
    """Fit the log-log error decay of a row list.

    Rows without a reference or with error at or below ``floor`` are
    excluded.  Raises ValueError when fewer than 3 usable rows remain.
    """
    pts = []
    for r in rows:
        err = r.abs_err if use == "abs" else r.rel_err
        if err is not None and err > floor:
            pts.append((math.log(r.omega), math.log(err)))
    if len(pts) < 3:
        raise ValueError(
            f"too few points above the error floor {floor:g} for a slope fit "
            f"({len(pts)} of {len(rows)})"
        )
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    A = np.vstack([x, np.ones_like(x)]).T
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    ss_res = float(np.sum((A @ np.array([slope, intercept]) - y) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return SlopeFit(float(slope), float(intercept), r2,
                    (math.exp(x.min()), math.exp(x.max())), len(pts))


def _omega_array(omega_grid):
    oms = np.sort(np.asarray(list(omega_grid), dtype=float))
    if len(oms) == 0 or oms[0] <= 0:
        raise ValueError("omega grid must be non-empty and positive")
    return oms


def default_omega_grid(lo: float = 10.0, hi: float = 2000.0, count: int = 20):
    return np.geomspace(lo, hi, count)


def run_ellipsoid(omega_grid, m: int = 8, outer_cc: int = 50, outer_trap: int = 50):
    """Ellipsoidal-phase experiment against the Si/Ci closed form."""
    if not 1 <= m <= 16:
        raise ValueError(f"run_ellipsoid supports 1 <= m <= 16, got {m}")
    oms = _omega_array(omega_grid)
    region = scenes.default_region("ellipsoid")
    plan = OuterPlan.for_region(region, cc=outer_cc, trap=outer_trap)
    rows = []
    for om in oms:
        sc = scenes.ellipsoid_scene(float(om))
        approx = integrate_unbounded(sc, region, plan, m)
        rows.append(ExperimentRow(
            float(om), approx, ellipsoid_reference(float(om)),
            params={"m": m, "outer_cc": outer_cc, "outer_trap": outer_trap},
        ))
    return rows


def ellipsoid_inner_grid(omega: float, m: int = 8, outer_cc: int = 50, outer_trap: int = 50):
    """|Q_r| of the ellipsoid scene over the outer grid, as (phi1, phi2, |Q_r|) rows."""
    sc = scenes.ellipsoid_scene(omega)
    region = scenes.default_region("ellipsoid")
    plan = OuterPlan.for_region(region, cc=outer_cc, trap=outer_trap)
    mesh, _ = _outer_grid(region, plan, region.boxes[0])
    q = np.abs(_central_grid(sc, mesh, m))
    phi1 = np.broadcast_to(mesh[0], q.shape)
    phi2 = np.broadcast_to(mesh[1], q.shape)
    return np.column_stack([phi1.ravel(), phi2.ravel(), q.ravel()])


def _duct_polar_central(omega, n_gl, a, b, outer_cc):
    sc = scenes.duct_scene(omega, a, b)
    region = scenes.default_region("duct")
    plan = OuterPlan.for_region(region, cc=outer_cc)
    return integrate_unbounded(sc, region, plan, n_gl)


def run_duct(omega_grid, n_gl: int = 8, n_gh: int | None = None, a: float = 1.0, b: float = 2.0,
             mode: str = "corner", outer_cc: int = 30, oracle_tol: float = 1e-13):
    """Rectangular-duct experiment against the reduced 1-D reference.

    Modes: ``corner`` (polar central plus closed-form corner paths),
    ``direct`` (the plain Cartesian descent decomposition, which stalls),
    ``direct_modified`` (direct corners with the resonance substitution,
    central term replaced by the polar rule).
    """
    if mode not in ("corner", "direct", "direct_modified"):
        raise ValueError(f"unknown duct mode {mode!r}")
    if n_gh is None:
        n_gh = 2 * n_gl
    oms = _omega_array(omega_grid)

    def f_point(x, y):
        return y * np.cos(x) / np.sqrt(x * x + y * y)

    def f_polar(z, th):
        return z * np.sin(th) * np.cos(z * np.cos(th))

    rows = []
    for om in oms:
        om = float(om)
        if mode == "corner":
            approx = _duct_polar_central(om, n_gl, a, b, outer_cc) - \
                rectangle_corner_contributions(f_polar, a, b, om, n_gl, n_gh)
        elif mode == "direct":
            t = rectangle_direct_terms(f_point, a, b, om, n_gl, n_gh)
            approx = t[(0.0, 0.0)] - t[(a, 0.0)] - t[(0.0, b)] + t[(a, b)]
        else:
            t = rectangle_direct_terms(f_point, a, b, om, n_gl, n_gh, outer_resonance_fix=True)
            approx = _duct_polar_central(om, n_gl, a, b, outer_cc) \
                - t[(a, 0.0)] - t[(0.0, b)] + t[(a, b)]
        rows.append(ExperimentRow(
            om, complex(approx), acoustics_reference(om, a, b, tol=oracle_tol),
            params={"n_gl": n_gl, "n_gh": n_gh, "a": a, "b": b, "mode": mode,
                    "outer_cc": outer_cc},
        ))
    return rows


def _sphere_w0(k, psi, m, n_trap):
    sc = scenes.sphere_scatter_scene(k, psi)
    rule = trapezoid_periodic(n_trap, 2.0 * math.pi)
    q = _central_grid(sc, (rule.nodes,), m)
    return complex(np.sum(rule.weights * q))


def run_sphere_scatter(k_grid, psi_grid, m: int = 5, n_trap: int = 100):
    """Sphere-scattering kernel experiment.

    Emits the prototype surface-field value ``-1/w0`` per (psi, k) with
    self-convergence diagnostics in the params.  The reference column stays
    empty: the analytic comparison requires a Mie-series evaluation, which
    this package does not ship.
    """
    ks = _omega_array(k_grid)
    rows = []
    for psi in psi_grid:
        psi = float(psi)
        if abs(psi - 0.5 * math.pi) < 1e-12:
            raise ValueError("psi = pi/2 puts the point on the shadow boundary; rejected")
        for k in ks:
            k = float(k)
            w0 = _sphere_w0(k, psi, m, n_trap)
            w0_fine = _sphere_w0(k, psi, m + 3, 2 * n_trap)
            rows.append(ExperimentRow(
                k, -1.0 / w0, None,
                params={"psi": psi, "m": m, "n_trap": n_trap,
                        "w0_re": w0.real, "w0_im": w0.imag,
                        "self_err": abs(w0 - w0_fine) / abs(w0)},
            ))
    return rows


def sphere_table(rows) -> str:
    """Self-convergence table in the (psi row, k column) layout.

    One line per psi, one column per k; cells are the relative
    self-convergence of w0.  A trailing note records why no analytic
    reference is printed.
    """
    psis = sorted({r.params["psi"] for r in rows})
    ks = sorted({r.omega for r in rows})
    cell = {(r.params["psi"], r.omega): r.params["self_err"] for r in rows}
    lines = ["psi \\ k  " + "  ".join(f"{k:>12g}" for k in ks)]
    for psi in psis:
        lines.append(f"{psi:8.5f} " + "  ".join(f"{cell[(psi, k)]:12.5e}" for k in ks))
    lines.append(
        "note: cells are self-convergence diagnostics |w0(m,N) - w0(m+3,2N)|/|w0|; "
        "the analytic reference needs a Mie-series evaluation and is not shipped."
    )
    return "\n".join(lines)


def run_example1(omega_grid, m: int = 4, outer_cc: int = 10):
    """Quarter-plane sanity experiment with known value -pi/(2 w^2).

    Emits one polar-rule row and one direct-descent row (the origin term of
    the Cartesian decomposition, whose relative error is frequency
    independent) per omega.
    """
    oms = _omega_array(omega_grid)
    region = scenes.default_region("quarter-plane")
    plan = OuterPlan.for_region(region, cc=outer_cc)
    one = lambda x, y: 1.0 + 0.0 * x
    rows = []
    for om in oms:
        om = float(om)
        ref = complex(-math.pi / (2.0 * om * om))
        sc = scenes.quarter_plane_scene(om)
        rows.append(ExperimentRow(
            om, integrate_unbounded(sc, region, plan, m), ref,
            params={"m": m, "mode": "polar", "outer_cc": outer_cc},
        ))
        origin = rectangle_direct_terms(one, 1.0, 1.0, om, m)[(0.0, 0.0)]
        rows.append(ExperimentRow(
            om, complex(origin), ref, params={"m": m, "mode": "direct", "outer_cc": outer_cc},
        ))
    return rows


# --- serialization ----------------------------------------------------------


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _params_str(params: dict) -> str:
    return ";".join(f"{k}={_fmt(v)}" for k, v in sorted(params.items()))


def rows_to_csv(rows) -> str:
    """CSV table, rows sorted by omega, floats at 17 significant digits.

    Reference-free rows leave the reference and error columns empty.
    """
    out = ["omega,approx_re,approx_im,ref_re,ref_im,abs_err,rel_err,params"]
    for r in sorted(rows, key=lambda r: r.omega):
        ref_re = _fmt(r.reference.real) if r.reference is not None else ""
        ref_im = _fmt(r.reference.imag) if r.reference is not None else ""
        out.append(",".join([
            _fmt(r.omega), _fmt(r.approx.real), _fmt(r.approx.imag),
            ref_re, ref_im, _fmt(r.abs_err), _fmt(r.rel_err), _params_str(r.params),
        ]))
    return "\n".join(out) + "\n"


def rows_to_json(rows) -> str:
    payload = []
    for r in sorted(rows, key=lambda r: r.omega):
        payload.append({
            "omega": r.omega,
            "approx_re": r.approx.real,
            "approx_im": r.approx.imag,
            "ref_re": r.reference.real if r.reference is not None else None,
            "ref_im": r.reference.imag if r.reference is not None else None,
            "abs_err": r.abs_err,
            "rel_err": r.rel_err,
            "params": {k: v for k, v in sorted(r.params.items())},
        })
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
