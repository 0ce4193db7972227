import cmath
import math

import numpy as np
import pytest

from nsdq import scenes
from nsdq.paths import (
    Direction,
    PathError,
    RadialScene,
    closed_form_path,
    newton_descent,
    trace_boundary_path,
    trace_origin_path,
)


def _sample_ps():
    return np.geomspace(1e-3, 0.5, 10)


def test_direction_unit_vector():
    d = Direction(0.7)
    np.testing.assert_allclose(d.vector, [math.cos(0.7), math.sin(0.7)], rtol=1e-15)
    assert abs(np.linalg.norm(d.vector) - 1.0) < 1e-14
    d3 = Direction(0.7, 1.3)
    assert d3.n == 3
    assert abs(np.linalg.norm(d3.vector) - 1.0) < 1e-14


def test_linear_phase_origin_path():
    sc = scenes.quarter_plane_scene(10.0)
    sc.origin_path = None
    samples = trace_origin_path(sc, Direction(0.3), _sample_ps())
    for s in samples:
        assert abs(s.rho - 1j * s.p) < 1e-14
        # d(rho^2)/dp = -2p for the n = 2 linear phase
        assert abs(s.jac - (-2.0 * s.p)) < 1e-13
        assert abs(0.5 * s.jac - (-s.p)) < 1e-13


def test_ellipsoid_origin_path_matches_closed_form():
    sc = scenes.ellipsoid_scene(100.0)
    sc.origin_path = None
    for angles in [(0.7, 1.3), (2.1, 4.0), (1.5707963, 0.0)]:
        s = scenes._ellipsoid_slope(*angles)
        samples = trace_origin_path(sc, Direction(*angles), _sample_ps())
        for t in samples:
            assert abs(t.rho - 1j * t.p / s) <= 1e-12
            assert t.residual <= 1e-12 * (1 + t.p)


def test_quadratic_phase_branch():
    # g = z^2 has alpha = 2; the principal branch is exp(i pi/4) sqrt(p)
    sc = RadialScene(
        n=2, omega=50.0,
        amplitude=lambda z, th: 1.0 + 0.0 * z,
        oscillator=lambda z, th: z * z,
        d_oscillator=lambda z, th: 2.0 * z,
        alpha=2,
        alpha_coeff=lambda th: 1.0,
    )
    samples = trace_origin_path(sc, Direction(0.1), _sample_ps())
    for t in samples:
        expected = cmath.exp(1j * math.pi / 4) * math.sqrt(t.p)
        assert abs(t.rho - expected) < 1e-12


def test_boundary_paths_linear_phase():
    sc = scenes.duct_scene(10.0, 1.0, 2.0)
    sc.boundary_path = None
    th = 0.4
    R = float(sc.boundary_radius(th))
    assert abs(R - 1.0 / math.cos(th)) < 1e-14
    samples = trace_boundary_path(sc, Direction(th), _sample_ps())
    for t in samples:
        assert abs(t.rho - (R + 1j * t.p)) < 1e-12

    disk = scenes.disk_scene(10.0)
    disk.boundary_path = None
    for t in trace_boundary_path(disk, Direction(1.0), _sample_ps()):
        assert abs(t.rho - (1.0 + 1j * t.p)) < 1e-13


def test_ellipse_boundary_linear_ansatz():
    sc = scenes.ellipse_scene(30.0)
    sc.boundary_path = None
    th = 0.9
    R = float(sc.boundary_radius(th))
    for t in trace_boundary_path(sc, Direction(th), _sample_ps()):
        assert abs(t.rho - (R + 1j * t.p)) < 1e-12


def test_path_sample_invariants():
    sc = scenes.sphere_scatter_scene(50.0, math.pi / 5)
    ps = np.geomspace(1e-3, 0.4, 24)
    for th in np.linspace(0.0, 2 * math.pi, 9):
        samples = trace_origin_path(sc, Direction(th), ps)
        for t in samples:
            assert t.residual <= 1e-12 * (1 + t.p)
            dg = complex(sc.d_oscillator(t.rho, th))
            assert abs(t.drho_dp * dg - 1j) <= 1e-12
            # exp(i w g(rho)) decays exactly like exp(-w p) at convergence
            g = complex(sc.oscillator(t.rho, th))
            assert abs(abs(cmath.exp(1j * sc.omega * g)) - math.exp(-sc.omega * t.p)) \
                <= 1e-12 * math.exp(-sc.omega * t.p)
        # branch continuity along the ascending parameter list
        for t0, t1 in zip(samples, samples[1:]):
            dp = t1.p - t0.p
            assert abs(t1.rho - t0.rho) <= 2.0 * max(abs(t0.drho_dp), abs(t1.drho_dp)) * dp


def test_closed_form_registry_linear():
    path = closed_form_path("linear-radial", slope=2.0)
    rho, drho = path(0.3)
    assert abs(rho - 0.15j) < 1e-15
    assert abs(drho - 0.5j) < 1e-15


def test_closed_form_registry_unknown_key():
    with pytest.raises(KeyError, match="unknown closed-form path"):
        closed_form_path("no-such-path")


@pytest.mark.parametrize("key, params, oscillator, base_val", [
    ("duct-corner-h11", {"a": 1.0}, lambda th: 1.0 / np.cos(th), 1.0),
    ("duct-corner-h12", {"a": 1.0, "b": 2.0}, lambda th: 1.0 / np.cos(th), math.sqrt(5.0)),
    ("duct-corner-h21", {"a": 1.0, "b": 2.0}, lambda th: 2.0 / np.sin(th), math.sqrt(5.0)),
    ("duct-corner-h22", {"b": 2.0}, lambda th: 2.0 / np.sin(th), 2.0),
])
def test_duct_corner_paths_satisfy_their_equation(key, params, oscillator, base_val):
    # each angle path h(q) must satisfy oscillator(h(q)) = base + i q
    path = closed_form_path(key, **params)
    for q in np.geomspace(1e-4, 0.8, 10):
        h, dh = path(q)
        assert abs(complex(oscillator(h)) - (base_val + 1j * q)) < 1e-12
        # derivative consistency by a central difference scaled to q (the
        # resonance corners behave like sqrt(q), so a fixed step is useless)
        step = 1e-5 * q
        hp, _ = path(q + step)
        hm, _ = path(q - step)
        assert abs((hp - hm) / (2 * step) - dh) < 1e-6 * abs(dh)


def test_duct_corner_paths_against_newton():
    # Newton continuation on the angular oscillators reproduces the closed
    # forms: theta = 0 and pi/2 are order-2 (resonance) endpoints, beta is
    # regular.
    a, b = 1.0, 2.0
    eta = math.hypot(a, b)
    beta = math.atan2(b, a)
    qs = np.geomspace(1e-4, 0.5, 10)

    cases = [
        ("duct-corner-h11", {"a": a}, lambda z: a / np.cos(z), lambda z: a * np.sin(z) / np.cos(z) ** 2, a),
        ("duct-corner-h12", {"a": a, "b": b}, lambda z: a / np.cos(z), lambda z: a * np.sin(z) / np.cos(z) ** 2, eta),
        ("duct-corner-h21", {"a": a, "b": b}, lambda z: b / np.sin(z), lambda z: -b * np.cos(z) / np.sin(z) ** 2, eta),
        ("duct-corner-h22", {"b": b}, lambda z: b / np.sin(z), lambda z: -b * np.cos(z) / np.sin(z) ** 2, b),
    ]
    for key, params, g, dg, base in cases:
        path = closed_form_path(key, **params)
        z = None
        for q in qs:
            h, _ = path(q)
            z = h if z is None else newton_descent(g, dg, base + 1j * q, z)
            zn = newton_descent(g, dg, base + 1j * q, z)
            assert abs(zn - h) <= 1e-12, (key, q)
            z = zn


def test_degenerate_direction_rejected():
    sc = scenes.sphere_scatter_scene(50.0, 0.0)
    sc.alpha_coeff = lambda th: 0.0
    with pytest.raises(PathError, match="degenerate"):
        trace_origin_path(sc, Direction(0.0), [0.1])


def test_newton_failure_reports_context():
    # z^3 - 2z + 2 from z = 0 is the classic Newton 2-cycle: no convergence
    with pytest.raises(PathError, match="did not converge"):
        newton_descent(
            lambda z: z**3 - 2 * z + 2, lambda z: 3 * z**2 - 2, 0.0, 0.0 + 0.0j,
            context="cycle test",
        )
    with pytest.raises(PathError, match="degenerate"):
        newton_descent(lambda z: 0.0 * z + 1.0, lambda z: 0.0 * z, 0.0, 1.0 + 0.0j)


def test_scene_validate_passes_and_fails():
    sc = scenes.duct_scene(10.0)
    sc.validate([Direction(0.3), Direction(1.2)])

    shifted = scenes.duct_scene(10.0)
    shifted.oscillator = lambda z, th: z + 0.5
    with pytest.raises(ValueError, match="not normalized"):
        shifted.validate([Direction(0.3)])


def test_scene_rejects_non_integrable_singularity():
    with pytest.raises(ValueError, match="singularity order"):
        RadialScene(
            n=2, omega=1.0,
            amplitude=lambda z, th: 1.0 / z**2,
            oscillator=lambda z, th: z,
            d_oscillator=lambda z, th: 1.0,
            singularity_order=2.0,
        )
