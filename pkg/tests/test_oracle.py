import cmath
import math

import mpmath as mp
import numpy as np
import pytest

from nsdq import oracle, scenes
from nsdq.oracle import (
    OracleNotConverged,
    acoustics_reference,
    adaptive_quad_1d,
    brute_force_polar,
)
from nsdq.polar import AngularRegion

mp.mp.dps = 30


def test_adaptive_linear():
    res = adaptive_quad_1d(lambda x: x, 0.0, 1.0, 1e-13)
    assert res.converged
    assert abs(res.value - 0.5) < 1e-14


def test_adaptive_oscillatory_closed_form():
    res = adaptive_quad_1d(lambda x: np.exp(1j * 50 * x), 0.0, 1.0, 1e-13)
    exact = (cmath.exp(50j) - 1.0) / 50j
    assert abs(res.value - exact) < 1e-13


def test_adaptive_exp_sin_against_mpmath():
    res = adaptive_quad_1d(lambda x: np.exp(np.sin(x)), 0.0, math.pi / 2, 1e-13)
    exact = complex(mp.quad(lambda x: mp.e**mp.sin(x), [0, mp.pi / 2]))
    assert abs(res.value - exact) < 1e-12


def test_adaptive_estimate_is_upper_bound():
    # battery of closed-form integrands; the estimate must bound the true
    # error in at least 95 percent of the cases
    cases = [
        (lambda x: x**5, 0.0, 1.0, 1.0 / 6.0),
        (lambda x: np.exp(x), 0.0, 1.0, math.e - 1.0),
        (lambda x: 1.0 / (1.0 + x * x), 0.0, 1.0, math.pi / 4),
        (lambda x: np.exp(1j * 30 * x), 0.0, 1.0, (cmath.exp(30j) - 1) / 30j),
        (lambda x: np.exp(1j * 200 * x), 0.0, 1.0, (cmath.exp(200j) - 1) / 200j),
        (lambda x: np.cos(x) * np.exp(1j * 40 * x), 0.0, 2.0,
         complex(mp.quad(lambda t: mp.cos(t) * mp.cos(40 * t), [0, 2]),
                 mp.quad(lambda t: mp.cos(t) * mp.sin(40 * t), [0, 2]))),
        (lambda x: np.sqrt(np.abs(x)), 0.0, 1.0, 2.0 / 3.0),
        (lambda x: np.log(x + 1.0), 0.0, 1.0, 2 * math.log(2) - 1),
        (lambda x: 1.0 / np.sqrt(x + 1e-4), 0.0, 1.0,
         2 * (math.sqrt(1 + 1e-4) - math.sqrt(1e-4))),
        (lambda x: np.sin(10 * x) / (1.0 + x), 0.0, 3.0,
         float(mp.quad(lambda t: mp.sin(10 * t) / (1 + t), [0, 3]))),
    ]
    ok = 0
    for tol in (1e-6, 1e-10):
        for f, a, b, exact in cases:
            res = adaptive_quad_1d(f, a, b, tol)
            true_err = abs(res.value - exact)
            if true_err <= max(res.est_error, 1e-15):
                ok += 1
    assert ok >= 0.95 * 2 * len(cases)


def test_adaptive_cap_flags_nonconvergence(monkeypatch):
    monkeypatch.setattr(oracle, "_MAX_SUBDIVISIONS", 9)
    res = adaptive_quad_1d(lambda x: np.exp(1j * 500 * x), 0.0, 1.0, 1e-13)
    assert not res.converged
    assert res.subdivisions <= 9 + 2


def test_adaptive_rejects_bad_arguments():
    with pytest.raises(ValueError):
        adaptive_quad_1d(lambda x: x, 0.0, 1.0, 1e-15)
    with pytest.raises(ValueError):
        adaptive_quad_1d(lambda x: x, 1.0, 0.0, 1e-10)


def test_acoustics_linear_phase_part():
    # (i/w) int_0^1 exp(i w x) cos x dx has a closed-form antiderivative
    omega = 10.0
    res = adaptive_quad_1d(lambda x: np.exp(1j * omega * x) * np.cos(x), 0.0, 1.0, 1e-13)

    def anti(x):
        return cmath.exp(1j * omega * x) * (1j * omega * math.cos(x) + math.sin(x)) / (1 - omega**2)

    exact = anti(1.0) - anti(0.0)
    assert abs(1j / omega * res.value - 1j / omega * exact) <= 1e-12


def test_acoustics_magnitude_decays():
    assert abs(acoustics_reference(1000.0)) < abs(acoustics_reference(10.0))


def test_acoustics_panel_split_matches_plain():
    # above the split threshold the panelled evaluation must agree with a
    # direct adaptive pass
    omega = 2500.0
    split = acoustics_reference(omega)
    plain = adaptive_quad_1d(
        lambda x: (np.exp(1j * omega * x) - np.exp(1j * omega * np.sqrt(x * x + 4.0))) * np.cos(x),
        0.0, 1.0, 1e-13,
    ).value * 1j / omega
    assert abs(split - plain) <= 1e-13


def test_acoustics_reduces_to_two_dimensional_duct():
    sc = scenes.duct_scene(50.0)
    region = scenes.default_region("duct")
    ref = brute_force_polar(sc, region, 1e-8)
    assert abs(acoustics_reference(50.0) - ref) <= 1e-7


def test_acoustics_one_by_one_square():
    # for the unit square the reduced identity carries sqrt(1 + x^2)
    omega = 40.0
    sc = scenes.duct_scene(omega, 1.0, 1.0)
    region = scenes.default_region("duct")
    ref = brute_force_polar(sc, region, 1e-9)
    assert abs(acoustics_reference(omega, 1.0, 1.0) - ref) <= 1e-7


def test_brute_force_quarter_disk():
    omega = 20.0
    sc = scenes.quarter_disk_scene(omega)
    region = scenes.default_region("quarter-disk")
    got = brute_force_polar(sc, region, 1e-10)
    exact = 2 * math.pi * (cmath.exp(1j * omega) * (1 - 1j * omega) - 1) / (4 * omega**2)
    assert abs(got - exact) <= 1e-10


def test_brute_force_rejects_unbounded():
    sc = scenes.quarter_plane_scene(10.0)
    with pytest.raises(ValueError, match="bounded"):
        brute_force_polar(sc, scenes.default_region("quarter-plane"), 1e-8)


def test_brute_force_rejects_wrong_region_type():
    sc = scenes.disk_scene(10.0)
    with pytest.raises(TypeError):
        brute_force_polar(sc, [(0.0, 1.0)], 1e-8)


def test_brute_force_honours_phase_at_origin():
    omega = 20.0
    sc = scenes.disk_scene(omega)
    sc.phase_at_origin = cmath.exp(0.7j)
    got = brute_force_polar(sc, AngularRegion.full(2), 1e-10)
    exact = cmath.exp(0.7j) * 2 * math.pi * (cmath.exp(1j * omega) * (1 - 1j * omega) - 1) / omega**2
    assert abs(got - exact) <= 1e-9
