r"""Registered integrand scenes used by the experiments and cross-checks.

Each builder returns a :class:`~nsdq.paths.RadialScene` written directly in
polar form, with analytic oscillator derivatives and, where one exists, the
closed-form descent path.  The registry keeps the Newton tracer honest: the
test suite traces every registered scene and compares against the closed
forms.
"""

from __future__ import annotations

import math

import numpy as np

from .paths import RadialScene
from .polar import AngularRegion

__all__ = [
    "quarter_plane_scene",
    "disk_scene",
    "quarter_disk_scene",
    "ellipse_scene",
    "duct_scene",
    "ellipsoid_scene",
    "sphere_scatter_scene",
    "scene_registry",
    "default_region",
]

_TWO_PI = 2.0 * math.pi


def _ones(z):
    return np.ones_like(np.asarray(z, dtype=complex))


def _linear_path(p, th):
    # descent path of the phase g = r, broadcast against the angles
    shape = 1.0 + 0.0 * np.asarray(th, dtype=complex)
    return 1j * p * shape, 1j * shape


def quarter_plane_scene(omega: float) -> RadialScene:
    """Unit amplitude, phase r, over the first quadrant (unbounded)."""
    return RadialScene(
        n=2,
        omega=omega,
        amplitude=lambda z, th: _ones(z),
        oscillator=lambda z, th: z,
        d_oscillator=lambda z, th: _ones(z),
        alpha=1,
        alpha_coeff=lambda th: 1.0,
        singularity_order=0.0,
        origin_path=_linear_path,
        name="quarter-plane",
    )


def _unit_radial_scene(omega, boundary_radius, name):
    return RadialScene(
        n=2,
        omega=omega,
        amplitude=lambda z, th: _ones(z),
        oscillator=lambda z, th: z,
        d_oscillator=lambda z, th: _ones(z),
        alpha=1,
        alpha_coeff=lambda th: 1.0,
        singularity_order=0.0,
        boundary_radius=boundary_radius,
        origin_path=_linear_path,
        boundary_path=lambda p, th: (boundary_radius(th) + 1j * p + 0j * np.asarray(th, complex),
                                     1j + 0j * np.asarray(th, complex)),
        name=name,
    )


def disk_scene(omega: float, radius: float = 1.0) -> RadialScene:
    """Unit amplitude, phase r, on a disk of the given radius."""
    R = float(radius)
    return _unit_radial_scene(omega, lambda th: R + 0.0 * np.asarray(th, float), "disk")


def quarter_disk_scene(omega: float, radius: float = 1.0) -> RadialScene:
    scene = disk_scene(omega, radius)
    scene.name = "quarter-disk"
    return scene


def ellipse_scene(omega: float) -> RadialScene:
    """Unit amplitude, phase r, on the star-shaped ellipse x^2 + 2 y^2 <= 1.

    The boundary radius R(theta) = 1/sqrt(1 + sin^2 theta) is analytic in
    the angle, so the oscillatory boundary term can be deformed in theta.
    """

    def R(th):
        return 1.0 / np.sqrt(1.0 + np.sin(th) ** 2)

    return _unit_radial_scene(omega, R, "ellipse")


def duct_scene(omega: float, a: float = 1.0, b: float = 2.0) -> RadialScene:
    r"""Rectangle ``[0,a] x [0,b]`` with the singular acoustic kernel.

    Point amplitude ``y cos(x)/sqrt(x^2+y^2)``, phase ``sqrt(x^2+y^2)``.  On
    the ray through angle theta the kernel's 1/r cancels against the zero of
    y, leaving ``sin(theta) cos(z cos(theta))``.
    """
    beta = math.atan2(b, a)

    def boundary_radius(th):
        th = np.asarray(th, dtype=float)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            return np.where(th <= beta, a / np.cos(th), b / np.sin(th))

    return RadialScene(
        n=2,
        omega=omega,
        amplitude=lambda z, th: np.sin(th) * np.cos(z * np.cos(th)),
        oscillator=lambda z, th: z,
        d_oscillator=lambda z, th: _ones(z),
        alpha=1,
        alpha_coeff=lambda th: 1.0,
        singularity_order=1.0,
        boundary_radius=boundary_radius,
        origin_path=_linear_path,
        boundary_path=lambda p, th: (boundary_radius(th) + 1j * p, 1j + 0j * np.asarray(th, complex)),
        name="duct",
    )


def _ellipsoid_slope(phi1, phi2):
    return np.sqrt(np.cos(phi1) ** 2 + 0.5 * (5.0 + np.cos(2.0 * phi2)) * np.sin(phi1) ** 2)


def ellipsoid_scene(omega: float) -> RadialScene:
    r"""Full-space integrand with phase ``sqrt(x^2 + 2y^2 + 3z^2)``.

    In spherical coordinates the phase is ``r s(phi1, phi2)`` with
    ``s = sqrt(cos^2 phi1 + (5 + cos 2 phi2)/2 sin^2 phi1)`` and the
    amplitude ``1/((r s)^2 (1 + r s))`` carries a second-order kernel
    singularity.  The descent path is the closed form ``i p / s``.
    """

    def amplitude(z, phi1, phi2):
        zs = z * _ellipsoid_slope(phi1, phi2)
        return 1.0 / (zs * zs * (1.0 + zs))

    return RadialScene(
        n=3,
        omega=omega,
        amplitude=amplitude,
        oscillator=lambda z, phi1, phi2: z * _ellipsoid_slope(phi1, phi2),
        d_oscillator=lambda z, phi1, phi2: _ellipsoid_slope(phi1, phi2) + 0.0 * z,
        alpha=1,
        alpha_coeff=_ellipsoid_slope,
        singularity_order=2.0,
        origin_path=lambda p, phi1, phi2: (
            1j * p / _ellipsoid_slope(phi1, phi2),
            1j / _ellipsoid_slope(phi1, phi2),
        ),
        name="ellipsoid",
    )


def _csinc(w):
    # sin(w)/w, safe at w = 0, complex-capable
    w = np.asarray(w, dtype=complex)
    small = np.abs(w) < 1e-4
    denom = np.where(small, 1.0, w)
    series = 1.0 - w * w / 6.0 + w**4 / 120.0
    return np.where(small, series, np.sin(denom) / denom)


def sphere_scatter_scene(k: float, psi: float) -> RadialScene:
    r"""Kernel of the phase-extracted sphere-scattering integral equation.

    The surface integral over the unit sphere, written in the parameter
    plane ``(phi1, phi2)``, with the observation point at the kernel's
    singular point and incident direction ``d = [-cos psi, 0, sin psi]``.
    Polar coordinates are centred at the singular point, with the first
    local axis oriented so that

        dg/dr|_0+ = 1 + [-d3, d2] . Theta.

    For psi in [0, pi/3] the leading coefficient stays positive in every
    direction; psi = pi/2 puts the observation point on the shadow boundary
    and the scene degenerates.
    """
    if not 0 <= psi < math.pi / 2:
        raise ValueError(
            f"sphere scattering scene needs 0 <= psi < pi/2 (shadow boundary at pi/2), got {psi}"
        )
    d1, d2, d3 = -math.cos(psi), 0.0, math.sin(psi)

    def _uv(z, th):
        # local parameter-plane offsets: phi1 = pi/2 + u, phi2 = pi + v
        return -z * np.cos(th), z * np.sin(th)

    def _sqrt_dist(z, th):
        # sqrt(2 - 2 cos u cos v) continued analytically through the origin:
        # 2 - 2 cos u cos v = 2 sin^2(z(c+s)/2) + 2 sin^2(z(s-c)/2) = z^2 C(z)
        # with C(0) = 1; take z sqrt(C) on the principal branch of C.
        c, s = np.cos(th), np.sin(th)
        A = 0.5 * (c + s)
        B = 0.5 * (s - c)
        C = 2.0 * (A**2 * _csinc(z * A) ** 2 + B**2 * _csinc(z * B) ** 2)
        return z * np.sqrt(C)

    def oscillator(z, th):
        u, v = _uv(z, th)
        cu, cv = np.cos(u), np.cos(v)
        return (
            _sqrt_dist(z, th)
            + d1 * (cu * cv - 1.0)
            + d2 * cu * np.sin(v)
            + d3 * np.sin(u)
        )

    def d_oscillator(z, th):
        u, v = _uv(z, th)
        c, s = np.cos(th), np.sin(th)
        su, cu = np.sin(u), np.cos(u)
        sv, cv = np.sin(v), np.cos(v)
        dE = -2.0 * c * su * cv + 2.0 * s * cu * sv
        d_sqrt = dE / (2.0 * _sqrt_dist(z, th))
        return (
            d_sqrt
            + d1 * (c * su * cv - s * cu * sv)
            + d2 * (c * su * sv + s * cu * cv)
            - d3 * c * cu
        )

    def amplitude(z, th):
        u, _ = _uv(z, th)
        return np.cos(u) / (4.0 * math.pi * _sqrt_dist(z, th))

    return RadialScene(
        n=2,
        omega=k,
        amplitude=amplitude,
        oscillator=oscillator,
        d_oscillator=d_oscillator,
        alpha=1,
        alpha_coeff=lambda th: 1.0 + d2 * np.sin(th) - d3 * np.cos(th),
        singularity_order=1.0,
        name="sphere-scatter",
    )


def scene_registry() -> dict:
    """Builders of every registered scene, keyed by name."""
    return {
        "quarter-plane": quarter_plane_scene,
        "disk": disk_scene,
        "quarter-disk": quarter_disk_scene,
        "ellipse": ellipse_scene,
        "duct": duct_scene,
        "ellipsoid": ellipsoid_scene,
        "sphere-scatter": lambda omega: sphere_scatter_scene(omega, math.pi / 5),
    }


def default_region(name: str) -> AngularRegion:
    """The angular region each registered scene is integrated over."""
    regions = {
        "quarter-plane": AngularRegion.box(2, (0.0, 0.5 * math.pi)),
        "disk": AngularRegion.full(2),
        "quarter-disk": AngularRegion.box(2, (0.0, 0.5 * math.pi)),
        "ellipse": AngularRegion.full(2),
        "duct": AngularRegion.box(2, (0.0, 0.5 * math.pi)),
        "ellipsoid": AngularRegion.full(3),
        "sphere-scatter": AngularRegion.full(2),
    }
    return regions[name]
