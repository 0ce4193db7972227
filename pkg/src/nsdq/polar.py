r"""Polar-coordinate steepest descent: the central and boundary rules.

The change to n-spherical coordinates around the special point confines the
oscillation of ``f exp(i w g)`` to the radial direction.  The radial
integral is deformed onto steepest-descent paths and discretized by the
Gaussian rules for ``x^d exp(-x^alpha)``; the remaining angular integral is
smooth and handled by classical rules (Clenshaw-Curtis, periodic
trapezoid).

Main entry points
-----------------
``central_contribution``
    The per-direction pre-quadrature value Q_r capturing the special point.
``boundary_contribution``
    The per-direction boundary term of a star-shaped domain (subtract it
    from Q_r).
``integrate_unbounded`` / ``integrate_star_shaped``
    Outer tensor composition over an angular region.
``rectangle_corner_contributions``
    The closed-form corner decomposition of the boundary term for an
    axis-aligned rectangle with phase sqrt(x^2 + y^2), including the
    resonance corners that need the half-range Hermite treatment.
``rectangle_direct_nsd``
    Nested univariate steepest descent applied directly in Cartesian
    coordinates.  Kept deliberately: its origin term cannot converge faster
    than w^-2 (the integrand after scaling is w-independent), which is the
    failure the polar rule repairs.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .paths import Direction, PathError, RadialScene, complex_derivative, newton_descent
from .rules import clenshaw_curtis, gauss_exp_power, trapezoid_periodic
from .univariate import nsd_interval

__all__ = [
    "AngularRegion",
    "OuterPlan",
    "spherical_map",
    "central_contribution",
    "boundary_contribution",
    "integrate_unbounded",
    "integrate_star_shaped",
    "rectangle_corner_contributions",
    "rectangle_direct_nsd",
    "rectangle_direct_terms",
    "normalize_scene",
]

_TWO_PI = 2.0 * math.pi


def spherical_map(r, angles):
    """n-spherical coordinate map.

    ``x_j = r cos(phi_j) prod_{l<j} sin(phi_l)`` for ``j <= n-1`` and
    ``x_n = r prod sin(phi_l)``.  Returns the point and the angular surface
    factor ``prod_l sin(phi_l)^(n-1-l)``, so that the volume element is
    ``r^(n-1) * factor * dphi_1 ... dphi_(n-1)``.

    Accepts scalars or broadcastable arrays for ``r`` and the angles.
    """
    angles = tuple(np.asarray(a) for a in angles)
    n = len(angles) + 1
    sin_running = 1.0
    coords = []
    for phi in angles:
        coords.append(r * np.cos(phi) * sin_running)
        sin_running = sin_running * np.sin(phi)
    coords.append(r * sin_running)
    factor = 1.0
    for l, phi in enumerate(angles, start=1):
        expo = n - 1 - l
        if expo:
            factor = factor * np.sin(phi) ** expo
    x = np.stack(np.broadcast_arrays(*coords)) if any(np.ndim(c) for c in coords) else np.array(coords)
    return x, factor


@dataclass(frozen=True)
class AngularRegion:
    """Union of coordinate boxes on the (n-1)-sphere's angle space.

    Each box is a tuple of per-angle intervals: one interval for n = 2, a
    pair (phi1-range, phi2-range) for n = 3.  ``full_sphere`` marks the
    whole sphere, whose last axis is periodic.
    """

    n: int
    boxes: tuple = ()
    full_sphere: bool = False

    @classmethod
    def full(cls, n: int) -> "AngularRegion":
        if n == 2:
            return cls(2, (((0.0, _TWO_PI),),), full_sphere=True)
        if n == 3:
            return cls(3, (((0.0, math.pi), (0.0, _TWO_PI)),), full_sphere=True)
        raise NotImplementedError(f"full sphere regions cover n = 2, 3; got {n}")

    @classmethod
    def box(cls, n: int, *intervals) -> "AngularRegion":
        if len(intervals) != n - 1:
            raise ValueError(f"need {n - 1} angle intervals for n = {n}, got {len(intervals)}")
        return cls(n, (tuple((float(a), float(b)) for a, b in intervals),))

    def __post_init__(self):
        ranges = [(0.0, math.pi)] * (self.n - 2) + [(0.0, _TWO_PI)]
        for box in self.boxes:
            if len(box) != self.n - 1:
                raise ValueError(f"box {box} has wrong arity for n = {self.n}")
            for (lo, hi), (rlo, rhi) in zip(box, ranges):
                if not (rlo - 1e-12 <= lo < hi <= rhi + 1e-12):
                    raise ValueError(f"angle interval [{lo}, {hi}] outside [{rlo}, {rhi}]")

    def axis_boxes(self):
        return self.boxes

    def axis_periodic(self, axis: int, box) -> bool:
        # only the last angle can be periodic, and only over its full range
        lo, hi = box[axis]
        return axis == self.n - 2 and abs((hi - lo) - _TWO_PI) < 1e-12


@dataclass(frozen=True)
class OuterPlan:
    """Per-angle choice of outer rule: node counts and rule kinds.

    ``kinds[i]`` is ``"cc"`` (Clenshaw-Curtis) or ``"trap"`` (periodic
    trapezoid; only valid on a full-period axis).
    """

    counts: tuple
    kinds: tuple

    def __post_init__(self):
        if len(self.counts) != len(self.kinds):
            raise ValueError("counts and kinds must have equal length")
        for c in self.counts:
            if c < 2:
                raise ValueError(f"outer rule counts must be >= 2, got {c}")
        for k in self.kinds:
            if k not in ("cc", "trap"):
                raise ValueError(f"unknown outer rule kind {k!r}")

    @classmethod
    def for_region(cls, region: AngularRegion, cc: int = 50, trap: int = 50) -> "OuterPlan":
        """Default plan: trapezoid on full-period axes, Clenshaw-Curtis else."""
        box = region.boxes[0]
        counts, kinds = [], []
        for axis in range(region.n - 1):
            if region.axis_periodic(axis, box):
                counts.append(trap)
                kinds.append("trap")
            else:
                counts.append(cc)
                kinds.append("cc")
        return cls(tuple(counts), tuple(kinds))


def _axis_rule(interval, kind, count, periodic_ok):
    lo, hi = interval
    if kind == "trap":
        if not periodic_ok:
            raise ValueError("trapezoid outer rule requires a full-period axis")
        rule = trapezoid_periodic(count, hi - lo)
        return rule.nodes + lo, rule.weights
    rule = clenshaw_curtis(count, lo, hi)
    return rule.nodes, rule.weights


def _outer_grid(region: AngularRegion, plan: OuterPlan, box):
    """Tensor nodes/weights over one angular box, surface factor included.

    The first angle is the outermost tensor index.  Returns a tuple of
    angle arrays (meshgrid, 'ij' indexing) and the combined weight array.
    """
    nodes, weights = [], []
    for axis, interval in enumerate(box):
        kn, kw = _axis_rule(interval, plan.kinds[axis], plan.counts[axis],
                            region.axis_periodic(axis, box))
        nodes.append(kn)
        weights.append(kw)
    if len(nodes) == 1:
        mesh = (nodes[0],)
        w = weights[0].copy()
    else:
        mesh = np.meshgrid(*nodes, indexing="ij")
        w = weights[0][:, None] * weights[1][None, :]
    _, factor = spherical_map(1.0, mesh)
    return mesh, w * factor


def _weight_degree(scene: RadialScene) -> int:
    # With a regular amplitude the Jacobian growth rho^(n-1) is folded into
    # the Gaussian weight (higher asymptotic order); an r^-nu singularity
    # eats ceil(nu) powers of it.
    nu = scene.singularity_order
    if nu == 0:
        return min(scene.n - 1, 8)
    return max(scene.n - 1 - math.ceil(nu), 0)


def _origin_samples(scene: RadialScene, angles, p_values):
    """(rho, drho) arrays over ascending descent parameters, grid-capable."""
    if scene.origin_path is not None:
        return [scene.origin_path(p, *angles) for p in p_values]
    g = lambda z: scene.oscillator(z, *angles)
    dg = lambda z: scene.d_oscillator(z, *angles)
    coeff = np.asarray(scene.alpha_coeff(*angles), dtype=float)
    if np.any(np.abs(coeff) < 1e-14):
        raise PathError("degenerate direction: vanishing leading coefficient on the grid")
    out = []
    z = None
    for p in p_values:
        seed = np.power(1j * p / coeff, 1.0 / scene.alpha) if z is None else z
        z = newton_descent(g, dg, 1j * p, seed, context="origin grid")
        out.append((z, 1j / np.asarray(dg(z), dtype=complex)))
    return out


def _boundary_samples(scene: RadialScene, angles, p_values):
    if scene.boundary_path is not None:
        return [scene.boundary_path(p, *angles) for p in p_values]
    if scene.boundary_radius is None:
        raise ValueError("scene has no boundary radius")
    # keep a complex dtype when tracing at complex angles (deformed outer
    # integration); real otherwise
    R = np.asarray(scene.boundary_radius(*angles))
    if not np.iscomplexobj(R):
        R = R.astype(float)
    g = lambda z: scene.oscillator(z, *angles)
    dg = lambda z: scene.d_oscillator(z, *angles)
    gR = np.asarray(g(R), dtype=complex)
    dgR = np.asarray(dg(R), dtype=complex)
    out = []
    z = None
    for p in p_values:
        seed = R + 1j * p / dgR if z is None else z
        z = newton_descent(g, dg, gR + 1j * p, seed, context="boundary grid")
        out.append((z, 1j / np.asarray(dg(z), dtype=complex)))
    return out


def _central_grid(scene: RadialScene, angles, m: int):
    alpha, n, omega = scene.alpha, scene.n, scene.omega
    d = _weight_degree(scene)
    rule = gauss_exp_power(m, alpha, d)
    ps = rule.nodes**alpha / omega
    samples = _origin_samples(scene, angles, ps)
    total = 0.0
    for (xj, wj), (rho, drho) in zip(zip(rule.nodes, rule.weights), samples):
        jac = n * rho ** (n - 1) * drho
        total = total + wj * xj ** (alpha - 1 - d) * scene.amplitude(rho, *angles) * jac
    return total * (alpha / (n * omega))


def _boundary_grid(scene: RadialScene, angles, m: int):
    n, omega = scene.n, scene.omega
    rule = gauss_exp_power(m, 1, 0)
    ps = rule.nodes / omega
    samples = _boundary_samples(scene, angles, ps)
    R = np.asarray(scene.boundary_radius(*angles), dtype=float)
    gR = np.asarray(scene.oscillator(R, *angles), dtype=complex)
    total = 0.0
    for (xj, wj), (rho, drho) in zip(zip(rule.nodes, rule.weights), samples):
        jac = n * rho ** (n - 1) * drho
        total = total + wj * scene.amplitude(rho, *angles) * jac
    return np.exp(1j * omega * gR) * total / (n * omega)


def central_contribution(scene: RadialScene, direction, m: int) -> complex:
    """Pre-quadrature value Q_r at one direction.

    Q_r(Theta) = alpha/(n w) sum_j w_j x_j^(alpha-1-d)
                 f(rho_0(x_j^alpha / w)) d(rho_0^n)/dp (x_j^alpha / w)

    with the Gaussian rule for ``x^d exp(-x^alpha)``; the weight degree d
    folds the Jacobian growth into the rule when the amplitude regularity
    allows it.  The amplitude's r^-nu singularity cancels against the
    Jacobian inside the product, which is evaluated at strictly positive
    nodes.
    """
    angles = direction.angles if isinstance(direction, Direction) else tuple(direction)
    return complex(_central_grid(scene, angles, m))


def boundary_contribution(scene: RadialScene, direction, m: int) -> complex:
    """Boundary term of the star-shaped rule at one direction.

    Returns ``exp(i w g(R Theta))/(n w) sum_j w_j f(rho_R) d(rho_R^n)/dp``
    with the plain Gauss-Laguerre rule (the phase is regular at the
    boundary).  The star-shaped pre-quadrature value is
    ``central_contribution - boundary_contribution``.
    """
    angles = direction.angles if isinstance(direction, Direction) else tuple(direction)
    return complex(_boundary_grid(scene, angles, m))


def integrate_unbounded(scene: RadialScene, region: AngularRegion, plan: OuterPlan, m: int) -> complex:
    """Outer tensor rule applied to the central contribution over a cone.

    Error: the outer rule's own error on the smooth integrand Q_r plus the
    radial pre-quadrature error O(w^-((2m-1)/alpha)).
    """
    total = 0.0 + 0.0j
    for box in region.axis_boxes():
        mesh, w = _outer_grid(region, plan, box)
        q = _central_grid(scene, mesh, m)
        total += complex(np.sum(w * q))
    return complex(scene.phase_at_origin) * total


def _boundary_is_constant(scene, region, plan):
    for box in region.axis_boxes():
        mesh, _ = _outer_grid(region, plan, box)
        R = np.asarray(scene.boundary_radius(*mesh), dtype=float)
        if np.max(R) - np.min(R) > 1e-12 * max(1.0, np.max(np.abs(R))):
            return False
    return True


def _boundary_phase(scene):
    def G(th):
        R = scene.boundary_radius(th)
        return scene.oscillator(R, th)

    return G


def _boundary_amplitude(scene, m):
    rule = gauss_exp_power(m, 1, 0)
    ps = rule.nodes / scene.omega
    n, omega = scene.n, scene.omega

    def amp(th):
        # amplitude of the boundary term as an analytic function of the
        # (possibly complex) angle; the oscillatory factor exp(i w G) is
        # supplied by the univariate descent machinery.
        samples = _boundary_samples(scene, (th,), ps)
        total = 0.0 + 0.0j
        for wj, (rho, drho) in zip(rule.weights, samples):
            total += wj * scene.amplitude(rho, th) * n * rho ** (n - 1) * drho
        return total / (n * omega)

    return amp


def _stationary_points(G, lo, hi, nsamples=600):
    # interior zeros of G' located by sign changes plus bisection
    ths = np.linspace(lo, hi, nsamples)
    h = (hi - lo) / (8.0 * nsamples)
    dG = (np.asarray(G(ths + h), float) - np.asarray(G(ths - h), float)) / (2 * h)
    points = []
    for i in range(nsamples - 1):
        if dG[i] == 0.0 and lo < ths[i] < hi:
            points.append(ths[i])
        elif dG[i] * dG[i + 1] < 0:
            a, b = ths[i], ths[i + 1]
            fa = dG[i]
            for _ in range(80):
                mid = 0.5 * (a + b)
                fm = (float(G(mid + h)) - float(G(mid - h))) / (2 * h)
                if fa * fm <= 0:
                    b = mid
                else:
                    a, fa = mid, fm
            points.append(0.5 * (a + b))
    scale = max(abs(float(dG[0])), abs(float(dG[-1])), 1e-30)
    end_a = abs(float(dG[0])) < 1e-7 * max(1.0, scale)
    end_b = abs(float(dG[-1])) < 1e-7 * max(1.0, scale)
    return points, end_a, end_b


def _oscillatory_boundary_term(scene, region, m):
    # The boundary term int exp(i w G(th)) amp(th) dth with G = g(R(th), th)
    # handled by univariate steepest descent in the angle, split at the
    # resonance-induced stationary points of G.
    if scene.n != 2:
        raise NotImplementedError("oscillatory boundary treatment implemented for n = 2 only")
    G = _boundary_phase(scene)
    amp = _boundary_amplitude(scene, m)
    total = 0.0 + 0.0j
    for box in region.axis_boxes():
        (lo, hi), = box
        stat, end_lo, end_hi = _stationary_points(G, lo, hi)
        edges = [lo] + stat + [hi]
        for i in range(len(edges) - 1):
            a, b = edges[i], edges[i + 1]
            alpha_a = 2 if (i > 0 or end_lo) else 1
            alpha_b = 2 if (i < len(edges) - 2 or end_hi) else 1
            total += nsd_interval(amp, G, a, b, scene.omega, m,
                                  alpha_a=alpha_a, alpha_b=alpha_b)
    return total


def integrate_star_shaped(scene: RadialScene, region: AngularRegion, plan: OuterPlan,
                          m: int, boundary_mode: str = "auto") -> complex:
    """Outer rule applied to the star-shaped pre-quadrature values.

    The central part is always smooth in the angles.  The boundary part
    carries the factor ``exp(i w g(R(Theta) Theta))``: with a constant
    boundary radius it is smooth as well and the plain outer rule applies;
    otherwise it oscillates and must be treated by the univariate descent
    machinery (``boundary_mode="nsd"``, n = 2).  ``"auto"`` picks by
    inspecting R on the outer grid; ``"plain"`` forces the plain rule and
    warns when that is unsound.
    """
    if scene.boundary_radius is None:
        raise ValueError("integrate_star_shaped needs a bounded scene")
    if boundary_mode not in ("auto", "plain", "nsd"):
        raise ValueError(f"unknown boundary_mode {boundary_mode!r}")
    constant = _boundary_is_constant(scene, region, plan)
    mode = boundary_mode
    if mode == "auto":
        mode = "plain" if constant else "nsd"
    if mode == "plain" and not constant:
        warnings.warn(
            "boundary radius varies over the region but the plain outer rule "
            "was requested; the oscillatory boundary term will converge slowly",
            stacklevel=2,
        )

    total = 0.0 + 0.0j
    for box in region.axis_boxes():
        mesh, w = _outer_grid(region, plan, box)
        q = _central_grid(scene, mesh, m)
        if mode == "plain":
            q = q - _boundary_grid(scene, mesh, m)
        total += complex(np.sum(w * q))
    if mode == "nsd":
        total -= _oscillatory_boundary_term(scene, region, m)
    return complex(scene.phase_at_origin) * total


# --- rectangle decompositions ---------------------------------------------


def _assert_finite(K, corner):
    if not np.all(np.isfinite(K)):
        raise ValueError(f"corner {corner}: non-finite integrand (inverse sec/csc branch failure)")


def rectangle_corner_contributions(f_polar, a: float, b: float, omega: float,
                                   m_lag: int, m_herm: int) -> complex:
    r"""Boundary term of the rectangle ``[0,a] x [0,b]`` with phase ``sqrt(x^2+y^2)``.

    The outer angular integral of the boundary term is itself oscillatory
    with phase R(theta); its four endpoint contributions run along the
    closed-form angle paths

        h11(q) = asec(1 + iq/a),        h12(q) = asec((eta + iq)/a),
        h21(q) = acsc((eta + iq)/b),    h22(q) = acsc(1 + iq/b),

    with eta = sqrt(a^2 + b^2).  The corners at theta = 0 and theta = pi/2
    are resonance points (stationary points of R), so their q-integrals get
    the q -> q^2 substitution and a half-range Gauss-Hermite rule; the two
    contributions from the split angle beta = atan(b/a) use Gauss-Laguerre.
    ``f_polar(z, theta)`` is the polar amplitude, analytic in both
    arguments.

    Returns I_ext = I11 - I12 + I21 - I22; the full rectangle integral is
    (integral of Q_r over [0, pi/2]) minus this value.
    """
    if not (a > 0 and b > 0):
        raise ValueError(f"rectangle sides must be positive, got a={a}, b={b}")
    eta = math.hypot(a, b)
    gl = gauss_exp_power(m_lag, 1, 0)
    gh = gauss_exp_power(m_herm, 2, 0)
    P = gl.nodes[:, None] / omega  # p = s/omega, rows
    wl = gl.weights

    # corners at theta = 0 and pi/2: q = t^2/omega
    Qh = (gh.nodes**2 / omega)[None, :]
    th11 = np.arccos(1.0 / (1.0 + 1j * Qh / a))
    K11 = f_polar(a + 1j * Qh + 1j * P, th11) / ((a + 1j * Qh) * np.sqrt(2j * Qh * a - Qh**2))
    _assert_finite(K11, "(1,1)")
    I11 = -(2.0 * a * cmath.exp(1j * omega * a) / omega**2) * (wl @ K11 @ (gh.weights * gh.nodes))

    th22 = np.arcsin(1.0 / (1.0 + 1j * Qh / b))
    K22 = f_polar(b + 1j * Qh + 1j * P, th22) / ((b + 1j * Qh) * np.sqrt(2j * Qh * b - Qh**2))
    _assert_finite(K22, "(2,2)")
    I22 = (2.0 * b * cmath.exp(1j * omega * b) / omega**2) * (wl @ K22 @ (gh.weights * gh.nodes))

    # corners at theta = beta: q = t/omega
    Ql = (gl.nodes / omega)[None, :]
    th12 = np.arccos(a / (eta + 1j * Ql))
    K12 = f_polar(eta + 1j * Ql + 1j * P, th12) / ((eta + 1j * Ql) * np.sqrt(b**2 - Ql**2 + 2j * Ql * eta))
    _assert_finite(K12, "(1,2)")
    I12 = -(a * cmath.exp(1j * omega * eta) / omega**2) * (wl @ K12 @ wl)

    th21 = np.arcsin(b / (eta + 1j * Ql))
    K21 = f_polar(eta + 1j * Ql + 1j * P, th21) / ((eta + 1j * Ql) * np.sqrt(a**2 - Ql**2 + 2j * Ql * eta))
    _assert_finite(K21, "(2,1)")
    I21 = (b * cmath.exp(1j * omega * eta) / omega**2) * (wl @ K21 @ wl)

    return complex(I11 - I12 + I21 - I22)


def _direct_corner(f, x0, y0, omega, m_lag, m_herm, outer_resonance_fix):
    # One corner term F(x0, y0) of the nested Cartesian descent
    # decomposition for the phase sqrt(x^2 + y^2).  The inner path v starts
    # on the stationary line y = 0 whenever y0 = 0; that sqrt singularity
    # gets the q -> q^2 substitution with a half-range Hermite rule.  The
    # corner (0, b) hides the mirror-image singularity in the *outer* path;
    # the plain recipe leaves it untreated (and therefore stalls), the
    # resonance fix applies the same substitution there.
    G = math.hypot(x0, y0)
    p_singular = (x0 == 0.0 and y0 > 0.0) and outer_resonance_fix
    q_singular = (y0 == 0.0)
    gl = gauss_exp_power(m_lag, 1, 0)
    gh = gauss_exp_power(m_herm, 2, 0)

    if p_singular:
        P = (gh.nodes**2 / omega)[:, None]
        wp = 2.0 * gh.weights * gh.nodes / omega
    else:
        P = (gl.nodes / omega)[:, None]
        wp = gl.weights / omega
    if q_singular:
        Q = (gh.nodes**2 / omega)[None, :]
        wq = 2.0 * gh.weights * gh.nodes / omega
    else:
        Q = (gl.nodes / omega)[None, :]
        wq = gl.weights / omega

    u = np.sqrt(x0**2 - P**2 + 2j * P * G)
    du = 1j * (G + 1j * P) / u
    v = np.sqrt(y0**2 - Q**2 + 2j * Q * (G + 1j * P))
    dv = 1j * (G + 1j * P + 1j * Q) / v
    K = f(u, v) * du * dv
    _assert_finite(K, f"({x0},{y0})")
    return cmath.exp(1j * omega * G) * (wp @ K @ wq)


def rectangle_direct_terms(f, a, b, omega, m, m_herm=None, outer_resonance_fix=False):
    """The four corner terms of the direct Cartesian descent decomposition."""
    if m_herm is None:
        m_herm = 2 * m
    return {
        (0.0, 0.0): _direct_corner(f, 0.0, 0.0, omega, m, m_herm, outer_resonance_fix),
        (a, 0.0): _direct_corner(f, a, 0.0, omega, m, m_herm, outer_resonance_fix),
        (0.0, b): _direct_corner(f, 0.0, b, omega, m, m_herm, outer_resonance_fix),
        (a, b): _direct_corner(f, a, b, omega, m, m_herm, outer_resonance_fix),
    }


def rectangle_direct_nsd(f, a: float, b: float, omega: float, m: int, m_herm: int | None = None,
                         outer_resonance_fix: bool = False) -> complex:
    r"""Nested Cartesian steepest descent over ``[0,a] x [0,b]``, phase ``sqrt(x^2+y^2)``.

    Returns ``F(0,0) - F(a,0) - F(0,b) + F(a,b)``, each corner evaluated
    with the inner-axis ``q -> q^2`` substitution and tensor Gaussian rules.
    This is the method that the polar treatment repairs, kept as a
    documented failure mode:

    * the origin term's scaled integrand is independent of omega (the phase
      is homogeneous there), so its relative quadrature error never
      decreases with the frequency and the term stalls at absolute order
      w^-2; for unit amplitude it also carries poles at q = +-i sqrt(2p);
    * the corner (0, b) buries the same square-root singularity in the
      outer integration variable, which the recipe leaves untreated unless
      ``outer_resonance_fix`` is set.

    ``f(x, y)`` must be analytic in both arguments along the corner paths.
    """
    if not (a > 0 and b > 0):
        raise ValueError(f"rectangle sides must be positive, got a={a}, b={b}")
    t = rectangle_direct_terms(f, a, b, omega, m, m_herm, outer_resonance_fix)
    return complex(t[(0.0, 0.0)] - t[(a, 0.0)] - t[(0.0, b)] + t[(a, b)])


def normalize_scene(x0, f, g, omega: float, *, n: int | None = None, alpha: int = 1,
                    singularity_order: float = 0.0, boundary_radius=None,
                    grad_g=None, name: str = "") -> RadialScene:
    """Shift the special point of Cartesian callables to the origin.

    Builds a scene with ``g~(z, angles) = g(x0 + z Theta) - g(x0)`` and the
    constant ``exp(i w g(x0))`` recorded in ``phase_at_origin`` (the
    integrators multiply it back).  ``f`` and ``g`` must accept complex
    coordinate vectors and be analytic along the rays actually traced; that
    region is the caller's responsibility.
    """
    x0 = np.asarray(x0, dtype=float)
    if n is None:
        n = len(x0)
    g0 = float(np.real(g(x0)))

    def point(z, *angles):
        theta, _ = spherical_map(1.0, angles)
        return x0.reshape((n,) + (1,) * np.ndim(z)) + np.asarray(z) * theta

    def g_tilde(z, *angles):
        return g(point(z, *angles)) - g0

    def f_tilde(z, *angles):
        return f(point(z, *angles))

    if grad_g is not None:
        def dg_tilde(z, *angles):
            theta, _ = spherical_map(1.0, angles)
            grad = grad_g(point(z, *angles))
            return sum(theta[i] * grad[i] for i in range(n))
    else:
        def dg_tilde(z, *angles):
            return complex_derivative(lambda zz: g_tilde(zz, *angles), z)

    def coeff(*angles):
        h = 1e-4
        if alpha == 1:
            return float(np.real((g_tilde(h, *angles) - g_tilde(-h, *angles)) / (2 * h)))
        vals = [complex(g_tilde(k * h, *angles)) for k in range(-alpha, alpha + 1)]
        ks = np.arange(-alpha, alpha + 1)
        A = np.vander(ks * h, 2 * alpha + 1, increasing=True).T
        rhs = np.zeros(2 * alpha + 1)
        rhs[alpha] = math.factorial(alpha)
        c = np.linalg.solve(A, rhs)
        return float(np.real(np.dot(c, vals))) / math.factorial(alpha)

    return RadialScene(
        n=n,
        omega=omega,
        amplitude=f_tilde,
        oscillator=g_tilde,
        d_oscillator=dg_tilde,
        alpha=alpha,
        alpha_coeff=coeff,
        singularity_order=singularity_order,
        boundary_radius=boundary_radius,
        phase_at_origin=cmath.exp(1j * omega * g0),
        name=name or "normalized",
    )
