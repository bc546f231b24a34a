"""Independent checks of the kernel construction.

Nothing in this module reuses the closed-form matching algebra: waves are
re-derived by fixed-step RK4 integration of the radial equation, the operator
is applied by a central second difference, one-sided kernel derivatives come
from Richardson-extrapolated difference quotients of kernel *values*, and the
resolvent is rebuilt as an integral operator with composite Simpson panels
split at the diagonal.  Agreement of these reconstructions with the
closed-form kernels is the package's evidence that the construction is right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .errors import ContractError, DomainError
from .kernel import wave_pair
from .model import branch_sqrt
from .piecewise import as_piecewise

#: Gaussian bumps count as supported within this many widths of the center.
GAUSSIAN_SUPPORT_WIDTHS = 5.5


@dataclass(frozen=True)
class TestFunction:
    """A smooth bump vanishing (to working precision) at the origin.

    kind = "gaussian_bump":            exp(-(r-c)^2 / (2 w^2))
    kind = "compact_polynomial_bump":  (1 - t^2)^4 on |t| < 1, t = (r-c)/w, else 0
    """

    __test__ = False  # not a pytest class, despite the name

    kind: str
    center: float
    width: float

    def __post_init__(self):
        if self.kind not in ("gaussian_bump", "compact_polynomial_bump"):
            raise DomainError(f"unknown test-function kind {self.kind!r}")
        if not (math.isfinite(self.center) and math.isfinite(self.width)) or self.width <= 0.0:
            raise DomainError("center and width must be finite, width positive")
        lo = self.support[0]
        if lo <= 0.0:
            raise DomainError(
                f"support must sit inside (0, inf); got lower edge {lo} "
                f"(center too close to the origin for this width)"
            )

    @property
    def support(self) -> tuple[float, float]:
        if self.kind == "gaussian_bump":
            half = GAUSSIAN_SUPPORT_WIDTHS * self.width
        else:
            half = self.width
        return (self.center - half, self.center + half)

    def __call__(self, r):
        t = (np.asarray(r, dtype=float) - self.center) / self.width
        if self.kind == "gaussian_bump":
            return np.exp(-0.5 * t * t)
        inside = np.abs(t) < 1.0
        core = np.where(inside, 1.0 - t * t, 0.0)
        return core**4

    def second_derivative(self, r):
        t = (np.asarray(r, dtype=float) - self.center) / self.width
        w2 = self.width * self.width
        if self.kind == "gaussian_bump":
            return (t * t - 1.0) / w2 * np.exp(-0.5 * t * t)
        inside = np.abs(t) < 1.0
        core = np.where(inside, 1.0 - t * t, 0.0)
        return 8.0 * core * core * (7.0 * t * t - 1.0) / w2 * inside


@dataclass(frozen=True)
class ResidualReport:
    """Outcome of one verification check.

    For composite checks the components carry their own tolerances and the
    top-level residual is the worst residual/tolerance ratio (tolerance 1.0),
    so the pass flag always equals max_residual <= tolerance.
    """

    name: str
    samples: int
    max_residual: float
    tolerance: float
    passed: bool
    excluded: int = 0
    components: tuple["ResidualReport", ...] = field(default=())

    @classmethod
    def build(cls, name, samples, max_residual, tolerance, excluded=0, components=()):
        return cls(
            name=name,
            samples=int(samples),
            max_residual=float(max_residual),
            tolerance=float(tolerance),
            passed=bool(max_residual <= tolerance),
            excluded=int(excluded),
            components=tuple(components),
        )

    @classmethod
    def combine(cls, name, components):
        components = tuple(components)
        worst = max(c.max_residual / c.tolerance for c in components)
        return cls.build(
            name,
            samples=sum(c.samples for c in components),
            max_residual=worst,
            tolerance=1.0,
            excluded=sum(c.excluded for c in components),
            components=components,
        )

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "samples": self.samples,
            "excluded": self.excluded,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if self.components:
            out["components"] = [c.to_dict() for c in self.components]
        return out


class Trajectory(NamedTuple):
    r: np.ndarray
    values: np.ndarray
    derivatives: np.ndarray


def _aligned_steps(r_from: float, r_to: float, step: float, breakpoints) -> tuple[int, float]:
    if step <= 0.0:
        raise ContractError("step must be positive")
    span = r_to - r_from
    n = int(round(abs(span) / step))
    if n < 1 or abs(n * step - abs(span)) > 1e-9 * max(step, abs(span)):
        raise ContractError(
            f"step {step} does not divide the interval [{r_from}, {r_to}]"
        )
    h = math.copysign(step, span)
    lo, hi = min(r_from, r_to), max(r_from, r_to)
    for bp in breakpoints:
        if lo < bp < hi:
            t = (bp - r_from) / h
            if abs(t - round(t)) > 1e-9 * max(1.0, abs(t)):
                raise ContractError(
                    f"breakpoint {bp} is not aligned with the integration grid"
                )
    return n, h


def integrate_schrodinger(
    p,
    e: complex,
    y0: complex,
    dy0: complex,
    r_from: float,
    r_to: float,
    step: float,
) -> Trajectory:
    """Fixed-step RK4 integration of w'' = (V - E) w, forward or backward.

    The step must divide the interval and every breakpoint strictly inside it
    must land on a grid node, so no step straddles a potential jump; the
    potential of each step is read at the step midpoint.
    """
    pw = as_piecewise(p)
    e = complex(e)
    n, h = _aligned_steps(r_from, r_to, step, pw.breakpoints)

    r = r_from + h * np.arange(n + 1)
    ys = np.empty(n + 1, dtype=complex)
    ds = np.empty(n + 1, dtype=complex)
    y, d = complex(y0), complex(dy0)
    ys[0], ds[0] = y, d
    for j in range(n):
        c = pw.value_at(r_from + (j + 0.5) * h) - e
        # RK4 stages for (y, d)' = (d, c y)
        k1y, k1d = d, c * y
        k2y = d + 0.5 * h * k1d
        k2d = c * (y + 0.5 * h * k1y)
        k3y = d + 0.5 * h * k2d
        k3d = c * (y + 0.5 * h * k2y)
        k4y = d + h * k3d
        k4d = c * (y + h * k3y)
        y = y + (h / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
        d = d + (h / 6.0) * (k1d + 2.0 * k2d + 2.0 * k3d + k4d)
        ys[j + 1], ds[j + 1] = y, d
    return Trajectory(r, ys, ds)


def apply_hamiltonian_fd(
    r: np.ndarray,
    u: np.ndarray,
    p,
    step: float | None = None,
    exclude_near: tuple[float, ...] = (),
) -> tuple[np.ndarray, np.ndarray]:
    """Apply -u'' + V u by a central second difference on a uniform grid.

    Returns (hu, valid).  ``valid`` is False at the two edge points, within
    one step of any potential breakpoint (the stencil order degrades across
    the jump) and within one step of every radius in ``exclude_near``; those
    points must stay out of residual norms, and the count of exclusions is
    reported by the callers.
    """
    pw = as_piecewise(p)
    r = np.asarray(r, dtype=float)
    u = np.asarray(u)
    if r.ndim != 1 or r.shape != u.shape or r.size < 3:
        raise ContractError("need matching 1-d arrays with at least 3 samples")
    steps = np.diff(r)
    h = float(steps[0]) if step is None else float(step)
    if h <= 0.0 or np.any(np.abs(steps - h) > 1e-9 * h):
        raise ContractError("grid must be uniform with the declared step")
    gaps = np.diff((0.0,) + pw.breakpoints)
    if gaps.size and h > gaps.min() / 16.0:
        raise ContractError(
            f"grid step {h} too coarse for the narrowest region (width {gaps.min()})"
        )

    v = np.asarray(pw.heights)[np.searchsorted(pw.breakpoints, r, side="right")]
    hu = np.zeros_like(u, dtype=complex)
    hu[1:-1] = -(u[2:] - 2.0 * u[1:-1] + u[:-2]) / (h * h) + v[1:-1] * u[1:-1]

    valid = np.ones(r.shape, dtype=bool)
    valid[0] = valid[-1] = False
    collar = h * (1.0 - 1e-6)
    for x in tuple(pw.breakpoints) + tuple(exclude_near):
        valid &= np.abs(r - x) >= collar
    return hu, valid


def _richardson_derivative(g: Callable[[float], complex], x: float, side: int, h0: float, levels: int = 5) -> complex:
    """One-sided derivative of g at x from value differences, Richardson-extrapolated.

    ``side`` is +1 (right) or -1 (left); the first-order quotients at
    h0 / 2^j are combined through a Neville table that cancels the h, h^2, ...
    error terms in turn.
    """
    gx = g(x)
    table = []
    for j in range(levels):
        h = h0 * 0.5**j
        quot = side * (g(x + side * h) - gx) / h
        row = [quot]
        for m in range(1, j + 1):
            factor = 2.0**m
            row.append((factor * row[m - 1] - table[j - 1][m - 1]) / (factor - 1.0))
        table.append(row)
    return table[-1][-1]


def _kernel_slice(p, e: float, direction: str, wronskian_scale: float = 1.0):
    """G(., s) evaluators for a formal kernel at real E; scale hooks the negative control."""
    chi, om, w = wave_pair(p, complex(float(e)), direction)
    w = w * wronskian_scale

    def g(r, s):
        r_arr = np.asarray(r, dtype=float)
        lo = np.minimum(r_arr, s)
        hi = np.maximum(r_arr, s)
        return chi.value(lo) * om.value(hi) / w

    return g, chi, om, w


def _momentum_scale(p, e: complex) -> float:
    """Largest |sqrt(E - v_j)| over the regions; sets resolvable probe steps."""
    pw = as_piecewise(p)
    return max(abs(branch_sqrt(complex(e) - v)) for v in pw.heights)


def check_jump(p, e: float, s: float, direction: str, wronskian_scale: float = 1.0) -> ResidualReport:
    """Measure the derivative jump of G(., s) across r = s; it must equal 1.

    The one-sided derivatives are Richardson extrapolations of plain
    difference quotients of kernel values, so this check is blind to how the
    waves compute their analytic derivatives.
    """
    e = float(e)
    if e <= 0.0:
        raise DomainError("jump check runs on the formal kernel, E > 0 required")
    pw = as_piecewise(p)
    dist = min([abs(s - bp) for bp in pw.breakpoints] + [s])
    if dist < 1e-3:
        raise ContractError(f"s={s} is within 1e-3 of a potential breakpoint or the origin")
    g, _, _, _ = _kernel_slice(p, e, direction, wronskian_scale)
    # probes must resolve the fastest oscillation of the kernel
    h0 = min(dist, 2.0 / (1.0 + _momentum_scale(p, e))) / 4.0
    levels = 5
    d_right = _richardson_derivative(lambda r: g(r, s), s, +1, h0, levels)
    d_left = _richardson_derivative(lambda r: g(r, s), s, -1, h0, levels)
    jump = d_right - d_left
    return ResidualReport.build(
        "derivative_jump", samples=2 * levels, max_residual=abs(jump - 1.0), tolerance=1e-6
    )


def _cumulative_simpson(y: np.ndarray, h: float) -> np.ndarray:
    """Prefix integrals of uniformly sampled y with O(h^4) accuracy at every node.

    Even prefixes use composite Simpson pairs; odd prefixes close with a
    3/8 panel over the last three intervals (the first interval alone uses
    the quadratic through the leading three samples).
    """
    n = y.size
    if n < 4:
        raise ContractError("cumulative Simpson needs at least 4 samples")
    out = np.zeros(n, dtype=y.dtype)
    pairs = (h / 3.0) * (y[0:-2:2] + 4.0 * y[1:-1:2] + y[2::2])
    even_idx = np.arange(2, n, 2)
    out[even_idx] = np.cumsum(pairs)
    out[1] = (h / 12.0) * (5.0 * y[0] + 8.0 * y[1] - y[2])
    odd_idx = np.arange(3, n, 2)
    if odd_idx.size:
        closing = (3.0 * h / 8.0) * (
            y[odd_idx - 3] + 3.0 * y[odd_idx - 2] + 3.0 * y[odd_idx - 1] + y[odd_idx]
        )
        out[odd_idx] = out[odd_idx - 3] + closing
    return out


def default_r_max(p, e: complex, f: TestFunction) -> float:
    """Truncation radius leaving at least 20 decay lengths beyond the bump."""
    pw = as_piecewise(p)
    outer = pw.breakpoints[-1] if pw.breakpoints else 0.0
    im_k = abs(branch_sqrt(complex(e)).imag)
    if im_k == 0.0:
        raise ContractError("default_r_max needs Im sqrt(E) != 0")
    return max(outer, f.support[1]) + max(20.0, 20.0 / im_k)


def check_resolvent_identity(
    p,
    e: complex,
    f: TestFunction,
    r_max: float | None = None,
    quad_step: float = 1e-3,
    tolerance: float = 1e-4,
) -> ResidualReport:
    """Rebuild (E - H)^{-1} f by quadrature and verify (E - h) u = f.

    u(r) = integral of G(r, s; E) f(s) ds is assembled from prefix/suffix
    Simpson integrals of chi*f and omega*f, which is composite Simpson with a
    panel boundary exactly at the kink s = r.  The finite-difference operator
    then has to return f; its second-order truncation error dominates the
    reported residual, so halving ``quad_step`` shrinks it about fourfold.
    The same step is used for quadrature and differencing.
    """
    e = complex(e)
    if e.imag == 0.0:
        raise ContractError("resolvent identity requires Im E != 0")
    lo, hi = f.support
    if r_max is None:
        r_max = default_r_max(p, e, f)
    im_k = abs(branch_sqrt(e).imag)
    if im_k * (r_max - hi) < 20.0 * (1.0 - 1e-9):
        raise ContractError(
            f"truncation margin too small: Im sqrt(E) * (r_max - support_hi) = "
            f"{im_k * (r_max - hi):.3f} < 20"
        )
    h = float(quad_step)
    if lo - h <= 0.0:
        raise ContractError("support must leave room for one grid step above the origin")

    direction = "plus" if e.imag > 0.0 else "minus"
    chi, om, w = wave_pair(p, e, direction)

    n = int(math.ceil((hi - lo) / h - 1e-9))
    s_grid = lo + h * np.arange(n + 1)
    chi_s = chi.value(s_grid)
    om_s = om.value(s_grid)
    f_s = f(s_grid)

    pre_chi = _cumulative_simpson(chi_s * f_s, h)
    pre_om = _cumulative_simpson(om_s * f_s, h)
    total_chi = pre_chi[-1]
    total_om = pre_om[-1]

    r_grid = np.concatenate(([s_grid[0] - h], s_grid, [s_grid[-1] + h]))
    u = np.empty(r_grid.size, dtype=complex)
    u[1:-1] = (om_s * pre_chi + chi_s * (total_om - pre_om)) / w
    u[0] = chi.value(r_grid[0]) * total_om / w
    u[-1] = om.value(r_grid[-1]) * total_chi / w

    # the declared support truncates the source, so u'' has a (tiny) jump at
    # the two support edges; flag their collars exactly like potential jumps
    hu, valid = apply_hamiltonian_fd(
        r_grid, u, p, h, exclude_near=(float(s_grid[0]), float(s_grid[-1]))
    )
    resid = np.abs(e * u - hu - f(r_grid))
    scale = float(np.max(np.abs(f_s)))
    inside = (r_grid >= lo) & (r_grid <= s_grid[-1]) & valid
    max_resid = float(np.max(resid[inside])) / scale
    return ResidualReport.build(
        "resolvent_identity",
        samples=int(np.count_nonzero(inside)),
        max_residual=max_resid,
        tolerance=tolerance,
        excluded=int(np.count_nonzero(~valid[1:-1])),
    )


def apply_resolvent_quadrature(p, e: complex, f: TestFunction, quad_step: float = 1e-3):
    """(r_grid, u) with u the Simpson image of f under the resolvent kernel."""
    e = complex(e)
    if e.imag == 0.0:
        raise ContractError("resolvent quadrature requires Im E != 0")
    lo, hi = f.support
    h = float(quad_step)
    direction = "plus" if e.imag > 0.0 else "minus"
    chi, om, w = wave_pair(p, e, direction)
    n = int(math.ceil((hi - lo) / h - 1e-9))
    s_grid = lo + h * np.arange(n + 1)
    chi_s = chi.value(s_grid)
    om_s = om.value(s_grid)
    f_s = f(s_grid)
    pre_chi = _cumulative_simpson(chi_s * f_s, h)
    pre_om = _cumulative_simpson(om_s * f_s, h)
    u = (om_s * pre_chi + chi_s * (pre_om[-1] - pre_om)) / w
    return s_grid, u


def check_distributional_equation(
    p,
    e: float,
    s: float,
    direction: str,
    step: float = 1e-3,
    wronskian_scale: float = 1.0,
) -> ResidualReport:
    """Check that G(., s; E) solves the defining distributional equation.

    Components: the unit derivative jump at r = s, the off-diagonal radial
    equation (RK4 re-integration on both sides of s, seeded purely from
    kernel values and difference-quotient slopes), value/derivative
    continuity at the potential jumps, and kernel continuity across r = s
    (the gap must shrink linearly with the probe offset).
    """
    e = float(e)
    if e <= 0.0:
        raise DomainError("the distributional check runs at real E > 0")
    pw = as_piecewise(p)
    outer = pw.breakpoints[-1] if pw.breakpoints else 1.0
    for x, nm in ((s, "s"),) + tuple((bp, "breakpoint") for bp in pw.breakpoints):
        t = x / step
        if abs(t - round(t)) > 1e-9 * max(1.0, abs(t)):
            raise ContractError(f"{nm}={x} must sit on the step lattice (step {step})")

    jump_report = check_jump(p, e, s, direction, wronskian_scale)
    g, chi, om, w = _kernel_slice(p, e, direction, wronskian_scale)
    probe_cap = 2.0 / (1.0 + _momentum_scale(p, e))

    # left of the diagonal: start from G(0, s) = 0 with a measured slope
    dist0 = min(s, min(pw.breakpoints) if pw.breakpoints else s)
    slope0 = _richardson_derivative(lambda r: g(r, s), 0.0, +1, min(dist0, probe_cap) / 4.0)
    traj = integrate_schrodinger(p, complex(e), 0.0, slope0, 0.0, s, step)
    kern = g(traj.r, s)
    scale = float(np.max(np.abs(kern)))
    left_resid = float(np.max(np.abs(traj.values - kern))) / scale
    n_left = traj.r.size

    # right of the diagonal: integrate inward from beyond the potential, where
    # the tail solution dominates; integrating outward from s would amplify
    # the seed error exponentially through evanescent regions
    r_out = outer + 5.0
    n_out = int(round((r_out - s) / step))
    r_out = s + n_out * step
    slope_out = _richardson_derivative(
        lambda r: g(r, s), r_out, -1, min(1.0, probe_cap) / 4.0
    )
    traj_r = integrate_schrodinger(p, complex(e), g(r_out, s), slope_out, r_out, s, step)
    kern_r = g(traj_r.r, s)
    scale_r = float(np.max(np.abs(kern_r)))
    right_resid = float(np.max(np.abs(traj_r.values - kern_r))) / scale_r
    ode_report = ResidualReport.build(
        "offdiagonal_radial_equation",
        samples=n_left + traj_r.r.size,
        max_residual=max(left_resid, right_resid),
        tolerance=1e-7,
    )

    # continuity at the potential jumps, value and slope, both as one-sided limits;
    # G(., s) varies through chi left of the diagonal and through omega right of it
    interface_resid = 0.0
    for bp in pw.breakpoints:
        radial = chi if bp < s else om
        frozen = om.value(s) if bp < s else chi.value(s)
        g_here = abs(radial.value(bp) * frozen / w)
        for fn in ("value", "derivative"):
            left = getattr(radial, fn)(bp, "-")
            right = getattr(radial, fn)(bp, "+")
            num = abs(left - right) * abs(frozen) / abs(w)
            interface_resid = max(interface_resid, num / (1.0 + g_here))
    interface_report = ResidualReport.build(
        "interface_continuity",
        samples=4 * len(pw.breakpoints),
        max_residual=interface_resid,
        tolerance=1e-10,
    )

    # continuity across the diagonal: the gap must vanish linearly in h
    dist_s = min([abs(s - bp) for bp in pw.breakpoints] + [s, 1.0, probe_cap])
    slope_right = _richardson_derivative(lambda r: g(r, s), s, +1, dist_s / 4.0)
    slope_left = _richardson_derivative(lambda r: g(r, s), s, -1, dist_s / 4.0)
    probes = np.array([1e-2, 1e-3, 1e-4]) * min(1.0, dist_s)
    gaps = np.array([abs(g(s + h, s) - g(s - h, s)) for h in probes])
    slope_scale = abs(slope_right) + abs(slope_left) + 1.0
    diag_resid = float(gaps[-1] / (probes[-1] * slope_scale))
    diag_report = ResidualReport.build(
        "diagonal_continuity", samples=probes.size, max_residual=diag_resid, tolerance=10.0
    )

    return ResidualReport.combine(
        "distributional_equation",
        (jump_report, ode_report, interface_report, diag_report),
    )
