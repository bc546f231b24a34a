"""The full invariant suite behind ``sqgreen verify``.

Runs every cross-check the package knows about on one configured instance
plus a few seeded random ones and collects the outcomes into a single
machine-readable report.  ``wronskian_scale`` is a test hook: scaling the
kernel normalization must make the jump check fail, which proves the suite
can actually reject a wrong kernel.
"""

from __future__ import annotations

import numpy as np

from .eigenfunctions import chi_wave, omega_wave, wronskian, wronskian_closed_form
from .kernel import boundary_limit, formal_green, resolvent_kernel
from .model import SquareBarrier
from .oracle import (
    ResidualReport,
    TestFunction,
    check_distributional_equation,
    check_resolvent_identity,
)
from .piecewise import PiecewisePotential, build_chi, build_omega


def _wave_continuity(p: SquareBarrier, e: complex) -> float:
    worst = 0.0
    waves = [chi_wave(p, e), omega_wave(p, e, "plus"), omega_wave(p, e, "minus")]
    for w in waves:
        for bp in p.breakpoints:
            for fn in ("value", "derivative"):
                left = getattr(w, fn)(bp, "-")
                right = getattr(w, fn)(bp, "+")
                worst = max(worst, abs(left - right) / (1.0 + abs(right)))
    return worst


def _wronskian_agreement(p: SquareBarrier, e: complex) -> float:
    chi = chi_wave(p, e)
    worst = 0.0
    points = (0.5 * p.a, 0.5 * (p.a + p.b), p.b + 1.0)
    for direction in ("plus", "minus"):
        om = omega_wave(p, e, direction)
        closed = wronskian_closed_form(p, e, direction)
        values = [wronskian(chi, om, r) for r in points]
        for v in values:
            worst = max(worst, abs(v - closed) / abs(closed))
        spread = max(abs(v1 - v2) for v1 in values for v2 in values)
        worst = max(worst, spread / abs(closed))
    return worst


def _engine_agreement(p: SquareBarrier, e: complex, rng: np.random.Generator) -> float:
    pw = PiecewisePotential.from_square_barrier(p)
    radii = rng.uniform(0.05, p.b + 2.0, size=8)
    worst = 0.0
    for closed, engine in (
        (chi_wave(p, e), build_chi(pw, e)),
        (omega_wave(p, e, "plus"), build_omega(pw, e, "plus")),
        (omega_wave(p, e, "minus"), build_omega(pw, e, "minus")),
    ):
        vals_c = closed.value(radii)
        vals_e = engine.value(radii)
        scale = np.abs(vals_c) + 1.0
        worst = max(worst, float(np.max(np.abs(vals_c - vals_e) / scale)))
    ec = complex(e) if complex(e).imag != 0.0 else complex(e) + 0.7j
    for r, s in [(0.4, 1.7), (2.5, 0.9)]:
        g_closed = resolvent_kernel(p, ec, r, s).value
        g_engine = resolvent_kernel(pw, ec, r, s).value
        worst = max(worst, abs(g_closed - g_engine) / (1.0 + abs(g_closed)))
    return worst


def _limit_agreement(p: SquareBarrier, e: float, rng: np.random.Generator) -> float:
    worst = 0.0
    for _ in range(3):
        r = float(rng.uniform(0.1, p.b + 2.0))
        s = float(rng.uniform(0.1, p.b + 2.0))
        for direction in ("plus", "minus"):
            study = boundary_limit(p, e, r, s, direction)
            formal = formal_green(p, e, r, s, direction).value
            worst = max(worst, abs(study.extrapolated - formal))
    return worst


def _random_instances(rng: np.random.Generator, n: int):
    out = []
    while len(out) < n:
        v0 = float(rng.uniform(-5.0, 10.0))
        a = float(rng.uniform(0.2, 3.0))
        b = float(a + rng.uniform(0.3, 2.0))
        e = float(rng.uniform(0.1, max(0.2, 2.0 * v0 + 5.0)))
        if abs(e - v0) < 0.05:
            continue
        out.append((SquareBarrier(v0, a, b), e))
    return out


def run_verification(
    p: SquareBarrier,
    e: float,
    seed: int = 0,
    n_random: int = 2,
    wronskian_scale: float = 1.0,
) -> dict:
    """Run the whole suite; returns the report dictionary used by the CLI."""
    rng = np.random.default_rng(seed)
    e = float(e)
    ec = complex(e, 1.0)
    s_mid = round((0.5 * (p.a + p.b)) / 1e-3) * 1e-3

    checks: list[ResidualReport] = []
    checks.append(
        ResidualReport.build(
            "continuity", samples=12, max_residual=_wave_continuity(p, ec), tolerance=1e-10
        )
    )
    checks.append(
        ResidualReport.build(
            "wronskian", samples=6, max_residual=_wronskian_agreement(p, ec), tolerance=1e-10
        )
    )
    for direction in ("plus", "minus"):
        dist = check_distributional_equation(
            p, e, s_mid, direction, wronskian_scale=wronskian_scale
        )
        for comp in dist.components:
            checks.append(
                ResidualReport.build(
                    f"{comp.name}_{direction}",
                    samples=comp.samples,
                    max_residual=comp.max_residual,
                    tolerance=comp.tolerance,
                    excluded=comp.excluded,
                )
            )
    bump = TestFunction("gaussian_bump", center=max(p.b + 1.0, 3.0), width=0.5)
    checks.append(check_resolvent_identity(p, ec, bump))
    checks.append(
        ResidualReport.build(
            "engine_equivalence",
            samples=30,
            max_residual=_engine_agreement(p, ec, rng),
            tolerance=1e-12,
        )
    )
    checks.append(
        ResidualReport.build(
            "limit_equivalence",
            samples=12,
            max_residual=_limit_agreement(p, e, rng),
            tolerance=1e-8,
        )
    )

    worst_random = 0.0
    for rp, re_ in _random_instances(rng, n_random):
        rec = complex(re_, 1.0)
        worst_random = max(worst_random, _wave_continuity(rp, rec))
        worst_random = max(worst_random, _wronskian_agreement(rp, rec))
    if n_random > 0:
        checks.append(
            ResidualReport.build(
                "randomized_instances",
                samples=n_random,
                max_residual=worst_random,
                tolerance=1e-10,
            )
        )

    report = {
        "instance": {
            "v0": p.v0,
            "a": p.a,
            "b": p.b,
            "energy": {"re": e, "im": 0.0},
            "seed": seed,
        },
        "checks": [c.to_dict() for c in checks],
        "pass": all(c.passed for c in checks),
    }
    return report
