"""Self-check run by ``twolevel validate``: invariants, EP cross-checks, preset values."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import TwoLevelHamiltonian, cross_overlap, eigenvalues, phase_rigidity, solve
from .diagnostics import residual
from .ep import EP_Z_TOL, analytic_ep_conditions, find_ep_numeric, z_magnitude
from .scenario import preset
from .sweep import evaluate_point, run_sweep

DEFAULT_SEED = 42
DEFAULT_SAMPLES = 20000


@dataclass
class Check:
    name: str
    passed: bool
    detail: str


def random_hamiltonian(rng: np.random.Generator, bound: float = 10.0) -> TwoLevelHamiltonian:
    e1, e2, g1, g2 = rng.uniform(-bound, bound, size=4)
    mag = rng.uniform(0.0, bound)
    phase = rng.uniform(-math.pi, math.pi)
    return TwoLevelHamiltonian(e1, e2, g1, g2, mag * complex(math.cos(phase), math.sin(phase)))


def _property_checks(seed: int, samples: int) -> list[Check]:
    rng = np.random.default_rng(seed)
    worst = dict(trace=0.0, det=0.0, a_min=math.inf, ra=0.0, res=0.0, re_b=0.0, scale=0.0)
    skipped = 0
    for _ in range(samples):
        h = random_hamiltonian(rng)
        sol = solve(h)
        if sol.at_ep or sol.degenerate:
            skipped += 1
            continue
        e1, e2 = h.eps1, h.eps2
        norm_h = max(1.0, float(np.linalg.norm(h.matrix(), 2)))
        scale = abs(e1 * e2) + abs(h.omega) ** 2 + abs(0.5 * (e1 + e2)) ** 2
        worst["trace"] = max(worst["trace"], abs(sol.eig1 + sol.eig2 - (e1 + e2)) / max(1.0, abs(e1) + abs(e2)))
        worst["det"] = max(worst["det"], abs(sol.eig1 * sol.eig2 - (e1 * e2 - h.omega**2)) / max(1.0, scale))
        worst["a_min"] = min(worst["a_min"], sol.a1, sol.a2)
        worst["ra"] = max(worst["ra"], abs(sol.r1 * sol.a1 - 1.0), abs(sol.r2 * sol.a2 - 1.0))
        worst["res"] = max(
            worst["res"],
            residual(h, sol.eig1, sol.vec1) / norm_h,
            residual(h, sol.eig2, sol.vec2) / norm_h,
        )
        worst["re_b"] = max(worst["re_b"], abs(cross_overlap(sol.vec1, sol.vec2).real))
        c = complex(*rng.normal(size=2))
        worst["scale"] = max(worst["scale"], abs(phase_rigidity(c * sol.raw1) - sol.r1))

    n = samples - skipped
    return [
        Check("trace identity", worst["trace"] <= 1e-13, f"max rel dev {worst['trace']:.2e} over {n}"),
        Check("determinant identity", worst["det"] <= 1e-12, f"max rel dev {worst['det']:.2e}"),
        Check("A_i >= 1", worst["a_min"] >= 1.0, f"min A {worst['a_min']:.17g}"),
        Check("r_i * A_i = 1", worst["ra"] <= 1e-12, f"max dev {worst['ra']:.2e}"),
        Check("eigen residual", worst["res"] <= 1e-11, f"max rel residual {worst['res']:.2e}"),
        Check("Re <phi1|phi2> = 0", worst["re_b"] <= 1e-10, f"max |Re| {worst['re_b']:.2e}"),
        Check("rigidity scale invariance", worst["scale"] <= 1e-12, f"max dev {worst['scale']:.2e}"),
    ]


def _ep_checks(ep_z_tol: float) -> list[Check]:
    checks = []
    for name in ("fig1l", "fig2l", "fig3l", "fig3r"):
        scenario = preset(name)
        roots = analytic_ep_conditions(scenario)
        zmax = max(z_magnitude(scenario, a) for a in roots)
        checks.append(Check(f"{name} analytic EPs", bool(roots) and zmax < 1e-13,
                            f"a* = {roots}, max |Z| {zmax:.1e}"))
        devs, true = [], []
        for a in roots:
            rep = find_ep_numeric(scenario, (a - 0.1, a + 0.1), z_tol_rel=ep_z_tol)
            devs.append(abs(rep.a_star - a))
            true.append(rep.is_true_ep)
        checks.append(Check(f"{name} numeric EP cross-check", max(devs) < 1e-9 and all(true),
                            f"max |da| {max(devs):.1e}, true EP flags {true}"))
    return checks


def _preset_checks() -> list[Check]:
    checks = []
    rec = evaluate_point(preset("fig1l"), 0.5)
    widths = sorted([rec.G1_half, rec.G2_half])
    ok = (abs(widths[0] + 0.6) < 1e-12 and abs(widths[1] + 0.4) < 1e-12
          and min(rec.r1, rec.r2) > 1 - 1e-12
          and all(abs(b - 2**-0.5) < 1e-12 for b in (rec.abs_b11, rec.abs_b12, rec.abs_b21, rec.abs_b22)))
    checks.append(Check("fig1l max width bifurcation", ok, f"Gamma/2 = {widths}, r = {rec.r1:.15f}"))

    rec = evaluate_point(preset("fig2l"), 0.0)
    energies = sorted([rec.E1, rec.E2])
    ok = (abs(energies[0] - 0.45) < 1e-13 and abs(energies[1] - 0.55) < 1e-13
          and rec.G1_half == 0 and rec.G2_half == 0 and min(rec.r1, rec.r2) > 1 - 1e-12)
    checks.append(Check("fig2l max level repulsion", ok, f"E = {energies}"))

    rec = evaluate_point(preset("fig2l"), 1.0)
    ok = (abs(rec.r1 - math.sqrt(3) / 2) < 1e-9 and abs(rec.A1 - 2 / math.sqrt(3)) < 1e-9
          and abs(rec.abs_b11 - 3**-0.25) < 1e-9)
    checks.append(Check("fig2l spot value a=1", ok, f"r = {rec.r1:.12f}, A = {rec.A1:.12f}"))

    for name in ("fig1l", "fig2l", "fig3l", "fig3r"):
        scenario = preset(name)
        records = run_sweep(scenario)
        worst = 0.0
        for a_ep in analytic_ep_conditions(scenario):
            near = [min(r.r1, r.r2) for r in records if abs(r.a - a_ep) <= 0.01]
            if near:
                worst = max(worst, min(near))
        checks.append(Check(f"{name} rigidity collapse", worst < 0.01, f"max over EPs of min r {worst:.1e}"))
    return checks


def run_validate(
    seed: int = DEFAULT_SEED, samples: int = DEFAULT_SAMPLES, ep_z_tol: float = EP_Z_TOL
) -> tuple[str, bool]:
    """Run every check and return ``(report_text, all_passed)``.

    ``ep_z_tol`` is exposed so a test can break the EP cross-check on purpose.
    """
    checks = _property_checks(seed, samples) + _ep_checks(ep_z_tol) + _preset_checks()
    width = max(len(c.name) for c in checks)
    lines = [f"validation (seed={seed}, samples={samples})"]
    for c in checks:
        lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.name:<{width}}  {c.detail}")
    passed = all(c.passed for c in checks)
    lines.append(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n", passed
