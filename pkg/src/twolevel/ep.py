"""Locating exceptional points (Z = 0) along a one-parameter family."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import eigenvalues
from .scenario import SweepScenario

#: Relative |Z| tolerance for declaring a located minimum a true coalescence.
EP_Z_TOL = 1e-8
DOMINANCE_THRESHOLD = 0.999
GOLDEN_XTOL = 1e-12

LEVEL_REPULSION = "level_repulsion"
WIDTH_BIFURCATION = "width_bifurcation"
MIXED = "mixed"

ANALYTIC_EQUAL_WIDTHS = "analytic_equal_widths"  # imaginary coupling
ANALYTIC_EQUAL_ENERGIES = "analytic_equal_energies"  # real coupling
NUMERIC_MIN = "numeric_min"

_INVGOLD = (math.sqrt(5.0) - 1.0) / 2.0


class EmptyBracket(ValueError):
    pass


class AtEp(ValueError):
    """Regime classification requested at the coalescence itself."""


@dataclass(frozen=True)
class RegimeLabel:
    kind: str
    dominance: float


@dataclass(frozen=True)
class EpReport:
    a_star: float
    z_mag: float
    method: str
    is_true_ep: bool
    regime_left: str
    regime_right: str

    def as_dict(self) -> dict:
        return {
            "a_star": self.a_star,
            "z_mag": self.z_mag,
            "method": self.method,
            "is_true_ep": self.is_true_ep,
            "regime_left": self.regime_left,
            "regime_right": self.regime_right,
        }


def z_value(scenario: SweepScenario, a: float) -> complex:
    return eigenvalues(scenario.hamiltonian(a))[2]


def z_magnitude(scenario: SweepScenario, a: float) -> float:
    return abs(z_value(scenario, a))


def classify_z(z: complex, tol: float = EP_Z_TOL) -> RegimeLabel:
    """Regime from the direction of Z in the complex plane.

    Real Z splits the energies (level repulsion), imaginary Z splits the
    widths (width bifurcation).
    """
    mag = abs(z)
    if mag < tol:
        raise AtEp(f"|Z| = {mag:.3e} is below the coalescence tolerance")
    re, im = abs(z.real), abs(z.imag)
    dominance = max(re, im) / (re + im)
    if re > DOMINANCE_THRESHOLD * mag:
        kind = LEVEL_REPULSION
    elif im > DOMINANCE_THRESHOLD * mag:
        kind = WIDTH_BIFURCATION
    else:
        kind = MIXED
    return RegimeLabel(kind, dominance)


def regime_classify(scenario: SweepScenario, a: float, tol: float = EP_Z_TOL) -> RegimeLabel:
    return classify_z(z_value(scenario, a), tol)


def _dec(x: float) -> Fraction:
    return Fraction(repr(float(x)))


def _solve_linear_pm(d0, d1, k, w0, w1) -> list[Fraction]:
    # d0 + d1*a = s*k*(w0 + w1*a) for s = +1, -1, excluding points where the coupling vanishes
    roots = []
    for s in (1, -1):
        den = d1 - s * k * w1
        num = s * k * w0 - d0
        if den == 0:
            continue
        a = num / den
        if w0 + w1 * a != 0:
            roots.append(a)
    return sorted(set(roots))


def _analytic(scenario: SweepScenario) -> tuple[list[Fraction], str | None]:
    w0, w1 = scenario.omega
    if w0 == 0 and w1 == 0:
        return [], None
    e1, e2 = [tuple(map(_dec, c)) for c in (scenario.e1, scenario.e2)]
    g1, g2 = [tuple(map(_dec, c)) for c in (scenario.gamma1, scenario.gamma2)]
    if g1 == g2 and w0.real == 0 and w1.real == 0:
        # e1 - e2 = +/- 2 omega_0 with omega = i omega_0
        roots = _solve_linear_pm(e1[0] - e2[0], e1[1] - e2[1], 2, _dec(w0.imag), _dec(w1.imag))
        return roots, ANALYTIC_EQUAL_WIDTHS
    if e1 == e2 and w0.imag == 0 and w1.imag == 0:
        # gamma1 - gamma2 = +/- 4 omega with omega real
        roots = _solve_linear_pm(g1[0] - g2[0], g1[1] - g2[1], 4, _dec(w0.real), _dec(w1.real))
        return roots, ANALYTIC_EQUAL_ENERGIES
    return [], None


def analytic_ep_conditions(scenario: SweepScenario) -> list[float]:
    """Closed-form EP parameters, or ``[]`` when neither special case applies.

    Handles equal widths with purely imaginary coupling and equal energies
    with purely real coupling; the coupling may depend linearly on ``a``.
    """
    roots, _ = _analytic(scenario)
    return [float(a) for a in roots]


def _z2_poly(scenario: SweepScenario) -> tuple[complex, complex, complex]:
    # (2Z)^2 = (d0 + d1 a)^2 + 4 (w0 + w1 a)^2 with d = eps1 - eps2
    d0 = complex(scenario.e1[0] - scenario.e2[0], 0.5 * (scenario.gamma1[0] - scenario.gamma2[0]))
    d1 = complex(scenario.e1[1] - scenario.e2[1], 0.5 * (scenario.gamma1[1] - scenario.gamma2[1]))
    w0, w1 = scenario.omega
    return d0 * d0 + 4 * w0 * w0, 2 * d0 * d1 + 8 * w0 * w1, d1 * d1 + 4 * w1 * w1


def golden_section(f, lo: float, hi: float, xtol: float = GOLDEN_XTOL) -> float:
    """Minimize a unimodal ``f`` on ``[lo, hi]``."""
    a, b = lo, hi
    c = b - _INVGOLD * (b - a)
    d = a + _INVGOLD * (b - a)
    fc, fd = f(c), f(d)
    while abs(b - a) > xtol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVGOLD * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVGOLD * (b - a)
            fd = f(d)
        if c == d:
            break
    best = min((a, b, c, d), key=f)
    return best


def _polish(scenario: SweepScenario, a: float, lo: float, hi: float) -> float:
    # |Z| ~ sqrt|a - a*| near a zero, so the bracket tolerance alone leaves
    # |Z| ~ 1e-6. Gauss-Newton on the smooth quadratic Z^2(a) finishes the job.
    p0, p1, p2 = _z2_poly(scenario)
    best_a, best_z = a, z_magnitude(scenario, a)
    for _ in range(8):
        f = p0 + p1 * best_a + p2 * best_a * best_a
        df = p1 + 2 * p2 * best_a
        if df == 0:
            break
        step = (df.conjugate() * f).real / abs(df) ** 2
        cand = min(max(best_a - step, lo), hi)
        zc = z_magnitude(scenario, cand)
        if zc >= best_z:
            break
        best_a, best_z = cand, zc
    # parameters are read as decimals; a nearby short decimal may be the exact zero
    for digits in range(4, 17):
        cand = float(f"{best_a:.{digits}g}")
        if lo <= cand <= hi:
            zc = z_magnitude(scenario, cand)
            if zc < best_z:
                best_a, best_z = cand, zc
    return best_a


def _side_regimes(scenario: SweepScenario, a_star: float, h: float) -> tuple[str, str]:
    out = []
    for a in (a_star - h, a_star + h):
        try:
            out.append(regime_classify(scenario, a).kind)
        except AtEp:
            out.append(MIXED)
    return out[0], out[1]


def find_ep_numeric(
    scenario: SweepScenario,
    bracket: tuple[float, float],
    z_tol_rel: float = EP_Z_TOL,
    side_offset: float | None = None,
) -> EpReport:
    """Minimize |Z(a)|^2 over ``bracket`` and report the minimum.

    The minimum is always returned; ``is_true_ep`` says whether it is an
    actual coalescence, i.e. ``|Z| < z_tol_rel * max(1 + |Z(endpoint)|)``.
    Regimes are sampled ``side_offset`` to either side of the minimum
    (default: a thousandth of the bracket).
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
        raise EmptyBracket(f"degenerate bracket ({lo}, {hi})")

    def f(a):
        return z_magnitude(scenario, a) ** 2

    a_star = golden_section(f, lo, hi)
    a_star = _polish(scenario, a_star, lo, hi)
    z_mag = z_magnitude(scenario, a_star)
    scale = max(1.0 + z_magnitude(scenario, lo), 1.0 + z_magnitude(scenario, hi))
    if side_offset is None:
        side_offset = 1e-3 * (hi - lo)
    left, right = _side_regimes(scenario, a_star, side_offset)
    return EpReport(a_star, z_mag, NUMERIC_MIN, z_mag < z_tol_rel * scale, left, right)


def _local_minima(values: np.ndarray) -> list[int]:
    idx = []
    for i in range(1, len(values) - 1):
        if values[i] <= values[i - 1] and values[i] < values[i + 1]:
            idx.append(i)
    return idx


def locate_eps(scenario: SweepScenario, z_tol_rel: float = EP_Z_TOL) -> list[EpReport]:
    """All coalescences of a scenario.

    Closed-form solutions are used when available (including ones outside the
    sweep window); otherwise each interior local minimum of |Z| on the grid
    is refined numerically.
    """
    roots, method = _analytic(scenario)
    h = 1e-3 * (scenario.a_max - scenario.a_min)
    if roots:
        reports = []
        for root in roots:
            a = float(root)
            z_mag = z_magnitude(scenario, a)
            left, right = _side_regimes(scenario, a, h)
            reports.append(EpReport(a, z_mag, method, z_mag < z_tol_rel, left, right))
        return reports

    grid = scenario.grid()
    zs = np.array([z_magnitude(scenario, a) for a in grid])
    return [
        find_ep_numeric(scenario, (grid[i - 1], grid[i + 1]), z_tol_rel, side_offset=h)
        for i in _local_minima(zs)
    ]
