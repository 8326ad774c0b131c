"""Parameter sweeps with continuous state labels."""

from __future__ import annotations

from dataclasses import dataclass, field, fields

import numpy as np

from . import diagnostics
from .core import A_CAP, EigenSolution, TwoLevelHamiltonian, conj_inner, solve
from .ep import AtEp, classify_z
from .scenario import PRESET_NAMES, SweepScenario, UnknownPreset, preset

__all__ = [
    "PRESET_NAMES",
    "SweepRecord",
    "SweepScenario",
    "UnknownPreset",
    "evaluate_point",
    "preset",
    "run_sweep",
    "sweep_grid",
    "track_branches",
]

AT_EP_REGIME = "at_ep"
_TIE_TOL = 1e-14


@dataclass(frozen=True)
class SweepRecord:
    """Observables at one parameter value.

    Per-state fields carry the suffix 1 or 2; ``G*_half`` is Gamma/2, the
    imaginary part of the eigenvalue.  ``reZ``/``imZ`` are (E1 - E2)/2 in the
    tracked labeling.
    """

    a: float
    E1: float
    G1_half: float
    E2: float
    G2_half: float
    r1: float
    r2: float
    A1: float
    A2: float
    abs_b11: float
    abs_b12: float
    abs_b21: float
    abs_b22: float
    theta11: float
    theta12: float
    theta21: float
    theta22: float
    nl_mag1: float
    nl_mag2: float
    absZ: float
    reZ: float
    imZ: float
    absB12: float
    ep_alignment: float
    residual1: float
    residual2: float
    at_ep: bool
    regime: str
    solution: EigenSolution = field(repr=False, compare=False)

    @property
    def one_minus_r1(self) -> float:
        return 1.0 - self.r1

    @property
    def one_minus_r2(self) -> float:
        return 1.0 - self.r2

    @property
    def eigs(self) -> tuple[complex, complex]:
        return self.solution.eig1, self.solution.eig2

    def as_dict(self) -> dict:
        out = {f.name: getattr(self, f.name) for f in fields(self) if f.name != "solution"}
        out["one_minus_r1"] = self.one_minus_r1
        out["one_minus_r2"] = self.one_minus_r2
        return out


RECORD_FIELDS = tuple(f.name for f in fields(SweepRecord) if f.name != "solution")


def _record(a: float, h: TwoLevelHamiltonian, sol: EigenSolution) -> SweepRecord:
    w = diagnostics.source_term_matrix(h)
    if sol.at_ep:
        # |<phi|W|phi>| A diverges at the coalescence
        nl1 = nl2 = A_CAP * abs(h.omega)
    else:
        nl1 = diagnostics.nonlinear_magnitude(sol.vec1, w, sol.a1)
        nl2 = diagnostics.nonlinear_magnitude(sol.vec2, w, sol.a2)
    try:
        regime = classify_z(sol.z).kind
    except AtEp:
        regime = AT_EP_REGIME
    b = np.abs(sol.b)
    return SweepRecord(
        a=float(a),
        E1=sol.eig1.real,
        G1_half=sol.eig1.imag,
        E2=sol.eig2.real,
        G2_half=sol.eig2.imag,
        r1=sol.r1,
        r2=sol.r2,
        A1=sol.a1,
        A2=sol.a2,
        abs_b11=float(b[0, 0]),
        abs_b12=float(b[0, 1]),
        abs_b21=float(b[1, 0]),
        abs_b22=float(b[1, 1]),
        theta11=float(sol.theta[0, 0]),
        theta12=float(sol.theta[0, 1]),
        theta21=float(sol.theta[1, 0]),
        theta22=float(sol.theta[1, 1]),
        nl_mag1=nl1,
        nl_mag2=nl2,
        absZ=abs(sol.z),
        reZ=sol.z.real,
        imZ=sol.z.imag,
        absB12=abs(sol.cross_overlap),
        ep_alignment=diagnostics.ep_phase_alignment(sol.vec1, sol.vec2),
        residual1=diagnostics.residual(h, sol.eig1, sol.vec1),
        residual2=diagnostics.residual(h, sol.eig2, sol.vec2),
        at_ep=sol.at_ep,
        regime=regime,
        solution=sol,
    )


def evaluate_point(scenario: SweepScenario, a: float) -> SweepRecord:
    """Record at ``a`` with provisional labels (the +Z branch is state 1)."""
    h = scenario.hamiltonian(a)
    return _record(a, h, solve(h))


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def track_branches(prev: SweepRecord, cur: EigenSolution, carry: tuple[int, int] = (0, 1)) -> tuple[int, int]:
    """Assignment of the current states to the previous labels.

    Returns ``(0, 1)`` to keep the order of ``cur`` or ``(1, 0)`` to swap it.
    Eigenvalue distance decides; near-ties fall back to eigenvector overlap.
    At a flagged coalescence, and when the overlaps tie as well (the step
    leaving a coalescence), the previous step's assignment ``carry`` is reused
    so that the labels are carried forward.
    """
    if cur.at_ep:
        return carry
    p1, p2 = prev.eigs
    keep = abs(p1 - cur.eig1) + abs(p2 - cur.eig2)
    swap = abs(p1 - cur.eig2) + abs(p2 - cur.eig1)
    if abs(keep - swap) > _TIE_TOL:
        return (0, 1) if keep < swap else (1, 0)
    q1, q2 = _unit(prev.solution.vec1), _unit(prev.solution.vec2)
    c1, c2 = _unit(cur.vec1), _unit(cur.vec2)
    keep_ov = abs(conj_inner(q1, c1)) + abs(conj_inner(q2, c2))
    swap_ov = abs(conj_inner(q1, c2)) + abs(conj_inner(q2, c1))
    if abs(keep_ov - swap_ov) <= _TIE_TOL:
        return carry
    return (1, 0) if swap_ov > keep_ov else (0, 1)


def sweep_grid(scenario: SweepScenario, grid, executor=None) -> list[SweepRecord]:
    """Evaluate ``scenario`` on an arbitrary ordered grid and label the branches.

    Point solves are independent and may be farmed out through ``executor``
    (anything with an order-preserving ``map``); labeling is a sequential pass.
    """
    grid = [float(a) for a in grid]
    hams = [scenario.hamiltonian(a) for a in grid]
    mapper = map if executor is None else executor.map
    sols = list(mapper(solve, hams))

    records: list[SweepRecord] = []
    perm = (0, 1)
    for a, h, sol in zip(grid, hams, sols):
        if records:
            perm = track_branches(records[-1], sol, perm)
            if perm == (1, 0):
                sol = sol.swapped()
        records.append(_record(a, h, sol))
    return records


def run_sweep(scenario: SweepScenario, executor=None) -> list[SweepRecord]:
    """``scenario.n_steps`` records on the uniform grid, labels tracked in grid order."""
    return sweep_grid(scenario, scenario.grid(), executor=executor)
