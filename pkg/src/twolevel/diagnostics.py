"""Scalar diagnostics for the environment-mediated coupling of the two states."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    TwoLevelHamiltonian,
    ZeroVector,
    _check_normalized,
    conj_inner,
)


@dataclass(frozen=True)
class SourceTermMatrix:
    """Off-diagonal coupling block W = [[0, w12], [w12, 0]]."""

    w12: complex

    def matrix(self) -> np.ndarray:
        return np.array([[0.0, self.w12], [self.w12, 0.0]], dtype=complex)


@dataclass(frozen=True)
class DiagnosticsRecord:
    nonlinear_mag1: float
    nonlinear_mag2: float
    ep_alignment: float
    residual1: float
    residual2: float


def source_term_matrix(h: TwoLevelHamiltonian) -> SourceTermMatrix:
    return SourceTermMatrix(h.omega)


def nonlinear_magnitude(phi, w: SourceTermMatrix, a_norm: float) -> float:
    """|<phi|W|phi>| * A for a biorthogonally normalized ``phi``.

    Vanishes for unmixed states and for vanishing coupling; grows like A
    close to an exceptional point.
    """
    phi = np.asarray(phi, dtype=complex)
    _check_normalized(phi)
    expectation = conj_inner(phi, w.matrix() @ phi)
    return abs(expectation) * float(a_norm)


def _unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    n = float(np.linalg.norm(v))
    if n == 0.0:
        raise ZeroVector("alignment of the zero vector is undefined")
    return v / n


def ep_phase_alignment(phi1, phi2) -> float:
    """Distance between ``phi1`` and ``+/- i phi2`` after optimal global rephasing.

    Both inputs are scaled to unit conjugate norm first.  Returns a value in
    [0, sqrt(2)]; 0 when the vectors are proportional, sqrt(2) when orthogonal.
    """
    u1, u2 = _unit(phi1), _unit(phi2)
    ip = conj_inner(u2, u1)
    m = abs(ip)
    if m == 0.0:
        return math.sqrt(2.0)
    # the optimal rotation +/- i e^{i phi*} is the phase of <u2|u1> for either sign
    rotation = complex(ip.real / m, ip.imag / m)
    return min(float(np.linalg.norm(u1 - rotation * u2)), math.sqrt(2.0))


def residual(h: TwoLevelHamiltonian, eig: complex, phi) -> float:
    """||(H - eig) phi||."""
    phi = np.asarray(phi, dtype=complex)
    return float(np.linalg.norm(h.matrix() @ phi - eig * phi))
