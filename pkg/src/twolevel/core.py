"""Analytic diagonalization of the symmetric non-Hermitian 2x2 Hamiltonian.

The Hamiltonian is

    H = [[eps1, omega], [omega, eps2]],   eps_k = e_k + (i/2) gamma_k

with eigenvalues ``(eps1 + eps2)/2 +/- Z`` and
``Z = sqrt((eps1 - eps2)**2 + 4 omega**2) / 2``.  Because ``H`` is complex
symmetric, the left eigenvectors are the complex conjugates of the right ones
and the eigenvectors are normalized with the bilinear product
``phi.T @ phi = 1`` instead of the conjugate norm.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

#: Relative threshold for calling a vector self-orthogonal, |v.T v| < EP_TOL * (v^H v).
EP_TOL = 1e-12
#: Sentinel reported for the conjugate norm A_i when the vector is self-orthogonal.
A_CAP = 1e12
#: Tolerance on phi.T @ phi = 1 for inputs claimed to be biorthogonally normalized.
NORMALIZATION_TOL = 1e-10

# Below this relative size the rounded Z**2 is dominated by cancellation and is
# recomputed exactly.
_CANCEL_RTOL = 1e-8
_TIE_RTOL = 1e-12


class TwoLevelError(ValueError):
    """Base class for errors raised by the two-level solver."""


class DegenerateDecoupled(TwoLevelError):
    """omega = 0 and eps1 = eps2: every vector is an eigenvector."""


class ZeroVector(TwoLevelError):
    """A zero vector was passed where a direction is required."""


class NotNormalized(TwoLevelError):
    """A vector fails the biorthogonal normalization phi.T @ phi = 1."""


def _finite(name: str, value: complex) -> None:
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class TwoLevelHamiltonian:
    """Two complex diagonal energies coupled by a single symmetric element.

    ``gamma <= 0`` describes decay, ``gamma > 0`` gain.
    """

    e1: float
    e2: float
    gamma1: float
    gamma2: float
    omega: complex = 0j

    def __post_init__(self) -> None:
        for name in ("e1", "e2", "gamma1", "gamma2"):
            value = getattr(self, name)
            if isinstance(value, complex):
                raise TypeError(f"{name} must be real")
            object.__setattr__(self, name, float(value))
            _finite(name, getattr(self, name))
        object.__setattr__(self, "omega", complex(self.omega))
        _finite("omega", self.omega)

    @property
    def eps1(self) -> complex:
        return complex(self.e1, 0.5 * self.gamma1)

    @property
    def eps2(self) -> complex:
        return complex(self.e2, 0.5 * self.gamma2)

    def matrix(self) -> np.ndarray:
        return np.array([[self.eps1, self.omega], [self.omega, self.eps2]], dtype=complex)

    def swapped(self) -> "TwoLevelHamiltonian":
        """Same Hamiltonian with the two basis states exchanged."""
        return TwoLevelHamiltonian(self.e2, self.e1, self.gamma2, self.gamma1, self.omega)


def _exact_z_squared(h: TwoLevelHamiltonian) -> complex:
    # Inputs are read as the decimals they print as, so preset values such as
    # e1 - e2 = 2 * 0.1 cancel exactly instead of leaving a 1e-17 remainder.
    e1, e2, g1, g2 = (Fraction(repr(x)) for x in (h.e1, h.e2, h.gamma1, h.gamma2))
    wr, wi = Fraction(repr(h.omega.real)), Fraction(repr(h.omega.imag))
    dr, di = e1 - e2, (g1 - g2) / 2
    re = dr * dr - di * di + 4 * (wr * wr - wi * wi)
    im = 2 * dr * di + 8 * wr * wi
    return complex(float(re), float(im))


def z_squared(h: TwoLevelHamiltonian) -> complex:
    """(eps1 - eps2)**2 + 4 omega**2, i.e. (2Z)**2."""
    d = h.eps1 - h.eps2
    w = h.omega
    z2 = d * d + 4.0 * w * w
    scale = abs(d) ** 2 + 4.0 * abs(w) ** 2
    if abs(z2) <= _CANCEL_RTOL * scale:
        z2 = _exact_z_squared(h)
    if z2.imag == 0.0:
        # a signed zero would pick the lower lip of the branch cut
        z2 = complex(z2.real, 0.0)
    return z2


def eigenvalues(h: TwoLevelHamiltonian) -> tuple[complex, complex, complex]:
    """Return ``(eig1, eig2, Z)`` with ``eig1 = mean + Z`` and ``eig2 = mean - Z``.

    Z uses the principal square root, except in the decoupled case
    ``omega = 0`` where ``Z = (eps1 - eps2)/2`` so that each eigenvalue keeps
    the label of its unperturbed state.
    """
    if h.omega == 0:
        return h.eps1, h.eps2, 0.5 * (h.eps1 - h.eps2)
    big = max(abs(h.eps1 - h.eps2), 2.0 * abs(h.omega))
    if 1e-150 < big < 1e150:
        z = 0.5 * cmath.sqrt(z_squared(h))
    else:
        # squares would under- or overflow; work on a power-of-two rescaled copy
        _, exp = math.frexp(big)
        k = -exp
        d = (h.eps1 - h.eps2) * 2.0**k if k < 1000 else (h.eps1 - h.eps2) * 2.0**(k // 2) * 2.0**(k - k // 2)
        w = h.omega * 2.0**k if k < 1000 else h.omega * 2.0**(k // 2) * 2.0**(k - k // 2)
        z = 0.5 * cmath.sqrt(d * d + 4.0 * w * w)
        z = complex(math.ldexp(z.real, exp), math.ldexp(z.imag, exp))
    mean = 0.5 * (h.eps1 + h.eps2)
    return mean + z, mean - z, z


def raw_eigenvector(h: TwoLevelHamiltonian, eig: complex) -> np.ndarray:
    """Unnormalized right eigenvector for the eigenvalue ``eig``.

    Built from whichever row of ``H - eig`` has the larger norm and scaled so
    that its largest component has modulus 1.
    """
    if h.omega == 0 and h.eps1 == h.eps2:
        raise DegenerateDecoupled("omega = 0 and eps1 = eps2; eigenvector is arbitrary")
    return _vector_from_shifts(h.omega, eig - h.eps1, eig - h.eps2)


def _vector_from_shifts(w: complex, p: complex, q: complex) -> np.ndarray:
    # p = eig - eps1, q = eig - eps2; rows of H - eig are (-p, w) and (w, -q)
    if w == 0:
        return np.array([1, 0] if abs(p) <= abs(q) else [0, 1], dtype=complex)
    v = (w, p) if abs(p) >= abs(q) else (q, w)
    # power-of-two rescale: exact, and safe for subnormal components
    _, exp = math.frexp(max(abs(v[0]), abs(v[1])))
    return np.array(
        [complex(math.ldexp(c.real, -exp), math.ldexp(c.imag, -exp)) for c in v], dtype=complex
    )


def _branch_vectors(h: TwoLevelHamiltonian, z: complex) -> tuple[np.ndarray, np.ndarray]:
    # eig1,2 - eps1 = -d/2 +/- Z without forming the mean, which would absorb a tiny Z
    if h.omega == 0 and h.eps1 == h.eps2:
        raise DegenerateDecoupled("omega = 0 and eps1 = eps2; eigenvector is arbitrary")
    half = 0.5 * (h.eps1 - h.eps2)
    return (
        _vector_from_shifts(h.omega, z - half, z + half),
        _vector_from_shifts(h.omega, -z - half, -z + half),
    )


def _bilinear(v: np.ndarray) -> complex:
    return complex(v[0] * v[0] + v[1] * v[1])


def _conj_norm2(v: np.ndarray) -> float:
    return float(abs(v[0]) ** 2 + abs(v[1]) ** 2)


def _fix_sign(phi: np.ndarray) -> np.ndarray:
    m0, m1 = abs(phi[0]), abs(phi[1])
    if abs(m0 - m1) <= _TIE_RTOL * max(m0, m1):
        # symmetric under component exchange, so swapped bases give swapped vectors
        ref = phi[0] + phi[1]
        if ref == 0:
            ref = phi[0]
    else:
        ref = phi[0] if m0 > m1 else phi[1]
    if ref.real < 0 or (ref.real == 0 and ref.imag < 0):
        return -phi
    return phi


def biorthogonal_normalize(v) -> tuple[np.ndarray, float, bool]:
    """Scale ``v`` so that ``phi.T @ phi = 1``.

    Returns ``(phi, a_norm, at_ep)`` where ``a_norm = phi^H phi >= 1``.  A
    self-orthogonal vector (``|v.T v| < EP_TOL * v^H v``) cannot be normalized;
    it is returned with unit conjugate norm, ``a_norm = A_CAP`` and
    ``at_ep = True``.

    The remaining sign freedom is fixed so that the largest component has its
    argument in (-pi/2, pi/2].
    """
    v = np.asarray(v, dtype=complex)
    nrm2 = _conj_norm2(v)
    if nrm2 == 0.0:
        raise ZeroVector("cannot normalize the zero vector")
    c = _bilinear(v)
    if abs(c) < EP_TOL * nrm2:
        return v / math.sqrt(nrm2), A_CAP, True
    phi = _fix_sign(v / cmath.sqrt(c))
    # rounding guard: |v.T v| <= v^H v holds exactly in real arithmetic
    a_norm = max(1.0, _conj_norm2(phi))
    return phi, a_norm, False


def phase_rigidity(v) -> float:
    """|v.T v| / (v^H v); 1 for a real vector, 0 for a self-orthogonal one."""
    v = np.asarray(v, dtype=complex)
    nrm2 = _conj_norm2(v)
    if nrm2 == 0.0:
        raise ZeroVector("phase rigidity of the zero vector is undefined")
    return min(1.0, abs(_bilinear(v)) / nrm2)


def _check_normalized(phi: np.ndarray) -> None:
    dev = abs(_bilinear(phi) - 1.0)
    if dev > NORMALIZATION_TOL * max(1.0, _conj_norm2(phi)):
        raise NotNormalized(f"phi.T @ phi deviates from 1 by {dev:.3e}")


def conj_inner(u, v) -> complex:
    """<u|v> = sum(conj(u_k) v_k)."""
    return complex(np.vdot(u, v))


def cross_overlap(phi_i, phi_j) -> complex:
    """Conjugate overlap <phi_i|phi_j> of two biorthogonally normalized vectors.

    For a biorthogonal pair this is purely imaginary and antisymmetric.
    """
    phi_i = np.asarray(phi_i, dtype=complex)
    phi_j = np.asarray(phi_j, dtype=complex)
    _check_normalized(phi_i)
    _check_normalized(phi_j)
    return conj_inner(phi_i, phi_j)


def _angle(b: complex) -> float:
    if b == 0:
        return 0.0
    theta = math.atan2(b.imag, b.real)
    return math.pi if theta == -math.pi else theta


def mixing_coefficients(phi) -> tuple[np.ndarray, np.ndarray]:
    """Expansion coefficients of ``phi`` in the unperturbed basis, and their phases.

    The unperturbed Hamiltonian is diagonal, so the coefficients are just the
    components of ``phi``.  Phases lie in (-pi, pi]; a zero coefficient gets
    phase 0.
    """
    phi = np.asarray(phi, dtype=complex)
    _check_normalized(phi)
    b = phi.copy()
    theta = np.array([_angle(complex(x)) for x in b])
    return b, theta


@dataclass(frozen=True)
class EigenSolution:
    """Eigenvalues, eigenvectors and derived per-state observables.

    ``b[i, j]`` is the weight of unperturbed state ``j`` in eigenstate ``i``.
    ``cross_overlap`` is <phi_1|phi_2>.  When ``at_ep`` is set the vectors
    have unit conjugate norm and ``a1 = a2 = A_CAP``.  ``degenerate`` marks
    the decoupled, equal-energy case where basis vectors are returned.
    """

    eig1: complex
    eig2: complex
    z: complex
    raw1: np.ndarray = field(repr=False)
    raw2: np.ndarray = field(repr=False)
    vec1: np.ndarray
    vec2: np.ndarray
    a1: float
    a2: float
    r1: float
    r2: float
    b: np.ndarray
    theta: np.ndarray
    cross_overlap: complex
    at_ep: bool
    degenerate: bool = False

    @property
    def eigs(self) -> tuple[complex, complex]:
        return self.eig1, self.eig2

    @property
    def vecs(self) -> tuple[np.ndarray, np.ndarray]:
        return self.vec1, self.vec2

    def swapped(self) -> "EigenSolution":
        """The same solution with state labels 1 and 2 exchanged."""
        return EigenSolution(
            eig1=self.eig2,
            eig2=self.eig1,
            z=-self.z,
            raw1=self.raw2,
            raw2=self.raw1,
            vec1=self.vec2,
            vec2=self.vec1,
            a1=self.a2,
            a2=self.a1,
            r1=self.r2,
            r2=self.r1,
            b=self.b[::-1].copy(),
            theta=self.theta[::-1].copy(),
            cross_overlap=-self.cross_overlap,
            at_ep=self.at_ep,
            degenerate=self.degenerate,
        )


def _decoupled_solution(h: TwoLevelHamiltonian, eig1, eig2, z) -> EigenSolution:
    e = np.eye(2, dtype=complex)
    return EigenSolution(
        eig1=eig1, eig2=eig2, z=z,
        raw1=e[0].copy(), raw2=e[1].copy(), vec1=e[0].copy(), vec2=e[1].copy(),
        a1=1.0, a2=1.0, r1=1.0, r2=1.0,
        b=e.copy(), theta=np.zeros((2, 2)),
        cross_overlap=0j, at_ep=False, degenerate=True,
    )


def solve(h: TwoLevelHamiltonian) -> EigenSolution:
    """Full eigen-decomposition of ``h``; never raises on EPs or degeneracy."""
    eig1, eig2, z = eigenvalues(h)
    try:
        raw1, raw2 = _branch_vectors(h, z)
    except DegenerateDecoupled:
        return _decoupled_solution(h, eig1, eig2, z)

    phi1, a1, ep1 = biorthogonal_normalize(raw1)
    phi2, a2, ep2 = biorthogonal_normalize(raw2)
    r1 = phase_rigidity(raw1)
    r2 = phase_rigidity(raw2)
    at_ep = ep1 or ep2

    if at_ep:
        u1 = raw1 / math.sqrt(_conj_norm2(raw1))
        u2 = raw2 / math.sqrt(_conj_norm2(raw2))
        # |b_ij| diverges at the EP; scale so that sum_j |b_ij|^2 = A_CAP
        root = math.sqrt(A_CAP)
        b = np.vstack([u1 * root, u2 * root])
        theta = np.vstack([[_angle(complex(x)) for x in u] for u in (u1, u2)])
        return EigenSolution(
            eig1=eig1, eig2=eig2, z=z, raw1=raw1, raw2=raw2, vec1=u1, vec2=u2,
            a1=A_CAP, a2=A_CAP, r1=r1, r2=r2, b=b, theta=theta,
            cross_overlap=complex(0.0, A_CAP), at_ep=True,
        )

    b1, t1 = mixing_coefficients(phi1)
    b2, t2 = mixing_coefficients(phi2)
    return EigenSolution(
        eig1=eig1, eig2=eig2, z=z, raw1=raw1, raw2=raw2, vec1=phi1, vec2=phi2,
        a1=a1, a2=a2, r1=r1, r2=r2,
        b=np.vstack([b1, b2]), theta=np.vstack([t1, t2]),
        cross_overlap=cross_overlap(phi1, phi2), at_ep=False,
    )
