import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import matched, numpy_biorthogonal, quadratic_roots
from twolevel.core import (
    A_CAP,
    DegenerateDecoupled,
    NotNormalized,
    TwoLevelHamiltonian,
    ZeroVector,
    biorthogonal_normalize,
    cross_overlap,
    eigenvalues,
    mixing_coefficients,
    phase_rigidity,
    raw_eigenvector,
    solve,
)
from twolevel.diagnostics import residual

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@st.composite
def hamiltonians(draw):
    mag = draw(st.floats(0, 10))
    phase = draw(st.floats(-math.pi, math.pi))
    return TwoLevelHamiltonian(
        draw(finite), draw(finite), draw(finite), draw(finite), cmath.rect(mag, phase)
    )


def fig1l(a):
    return TwoLevelHamiltonian(1 - a, a, -1.0, -1.0, 0.1j)


def fig2l(a):
    return TwoLevelHamiltonian(0.5, 0.5, -0.05 * a, 0.05 * a, 0.05)


def direction_equal(u, v, tol=1e-12):
    u = np.asarray(u, complex)
    v = np.asarray(v, complex)
    return abs(abs(np.vdot(u, v)) - np.linalg.norm(u) * np.linalg.norm(v)) < tol


# --- hamiltonian ---------------------------------------------------------

def test_diagonal_reconstruction():
    h = TwoLevelHamiltonian(0.3, -0.2, -0.4, 0.6, 0.1 + 0.2j)
    m = h.matrix()
    assert m[0, 0] == complex(0.3, -0.2)
    assert m[1, 1] == complex(-0.2, 0.3)
    assert m[0, 1] == m[1, 0] == 0.1 + 0.2j


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_non_finite_rejected(bad):
    with pytest.raises(ValueError):
        TwoLevelHamiltonian(bad, 0, 0, 0, 0)
    with pytest.raises(ValueError):
        TwoLevelHamiltonian(0, 0, 0, 0, complex(0, bad))


# --- eigenvalues -----------------------------------------------------------

def test_eigenvalues_at_fig1l_ep():
    eig1, eig2, z = eigenvalues(fig1l(0.4))
    assert z == 0
    assert eig1 == eig2 == 0.5 - 0.5j


def test_eigenvalues_decoupled():
    h = TwoLevelHamiltonian(0.3, 0.7, -0.2, -0.4, 0)
    eig1, eig2, z = eigenvalues(h)
    assert {eig1, eig2} == {h.eps1, h.eps2}
    assert z == pytest.approx(0.5 * (h.eps1 - h.eps2)) or z == pytest.approx(0.5 * (h.eps2 - h.eps1))


def test_decoupled_branch_order():
    # principal root: Re Z >= 0, so the state with larger energy comes first
    h = TwoLevelHamiltonian(0.7, 0.3, 0, 0, 0)
    eig1, eig2, z = eigenvalues(h)
    assert (eig1, eig2, z) == (0.7, 0.3, pytest.approx(0.2))


def test_eigenvalues_width_bifurcation():
    # by hand: eps1 = eps2 = 0.5 - 0.5i, Z = sqrt(4 omega^2)/2 = 0.1i
    eig1, eig2, z = eigenvalues(fig1l(0.5))
    assert z == pytest.approx(0.1j, abs=1e-15)
    assert eig1 == pytest.approx(0.5 - 0.4j, abs=1e-15)
    assert eig2 == pytest.approx(0.5 - 0.6j, abs=1e-15)


@settings(max_examples=300, deadline=None)
@given(hamiltonians())
def test_eigenvalues_match_quadratic_formula(h):
    eig1, eig2, _ = eigenvalues(h)
    r1, r2 = quadratic_roots(h)
    scale = max(1.0, abs(h.eps1) + abs(h.eps2) + abs(h.omega))
    # pairwise match as a multiset; sqrt sensitivity near a coalescence widens the error
    z = abs(eig1 - eig2) + 1e-300
    tol = 1e-13 * scale + 1e-15 * scale**2 / z
    assert min(abs(eig1 - r1) + abs(eig2 - r2), abs(eig1 - r2) + abs(eig2 - r1)) <= 2 * tol


@settings(max_examples=300, deadline=None)
@given(hamiltonians())
def test_trace_and_determinant(h):
    eig1, eig2, _ = eigenvalues(h)
    tr = h.eps1 + h.eps2
    assert abs(eig1 + eig2 - tr) <= 1e-13 * max(1.0, abs(h.eps1) + abs(h.eps2))
    det = h.eps1 * h.eps2 - h.omega**2
    scale = abs(h.eps1 * h.eps2) + abs(h.omega) ** 2 + abs(0.5 * tr) ** 2
    assert abs(eig1 * eig2 - det) <= 1e-12 * max(1.0, scale)


# --- raw eigenvector -------------------------------------------------------

def test_raw_eigenvector_equal_diagonal():
    h = TwoLevelHamiltonian(0.2, 0.2, -0.3, -0.3, 0.4 - 0.1j)
    v = raw_eigenvector(h, h.eps1 + h.omega)
    assert direction_equal(v, [1, 1])


def test_raw_eigenvector_self_orthogonal_at_fig2l_ep():
    v = raw_eigenvector(fig2l(2.0), 0.5)
    assert direction_equal(v, [1, 1j])


def test_raw_eigenvector_diagonal():
    h = TwoLevelHamiltonian(0.2, 0.6, 0, 0, 0)
    assert direction_equal(raw_eigenvector(h, h.eps1), [1, 0])
    assert direction_equal(raw_eigenvector(h, h.eps2), [0, 1])


def test_raw_eigenvector_degenerate_decoupled():
    h = TwoLevelHamiltonian(0.2, 0.2, -0.1, -0.1, 0)
    with pytest.raises(DegenerateDecoupled):
        raw_eigenvector(h, h.eps1)


@settings(max_examples=300, deadline=None)
@given(hamiltonians())
def test_raw_eigenvector_residual(h):
    for eig in eigenvalues(h)[:2]:
        try:
            v = raw_eigenvector(h, eig)
        except DegenerateDecoupled:
            continue
        norm_h = max(1.0, np.linalg.norm(h.matrix(), 2))
        res = np.linalg.norm((h.matrix() - eig * np.eye(2)) @ v) / np.linalg.norm(v)
        assert res <= 1e-12 * norm_h


# --- normalization, rigidity ----------------------------------------------

def test_normalize_real_vector():
    phi, a, at_ep = biorthogonal_normalize([1, 1])
    np.testing.assert_allclose(phi, [2**-0.5, 2**-0.5], atol=1e-15)
    assert a == pytest.approx(1.0, abs=1e-15) and not at_ep


def test_normalize_self_orthogonal():
    phi, a, at_ep = biorthogonal_normalize([1, 1j])
    assert at_ep and a == A_CAP
    assert np.linalg.norm(phi) == pytest.approx(1.0)


def test_normalize_fig2l_a1_vector():
    # c = 1 + e^{i pi/3}, |c| = sqrt(3), v^H v = 2  ->  A = 2/sqrt(3)
    phi, a, at_ep = biorthogonal_normalize([1, 0.86603 + 0.5j])
    assert not at_ep
    assert a == pytest.approx(2 / math.sqrt(3), abs=1e-5)
    assert phi @ phi == pytest.approx(1.0, abs=1e-14)


def test_normalize_zero_vector():
    with pytest.raises(ZeroVector):
        biorthogonal_normalize([0, 0])


def test_sign_convention():
    for v in ([-3, 1], [1j * 0.2, -0.1], [-1, -1], [0.3j, 2j]):
        phi, _, _ = biorthogonal_normalize(v)
        big = phi[np.argmax(np.abs(phi))]
        assert -math.pi / 2 < cmath.phase(big) <= math.pi / 2


def test_phase_rigidity_values():
    assert phase_rigidity([1, 1]) == 1.0
    assert phase_rigidity([1, 1j]) == 0.0
    assert phase_rigidity([1, 0.86603 + 0.5j]) == pytest.approx(math.sqrt(3) / 2, abs=1e-5)
    with pytest.raises(ZeroVector):
        phase_rigidity([0, 0])


@settings(max_examples=200, deadline=None)
@given(
    st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
    st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
    st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False),
)
def test_phase_rigidity_scale_invariant(v1, v2, c):
    v = np.array([v1, v2])
    if np.linalg.norm(v) < 1e-3:
        return
    r = phase_rigidity(v)
    assert 0.0 <= r <= 1.0
    assert phase_rigidity(c * v) == pytest.approx(r, abs=1e-12)


# --- overlaps and mixing ---------------------------------------------------

def test_cross_overlap_real_orthogonal_pair():
    s = 2**-0.5
    assert abs(cross_overlap([s, s], [s, -s])) < 1e-15


def test_cross_overlap_fig1l_a045():
    sol = solve(fig1l(0.45))
    b = cross_overlap(sol.vec1, sol.vec2)
    assert abs(b.real) < 1e-10
    assert abs(b) > 0
    assert b + cross_overlap(sol.vec2, sol.vec1) == pytest.approx(0, abs=1e-12)


def test_cross_overlap_requires_normalized():
    with pytest.raises(NotNormalized):
        cross_overlap([1, 1], [1, -1])


def test_mixing_unmixed_state():
    b, theta = mixing_coefficients([1, 0])
    np.testing.assert_array_equal(b, [1, 0])
    np.testing.assert_array_equal(theta, [0, 0])


def test_mixing_maximal_real():
    b, _ = mixing_coefficients([2**-0.5, 2**-0.5])
    np.testing.assert_allclose(np.abs(b), [2**-0.5, 2**-0.5], atol=1e-15)


def test_mixing_fig2l_a1():
    sol = solve(fig2l(1.0))
    np.testing.assert_allclose(np.abs(sol.b), 3**-0.25, atol=1e-12)
    b, _ = mixing_coefficients(sol.vec1)
    assert b[0] ** 2 + b[1] ** 2 == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize(
    "phi, expected",
    [
        ([0.8, complex(-0.6, 0.0)], [0.0, math.pi]),
        ([0.8, complex(-0.6, -0.0)], [0.0, math.pi]),  # -pi is folded to pi
        ([1.25, -0.75j], [0.0, -math.pi / 2]),
    ],
)
def test_mixing_angles(phi, expected):
    _, theta = mixing_coefficients(phi)
    np.testing.assert_allclose(theta, expected, atol=1e-15)


def test_mixing_requires_normalized():
    with pytest.raises(NotNormalized):
        mixing_coefficients([1, 1])


# --- solve ---------------------------------------------------------------

def test_solve_decoupled():
    sol = solve(TwoLevelHamiltonian(0.7, 0.3, -0.1, -0.2, 0))
    assert sol.r1 == sol.r2 == 1.0
    np.testing.assert_allclose(np.abs(sol.b), np.eye(2), atol=1e-15)
    assert sol.cross_overlap == 0


def test_solve_degenerate_decoupled_is_flagged():
    sol = solve(TwoLevelHamiltonian(0.5, 0.5, -0.1, -0.1, 0))
    assert sol.degenerate and not sol.at_ep
    np.testing.assert_array_equal(sol.b, np.eye(2))


def test_solve_fig1l_max_width_bifurcation():
    sol = solve(fig1l(0.5))
    assert sol.eig1.imag == pytest.approx(-0.4, abs=1e-12)
    assert sol.eig2.imag == pytest.approx(-0.6, abs=1e-12)
    assert sol.r1 > 1 - 1e-12 and sol.r2 > 1 - 1e-12
    np.testing.assert_allclose(np.abs(sol.b), 2**-0.5, atol=1e-12)


def test_solve_fig1l_at_ep():
    sol = solve(fig1l(0.4))
    assert sol.at_ep
    assert sol.r1 < 1e-12 and sol.r2 < 1e-12
    assert sol.a1 == sol.a2 == A_CAP


def test_solve_deterministic():
    h = TwoLevelHamiltonian(0.1, -0.3, -0.2, 0.05, 0.07 - 0.02j)
    s1, s2 = solve(h), solve(h)
    assert s1.eig1 == s2.eig1 and s1.eig2 == s2.eig2
    np.testing.assert_array_equal(s1.vec1, s2.vec1)
    np.testing.assert_array_equal(s1.b, s2.b)


@settings(max_examples=300, deadline=None)
@given(hamiltonians())
def test_solution_invariants(h):
    sol = solve(h)
    if sol.at_ep or sol.degenerate:
        return
    norm_h = max(1.0, np.linalg.norm(h.matrix(), 2))
    for eig, phi, a, r in ((sol.eig1, sol.vec1, sol.a1, sol.r1), (sol.eig2, sol.vec2, sol.a2, sol.r2)):
        assert a >= 1.0
        assert 0 < r <= 1
        assert r * a == pytest.approx(1.0, abs=1e-12)
        assert residual(h, eig, phi) <= 1e-11 * norm_h * max(1.0, math.sqrt(a))
    # Re<phi1|phi2> = 0 up to rounding amplified by the overlap size
    assert abs(sol.cross_overlap.real) <= 1e-10 * max(1.0, sol.a1)


@settings(max_examples=200, deadline=None)
@given(hamiltonians())
def test_matches_numpy_eig(h):
    sol = solve(h)
    scale = max(1.0, abs(h.eps1) + abs(h.eps2) + abs(h.omega))
    # numpy's eigenvectors are only defined up to O(eps * scale / gap)
    if sol.at_ep or sol.degenerate or sol.a1 > 1e4 or abs(sol.eig1 - sol.eig2) < 1e-6 * scale:
        return
    pairs = numpy_biorthogonal(h)
    for eig, phi, r in ((sol.eig1, sol.vec1, sol.r1), (sol.eig2, sol.vec2, sol.r2)):
        ref_eig, ref_phi = matched(pairs, eig)
        assert abs(eig - ref_eig) < 1e-9 * max(1.0, abs(eig))
        # vectors agree up to the sign left free by v.T v = 1
        dev = min(np.linalg.norm(phi - ref_phi), np.linalg.norm(phi + ref_phi))
        assert dev < 1e-7 * np.linalg.norm(phi)
        ref_r = abs(ref_phi @ ref_phi) / np.vdot(ref_phi, ref_phi).real
        assert r == pytest.approx(ref_r, abs=1e-8)


@settings(max_examples=300, deadline=None)
@given(hamiltonians())
def test_label_swap_covariance(h):
    sol, swp = solve(h), solve(h.swapped())
    if sol.at_ep or sol.degenerate:
        return
    if h.omega == 0:
        # decoupled eigenvalues follow their unperturbed state, so the labels move too
        swp = swp.swapped()
    assert swp.eig1 == pytest.approx(sol.eig1, abs=1e-13 * max(1, abs(sol.eig1)))
    assert swp.eig2 == pytest.approx(sol.eig2, abs=1e-13 * max(1, abs(sol.eig2)))
    tol = 1e-10 * max(1.0, sol.a1)
    for got, ref in ((swp.vec1, sol.vec1[::-1]), (swp.vec2, sol.vec2[::-1])):
        # v = (x, -x) swaps into -v, which no sign rule can tell apart from v
        assert min(np.abs(got - ref).max(), np.abs(got + ref).max()) <= tol
    assert swp.r1 == pytest.approx(sol.r1, abs=1e-12)
    np.testing.assert_allclose(np.abs(swp.b), np.abs(sol.b)[:, ::-1], atol=tol)


def test_label_swap_at_tie():
    sol, swp = solve(fig1l(0.5)), solve(fig1l(0.5).swapped())
    # symmetric vector: the tie rule reproduces it exactly
    np.testing.assert_allclose(swp.vec1, sol.vec1[::-1], atol=1e-15)
    # antisymmetric vector: equal up to the free overall sign
    np.testing.assert_allclose(swp.vec2, -sol.vec2[::-1], atol=1e-15)


def test_swapped_solution():
    sol = solve(fig2l(1.0))
    s = sol.swapped()
    assert (s.eig1, s.eig2, s.z) == (sol.eig2, sol.eig1, -sol.z)
    assert s.cross_overlap == -sol.cross_overlap
    np.testing.assert_array_equal(s.b[0], sol.b[1])
