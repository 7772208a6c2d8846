"""Quasiprobability checks: matrix elements, Fourier pairing, normalization,
and the Gaussian smoothing family."""

import math

import numpy as np
import pytest

from cvteleport.exceptions import DomainError
from cvteleport.numerics import QuadratureSpec, integrate_plane, laguerre_assoc
from cvteleport.phase_space import (
    HUSIMI_KIND,
    WIGNER_KIND,
    QuasiDistKind,
    characteristic_fn,
    displacement_element,
    husimi_q,
    quasidist,
    s_ordered,
    smoothed_on_grid,
    wigner,
)
from cvteleport.states import Coherent, FockVector, fock, superposition01

RNG = np.random.default_rng(20240817)
POINTS = RNG.standard_normal(24).view(np.complex128)  # 12 complex points


def displacement_by_matrix_exponential(m, n, nu, dim=64):
    """Independent oracle: exponentiate nu a^dag - conj(nu) a in a truncated basis."""
    from scipy.linalg import expm

    a = np.diag(np.sqrt(np.arange(1, dim)), 1)
    d = expm(nu * a.conj().T - np.conj(nu) * a)
    return d[m, n]


class TestDisplacementElement:
    def test_vacuum_to_vacuum(self):
        nu = 0.4 - 0.9j
        assert displacement_element(0, 0, nu) == pytest.approx(
            math.exp(-0.5 * abs(nu) ** 2)
        )

    def test_one_one_closed_form(self):
        # <1|D(nu)|1> = (1 - |nu|^2) e^{-|nu|^2/2}
        nu = 0.7 + 0.2j
        want = (1 - abs(nu) ** 2) * math.exp(-0.5 * abs(nu) ** 2)
        assert displacement_element(1, 1, nu) == pytest.approx(want, rel=1e-12)

    @pytest.mark.parametrize("m,n", [(0, 0), (1, 0), (0, 1), (2, 1), (1, 3), (4, 4), (6, 2)])
    def test_against_matrix_exponential(self, m, n):
        for nu in (0.3, -0.2 + 0.5j, 1.1j):
            got = displacement_element(m, n, nu)
            want = displacement_by_matrix_exponential(m, n, nu)
            assert got == pytest.approx(want, abs=1e-10)

    def test_unitarity_column(self):
        # columns of D(nu) are unit vectors: sum_m |<m|D|n>|^2 = 1
        nu = 0.6 - 0.4j
        col = sum(abs(displacement_element(m, 2, nu)) ** 2 for m in range(50))
        assert col == pytest.approx(1.0, abs=1e-10)

    def test_adjoint_symmetry(self):
        # <m|D(nu)|n> = conj(<n|D(-nu)|m>)
        nu = 0.8 + 0.3j
        for m, n in [(3, 1), (0, 4), (5, 5)]:
            assert displacement_element(m, n, nu) == pytest.approx(
                np.conj(displacement_element(n, m, -nu)), rel=1e-12
            )

    def test_vectorized_matches_scalar(self):
        got = displacement_element(3, 1, POINTS)
        want = np.array([displacement_element(3, 1, z) for z in POINTS])
        np.testing.assert_allclose(got, want, rtol=1e-13)

    def test_index_guards(self):
        with pytest.raises(DomainError):
            displacement_element(-1, 0, 0.1)
        with pytest.raises(DomainError):
            displacement_element(0, 51, 0.1)
        # the documented ceiling itself stays finite
        val = displacement_element(50, 50, 0.5)
        assert np.isfinite(val.real) and np.isfinite(val.imag)


class TestCharacteristicFunction:
    def test_coherent_closed_form(self):
        alpha, nu = 0.5 + 0.25j, -0.3 + 0.8j
        want = np.exp(-0.5 * abs(nu) ** 2 + nu * np.conj(alpha) - np.conj(nu) * alpha)
        assert characteristic_fn(Coherent(alpha), nu) == pytest.approx(want, rel=1e-12)

    def test_zero_is_one(self):
        for state in (Coherent(1.2j), fock(3), superposition01()):
            assert characteristic_fn(state, 0) == pytest.approx(1.0)

    @pytest.mark.parametrize("state", [fock(0), fock(2), superposition01(),
                                       Coherent(0.4 - 0.6j)])
    def test_hermiticity(self, state):
        # C(-nu) = conj(C(nu)) for any state
        vals = characteristic_fn(state, POINTS)
        flipped = characteristic_fn(state, -POINTS)
        np.testing.assert_allclose(flipped, np.conj(vals), rtol=1e-12, atol=1e-14)

    def test_fock_one_closed_form(self):
        # C_1(nu) = (1 - |nu|^2) e^{-|nu|^2/2}
        vals = characteristic_fn(fock(1), POINTS)
        absq = np.abs(POINTS) ** 2
        np.testing.assert_allclose(vals, (1 - absq) * np.exp(-0.5 * absq), atol=1e-13)

    def test_vacuum_equals_coherent_zero(self):
        np.testing.assert_allclose(
            characteristic_fn(fock(0), POINTS),
            characteristic_fn(Coherent(0), POINTS),
            rtol=1e-13,
        )


def wigner_diagonal_laguerre(n, nu):
    """Test oracle for number states: (2/pi)(-1)^n e^{-2|nu|^2} L_n(4|nu|^2)."""
    absq = np.abs(np.asarray(nu, dtype=complex)) ** 2
    return (2 / np.pi) * (-1.0) ** n * np.exp(-2 * absq) * laguerre_assoc(n, 0, 4 * absq)


class TestWigner:
    def test_coherent_gaussian(self):
        alpha = 0.3 + 1.1j
        vals = wigner(Coherent(alpha), POINTS)
        want = (2 / np.pi) * np.exp(-2 * np.abs(POINTS - alpha) ** 2)
        np.testing.assert_allclose(vals, want, rtol=1e-12)

    @pytest.mark.parametrize("n", [0, 1, 2, 3, 5, 8])
    def test_number_states_match_diagonal_laguerre(self, n):
        np.testing.assert_allclose(
            wigner(fock(n), POINTS), wigner_diagonal_laguerre(n, POINTS),
            rtol=1e-10, atol=1e-13,
        )

    def test_fock_one_origin_value(self):
        assert wigner(fock(1), 0) == pytest.approx(-2 / np.pi, rel=1e-12)

    @pytest.mark.parametrize(
        "state", [fock(0), fock(1), fock(4), superposition01(), Coherent(0.9)]
    )
    def test_normalization(self, state):
        total = integrate_plane(lambda nu: wigner(state, nu),
                                QuadratureSpec(radial_cutoff=7.0, order=160))
        assert total == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("state", [fock(1), fock(3), superposition01()])
    def test_magnitude_bound(self, state):
        grid = (RNG.uniform(-3, 3, 400) + 1j * RNG.uniform(-3, 3, 400))
        assert np.max(np.abs(wigner(state, grid))) <= 2 / np.pi + 1e-12

    @pytest.mark.parametrize("state", [fock(2), superposition01()])
    def test_fourier_inversion_from_characteristic(self, state):
        """W(mu) = (1/pi^2) integral C(nu) e^{mu conj(nu) - conj(mu) nu} d^2nu."""
        spec = QuadratureSpec(radial_cutoff=8.0, order=128)
        for mu in (0.0, 0.5 - 0.2j, 1.0j):
            want = integrate_plane(
                lambda nu: (
                    characteristic_fn(state, nu)
                    * np.exp(mu * np.conj(nu) - np.conj(mu) * nu)
                ).real / np.pi**2,
                spec,
            )
            assert wigner(state, mu) == pytest.approx(want, abs=1e-9)

    def test_superposition_interference_term(self):
        # the 0-1 superposition Wigner is (2/pi) e^{-2|nu|^2} (4x - 1 + ... ) with
        # a linear-in-x cross term; check odd symmetry of W(x) - W(-x) in x
        xs = np.linspace(0.1, 1.5, 7)
        plus = wigner(superposition01(), xs + 0j)
        minus = wigner(superposition01(), -xs + 0j)
        assert np.all(plus > minus)  # cross term pushes weight to positive x


class TestHusimi:
    def test_coherent_overlap_form(self):
        alpha, beta = 0.2 + 0.7j, -0.5 + 0.1j
        want = math.exp(-abs(beta - alpha) ** 2) / math.pi
        assert husimi_q(Coherent(alpha), beta) == pytest.approx(want, rel=1e-12)

    def test_fock_closed_form(self):
        # Q_n(beta) = |beta|^{2n} e^{-|beta|^2} / (pi n!)
        beta = 0.8 - 0.6j
        for n in (0, 1, 4):
            want = abs(beta) ** (2 * n) * math.exp(-abs(beta) ** 2) / (
                math.pi * math.factorial(n)
            )
            assert husimi_q(fock(n), beta) == pytest.approx(want, rel=1e-12)

    @pytest.mark.parametrize("state", [fock(2), superposition01(), Coherent(1.5j)])
    def test_nonnegative_and_normalized(self, state):
        grid = RNG.uniform(-3, 3, 300) + 1j * RNG.uniform(-3, 3, 300)
        assert np.min(husimi_q(state, grid)) >= 0
        total = integrate_plane(lambda nu: husimi_q(state, nu),
                                QuadratureSpec(radial_cutoff=7.0, order=160))
        assert total == pytest.approx(1.0, abs=1e-9)


class TestSmoothingFamily:
    def test_t_zero_is_wigner(self):
        pts = POINTS[:5]
        np.testing.assert_allclose(
            s_ordered(fock(2), pts, 0.0), wigner(fock(2), pts), rtol=1e-13
        )

    @pytest.mark.parametrize("state", [fock(1), fock(2), superposition01()])
    def test_t_one_is_husimi(self, state):
        pts = RNG.uniform(-2, 2, 50) + 1j * RNG.uniform(-2, 2, 50)
        np.testing.assert_allclose(
            s_ordered(state, pts, 1.0), husimi_q(state, pts), atol=1e-8
        )

    def test_smoothed_grid_matches_pointwise(self):
        xs = np.array([-0.8, 0.0, 1.3])
        ys = np.array([-0.4, 0.9])
        grid = smoothed_on_grid(fock(1), xs, ys, 0.35)
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                assert grid[i, j] == pytest.approx(
                    s_ordered(fock(1), complex(x, y), 0.35), abs=1e-10
                )

    @pytest.mark.parametrize("n", [0, 1, 3])
    @pytest.mark.parametrize("t", [0.25, 0.6, 0.9])
    def test_number_state_smoothing_closed_form(self, n, t):
        """Smoothed number-state distribution against its Laguerre closed form:

        W_t(nu) = (2/(pi(1+t))) (-(1-t)/(1+t))^n L_n(4|nu|^2/(1-t^2))
                  e^{-2|nu|^2/(1+t)}
        """
        pts = RNG.uniform(-1.5, 1.5, 20) + 1j * RNG.uniform(-1.5, 1.5, 20)
        absq = np.abs(pts) ** 2
        want = (
            (2 / (np.pi * (1 + t)))
            * (-(1 - t) / (1 + t)) ** n
            * laguerre_assoc(n, 0, 4 * absq / (1 - t**2))
            * np.exp(-2 * absq / (1 + t))
        )
        np.testing.assert_allclose(s_ordered(fock(n), pts, t), want, atol=1e-9)

    def test_smoothing_preserves_normalization(self):
        xs = np.linspace(-6, 6, 241)
        grid = smoothed_on_grid(superposition01(), xs, xs, 0.5)
        cell = (xs[1] - xs[0]) ** 2
        assert grid.sum() * cell == pytest.approx(1.0, abs=1e-6)

    def test_negative_t_rejected(self):
        with pytest.raises(DomainError):
            s_ordered(fock(1), 0.1, -0.2)
        with pytest.raises(DomainError):
            QuasiDistKind(-1.0)

    def test_quasidist_dispatch(self):
        pt = 0.4 + 0.1j
        assert quasidist(fock(1), pt, WIGNER_KIND) == wigner(fock(1), pt)
        assert quasidist(fock(1), pt, HUSIMI_KIND) == husimi_q(fock(1), pt)
        assert quasidist(fock(1), pt, QuasiDistKind(0.5)) == pytest.approx(
            s_ordered(fock(1), pt, 0.5), rel=1e-12
        )


def test_general_vector_wigner_is_real_and_normalized():
    coeffs = RNG.standard_normal(6) + 1j * RNG.standard_normal(6)
    state = FockVector.normalized(coeffs)
    vals = wigner(state, POINTS)
    assert vals.dtype == float
    total = integrate_plane(lambda nu: wigner(state, nu),
                            QuadratureSpec(radial_cutoff=8.0, order=192))
    assert total == pytest.approx(1.0, abs=1e-8)
