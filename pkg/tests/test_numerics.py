import cmath
import math

import mpmath as mp
import pytest

from h4hecke.geometry import PointH4
from h4hecke.numerics import (
    SpectralForm,
    bessel_k_imag_order,
    cusp_sum_I,
    direct_cusp_integral,
    evaluate_form,
    laplace_eigen_residual,
    parseval_check,
)


def mp_bessel(r, x):
    return float(mp.besselk(1j * r, x).real)


class TestBessel:
    def test_classical_K0(self):
        assert bessel_k_imag_order(0.0, 1.0) == pytest.approx(0.4210244382407083, abs=1e-9)

    def test_against_reference_values(self):
        for r in (0.0, 0.5, 1.0, 2.0, 5.0, 10.0):
            for x in (0.1, 0.7, 1.0, 3.0, 6.0, 12.0, 20.0):
                mine = bessel_k_imag_order(r, x)
                ref = mp_bessel(r, x)
                assert mine == pytest.approx(ref, abs=1e-10), (r, x)

    def test_schemes_agree(self):
        for r in (0.0, 1.0, 5.0, 10.0):
            for x in (0.1, 1.0, 5.0, 20.0):
                simpson = bessel_k_imag_order(r, x, scheme="simpson")
                ts = bessel_k_imag_order(r, x, scheme="tanh-sinh")
                assert abs(simpson - ts) <= 1e-9 * max(1.0, abs(simpson))

    def test_monotone_decay_in_x(self):
        for r in (0.0, 1.0, 5.0):
            assert bessel_k_imag_order(r, 2.0) < bessel_k_imag_order(r, 1.0)

    def test_even_in_r(self):
        assert bessel_k_imag_order(1.5, 2.0) == bessel_k_imag_order(-1.5, 2.0)

    def test_nonpositive_argument_rejected(self):
        with pytest.raises(ValueError):
            bessel_k_imag_order(1.0, 0.0)

    def test_unknown_scheme(self):
        with pytest.raises(ValueError):
            bessel_k_imag_order(1.0, 1.0, scheme="romberg")


class TestEvaluateForm:
    def test_empty_form_is_zero(self):
        form = SpectralForm(r=1.0, entries=())
        assert evaluate_form(form, (0.1, 0.2, 0.3, 1.0)) == 0

    def test_single_term_reduces_to_bessel(self):
        form = SpectralForm.from_dict(1.0, {(1, 0, 0): 1.0 + 0j})
        value = evaluate_form(form, (0.0, 0.0, 0.0, 1.0))
        assert value.real == pytest.approx(bessel_k_imag_order(1.0, 2 * math.pi), rel=1e-12)
        assert value.imag == pytest.approx(0.0, abs=1e-15)

    def test_periodicity(self):
        form = SpectralForm.from_dict(1.0, {(1, 0, 0): 0.3 + 1j, (1, 1, 0): -2.0 + 0j})
        z0 = (0.12, 0.34, -0.4, 0.8)
        z1 = (1.12, 0.34, -0.4, 0.8)
        assert evaluate_form(form, z0) == pytest.approx(evaluate_form(form, z1), abs=1e-15)

    def test_phase_convention(self):
        # e(Re(beta z)) = exp(2 pi i (b0 x0 - b1 x1 - b2 x2))
        form = SpectralForm.from_dict(0.0, {(0, 1, 0): 1.0 + 0j})
        x1 = 0.2
        value = evaluate_form(form, (0.0, x1, 0.0, 1.0))
        expected_phase = cmath.exp(-2j * math.pi * x1)
        radial = bessel_k_imag_order(0.0, 2 * math.pi)
        assert value == pytest.approx(radial * expected_phase, rel=1e-12)

    def test_accepts_point_object(self):
        form = SpectralForm.from_dict(0.0, {(1, 0, 0): 1.0})
        z = PointH4(0.1, 0.2, 0.3, 1.5)
        assert evaluate_form(form, z) == evaluate_form(form, z.as_tuple())

    def test_hardcoded_phase_matches_clifford_product(self):
        # Re(beta z) = b0 x0 - b1 x1 - b2 x2, checked against the exact algebra
        from fractions import Fraction
        from h4hecke.clifford import CliffordElement
        from h4hecke.numerics import _phase_re_beta_z
        rng = __import__("random").Random(6)
        for _ in range(20):
            beta = tuple(rng.randint(-3, 3) for _ in range(3))
            coords = [Fraction(rng.randint(-8, 8), 4) for _ in range(4)]
            bq = CliffordElement(3, {(): Fraction(beta[0]), (1,): Fraction(beta[1]),
                                     (2,): Fraction(beta[2])})
            zq = CliffordElement(3, {(): coords[0], (1,): coords[1],
                                     (2,): coords[2], (3,): coords[3]})
            assert (bq * zq).real_part == _phase_re_beta_z(beta, *coords[:3])

    def test_constant_term_rejected(self):
        with pytest.raises(ValueError):
            SpectralForm.from_dict(1.0, {(0, 0, 0): 1.0})


class TestParseval:
    def test_single_coefficient(self):
        form = SpectralForm.from_dict(1.0, {(1, 0, 0): 2.0 - 1j})
        report = parseval_check(form, 1.0)
        assert report.rel_error < 1e-12

    def test_two_coefficients(self):
        form = SpectralForm.from_dict(1.0, {(1, 0, 0): 1.0, (0, 1, 0): 1.0})
        report = parseval_check(form, 1.0)
        assert report.rel_error < 1e-6

    def test_real_valued_combination(self):
        # conjugate pair at beta and -beta gives a real form, same identity
        form = SpectralForm.from_dict(0.5, {(1, 2, 0): 1 + 2j, (-1, -2, 0): 1 - 2j})
        z = (0.3, 0.1, -0.2, 0.7)
        assert abs(evaluate_form(form, z).imag) < 1e-14
        report = parseval_check(form, 0.7)
        assert report.rel_error < 1e-6

    def test_heights_and_parameters(self):
        form = SpectralForm.from_dict(0.0, {(1, 0, 0): 1.0, (1, 1, 0): 0.5j, (2, 0, 0): -0.25})
        for y in (0.5, 1.0, 2.0):
            assert parseval_check(form, y).rel_error < 1e-6

    def test_invalid_height(self):
        with pytest.raises(ValueError):
            parseval_check(SpectralForm(r=0.0, entries=()), 0.0)


class TestCuspMass:
    def test_zero_form(self):
        assert cusp_sum_I(SpectralForm(r=1.0, entries=()), 2.0) == 0.0

    def test_monotone_in_T(self):
        form = SpectralForm.from_dict(1.0, {(1, 0, 0): 1.0})
        v1 = cusp_sum_I(form, 1.0)
        v2 = cusp_sum_I(form, 2.0)
        assert 0 < v2 < v1

    def test_exponential_envelope(self):
        form = SpectralForm.from_dict(0.0, {(1, 0, 0): 1.0})
        T = 2.0
        value = cusp_sum_I(form, T)
        # |K_0(2 pi y)|^2 <= e^{-4 pi y} / (4 y) for y >= 1: integral tail bound
        envelope = math.exp(-4 * math.pi * T) / (4 * T * T)
        assert 0 < value < envelope

    def test_direct_quadrature_agrees(self):
        form = SpectralForm.from_dict(1.0, {(1, 0, 0): 1 + 0.5j, (0, 1, 0): -0.3 + 1j, (1, 1, 0): 0.7j})
        coeff_side = cusp_sum_I(form, 1.5)
        direct = direct_cusp_integral(form, 1.5)
        assert abs(coeff_side - direct) / coeff_side < 1e-3

    def test_T_below_one_rejected(self):
        with pytest.raises(ValueError):
            cusp_sum_I(SpectralForm.from_dict(0.0, {(1, 0, 0): 1.0}), 0.5)


class TestLaplaceResidual:
    def test_frozen_value_at_unit_height(self):
        # the discretization error of the 3-point stencil at this point
        # is 2.10e-4; frozen from a high-precision finite-difference oracle
        res = laplace_eigen_residual((1, 0, 0), 1.0, (0.1, 0.2, 0.3, 1.0), 1e-3)
        assert res == pytest.approx(2.102e-4, rel=0.05)

    def test_residual_small_at_low_height(self):
        assert laplace_eigen_residual((1, 0, 0), 1.0, (0.1, 0.2, 0.3, 0.3), 1e-3) < 1e-4
        assert laplace_eigen_residual((1, 1, 0), 0.0, (0.1, 0.2, 0.3, 0.3), 1e-3) < 1e-4

    def test_second_order_convergence(self):
        for beta, r in (((1, 0, 0), 1.0), ((1, 1, 0), 0.0)):
            res = [laplace_eigen_residual(beta, r, (0.1, 0.2, 0.3, 1.0), h)
                   for h in (1e-2, 5e-3, 2.5e-3)]
            for a, b in zip(res, res[1:]):
                assert 3.0 <= a / b <= 5.0

    def test_r_zero_mode(self):
        assert laplace_eigen_residual((1, 0, 0), 0.0, (0.1, 0.2, 0.3, 0.5), 1e-3) < 1e-3

    def test_vanishing_mode_reported(self):
        # the outermost zero of K_i sits near x = 0.064, i.e. y ~ 0.0102
        def f(y):
            return bessel_k_imag_order(1.0, 2 * math.pi * y, 1e-14)

        a, b = 0.0098, 0.0106
        assert f(a) * f(b) < 0
        for _ in range(80):
            m = 0.5 * (a + b)
            if f(a) * f(m) <= 0:
                b = m
            else:
                a = m
        with pytest.raises(ValueError, match="vanishes"):
            laplace_eigen_residual((1, 0, 0), 1.0, (0.1, 0.2, 0.3, 0.5 * (a + b)), 1e-3)

    def test_step_must_keep_y_positive(self):
        with pytest.raises(ValueError):
            laplace_eigen_residual((1, 0, 0), 1.0, (0, 0, 0, 0.0005), 1e-3)
