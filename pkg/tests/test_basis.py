import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fracmom import (
    AlphaParam,
    SmoothingConfig,
    basis_location_derivative,
    basis_value,
    collision_roots,
    exponent,
    second_exponent,
)


class TestExponent:
    def test_structural_anchors(self):
        assert exponent(2, 0.0) == pytest.approx(0.5, abs=1e-15)
        assert exponent(2, 0.5) == pytest.approx(1.0, abs=1e-15)
        assert exponent(2, 1.0) == pytest.approx(2.0, abs=1e-15)
        assert exponent(3, 0.0) == pytest.approx(1.0 / 3.0, abs=1e-15)
        assert exponent(5, 1.0) == pytest.approx(5.0, abs=1e-15)

    def test_direct_quadratic_evaluation(self):
        # 0.5 + 0.5*0.3 + 0.3^2
        assert exponent(2, 0.3) == pytest.approx(0.74, abs=1e-15)
        assert second_exponent(0.3) == pytest.approx(0.74, abs=1e-15)

    def test_identity_member(self):
        for a in np.linspace(0.0, 1.0, 7):
            assert exponent(1, a) == 1.0

    def test_anchor_precision_up_to_i_12(self):
        for i in range(2, 13):
            assert abs(exponent(i, 0.0) - 1.0 / i) < 1e-12
            assert abs(exponent(i, 0.5) - 1.0) < 1e-12
            assert abs(exponent(i, 1.0) - i) < 1e-12

    def test_positive_on_unit_interval_for_low_members(self):
        grid = np.linspace(0.0, 1.0, 401)
        for i in range(1, 6):
            assert all(exponent(i, a) > 0.0 for a in grid)
        # the second member drives the estimator and stays in [1/2, 2]
        assert all(0.5 <= exponent(2, a) <= 2.0 for a in grid)

    def test_high_members_dip_negative_between_anchors(self):
        # the interpolating quadratic is not positive everywhere from i=6 on
        assert exponent(6, 0.15) < 0.0
        assert exponent(12, 0.2) < 0.0

    def test_matches_second_exponent(self):
        for a in np.linspace(0.0, 1.0, 11):
            assert exponent(2, a) == pytest.approx(second_exponent(a), abs=0)

    def test_bad_index(self):
        with pytest.raises(ValueError):
            exponent(0, 0.3)


class TestCollisionRoots:
    def test_stated_roots(self):
        assert collision_roots(2, 3) == pytest.approx((0.5, -0.2))
        assert collision_roots(2, 5) == pytest.approx((0.5, -1.0 / 9.0))

    def test_roots_are_actual_collisions(self):
        # substitute both roots back into the exponent polynomials
        for (i, j) in [(3, 4), (2, 6), (4, 5)]:
            for r in collision_roots(i, j):
                assert abs(exponent(i, r) - exponent(j, r)) < 1e-12

    def test_second_root_negative(self):
        for i in range(1, 6):
            for j in range(i + 1, 7):
                assert collision_roots(i, j)[1] < 0.0

    def test_invalid_pairs(self):
        with pytest.raises(ValueError):
            collision_roots(2, 2)
        with pytest.raises(ValueError):
            collision_roots(0, 3)

    def test_no_other_collision_inside_unit_interval(self):
        # sign scan at step 1e-3: single crossing, located at 1/2
        grid = np.arange(0.0, 1.0 + 1e-9, 1e-3)
        for i in range(2, 6):
            for j in range(i + 1, 7):
                d = np.array([exponent(i, a) - exponent(j, a) for a in grid])
                zeroish = np.abs(d) < 1e-12
                assert all(abs(grid[k] - 0.5) <= 1e-3 for k in np.where(zeroish)[0])
                s = np.sign(d[~zeroish])
                assert np.sum(s[1:] != s[:-1]) == 1


class TestBasisValue:
    def test_signed_power_examples(self):
        assert basis_value(2, 1.0, -4.0) == pytest.approx(-16.0, abs=0)
        assert basis_value(2, 0.0, 0.25) == pytest.approx(0.5, abs=1e-15)

    def test_midpoint_collapse_exact(self):
        for i in (1, 2, 3, 7):
            for xi in (-7.25, -0.3, 0.0, 1e-9, 7.3, 123.0):
                assert basis_value(i, 0.5, xi) == xi

    @given(st.integers(min_value=1, max_value=9),
           st.floats(min_value=0.0, max_value=1.0),
           st.floats(min_value=-1e6, max_value=1e6),
           st.sampled_from([0.0, 1e-6, 1e-3]))
    def test_odd_in_xi(self, i, alpha, xi, eps):
        cfg = SmoothingConfig(epsilon=eps)
        assert basis_value(i, alpha, -xi, cfg) == pytest.approx(
            -basis_value(i, alpha, xi, cfg), rel=1e-12, abs=1e-300)

    def test_vectorized_matches_scalar(self):
        xi = np.array([-2.0, -0.5, 0.0, 0.5, 2.0])
        vec = basis_value(2, 0.2, xi)
        assert vec == pytest.approx([basis_value(2, 0.2, v) for v in xi])

    def test_smoothing_only_below_linear(self):
        cfg = SmoothingConfig(epsilon=0.1)
        # p = 2 at alpha = 1: smoothing must not apply
        assert basis_value(2, 1.0, 3.0, cfg) == pytest.approx(9.0, abs=0)
        # p = 1/2 at alpha = 0: smoothed form
        expected = math.copysign((4.0 + 0.01) ** 0.25, 2.0)
        assert basis_value(2, 0.0, 2.0, cfg) == pytest.approx(expected, rel=1e-15)


class TestLocationDerivative:
    def test_examples(self):
        assert basis_location_derivative(2, 1.0, 3.0) == pytest.approx(-6.0)
        assert basis_location_derivative(2, 0.0, 4.0) == pytest.approx(-0.25)
        assert basis_location_derivative(1, 0.7, 5.0) == -1.0

    def test_zero_floor_keeps_value_finite(self):
        cfg = SmoothingConfig(zero_floor=1e-12)
        v = basis_location_derivative(2, 0.0, 0.0, cfg)
        assert np.isfinite(v)
        assert v == pytest.approx(-0.5 * (1e-12) ** (-0.5), rel=1e-12)

    def test_even_in_xi(self):
        for a in (0.0, 0.3, 0.8, 1.0):
            for xi in (0.2, 1.7, 42.0):
                assert basis_location_derivative(2, a, xi) == pytest.approx(
                    basis_location_derivative(2, a, -xi), rel=1e-14)

    def test_against_central_differences(self):
        # d/dtheta basis(x - theta) at theta = 0, via symmetric differences
        h = 1e-6
        for i in (2, 3, 5):
            for a in (0.0, 0.25, 0.75, 1.0):
                for xi in (-3.0, -0.5, 0.1, 0.9, 2.4):
                    if abs(xi) < 0.1:
                        continue
                    numeric = (basis_value(i, a, xi - h) - basis_value(i, a, xi + h)) / (2.0 * h)
                    assert basis_location_derivative(i, a, xi) == pytest.approx(
                        numeric, rel=1e-6)


class TestConfigs:
    def test_alpha_param_validation(self):
        with pytest.raises(ValueError):
            AlphaParam(1.2)
        with pytest.raises(ValueError):
            AlphaParam(0.5, degeneracy_band=0.0)

    def test_alpha_param_degeneracy(self):
        assert AlphaParam(0.5).is_degenerate()
        assert AlphaParam(0.505, degeneracy_band=0.01).is_degenerate()
        assert not AlphaParam(0.52, degeneracy_band=0.01).is_degenerate()
        assert AlphaParam(0.52, degeneracy_band=0.05).is_degenerate()

    def test_smoothing_validation(self):
        with pytest.raises(ValueError):
            SmoothingConfig(epsilon=-1.0)
        with pytest.raises(ValueError):
            SmoothingConfig(zero_floor=0.0)

    def test_alpha_param_accepted_by_basis(self):
        a = AlphaParam(0.3)
        assert exponent(2, a) == pytest.approx(0.74)
        assert basis_value(2, a, 2.0) == pytest.approx(2.0 ** 0.74)
