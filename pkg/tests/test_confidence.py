import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from see_bandits import kernels
from see_bandits.confidence import (
    ceil_log2_plus,
    concentration_bound,
    crossing_boundary,
    radius,
    simulate_concentration_violation,
)
from see_bandits.rng import PURPOSE_CONCENTRATION, derive_state, _as_u64

from oracles import ceil_log2_plus_ref, radius_ref


class TestCeilLog2Plus:
    @pytest.mark.parametrize("t,expected", [(1, 1), (2, 1), (3, 2), (4, 2),
                                            (5, 3), (8, 3), (9, 4), (1024, 10),
                                            (1025, 11)])
    def test_examples(self, t, expected):
        assert ceil_log2_plus(t) == expected

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            ceil_log2_plus(0)

    def test_exhaustive_up_to_2_20(self):
        # brackets: every t in (2^{j-1}, 2^j] maps to max(j, 1)
        j = 1
        upper = 2
        for t in range(1, 2 ** 20 + 1):
            if t > upper:
                j += 1
                upper *= 2
            assert ceil_log2_plus(t) == j, t

    def test_kernel_agrees_with_public(self):
        for t in [1, 2, 3, 7, 8, 9, 2 ** 15, 2 ** 15 + 1]:
            assert kernels.ceil_log2_plus_kernel(t) == ceil_log2_plus(t)


class TestRadius:
    @pytest.mark.parametrize("t,delta,expected", [
        # sqrt(4 ln 4), sqrt(32 ln 320)/10 computed to high precision
        (1, 0.5, 2.354820045030949),
        (10, 0.1, 1.3586253047304864),
    ])
    def test_known_values(self, t, delta, expected):
        assert radius(t, delta) == pytest.approx(expected, rel=1e-12)
        assert radius(t, delta) == pytest.approx(float(radius_ref(t, delta)), rel=1e-14)

    def test_bracket_boundary_equality(self):
        # ln 16 = 2 ln 4 makes the t=2 and t=4 radii coincide at delta=1/2
        assert radius(2, 0.5) == pytest.approx(radius(4, 0.5), rel=1e-12)
        assert radius(2, 0.5) == pytest.approx(1.1774100225154747, rel=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            radius(0, 0.5)
        with pytest.raises(ValueError):
            radius(4, 0.0)
        with pytest.raises(ValueError):
            radius(4, 1.0)

    @given(st.integers(min_value=1, max_value=2 ** 19),
           st.floats(min_value=1e-9, max_value=0.5))
    @settings(max_examples=300, deadline=None)
    def test_halving_t_never_helps(self, t, delta):
        assert radius(2 * t, delta) <= radius(t, delta) + 1e-15

    @given(st.integers(min_value=2, max_value=2 ** 19),
           st.floats(min_value=1e-9, max_value=0.999))
    @settings(max_examples=300, deadline=None)
    def test_decreasing_within_bracket(self, t, delta):
        if ceil_log2_plus(t) == ceil_log2_plus(t - 1):
            assert radius(t, delta) < radius(t - 1, delta)

    @given(st.integers(min_value=1, max_value=2 ** 19),
           st.floats(min_value=1e-9, max_value=0.49))
    @settings(max_examples=300, deadline=None)
    def test_strictly_decreasing_in_delta(self, t, delta):
        assert radius(t, 2 * delta) < radius(t, delta)

    def test_against_high_precision_grid(self):
        rs = np.random.RandomState(0)
        ts = np.unique(rs.randint(1, 2 ** 20, size=200))
        for delta in (0.5, 0.1, 0.001):
            for t in ts:
                expected = float(radius_ref(int(t), delta))
                assert radius(int(t), delta) == pytest.approx(expected, rel=1e-12)


class TestConcentrationSimulator:
    def test_zero_noise_never_crosses(self):
        assert simulate_concentration_violation(0.0, 0.1, 64, 200, seed=3) == 0.0

    @pytest.mark.parametrize("delta", [0.05, 0.1, 0.3])
    def test_bound_holds_across_deltas(self, delta):
        n = 4000
        count, _ = simulate_concentration_violation(1.0, delta, 2048, n,
                                                    seed=31, return_count=True)
        frac = count / n
        se = math.sqrt(max(frac * (1 - frac), 1e-12) / n)
        assert frac + 3 * se <= concentration_bound(delta)

    def test_vacuous_bound_regime_is_sane(self):
        frac = simulate_concentration_violation(1.0, 0.9, 2, 1000, seed=5)
        assert 0.0 <= frac < 1.0
        assert concentration_bound(0.9) > 1.0

    def test_validation(self):
        with pytest.raises(ValueError):
            simulate_concentration_violation(1.0, 0.0, 64, 10, seed=1)
        with pytest.raises(ValueError):
            simulate_concentration_violation(1.0, 0.1, 1, 10, seed=1)
        with pytest.raises(ValueError):
            simulate_concentration_violation(1.0, 0.1, 64, 0, seed=1)

    def test_determinism(self):
        a = simulate_concentration_violation(1.0, 0.2, 128, 300, seed=11)
        b = simulate_concentration_violation(1.0, 0.2, 128, 300, seed=11)
        assert a == b

    def test_kernel_and_vectorised_paths_agree(self):
        delta, horizon, n = 0.3, 256, 128
        thresholds = crossing_boundary(1.0, delta, horizon)
        states = np.empty(n, dtype=np.uint64)
        for i in range(n):
            states[i] = derive_state(_as_u64(17), _as_u64(i),
                                     _as_u64(PURPOSE_CONCENTRATION))
        flags_a = np.zeros(n, dtype=np.bool_)
        flags_b = np.zeros(n, dtype=np.bool_)
        kernel = kernels.conc_violation_kernel
        kernel_py = getattr(kernel, "py_func", kernel)
        count_a = kernel(states, 1.0, thresholds, horizon, flags_a)
        count_b = kernels.conc_violation_vectorized(states, 1.0, thresholds,
                                                    horizon, flags_b)
        assert count_a == count_b
        np.testing.assert_array_equal(flags_a, flags_b)
        # the scalar python path agrees too (small n keeps this fast)
        flags_c = np.zeros(n, dtype=np.bool_)
        with np.errstate(over="ignore"):
            count_c = kernel_py(states, 1.0, thresholds, horizon, flags_c)
        assert count_c == count_a
        np.testing.assert_array_equal(flags_c, flags_a)

    def test_boundary_matches_radius_scaling(self):
        b = crossing_boundary(1.0, 0.25, 32)
        for t in (1, 2, 7, 31):
            assert b[t] == pytest.approx(t * radius(t, 0.25), rel=1e-12)
