import pytest

from see_bandits import (
    BanditInstance,
    NoiseModel,
    RandomStream,
    classify,
    correct_answers,
    sample,
)
from see_bandits.rng import PURPOSE_BASELINE


def gaussian_instance(means, mu0=0.5):
    return BanditInstance(tuple(means), mu0, NoiseModel.gaussian_unit())


class TestNoiseModel:
    def test_variants(self):
        assert NoiseModel.gaussian_unit().sigma == 1.0
        assert NoiseModel.constant().sigma == 0.0
        assert NoiseModel.gaussian_scaled(0.5).sigma == 0.5

    def test_sub_gaussian_cap(self):
        with pytest.raises(ValueError):
            NoiseModel.gaussian_scaled(1.5)
        with pytest.raises(ValueError):
            NoiseModel.gaussian_scaled(0.0)
        with pytest.raises(ValueError):
            NoiseModel("weird")


class TestBanditInstance:
    def test_rejects_empty_and_non_finite(self):
        with pytest.raises(ValueError):
            BanditInstance((), 0.5)
        with pytest.raises(ValueError):
            BanditInstance((float("nan"),), 0.5)
        with pytest.raises(ValueError):
            BanditInstance((0.4,), float("inf"))

    def test_rejects_best_mean_at_threshold(self):
        with pytest.raises(ValueError):
            BanditInstance((0.5,), 0.5)
        with pytest.raises(ValueError):
            BanditInstance((0.3, 0.5), 0.5)

    def test_non_best_arm_at_threshold_is_legal(self):
        inst = gaussian_instance([0.65, 0.5, 0.5])
        assert inst.k == 3


class TestClassify:
    def test_all_worse_is_negative(self):
        assert classify(gaussian_instance([0.25] * 10)) == "negative"

    def test_unique_qualified_is_positive(self):
        assert classify(gaussian_instance([0.65, 0.5, 0.5])) == "positive"


class TestCorrectAnswers:
    def test_arms_at_threshold_are_correct(self):
        assert correct_answers(gaussian_instance([0.65, 0.5])) == {0, 1}

    def test_negative_instance(self):
        assert correct_answers(gaussian_instance([0.25] * 10)) == {None}

    def test_single_arm_above(self):
        assert correct_answers(gaussian_instance([0.35, 0.65])) == {1}


class TestSample:
    def test_constant_noise_is_exact(self):
        inst = BanditInstance((0.65,), 0.5, NoiseModel.constant())
        s = RandomStream(1, 0, PURPOSE_BASELINE)
        assert sample(inst, 0, s) == 0.65
        assert s.counter == 0  # constant noise consumes nothing

    def test_out_of_range_arm(self):
        inst = gaussian_instance([0.6, 0.4])
        with pytest.raises(IndexError):
            sample(inst, 2, RandomStream(1))
        with pytest.raises(IndexError):
            sample(inst, -1, RandomStream(1))

    def test_determinism_across_streams(self):
        inst = gaussian_instance([0.6, 0.4])
        s1 = RandomStream(77, 4, PURPOSE_BASELINE)
        s2 = RandomStream(77, 4, PURPOSE_BASELINE)
        seq1 = [sample(inst, 0, s1) for _ in range(50)]
        seq2 = [sample(inst, 0, s2) for _ in range(50)]
        assert seq1 == seq2

    def test_scaled_noise_shrinks_spread(self):
        narrow = BanditInstance((0.0,), 0.5, NoiseModel.gaussian_scaled(0.1))
        wide = BanditInstance((0.0,), 0.5, NoiseModel.gaussian_unit())
        sn = RandomStream(5, 0, PURPOSE_BASELINE)
        sw = RandomStream(5, 0, PURPOSE_BASELINE)
        xs_n = [sample(narrow, 0, sn) for _ in range(200)]
        xs_w = [sample(wide, 0, sw) for _ in range(200)]
        assert max(map(abs, xs_n)) < max(map(abs, xs_w))
