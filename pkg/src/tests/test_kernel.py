"""
커널: 닫힌 형태, 수치 역변환, 질량, 자기유사성, 샘플러
"""

import math

import numpy as np
import pytest

from fractrace.core.errors import QuadratureError
from fractrace.kernel.closed_form import eval_closed_form, origin_value, tail_constant
from fractrace.kernel.numeric import eval_numeric, evaluate, truncation_bound
from fractrace.kernel.profile import domination_constant, get_profile
from fractrace.kernel.sampler import richardson_density, sample_stable
from fractrace.kernel.spec import KernelSpec
from fractrace.kernel.validation import check_mass, check_self_similarity, envelope_ratio_scan


class TestKernelSpec:
    @pytest.mark.parametrize("alpha", [0.0, -0.5, 1.5])
    def test_alpha_range(self, alpha: float) -> None:
        with pytest.raises(ValueError):
            KernelSpec(alpha)

    def test_freq_nodes_minimum(self) -> None:
        with pytest.raises(ValueError):
            KernelSpec(0.5, freq_nodes=32)

    def test_default_tolerance_by_dimension(self) -> None:
        assert KernelSpec(0.5, 1).tolerance == 1e-6
        assert KernelSpec(0.5, 2).tolerance == 1e-4


class TestClosedForm:
    def test_gaussian_at_origin(self) -> None:
        value = eval_closed_form(KernelSpec(1.0, 1), 1.0, 0.0).value
        assert value == pytest.approx((4.0 * math.pi) ** -0.5, rel=1e-14)

    def test_poisson_at_origin(self) -> None:
        assert eval_closed_form(KernelSpec(0.5, 1), 1.0, 0.0).value == pytest.approx(1.0 / math.pi, rel=1e-14)
        assert eval_closed_form(KernelSpec(0.5, 2), 1.0, (0.0, 0.0)).value == pytest.approx(
            1.0 / (2.0 * math.pi), rel=1e-14
        )

    def test_poisson_off_origin(self) -> None:
        value = eval_closed_form(KernelSpec(0.5, 1), 2.0, 1.0).value
        assert value == pytest.approx(2.0 / (math.pi * 5.0), rel=1e-14)

    def test_rejects_other_alpha(self) -> None:
        with pytest.raises(ValueError):
            eval_closed_form(KernelSpec(0.75, 1), 1.0, 0.0)

    def test_rejects_nonpositive_time(self) -> None:
        with pytest.raises(ValueError):
            eval_closed_form(KernelSpec(0.5, 1), 0.0, 0.0)


class TestOriginValue:
    def test_three_quarter_example(self) -> None:
        value = origin_value(KernelSpec(0.75, 1), 1.0)
        assert value == pytest.approx(math.gamma(5.0 / 3.0) / math.pi, rel=1e-14)
        assert value == pytest.approx(0.2873526, abs=1e-7)

    @pytest.mark.parametrize("alpha", [0.5, 1.0])
    @pytest.mark.parametrize("dim", [1, 2])
    def test_matches_closed_form(self, alpha: float, dim: int) -> None:
        spec = KernelSpec(alpha, dim)
        exact = eval_closed_form(spec, 2.0, np.zeros(dim)).value
        assert origin_value(spec, 2.0) == pytest.approx(exact, rel=1e-12)

    def test_tail_constant_poisson(self) -> None:
        # α=1/2, n=1: K_1(x) = 1/(π(1+x²)) ~ x^{-2}/π
        assert tail_constant(KernelSpec(0.5, 1)) == pytest.approx(1.0 / math.pi, rel=1e-10)


class TestNumericInversion:
    @pytest.mark.parametrize("t,x", [(0.5, 0.0), (1.0, 0.7), (2.0, 3.0), (10.0, 0.1)])
    def test_poisson_within_bound(self, t: float, x: float) -> None:
        spec = KernelSpec(0.5, 1)
        numeric = eval_numeric(spec, t, x)
        exact = eval_closed_form(spec, t, x).value
        assert abs(numeric.value - exact) <= numeric.abs_error_bound + 1e-15
        assert numeric.abs_error_bound <= spec.tolerance

    def test_gaussian_two_dimensional(self) -> None:
        spec = KernelSpec(1.0, 2)
        numeric = eval_numeric(spec, 1.0, (0.3, -0.4))
        exact = eval_closed_form(spec, 1.0, (0.3, -0.4)).value
        assert abs(numeric.value - exact) <= numeric.abs_error_bound + 1e-15

    def test_origin_value_cross_check(self) -> None:
        spec = KernelSpec(0.75, 1)
        numeric = eval_numeric(spec, 1.0, 0.0)
        assert abs(numeric.value - origin_value(spec, 1.0)) <= numeric.abs_error_bound + 1e-15

    def test_bound_covers_truncation_tail(self) -> None:
        spec = KernelSpec(0.75, 1, freq_cutoff=40.0)
        numeric = eval_numeric(spec, 1.0, 0.3)
        assert numeric.abs_error_bound >= truncation_bound(spec, 1.0, 40.0)

    @pytest.mark.slow
    @pytest.mark.parametrize("alpha", [0.5, 1.0])
    def test_seeded_pairs_within_bound(self, alpha: float) -> None:
        # 구적 부분은 추정값이므로 무작위 점에서 실제 오차를 덮는지 확인
        spec = KernelSpec(alpha, 1)
        rng = np.random.default_rng(0)
        for t, x in zip(rng.uniform(0.2, 5.0, 200), rng.uniform(-5.0, 5.0, 200)):
            numeric = eval_numeric(spec, float(t), float(x))
            exact = eval_closed_form(spec, float(t), float(x)).value
            assert abs(numeric.value - exact) <= numeric.abs_error_bound + 1e-15

    def test_evaluate_dispatches_closed_form(self) -> None:
        spec = KernelSpec(0.5, 1)
        assert evaluate(spec, 1.0, 0.0) == eval_closed_form(spec, 1.0, 0.0)

    def test_unsupported_dimension(self) -> None:
        with pytest.raises(ValueError):
            eval_numeric(KernelSpec(0.75, 4), 1.0, np.zeros(4))

    def test_impossible_tolerance(self) -> None:
        with pytest.raises(QuadratureError) as info:
            eval_numeric(KernelSpec(0.75, 1), 1.0, 0.5, tol=1e-30)
        assert info.value.tolerance == 1e-30


class TestValidation:
    @pytest.mark.parametrize("alpha", [0.5, 0.75, 1.0])
    def test_mass_is_one(self, alpha: float) -> None:
        report = check_mass(KernelSpec(alpha, 1), 1.0)
        assert report.passed, report

    def test_self_similarity(self) -> None:
        report = check_self_similarity(KernelSpec(0.75, 1), 2.0, 0.3)
        assert report.passed
        assert report.residual <= report.bound

    def test_gaussian_envelope_is_flagged(self) -> None:
        scan = envelope_ratio_scan(KernelSpec(1.0, 1), [0.5, 1.0], [0.0, 1.0, 2.0])
        assert scan.flagged

    def test_envelope_ratio_positive(self) -> None:
        scan = envelope_ratio_scan(KernelSpec(0.5, 1), [0.1, 1.0, 10.0], [0.0, 0.5, 5.0, 50.0])
        assert scan.min_ratio > 0
        assert not scan.flagged


class TestProfile:
    def test_profile_matches_closed_form(self) -> None:
        spec = KernelSpec(0.5, 1)
        t = np.array([0.5, 1.0, 4.0])
        r = np.array([0.0, 2.0, 1.0])
        expected = t / (math.pi * (t * t + r * r))
        np.testing.assert_allclose(get_profile(spec)(t, r), expected, rtol=1e-12)

    def test_profile_vanishes_for_nonpositive_time(self) -> None:
        values = get_profile(KernelSpec(0.5, 1))(np.array([0.0, -1.0]), np.array([0.0, 0.0]))
        assert np.all(values == 0.0)

    def test_domination_constant_poisson(self) -> None:
        # 3^{-1}·K_1(1/2) = 1/(3·π·1.25)
        assert domination_constant(KernelSpec(0.5, 1)) == pytest.approx(1.0 / (3.75 * math.pi), rel=1e-9)


class TestSampler:
    def test_same_seed_same_samples(self) -> None:
        spec = KernelSpec(0.5, 1)
        np.testing.assert_array_equal(sample_stable(spec, 1.0, 100, 7), sample_stable(spec, 1.0, 100, 7))

    def test_shape_in_two_dimensions(self) -> None:
        assert sample_stable(KernelSpec(0.75, 2), 1.0, 50, 0).shape == (50, 2)

    def test_gaussian_is_rejected(self) -> None:
        with pytest.raises(ValueError):
            sample_stable(KernelSpec(1.0, 1), 1.0, 10, 0)

    @pytest.mark.slow
    def test_cauchy_density_at_origin(self) -> None:
        samples = sample_stable(KernelSpec(0.5, 1), 1.0, 1_000_000, 0)
        assert richardson_density(samples, 0.1) == pytest.approx(1.0 / math.pi, rel=0.01)
