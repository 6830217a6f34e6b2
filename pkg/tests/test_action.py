import math

import numpy as np
import pytest

from ringaxis.action import action, hessian_vector, minimize
from ringaxis.geometry import build_config
from ringaxis.loopspace import (
    LoopPath,
    SymmetryClass,
    class_mask,
    coefficient_vector,
    from_coefficients,
    loop_from_vector,
    random_loop,
    scaled,
    zero_loop,
)

L1 = SymmetryClass.LAMBDA1
L2 = SymmetryClass.LAMBDA2

ZERO_LOOP_ACTION_N2 = 10.8102707602539608  # 2 / radius(2), 50-digit evaluation


def decaying_loop(symmetry, max_harmonic, amplitude, seed):
    """Random loop with a geometric spectral envelope (smooth by construction)."""
    raw = random_loop(symmetry, max_harmonic, amplitude, seed)
    envelope = 0.5 ** np.arange(max_harmonic)
    return from_coefficients(symmetry, raw.a * envelope, raw.b * envelope)


@pytest.fixture(scope="module")
def config2():
    return build_config(2)


@pytest.fixture(scope="module")
def config3():
    return build_config(3)


class TestActionValue:
    def test_zero_loop_value_and_gradient(self, config2):
        evaluation = action(config2, zero_loop(L1, 16), 256)
        assert evaluation.value == pytest.approx(ZERO_LOOP_ACTION_N2, rel=1e-13)
        assert evaluation.value == pytest.approx(config2.n / config2.radius, rel=1e-13)
        assert np.all(evaluation.gradient == 0.0)
        assert evaluation.gradient_norm == 0.0

    @pytest.mark.parametrize("symmetry", [L1, L2])
    def test_even_in_the_loop(self, config3, symmetry):
        for seed in range(5):
            loop = random_loop(symmetry, 8, 0.5, seed=seed)
            plus = action(config3, loop, 128).value
            minus = action(config3, scaled(loop, -1.0), 128).value
            assert abs(plus - minus) <= 1e-14 * plus

    def test_value_decomposition_and_lower_bounds(self, config3):
        loop = random_loop(L2, 8, 0.5, seed=1)
        evaluation = action(config3, loop, 128)
        assert evaluation.value == pytest.approx(evaluation.kinetic + evaluation.potential)
        assert evaluation.potential > 0.0
        assert evaluation.value >= evaluation.kinetic
        # kinetic term is the exact Parseval sum
        k = np.arange(1, 9)
        parseval = 0.25 * float(((2 * math.pi * k) ** 2 * (loop.a**2 + loop.b**2)).sum())
        assert evaluation.kinetic == pytest.approx(parseval, rel=1e-14)

    def test_interaction_term_bounded_by_closest_approach(self, config3):
        # n / sqrt(r^2 + z^2) <= n / r pointwise, so the mean obeys the same bound
        loop = random_loop(L2, 8, 0.5, seed=2)
        evaluation = action(config3, loop, 128)
        assert evaluation.potential <= config3.n / config3.radius

    def test_rejects_undersampled_grid(self, config2):
        with pytest.raises(ValueError):
            action(config2, zero_loop(L2, 16), 127)

    def test_half_shift_negation_fixes_antiperiodic_loops(self, config2):
        # t -> t + 1/2 plus z -> -z maps coefficients c_k -> (-1)^(k+1) c_k,
        # the identity on odd-harmonic loops; the action must not move at all
        loop = random_loop(L1, 9, 0.4, seed=6)
        signs = (-1.0) ** (np.arange(1, 10) + 1)
        mapped = LoopPath(L1, signs * loop.a, signs * loop.b)
        original = action(config2, loop, 128).value
        assert abs(action(config2, mapped, 128).value - original) <= 1e-13 * original

    def test_scaling_blows_up_the_action(self, config3):
        for seed in range(5):
            loop = random_loop(L1, 7, 0.3, seed=seed)
            assert action(config3, scaled(loop, 10.0), 128).value > action(config3, loop, 128).value

    def test_quadrature_converged_at_8x_oversampling(self, config2):
        # spectrally decaying loops: doubling the grid must not move the value
        for seed in range(3):
            loop = decaying_loop(L2, 16, 0.5, seed)
            coarse = action(config2, loop, 128).value
            fine = action(config2, loop, 256).value
            assert abs(coarse - fine) <= 1e-10 * coarse


class TestGradient:
    @pytest.mark.parametrize("symmetry", [L1, L2])
    def test_matches_central_differences(self, config3, symmetry):
        step = 1e-6
        for seed in range(5):
            loop = random_loop(symmetry, 8, 0.4, seed=seed)
            x = coefficient_vector(loop)
            grad = action(config3, loop, 128).gradient
            for i in np.flatnonzero(class_mask(symmetry, 8)):
                xp, xm = x.copy(), x.copy()
                xp[i] += step
                xm[i] -= step
                fd = (
                    action(config3, loop_from_vector(symmetry, xp), 128).value
                    - action(config3, loop_from_vector(symmetry, xm), 128).value
                ) / (2 * step)
                assert abs(fd - grad[i]) <= 1e-5 * max(abs(grad[i]), 1e-8)

    def test_gradient_is_projected(self, config3):
        grad = action(config3, random_loop(L1, 8, 0.4, seed=0), 128).gradient
        assert np.all(grad[~class_mask(L1, 8)] == 0.0)


class TestHessianVector:
    def test_zero_loop_diagonal(self, config2):
        # at the planar loop the form is diagonal: ((2 pi k)^2 - n/r^3) / 2 per sine mode
        loop = zero_loop(L2, 16)
        n_over_r3 = config2.n / config2.radius**3
        for k in (1, 2, 3, 8, 16):
            direction = np.zeros(32)
            direction[16 + k - 1] = 1.0
            image = hessian_vector(config2, loop, direction, 256)
            expected = ((2 * math.pi * k) ** 2 - n_over_r3) / 2
            assert image[16 + k - 1] == pytest.approx(expected, rel=1e-12)
            off_diagonal = image.copy()
            off_diagonal[16 + k - 1] = 0.0
            assert np.max(np.abs(off_diagonal)) <= 1e-12 * abs(expected)

    def test_symmetric_bilinear_form(self, config3):
        loop = random_loop(L1, 8, 0.3, seed=7)
        mask = class_mask(L1, 8)
        rng = np.random.default_rng(0)
        for _ in range(5):
            u = np.where(mask, rng.normal(size=16), 0.0)
            v = np.where(mask, rng.normal(size=16), 0.0)
            left = float(u @ hessian_vector(config3, loop, v, 128))
            right = float(v @ hessian_vector(config3, loop, u, 128))
            assert abs(left - right) <= 1e-10 * max(abs(left), 1.0)

    def test_matches_gradient_differences(self, config3):
        loop = random_loop(L2, 8, 0.3, seed=4)
        x = coefficient_vector(loop)
        rng = np.random.default_rng(1)
        direction = np.where(class_mask(L2, 8), rng.normal(size=16), 0.0)
        step = 1e-6
        grad_plus = action(config3, loop_from_vector(L2, x + step * direction), 128).gradient
        grad_minus = action(config3, loop_from_vector(L2, x - step * direction), 128).gradient
        fd = (grad_plus - grad_minus) / (2 * step)
        image = hessian_vector(config3, loop, direction, 128)
        assert np.max(np.abs(fd - image)) <= 1e-4 * np.max(np.abs(image))

    def test_rejects_out_of_class_directions(self, config3):
        loop = random_loop(L2, 8, 0.3, seed=4)
        direction = np.zeros(16)
        direction[0] = 1.0  # a_1 slot, forbidden for pure sine loops
        with pytest.raises(ValueError):
            hessian_vector(config3, loop, direction, 128)

    def test_rejects_wrong_shape(self, config3):
        loop = random_loop(L2, 8, 0.3, seed=4)
        with pytest.raises(ValueError):
            hessian_vector(config3, loop, np.zeros(15), 128)


class TestMinimize:
    @pytest.mark.parametrize("symmetry", [L1, L2])
    def test_finds_nonplanar_minimizer(self, config2, symmetry):
        result = minimize(config2, symmetry, max_harmonic=16, grid=256, tolerance=1e-8)
        assert result.converged
        assert result.gradient_norm <= 1e-8
        assert result.action < config2.n / config2.radius
        assert result.amplitude > 0.01
        assert len(result.starts) == 4

    def test_zero_start_without_perturbation_stays_planar(self, config2):
        result = minimize(
            config2, L1, max_harmonic=16, grid=256,
            start=zero_loop(L1, 16), perturb=False,
        )
        assert result.converged
        assert result.iterations == 0
        assert result.amplitude == 0.0
        assert result.gradient_norm == 0.0
        assert result.action == pytest.approx(config2.n / config2.radius, rel=1e-13)

    def test_zero_start_with_perturbation_escapes(self, config2):
        result = minimize(config2, L1, max_harmonic=16, grid=256, start=zero_loop(L1, 16))
        assert result.converged
        assert result.action < config2.n / config2.radius - 1e-6
        assert result.amplitude > 0.01

    def test_descends_from_its_start(self, config3):
        start = random_loop(L2, 16, 0.5, seed=11)
        result = minimize(config3, L2, max_harmonic=16, grid=256, start=start)
        assert result.action <= action(config3, start, 256).value

    def test_single_seed_start(self, config3):
        result = minimize(config3, L2, max_harmonic=16, grid=256, start=3)
        assert result.converged
        assert len(result.starts) == 1

    def test_deterministic(self, config2):
        first = minimize(config2, L2, max_harmonic=16, grid=256)
        second = minimize(config2, L2, max_harmonic=16, grid=256)
        assert first.action == second.action
        assert np.array_equal(first.loop.b, second.loop.b)

    def test_unconverged_still_reports_best_iterate(self, config2):
        result = minimize(config2, L2, max_harmonic=16, grid=256, seeds=(0,),
                          tolerance=1e-12, max_iterations=2)
        assert not result.converged
        assert result.iterations == 2
        assert math.isfinite(result.action)

    def test_refining_the_truncation_barely_moves_the_action(self, config2):
        coarse = minimize(config2, L1, max_harmonic=32, grid=256, tolerance=1e-10)
        padded = LoopPath(
            L1,
            np.concatenate([coarse.loop.a, np.zeros(32)]),
            np.concatenate([coarse.loop.b, np.zeros(32)]),
        )
        fine = minimize(config2, L1, max_harmonic=64, grid=512, start=padded, tolerance=1e-10)
        assert abs(fine.action - coarse.action) <= 1e-8

    def test_rejects_bad_arguments(self, config2):
        with pytest.raises(ValueError):
            minimize(config2, L2, max_harmonic=16, grid=64)  # grid < 8K
        with pytest.raises(ValueError):
            minimize(config2, L2, tolerance=0.0)
        with pytest.raises(ValueError):
            minimize(config2, L2, start=random_loop(L1, 4, 0.1, 0))  # class mismatch
        with pytest.raises(ValueError):
            minimize(config2, L2, seeds=())

    def test_rejects_start_with_modes_above_truncation(self, config2):
        tall = random_loop(L2, 32, 0.1, seed=0)
        with pytest.raises(ValueError):
            minimize(config2, L2, max_harmonic=8, grid=128, start=tall)
