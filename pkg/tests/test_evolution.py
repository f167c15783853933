import numpy as np
import pytest

from rickerwaves import (
    ConfigError,
    DomainError,
    Grid,
    RangeError,
    SpatialState,
    apply_Q,
    compare,
    constant_state,
    convolve_extended,
    discretize,
    interior_slice,
    iterate,
    translate,
    transformed_map,
    ricker_map,
)
from rickerwaves.model import ORIGINAL_FRAME, TRANSFORMED_FRAME


def random_transformed(grid, rng):
    return SpatialState(
        grid=grid,
        frame=TRANSFORMED_FRAME,
        U=rng.uniform(0.0, 1.0, grid.n_points),
        V=rng.uniform(0.0, 1.0, grid.n_points),
    )


def ordered_pair(grid, rng):
    a = random_transformed(grid, rng)
    b = random_transformed(grid, rng)
    lo = SpatialState(grid=grid, frame=TRANSFORMED_FRAME,
                      U=np.minimum(a.U, b.U), V=np.minimum(a.V, b.V))
    hi = SpatialState(grid=grid, frame=TRANSFORMED_FRAME,
                      U=np.maximum(a.U, b.U), V=np.maximum(a.V, b.V))
    return lo, hi


class TestGrid:
    def test_point_count_and_coverage(self):
        grid = Grid(half_length=200.0, dx=0.1)
        assert grid.n_points == 4001
        assert grid.x[0] == pytest.approx(-200.0)
        assert grid.x[-1] == pytest.approx(200.0)
        assert grid.x[grid.half_cells] == 0.0

    def test_minimum_size(self):
        assert Grid(half_length=0.2, dx=0.1).n_points >= 3
        with pytest.raises(ConfigError):
            Grid(half_length=0.05, dx=0.1)
        with pytest.raises(ConfigError):
            Grid(half_length=10.0, dx=-0.1)


class TestSpatialState:
    def test_transformed_range_enforced(self, small_grid):
        with pytest.raises(DomainError):
            SpatialState(grid=small_grid, frame=TRANSFORMED_FRAME,
                         U=np.full(small_grid.n_points, 1.2),
                         V=np.zeros(small_grid.n_points))

    def test_original_nonnegative_enforced(self, small_grid):
        with pytest.raises(DomainError):
            SpatialState(grid=small_grid, frame=ORIGINAL_FRAME,
                         U=np.full(small_grid.n_points, -0.1),
                         V=np.zeros(small_grid.n_points))
        # values above one are fine in the original frame
        SpatialState(grid=small_grid, frame=ORIGINAL_FRAME,
                     U=np.full(small_grid.n_points, 1.3),
                     V=np.zeros(small_grid.n_points))

    def test_shape_mismatch_rejected(self, small_grid):
        with pytest.raises(ConfigError):
            SpatialState(grid=small_grid, frame=TRANSFORMED_FRAME,
                         U=np.zeros(5), V=np.zeros(5))


class TestApplyQ:
    def test_zero_state_fixed(self, params, small_grid, gaussian_weights):
        out = apply_Q(constant_state(small_grid, TRANSFORMED_FRAME, (0.0, 0.0)),
                      params, gaussian_weights, gaussian_weights)
        assert np.all(out.U == 0.0) and np.all(out.V == 0.0)

    def test_saturated_state_fixed(self, params, small_grid, gaussian_weights):
        out = apply_Q(constant_state(small_grid, TRANSFORMED_FRAME, (1.0, 1.0)),
                      params, gaussian_weights, gaussian_weights)
        assert np.all(out.U == 1.0)
        assert np.max(np.abs(out.V - 1.0)) < 1e-14

    @pytest.mark.parametrize("point", [(1.0, 0.0), (0.8, 0.4)])
    def test_unstable_equilibria_fixed(self, params, small_grid, gaussian_weights, point):
        out = apply_Q(constant_state(small_grid, TRANSFORMED_FRAME, point),
                      params, gaussian_weights, gaussian_weights)
        assert np.max(np.abs(out.U - point[0])) < 1e-12
        assert np.max(np.abs(out.V - point[1])) < 1e-12

    def test_constants_evolve_by_pointwise_map(self, params, small_grid, gaussian_weights, rng):
        for _ in range(10):
            point = tuple(rng.uniform(0.0, 1.0, 2))
            out = apply_Q(constant_state(small_grid, TRANSFORMED_FRAME, point),
                          params, gaussian_weights, gaussian_weights)
            expected = transformed_map(params, point)
            assert np.max(np.abs(out.U - expected[0])) < 1e-12
            assert np.max(np.abs(out.V - expected[1])) < 1e-12

    def test_original_frame_constants(self, params, small_grid, gaussian_weights, rng):
        for _ in range(5):
            point = tuple(rng.uniform(0.0, 1.2, 2))
            out = apply_Q(constant_state(small_grid, ORIGINAL_FRAME, point),
                          params, gaussian_weights, gaussian_weights)
            expected = ricker_map(params, point)
            assert np.max(np.abs(out.U - expected[0])) < 1e-12
            assert np.max(np.abs(out.V - expected[1])) < 1e-12

    def test_spacing_mismatch_rejected(self, params, small_grid, gaussian):
        wrong = discretize(gaussian, 0.2)
        state = constant_state(small_grid, TRANSFORMED_FRAME, (0.5, 0.5))
        with pytest.raises(ConfigError):
            apply_Q(state, params, wrong, wrong)

    def test_step_counter_increments(self, params, small_grid, gaussian_weights):
        state = constant_state(small_grid, TRANSFORMED_FRAME, (0.5, 0.5))
        out = apply_Q(state, params, gaussian_weights, gaussian_weights)
        assert out.step == 1

    def test_range_preserved_on_random_states(self, params, small_grid, gaussian_weights, rng):
        for _ in range(20):
            out = apply_Q(random_transformed(small_grid, rng), params,
                          gaussian_weights, gaussian_weights)
            assert out.U.min() >= 0.0 and out.U.max() <= 1.0
            assert out.V.min() >= 0.0 and out.V.max() <= 1.0

    def test_order_preserved_on_random_pairs(self, params, small_grid, gaussian_weights, rng):
        worst = 0.0
        for _ in range(100):
            lo, hi = ordered_pair(small_grid, rng)
            q_lo = apply_Q(lo, params, gaussian_weights, gaussian_weights)
            q_hi = apply_Q(hi, params, gaussian_weights, gaussian_weights)
            worst = max(worst, float(np.max(q_lo.U - q_hi.U)), float(np.max(q_lo.V - q_hi.V)))
        assert worst <= 1e-12


class TestIterate:
    def test_zero_steps_identity(self, params, small_grid, gaussian_weights, rng):
        state = random_transformed(small_grid, rng)
        trajectory = iterate(state, params, gaussian_weights, gaussian_weights, 0)
        assert len(trajectory) == 1 and trajectory[0] is state

    def test_ordered_data_stays_ordered(self, params, small_grid, gaussian_weights, rng):
        lo, hi = ordered_pair(small_grid, rng)
        traj_lo = iterate(lo, params, gaussian_weights, gaussian_weights, 10)
        traj_hi = iterate(hi, params, gaussian_weights, gaussian_weights, 10)
        for s_lo, s_hi in zip(traj_lo, traj_hi):
            assert np.all(s_lo.U <= s_hi.U + 1e-12)
            assert np.all(s_lo.V <= s_hi.V + 1e-12)

    def test_monotone_in_x_preserved(self, params, small_grid, gaussian_weights):
        from rickerwaves import step_initial_data

        state = step_initial_data(small_grid, 1.0)
        for snap in iterate(state, params, gaussian_weights, gaussian_weights, 15):
            assert np.min(np.diff(snap.U)) >= -1e-12
            assert np.min(np.diff(snap.V)) >= -1e-12

    def test_thinning_keeps_first_and_last(self, params, small_grid, gaussian_weights, rng):
        state = random_transformed(small_grid, rng)
        trajectory = iterate(state, params, gaussian_weights, gaussian_weights, 7, keep_every=3)
        assert [s.step for s in trajectory] == [0, 3, 6, 7]


class TestTranslate:
    def test_zero_shift_is_identity(self, small_grid, rng):
        state = random_transformed(small_grid, rng)
        out = translate(state, 0)
        assert np.array_equal(out.U, state.U) and np.array_equal(out.V, state.V)

    def test_shift_semantics_and_edge_fill(self, small_grid):
        n = small_grid.n_points
        U = np.linspace(0.0, 1.0, n)
        state = SpatialState(grid=small_grid, frame=TRANSFORMED_FRAME, U=U, V=U.copy())
        out = translate(state, 3)
        assert np.array_equal(out.U[3:], U[:-3])
        assert np.all(out.U[:3] == U[0])
        back = translate(state, -3)
        assert np.array_equal(back.U[:-3], U[3:])
        assert np.all(back.U[-3:] == U[-1])

    def test_composition(self, small_grid, rng):
        state = random_transformed(small_grid, rng)
        once = translate(translate(state, 4), 3)
        direct = translate(state, 7)
        inner = slice(7, small_grid.n_points - 7)
        assert np.array_equal(once.U[inner], direct.U[inner])

    def test_out_of_range_rejected(self, small_grid, rng):
        state = random_transformed(small_grid, rng)
        with pytest.raises(RangeError):
            translate(state, small_grid.n_points)

    def test_commutes_with_step_on_interior(self, params, small_grid, gaussian_weights, rng):
        state = random_transformed(small_grid, rng)
        for j in (5, -9):
            a = translate(apply_Q(state, params, gaussian_weights, gaussian_weights), j)
            b = apply_Q(translate(state, j), params, gaussian_weights, gaussian_weights)
            win = interior_slice(small_grid, abs(j) + gaussian_weights.half_width)
            assert np.max(np.abs(a.U[win] - b.U[win])) <= 1e-12
            assert np.max(np.abs(a.V[win] - b.V[win])) <= 1e-12


class TestCompare:
    def test_state_equals_itself(self, small_grid, rng):
        state = random_transformed(small_grid, rng)
        assert compare(state, state) == "equal"

    def test_corner_states_ordered(self, small_grid):
        lo = constant_state(small_grid, TRANSFORMED_FRAME, (0.0, 0.0))
        hi = constant_state(small_grid, TRANSFORMED_FRAME, (1.0, 1.0))
        assert compare(lo, hi) == "le"
        assert compare(hi, lo) == "ge"

    def test_crossing_states_unordered(self, small_grid):
        n = small_grid.n_points
        up = np.linspace(0.0, 1.0, n)
        state_a = SpatialState(grid=small_grid, frame=TRANSFORMED_FRAME, U=up, V=up.copy())
        state_b = SpatialState(grid=small_grid, frame=TRANSFORMED_FRAME,
                               U=up[::-1].copy(), V=up[::-1].copy())
        assert compare(state_a, state_b) == "unordered"

    def test_grid_mismatch_rejected(self, small_grid, rng):
        other = Grid(half_length=10.0, dx=0.1)
        a = random_transformed(small_grid, rng)
        b = random_transformed(other, rng)
        with pytest.raises(ConfigError):
            compare(a, b)


class TestConvolution:
    def test_fast_and_direct_agree(self, gaussian_weights, rng):
        for _ in range(25):
            f = rng.uniform(0.0, 1.0, 301)
            fast = convolve_extended(f, gaussian_weights, "fft")
            ref = convolve_extended(f, gaussian_weights, "direct")
            assert np.max(np.abs(fast - ref)) <= 1e-10

    def test_exact_zeros_propagate_through_fft_path(self, gaussian_weights):
        f = np.zeros(301)
        f[:80] = 1.0
        out = convolve_extended(f, gaussian_weights, "fft")
        assert np.all(out[250:] == 0.0)

    def test_unknown_method_rejected(self, gaussian_weights):
        with pytest.raises(ConfigError):
            convolve_extended(np.ones(64), gaussian_weights, "warp")
