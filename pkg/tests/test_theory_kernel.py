import math

import numpy as np
import pytest

from degcorr import InvalidParameterError, exponential_degree_dist, one_step_transition_directed


class TestExponentialLaw:
    @pytest.mark.parametrize(
        "m,k,expected",
        [(1, 1, 0.5), (1, 3, 0.125), (2, 2, 1 / 3), (2, 4, (1 / 3) * (2 / 3) ** 2)],
    )
    def test_values(self, m, k, expected):
        assert exponential_degree_dist(m, k) == pytest.approx(expected, rel=1e-15)

    def test_normalizes(self):
        for m in (1, 2, 3, 4):
            total = sum(exponential_degree_dist(m, k) for k in range(m, 400))
            assert total == pytest.approx(1.0, abs=1e-12)

    def test_below_m(self):
        with pytest.raises(InvalidParameterError):
            exponential_degree_dist(2, 1)


def uniform_node_counts(N: int, degrees: list[int]) -> dict[int, float]:
    base, extra = divmod(N, len(degrees))
    return {k: base + (1 if i < extra else 0) for i, k in enumerate(degrees)}


class TestOneStepKernel:
    def test_m1_hand_values(self):
        succ, iso = one_step_transition_directed((3, 5), L=10, N=10, m=1, node_counts={1: 10})
        assert succ[(3, 5)] == pytest.approx(0.72, abs=1e-15)
        assert succ[(4, 5)] == pytest.approx(0.09, abs=1e-15)
        assert succ[(3, 6)] == pytest.approx(0.09, abs=1e-15)
        assert (4, 6) not in succ  # both-endpoint term vanishes for m=1
        assert iso == pytest.approx(0.10, abs=1e-15)
        assert succ[(1, 2)] == pytest.approx(0.10, abs=1e-15)

    def test_m2_hand_values(self):
        succ, iso = one_step_transition_directed((4, 4), L=11, N=10, m=2, node_counts={2: 10})
        assert succ[(4, 4)] == pytest.approx((9 / 11) * (28 / 45), abs=1e-15)
        assert succ[(5, 4)] == pytest.approx((9 / 11) * (8 / 45), abs=1e-15)
        assert succ[(4, 5)] == pytest.approx((9 / 11) * (8 / 45), abs=1e-15)
        assert succ[(5, 5)] == pytest.approx((9 / 11) * (1 / 45), abs=1e-15)
        assert iso == pytest.approx(2 / 11, abs=1e-15)

    def test_isolated_weights_follow_counts(self):
        counts = {1: 6, 2: 3, 5: 1}
        succ, iso = one_step_transition_directed((2, 2), L=21, N=10, m=1, node_counts=counts)
        assert succ[(1, 2)] == pytest.approx((1 / 21) * 0.6)
        assert succ[(1, 3)] == pytest.approx((1 / 21) * 0.3)
        assert succ[(1, 6)] == pytest.approx((1 / 21) * 0.1)

    def test_collision_with_stay_state_accumulates(self):
        # from (m, k2) the stay outcome and an isolated landing coincide
        succ, _ = one_step_transition_directed((1, 3), L=10, N=10, m=1, node_counts={2: 10})
        stay = (9 / 10) * (9 * 8) / (10 * 9)
        assert succ[(1, 3)] == pytest.approx(stay + 0.1, abs=1e-15)

    def test_row_stochastic_randomized(self):
        rng = np.random.default_rng(20260810)
        for _ in range(1000):
            m = int(rng.integers(1, 6))
            N = int(rng.integers(max(m, 2), 5000))
            L = int(rng.integers(m + 1, 10000))
            k1 = int(rng.integers(1, 50))
            k2 = int(rng.integers(1, 50))
            degrees = sorted(set(rng.integers(1, 60, size=int(rng.integers(1, 8))).tolist()))
            counts = uniform_node_counts(N, degrees)
            succ, iso = one_step_transition_directed((k1, k2), L, N, m, counts)
            total = math.fsum(succ.values())
            assert abs(total - 1.0) <= 1e-14
            assert iso == pytest.approx(m / L, abs=1e-15)

    def test_invalid(self):
        with pytest.raises(InvalidParameterError):
            one_step_transition_directed((1, 1), L=10, N=1, m=2, node_counts={})
        with pytest.raises(InvalidParameterError):
            one_step_transition_directed((0, 1), L=10, N=10, m=1, node_counts={})
        with pytest.raises(InvalidParameterError):
            one_step_transition_directed((1, 1), L=1, N=10, m=1, node_counts={})
