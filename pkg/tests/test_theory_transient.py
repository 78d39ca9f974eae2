import pytest

from degcorr import (
    InvalidParameterError,
    InvalidStateError,
    node_counts_from_edge_dist,
    stationary_grid,
    transient_run,
    transient_start,
    transient_step_directed,
    transient_step_undirected,
)
from degcorr.theory import entries_sup_distance

import oracles


class TestStart:
    def test_point_mass_metadata(self):
        dist = transient_start(1, 3, 30, "directed")
        assert dist.entries == {(2, 2): 1.0}
        assert dist.L == 4  # three clique edges plus the upcoming one
        assert dist.N == 3
        assert dist.t == 0
        assert dist.edge_count == 3

    def test_window_too_small(self):
        with pytest.raises(InvalidParameterError):
            transient_start(1, 10, 5, "directed")

    def test_n0_below_m(self):
        with pytest.raises(InvalidParameterError):
            transient_start(3, 3, 30, "directed")


class TestFirstStep:
    def test_directed(self):
        dist, _ = transient_run(1, 3, 1, 30, "directed")
        assert dist.entries[(2, 2)] == pytest.approx(0.25, abs=1e-15)
        assert dist.entries[(3, 2)] == pytest.approx(0.25, abs=1e-15)
        assert dist.entries[(2, 3)] == pytest.approx(0.25, abs=1e-15)
        assert dist.entries[(1, 3)] == pytest.approx(0.25, abs=1e-15)
        assert dist.L == 5 and dist.N == 4 and dist.t == 1

    def test_undirected(self):
        dist, _ = transient_run(1, 3, 1, 30, "undirected")
        assert dist.entries[(2, 2)] == pytest.approx(0.25, abs=1e-15)
        assert dist.entries[(2, 3)] == pytest.approx(0.5, abs=1e-15)
        assert dist.entries[(1, 3)] == pytest.approx(0.25, abs=1e-15)


class TestAgainstEnumeration:
    @pytest.mark.parametrize("mode", ["directed", "undirected"])
    def test_matches_exact_histories_m1(self, mode):
        dist = transient_start(1, 3, 30, mode)
        step = transient_step_directed if mode == "directed" else transient_step_undirected
        for t in range(1, 6):
            dist = step(dist, 1)
            exact = oracles.enumerated_edge_state_dist(1, 3, t, mode)
            assert entries_sup_distance(dist.entries, exact) < 1e-12

    @pytest.mark.parametrize("mode", ["directed", "undirected"])
    def test_matches_exact_histories_m2(self, mode):
        # the chain is exact for any m; check a second attachment count
        dist = transient_start(2, 4, 20, mode)
        step = transient_step_directed if mode == "directed" else transient_step_undirected
        for t in range(1, 4):
            dist = step(dist, 2)
            exact = oracles.enumerated_edge_state_dist(2, 4, t, mode)
            assert entries_sup_distance(dist.entries, exact) < 1e-12

    def test_minimal_clique_diagonal_start(self):
        # n0 = m+1 puts transient mass on the (m, m) diagonal and exercises
        # the doubled flow from the diagonal to its first off-diagonal
        for mode in ("directed", "undirected"):
            dist = transient_start(2, 3, 20, mode)
            step = transient_step_directed if mode == "directed" else transient_step_undirected
            for t in range(1, 4):
                dist = step(dist, 2)
                exact = oracles.enumerated_edge_state_dist(2, 3, t, mode)
                assert entries_sup_distance(dist.entries, exact) < 1e-12


class TestConservation:
    @pytest.mark.parametrize("mode", ["directed", "undirected"])
    def test_mass_conserved_each_step(self, mode):
        dist = transient_start(1, 3, 20, mode)
        step = transient_step_directed if mode == "directed" else transient_step_undirected
        for _ in range(200):
            dist = step(dist, 1)
            assert dist.total() == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("mode", ["directed", "undirected"])
    def test_long_run_drift(self, mode):
        dist, _ = transient_run(1, 3, 100_000, 40, mode)
        assert abs(dist.total() - 1.0) < 1e-8

    def test_tail_accumulates_not_drops(self):
        # a tiny window forces mass over the edge; it must land in the tail
        dist, _ = transient_run(1, 3, 50, 5, "directed")
        assert dist.tail_mass > 0
        assert dist.total() == pytest.approx(1.0, abs=1e-12)


class TestConvergence:
    @pytest.mark.parametrize("mode", ["directed", "undirected"])
    def test_decade_convergence(self, mode):
        star = stationary_grid(1, mode, max_k=80)
        _, snaps = transient_run(1, 3, 10_000, 80, mode, snapshot_steps=(100, 1000, 10_000))
        dists = [
            entries_sup_distance(snaps[t].entries, star.entries) for t in (100, 1000, 10_000)
        ]
        assert dists[0] > dists[1] > dists[2]
        assert dists[2] < 1e-2


class TestValidation:
    def test_unnormalized_input_rejected(self):
        dist = transient_start(1, 3, 20, "directed")
        dist.probs[0, 5] = 0.5
        with pytest.raises(InvalidStateError):
            transient_step_directed(dist, 1)

    def test_mode_mismatch(self):
        dist = transient_start(1, 3, 20, "directed")
        with pytest.raises(InvalidStateError):
            transient_step_undirected(dist, 1)

    def test_m_mismatch(self):
        dist = transient_start(2, 4, 20, "directed")
        with pytest.raises(InvalidParameterError):
            transient_step_directed(dist, 1)


class TestNodeCounts:
    def test_counts_track_node_total(self):
        dist, _ = transient_run(1, 3, 50, 60, "directed")
        hist = node_counts_from_edge_dist(dist)
        assert hist.total_nodes == pytest.approx(dist.N, abs=1e-9)
