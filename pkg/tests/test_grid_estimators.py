import pytest

from degcorr import (
    GridData,
    GrowthParams,
    InvalidStateError,
    grid_knn,
    grid_r,
    grow_run,
    joint_degree_matrix,
    pearson_r,
    stationary_grid,
    tail_mass,
)


def grid_of(entries, mode="undirected"):
    return GridData(kind="stationary", mode=mode, m=None, entries=entries)


class TestGridR:
    def test_degenerate(self):
        assert grid_r(grid_of({(2, 2): 1.0})) is None

    def test_unnormalized_rejected(self):
        with pytest.raises(InvalidStateError):
            grid_r(grid_of({(2, 2): 0.5}))

    def test_matches_simulated_r(self):
        grid = stationary_grid(1, "undirected", max_k=60)
        theory_r = grid_r(grid)
        net = grow_run(GrowthParams(m=1, n0=3, steps=100_000, seed=19))
        sim_r = pearson_r(joint_degree_matrix(net, "undirected")).pearson_r
        assert theory_r == pytest.approx(sim_r, abs=0.02)

    def test_truncation_stable(self):
        r60 = grid_r(stationary_grid(1, "undirected", max_k=60))
        r100 = grid_r(stationary_grid(1, "undirected", max_k=100))
        assert abs(r60 - r100) < 1e-4

    def test_directed_grid_r_defined(self):
        r = grid_r(stationary_grid(1, "directed", max_k=80))
        assert -1.0 <= r <= 1.0


class TestGridKnn:
    def test_point_mass_pair(self):
        knn = grid_knn(grid_of({(1, 3): 1.0}))
        assert knn == {1: 3.0, 3: 1.0}

    def test_point_mass_diagonal(self):
        assert grid_knn(grid_of({(2, 2): 1.0})) == {2: 2.0}

    def test_matches_simulated_edge_conditional_mean(self):
        grid = stationary_grid(1, "undirected", max_k=60)
        theory_knn = grid_knn(grid)
        net = grow_run(GrowthParams(m=1, n0=3, steps=100_000, seed=23))
        sim_knn = grid_knn(joint_degree_matrix(net, "undirected"))
        for k in (1, 2, 3):
            assert theory_knn[k] == pytest.approx(sim_knn[k], abs=0.05)

    def test_missing_marginal_absent(self):
        knn = grid_knn(grid_of({(1, 3): 1.0}))
        assert 2 not in knn


class TestTailMass:
    def test_fresh_point_mass(self):
        from degcorr import transient_start

        assert tail_mass(transient_start(1, 3, 30, "directed")) == 0.0

    def test_stationary_small(self):
        assert tail_mass(stationary_grid(1, "directed", max_k=60)) < 1e-9

    def test_monotone(self):
        t60 = tail_mass(stationary_grid(1, "undirected", max_k=60))
        t80 = tail_mass(stationary_grid(1, "undirected", max_k=80))
        assert t80 <= t60
