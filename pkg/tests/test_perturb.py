import math

import pytest

from ramseylab.graphs import (Graph, clique_graph, complete_multipartite,
                              cycle, empty_graph, turan_graph)
from ramseylab.perturb import (drc_select, log_spaced_grid,
                               monte_carlo_ramsey, perturb, sample_gnp,
                               threshold_scan, wilson_interval)
from ramseylab.perturb import _crossing


class TestSampling:
    def test_p_zero_empty(self):
        for trial in range(5):
            assert sample_gnp(12, 0.0, seed=1, trial=trial).edge_count == 0

    def test_p_one_complete(self):
        for trial in range(5):
            assert sample_gnp(9, 1.0, seed=1, trial=trial).is_complete()

    def test_reproducible(self):
        a = sample_gnp(15, 0.4, seed=77, trial=3)
        b = sample_gnp(15, 0.4, seed=77, trial=3)
        assert a.adj == b.adj

    def test_trials_differ(self):
        a = sample_gnp(15, 0.4, seed=77, trial=0)
        b = sample_gnp(15, 0.4, seed=77, trial=1)
        assert a.adj != b.adj

    def test_trials_order_independent(self):
        # trial 5 can be drawn without generating trials 0..4 first
        direct = sample_gnp(10, 0.5, seed=5, trial=5)
        for t in range(5):
            sample_gnp(10, 0.5, seed=5, trial=t)
        again = sample_gnp(10, 0.5, seed=5, trial=5)
        assert direct.adj == again.adj

    def test_common_random_numbers_nest_edges(self):
        # one variate per edge shared across p: raising p only adds edges
        for trial in range(6):
            lo = set(sample_gnp(12, 0.2, seed=9, trial=trial).edges())
            hi = set(sample_gnp(12, 0.6, seed=9, trial=trial).edges())
            assert lo <= hi

    def test_mean_edge_count(self):
        total = 0
        trials = 10 ** 4
        for t in range(trials):
            total += sample_gnp(20, 0.3, seed=42, trial=t).edge_count
        mean = total / trials
        expect = 0.3 * 190
        sigma = math.sqrt(190 * 0.3 * 0.7 / trials)
        assert abs(mean - expect) <= 3 * sigma

    def test_bad_probability(self):
        with pytest.raises(ValueError):
            sample_gnp(5, -0.1, seed=0)
        with pytest.raises(ValueError):
            sample_gnp(5, 1.5, seed=0)


class TestPerturb:
    def test_identity_at_p_zero(self):
        base = turan_graph(9, 3)
        assert perturb(base, 0.0, seed=4).adj == base.adj

    def test_complete_at_p_one(self):
        assert perturb(turan_graph(8, 4), 1.0, seed=4).is_complete()

    def test_union_counts(self):
        base = turan_graph(6, 3)
        matching = Graph.from_edges(6, [(0, 1), (2, 3), (4, 5)])
        merged = base.union(matching)
        assert base.edge_count == 12
        assert merged.edge_count == 15

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            turan_graph(6, 3).union(empty_graph(7))


class TestWilson:
    def test_half_is_symmetric(self):
        lo, hi = wilson_interval(5, 10)
        assert lo == pytest.approx(0.2365931095, abs=1e-6)
        assert hi == pytest.approx(0.7634068905, abs=1e-6)
        assert lo + hi == pytest.approx(1.0)

    def test_extremes_clamped(self):
        lo, hi = wilson_interval(0, 20)
        assert lo == 0.0 and 0 < hi < 0.2
        lo, hi = wilson_interval(20, 20)
        assert 0.8 < lo < 1 and hi == 1.0

    def test_empty_batch(self):
        assert wilson_interval(0, 0) == (0.0, 1.0)

    def test_contains_point_estimate(self):
        for s, n in ((1, 7), (3, 11), (13, 40), (399, 400)):
            lo, hi = wilson_interval(s, n)
            assert lo <= s / n <= hi
            assert 0.0 <= lo <= hi <= 1.0

    def test_narrows_with_samples(self):
        lo1, hi1 = wilson_interval(5, 10)
        lo2, hi2 = wilson_interval(50, 100)
        assert hi2 - lo2 < hi1 - lo1


class TestGrid:
    def test_two_decades(self):
        grid = log_spaced_grid(0.002, 0.2, per_decade=13)
        assert len(grid) == 27
        assert grid[0] == pytest.approx(0.002)
        assert grid[-1] == pytest.approx(0.2)
        assert grid == sorted(grid)

    def test_log_uniform_spacing(self):
        grid = log_spaced_grid(0.01, 1.0, per_decade=5)
        ratios = [b / a for a, b in zip(grid, grid[1:])]
        for r in ratios:
            assert r == pytest.approx(ratios[0], rel=1e-9)

    def test_errors(self):
        with pytest.raises(ValueError):
            log_spaced_grid(0.0, 0.1)
        with pytest.raises(ValueError):
            log_spaced_grid(0.2, 0.1)
        with pytest.raises(ValueError):
            log_spaced_grid(0.1, 1.5)


class TestCrossing:
    def test_interpolates_in_log_p(self):
        got = _crossing([(0.01, 0.0), (0.1, 1.0)])
        assert got == pytest.approx(math.sqrt(0.01 * 0.1))

    def test_first_point_already_above(self):
        assert _crossing([(0.05, 0.9), (0.5, 1.0)]) == 0.05

    def test_skips_missing_rates(self):
        got = _crossing([(0.01, 0.0), (0.03, None), (0.1, 1.0)])
        assert got == pytest.approx(math.sqrt(0.01 * 0.1))

    def test_no_crossing(self):
        assert _crossing([(0.01, 0.0), (0.1, 0.4)]) is None


class TestMonteCarlo:
    def test_k5_free_base_never_ramsey_at_p_zero(self):
        row = monte_carlo_ramsey(turan_graph(10, 5), [cycle(3), cycle(3)],
                                 p=0.0, trials=8, seed=3)
        assert row.successes == 0
        assert row.inconclusive == 0
        assert row.rate == 0.0

    def test_k6_base_always_ramsey(self):
        for p in (0.0, 0.5):
            row = monte_carlo_ramsey(clique_graph(6), [cycle(3), cycle(3)],
                                     p=p, trials=6, seed=3)
            assert row.rate == 1.0

    def test_dense_perturbation_always_ramsey(self):
        row = monte_carlo_ramsey(turan_graph(12, 4), [cycle(3), cycle(5)],
                                 p=1.0, trials=3, seed=3)
        assert row.rate == 1.0

    def test_budget_exhaustion_reported_not_counted(self):
        row = monte_carlo_ramsey(turan_graph(10, 5), [cycle(3), cycle(3)],
                                 p=0.3, trials=5, seed=3, node_budget=1,
                                 clique_shortcut=False)
        assert row.inconclusive == 5
        assert row.successes == 0
        assert row.effective == 0
        assert row.rate is None

    def test_wilson_attached(self):
        row = monte_carlo_ramsey(turan_graph(10, 5), [cycle(3), cycle(3)],
                                 p=0.0, trials=8, seed=3)
        assert (row.wilson_lo, row.wilson_hi) == wilson_interval(0, 8)


class TestThresholdScan:
    def test_single_size_scan(self):
        result = threshold_scan([turan_graph(10, 5)], [cycle(3), cycle(3)],
                                p_grid=[0.005, 0.3, 0.95], trials=10, seed=2)
        assert [row.p for row in result.rows] == [0.005, 0.3, 0.95]
        bottom, _, top = result.rows
        assert bottom.rate == 0.0
        assert top.rate == 1.0
        assert result.crossings[10] is not None
        assert result.exponent is None
        for row in result.rows:
            assert row.successes + row.inconclusive <= row.trials
            assert 0.0 <= row.wilson_lo <= row.wilson_hi <= 1.0

    def test_two_sizes_give_exponent(self):
        result = threshold_scan([turan_graph(8, 4), turan_graph(12, 4)],
                                [cycle(3), cycle(3)],
                                p_grid=[0.01, 0.3, 0.95], trials=8, seed=2)
        assert set(result.crossings) == {8, 12}
        assert result.exponent is not None

    def test_rows_sorted_by_size_then_p(self):
        result = threshold_scan([turan_graph(12, 4), turan_graph(8, 4)],
                                [cycle(3), cycle(3)],
                                p_grid=[0.3, 0.01], trials=4, seed=2)
        keys = [(row.n, row.p) for row in result.rows]
        assert keys == sorted(keys)

    def test_all_inconclusive_flagged(self):
        result = threshold_scan([turan_graph(10, 5)], [cycle(3), cycle(3)],
                                p_grid=[0.2], trials=3, seed=2,
                                node_budget=1, clique_shortcut=False)
        assert any("inconclusive" in flag for flag in result.flags)
        assert result.crossings[10] is None

    def test_csv_round_trip(self):
        result = threshold_scan([turan_graph(10, 5)], [cycle(3), cycle(3)],
                                p_grid=[0.005, 0.95], trials=5, seed=2)
        text = result.to_csv()
        lines = text.strip().split("\n")
        assert lines[0] == "n,p,trials,successes,wilson_lo,wilson_hi,inconclusive"
        assert len(lines) == 1 + len(result.rows)
        for line, row in zip(lines[1:], result.rows):
            fields = line.split(",")
            assert int(fields[0]) == row.n
            assert float(fields[1]) == row.p
            assert float(fields[4]) == row.wilson_lo

    def test_deterministic(self):
        args = ([turan_graph(8, 4)], [cycle(3), cycle(3)], [0.05, 0.5], 6, 11)
        assert threshold_scan(*args).to_csv() == threshold_scan(*args).to_csv()


class TestDrcSelect:
    def test_complete_bipartite_keeps_everything(self):
        g = complete_multipartite([4, 4])
        parts = [[0, 1, 2, 3], [4, 5, 6, 7]]
        report = drc_select(g, parts, ell=2, t=2, gamma_target=0.9, seed=1)
        assert report.verified
        assert report.selected == [4, 5, 6, 7]
        assert report.removed == []

    def test_empty_graph_empty_selection(self):
        report = drc_select(empty_graph(8), [[0, 1, 2, 3], [4, 5, 6, 7]],
                            ell=2, t=1, gamma_target=0.5, seed=1)
        assert report.verified
        assert report.selected == []

    def test_dense_random_bipartite_verifies(self):
        from ramseylab.perturb import edge_variate
        n = 32
        edges = []
        for j, (u, v) in enumerate(((u, v) for u in range(16)
                                    for v in range(16, 32))):
            if edge_variate(100, 0, j) < 0.7:
                edges.append((u, v))
        g = Graph.from_edges(n, edges)
        parts = [list(range(16)), list(range(16, 32))]
        report = drc_select(g, parts, ell=2, t=2, gamma_target=0.3, seed=5)
        assert report.verified
        assert set(report.selected) <= set(parts[1])
        assert report.selected

    def test_certificate_holds_by_direct_recount(self):
        from ramseylab.perturb import edge_variate
        edges = []
        for j, (u, v) in enumerate(((u, v) for u in range(8)
                                    for v in range(8, 20))):
            if edge_variate(7, 0, j) < 0.5:
                edges.append((u, v))
        g = Graph.from_edges(20, edges)
        parts = [list(range(8)), list(range(8, 20))]
        gamma = 0.25
        report = drc_select(g, parts, ell=2, t=2, gamma_target=gamma, seed=3)
        assert report.verified
        import itertools
        for pair in itertools.combinations(report.selected, 2):
            common = [u for u in range(8)
                      if all(g.has_edge(u, w) for w in pair)]
            assert len(common) >= gamma * 8

    def test_unconnected_vertex_never_kept(self):
        # vertex 19 has no left neighbors, so it cannot survive the
        # common-neighbor filter whatever gets sampled
        edges = [(u, v) for u in range(8) for v in range(8, 19)]
        g = Graph.from_edges(20, edges)
        parts = [list(range(8)), list(range(8, 20))]
        report = drc_select(g, parts, ell=2, t=1, gamma_target=0.5, seed=2)
        assert report.verified
        assert 19 not in report.selected
        assert report.selected == list(range(8, 19))

    def test_bad_pairs_force_removals(self):
        # vertex 19 survives the filter via its one left neighbor, but
        # every pair containing it has a singleton common neighborhood;
        # one vertex per bad pair is removed until the rest verifies
        edges = [(u, v) for u in range(8) for v in range(8, 19)]
        edges.append((0, 19))
        g = Graph.from_edges(20, edges)
        parts = [list(range(8)), list(range(8, 20))]
        report = drc_select(g, parts, ell=2, t=1, gamma_target=0.5, seed=2)
        assert report.verified
        assert report.removed
        import itertools
        for pair in itertools.combinations(report.selected, 2):
            common = [u for u in range(8)
                      if all(g.has_edge(u, w) for w in pair)]
            assert len(common) >= 0.5 * 8

    def test_cap_exceeded_is_error_not_guess(self):
        g = complete_multipartite([4, 40])
        parts = [list(range(4)), list(range(4, 44))]
        report = drc_select(g, parts, ell=3, t=1, gamma_target=0.5, seed=1,
                            subset_cap=100)
        assert not report.verified
        assert "cap" in report.error
        assert report.selected == []

    def test_deterministic(self):
        g = complete_multipartite([5, 7])
        parts = [list(range(5)), list(range(5, 12))]
        a = drc_select(g, parts, ell=2, t=2, gamma_target=0.5, seed=9)
        b = drc_select(g, parts, ell=2, t=2, gamma_target=0.5, seed=9)
        assert (a.selected, a.removed, a.samples) == (b.selected, b.removed, b.samples)

    def test_input_validation(self):
        g = complete_multipartite([3, 3])
        with pytest.raises(ValueError):
            drc_select(g, [[0, 1, 2]], ell=2, t=1, gamma_target=0.5, seed=0)
        with pytest.raises(ValueError):
            drc_select(g, [[0, 1], [1, 2]], ell=2, t=1, gamma_target=0.5, seed=0)
        with pytest.raises(ValueError):
            drc_select(g, [[0, 1], []], ell=2, t=1, gamma_target=0.5, seed=0)
        with pytest.raises(ValueError):
            drc_select(g, [[0, 1], [2, 3]], ell=0, t=1, gamma_target=0.5, seed=0)
