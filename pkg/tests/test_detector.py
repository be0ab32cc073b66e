from __future__ import annotations

import itertools
import math
import random

import pytest
from helpers import random_graph, verify_certificate, verify_witness

from graphqec.abelian import make_group
from graphqec.detector import (
    corrects_errors,
    detection_system,
    detects,
    detects_errors,
    graph_automorphisms,
    input_exchange_check,
    is_isometry_condition,
    strong_detects,
)
from graphqec.graphcode import WeightedGraph, matrix19_code


class TestDetectionSystem:
    """The generated modular equations must match the known tables row for row."""

    def test_wheel_hub_plus_1_2(self, wheel):
        rows, cols, system = detection_system(wheel, (1, 2))
        assert rows == (3, 4, 5)
        assert cols == (0, 1, 2)
        assert system == [[1, 0, 1], [1, 0, 0], [1, 1, 0]]

    def test_wheel_hub_plus_1_3(self, wheel):
        rows, cols, system = detection_system(wheel, (1, 3))
        assert rows == (2, 4, 5)
        assert cols == (0, 1, 3)
        assert system == [[1, 1, 1], [1, 0, 1], [1, 1, 0]]

    def test_tenfold_three_neighbored_pairs(self, tenfold):
        rows, cols, system = detection_system(tenfold, (1, 3, 5))
        assert rows == (2, 4, 6, 7, 8, 9, 10)
        assert cols == (0, 1, 3, 5)
        assert system == [
            [1, 1, 1, 0],   # vertex 2
            [1, 1, 1, 1],   # vertex 4
            [1, 0, 1, 1],   # vertex 6
            [1, 0, 0, 1],   # vertex 7
            [1, 0, 0, 1],   # vertex 8
            [1, 1, 0, 0],   # vertex 9
            [1, 1, 0, 0],   # vertex 10
        ]

    def test_tenfold_full_pair_plus_far_vertex(self, tenfold):
        rows, cols, system = detection_system(tenfold, (1, 2, 5))
        assert rows == (3, 4, 6, 7, 8, 9, 10)
        assert cols == (0, 1, 2, 5)
        assert system == [
            [1, 1, 1, 1],   # vertex 3
            [1, 1, 1, 1],   # vertex 4
            [1, 0, 0, 1],   # vertex 6
            [1, 0, 0, 1],   # vertex 7
            [1, 0, 0, 1],   # vertex 8
            [1, 1, 1, 0],   # vertex 9
            [1, 1, 1, 0],   # vertex 10
        ]

    def test_tenfold_two_neighbored_one_far(self, tenfold):
        # third pair not adjacent to either of the first two
        rows, cols, system = detection_system(tenfold, (1, 3, 7))
        assert rows == (2, 4, 5, 6, 8, 9, 10)
        assert cols == (0, 1, 3, 7)
        assert system == [
            [1, 1, 1, 0],
            [1, 1, 1, 0],
            [1, 0, 1, 1],
            [1, 0, 1, 1],
            [1, 0, 0, 1],
            [1, 1, 0, 1],
            [1, 1, 0, 1],
        ]

    def test_tenfold_full_pair_plus_neighbor(self, tenfold):
        rows, cols, system = detection_system(tenfold, (1, 2, 3))
        assert rows == (4, 5, 6, 7, 8, 9, 10)
        assert cols == (0, 1, 2, 3)
        assert system == [
            [1, 1, 1, 1],
            [1, 0, 0, 1],
            [1, 0, 0, 1],
            [1, 0, 0, 0],
            [1, 0, 0, 0],
            [1, 1, 1, 0],
            [1, 1, 1, 0],
        ]

    def test_rejects_non_output_vertices(self, wheel):
        with pytest.raises(ValueError):
            detection_system(wheel, (0,))
        with pytest.raises(ValueError):
            detection_system(wheel, (9,))


class TestDetects:
    def test_wheel_two_errors(self, wheel, z2):
        verdict = detects(wheel, z2, (1, 2))
        assert verdict.detected
        verify_certificate(wheel, verdict)

    def test_tenfold_qutrit_three_errors(self, tenfold, z3):
        verdict = detects(tenfold, z3, (1, 3, 5))
        assert verdict.detected
        # certificate shows the input variable is forced to zero
        hub_col = verdict.columns.index(0)
        for _, generators in verdict.certificate:
            assert all(gen[hub_col] == 0 for gen in generators)
        verify_certificate(tenfold, verdict)

    def test_tenfold_nontrivial_kernel_still_detected(self, tenfold, z2):
        # a fully corrupted pair leaves kernel freedom yet both conditions hold
        verdict = detects(tenfold, z2, (1, 2, 5))
        assert verdict.detected
        assert any(generators for _, generators in verdict.certificate)
        verify_certificate(tenfold, verdict)

    def test_wheel_three_errors_fails_with_witness(self, wheel, z2):
        verdict = detects(wheel, z2, (1, 2, 3))
        assert not verdict.detected
        verify_witness(wheel, verdict)

    @pytest.mark.parametrize("factors", [[2], [3], [2, 2]])
    def test_full_output_set_never_detected(self, wheel, tenfold, factors):
        group = make_group(factors)
        for graph in (wheel, tenfold):
            verdict = detects(graph, group, graph.outputs)
            assert not verdict.detected
            verify_witness(graph, verdict)

    def test_empty_configuration_is_isometry_check(self, wheel, z2):
        verdict = detects(wheel, z2, ())
        assert verdict.detected
        assert verdict.columns == (0,)

    def test_config_not_subset_of_outputs(self, wheel, z2):
        with pytest.raises(ValueError):
            detects(wheel, z2, (0,))

    def test_duplicates_collapse(self, wheel, z2):
        assert detects(wheel, z2, (1, 1, 2)).configuration == (1, 2)

    def test_verdict_dict_shape(self, wheel, z2):
        good = detects(wheel, z2, (1, 2)).to_dict()
        assert good["graph"] == "wheel"
        assert good["group"] == [2]
        assert good["detected"] is True
        assert "certificate" in good and "witness" not in good
        bad = detects(wheel, z2, (1, 2, 3)).to_dict()
        assert bad["detected"] is False
        assert {"factor", "failed", "witness"} <= bad.keys()


class TestStrongDetects:
    @pytest.mark.parametrize("d", [2, 3, 5, 7])
    @pytest.mark.parametrize("config", [(1, 2), (1, 3)])
    def test_wheel_representative_configs(self, wheel, d, config):
        assert strong_detects(wheel, make_group([d]), config)

    def test_full_output_set(self, wheel, z2):
        assert not strong_detects(wheel, z2, wheel.outputs)

    def test_matrix19_single_input_three_errors(self):
        graph = matrix19_code((0,))
        g7 = make_group([7])
        for config in itertools.combinations(graph.outputs, 3):
            assert strong_detects(graph, g7, config)

    def test_implies_detects(self, wheel, tenfold):
        rng = random.Random(99)
        graphs = [wheel, tenfold] + [random_graph(rng) for _ in range(25)]
        for graph in graphs:
            group = make_group([rng.choice([2, 3, 4])])
            size = rng.randint(0, len(graph.outputs))
            config = tuple(sorted(rng.sample(graph.outputs, size)))
            if strong_detects(graph, group, config):
                assert detects(graph, group, config).detected


class TestSweeps:
    def test_wheel_corrects_one(self, wheel, z2):
        report = corrects_errors(wheel, z2, 1)
        assert report.all_detected
        assert [(s.size, s.checked) for s in report.sizes] == [(0, 1), (1, 5), (2, 10)]
        assert sum(s.checked for s in report.sizes) == 16

    def test_wheel_cannot_detect_three(self, wheel, z2):
        report = detects_errors(wheel, z2, 3)
        assert not report.all_detected
        assert report.sizes[3].undetected

    def test_tenfold_detects_three(self, tenfold, z2, z5):
        for group in (z2, z5):
            report = detects_errors(tenfold, group, 3)
            assert report.all_detected
            assert sum(s.checked for s in report.sizes) == 176

    def test_tenfold_does_not_correct_two(self, tenfold, z2):
        report = corrects_errors(tenfold, z2, 2)
        assert not report.all_detected
        assert all(not s.undetected for s in report.sizes[:4])
        assert report.sizes[4].undetected  # only size-4 configurations fail

    def test_zero_errors_checks_isometry_only(self, wheel, z2):
        report = corrects_errors(wheel, z2, 0)
        assert [s.size for s in report.sizes] == [0]
        assert report.all_detected

    def test_max_size_clipped_at_output_count(self, wheel, z2):
        report = detects_errors(wheel, z2, 9)
        assert report.sizes[-1].size == 5
        assert not report.all_detected

    def test_negative_size_rejected(self, wheel, z2):
        with pytest.raises(ValueError):
            detects_errors(wheel, z2, -1)
        with pytest.raises(ValueError):
            corrects_errors(wheel, z2, -1)

    def test_lexicographic_undetected_order(self, wheel, z2):
        report = detects_errors(wheel, z2, 3)
        bad = list(report.sizes[3].undetected)
        assert bad == sorted(bad)

    def test_report_dict_shape(self, wheel, z2):
        report = corrects_errors(wheel, z2, 1)
        payload = report.to_dict()
        assert payload["mode"] == "correct"
        assert payload["errors"] == 1
        assert payload["all_detected"] is True
        assert "elapsed_s" in payload
        assert "elapsed_s" not in report.to_dict(include_elapsed=False)
        assert [s["checked"] for s in payload["sizes"]] == [1, 5, 10]

    def test_workers_match_serial(self, wheel, z3):
        serial = corrects_errors(wheel, z3, 1)
        parallel = corrects_errors(wheel, z3, 1, workers=2)
        assert serial.to_dict(include_elapsed=False) == parallel.to_dict(
            include_elapsed=False
        )


class TestIsometryCondition:
    def test_wheel_any_group(self, wheel):
        for factors in ([2], [3], [7], [2, 2]):
            assert is_isometry_condition(wheel, make_group(factors))

    def test_isolated_input_fails(self, z2):
        graph = WeightedGraph.from_edges(3, [(1, 2, 1)], (0,))
        assert not is_isometry_condition(graph, z2)

    def test_tenfold_qutrit(self, tenfold, z3):
        assert is_isometry_condition(tenfold, z3)


class TestInputExchange:
    @pytest.mark.parametrize("vertex", range(6))
    def test_any_wheel_vertex_works_qubit(self, wheel, z2, vertex):
        report = input_exchange_check(wheel, z2, (vertex,), 1)
        assert report.all_detected

    @pytest.mark.parametrize("vertex", [3])
    def test_peripheral_vertex_works_mod_seven(self, wheel, vertex):
        report = input_exchange_check(wheel, make_group([7]), (vertex,), 1)
        assert report.all_detected

    def test_two_inputs_report_produced(self, wheel, z2):
        # informative run: two inputs leave four outputs to sweep
        report = input_exchange_check(wheel, z2, (0, 1), 1)
        assert [s.checked for s in report.sizes] == [1, 4, 6]
        assert report.graph_inputs == (0, 1)

    def test_invalid_subset_rejected(self, wheel, z2):
        with pytest.raises(ValueError):
            input_exchange_check(wheel, z2, (7,), 1)


class TestGroupFactorIndependence:
    def test_products_equal_conjunction(self, wheel):
        rng = random.Random(5)
        graphs = [wheel] + [random_graph(rng, max_n=4) for _ in range(8)]
        for graph in graphs:
            for d1, d2 in itertools.product([2, 3, 4], repeat=2):
                product_group = make_group([d1, d2])
                for size in range(len(graph.outputs) + 1):
                    for config in itertools.combinations(graph.outputs, size):
                        combined = detects(graph, product_group, config).detected
                        separate = (
                            detects(graph, make_group([d1]), config).detected
                            and detects(graph, make_group([d2]), config).detected
                        )
                        assert combined == separate


class TestOrbitReduction:
    def test_wheel_automorphisms(self, wheel):
        autos = graph_automorphisms(wheel)
        # hub fixed, pentagon rotations and reflections remain
        assert len(autos) == 10
        assert all(perm[0] == 0 for perm in autos)

    def test_reduced_sweep_agrees(self, wheel, tenfold, z2):
        for graph in (wheel, tenfold):
            full = detects_errors(graph, z2, 2)
            reduced = detects_errors(graph, z2, 2, orbit_reduce=True)
            assert reduced.orbit_reduced
            assert full.all_detected == reduced.all_detected
            for s_full, s_red in zip(full.sizes, reduced.sizes):
                assert s_red.checked <= s_full.checked

    def test_wheel_two_error_orbits(self, wheel, z2):
        # adjacency splits the ten pairs into two orbits
        reduced = detects_errors(wheel, z2, 2, orbit_reduce=True)
        assert reduced.sizes[2].checked == 2


class TestRandomizedSoundness:
    def test_every_negative_verdict_carries_valid_witness(self):
        rng = random.Random(42)
        seen_negative = 0
        for _ in range(120):
            graph = random_graph(rng)
            group = make_group([rng.choice([2, 3, 4])])
            for size in range(len(graph.outputs) + 1):
                for config in itertools.combinations(graph.outputs, size):
                    verdict = detects(graph, group, config)
                    if verdict.detected:
                        verify_certificate(graph, verdict)
                    else:
                        seen_negative += 1
                        verify_witness(graph, verdict)
        assert seen_negative > 50

    def test_checked_counts_are_binomials(self):
        rng = random.Random(43)
        for _ in range(10):
            graph = random_graph(rng)
            group = make_group([2])
            t = rng.randint(0, len(graph.outputs))
            report = detects_errors(graph, group, t)
            for summary in report.sizes:
                assert summary.checked == math.comb(len(graph.outputs), summary.size)
