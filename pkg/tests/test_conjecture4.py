"""Pair tensors, anchored sums, and the falsification search."""

import math

import numpy as np
import pytest

from chsh_tradeoff.conjecture4 import (
    HIST_BINS,
    _anchored_total,
    conjecture_sum,
    conjecture_sum_n,
    generalized_ghz4,
    local_ascent,
    pair_tensor,
    search_max,
)
from chsh_tradeoff.errors import DimensionError
from chsh_tradeoff.qcore import bloch_decompose, density, haar_random_state, partial_trace, pure_state
from chsh_tradeoff.tradeoff3 import trace_identity
from conftest import apply_product_unitary, random_unitary

BELL_BELL = pure_state(4, np.kron([1, 0, 0, 1], [1, 0, 0, 1]))


class TestPairTensor:
    def test_product_zero_state(self):
        t = pair_tensor(pure_state(4, np.eye(16)[0]), "A", "B")
        assert np.allclose(t.t, np.diag([0, 0, 1]), atol=1e-12)

    def test_generalized_ghz_any_theta(self):
        for theta in (0.0, 0.3, math.pi / 3, 2.0):
            t = pair_tensor(generalized_ghz4(theta), "A", "B")
            assert np.allclose(t.t, np.diag([0, 0, 1]), atol=1e-12)

    def test_uncorrelated_pair_vanishes(self):
        t = pair_tensor(BELL_BELL, "A", "C")
        assert np.allclose(t.t, 0.0, atol=1e-12)

    def test_bell_pair_inside_product(self):
        t = pair_tensor(BELL_BELL, "A", "B")
        assert np.allclose(t.t, np.diag([1, -1, 1]), atol=1e-12)
        assert t.norm_sq() == pytest.approx(3.0, abs=1e-12)

    def test_two_routes_agree(self):
        for i in range(100):
            state = haar_random_state(4, 700 + i)
            for x, y in (("A", "B"), ("B", "D"), ("C", "A")):
                full = pair_tensor(state, x, y).t
                ix, iy = "ABCD".index(x), "ABCD".index(y)
                reduced = bloch_decompose(partial_trace(density(state), (ix, iy))).M.m
                assert np.max(np.abs(full - reduced)) < 1e-12

    def test_local_unitary_invariance(self, rng):
        for i in range(8):
            state = haar_random_state(4, 950 + i)
            base = pair_tensor(state, "A", "C").norm_sq()
            rotated = apply_product_unitary(
                state, {0: random_unitary(2, rng), 2: random_unitary(2, rng)}
            )
            assert pair_tensor(rotated, "A", "C").norm_sq() == pytest.approx(base, abs=1e-9)

    def test_label_errors(self):
        with pytest.raises(DimensionError):
            pair_tensor(BELL_BELL, "A", "A")
        with pytest.raises(DimensionError):
            pair_tensor(BELL_BELL, "A", "E")


class TestConjectureSum:
    def test_product_state(self):
        result = conjecture_sum(pure_state(4, np.eye(16)[0]))
        assert result.total == pytest.approx(3.0, abs=1e-12)
        assert set(result.per_pair) == {"AB", "AC", "AD"}

    def test_generalized_ghz_theta(self):
        result = conjecture_sum(generalized_ghz4(math.pi / 3))
        assert result.total == pytest.approx(3.0, abs=1e-12)

    def test_bell_products(self):
        result = conjecture_sum(BELL_BELL)
        assert result.per_pair["AB"] == pytest.approx(3.0, abs=1e-12)
        assert result.per_pair["AC"] == pytest.approx(0.0, abs=1e-12)
        assert result.total == pytest.approx(3.0, abs=1e-12)

    def test_wrong_qubit_count(self):
        with pytest.raises(DimensionError):
            conjecture_sum(haar_random_state(3, 1))


class TestConjectureSumN:
    def test_five_qubit_product(self):
        result = conjecture_sum_n(pure_state(5, np.eye(32)[0]), "A")
        assert result.total == pytest.approx(4.0, abs=1e-12)

    def test_anchor_b_on_bell_products(self):
        result = conjecture_sum_n(BELL_BELL, "B")
        assert result.total == pytest.approx(3.0, abs=1e-12)
        assert result.anchored_qubit == "B"

    def test_three_qubit_full_pair_sum_is_trace_identity(self):
        for i in range(15):
            state = haar_random_state(3, 4200 + i)
            anchored_a = conjecture_sum_n(state, "A")
            bc = pair_tensor(state, "B", "C").norm_sq()
            full = anchored_a.total + bc
            assert full == pytest.approx(trace_identity(state), abs=1e-10)
            assert full == pytest.approx(3.0, abs=1e-9)

    def test_haar_states_within_bound(self):
        for i in range(60):
            total = conjecture_sum(haar_random_state(4, 6100 + i)).total
            assert total <= 3.0 + 1e-9

    def test_fast_total_matches_canonical(self):
        for i in range(20):
            state = haar_random_state(4, 8800 + i)
            fast = _anchored_total(state.amplitudes, 4, 0)
            assert fast == pytest.approx(conjecture_sum(state).total, abs=1e-12)


class TestSearch:
    def test_ascent_from_saturating_point_stays(self):
        endpoint, total = local_ascent(generalized_ghz4(math.pi / 4))
        assert total == pytest.approx(3.0, abs=1e-9)
        assert conjecture_sum(endpoint).total <= 3.0 + 1e-9

    def test_ascent_improves_random_start(self):
        start = haar_random_state(4, 123)
        base = conjecture_sum(start).total
        _, total = local_ascent(start)
        assert total >= base - 1e-12

    def test_small_search_deterministic(self):
        r1 = search_max(4, 30, 2, 99)
        r2 = search_max(4, 30, 2, 99)
        assert r1.best_total == r2.best_total
        assert np.array_equal(r1.best_state.amplitudes, r2.best_state.amplitudes)
        assert r1.histogram == r2.histogram

    def test_minimal_search_deterministic(self):
        r1 = search_max(4, 1, 1, 3)
        r2 = search_max(4, 1, 1, 3)
        assert r1.best_total == r2.best_total
        assert np.array_equal(r1.best_state.amplitudes, r2.best_state.amplitudes)

    def test_violation_bound_generalization(self):
        from chsh_tradeoff.conjecture4 import violation_bound

        assert violation_bound(4) == 3.0
        assert violation_bound(3) == 3.0
        assert violation_bound(5) == 4.0
        # 5-qubit product state sits exactly at its bound, no false alarm
        r = search_max(5, 2, 0, 1, warm_starts=(pure_state(5, np.eye(32)[0]),))
        assert not r.violation_found

    def test_histogram_shape_and_count(self):
        r = search_max(4, 50, 1, 5)
        assert len(r.histogram) == HIST_BINS
        assert sum(r.histogram) == 50

    def test_thread_count_does_not_change_result(self):
        r1 = search_max(4, 40, 2, 31, threads=1)
        r2 = search_max(4, 40, 2, 31, threads=4)
        assert r1.best_total == r2.best_total
        assert r1.histogram == r2.histogram
        assert np.array_equal(r1.best_state.amplitudes, r2.best_state.amplitudes)

    def test_warm_start_reaches_bound(self):
        r = search_max(4, 5, 1, 7, warm_starts=(generalized_ghz4(math.pi / 4),))
        assert r.best_total == pytest.approx(3.0, abs=1e-9)
        assert not r.violation_found

    def test_n3_search_bound(self):
        r = search_max(3, 100, 2, 11)
        # anchored two-pair sum on 3 qubits stays within the trace identity
        assert r.best_total <= 3.0 + 1e-9
