"""Tests for tripartite correlators and the network inequality quantities."""

import json
import math

import numpy as np
import pytest

from bilocalnet import (
    PointerSpec,
    ScenarioConfig,
    correlator,
    evaluate_all,
    evaluate_pair,
    joint_table,
    marginal_tripartite,
)
from bilocalnet.network import TripartiteDistribution
from conftest import random_config

SQRT2 = math.sqrt(2.0)


def _dist(probs, n=1, m=1) -> TripartiteDistribution:
    return TripartiteDistribution(n=n, m=m, probs=np.asarray(probs, dtype=float))


class TestCorrelator:
    def test_uniform_distribution_vanishes(self):
        dist = _dist(np.full((2,) * 6, 1.0 / 16.0))
        for i, j, k in [(0, 0, 0), (1, 0, 1), (1, 1, 0)]:
            assert correlator(dist, i, j, k) == 0.0

    def test_deterministic_distribution_is_one(self):
        probs = np.zeros((2,) * 6)
        probs[:, :, 0, 0, 0, 0] = 1.0
        dist = _dist(probs)
        assert correlator(dist, 0, 0, 0) == 1.0
        assert correlator(dist, 1, 1, 1) == 1.0

    def test_strong_limit_values_at_quarter_angles(self):
        # sharp measurements, maximally entangled sources, pi/4 settings:
        # the first-bit correlator is 1/2 for every setting pair, and the
        # second-bit correlator is -(-1)^(i+j)/2
        spec = PointerSpec.optimal(1.0)
        table = joint_table(ScenarioConfig.symmetric(spec, spec))
        dist = marginal_tripartite(table, 1, 1)
        for i in (0, 1):
            for j in (0, 1):
                assert correlator(dist, i, j, 0) == pytest.approx(0.5, abs=1e-12)
                assert correlator(dist, i, j, 1) == pytest.approx(
                    -((-1.0) ** (i + j)) * 0.5, abs=1e-12
                )

    def test_rejects_bad_bit_index(self):
        dist = _dist(np.full((2,) * 6, 1.0 / 16.0))
        with pytest.raises(ValueError):
            correlator(dist, 0, 0, 2)


class TestBrgpQuantities:
    def test_passive_optimum_all_pairs(self):
        spec = PointerSpec.optimal(0.8)
        results = evaluate_all(ScenarioConfig.symmetric(spec, spec))
        for result in results.values():
            assert result.B == pytest.approx(math.sqrt(1.28), abs=1e-12)
            assert result.violated

    def test_square_pointer_optimum(self):
        spec = PointerSpec.square(2.0 / 3.0)
        result = evaluate_pair(ScenarioConfig.symmetric(spec, spec), 1, 1)
        assert result.B == pytest.approx(SQRT2 * 2.0 / 3.0, abs=1e-12)
        assert not result.violated

    def test_b_identity_and_bounds_random(self):
        rng = np.random.default_rng(31)
        for _ in range(20):
            results = evaluate_all(random_config(rng, noisy=True))
            for result in results.values():
                assert result.B == pytest.approx(
                    math.sqrt(abs(result.I)) + math.sqrt(abs(result.J)), abs=1e-12
                )
                assert abs(result.I) <= 1.0 + 1e-12
                assert abs(result.J) <= 1.0 + 1e-12
                assert result.B <= SQRT2 + 1e-10

    def test_json_serialization(self):
        spec = PointerSpec.optimal(0.8)
        result = evaluate_pair(ScenarioConfig.symmetric(spec, spec), 2, 1)
        payload = json.loads(json.dumps(result.to_json_dict()))
        assert payload["n"] == 2 and payload["m"] == 1
        assert payload["B"] == pytest.approx(result.B)
        assert payload["violated"] is True


class TestSymmetries:
    def test_wing_swap_exchanges_cross_pairs(self):
        rng = np.random.default_rng(32)
        for _ in range(10):
            config = random_config(rng, noisy=True)
            swapped = ScenarioConfig(
                v1=config.v2,
                v2=config.v1,
                alice1=config.charlie1,
                charlie1=config.alice1,
                alice_angles=config.charlie_angles,
                charlie_angles=config.alice_angles,
            )
            res = evaluate_all(config)
            res_swapped = evaluate_all(swapped)
            assert res[(1, 2)].B == pytest.approx(res_swapped[(2, 1)].B, abs=1e-12)
            assert res[(2, 1)].B == pytest.approx(res_swapped[(1, 2)].B, abs=1e-12)
            assert res[(1, 1)].B == pytest.approx(res_swapped[(1, 1)].B, abs=1e-12)
            assert res[(2, 2)].B == pytest.approx(res_swapped[(2, 2)].B, abs=1e-12)

    def test_zero_precision_gives_exactly_zero(self):
        spec = PointerSpec.optimal(0.0)
        result = evaluate_pair(ScenarioConfig.symmetric(spec, spec), 1, 1)
        assert result.I == 0.0
        assert result.J == 0.0
        assert result.B == 0.0
