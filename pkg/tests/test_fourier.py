import cmath
import math

import numpy as np
import pytest

from dqwalk.core import ModelParams, density_element, truncation_for
from dqwalk.exceptions import QuadratureLimitError
from dqwalk.fourier import (
    QuadratureSpec,
    density_block_quadrature,
    density_element_quadrature,
    momentum_diagonal,
    propagator_exponent,
)

TWO_PI = 2.0 * math.pi


class TestQuadratureSpec:
    def test_nodes_cover_zone_without_duplicate_endpoint(self):
        k = QuadratureSpec(nodes_per_axis=16).nodes()
        assert k.size == 16
        assert k[0] == -math.pi
        assert k[-1] < math.pi
        assert np.allclose(np.diff(k), TWO_PI / 16)

    def test_validity_ceiling(self):
        assert QuadratureSpec(nodes_per_axis=256).max_tprime() == 32.0

    def test_rejects_bad_node_counts(self):
        with pytest.raises(ValueError):
            QuadratureSpec(nodes_per_axis=8)
        with pytest.raises(ValueError):
            QuadratureSpec(nodes_per_axis=17)


class TestPropagatorExponent:
    def test_vanishes_on_diagonal(self):
        p = ModelParams(1.0, 3.0)
        for k in [0.0, 0.7, -2.0]:
            assert propagator_exponent(k, k, p) == 0.0

    def test_real_part_nonpositive(self):
        p = ModelParams(1.0, 2.5)
        rng = np.random.default_rng(7)
        for k1, k2 in rng.uniform(-math.pi, math.pi, size=(50, 2)):
            f = propagator_exponent(float(k1), float(k2), p)
            assert f.real <= 0.0

    def test_conjugate_under_swap(self):
        p = ModelParams(1.0, 0.8)
        f = propagator_exponent(0.3, -1.1, p)
        assert propagator_exponent(-1.1, 0.3, p) == f.conjugate()

    def test_example_value(self):
        p = ModelParams(1.0, 2.0)
        f = propagator_exponent(0.0, math.pi, p)
        assert f == pytest.approx(complex(-4.0, 2.0), abs=1e-15)

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            propagator_exponent(float("nan"), 0.0, ModelParams(1.0, 0.0))


class TestDensityQuadrature:
    def test_initial_condition(self):
        p = ModelParams(0.0, 0.0)
        assert density_element_quadrature(0, 0, p) == pytest.approx(1.0, abs=1e-13)
        assert abs(density_element_quadrature(2, 0, p)) < 1e-13

    @pytest.mark.parametrize("tprime,r_d", [(1.0, 0.0), (4.0, 0.5), (8.0, 2.0), (10.0, 10.0)])
    def test_agrees_with_series(self, tprime, r_d):
        p = ModelParams(tprime, r_d)
        trunc = truncation_for(p)
        for s1, s2 in [(0, 0), (3, -2), (-5, 5), (7, 6)]:
            series = density_element(s1, s2, p, trunc)
            quad = density_element_quadrature(s1, s2, p)
            assert abs(series - quad) < 1e-11

    def test_block_matches_scalar_route(self):
        p = ModelParams(3.0, 0.4)
        sites = np.arange(-4, 5)
        block = density_block_quadrature(sites, p)
        for i, s1 in enumerate(sites):
            for j, s2 in enumerate(sites):
                assert abs(block[i, j] - density_element_quadrature(int(s1), int(s2), p)) < 1e-14

    def test_block_trace_and_hermiticity(self):
        p = ModelParams(5.0, 1.0)
        half = 40
        block = density_block_quadrature(np.arange(-half, half + 1), p)
        assert abs(np.trace(block).real - 1.0) < 1e-10
        assert np.max(np.abs(block - block.conj().T)) < 1e-12

    def test_ceiling_enforced(self):
        p = ModelParams(40.0, 0.1)
        with pytest.raises(QuadratureLimitError):
            density_element_quadrature(0, 0, p)
        # more nodes raise the ceiling
        spec = QuadratureSpec(nodes_per_axis=512)
        val = density_element_quadrature(0, 0, p, spec)
        assert 0.0 < val.real < 1.0

    def test_spectral_convergence(self):
        # doubling the nodes should change nothing at machine precision
        p = ModelParams(6.0, 0.7)
        coarse = density_element_quadrature(2, -1, p, QuadratureSpec(nodes_per_axis=128))
        fine = density_element_quadrature(2, -1, p, QuadratureSpec(nodes_per_axis=256))
        assert abs(coarse - fine) < 1e-13


class TestMomentumDiagonal:
    def test_time_independent_uniform(self):
        for k in [-math.pi, 0.0, 1.3]:
            assert momentum_diagonal(k, ModelParams(17.0, 4.0)) == 1.0 / TWO_PI

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            momentum_diagonal(float("inf"), ModelParams(1.0, 0.0))

    def test_consistent_with_quadrature_propagator(self):
        # direct check that exp(F t) is 1 on the diagonal
        p = ModelParams(9.0, 2.0)
        f = propagator_exponent(0.4, 0.4, p)
        assert cmath.exp(p.tprime * f) == 1.0 + 0.0j


class TestValidationSuite:
    def test_fast_level_passes(self):
        from dqwalk.validate import run_checks

        report = run_checks("fast")
        failing = [r["name"] for r in report["checks"] if not r["passed"]]
        assert report["passed"], f"failing checks: {failing}"
        assert report["level"] == "fast"
        assert report["wall_clock_seconds"] > 0.0

    def test_rejects_unknown_level(self):
        from dqwalk.validate import run_checks

        with pytest.raises(ValueError):
            run_checks("exhaustive")
