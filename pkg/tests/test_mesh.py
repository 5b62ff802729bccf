"""Mesh construction, sampling, and speed discretisation modes."""

import math

import numpy as np
import pytest

from gsbp.errors import ConfigurationError
from gsbp.mesh import SpeedMode, discretize_speed, make_mesh, sample_function
from gsbp.operators import NodeFamily, build_operator


class TestMakeMesh:
    def test_two_elements(self):
        mesh = make_mesh(-1, 1, 2)
        assert np.allclose(mesh.boundaries, [-1.0, 0.0, 1.0])
        assert mesh.element_width == 1.0

    def test_fifty_elements_width(self):
        assert make_mesh(-1, 1, 50).element_width == pytest.approx(0.04)

    def test_first_element_span(self):
        mesh = make_mesh(0, 2, 100)
        assert mesh.boundaries[0] == 0.0
        assert mesh.boundaries[1] == pytest.approx(0.02)

    def test_invalid_bounds(self):
        with pytest.raises(ConfigurationError):
            make_mesh(1, -1, 4)
        with pytest.raises(ConfigurationError):
            make_mesh(0, 1, 0)


class TestSampleFunction:
    def test_constant(self):
        mesh = make_mesh(-1, 1, 3)
        op = build_operator(NodeFamily.GAUSS, 2)
        assert np.array_equal(sample_function(mesh, op, lambda x: 1.0), np.ones(9))

    def test_linear_single_lobatto_element(self):
        mesh = make_mesh(-1, 1, 1)
        op = build_operator(NodeFamily.LOBATTO, 1)
        assert np.allclose(sample_function(mesh, op, lambda x: x), [-1.0, 1.0])

    def test_matches_pointwise_evaluation(self):
        mesh = make_mesh(0, 2, 5)
        op = build_operator(NodeFamily.LOBATTO, 4)
        field = sample_function(mesh, op, lambda x: math.sin(math.pi * x))
        pts = mesh.node_coordinates(op).ravel()
        assert np.allclose(field, np.sin(np.pi * pts), atol=1e-15)


class TestDiscretizeSpeed:
    def test_constant_both_modes(self):
        mesh = make_mesh(-1, 1, 4)
        op = build_operator(NodeFamily.GAUSS, 3)
        for mode in SpeedMode:
            a = discretize_speed(mesh, op, lambda x: 2.5, mode).reshape(4, 4)
            assert np.allclose(a, 2.5, atol=1e-14)
            traces = op.restrict @ a.T
            assert np.allclose(traces, 2.5, atol=1e-13)

    def test_lobatto_interpolation_reproduces_endpoints(self):
        """Gauss basis, cosh speed: the re-interpolated speed hits the
        exact values at the element boundaries."""
        mesh = make_mesh(-1, 1, 8)
        op = build_operator(NodeFamily.GAUSS, 5)
        a = discretize_speed(
            mesh, op, lambda x: 1 + math.cosh(x), SpeedMode.VIA_LOBATTO
        ).reshape(8, 6)
        left = op.restrict[0] @ a.T
        right = op.restrict[1] @ a.T
        xb = mesh.boundaries
        assert np.max(np.abs(left - (1 + np.cosh(xb[:-1])))) < 1e-12
        assert np.max(np.abs(right - (1 + np.cosh(xb[1:])))) < 1e-12

    def test_direct_mode_misses_endpoints(self):
        """Direct collocation on Gauss nodes leaves a genuine endpoint
        interpolation defect (5.2e-10 for p=5, h=0.25), orders above the
        round-off-exact Lobatto-interpolated mode."""
        mesh = make_mesh(-1, 1, 8)
        op = build_operator(NodeFamily.GAUSS, 5)
        a = discretize_speed(mesh, op, lambda x: 1 + math.cosh(x), SpeedMode.DIRECT)
        right = op.restrict[1] @ a.reshape(8, 6).T
        gap = np.max(np.abs(right - (1 + np.cosh(mesh.boundaries[1:]))))
        assert gap > 1e-10
        via = discretize_speed(mesh, op, lambda x: 1 + math.cosh(x), SpeedMode.VIA_LOBATTO)
        via_gap = np.max(
            np.abs(op.restrict[1] @ via.reshape(8, 6).T - (1 + np.cosh(mesh.boundaries[1:])))
        )
        assert gap > 100 * via_gap

    def test_modes_coincide_for_lobatto_basis(self):
        mesh = make_mesh(-1, 1, 4)
        op = build_operator(NodeFamily.LOBATTO, 5)
        direct = discretize_speed(mesh, op, math.cosh, SpeedMode.DIRECT)
        via = discretize_speed(mesh, op, math.cosh, SpeedMode.VIA_LOBATTO)
        assert np.array_equal(direct, via)

    @pytest.mark.parametrize("fn", [math.cosh, lambda x: 2 + math.sin(math.pi * x)])
    def test_trace_continuity_across_interfaces(self, fn):
        """Lobatto-interpolated speeds have matching traces at interior
        interfaces (hypothesis of the split-form stability statement)."""
        mesh = make_mesh(-1, 1, 6)
        op = build_operator(NodeFamily.GAUSS, 4)
        a = discretize_speed(mesh, op, fn, SpeedMode.VIA_LOBATTO).reshape(6, 5)
        right = op.restrict[1] @ a[:-1].T
        left = op.restrict[0] @ a[1:].T
        assert np.max(np.abs(right - left)) < 1e-12
