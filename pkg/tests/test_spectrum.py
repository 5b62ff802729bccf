"""Affine assembly and the dense nonsymmetric eigenvalue solver."""

import math

import numpy as np
import pytest

from gsbp.advection import PERIODIC, AdvectionScheme, Form, Inflow, SchemeConfig
from gsbp.burgers import BurgersScheme
from gsbp.errors import AnalysisError
from gsbp.fluxes import FluxKind
from gsbp.mesh import SpeedMode, make_mesh
from gsbp.operators import NodeFamily, build_operator
from gsbp.spectrum import (
    assemble_affine,
    eigenvalue_residual,
    eigenvalues,
    spectral_abscissa,
)


def paired_distance(eigs, ref):
    """Max distance after sorting both spectra lexicographically."""
    a = np.sort_complex(np.asarray(eigs))
    b = np.sort_complex(np.asarray(ref))
    return float(np.max(np.abs(a - b)))


class TestEigenvalues:
    def test_diagonal(self):
        eigs = eigenvalues(np.diag([1.0, 2.0, 3.0]))
        assert paired_distance(eigs, [1.0, 2.0, 3.0]) < 1e-14

    def test_rotation_generator(self):
        eigs = eigenvalues(np.array([[0.0, 1.0], [-1.0, 0.0]]))
        assert paired_distance(eigs, [1j, -1j]) < 1e-14

    @pytest.mark.parametrize("n", [3, 10, 40, 120])
    def test_matches_lapack_oracle(self, n):
        rng = np.random.default_rng(n)
        a = rng.standard_normal((n, n))
        assert paired_distance(eigenvalues(a), np.linalg.eigvals(a)) < 1e-9

    def test_companion_matrix_known_roots(self):
        rng = np.random.default_rng(50)
        real = rng.uniform(-2, 2, 20)
        cplx = rng.uniform(-1, 1, 15) + 1j * rng.uniform(0.1, 1.0, 15)
        roots = np.concatenate([real, cplx, np.conj(cplx)])
        coeffs = np.real(np.poly(roots))
        n = len(roots)
        companion = np.zeros((n, n))
        companion[0, :] = -coeffs[1:] / coeffs[0]
        companion[1:, :-1] = np.eye(n - 1)
        assert paired_distance(eigenvalues(companion), roots) < 1e-6

    def test_transpose_has_same_spectrum(self):
        rng = np.random.default_rng(51)
        a = rng.standard_normal((30, 30))
        assert paired_distance(eigenvalues(a), eigenvalues(a.T)) < 1e-6

    def test_conjugate_pairing_is_exact(self):
        rng = np.random.default_rng(52)
        a = rng.standard_normal((40, 40))
        eigs = eigenvalues(a)
        complex_part = np.sort_complex(eigs[eigs.imag > 0])
        conj_part = np.sort_complex(np.conj(eigs[eigs.imag < 0]))
        assert len(complex_part) == len(conj_part)
        assert np.array_equal(complex_part, conj_part)

    def test_residual_contract(self):
        rng = np.random.default_rng(53)
        a = rng.standard_normal((60, 60))
        eigs = eigenvalues(a)
        bound = 1e-8 * np.linalg.norm(a, "fro")
        for lam in eigs[::9]:
            assert eigenvalue_residual(a, lam) <= bound

    def test_defective_block(self):
        jordan = np.eye(7) * 2.0 + np.diag(np.ones(6), 1)
        eigs = eigenvalues(jordan)
        assert np.max(np.abs(eigs - 2.0)) < 1e-2  # defective: O(eps^(1/7))
        assert abs(np.prod(eigs).real - 2.0**7) < 1e-8 * 2.0**7

    def test_rejects_bad_input(self):
        with pytest.raises(AnalysisError):
            eigenvalues(np.ones((2, 3)))
        with pytest.raises(AnalysisError):
            eigenvalues(np.array([[np.nan, 0.0], [0.0, 1.0]]))

    def test_graded_matrix_needs_balancing(self):
        """Badly scaled entries: balancing keeps the residual small."""
        rng = np.random.default_rng(54)
        d = np.diag(10.0 ** np.arange(0, 12, 2.0))
        a = d @ rng.standard_normal((6, 6)) @ np.linalg.inv(d)
        assert paired_distance(eigenvalues(a), np.linalg.eigvals(a)) < 1e-6


class TestSpectralAbscissa:
    def test_imaginary_pair(self):
        assert spectral_abscissa(np.array([1j, -1j])) == 0.0

    def test_real_values(self):
        assert spectral_abscissa(np.array([1.0 + 0j, -2.0 + 0j])) == 1.0

    def test_empty_rejected(self):
        with pytest.raises(AnalysisError):
            spectral_abscissa(np.array([]))


class TestAssembleAffine:
    def test_periodic_offset_is_zero(self):
        mesh = make_mesh(-1, 1, 3)
        config = SchemeConfig(
            Form.SPLIT_GENERAL, FluxKind.SPLIT_CENTRAL, NodeFamily.GAUSS, 3,
            SpeedMode.VIA_LOBATTO, PERIODIC,
        )
        scheme = AdvectionScheme(config, mesh, lambda x: 2 + math.sin(math.pi * x))
        affine = assemble_affine(scheme)
        assert np.max(np.abs(affine.offset)) < 1e-13

    def test_hand_assembled_two_by_two(self):
        """Single Lobatto p=1 element, a = 1, periodic upwind: the
        operator reduces to [[-1/2, 1/2], [1/2, -1/2]]."""
        mesh = make_mesh(-1, 1, 1)
        config = SchemeConfig(
            Form.SPLIT_GENERAL, FluxKind.SPLIT_UPWIND, NodeFamily.LOBATTO, 1,
            SpeedMode.DIRECT, PERIODIC,
        )
        scheme = AdvectionScheme(config, mesh, lambda x: 1.0)
        affine = assemble_affine(scheme)
        expect = np.array([[-0.5, 0.5], [0.5, -0.5]])
        assert np.max(np.abs(affine.matrix - expect)) < 1e-12

    def test_inflow_with_zero_data_has_zero_offset(self):
        mesh = make_mesh(-1, 1, 3)
        config = SchemeConfig(
            Form.UNSPLIT, FluxKind.UNSPLIT_UPWIND, NodeFamily.GAUSS, 2,
            SpeedMode.DIRECT, Inflow(lambda t: 0.0),
        )
        scheme = AdvectionScheme(config, mesh, lambda x: 1 + math.cosh(x))
        affine = assemble_affine(scheme, t_freeze=0.0)
        assert np.max(np.abs(affine.offset)) == 0.0

    def test_inflow_offset_matches_boundary_data(self):
        mesh = make_mesh(-1, 1, 3)
        config = SchemeConfig(
            Form.SPLIT_GENERAL, FluxKind.SPLIT_UPWIND, NodeFamily.LOBATTO, 2,
            SpeedMode.DIRECT, Inflow(lambda t: 1.0 + t),
        )
        scheme = AdvectionScheme(config, mesh, lambda x: 2.0)
        affine = assemble_affine(scheme, t_freeze=0.5)
        rng = np.random.default_rng(55)
        u = rng.standard_normal(scheme.n_dofs)
        assert np.max(np.abs(scheme.rhs(u, 0.5) - (affine.matrix @ u + affine.offset))) < 1e-11

    def test_linearity_probe_rejects_burgers(self):
        mesh = make_mesh(0, 2, 4)
        scheme = BurgersScheme(mesh, build_operator(NodeFamily.GAUSS, 3))
        with pytest.raises(AnalysisError):
            assemble_affine(scheme)

    def test_dimension_guard(self):
        class Fake:
            n_dofs = 20_000

            def rhs(self, u, t):  # pragma: no cover
                return u

        with pytest.raises(AnalysisError):
            assemble_affine(Fake())


class TestAdvectionSpectra:
    def test_transpose_match_on_scheme_operator(self):
        mesh = make_mesh(-1, 1, 4)
        config = SchemeConfig(
            Form.UNSPLIT, FluxKind.UNSPLIT_UPWIND, NodeFamily.GAUSS, 3,
            SpeedMode.DIRECT, PERIODIC,
        )
        scheme = AdvectionScheme(config, mesh, lambda x: 2 + math.sin(math.pi * x))
        matrix = assemble_affine(scheme).matrix
        assert paired_distance(eigenvalues(matrix), eigenvalues(matrix.T)) < 1e-6

    def test_split_upwind_abscissa_energy_bound(self):
        """Periodic split upwind with continuous speed: the abscissa is
        bounded by half the Lipschitz constant of the speed."""
        mesh = make_mesh(-1, 1, 8)
        config = SchemeConfig(
            Form.SPLIT_GENERAL, FluxKind.SPLIT_UPWIND, NodeFamily.GAUSS, 4,
            SpeedMode.VIA_LOBATTO, PERIODIC,
        )
        scheme = AdvectionScheme(config, mesh, lambda x: 2 + math.sin(math.pi * x))
        matrix = assemble_affine(scheme).matrix
        eigs = eigenvalues(matrix)
        bound = math.pi / 2.0 + 1e-6 * np.linalg.norm(matrix, "fro")
        assert spectral_abscissa(eigs) <= bound
