"""Burgers semidiscretisation: conservation, entropy rate, consistency."""

import math

import numpy as np
import pytest

from gsbp.advection import total_mass
from gsbp.burgers import BurgersScheme, interface_entropy_rate, rhs_burgers
from gsbp.fluxes import godunov_burgers
from gsbp.mesh import make_mesh, sample_function
from gsbp.operators import NodeFamily, build_operator
from gsbp.timestepping import integrate

FAMILIES = [NodeFamily.LOBATTO, NodeFamily.GAUSS]


@pytest.mark.parametrize("family", FAMILIES)
def test_constant_state_is_steady(family):
    mesh = make_mesh(0, 2, 5)
    op = build_operator(family, 4)
    u = np.full(25, 1.3)
    assert np.max(np.abs(rhs_burgers(u, mesh, op))) < 1e-13


@pytest.mark.parametrize("family", FAMILIES)
def test_mass_rate_telescopes(family):
    mesh = make_mesh(0, 2, 6)
    op = build_operator(family, 5)
    rng = np.random.default_rng(21)
    r0, r1 = op.restrict[0], op.restrict[1]
    for _ in range(10):
        u = rng.standard_normal(36)
        du = rhs_burgers(u, mesh, op)
        U = u.reshape(6, 6)
        f = godunov_burgers(U @ r1, np.roll(U @ r0, -1))
        # per element, d/dt of the mass equals the flux difference; the
        # periodic sum of both sides is zero
        rate = mesh.jacobian * float(np.sum(du.reshape(6, 6) @ op.weights))
        assert abs(rate + np.sum(f - np.roll(f, 1))) < 1e-11
        assert abs(rate) < 1e-11


@pytest.mark.parametrize("family", FAMILIES)
def test_semidiscrete_entropy_rate(family):
    """u^T M du/dt equals the summed interface contributions and is
    nonpositive for the Godunov flux."""
    mesh = make_mesh(0, 2, 6)
    op = build_operator(family, 4)
    rng = np.random.default_rng(22)
    for _ in range(10):
        u = rng.standard_normal(30)
        du = rhs_burgers(u, mesh, op)
        lhs = mesh.jacobian * float(np.sum((u * du).reshape(6, 5) @ op.weights))
        rate = interface_entropy_rate(u, mesh, op)
        assert rate <= 1e-12
        assert abs(lhs - rate) < 1e-10 * max(1.0, abs(rate))


@pytest.mark.parametrize("family", FAMILIES)
def test_mass_conserved_over_integration(family):
    mesh = make_mesh(0, 2, 40)
    op = build_operator(family, 3)
    scheme = BurgersScheme(mesh, op)
    u0 = sample_function(mesh, op, lambda x: math.sin(math.pi * x))
    mass0 = total_mass(u0, mesh, op)
    u = integrate(scheme.rhs, u0, 0.0, 0.3, 2.0 / (7 * 40))
    assert abs(total_mass(u, mesh, op) - mass0) <= 1e-12 * max(1.0, abs(mass0))


def test_energy_never_increases_along_trajectory():
    mesh = make_mesh(0, 2, 30)
    op = build_operator(NodeFamily.GAUSS, 3)
    scheme = BurgersScheme(mesh, op)
    u0 = sample_function(mesh, op, lambda x: math.sin(math.pi * x))
    energies = []
    integrate(
        scheme.rhs, u0, 0.0, 0.3, 2.0 / (7 * 30),
        observer=lambda t, u: energies.append(
            mesh.jacobian * float(np.sum((u * u).reshape(30, 4) @ op.weights))
        ),
    )
    diffs = np.diff(energies)
    assert np.all(diffs <= 1e-12)
