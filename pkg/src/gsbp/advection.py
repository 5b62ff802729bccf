"""Semidiscrete right-hand sides for variable-coefficient advection.

Five forms are provided.  The split forms discretise the flux derivative
through the product rule and are energy stable in the plain L2 norm when
the discretised speed is continuous across interfaces with exact
boundary values.  The unsplit form discretises the flux directly and is
stable in the speed-weighted L2 norm for any diagonal-norm basis, at the
price of a small conservation defect on bases without boundary nodes.
The nonconservative forms treat a * du/dx and are stable in the
1/a-weighted norm.

Interface coupling is written exclusively through numerical fluxes; the
penalty vector of each element is lifted with M^{-1} R^T B.  Periodic
problems couple the last element back to the first; inflow problems
impose boundary data weakly through the form-matching upwind flux at the
left boundary and use the interior trace at the right (outflow).

Caveat for Gauss bases with directly collocated speed: the split-form
stability theory assumes exact boundary interpolation of the speed,
which direct collocation does not provide.  Experiments still run in
that mode; the energy statements simply do not apply.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConfigurationError, DomainError
from .fluxes import ADVECTIVE_KINDS, MODIFIED_KINDS, FluxKind, flux_values
from .mesh import Mesh, SpeedMode, discretize_speed
from .operators import NodeFamily, SbpOperator, build_operator


class Form(enum.Enum):
    SPLIT_SIMPLIFIED = "split-simplified"
    SPLIT_GENERAL = "split"
    UNSPLIT = "unsplit"
    NONCONS_GENERAL = "noncons"
    NONCONS_SIMPLIFIED = "noncons-simplified"


class EnergyWeight(enum.Enum):
    UNWEIGHTED = "unweighted"
    SPEED = "speed"
    INVERSE_SPEED = "inverse-speed"


class Periodic:
    """Periodic coupling; the domain has no exterior boundaries."""

    def __repr__(self) -> str:  # pragma: no cover
        return "Periodic()"


PERIODIC = Periodic()


@dataclass(frozen=True)
class Inflow:
    """Left-boundary data u(t, x_L) = g_left(t); outflow on the right."""

    g_left: Callable[[float], float]


@dataclass(frozen=True)
class SchemeConfig:
    form: Form
    interior_flux: FluxKind
    family: NodeFamily
    degree: int
    speed_mode: SpeedMode = SpeedMode.DIRECT
    boundary: Periodic | Inflow = PERIODIC


_SPLIT_FORMS = (Form.SPLIT_SIMPLIFIED, Form.SPLIT_GENERAL)


def _validate(config: SchemeConfig, speeds: np.ndarray) -> None:
    if config.form is Form.NONCONS_GENERAL:
        if config.interior_flux not in MODIFIED_KINDS:
            raise ConfigurationError(
                f"{config.form.value} needs a modified flux, got {config.interior_flux.value}"
            )
    else:
        if config.interior_flux not in ADVECTIVE_KINDS:
            raise ConfigurationError(
                f"{config.form.value} cannot use flux {config.interior_flux.value}"
            )
    if config.form in (Form.SPLIT_SIMPLIFIED, Form.NONCONS_SIMPLIFIED):
        if config.family is not NodeFamily.LOBATTO:
            raise ConfigurationError(
                f"{config.form.value} requires boundary nodes (Lobatto basis)"
            )
    if np.min(speeds) < 0.0:
        raise ConfigurationError("advection speed must be nonnegative at the nodes")


class AdvectionScheme:
    """Assembled semidiscretisation: operators, speed data and RHS.

    The object is immutable in practice; rhs() does not mutate state, so
    evaluations on distinct states may run concurrently.
    """

    def __init__(
        self,
        config: SchemeConfig,
        mesh: Mesh,
        a_fn: Callable[[float], float],
        op: SbpOperator | None = None,
    ):
        self.config = config
        self.mesh = mesh
        self.a_fn = a_fn
        self.op = op if op is not None else build_operator(config.family, config.degree)
        self.speeds = discretize_speed(mesh, self.op, a_fn, config.speed_mode)
        _validate(config, self.speeds)
        self._speed_data = _SpeedData(self.op, mesh, self.speeds)
        boundaries = mesh.boundaries
        self.a_at_interfaces = np.array([a_fn(x) for x in boundaries])
        self.a_left = float(a_fn(mesh.x_left))

    @property
    def n_dofs(self) -> int:
        return self.mesh.n_elements * self.op.size

    def rhs(self, u: np.ndarray, t: float) -> np.ndarray:
        return _advection_rhs(u, self._speed_data, self, t)

    def speed_data_for(self, a: np.ndarray) -> "_SpeedData":
        return _SpeedData(self.op, self.mesh, np.asarray(a, dtype=float))


class _SpeedData:
    """Per-speed precomputations shared by all RHS evaluations."""

    def __init__(self, op: SbpOperator, mesh: Mesh, speeds: np.ndarray):
        m = op.size
        self.values = speeds.reshape(mesh.n_elements, m)
        self.trace_left = self.values @ op.restrict[0]
        self.trace_right = self.values @ op.restrict[1]
        self.d_speed = self.values @ op.diff.T  # reference-element D a


def _advection_rhs(u: np.ndarray, sd: _SpeedData, scheme: AdvectionScheme, t: float):
    config = scheme.config
    op, mesh = scheme.op, scheme.mesh
    n, m = mesh.n_elements, op.size
    U = np.asarray(u, dtype=float).reshape(n, m)
    A = sd.values
    AU = A * U

    r0, r1 = op.restrict[0], op.restrict[1]
    uL, uR = U @ r0, U @ r1
    auL, auR = AU @ r0, AU @ r1
    aL, aR = sd.trace_left, sd.trace_right

    kind = config.interior_flux
    if isinstance(config.boundary, Periodic):
        um, up = np.roll(uR, 1), uL
        am, ap = np.roll(aR, 1), aL
        aum, aup = np.roll(auR, 1), auL
        ab = scheme.a_at_interfaces[:-1]
        f = flux_values(kind, um, up, am, ap, aum, aup, ab)
        f_left, f_right = f, np.roll(f, -1)
    else:
        g = float(config.boundary.g_left(t))
        um, up = uR[:-1], uL[1:]
        am, ap = aR[:-1], aL[1:]
        aum, aup = auR[:-1], auL[1:]
        ab = scheme.a_at_interfaces[1:-1]
        f = np.empty(n + 1)
        f[1:-1] = flux_values(kind, um, up, am, ap, aum, aup, ab)
        if config.form is Form.NONCONS_GENERAL:
            f[0] = g
            f[-1] = uR[-1]
        elif config.form is Form.UNSPLIT:
            f[0] = scheme.a_left * g
            f[-1] = auR[-1]
        else:
            f[0] = scheme.a_left * g
            f[-1] = aR[-1] * uR[-1]
        f_left, f_right = f[:-1], f[1:]

    form = config.form
    dU = U @ op.diff.T
    if form in _SPLIT_FORMS:
        volume = -0.5 * (AU @ op.diff.T) - 0.5 * A * dU - 0.5 * U * sd.d_speed
        sat_left = f_left - 0.5 * auL - 0.5 * aL * uL
        sat_right = f_right - 0.5 * auR - 0.5 * aR * uR
    elif form is Form.UNSPLIT:
        volume = -(AU @ op.diff.T)
        sat_left = f_left - auL
        sat_right = f_right - auR
    elif form is Form.NONCONS_GENERAL:
        volume = -A * dU
        sat_left = f_left - uL
        sat_right = f_right - uR
    elif form is Form.NONCONS_SIMPLIFIED:
        volume = -A * dU
        sat_left = f_left - auL
        sat_right = f_right - auR
    else:  # pragma: no cover
        raise ConfigurationError(f"unknown form {form}")

    lift_left = r0 / op.weights
    lift_right = r1 / op.weights
    sat = sat_right[:, None] * lift_right[None, :] - sat_left[:, None] * lift_left[None, :]
    if form is Form.NONCONS_GENERAL:
        sat = A * sat
    scale = 2.0 / mesh.element_width
    return (scale * (volume - sat)).ravel()


def _named_rhs(expected: Form):
    def rhs(u, a, scheme: AdvectionScheme, t: float = 0.0):
        if scheme.config.form is not expected and not (
            expected is Form.SPLIT_GENERAL and scheme.config.form is Form.SPLIT_SIMPLIFIED
        ):
            raise ConfigurationError(
                f"scheme is configured as {scheme.config.form.value}, not {expected.value}"
            )
        return _advection_rhs(u, scheme.speed_data_for(a), scheme, t)

    return rhs


rhs_split_general = _named_rhs(Form.SPLIT_GENERAL)
rhs_unsplit = _named_rhs(Form.UNSPLIT)
rhs_noncons_general = _named_rhs(Form.NONCONS_GENERAL)
rhs_noncons_simplified = _named_rhs(Form.NONCONS_SIMPLIFIED)


def total_mass(u: np.ndarray, mesh: Mesh, op: SbpOperator) -> float:
    """Quadrature of the state over the whole domain."""
    U = np.asarray(u, dtype=float).reshape(mesh.n_elements, op.size)
    return float(mesh.jacobian * np.sum(U @ op.weights))


def energy(
    u: np.ndarray,
    weight: EnergyWeight,
    a: np.ndarray | None,
    mesh: Mesh,
    op: SbpOperator,
) -> float:
    """Discrete squared norm u^T W M_phys u with W in {I, diag(a), diag(1/a)}."""
    U = np.asarray(u, dtype=float).reshape(mesh.n_elements, op.size)
    if weight is EnergyWeight.UNWEIGHTED:
        factor = 1.0
    else:
        if a is None:
            raise ConfigurationError("weighted energy needs the nodal speeds")
        A = np.asarray(a, dtype=float).reshape(U.shape)
        if weight is EnergyWeight.SPEED:
            factor = A
        else:
            if np.min(A) <= 0.0:
                raise DomainError("1/a-weighted norm needs strictly positive speed")
            factor = 1.0 / A
    return float(mesh.jacobian * np.sum((factor * U * U) @ op.weights))


def theta_operator_check(op: SbpOperator, a: np.ndarray) -> float:
    """Defect of the skew-decomposition identity of the speed-generalised
    derivative operator.

    Builds Theta = (Q A + A Q)/2 corrected by boundary interpolation
    terms and returns the max-norm of Theta + Theta^T minus its exact
    boundary expression.  Zero (to round-off) for every SBP basis.
    """
    a = np.asarray(a, dtype=float)
    Q = op.weights[:, None] * op.diff
    A = np.diag(a)
    tl = op.restrict[0][:, None]
    tr = op.restrict[1][:, None]
    a_left = float(op.restrict[0] @ a)
    a_right = float(op.restrict[1] @ a)
    ll, rr = tl @ tl.T, tr @ tr.T
    theta = 0.5 * (Q @ A + A @ Q) - 0.5 * a_left * ll + 0.5 * ll @ A
    theta += 0.5 * a_right * rr - 0.5 * rr @ A
    target = a_right * rr - a_left * ll
    return float(np.max(np.abs(theta + theta.T - target)))
