"""Experiment drivers: convergence, conservation, spectra, CFL, Burgers.

Each driver sets up the corresponding benchmark problem, runs the
configured scheme and returns plain data (the CLI handles CSV).  All
problem functions are module-level so parameter sweeps can be dispatched
over a process pool.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .advection import PERIODIC, AdvectionScheme, Form, Inflow, SchemeConfig, total_mass
from .burgers import BurgersScheme
from .errors import ConfigurationError, DivergenceError
from .exact import ErrorNorm, advection_cosh_solution, burgers_exact, discrete_error, eoc
from .fluxes import FluxKind
from .mesh import SpeedMode, make_mesh, sample_function
from .operators import NodeFamily, build_operator
from .spectrum import assemble_affine, eigenvalues, spectral_abscissa
from .timestepping import integrate


# ---------------------------------------------------------------------------
# benchmark problem ingredients

def speed_cosh(x: float) -> float:
    return 1.0 + math.cosh(x)


def speed_cos_half(x: float) -> float:
    return math.cos(0.5 * math.pi * x)


def speed_two_sin(x: float) -> float:
    return 2.0 + math.sin(math.pi * x)


def speed_bump(x: float) -> float:
    return 1.0 + (1.0 - x * x) ** 5


def initial_sine(x: float) -> float:
    return math.sin(math.pi * x)


def initial_cosine_bump(x: float) -> float:
    return 1.0 + 0.5 * math.cos(math.pi * x)


def inflow_cosh(t: float) -> float:
    return advection_cosh_solution(t, -1.0)


def zero_boundary(t: float) -> float:
    return 0.0


def _u0_sine_prime(x: float) -> float:
    return math.pi * math.cos(math.pi * x)


# generic flux labels resolve to the kind matching the form
_FORM_FLUXES = {
    (Form.SPLIT_GENERAL, "central"): FluxKind.SPLIT_CENTRAL,
    (Form.SPLIT_GENERAL, "upwind"): FluxKind.SPLIT_UPWIND,
    (Form.SPLIT_SIMPLIFIED, "central"): FluxKind.SPLIT_CENTRAL,
    (Form.SPLIT_SIMPLIFIED, "upwind"): FluxKind.SPLIT_UPWIND,
    (Form.UNSPLIT, "central"): FluxKind.UNSPLIT_CENTRAL,
    (Form.UNSPLIT, "upwind"): FluxKind.UNSPLIT_UPWIND,
    (Form.NONCONS_GENERAL, "central"): FluxKind.MODIFIED_CENTRAL,
    (Form.NONCONS_GENERAL, "upwind"): FluxKind.MODIFIED_UPWIND,
    (Form.NONCONS_SIMPLIFIED, "central"): FluxKind.SPLIT_CENTRAL,
    (Form.NONCONS_SIMPLIFIED, "upwind"): FluxKind.SPLIT_UPWIND,
}


def resolve_flux(form: Form, label: str) -> FluxKind:
    """Turn 'central'/'upwind' into the form-matching kind; explicit kind
    names pass through."""
    key = (form, label)
    if key in _FORM_FLUXES:
        return _FORM_FLUXES[key]
    for kind in FluxKind:
        if kind.value == label:
            return kind
    raise ConfigurationError(f"unknown flux label {label!r}")


@dataclass(frozen=True)
class TableRow:
    p: int
    n_elements: int
    error: float
    order: float | None


def _attach_orders(ps, ns, errors) -> list[TableRow]:
    rows: list[TableRow] = []
    i = 0
    for p in ps:
        errs = errors[i : i + len(ns)]
        orders = [None] + eoc(errs, ns) if len(ns) >= 2 else [None] * len(ns)
        for n, e, o in zip(ns, errs, orders):
            rows.append(TableRow(p, n, e, o))
        i += len(ns)
    return rows


def _map_jobs(fn, argses, jobs: int):
    if jobs <= 1:
        return [fn(args) for args in argses]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, argses))


# ---------------------------------------------------------------------------
# convergence study: a = 1 + cosh(x) on (-1, 1), inflow from the exact solution

def _convergence_error(args) -> float:
    form, flux_label, family, speed_mode, p, n = args
    mesh = make_mesh(-1.0, 1.0, n)
    config = SchemeConfig(
        form, resolve_flux(form, flux_label), family, p, speed_mode, Inflow(inflow_cosh)
    )
    scheme = AdvectionScheme(config, mesh, speed_cosh)
    u0 = sample_function(mesh, scheme.op, initial_sine)
    dt = 1.0 / (100.0 * (2 * p + 1) * n)
    u_final = integrate(scheme.rhs, u0, 0.0, 0.5, dt)
    return discrete_error(
        u_final, lambda x: advection_cosh_solution(0.5, x), mesh, scheme.op
    )


def convergence_table(
    form: Form,
    flux_label: str,
    family: NodeFamily,
    speed_mode: SpeedMode,
    ps: list[int],
    ns: list[int],
    jobs: int = 1,
) -> list[TableRow]:
    argses = [(form, flux_label, family, speed_mode, p, n) for p in ps for n in ns]
    errors = _map_jobs(_convergence_error, argses, jobs)
    return _attach_orders(ps, ns, errors)


# ---------------------------------------------------------------------------
# conservation study: a = cos(pi x / 2) on (-1, 1), zero boundary data

def _conservation_error(args) -> float:
    form, flux_label, family, speed_mode, p, n = args
    mesh = make_mesh(-1.0, 1.0, n)
    config = SchemeConfig(
        form, resolve_flux(form, flux_label), family, p, speed_mode, Inflow(zero_boundary)
    )
    scheme = AdvectionScheme(config, mesh, speed_cos_half)
    u0 = sample_function(mesh, scheme.op, initial_cosine_bump)
    dt = 1.0 / (100.0 * (2 * p + 1) * n)
    mass0 = total_mass(u0, mesh, scheme.op)
    u_final = integrate(scheme.rhs, u0, 0.0, 0.5, dt)
    return abs(total_mass(u_final, mesh, scheme.op) - mass0)


def conservation_table(
    form: Form,
    flux_label: str,
    family: NodeFamily,
    speed_mode: SpeedMode,
    ps: list[int],
    ns: list[int],
    jobs: int = 1,
) -> list[TableRow]:
    argses = [(form, flux_label, family, speed_mode, p, n) for p in ps for n in ns]
    errors = _map_jobs(_conservation_error, argses, jobs)
    return _attach_orders(ps, ns, errors)


# ---------------------------------------------------------------------------
# eigenvalue portraits

EIGEN_SCENARIOS = {
    "nonperiodic-cosh": dict(n_elements=50, degree=7, speed=speed_cosh, periodic=False),
    "periodic-sin": dict(n_elements=50, degree=7, speed=speed_two_sin, periodic=True),
    "manzanero": dict(n_elements=200, degree=5, speed=speed_bump, periodic=True),
}


def default_speed_mode(scenario: str, form: Form) -> SpeedMode:
    """Speed discretisation used in the reference experiments: Lobatto
    interpolation for the split forms (except the polynomial-speed
    scenario, which collocates directly), direct collocation otherwise."""
    if scenario == "manzanero":
        return SpeedMode.DIRECT
    if form in (Form.SPLIT_GENERAL, Form.SPLIT_SIMPLIFIED):
        return SpeedMode.VIA_LOBATTO
    return SpeedMode.DIRECT


@dataclass
class SpectrumRun:
    eigenvalues: np.ndarray  # sorted by (Re, Im)
    abscissa: float
    frobenius: float


def spectrum_run(
    scenario: str,
    form: Form,
    flux_label: str,
    family: NodeFamily,
    speed_mode: SpeedMode | None = None,
    t_freeze: float = 0.0,
) -> SpectrumRun:
    if scenario not in EIGEN_SCENARIOS:
        raise ConfigurationError(f"unknown eigenvalue scenario {scenario!r}")
    setup = EIGEN_SCENARIOS[scenario]
    if speed_mode is None:
        speed_mode = default_speed_mode(scenario, form)
    boundary = PERIODIC if setup["periodic"] else Inflow(inflow_cosh)
    mesh = make_mesh(-1.0, 1.0, setup["n_elements"])
    config = SchemeConfig(
        form, resolve_flux(form, flux_label), family, setup["degree"], speed_mode, boundary
    )
    scheme = AdvectionScheme(config, mesh, setup["speed"])
    operator = assemble_affine(scheme, t_freeze)
    eigs = eigenvalues(operator.matrix)
    order = np.lexsort((eigs.imag, eigs.real))
    eigs = eigs[order]
    return SpectrumRun(
        eigenvalues=eigs,
        abscissa=spectral_abscissa(eigs),
        frobenius=float(np.linalg.norm(operator.matrix, "fro")),
    )


# ---------------------------------------------------------------------------
# experimental CFL limits

def _cfl_is_stable(form, flux_label, family, speed_mode, p, n, c) -> bool:
    mesh = make_mesh(-1.0, 1.0, n)
    config = SchemeConfig(
        form, resolve_flux(form, flux_label), family, p, speed_mode, Inflow(inflow_cosh)
    )
    scheme = AdvectionScheme(config, mesh, speed_cosh)
    u0 = sample_function(mesh, scheme.op, initial_sine)
    dt = c / ((2 * p + 1) * n)
    try:
        u_final = integrate(scheme.rhs, u0, 0.0, 0.5, dt)
    except DivergenceError:
        return False
    err = discrete_error(
        u_final, lambda x: advection_cosh_solution(0.5, x), mesh, scheme.op
    )
    return err < 0.1


def max_stable_cfl(args) -> float:
    """Largest stable c = dt (2p+1) N found by bisection in [0.5, 8].

    Stability means the final-time error stays below 0.1 and the state
    stays finite.  The scan is resolved to 0.05 and the result rounded
    to one decimal.
    """
    form, flux_label, family, speed_mode, p, n = args
    lo, hi = 0.5, 8.0
    if not _cfl_is_stable(form, flux_label, family, speed_mode, p, n, lo):
        return float("nan")
    if _cfl_is_stable(form, flux_label, family, speed_mode, p, n, hi):
        return hi
    while hi - lo > 0.05:
        mid = 0.5 * (lo + hi)
        if _cfl_is_stable(form, flux_label, family, speed_mode, p, n, mid):
            lo = mid
        else:
            hi = mid
    return round(lo, 1)


def cfl_table(
    form: Form,
    flux_label: str,
    family: NodeFamily,
    speed_mode: SpeedMode,
    ps: list[int],
    ns: list[int],
    jobs: int = 1,
) -> list[tuple[int, int, float]]:
    argses = [(form, flux_label, family, speed_mode, p, n) for p in ps for n in ns]
    values = _map_jobs(max_stable_cfl, argses, jobs)
    return [(args[4], args[5], c) for args, c in zip(argses, values)]


# ---------------------------------------------------------------------------
# Burgers convergence: periodic sine on [0, 2], T = 0.3, Godunov flux

@dataclass(frozen=True)
class BurgersRow:
    p: int
    n_elements: int
    error: float
    order: float | None
    mass_drift: float


def _burgers_case(args) -> tuple[float, float]:
    family, p, n = args
    mesh = make_mesh(0.0, 2.0, n)
    op = build_operator(family, p)
    scheme = BurgersScheme(mesh, op)
    u0 = sample_function(mesh, op, initial_sine)
    mass0 = total_mass(u0, mesh, op)
    dt = 2.0 / ((2 * p + 1) * n)
    u_final = integrate(scheme.rhs, u0, 0.0, 0.3, dt)
    err = discrete_error(
        u_final,
        lambda x: burgers_exact(0.3, x, initial_sine, _u0_sine_prime),
        mesh,
        op,
        ErrorNorm.SBP_MASS,
    )
    drift = abs(total_mass(u_final, mesh, op) - mass0) / max(abs(mass0), 1.0)
    return err, drift


def burgers_table(
    family: NodeFamily, ps: list[int], ns: list[int], jobs: int = 1
) -> list[BurgersRow]:
    argses = [(family, p, n) for p in ps for n in ns]
    results = _map_jobs(_burgers_case, argses, jobs)
    errors = [r[0] for r in results]
    rows = _attach_orders(ps, ns, errors)
    return [
        BurgersRow(r.p, r.n_elements, r.error, r.order, drift)
        for r, (_, drift) in zip(rows, results)
    ]
