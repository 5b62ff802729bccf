"""Closed-form reference solutions, error norms and convergence orders."""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError
from .mesh import Mesh
from .operators import (
    NodeFamily,
    SbpOperator,
    interpolation_matrix,
    nodes_weights,
)


def advection_cosh_solution(t: float, x: float) -> float:
    """Solution of the advection problem with speed 1 + cosh(x) and
    initial data sin(pi x), obtained by tracing characteristics back.

    The backward foot of the characteristic is 2 artanh(tanh(x/2) - t);
    the amplitude factor accounts for the compression of characteristic
    tubes under the conservative form.
    """
    y = -t + math.tanh(0.5 * x)
    if not -1.0 < y < 1.0:
        raise DomainError(f"characteristic foot undefined at (t, x) = ({t}, {x})")
    xi0 = math.log((1.0 + y) / (1.0 - y))  # = 2 artanh(y)
    ch, sh = math.cosh(0.5 * x), math.sinh(0.5 * x)
    denom = 1.0 + 2.0 * t * sh * ch - t * t * ch * ch
    if denom <= 1e-12:
        raise DomainError(f"degenerate characteristic map at (t, x) = ({t}, {x})")
    return math.sin(math.pi * xi0) / denom


def burgers_exact(
    t: float,
    x: float,
    u0: Callable[[float], float],
    u0_prime: Callable[[float], float] | None = None,
) -> float:
    """Pre-shock Burgers solution from the implicit relation
    u = u0(x - t u), solved by Newton with a bisection fallback."""
    if t == 0.0:
        return float(u0(x))

    def g(u: float) -> float:
        return u - u0(x - t * u)

    if u0_prime is not None:
        dg = lambda u: 1.0 + t * u0_prime(x - t * u)
    else:
        eps = 1e-7
        dg = lambda u: 1.0 + t * (u0(x - t * u + eps) - u0(x - t * u - eps)) / (2 * eps)

    u = float(u0(x))
    for _ in range(100):
        gu = g(u)
        if abs(gu) < 1e-13:
            return u
        d = dg(u)
        if d == 0.0:
            break
        step = gu / d
        u = u - step
        if abs(step) < 1e-15 and abs(g(u)) < 1e-13:
            return u
    # Newton stalled: bracket a sign change by coarse scanning
    grid = np.linspace(-1.5, 1.5, 301)
    vals = np.array([g(v) for v in grid])
    sign_change = np.nonzero(vals[:-1] * vals[1:] <= 0.0)[0]
    if len(sign_change) == 0:
        raise DomainError(f"no root bracketed at (t, x) = ({t}, {x}); post-shock query?")
    lo, hi = grid[sign_change[0]], grid[sign_change[0] + 1]
    glo = g(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if abs(gm) < 1e-13:
            return mid
        if glo * gm <= 0.0:
            hi = mid
        else:
            lo, glo = mid, gm
    return 0.5 * (lo + hi)


class ErrorNorm:
    GAUSS_QUADRATURE = "gauss-quadrature"
    SBP_MASS = "sbp-mass"


def discrete_error(
    numerical: np.ndarray,
    exact: Callable[[float], float],
    mesh: Mesh,
    op: SbpOperator,
    norm: str = ErrorNorm.GAUSS_QUADRATURE,
) -> float:
    """L2-type distance between the nodal solution and a reference.

    Both norms act on the nodal error field (reference sampled at the
    basis nodes).  GAUSS_QUADRATURE integrates the degree-p error
    polynomial exactly by re-interpolating it to p+1 mapped Gauss points
    per element (a fresh rule, taken even when the basis itself is
    Gauss).  SBP_MASS measures the nodal error in the physical mass
    matrix of the basis; the two coincide for Gauss bases.
    """
    U = np.asarray(numerical, dtype=float).reshape(mesh.n_elements, op.size)
    exact_v = np.vectorize(exact, otypes=[float])
    err = U - exact_v(mesh.node_coordinates(op))
    if norm == ErrorNorm.SBP_MASS:
        return float(np.sqrt(mesh.jacobian * np.sum((err * err) @ op.weights)))
    if norm != ErrorNorm.GAUSS_QUADRATURE:
        raise ValueError(f"unknown error norm {norm!r}")
    q_nodes, q_weights = nodes_weights(NodeFamily.GAUSS, op.degree)
    evaluate = interpolation_matrix(op.nodes, q_nodes)
    err_q = err @ evaluate.T
    return float(np.sqrt(mesh.jacobian * np.sum((err_q * err_q) @ q_weights)))


def eoc(errors: Sequence[float], resolutions: Sequence[int]) -> list[float | None]:
    """Experimental convergence orders of consecutive resolution pairs.

    Entry k compares (errors[k], errors[k+1]); the list is one shorter
    than the input.  Non-positive errors yield None markers.
    """
    if len(errors) != len(resolutions) or len(errors) < 2:
        raise ValueError("need matching lists with at least two entries")
    out: list[float | None] = []
    for e1, e2, n1, n2 in zip(errors[:-1], errors[1:], resolutions[:-1], resolutions[1:]):
        if e1 <= 0.0 or e2 <= 0.0:
            out.append(None)
        else:
            out.append(-math.log(e1 / e2) / math.log(n1 / n2))
    return out
