"""Nodal summation-by-parts operators on the reference element [-1, 1].

An operator set consists of quadrature nodes, the diagonal mass matrix
``M`` (stored as a weight vector), the polynomial derivative matrix ``D``,
the boundary restriction matrix ``R`` (two rows, interpolating to -1 and
+1), and the boundary sign matrix ``B = diag(-1, 1)``.  Together they
satisfy the summation-by-parts relation

    M D + D^T M = R^T B R,

the discrete analogue of integration by parts.  Both Legendre-Gauss-Lobatto
bases (boundary nodes included) and Legendre-Gauss bases (boundary nodes
excluded, "generalised" operators) are supported.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import ConstructionError

_NEWTON_TOL = 1e-15
_NEWTON_MAXIT = 100


class NodeFamily(enum.Enum):
    """Quadrature node family of a nodal basis."""

    LOBATTO = "lobatto"
    GAUSS = "gauss"


@dataclass(frozen=True)
class SbpOperator:
    """Operator set {nodes, M, D, R, B} of a degree-p nodal basis.

    Immutable after construction; safe to share between workers.
    """

    family: NodeFamily
    degree: int
    nodes: np.ndarray
    weights: np.ndarray  # diagonal of M
    diff: np.ndarray  # derivative matrix D
    restrict: np.ndarray  # 2 x (p+1) matrix R
    boundary: np.ndarray = field(default_factory=lambda: np.diag([-1.0, 1.0]))

    @property
    def size(self) -> int:
        return self.degree + 1

    @property
    def mass(self) -> np.ndarray:
        """Dense mass matrix (diagonal)."""
        return np.diag(self.weights)

    def sbp_residual(self) -> float:
        """Max-norm defect of M D + D^T M - R^T B R."""
        md = self.weights[:, None] * self.diff
        rbr = self.restrict.T @ self.boundary @ self.restrict
        return float(np.max(np.abs(md + md.T - rbr)))


def legendre_eval(n: int, x):
    """Legendre polynomial P_n and its derivative P_n' at x.

    Three-term recurrence with the derivative propagated alongside, so
    no division by (1 - x^2) is needed.  Accepts scalars or arrays.
    """
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    p, d = np.ones_like(xs), np.zeros_like(xs)
    if n >= 1:
        p_prev, d_prev = p, d
        p, d = xs.copy(), np.ones_like(xs)
        for k in range(1, n):
            p_next = ((2 * k + 1) * xs * p - k * p_prev) / (k + 1)
            d_next = ((2 * k + 1) * (p + xs * d) - k * d_prev) / (k + 1)
            p_prev, p = p, p_next
            d_prev, d = d, d_next
    if scalar:
        return float(p[0]), float(d[0])
    return p, d


def _legendre_second_derivative(n: int, x: np.ndarray) -> np.ndarray:
    # (1 - x^2) P'' = 2 x P' - n (n+1) P, valid away from +-1
    p, d = legendre_eval(n, x)
    return (2.0 * x * d - n * (n + 1) * p) / (1.0 - x * x)


def nodes_weights(family: NodeFamily, p: int):
    """Quadrature nodes and weights of the degree-p basis (p+1 points).

    Gauss: roots of P_{p+1}, Newton-refined from Chebyshev guesses,
    weights 2 / ((1 - x^2) P'_{p+1}(x)^2).  Lobatto: +-1 plus the roots
    of P'_p, weights 2 / (p (p+1) P_p(x)^2).  Nodes are antisymmetrised
    so mirrored pairs are exact negations.
    """
    if p < 1:
        raise ConstructionError(f"degree must be >= 1, got {p}")
    n = p + 1
    if family is NodeFamily.GAUSS:
        k = np.arange(n)
        x = -np.cos(np.pi * (2 * k + 1) / (2 * n))
        for _ in range(_NEWTON_MAXIT):
            val, der = legendre_eval(n, x)
            dx = val / der
            x = x - dx
            if np.max(np.abs(dx)) < _NEWTON_TOL:
                break
        else:
            raise ConstructionError("Gauss node iteration did not converge")
        x = 0.5 * (x - x[::-1])
        _, der = legendre_eval(n, x)
        w = 2.0 / ((1.0 - x * x) * der * der)
    else:
        x = np.empty(n)
        x[0], x[-1] = -1.0, 1.0
        if p >= 2:
            # interior nodes: roots of P'_p from Chebyshev-extremum guesses
            k = np.arange(1, p)
            xi = -np.cos(np.pi * k / p)
            for _ in range(_NEWTON_MAXIT):
                _, der = legendre_eval(p, xi)
                dd = _legendre_second_derivative(p, xi)
                dx = der / dd
                xi = xi - dx
                if np.max(np.abs(dx)) < _NEWTON_TOL:
                    break
            else:
                raise ConstructionError("Lobatto node iteration did not converge")
            x[1:-1] = 0.5 * (xi - xi[::-1])
        pvals, _ = legendre_eval(p, x)
        w = 2.0 / (p * (p + 1) * pvals * pvals)
    order = np.argsort(x)
    return x[order], w[order]


def _barycentric_weights(nodes: np.ndarray) -> np.ndarray:
    n = len(nodes)
    diff = nodes[:, None] - nodes[None, :]
    off = np.abs(diff[~np.eye(n, dtype=bool)])
    if n > 1 and np.min(off) == 0.0:
        raise ConstructionError("duplicate interpolation nodes")
    np.fill_diagonal(diff, 1.0)
    return 1.0 / np.prod(diff, axis=1)


def derivative_matrix(nodes: np.ndarray) -> np.ndarray:
    """Differentiation matrix D[i, j] = l_j'(x_i) via barycentric weights.

    The diagonal is the negative off-diagonal row sum, so rows annihilate
    constants exactly.
    """
    nodes = np.asarray(nodes, dtype=float)
    w = _barycentric_weights(nodes)
    n = len(nodes)
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                d[i, j] = (w[j] / w[i]) / (nodes[i] - nodes[j])
        d[i, i] = -np.sum(d[i, :])
    return d


def interpolation_row(nodes: np.ndarray, y: float) -> np.ndarray:
    """Row vector evaluating the nodal interpolant at the point y."""
    nodes = np.asarray(nodes, dtype=float)
    w = _barycentric_weights(nodes)
    dist = y - nodes
    hit = np.abs(dist) < 1e-14
    row = np.zeros(len(nodes))
    if np.any(hit):
        row[np.argmax(hit)] = 1.0
        return row
    terms = w / dist
    return terms / np.sum(terms)


def restriction_matrix(nodes: np.ndarray) -> np.ndarray:
    """2 x (p+1) restriction: row 0 interpolates to -1, row 1 to +1."""
    return np.vstack([interpolation_row(nodes, -1.0), interpolation_row(nodes, 1.0)])


def interpolation_matrix(from_nodes: np.ndarray, to_points: np.ndarray) -> np.ndarray:
    """Matrix mapping nodal values on from_nodes to values at to_points."""
    return np.vstack(
        [interpolation_row(from_nodes, float(y)) for y in np.atleast_1d(to_points)]
    )


def build_operator(family: NodeFamily, p: int) -> SbpOperator:
    """Assemble the full operator set of the requested family and degree."""
    nodes, weights = nodes_weights(family, p)
    return SbpOperator(
        family=family,
        degree=p,
        nodes=nodes,
        weights=weights,
        diff=derivative_matrix(nodes),
        restrict=restriction_matrix(nodes),
    )


def m_adjoint(mass, coefficients: np.ndarray) -> np.ndarray:
    """Adjoint M^{-1} C^T M of the multiplication operator C = diag(c).

    ``mass`` is either an SbpOperator (diagonal M given by its weights),
    a 1-D weight vector, or a dense symmetric positive definite matrix
    (test shim for non-diagonal norms).  For diagonal M the result is
    diag(c) itself.
    """
    c = np.asarray(coefficients, dtype=float)
    if isinstance(mass, SbpOperator):
        mass = mass.weights
    mass = np.asarray(mass, dtype=float)
    if c.ndim != 1 or mass.shape[0] != c.shape[0]:
        raise ConstructionError("coefficient length does not match operator size")
    if mass.ndim == 1:
        return np.diag(c)
    return np.linalg.solve(mass, np.diag(c).T @ mass)
