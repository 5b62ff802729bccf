"""Uniform element partitions and nodal sampling of functions.

A mesh splits (x_L, x_R) into N equal elements.  Discrete fields are
stored flat, element-major, with p+1 nodal values per element.  The
advection speed can either be collocated directly on the basis nodes or
evaluated at Lobatto points first and re-interpolated; the latter makes
the speed exact at element boundaries and continuous across interfaces,
which the stability theory of the split forms requires.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConfigurationError
from .operators import NodeFamily, SbpOperator, interpolation_matrix, nodes_weights


class SpeedMode(enum.Enum):
    """How the variable coefficient is turned into nodal data."""

    DIRECT = "direct"
    VIA_LOBATTO = "lobatto"


@dataclass(frozen=True)
class Mesh:
    """Uniform partition of (x_left, x_right) into n_elements pieces."""

    x_left: float
    x_right: float
    n_elements: int

    @property
    def element_width(self) -> float:
        return (self.x_right - self.x_left) / self.n_elements

    @property
    def jacobian(self) -> float:
        """d x / d xi of the reference-to-physical map."""
        return 0.5 * self.element_width

    @property
    def boundaries(self) -> np.ndarray:
        """The n_elements + 1 element boundary positions."""
        return self.x_left + self.element_width * np.arange(self.n_elements + 1)

    def node_coordinates(self, op: SbpOperator) -> np.ndarray:
        """Physical node positions, shape (n_elements, p+1)."""
        left = self.boundaries[:-1]
        return left[:, None] + (op.nodes[None, :] + 1.0) * self.jacobian


def make_mesh(x_left: float, x_right: float, n_elements: int) -> Mesh:
    if not (x_left < x_right):
        raise ConfigurationError(f"need x_left < x_right, got [{x_left}, {x_right}]")
    if n_elements < 1:
        raise ConfigurationError(f"need at least one element, got {n_elements}")
    return Mesh(float(x_left), float(x_right), int(n_elements))


def sample_function(mesh: Mesh, op: SbpOperator, f: Callable[[float], float]) -> np.ndarray:
    """Evaluate f at every mapped node; flat element-major layout."""
    fv = np.vectorize(f, otypes=[float])
    return fv(mesh.node_coordinates(op)).ravel()


def discretize_speed(
    mesh: Mesh,
    op: SbpOperator,
    a: Callable[[float], float],
    mode: SpeedMode = SpeedMode.DIRECT,
) -> np.ndarray:
    """Nodal representation of the speed a(x), flat element-major.

    DIRECT collocates a on the basis nodes.  VIA_LOBATTO evaluates a at
    the p+1 mapped Lobatto points of each element and re-interpolates
    that polynomial onto the basis nodes, so the element-boundary traces
    reproduce a at the element endpoints.  Both modes coincide for
    Lobatto bases.
    """
    if mode is SpeedMode.DIRECT or op.family is NodeFamily.LOBATTO:
        return sample_function(mesh, op, a)
    lob_nodes, _ = nodes_weights(NodeFamily.LOBATTO, op.degree)
    transfer = interpolation_matrix(lob_nodes, op.nodes)
    av = np.vectorize(a, otypes=[float])
    left = mesh.boundaries[:-1]
    lob_values = av(left[:, None] + (lob_nodes[None, :] + 1.0) * mesh.jacobian)
    return (lob_values @ transfer.T).ravel()
