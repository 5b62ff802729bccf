"""Interface flux catalog for the advection and Burgers schemes.

For variable-coefficient advection the flux variants differ only in how
the speed enters: evaluated at the interface position (edge based),
interpolated separately from the solution (split), or interpolated as
the nodal product (unsplit).  On bases that include the boundary nodes
all three collapse to the same value; on generalised bases they do not,
and the differences decide conservation and energy stability.  Upwind
variants assume positive speed.

All fluxes are pure functions of the interface trace data and accept
numpy arrays elementwise.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConfigurationError
from .operators import SbpOperator


class FluxKind(enum.Enum):
    EDGE_CENTRAL = "edge-central"
    SPLIT_CENTRAL = "split-central"
    UNSPLIT_CENTRAL = "unsplit-central"
    EDGE_UPWIND = "edge-upwind"
    SPLIT_UPWIND = "split-upwind"
    UNSPLIT_UPWIND = "unsplit-upwind"
    MODIFIED_CENTRAL = "modified-central"
    MODIFIED_UPWIND = "modified-upwind"
    GODUNOV_BURGERS = "godunov-burgers"


ADVECTIVE_KINDS = frozenset(
    {
        FluxKind.EDGE_CENTRAL,
        FluxKind.SPLIT_CENTRAL,
        FluxKind.UNSPLIT_CENTRAL,
        FluxKind.EDGE_UPWIND,
        FluxKind.SPLIT_UPWIND,
        FluxKind.UNSPLIT_UPWIND,
    }
)
MODIFIED_KINDS = frozenset({FluxKind.MODIFIED_CENTRAL, FluxKind.MODIFIED_UPWIND})


@dataclass(frozen=True)
class InterfaceTrace:
    """Trace data of the two elements meeting at one interface.

    u_minus/u_plus are the solution traces from the left/right element,
    a_minus/a_plus the speed traces, au_minus/au_plus the traces of the
    nodal product a*u, and a_at_boundary the speed evaluated exactly at
    the interface position.  For boundary-including bases au equals a*u.
    """

    u_minus: float
    u_plus: float
    a_minus: float = 1.0
    a_plus: float = 1.0
    au_minus: float = 0.0
    au_plus: float = 0.0
    a_at_boundary: float = 1.0


def flux_values(kind: FluxKind, um, up, am=None, ap=None, aum=None, aup=None, ab=None):
    """Vectorised flux evaluation on raw trace arrays."""
    if kind is FluxKind.EDGE_CENTRAL:
        return ab * 0.5 * (um + up)
    if kind is FluxKind.SPLIT_CENTRAL:
        return 0.5 * (am * um + ap * up)
    if kind is FluxKind.UNSPLIT_CENTRAL:
        return 0.5 * (aum + aup)
    if kind is FluxKind.EDGE_UPWIND:
        return ab * um
    if kind is FluxKind.SPLIT_UPWIND:
        return am * um
    if kind is FluxKind.UNSPLIT_UPWIND:
        return aum
    if kind is FluxKind.MODIFIED_CENTRAL:
        return 0.5 * (um + up)
    if kind is FluxKind.MODIFIED_UPWIND:
        return um
    if kind is FluxKind.GODUNOV_BURGERS:
        return godunov_burgers(um, up)
    raise ConfigurationError(f"unknown flux kind {kind}")


def evaluate_flux(kind: FluxKind, trace: InterfaceTrace) -> float:
    """Numerical flux of the given kind on one interface trace."""
    value = flux_values(
        kind,
        trace.u_minus,
        trace.u_plus,
        trace.a_minus,
        trace.a_plus,
        trace.au_minus,
        trace.au_plus,
        trace.a_at_boundary,
    )
    return float(value)


def godunov_burgers(u_minus, u_plus):
    """Exact Riemann flux for the quadratic flux u^2/2.

    If u_minus <= u_plus the minimum of u^2/2 over [u_minus, u_plus] is
    taken (zero when the interval straddles the origin), otherwise the
    maximum over [u_plus, u_minus].
    """
    um = np.asarray(u_minus, dtype=float)
    up = np.asarray(u_plus, dtype=float)
    rarefaction = np.where(
        (um <= 0.0) & (0.0 <= up), 0.0, 0.5 * np.minimum(um * um, up * up)
    )
    shock = 0.5 * np.maximum(um * um, up * up)
    out = np.where(um <= up, rarefaction, shock)
    if np.ndim(u_minus) == 0 and np.ndim(u_plus) == 0:
        return float(out)
    return out


def interface_trace(
    left_state: np.ndarray,
    right_state: np.ndarray,
    left_speed: np.ndarray,
    right_speed: np.ndarray,
    op: SbpOperator,
    x_boundary: float,
    a_fn: Callable[[float], float] | None = None,
) -> InterfaceTrace:
    """Build the trace data of the interface between two elements.

    The minus values come from the right edge of the left element, the
    plus values from the left edge of the right element.  The product
    traces apply the restriction to the componentwise nodal product.
    """
    r_left, r_right = op.restrict[0], op.restrict[1]
    return InterfaceTrace(
        u_minus=float(r_right @ left_state),
        u_plus=float(r_left @ right_state),
        a_minus=float(r_right @ left_speed),
        a_plus=float(r_left @ right_speed),
        au_minus=float(r_right @ (left_speed * left_state)),
        au_plus=float(r_left @ (right_speed * right_state)),
        a_at_boundary=float(a_fn(x_boundary)) if a_fn is not None else float("nan"),
    )
