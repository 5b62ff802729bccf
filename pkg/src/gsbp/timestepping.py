"""Fixed-step SSPRK(10,4) time integration.

The ten-stage fourth-order strong-stability-preserving scheme in its
two-register low-storage form: five forward-Euler-type accumulation
stages of length dt/6, a register recombination, four more accumulation
stages, and a final combination with one extra RHS evaluation.  The
effective stage times are 0, 1/6, 1/3, 1/2, 2/3 for the first block and
1/3, 1/2, 2/3, 5/6, 1 afterwards.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import DivergenceError

RhsFunction = Callable[[np.ndarray, float], np.ndarray]


def ssprk104_step(rhs: RhsFunction, u: np.ndarray, t: float, dt: float) -> np.ndarray:
    """Advance the state by one step of size dt.

    Algebraically identical to the two-register form (q2 = u/25 + 9 q1/25,
    q1 = 15 q2 - 5 q1 after the fifth stage), but written in increment
    form with the equal final weights 1/10: the state is only ever
    updated by adding dt-scaled increments, never rescaled, which keeps
    linear invariants free of the systematic per-step rounding bias the
    register recombination would introduce.
    """
    u = np.asarray(u, dtype=float)
    sixth = dt / 6.0
    with np.errstate(invalid="ignore", over="ignore"):
        y = u
        head = None  # sum of the first five stage derivatives
        for i in range(5):
            f = rhs(y, t + i * sixth)
            head = f if head is None else head + f
            y = y + sixth * f
        y = u + (dt / 15.0) * head
        total = head
        for i in range(4):
            f = rhs(y, t + dt / 3.0 + i * sixth)
            total = total + f
            y = y + sixth * f
        total = total + rhs(y, t + dt)
        out = u + (dt / 10.0) * total
    if not np.all(np.isfinite(out)):
        raise DivergenceError(f"non-finite state after step at t = {t}")
    return out


def integrate(
    rhs: RhsFunction,
    u0: np.ndarray,
    t0: float,
    t_end: float,
    dt: float,
    observer: Callable[[float, np.ndarray], None] | None = None,
) -> np.ndarray:
    """March from t0 to t_end; the last step is shortened to land exactly.

    The optional observer is called with (t, state) at t0 and after each
    step; states handed to it must not be mutated.
    """
    if not t_end > t0:
        raise ValueError(f"need t_end > t0, got [{t0}, {t_end}]")
    if not dt > 0.0:
        raise ValueError(f"need dt > 0, got {dt}")
    u = np.array(u0, dtype=float)
    if observer is not None:
        observer(t0, u)
    n_steps = max(1, int(np.ceil((t_end - t0) / dt - 1e-9)))
    for k in range(n_steps):
        t = t0 + k * dt
        step = dt if k < n_steps - 1 else t_end - t
        u = ssprk104_step(rhs, u, t, step)
        if observer is not None:
            observer(t_end if k == n_steps - 1 else t + dt, u)
    return u
