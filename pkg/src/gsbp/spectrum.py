"""Dense affine-operator assembly and a nonsymmetric eigenvalue solver.

The semidiscretisations of the advection forms are affine in the state,
du/dt = L u + b(t); probing the RHS with unit vectors recovers L column
by column and a verification probe rejects nonlinear right-hand sides.
Eigenvalues of L are computed by the classical chain balancing ->
Householder Hessenberg reduction -> implicitly shifted double-step QR
with deflation, eigenvalues only (transforms are restricted to the
active diagonal block).  Complex eigenvalues are extracted from 2x2
blocks, so conjugate pairs are exact for real input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AnalysisError

_EPS = float(np.finfo(float).eps)


@dataclass
class AffineOperator:
    """Frozen-time linear operator and boundary forcing of a scheme."""

    matrix: np.ndarray
    offset: np.ndarray

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]


def assemble_affine(scheme, t_freeze: float = 0.0, verify: bool = True) -> AffineOperator:
    """Recover L and b of an affine semidiscretisation by RHS probing.

    Raises AnalysisError when the verification probe detects that the
    right-hand side is not affine in the state (e.g. Burgers).
    """
    n = scheme.n_dofs
    if n > 10_000:
        raise AnalysisError(f"dense assembly refused for dimension {n} > 10000")
    b = scheme.rhs(np.zeros(n), t_freeze)
    matrix = np.empty((n, n))
    probe = np.zeros(n)
    for j in range(n):
        probe[j] = 1.0
        matrix[:, j] = scheme.rhs(probe, t_freeze) - b
        probe[j] = 0.0
    if verify:
        rng = np.random.default_rng(20_177)
        u = rng.standard_normal(n)
        defect = scheme.rhs(u, t_freeze) - (matrix @ u + b)
        scale = max(float(np.max(np.abs(matrix))), 1e-30) * max(
            float(np.max(np.abs(u))), 1e-30
        )
        if float(np.max(np.abs(defect))) > 1e-10 * scale:
            raise AnalysisError("right-hand side is not affine in the state")
    return AffineOperator(matrix, b)


def _balance(a: np.ndarray) -> np.ndarray:
    """Diagonal similarity scaling with powers of two (norm equalising)."""
    a = a.copy()
    n = a.shape[0]
    radix, sqrdx = 2.0, 4.0
    converged = False
    while not converged:
        converged = True
        for i in range(n):
            c = np.sum(np.abs(a[:, i])) - abs(a[i, i])
            r = np.sum(np.abs(a[i, :])) - abs(a[i, i])
            if c > 0.0 and r > 0.0:
                g, f, s = r / radix, 1.0, c + r
                while c < g:
                    f *= radix
                    c *= sqrdx
                g = r * radix
                while c > g:
                    f /= radix
                    c /= sqrdx
                if (c + r) / f < 0.95 * s:
                    converged = False
                    a[i, :] *= 1.0 / f
                    a[:, i] *= f
    return a


def _hessenberg(a: np.ndarray) -> np.ndarray:
    """Householder reduction to upper Hessenberg form."""
    h = a.copy()
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1 :, k]
        norm = float(np.linalg.norm(x))
        if norm == 0.0:
            continue
        alpha = -np.copysign(norm, x[0]) if x[0] != 0.0 else -norm
        v = x.copy()
        v[0] -= alpha
        vn = float(np.linalg.norm(v))
        if vn == 0.0:
            continue
        v /= vn
        h[k + 1 :, k:] -= 2.0 * np.outer(v, v @ h[k + 1 :, k:])
        h[:, k + 1 :] -= 2.0 * np.outer(h[:, k + 1 :] @ v, v)
        h[k + 2 :, k] = 0.0
    return h


def _eig2(a: float, b: float, c: float, d: float) -> list[complex]:
    """Eigenvalues of the real 2x2 matrix [[a, b], [c, d]]."""
    s = 0.5 * (a + d)
    disc = 0.25 * (a - d) * (a - d) + b * c
    if disc >= 0.0:
        q = np.sqrt(disc)
        lam1 = s + q if s >= 0.0 else s - q
        lam2 = 0.0 if lam1 == 0.0 else (s * s - disc) / lam1
        return [complex(lam1), complex(lam2)]
    q = np.sqrt(-disc)
    return [complex(s, q), complex(s, -q)]


def _find_deflation(h: np.ndarray, hi: int, hnorm: float) -> int:
    """Largest lo <= hi so that h[lo, lo-1] is negligible (or lo = 0)."""
    if hi == 0:
        return 0
    d = np.abs(np.diagonal(h)[: hi + 1])
    sub = np.abs(np.diagonal(h, -1)[:hi])
    s = d[:-1] + d[1:]
    s[s == 0.0] = hnorm if hnorm > 0.0 else 1.0
    negligible = sub <= _EPS * s
    idx = np.nonzero(negligible)[0]
    if len(idx) == 0:
        return 0
    lo = int(idx[-1]) + 1
    h[lo, lo - 1] = 0.0
    return lo


def _hqr_eigenvalues(h: np.ndarray) -> np.ndarray:
    """Implicit double-shift QR on a Hessenberg matrix, eigenvalues only."""
    n = h.shape[0]
    hnorm = float(np.linalg.norm(h, "fro"))
    eigs: list[complex] = []
    hi = n - 1
    total_iter, max_iter = 0, 30 * max(n, 1)
    iters_block = 0
    while hi >= 0:
        lo = _find_deflation(h, hi, hnorm)
        if lo == hi:
            eigs.append(complex(h[hi, hi]))
            hi -= 1
            iters_block = 0
            continue
        if lo == hi - 1:
            eigs.extend(_eig2(h[lo, lo], h[lo, hi], h[hi, lo], h[hi, hi]))
            hi -= 2
            iters_block = 0
            continue

        total_iter += 1
        iters_block += 1
        if total_iter > max_iter:
            raise AnalysisError(f"QR iteration did not converge within {max_iter} sweeps")
        if iters_block % 10 == 0:
            # exceptional shift after stretches without deflation
            mag = abs(h[hi, hi - 1]) + abs(h[hi - 1, hi - 2])
            shift_sum, shift_prod = 1.5 * mag, mag * mag
        else:
            shift_sum = h[hi - 1, hi - 1] + h[hi, hi]
            shift_prod = h[hi - 1, hi - 1] * h[hi, hi] - h[hi - 1, hi] * h[hi, hi - 1]

        x = h[lo, lo] * h[lo, lo] + h[lo, lo + 1] * h[lo + 1, lo] - shift_sum * h[lo, lo] + shift_prod
        y = h[lo + 1, lo] * (h[lo, lo] + h[lo + 1, lo + 1] - shift_sum)
        z = h[lo + 1, lo] * h[lo + 2, lo + 1]

        for k in range(lo, hi):
            if k > lo:
                x = h[k, k - 1]
                y = h[k + 1, k - 1]
                z = h[k + 2, k - 1] if k + 2 <= hi else 0.0
            norm = np.sqrt(x * x + y * y + z * z)
            if norm == 0.0:
                continue
            alpha = -norm if x >= 0.0 else norm
            v0 = x - alpha
            vn2 = v0 * v0 + y * y + z * z
            if vn2 == 0.0:
                continue
            beta = 2.0 / vn2
            cmin = max(lo, k - 1)
            cols = slice(cmin, hi + 1)
            rmax = min(k + 3, hi)
            if k + 2 <= hi:
                r0, r1, r2 = h[k, cols], h[k + 1, cols], h[k + 2, cols]
                w = beta * (v0 * r0 + y * r1 + z * r2)
                r0 -= v0 * w
                r1 -= y * w
                r2 -= z * w
                c0 = h[lo : rmax + 1, k]
                c1 = h[lo : rmax + 1, k + 1]
                c2 = h[lo : rmax + 1, k + 2]
                w = beta * (v0 * c0 + y * c1 + z * c2)
                c0 -= v0 * w
                c1 -= y * w
                c2 -= z * w
            else:
                r0, r1 = h[k, cols], h[k + 1, cols]
                w = beta * (v0 * r0 + y * r1)
                r0 -= v0 * w
                r1 -= y * w
                c0 = h[lo : rmax + 1, k]
                c1 = h[lo : rmax + 1, k + 1]
                w = beta * (v0 * c0 + y * c1)
                c0 -= v0 * w
                c1 -= y * w
            if k > lo:
                h[k + 1, k - 1] = 0.0
                if k + 2 <= hi:
                    h[k + 2, k - 1] = 0.0
    return np.array(eigs, dtype=complex)


def eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """All eigenvalues of a real square matrix, unsorted."""
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise AnalysisError(f"need a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise AnalysisError("matrix has non-finite entries")
    n = a.shape[0]
    if n == 0:
        return np.array([], dtype=complex)
    if n == 1:
        return np.array([complex(a[0, 0])])
    return _hqr_eigenvalues(_hessenberg(_balance(a)))


def spectral_abscissa(eigs: np.ndarray) -> float:
    """Largest real part of the spectrum."""
    eigs = np.asarray(eigs)
    if eigs.size == 0:
        raise AnalysisError("empty spectrum")
    return float(np.max(eigs.real))


def eigenvalue_residual(matrix: np.ndarray, lam: complex, seed: int = 0) -> float:
    """||L v - lam v||_2 for the inverse-iteration eigenvector estimate v."""
    a = np.asarray(matrix, dtype=float)
    n = a.shape[0]
    scale = max(float(np.linalg.norm(a, "fro")), 1e-30)
    shifted = a.astype(complex) - (lam + 1e-13 * scale) * np.eye(n)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v /= np.linalg.norm(v)
    for _ in range(3):
        try:
            v = np.linalg.solve(shifted, v)
        except np.linalg.LinAlgError:
            shifted += 1e-12 * scale * np.eye(n)
            v = np.linalg.solve(shifted, v)
        v /= np.linalg.norm(v)
    return float(np.linalg.norm(a @ v - lam * v))
