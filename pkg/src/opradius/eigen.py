"""Hermitian eigenvalues and the spectral norm.

Two interchangeable backends compute Hermitian spectra:

``jacobi``
    Self-contained cyclic Jacobi.  A complex Hermitian ``H = S + iK`` is
    embedded as the real symmetric ``[[S, -K], [K, S]]``, whose spectrum is
    that of ``H`` with every eigenvalue doubled.  Rotations are applied in
    round-robin order so that ``n/2`` disjoint rotations, and many matrices,
    are processed per numpy call.
``lapack``
    ``numpy.linalg.eigvalsh``.  Much faster per call in Python; the default
    for long campaigns.

Both report an error bound alongside the values so that callers can build
certified brackets.  The process default comes from ``OPRADIUS_EIGEN_BACKEND``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

BACKENDS = ("lapack", "jacobi")
MAX_SWEEPS = 50
HERMITIAN_TOL = 1e-12
_UNIT = np.finfo(float).eps

_backend = os.environ.get("OPRADIUS_EIGEN_BACKEND", "lapack")
if _backend not in BACKENDS:
    _backend = "lapack"


class NotHermitianError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


def get_backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in BACKENDS:
        raise ValueError(f"unknown eigen backend {name!r}; choose from {BACKENDS}")
    _backend = name


def _resolve(backend):
    backend = backend or _backend
    if backend not in BACKENDS:
        raise ValueError(f"unknown eigen backend {backend!r}")
    return backend


@dataclass(frozen=True)
class EigenResult:
    eigenvalues: np.ndarray  # descending
    residual: float
    sweeps: int = 0


def real_embedding(h: np.ndarray) -> np.ndarray:
    """``[[S, -K], [K, S]]`` for ``h = S + iK``; works on stacks of matrices."""
    s, k = h.real, h.imag
    top = np.concatenate([s, -k], axis=-1)
    bot = np.concatenate([k, s], axis=-1)
    return np.concatenate([top, bot], axis=-2)


@lru_cache(maxsize=None)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    # circle-method tournament: n-1 rounds of n/2 disjoint pairs, every pair once
    idx = list(range(n))
    rounds = []
    for _ in range(n - 1):
        p = np.array(idx[: n // 2])
        q = np.array(idx[n // 2:][::-1])
        rounds.append((np.minimum(p, q), np.maximum(p, q)))
        idx = [idx[0], idx[-1]] + idx[1:-1]
    return tuple(rounds)


def jacobi_symmetric(a: np.ndarray, tol: float = 1e-12, max_sweeps: int = MAX_SWEEPS,
                     vectors: bool = False):
    """Diagonalize a stack of real symmetric matrices of even order.

    Returns ``(diag, off, v, sweeps)`` where ``diag`` holds the (unsorted)
    diagonal after the final sweep, ``off`` the remaining off-diagonal
    Frobenius norm per matrix, and ``v`` the accumulated rotations (or None).
    Sweeps stop once ``off <= tol * (1 + ||a||_F)`` for every matrix.
    """
    a = np.array(a, dtype=float, copy=True)
    squeeze = a.ndim == 2
    if squeeze:
        a = a[None]
    b, n, _ = a.shape
    if n % 2:
        # a zero row/column pads to even order without disturbing the spectrum
        a = np.pad(a, ((0, 0), (0, 1), (0, 1)))
        n += 1
    mask = ~np.eye(n, dtype=bool)
    target = tol * (1.0 + np.sqrt((a ** 2).sum(axis=(1, 2))))
    eye = np.eye(n)
    v = np.broadcast_to(eye, (b, n, n)).copy() if vectors else None
    rows = np.arange(b)[:, None]
    for sweep in range(max_sweeps + 1):
        off = np.sqrt((a[:, mask] ** 2).sum(axis=1))
        if np.all(off <= target):
            break
        if sweep == max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {off.max():.3e})")
        for p, q in _round_robin(n):
            app, aqq, apq = a[:, p, p], a[:, q, q], a[:, p, q]
            nz = apq != 0
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                tau = (aqq - app) / (2.0 * np.where(nz, apq, 1.0))
                t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            t = np.where(nz & np.isfinite(t), t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            j = np.broadcast_to(eye, (b, n, n)).copy()
            j[rows, p, p] = c
            j[rows, q, q] = c
            j[rows, p, q] = s
            j[rows, q, p] = -s
            a = np.swapaxes(j, 1, 2) @ a @ j
            if vectors:
                v = v @ j
    diag = np.diagonal(a, axis1=1, axis2=2).copy()
    if squeeze:
        return diag[0], float(off[0]), (v[0] if vectors else None), sweep
    return diag, off, v, sweep


def _rounding_slack(h: np.ndarray) -> np.ndarray:
    n = h.shape[-1]
    return 32.0 * n * _UNIT * (1.0 + np.sqrt((np.abs(h) ** 2).sum(axis=(-2, -1))))


def check_hermitian(h: np.ndarray) -> None:
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise NotHermitianError(f"expected a square matrix, got shape {h.shape}")
    skew = np.abs(h - h.conj().T).max() if h.size else 0.0
    if skew > HERMITIAN_TOL * max(1.0, np.abs(h).max()):
        raise NotHermitianError(f"matrix is not Hermitian (max |H - H*| = {skew:.3e})")


def hermitian_eigenvalues(h, tol: float = 1e-12, backend: str | None = None) -> EigenResult:
    """Eigenvalues of a Hermitian matrix, sorted descending, with the residual
    ``max |H v - lambda v|`` over the computed eigenpairs."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    h = np.asarray(h, dtype=np.complex128)
    check_hermitian(h)
    backend = _resolve(backend)
    if backend == "lapack":
        w, z = np.linalg.eigh(h)
        order = np.argsort(w)[::-1]
        w, z = w[order], z[:, order]
        sweeps = 0
    else:
        d = h.shape[0]
        diag, _, v, sweeps = jacobi_symmetric(real_embedding(h), tol=tol, vectors=True)
        diag, v = diag[: 2 * d], v[: 2 * d, : 2 * d]
        order = np.argsort(diag)[::-1]
        paired = diag[order]
        # each eigenvalue of h shows up twice; the (u, v) halves give u + iv
        w = 0.5 * (paired[0::2] + paired[1::2])
        cols = v[:, order[0::2]]
        z = cols[:d] + 1j * cols[d:]
        z = z / np.linalg.norm(z, axis=0, keepdims=True)
    residual = float(np.abs(h @ z - z * w).max()) if h.size else 0.0
    return EigenResult(eigenvalues=w, residual=residual, sweeps=sweeps)


def lambda_max_batch(hs: np.ndarray, backend: str | None = None, tol: float = 1e-13):
    """Largest eigenvalue of each Hermitian matrix in a stack.

    Returns ``(values, errors)`` with ``|true - value| <= error`` per matrix.
    """
    hs = np.asarray(hs, dtype=np.complex128)
    backend = _resolve(backend)
    slack = _rounding_slack(hs)
    if backend == "lapack":
        vals = np.linalg.eigvalsh(hs)[..., -1]
        return vals, slack
    diag, off, _, _ = jacobi_symmetric(real_embedding(hs), tol=tol)
    return diag.max(axis=-1), off + slack


def lambda_max(h, backend: str | None = None) -> float:
    return float(hermitian_eigenvalues(h, tol=1e-12, backend=backend).eigenvalues[0])


def spectral_norm_bounds(a, backend: str | None = None) -> tuple[float, float]:
    """Certified ``(lo, hi)`` around the largest singular value of ``a``."""
    a = np.asarray(a, dtype=np.complex128)
    if not np.any(a):
        return 0.0, 0.0
    g = a.conj().T @ a
    g = 0.5 * (g + g.conj().T)
    vals, err = lambda_max_batch(g[None], backend=backend)
    lam, e = float(vals[0]), float(err[0])
    return float(np.sqrt(max(lam - e, 0.0))), float(np.sqrt(max(lam + e, 0.0)))


def spectral_norm(a, backend: str | None = None) -> float:
    """Largest singular value, ``sqrt(lambda_max(A* A))``."""
    a = np.asarray(a, dtype=np.complex128)
    if not np.any(a):
        return 0.0
    g = a.conj().T @ a
    return float(np.sqrt(max(lambda_max(0.5 * (g + g.conj().T), backend=backend), 0.0)))
