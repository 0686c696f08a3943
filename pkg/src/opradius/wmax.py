"""Brackets for the maximal numerical radius norm and checked factorizations.

For ``x`` in ``M_n(M_d)``

    W_max(x) = 1/2 inf || a a* + b* b ||

over factorizations ``x = (a (x) I) y (b (x) I)`` with ``||y|| = 1``,
``a`` of shape ``n x r`` and ``b`` of shape ``r x n``.  Any single
factorization gives an upper bound; the generic lower bound is ``||x|| / 2``.

At ``n = 1`` the value is exact: ``a a*`` and ``b* b`` are the scalars
``||a||^2`` and ``||b||^2``, so ``(||a||^2 + ||b||^2) / 2 >= ||a|| ||b|| >=
||a y b|| = ||x||``, and ``a = b = ||x||^{1/2}``, ``y = x / ||x||`` attains
it.  Hence ``W_max(x) = ||x||`` there and the bracket collapses.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eigen import spectral_norm_bounds
from .matcore import CMatrix, Rng, max_entry, scalar_embed
from .radius import Bracket

RECONSTRUCTION_TOL = 1e-9
NORM_TOL = 1e-9
CHAIN_TOL = 1e-9


class DecompositionError(ValueError):
    """A factorization does not reproduce its target or ``||y|| != 1``."""


class ProofChainError(RuntimeError):
    """An inequality step that holds by construction failed numerically."""


@dataclass(frozen=True)
class Decomposition:
    a: CMatrix  # n x r scalars
    y: CMatrix  # (r d) x (r d)
    b: CMatrix  # r x n scalars
    d: int

    @property
    def n(self) -> int:
        return self.a.shape[0]

    @property
    def r(self) -> int:
        return self.a.shape[1]

    def reconstruct(self) -> np.ndarray:
        return scalar_embed(self.a, self.d) @ self.y @ scalar_embed(self.b, self.d)

    def value(self) -> float:
        """``||a a* + b* b|| / 2``."""
        return _half_norm_psd(self.a @ self.a.conj().T + self.b.conj().T @ self.b)


def _norm(a) -> float:
    return spectral_norm_bounds(a)[1]


def _half_norm_psd(m) -> float:
    m = np.asarray(m)
    if m.shape == (1, 1):
        return 0.5 * abs(float(m[0, 0].real))
    m = 0.5 * (m + m.conj().T)
    return 0.5 * float(np.linalg.eigvalsh(m)[-1])


def validate(dec: Decomposition, target: CMatrix, tol: float = RECONSTRUCTION_TOL) -> None:
    a, y, b = (np.asarray(m) for m in (dec.a, dec.y, dec.b))
    r, d = dec.r, dec.d
    if b.shape != (r, dec.n) or y.shape != (r * d, r * d):
        raise DecompositionError(
            f"inconsistent shapes a{a.shape} y{y.shape} b{b.shape} for d={d}")
    if np.shape(target) != (dec.n * d, dec.n * d):
        raise DecompositionError(f"target shape {np.shape(target)} does not match n={dec.n}, d={d}")
    ny = _norm(y)
    if abs(ny - 1.0) > NORM_TOL:
        raise DecompositionError(f"middle factor has norm {ny!r}, expected 1")
    err = max_entry(dec.reconstruct() - np.asarray(target))
    if err > tol * max(1.0, max_entry(target)):
        raise DecompositionError(f"factorization misses its target by {err:.3e}")


def wmax_upper(dec: Decomposition, target: CMatrix | None = None) -> float:
    """Upper bound ``||a a* + b* b|| / 2`` on ``W_max`` of the target."""
    if target is not None:
        validate(dec, target)
    return dec.value()


def trivial_decomposition(x: CMatrix, n: int, d: int) -> Decomposition:
    """``a = b = ||x||^{1/2} I_n``, ``y = x / ||x||``; its value is ``||x||``."""
    x = np.asarray(x, dtype=np.complex128)
    s = _norm(x)
    if s == 0:
        return Decomposition(np.zeros((n, n)), np.eye(n * d, dtype=complex), np.zeros((n, n)), d)
    root = np.sqrt(s) * np.eye(n)
    return Decomposition(root, x / s, root.copy(), d)


def normalized(a, y, b, d) -> Decomposition:
    """Rescale so ``||y|| = 1`` (``y <- y/||y||``, ``b <- ||y|| b``)."""
    s = _norm(y)
    if s == 0:
        raise DecompositionError("middle factor is zero")
    return Decomposition(np.asarray(a), np.asarray(y) / s, s * np.asarray(b), d)


def rebalanced(dec: Decomposition) -> Decomposition:
    """Replace ``(a, b)`` by ``(t a, b / t)`` with ``t = (||b|| / ||a||)^{1/2}``.

    The value becomes ``||t^2 aa* + t^-2 b*b|| / 2`` and the product is unchanged.
    """
    na, nb = _norm(dec.a), _norm(dec.b)
    if na == 0 or nb == 0:
        return dec
    t = np.sqrt(nb / na)
    return Decomposition(t * np.asarray(dec.a), dec.y, np.asarray(dec.b) / t, dec.d)


def _solve_middle(x, a, b, d):
    # (a (x) I)(a^+ (x) I) = I when a has full row rank; likewise for b on the right
    ap = np.linalg.pinv(a)
    bp = np.linalg.pinv(b)
    return scalar_embed(ap, d) @ x @ scalar_embed(bp, d)


def _candidate(x, n, d, gen, incumbent: Decomposition | None):
    kind = gen.integers(3)
    if kind == 0 or incumbent is None:
        r = int(gen.integers(n, 2 * n + 1))
        a = _ginibre(gen, n, r)
        b = _ginibre(gen, r, n)
    elif kind == 1:
        sigma = gen.uniform(0.0, 3.0)
        a = np.diag(np.exp(sigma * gen.standard_normal(n))).astype(complex)
        b = np.diag(np.exp(sigma * gen.standard_normal(n))).astype(complex)
    else:
        # local move around the best factorization found so far
        step = 10.0 ** gen.uniform(-3, 0)
        a = np.asarray(incumbent.a) * (1 + step * _ginibre(gen, *incumbent.a.shape))
        b = np.asarray(incumbent.b) * (1 + step * _ginibre(gen, *incumbent.b.shape))
    y = _solve_middle(x, a, b, d)
    return rebalanced(normalized(a, y, b, d))


def _ginibre(gen, rows, cols):
    return (gen.standard_normal((rows, cols)) + 1j * gen.standard_normal((rows, cols))) * np.sqrt(0.5)


def wmax_search(x: CMatrix, n: int, d: int, budget: int = 100, rng=None):
    """Bracket for ``W_max(x)`` plus the best factorization found.

    ``lo`` is ``||x||`` for ``n = 1`` and ``||x|| / 2`` otherwise; ``hi`` is the
    best value over the trivial factorization and ``budget`` random ones.
    """
    x = np.asarray(x, dtype=np.complex128)
    if n < 1 or d < 1 or x.shape != (n * d, n * d):
        raise ValueError(f"x of shape {x.shape} is not an element of M_{n}(M_{d})")
    if budget < 0:
        raise ValueError("budget must be non-negative")
    best = trivial_decomposition(x, n, d)
    norm_lo, _ = spectral_norm_bounds(x)
    if norm_lo == 0 and not np.any(x):
        return Bracket(0.0, 0.0, "exact_rule", 0), best
    hi = best.value()
    evals = 2
    if n > 1:
        gen = (rng if rng is not None else Rng(0))
        gen = gen.generator() if isinstance(gen, Rng) else gen
        for _ in range(budget):
            try:
                cand = _candidate(x, n, d, gen, best)
                validate(cand, x)
            except (DecompositionError, np.linalg.LinAlgError):
                continue
            evals += 3
            v = cand.value()
            if v < hi:
                best, hi = cand, v
    lo = norm_lo if n == 1 else 0.5 * norm_lo
    if hi < lo - 1e-9 * max(1.0, lo):
        raise ProofChainError(f"factorization value {hi!r} below the lower bound {lo!r}")
    lo = min(lo, hi)
    method = "exact_rule" if n == 1 else "decomposition_search"
    return Bracket(float(lo), float(hi), method, evals), best


def wmax_bracket(x: CMatrix, n: int, d: int, budget: int = 100, rng=None) -> Bracket:
    return wmax_search(x, n, d, budget, rng)[0]


def _check_pair(dec1: Decomposition, dec2: Decomposition):
    if dec1.n != dec2.n or dec1.d != dec2.d:
        raise DecompositionError("factorizations must share n and d")


def _zeros(r, c):
    return np.zeros((r, c), dtype=np.complex128)


def offdiag_decomposition(dec1: Decomposition, dec2: Decomposition) -> Decomposition:
    """``[[0, x1], [x2, 0]] = diag(a1, a2) diag(y1, y2) [[0, b1], [b2, 0]]``."""
    _check_pair(dec1, dec2)
    n = dec1.n
    a1, a2, b1, b2 = (np.asarray(m) for m in (dec1.a, dec2.a, dec1.b, dec2.b))
    r1, r2 = dec1.r, dec2.r
    a = np.block([[a1, _zeros(n, r2)], [_zeros(n, r1), a2]])
    y = np.block([[np.asarray(dec1.y), _zeros(r1 * dec1.d, r2 * dec1.d)],
                  [_zeros(r2 * dec1.d, r1 * dec1.d), np.asarray(dec2.y)]])
    b = np.block([[_zeros(r1, n), b1], [b2, _zeros(r2, n)]])
    return Decomposition(a, y, b, dec1.d)


def offdiag_wmax_upper(dec1: Decomposition, dec2: Decomposition,
                       x1: CMatrix | None = None, x2: CMatrix | None = None) -> float:
    """Upper bound for ``W_max([[0, x1], [x2, 0]])`` from factorizations of x1, x2.

    Equals ``max(||a1a1* + b2*b2||, ||a2a2* + b1*b1||) / 2`` and is checked to
    sit below ``wmax_upper(dec1) + wmax_upper(dec2)``.
    """
    if x1 is not None:
        validate(dec1, x1)
    if x2 is not None:
        validate(dec2, x2)
    dec = offdiag_decomposition(dec1, dec2)
    if x1 is not None and x2 is not None:
        target = np.block([[np.zeros_like(np.asarray(x1)), x1], [x2, np.zeros_like(np.asarray(x2))]])
        validate(dec, target)
    a1, a2, b1, b2 = (np.asarray(m) for m in (dec1.a, dec2.a, dec1.b, dec2.b))
    p = a1 @ a1.conj().T + b2.conj().T @ b2
    q = a2 @ a2.conj().T + b1.conj().T @ b1
    value = dec.value()
    direct = max(_half_norm_psd(p), _half_norm_psd(q))
    middle = _half_norm_psd(p + q)
    outer = dec1.value() + dec2.value()
    if abs(value - direct) > CHAIN_TOL * max(1.0, direct):
        raise ProofChainError(f"block-diagonal evaluation mismatch: {value!r} vs {direct!r}")
    if not value <= middle + CHAIN_TOL * max(1.0, middle) <= outer + 2 * CHAIN_TOL * max(1.0, outer):
        raise ProofChainError(f"chain {value!r} <= {middle!r} <= {outer!r} failed")
    return value


def sumdiff_decomposition(dec1: Decomposition, dec2: Decomposition) -> Decomposition:
    """Factor ``[[0, x1 + x2], [x1 - x2, 0]]`` through ``diag(y1, y2, y1, y2)``."""
    _check_pair(dec1, dec2)
    n, d = dec1.n, dec1.d
    a1, a2, b1, b2 = (np.asarray(m) for m in (dec1.a, dec2.a, dec1.b, dec2.b))
    r1, r2 = dec1.r, dec2.r
    z = _zeros
    a = np.block([[a1, a2, z(n, r1), z(n, r2)],
                  [z(n, r1), z(n, r2), a1, a2]])
    y1, y2 = np.asarray(dec1.y), np.asarray(dec2.y)
    blocks = [y1, y2, y1, y2]
    sizes = [r1 * d, r2 * d, r1 * d, r2 * d]
    y = np.block([[blocks[i] if i == j else z(sizes[i], sizes[j]) for j in range(4)]
                  for i in range(4)])
    b = np.block([[z(r1, n), b1],
                  [z(r2, n), b2],
                  [b1, z(r1, n)],
                  [-b2, z(r2, n)]])
    return Decomposition(a, y, b, d)


def sumdiff_wmax_upper(dec1: Decomposition, dec2: Decomposition,
                       x1: CMatrix | None = None, x2: CMatrix | None = None) -> float:
    """Upper bound ``||a1a1* + a2a2* + b1*b1 + b2*b2|| / 2`` for
    ``W_max([[0, x1 + x2], [x1 - x2, 0]])``.

    The four-block factorization is built explicitly and must reproduce the
    target; when ``x1``/``x2`` are omitted they are taken from the factors.
    """
    if x1 is not None:
        validate(dec1, x1)
    if x2 is not None:
        validate(dec2, x2)
    x1 = dec1.reconstruct() if x1 is None else np.asarray(x1)
    x2 = dec2.reconstruct() if x2 is None else np.asarray(x2)
    dec = sumdiff_decomposition(dec1, dec2)
    zero = np.zeros_like(x1)
    target = np.block([[zero, x1 + x2], [x1 - x2, zero]])
    err = max_entry(dec.reconstruct() - target)
    if err > RECONSTRUCTION_TOL * max(1.0, max_entry(target)):
        raise ProofChainError(f"four-block factorization misses its target by {err:.3e}")
    a1, a2, b1, b2 = (np.asarray(m) for m in (dec1.a, dec2.a, dec1.b, dec2.b))
    s = a1 @ a1.conj().T + a2 @ a2.conj().T + b1.conj().T @ b1 + b2.conj().T @ b2
    value = _half_norm_psd(s)
    full = dec.value()
    if abs(value - full) > CHAIN_TOL * max(1.0, value):
        raise ProofChainError(f"compressed evaluation {value!r} differs from {full!r}")
    outer = dec1.value() + dec2.value()
    if value > outer + CHAIN_TOL * max(1.0, outer):
        raise ProofChainError(f"{value!r} exceeds wmax_upper(dec1) + wmax_upper(dec2) = {outer!r}")
    return value
