"""Certified numerical radius.

``w(A) = max over theta of f(theta)`` where ``f(theta)`` is the largest
eigenvalue of ``H(theta) = (e^{i theta} A + e^{-i theta} A*) / 2``.  Every
``f(theta)`` is a lower bound.  On an interval ``[a, b]`` of angles (``b - a < pi``)
two independent upper bounds hold for ``f``:

* Lipschitz tent: ``f`` is ``||A||_F``-Lipschitz, so
  ``max f <= (f(a) + f(b) + L (b - a)) / 2``.
* Supporting lines: writing ``e^{i theta}`` as a non-negative combination of
  ``e^{ia}`` and ``e^{ib}`` gives
  ``f(theta) <= (sin(b - theta) f(a) + sin(theta - a) f(b)) / sin(b - a)``,
  whose maximum on the interval has a closed form.  Its gap to ``f`` shrinks
  quadratically in ``b - a``.

The scan bisects every interval whose bound exceeds ``lo + eps`` until the
bracket closes.  When the numerical range is a disk every angle is a
maximizer and supporting lines converge slowly all around the circle; the
bound ``w(A) <= (||A|| + ||A^2||^{1/2}) / 2`` (exact when ``A^2 = 0``) closes
those brackets directly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import eigen
from .matcore import CMatrix, random_unit_vectors

METHODS = ("certified_scan", "exact_rule", "decomposition_search", "generic")
INITIAL_GRID = 64
MAX_EVALS = 100_000
STALL_EVALS = 1024
DEFAULT_EPS = 1e-8
_UNIT = np.finfo(float).eps


@dataclass(frozen=True)
class Bracket:
    """Interval ``[lo, hi]`` certified to contain a norm value."""

    lo: float
    hi: float
    method: str = "generic"
    evals: int = 0
    certified: bool = True

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown bracket method {self.method!r}")
        if not self.lo <= self.hi:
            raise ValueError(f"bracket with lo > hi: [{self.lo!r}, {self.hi!r}]")

    @classmethod
    def point(cls, value: float, method: str = "exact_rule") -> "Bracket":
        return cls(float(value), float(value), method)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, value: float, tol: float = 0.0) -> bool:
        return self.lo - tol <= value <= self.hi + tol

    def overlaps(self, other: "Bracket", tol: float = 0.0) -> bool:
        return self.lo <= other.hi + tol and other.lo <= self.hi + tol

    def gap(self, other: "Bracket") -> float:
        """Distance between the two intervals (0 when they overlap)."""
        return max(self.lo - other.hi, other.lo - self.hi, 0.0)

    # interval arithmetic; results are 'generic' and carry summed eval counts
    def __add__(self, other: "Bracket | float") -> "Bracket":
        if not isinstance(other, Bracket):
            other = Bracket.point(other)
        return _combine(self.lo + other.lo, self.hi + other.hi, self, other)

    __radd__ = __add__

    def __sub__(self, other: "Bracket | float") -> "Bracket":
        if not isinstance(other, Bracket):
            other = Bracket.point(other)
        return _combine(self.lo - other.hi, self.hi - other.lo, self, other)

    def __mul__(self, c: float) -> "Bracket":
        c = float(c)
        if c >= 0:
            return _combine(c * self.lo, c * self.hi, self)
        return _combine(c * self.hi, c * self.lo, self)

    __rmul__ = __mul__

    def __abs__(self) -> "Bracket":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return _combine(-self.hi, -self.lo, self)
        return _combine(0.0, max(-self.lo, self.hi), self)


def _combine(lo, hi, *parts: Bracket) -> Bracket:
    return Bracket(float(lo), float(hi), "generic",
                   sum(p.evals for p in parts), all(p.certified for p in parts))


def bmax(*bs: Bracket) -> Bracket:
    return _combine(max(b.lo for b in bs), max(b.hi for b in bs), *bs)


def bmin(*bs: Bracket) -> Bracket:
    return _combine(min(b.lo for b in bs), min(b.hi for b in bs), *bs)


def norm_bracket(a, backend: str | None = None) -> Bracket:
    """Spectral norm as a (very narrow) certified bracket."""
    lo, hi = eigen.spectral_norm_bounds(a, backend=backend)
    return Bracket(lo, hi, "exact_rule", 1)


# -- support function ----------------------------------------------------------


def _hermitian_parts(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    ah = a.conj().T
    return 0.5 * (a + ah), 0.5j * (a - ah)


def _support_batch(p, q, thetas, backend):
    c = np.cos(thetas)[:, None, None]
    s = np.sin(thetas)[:, None, None]
    return eigen.lambda_max_batch(c * p + s * q, backend=backend)


def support_function(a: CMatrix, theta: float, backend: str | None = None) -> float:
    """``lambda_max((e^{i theta} A + e^{-i theta} A*) / 2)``."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    p, q = _hermitian_parts(a)
    vals, _ = _support_batch(p, q, np.array([float(theta)]), backend)
    return float(vals[0])


def _interval_bounds(ta, tb, fa, fb, lip):
    """Upper bound of the support function on each interval ``[ta, tb]``."""
    h = tb - ta
    tent = 0.5 * (fa + fb + lip * h)
    sh = np.sin(h)
    # g(ta + t) = fa cos t + c2 sin t, written to avoid cancellation for small h
    c2 = (fb - fa) / sh + fa * np.tan(0.5 * h)
    r = np.hypot(fa, c2)
    tstar = np.arctan2(c2, fa)
    inside = (tstar >= 0) & (tstar <= h)
    dc2 = 4 * _UNIT * (np.abs(fa) + np.abs(fb)) / sh
    safe_r = np.where(r > 0, r, 1.0)
    peak = r + np.abs(c2) / safe_r * dc2 + 4 * _UNIT * r
    vertex = np.where(inside, peak, np.maximum(fa, fb))
    return np.minimum(tent, vertex)


def numerical_radius(a: CMatrix, eps: float = DEFAULT_EPS, backend: str | None = None,
                     max_evals: int = MAX_EVALS) -> Bracket:
    """Certified bracket ``[lo, hi]`` around ``w(A)`` with ``hi - lo <= eps``.

    If the eigensolve budget runs out first the best bracket found so far is
    returned with ``certified=False``.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    a = np.ascontiguousarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    backend = backend or eigen.get_backend()
    return _radius_cached(a.tobytes(), a.shape[0], float(eps), backend, int(max_evals))


@lru_cache(maxsize=8192)
def _radius_cached(raw: bytes, n: int, eps: float, backend: str, max_evals: int) -> Bracket:
    a = np.frombuffer(raw, dtype=np.complex128).reshape(n, n)
    if not np.any(a):
        return Bracket(0.0, 0.0, "exact_rule", 0)
    return _scan(a, eps, backend, max_evals)


def _as_integers(x: np.ndarray):
    """Exact integer matrix ``m`` and shift ``e`` with ``x == m * 2**e``."""
    mant, expo = np.frexp(x)
    nz = mant != 0
    if not nz.any():
        return np.zeros(x.shape, dtype=object), 0
    base = int(expo[nz].min()) - 53
    m = np.empty(x.shape, dtype=object)
    for idx, (f, e) in enumerate(zip(mant.ravel(), expo.ravel())):
        m.flat[idx] = int(f * 2.0**53) << (int(e) - 53 - base) if f else 0
    return m, base


def _square_is_zero(a: np.ndarray) -> bool:
    """Exact test of ``A @ A == 0`` in integer arithmetic."""
    # one shared shift keeps real and imaginary parts on the same scale
    re, e_re = _as_integers(a.real)
    im, e_im = _as_integers(a.imag)
    base = min(e_re, e_im)
    re = re * (1 << (e_re - base))
    im = im * (1 << (e_im - base))
    real_part = re.dot(re) - im.dot(im)
    imag_part = re.dot(im) + im.dot(re)
    return not any(real_part.ravel()) and not any(imag_part.ravel())


def _power_bound(a, backend, nilpotent: bool = False):
    """Certified value of ``(||A|| + ||A^2||^{1/2}) / 2``.

    ``nilpotent`` asserts that ``A @ A`` is exactly zero, which removes the
    rounding slack of the squared term.
    """
    n = a.shape[0]
    _, norm_hi = eigen.spectral_norm_bounds(a, backend=backend)
    if nilpotent:
        return 0.5 * norm_hi
    _, sq_hi = eigen.spectral_norm_bounds(a @ a, backend=backend)
    # entrywise rounding bound for forming A @ A; zero when the products are exact
    mod = np.abs(a)
    sq_hi += (n + 2) * _UNIT * float(np.linalg.norm(mod @ mod, "fro"))
    return 0.5 * (norm_hi + np.sqrt(sq_hi))


def _scan(a, eps, backend, max_evals):
    p, q = _hermitian_parts(a)
    lip = float(np.linalg.norm(a, "fro"))
    cap = _power_bound(a, backend)
    thetas = np.linspace(0.0, 2 * np.pi, INITIAL_GRID, endpoint=False)
    vals, errs = _support_batch(p, q, thetas, backend)
    evals = len(thetas)
    certified = True
    exact_tried = a.shape[0] > 32
    while True:
        lo = max(float(np.max(vals - errs)), 0.0)
        upper = vals + errs
        ta = thetas
        tb = np.append(thetas[1:], thetas[0] + 2 * np.pi)
        ub = _interval_bounds(ta, tb, upper, np.roll(upper, -1), lip)
        hi = max(min(float(ub.max()), cap), lo)
        if hi - lo <= eps:
            break
        if not exact_tried and evals >= STALL_EVALS:
            # slow progress is typical of disk-shaped ranges, where A^2 = 0 is common
            exact_tried = True
            if _square_is_zero(a):
                cap = min(cap, _power_bound(a, backend, nilpotent=True))
                continue
        split = np.flatnonzero(ub > lo + eps)
        widths = (tb - ta)[split]
        if evals + len(split) > max_evals or np.min(widths) < 1e-14:
            certified = False
            break
        mids = 0.5 * (ta[split] + tb[split])
        new_vals, new_errs = _support_batch(p, q, mids, backend)
        evals += len(mids)
        thetas = np.concatenate([thetas, np.mod(mids, 2 * np.pi)])
        vals = np.concatenate([vals, new_vals])
        errs = np.concatenate([errs, new_errs])
        order = np.argsort(thetas, kind="stable")
        thetas, vals, errs = thetas[order], vals[order], errs[order]
    return Bracket(float(lo), float(hi), "certified_scan", evals, certified)


def rayleigh_lower_bound(a: CMatrix, samples: int, rng, chunk: int = 8192) -> float:
    """``max |v* A v|`` over Haar-random unit vectors; never exceeds ``w(A)``."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    a = np.asarray(a, dtype=np.complex128)
    d = a.shape[0]
    gen = rng.generator() if hasattr(rng, "generator") else rng
    best = 0.0
    left = samples
    while left > 0:
        k = min(chunk, left)
        v = random_unit_vectors(d, k, gen)
        quad = np.einsum("ki,ij,kj->k", v.conj(), a, v)
        best = max(best, float(np.abs(quad).max()))
        left -= k
    return best
