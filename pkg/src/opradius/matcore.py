"""Dense complex matrices, 2x2 block assembly, scalar-block embedding and seeded sampling.

A matrix is a 2-D ``complex128`` numpy array.  Every function here returns a
fresh, read-only array so values can be shared freely between threads.

An element of ``M_n(M_d)`` is stored as an ``(n*d) x (n*d)`` array; a scalar
matrix ``alpha`` in ``M_{n,m}`` acts on it as ``kron(alpha, I_d)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable

import numpy as np

CMatrix = np.ndarray


class DimensionError(ValueError):
    """Raised when matrix shapes are not conformable."""


def _frozen(a: np.ndarray) -> CMatrix:
    a = np.array(a, dtype=np.complex128, copy=True, order="C")
    a.flags.writeable = False
    return a


def as_cmatrix(obj: Any) -> CMatrix:
    """Validate and copy ``obj`` into a read-only complex matrix."""
    a = np.asarray(obj)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise DimensionError(f"expected a non-empty 2-D matrix, got shape {a.shape}")
    a = a.astype(np.complex128)
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix entries must be finite")
    return _frozen(a)


def zeros(rows: int, cols: int | None = None) -> CMatrix:
    return _frozen(np.zeros((rows, rows if cols is None else cols)))


def identity(d: int) -> CMatrix:
    return _frozen(np.eye(d))


def _require_square(a: np.ndarray, name: str = "matrix") -> int:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {a.shape}")
    return a.shape[0]


# -- block structure -------------------------------------------------------


@dataclass(frozen=True)
class BlockSpec2x2:
    """The four blocks of ``[[x, y], [z, w]]``; all square of one size."""

    x: CMatrix
    y: CMatrix
    z: CMatrix
    w: CMatrix

    def __post_init__(self):
        sizes = {_require_square(np.asarray(b), name) for name, b in
                 zip("xyzw", (self.x, self.y, self.z, self.w))}
        if len(sizes) != 1:
            raise DimensionError(f"blocks must share one square size, got {sorted(sizes)}")

    @property
    def d(self) -> int:
        return np.asarray(self.x).shape[0]


def block2x2(spec: BlockSpec2x2) -> CMatrix:
    """Place the four blocks row-major into a ``2d x 2d`` matrix."""
    return _frozen(np.block([[spec.x, spec.y], [spec.z, spec.w]]))


def block(x, y, z, w) -> CMatrix:
    """Shorthand for ``block2x2(BlockSpec2x2(x, y, z, w))``; ``0`` means a zero block."""
    ref = next(b for b in (x, y, z, w) if not np.isscalar(b))
    d = np.asarray(ref).shape[0]
    fill = [np.zeros((d, d)) if np.isscalar(b) and b == 0 else b for b in (x, y, z, w)]
    return block2x2(BlockSpec2x2(*fill))


def split2x2(a: CMatrix) -> BlockSpec2x2:
    """Inverse of :func:`block2x2`."""
    size = _require_square(np.asarray(a))
    if size % 2:
        raise DimensionError(f"cannot split odd dimension {size} into 2x2 blocks")
    h = size // 2
    return BlockSpec2x2(_frozen(a[:h, :h]), _frozen(a[:h, h:]),
                        _frozen(a[h:, :h]), _frozen(a[h:, h:]))


def scalar_embed(alpha: CMatrix, d: int) -> CMatrix:
    """Return ``alpha (x) I_d``, the action of a scalar matrix on ``M_m(M_d)``."""
    if int(d) != d or d < 1:
        raise ValueError(f"block size must be a positive integer, got {d}")
    alpha = np.asarray(alpha, dtype=np.complex128)
    if alpha.ndim != 2:
        raise DimensionError("scalar matrix must be 2-D")
    n, m = alpha.shape
    out = np.zeros((n * d, m * d), dtype=np.complex128)
    for k in range(d):
        out[k::d, k::d] = alpha
    return _frozen(out)


def leading_principal_blocks(a: CMatrix, n: int, d_new: int) -> CMatrix:
    """Keep the leading ``d_new x d_new`` corner of every ``d x d`` block of ``a``."""
    size = _require_square(np.asarray(a))
    if size % n:
        raise DimensionError(f"dimension {size} is not a multiple of n={n}")
    d = size // n
    if not 1 <= d_new <= d:
        raise ValueError(f"d_new={d_new} out of range 1..{d}")
    t = np.asarray(a).reshape(n, d, n, d)[:, :d_new, :, :d_new]
    return _frozen(t.reshape(n * d_new, n * d_new))


# -- arithmetic --------------------------------------------------------------


def _same_shape(a, b):
    if np.shape(a) != np.shape(b):
        raise DimensionError(f"shape mismatch {np.shape(a)} vs {np.shape(b)}")


def add(a: CMatrix, b: CMatrix) -> CMatrix:
    _same_shape(a, b)
    return _frozen(np.add(a, b))


def sub(a: CMatrix, b: CMatrix) -> CMatrix:
    _same_shape(a, b)
    return _frozen(np.subtract(a, b))


def mul(*factors: CMatrix) -> CMatrix:
    out = np.asarray(factors[0])
    for f in factors[1:]:
        f = np.asarray(f)
        if out.shape[1] != f.shape[0]:
            raise DimensionError(f"cannot multiply {out.shape} by {f.shape}")
        out = out @ f
    return _frozen(out)


def scale(lam: complex, a: CMatrix) -> CMatrix:
    return _frozen(complex(lam) * np.asarray(a))


def adjoint(a: CMatrix) -> CMatrix:
    return _frozen(np.asarray(a).conj().T)


def direct_sum(*mats: CMatrix) -> CMatrix:
    """Block-diagonal ``[[x, 0], [0, y]]`` (any number of summands)."""
    rows = sum(np.shape(m)[0] for m in mats)
    cols = sum(np.shape(m)[1] for m in mats)
    out = np.zeros((rows, cols), dtype=np.complex128)
    r = c = 0
    for m in mats:
        p, q = np.shape(m)
        out[r:r + p, c:c + q] = m
        r, c = r + p, c + q
    return _frozen(out)


def max_entry(a) -> float:
    a = np.asarray(a)
    return float(np.abs(a).max()) if a.size else 0.0


def frobenius(a) -> float:
    return float(np.linalg.norm(np.asarray(a), "fro"))


# -- random generation -------------------------------------------------------


@dataclass(frozen=True)
class Rng:
    """Counter-based random stream keyed by ``(seed, stream)``.

    Two ``Rng`` values with equal fields always yield the same sequence.
    """

    seed: int
    stream: int = 0

    def __post_init__(self):
        for name in ("seed", "stream"):
            v = getattr(self, name)
            if not 0 <= v < 2**64:
                raise ValueError(f"{name} must be a 64-bit unsigned integer, got {v}")

    def generator(self, substream: int = 0) -> np.random.Generator:
        """Fresh generator; ``substream`` selects a non-overlapping jump ahead."""
        key = np.array([self.seed, self.stream], dtype=np.uint64)
        bits = np.random.Philox(key=key)
        if substream:
            bits = bits.jumped(substream)
        return np.random.Generator(bits)


def _gen(rng) -> np.random.Generator:
    if isinstance(rng, Rng):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"expected Rng or numpy Generator, got {type(rng).__name__}")


def ginibre(rows: int, cols: int, rng) -> CMatrix:
    g = _gen(rng)
    re = g.standard_normal((rows, cols))
    im = g.standard_normal((rows, cols))
    return _frozen((re + 1j * im) * np.sqrt(0.5))


def random_ginibre(d: int, rng) -> CMatrix:
    """``d x d`` matrix of i.i.d. standard complex Gaussians (E|z|^2 = 1)."""
    if d < 1:
        raise ValueError("d must be positive")
    return ginibre(d, d, rng)


def random_haar_unitary(d: int, rng) -> CMatrix:
    """Haar-distributed unitary via QR of a Ginibre sample with phase-fixed R."""
    if d < 1:
        raise ValueError("d must be positive")
    q, r = np.linalg.qr(np.asarray(random_ginibre(d, rng)))
    diag = np.diag(r)
    mod = np.abs(diag)
    ph = np.ones_like(diag)
    np.divide(diag, mod, out=ph, where=mod > 0)
    return _frozen(q * ph)


def random_unit_vectors(d: int, count: int, rng) -> np.ndarray:
    """``count`` Haar-uniform unit vectors in C^d, as rows."""
    g = _gen(rng)
    v = g.standard_normal((count, d)) + 1j * g.standard_normal((count, d))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


# -- JSON file format ----------------------------------------------------------


def matrix_to_json(a: CMatrix) -> dict:
    a = np.asarray(a)
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in a.ravel()],
    }


def matrix_from_json(obj: dict) -> CMatrix:
    try:
        rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    except (TypeError, KeyError) as exc:
        raise ValueError(f"matrix JSON needs rows, cols and entries: {exc}") from None
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 1 or cols < 1:
        raise ValueError("rows and cols must be positive integers")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got "
                         f"{len(entries) if isinstance(entries, list) else type(entries).__name__}")
    vals = []
    for e in entries:
        if not (isinstance(e, (list, tuple)) and len(e) == 2):
            raise ValueError(f"entry must be [re, im], got {e!r}")
        re, im = e
        if isinstance(re, bool) or isinstance(im, bool):
            raise ValueError(f"entry must be numeric, got {e!r}")
        vals.append(complex(float(re), float(im)))
    return as_cmatrix(np.array(vals, dtype=np.complex128).reshape(rows, cols))


def load_matrix(path: str | Path) -> CMatrix:
    with open(path) as fh:
        # Python's json accepts NaN/Infinity literals; reject them here
        obj = json.load(fh, parse_constant=_reject_constant)
    return matrix_from_json(obj)


def _reject_constant(name):
    raise ValueError(f"non-finite literal {name} in matrix JSON")


def save_matrix(a: CMatrix, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(matrix_to_json(a), fh)


def digest(items: Iterable[Any]) -> str:
    """Short stable hash over matrices and scalars."""
    import hashlib

    h = hashlib.sha256()
    for it in items:
        if isinstance(it, np.ndarray):
            a = np.ascontiguousarray(it, dtype=np.complex128)
            h.update(repr(a.shape).encode())
            h.update(a.tobytes())
        else:
            h.update(repr(it).encode())
        h.update(b"|")
    return h.hexdigest()[:16]
