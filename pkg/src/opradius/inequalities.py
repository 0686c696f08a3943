"""Executable catalog of the 2x2 block-matrix results, ``C1`` ... ``C20``.

Every check evaluates both sides of each claim as certified brackets, with
``W`` the numerical radius and ``O`` the operator norm, and turns each
(in)equality into a :class:`CheckResult`.  Operator inputs are elements of
``M_n(M_d)`` stored as ``(n d) x (n d)`` matrices; scalar inputs (``alpha``,
``beta``, ..., unitaries ``U``) are ``n x n`` and act through ``kron(., I_d)``.

Verdicts
    ``violated``          certified sides are separated against the claim by
                          more than ``VERDICT_TOL`` plus both bracket widths
    ``equality_witness``  the two brackets come within ``IDENTITY_TOL``
    ``consistent``        anything else

``C13`` and ``C14`` concern ``W_max``, which is only ever bracketed.  They are
run in consistency mode: a violation needs ``lo(lhs) > hi(rhs) + VERDICT_TOL``
and tightness is never claimed.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .matcore import DimensionError, Rng, block, digest, scalar_embed
from .radius import DEFAULT_EPS, Bracket, bmax, bmin, norm_bracket, numerical_radius
from . import wmax as _wmax

VERDICT_TOL = 1e-7
IDENTITY_TOL = 1e-7
VERDICTS = ("consistent", "violated", "equality_witness")


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    index: int
    claim: str
    relation: str  # "le": lhs <= rhs, "eq": lhs == rhs
    input_digest: str
    lhs: Bracket
    rhs: Bracket
    margin: float
    verdict: str
    mode: str = "certified"

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, obj: dict) -> "CheckResult":
        obj = dict(obj)
        obj["lhs"] = Bracket(**obj["lhs"])
        obj["rhs"] = Bracket(**obj["rhs"])
        return cls(**obj)


def judge(lhs: Bracket, rhs: Bracket, relation: str, mode: str = "certified",
          tol: float = VERDICT_TOL, identity_tol: float = IDENTITY_TOL) -> tuple[float, str]:
    """Return ``(margin, verdict)`` for the claim ``lhs <relation> rhs``."""
    slack = tol if mode == "consistency" else tol + lhs.width + rhs.width
    if relation == "le":
        margin = rhs.hi - lhs.lo
        excess = lhs.lo - rhs.hi
    elif relation == "eq":
        margin = min(rhs.hi - lhs.lo, lhs.hi - rhs.lo)
        excess = max(lhs.lo - rhs.hi, rhs.lo - lhs.hi)
    else:
        raise ValueError(f"unknown relation {relation!r}")
    if excess > slack:
        return margin, "violated"
    if mode == "certified" and lhs.gap(rhs) <= identity_tol:
        return margin, "equality_witness"
    return margin, "consistent"


class _Claims:
    """Collects the (in)equalities of one check call."""

    def __init__(self, check_id: str, inputs, mode: str = "certified"):
        self.check_id = check_id
        self.digest = digest(inputs)
        self.mode = mode
        self.results: list[CheckResult] = []

    def _add(self, claim, relation, lhs, rhs):
        margin, verdict = judge(lhs, rhs, relation, self.mode)
        self.results.append(CheckResult(
            self.check_id, len(self.results), claim, relation, self.digest,
            lhs, rhs, float(margin), verdict, self.mode))

    def le(self, claim: str, lhs: Bracket, rhs: Bracket):
        self._add(claim, "le", lhs, rhs)

    def eq(self, claim: str, lhs: Bracket, rhs: Bracket):
        self._add(claim, "eq", lhs, rhs)


def _ops(*mats):
    arrs = [np.asarray(m, dtype=np.complex128) for m in mats]
    shapes = {a.shape for a in arrs}
    if len(shapes) != 1:
        raise DimensionError(f"operator inputs must share one shape, got {sorted(shapes)}")
    (shape,) = shapes
    if len(shape) != 2 or shape[0] != shape[1]:
        raise DimensionError(f"operator inputs must be square, got {shape}")
    return arrs


def _scalars(size: int, *mats):
    arrs = [np.asarray(m, dtype=np.complex128) for m in mats]
    n = arrs[0].shape[0]
    for a in arrs:
        if a.shape != (n, n):
            raise DimensionError(f"scalar matrices must all be n x n, got {a.shape}")
    if size % n:
        raise DimensionError(f"operator size {size} is not a multiple of scalar size {n}")
    d = size // n
    return [scalar_embed(a, d) for a in arrs], d


def _z(x):
    return np.zeros_like(x)


# -- individual checks -------------------------------------------------------


def check_C1(x, eps=DEFAULT_EPS):
    """Sandwich: O(x)/2 <= W(x) <= O(x)."""
    (x,) = _ops(x)
    c = _Claims("C1", [x])
    w, o = numerical_radius(x, eps), norm_bracket(x)
    c.le("O(x)/2 <= W(x)", 0.5 * o, w)
    c.le("W(x) <= O(x)", w, o)
    return c.results


def check_C2(x, u, eps=DEFAULT_EPS):
    """Unitary invariance W(U* x U) = W(x) for a scalar unitary U."""
    (x,) = _ops(x)
    (ue,), _ = _scalars(x.shape[0], u)
    c = _Claims("C2", [x, np.asarray(u)])
    c.eq("W(U* x U) = W(x)", numerical_radius(ue.conj().T @ x @ ue, eps), numerical_radius(x, eps))
    return c.results


def check_C3(x, y, eps=DEFAULT_EPS):
    """max(O(x), O(y))/2 <= W([[0,x],[y,0]]) <= (O(x) + O(y))/2."""
    x, y = _ops(x, y)
    c = _Claims("C3", [x, y])
    wb = numerical_radius(block(0, x, y, 0), eps)
    ox, oy = norm_bracket(x), norm_bracket(y)
    c.le("max(O(x), O(y))/2 <= W([[0,x],[y,0]])", 0.5 * bmax(ox, oy), wb)
    c.le("W([[0,x],[y,0]]) <= (O(x) + O(y))/2", wb, 0.5 * (ox + oy))
    return c.results


def check_C4(x, y, eps=DEFAULT_EPS):
    """max(W(x), W(y))/2 <= W([[0,x],[y,0]]) <= W(x) + W(y)."""
    x, y = _ops(x, y)
    c = _Claims("C4", [x, y])
    wb = numerical_radius(block(0, x, y, 0), eps)
    wx, wy = numerical_radius(x, eps), numerical_radius(y, eps)
    c.le("max(W(x), W(y))/2 <= W([[0,x],[y,0]])", 0.5 * bmax(wx, wy), wb)
    c.le("W([[0,x],[y,0]]) <= W(x) + W(y)", wb, wx + wy)
    return c.results


def check_C5(x, y, alpha, beta, gamma, delta, sign=1, eps=DEFAULT_EPS):
    """W(a x b +- g y d) <= (|a||b| + |g||d|) max(O(x), O(y))."""
    x, y = _ops(x, y)
    (ae, be, ge, de), _ = _scalars(x.shape[0], alpha, beta, gamma, delta)
    s = _sign(sign)
    c = _Claims("C5", [x, y, *map(np.asarray, (alpha, beta, gamma, delta)), s])
    na, nb, ng, nd = (norm_bracket(m) for m in (alpha, beta, gamma, delta))
    coef = _product(na, nb) + _product(ng, nd)
    lhs = numerical_radius(ae @ x @ be + s * (ge @ y @ de), eps)
    c.le("W(a x b +- g y d) <= (|a||b| + |g||d|) max(O(x), O(y))",
         lhs, _product(coef, bmax(norm_bracket(x), norm_bracket(y))))
    return c.results


def check_C6(x, y, alpha, beta, sign=1, eps=DEFAULT_EPS):
    """W(a x b +- b y a) <= 2|a||b| max(O(x), O(y)) and its two special cases."""
    x, y = _ops(x, y)
    (ae, be), _ = _scalars(x.shape[0], alpha, beta)
    s = _sign(sign)
    c = _Claims("C6", [x, y, np.asarray(alpha), np.asarray(beta), s])
    na, nb = norm_bracket(alpha), norm_bracket(beta)
    ox, oy = norm_bracket(x), norm_bracket(y)
    omax = bmax(ox, oy)
    c.le("W(a x b +- b y a) <= 2|a||b| max(O(x), O(y))",
         numerical_radius(ae @ x @ be + s * (be @ y @ ae), eps), 2 * _product(_product(na, nb), omax))
    c.le("W(a x +- y a) <= 2|a| max(O(x), O(y))",
         numerical_radius(ae @ x + s * (y @ ae), eps), 2 * _product(na, omax))
    c.le("W(a x +- x a) <= 2|a| O(x)",
         numerical_radius(ae @ x + s * (x @ ae), eps), 2 * _product(na, ox))
    return c.results


def check_C7(x, y, alpha, gamma, sign=1, eps=DEFAULT_EPS):
    """W(a x +- g y) <= (|a| + |g|) max(O(x), O(y)), and with y = x."""
    x, y = _ops(x, y)
    (ae, ge), _ = _scalars(x.shape[0], alpha, gamma)
    s = _sign(sign)
    c = _Claims("C7", [x, y, np.asarray(alpha), np.asarray(gamma), s])
    coef = norm_bracket(alpha) + norm_bracket(gamma)
    ox, oy = norm_bracket(x), norm_bracket(y)
    c.le("W(a x +- g y) <= (|a| + |g|) max(O(x), O(y))",
         numerical_radius(ae @ x + s * (ge @ y), eps), _product(coef, bmax(ox, oy)))
    c.le("W(a x +- g x) <= (|a| + |g|) O(x)",
         numerical_radius(ae @ x + s * (ge @ x), eps), _product(coef, ox))
    return c.results


def check_C8(x, y, theta, eps=DEFAULT_EPS):
    """Block identities: phase, swap, [[x,y],[y,x]], [[0,y],[y,0]], [[y,-x],[x,y]]."""
    x, y = _ops(x, y)
    c = _Claims("C8", [x, y, float(theta)])
    w = lambda m: numerical_radius(m, eps)  # noqa: E731
    off = w(block(0, x, y, 0))
    c.eq("W([[0,x],[e^{it} y,0]]) = W([[0,x],[y,0]])",
         w(block(0, x, np.exp(1j * theta) * y, 0)), off)
    c.eq("W([[0,x],[y,0]]) = W([[0,y],[x,0]])", off, w(block(0, y, x, 0)))
    c.eq("W([[x,y],[y,x]]) = max(W(x+y), W(x-y))",
         w(block(x, y, y, x)), bmax(w(x + y), w(x - y)))
    c.eq("W([[0,y],[y,0]]) = W(y)", w(block(0, y, y, 0)), w(y))
    c.eq("W([[y,-x],[x,y]]) = max(W(x+iy), W(x-iy))",
         w(block(y, -x, x, y)), bmax(w(x + 1j * y), w(x - 1j * y)))
    return c.results


def check_C9(x, y, eps=DEFAULT_EPS):
    """max(W(x+y), W(x-y))/2 <= W([[0,x],[y,0]]) <= (W(x+y) + W(x-y))/2."""
    x, y = _ops(x, y)
    c = _Claims("C9", [x, y])
    wb = numerical_radius(block(0, x, y, 0), eps)
    wp, wm = numerical_radius(x + y, eps), numerical_radius(x - y, eps)
    c.le("max(W(x+y), W(x-y))/2 <= W([[0,x],[y,0]])", 0.5 * bmax(wp, wm), wb)
    c.le("W([[0,x],[y,0]]) <= (W(x+y) + W(x-y))/2", wb, 0.5 * (wp + wm))
    return c.results


def check_C10(x, y, eps=DEFAULT_EPS):
    """max(W(x), W(y)) <= W([[0,x+y],[x-y,0]]) <= W(x) + W(y)."""
    x, y = _ops(x, y)
    c = _Claims("C10", [x, y])
    wb = numerical_radius(block(0, x + y, x - y, 0), eps)
    wx, wy = numerical_radius(x, eps), numerical_radius(y, eps)
    c.le("max(W(x), W(y)) <= W([[0,x+y],[x-y,0]])", bmax(wx, wy), wb)
    c.le("W([[0,x+y],[x-y,0]]) <= W(x) + W(y)", wb, wx + wy)
    return c.results


def check_C11(x, y, eps=DEFAULT_EPS):
    """W([[0,x],[y,0]]) <= min(W(x), W(y)) + min(O(x+y), O(x-y))/2."""
    x, y = _ops(x, y)
    c = _Claims("C11", [x, y])
    wb = numerical_radius(block(0, x, y, 0), eps)
    wx, wy = numerical_radius(x, eps), numerical_radius(y, eps)
    half_min = 0.5 * bmin(norm_bracket(x + y), norm_bracket(x - y))
    c.le("W([[0,x],[y,0]]) <= min(O(x+y), O(x-y))/2 + W(y)", wb, half_min + wy)
    c.le("W([[0,x],[y,0]]) <= min(O(x+y), O(x-y))/2 + W(x)", wb, half_min + wx)
    c.le("W([[0,x],[y,0]]) <= min(W(x), W(y)) + min(O(x+y), O(x-y))/2",
         wb, bmin(wx, wy) + half_min)
    return c.results


def check_C12(x, y, eps=DEFAULT_EPS):
    """Absolute-value lower bounds for W([[0,x],[y,0]])."""
    x, y = _ops(x, y)
    c = _Claims("C12", [x, y])
    wb = numerical_radius(block(0, x, y, 0), eps)
    wx, wy = numerical_radius(x, eps), numerical_radius(y, eps)
    op, om = norm_bracket(x + y), norm_bracket(x - y)
    c.le("|max(O(x+y), O(x-y))/2 - min(W(x), W(y))| <= W([[0,x],[y,0]])",
         abs(0.5 * bmax(op, om) - bmin(wx, wy)), wb)
    c.le("|max(W(x), W(y)) - min(O(x+y), O(x-y))/2| <= W([[0,x],[y,0]])",
         abs(bmax(wx, wy) - 0.5 * bmin(op, om)), wb)
    return c.results


def _search(x, n, d, budget, gen):
    return _wmax.wmax_search(x, n, d, budget, gen)


def _halved(dec: _wmax.Decomposition) -> _wmax.Decomposition:
    r = np.sqrt(0.5)
    return _wmax.Decomposition(r * np.asarray(dec.a), dec.y, r * np.asarray(dec.b), dec.d)


def _tighten(b: Bracket, hi: float) -> Bracket:
    if hi >= b.hi:
        return b
    return Bracket(b.lo, max(hi, b.lo), b.method, b.evals + 1, b.certified)


def _level(x, n):
    if n < 1 or x.shape[0] % n:
        raise DimensionError(f"operator size {x.shape[0]} is not a multiple of n={n}")
    return x.shape[0] // n


def check_C13(x1, x2, budget=100, *, n=1, rng=None, eps=DEFAULT_EPS):
    """W_max of [[0,x1],[x2,0]] against W_max(x1 +- x2), consistency mode."""
    x1, x2 = _ops(x1, x2)
    d = _level(x1, n)
    gen = _generator(rng)
    c = _Claims("C13", [x1, x2, int(budget), int(n)], mode="consistency")
    bs, ds = _search(x1 + x2, n, d, budget, gen)
    bt, dt = _search(x1 - x2, n, d, budget, gen)
    bb, _ = _search(block(0, x1, x2, 0), 2 * n, d, budget, gen)
    # [[0,x1],[x2,0]] = [[0,u1+u2],[u1-u2,0]] with u1 = (x1+x2)/2, u2 = (x1-x2)/2
    proof_hi = _wmax.sumdiff_wmax_upper(_halved(ds), _halved(dt), 0.5 * (x1 + x2), 0.5 * (x1 - x2))
    bb = _tighten(bb, proof_hi)
    c.le("max(Wmax(x1+x2), Wmax(x1-x2))/2 <= Wmax([[0,x1],[x2,0]])", 0.5 * bmax(bs, bt), bb)
    c.le("Wmax([[0,x1],[x2,0]]) <= (Wmax(x1+x2) + Wmax(x1-x2))/2", bb, 0.5 * (bs + bt))
    return c.results


def check_C14(x1, x2, budget=100, *, n=1, rng=None, eps=DEFAULT_EPS):
    """max(Wmax(x1), Wmax(x2))/2 <= Wmax([[0,x1],[x2,0]]) <= Wmax(x1) + Wmax(x2)."""
    x1, x2 = _ops(x1, x2)
    d = _level(x1, n)
    gen = _generator(rng)
    c = _Claims("C14", [x1, x2, int(budget), int(n)], mode="consistency")
    b1, d1 = _search(x1, n, d, budget, gen)
    b2, d2 = _search(x2, n, d, budget, gen)
    bb, _ = _search(block(0, x1, x2, 0), 2 * n, d, budget, gen)
    bb = _tighten(bb, _wmax.offdiag_wmax_upper(d1, d2, x1, x2))
    c.le("max(Wmax(x1), Wmax(x2))/2 <= Wmax([[0,x1],[x2,0]])", 0.5 * bmax(b1, b2), bb)
    c.le("Wmax([[0,x1],[x2,0]]) <= Wmax(x1) + Wmax(x2)", bb, b1 + b2)
    return c.results


def check_C15(x, y, z, w, eps=DEFAULT_EPS):
    """Pinching: W(diag part) <= W(A) and W(off-diagonal part) <= W(A)."""
    x, y, z, w = _ops(x, y, z, w)
    c = _Claims("C15", [x, y, z, w])
    a = block(x, y, z, w)
    size = x.shape[0]
    u = np.kron(np.diag([1.0, -1.0]), np.eye(size))
    conj = u.conj().T @ a @ u
    wa = numerical_radius(a, eps)
    c.le("W([[x,0],[0,w]]) <= W([[x,y],[z,w]])", numerical_radius(0.5 * (a + conj), eps), wa)
    c.le("W([[0,y],[z,0]]) <= W([[x,y],[z,w]])", numerical_radius(0.5 * (a - conj), eps), wa)
    return c.results


def check_C16(x, y, eps=DEFAULT_EPS):
    """max(W(x), W(y)) <= W([[x,y],[-y,-x]]) <= W(x) + W(y)."""
    x, y = _ops(x, y)
    c = _Claims("C16", [x, y])
    wb = numerical_radius(block(x, y, -y, -x), eps)
    wx, wy = numerical_radius(x, eps), numerical_radius(y, eps)
    c.le("max(W(x), W(y)) <= W([[x,y],[-y,-x]])", bmax(wx, wy), wb)
    c.le("W([[x,y],[-y,-x]]) <= W(x) + W(y)", wb, wx + wy)
    return c.results


def check_C17(x, eps=DEFAULT_EPS):
    """W([[x,x],[-x,-x]]) = O(x)."""
    (x,) = _ops(x)
    c = _Claims("C17", [x])
    c.eq("W([[x,x],[-x,-x]]) = O(x)", numerical_radius(block(x, x, -x, -x), eps), norm_bracket(x))
    return c.results


def check_C18(x, y, z, w, eps=DEFAULT_EPS):
    """max(W(x), W(w), W(y)/2, W(z)/2) <= W(A) <= W(x) + W(y) + W(z) + W(w)."""
    x, y, z, w = _ops(x, y, z, w)
    c = _Claims("C18", [x, y, z, w])
    wa = numerical_radius(block(x, y, z, w), eps)
    wx, wy, wz, ww = (numerical_radius(m, eps) for m in (x, y, z, w))
    c.le("max(W(x), W(w), W(y)/2, W(z)/2) <= W([[x,y],[z,w]])",
         bmax(wx, ww, 0.5 * wy, 0.5 * wz), wa)
    c.le("W([[x,y],[z,w]]) <= W(x) + W(y) + W(z) + W(w)", wa, wx + wy + wz + ww)
    return c.results


def check_C19(x, y, z, w, eps=DEFAULT_EPS):
    """Rotated-block upper bound, and the rotation identity it rests on."""
    x, y, z, w = _ops(x, y, z, w)
    c = _Claims("C19", [x, y, z, w])
    r = lambda m: numerical_radius(m, eps)  # noqa: E731
    wa = r(block(x, y, z, w))
    rotated = block(x + y + z + w, -x + y - z + w, -x - y + z + w, x - y - z + w)
    c.eq("W([[x,y],[z,w]]) = W(rotated)/2", wa, 0.5 * r(rotated))
    rhs = 0.5 * bmax(r(x + w + 1j * (y - z)), r(x + w - 1j * (y - z))) + 0.5 * (r(w - x) + r(y + z))
    c.le("W([[x,y],[z,w]]) <= max(W(x+w+i(y-z)), W(x+w-i(y-z)))/2 + (W(w-x) + W(y+z))/2",
         wa, rhs)
    return c.results


def check_C20(x, y, z, w, eps=DEFAULT_EPS):
    """W([[x,y],[z,w]]) <= max(W(x), W(w)) + (W(y+z) + W(y-z))/2."""
    x, y, z, w = _ops(x, y, z, w)
    c = _Claims("C20", [x, y, z, w])
    r = lambda m: numerical_radius(m, eps)  # noqa: E731
    c.le("W([[x,y],[z,w]]) <= max(W(x), W(w)) + (W(y+z) + W(y-z))/2",
         r(block(x, y, z, w)), bmax(r(x), r(w)) + 0.5 * (r(y + z) + r(y - z)))
    return c.results


def _sign(sign) -> int:
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    return int(sign)


def _product(p: Bracket, q: Bracket) -> Bracket:
    """Product of two non-negative brackets."""
    return Bracket(p.lo * q.lo, p.hi * q.hi, "generic", p.evals + q.evals,
                   p.certified and q.certified)


def _generator(rng) -> np.random.Generator:
    if rng is None:
        return Rng(0).generator()
    return rng.generator() if isinstance(rng, Rng) else rng


# -- registry -----------------------------------------------------------------

OP, SCALAR, UNITARY, ANGLE, SIGN, BUDGET = "op", "scalar", "unitary", "angle", "sign", "budget"


@dataclass(frozen=True)
class CheckSpec:
    check_id: str
    func: Callable
    params: tuple[tuple[str, str], ...]
    claims: int
    needs_level: bool = False  # takes n (and rng) keywords

    @property
    def matrix_params(self):
        return [name for name, kind in self.params if kind in (OP, SCALAR, UNITARY)]

    def run(self, inputs: dict, eps: float = DEFAULT_EPS, n: int = 1, rng=None):
        args = [inputs[name] for name, _ in self.params]
        if self.needs_level:
            return self.func(*args, n=n, rng=rng, eps=eps)
        return self.func(*args, eps=eps)


def _spec(cid, func, params, claims, needs_level=False):
    return cid, CheckSpec(cid, func, tuple(params), claims, needs_level)


_XY = [("x", OP), ("y", OP)]
_XYZW = [("x", OP), ("y", OP), ("z", OP), ("w", OP)]

CATALOG: dict[str, CheckSpec] = dict([
    _spec("C1", check_C1, [("x", OP)], 2),
    _spec("C2", check_C2, [("x", OP), ("u", UNITARY)], 1),
    _spec("C3", check_C3, _XY, 2),
    _spec("C4", check_C4, _XY, 2),
    _spec("C5", check_C5, _XY + [("alpha", SCALAR), ("beta", SCALAR), ("gamma", SCALAR),
                                ("delta", SCALAR), ("sign", SIGN)], 1),
    _spec("C6", check_C6, _XY + [("alpha", SCALAR), ("beta", SCALAR), ("sign", SIGN)], 3),
    _spec("C7", check_C7, _XY + [("alpha", SCALAR), ("gamma", SCALAR), ("sign", SIGN)], 2),
    _spec("C8", check_C8, _XY + [("theta", ANGLE)], 5),
    _spec("C9", check_C9, _XY, 2),
    _spec("C10", check_C10, _XY, 2),
    _spec("C11", check_C11, _XY, 3),
    _spec("C12", check_C12, _XY, 2),
    _spec("C13", check_C13, [("x1", OP), ("x2", OP), ("budget", BUDGET)], 2, True),
    _spec("C14", check_C14, [("x1", OP), ("x2", OP), ("budget", BUDGET)], 2, True),
    _spec("C15", check_C15, _XYZW, 2),
    _spec("C16", check_C16, _XY, 2),
    _spec("C17", check_C17, [("x", OP)], 1),
    _spec("C18", check_C18, _XYZW, 2),
    _spec("C19", check_C19, _XYZW, 2),
    _spec("C20", check_C20, _XYZW, 1),
])

CHECK_IDS = tuple(CATALOG)
EQUALITY_CHECKS = ("C2", "C8", "C17")


def get_check(check_id: str) -> CheckSpec:
    try:
        return CATALOG[check_id]
    except KeyError:
        raise KeyError(f"unknown check id {check_id!r}; known: {', '.join(CHECK_IDS)}") from None
