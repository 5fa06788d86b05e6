"""Generalised Minkowski space R^{1,n+2}, spin-vectors and their flags.

A point (T, Z; X0..Xn) is stored by its coordinates and converts to the
Hermitian paravector matrix 1/2 [[T+Z, X], [conj(X), T-Z]].  Signature is
(+, -, ..., -), so the future light cone is T^2 - Z^2 - |X|^2 = 0, T > 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import clifford as cl
from . import lipschitz as lp
from .clifford import Multivector, sig0
from .lipschitz import CliffordMatrix, LipschitzSpinor

FLAG_TOL = 1e-8


class DegenerateFlag(ValueError):
    """A flag vector is null, dependent, or not orthogonal where it must be."""


class BaseMismatch(ValueError):
    """Two multiflags were compared that do not share a flagpole."""


@dataclass(frozen=True, eq=False)
class MinkowskiPoint:
    T: float
    Z: float
    X: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "T", float(self.T))
        object.__setattr__(self, "Z", float(self.Z))
        x = np.array(self.X, dtype=float).reshape(-1)
        x.setflags(write=False)
        object.__setattr__(self, "X", x)

    @property
    def n(self) -> int:
        return len(self.X) - 1

    @classmethod
    def from_array(cls, arr) -> "MinkowskiPoint":
        arr = np.asarray(arr, dtype=float)
        return cls(arr[0], arr[1], arr[2:])

    def as_array(self) -> np.ndarray:
        return np.concatenate(([self.T, self.Z], self.X))

    def to_matrix(self):
        s = sig0(self.n)
        x = Multivector.paravector(s, self.X * 0.5)
        return ((Multivector.scalar(s, 0.5 * (self.T + self.Z)), x),
                (x.conjugate(), Multivector.scalar(s, 0.5 * (self.T - self.Z))))

    @classmethod
    def from_matrix(cls, m) -> "MinkowskiPoint":
        """Read coordinates off a 2x2 paravector Hermitian matrix.

        Only the real parts of the diagonal and the paravector part of the
        upper-right entry are used.
        """
        (p11, p12), (_, p22) = m
        a, d = p11.real, p22.real
        return cls(a + d, a - d, 2.0 * p12.paravector_components())

    def pdet(self) -> float:
        return 0.25 * minkowski_inner(self, self)

    def __add__(self, other):
        return MinkowskiPoint.from_array(self.as_array() + other.as_array())

    def __sub__(self, other):
        return MinkowskiPoint.from_array(self.as_array() - other.as_array())

    def __neg__(self):
        return MinkowskiPoint.from_array(-self.as_array())

    def __mul__(self, t: float):
        return MinkowskiPoint.from_array(self.as_array() * float(t))

    __rmul__ = __mul__

    def close_to(self, other: "MinkowskiPoint", tol: float = 1e-9) -> bool:
        a, b = self.as_array(), other.as_array()
        return float(np.linalg.norm(a - b)) <= tol * max(1.0, float(np.linalg.norm(b)))

    def __repr__(self):
        xs = ", ".join(f"{v:.6g}" for v in self.X)
        return f"MinkowskiPoint({self.T:.6g}, {self.Z:.6g}; {xs})"


def metric(n: int) -> np.ndarray:
    g = -np.ones(n + 3)
    g[0] = 1.0
    return g


def axis(n: int, name: str) -> MinkowskiPoint:
    """Unit coordinate vector: ``"T"``, ``"Z"`` or ``"X0"`` ... ``"Xn"``."""
    arr = np.zeros(n + 3)
    arr[{"T": 0, "Z": 1}[name] if name in ("T", "Z") else 2 + int(name[1:])] = 1.0
    return MinkowskiPoint.from_array(arr)


def minkowski_inner(p: MinkowskiPoint, q: MinkowskiPoint) -> float:
    """(p|q) = 2(P11 Q22 + P22 Q11 - P_X conj(Q_X) - Q_X conj(P_X)) on matrices."""
    if p.n != q.n:
        raise cl.SignatureMismatch(f"R^(1,{p.n + 2}) vs R^(1,{q.n + 2})")
    (p11, px), (_, p22) = p.to_matrix()
    (q11, qx), (_, q22) = q.to_matrix()
    return 2.0 * (p11.real * q22.real + p22.real * q11.real - 2.0 * cl.dot(px, qx))


def euclidean_inner(p: MinkowskiPoint, q: MinkowskiPoint) -> float:
    if p.n != q.n:
        raise cl.SignatureMismatch(f"R^(1,{p.n + 2}) vs R^(1,{q.n + 2})")
    (p11, px), (_, p22) = p.to_matrix()
    (q11, qx), (_, q22) = q.to_matrix()
    return 2.0 * (p11.real * q11.real + p22.real * q22.real + 2.0 * cl.dot(px, qx))


def coordinate_inner(p: MinkowskiPoint, q: MinkowskiPoint) -> float:
    return float(np.dot(metric(p.n) * p.as_array(), q.as_array()))


def is_on_light_cone(p: MinkowskiPoint, tol: float = cl.RESIDUAL_TOL) -> bool:
    return p.T > 0 and abs(minkowski_inner(p, p)) <= tol * max(1.0, p.T * p.T)


# -- phi_1 and its derivative -------------------------------------------------

def _outer(k1, k2):
    """Symmetrised outer product k1 k2^dagger + k2 k1^dagger as a point."""
    x1, y1 = lp._pair(k1)
    x2, y2 = lp._pair(k2)
    p11 = x1 * x2.conjugate() + x2 * x1.conjugate()
    p12 = x1 * y2.conjugate() + x2 * y1.conjugate()
    p22 = y1 * y2.conjugate() + y2 * y1.conjugate()
    return MinkowskiPoint.from_matrix(((p11, p12), (p12.conjugate(), p22)))


def basepoint(k: LipschitzSpinor) -> MinkowskiPoint:
    """phi_1(k) = k k^dagger, a point on the future light cone."""
    return _outer(k, k) * 0.5


def dphi1(k: LipschitzSpinor, v) -> MinkowskiPoint:
    """Derivative of phi_1 at k in the direction of the pair v."""
    return _outer(k, v)


def light_cone_preimage(p: MinkowskiPoint) -> LipschitzSpinor:
    """A spinor whose basepoint is p, for p on the future light cone."""
    if not p.T > 0:
        raise ValueError("point is not on the future light cone")
    s = sig0(p.n)
    x = Multivector.paravector(s, p.X)
    # use whichever of T - Z, T + Z is larger to stay away from the pole
    if p.T - p.Z >= p.T + p.Z:
        r = math.sqrt(p.T - p.Z)
        return LipschitzSpinor(x * (1.0 / (r * math.sqrt(2.0))), Multivector.scalar(s, r / math.sqrt(2.0)))
    r = math.sqrt(p.T + p.Z)
    return LipschitzSpinor(Multivector.scalar(s, r / math.sqrt(2.0)), x.conjugate() * (1.0 / (r * math.sqrt(2.0))))


# -- multiflags ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Multiflag:
    base: MinkowskiPoint
    vectors: tuple

    @property
    def n(self) -> int:
        return self.base.n


def multiflag_residuals(base: MinkowskiPoint, vectors, tol: float = cl.RESIDUAL_TOL) -> str | None:
    n = base.n
    if len(vectors) != n:
        return f"expected {n} flag vectors, got {len(vectors)}"
    if not base.T > 0:
        return "base has T <= 0"
    scale = base.T * base.T
    if abs(minkowski_inner(base, base)) > tol * max(1.0, scale):
        return "base is not null"
    for i, v in enumerate(vectors):
        vv = abs(minkowski_inner(v, v))
        if abs(minkowski_inner(v, base)) > tol * max(1.0, math.sqrt(vv * scale)):
            return f"flag vector {i + 1} is not tangent to the light cone"
        for j in range(i):
            w = vectors[j]
            ww = abs(minkowski_inner(w, w))
            if abs(minkowski_inner(v, w)) > tol * max(1.0, math.sqrt(vv * ww)):
                return f"flag vectors {j + 1} and {i + 1} are not orthogonal"
    stack = np.array([base.as_array()] + [v.as_array() for v in vectors])
    if np.linalg.matrix_rank(stack, tol=tol * max(1.0, float(np.abs(stack).max()))) < n + 1:
        return "flag vectors and base are linearly dependent"
    return None


def validate_multiflag(base: MinkowskiPoint, vectors, tol: float = cl.RESIDUAL_TOL) -> Multiflag:
    bad = multiflag_residuals(base, vectors, tol)
    if bad:
        raise DegenerateFlag(bad)
    return Multiflag(base, tuple(vectors))


def flag_vector(k: LipschitzSpinor, v: Multivector) -> MinkowskiPoint:
    """Image of the complement direction k-check * v under the derivative."""
    return dphi1(k, lp.pair_rmul(k.complement(), v))


def multiflag(k: LipschitzSpinor) -> Multiflag:
    vecs = tuple(flag_vector(k, Multivector.generator(k.sig, j)) for j in range(1, k.n + 1))
    return Multiflag(basepoint(k), vecs)


def multiflag_from_directions(k: LipschitzSpinor, nus) -> Multiflag:
    """Flags [[phi_1(k); D phi_1(nu_1), ...]] for arbitrary tangent directions."""
    return Multiflag(basepoint(k), tuple(dphi1(k, nu) for nu in nus))


# -- the SL(2) action ---------------------------------------------------------

def act_minkowski(m: CliffordMatrix, p: MinkowskiPoint) -> MinkowskiPoint:
    """A.S = A S A^dagger."""
    (s11, s12), (s21, s22) = p.to_matrix()
    a, b, c, d = m.entries()
    # A S
    r11, r12 = a * s11 + b * s21, a * s12 + b * s22
    r21, r22 = c * s11 + d * s21, c * s12 + d * s22
    ah, bh, ch, dh = a.conjugate(), b.conjugate(), c.conjugate(), d.conjugate()
    # (A S) A^dagger with A^dagger = [[conj a, conj c], [conj b, conj d]]
    p11 = r11 * ah + r12 * bh
    p12 = r11 * ch + r12 * dh
    p22 = r21 * ch + r22 * dh
    return MinkowskiPoint.from_matrix(((p11, p12), (p12.conjugate(), p22)))


def act_multiflag(m: CliffordMatrix, mf: Multiflag) -> Multiflag:
    return Multiflag(act_minkowski(m, mf.base), tuple(act_minkowski(m, v) for v in mf.vectors))


# -- comparing flags ----------------------------------------------------------

def _same_point(p: MinkowskiPoint, q: MinkowskiPoint, tol: float) -> bool:
    return p.close_to(q, tol)


def flags_equal(mf1: Multiflag, mf2: Multiflag, tol: float = FLAG_TOL) -> bool:
    """Do the two multiflags span the same oriented half-planes at each index?

    Each vector of ``mf2`` is projected onto span{base, matching vector of
    ``mf1``}; it must lie in that plane (relative residual below ``tol``)
    with a strictly positive coefficient on the non-pole direction.
    """
    if mf1.n != mf2.n or not _same_point(mf1.base, mf2.base, tol):
        raise BaseMismatch("multiflags have different base points")
    p = mf1.base.as_array()
    for v1, v2 in zip(mf1.vectors, mf2.vectors):
        a = np.column_stack([p, v1.as_array()])
        target = v2.as_array()
        coef, *_ = np.linalg.lstsq(a, target, rcond=None)
        resid = float(np.linalg.norm(a @ coef - target))
        if not resid < tol * max(1.0, float(np.linalg.norm(target))):
            return False
        if not coef[1] > tol:
            return False
    return True


# -- decorated ideal points ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class DecoratedIdealPoint:
    """A boundary ray with a scaled frame of its quotient tangent space.

    ``ray`` has T = 1.  ``frame[0]`` corresponds to the real unit and
    ``frame[j]`` to i_j; every frame vector has Minkowski norm ``K`` and
    zero T-component.
    """

    ray: MinkowskiPoint
    frame: tuple
    K: float

    @property
    def n(self) -> int:
        return self.ray.n

    @property
    def T0(self) -> float:
        return math.sqrt(-self.K / 4.0)


def _lift(v: np.ndarray, p: np.ndarray) -> np.ndarray:
    # representative of v mod p with zero T-component
    out = v - (v[0] / p[0]) * p
    out[0] = 0.0
    return out


def _frame_completion(p: np.ndarray, flags) -> np.ndarray:
    """The missing frame direction, orthogonal to the flags and the pole.

    Orientation is fixed so that det[dT, p, w, f_1..f_n] < 0, which is the
    orientation of the standard flag at (1, 1; 0).
    """
    g = metric(len(p) - 3)
    n_dim = len(p)
    rows = [np.eye(n_dim)[0], g * p] + [g * f for f in flags]
    _, _, vh = np.linalg.svd(np.array(rows))
    w = vh[-1]
    if np.linalg.det(np.column_stack([np.eye(n_dim)[0], p, w] + list(flags))) > 0:
        w = -w
    return w


def to_decorated_ideal(mf: Multiflag, tol: float = cl.RESIDUAL_TOL) -> DecoratedIdealPoint:
    bad = multiflag_residuals(mf.base, mf.vectors, tol)
    if bad:
        raise DegenerateFlag(bad)
    p = mf.base.as_array()
    t0 = mf.base.T
    K = -4.0 * t0 * t0
    g = metric(mf.n)
    flags = []
    for i, v in enumerate(mf.vectors):
        lifted = _lift(v.as_array(), p)
        vv = float(np.dot(g * lifted, lifted))
        if not vv < -tol * max(1.0, float(np.dot(lifted, lifted))):
            raise DegenerateFlag(f"flag vector {i + 1} is not spacelike")
        flags.append(lifted * (2.0 * t0 / math.sqrt(-vv)))
    w = _frame_completion(p, flags)
    w = w * (2.0 * t0 / math.sqrt(-float(np.dot(g * w, w))))
    frame = tuple(MinkowskiPoint.from_array(f) for f in [w] + flags)
    ray = MinkowskiPoint(1.0, mf.base.Z / t0, mf.base.X / t0)
    return DecoratedIdealPoint(ray, frame, K)


def from_decorated_ideal(dip: DecoratedIdealPoint, tol: float = cl.RESIDUAL_TOL) -> Multiflag:
    if not dip.K < 0:
        raise DegenerateFlag("scale K must be negative")
    if len(dip.frame) != dip.n + 1:
        raise DegenerateFlag(f"expected {dip.n + 1} frame vectors, got {len(dip.frame)}")
    base = dip.ray * (dip.T0 / dip.ray.T)
    return validate_multiflag(base, dip.frame[1:], tol)


def frame_from_spinor(k: LipschitzSpinor):
    """Flag vectors for the full paravector basis 1, i_1, ..., i_n."""
    return tuple(flag_vector(k, v) for v in lp.basis_paravectors(k.sig))


# -- JSON ---------------------------------------------------------------------

def point_to_json(p: MinkowskiPoint) -> dict:
    return {"T": p.T, "Z": p.Z, "X": [float(v) for v in p.X]}


def point_from_json(obj: dict) -> MinkowskiPoint:
    try:
        return MinkowskiPoint(float(obj["T"]), float(obj["Z"]), [float(v) for v in obj["X"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed Minkowski point: {exc}") from None


def multiflag_to_json(mf: Multiflag) -> dict:
    return {"base": point_to_json(mf.base), "vectors": [point_to_json(v) for v in mf.vectors]}


def multiflag_from_json(obj: dict) -> Multiflag:
    return Multiflag(point_from_json(obj["base"]), tuple(point_from_json(v) for v in obj["vectors"]))


def decorated_to_json(d: DecoratedIdealPoint) -> dict:
    return {"ray": point_to_json(d.ray), "frame": [point_to_json(v) for v in d.frame], "K": d.K}
