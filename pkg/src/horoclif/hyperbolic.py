"""Hyperboloid, ball and upper half-space models, and decorated horospheres.

Ball points are (w; y0..yn) with w^2 + |y|^2 <= 1.  Upper half-space points
are (z; x0..xn) with z >= 0, and the boundary point at infinity is the
shared ``INF`` sentinel.  A boundary point of U with z = 0 is identified
with the paravector x0 + x1 i1 + ... + xn in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import clifford as cl
from . import lipschitz as lp
from . import minkowski as mk
from .clifford import Multivector, sig0
from .lipschitz import INF, CliffordMatrix, LipschitzSpinor
from .minkowski import MinkowskiPoint

BOUNDARY_TOL = 1e-10


class DomainError(ValueError):
    """A point is not on the surface a map is defined on."""


class SharedCenter(ValueError):
    """Two horospheres are centred at the same ideal point."""


# -- points -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BallPoint:
    w: float
    y: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "w", float(self.w))
        y = np.array(self.y, dtype=float).reshape(-1)
        y.setflags(write=False)
        object.__setattr__(self, "y", y)

    def norm2(self) -> float:
        return self.w * self.w + float(self.y @ self.y)

    def is_boundary(self, tol: float = BOUNDARY_TOL) -> bool:
        return abs(self.norm2() - 1.0) <= tol

    def as_array(self) -> np.ndarray:
        return np.concatenate(([self.w], self.y))


@dataclass(frozen=True, eq=False)
class UpperHalfPoint:
    z: float
    x: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "z", float(self.z))
        x = np.array(self.x, dtype=float).reshape(-1)
        x.setflags(write=False)
        object.__setattr__(self, "x", x)

    @property
    def n(self) -> int:
        return len(self.x) - 1

    def is_boundary(self, tol: float = BOUNDARY_TOL) -> bool:
        return abs(self.z) <= tol

    def paravector(self) -> Multivector:
        """The boundary point as a paravector (the height is dropped)."""
        return Multivector.paravector(sig0(self.n), self.x)

    @classmethod
    def from_paravector(cls, v: Multivector) -> "UpperHalfPoint":
        return cls(0.0, v.paravector_components())

    def as_array(self) -> np.ndarray:
        return np.concatenate(([self.z], self.x))


def as_boundary_value(p):
    """UpperHalfPoint on the boundary, or INF, to a paravector-or-INF."""
    if p is INF:
        return INF
    if isinstance(p, Multivector):
        return p
    return p.paravector()


# -- the model maps -----------------------------------------------------------

def pi1(p: MinkowskiPoint, tol: float = cl.RESIDUAL_TOL) -> BallPoint:
    """Hyperboloid (p|p) = 1, T > 0, to the unit ball."""
    if not p.T > 0 or abs(mk.minkowski_inner(p, p) - 1.0) > tol * max(1.0, p.T * p.T):
        raise DomainError("point is not on the upper sheet of the hyperboloid")
    return BallPoint(p.Z / (1.0 + p.T), p.X / (1.0 + p.T))


def pi1_boundary(p: MinkowskiPoint, tol: float = cl.RESIDUAL_TOL) -> BallPoint:
    """Future light cone to the unit sphere, constant on rays."""
    if not mk.is_on_light_cone(p, tol):
        raise DomainError("point is not on the future light cone")
    return BallPoint(p.Z / p.T, p.X / p.T)


def pi2(W: BallPoint):
    """Ball to upper half-space; the north pole w = 1 goes to INF."""
    r2 = W.norm2()
    den = 1.0 - 2.0 * W.w + r2
    if den <= lp.ZERO_TOL:
        return INF
    return UpperHalfPoint(max(0.0, 1.0 - r2) / den, 2.0 * W.y / den)


def pi2_boundary(W: BallPoint):
    """Stereographic projection x = y / (1 - w) of the unit sphere."""
    if 1.0 - W.w <= lp.ZERO_TOL:
        return INF
    return UpperHalfPoint(0.0, W.y / (1.0 - W.w))


def boundary_point(p: MinkowskiPoint):
    """pi2_boundary(pi1_boundary(p)) for a light-cone point."""
    return pi2_boundary(pi1_boundary(p))


def hyperbolic_point(p: MinkowskiPoint):
    return pi2(pi1(p))


def boundary_center(k: LipschitzSpinor):
    """Centre of the horosphere of k, computed through the model maps.

    The result is checked against the spinor ratio xi eta^-1.
    """
    via_models = as_boundary_value(boundary_point(mk.basepoint(k)))
    direct = k.ratio()
    if (via_models is INF) != (direct is INF):
        raise ArithmeticError("pipeline and spinor ratio disagree about infinity")
    if direct is not INF:
        err = cl.relative_error(via_models, direct)
        if err > 1e-8:
            raise ArithmeticError(f"pipeline and spinor ratio disagree ({err:.3g})")
    return via_models


# -- decorated horospheres ----------------------------------------------------

def normalize(v: Multivector) -> Multivector:
    return v * (1.0 / v.magnitude())


@dataclass(frozen=True, eq=False)
class HoroPlane:
    """Horizontal plane z = height, centred at infinity."""

    height: float
    decorations: tuple

    kind = "plane"

    @property
    def center(self):
        return INF

    def contains(self, p: UpperHalfPoint, tol: float = 1e-9) -> bool:
        return abs(p.z - self.height) <= tol * max(1.0, self.height)


@dataclass(frozen=True, eq=False)
class HoroSphere:
    """Euclidean sphere tangent to the boundary at ``center``."""

    center: Multivector
    diameter: float
    decorations: tuple

    kind = "sphere"

    def contains(self, p: UpperHalfPoint, tol: float = 1e-9) -> bool:
        r = 0.5 * self.diameter
        offset = np.concatenate(([p.z - r], p.x - self.center.paravector_components()))
        return abs(float(np.linalg.norm(offset)) - r) <= tol * max(1.0, r)


DecoratedHorosphere = HoroPlane | HoroSphere


def horosphere(k: LipschitzSpinor):
    """Decorated horosphere of a spinor, in upper half-space normal form."""
    gens = [Multivector.generator(k.sig, j) for j in range(1, k.n + 1)]
    if lp._is_zero(k.eta):
        decs = tuple(normalize(cl.paravector_part(k.xi * g * k.xi.reverse())) for g in gens)
        return HoroPlane(cl.norm(k.xi), decs)
    eta_bar = k.eta.conjugate()
    eta_inv = cl.inverse(k.eta)
    decs = tuple(normalize(cl.paravector_part(k.eta.grade_involution() * g * eta_bar)) for g in gens)
    center = cl.paravector_part(k.xi * eta_inv)
    return HoroSphere(center, 1.0 / cl.norm(k.eta), decs)


def horosphere_lightcone_point(h) -> MinkowskiPoint:
    """Light-cone point p whose horosphere {(x|p) = 1} is h."""
    if isinstance(h, HoroPlane):
        return MinkowskiPoint(h.height, h.height, np.zeros(len(h.decorations) + 1))
    c = h.center
    c2 = cl.norm(c)
    d = h.diameter
    return MinkowskiPoint((c2 + 1.0) / d, (c2 - 1.0) / d, 2.0 * c.paravector_components() / d)


def hyperboloid_base(k: LipschitzSpinor) -> MinkowskiPoint:
    """A point q on the hyperboloid with (q | phi_1(k)) = 1.

    Built as q = p/2 + r/(p|r) with r = phi_1 of the complement spinor.
    """
    p = mk.basepoint(k)
    r = mk.basepoint(k.complement())
    return p * 0.5 + r * (1.0 / mk.minkowski_inner(p, r))


def horosphere_orbit_point(k: LipschitzSpinor, v: Multivector) -> MinkowskiPoint:
    """Image of the base point under the parabolic translation by v."""
    return mk.act_minkowski(lp.parabolic_translation(k, v), hyperboloid_base(k))


def on_horosphere(x: MinkowskiPoint, k: LipschitzSpinor, tol: float = cl.RESIDUAL_TOL) -> bool:
    """Membership in phi_2(phi_1(k)): (x|x) = 1 and (x|p) = 1."""
    p = mk.basepoint(k)
    scale = max(1.0, x.T * x.T)
    return (abs(mk.minkowski_inner(x, x) - 1.0) <= tol * scale
            and abs(mk.minkowski_inner(x, p) - 1.0) <= tol * max(1.0, x.T * p.T))


def upper_to_ball(p: UpperHalfPoint) -> BallPoint:
    """Inverse of pi2 on interior points.

    pi2 is the inversion in the sphere of radius sqrt(2) about the north pole
    followed by z -> -z, so its inverse undoes those two steps.
    """
    v = np.concatenate(([-p.z], p.x))
    d = v.copy()
    d[0] -= 1.0
    out = 2.0 * d / float(d @ d)
    out[0] += 1.0
    return BallPoint(out[0], out[1:])


def ball_to_hyperboloid(W: BallPoint) -> MinkowskiPoint:
    r2 = W.norm2()
    if r2 >= 1.0:
        raise DomainError("ball point is not interior")
    return MinkowskiPoint((1.0 + r2) / (1.0 - r2), 2.0 * W.w / (1.0 - r2), 2.0 * W.y / (1.0 - r2))


def push_tangent(q: MinkowskiPoint, u: MinkowskiPoint):
    """Differential of pi2 o pi1 at q applied to u.

    Returns the image point and the image tangent vector, both as
    (z; x0..xn) arrays in upper half-space.
    """
    T, rest = q.T, q.as_array()[1:]
    dT, drest = u.T, u.as_array()[1:]
    W = rest / (1.0 + T)
    dW = drest / (1.0 + T) - rest * dT / (1.0 + T) ** 2
    den = 1.0 - 2.0 * W[0] + float(W @ W)
    dden = -2.0 * dW[0] + 2.0 * float(W @ dW)
    f = np.concatenate(([1.0 - float(W @ W)], 2.0 * W[1:])) / den
    df = np.concatenate(([-2.0 * float(W @ dW)], 2.0 * dW[1:])) / den - f * (dden / den)
    return f, df


def top_point(h) -> UpperHalfPoint:
    """Highest point of a sphere, or the point above the origin on a plane."""
    if isinstance(h, HoroPlane):
        return UpperHalfPoint(h.height, np.zeros(len(h.decorations) + 1))
    return UpperHalfPoint(h.diameter, h.center.paravector_components())


def decorations_from_flags(k: LipschitzSpinor):
    """Decorations read off the multiflag of k at the top of its horosphere.

    Each flag half-plane span{p, v_j} meets the tangent space of the
    horosphere at q in the direction v_j - (v_j|q) p; that direction is
    pushed into upper half-space and normalised.  This does not use the
    closed-form decoration formulas, so it serves as a check on them.
    """
    p = mk.basepoint(k)
    sig = k.sig
    h = horosphere(k)
    q = ball_to_hyperboloid(upper_to_ball(top_point(h)))
    out = []
    for v in mk.multiflag(k).vectors:
        u = v - p * mk.minkowski_inner(v, q)
        _, du = push_tangent(q, u)
        out.append(normalize(Multivector.paravector(sig, du[1:])))
    return tuple(out)


# -- decoration transport under generators -------------------------------------

@dataclass(frozen=True, eq=False)
class Generator:
    """One of A1(V) = [[1,V],[0,1]], A2 = [[0,-1],[1,0]], A3(a) = diag(a, a*^-1)."""

    kind: str
    param: Multivector | None = None
    n: int | None = None

    def matrix(self) -> CliffordMatrix:
        if self.kind == "A1":
            return lp.translation(self.param)
        if self.kind == "A2":
            return lp.inversion(self.n if self.param is None else self.param.sig.n)
        if self.kind == "A3":
            return lp.dilation(self.param)
        raise ValueError(f"unknown generator {self.kind!r}")


def transform_decoration(gen: Generator, D: Multivector) -> Multivector:
    if gen.kind == "A1":
        return D
    if gen.kind == "A2":
        return normalize(-D.conjugate())
    if gen.kind == "A3":
        a = gen.param
        return normalize(cl.paravector_part(a * D * a.reverse()))
    raise ValueError(f"unknown generator {gen.kind!r}")


# -- distances and the boundary action -------------------------------------------

def _as_lightcone(h) -> MinkowskiPoint:
    if isinstance(h, LipschitzSpinor):
        return mk.basepoint(h)
    if isinstance(h, MinkowskiPoint):
        return h
    return horosphere_lightcone_point(h)


def horosphere_distance(h1, h2) -> float:
    """Signed distance between two horospheres (negative if they overlap).

    Uses e^d = (p1|p2)/2 for their light-cone points.
    """
    p, q = _as_lightcone(h1), _as_lightcone(h2)
    ip = mk.minkowski_inner(p, q)
    if ip <= lp.ZERO_TOL * p.T * q.T:
        raise SharedCenter("horospheres share a centre")
    return math.log(ip / 2.0)


def mobius_boundary(m: CliffordMatrix, p):
    """Moebius action on a boundary point of U (UpperHalfPoint or INF)."""
    out = lp.mobius_apply(m, as_boundary_value(p))
    return INF if out is INF else UpperHalfPoint.from_paravector(out)


def boundary_points_close(a, b, tol: float = 1e-9) -> bool:
    a, b = as_boundary_value(a), as_boundary_value(b)
    if a is INF or b is INF:
        return a is b
    return cl.relative_error(a, b) <= tol


# -- geodesics ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Geodesic:
    start: object
    end: object

    def __post_init__(self):
        if boundary_points_close(self.start, self.end, 0.0):
            raise ValueError("geodesic endpoints coincide")


def geodesic_to_json(g: Geodesic) -> dict:
    return {"from": lp.point_to_json(as_boundary_value(g.start)),
            "to": lp.point_to_json(as_boundary_value(g.end))}


def geodesic_from_json(obj: dict, n: int) -> Geodesic:
    return Geodesic(lp.point_from_json(obj["from"], n), lp.point_from_json(obj["to"], n))


# -- JSON -------------------------------------------------------------------------

def _pv(v: Multivector) -> list:
    return [float(c) for c in v.paravector_components()]


def horosphere_to_json(h) -> dict:
    decs = [_pv(d) for d in h.decorations]
    if isinstance(h, HoroPlane):
        return {"kind": "plane", "height": h.height, "decorations": decs}
    return {"kind": "sphere", "center": _pv(h.center), "diameter": h.diameter, "decorations": decs}


def horosphere_from_json(obj: dict, n: int):
    s = sig0(n)
    decs = tuple(Multivector.paravector(s, d) for d in obj.get("decorations", []))
    if obj.get("kind") == "plane":
        return HoroPlane(float(obj["height"]), decs)
    if obj.get("kind") == "sphere":
        return HoroSphere(Multivector.paravector(s, obj["center"]), float(obj["diameter"]), decs)
    raise ValueError("horosphere kind must be 'plane' or 'sphere'")
