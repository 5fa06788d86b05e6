"""Lipschitz elements, two-component Lipschitz spinors and Clifford matrices.

Everything here lives over Cl_{0,n}.  A Lipschitz element is a product of
invertible paravectors; zero is admitted separately wherever the monoid is
needed (spinor components, matrix entries).  Points of the extended paravector
space are either a paravector ``Multivector`` or the ``INF`` sentinel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import clifford as cl
from .clifford import Multivector, Signature, sig0

#: magnitude below which a denominator is treated as zero
ZERO_TOL = 1e-12

#: paravector factors with N(V) below this are redrawn by the random generators
MIN_FACTOR_NORM = 1e-3

_MAX_WORD = 8


class InvalidSpinor(ValueError):
    def __init__(self, clause: str):
        super().__init__(clause)
        self.clause = clause


class InvalidMatrix(ValueError):
    def __init__(self, clause: str):
        super().__init__(clause)
        self.clause = clause


class NotLipschitz(ValueError):
    pass


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

ParavectorPoint = Union[Multivector, _Infinity]


def is_infinite(v) -> bool:
    return v is INF


def _is_zero(x: Multivector) -> bool:
    return x.magnitude() <= ZERO_TOL


# -- membership ---------------------------------------------------------------

def basis_paravectors(sig: Signature):
    yield Multivector.scalar(sig, 1.0)
    for j in range(1, sig.n + 1):
        yield Multivector.generator(sig, j)


def sigma(x: Multivector, y: Multivector) -> Multivector:
    """The action sigma(x)(y) = x y x*."""
    return x * y * x.reverse()


def is_lipschitz(x: Multivector, tol: float = cl.RESIDUAL_TOL) -> bool:
    """Membership in the paravector Lipschitz group.

    ``x conj(x)`` must be a nonzero real (the whole product, not only its
    scalar part), and ``sigma(x)`` must keep each basis paravector inside the
    paravector subspace; real-linearity of sigma makes the basis enough.
    """
    if x.sig.p != 0:
        raise ValueError("Lipschitz elements live in Cl_{0,n}")
    if not cl.norm_fully_real_nonzero(x, tol):
        return False
    return all(cl.is_paravector(sigma(x, v), tol) for v in basis_paravectors(x.sig))


def is_lipschitz_or_zero(x: Multivector, tol: float = cl.RESIDUAL_TOL) -> bool:
    return _is_zero(x) or is_lipschitz(x, tol)


def as_lipschitz(x: Multivector) -> Multivector:
    if not is_lipschitz(x):
        raise NotLipschitz(repr(x))
    return x


def modulus(x: Multivector) -> float:
    """|x| = sqrt(N(x)); in Cl_{0,n} this is the coefficient 2-norm."""
    return x.magnitude()


# -- spinors ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LipschitzSpinor:
    """A pair (xi, eta) of Lipschitz-monoid elements with xi conj(eta) a paravector.

    Build through :func:`validate_spinor`; the bare constructor trusts its
    input and is used for values produced by spinor-preserving operations.
    """

    xi: Multivector
    eta: Multivector

    @property
    def n(self) -> int:
        return self.xi.n

    @property
    def sig(self) -> Signature:
        return self.xi.sig

    def norm2(self) -> float:
        """|kappa|^2 = N(xi) + N(eta)."""
        return cl.norm(self.xi) + cl.norm(self.eta)

    def ratio(self) -> ParavectorPoint:
        return ratio(self)

    def complement(self) -> "LipschitzSpinor":
        return complement(self)

    def __neg__(self):
        return LipschitzSpinor(-self.xi, -self.eta)

    def times(self, a) -> "LipschitzSpinor":
        """Right multiplication (xi a, eta a) by a real or a Lipschitz element."""
        return LipschitzSpinor(self.xi * a, self.eta * a)

    def __iter__(self):
        yield self.xi
        yield self.eta

    def __repr__(self):
        return f"LipschitzSpinor(xi={self.xi!r}, eta={self.eta!r})"


def _pair(k):
    if isinstance(k, LipschitzSpinor):
        return k.xi, k.eta
    x, y = k
    return x, y


def spinor_residuals(xi: Multivector, eta: Multivector) -> str | None:
    """Name of the first failing spinor clause, or None when (xi, eta) is valid."""
    if xi.sig != eta.sig:
        return "signature mismatch"
    if xi.sig.p != 0:
        return "components must lie in Cl_{0,n}"
    if _is_zero(xi) and _is_zero(eta):
        return "both components zero"
    for name, comp in (("xi", xi), ("eta", eta)):
        if not is_lipschitz_or_zero(comp):
            return f"{name} not in the Lipschitz monoid"
    if not cl.is_paravector(xi * eta.conjugate()):
        return "xi*conj(eta) not paravector"
    return None


def validate_spinor(xi: Multivector, eta: Multivector) -> LipschitzSpinor:
    clause = spinor_residuals(xi, eta)
    if clause is not None:
        raise InvalidSpinor(clause)
    return LipschitzSpinor(xi, eta)


def elementary_spinor(n: int, xi=1.0, eta=0.0) -> LipschitzSpinor:
    """Spinor with real or given components, e.g. ``elementary_spinor(n, 0, 1)``."""
    s = sig0(n)

    def lift(v):
        return v if isinstance(v, Multivector) else Multivector.scalar(s, float(v))

    return validate_spinor(lift(xi), lift(eta))


def ratio(k: LipschitzSpinor) -> ParavectorPoint:
    """xi eta^{-1} as a point of the extended paravector space."""
    if _is_zero(k.eta):
        return INF
    return cl.paravector_part(k.xi * cl.inverse(k.eta))


def bracket(k1, k2) -> Multivector:
    """{k1, k2} = xi1* eta2 - eta1* xi2."""
    x1, y1 = _pair(k1)
    x2, y2 = _pair(k2)
    return x1.reverse() * y2 - y1.reverse() * x2


def hermitian_form(k1, k2) -> Multivector:
    """<k1, k2> = conj(x1) x2 + conj(y1) y2."""
    x1, y1 = _pair(k1)
    x2, y2 = _pair(k2)
    return x1.conjugate() * x2 + y1.conjugate() * y2


def inner_product(d1, d2) -> float:
    return hermitian_form(d1, d2).real


def complement(k) -> LipschitzSpinor:
    """The complement (eta', -xi')."""
    x, y = _pair(k)
    out = (y.grade_involution(), -x.grade_involution())
    if isinstance(k, LipschitzSpinor):
        return LipschitzSpinor(*out)
    return out


def pair_add(u, v):
    (a, b), (c, d) = _pair(u), _pair(v)
    return (a + c, b + d)


def pair_scale(u, t: float):
    a, b = _pair(u)
    return (a * t, b * t)


def pair_rmul(u, x: Multivector):
    a, b = _pair(u)
    return (a * x, b * x)


def tangent_decomposition(k: LipschitzSpinor, v):
    """Coefficients (x, y) with v = kappa x + complement(kappa) y."""
    a, b = _pair(v)
    n2 = k.norm2()
    x = (k.xi.conjugate() * a + k.eta.conjugate() * b) / n2
    y = (k.eta.reverse() * a - k.xi.reverse() * b) / n2
    return x, y


def tangent_vector(k: LipschitzSpinor, bi: Multivector, v: Multivector):
    """kappa B + complement(kappa) V for a bi-paravector B and paravector V."""
    return pair_add(pair_rmul(k, bi), pair_rmul(complement(k), v))


def is_tangent(k: LipschitzSpinor, v, tol: float = cl.RESIDUAL_TOL) -> bool:
    """Tangency test a conj(eta) + xi conj(b) in the paravectors."""
    a, b = _pair(v)
    return cl.is_paravector(a * k.eta.conjugate() + k.xi * b.conjugate(), tol)


# -- Clifford matrices --------------------------------------------------------

FLAVORS = ("SL", "GL", "GL0")


@dataclass(frozen=True, eq=False)
class CliffordMatrix:
    """2x2 matrix [[a, b], [c, d]] over the Lipschitz monoid.

    ``flavor`` is ``"SL"`` (pdet = 1), ``"GL"`` (pdet nonzero real) or
    ``"GL0"`` (pdet any real, used for light-cone matrices).
    """

    a: Multivector
    b: Multivector
    c: Multivector
    d: Multivector
    flavor: str = "SL"

    @property
    def sig(self) -> Signature:
        return self.a.sig

    @property
    def n(self) -> int:
        return self.a.n

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def pdet(self) -> Multivector:
        return pseudo_determinant(self)

    def dagger(self) -> "CliffordMatrix":
        """Conjugate transpose."""
        return CliffordMatrix(self.a.conjugate(), self.c.conjugate(),
                              self.b.conjugate(), self.d.conjugate(), self.flavor)

    def __matmul__(self, other):
        if isinstance(other, CliffordMatrix):
            flavor = self.flavor if self.flavor == other.flavor else "GL0"
            return CliffordMatrix(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
                flavor)
        if isinstance(other, LipschitzSpinor):
            return act_on_spinor(self, other)
        return NotImplemented

    def inverse(self) -> "CliffordMatrix":
        """[[d*, -b*], [-c*, a*]], valid for SL matrices."""
        if self.flavor != "SL":
            raise InvalidMatrix("closed-form inverse needs an SL matrix")
        return CliffordMatrix(self.d.reverse(), -self.b.reverse(),
                              -self.c.reverse(), self.a.reverse(), "SL")

    def __repr__(self):
        return (f"CliffordMatrix({self.flavor}, a={self.a!r}, b={self.b!r}, "
                f"c={self.c!r}, d={self.d!r})")


def pseudo_determinant(m: CliffordMatrix) -> Multivector:
    """pdet = a* d - c* b."""
    return m.a.reverse() * m.d - m.c.reverse() * m.b


def _mag(*xs: Multivector) -> float:
    return max(x.magnitude() for x in xs)


def matrix_residuals(a, b, c, d, flavor: str) -> str | None:
    if flavor not in FLAVORS:
        return f"unknown flavor {flavor!r}"
    sig = a.sig
    if any(x.sig != sig for x in (b, c, d)):
        return "signature mismatch"
    for name, x in zip("abcd", (a, b, c, d)):
        if not is_lipschitz_or_zero(x):
            return f"entry {name} not in the Lipschitz monoid"
    for name, (x, y) in (("row 1", (a, b)), ("row 2", (c, d)),
                         ("column 1", (a, c)), ("column 2", (b, d))):
        if _is_zero(x) and _is_zero(y) and flavor != "GL0":
            return f"{name} is zero"
    # defining condition: a b*, c d*, c* a, d* b are paravectors
    for label, prod in (("a b*", a * b.reverse()), ("c d*", c * d.reverse()),
                        ("c* a", c.reverse() * a), ("d* b", d.reverse() * b)):
        if not cl.is_paravector(prod):
            return f"{label} not paravector"
    for name, (x, y) in (("column 1", (a, c)), ("column 2", (b, d))):
        if not cl.is_paravector(x * y.conjugate()):
            return f"{name} is not a Lipschitz spinor"
    pdet = a.reverse() * d - c.reverse() * b
    scale = max(1.0, _mag(a, b) * _mag(c, d), _mag(a, c) * _mag(b, d))
    tol = cl.RESIDUAL_TOL * scale
    if float(np.linalg.norm(pdet.coeffs[1:])) > tol:
        return "pseudo-determinant not real"
    if flavor == "SL":
        if abs(pdet.real - 1.0) > tol:
            return "pseudo-determinant is not 1"
        one = Multivector.scalar(sig, 1.0)
        for label, variant in (("a d* - b c*", a * d.reverse() - b * c.reverse()),
                               ("d a* - c b*", d * a.reverse() - c * b.reverse())):
            if (variant - one).magnitude() > tol:
                return f"variant pseudo-determinant {label} is not 1"
    elif flavor == "GL" and abs(pdet.real) <= tol:
        return "pseudo-determinant vanishes"
    return None


def validate_matrix(a, b, c, d, flavor: str = "SL") -> CliffordMatrix:
    clause = matrix_residuals(a, b, c, d, flavor)
    if clause is not None:
        raise InvalidMatrix(clause)
    return CliffordMatrix(a, b, c, d, flavor)


def identity(n: int) -> CliffordMatrix:
    s = sig0(n)
    one, zero = Multivector.scalar(s, 1.0), Multivector.zero(s)
    return CliffordMatrix(one, zero, zero, one, "SL")


def translation(v: Multivector) -> CliffordMatrix:
    """A_1(V) = [[1, V], [0, 1]]."""
    one, zero = Multivector.scalar(v.sig, 1.0), Multivector.zero(v.sig)
    return CliffordMatrix(one, v, zero, one, "SL")


def inversion(n: int) -> CliffordMatrix:
    """A_2 = [[0, -1], [1, 0]]."""
    s = sig0(n)
    one, zero = Multivector.scalar(s, 1.0), Multivector.zero(s)
    return CliffordMatrix(zero, -one, one, zero, "SL")


def dilation(x: Multivector) -> CliffordMatrix:
    """A_3(a) = [[a, 0], [0, a*^{-1}]]."""
    zero = Multivector.zero(x.sig)
    return CliffordMatrix(x, zero, zero, cl.inverse(x.reverse()), "SL")


def spinor_matrix(k: LipschitzSpinor) -> CliffordMatrix:
    """A_kappa = [kappa, -complement(kappa)/|kappa|^2], an SL matrix with first column kappa."""
    cx, cy = complement(k)
    n2 = k.norm2()
    return CliffordMatrix(k.xi, -cx / n2, k.eta, -cy / n2, "SL")


def transport_matrix(k1: LipschitzSpinor, k2: LipschitzSpinor) -> CliffordMatrix:
    """An SL matrix sending k1 to k2."""
    return spinor_matrix(k2) @ spinor_matrix(k1).inverse()


def mobius_apply(m: CliffordMatrix, v: ParavectorPoint) -> ParavectorPoint:
    """(a V + b)(c V + d)^{-1}, with infinity handled by limits."""
    if v is INF:
        if _is_zero(m.c):
            return INF
        return cl.paravector_part(m.a * cl.inverse(m.c))
    den = m.c * v + m.d
    if _is_zero(den):
        return INF
    return cl.paravector_part((m.a * v + m.b) * cl.inverse(den))


def act_on_spinor(m: CliffordMatrix, k: LipschitzSpinor) -> LipschitzSpinor:
    return LipschitzSpinor(m.a * k.xi + m.b * k.eta, m.c * k.xi + m.d * k.eta)


def parabolic_translation(k: LipschitzSpinor, v: Multivector) -> CliffordMatrix:
    """The parabolic translation P^kappa_V fixing kappa."""
    xi, eta = k.xi, k.eta
    xs, es = xi.reverse(), eta.reverse()
    return CliffordMatrix(1.0 - xi * v * es, xi * v * xs,
                          -(eta * v * es), 1.0 + eta * v * xs, "SL")


# -- Cayley-Dickson embedding -------------------------------------------------

def embed(x: Multivector) -> Multivector:
    """Include Cl_{0,n} in Cl_{0,n+1}."""
    up = sig0(x.n + 1)
    c = np.zeros(up.dim)
    c[:x.sig.dim] = x.coeffs
    return Multivector(up, c)


def split(w: Multivector):
    """Components (u, v) of w = u + i_{n+1} v, with u, v in Cl_{0,n}."""
    low = sig0(w.n - 1)
    half = low.dim
    u = Multivector(w.sig, np.concatenate([w.coeffs[:half], np.zeros(half)]))
    top = Multivector.generator(w.sig, w.n)
    v = -(top * (w - u))
    return Multivector(low, u.coeffs[:half]), Multivector(low, v.coeffs[:half])


def embed_pair(u: Multivector, v: Multivector) -> Multivector:
    top = Multivector.generator(sig0(u.n + 1), u.n + 1)
    return embed(u) + top * embed(v)


def cayley_embed(k1, k2):
    """Components of conj(z1) z2 where z = xi + i_{n+1} eta."""
    x1, y1 = _pair(k1)
    x2, y2 = _pair(k2)
    z1, z2 = embed_pair(x1, y1), embed_pair(x2, y2)
    return split(z1.conjugate() * z2)


# -- random generation --------------------------------------------------------

def random_paravector(n: int, rng: np.random.Generator, min_norm: float = MIN_FACTOR_NORM) -> Multivector:
    s = sig0(n)
    while True:
        v = Multivector.paravector(s, rng.standard_normal(n + 1))
        if cl.norm(v) >= min_norm:
            return v


def random_lipschitz(n: int, rng: np.random.Generator) -> Multivector:
    """Product of 1..n+1 random invertible paravectors.

    The product is rescaled to modulus e^u with u uniform in [-1/2, 1/2], so
    magnitudes stay O(1) however many factors are drawn.
    """
    k = int(rng.integers(1, n + 2))
    out = random_paravector(n, rng)
    for _ in range(k - 1):
        out = out * random_paravector(n, rng)
    return out * (math.exp(rng.uniform(-0.5, 0.5)) / modulus(out))


def random_spinor(n: int, rng: np.random.Generator) -> LipschitzSpinor:
    """(V g, g) or (g, V g) for a random paravector V and Lipschitz g.

    Rescaled so that |k|^2 = e^u with u uniform in [-1, 1].
    """
    g = random_lipschitz(n, rng)
    v = random_paravector(n, rng)
    k = LipschitzSpinor(v * g, g) if rng.random() < 0.5 else LipschitzSpinor(g, v * g)
    return k.times(math.exp(0.5 * rng.uniform(-1.0, 1.0)) / math.sqrt(k.norm2()))


def random_bi_paravector(n: int, rng: np.random.Generator) -> Multivector:
    s = sig0(n)
    deg = cl._degrees(n)
    return Multivector(s, np.where(deg <= 2, rng.standard_normal(s.dim), 0.0))


def random_sl2(n: int, rng: np.random.Generator) -> CliffordMatrix:
    """Random word of length 1..8 in the generators A_1(V), A_2, A_3(a)."""
    length = int(rng.integers(1, _MAX_WORD + 1))
    out = identity(n)
    for _ in range(length):
        pick = int(rng.integers(3))
        if pick == 0:
            g = translation(random_paravector(n, rng))
        elif pick == 1:
            g = inversion(n)
        else:
            a = random_lipschitz(n, rng)
            g = dilation(a / modulus(a) * float(np.exp(rng.uniform(-0.5, 0.5))))
        out = out @ g
    return out


# -- wire form ----------------------------------------------------------------

def spinor_to_json(k: LipschitzSpinor) -> dict:
    return {"n": k.n, "xi": cl.to_json(k.xi), "eta": cl.to_json(k.eta)}


def _component_from_json(obj, n):
    # accept a full multivector record or, when n is known, a bare coefficient map
    if isinstance(obj, dict) and "coeffs" not in obj and n is not None:
        obj = {"p": 0, "q": n, "coeffs": obj}
    return cl.from_json(obj)


def spinor_from_json(obj: dict) -> LipschitzSpinor:
    n = obj.get("n")
    xi, eta = _component_from_json(obj["xi"], n), _component_from_json(obj["eta"], n)
    if "n" in obj and (xi.n != obj["n"] or eta.n != obj["n"]):
        raise InvalidSpinor("component dimension does not match n")
    return validate_spinor(xi, eta)


def matrix_to_json(m: CliffordMatrix) -> dict:
    return {"n": m.n, "flavor": m.flavor,
            **{k: cl.to_json(x) for k, x in zip("abcd", m.entries())}}


def matrix_from_json(obj: dict) -> CliffordMatrix:
    entries = [cl.from_json(obj[k]) for k in "abcd"]
    return validate_matrix(*entries, obj.get("flavor", "SL"))


def point_to_json(v: ParavectorPoint):
    if v is INF:
        return "inf"
    return [float(x) for x in v.paravector_components()]


def point_from_json(obj, n: int) -> ParavectorPoint:
    if obj == "inf":
        return INF
    return Multivector.paravector(sig0(n), obj)
