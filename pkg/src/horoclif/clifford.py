"""Dense Clifford algebra arithmetic over double-precision reals.

Elements of Cl_{p,q} are stored as coefficient vectors of length 2**n indexed
by blade bitmask: bit ``j - 1`` of the index is set when generator ``i_j`` is
present in the (sorted) monomial.  Generators ``i_1 .. i_p`` square to +1 and
``i_{p+1} .. i_n`` square to -1.  Everything above this module works in
Cl_{0,n}.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

HARD_DIM_CAP = 12

#: membership tests accept an absolute residual of RESIDUAL_TOL * max(1, magnitude)
RESIDUAL_TOL = 1e-9

_TAYLOR_TERMS = 20
_TAYLOR_RADIUS = 0.5


class CliffordError(ValueError):
    pass


class SignatureMismatch(CliffordError):
    pass


class NonInvertible(CliffordError):
    pass


class DimensionCapExceeded(CliffordError):
    pass


def dim_cap() -> int:
    """Largest admissible number of generators (``HOROCLIF_DIM_CAP``, at most 12)."""
    raw = os.environ.get("HOROCLIF_DIM_CAP")
    if raw is None:
        return HARD_DIM_CAP
    return max(0, min(int(raw), HARD_DIM_CAP))


@dataclass(frozen=True)
class Signature:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise CliffordError(f"negative signature ({self.p}, {self.q})")
        if self.p + self.q > dim_cap():
            raise DimensionCapExceeded(
                f"n = {self.p + self.q} exceeds dimension cap {dim_cap()}")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def dim(self) -> int:
        return 1 << self.n


def sig0(n: int) -> Signature:
    return Signature(0, n)


# -- blade tables -------------------------------------------------------------

def _popcount(x: int) -> int:
    return bin(x).count("1")


@lru_cache(maxsize=None)
def _degrees(n: int) -> np.ndarray:
    deg = np.array([_popcount(k) for k in range(1 << n)], dtype=np.int64)
    deg.setflags(write=False)
    return deg


def blade_sign(a: int, b: int, p: int) -> int:
    """Sign of ``i_A i_B`` relative to the sorted blade ``i_{A xor B}``.

    Counts the transpositions needed to merge the two sorted monomials and
    multiplies in the metric sign of every generator that squares away.
    """
    swaps = 0
    x = a >> 1
    while x:
        swaps += _popcount(x & b)
        x >>= 1
    sign = -1 if swaps & 1 else 1
    common = a & b
    neg_mask = ~((1 << p) - 1)
    if _popcount(common & neg_mask) & 1:
        sign = -sign
    return sign


def _popcount_array(x: np.ndarray) -> np.ndarray:
    out = np.zeros_like(x)
    while np.any(x):
        out += x & 1
        x = x >> 1
    return out


@lru_cache(maxsize=None)
def _product_tables(p: int, q: int):
    n = p + q
    idx = np.arange(1 << n, dtype=np.int64)
    a, b = idx[:, None], idx[None, :]
    swaps = np.zeros((idx.size, idx.size), dtype=np.int64)
    for shift in range(1, n):
        swaps += _popcount_array((a >> shift) & b)
    neg = _popcount_array((a & b) >> p)
    signs = np.where((swaps + neg) % 2 == 0, 1.0, -1.0)
    xor = (a ^ b).ravel()
    xor.setflags(write=False)
    signs.setflags(write=False)
    return xor, signs


@lru_cache(maxsize=None)
def involution_signs(n: int, kind: str) -> np.ndarray:
    """Per-blade sign of an involution: ``grade``, ``reverse`` or ``conjugate``."""
    d = _degrees(n)
    if kind == "grade":
        e = d
    elif kind == "reverse":
        e = d * (d - 1) // 2
    elif kind == "conjugate":
        e = d * (d + 1) // 2
    else:
        raise ValueError(f"unknown involution {kind!r}")
    s = np.where(e % 2 == 0, 1.0, -1.0)
    s.setflags(write=False)
    return s


def blade_key(k: int) -> str:
    return ",".join(str(j + 1) for j in range(k.bit_length()) if k >> j & 1)


def parse_blade_key(key: str) -> int:
    key = key.strip()
    if not key:
        return 0
    mask = 0
    for tok in key.split(","):
        j = int(tok)
        if j < 1:
            raise CliffordError(f"bad generator index in blade key {key!r}")
        bit = 1 << (j - 1)
        if mask & bit:
            raise CliffordError(f"repeated generator in blade key {key!r}")
        mask |= bit
    return mask


# -- multivectors -------------------------------------------------------------

class Multivector:
    """An immutable element of Cl_{p,q}."""

    __slots__ = ("sig", "coeffs")

    def __init__(self, sig: Signature, coeffs):
        arr = np.array(coeffs, dtype=np.float64)
        if arr.shape != (sig.dim,):
            raise CliffordError(
                f"expected {sig.dim} coefficients for n={sig.n}, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise CliffordError("non-finite coefficient")
        arr.setflags(write=False)
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # constructors

    @classmethod
    def zero(cls, sig: Signature) -> "Multivector":
        return cls(sig, np.zeros(sig.dim))

    @classmethod
    def scalar(cls, sig: Signature, value: float) -> "Multivector":
        c = np.zeros(sig.dim)
        c[0] = value
        return cls(sig, c)

    @classmethod
    def blade(cls, sig: Signature, *gens: int, coeff: float = 1.0) -> "Multivector":
        """The monomial ``coeff * i_{g1} i_{g2} ...`` in the given generator order."""
        out = cls.scalar(sig, coeff)
        for g in gens:
            if not 1 <= g <= sig.n:
                raise CliffordError(f"generator i_{g} not in n={sig.n}")
            out = out * cls.generator(sig, g)
        return out

    @classmethod
    def generator(cls, sig: Signature, j: int) -> "Multivector":
        c = np.zeros(sig.dim)
        c[1 << (j - 1)] = 1.0
        return cls(sig, c)

    @classmethod
    def paravector(cls, sig: Signature, components) -> "Multivector":
        """Build ``V_0 + V_1 i_1 + ... + V_n i_n`` from ``n + 1`` components."""
        comps = np.asarray(components, dtype=np.float64)
        if comps.shape != (sig.n + 1,):
            raise CliffordError(f"paravector needs {sig.n + 1} components")
        c = np.zeros(sig.dim)
        c[0] = comps[0]
        for j in range(sig.n):
            c[1 << j] = comps[j + 1]
        return cls(sig, c)

    # structure

    @property
    def n(self) -> int:
        return self.sig.n

    def _coerce(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            if other.sig != self.sig:
                raise SignatureMismatch(f"{self.sig} vs {other.sig}")
            return other
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Multivector.scalar(self.sig, float(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Multivector(self.sig, self.coeffs + o.coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Multivector(self.sig, self.coeffs - o.coeffs)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Multivector(self.sig, o.coeffs - self.coeffs)

    def __neg__(self):
        return Multivector(self.sig, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Multivector(self.sig, self.coeffs * float(other))
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Multivector(self.sig, self.coeffs * float(other))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Multivector(self.sig, self.coeffs / float(other))
        if isinstance(other, Multivector):
            return self * inverse(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.sig == other.sig and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.sig, self.coeffs.tobytes()))

    def __repr__(self):
        terms = []
        for k in np.nonzero(self.coeffs)[0]:
            key = blade_key(int(k))
            name = "".join(f"i{j}" for j in key.split(",")) if key else ""
            terms.append(f"{self.coeffs[k]:+.6g}{name}")
        body = " ".join(terms) if terms else "0"
        return f"Multivector(Cl{self.sig.p},{self.sig.q}: {body})"

    # convenience wrappers around the module functions

    def grade_involution(self) -> "Multivector":
        return involution(self, "grade")

    def reverse(self) -> "Multivector":
        return involution(self, "reverse")

    def conjugate(self) -> "Multivector":
        return involution(self, "conjugate")

    @property
    def real(self) -> float:
        return float(self.coeffs[0])

    def magnitude(self) -> float:
        """Euclidean norm of the coefficient vector."""
        return float(np.linalg.norm(self.coeffs))

    def is_zero(self, tol: float = RESIDUAL_TOL) -> bool:
        return self.magnitude() <= tol

    def paravector_components(self) -> np.ndarray:
        """``(V_0, V_1, ..., V_n)``; blades of degree >= 2 are ignored."""
        out = np.empty(self.n + 1)
        out[0] = self.coeffs[0]
        for j in range(self.n):
            out[j + 1] = self.coeffs[1 << j]
        return out


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    if a.sig != b.sig:
        raise SignatureMismatch(f"{a.sig} vs {b.sig}")
    xor, signs = _product_tables(a.sig.p, a.sig.q)
    terms = (signs * np.outer(a.coeffs, b.coeffs)).ravel()
    return Multivector(a.sig, np.bincount(xor, weights=terms, minlength=a.sig.dim))


def naive_product(a: Multivector, b: Multivector) -> Multivector:
    """Reference product that multiplies monomials generator by generator.

    Each pair of blades is written out as a word in the generators and
    reduced with the defining relations one adjacent swap at a time.  Slow,
    and kept only as an independent check on ``geometric_product``.
    """
    if a.sig != b.sig:
        raise SignatureMismatch(f"{a.sig} vs {b.sig}")
    p, n = a.sig.p, a.sig.n
    out = np.zeros(a.sig.dim)
    for ka in np.nonzero(a.coeffs)[0]:
        for kb in np.nonzero(b.coeffs)[0]:
            word = [j for j in range(n) if ka >> j & 1] + [j for j in range(n) if kb >> j & 1]
            sign = 1.0
            # bubble sort, cancelling equal neighbours as they meet
            changed = True
            while changed:
                changed = False
                i = 0
                while i < len(word) - 1:
                    if word[i] > word[i + 1]:
                        word[i], word[i + 1] = word[i + 1], word[i]
                        sign = -sign
                        changed = True
                    elif word[i] == word[i + 1]:
                        sign *= 1.0 if word[i] < p else -1.0
                        del word[i:i + 2]
                        changed = True
                        continue
                    i += 1
            k = 0
            for j in word:
                k |= 1 << j
            out[k] += sign * a.coeffs[ka] * b.coeffs[kb]
    return Multivector(a.sig, out)


def involution(a: Multivector, kind: str) -> Multivector:
    """Apply the grade involution, reversion or Clifford conjugation."""
    return Multivector(a.sig, a.coeffs * involution_signs(a.n, kind))


def grade_project(a: Multivector, d: int) -> Multivector:
    keep = _degrees(a.n) == d
    return Multivector(a.sig, np.where(keep, a.coeffs, 0.0))


def real_part(a: Multivector) -> float:
    return float(a.coeffs[0])


def _tolerance(magnitude: float, tol: float) -> float:
    return tol * max(1.0, magnitude)


def non_paravector_residual(a: Multivector) -> float:
    return float(np.linalg.norm(a.coeffs[_degrees(a.n) >= 2]))


def is_paravector(a: Multivector, tol: float = RESIDUAL_TOL) -> bool:
    return non_paravector_residual(a) <= _tolerance(a.magnitude(), tol)


def paravector_part(a: Multivector) -> Multivector:
    return Multivector(a.sig, np.where(_degrees(a.n) <= 1, a.coeffs, 0.0))


def is_real(a: Multivector, tol: float = RESIDUAL_TOL) -> bool:
    """True when every non-scalar coefficient vanishes within tolerance."""
    return float(np.linalg.norm(a.coeffs[1:])) <= _tolerance(a.magnitude(), tol)


def norm(a: Multivector) -> float:
    """N(a) = Re(a conj(a))."""
    return real_part(a * a.conjugate())


def dot(a: Multivector, b: Multivector) -> float:
    """a . b = Re(a conj(b))."""
    if a.sig != b.sig:
        raise SignatureMismatch(f"{a.sig} vs {b.sig}")
    return real_part(a * b.conjugate())


# Two readings of "N(s) is a nonzero real" for Lipschitz membership.

def norm_scalar_nonzero(a: Multivector, tol: float = RESIDUAL_TOL) -> bool:
    """Only the scalar part Re(a conj(a)) is required to be nonzero."""
    return abs(norm(a)) > _tolerance(a.magnitude() ** 2, tol)


def norm_fully_real_nonzero(a: Multivector, tol: float = RESIDUAL_TOL) -> bool:
    """The whole product a conj(a) must be a nonzero real number."""
    aa = a * a.conjugate()
    return is_real(aa, tol) and abs(aa.real) > _tolerance(a.magnitude() ** 2, tol)


def inverse(a: Multivector, tol: float = RESIDUAL_TOL) -> Multivector:
    """``conj(a) / (a conj(a))``, defined only when ``a conj(a)`` is a nonzero real."""
    abar = a.conjugate()
    aa = a * abar
    scale = max(a.magnitude() ** 2, 1e-300)
    if float(np.linalg.norm(aa.coeffs[1:])) > tol * max(1.0, scale):
        raise NonInvertible(f"a conj(a) is not real: {aa!r}")
    if abs(aa.real) <= tol * scale or aa.real == 0.0:
        raise NonInvertible("a conj(a) vanishes")
    return abar / aa.real


def coefficient_norm1(a: Multivector) -> float:
    return float(np.abs(a.coeffs).sum())


def exp_series(x: Multivector, terms: int = _TAYLOR_TERMS) -> Multivector:
    """Taylor series exponential with scaling and squaring.

    The argument is halved until its coefficient 1-norm (which is
    submultiplicative for the blade product) is at most 0.5.
    """
    size = coefficient_norm1(x)
    squarings = 0
    if size > _TAYLOR_RADIUS:
        squarings = int(math.ceil(math.log2(size / _TAYLOR_RADIUS)))
    y = x / float(2 ** squarings)
    term = Multivector.scalar(x.sig, 1.0)
    total = term
    for k in range(1, terms + 1):
        term = (term * y) / k
        total = total + term
    for _ in range(squarings):
        total = total * total
    return total


def exponential(x: Multivector) -> Multivector:
    """exp(x), via the closed forms whenever x squares to a real number.

    For x**2 = -t**2 this is ``cos t + x sin(t)/t``; for x**2 = +t**2 it is
    ``cosh t + x sinh(t)/t``.  Homogeneous blades of degree 1, 2 mod 4 square
    negatively and those of degree 0, 3 mod 4 positively.  Anything else goes
    through the series.
    """
    sq = x * x
    if x.magnitude() == 0.0:
        return Multivector.scalar(x.sig, 1.0)
    if not is_real(sq, 1e-13):
        return exp_series(x)
    s = sq.real
    t = math.sqrt(abs(s))
    if t == 0.0:
        return x + 1.0
    if s < 0:
        return x * (math.sin(t) / t) + math.cos(t)
    return x * (math.sinh(t) / t) + math.cosh(t)


def relative_error(a: Multivector, b: Multivector) -> float:
    """``|a - b| / max(1, |b|)`` on coefficient vectors."""
    return float(np.linalg.norm(a.coeffs - b.coeffs)) / max(1.0, b.magnitude())


# -- wire form ----------------------------------------------------------------

def to_json(a: Multivector) -> dict:
    coeffs = {blade_key(int(k)): float(a.coeffs[k]) for k in np.nonzero(a.coeffs)[0]}
    return {"p": a.sig.p, "q": a.sig.q, "coeffs": coeffs}


def from_json(obj: dict) -> Multivector:
    sig = Signature(int(obj.get("p", 0)), int(obj["q"]))
    c = np.zeros(sig.dim)
    for key, val in obj.get("coeffs", {}).items():
        k = parse_blade_key(key)
        if k >= sig.dim:
            raise CliffordError(f"blade {key!r} outside Cl{sig.p},{sig.q}")
        c[k] = float(val)
    return Multivector(sig, c)
