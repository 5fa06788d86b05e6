"""Lambda lengths, 2x2 quasideterminants and the Ptolemy-type relations.

The lambda length between two spin-decorated horospheres is the bracket
of their spinors.  Relations among lambda lengths involve inverses, so
every check carries a conditioning value (the smallest lambda length that
was used) and refuses to report below ``DEGENERACY_THRESHOLD``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import clifford as cl
from . import lipschitz as lp
from .clifford import Multivector
from .lipschitz import LipschitzSpinor

DEGENERACY_THRESHOLD = 1e-3


class Degenerate(ValueError):
    def __init__(self, conditioning: float, what: str = "lambda length"):
        super().__init__(f"{what} too small to invert reliably (min magnitude {conditioning:.3g})")
        self.conditioning = conditioning


def lambda_length(k1, k2) -> Multivector:
    return lp.bracket(k1, k2)


# -- general inverses -------------------------------------------------------------

def left_matrix(x: Multivector) -> np.ndarray:
    """Real matrix of y -> x y on the 2^n coefficient vector."""
    dim = x.sig.dim
    cols = []
    for i in range(dim):
        e = np.zeros(dim)
        e[i] = 1.0
        cols.append((x * Multivector(x.sig, e)).coeffs)
    return np.column_stack(cols)


def general_inverse(x: Multivector, max_cond: float = 1e12) -> Multivector:
    """Inverse of any invertible multivector.

    Lipschitz elements use x^-1 = conj(x) / N(x); anything else is solved
    through the left-regular representation.
    """
    try:
        return cl.inverse(x)
    except cl.NonInvertible:
        pass
    m = left_matrix(x)
    if np.linalg.cond(m) > max_cond:
        raise cl.NonInvertible("multivector is singular")
    one = np.zeros(x.sig.dim)
    one[0] = 1.0
    return Multivector(x.sig, np.linalg.solve(m, one))


def _guarded_inverse(x: Multivector, what: str) -> Multivector:
    mag = x.magnitude()
    if mag < DEGENERACY_THRESHOLD:
        raise Degenerate(mag, what)
    return general_inverse(x)


# -- quasideterminants ------------------------------------------------------------

def quasideterminant(A, j: int, k: int) -> Multivector:
    """(j, k) quasideterminant of a 2x2 matrix ((a, b), (c, d)).

    |A|_11 = a - b d^-1 c,  |A|_12 = b - a c^-1 d,
    |A|_21 = c - d b^-1 a,  |A|_22 = d - c a^-1 b.
    """
    (a, b), (c, d) = A
    if (j, k) == (1, 1):
        return a - b * _guarded_inverse(d, "entry d") * c
    if (j, k) == (1, 2):
        return b - a * _guarded_inverse(c, "entry c") * d
    if (j, k) == (2, 1):
        return c - d * _guarded_inverse(b, "entry b") * a
    if (j, k) == (2, 2):
        return d - c * _guarded_inverse(a, "entry a") * b
    raise ValueError("quasideterminant indices must be 1 or 2")


def quasideterminant_by_inversion(A, j: int, k: int) -> Multivector:
    """|A|_jk = ((A^-1)_kj)^-1, with A^-1 taken in a real representation."""
    (a, b), (c, d) = A
    sig = a.sig
    dim = sig.dim
    big = np.block([[left_matrix(a), left_matrix(b)], [left_matrix(c), left_matrix(d)]])
    inv = np.linalg.inv(big)
    r, s = k - 1, j - 1
    block = inv[r * dim:(r + 1) * dim, s * dim:(s + 1) * dim]
    # a left-multiplication matrix is recovered from its first column
    return general_inverse(Multivector(sig, block[:, 0]))


@dataclass(frozen=True)
class QuasiResult:
    value: Multivector
    conditioning: float
    residual: float = 0.0


def _columns(cols, *idx):
    return [cols[i - 1] for i in idx]


def quasi_plucker(cols, l: int, j: int, k: int, s: int = 1) -> QuasiResult:
    """Left quasi-Pluecker coordinate q^{k}_{l j} of a 2 x m spinor matrix.

    ``cols`` is the list of spinor columns, indices are 1-based.  The value
    is Delta_kl^-1 Delta_kj; the quasideterminant form
    |A_lk|_{s1}^-1 |A_jk|_{s1} is computed too and its relative
    difference is stored as ``residual``.
    """
    kl, kj, kk = _columns(cols, l, j, k)
    d_kl = lp.bracket(kk, kl)
    d_kj = lp.bracket(kk, kj)
    conditioning = d_kl.magnitude()
    if conditioning < DEGENERACY_THRESHOLD:
        raise Degenerate(conditioning)
    value = general_inverse(d_kl) * d_kj
    A_lk = ((kl.xi, kk.xi), (kl.eta, kk.eta))
    A_jk = ((kj.xi, kk.xi), (kj.eta, kk.eta))
    via_quasi = general_inverse(quasideterminant(A_lk, s, 1)) * quasideterminant(A_jk, s, 1)
    return QuasiResult(value, conditioning, cl.relative_error(via_quasi, value))


# -- lambda matrices ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LambdaMatrix:
    spinors: tuple
    table: tuple

    @classmethod
    def from_spinors(cls, spinors) -> "LambdaMatrix":
        spinors = tuple(spinors)
        table = tuple(tuple(lp.bracket(a, b) for b in spinors) for a in spinors)
        return cls(spinors, table)

    def __getitem__(self, ij) -> Multivector:
        i, j = ij
        return self.table[i - 1][j - 1]

    def antisymmetry_residual(self) -> float:
        worst = 0.0
        for i, row in enumerate(self.table):
            for j, v in enumerate(row):
                worst = max(worst, cl.relative_error(v, -self.table[j][i].reverse()))
        return worst


def lambda_matrix_to_json(m: LambdaMatrix) -> dict:
    n = m.spinors[0].n if m.spinors else 0
    return {"n": n,
            "spinors": [lp.spinor_to_json(k) for k in m.spinors],
            "lambda": [[cl.to_json(v)["coeffs"] for v in row] for row in m.table]}


# -- relations ----------------------------------------------------------------------

def _conditioning(lams) -> float:
    cond = min(v.magnitude() for v in lams)
    if cond < DEGENERACY_THRESHOLD:
        raise Degenerate(cond)
    return cond


def _rel(lhs: Multivector, rhs: Multivector, *terms: Multivector) -> float:
    scale = max([1.0, rhs.magnitude()] + [t.magnitude() for t in terms])
    return float(np.linalg.norm(lhs.coeffs - rhs.coeffs)) / scale


def ptolemy_terms(k1, k2, k3, k4):
    lam = LambdaMatrix.from_spinors((k1, k2, k3, k4))
    used = [lam[3, 1], lam[2, 3], lam[4, 2], lam[1, 4], lam[4, 3], lam[2, 4], lam[1, 2]]
    cond = _conditioning(used)
    inv31 = general_inverse(lam[3, 1])
    t1 = inv31 * lam[2, 3].reverse() * general_inverse(lam[4, 2]) * lam[1, 4].reverse()
    t2 = inv31 * lam[4, 3].reverse() * general_inverse(lam[2, 4]) * lam[1, 2].reverse()
    return t1, t2, cond


def ptolemy_residual(k1, k2, k3, k4) -> float:
    """Distance of l31^-1 l23* l42^-1 l14* + l31^-1 l43* l24^-1 l12* from 1."""
    t1, t2, _ = ptolemy_terms(k1, k2, k3, k4)
    return _rel(t1 + t2, Multivector.scalar(t1.sig, 1.0), t1, t2)


def skew_symmetry_residual(k1, k2, k3) -> float:
    """l12 l32^-1 l31 should equal its own reverse."""
    l12, l32, l31 = lp.bracket(k1, k2), lp.bracket(k3, k2), lp.bracket(k3, k1)
    _conditioning([l12, l32, l31])
    x = l12 * general_inverse(l32) * l31
    return _rel(x, x.reverse(), x)


def holonomy_residual(kk, kj, kl, kell) -> float:
    """l_kj l_lj^-1 l_l,ell + l_kl l_jl^-1 l_j,ell against l_k,ell.

    ``kell`` may be the same spinor as ``kk``; the target is then 0.
    """
    lkj, llj, llE = lp.bracket(kk, kj), lp.bracket(kl, kj), lp.bracket(kl, kell)
    lkl, ljl, ljE = lp.bracket(kk, kl), lp.bracket(kj, kl), lp.bracket(kj, kell)
    _conditioning([lkj, llj, llE, lkl, ljl, ljE])
    t1 = lkj * general_inverse(llj) * llE
    t2 = lkl * general_inverse(ljl) * ljE
    return _rel(t1 + t2, lp.bracket(kk, kell), t1, t2)


def relation_report(relation: str, residual: float, conditioning: float, tol: float) -> dict:
    return {"relation": relation, "residual": residual, "conditioning": conditioning,
            "pass": bool(residual < tol)}


def ptolemy_report(k1, k2, k3, k4, tol: float = 1e-8) -> dict:
    t1, t2, cond = ptolemy_terms(k1, k2, k3, k4)
    residual = _rel(t1 + t2, Multivector.scalar(t1.sig, 1.0), t1, t2)
    return relation_report("ptolemy", residual, cond, tol)


def well_conditioned_tuple(n: int, rng: np.random.Generator, m: int = 4, max_tries: int = 1000):
    """Random spinors whose pairwise lambda lengths all clear the threshold."""
    for _ in range(max_tries):
        ks = [lp.random_spinor(n, rng) for _ in range(m)]
        if all(lp.bracket(ks[i], ks[j]).magnitude() >= DEGENERACY_THRESHOLD
               for i in range(m) for j in range(i + 1, m)):
            return ks
    raise RuntimeError("could not draw a well-conditioned tuple")
