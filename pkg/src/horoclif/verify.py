"""Seeded property suites over random spinors, matrices and multiflags.

Each suite draws ``samples`` cases and records the worst residual.  Every
suite gets its own generator spawned from one ``SeedSequence``, so a single
failing suite can be replayed alone and adding a suite never perturbs the
others' streams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import clifford as cl
from . import hyperbolic as hy
from . import lipschitz as lp
from . import minkowski as mk
from . import ptolemy as pt
from .clifford import Multivector, sig0

Residual = float | None


@dataclass(frozen=True)
class Suite:
    name: str
    module: str
    tol: float
    check: Callable[[int, np.random.Generator], Residual]
    min_n: int = 0
    extra_dims: int = 0


SUITES: list[Suite] = []


def suite(module: str, tol: float, min_n: int = 0, extra_dims: int = 0):
    def register(fn):
        SUITES.append(Suite(fn.__name__, module, tol, fn, min_n, extra_dims))
        return fn
    return register


def _mv(n, rng):
    return Multivector(sig0(n), rng.standard_normal(1 << n))


def _ratio_err(a, b):
    if a is lp.INF or b is lp.INF:
        return 0.0 if a is b else math.inf
    return cl.relative_error(a, b)


# -- clifford ------------------------------------------------------------------

@suite("clifford", 1e-12)
def product_matches_naive(n, rng):
    a, b = _mv(n, rng), _mv(n, rng)
    return cl.relative_error(a * b, cl.naive_product(a, b))


@suite("clifford", 1e-12)
def associativity(n, rng):
    a, b, c = _mv(n, rng), _mv(n, rng), _mv(n, rng)
    return cl.relative_error((a * b) * c, a * (b * c))


@suite("clifford", 1e-12)
def conjugation_antiautomorphism(n, rng):
    a, b = _mv(n, rng), _mv(n, rng)
    return cl.relative_error((a * b).conjugate(), b.conjugate() * a.conjugate())


@suite("clifford", 1e-10, min_n=1)
def exponential_closed_form(n, rng):
    v = rng.standard_normal(n)
    V = Multivector.paravector(sig0(n), np.r_[0.0, v / np.linalg.norm(v)])
    theta = rng.uniform(-4 * math.pi, 4 * math.pi)
    return cl.relative_error(cl.exponential(V * theta), cl.exp_series(V * theta))


@suite("clifford", 1e-12)
def norm_multiplicative(n, rng):
    a, b = lp.random_lipschitz(n, rng), lp.random_lipschitz(n, rng)
    return abs(cl.norm(a * b) - cl.norm(a) * cl.norm(b)) / max(1.0, cl.norm(a) * cl.norm(b))


# -- lipschitz -------------------------------------------------------------------

@suite("lipschitz", 0.0)
def random_generators_valid(n, rng):
    k = lp.random_spinor(n, rng)
    ok = (lp.is_lipschitz(lp.random_lipschitz(n, rng))
          and lp.spinor_residuals(k.xi, k.eta) is None
          and lp.matrix_residuals(*lp.random_sl2(n, rng).entries(), "SL") is None)
    return 0.0 if ok else 1.0


@suite("lipschitz", 1e-12)
def bracket_pseudo_antisymmetry(n, rng):
    k1, k2 = lp.random_spinor(n, rng), lp.random_spinor(n, rng)
    return cl.relative_error(lp.bracket(k2, k1), -lp.bracket(k1, k2).reverse())


@suite("lipschitz", 1e-10)
def bracket_kernel(n, rng):
    k, a = lp.random_spinor(n, rng), _mv(n, rng)
    return lp.bracket(k, lp.pair_rmul(k, a)).magnitude() / max(1.0, k.norm2() * a.magnitude())


@suite("lipschitz", 1e-10)
def tangent_decomposition(n, rng):
    k = lp.random_spinor(n, rng)
    ab = (_mv(n, rng), _mv(n, rng))
    x, y = lp.tangent_decomposition(k, ab)
    kx, ky = lp.pair_rmul(k, x), lp.pair_rmul(k.complement(), y)
    rebuilt = lp.pair_add(kx, ky)
    err = max(cl.relative_error(rebuilt[0], ab[0]), cl.relative_error(rebuilt[1], ab[1]))
    ortho = abs(lp.inner_product(kx, ky)) / max(1.0, k.norm2() * x.magnitude() * y.magnitude())
    return max(err, ortho)


@suite("lipschitz", 0.0)
def tangent_space_membership(n, rng):
    k = lp.random_spinor(n, rng)
    v = lp.tangent_vector(k, lp.random_bi_paravector(n, rng), lp.random_paravector(n, rng))
    return 0.0 if lp.is_tangent(k, v) else 1.0


@suite("lipschitz", 0.0)
def bi_paravector_exponential(n, rng):
    b = lp.random_bi_paravector(n, rng) * rng.uniform(-1, 1)
    return 0.0 if lp.is_lipschitz(cl.exponential(b)) else 1.0


@suite("lipschitz", 1e-9)
def mobius_equivariance(n, rng):
    A, k = lp.random_sl2(n, rng), lp.random_spinor(n, rng)
    return _ratio_err((A @ k).ratio(), lp.mobius_apply(A, k.ratio()))


@suite("lipschitz", 1e-9)
def bracket_sl2_invariance(n, rng):
    A, k1, k2 = lp.random_sl2(n, rng), lp.random_spinor(n, rng), lp.random_spinor(n, rng)
    return cl.relative_error(lp.bracket(A @ k1, A @ k2), lp.bracket(k1, k2))


@suite("lipschitz", 1e-9)
def transitivity(n, rng):
    k1, k2 = lp.random_spinor(n, rng), lp.random_spinor(n, rng)
    t = lp.transport_matrix(k1, k2)
    if lp.matrix_residuals(*t.entries(), "SL") is not None:
        return math.inf
    out = t @ k1
    return max(cl.relative_error(out.xi, k2.xi), cl.relative_error(out.eta, k2.eta))


@suite("lipschitz", 1e-10, extra_dims=1)
def cayley_embedding(n, rng):
    k1, k2 = lp.random_spinor(n, rng), lp.random_spinor(n, rng)
    u, v = lp.cayley_embed(k1, k2)
    return max(cl.relative_error(u, lp.hermitian_form(k1, k2)), cl.relative_error(v, lp.bracket(k1, k2)))


# -- minkowski ---------------------------------------------------------------------

def _rel_scalar(a, b):
    return abs(a - b) / max(1.0, abs(b))


@suite("minkowski", 1e-10)
def light_cone_surjectivity(n, rng):
    x = rng.standard_normal(n + 2)
    p = mk.MinkowskiPoint(float(np.linalg.norm(x)), x[0], x[1:])
    q = mk.basepoint(mk.light_cone_preimage(p))
    return float(np.linalg.norm(q.as_array() - p.as_array())) / max(1.0, p.T)


@suite("minkowski", 1e-10)
def preimage_fibre(n, rng):
    k, s = lp.random_spinor(n, rng), lp.random_lipschitz(n, rng)
    s = s * (1.0 / lp.modulus(s))
    a, b = mk.basepoint(k.times(s)), mk.basepoint(k)
    return float(np.linalg.norm(a.as_array() - b.as_array())) / max(1.0, b.T)


@suite("minkowski", 1e-9)
def conformality(n, rng):
    k = lp.random_spinor(n, rng)
    V, W = lp.random_paravector(n, rng), lp.random_paravector(n, rng)
    dv, dw = mk.flag_vector(k, V), mk.flag_vector(k, W)
    k4 = k.norm2() ** 2
    scale = 4 * k4 * math.sqrt(cl.norm(V) * cl.norm(W))
    inner = abs(mk.minkowski_inner(dv, dw) + 4 * k4 * cl.dot(V, W)) / scale
    return max(inner, _rel_scalar(dv.pdet(), -cl.norm(V) * k4), abs(dv.T) / (k4 * cl.norm(V)))


@suite("minkowski", 1e-9)
def basepoint_equivariance(n, rng):
    A, k = lp.random_sl2(n, rng), lp.random_spinor(n, rng)
    a, b = mk.act_minkowski(A, mk.basepoint(k)), mk.basepoint(A @ k)
    return float(np.linalg.norm(a.as_array() - b.as_array())) / max(1.0, float(np.linalg.norm(b.as_array())))


@suite("minkowski", 0.0)
def flag_equivariance(n, rng):
    A, k = lp.random_sl2(n, rng), lp.random_spinor(n, rng)
    return 0.0 if mk.flags_equal(mk.act_multiflag(A, mk.multiflag(k)), mk.multiflag(A @ k)) else 1.0


@suite("minkowski", 1e-9)
def decorated_ideal_round_trip(n, rng):
    mf = mk.multiflag(lp.random_spinor(n, rng))
    d = mk.to_decorated_ideal(mf)
    back = mk.from_decorated_ideal(d)
    if not mk.flags_equal(mf, back):
        return math.inf
    return _rel_scalar(d.K, -4.0 * mf.base.T ** 2)


# -- hyperbolic -------------------------------------------------------------------

def _spinor_with_corners(n, rng):
    k = lp.random_spinor(n, rng)
    pick = rng.random()
    zero = Multivector.zero(sig0(n))
    if pick < 0.05:
        return lp.LipschitzSpinor(k.xi, zero)
    if pick < 0.10:
        return lp.LipschitzSpinor(zero, k.eta)
    return k


@suite("hyperbolic", 1e-9)
def pipeline_center(n, rng):
    k = _spinor_with_corners(n, rng)
    return _ratio_err(hy.as_boundary_value(hy.boundary_point(mk.basepoint(k))), k.ratio())


@suite("hyperbolic", 1e-8)
def horosphere_membership(n, rng):
    k = _spinor_with_corners(n, rng)
    h = hy.horosphere(k)
    q = hy.horosphere_orbit_point(k, lp.random_paravector(n, rng))
    p = mk.basepoint(k)
    err = abs(mk.minkowski_inner(q, p) - 1.0)
    return err if h.contains(hy.hyperbolic_point(q), 1e-8) else math.inf


@suite("hyperbolic", 1e-9)
def decoration_pipeline(n, rng):
    k = _spinor_with_corners(n, rng)
    pairs = zip(hy.decorations_from_flags(k), hy.horosphere(k).decorations)
    return max([cl.relative_error(a, b) for a, b in pairs], default=0.0)


@suite("hyperbolic", 1e-9)
def decoration_orthogonality(n, rng):
    decs = hy.horosphere(lp.random_spinor(n, rng)).decorations
    return max([abs(cl.dot(a, b)) for i, a in enumerate(decs) for b in decs[:i]], default=0.0)


@suite("hyperbolic", 1e-9)
def decoration_generator_equivariance(n, rng):
    zero = Multivector.zero(sig0(n))
    xi = lp.random_lipschitz(n, rng)
    k = lp.LipschitzSpinor(xi, zero) if rng.random() < 0.5 else lp.LipschitzSpinor(zero, xi)
    kind = ("A1", "A2", "A3")[int(rng.integers(3))]
    param = {"A1": lp.random_paravector(n, rng), "A2": None, "A3": lp.random_lipschitz(n, rng)}[kind]
    g = hy.Generator(kind, param, n)
    before, after = hy.horosphere(k).decorations, hy.horosphere(g.matrix() @ k).decorations
    return max([cl.relative_error(hy.transform_decoration(g, a), b) for a, b in zip(before, after)],
               default=0.0)


@suite("hyperbolic", 1e-8)
def distance_oracle(n, rng):
    k1, k2 = lp.random_spinor(n, rng), lp.random_spinor(n, rng)
    lam = lp.bracket(k1, k2).magnitude()
    if lam < pt.DEGENERACY_THRESHOLD:
        return None
    return _rel_scalar(math.exp(hy.horosphere_distance(k1, k2) / 2), lam)


@suite("hyperbolic", 1e-9)
def boundary_action(n, rng):
    A, k = lp.random_sl2(n, rng), lp.random_spinor(n, rng)
    p = mk.basepoint(k)
    lhs = hy.as_boundary_value(hy.boundary_point(mk.act_minkowski(A, p)))
    rhs = hy.as_boundary_value(hy.mobius_boundary(A, hy.boundary_point(p)))
    return _ratio_err(lhs, rhs)


# -- ptolemy --------------------------------------------------------------------

@suite("ptolemy", 1e-8)
def magnitude_oracle(n, rng):
    k1, k2 = lp.random_spinor(n, rng), lp.random_spinor(n, rng)
    lam = lp.bracket(k1, k2)
    if lam.magnitude() < pt.DEGENERACY_THRESHOLD:
        return None
    return _rel_scalar(cl.norm(lam), mk.minkowski_inner(mk.basepoint(k1), mk.basepoint(k2)) / 2)


@suite("ptolemy", 1e-8)
def ptolemy_relation(n, rng):
    return pt.ptolemy_residual(*pt.well_conditioned_tuple(n, rng))


@suite("ptolemy", 1e-9)
def skew_symmetry(n, rng):
    return pt.skew_symmetry_residual(*pt.well_conditioned_tuple(n, rng, m=3))


@suite("ptolemy", 1e-8)
def holonomy(n, rng):
    ks = pt.well_conditioned_tuple(n, rng)
    return max(pt.holonomy_residual(*ks), pt.holonomy_residual(ks[0], ks[2], ks[1], ks[0]))


@suite("ptolemy", 1e-9)
def quasi_plucker(n, rng):
    ks = pt.well_conditioned_tuple(n, rng)
    l, j, k = (int(i) + 1 for i in rng.permutation(4)[:3])
    r1, r2 = pt.quasi_plucker(ks, l, j, k, 1), pt.quasi_plucker(ks, l, j, k, 2)
    return max(r1.residual, r2.residual, cl.relative_error(r1.value, r2.value))


# -- runner ---------------------------------------------------------------------

def run_suite(s: Suite, n: int, rng: np.random.Generator, samples: int, tol: float | None = None) -> dict:
    limit = s.tol if tol is None else tol
    if n < s.min_n or n + s.extra_dims > cl.dim_cap():
        return {"suite": s.name, "module": s.module, "n": n, "samples": 0, "skipped": samples,
                "worst": None, "tol": limit, "pass": True}
    worst, used, skipped = 0.0, 0, 0
    for _ in range(samples):
        try:
            r = s.check(n, rng)
        except pt.Degenerate:
            r = None
        if r is None:
            skipped += 1
            continue
        used += 1
        worst = max(worst, float(r))
    return {"suite": s.name, "module": s.module, "n": n, "samples": used, "skipped": skipped,
            "worst": worst, "tol": limit, "pass": bool(worst <= limit) and used > 0}


def run_all(n: int, seed: int, samples: int, tol: float | None = None, names=None) -> dict:
    chosen = [s for s in SUITES if names is None or s.name in names or s.module in names]
    children = np.random.SeedSequence(seed).spawn(len(SUITES))
    results = []
    for s, child in zip(SUITES, children):
        if s in chosen:
            results.append(run_suite(s, n, np.random.Generator(np.random.PCG64(child)), samples, tol))
    return {"n": n, "seed": seed, "samples": samples,
            "pass": all(r["pass"] for r in results), "suites": results}
