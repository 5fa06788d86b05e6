"""End-to-end acceptance checks, one test per criterion."""

import math

import numpy as np

from horoclif import clifford as cl
from horoclif import hyperbolic as hy
from horoclif import lipschitz as lp
from horoclif import minkowski as mk
from horoclif import ptolemy as pt
from horoclif.clifford import Multivector, sig0
from horoclif.lipschitz import INF


def gen(seed):
    return np.random.default_rng(seed)


def rel(a, b):
    return abs(a - b) / max(1.0, abs(b))


def test_01_involution_signs(criterion):
    mismatches = 0
    total = 0
    for n in range(7):
        s = sig0(n)
        for k in range(1 << n):
            word = [j + 1 for j in range(n) if k >> j & 1]
            blade = Multivector.blade(s, *word)
            # literal definitions: reverse the generator word; flip each generator
            rev = Multivector.scalar(s, 1.0)
            for j in reversed(word):
                rev = cl.naive_product(rev, Multivector.generator(s, j))
            inv = Multivector.scalar(s, (-1.0) ** len(word))
            inv = cl.naive_product(inv, blade)
            conj = rev * (-1.0) ** len(word)
            for got, want in ((blade.reverse(), rev), (blade.grade_involution(), inv),
                              (blade.conjugate(), conj)):
                total += 1
                mismatches += not np.array_equal(got.coeffs, want.coeffs)
            d = len(word)
            mismatches += cl.involution_signs(n, "reverse")[k] != (-1) ** (d * (d - 1) // 2)
            mismatches += cl.involution_signs(n, "conjugate")[k] != (-1) ** (d * (d + 1) // 2)
    criterion(1, mismatches == 0, f"{total} blade involutions up to n=6, {mismatches} mismatches")


def test_02_exponential_closed_forms(criterion):
    rng = gen(2)
    worst = 0.0
    count = 0
    for n in range(1, 7):
        s = sig0(n)
        for _ in range(1000 // 6 + 1):
            v = rng.standard_normal(n)
            V = Multivector.paravector(s, np.r_[0.0, v / np.linalg.norm(v)])
            theta = rng.uniform(-4 * math.pi, 4 * math.pi)
            formula = V * math.sin(theta) + math.cos(theta)
            oracle = cl.exp_series(V * theta)
            worst = max(worst, cl.relative_error(cl.exponential(V * theta), oracle),
                        cl.relative_error(formula, oracle))
            count += 1
    criterion(2, worst < 1e-10, f"{count} samples, worst relative error {worst:.2e} (< 1e-10)")


def test_03_basepoint_and_flag_spot_values(criterion):
    ok = True
    for n in range(1, 7):
        k0 = lp.elementary_spinor(n, 1, 0)
        p = mk.basepoint(k0)
        ok &= p.T == 1.0 and p.Z == 1.0 and not p.X.any()
        for j in range(1, n + 1):
            v = mk.flag_vector(k0, Multivector.generator(sig0(n), j)).as_array()
            want = np.zeros(n + 3)
            want[2 + j] = 2.0
            ok &= np.array_equal(v, want)
    criterion(3, bool(ok), "phi1(1,0) = (1,1;0) and D phi1(k0-check i_j) = 2 dX_j exactly, n = 1..6")


def test_04_conformality(criterion):
    rng = gen(4)
    worst = 0.0
    for n in range(1, 5):
        for _ in range(500):
            k, V = lp.random_spinor(n, rng), lp.random_paravector(n, rng)
            d = mk.flag_vector(k, V)
            want = -cl.norm(V) * k.norm2() ** 2
            worst = max(worst, abs(d.pdet() - want) / abs(want))
    criterion(4, worst < 1e-9, f"2000 samples, worst relative error {worst:.2e} (< 1e-9)")


def test_05_equivariance(criterion):
    rng = gen(5)
    worst = 0.0
    for n in range(1, 5):
        for _ in range(500):
            A, k = lp.random_sl2(n, rng), lp.random_spinor(n, rng)
            a, b = mk.act_minkowski(A, mk.basepoint(k)).as_array(), mk.basepoint(A @ k).as_array()
            worst = max(worst, float(np.linalg.norm(a - b)) / float(np.linalg.norm(b)))
            r1, r2 = (A @ k).ratio(), lp.mobius_apply(A, k.ratio())
            if r1 is INF or r2 is INF:
                worst = max(worst, 0.0 if r1 is r2 else math.inf)
            else:
                worst = max(worst, cl.relative_error(r1, r2))
    criterion(5, worst < 1e-9, f"2000 samples, worst relative error {worst:.2e} (< 1e-9)")


def test_06_horosphere_theorem(criterion):
    rng = gen(6)
    worst = 0.0
    planes = 0
    for n in range(1, 5):
        s = sig0(n)
        for i in range(500):
            k = lp.random_spinor(n, rng)
            if i % 10 == 0:
                k = lp.LipschitzSpinor(k.xi, Multivector.zero(s))
            elif i % 10 == 1:
                k = lp.LipschitzSpinor(Multivector.zero(s), k.eta)
            h = hy.horosphere(k)
            # centre through phi1 -> pi1 -> pi2 versus xi eta^-1
            center = hy.as_boundary_value(hy.boundary_point(mk.basepoint(k)))
            # size from a point of the parabolic orbit pushed into upper half-space
            u = hy.hyperbolic_point(hy.horosphere_orbit_point(k, lp.random_paravector(n, rng)))
            if lp._is_zero(k.eta):
                planes += 1
                assert center is INF and isinstance(h, hy.HoroPlane)
                worst = max(worst, rel(u.z, cl.norm(k.xi)), rel(h.height, cl.norm(k.xi)))
            else:
                c = center.paravector_components()
                worst = max(worst, cl.relative_error(center, k.xi * cl.inverse(k.eta)))
                diameter = (float(np.sum((u.x - c) ** 2)) + u.z ** 2) / u.z
                worst = max(worst, rel(diameter, 1.0 / cl.norm(k.eta)), rel(h.diameter, 1.0 / cl.norm(k.eta)))
            # decorations from the multiflag against the closed forms, up to positive scale
            gens = [Multivector.generator(s, j) for j in range(1, n + 1)]
            if lp._is_zero(k.eta):
                closed = [k.xi * g * k.xi.reverse() for g in gens]
            else:
                closed = [k.eta.grade_involution() * g * k.eta.conjugate() for g in gens]
            for a, b in zip(hy.decorations_from_flags(k), closed):
                worst = max(worst, cl.relative_error(a, b * (1.0 / b.magnitude())))
    criterion(6, worst < 1e-9, f"2000 spinors ({planes} planes), worst relative error {worst:.2e} (< 1e-9)")


def test_07_lambda_lengths(criterion):
    rng = gen(7)
    exact = True
    spot = 0.0
    for n in range(1, 5):
        s = sig0(n)
        e1 = lp.elementary_spinor(n, 1, 0)
        exact &= pt.lambda_length(e1, lp.elementary_spinor(n, 0, 1)) == Multivector.scalar(s, 1.0)
        U = lp.random_paravector(n, rng)
        spot = max(spot, cl.relative_error(pt.lambda_length(e1, lp.elementary_spinor(n, 0, U)), U))
    worst, used = 0.0, 0
    while used < 500:
        n = 1 + used % 4
        k1, k2 = lp.random_spinor(n, rng), lp.random_spinor(n, rng)
        lam = pt.lambda_length(k1, k2)
        if lam.magnitude() < pt.DEGENERACY_THRESHOLD:
            continue
        used += 1
        ip = mk.minkowski_inner(mk.basepoint(k1), mk.basepoint(k2))
        worst = max(worst, rel(cl.norm(lam), ip / 2))
    ok = exact and spot <= 4 * np.finfo(float).eps and worst < 1e-8
    criterion(7, bool(ok), f"spot values exact={exact}, U error {spot:.1e}; "
                           f"|lambda|^2 = (p|q)/2 worst {worst:.2e} on 500 pairs (< 1e-8)")


def test_08_ptolemy_skew_holonomy(criterion):
    rng = gen(8)
    worst = {"ptolemy": 0.0, "skew": 0.0, "holonomy": 0.0}
    for n in range(1, 5):
        for _ in range(1000):
            ks = pt.well_conditioned_tuple(n, rng)
            worst["ptolemy"] = max(worst["ptolemy"], pt.ptolemy_residual(*ks))
            worst["skew"] = max(worst["skew"], pt.skew_symmetry_residual(*ks[:3]))
            worst["holonomy"] = max(worst["holonomy"], pt.holonomy_residual(*ks))
    ok = max(worst.values()) < 1e-8
    detail = ", ".join(f"{k} {v:.2e}" for k, v in worst.items())
    criterion(8, ok, f"4000 tuples, worst residuals: {detail} (< 1e-8)")


def test_09_quasi_plucker(criterion):
    rng = gen(9)
    worst = 0.0
    for i in range(500):
        n = 1 + i % 3
        ks = pt.well_conditioned_tuple(n, rng)
        l, j, k = (int(x) + 1 for x in rng.permutation(4)[:3])
        r1, r2 = pt.quasi_plucker(ks, l, j, k, s=1), pt.quasi_plucker(ks, l, j, k, s=2)
        worst = max(worst, r1.residual, r2.residual, cl.relative_error(r1.value, r2.value))
    criterion(9, worst < 1e-9, f"500 samples, worst residual {worst:.2e} (< 1e-9)")


def test_10_cayley_dickson(criterion):
    rng = gen(10)
    worst = 0.0
    for i in range(500):
        n = 1 + i % 5
        k1, k2 = lp.random_spinor(n, rng), lp.random_spinor(n, rng)
        z1, z2 = lp.embed_pair(k1.xi, k1.eta), lp.embed_pair(k2.xi, k2.eta)
        top = Multivector.generator(z1.sig, n + 1)
        want = lp.embed(lp.hermitian_form(k1, k2)) + top * lp.embed(lp.bracket(k1, k2))
        worst = max(worst, cl.relative_error(z1.conjugate() * z2, want))
    criterion(10, worst < 1e-10, f"500 pairs, worst relative error {worst:.2e} (< 1e-10)")


def test_11_lipschitz_negative_control(criterion):
    rng = gen(11)
    s = sig0(3)
    rejected = not lp.is_lipschitz(1.0 + Multivector.blade(s, 1, 2, 3))
    bad = 0
    for n in range(0, 7):
        for _ in range(100):
            bad += not lp.is_lipschitz(lp.random_lipschitz(n, rng))
            bad += not lp.is_lipschitz(lp.random_paravector(n, rng))
            k = lp.random_spinor(n, rng)
            bad += lp.spinor_residuals(k.xi, k.eta) is not None
            bad += lp.matrix_residuals(*lp.random_sl2(n, rng).entries(), "SL") is not None
    criterion(11, rejected and bad == 0,
              f"1 + i1i2i3 rejected={rejected}; {bad} of 2800 generator outputs rejected")


def test_12_decorated_ideal_round_trip(criterion):
    rng = gen(12)
    worst = 0.0
    planes_ok = True
    for n in range(1, 5):
        for _ in range(200):
            mf = mk.multiflag(lp.random_spinor(n, rng))
            d = mk.to_decorated_ideal(mf)
            back = mk.from_decorated_ideal(d)
            planes_ok &= mk.flags_equal(mf, back)
            worst = max(worst, rel(d.K, -4.0 * mf.base.T ** 2),
                        rel(back.base.T, mf.base.T))
    criterion(12, planes_ok and worst < 1e-9,
              f"800 multiflags, planes preserved={planes_ok}, K worst relative error {worst:.2e} (< 1e-9)")
