import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from horoclif import clifford as cl
from horoclif.clifford import Multivector, Signature, sig0

from conftest import close, random_mv, random_paravector


def test_generator_squares():
    s = sig0(2)
    i1 = Multivector.generator(s, 1)
    assert i1 * i1 == Multivector.scalar(s, -1.0)
    mixed = Signature(1, 1)
    e1, e2 = Multivector.generator(mixed, 1), Multivector.generator(mixed, 2)
    assert (e1 * e1).real == 1.0
    assert (e2 * e2).real == -1.0
    assert e1 * e2 == -(e2 * e1)


def test_identity_element(rng):
    x = random_mv(rng, sig0(3))
    assert (Multivector.scalar(x.sig, 1.0) * x) == x
    assert (x * 1.0) == x


def test_one_plus_i1_times_one_minus_i1():
    for n in range(1, 5):
        s = sig0(n)
        i1 = Multivector.generator(s, 1)
        prod = (1.0 + i1) * (1.0 - i1)
        assert prod == cl.naive_product(1.0 + i1, 1.0 - i1)
        assert prod == Multivector.scalar(s, 2.0)


@pytest.mark.parametrize("p,q", [(0, 1), (0, 3), (2, 0), (1, 2), (2, 3), (0, 5)])
def test_product_matches_naive_oracle(rng, p, q):
    s = Signature(p, q)
    for _ in range(5):
        a, b = random_mv(rng, s), random_mv(rng, s)
        assert close(a * b, cl.naive_product(a, b), 1e-13)


def test_signature_mismatch():
    with pytest.raises(cl.SignatureMismatch):
        Multivector.scalar(sig0(2), 1.0) * Multivector.scalar(sig0(3), 1.0)


def test_dimension_cap(monkeypatch):
    with pytest.raises(cl.DimensionCapExceeded):
        Signature(0, 13)
    monkeypatch.setenv("HOROCLIF_DIM_CAP", "4")
    with pytest.raises(cl.DimensionCapExceeded):
        Signature(0, 5)
    Signature(0, 4)


def test_involution_examples():
    s = sig0(3)
    i12 = Multivector.blade(s, 1, 2)
    i123 = Multivector.blade(s, 1, 2, 3)
    assert i12.grade_involution() == i12
    assert i123.reverse() == -i123
    v = Multivector.paravector(s, [0.5, 1.0, -2.0, 3.0])
    assert v.conjugate() == Multivector.paravector(s, [0.5, -1.0, 2.0, -3.0])
    assert v.conjugate() == v.grade_involution()
    assert v.reverse() == v


def test_involution_signs_from_monomial_reversal():
    # reverse each monomial by literally reversing its generator word
    n = 5
    s = sig0(n)
    for k in range(1 << n):
        gens = [j + 1 for j in range(n) if k >> j & 1]
        blade = Multivector.blade(s, *gens)
        reversed_word = Multivector.blade(s, *reversed(gens))
        negated = Multivector.blade(s, *gens, coeff=(-1.0) ** len(gens))
        assert blade.reverse() == reversed_word
        assert blade.grade_involution() == negated
        assert blade.conjugate() == reversed_word.grade_involution()


def test_conjugation_is_antiautomorphism(rng):
    for n in range(1, 6):
        s = sig0(n)
        a, b = random_mv(rng, s), random_mv(rng, s)
        assert close((a * b).conjugate(), b.conjugate() * a.conjugate(), 1e-12)
        assert close((a * b).reverse(), b.reverse() * a.reverse(), 1e-12)
        assert close((a * b).grade_involution(), a.grade_involution() * b.grade_involution(), 1e-12)


def test_associativity(rng):
    for n in range(0, 6):
        s = sig0(n)
        a, b, c = (random_mv(rng, s) for _ in range(3))
        assert close((a * b) * c, a * (b * c), 1e-12)


def test_norm_examples(rng):
    s = sig0(4)
    comps = rng.standard_normal(5)
    v = Multivector.paravector(s, comps)
    assert math.isclose(cl.norm(v), float(comps @ comps), rel_tol=1e-14)
    assert cl.norm(Multivector.scalar(s, 1.0)) == 1.0


def test_norm_multiplicative_on_paravector_products(rng):
    for n in range(1, 6):
        factors = [random_paravector(rng, n) for _ in range(4)]
        prod = factors[0]
        for f in factors[1:]:
            prod = prod * f
        expected = np.prod([cl.norm(f) for f in factors])
        assert math.isclose(cl.norm(prod), expected, rel_tol=1e-12)


def test_dot_examples(rng):
    s = sig0(3)
    for j in range(1, 4):
        assert cl.dot(Multivector.scalar(s, 1.0), Multivector.generator(s, j)) == 0.0
    for _ in range(10):
        a, b = random_mv(rng, s), random_mv(rng, s)
        polar = 0.5 * (cl.norm(a + b) - cl.norm(a) - cl.norm(b))
        assert math.isclose(cl.dot(a, b), polar, rel_tol=1e-12, abs_tol=1e-12)
        assert math.isclose(cl.dot(a, b), cl.dot(b, a), rel_tol=1e-12, abs_tol=1e-12)
        assert math.isclose((a * b).real, (b * a).real, rel_tol=1e-12, abs_tol=1e-12)


def test_vector_polarisation(rng):
    # VW + WV = 2 N_{p,q}(V, W); for Cl_{0,n} the quadratic form is -sum V_j W_j
    for n in range(1, 6):
        s = sig0(n)
        v = cl.grade_project(random_mv(rng, s), 1)
        w = cl.grade_project(random_mv(rng, s), 1)
        lhs = v * w + w * v
        form = -float(v.coeffs @ w.coeffs)
        assert close(lhs, Multivector.scalar(s, 2 * form), 1e-12)
        assert math.isclose(cl.dot(v, w), -form, rel_tol=1e-12, abs_tol=1e-14)


def test_paravector_norm_is_real(rng):
    for n in range(1, 7):
        v = random_paravector(rng, n)
        assert cl.is_real(v * v.conjugate(), 1e-12)


def test_exponential_examples(rng):
    s = sig0(3)
    assert cl.exponential(Multivector.zero(s)) == Multivector.scalar(s, 1.0)
    v = cl.grade_project(random_mv(rng, s), 1)
    v = v / v.magnitude()
    theta = 1.3
    expect = v * math.sin(theta) + math.cos(theta)
    assert close(cl.exponential(v * theta), expect, 1e-14)
    assert close(cl.exp_series(v * theta), expect, 1e-12)
    f = Multivector.blade(s, 1, 2, 3)
    expect = f * math.sinh(theta) + math.cosh(theta)
    assert close(cl.exponential(f * theta), expect, 1e-14)
    assert close(cl.exp_series(f * theta), expect, 1e-12)


def test_exponential_general_path(rng):
    s = sig0(4)
    b = Multivector.blade(s, 1, 2) + Multivector.blade(s, 3, 4)
    assert not cl.is_real(b * b)
    # commuting bivectors: exp(e12 + e34) = exp(e12) exp(e34)
    e12 = cl.exponential(Multivector.blade(s, 1, 2))
    e34 = cl.exponential(Multivector.blade(s, 3, 4))
    assert close(cl.exponential(b), e12 * e34, 1e-12)


def test_inverse_examples():
    s = sig0(3)
    i1 = Multivector.generator(s, 1)
    assert cl.inverse(i1) == -i1
    assert i1 * cl.inverse(i1) == Multivector.scalar(s, 1.0)
    one = Multivector.scalar(s, 1.0)
    assert cl.inverse(one) == one
    bad = one + Multivector.blade(s, 1, 2, 3)
    aa = bad * bad.conjugate()
    assert aa == Multivector.scalar(s, 2.0) + Multivector.blade(s, 1, 2, 3, coeff=2.0)
    with pytest.raises(cl.NonInvertible):
        cl.inverse(bad)
    with pytest.raises(cl.NonInvertible):
        cl.inverse(Multivector.zero(s))


def test_inverse_of_paravector_products(rng):
    for n in range(1, 6):
        x = random_paravector(rng, n) * random_paravector(rng, n) * random_paravector(rng, n)
        assert close(x * cl.inverse(x), Multivector.scalar(x.sig, 1.0), 1e-12)
        assert close(cl.inverse(x) * x, Multivector.scalar(x.sig, 1.0), 1e-12)


def test_grade_project_and_membership():
    s = sig0(3)
    x = 1.0 + Multivector.generator(s, 1) + Multivector.blade(s, 1, 2)
    assert cl.grade_project(x, 1) == Multivector.generator(s, 1)
    assert cl.real_part(x) == 1.0
    assert not cl.is_paravector(Multivector.blade(s, 1, 2))
    v = Multivector.paravector(s, [1.0, 2.0, 3.0, 4.0])
    assert cl.is_paravector(v + Multivector.blade(s, 1, 2, coeff=1e-15))


def test_two_norm_predicates_disagree_on_zero_divisor():
    s = sig0(3)
    x = 1.0 + Multivector.blade(s, 1, 2, 3)
    assert cl.norm_scalar_nonzero(x)
    assert not cl.norm_fully_real_nonzero(x)
    assert cl.norm_fully_real_nonzero(Multivector.blade(s, 1, 2))


def test_json_round_trip(rng):
    s = Signature(1, 2)
    x = random_mv(rng, s)
    obj = cl.to_json(x)
    assert cl.from_json(json.loads(json.dumps(obj))) == x
    y = cl.from_json({"p": 0, "q": 3, "coeffs": {"": 2.0, "1,3": -1.5}})
    assert y == 2.0 + Multivector.blade(sig0(3), 1, 3, coeff=-1.5)
    assert cl.to_json(y)["coeffs"] == {"": 2.0, "1,3": -1.5}
    with pytest.raises(cl.CliffordError):
        cl.from_json({"p": 0, "q": 2, "coeffs": {"3": 1.0}})


coeff = st.floats(min_value=-10, max_value=10, allow_nan=False)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=4), st.data())
def test_reverse_is_involutive(n, data):
    s = sig0(n)
    x = Multivector(s, data.draw(st.lists(coeff, min_size=s.dim, max_size=s.dim)))
    for kind in ("grade", "reverse", "conjugate"):
        assert cl.involution(cl.involution(x, kind), kind) == x
