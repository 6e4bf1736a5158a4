import math
import random
from fractions import Fraction

import pytest

from _support import field
from cmcycles.algebra import Poly, factor_int
from cmcycles.totreal import (
    EvenDiscriminant,
    FactoredIdeal,
    NotIrreducible,
    NotMonogenicMaximal,
    NotTotallyReal,
    build_field,
    normalize_quadratic,
)

FIELDS = ["x", "x^2-x-1", "x^2-x-3", "x^3-x^2-2*x+1"]


def test_build_examples():
    Q = field("x")
    assert Q.n == 1 and Q.disc == 1
    F = field("x^2-x-1")
    assert F.n == 2 and F.disc == 5
    C = field("x^3-x^2-2*x+1")
    assert C.n == 3 and C.disc == 49


@pytest.mark.parametrize(
    "poly,err",
    [
        ("x^2+1", NotTotallyReal),
        ("x^3-2", NotTotallyReal),
        ("x^2-3", EvenDiscriminant),
        ("x^2-2", EvenDiscriminant),
        ("x^2-3*x-9", NotMonogenicMaximal),
        ("x^2-x-2", NotIrreducible),
    ],
)
def test_build_rejects(poly, err):
    with pytest.raises(err):
        build_field(poly)


def test_non_maximal_order_is_named():
    # x^2 - 3x - 9 has discriminant 45 = 9 * 5: Z[theta] has index 3 in the maximal order
    with pytest.raises(NotMonogenicMaximal):
        build_field("x^2-3*x-9")


def test_normalize_quadratic():
    assert normalize_quadratic(Poly.parse("x^2-5")) == Poly.parse("x^2-x-1")
    assert normalize_quadratic(Poly.parse("x^2-13")) == Poly.parse("x^2-x-3")
    assert normalize_quadratic(Poly.parse("x^2-3")) == Poly.parse("x^2-3")


def test_factor_rational_prime_examples():
    F = field("x^2-x-1")
    P11 = F.factor_rational_prime(11)
    assert len(P11) == 2 and all(P.f_deg == 1 and P.e == 1 for P in P11)
    (P3,) = F.factor_rational_prime(3)
    assert P3.f_deg == 2 and P3.e == 1
    (P5,) = F.factor_rational_prime(5)
    assert P5.e == 2 and P5.f_deg == 1


@pytest.mark.parametrize("f", FIELDS)
def test_ef_sum(f):
    from sympy import primerange

    F = field(f)
    for p in primerange(2, 1000):
        assert sum(P.e * P.f_deg for P in F.factor_rational_prime(p)) == F.n


def test_valuation_examples():
    F = field("x^2-x-1")
    (P5,) = F.factor_rational_prime(5)
    assert F.valuation(F.elt(5), P5) == 2
    for p in (2, 3, 5, 11):
        for P in F.factor_rational_prime(p):
            assert F.valuation(F.elt(1), P) == 0
    th = F.theta()
    assert F.norm(th) == -1
    for P in F.factor_rational_prime(11):
        assert F.valuation(th, P) == 0
    # theta - 4 lies in exactly one prime above 11
    vals = [F.valuation(th - F.elt(4), P) for P in F.factor_rational_prime(11)]
    assert sorted(vals) == [0, 1]


def test_valuation_of_zero_rejected():
    F = field("x^2-x-1")
    with pytest.raises(ValueError):
        F.valuation(F.elt(0), F.prime(5))


@pytest.mark.parametrize("f", FIELDS)
def test_valuations_reconstruct_norm(f):
    F = field(f)
    rng = random.Random(len(f))
    for _ in range(200 // len(FIELDS)):
        a = F.elt(*[rng.randint(-30, 30) for _ in range(F.n)])
        if a.is_zero():
            continue
        N = abs(F.norm(a))
        fac = F.factor(a)
        log_sum = sum(e * P.f_deg * math.log(P.p) for P, e in fac.items())
        assert math.isclose(log_sum, math.log(N), abs_tol=1e-9)
        exact = 1
        for P, e in fac.items():
            exact *= P.p ** (P.f_deg * e)
        assert exact == N
        assert fac.norm() == N


def test_factor_fractional():
    F = field("x^2-x-1")
    a = F.elt(Fraction(3, 5), Fraction(1, 5))
    fac = F.factor(a)
    assert fac.norm() == abs(F.norm(a))
    assert not fac.is_integral() or F.norm(a).denominator == 1


def test_different_examples():
    assert field("x").different().is_unit()
    d = field("x^2-x-1").different()
    assert [(P.p, e) for P, e in d.items()] == [(5, 1)] and d.norm() == 5
    d = field("x^3-x^2-2*x+1").different()
    assert [(P.p, e) for P, e in d.items()] == [(7, 2)] and d.norm() == 49
    (P7,) = field("x^3-x^2-2*x+1").factor_rational_prime(7)
    assert P7.e == 3


@pytest.mark.parametrize("f", FIELDS)
def test_norm_of_different(f):
    F = field(f)
    assert F.different().norm() == abs(F.disc)


def test_signs_examples():
    F = field("x^2-x-1")
    assert F.signs(F.elt(1)) == [1, 1]
    assert F.signs(F.theta()) == [1, -1]
    assert F.signs(F.elt(2, 1)) == [1, 1]
    emb = F.embeddings(F.theta())
    assert math.isclose(emb[0], (1 + math.sqrt(5)) / 2) and math.isclose(emb[1], (1 - math.sqrt(5)) / 2)


def test_signs_of_tiny_elements():
    # F_n - F_{n-1} theta style elements: tiny conjugate, certified sign
    F = field("x^2-x-1")
    a = F.elt(-987, 610)  # 610 theta - 987, conjugate ~ -1.6e-3... small but nonzero
    emb = F.embeddings(a)
    assert F.signs(a) == [1 if e > 0 else -1 for e in emb]


def test_enumerate_examples():
    Q = field("x")
    assert [a.coords for a in Q.enumerate_trace(FactoredIdeal.unit(), 3, [(0, 10)])] == [(Fraction(3),)]
    F = field("x^2-x-1")
    Minv = FactoredIdeal.unit() / F.different()
    out = F.enumerate_trace(Minv, 1, [(0, 1), (0, 1)], open_box=True)
    vals = sorted(tuple(round(v, 12) for v in F.embeddings(a)) for a in out)
    s5 = math.sqrt(5)
    assert len(out) == 2
    assert vals == sorted([(round((5 + s5) / 10, 12), round((5 - s5) / 10, 12)),
                           (round((5 - s5) / 10, 12), round((5 + s5) / 10, 12))])
    assert F.enumerate_trace(Minv, 1, [(5, 6), (5, 6)]) == []


def _naive_scan(F, Minv, m, box):
    """Walk the coordinates of d_F^-1 in its ideal basis; the trace fixes the second one."""
    b0, b1 = F.ideal_basis(Minv)
    t0, t1 = F.trace(b0), F.trace(b1)
    assert t1 != 0
    out = set()
    for i in range(-3000, 3001):
        j = (m - i * t0) / t1
        if j.denominator != 1:
            continue
        a = b0.scale(i) + b1.scale(int(j))
        e = F.embeddings(a)
        if all(lo < x < hi for x, (lo, hi) in zip(e, box)):
            out.add(a.coords)
    return out


@pytest.mark.parametrize("f", ["x^2-x-1", "x^2-x-3"])
@pytest.mark.parametrize("m", [1, 2, 7, -3])
def test_enumerate_matches_naive(f, m):
    F = field(f)
    Minv = FactoredIdeal.unit() / F.different()
    box = [(-4, abs(m) + 4), (-4, abs(m) + 4)]
    out = F.enumerate_trace(Minv, m, box, open_box=True)
    for a in out:
        assert F.trace(a) == m
        # membership in d_F^-1: a * d_F integral
        assert (F.factor(a) * F.different()).is_integral()
    assert {a.coords for a in out} == _naive_scan(F, Minv, m, box)


def test_residue_matches_reduction():
    F = field("x^2-x-1")
    for P in F.factor_rational_prime(11):
        r = F.residue(F.elt(1, 1), P)
        # theta reduces to the root of g
        root = (-P.g[0]) % 11
        assert r.coords[0] == (1 + root) % 11


def test_prime_norms():
    F = field("x^3-x^2-2*x+1")
    for p in (2, 3, 13, 29):
        for P in F.factor_rational_prime(p):
            assert P.norm == p**P.f_deg
            assert F.prime_ideal(P).norm == P.norm


def test_factor_int_helper():
    assert factor_int(-360) == {2: 3, 3: 2, 5: 1}
