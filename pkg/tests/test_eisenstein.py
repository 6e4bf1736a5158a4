import math
import random
from fractions import Fraction

import pytest

from _support import CONFIG_IDS, CONFIGS, context, field, inverse_different, patterned_sample, random_y
from cmcycles.algebra import InputError
from cmcycles.cmfield import build_cm, split_in_K
from cmcycles.eisenstein import (
    b_phi_closed,
    b_phi_whittaker,
    c_phi,
    diff_set,
    whittaker_term,
    xi_set,
)
from cmcycles.quadfield import Split
from cmcycles.values import ArchTerm, EisValue, LogLinear


def test_xi_single_ramified_prime():
    ctx = context(-3, "x")
    (xi,) = xi_set(ctx)
    assert xi.sign(ctx.ram_finite[0]) == -1


def test_xi_inert_correction():
    # 5 is inert in K and ord d_F = 1 there, so the sign at the prime above 7 is +1
    ctx = context(-7, "x^2-x-1")
    (xi,) = xi_set(ctx)
    (P5,) = ctx.F.factor_rational_prime(5)
    assert split_in_K(ctx, P5) is Split.INERT
    assert xi.sign(ctx.ram_finite[0]) == 1


@pytest.mark.parametrize("D,f", [(-11, "x^2-x-1"), (-3, "x^2-x-3")])
def test_xi_two_ramified_primes(D, f):
    ctx = context(D, f)
    assert len(ctx.ram_finite) == 2
    xs = xi_set(ctx)
    assert len(xs) == 2
    for xi in xs:
        assert math.prod(s for _, s in xi.signs) == -1


def test_xi_count_general():
    ctx = build_cm(-35, field("x"))
    assert len(ctx.ram_finite) == 2 and len(xi_set(ctx)) == 2


def test_diff_examples():
    ctx = context(-3, "x")
    (xi,) = xi_set(ctx)
    F = ctx.F
    assert diff_set(ctx, F.elt(1), xi) == (ctx.ram_finite[0],)
    assert diff_set(ctx, F.elt(-1), xi) == (0,)
    with pytest.raises(InputError):
        diff_set(ctx, F.elt(0), xi)


def test_whittaker_term_preconditions():
    ctx = context(-3, "x")
    (xi,) = xi_set(ctx)
    F = ctx.F
    P3 = ctx.ram_finite[0]
    with pytest.raises(InputError):
        whittaker_term(ctx, 0, F.elt(1), xi, True, [1.0])
    with pytest.raises(InputError):
        whittaker_term(ctx, P3, F.elt(1), xi, False)
    # ramified derivative: (ord + 1)/2 * 2 rho_v * 3^(-1/2) log 3 with ord = 0
    t = whittaker_term(ctx, P3, F.elt(1), xi, True)
    assert t.rational == 1 and t.radical == 3 and t.log_q == P3
    a = whittaker_term(ctx, 0, F.elt(1), xi, False)
    assert a.rational == 2 and a.t is None
    a = whittaker_term(ctx, 0, F.elt(-1), xi, True, [1.0])
    assert a.rational == 1 and math.isclose(a.t, 4 * math.pi)


def test_whittaker_inert_value():
    ctx = context(-3, "x")
    (xi,) = xi_set(ctx)
    F = ctx.F
    (P2,) = F.factor_rational_prime(2)
    # alpha = 4: ord_2 = 2 even, value factor rho_v = 1
    t = whittaker_term(ctx, P2, F.elt(4), xi, False)
    assert t.rational == 1 and t.log_q is None
    # alpha = 2: 2 is in Diff and the derivative factor is (1+1)/2 * rho_v(0) log 2
    d = diff_set(ctx, F.elt(2), xi)
    assert P2 in d
    t = whittaker_term(ctx, P2, F.elt(2), xi, True)
    assert t.rational == 1 and t.log_q == P2


def test_b_alpha_one():
    ctx = context(-3, "x")
    one = ctx.F.elt(1)
    expected = EisValue(3, LogLinear({3: -2}))
    assert b_phi_closed(ctx, one, [1.0]).equals(expected)
    assert b_phi_whittaker(ctx, one, [1.0]).equals(expected)
    assert math.isclose(expected.evaluate(), -2 / math.sqrt(3) * math.log(3))


def test_b_epsilon_one_prime():
    # alpha = 2: ord_2(alpha d_F P) = 2, rho((2)/(2)) = 1, so -2 * 2 * 1 * log 2
    ctx = context(-3, "x")
    b = b_phi_closed(ctx, ctx.F.elt(2), [1.0])
    assert b.equals(EisValue(3, LogLinear({2: -4})))
    assert b_phi_whittaker(ctx, ctx.F.elt(2), [1.0]).equals(b)


def test_b_one_negative():
    ctx = context(-3, "x")
    b = b_phi_closed(ctx, ctx.F.elt(-1), [0.5])
    assert not b.finite and b.arch.coeff == -2
    assert math.isclose(b.arch.t, 2 * math.pi)
    assert b.equals(EisValue(3, arch=ArchTerm(Fraction(-2), 2 * math.pi)))
    assert b_phi_whittaker(ctx, ctx.F.elt(-1), [0.5]).equals(b)


def test_b_obstructed_is_zero():
    # 2 and 5 are inert in Q(sqrt -3); every rho factor vanishes for alpha = 10
    ctx = context(-3, "x")
    a = ctx.F.elt(10)
    assert b_phi_closed(ctx, a, [1.0]).is_zero()
    assert b_phi_whittaker(ctx, a, [1.0]).is_zero()


def test_b_two_negative_is_zero():
    ctx = context(-7, "x^2-x-1")
    a = ctx.F.elt(-3, 1)  # theta - 3: both embeddings negative
    assert ctx.F.signs(a) == [-1, -1]
    assert b_phi_closed(ctx, a, [1.0, 2.0]).is_zero()
    assert b_phi_whittaker(ctx, a, [1.0, 2.0]).is_zero()


def test_alpha_zero_rejected():
    ctx = context(-3, "x")
    with pytest.raises(InputError):
        b_phi_closed(ctx, ctx.F.elt(0), [1.0])
    with pytest.raises(InputError):
        b_phi_whittaker(ctx, ctx.F.elt(0), [1.0])


@pytest.mark.parametrize("D,f", CONFIGS, ids=CONFIG_IDS)
def test_diff_parity(D, f):
    ctx = context(D, f)
    rng = random.Random(500 + D)
    count = 0
    for a in patterned_sample(ctx, rng, 84):
        for xi in xi_set(ctx):
            d = diff_set(ctx, a, xi)
            count += 1
            assert len(d) % 2 == 1
            for v in d:
                if not isinstance(v, int):
                    assert split_in_K(ctx, v) is not Split.SPLIT
    assert count >= 84


@pytest.mark.parametrize("D,f", CONFIGS, ids=CONFIG_IDS)
def test_y_independence(D, f):
    ctx = context(D, f)
    rng = random.Random(77 - D)
    for _ in range(10):
        a = ctx.F.random_in_ideal(inverse_different(ctx), rng, 12.0, (1,) * ctx.n)
        vals = [b_phi_closed(ctx, a, [y] * ctx.n) for y in (0.1, 1.0, 10.0)]
        assert vals[0] == vals[1] == vals[2]


@pytest.mark.parametrize("D,f", CONFIGS, ids=CONFIG_IDS)
def test_whittaker_matches_closed(D, f):
    ctx = context(D, f)
    rng = random.Random(3 * D)
    for a in patterned_sample(ctx, rng, 30):
        y = random_y(rng, ctx.n)
        assert b_phi_whittaker(ctx, a, y).equals(b_phi_closed(ctx, a, y))


def test_c_phi_over_q_is_single_term():
    ctx = context(-3, "x")
    for m in (1, 2, 5, -1, -4):
        c = c_phi(ctx, m, 1.0)
        b = b_phi_closed(ctx, ctx.F.elt(m), [1.0])
        assert c.finite == b.finite
        assert len(c.positive) + len(c.negative) == 1
        if b.arch is not None:
            assert len(c.arch_terms) == 1 and c.arch_terms[0].same(b.arch)


def test_c_phi_quadratic_m1():
    ctx = context(-7, "x^2-x-1")
    c = c_phi(ctx, 1, 1.0, 1e-9)
    assert len(c.positive) == 2
    total = LogLinear()
    for a in c.positive:
        total = total + b_phi_closed(ctx, a, [1.0, 1.0]).finite
    assert c.finite == total
    assert c.tail_bound < 1e-9
    assert c.radicand == 49


def test_c_phi_rejects_m_zero():
    with pytest.raises(InputError):
        c_phi(context(-3, "x"), 0, 1.0)
