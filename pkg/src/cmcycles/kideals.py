"""Brute-force ideal arithmetic in O_K = O_F[omega], omega^2 = omega + (D-1)/4.

The splitting of a prime of F in K is recomputed here from a factorization of the
minimal polynomial of omega over the residue field, independently of the
character rules used by cmfield.
"""

from __future__ import annotations

from functools import lru_cache

from .algebra import Fq, Poly, factor_over
from .orders import Ideal, Order
from .totreal import FactoredIdeal, PrimeF


class OrderK(Order):
    """O_K with Z-basis theta^i omega^j, coordinate index i + n*j."""

    def __init__(self, ctx):
        self.ctx = ctx
        F = ctx.F
        n = F.n
        self.n = n
        self.c = (ctx.k0.disc - 1) // 4
        table = []
        for a in range(2 * n):
            row = []
            for b in range(2 * n):
                row.append(self._basis_product(a, b))
            table.append(row)
        super().__init__(table, name=f"O_K(D={ctx.k0.disc}, F={F.f})")
        conj = []
        for a in range(2 * n):
            r = [0] * (2 * n)
            if a < n:
                r[a] = 1
            else:  # theta^i omega -> theta^i - theta^i omega
                r[a - n] = 1
                r[a] = -1
            conj.append(r)
        self.conj_matrix = conj

    def _basis_product(self, a: int, b: int):
        n = self.n
        F = self.ctx.F
        i, j = a % n, a // n
        k, l = b % n, b // n
        th = F.from_poly(Poly.x() ** (i + k))
        coords = [int(x) for x in th.coords]
        out = [0] * (2 * n)
        w = j + l
        if w == 0:
            out[:n] = coords
        elif w == 1:
            out[n:] = coords
        else:  # omega^2 = omega + c
            out[:n] = [self.c * x for x in coords]
            out[n:] = coords
        return tuple(out)

    def lift_F(self, x) -> list[int]:
        """Integer coordinates of an element of O_F inside O_K."""
        return [int(v) for v in x] + [0] * self.n

    def ideal_of_F(self, basis_rows, modulus: int | None = None) -> Ideal:
        return self.ideal([self.lift_F(r) for r in basis_rows], modulus)


@lru_cache(maxsize=64)
def order_K(ctx) -> OrderK:
    return OrderK(ctx)


def ideal_mul(A: Ideal, B: Ideal) -> Ideal:
    return A * B


def conjugate(A: Ideal) -> Ideal:
    return A.transform(A.order.conj_matrix)


def extend(ctx, Q: PrimeF) -> Ideal:
    """Q O_K."""
    OK = order_K(ctx)
    return OK.ideal_of_F(ctx.F.prime_ideal(Q).basis, Q.p)


@lru_cache(maxsize=4096)
def primes_above(ctx, Q: PrimeF) -> tuple[tuple[Ideal, int], ...]:
    """Primes of O_K above Q with their ramification indices, from the factorization
    of x^2 - x - c over O_F/Q."""
    OK = order_K(ctx)
    F = ctx.F
    k = Fq(Q.p, Q.g)
    c = OK.c
    coeffs = (k(-c), k(-1), k.one)
    base = F.prime_ideal(Q).basis
    out = []
    for h, mult in factor_over(k, coeffs):
        if len(h) == 2:  # x - r, h = (-r, 1)
            r = -h[0]
            rt = list(r.coords) + [0] * (F.n - len(r.coords))
            gen = [-x for x in rt] + [1] + [0] * (F.n - 1)
            gens = [OK.lift_F(x) for x in base] + [gen]
            out.append((OK.ideal(gens, Q.p), mult))
        else:
            out.append((extend(ctx, Q), mult))
    return tuple(out)


def splitting_by_ideals(ctx, Q: PrimeF) -> str:
    """'split', 'inert' or 'ramified' decided from the O_K ideals alone."""
    ps = primes_above(ctx, Q)
    QK = extend(ctx, Q)
    NQ = Q.norm
    if len(ps) == 2:
        P1, P2 = ps[0][0], ps[1][0]
        assert P1 != P2 and P1.norm == NQ and P2.norm == NQ and P1 * P2 == QK
        return "split"
    (P, _), = ps
    if P.norm == NQ * NQ:
        assert P == QK
        return "inert"
    assert P.norm == NQ and P * P == QK
    return "ramified"


def ideal_of_factored(ctx, b: FactoredIdeal) -> Ideal:
    """b O_K for an integral ideal b of O_F."""
    OK = order_K(ctx)
    out = OK.unit_ideal()
    for Q, e in b.items():
        out = out * (extend(ctx, Q) ** e)
    return out


def _exponent_choices(norms, target):
    """Exponent vectors (one per prime) with prod norm_i^e_i = target."""
    if not norms:
        if target == 1:
            yield ()
        return
    N0 = norms[0]
    e = 0
    t = target
    while True:
        for rest in _exponent_choices(norms[1:], t):
            yield (e,) + rest
        if t % N0:
            return
        t //= N0
        e += 1


def brute_rho(ctx, b: FactoredIdeal) -> int:
    """#{B in O_K : B conj(B) = b O_K}, by enumeration of candidate B."""
    if not b.is_integral():
        return 0
    if b.is_unit():
        return 1
    target = ideal_of_factored(ctx, b)
    primes = []
    for Q, _ in b.items():
        for P, _mult in primes_above(ctx, Q):
            primes.append(P)
    NB = b.norm()
    assert NB.denominator == 1
    norms = [P.norm for P in primes]
    OK = order_K(ctx)
    count = 0
    for exps in _exponent_choices(norms, int(NB)):
        B = OK.unit_ideal()
        for P, e in zip(primes, exps):
            if e:
                B = B * (P ** e)
        if B * conjugate(B) == target:
            count += 1
    return count


def enumerate_integral_ideals(F, bound: int) -> list[FactoredIdeal]:
    """All integral ideals of O_F with norm <= bound."""
    from sympy import primerange

    primes = []
    for p in primerange(2, bound + 1):
        for P in F.factor_rational_prime(p):
            if P.norm <= bound:
                primes.append(P)
    out = []

    def rec(i, cur: dict, N: int):
        if i == len(primes):
            out.append(FactoredIdeal(cur))
            return
        P = primes[i]
        rec(i + 1, cur, N)
        e = 1
        M = N * P.norm
        while M <= bound:
            nxt = dict(cur)
            nxt[P] = e
            rec(i + 1, nxt, M)
            e += 1
            M *= P.norm

    rec(0, {}, 1)
    return out
