"""The CM field K = K0 (x) F through its local data over F."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .algebra import InputError, factor_int, tame_hilbert_symbol
from .quadfield import ImagQuad, Split
from .totreal import FactoredIdeal, FElt, PrimeF, TotallyReal


class SharedOrEvenDiscriminant(InputError):
    pass


@dataclass(frozen=True)
class CMContext:
    k0: ImagQuad
    F: TotallyReal
    relative_disc: FactoredIdeal
    ram_finite: tuple
    r: int
    different: FactoredIdeal

    @property
    def n(self) -> int:
        return self.F.n

    @property
    def degree(self) -> int:
        """[K:Q]."""
        return 2 * self.F.n

    @property
    def rel_disc_norm(self) -> int:
        return abs(self.k0.disc) ** self.F.n

    def epsilon(self, P: PrimeF) -> int:
        return self.k0.epsilon(P.p)

    def __repr__(self):
        return f"CMContext(D={self.k0.disc}, F={self.F.f})"


def build_cm(k0: ImagQuad | int, F: TotallyReal) -> CMContext:
    if isinstance(k0, int):
        k0 = ImagQuad.build(k0)
    D = k0.disc
    if D % 2 == 0 or F.disc % 2 == 0:
        raise SharedOrEvenDiscriminant("discriminants of K0 and F must be odd")
    if gcd(D, F.disc) != 1:
        raise SharedOrEvenDiscriminant(
            f"discriminants {D} and {F.disc} are not relatively prime"
        )
    ram = []
    rel = {}
    for p in sorted(_prime_divisors(D)):
        for P in F.factor_rational_prime(p):
            ram.append(P)
            rel[P] = P.e
    relative_disc = FactoredIdeal(rel)
    r = len(ram) + F.n
    ctx = CMContext(k0, F, relative_disc, tuple(ram), r, F.different())
    assert relative_disc.norm() == abs(D) ** F.n
    return ctx


def _prime_divisors(D: int):
    return list(factor_int(D))


def split_in_K(ctx: CMContext, P: PrimeF) -> Split:
    p = P.p
    s = ctx.k0.splitting_at(p)
    if s is Split.RAMIFIED:
        return Split.RAMIFIED
    if s is Split.SPLIT:
        return Split.SPLIT
    return Split.SPLIT if P.f_deg % 2 == 0 else Split.INERT


def rho_local(kind: Split, exponent: int) -> int:
    if exponent < 0:
        return 0
    if kind is Split.SPLIT:
        return exponent + 1
    if kind is Split.INERT:
        return 1 if exponent % 2 == 0 else 0
    return 1


def rho(ctx: CMContext, b: FactoredIdeal) -> int:
    """Number of ideals B of O_K with B * conj(B) = b O_K."""
    out = 1
    for P, e in b.items():
        out *= rho_local(split_in_K(ctx, P), e)
        if not out:
            return 0
    return out


def chi(ctx: CMContext, alpha: FElt, place) -> int:
    """Local quadratic character of K/F at a finite prime or real place (int index)."""
    if alpha.is_zero():
        raise InputError("character of 0")
    F = ctx.F
    if isinstance(place, int):
        return F.signs(alpha)[place]
    kind = split_in_K(ctx, place)
    if kind is Split.SPLIT:
        return 1
    v = F.valuation(alpha, place)
    if kind is Split.INERT:
        return -1 if v % 2 else 1
    # ramified: (alpha, D)_P with uniformizer p (P unramified over p)
    p = place.p
    if place.e != 1:
        raise InputError("ramified character needs P unramified over Q")
    ua = F.residue(alpha.scale(Fraction(1, p) ** v), place)
    ud = ua.field(ctx.k0.disc // p)
    return tame_hilbert_symbol((v, ua), (1, ud))


chi_arch_and_finite = chi
