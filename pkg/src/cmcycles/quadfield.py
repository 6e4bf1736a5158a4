"""The imaginary quadratic field K0 = Q(sqrt(D)) for an odd fundamental discriminant D < 0."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd, isqrt

from .algebra import InputError, factor_int, hnf, is_prime


class Split(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


def validate_discriminant(D: int) -> None:
    if D >= 0:
        raise InputError(f"discriminant {D} is not negative")
    if D % 4 != 1:
        raise InputError(f"discriminant {D} is not an odd fundamental discriminant (need D = 1 mod 4)")
    if any(e > 1 for e in factor_int(D).values()):
        raise InputError(f"discriminant {D} is not squarefree")


def reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """Reduced primitive positive definite forms (a, b, c) with b^2 - 4ac = D."""
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a:
                continue
            if b < 0 and (a == c):
                continue
            if gcd(gcd(a, abs(b)), c) != 1:
                continue
            out.append((a, b, c))
        a += 1
    return out


def class_number(D: int) -> tuple[int, int]:
    """(h, w) for Q(sqrt(D)) by reduced-form enumeration."""
    validate_discriminant(D)
    h = len(reduced_forms(D))
    w = 6 if D == -3 else 2
    return h, w


def kronecker(D: int, p: int) -> int:
    """Kronecker symbol (D|p) for a prime p and D = 1 mod 4."""
    if D % p == 0:
        return 0
    if p == 2:
        return 1 if D % 8 in (1, 7) else -1
    return 1 if pow(D % p, (p - 1) // 2, p) == 1 else -1


def splitting_at(D: int, p: int) -> Split:
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    k = kronecker(D, p)
    if k == 0:
        return Split.RAMIFIED
    return Split.SPLIT if k == 1 else Split.INERT


def epsilon_p(D: int, p: int) -> int:
    """1 if Q(sqrt(D))/Q is unramified at p, 0 if ramified."""
    return 0 if splitting_at(D, p) is Split.RAMIFIED else 1


@dataclass(frozen=True)
class ImagQuad:
    disc: int
    h: int
    w: int

    @classmethod
    def build(cls, D: int) -> ImagQuad:
        h, w = class_number(D)
        return cls(D, h, w)

    def splitting_at(self, p: int) -> Split:
        return splitting_at(self.disc, p)

    def epsilon(self, p: int) -> int:
        return epsilon_p(self.disc, p)


def class_number_by_ideals(D: int) -> int:
    """Independent class number: ideal classes of O_{K0} represented below the Minkowski bound.

    Ideals are all HNF sublattices of Z + Z*omega closed under omega, and two ideals
    A, B are equivalent iff A * conj(B) contains an element of norm N(A)N(B).
    """
    validate_discriminant(D)
    c = (D - 1) // 4  # omega^2 = omega + c

    def mul(x, y):
        a, b = x
        u, v = y
        return (a * u + c * b * v, a * v + b * u + b * v)

    def conj(x):
        a, b = x
        return (a + b, -b)

    def norm(x):
        a, b = x
        return a * a + a * b - c * b * b

    # Minkowski bound (2/pi) sqrt|D| < 0.6367 sqrt|D|
    bound = isqrt(int(0.6367 * 0.6367 * (-D)) + 1) + 1
    ideals = []
    for N in range(1, bound + 1):
        for a in range(1, N + 1):
            if N % a:
                continue
            d = N // a
            for b in range(d):
                rows = ((a, b), (0, d))
                if all(_in_lattice(rows, mul(r, (0, 1))) for r in rows):
                    ideals.append(rows)

    def principal_product(A, B):
        rows = [mul(x, conj(y)) for x in A for y in B]
        H = hnf(rows)
        n = H[0][0] * H[1][1]
        # search x = u + v*omega in H with norm n: |v| <= 2 sqrt(n/|D|), |u + v/2| <= sqrt(n)
        vmax = isqrt(4 * n // (-D) + 1) + 1
        for v in range(-vmax, vmax + 1):
            umax = isqrt(n) + abs(v) + 1
            for u in range(-umax, umax + 1):
                if norm((u, v)) == n and _in_lattice(H, (u, v)):
                    return True
        return False

    reps: list = []
    for I in ideals:
        if not any(principal_product(I, R) for R in reps):
            reps.append(I)
    return len(reps)


def _in_lattice(rows, x) -> bool:
    (a, b), (_, d) = rows
    u, v = x
    if u % a:
        return False
    k = u // a
    return (v - k * b) % d == 0
