"""Totally real fields F = Q(theta) with Z[theta] maximal.

Elements are exact rational coordinate vectors in the power basis; prime ideals
come from Dedekind's factorization of the defining polynomial mod p; real
embeddings are handled through certified rational root enclosures.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from sympy import Poly as _SymPoly
from sympy import symbols as _symbols

from .algebra import (
    Fq,
    _pgcd,
    InputError,
    Poly,
    count_real_roots,
    det,
    factor_int,
    factor_poly_mod_p,
    lcm,
    poly_to_fq,
    root_bound,
    vp,
)
from .orders import Ideal, Order


class NotTotallyReal(InputError):
    pass


class NotMonogenicMaximal(InputError):
    pass


class EvenDiscriminant(InputError):
    pass


class NotIrreducible(InputError):
    pass


@dataclass(frozen=True)
class FElt:
    """Element of F as rational coordinates in the basis 1, theta, ..., theta^(n-1)."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def __add__(self, other: FElt) -> FElt:
        return FElt(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: FElt) -> FElt:
        return FElt(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> FElt:
        return FElt(tuple(-a for a in self.coords))

    def scale(self, c) -> FElt:
        c = Fraction(c)
        return FElt(tuple(c * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def denominator(self) -> int:
        return lcm(*(c.denominator for c in self.coords))

    def __repr__(self):
        return "FElt(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class PrimeF:
    """Prime of O_F above p, written (p, g(theta)) with g an irreducible factor of f mod p."""

    p: int
    g: tuple  # monic integer coefficients in [0, p), low first
    f_deg: int
    e: int
    basis: tuple = field(compare=False, repr=False, default=())

    @property
    def norm(self) -> int:
        return self.p**self.f_deg

    def label(self) -> str:
        gs = str(Poly(self.g))
        return f"({self.p}, {gs})"


class FactoredIdeal:
    """Fractional ideal of O_F as a finitely supported map prime -> exponent."""

    __slots__ = ("_exps", "_key")

    def __init__(self, exps=None):
        d = {}
        for P, e in (exps or {}).items():
            if e:
                d[P] = d.get(P, 0) + int(e)
        self._exps = {P: e for P, e in d.items() if e}
        self._key = frozenset(self._exps.items())

    @classmethod
    def unit(cls) -> FactoredIdeal:
        return cls()

    def items(self):
        return sorted(self._exps.items(), key=lambda it: (it[0].p, it[0].g))

    def primes(self) -> list[PrimeF]:
        return [P for P, _ in self.items()]

    def ord(self, P: PrimeF) -> int:
        return self._exps.get(P, 0)

    def __mul__(self, other: FactoredIdeal) -> FactoredIdeal:
        d = dict(self._exps)
        for P, e in other._exps.items():
            d[P] = d.get(P, 0) + e
        return FactoredIdeal(d)

    def __truediv__(self, other: FactoredIdeal) -> FactoredIdeal:
        return self * other ** -1

    def __pow__(self, k: int) -> FactoredIdeal:
        return FactoredIdeal({P: e * k for P, e in self._exps.items()})

    def __eq__(self, other):
        return isinstance(other, FactoredIdeal) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __bool__(self):
        return True

    def is_integral(self) -> bool:
        return all(e >= 0 for e in self._exps.values())

    def is_unit(self) -> bool:
        return not self._exps

    def norm(self) -> Fraction:
        out = Fraction(1)
        for P, e in self._exps.items():
            out *= Fraction(P.norm) ** e
        return out

    def __repr__(self):
        if not self._exps:
            return "(1)"
        return " * ".join(f"{P.label()}^{e}" for P, e in self.items())


def _power_table(f: list[int]):
    """Multiplication table of Z[x]/(f) in the power basis."""
    n = len(f) - 1
    powers = []
    cur = [1] + [0] * (n - 1)
    for _ in range(2 * n - 1):
        powers.append(cur)
        # multiply by x, reduce by monic f
        nxt = [0] + cur[:-1]
        top = cur[-1]
        if top:
            nxt = [a - top * f[i] for i, a in enumerate(nxt)]
        cur = nxt
    return [[powers[i + j] for j in range(n)] for i in range(n)]


def _interval_eval(coeffs, lo: Fraction, hi: Fraction):
    """Enclosure of sum c_i x^i for x in [lo, hi]."""
    a = b = Fraction(0)
    for c in reversed(coeffs):
        prods = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(prods) + c, max(prods) + c
    return a, b


class TotallyReal:
    """A totally real field with monogenic maximal order Z[theta], odd discriminant."""

    ROOT_PRECISION = Fraction(1, 2**90)

    def __init__(self, f: Poly):
        if f.lc != 1 or not f.is_integral() or f.degree < 1:
            raise InputError("defining polynomial must be monic with integer coefficients")
        self.f = f
        self.n = f.degree
        self._fi = f.int_coeffs()
        self.order = Order(_power_table(self._fi), name=f"Z[x]/({f})")
        self._lock = threading.Lock()
        self._primes: dict[int, list[PrimeF]] = {}
        self._prime_ideals: dict[PrimeF, Ideal] = {}
        self._check_irreducible()
        self.disc = int(self._disc())
        if self.n > 1 and count_real_roots(f) != self.n:
            raise NotTotallyReal(f"{f} is not totally real")
        if self.disc % 2 == 0:
            raise EvenDiscriminant(f"disc({f}) = {self.disc} is even")
        for p, e in factor_int(self.disc).items():
            if e >= 2 and not self._dedekind_maximal(p):
                raise NotMonogenicMaximal(f"Z[theta] is not maximal at {p} for {f}")
        self._roots = self._isolate_roots()

    # -- construction helpers -------------------------------------------------

    def _check_irreducible(self):
        if self.n == 1:
            return
        x = _symbols("x")
        sp = _SymPoly(list(reversed(self._fi)), x)
        if not sp.is_irreducible:
            raise NotIrreducible(f"{self.f} is reducible over Q")

    def _disc(self) -> Fraction:
        n = self.n
        fp = self.f.deriv()
        fp_elt = FElt(tuple(fp.coeffs) + (0,) * (n - len(fp.coeffs)))
        sign = -1 if (n * (n - 1) // 2) % 2 else 1
        return sign * self.norm(fp_elt)

    def _dedekind_maximal(self, p: int) -> bool:
        facs = factor_poly_mod_p(self.f, p)
        g = Poly((1,))
        h = Poly((1,))
        for fac, e in facs:
            g = g * fac
            h = h * fac ** (e - 1)
        F = (g * h - self.f)
        F = Poly(c / p for c in F.coeffs)
        K = Fq(p)
        gcd = _pgcd(_pgcd(poly_to_fq(K, F), poly_to_fq(K, g)), poly_to_fq(K, h))
        return len(gcd) <= 1

    def _isolate_roots(self) -> list[tuple[Fraction, Fraction]]:
        if self.n == 1:
            r = Fraction(-self._fi[0])
            return [(r, r)]
        B = root_bound(self.f)
        stack = [(-B, B)]
        found = []
        while stack:
            lo, hi = stack.pop()
            k = count_real_roots(self.f, lo, hi)
            if k == 0:
                continue
            if k == 1 and self.f(lo) != 0:
                found.append((lo, hi))
                continue
            mid = (lo + hi) / 2
            stack.extend([(lo, mid), (mid, hi)])
        found = [self._refine(lo, hi, self.ROOT_PRECISION) for lo, hi in found]
        found.sort(key=lambda iv: iv[0], reverse=True)
        return found

    def _refine(self, lo: Fraction, hi: Fraction, width: Fraction):
        f = self.f
        flo = f(lo)
        if f(hi) == 0:
            return hi, hi
        while hi - lo > width:
            mid = (lo + hi) / 2
            fm = f(mid)
            if fm == 0:
                return mid, mid
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
            else:
                hi = mid
        return lo, hi

    # -- elements -------------------------------------------------------------

    def elt(self, *coords) -> FElt:
        c = list(coords) + [0] * (self.n - len(coords))
        if len(c) != self.n:
            raise InputError(f"expected {self.n} coordinates")
        return FElt(tuple(c))

    def theta(self) -> FElt:
        return self.elt(0, 1) if self.n > 1 else self.elt(-self._fi[0])

    def from_poly(self, g: Poly) -> FElt:
        r = g % self.f
        return self.elt(*r.coeffs)

    def mul(self, a: FElt, b: FElt) -> FElt:
        n = self.n
        out = [Fraction(0)] * n
        table = self.order.table
        for i, x in enumerate(a.coords):
            if x:
                for j, y in enumerate(b.coords):
                    if y:
                        xy = x * y
                        for t, c in enumerate(table[i][j]):
                            if c:
                                out[t] += xy * c
        return FElt(tuple(out))

    def mult_matrix(self, a: FElt):
        basis = [self.elt(*([0] * i + [1])) for i in range(self.n)]
        return [list(self.mul(a, b).coords) for b in basis]

    def norm(self, a: FElt) -> Fraction:
        return det(self.mult_matrix(a))

    def trace(self, a: FElt) -> Fraction:
        m = self.mult_matrix(a)
        return sum((m[i][i] for i in range(self.n)), Fraction(0))

    def inverse(self, a: FElt) -> FElt:
        if a.is_zero():
            raise ZeroDivisionError("inverse of 0")
        # solve x * M = e_0 where rows of M are a * b_i
        M = self.mult_matrix(a)
        n = self.n
        aug = [[M[j][i] for j in range(n)] + [Fraction(1 if i == 0 else 0)] for i in range(n)]
        for c in range(n):
            piv = next(r for r in range(c, n) if aug[r][c] != 0)
            aug[c], aug[piv] = aug[piv], aug[c]
            inv = 1 / aug[c][c]
            aug[c] = [v * inv for v in aug[c]]
            for r in range(n):
                if r != c and aug[r][c]:
                    fac = aug[r][c]
                    aug[r] = [v - fac * w for v, w in zip(aug[r], aug[c])]
        return FElt(tuple(aug[i][n] for i in range(n)))

    # -- primes and valuations ------------------------------------------------

    def factor_rational_prime(self, p: int) -> list[PrimeF]:
        with self._lock:
            cached = self._primes.get(p)
            if cached is not None:
                return cached
            out = []
            for g, e in factor_poly_mod_p(self.f, p):
                gi = tuple(g.int_coeffs())
                gelt = self.elt(*gi) if len(gi) <= self.n else self.from_poly(g)
                I = self.order.ideal([[p] + [0] * (self.n - 1), [int(c) for c in gelt.coords]], modulus=p)
                P = PrimeF(p, gi, g.degree, e, basis=I.basis)
                self._prime_ideals[P] = I
                out.append(P)
            self._primes[p] = out
            return out

    def prime_ideal(self, P: PrimeF) -> Ideal:
        if P not in self._prime_ideals:
            self.factor_rational_prime(P.p)
        return self._prime_ideals[P]

    def prime(self, p: int, index: int = 0) -> PrimeF:
        return self.factor_rational_prime(p)[index]

    def valuation(self, a: FElt, P: PrimeF) -> int:
        if a.is_zero():
            raise InputError("valuation of 0 is not representable")
        d = a.denominator()
        gamma = [int(c * d) for c in a.coords]
        v = -P.e * vp(d, P.p) if d % P.p == 0 else 0
        Ng = self.norm(FElt(tuple(gamma)))
        kmax = vp(Ng, P.p) // P.f_deg
        I = self.prime_ideal(P)
        k = 0
        while k < kmax and gamma in I ** (k + 1):
            k += 1
        return v + k

    def factor(self, a: FElt) -> FactoredIdeal:
        """Prime factorization of the principal fractional ideal aO_F."""
        if a.is_zero():
            raise InputError("cannot factor the zero ideal")
        d = a.denominator()
        gamma = FElt(tuple(c * d for c in a.coords))
        Ng = self.norm(gamma)
        ps = set(factor_int(Ng.numerator)) | set(factor_int(d))
        exps = {}
        for p in sorted(ps):
            for P in self.factor_rational_prime(p):
                exps[P] = self.valuation(a, P)
        return FactoredIdeal(exps)

    def different(self) -> FactoredIdeal:
        fp = self.f.deriv()
        return self.factor(self.from_poly(fp) if self.n > 1 else self.elt(1))

    def ideal_lattice(self, M: FactoredIdeal) -> tuple[tuple, int]:
        """Z-basis of M as (integral HNF rows, D) with M = (1/D) * span(rows)."""
        D = 1
        J = self.order.unit_ideal()
        for P, e in M.items():
            if e > 0:
                J = J * self.prime_ideal(P) ** e
            else:
                # P^-1 = p^-1 * P^(e_P - 1) * prod_{Q | p, Q != P} Q^(e_Q)
                co = self.order.unit_ideal()
                for Q in self.factor_rational_prime(P.p):
                    co = co * self.prime_ideal(Q) ** (Q.e - (1 if Q == P else 0))
                J = J * co ** (-e)
                D *= P.p ** (-e)
        return J.basis, D

    def ideal_basis(self, M: FactoredIdeal) -> list[FElt]:
        rows, D = self.ideal_lattice(M)
        return [FElt(tuple(Fraction(x, D) for x in r)) for r in rows]

    def residue(self, a: FElt, P: PrimeF):
        """Image of a P-integral element in the residue field O_F/P (as an FqElt)."""
        K = Fq(P.p, P.g)
        p = P.p
        if a.is_zero():
            return K.zero
        d = a.denominator()
        k = vp(d, p) if d % p == 0 else 0
        d0 = d // p**k
        gamma = FElt(tuple(c * d for c in a.coords))
        if k:
            h = self.elt(1)
            for Q in self.factor_rational_prime(p):
                if Q != P:
                    gq = self.from_poly(Poly(Q.g))
                    for _ in range(Q.e):
                        h = self.mul(h, gq)
            hk = self.elt(1)
            for _ in range(k):
                hk = self.mul(hk, h)
            num = self.mul(hk, gamma).scale(Fraction(1, p**k))
            if num.denominator() != 1:
                raise InputError("element is not integral at the prime")
            return self._reduce(K, num) / (self._reduce(K, hk) * K(d0))
        return self._reduce(K, gamma) / K(d0)

    @staticmethod
    def _reduce(K: Fq, a: FElt):
        return K([int(c) for c in a.coords])

    # -- real embeddings ------------------------------------------------------

    def embeddings(self, a: FElt) -> list[float]:
        out = []
        for lo, hi in self._roots:
            mid = (lo + hi) / 2
            out.append(float(Poly(a.coords)(mid)))
        return out

    def embedding_exact(self, a: FElt, j: int) -> Fraction:
        lo, hi = self._roots[j]
        return Poly(a.coords)((lo + hi) / 2)

    def compare_embedding(self, a: FElt, j: int, c) -> int:
        """Exact sign of sigma_j(a) - c for rational c."""
        b = a - self.elt(Fraction(c))
        if b.is_zero():
            return 0
        if b.is_rational():
            return 1 if b.coords[0] > 0 else -1
        lo, hi = self._roots[j]
        coeffs = b.coords
        width = hi - lo
        while True:
            s, t = _interval_eval(coeffs, lo, hi)
            if s > 0:
                return 1
            if t < 0:
                return -1
            width /= 2**20
            lo, hi = self._refine(lo, hi, width)

    def signs(self, a: FElt) -> list[int]:
        if a.is_zero():
            raise InputError("sign of 0")
        return [self.compare_embedding(a, j, 0) for j in range(self.n)]

    def is_totally_positive(self, a: FElt) -> bool:
        return not a.is_zero() and all(s > 0 for s in self.signs(a))

    # -- trace slices ---------------------------------------------------------

    def trace_slice(self, M: FactoredIdeal, m: int):
        """(alpha0, kernel) with {x in M : Tr x = m} = alpha0 + Z-span(kernel); None if empty."""
        basis = self.ideal_basis(M)
        traces = [self.trace(b) for b in basis]
        L = lcm(*(t.denominator for t in traces))
        t = [int(x * L) for x in traces]
        n = self.n
        U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for i in range(1, n):
            a, b = t[0], t[i]
            if b == 0:
                continue
            g, x, y = _xgcd(a, b)
            col0 = [x * U[r][0] + y * U[r][i] for r in range(n)]
            coli = [(-b // g) * U[r][0] + (a // g) * U[r][i] for r in range(n)]
            for r in range(n):
                U[r][0], U[r][i] = col0[r], coli[r]
            t[0], t[i] = g, 0
        target = Fraction(m) * L
        if t[0] == 0 or target.denominator != 1 or int(target) % t[0]:
            return None
        c0 = int(target) // t[0]

        def combo(col, scale=1):
            out = self.elt(0)
            for r in range(n):
                if U[r][col]:
                    out = out + basis[r].scale(U[r][col] * scale)
            return out

        alpha0 = combo(0, c0)
        kernel = [combo(j) for j in range(1, n)]
        return alpha0, kernel

    def enumerate_trace(self, M: FactoredIdeal, m: int, box, open_box: bool = False) -> list[FElt]:
        """All alpha in M with Tr(alpha) = m and sigma_j(alpha) in box[j] = (lo_j, hi_j).

        Intervals are closed unless ``open_box`` is set.
        """
        sl = self.trace_slice(M, m)
        if sl is None:
            return []
        alpha0, kernel = sl
        box = [(Fraction(lo), Fraction(hi)) for lo, hi in box]
        if not kernel:
            cands = [alpha0]
        else:
            E = np.array([self.embeddings(k) for k in kernel])
            s0 = np.array(self.embeddings(alpha0))
            P = E.T @ np.linalg.inv(E @ E.T)
            ranges = []
            for i in range(len(kernel)):
                lo_i = hi_i = 0.0
                for j in range(self.n):
                    c = P[j, i]
                    a = float(box[j][0]) - s0[j]
                    b = float(box[j][1]) - s0[j]
                    lo_i += min(c * a, c * b)
                    hi_i += max(c * a, c * b)
                slack = 1e-6 * (1 + abs(lo_i) + abs(hi_i))
                ranges.append(range(math.floor(lo_i - slack) - 1, math.ceil(hi_i + slack) + 2))
            cands = []
            for ks in itertools.product(*ranges):
                a = alpha0
                for k, vec in zip(ks, kernel):
                    if k:
                        a = a + vec.scale(k)
                cands.append(a)
        out = []
        for a in cands:
            ok = True
            for j, (lo, hi) in enumerate(box):
                s_lo = self.compare_embedding(a, j, lo)
                s_hi = self.compare_embedding(a, j, hi)
                if open_box:
                    ok = s_lo > 0 and s_hi < 0
                else:
                    ok = s_lo >= 0 and s_hi <= 0
                if not ok:
                    break
            if ok:
                out.append(a)
        return out

    def random_in_ideal(self, M: FactoredIdeal, rng, radius: float = 20.0, signs=None, tries: int = 200) -> FElt:
        """A random nonzero element of M, optionally with prescribed embedding signs."""
        basis = self.ideal_basis(M)
        B = np.array([self.embeddings(b) for b in basis])
        Binv = np.linalg.inv(B)
        for _ in range(tries):
            if signs is None:
                z = [rng.uniform(-radius, radius) for _ in range(self.n)]
            else:
                z = [s * rng.uniform(0.05, 1.0) * radius for s in signs]
            ks = np.rint(np.array(z) @ Binv).astype(int)
            a = self.elt(0)
            for k, b in zip(ks, basis):
                if k:
                    a = a + b.scale(int(k))
            if a.is_zero():
                continue
            if signs is None or self.signs(a) == list(signs):
                return a
        raise RuntimeError("could not sample an element with the requested signs")

    def __repr__(self):
        return f"TotallyReal({self.f})"


def _xgcd(a: int, b: int):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def normalize_quadratic(f: Poly) -> Poly:
    """For a quadratic f, the minimal polynomial of a generator of the maximal order
    of the same field when its discriminant is odd: x^2 - x - (d - 1)/4 for the
    squarefree part d = 1 mod 4 of disc(f). Other polynomials are returned as is."""
    if f.degree != 2 or f.lc != 1 or not f.is_integral():
        return f
    c, b, _ = f.int_coeffs()
    D = b * b - 4 * c
    if D <= 0:
        return f
    d = 1
    for p, e in factor_int(D).items():
        if e % 2:
            d *= p
    if d == 1 or d % 4 != 1:
        return f
    return Poly((-(d - 1) // 4, -1, 1))


def build_field(f: Poly | str) -> TotallyReal:
    if isinstance(f, str):
        f = Poly.parse(f)
    return TotallyReal(f)
