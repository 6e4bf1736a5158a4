"""Exact arithmetic substrate: rational polynomials, finite fields, factorization
over finite fields, integer Hermite normal form and the tame Hilbert symbol.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from functools import reduce
from math import gcd

from sympy import factorint as _factorint
from sympy import isprime as _isprime


class InputError(ValueError):
    """Raised on arguments outside an operation's domain."""


def is_prime(n: int) -> bool:
    return n >= 2 and bool(_isprime(n))


def factor_int(n: int) -> dict[int, int]:
    """Prime factorization of a nonzero integer (sign dropped)."""
    n = abs(int(n))
    if n == 0:
        raise InputError("cannot factor 0")
    if n == 1:
        return {}
    return {int(p): int(e) for p, e in _factorint(n).items()}


def vp(n, p: int) -> int:
    """p-adic valuation of a nonzero integer or Fraction."""
    n = Fraction(n)
    if n == 0:
        raise InputError("valuation of 0")
    v = 0
    a, b = n.numerator, n.denominator
    while a % p == 0:
        a //= p
        v += 1
    while b % p == 0:
        b //= p
        v -= 1
    return v


def divisor_count(n: int) -> int:
    out = 1
    for e in factor_int(n).values():
        out *= e + 1
    return out


# ---------------------------------------------------------------------------
# Rational polynomials


class Poly:
    """Univariate polynomial with rational coefficients, low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls) -> Poly:
        return cls((0, 1))

    @classmethod
    def parse(cls, text: str) -> Poly:
        """Parse ``x^3-x^2-2*x+1`` style input (integer coefficients, variable x)."""
        s = text.replace(" ", "").replace("**", "^")
        if not s:
            raise InputError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        pos = 0
        terms: dict[int, int] = {}
        pat = re.compile(r"([+-])(\d+)?(\*?x(\^(\d+))?)?")
        while pos < len(s):
            m = pat.match(s, pos)
            if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
                raise InputError(f"cannot parse polynomial {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            coeff = int(m.group(2)) if m.group(2) else 1
            if m.group(3):
                if m.group(3).startswith("*") and m.group(2) is None:
                    raise InputError(f"cannot parse polynomial {text!r}")
                deg = int(m.group(5)) if m.group(5) else 1
            else:
                deg = 0
            terms[deg] = terms.get(deg, 0) + sign * coeff
            pos = m.end()
        top = max(terms)
        return cls([terms.get(i, 0) for i in range(top + 1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                cs = "-" if c < 0 else "+"
            else:
                cs = f"{'-' if c < 0 else '+'}{abs(c)}{'*' if mono else ''}"
            parts.append(cs + mono)
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        q = [Fraction(0)] * max(len(r) - other.degree, 0)
        lc = other.lc
        while len(r) - 1 >= other.degree and r:
            shift = len(r) - 1 - other.degree
            c = r[-1] / lc
            q[shift] = c
            for i, b in enumerate(other.coeffs):
                r[i + shift] -= c * b
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        return Poly(q), Poly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def deriv(self) -> Poly:
        return Poly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def monic(self) -> Poly:
        return Poly(c / self.lc for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise InputError("polynomial has non-integral coefficients")
        return [int(c) for c in self.coeffs]


def _as_poly(x) -> Poly:
    return x if isinstance(x, Poly) else Poly((x,))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def sturm_sequence(f: Poly) -> list[Poly]:
    seq = [f, f.deriv()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        seq.append(-r)
    seq.pop()
    return seq


def sign_changes(seq: list[Poly], x) -> int:
    vals = [p(x) for p in seq]
    vals = [v for v in vals if v != 0]
    return sum(1 for a, b in zip(vals, vals[1:]) if (a > 0) != (b > 0))


def count_real_roots(f: Poly, lo=None, hi=None) -> int:
    """Number of distinct real roots of f in (lo, hi]; whole line by default."""
    seq = sturm_sequence(f)
    if lo is None:
        bound = root_bound(f)
        lo, hi = -bound, bound
    return sign_changes(seq, lo) - sign_changes(seq, hi)


def root_bound(f: Poly) -> Fraction:
    lc = abs(f.lc)
    return 1 + max((abs(c) / lc for c in f.coeffs[:-1]), default=Fraction(0))


# ---------------------------------------------------------------------------
# Finite fields F_{p^f}


class Fq:
    """The field F_p[t]/(m(t)) for a monic irreducible m (given as ints, low first)."""

    def __init__(self, p: int, modulus=(0, 1)):
        if not is_prime(p):
            raise InputError(f"{p} is not prime")
        mod = [int(c) % p for c in modulus]
        while mod and mod[-1] == 0:
            mod.pop()
        if not mod or mod[-1] != 1 or len(mod) < 2:
            raise InputError("modulus must be monic of degree >= 1")
        self.p = p
        self.modulus = tuple(mod)
        self.degree = len(mod) - 1
        self.order = p**self.degree

    def __eq__(self, other):
        return isinstance(other, Fq) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"Fq({self.p}, {self.modulus})"

    def __call__(self, value) -> FqElt:
        if isinstance(value, FqElt):
            return value
        if isinstance(value, int):
            return FqElt(self, (value % self.p,) + (0,) * (self.degree - 1))
        if isinstance(value, Fraction):
            return self(value.numerator) * self(value.denominator).inverse()
        return FqElt(self, self._reduce(list(value)))

    def _reduce(self, c: list[int]) -> tuple[int, ...]:
        p, m, d = self.p, self.modulus, self.degree
        c = [x % p for x in c]
        for i in range(len(c) - 1, d - 1, -1):
            a = c[i]
            if a:
                for j in range(d + 1):
                    c[i - d + j] = (c[i - d + j] - a * m[j]) % p
        c = c[:d] + [0] * (d - len(c))
        return tuple(c)

    @property
    def zero(self) -> FqElt:
        return self(0)

    @property
    def one(self) -> FqElt:
        return self(1)

    def gen(self) -> FqElt:
        return self([0, 1])

    def random(self, rng: random.Random) -> FqElt:
        return FqElt(self, tuple(rng.randrange(self.p) for _ in range(self.degree)))

    def elements(self):
        import itertools

        for c in itertools.product(range(self.p), repeat=self.degree):
            yield FqElt(self, tuple(c))


class FqElt:
    __slots__ = ("field", "coords")

    def __init__(self, field: Fq, coords: tuple[int, ...]):
        self.field = field
        self.coords = coords

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        return isinstance(other, FqElt) and self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash((self.field.p, self.field.modulus, self.coords))

    def __repr__(self):
        return f"FqElt{self.coords}"

    def __bool__(self):
        return any(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other):
        other = self.field(other)
        p = self.field.p
        return FqElt(self.field, tuple((a + b) % p for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FqElt(self.field, tuple(-a % p for a in self.coords))

    def __sub__(self, other):
        return self + (-self.field(other))

    def __rsub__(self, other):
        return self.field(other) - self

    def __mul__(self, other):
        other = self.field(other)
        a, b = self.coords, other.coords
        if self.field.degree == 1:
            return FqElt(self.field, ((a[0] * b[0]) % self.field.p,))
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return FqElt(self.field, self.field._reduce(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> FqElt:
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0 in a finite field")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        return self * self.field(other).inverse()

    def quadratic_character(self) -> int:
        """+1 on nonzero squares, -1 on non-squares (odd characteristic)."""
        if self.field.p == 2:
            raise InputError("quadratic character needs odd characteristic")
        if self.is_zero():
            return 0
        v = self ** ((self.field.order - 1) // 2)
        return 1 if v == self.field.one else -1


# Polynomials over Fq: tuples of FqElt, low degree first, no trailing zeros.


def _ptrim(a):
    a = list(a)
    while a and a[-1].is_zero():
        a.pop()
    return tuple(a)


def _padd(a, b):
    n = max(len(a), len(b))
    K = (a or b)[0].field if (a or b) else None
    if K is None:
        return ()
    z = K.zero
    return _ptrim((a[i] if i < len(a) else z) + (b[i] if i < len(b) else z) for i in range(n))


def _pneg(a):
    return tuple(-x for x in a)


def _psub(a, b):
    return _padd(a, _pneg(b))


def _pmul(a, b):
    if not a or not b:
        return ()
    K = a[0].field
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return _ptrim(out)


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    K = b[0].field
    r = list(a)
    db = len(b) - 1
    inv = b[-1].inverse()
    q = [K.zero] * max(len(r) - db, 0)
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        c = r[-1] * inv
        q[shift] = c
        for i, y in enumerate(b):
            r[i + shift] = r[i + shift] - c * y
        r.pop()
        while r and r[-1].is_zero():
            r.pop()
    return _ptrim(q), tuple(r)


def _pmod(a, b):
    return _pdivmod(a, b)[1]


def _pmonic(a):
    inv = a[-1].inverse()
    return tuple(x * inv for x in a)


def _pgcd(a, b):
    while b:
        a, b = b, _pmod(a, b)
    return _pmonic(a) if a else a


def _ppowmod(base, k: int, mod):
    K = mod[0].field
    result = (K.one,)
    base = _pmod(base, mod)
    while k:
        if k & 1:
            result = _pmod(_pmul(result, base), mod)
        base = _pmod(_pmul(base, base), mod)
        k >>= 1
    return result


def _pderiv(a):
    return _ptrim(x * i for i, x in enumerate(a) if i > 0)


def _pth_root(a):
    K = a[0].field
    p = K.p
    e = K.order // p
    return _ptrim(a[i] ** e for i in range(0, len(a), p))


def _squarefree(f):
    """Square-free decomposition of a monic polynomial: list of (g, multiplicity)."""
    K = f[0].field
    one = (K.one,)
    out = []
    c = _pgcd(f, _pderiv(f))
    w = _pdivmod(f, c)[0]
    i = 1
    while w != one:
        y = _pgcd(w, c)
        fac = _pdivmod(w, y)[0]
        if fac != one:
            out.append((fac, i))
        w = y
        c = _pdivmod(c, y)[0]
        i += 1
    if c != one:
        for g, m in _squarefree(_pth_root(c)):
            out.append((g, m * K.p))
    return out


def _distinct_degree(f):
    K = f[0].field
    x = (K.zero, K.one)
    out = []
    h = x
    i = 1
    g_rest = f
    while len(g_rest) - 1 >= 2 * i:
        h = _ppowmod(h, K.order, g_rest)
        g = _pgcd(g_rest, _psub(h, x))
        if len(g) > 1:
            out.append((g, i))
            g_rest = _pdivmod(g_rest, g)[0]
            h = _pmod(h, g_rest)
        i += 1
    if len(g_rest) > 1:
        out.append((g_rest, len(g_rest) - 1))
    return out


def _equal_degree(f, d: int, rng: random.Random):
    K = f[0].field
    n = len(f) - 1
    if n == d:
        return [f]
    factors = [f]
    while len(factors) < n // d:
        a = _ptrim(K.random(rng) for _ in range(n))
        if len(a) < 2:
            continue
        if K.p == 2:
            k = K.degree * d
            b = a
            t = a
            for _ in range(k - 1):
                t = _pmod(_pmul(t, t), f)
                b = _padd(b, t)
        else:
            b = _psub(_ppowmod(a, (K.order**d - 1) // 2, f), (K.one,))
        new = []
        for u in factors:
            if len(u) - 1 > d:
                g = _pgcd(u, b) if b else u
                if 1 < len(g) < len(u):
                    new.extend([g, _pdivmod(u, g)[0]])
                    continue
            new.append(u)
        factors = new
    return factors


def factor_over(field: Fq, coeffs, seed: int = 0):
    """Factor a polynomial over ``field`` into monic irreducibles.

    Returns a sorted list of (factor, multiplicity) with factors as tuples of
    FqElt (low degree first). Randomized splitting is driven by ``seed``.
    """
    f = _ptrim(field(c) for c in coeffs)
    if not f:
        raise InputError("cannot factor the zero polynomial")
    if len(f) == 1:
        return []
    f = _pmonic(f)
    rng = random.Random(seed)
    out = []
    for g, m in _squarefree(f):
        for h, d in _distinct_degree(g):
            for fac in _equal_degree(h, d, rng):
                out.append((fac, m))
    merged: dict = {}
    for fac, m in out:
        merged[fac] = merged.get(fac, 0) + m
    return sorted(merged.items(), key=lambda it: (len(it[0]), [x.coords for x in reversed(it[0])]))


def factor_poly_mod_p(f: Poly, p: int, seed: int = 0) -> list[tuple[Poly, int]]:
    """Factor an integer polynomial modulo a prime p into monic irreducibles."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    coeffs = f.int_coeffs()
    if all(c % p == 0 for c in coeffs):
        raise InputError("polynomial vanishes mod p")
    K = Fq(p)
    return [(Poly([x.coords[0] for x in g]), m) for g, m in factor_over(K, coeffs, seed)]


def poly_to_fq(field: Fq, g: Poly | tuple) -> tuple:
    coeffs = g.int_coeffs() if isinstance(g, Poly) else g
    return _ptrim(field(c) for c in coeffs)


# ---------------------------------------------------------------------------
# Hermite normal form

HnfMatrix = tuple  # tuple of row tuples, square, upper triangular


def hnf(rows, modulus: int | None = None) -> HnfMatrix:
    """Row-style upper triangular Hermite normal form of the lattice spanned by ``rows``.

    ``modulus`` may be any positive integer D with D*Z^k contained in the lattice;
    entries are then kept reduced mod D.
    """
    work = [list(map(int, r)) for r in rows]
    if not work:
        raise InputError("empty basis")
    k = len(work[0])
    D = abs(int(modulus)) if modulus is not None else None
    result = []
    for col in range(k):
        if D is not None:
            work = [[x % D for x in r] for r in work]
            work.append([D if j == col else 0 for j in range(k)])
        nz = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        if not nz:
            raise InputError("rank-deficient basis")
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            a = nz[0]
            keep = [a]
            for r in nz[1:]:
                q = r[col] // a[col]
                r2 = [x - q * y for x, y in zip(r, a)]
                (keep if r2[col] else rest).append(r2)
            nz = keep
        piv = nz[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        if D is not None:
            piv = piv[: col + 1] + [x % D for x in piv[col + 1 :]]
        result.append(piv)
        work = [r for r in rest if any(r)]
    for j in range(k):
        pj = result[j][j]
        for i in range(j):
            q = result[i][j] // pj
            if q:
                result[i] = [x - q * y for x, y in zip(result[i], result[j])]
    return tuple(tuple(r) for r in result)


def hnf_solve(H: HnfMatrix, x) -> list | None:
    """Integer coordinates of x in the HNF basis H, or None if x is not in the lattice."""
    x = [Fraction(v) for v in x]
    k = len(H)
    c = []
    for i in range(k):
        q = x[i] / H[i][i]
        if q.denominator != 1:
            return None
        q = int(q)
        c.append(q)
        if q:
            for j in range(i, k):
                x[j] -= q * H[i][j]
    return c


# ---------------------------------------------------------------------------
# Tame Hilbert symbol


def tame_hilbert_symbol(a: tuple[int, FqElt], b: tuple[int, FqElt]) -> int:
    """Quadratic Hilbert symbol of a, b in a local field with odd residue characteristic.

    Each argument is (valuation, residue of the unit part) with respect to one
    fixed uniformizer; the value is
    w((-1)^{v(a)v(b)} a^{v(b)} b^{-v(a)})^{(q-1)/2}.
    """
    va, ua = a
    vb, ub = b
    K = ua.field
    if K.p == 2:
        raise InputError("wild residue characteristic 2 is not supported")
    if ua.is_zero() or ub.is_zero():
        raise InputError("unit parts must be nonzero")
    x = ua**vb * ub ** (-va)
    if (va * vb) % 2:
        x = -x
    return x.quadratic_character()


def lcm(*xs: int) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), xs, 1)


def det(matrix) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] * inv
            if f:
                for j in range(c, n):
                    m[r][j] -= f * m[c][j]
    return out
