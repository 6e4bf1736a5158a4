"""Fourier coefficients of the central derivative of the incoherent Eisenstein series.

Two routes to b(alpha, y):
  * b_phi_whittaker assembles products of local Whittaker values and derivatives
    over the incoherent classes Xi;
  * b_phi_closed evaluates the resulting closed formula.
c_phi sums b_phi_closed over the trace-m slice of d_F^-1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import InputError
from .cmfield import CMContext, chi, rho, rho_local, split_in_K
from .quadfield import Split
from .special import beta1
from .tails import plan
from .totreal import FactoredIdeal, FElt, PrimeF
from .values import ArchTerm, EisValue, LogLinear


def y_vector(ctx: CMContext, y) -> list[float]:
    if isinstance(y, (int, float, Fraction)):
        ys = [float(y)] * ctx.n
    else:
        ys = [float(v) for v in y]
    if len(ys) != ctx.n or any(not v > 0 for v in ys):
        raise InputError(f"y must be {ctx.n} positive reals")
    return ys


def arch_argument(ctx: CMContext, alpha: FElt, v: int, y) -> float:
    """4 pi y_v |sigma_v(alpha)|."""
    ys = y_vector(ctx, y)
    return 4 * math.pi * ys[v] * abs(ctx.F.embeddings(alpha)[v])


def alpha_dF(ctx: CMContext, alpha: FElt) -> FactoredIdeal:
    return ctx.F.factor(alpha) * ctx.different


def _nonsplit(ctx, P) -> bool:
    return split_in_K(ctx, P) is not Split.SPLIT


def _log_norm(P: PrimeF) -> LogLinear:
    return LogLinear.log_of(P.p, P.f_deg)


# -- Xi and Diff --------------------------------------------------------------


@dataclass(frozen=True)
class XiClass:
    signs: tuple  # ((PrimeF, +-1), ...) over ram_finite

    def sign(self, P: PrimeF) -> int:
        for Q, s in self.signs:
            if Q == P:
                return s
        raise KeyError(P)

    def to_json(self):
        return {Q.label(): s for Q, s in self.signs}


def inert_correction(ctx: CMContext) -> int:
    """prod over primes inert in K of (-1)^ord(d_F)."""
    out = 1
    for P, e in ctx.different.items():
        if split_in_K(ctx, P) is Split.INERT and e % 2:
            out = -out
    return out


def xi_set(ctx: CMContext) -> list[XiClass]:
    ram = ctx.ram_finite
    if not ram:
        raise InputError("K/F is unramified at every finite prime")
    target = -inert_correction(ctx)
    out = []
    for signs in itertools.product((1, -1), repeat=len(ram)):
        if math.prod(signs) == target:
            out.append(XiClass(tuple(zip(ram, signs))))
    assert len(out) == 2 ** (len(ram) - 1)
    return out


def diff_set(ctx: CMContext, alpha: FElt, xi: XiClass, b: FactoredIdeal | None = None) -> tuple:
    """Places where the local character of alpha*c is -1 (real places as ints)."""
    if alpha.is_zero():
        raise InputError("Diff is undefined for alpha = 0")
    if b is None:
        b = alpha_dF(ctx, alpha)
    out = [v for v, s in enumerate(ctx.F.signs(alpha)) if s < 0]
    for P, e in b.items():
        if split_in_K(ctx, P) is Split.INERT and e % 2:
            out.append(P)
    for P in ctx.ram_finite:
        if chi(ctx, alpha, P) * xi.sign(P) == -1:
            out.append(P)
    if len(out) % 2 != 1:
        raise AssertionError(f"Diff has even cardinality {len(out)} for alpha={alpha}")
    return tuple(out)


# -- local factors --------------------------------------------------------------


@dataclass(frozen=True)
class LocalFactor:
    """rational * q^(-1/2 if radical) * (log q if log_q) * (beta_1(t) if t is not None)."""

    rational: Fraction
    radical: int = 1
    log_q: PrimeF | None = None
    t: float | None = None


def whittaker_term(ctx: CMContext, v, alpha: FElt, xi: XiClass, at_derivative: bool, y=None,
                   b: FactoredIdeal | None = None, diff: tuple | None = None) -> LocalFactor:
    if b is None:
        b = alpha_dF(ctx, alpha)
    if diff is None:
        diff = diff_set(ctx, alpha, xi, b)
    if (v in diff) != at_derivative:
        raise InputError(f"place {v} {'not ' if at_derivative else ''}in Diff")
    if isinstance(v, int):
        if not at_derivative:
            return LocalFactor(Fraction(2))
        return LocalFactor(Fraction(1), t=arch_argument(ctx, alpha, v, y))
    kind = split_in_K(ctx, v)
    o = b.ord(v)
    if kind is Split.RAMIFIED:
        # Yang's ramified case: 2 q^(-f/2) rho_v, f = ord_v(d_{K/F}) = 1
        assert ctx.relative_disc.ord(v) == 1
        val = 2 * rho_local(kind, o)
        if not at_derivative:
            return LocalFactor(Fraction(val), radical=v.norm)
        return LocalFactor(Fraction(o + 1, 2) * val, radical=v.norm, log_q=v)
    if not at_derivative:
        return LocalFactor(Fraction(rho_local(kind, o)))
    return LocalFactor(Fraction(o + 1, 2) * rho_local(kind, o - 1), log_q=v)


def b_phi_whittaker(ctx: CMContext, alpha: FElt, y) -> EisValue:
    if alpha.is_zero():
        raise InputError("constant term (alpha = 0) is out of scope")
    b = alpha_dF(ctx, alpha)
    places = list(range(ctx.n))
    for P in list(ctx.ram_finite) + b.primes():
        if P not in places:
            places.append(P)
    N = ctx.rel_disc_norm
    finite = LogLinear()
    arch = None
    for xi in xi_set(ctx):
        diff = diff_set(ctx, alpha, xi, b)
        if len(diff) != 1:
            continue  # vanishing order > 1 at s = 0
        rational = Fraction(-1)  # global root number
        radical = 1
        log_at = None
        t = None
        for v in places:
            lf = whittaker_term(ctx, v, alpha, xi, v in diff, y, b, diff)
            rational *= lf.rational
            radical *= lf.radical
            if lf.log_q is not None:
                log_at = lf.log_q
            if lf.t is not None:
                t = lf.t
        assert radical == N, (radical, N)
        if not rational:
            continue
        if log_at is not None:
            finite = finite + _log_norm(log_at).scale(rational)
        else:
            assert t is not None
            arch = ArchTerm(rational, t) if arch is None else ArchTerm(arch.coeff + rational, arch.t)
    return EisValue(N, finite, arch)


def b_phi_closed(ctx: CMContext, alpha: FElt, y, eps=None) -> EisValue:
    """Closed form; ``eps`` optionally overrides the map P -> epsilon_P."""
    if alpha.is_zero():
        raise InputError("constant term (alpha = 0) is out of scope")
    N = ctx.rel_disc_norm
    scale = -(2 ** (ctx.r - 1))
    signs = ctx.F.signs(alpha)
    neg = [v for v, s in enumerate(signs) if s < 0]
    if len(neg) >= 2:
        return EisValue(N)
    b = alpha_dF(ctx, alpha)
    if len(neg) == 1:
        r0 = rho(ctx, b)
        if not r0:
            return EisValue(N)
        return EisValue(N, arch=ArchTerm(Fraction(scale * r0), arch_argument(ctx, alpha, neg[0], y)))
    finite = LogLinear()
    for P in _support_primes(ctx, b):
        e = ctx.epsilon(P) if eps is None else eps(P)
        P1 = FactoredIdeal({P: 1})
        k = (b * P1).ord(P) * rho(ctx, b / P1 ** e)
        if k:
            finite = finite + _log_norm(P).scale(scale * k)
    return EisValue(N, finite)


def _support_primes(ctx, b: FactoredIdeal) -> list[PrimeF]:
    seen = []
    for P in b.primes() + list(ctx.ram_finite):
        if P not in seen and _nonsplit(ctx, P):
            seen.append(P)
    return seen


# -- diagonal restriction -------------------------------------------------------


@dataclass
class CPhiValue:
    """sum over Tr(alpha) = m of b(alpha, y) = radicand^(-1/2) (finite + sum arch)."""

    radicand: int
    finite: LogLinear
    arch_terms: list = field(default_factory=list)
    truncation: int | None = None
    tail_bound: float = 0.0
    positive: list = field(default_factory=list)
    negative: list = field(default_factory=list)

    def arch_value(self) -> float:
        return math.fsum(float(a.coeff) * beta1(a.t).value for a in self.arch_terms)

    def arch_eval_error(self) -> float:
        return math.fsum(abs(float(a.coeff)) * beta1(a.t).error for a in self.arch_terms)

    def evaluate(self) -> float:
        return (self.finite.evaluate() + self.arch_value()) / math.sqrt(self.radicand)


def trace_slices(ctx: CMContext, m: int, T: int | None):
    """(totally positive, one-negative with |sigma_v| <= T) elements of d_F^-1 of trace m."""
    F = ctx.F
    M = FactoredIdeal.unit() / ctx.different
    n = F.n
    pos, neg = [], []
    if n == 1:
        a = F.elt(m)
        (pos if m > 0 else neg).append(a)
        return pos, neg
    if m > 0:
        pos = F.enumerate_trace(M, m, [(0, m)] * n, open_box=True)
    hi = max(m, 0) + T
    for v in range(n):
        box = [(0, hi)] * n
        box[v] = (-T, 0)
        for a in F.enumerate_trace(M, m, box):
            s = F.signs(a)
            if s[v] < 0 and sum(1 for x in s if x < 0) == 1:
                neg.append(a)
    return pos, neg


def c_phi(ctx: CMContext, m: int, y: float, tol: float = 1e-9) -> CPhiValue:
    if m == 0:
        raise InputError("m = 0 (constant term) is out of scope")
    y = float(y)
    if not y > 0:
        raise InputError("y must be positive")
    F = ctx.F
    N = ctx.rel_disc_norm
    T = None
    bound = 0.0
    if F.n > 1:
        sl = F.trace_slice(FactoredIdeal.unit() / ctx.different, m)
        kernel = sl[1] if sl else []
        p = plan(F, kernel, m, y, 2 ** (ctx.r - 1) / math.sqrt(N), tol)
        T, bound = p.T, p.bound
    pos, neg = trace_slices(ctx, m, T)
    finite = LogLinear()
    for a in pos:
        bv = b_phi_closed(ctx, a, y)
        assert bv.radicand == N and bv.arch is None
        finite = finite + bv.finite
    arch = []
    for a in neg:
        bv = b_phi_closed(ctx, a, y)
        if bv.arch is not None and bv.arch.coeff:
            arch.append(bv.arch)
    return CPhiValue(N, finite, arch, T, bound, pos, neg)
