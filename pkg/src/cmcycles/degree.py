"""Arithmetic degrees of CM 0-cycles and the comparisons with Fourier coefficients."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import InputError
from .cmfield import CMContext, rho, split_in_K
from .eisenstein import CPhiValue, alpha_dF, arch_argument, b_phi_closed, c_phi, trace_slices
from .quadfield import Split
from .special import beta1
from .tails import plan
from .totreal import FactoredIdeal, FElt, PrimeF
from .values import ArchTerm, DegreeValue, LogLinear, degree_from_eis


def _weight(ctx: CMContext) -> Fraction:
    return Fraction(ctx.k0.h, ctx.k0.w)


def _require_nonsplit(ctx, P: PrimeF) -> Split:
    kind = split_in_K(ctx, P)
    if kind is Split.SPLIT:
        raise InputError(f"{P.label()} splits in K")
    return kind


def _a(a: FactoredIdeal | None) -> FactoredIdeal:
    return FactoredIdeal.unit() if a is None else a


def local_length(ctx: CMContext, alpha: FElt, P: PrimeF, a: FactoredIdeal | None = None) -> Fraction:
    """(e_P / 2) * ord_P(alpha P a^-1 d_F)."""
    if alpha.is_zero():
        raise InputError("alpha = 0")
    kind = _require_nonsplit(ctx, P)
    e = 2 if kind is Split.RAMIFIED else 1
    v = ctx.F.valuation(alpha, P) + 1 + ctx.different.ord(P) - _a(a).ord(P)
    return Fraction(e, 2) * v


def point_count(ctx: CMContext, alpha: FElt, P: PrimeF, a: FactoredIdeal | None = None, eps=None) -> Fraction:
    """(h/w) * rho(alpha d_F a^-1 P^-eps)."""
    if not ctx.F.is_totally_positive(alpha):
        raise InputError("alpha is not totally positive")
    _require_nonsplit(ctx, P)
    e = ctx.epsilon(P) if eps is None else eps(P)
    b = alpha_dF(ctx, alpha) / _a(a) / FactoredIdeal({P: e})
    return _weight(ctx) * rho(ctx, b)


def arakelov_degree(ctx: CMContext, alpha: FElt, a: FactoredIdeal | None = None, eps=None) -> DegreeValue:
    if not ctx.F.is_totally_positive(alpha):
        raise InputError("alpha is not totally positive")
    a = _a(a)
    b = alpha_dF(ctx, alpha) / a
    primes = []
    for P in b.primes() + list(ctx.ram_finite):
        if P not in primes and split_in_K(ctx, P) is not Split.SPLIT:
            primes.append(P)
    deg_K = 2 * ctx.n
    out = LogLinear()
    for P in primes:
        e = ctx.epsilon(P) if eps is None else eps(P)
        o = (b * FactoredIdeal({P: 1})).ord(P)
        term = _weight(ctx) * o * rho(ctx, b / FactoredIdeal({P: e})) / deg_K
        # same term through lengths and point counts; e_P / 2 cancels
        eP = 2 if split_in_K(ctx, P) is Split.RAMIFIED else 1
        alt = local_length(ctx, alpha, P, a) * point_count(ctx, alpha, P, a, eps) * Fraction(2, eP) / deg_K
        assert term == alt
        if term:
            out = out + LogLinear.log_of(P.p, P.f_deg * term)
    return DegreeValue(out)


def zhat_degree(ctx: CMContext, alpha: FElt, y, eps=None) -> DegreeValue:
    if alpha.is_zero():
        raise InputError("alpha = 0")
    neg = [v for v, s in enumerate(ctx.F.signs(alpha)) if s < 0]
    if not neg:
        return arakelov_degree(ctx, alpha, None, eps)
    if len(neg) > 1:
        return DegreeValue()
    r0 = rho(ctx, alpha_dF(ctx, alpha))
    if not r0:
        return DegreeValue()
    coeff = _weight(ctx) * r0 / (2 * ctx.n)
    return DegreeValue(arch=ArchTerm(coeff, arch_argument(ctx, alpha, neg[0], y)))


def theorem_constant(ctx: CMContext) -> Fraction:
    """-(h/w) / (2^(r-1) [K:Q]); the sqrt N(d_{K/F}) factor cancels the radicand."""
    return -_weight(ctx) / (2 ** (ctx.r - 1) * 2 * ctx.n)


@dataclass
class VerifyReport:
    ok: bool
    lhs: DegreeValue
    rhs: DegreeValue
    diffs: list = field(default_factory=list)  # (ell, lhs coeff, rhs coeff)
    arch_diff: tuple | None = None

    def to_json(self):
        return {
            "ok": self.ok,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "diffs": [{"ell": l, "lhs": str(x), "rhs": str(y)} for l, x, y in self.diffs],
            "arch_diff": self.arch_diff,
        }


def compare_degrees(lhs: DegreeValue, rhs: DegreeValue, rtol: float = 1e-12) -> VerifyReport:
    ells = sorted({l for l, _ in lhs.finite.items()} | {l for l, _ in rhs.finite.items()})
    diffs = [(l, lhs.finite.coeff(l), rhs.finite.coeff(l)) for l in ells if lhs.finite.coeff(l) != rhs.finite.coeff(l)]
    arch_ok = DegreeValue(arch=lhs.arch).equals(DegreeValue(arch=rhs.arch), rtol)
    arch_diff = None
    if not arch_ok:
        f = lambda a: None if a is None else (str(a.coeff), a.t)
        arch_diff = (f(lhs.arch), f(rhs.arch))
    return VerifyReport(not diffs and arch_ok, lhs, rhs, diffs, arch_diff)


def verify_degree_fourier(ctx: CMContext, alpha: FElt, y, eps=None) -> VerifyReport:
    """deg Zhat(alpha, y) against the theorem constant times b(alpha, y)."""
    lhs = zhat_degree(ctx, alpha, y, eps)
    b = b_phi_closed(ctx, alpha, y)
    assert b.radicand == ctx.rel_disc_norm
    rhs = degree_from_eis(b, theorem_constant(ctx))
    return compare_degrees(lhs, rhs)


@dataclass
class DecompositionReport:
    m: int
    y: float
    I: DegreeValue
    Gr: float
    gr_bound: float
    gr_truncation: int | None
    c: CPhiValue
    finite_ok: bool
    arch_diff: float
    arch_tol: float
    c_check: bool

    def to_json(self):
        return {
            "m": self.m,
            "y": self.y,
            "I": self.I.to_json(),
            "Gr": repr(self.Gr),
            "gr_tail_bound": repr(self.gr_bound),
            "gr_truncation": self.gr_truncation,
            "c_finite": self.c.finite.to_json(),
            "c_radicand": self.c.radicand,
            "c_arch": repr(self.c.arch_value()),
            "c_tail_bound": repr(self.c.tail_bound),
            "c_truncation": self.c.truncation,
            "finite_ok": self.finite_ok,
            "arch_diff": repr(self.arch_diff),
            "arch_tol": repr(self.arch_tol),
            "c_check": self.c_check,
        }


def intersection_decomposition(ctx: CMContext, m: int, y: float, tol: float = 1e-9) -> DecompositionReport:
    """I + Gr on the degree side against the theorem constant times c_phi(m, y)."""
    if m == 0:
        raise InputError("m = 0 is out of scope")
    y = float(y)
    F = ctx.F
    # degree side: its own truncation, with the per-term constant (h/w)/[K:Q]
    T = None
    gr_bound = 0.0
    if F.n > 1:
        sl = F.trace_slice(FactoredIdeal.unit() / ctx.different, m)
        kernel = sl[1] if sl else []
        p = plan(F, kernel, m, y, float(_weight(ctx)) / (2 * F.n), tol)
        T, gr_bound = p.T, p.bound
    pos, neg = trace_slices(ctx, m, T)
    I = LogLinear()
    for a in pos:
        I = I + zhat_degree(ctx, a, y).finite
    gr_terms = []
    for a in neg:
        d = zhat_degree(ctx, a, y)
        assert not d.finite
        if d.arch is not None:
            gr_terms.append(float(d.arch.coeff) * beta1(d.arch.t).value)
    Gr = math.fsum(gr_terms)

    c = c_phi(ctx, m, y, tol)
    const = theorem_constant(ctx)
    finite_ok = I == c.finite.scale(const)
    arch_rhs = float(const) * c.arch_value()
    arch_diff = abs(Gr - arch_rhs)
    arch_tol = 10 * tol
    return DecompositionReport(m, y, DegreeValue(I), Gr, gr_bound, T, c, finite_ok, arch_diff, arch_tol,
                               finite_ok and arch_diff <= arch_tol)
