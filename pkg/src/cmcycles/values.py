"""Exact formal values: rational combinations of log(ell), optionally scaled by an
inverse square root and carrying beta_1 terms with exact rational coefficients."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

T_RTOL = 1e-12


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    return Fraction(str(s))


class LogLinear:
    """sum_ell c_ell * log(ell) with ell rational primes and c_ell rational."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        for ell, v in (coeffs or {}).items():
            v = Fraction(v)
            if v:
                c[int(ell)] = v
        self._c = c

    @classmethod
    def log_of(cls, ell: int, coeff=1) -> LogLinear:
        return cls({ell: coeff})

    def items(self):
        return sorted(self._c.items())

    def coeff(self, ell: int) -> Fraction:
        return self._c.get(ell, Fraction(0))

    def __add__(self, other: LogLinear) -> LogLinear:
        out = dict(self._c)
        for ell, v in other._c.items():
            out[ell] = out.get(ell, 0) + v
        return LogLinear(out)

    def __sub__(self, other: LogLinear) -> LogLinear:
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, k) -> LogLinear:
        k = Fraction(k)
        return LogLinear({ell: v * k for ell, v in self._c.items()})

    def __eq__(self, other):
        return isinstance(other, LogLinear) and self._c == other._c

    def __hash__(self):
        return hash(tuple(self.items()))

    def __bool__(self):
        return bool(self._c)

    def evaluate(self) -> float:
        return math.fsum(float(v) * math.log(ell) for ell, v in self._c.items())

    def to_json(self):
        return [{"ell": ell, "coeff": frac_str(v)} for ell, v in self.items()]

    @classmethod
    def from_json(cls, data) -> LogLinear:
        return cls({d["ell"]: parse_frac(d["coeff"]) for d in data})

    def __repr__(self):
        if not self._c:
            return "0"
        return " + ".join(f"({frac_str(v)})*log({ell})" for ell, v in self.items())


@dataclass(frozen=True)
class ArchTerm:
    """coeff * beta_1(t)."""

    coeff: Fraction
    t: float

    def scale(self, k) -> ArchTerm:
        return ArchTerm(self.coeff * Fraction(k), self.t)

    def same(self, other: ArchTerm, rtol: float = T_RTOL) -> bool:
        return self.coeff == other.coeff and math.isclose(self.t, other.t, rel_tol=rtol, abs_tol=0.0)

    def evaluate(self) -> float:
        from .special import beta1

        return float(self.coeff) * beta1(self.t).value

    def to_json(self):
        from .special import beta1

        return {"coeff": frac_str(self.coeff), "t": repr(self.t), "beta1": repr(beta1(self.t).value)}


def _arch_equal(a: ArchTerm | None, b: ArchTerm | None, rtol: float) -> bool:
    if a is None or not a.coeff:
        return b is None or not b.coeff
    if b is None:
        return False
    return a.same(b, rtol)


@dataclass(frozen=True)
class EisValue:
    """prefactor * radicand^(-1/2) * (finite + arch)."""

    radicand: int
    finite: LogLinear = field(default_factory=LogLinear)
    arch: ArchTerm | None = None
    prefactor: Fraction = Fraction(1)

    def normalized(self) -> EisValue:
        k = Fraction(self.prefactor)
        arch = self.arch.scale(k) if self.arch is not None and self.arch.coeff else None
        return EisValue(self.radicand, self.finite.scale(k), arch, Fraction(1))

    def is_zero(self) -> bool:
        n = self.normalized()
        return not n.finite and n.arch is None

    def equals(self, other: EisValue, rtol: float = T_RTOL) -> bool:
        a, b = self.normalized(), other.normalized()
        if a.is_zero() and b.is_zero():
            return True
        return a.radicand == b.radicand and a.finite == b.finite and _arch_equal(a.arch, b.arch, rtol)

    def __eq__(self, other):
        return isinstance(other, EisValue) and self.equals(other)

    __hash__ = None

    def evaluate(self) -> float:
        s = self.finite.evaluate()
        if self.arch is not None:
            s += self.arch.evaluate()
        return float(self.prefactor) * s / math.sqrt(self.radicand)

    def to_json(self):
        return {
            "prefactor": frac_str(self.prefactor),
            "radicand": self.radicand,
            "finite": self.finite.to_json(),
            "arch": None if self.arch is None else self.arch.to_json(),
            "decimal": repr(self.evaluate()),
        }


@dataclass(frozen=True)
class DegreeValue:
    finite: LogLinear = field(default_factory=LogLinear)
    arch: ArchTerm | None = None

    def is_zero(self) -> bool:
        return not self.finite and (self.arch is None or not self.arch.coeff)

    def equals(self, other: DegreeValue, rtol: float = T_RTOL) -> bool:
        return self.finite == other.finite and _arch_equal(self.arch, other.arch, rtol)

    def __eq__(self, other):
        return isinstance(other, DegreeValue) and self.equals(other)

    __hash__ = None

    def __add__(self, other: DegreeValue) -> DegreeValue:
        if self.arch is not None and other.arch is not None:
            raise ValueError("cannot add two archimedean terms into one DegreeValue")
        return DegreeValue(self.finite + other.finite, self.arch if self.arch is not None else other.arch)

    def evaluate(self) -> float:
        s = self.finite.evaluate()
        if self.arch is not None:
            s += self.arch.evaluate()
        return s

    def to_json(self):
        return {
            "finite": self.finite.to_json(),
            "arch": None if self.arch is None else self.arch.to_json(),
            "decimal": repr(self.evaluate()),
        }


def degree_from_eis(v: EisValue, const: Fraction) -> DegreeValue:
    """const * sqrt(radicand) * v, i.e. the radical cancels exactly."""
    n = v.normalized()
    arch = n.arch.scale(const) if n.arch is not None else None
    return DegreeValue(n.finite.scale(const), arch)
