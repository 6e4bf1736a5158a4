"""The majorant R(f, h) on the Hermitian symmetric domain of signature (n-1, 1).

Coordinates are taken in an adapted basis e, e_1..e_{n-2}, e' with Hermitian
matrix [[0, 0, delta], [0, A, 0], [-delta, 0, 0]], delta = i|delta|, and
<x, y> = x^t H conj(y).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import InputError
from .special import beta1


@dataclass(frozen=True)
class HermitianFrame:
    n: int
    delta_abs: float
    A: tuple = ()

    def __post_init__(self):
        if self.n < 1 or not self.delta_abs > 0:
            raise InputError("frame needs n >= 1 and |delta| > 0")
        if len(self.A) != max(self.n - 2, 0) or any(not a > 0 for a in self.A):
            raise InputError(f"A must hold {max(self.n - 2, 0)} positive reals")

    @property
    def delta(self) -> complex:
        return 1j * self.delta_abs

    def matrix(self) -> np.ndarray:
        n = self.n
        if n == 1:
            # one-dimensional negative line; <e, e> = -|delta|
            return np.array([[-self.delta_abs]], dtype=complex)
        H = np.zeros((n, n), dtype=complex)
        H[0, n - 1] = self.delta
        H[n - 1, 0] = -self.delta
        for i, a in enumerate(self.A):
            H[i + 1, i + 1] = a
        return H

    def form(self, x, y) -> complex:
        return complex(np.asarray(x) @ self.matrix() @ np.conj(np.asarray(y)))


@dataclass(frozen=True)
class DomainPoint:
    w: complex = 0j
    u: tuple = ()


@dataclass(frozen=True)
class SpanVector:
    a: complex
    b: tuple = ()
    c: complex = 0j

    def coords(self, n: int) -> np.ndarray:
        if n == 1:
            return np.array([self.a], dtype=complex)
        return np.array([self.a, *self.b, self.c], dtype=complex)

    def scale(self, lam: complex) -> SpanVector:
        return SpanVector(self.a * lam, tuple(x * lam for x in self.b), self.c * lam)


def domain_value(frame: HermitianFrame, h: DomainPoint) -> float:
    """Tr(delta w) + u^t A conj(u); negative exactly on the domain."""
    d = frame.delta
    tr = 2 * (d * h.w).real
    q = sum(a * abs(x) ** 2 for a, x in zip(frame.A, h.u))
    return tr + q


def _check(frame: HermitianFrame, h: DomainPoint):
    if frame.n == 1:
        return
    if len(h.u) != frame.n - 2:
        raise InputError("u has the wrong length")
    if not domain_value(frame, h) < 0:
        raise InputError("point is outside the domain")


def r_majorant(frame: HermitianFrame, f: SpanVector, h: DomainPoint) -> float:
    """|delta (conj(c) w - conj(a)) + conj(b)^t A u|^2 / |delta (w - conj(w)) + u^t A conj(u)|."""
    _check(frame, h)
    if frame.n == 1:
        return frame.delta_abs * abs(f.a) ** 2
    d = frame.delta
    w = h.w
    num = d * (np.conj(f.c) * w - np.conj(f.a))
    num += sum(np.conj(b) * a * u for b, a, u in zip(f.b, frame.A, h.u))
    den = d * (w - np.conj(w)) + sum(a * abs(u) ** 2 for a, u in zip(frame.A, h.u))
    return float(abs(num) ** 2 / abs(den))


def line_vector(frame: HermitianFrame, h: DomainPoint) -> np.ndarray:
    if frame.n == 1:
        return np.array([1.0 + 0j])
    return np.array([h.w, *h.u, 1.0], dtype=complex)


def r_projection_oracle(frame: HermitianFrame, f: SpanVector, h: DomainPoint) -> float:
    """-<f_h, f_h> with f_h the orthogonal projection of f onto the negative line of h."""
    _check(frame, h)
    H = frame.matrix()
    v = line_vector(frame, h)
    x = f.coords(frame.n)
    vv = v @ H @ np.conj(v)
    if not vv.real < 0:
        raise InputError("line is not negative")
    fv = x @ H @ np.conj(v)
    fh = (fv / vv) * v
    return float(-(fh @ H @ np.conj(fh)).real)


def gr_point(frame: HermitianFrame, f: SpanVector, y: float, h: DomainPoint) -> float:
    """beta_1(4 pi y R(f, h)); singular on the divisor of f."""
    if not y > 0:
        raise InputError("y must be positive")
    R = r_majorant(frame, f, h)
    if R == 0.0:
        raise InputError("h lies on the divisor of f (logarithmic singularity)")
    return beta1(4 * math.pi * y * R).value
