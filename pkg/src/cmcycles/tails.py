"""Certified bounds for the archimedean tail of trace-m sums over one-negative elements.

For alpha in the trace-m slice of d_F^-1 with sigma_v(alpha) < 0 and the other
embeddings positive, write X = |sigma_v(alpha)|. Elements with X in [X, X+1]
lie in a box of diameter at most sqrt(n) (c + X), c = |m| + 1, inside an affine
lattice of rank n-1 whose minimum is at least lam (smallest singular value of
the embedded kernel basis). A packing argument gives

    #shell(X) <= ((1 + 2 sqrt(n) / lam) (c + X))^(n-1).

Each term is at most K * rho(alpha d_F) * beta_1(a X), with
rho(b) <= tau(N b)^n <= (2 sqrt(N b))^n, N(alpha d_F) <= (c + X)^n |disc F|
and beta_1(s) < e^-s / s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TailPlan:
    T: int
    bound: float


def kernel_min_bound(F, kernel) -> float:
    """Lower bound for the shortest nonzero vector of the embedded kernel lattice."""
    if not kernel:
        return math.inf
    E = np.array([F.embeddings(k) for k in kernel], dtype=float)
    s = np.linalg.svd(E, compute_uv=False)
    return 0.99 * float(s.min())


def shell_term(n: int, disc: int, lam: float, m: int, a: float, const: float, X: float) -> float:
    c = abs(m) + 1
    count = ((1 + 2 * math.sqrt(n) / lam) * (c + X)) ** (n - 1)
    rho_max = (2 * math.sqrt((c + X) ** n * abs(disc))) ** n
    return n * const * count * rho_max * math.exp(-a * X) / (a * X)


def tail_bound(n: int, disc: int, lam: float, m: int, a: float, const: float, T: int) -> float:
    """Bound on sum over X >= T of shell terms (n choices of the negative place included)."""
    c = abs(m) + 1
    p = (n - 1) + n * n / 2
    q = (1 + 1 / (c + T)) ** p * math.exp(-a)
    if q >= 1:
        return math.inf
    return shell_term(n, disc, lam, m, a, const, T) / (1 - q)


def plan(F, kernel, m: int, y: float, const: float, tol: float, T_max: int = 10_000) -> TailPlan:
    """Smallest integer T >= 1 whose certified tail bound is <= tol."""
    lam = kernel_min_bound(F, kernel)
    a = 4 * math.pi * y
    T = 1
    while T <= T_max:
        b = tail_bound(F.n, F.disc, lam, m, a, const, T)
        if b <= tol:
            return TailPlan(T, b)
        T += 1
    raise RuntimeError("no truncation point found below T_max")
