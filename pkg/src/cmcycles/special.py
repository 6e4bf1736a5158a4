"""beta_1(t) = int_1^oo exp(-t u) / u du, the exponential integral E_1."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import InputError

EULER_GAMMA = 0.57721566490153286061
CROSSOVER = 2.0
_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class Beta1Value:
    value: float
    error: float


def _check(t: float) -> float:
    t = float(t)
    if not t > 0 or math.isinf(t):
        raise InputError(f"beta_1 needs a finite t > 0, got {t}")
    return t


def _series(t: float) -> Beta1Value:
    # -gamma - log t + sum_{k>=1} (-1)^{k+1} t^k / (k k!)
    s = 0.0
    mag = 0.0
    term = 1.0  # t^k / k!
    k = 0
    while True:
        k += 1
        term *= t / k
        a = term / k
        s += a if k % 2 else -a
        mag += a
        nxt = term * t / (k + 1) / (k + 1)
        if k > t and nxt < 1e-18 * max(1.0, abs(s)):
            break
    value = -EULER_GAMMA - math.log(t) + s
    # alternating tail once terms decrease, plus rounding in the partial sums
    err = nxt + 8 * _EPS * (mag + abs(math.log(t)) + 1.0)
    return Beta1Value(value, err)


def _cf(t: float) -> Beta1Value:
    """S-fraction 1/(t+ 1/(1+ 1/(t+ 2/(1+ 2/(t+ ...))))) by modified Lentz."""
    tiny = 1e-300
    f = tiny
    C = f
    D = 0.0
    prev = None
    diff = math.inf
    for k in range(1, 20000):
        a = 1.0 if k == 1 else float(k // 2)
        b = 1.0 if k % 2 == 0 else t
        D = b + a * D
        D = tiny if D == 0 else D
        C = b + a / C
        C = tiny if C == 0 else C
        D = 1.0 / D
        f *= C * D
        if prev is not None:
            diff = abs(f - prev)
            if diff <= 1e-17 * abs(f):
                break
        prev = f
    scale = math.exp(-t)
    value = scale * f
    # convergents of a positive S-fraction bracket the limit
    err = scale * diff + 64 * _EPS * value
    return Beta1Value(value, err)


def beta1(t: float) -> Beta1Value:
    t = _check(t)
    if t < CROSSOVER:
        return _series(t)
    return _cf(t)


def beta1_quadrature_oracle(t: float) -> float:
    """Direct quadrature of the defining integral after u = exp(s).

    int_0^S exp(-t e^s) ds with t e^S = 40; the dropped tail is E_1(40) < e^-40/40.
    """
    from scipy.integrate import quad

    t = _check(t)
    S = math.log(40.0 / t) if t < 40.0 else 0.0
    g = lambda s: math.exp(-t * math.exp(s))
    if S <= 0:
        # t >= 40: integrate in u directly with a shifted exponent to keep precision
        h = lambda u: math.exp(-t * (u - 1.0)) / u
        val, _ = quad(h, 1.0, 1.0 + 60.0 / t, epsabs=1e-17, epsrel=2e-14, limit=200)
        return math.exp(-t) * val
    knee = min(max(math.log(1.0 / t), 0.0), S)
    pts = [0.0] + ([knee] if 0.0 < knee < S else []) + [S]
    total = 0.0
    for lo, hi in zip(pts, pts[1:]):
        v, _ = quad(g, lo, hi, epsabs=1e-15, epsrel=2e-14, limit=400)
        total += v
    return total


def sandwich(t: float) -> tuple[tuple[float, float], tuple[float, float]]:
    """Two classical brackets of E_1(t):
    e^-t/(t+1) < E_1 < e^-t/t and (1/2)e^-t log(1+2/t) < E_1 < e^-t log(1+1/t)."""
    t = _check(t)
    e = math.exp(-t)
    return (e / (t + 1), e / t), (0.5 * e * math.log1p(2 / t), e * math.log1p(1 / t))
