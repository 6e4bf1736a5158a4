"""Orders given by a multiplication table on a Z-basis, and their integral ideals
as Hermite-normal-form lattices."""

from __future__ import annotations

from functools import lru_cache

from .algebra import HnfMatrix, hnf, hnf_solve


class Order:
    """A commutative ring free of rank k over Z with basis b_0 = 1, ..., b_{k-1}.

    ``table[i][j]`` holds the integer coordinates of b_i * b_j.
    """

    def __init__(self, table, name: str = ""):
        self.table = [[tuple(int(x) for x in t) for t in row] for row in table]
        self.rank = len(self.table)
        self.name = name

    def __repr__(self):
        return f"Order({self.name or self.rank})"

    def mul(self, x, y):
        k = self.rank
        out = [0] * k
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.table[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for t, c in enumerate(row[j]):
                    if c:
                        out[t] += ab * c
        return out

    def one(self):
        return [1] + [0] * (self.rank - 1)

    def mult_matrix(self, x):
        """Rows are the coordinates of x * b_i."""
        basis = [[1 if i == j else 0 for j in range(self.rank)] for i in range(self.rank)]
        return [self.mul(x, b) for b in basis]

    def ideal(self, gens, modulus: int | None = None) -> Ideal:
        basis = [[1 if i == j else 0 for j in range(self.rank)] for i in range(self.rank)]
        rows = [self.mul(g, b) for g in gens for b in basis]
        return Ideal(self, hnf(rows, modulus))

    def unit_ideal(self) -> Ideal:
        return Ideal(self, hnf([[1 if i == j else 0 for j in range(self.rank)] for i in range(self.rank)]))


class Ideal:
    """Integral ideal of an Order, stored by its canonical HNF basis."""

    __slots__ = ("order", "basis")

    def __init__(self, order: Order, basis: HnfMatrix):
        self.order = order
        self.basis = basis

    @property
    def norm(self) -> int:
        out = 1
        for i, row in enumerate(self.basis):
            out *= row[i]
        return out

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.order is other.order and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return f"Ideal(norm={self.norm}, basis={self.basis})"

    def __mul__(self, other: Ideal) -> Ideal:
        mul = self.order.mul
        rows = [mul(a, b) for a in self.basis for b in other.basis]
        return Ideal(self.order, hnf(rows, self.norm * other.norm))

    def __pow__(self, k: int) -> Ideal:
        return _ideal_pow(self, k)

    def __contains__(self, x) -> bool:
        return hnf_solve(self.basis, x) is not None

    def contains(self, x) -> bool:
        return x in self

    def is_ideal(self) -> bool:
        """Closure under multiplication by every basis element of the order."""
        k = self.order.rank
        for i in range(k):
            e = [1 if j == i else 0 for j in range(k)]
            for row in self.basis:
                if self.order.mul(e, row) not in self:
                    return False
        return True

    def transform(self, matrix) -> Ideal:
        """Image under a Z-linear automorphism given by row-action: x -> x @ matrix."""
        k = self.order.rank
        rows = [[sum(r[i] * matrix[i][j] for i in range(k)) for j in range(k)] for r in self.basis]
        return Ideal(self.order, hnf(rows, self.norm))


@lru_cache(maxsize=4096)
def _ideal_pow(I: Ideal, k: int) -> Ideal:
    if k < 0:
        raise ValueError("negative ideal power")
    if k == 0:
        return I.order.unit_ideal()
    if k == 1:
        return I
    half = _ideal_pow(I, k // 2)
    out = half * half
    return out * I if k % 2 else out

