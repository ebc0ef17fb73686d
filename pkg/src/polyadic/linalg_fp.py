"""Dense matrices over a prime field F_p.

Dimensions are tiny, so everything is plain Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SingularImage


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True, order=True)
class Matrix:
    p: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) % self.p for v in r) for r in self.rows)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square and non-empty")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, m: int, p: int) -> Matrix:
        return cls(p, tuple(tuple(int(i == j) for j in range(m)) for i in range(m)))

    @classmethod
    def scalar(cls, c: int, p: int, m: int = 1) -> Matrix:
        return cls(p, tuple(tuple(c if i == j else 0 for j in range(m)) for i in range(m)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __matmul__(self, other: Matrix) -> Matrix:
        if other.p != self.p or other.dim != self.dim:
            raise ValueError("incompatible matrices")
        cols = list(zip(*other.rows))
        return Matrix(self.p, tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows))

    def __pow__(self, k: int) -> Matrix:
        base = self if k >= 0 else self.inverse()
        out = Matrix.identity(self.dim, self.p)
        k = abs(k)
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.dim)) % self.p

    def _eliminate(self, augment: bool):
        # Gauss-Jordan; returns (det, inverse or None)
        p, m = self.p, self.dim
        a = [list(r) + ([int(i == j) for j in range(m)] if augment else []) for i, r in enumerate(self.rows)]
        det = 1
        for c in range(m):
            piv = next((r for r in range(c, m) if a[r][c]), None)
            if piv is None:
                return 0, None
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            det = det * a[c][c] % p
            inv = pow(a[c][c], p - 2, p)
            a[c] = [v * inv % p for v in a[c]]
            for r in range(m):
                if r != c and a[r][c]:
                    f = a[r][c]
                    a[r] = [(x - f * y) % p for x, y in zip(a[r], a[c])]
        inverse = Matrix(p, tuple(tuple(r[m:]) for r in a)) if augment else None
        return det % p, inverse

    def det(self) -> int:
        return self._eliminate(False)[0]

    def is_invertible(self) -> bool:
        return self.det() != 0

    def inverse(self) -> Matrix:
        det, inv = self._eliminate(True)
        if not det:
            raise SingularImage(f"matrix {self.rows} is singular mod {self.p}")
        return inv

    def direct_sum(self, other: Matrix) -> Matrix:
        m, k = self.dim, other.dim
        rows = [list(r) + [0] * k for r in self.rows] + [[0] * m + list(r) for r in other.rows]
        return Matrix(self.p, tuple(tuple(r) for r in rows))

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]
