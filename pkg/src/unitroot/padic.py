"""Square matrices of residues modulo ``p**M``."""

from __future__ import annotations

from dataclasses import dataclass


class NotInvertibleError(ArithmeticError):
    def __init__(self, p: int, message: str = ""):
        super().__init__(message or f"matrix is not invertible modulo p={p}")
        self.p = p


def valuation(x: int, p: int, cap: int) -> int:
    """p-adic valuation of ``x``, capped at ``cap`` (also returned for ``x == 0``)."""
    if x == 0:
        return cap
    v = 0
    while x % p == 0 and v < cap:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class PadicMatrix:
    p: int
    precision: int
    entries: tuple
    labels: tuple = ()

    def __post_init__(self):
        q = self.p**self.precision
        rows = tuple(tuple(int(x) % q for x in row) for row in self.entries)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("PadicMatrix must be square")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def identity(cls, p, M, N, labels=()):
        return cls(p, M, tuple(tuple(int(i == j) for j in range(N)) for i in range(N)), labels)

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    @property
    def N(self) -> int:
        return len(self.entries)

    def _compat(self, other):
        if self.p != other.p or self.N != other.N:
            raise ValueError("incompatible p-adic matrices")
        return min(self.precision, other.precision)

    def __matmul__(self, other: "PadicMatrix") -> "PadicMatrix":
        M = self._compat(other)
        q = self.p**M
        n = self.N
        out = [[sum(self.entries[i][k] * other.entries[k][j] for k in range(n)) % q for j in range(n)] for i in range(n)]
        return PadicMatrix(self.p, M, tuple(map(tuple, out)), self.labels)

    def reduce(self, M: int) -> "PadicMatrix":
        if M > self.precision:
            raise ValueError(f"cannot raise precision from {self.precision} to {M}")
        return PadicMatrix(self.p, M, self.entries, self.labels)

    def det(self) -> int:
        """Determinant mod ``p**precision`` (division-free Laplace expansion; N is small)."""
        q = self.modulus

        def rec(rows, cols):
            if len(rows) == 1:
                return self.entries[rows[0]][cols[0]]
            total = 0
            for j, c in enumerate(cols):
                sub = rec(rows[1:], cols[:j] + cols[j + 1:])
                total += (-1) ** j * self.entries[rows[0]][c] * sub
            return total % q

        return rec(list(range(self.N)), list(range(self.N))) % q

    def is_unit(self) -> bool:
        return self.det() % self.p != 0

    def inverse(self) -> "PadicMatrix":
        return matrix_inverse_mod(self)

    def agreement(self, other: "PadicMatrix") -> int:
        """Largest ``k`` with ``self == other (mod p**k)``, capped at the common precision."""
        M = self._compat(other)
        return min(
            (valuation((a - b) % self.p**M, self.p, M) for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)),
            default=M,
        )

    def congruent(self, other: "PadicMatrix", k: int) -> bool:
        return self.agreement(other) >= k

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "precision": self.precision,
            "labels": [list(v) for v in self.labels],
            "entries": [[str(x) for x in row] for row in self.entries],
        }


def matrix_inverse_mod(A: PadicMatrix) -> PadicMatrix:
    """Inverse at the same precision by Gauss-Jordan with unit pivots."""
    p, q, n = A.p, A.modulus, A.N
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A.entries)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] % p), None)
        if piv is None:
            raise NotInvertibleError(p, f"matrix is singular modulo p={p}")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], -1, q)
        aug[c] = [x * inv % q for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                k = aug[r][c]
                aug[r] = [(x - k * y) % q for x, y in zip(aug[r], aug[c])]
    return PadicMatrix(p, A.precision, tuple(tuple(row[n:]) for row in aug), A.labels)
