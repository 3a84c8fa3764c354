"""Exact integer matrices: Pell powers, the companion matrix A, G_n = A^n.

Entries are Python ints, so nothing ever overflows or rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from .sequences import DomainError, pell


class MatrixError(ValueError):
    """Shape mismatch or an operation undefined for the given matrix."""


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise MatrixError(f"matrix dimensions must be positive, got {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise MatrixError(
                f"expected {self.rows * self.cols} entries for a {self.rows}x{self.cols} matrix, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if not rows:
            raise MatrixError("matrix needs at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise MatrixError("ragged rows")
        return cls(len(rows), width, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, size: int) -> "IntMatrix":
        return cls(size, size, tuple(int(r == c) for r in range(size) for c in range(size)))

    def __getitem__(self, rc: Tuple[int, int]) -> int:
        r, c = rc
        return self.entries[r * self.cols + c]

    def to_rows(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(self.entries[r * self.cols:(r + 1) * self.cols] for r in range(self.rows))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return mat_mul(self, other)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.to_rows())


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.cols != b.rows:
        raise MatrixError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    b_cols = [b.entries[c::b.cols] for c in range(b.cols)]
    out = []
    for r in range(a.rows):
        row = a.entries[r * a.cols:(r + 1) * a.cols]
        out.extend(sum(x * y for x, y in zip(row, col)) for col in b_cols)
    return IntMatrix(a.rows, b.cols, tuple(out))


def p_power(n: int) -> IntMatrix:
    """``P^n = [[P_{n+1}, P_n], [P_n, P_{n-1}]]``."""
    if n < 1:
        raise DomainError(f"P-matrix power needs n >= 1, got {n}")
    return IntMatrix(2, 2, (pell(n + 1), pell(n), pell(n), pell(n - 1)))


def a_matrix(p: int) -> IntMatrix:
    """The (p+1)x(p+1) companion matrix: first row ``(2, 0, ..., 0, 1)``, ones below the diagonal."""
    if p < 1:
        raise DomainError(f"A-matrix needs p >= 1, got {p}")
    size = p + 1
    entries = [0] * (size * size)
    entries[0] = 2
    entries[p] += 1
    for k in range(1, size):
        entries[k * size + k - 1] = 1
    return IntMatrix(size, size, tuple(entries))


def g_matrix(p: int, n: int) -> IntMatrix:
    """``G_n = A^n`` for the order-``p`` companion matrix."""
    if n < 1:
        raise DomainError(f"G-matrix needs n >= 1, got {n}")
    a = a_matrix(p)
    result = a
    for _ in range(n - 1):
        result = result @ a
    return result


def determinant(m: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    if not m.is_square:
        raise MatrixError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    size = m.rows
    if size == 1:
        return m.entries[0]
    if size == 2:
        a, b, c, d = m.entries
        return a * d - b * c
    work = [list(row) for row in m.to_rows()]
    sign = 1
    prev = 1
    for k in range(size - 1):
        if work[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if work[r][k] != 0), None)
            if swap is None:
                return 0
            work[k], work[swap] = work[swap], work[k]
            sign = -sign
        pivot = work[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                # exact by Sylvester's identity
                work[i][j] = (work[i][j] * pivot - work[i][k] * work[k][j]) // prev
            work[i][k] = 0
        prev = pivot
    return sign * work[-1][-1]


def _minor(m: IntMatrix, row: int, col: int) -> IntMatrix:
    rows = [r[:col] + r[col + 1:] for i, r in enumerate(m.to_rows()) if i != row]
    return IntMatrix.from_rows(rows)


def unimodular_inverse(m: IntMatrix) -> IntMatrix:
    """Integer inverse of a determinant-(+-1) matrix via its adjugate."""
    if not m.is_square:
        raise MatrixError(f"inverse of a non-square {m.rows}x{m.cols} matrix")
    det = determinant(m)
    if det not in (1, -1):
        raise MatrixError(f"matrix is not unimodular (determinant {det})")
    size = m.rows
    if size == 1:
        return IntMatrix(1, 1, (det,))
    # adj[r][c] = cofactor(c, r); dividing by det = +-1 is multiplying by det
    entries = tuple(
        det * (-1) ** (r + c) * determinant(_minor(m, c, r))
        for r in range(size)
        for c in range(size)
    )
    return IntMatrix(size, size, entries)
