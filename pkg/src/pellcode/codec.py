"""Message-matrix coding ``E = M G_n`` and decoding ``M = E G_n^-1``.

The code package carries the checking element ``Det(M)`` next to ``E`` so a
receiver can test the determinant relation. ``PELLE`` is its text form::

    PELLE 1
    p=1 n=3 det=392
    221 92
    158 64
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable

from .matrices import IntMatrix, MatrixError, determinant, g_matrix, mat_mul, unimodular_inverse
from .sequences import DomainError, in_open_interval, ratio_interval

PELLE_MAGIC = "PELLE 1"


class FormatError(ValueError):
    """A PELLE or PELLK document could not be parsed."""


@dataclass(frozen=True)
class CodePackage:
    e: IntMatrix
    p: int
    n: int
    det_m: int

    def __post_init__(self):
        if self.p < 1 or self.n < 1:
            raise DomainError(f"package needs p >= 1 and n >= 1, got p={self.p} n={self.n}")
        if self.e.rows != self.p + 1 or self.e.cols != self.p + 1:
            raise MatrixError(
                f"code matrix must be {self.p + 1}x{self.p + 1} for p={self.p}, "
                f"got {self.e.rows}x{self.e.cols}"
            )

    @property
    def sign(self) -> int:
        """``(-1)^(n(p+2))``, the determinant of ``G_n``."""
        return -1 if (self.n * (self.p + 2)) % 2 else 1

    def with_entries(self, entries: Iterable[int]) -> "CodePackage":
        return replace(self, e=IntMatrix(self.e.rows, self.e.cols, tuple(entries)))


def check_message(m: IntMatrix, p: int) -> None:
    if m.rows != p + 1 or m.cols != p + 1:
        raise MatrixError(f"message matrix must be {p + 1}x{p + 1} for p={p}, got {m.rows}x{m.cols}")
    bad = [(k // m.cols, k % m.cols) for k, x in enumerate(m.entries) if x <= 0]
    if bad:
        r, c = bad[0]
        raise DomainError(f"message entries must be positive; entry ({r},{c}) is {m[r, c]}")


def encode(m: IntMatrix, p: int, n: int) -> CodePackage:
    """Encode a positive message matrix of order ``p+1``."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    check_message(m, p)
    return CodePackage(e=mat_mul(m, g_matrix(p, n)), p=p, n=n, det_m=determinant(m))


def decode(pkg: CodePackage) -> IntMatrix:
    """Right-multiply by the integer inverse of ``G_n``; never judges plausibility."""
    return mat_mul(pkg.e, unimodular_inverse(g_matrix(pkg.p, pkg.n)))


def verify_det_relation(pkg: CodePackage) -> bool:
    return determinant(pkg.e) == pkg.det_m * pkg.sign


def row_ratio_ok(num: int, den: int, n: int) -> bool:
    """Whether ``num/den`` lies strictly inside the p=1 row-ratio interval for ``n``."""
    if den == 0:
        raise ZeroDivisionError("row ratio with zero denominator")
    return in_open_interval(num, den, ratio_interval(n))


def dumps_pelle(pkg: CodePackage) -> str:
    lines = [PELLE_MAGIC, f"p={pkg.p} n={pkg.n} det={pkg.det_m}"]
    lines += [" ".join(str(x) for x in row) for row in pkg.e.to_rows()]
    return "\n".join(lines) + "\n"


def _parse_int(token: str, what: str) -> int:
    try:
        return int(token, 10)
    except ValueError:
        raise FormatError(f"{what}: not a decimal integer: {token!r}") from None


def parse_header(line: str, keys: Iterable[str]) -> dict:
    """Parse ``k=v`` tokens in the given key order."""
    keys = list(keys)
    tokens = line.split(" ")
    if len(tokens) != len(keys):
        raise FormatError(f"header must be {' '.join(k + '=<...>' for k in keys)}, got {line!r}")
    out = {}
    for key, token in zip(keys, tokens):
        name, sep, value = token.partition("=")
        if name != key or not sep:
            raise FormatError(f"expected header field {key!r}, got {token!r}")
        out[key] = value
    return out


def split_lines(text: str) -> list:
    if "\r" in text:
        raise FormatError("carriage returns are not allowed; lines end with a single newline")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def loads_pelle(text: str) -> CodePackage:
    lines = split_lines(text)
    if not lines or lines[0] != PELLE_MAGIC:
        raise FormatError(f"missing {PELLE_MAGIC!r} header line")
    if len(lines) < 2:
        raise FormatError("missing parameter line")
    fields = parse_header(lines[1], ("p", "n", "det"))
    p = _parse_int(fields["p"], "p")
    n = _parse_int(fields["n"], "n")
    det = _parse_int(fields["det"], "det")
    if p < 1 or n < 1:
        raise FormatError(f"p and n must be >= 1, got p={p} n={n}")
    rows = lines[2:]
    if len(rows) != p + 1:
        raise FormatError(f"expected {p + 1} matrix rows for p={p}, got {len(rows)}")
    matrix = []
    for k, row in enumerate(rows, start=3):
        tokens = row.split(" ")
        if len(tokens) != p + 1:
            raise FormatError(f"line {k}: expected {p + 1} entries, got {len(tokens)}")
        matrix.append([_parse_int(t, f"line {k}") for t in tokens])
    return CodePackage(e=IntMatrix.from_rows(matrix), p=p, n=n, det_m=det)
