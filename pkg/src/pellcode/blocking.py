"""Text blocking: 2x2 blocks sent as (determinant, b1, b3, b4) records.

A message is laid out in the smallest even-sided square grid, split into 2x2
blocks left to right and top to bottom, mapped to values with the mod-29
character table and transmitted as one ``K`` record per block. The withheld
entry ``b2`` is recovered on decode from a linear equation built from the
transform ``P^n`` (Pell mode) or ``G_n`` (generalized mode, p = 1).

``PELLK`` is the package's text form::

    PELLK 1
    mode=pell p=1 n=2 side=4
    392 18 4 22
    ...
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .codec import FormatError, _parse_int, parse_header, split_lines
from .matrices import IntMatrix, determinant, g_matrix, p_power

ALPHABET = tuple("ABCDEFGHIJKLMNOPQRSTUVWXYZ0:)")
SEPARATOR = "0"
PELLK_MAGIC = "PELLK 1"
MODULUS = len(ALPHABET)


class BlockingError(ValueError):
    """Text or package that the blocking algorithms cannot handle."""


class Mode(enum.Enum):
    PELL = "pell"
    GENERALIZED = "gpell"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CharTable:
    n: int

    def value(self, symbol: str) -> int:
        try:
            j = ALPHABET.index(symbol)
        except ValueError:
            raise BlockingError(f"symbol {symbol!r} is not in the 29-character alphabet") from None
        return (self.n + 28 - j) % MODULUS

    def symbol(self, v: int) -> str:
        if not 0 <= v < MODULUS:
            raise BlockingError(f"character value must be in [0, 28], got {v}")
        return ALPHABET[(self.n + 28 - v) % MODULUS]


def char_value(symbol: str, table: CharTable) -> int:
    return table.value(symbol)


def value_char(v: int, table: CharTable) -> str:
    return table.symbol(v)


@dataclass(frozen=True)
class BlockRecord:
    d: int
    b1: int
    b3: int
    b4: int


@dataclass(frozen=True)
class KPackage:
    mode: Mode
    p: int
    n: int
    side: int
    records: Tuple[BlockRecord, ...]

    def __post_init__(self):
        if self.side < 2 or self.side % 2:
            raise BlockingError(f"side must be a positive even integer, got {self.side}")
        expected = (self.side // 2) ** 2
        if len(self.records) != expected:
            raise BlockingError(f"side {self.side} needs {expected} records, got {len(self.records)}")
        if self.mode is Mode.GENERALIZED and self.p != 1:
            raise BlockingError(f"generalized blocking is defined for p=1 only, got p={self.p}")
        if self.mode is Mode.PELL and self.p != 1:
            raise BlockingError(f"Pell mode carries p=1, got p={self.p}")
        if self.n != choose_n(self.mode, len(self.records), self.p):
            raise BlockingError(
                f"n={self.n} is inconsistent with mode {self.mode} for {len(self.records)} blocks"
            )


def normalize_text(text: str) -> str:
    out = []
    for pos, ch in enumerate(text.upper()):
        if ch == " ":
            out.append(SEPARATOR)
        elif ch in ALPHABET:
            out.append(ch)
        else:
            raise BlockingError(f"unsupported character {ch!r} at position {pos}")
    return "".join(out)


def text_to_grid(text: str) -> List[List[str]]:
    """Lay the text out row-major in the smallest even-sided square, padding with '0'."""
    symbols = normalize_text(text)
    side = 2
    while side * side < len(symbols):
        side += 2
    symbols = symbols.ljust(side * side, SEPARATOR)
    return [list(symbols[r * side:(r + 1) * side]) for r in range(side)]


def choose_n(mode: Mode, b: int, p: int = 1) -> int:
    if mode is Mode.GENERALIZED:
        return p + 2
    return 3 if b <= 3 else b // 2


def _transform(mode: Mode, p: int, n: int) -> Tuple[IntMatrix, int]:
    if mode is Mode.PELL:
        return p_power(n), -1 if n % 2 else 1
    return g_matrix(p, n), -1 if (n * (p + 2)) % 2 else 1


def _blocks(grid: Sequence[Sequence[int]]) -> List[Tuple[int, int, int, int]]:
    side = len(grid)
    out = []
    for r in range(0, side, 2):
        for c in range(0, side, 2):
            out.append((grid[r][c], grid[r][c + 1], grid[r + 1][c], grid[r + 1][c + 1]))
    return out


def block_encode(text: str, mode: Mode = Mode.PELL, p: int = 1) -> KPackage:
    grid = text_to_grid(text)
    side = len(grid)
    b = (side // 2) ** 2
    n = choose_n(mode, b, p)
    table = CharTable(n)
    values = [[table.value(s) for s in row] for row in grid]
    records = []
    for index, (b1, b2, b3, b4) in enumerate(_blocks(values), start=1):
        if b3 == 0:
            raise BlockingError(
                f"block {index}: lower-left value is 0 (symbol {table.symbol(0)!r} at n={n}); "
                "its missing entry could not be recovered"
            )
        records.append(BlockRecord(d=determinant(IntMatrix(2, 2, (b1, b2, b3, b4))), b1=b1, b3=b3, b4=b4))
    return KPackage(mode=mode, p=p, n=n, side=side, records=tuple(records))


def solve_block_x(record: BlockRecord, transform: IntMatrix, sign: int) -> int:
    """Recover the withheld entry ``b2`` of one block.

    Solves ``sign*d = e4*(t11*b1 + t21*x) - e3*(t12*b1 + t22*x)`` with
    ``e3 = t11*b3 + t21*b4`` and ``e4 = t12*b3 + t22*b4``.
    """
    t11, t12, t21, t22 = transform.entries
    e3 = t11 * record.b3 + t21 * record.b4
    e4 = t12 * record.b3 + t22 * record.b4
    coeff = e4 * t21 - e3 * t22
    const = e4 * t11 * record.b1 - e3 * t12 * record.b1
    if coeff == 0:
        raise BlockingError("zero coefficient for the withheld entry (b3 = 0); block unrecoverable")
    x, rem = divmod(sign * record.d - const, coeff)
    if rem:
        raise BlockingError("withheld entry is not an integer; package corrupted")
    return x


def block_values(k: KPackage) -> List[List[int]]:
    """Decode ``k`` to the side x side grid of character values."""
    transform, sign = _transform(k.mode, k.p, k.n)
    side = k.side
    grid = [[0] * side for _ in range(side)]
    per_row = side // 2
    for index, rec in enumerate(k.records):
        if rec.b3 == 0:
            raise BlockingError(f"block {index + 1}: b3 = 0, unrecoverable block")
        try:
            x = solve_block_x(rec, transform, sign)
        except BlockingError as exc:
            raise BlockingError(f"block {index + 1}: {exc}") from None
        reduced, rem = divmod(rec.b1 * rec.b4 - rec.d, rec.b3)
        if rem or reduced != x:
            raise BlockingError(f"block {index + 1}: corrupted package (determinant check disagrees)")
        if not all(0 <= v < MODULUS for v in (rec.b1, x, rec.b3, rec.b4)):
            raise BlockingError(f"block {index + 1}: corrupted package (value outside [0, 28])")
        r, c = 2 * (index // per_row), 2 * (index % per_row)
        grid[r][c], grid[r][c + 1] = rec.b1, x
        grid[r + 1][c], grid[r + 1][c + 1] = rec.b3, rec.b4
    return grid


def block_decode(k: KPackage) -> str:
    """Decode to the padded symbol string (row-major, '0' kept verbatim)."""
    table = CharTable(k.n)
    return "".join(table.symbol(v) for row in block_values(k) for v in row)


def render_spaces(symbols: str) -> str:
    """Strip trailing '0' padding and turn interior '0' runs into single spaces.

    Lossy: a literal digit zero is indistinguishable from a word separator.
    """
    words = [w for w in symbols.rstrip(SEPARATOR).split(SEPARATOR) if w]
    return " ".join(words)


def dumps_pellk(k: KPackage) -> str:
    lines = [PELLK_MAGIC, f"mode={k.mode} p={k.p} n={k.n} side={k.side}"]
    lines += [f"{r.d} {r.b1} {r.b3} {r.b4}" for r in k.records]
    return "\n".join(lines) + "\n"


def loads_pellk(text: str) -> KPackage:
    lines = split_lines(text)
    if not lines or lines[0] != PELLK_MAGIC:
        raise FormatError(f"missing {PELLK_MAGIC!r} header line")
    if len(lines) < 2:
        raise FormatError("missing parameter line")
    fields = parse_header(lines[1], ("mode", "p", "n", "side"))
    try:
        mode = Mode(fields["mode"])
    except ValueError:
        raise FormatError(f"mode must be 'pell' or 'gpell', got {fields['mode']!r}") from None
    p = _parse_int(fields["p"], "p")
    n = _parse_int(fields["n"], "n")
    side = _parse_int(fields["side"], "side")
    if side < 2 or side % 2:
        raise FormatError(f"side must be a positive even integer, got {side}")
    rows = lines[2:]
    expected = (side // 2) ** 2
    if len(rows) != expected:
        raise FormatError(f"side {side} needs {expected} record lines, got {len(rows)}")
    records = []
    for k, row in enumerate(rows, start=3):
        tokens = row.split(" ")
        if len(tokens) != 4:
            raise FormatError(f"line {k}: expected 4 integers, got {len(tokens)}")
        d, b1, b3, b4 = (_parse_int(t, f"line {k}") for t in tokens)
        records.append(BlockRecord(d, b1, b3, b4))
    try:
        return KPackage(mode=mode, p=p, n=n, side=side, records=tuple(records))
    except BlockingError as exc:
        raise FormatError(str(exc)) from None
