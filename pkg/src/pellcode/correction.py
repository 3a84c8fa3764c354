"""Error detection and correction for 2x2 (p=1) code packages.

A received package fails detection when ``Det(E) != (-1)^n Det(M)``. Damaged
entries are then recovered by hypothesis: every pattern of one, two or three
damaged positions is solved against the determinant relation, and each
solution must also pass the row-ratio interval on both rows and decode to a
positive message. Ratios are compared exactly; ``t1 ~ gamma * t2`` becomes
strict membership in :func:`pellcode.sequences.ratio_interval`.

Positions are numbered 1..4 in row-major order (``e1 e2 / e3 e4``).

Two row entries hypothesised damaged together lie on a Diophantine line
whose row ratio tends to the trusted row's ratio, which is itself inside the
interval; such patterns have infinitely many admissible solutions unless the
message entries are bounded. Pass ``max_entry`` (e.g. 28 for the mod-29
alphabet) to make every pattern a finite search.
"""

from __future__ import annotations

import enum
import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .codec import CodePackage, decode, encode, verify_det_relation
from .matrices import IntMatrix, determinant, g_matrix, unimodular_inverse
from .sequences import in_open_interval, ratio_interval

log = logging.getLogger(__name__)

SEARCH_BUDGET = 10**6

POSITIONS = (1, 2, 3, 4)
ROW_OF = {1: 0, 2: 0, 3: 1, 4: 1}
PARTNER = {1: 2, 2: 1, 3: 4, 4: 3}
NUMERATORS = (1, 3)


class UnsupportedError(ValueError):
    """Correction is only defined for p = 1 packages."""


class SearchBudgetExceeded(RuntimeError):
    """A hypothesis would need more than ``SEARCH_BUDGET`` trial values."""


class Status(enum.Enum):
    CLEAN = "Clean"
    CORRECTED = "Corrected"
    AMBIGUOUS = "Ambiguous"
    UNCORRECTABLE = "Uncorrectable"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ErrorPattern:
    """Set of damaged positions; ``checking_element`` marks a damaged ``Det(M)``."""

    positions: frozenset
    checking_element: bool = False

    def __post_init__(self):
        object.__setattr__(self, "positions", frozenset(self.positions))
        if not self.positions <= set(POSITIONS):
            raise ValueError(f"positions must be a subset of {{1,2,3,4}}, got {sorted(self.positions)}")
        if not self.positions and not self.checking_element:
            raise ValueError("an error pattern needs at least one damaged position")

    def __str__(self):
        if self.checking_element:
            return "{det}"
        return "{" + ",".join(str(k) for k in sorted(self.positions)) + "}"


@dataclass(frozen=True)
class Candidate:
    pattern: ErrorPattern
    e: IntMatrix
    message: IntMatrix


@dataclass
class CorrectionResult:
    status: Status
    message: Optional[IntMatrix] = None
    pattern: Optional[ErrorPattern] = None
    candidates: List[Candidate] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def contains(self, message: IntMatrix) -> bool:
        if self.status is Status.CORRECTED:
            return self.message == message
        return any(c.message == message for c in self.candidates)


def _require_p1(pkg: CodePackage) -> None:
    if pkg.p != 1:
        raise UnsupportedError(f"error correction is defined for p=1 only, got p={pkg.p}")


def detect(pkg: CodePackage) -> bool:
    """True when no error signature is present (the determinant relation holds)."""
    _require_p1(pkg)
    return verify_det_relation(pkg)


class _Checker:
    """Acceptance filters for a fully specified repaired code matrix."""

    def __init__(self, pkg: CodePackage, max_entry: Optional[int]):
        self.pkg = pkg
        self.n = pkg.n
        self.target = pkg.sign * pkg.det_m
        self.interval = ratio_interval(pkg.n)
        self.max_entry = max_entry
        gm = g_matrix(1, pkg.n)
        self.g = gm.entries
        self.g_inv = unimodular_inverse(gm).entries

    def row_ok(self, num: int, den: int) -> bool:
        return num > 0 and den > 0 and in_open_interval(num, den, self.interval)

    def message(self, e: Sequence[int]) -> Tuple[int, int, int, int]:
        a, b, c, d = self.g_inv
        return (
            e[0] * a + e[1] * c,
            e[0] * b + e[1] * d,
            e[2] * a + e[3] * c,
            e[2] * b + e[3] * d,
        )

    def accept(self, e: Sequence[int]) -> Optional[Tuple[int, int, int, int]]:
        if e[0] * e[3] - e[1] * e[2] != self.target:
            return None
        if not (self.row_ok(e[0], e[1]) and self.row_ok(e[2], e[3])):
            return None
        m = self.message(e)
        if any(x <= 0 for x in m):
            return None
        if self.max_entry is not None and any(x > self.max_entry for x in m):
            return None
        return m

    def entry_range(self, pos: int) -> Tuple[int, Optional[int]]:
        """Inclusive range of code entries reachable from messages in [1, max_entry]."""
        a, b, _, c = self.g
        weight = a + b if pos in NUMERATORS else b + c
        return weight, None if self.max_entry is None else weight * self.max_entry

    def unknown_range(self, pos: int, partner_value: int) -> Optional[Tuple[int, Optional[int]]]:
        """Integers ``t`` for ``pos`` keeping the row ratio inside the interval.

        Returns ``None`` when no value can work and an upper bound of ``None``
        when the range is unbounded.
        """
        if partner_value <= 0:
            return None
        lo, hi = self.interval
        v = partner_value
        if pos in NUMERATORS:
            # lo*v < t < hi*v
            t_min = math.floor(lo * v) + 1
            t_max = None if hi is None else math.ceil(hi * v) - 1
        else:
            # v/hi < t < v/lo
            t_min = 1 if hi is None else math.floor(Fraction(v) / hi) + 1
            t_max = math.ceil(Fraction(v) / lo) - 1
        e_min, e_max = self.entry_range(pos)
        t_min = max(t_min, e_min)
        if e_max is not None:
            t_max = e_max if t_max is None else min(t_max, e_max)
        if t_max is not None and t_max < t_min:
            return None
        return t_min, t_max


def _budget_range(rng: Tuple[int, Optional[int]], what: str) -> range:
    t_min, t_max = rng
    if t_max is None:
        raise SearchBudgetExceeded(f"{what}: unbounded search range (pass max_entry to bound it)")
    if t_max - t_min + 1 > SEARCH_BUDGET:
        raise SearchBudgetExceeded(f"{what}: {t_max - t_min + 1} trial values exceed budget {SEARCH_BUDGET}")
    return range(t_min, t_max + 1)


def _solve_linear(e: List[Optional[int]], pos: int, target: int) -> Optional[int]:
    """Solve ``e1 e4 - e2 e3 = target`` for the single unknown at ``pos``."""
    e1, e2, e3, e4 = e
    if pos == 1:
        num, den = target + e2 * e3, e4
    elif pos == 4:
        num, den = target + e2 * e3, e1
    elif pos == 2:
        num, den = e1 * e4 - target, e3
    else:
        num, den = e1 * e4 - target, e2
    if den == 0:
        return None
    q, r = divmod(num, den)
    return q if r == 0 else None


def hypothesize_single(pkg: CodePackage, max_entry: Optional[int] = None,
                       notes: Optional[List[str]] = None) -> List[Tuple[int, int]]:
    """Single-damage hypotheses ``(position, repaired value)`` that pass every filter."""
    _require_p1(pkg)
    check = _Checker(pkg, max_entry)
    received = list(pkg.e.entries)
    out = []
    for pos in POSITIONS:
        e = received.copy()
        e[pos - 1] = None
        t = _solve_linear(e, pos, check.target)
        if t is None:
            e_den = {1: received[3], 2: received[2], 3: received[1], 4: received[0]}[pos]
            if e_den == 0:
                msg = f"single {{{pos}}}: zero denominator, hypothesis skipped"
                log.debug(msg)
                if notes is not None:
                    notes.append(msg)
            continue
        if t <= 0:
            continue
        e[pos - 1] = t
        if check.accept(e) is not None:
            out.append((pos, t))
    return out


def _line_solutions(a: int, b: int, c: int) -> Optional[Tuple[int, int, int, int]]:
    """Parametrise integer solutions of ``x*a - y*b = c``.

    Returns ``(x0, y0, dx, dy)`` so that every solution is
    ``(x0 + k*dx, y0 + k*dy)``, or ``None`` when ``gcd(a, b)`` does not divide ``c``.
    """
    g, s, r = _egcd(a, b)
    if c % g:
        return None
    # s*a + r*b = g  =>  (s*c/g)*a - (-r*c/g)*b = c
    return s * (c // g), -r * (c // g), b // g, a // g


def _egcd(a: int, b: int) -> Tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _k_bounds(x0: int, dx: int, lo: int, hi: Optional[int]) -> Tuple[Optional[int], Optional[int]]:
    """Range of k with ``lo <= x0 + k*dx <= hi`` for ``dx > 0``."""
    k_lo = -((x0 - lo) // dx)  # ceil((lo - x0) / dx)
    k_hi = None if hi is None else (hi - x0) // dx
    return k_lo, k_hi


def _same_row(check: _Checker, e: List[Optional[int]], row: int) -> List[Tuple[int, int]]:
    num_pos, den_pos = (1, 2) if row == 1 else (3, 4)
    t_num, t_den = (3, 4) if row == 1 else (1, 2)
    u, v = e[t_num - 1], e[t_den - 1]
    if not check.row_ok(u, v):
        return []
    # row 1: t1*e4 - t2*e3 = target ; row 2: t3*e2 - t4*e1 = -target
    c = check.target if row == 1 else -check.target
    sol = _line_solutions(v, u, c)
    if sol is None:
        return []
    x0, y0, dx, dy = sol
    x_lo, x_hi = check.entry_range(num_pos)
    y_lo, y_hi = check.entry_range(den_pos)
    kx = _k_bounds(x0, dx, x_lo, x_hi)
    ky = _k_bounds(y0, dy, y_lo, y_hi)
    k_lo = max(kx[0], ky[0])
    highs = [h for h in (kx[1], ky[1]) if h is not None]
    k_hi = min(highs) if highs else None
    if k_hi is not None and k_hi < k_lo:
        return []
    out = []
    for k in _budget_range((k_lo, k_hi), f"double row {row}"):
        x, y = x0 + k * dx, y0 + k * dy
        trial = e.copy()
        trial[num_pos - 1], trial[den_pos - 1] = x, y
        if check.accept(trial) is not None:
            out.append((x, y))
    return out


def solve_double_same_row(pkg: CodePackage, row: int,
                          max_entry: Optional[int] = None) -> List[Tuple[int, int]]:
    """Both entries of ``row`` (1 or 2) damaged, the other row trusted.

    Returns every positive pair on the determinant line whose ratio lies in
    the row-ratio interval and whose decoded row is admissible. Raises
    :class:`SearchBudgetExceeded` when ``max_entry`` is not given, because
    the admissible set is then infinite whenever it is non-empty.
    """
    _require_p1(pkg)
    if row not in (1, 2):
        raise ValueError(f"row must be 1 or 2, got {row}")
    check = _Checker(pkg, max_entry)
    e = list(pkg.e.entries)
    unknown = (1, 2) if row == 1 else (3, 4)
    for pos in unknown:
        e[pos - 1] = None
    return _same_row(check, e, row)


def _solve_pattern(check: _Checker, received: Sequence[int], positions: Tuple[int, ...]) -> Iterator[List[int]]:
    """Yield repaired code entries for one damage pattern of size 1..3."""
    e: List[Optional[int]] = list(received)
    for pos in positions:
        e[pos - 1] = None
    rows_hit = [sum(1 for p in positions if ROW_OF[p] == r) for r in (0, 1)]

    if len(positions) == 1:
        (pos,) = positions
        t = _solve_linear(e, pos, check.target)
        if t is not None and t > 0:
            e[pos - 1] = t
            if check.accept(e) is not None:
                yield e
        return

    if len(positions) == 2 and 2 in rows_hit:
        row = 1 if rows_hit[0] == 2 else 2
        for x, y in _same_row(check, e, row):
            trial = e.copy()
            first, second = (1, 2) if row == 1 else (3, 4)
            trial[first - 1], trial[second - 1] = x, y
            yield trial
        return

    if len(positions) == 2:
        a, b = positions
        ranges = {}
        for pos in (a, b):
            rng = check.unknown_range(pos, received[PARTNER[pos] - 1])
            if rng is None:
                return
            ranges[pos] = rng

        def size(pos):
            lo, hi = ranges[pos]
            return math.inf if hi is None else hi - lo + 1

        enum_pos = min((a, b), key=size)
        solve_pos = b if enum_pos == a else a
        for t in _budget_range(ranges[enum_pos], f"double {{{a},{b}}}"):
            trial = e.copy()
            trial[enum_pos - 1] = t
            s = _solve_linear(trial, solve_pos, check.target)
            if s is None or s <= 0:
                continue
            trial[solve_pos - 1] = s
            if check.accept(trial) is not None:
                yield trial
        return

    # triple: the intact position's row holds a single unknown
    (intact,) = set(POSITIONS) - set(positions)
    lone = PARTNER[intact]
    other_row = 2 if ROW_OF[intact] == 0 else 1
    rng = check.unknown_range(lone, received[intact - 1])
    if rng is None:
        return
    for t in _budget_range(rng, f"triple {{{','.join(map(str, positions))}}}"):
        trial = e.copy()
        trial[lone - 1] = t
        for x, y in _same_row(check, trial, other_row):
            full = trial.copy()
            first, second = (1, 2) if other_row == 1 else (3, 4)
            full[first - 1], full[second - 1] = x, y
            yield full


def solve_pattern(pkg: CodePackage, pattern: ErrorPattern, max_entry: Optional[int] = None) -> List[Candidate]:
    """All admissible repairs assuming exactly the positions in ``pattern`` are damaged."""
    _require_p1(pkg)
    positions = tuple(sorted(pattern.positions))
    if pattern.checking_element or not 1 <= len(positions) <= 3:
        raise ValueError(f"solve_pattern handles 1-3 damaged positions, got {pattern}")
    check = _Checker(pkg, max_entry)
    out = []
    for e in _solve_pattern(check, pkg.e.entries, positions):
        m = check.message(e)
        out.append(Candidate(pattern, IntMatrix(2, 2, tuple(e)), IntMatrix(2, 2, m)))
    return out


def patterns_of_size(k: int) -> List[ErrorPattern]:
    return [ErrorPattern(frozenset(c)) for c in itertools.combinations(POSITIONS, k)]


def correct(pkg: CodePackage, max_entry: Optional[int] = None, exhaustive: bool = False,
            patterns: Optional[Sequence[ErrorPattern]] = None) -> CorrectionResult:
    """Detect and, where possible, repair a received p=1 package.

    Hypotheses are tried by number of damaged positions: singles, then the
    six doubles, then the four triples (fixed lexicographic order within a
    level). The search stops at the first level that yields a survivor unless
    ``exhaustive`` is set, in which case all three levels are pooled. One
    distinct repair gives ``Corrected``, several give ``Ambiguous``. Four
    damaged positions are never hypothesised.

    ``patterns`` restricts the search to the given damage patterns, for a
    receiver that knows (or wants to test) where the damage is.
    """
    _require_p1(pkg)
    if detect(pkg):
        return CorrectionResult(Status.CLEAN, message=decode(pkg))

    check = _Checker(pkg, max_entry)
    notes: List[str] = []
    seen: Dict[Tuple[int, ...], Candidate] = {}
    if patterns is not None:
        allowed = set(patterns)
        if any(len(p.positions) == 4 for p in allowed):
            notes.append("four damaged positions are never attempted")
    for size in (1, 2, 3):
        for pattern in patterns_of_size(size):
            if patterns is not None and pattern not in allowed:
                continue
            positions = tuple(sorted(pattern.positions))
            if size == 1:
                e = list(pkg.e.entries)
                e[positions[0] - 1] = None
                if _solve_linear(e, positions[0], check.target) is None:
                    den = {1: 3, 2: 2, 3: 1, 4: 0}[positions[0]]
                    if pkg.e.entries[den] == 0:
                        notes.append(f"single {pattern}: zero denominator, hypothesis skipped")
            try:
                for e in _solve_pattern(check, pkg.e.entries, positions):
                    key = tuple(e)
                    if key not in seen:
                        m = IntMatrix(2, 2, check.message(e))
                        seen[key] = Candidate(pattern, IntMatrix(2, 2, key), m)
            except SearchBudgetExceeded as exc:
                notes.append(f"search-budget exceeded for {pattern}: {exc}")
        if seen and not exhaustive:
            break

    candidates = list(seen.values())
    if not candidates and patterns is None:
        m = check.message(pkg.e.entries)
        if check.row_ok(*pkg.e.entries[:2]) and check.row_ok(*pkg.e.entries[2:]) and all(
            x > 0 and (max_entry is None or x <= max_entry) for x in m
        ):
            message = IntMatrix(2, 2, m)
            notes.append(f"checking element damaged; Det(M) recomputed as {determinant(message)}")
            candidates = [Candidate(ErrorPattern(frozenset(), checking_element=True), pkg.e, message)]

    if not candidates:
        return CorrectionResult(Status.UNCORRECTABLE, notes=notes)
    if len(candidates) == 1:
        c = candidates[0]
        return CorrectionResult(Status.CORRECTED, message=c.message, pattern=c.pattern,
                                candidates=candidates, notes=notes)
    return CorrectionResult(Status.AMBIGUOUS, candidates=candidates, notes=notes)


Oracle = Callable[[int, int], int]


def shift_oracle(delta: int) -> Oracle:
    """Corruption rule adding ``delta`` to every damaged entry."""
    if delta == 0:
        raise ValueError("a corruption oracle must change the entry")
    return lambda position, value: value + delta


def corrupt(pkg: CodePackage, pattern: ErrorPattern, oracle: Oracle) -> CodePackage:
    e = list(pkg.e.entries)
    for pos in sorted(pattern.positions):
        e[pos - 1] = oracle(pos, e[pos - 1])
    return pkg.with_entries(e)


@dataclass(frozen=True)
class PatternOutcome:
    """Outcome for one corrupted pattern.

    ``status``/``truth_found``/``candidates`` come from correcting with the
    damaged positions known; ``blind_*`` from the full cascade that must also
    guess the positions.
    """

    pattern: ErrorPattern
    status: Status
    truth_found: bool
    candidates: int
    blind_status: Status
    blind_truth_found: bool
    blind_candidates: int


@dataclass
class AbilityReport:
    outcomes: List[PatternOutcome]

    @property
    def recovered(self) -> int:
        return sum(o.truth_found for o in self.outcomes)

    @property
    def score(self) -> Fraction:
        return Fraction(self.recovered, len(self.outcomes))

    @property
    def blind_recovered(self) -> int:
        return sum(o.blind_truth_found for o in self.outcomes)


def _truth_found(result: CorrectionResult, m: IntMatrix) -> bool:
    return result.status in (Status.CORRECTED, Status.AMBIGUOUS) and result.contains(m)


def correction_ability_enumeration(m: IntMatrix, n: int, oracle: Oracle,
                                   max_entry: Optional[int] = None) -> AbilityReport:
    """Corrupt each of the 15 non-empty position sets in turn and correct it.

    A pattern counts as recovered when the original message is the
    correction or among the candidates of the search for that pattern. The
    four-position pattern has no hypothesis and is always Uncorrectable.
    """
    pkg = encode(m, 1, n)
    outcomes = []
    for size in (1, 2, 3, 4):
        for pattern in patterns_of_size(size):
            received = corrupt(pkg, pattern, oracle)
            located = correct(received, max_entry=max_entry, patterns=[pattern])
            blind = correct(received, max_entry=max_entry)
            outcomes.append(PatternOutcome(
                pattern=pattern,
                status=located.status,
                truth_found=_truth_found(located, m),
                candidates=len(located.candidates),
                blind_status=blind.status,
                blind_truth_found=_truth_found(blind, m),
                blind_candidates=len(blind.candidates),
            ))
    return AbilityReport(outcomes)
