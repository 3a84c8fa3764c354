"""Deterministic error injection and Monte-Carlo runs of the correction cascade.

Randomness comes from SplitMix64 (Steele, Lea & Flood 2014), a 64-bit
mixing generator chosen because its output is fully specified and identical
on every platform and Python version. Trial ``t`` of a run is seeded with
``seed ^ t`` so each trial can be replayed on its own.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .codec import CodePackage, encode
from .correction import POSITIONS, ErrorPattern, Status, correct, detect
from .matrices import IntMatrix

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection (no modulo bias)."""
        if bound < 1:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def randint(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)

    def sample(self, population: Sequence, k: int) -> list:
        pool = list(population)
        out = []
        for _ in range(k):
            out.append(pool.pop(self.below(len(pool))))
        return out


def _nonzero_delta(rng: SplitMix64, magnitude: int) -> int:
    d = rng.below(2 * magnitude) - magnitude
    return d + 1 if d >= 0 else d


def inject(pkg: CodePackage, pattern: ErrorPattern, seed: int, magnitude: int) -> CodePackage:
    """Add a nonzero delta in ``[-magnitude, magnitude]`` to each damaged entry.

    Deltas are drawn in increasing position order; ``det_m`` is untouched.
    """
    if not pattern.positions:
        raise ValueError("injection needs at least one damaged position")
    if magnitude < 1:
        raise ValueError(f"magnitude must be >= 1, got {magnitude}")
    rng = SplitMix64(seed)
    e = list(pkg.e.entries)
    for pos in sorted(pattern.positions):
        e[pos - 1] += _nonzero_delta(rng, magnitude)
    return pkg.with_entries(e)


@dataclass(frozen=True)
class ChannelConfig:
    trials: int = 1000
    pattern_weights: Mapping[int, int] = field(default_factory=lambda: {1: 1, 2: 1, 3: 1, 4: 1})
    magnitude: int = 50
    seed: int = 0
    n_range: Tuple[int, int] = (3, 10)
    entry_range: Tuple[int, int] = (1, 28)

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.magnitude < 1:
            raise ValueError(f"magnitude must be >= 1, got {self.magnitude}")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if set(self.pattern_weights) - {1, 2, 3, 4}:
            raise ValueError("pattern weights are keyed by error count 1..4")
        if any(w < 0 for w in self.pattern_weights.values()) or sum(self.pattern_weights.values()) <= 0:
            raise ValueError("pattern weights must be non-negative with a positive total")
        lo, hi = self.n_range
        if not 1 <= lo <= hi:
            raise ValueError(f"bad n range {self.n_range}")
        lo, hi = self.entry_range
        if not 1 <= lo <= hi:
            raise ValueError(f"bad entry range {self.entry_range}")


STATUSES = (Status.CLEAN, Status.CORRECTED, Status.AMBIGUOUS, Status.UNCORRECTABLE)


@dataclass
class Tally:
    counts: Dict[Status, int] = field(default_factory=lambda: {s: 0 for s in STATUSES})
    trials: int = 0
    truth: int = 0
    located_truth: int = 0
    wrong_corrections: int = 0

    @property
    def silent(self) -> int:
        return self.counts[Status.CLEAN]


@dataclass
class SimReport:
    config: ChannelConfig
    by_size: Dict[int, Tally]
    wall_time: float = 0.0

    @property
    def trials(self) -> int:
        return sum(t.trials for t in self.by_size.values())

    def total(self, status: Status) -> int:
        return sum(t.counts[status] for t in self.by_size.values())

    def truth_rate(self, located: bool = False) -> float:
        """Share of 1-3 error trials with the original among the candidates.

        The located rate leaves out silent trials, where nothing was detected.
        """
        tallies = [t for size, t in self.by_size.items() if size <= 3]
        if located:
            n = sum(t.trials - t.silent for t in tallies)
            hit = sum(t.located_truth for t in tallies)
        else:
            n = sum(t.trials for t in tallies)
            hit = sum(t.truth for t in tallies)
        return hit / n if n else float("nan")


@dataclass(frozen=True)
class TrialResult:
    size: int
    status: Status
    truth: bool
    located_truth: bool
    wrong_correction: bool


def run_trial(cfg: ChannelConfig, t: int) -> TrialResult:
    rng = SplitMix64(cfg.seed ^ t)
    lo, hi = cfg.entry_range
    m = IntMatrix(2, 2, tuple(rng.randint(lo, hi) for _ in range(4)))
    n = rng.randint(*cfg.n_range)
    sizes = sorted(k for k, w in cfg.pattern_weights.items() if w > 0)
    pick = rng.below(sum(cfg.pattern_weights[k] for k in sizes))
    for size in sizes:
        pick -= cfg.pattern_weights[size]
        if pick < 0:
            break
    pattern = ErrorPattern(frozenset(rng.sample(POSITIONS, size)))
    received = inject(encode(m, 1, n), pattern, rng.next_u64(), cfg.magnitude)

    result = correct(received, max_entry=hi)
    found = result.status in (Status.CORRECTED, Status.AMBIGUOUS) and result.contains(m)
    if size <= 3 and not detect(received):
        located = correct(received, max_entry=hi, patterns=[pattern])
        located_found = located.contains(m)
    else:
        located_found = False
    return TrialResult(
        size=size,
        status=result.status,
        truth=found,
        located_truth=located_found,
        wrong_correction=result.status is Status.CORRECTED and result.message != m,
    )


def simulate(cfg: ChannelConfig) -> SimReport:
    """Encode, corrupt and correct ``cfg.trials`` random 2x2 messages.

    The blind cascade's status is tallied per error count. ``truth`` counts
    trials whose original message is the correction or a candidate;
    ``located_truth`` counts the same when the damaged positions are given
    to the corrector. A Clean status after injection is a silent corruption.
    """
    start = time.perf_counter()
    by_size = {size: Tally() for size in (1, 2, 3, 4)}
    for t in range(cfg.trials):
        r = run_trial(cfg, t)
        tally = by_size[r.size]
        tally.trials += 1
        tally.counts[r.status] += 1
        tally.truth += r.truth
        tally.located_truth += r.located_truth
        tally.wrong_corrections += r.wrong_correction
    return SimReport(cfg, by_size, wall_time=time.perf_counter() - start)


def format_table(report: SimReport) -> str:
    header = ("errors", "trials", "clean", "corrected", "ambiguous", "uncorrectable",
              "truth", "located", "wrong")
    rows: List[Tuple] = []
    for size in (1, 2, 3, 4):
        t = report.by_size[size]
        rows.append((size, t.trials, *(t.counts[s] for s in STATUSES),
                     t.truth, t.located_truth, t.wrong_corrections))
    rows.append(("all", report.trials, *(report.total(s) for s in STATUSES),
                 sum(t.truth for t in report.by_size.values()),
                 sum(t.located_truth for t in report.by_size.values()),
                 sum(t.wrong_corrections for t in report.by_size.values())))
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    lines = ["  ".join(str(x).rjust(w) for x, w in zip(r, widths)) for r in (header, *rows)]
    return "\n".join(lines) + "\n"


def format_keyvalue(report: SimReport) -> str:
    cfg = report.config
    weights = ",".join(f"{k}:{cfg.pattern_weights[k]}" for k in sorted(cfg.pattern_weights))
    lines = [
        f"trials={cfg.trials}",
        f"seed={cfg.seed}",
        f"magnitude={cfg.magnitude}",
        f"n_range={cfg.n_range[0]}..{cfg.n_range[1]}",
        f"entry_range={cfg.entry_range[0]}..{cfg.entry_range[1]}",
        f"weights={weights}",
    ]
    for size in (1, 2, 3, 4):
        t = report.by_size[size]
        for s in STATUSES:
            lines.append(f"errors{size}.{s.value.lower()}={t.counts[s]}")
        lines.append(f"errors{size}.truth={t.truth}")
        lines.append(f"errors{size}.located_truth={t.located_truth}")
        lines.append(f"errors{size}.wrong={t.wrong_corrections}")
    lines.append(f"truth_rate={report.truth_rate():.6f}")
    lines.append(f"located_truth_rate={report.truth_rate(located=True):.6f}")
    return "\n".join(lines) + "\n"
