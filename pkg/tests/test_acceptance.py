"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v`` (the lines are
repeated in the terminal summary) or ``python3 tests/test_acceptance.py``.
"""

import math
import random
import subprocess
import sys
from pathlib import Path

import pytest

from oracles import decode_2x2
from pellcode.blocking import (
    Mode, block_decode, block_encode, block_values, dumps_pellk, solve_block_x,
    text_to_grid,
)
from pellcode.channel import ChannelConfig, format_keyvalue, format_table, simulate
from pellcode.codec import decode, dumps_pelle, encode
from pellcode.correction import (
    ErrorPattern, Status, correct, correction_ability_enumeration, hypothesize_single, shift_oracle,
)
from pellcode.matrices import IntMatrix, determinant, g_matrix, p_power, unimodular_inverse
from pellcode.sequences import binet_pell, in_open_interval, pell, ratio_interval

RESULTS = {}
ALPHABET_TEXT = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0:) "


def report(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title}"
    if detail:
        line += f" ({detail})"
    RESULTS[number] = line
    print(line)
    assert ok, line


def test_criterion_01_g_matrix_golden():
    g = g_matrix(1, 3)
    inv = unimodular_inverse(g)
    ok = g == IntMatrix.from_rows([[12, 5], [5, 2]]) and inv == IntMatrix.from_rows([[-2, 5], [5, -12]])
    report(1, "G-matrix golden", ok, f"G_3={g.to_rows()}, inverse={inv.to_rows()}")


def test_criterion_02_determinant_law():
    bad = [(p, n) for p in range(1, 5) for n in range(1, 13)
           if determinant(g_matrix(p, n)) != (-1) ** (n * (p + 2))]
    bad += [("P", n) for n in range(1, 61) if determinant(p_power(n)) != (-1) ** n]
    report(2, "determinant law", not bad, f"{48 + 60} cases, {len(bad)} failures")


def test_criterion_03_codec_round_trip():
    rng = random.Random(3)
    failures = 0
    trials = 600
    for _ in range(trials):
        p = rng.choice((1, 2, 3))
        m = IntMatrix.from_rows([[rng.randint(1, 10 ** 6) for _ in range(p + 1)] for _ in range(p + 1)])
        if decode(encode(m, p, rng.randint(1, 10))) != m:
            failures += 1
    report(3, "codec round trip", failures == 0, f"{trials} matrices, {failures} failures")


def test_criterion_04_ratio_invariant():
    rng = random.Random(4)
    outside = 0
    trials = 1500
    for _ in range(trials):
        n = rng.randint(3, 10)
        m = IntMatrix(2, 2, tuple(rng.randint(1, 10 ** 4) for _ in range(4)))
        e1, e2, e3, e4 = encode(m, 1, n).e.entries
        interval = ratio_interval(n)
        outside += not (in_open_interval(e1, e2, interval) and in_open_interval(e3, e4, interval))
    gamma = 1 + math.sqrt(2)
    far = [n for n in range(12, 200) if abs(pell(n + 1) / pell(n) - gamma) >= 1e-8]
    binet = [n for n in range(0, 201) if binet_pell(n) != pell(n)]
    ok = outside == 0 and not far and not binet
    report(4, "ratio invariant", ok,
           f"{trials} messages, {outside} outside; convergence misses {len(far)}; Binet misses {len(binet)}")


def test_criterion_05_sweet_golden():
    k = block_encode("MATH IS SWEET:)", Mode.PELL)
    recs = [(r.d, r.b1, r.b3, r.b4) for r in k.records]
    grid = block_values(k)
    xs = tuple(grid[r][c + 1] for r in (0, 2) for c in (0, 2))
    want = [(392, 18, 4, 22), (-232, 11, 12, 4), (-52, 12, 11, 3), (52, 26, 2, 4)]
    ok = (k.n == 2 and recs == want and xs == (1, 23, 8, 26)
          and block_decode(k) == "".join(map("".join, text_to_grid("MATH IS SWEET:)"))))
    report(5, "MATH IS SWEET:) golden", ok, f"n={k.n}, x={xs}")


def test_criterion_06_birthday_golden():
    k = block_encode("HAPPY BIRTHDAY TO YOU:)", Mode.GENERALIZED, p=1)
    recs = [(r.d, r.b1, r.b3, r.b4) for r in k.records]
    grid = block_values(k)
    xs = tuple(grid[r][c + 1] for r in (0, 2, 4) for c in (0, 2, 4))
    want = [(550, 24, 1, 23), (-32, 16, 14, 12), (76, 7, 24, 28), (-15, 2, 7, 17),
            (-112, 5, 11, 4), (70, 17, 3, 5), (0, 5, 5, 5), (0, 5, 5, 5), (0, 5, 5, 5)]
    ok = (k.n == 3 and recs == want and xs == (2, 16, 5, 7, 12, 5, 5, 5, 5)
          and block_decode(k) == "HAPPY0BIRTHDAY0TO0YOU:)0000000000000")
    report(6, "HAPPY BIRTHDAY TO YOU:) golden", ok, f"n={k.n}, x={xs}")


def test_criterion_07_single_error_completeness():
    rng = random.Random(7)
    trials, missed, corrected, wrong = 1200, 0, 0, 0
    for _ in range(trials):
        m = IntMatrix(2, 2, tuple(rng.randint(1, 28) for _ in range(4)))
        n = rng.randint(3, 10)
        pkg = encode(m, 1, n)
        pos = rng.randint(1, 4)
        e = list(pkg.e.entries)
        e[pos - 1] += rng.choice([d for d in range(-50, 51) if d])
        damaged = pkg.with_entries(e)
        if (pos, pkg.e.entries[pos - 1]) not in hypothesize_single(damaged):
            missed += 1
        result = correct(damaged)
        if result.status is Status.CORRECTED:
            corrected += 1
            # second opinion on the reconstruction from an independent decoder
            fixed = result.candidates[0].e.entries
            rows = decode_2x2([list(fixed[:2]), list(fixed[2:])], n)
            wrong += result.message != m or IntMatrix.from_rows(rows) != m
    report(7, "single-error completeness", missed == 0 and wrong == 0,
           f"{trials} trials, {missed} missed, {corrected} corrected, {wrong} wrong")


def test_criterion_08_correction_ability():
    m = IntMatrix.from_rows([[18, 1], [4, 22]])
    rep = correction_ability_enumeration(m, 3, shift_oracle(7), max_entry=28)
    four = [o for o in rep.outcomes if o.pattern == ErrorPattern(frozenset({1, 2, 3, 4}))][0]
    ok = rep.recovered == 14 and len(rep.outcomes) == 15 and four.status is Status.UNCORRECTABLE
    report(8, "correction-ability enumeration", ok,
           f"{rep.recovered}/15 = {float(rep.score):.2%}, 4-error pattern {four.status.value}")


def test_criterion_09_blocking_round_trip():
    rng = random.Random(9)
    done = {Mode.PELL: 0, Mode.GENERALIZED: 0}
    failures = disagreements = skipped = 0
    while min(done.values()) < 250:
        text = "".join(rng.choice(ALPHABET_TEXT) for _ in range(rng.randint(1, 70)))
        for mode in done:
            try:
                k = block_encode(text, mode)
            except ValueError:
                skipped += 1
                continue
            done[mode] += 1
            failures += block_decode(k) != "".join(map("".join, text_to_grid(text)))
            transform = p_power(k.n) if mode is Mode.PELL else g_matrix(1, k.n)
            sign = (-1) ** k.n
            for r in k.records:
                oracle, rem = divmod(r.b1 * r.b4 - r.d, r.b3)
                disagreements += rem != 0 or oracle != solve_block_x(r, transform, sign)
    ok = failures == 0 and disagreements == 0
    report(9, "blocking round trip", ok,
           f"{done[Mode.PELL]} Pell + {done[Mode.GENERALIZED]} generalized texts, "
           f"{skipped} rejected for b3=0, {failures} failures, {disagreements} oracle disagreements")


def test_criterion_10_determinism(tmp_path):
    cfg = ChannelConfig(trials=500, seed=2024)
    a, b = simulate(cfg), simulate(cfg)
    same_report = (format_table(a) + format_keyvalue(a)) == (format_table(b) + format_keyvalue(b))
    golden = Path(__file__).parent / "golden"
    fresh = {
        "b1.pelle": dumps_pelle(encode(IntMatrix.from_rows([[18, 1], [4, 22]]), 1, 3)),
        "sweet.pellk": dumps_pellk(block_encode("MATH IS SWEET:)")),
        "birthday.pellk": dumps_pellk(block_encode("HAPPY BIRTHDAY TO YOU:)", Mode.GENERALIZED)),
    }
    stable = all((golden / name).read_bytes() == text.encode("ascii") for name, text in fresh.items())
    # two separate interpreter runs of the CLI must agree byte for byte
    argv = [sys.executable, "-m", "pellcode.cli", "simulate", "--trials", "200", "--seed", "5", "--keyvalue"]
    runs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)]
    ok = same_report and stable and runs[0] == runs[1]
    report(10, "determinism", ok,
           f"in-process reports equal: {same_report}, goldens stable: {stable}, CLI runs equal: {runs[0] == runs[1]}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
