"""Command-line interface: ``pellcode <command> ...``.

Exit codes: 0 success, 1 usage error, 2 malformed input file,
3 validation or correction failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from . import blocking, channel, codec, correction, matrices, sequences
from .matrices import IntMatrix

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_FAILED = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_at_least(low: int):
    def parse(text: str) -> int:
        try:
            value = int(text, 10)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if value < low:
            raise argparse.ArgumentTypeError(f"must be >= {low}, got {value}")
        return value
    return parse


def _inline_matrix(text: str) -> IntMatrix:
    try:
        rows = [[int(x, 10) for x in row.split(",")] for row in text.split(";")]
        return IntMatrix.from_rows(rows)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad matrix {text!r} (use 'a,b;c,d'): {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pellcode", description="Pell matrix coding, error correction and blocking.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("seq", help="print Pell or generalized Pell numbers")
    p.add_argument("--p", type=_int_at_least(1), default=1)
    p.add_argument("--i", type=_int_at_least(0), default=1)
    p.add_argument("--from", dest="start", type=_int_at_least(0), default=1)
    p.add_argument("--to", dest="stop", type=_int_at_least(0), required=True)
    p.add_argument("--classical", action="store_true", help="classical Pell numbers P_n (0-based)")
    p.add_argument("--figure", type=Path, help="write a ratio-convergence plot up to --to")

    p = sub.add_parser("matrix", help="print P^n, A or G_n")
    p.add_argument("--kind", choices=("P", "A", "G"), required=True)
    p.add_argument("--p", type=_int_at_least(1), default=1)
    p.add_argument("--n", type=_int_at_least(1), default=1)

    p = sub.add_parser("encode", help="encode a message matrix into a PELLE package")
    p.add_argument("--p", type=_int_at_least(1), default=1)
    p.add_argument("--n", type=_int_at_least(1), required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", type=_inline_matrix, help="inline matrix 'a,b;c,d'")
    src.add_argument("--input", type=Path, help="file with one space-separated row per line")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("decode", help="decode a PELLE package")
    p.add_argument("path", type=Path)

    p = sub.add_parser("correct", help="detect and correct errors in a p=1 PELLE package")
    p.add_argument("path", type=Path)
    p.add_argument("--max-entry", type=_int_at_least(1),
                   help="largest admissible message entry (28 for the mod-29 alphabet)")
    p.add_argument("--exhaustive", action="store_true", help="pool candidates from all error counts")

    p = sub.add_parser("block", help="Pell blocking encode/decode")
    block = p.add_subparsers(dest="block_command", required=True, parser_class=_Parser)
    b = block.add_parser("encode")
    b.add_argument("--mode", choices=[m.value for m in blocking.Mode], default="pell")
    b.add_argument("--p", type=_int_at_least(1), default=1)
    b.add_argument("--text", required=True)
    b.add_argument("--out", type=Path)
    b = block.add_parser("decode")
    b.add_argument("path", type=Path)
    b.add_argument("--render-spaces", action="store_true")

    p = sub.add_parser("simulate", help="inject errors and tally correction outcomes")
    p.add_argument("--trials", type=_int_at_least(1), default=1000)
    p.add_argument("--errors", type=int, choices=(1, 2, 3, 4),
                   help="force this many damaged entries (default: uniform over 1-4)")
    p.add_argument("--magnitude", type=_int_at_least(1), default=50)
    p.add_argument("--seed", type=_int_at_least(0), default=0)
    p.add_argument("--n-min", type=_int_at_least(1), default=3)
    p.add_argument("--n-max", type=_int_at_least(1), default=10)
    p.add_argument("--entry-max", type=_int_at_least(1), default=28)
    p.add_argument("--keyvalue", action="store_true", help="also print a key=value block")
    p.add_argument("--timing", action="store_true", help="print wall time (breaks byte-identical output)")
    p.add_argument("--figure", type=Path, help="write an outcome bar chart")

    p = sub.add_parser("ability", help="enumerate the 15 damage patterns on one message")
    p.add_argument("--matrix", type=_inline_matrix, default=_inline_matrix("18,1;4,22"))
    p.add_argument("--n", type=_int_at_least(1), default=3)
    p.add_argument("--shift", type=int, default=7, help="amount added to each damaged entry")
    p.add_argument("--max-entry", type=_int_at_least(1), default=28)
    p.add_argument("--figure", type=Path)
    return parser


def _read(path: Path) -> str:
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise codec.FormatError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return data.decode("ascii")
    except UnicodeDecodeError:
        raise codec.FormatError(f"{path} is not ASCII") from None


def _write(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="ascii", newline="\n")


def _grid(m: IntMatrix) -> str:
    return str(m) + "\n"


def _cmd_seq(args) -> int:
    if args.stop < args.start:
        raise ValueError(f"--to ({args.stop}) is below --from ({args.start})")
    lines = []
    if args.classical:
        for n in range(args.start, args.stop + 1):
            lines.append(f"{n} {sequences.pell(n)}")
    else:
        params = sequences.SequenceParams(args.p, args.i)
        for n in range(max(args.start, 1), args.stop + 1):
            lines.append(f"{n} {sequences.gen_pell(params, n)}")
    sys.stdout.write("\n".join(lines) + ("\n" if lines else ""))
    if args.figure:
        from .plotting import plot_ratio_convergence

        plot_ratio_convergence(max(args.stop, 2), args.figure)
    return EXIT_OK


def _cmd_matrix(args) -> int:
    if args.kind == "P":
        m = matrices.p_power(args.n)
    elif args.kind == "A":
        m = matrices.a_matrix(args.p)
    else:
        m = matrices.g_matrix(args.p, args.n)
    sys.stdout.write(_grid(m))
    return EXIT_OK


def _cmd_encode(args) -> int:
    if args.matrix is not None:
        m = args.matrix
    else:
        rows = [line.split() for line in codec.split_lines(_read(args.input)) if line.strip()]
        try:
            m = IntMatrix.from_rows([[int(x, 10) for x in r] for r in rows])
        except ValueError as exc:
            raise codec.FormatError(f"{args.input}: {exc}") from None
    try:
        pkg = codec.encode(m, args.p, args.n)
    except ValueError as exc:
        print(f"pellcode: {exc}", file=sys.stderr)
        return EXIT_FAILED
    _write(codec.dumps_pelle(pkg), args.out)
    return EXIT_OK


def _cmd_decode(args) -> int:
    pkg = codec.loads_pelle(_read(args.path))
    sys.stdout.write(_grid(codec.decode(pkg)))
    if not codec.verify_det_relation(pkg):
        print("pellcode: warning: determinant check failed; run 'correct' on this package", file=sys.stderr)
    return EXIT_OK


def _cmd_correct(args) -> int:
    pkg = codec.loads_pelle(_read(args.path))
    try:
        result = correction.correct(pkg, max_entry=args.max_entry, exhaustive=args.exhaustive)
    except correction.UnsupportedError as exc:
        print(f"pellcode: {exc}", file=sys.stderr)
        return EXIT_FAILED
    out = [f"status: {result.status}"]
    if result.pattern is not None:
        out.append(f"pattern: {result.pattern}")
    if result.message is not None:
        out.append("message:")
        out.append(str(result.message))
    if result.status is correction.Status.AMBIGUOUS:
        out.append(f"candidates: {len(result.candidates)}")
        for c in result.candidates:
            rows = ";".join(",".join(str(x) for x in r) for r in c.message.to_rows())
            code = ";".join(",".join(str(x) for x in r) for r in c.e.to_rows())
            out.append(f"  {c.pattern} e={code} m={rows}")
    sys.stdout.write("\n".join(out) + "\n")
    for note in result.notes:
        print(f"note: {note}", file=sys.stderr)
    ok = result.status in (correction.Status.CLEAN, correction.Status.CORRECTED)
    return EXIT_OK if ok else EXIT_FAILED


def _cmd_block(args) -> int:
    if args.block_command == "encode":
        try:
            k = blocking.block_encode(args.text, blocking.Mode(args.mode), args.p)
        except blocking.BlockingError as exc:
            print(f"pellcode: {exc}", file=sys.stderr)
            return EXIT_FAILED
        _write(blocking.dumps_pellk(k), args.out)
        return EXIT_OK
    k = blocking.loads_pellk(_read(args.path))
    try:
        symbols = blocking.block_decode(k)
    except blocking.BlockingError as exc:
        print(f"pellcode: {exc}", file=sys.stderr)
        return EXIT_FAILED
    if args.render_spaces:
        symbols = blocking.render_spaces(symbols)
    sys.stdout.write(symbols + "\n")
    return EXIT_OK


def _cmd_simulate(args) -> int:
    if args.n_max < args.n_min:
        raise ValueError(f"--n-max ({args.n_max}) is below --n-min ({args.n_min})")
    weights = {k: int(k == args.errors) for k in (1, 2, 3, 4)} if args.errors else {1: 1, 2: 1, 3: 1, 4: 1}
    cfg = channel.ChannelConfig(
        trials=args.trials, pattern_weights=weights, magnitude=args.magnitude, seed=args.seed,
        n_range=(args.n_min, args.n_max), entry_range=(1, args.entry_max),
    )
    report = channel.simulate(cfg)
    sys.stdout.write(channel.format_table(report))
    if args.keyvalue:
        sys.stdout.write("\n" + channel.format_keyvalue(report))
    if args.timing:
        sys.stdout.write(f"wall_time={report.wall_time:.3f}s\n")
    if args.figure:
        from .plotting import plot_sim_report

        plot_sim_report(report, args.figure)
    return EXIT_OK


def _cmd_ability(args) -> int:
    m = args.matrix
    try:
        oracle = correction.shift_oracle(args.shift)
        report = correction.correction_ability_enumeration(m, args.n, oracle, max_entry=args.max_entry)
    except ValueError as exc:
        print(f"pellcode: {exc}", file=sys.stderr)
        return EXIT_FAILED
    header = ("pattern", "status", "truth", "candidates", "blind", "blind_truth", "blind_candidates")
    rows = [(str(o.pattern), str(o.status), "yes" if o.truth_found else "no", o.candidates,
             str(o.blind_status), "yes" if o.blind_truth_found else "no", o.blind_candidates)
            for o in report.outcomes]
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    lines = ["  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip() for r in (header, *rows)]
    score = report.score
    lines.append(f"score={score.numerator}/{score.denominator} ({float(score):.4f})")
    sys.stdout.write("\n".join(lines) + "\n")
    if args.figure:
        from .plotting import plot_ability

        plot_ability(report, args.figure)
    return EXIT_OK


COMMANDS = {
    "seq": _cmd_seq,
    "matrix": _cmd_matrix,
    "encode": _cmd_encode,
    "decode": _cmd_decode,
    "correct": _cmd_correct,
    "block": _cmd_block,
    "simulate": _cmd_simulate,
    "ability": _cmd_ability,
}


def parse_command(argv: Optional[List[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def execute(args: argparse.Namespace) -> int:
    try:
        return COMMANDS[args.command](args)
    except codec.FormatError as exc:
        print(f"pellcode: malformed input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, ArithmeticError) as exc:
        print(f"pellcode: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: Optional[List[str]] = None) -> int:
    return execute(parse_command(argv))


if __name__ == "__main__":
    sys.exit(main())
