from pathlib import Path

import pytest

from pellcode.cli import EXIT_FAILED, EXIT_INPUT, EXIT_OK, EXIT_USAGE, main, parse_command

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_command():
    args = parse_command(["encode", "--n", "3", "--matrix", "18,1;4,22"])
    assert args.command == "encode" and args.n == 3 and args.matrix.entries == (18, 1, 4, 22)
    args = parse_command(["simulate", "--trials", "5", "--errors", "2"])
    assert (args.trials, args.errors, args.seed) == (5, 2, 0)


@pytest.mark.parametrize("argv", [
    [], ["nope"], ["encode", "--n", "0", "--matrix", "1,2;3,4"], ["encode", "--n", "3"],
    ["encode", "--n", "3", "--matrix", "1,x;3,4"], ["seq"], ["block"],
    ["simulate", "--errors", "5"], ["matrix", "--kind", "Q"],
])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == EXIT_USAGE


def test_encode_matches_golden(capsys, tmp_path):
    code, out, _ = run(capsys, "encode", "--n", "3", "--matrix", "18,1;4,22")
    assert code == EXIT_OK
    assert out == (GOLDEN / "b1.pelle").read_text()
    rows = tmp_path / "m.txt"
    rows.write_text("18 1\n4 22\n")
    target = tmp_path / "x.pelle"
    assert run(capsys, "encode", "--n", "3", "--input", str(rows), "--out", str(target))[0] == EXIT_OK
    assert target.read_bytes() == (GOLDEN / "b1.pelle").read_bytes()


def test_decode_and_warning(capsys, tmp_path):
    code, out, err = run(capsys, "decode", str(GOLDEN / "b1.pelle"))
    assert (code, out, err) == (EXIT_OK, "18 1\n4 22\n", "")
    bad = tmp_path / "bad.pelle"
    bad.write_text((GOLDEN / "b1.pelle").read_text().replace("221 92", "200 92"))
    code, out, err = run(capsys, "decode", str(bad))
    assert code == EXIT_OK and "determinant check failed" in err


def test_correct(capsys, tmp_path):
    bad = tmp_path / "bad.pelle"
    bad.write_text((GOLDEN / "b1.pelle").read_text().replace("221 92", "200 92"))
    code, out, _ = run(capsys, "correct", str(bad))
    assert code == EXIT_OK
    assert out == "status: Corrected\npattern: {1}\nmessage:\n18 1\n4 22\n"
    four = tmp_path / "four.pelle"
    four.write_text("PELLE 1\np=1 n=3 det=392\n228 99\n165 71\n")
    code, out, err = run(capsys, "correct", str(four))
    assert code == EXIT_FAILED and "Uncorrectable" in out and "search-budget" in err
    code, out, _ = run(capsys, "correct", str(four), "--max-entry", "28")
    assert code == EXIT_FAILED and "Ambiguous" in out
    code, out, _ = run(capsys, "correct", str(GOLDEN / "b1.pelle"))
    assert code == EXIT_OK and out.startswith("status: Clean")


@pytest.mark.parametrize("content", [
    "PELLE 1\np=1 n=3\n1 2\n3 4\n", "PELLE 1\np=1 n=3 det=2\n1 2\n3\n", "hello\n", "",
])
def test_malformed_input_exits_2(capsys, tmp_path, content):
    path = tmp_path / "m.pelle"
    path.write_text(content)
    assert run(capsys, "decode", str(path))[0] == EXIT_INPUT
    assert run(capsys, "correct", str(path))[0] == EXIT_INPUT
    assert run(capsys, "decode", str(tmp_path / "missing"))[0] == EXIT_INPUT


def test_block_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "block", "encode", "--text", "MATH IS SWEET:)")
    assert code == EXIT_OK and out == (GOLDEN / "sweet.pellk").read_text()
    code, out, _ = run(capsys, "block", "encode", "--mode", "gpell", "--text", "HAPPY BIRTHDAY TO YOU:)")
    assert out == (GOLDEN / "birthday.pellk").read_text()
    assert run(capsys, "block", "decode", str(GOLDEN / "sweet.pellk"))[1] == "MATH0IS0SWEET:)0\n"
    assert run(capsys, "block", "decode", str(GOLDEN / "sweet.pellk"), "--render-spaces")[1] == "MATH IS SWEET:)\n"
    assert run(capsys, "block", "decode", str(GOLDEN / "birthday.pellk"), "--render-spaces")[1] == \
        "HAPPY BIRTHDAY TO YOU:)\n"
    assert run(capsys, "block", "encode", "--text", "AAAABAAAAAAAAAAA")[0] == EXIT_FAILED
    assert run(capsys, "block", "encode", "--text", "hi!")[0] == EXIT_FAILED
    corrupt = tmp_path / "c.pellk"
    corrupt.write_text((GOLDEN / "sweet.pellk").read_text().replace("392 18", "393 18"))
    assert run(capsys, "block", "decode", str(corrupt))[0] == EXIT_FAILED


def test_block_round_trip_is_byte_stable(capsys, tmp_path):
    first, second = tmp_path / "a.pellk", tmp_path / "b.pellk"
    run(capsys, "block", "encode", "--text", "pell numbers", "--out", str(first))
    run(capsys, "block", "encode", "--text", "pell numbers", "--out", str(second))
    assert first.read_bytes() == second.read_bytes()
    assert run(capsys, "block", "decode", str(first), "--render-spaces")[1] == "PELL NUMBERS\n"


def test_seq_and_matrix(capsys):
    assert run(capsys, "seq", "--to", "6", "--classical")[1].splitlines()[-1] == "6 70"
    assert run(capsys, "seq", "--to", "6")[1].splitlines()[-1] == "6 29"
    assert run(capsys, "matrix", "--kind", "G", "--n", "3")[1] == "12 5\n5 2\n"


def test_simulate_output_is_byte_identical(capsys, tmp_path):
    argv = ["simulate", "--trials", "150", "--seed", "9", "--keyvalue"]
    code, first, _ = run(capsys, *argv)
    assert code == EXIT_OK
    assert run(capsys, *argv)[1] == first
    assert "located_truth_rate=1.000000" in first
    figure = tmp_path / "sim.png"
    assert run(capsys, *argv, "--figure", str(figure))[0] == EXIT_OK
    assert figure.stat().st_size > 0


def test_ability_and_figures(capsys, tmp_path):
    code, out, _ = run(capsys, "ability", "--figure", str(tmp_path / "ab.png"))
    assert code == EXIT_OK
    assert out == (GOLDEN / "ability.txt").read_text()
    assert out.rstrip().endswith("score=14/15 (0.9333)")
    assert (tmp_path / "ab.png").exists()
    assert run(capsys, "seq", "--to", "20", "--figure", str(tmp_path / "r.png"))[0] == EXIT_OK
    assert (tmp_path / "r.png").exists()
