import csv
import io
import json

import pytest
from click.testing import CliRunner

from g2period.cli import cli
from g2period.config import ConfigError, format_seed_text, parse_seed_text
from g2period.presets import A058231_SEED

PRESET = ["--preset", "a058231"]
CURVE_ARGS = ["--curve", "-3,0,0,-2,9", "--point", "0,3"]


def run(*args):
    return CliRunner().invoke(cli, [str(a) for a in args], catch_exceptions=False)


@pytest.fixture
def seed_file(tmp_path):
    def write(text):
        path = tmp_path / "seed.txt"
        path.write_text(text)
        return str(path)
    return write


def test_analyze_row_p7():
    res = run("analyze", *PRESET, "--prime", 7)
    assert res.exit_code == 0
    lines = res.output.splitlines()
    assert lines[0] == "p | jac_order | ord | per | ratio | alpha | beta"
    assert lines[1] == "7 | 28 | 7 | 21 | 3 | 4 | 2"
    assert "7: excluded" in res.output


def test_analyze_blank_cells():
    res = run("analyze", *PRESET, "--primes", "2,5")
    rows = res.output.splitlines()[1:3]
    assert rows == ["2 |  |  |  |  |  | ", "5 |  |  | 12 |  |  | "]


@pytest.mark.parametrize("args", [["--prime", 4], ["--primes", "7,9"], [],
                                  ["--prime", 7, "--pmax", 10]])
def test_analyze_bad_primes(args):
    res = run("analyze", *PRESET, *args)
    assert res.exit_code == 2


def test_source_validation(seed_file):
    assert run("analyze", "--prime", 7).exit_code == 2
    assert run("analyze", "--preset", "nope", "--prime", 7).exit_code == 2
    path = seed_file(format_seed_text(A058231_SEED))
    assert run("analyze", "--curve", "-3,0,0,-2,9", "--point", "0,4", "--seed-file", path,
               "--prime", 7).exit_code == 2


def test_formats_agree():
    primes = "3,5,7,11,13"
    table = run("analyze", *PRESET, "--primes", primes).output
    rows = list(csv.DictReader(io.StringIO(run("analyze", *PRESET, "--primes", primes,
                                                "--format", "csv").output)))
    objs = json.loads(run("analyze", *PRESET, "--primes", primes, "--format", "json").output)
    fields = ["p", "jac_order", "ord", "per", "ratio", "alpha", "beta"]
    table_rows = [line.split(" | ") for line in table.splitlines()[1:6]]
    for trow, crow, obj in zip(table_rows, rows, objs, strict=True):
        assert [c.strip() for c in trow] == [crow[k] for k in fields]
        assert [crow[k] for k in fields] == ["" if obj[k] is None else str(obj[k])
                                             for k in fields]
        assert crow["status"] == obj["status"]


def test_csv_deterministic_and_complete():
    first = run("analyze", *PRESET, "--pmax", 400, "--format", "csv", "--jobs", 2)
    second = run("analyze", *PRESET, "--pmax", 400, "--format", "csv", "--jobs", 1)
    assert first.exit_code == 0
    assert first.output == second.output
    rows = list(csv.DictReader(io.StringIO(first.output)))
    assert len(rows) == 78
    assert rows[-1]["p"] == "397" and rows[-1]["per"] == "1362834"


def test_sequence_command():
    res = run("sequence", *PRESET, "--from", -2, "--to", 4)
    assert res.output.splitlines() == ["-2 -1", "-1 0", "0 0", "1 0", "2 1", "3 36", "4 -16"]
    assert run("sequence", *PRESET, "--to", 10**6).exit_code == 2


def test_screen_command():
    res = run("screen", *PRESET)
    assert res.exit_code == 0
    lines = res.output.splitlines()
    assert lines[0] == "disc(F) = -36040475 = -5^2 * 29 * 49711"
    listed = [int(line.split(":")[0]) for line in lines[1:]]
    assert listed == [2, 3, 5, 7, 29, 41, 47, 379, 509, 853, 8059, 8753, 49711, 140891]
    assert "8753: excluded; divides c5" in lines


def test_verify_ok():
    res = run("verify", *PRESET, "--pmax", 60, "--jobs", 1)
    assert res.exit_code == 0, res.output
    assert "expected-fail: divisibility-chain at p = 3" in res.output


def test_verify_corrupted_seed(seed_file):
    text = format_seed_text(A058231_SEED).replace("c5=5041728", "c5=5041729")
    res = run("verify", *CURVE_ARGS, "--seed-file", seed_file(text), "--pmax", 30)
    assert res.exit_code == 1
    assert "FAIL" in res.output


def test_custom_source_matches_preset(seed_file):
    path = seed_file("# published seed\n" + format_seed_text(A058231_SEED))
    custom = run("analyze", *CURVE_ARGS, "--seed-file", path, "--primes", "7,11")
    assert custom.output == run("analyze", *PRESET, "--primes", "7,11").output


def test_stats_command():
    res = run("stats", *PRESET, "--pmax", 50, "--format", "json", "--jobs", 1)
    st = json.loads(res.output)
    assert st["d_equals_1"] == [31]
    assert st["d"]["7"] == 3


def test_seed_parse_errors():
    good = format_seed_text(A058231_SEED)
    assert parse_seed_text(good)["c9"] == A058231_SEED.c[9]
    with pytest.raises(ConfigError, match=":2: unknown key"):
        parse_seed_text("x=0\nc3=1\n")
    with pytest.raises(ConfigError, match="duplicate"):
        parse_seed_text(good + "c4=1\n")
    with pytest.raises(ConfigError, match="missing keys c9"):
        parse_seed_text(good.replace(f"c9={A058231_SEED.c[9]}", ""))
    with pytest.raises(ConfigError, match="not a decimal integer"):
        parse_seed_text(good.replace("c4=-16", "c4=sixteen"))
