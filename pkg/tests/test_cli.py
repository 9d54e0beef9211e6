import csv
import io
import json

import pytest

from stacksortlab import lab, parse_permutation
from stacksortlab.cli import CommandPlan, UsageError, execute, parse_args, run
from stacksortlab.lab import VerificationReport


def out_of(capsys):
    captured = capsys.readouterr()
    return captured.out.rstrip("\n"), captured.err


# parsing


def test_parse_args_sort_plan():
    plan = parse_args(["sort", "4162", "--iterations", "1"])
    assert plan.command == "sort"
    assert plan.arguments == {"perm": (4, 1, 6, 2), "t": 1}
    assert plan.output_format == "plain" and not plan.compact


def test_parse_args_verify_plan():
    plan = parse_args(["verify", "theorem1", "--m", "4", "--n", "6"])
    assert plan.command == "verify"
    assert plan.arguments["claim"] == "theorem1"
    assert plan.arguments["m"] == 4 and plan.arguments["n"] == 6


def test_parse_args_rejects_unknown_flags():
    with pytest.raises(UsageError):
        parse_args(["sort", "4162", "--frobnicate"])
    with pytest.raises(UsageError):
        parse_args(["nonsense", "4162"])
    with pytest.raises(UsageError):
        parse_args(["verify", "bogus-claim"])


def test_parse_args_spaced_perm_as_separate_argv_words():
    plan = parse_args(["sort", "4", "1", "6", "2"])
    assert plan.arguments["perm"] == (4, 1, 6, 2)


# simple commands


def test_sort_command(capsys):
    assert run(["sort", "4162"]) == 0
    out, _ = out_of(capsys)
    assert out == "1 4 2 6"
    assert parse_permutation(out) == (1, 4, 2, 6)


def test_sort_compact_and_iterations(capsys):
    assert run(["sort", "4162", "--compact"]) == 0
    assert out_of(capsys)[0] == "1426"
    assert run(["sort", "35241", "--iterations", "4"]) == 0
    assert out_of(capsys)[0] == "1 2 3 4 5"


def test_trace_command(capsys):
    assert run(["trace", "4162"]) == 0
    out, _ = out_of(capsys)
    assert out.split("\n") == [
        "push 4", "push 1", "pop 1", "pop 4",
        "push 6", "push 2", "pop 2", "pop 6",
        "output 1 4 2 6"]


def test_stats_command(capsys):
    assert run(["stats", "4162"]) == 0
    out, _ = out_of(capsys)
    assert out.split("\n") == [
        "length: 4", "descents: 1 3", "descent-tops: 4 6",
        "lr-maxima: 4 6", "tail-length: -"]
    assert run(["stats", "23145"]) == 0
    assert "tail-length: 2" in out_of(capsys)[0]


def test_characterize_command(capsys):
    assert run(["characterize", "32145", "--t", "1"]) == 0
    assert out_of(capsys)[0] == "yes thm2-zeta"
    assert run(["characterize", "23154", "--t", "2"]) == 0
    assert out_of(capsys)[0] == "no thm1"


def test_preimage_command(capsys):
    assert run(["preimage", "5 2 7 1 4 8 3 6 9"]) == 0
    out, _ = out_of(capsys)
    sigma_line, certificate = out.split("\n")
    assert "s(sigma) = 5 2 7 1 4 8 3 6 9" in certificate
    assert "avoids-barred-3241 = yes" in certificate
    assert "lrmax(sigma) = 5 7 8 9" in certificate
    assert "lrmax(pi) = 5 7 8 9" in certificate
    assert sorted(parse_permutation(sigma_line)) == list(range(1, 10))


def test_lift_command(capsys):
    assert run(["lift", "213"]) == 0
    out, _ = out_of(capsys)
    assert out.split("\n")[0] == "2 3 1"
    assert "s^1(sigma) = 2 1 3" in out


def test_zeta_xi_commands(capsys):
    assert run(["zeta", "--l", "4", "--m", "4"]) == 0
    assert out_of(capsys)[0] == "4 2 1 3 5"
    assert run(["xi", "--l", "4", "--m", "4", "--compact"]) == 0
    assert out_of(capsys)[0] == "45231"


def test_bijection_both_directions(capsys):
    assert run(["bijection", "2314"]) == 0
    assert out_of(capsys)[0] == "{2}{1,3}{4}"
    assert run(["bijection", "{2}{1,3}{4}"]) == 0
    assert out_of(capsys)[0] == "2 3 1 4"


# lab commands


def test_count_image_plain(capsys):
    assert run(["count-image", "--n", "5", "--t", "1"]) == 0
    assert out_of(capsys)[0] == "17"


def test_count_image_jsonl(capsys):
    assert run(["count-image", "--n", "4", "--t", "1", "--format", "jsonl",
                "--keep-elements"]) == 0
    out, _ = out_of(capsys)
    rec = json.loads(out)
    assert rec["n"] == 4 and rec["t"] == 1 and rec["count"] == 5
    assert rec["shards"] == 1 and rec["wall_time"] >= 0
    assert len(rec["elements"]) == 5
    assert "1 2 3 4" in rec["elements"]


def test_count_image_csv(capsys):
    assert run(["count-image", "--n", "4", "--t", "2", "--format", "csv"]) == 0
    out, _ = out_of(capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1
    assert rows[0]["count"] == "2"
    assert set(rows[0]) == {"n", "t", "count", "elements", "shards",
                            "wall_time"}


def test_count_image_sharded(capsys):
    assert run(["count-image", "--n", "5", "--t", "1", "--shards", "4"]) == 0
    assert out_of(capsys)[0] == "17"


def test_verify_command(capsys):
    assert run(["verify", "theorem1", "--m", "4", "--n", "6"]) == 0
    out, _ = out_of(capsys)
    assert out.startswith("PASS theorem1")
    assert "expected=15 observed=15" in out


def test_verify_all_small(capsys):
    assert run(["verify", "all", "--max-n", "4"]) == 0
    out, _ = out_of(capsys)
    lines = out.split("\n")
    assert all(line.startswith("PASS") for line in lines)
    assert any("thm3_count" in line for line in lines)


def test_verify_all_bound_8(capsys):
    # the full claim grid within the bound runs clean end to end
    assert run(["verify", "all", "--max-n", "8"]) == 0
    out, _ = out_of(capsys)
    lines = out.split("\n")
    assert len(lines) == 55
    assert all(line.startswith("PASS") for line in lines)
    for claim in ("theorem1", "theorem2", "prop2", "thm3_count", "catalan",
                  "west_zeilberger"):
        assert any(f" {claim} " in line for line in lines), claim


def test_verify_jsonl_schema(capsys):
    assert run(["verify", "catalan", "--n", "5", "--format", "jsonl"]) == 0
    rec = json.loads(out_of(capsys)[0])
    assert set(rec) == {"claim", "parameters", "expected", "observed", "pass"}
    assert rec["pass"] is True and rec["expected"] == 42


def test_verify_failure_exits_nonzero(capsys, monkeypatch):
    bad = VerificationReport(claim="theorem1", parameters={"m": 4, "n": 6},
                             expected=15, observed=14, passed=False)
    monkeypatch.setattr(lab, "verify_theorem1", lambda *a, **k: bad)
    assert run(["verify", "theorem1", "--m", "4", "--n", "6"]) == 1
    out, _ = out_of(capsys)
    assert out.startswith("FAIL theorem1")


def test_verify_missing_arguments(capsys):
    assert run(["verify", "theorem1", "--m", "4"]) == 1
    _, err = out_of(capsys)
    assert "--n" in err


def test_explore_plain_and_csv(capsys):
    assert run(["explore", "--m", "3"]) == 0
    out, _ = out_of(capsys)
    assert out.split("\n") == ["n t count", "3 0 6", "4 1 5"]
    assert run(["explore", "--m", "3", "--format", "csv"]) == 0
    rows = list(csv.DictReader(io.StringIO(out_of(capsys)[0])))
    assert [(r["n"], r["count"]) for r in rows] == [("3", "6"), ("4", "5")]


# exit codes and bounds


def test_parse_error_exit_code(capsys):
    assert run(["sort", "41x2"]) == 1
    _, err = out_of(capsys)
    assert "character 3" in err


def test_domain_error_exit_code(capsys):
    assert run(["preimage", "35241"]) == 2
    assert run(["zeta", "--l", "99", "--m", "4"]) == 2
    assert run(["lift", "21345", "--t", "4"]) == 2
    assert run(["bijection", "{1}{3}"]) == 2
    capsys.readouterr()


def test_resource_error_exit_code(capsys):
    assert run(["count-image", "--n", "11", "--t", "1"]) == 3
    _, err = out_of(capsys)
    assert "bound" in err
    assert run(["count-image", "--n", "13", "--t", "1", "--max-n", "13"]) == 3
    capsys.readouterr()


def test_usage_error_exit_code(capsys):
    assert run(["sort", "4162", "--frobnicate"]) == 1
    assert run([]) == 1
    assert run(["count-image", "--n", "4"]) == 1  # missing --t
    capsys.readouterr()


def test_max_n_env_mirror(capsys, monkeypatch):
    monkeypatch.setenv("STACKSORT_MAX_N", "4")
    assert run(["count-image", "--n", "5", "--t", "1"]) == 3
    capsys.readouterr()
    monkeypatch.setenv("STACKSORT_MAX_N", "5")
    assert run(["count-image", "--n", "5", "--t", "1"]) == 0
    assert out_of(capsys)[0] == "17"
    monkeypatch.setenv("STACKSORT_MAX_N", "banana")
    assert run(["count-image", "--n", "5", "--t", "1"]) == 1
    capsys.readouterr()


def test_explicit_flag_beats_env(capsys, monkeypatch):
    monkeypatch.setenv("STACKSORT_MAX_N", "4")
    assert run(["count-image", "--n", "5", "--t", "1", "--max-n", "5"]) == 0
    assert out_of(capsys)[0] == "17"


def test_bound_warning_on_stderr(capsys):
    # raising the bound warns, even when the run itself is small
    assert run(["count-image", "--n", "5", "--t", "1", "--max-n", "12"]) == 0
    out, err = out_of(capsys)
    assert out == "17"
    assert "warning" in err


def test_execute_requires_known_command():
    with pytest.raises(UsageError):
        execute(CommandPlan(command="bogus"))


def test_printed_permutations_reparse(capsys):
    for argv in (["sort", "4162"], ["zeta", "--l", "3", "--m", "5"],
                 ["lift", "12345"], ["preimage", "2134"]):
        assert run(argv) == 0
        first = out_of(capsys)[0].split("\n")[0]
        assert parse_permutation(first) == tuple(
            int(v) for v in first.split())
