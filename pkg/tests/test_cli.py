import argparse
import json

import pytest

import affine_group
import cli
from cli import EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main
from table_io import save_cache
from weights import RankConfig


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_table_csv_rank_3(capsys):
    code, out = run(capsys, "table", "--rank", "3", "--format", "csv")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert len(lines) == 9
    assert '"(2, 2, 2)",10,1,5,8,' in lines[1]


def test_table_json_rank_4(capsys):
    code, out = run(capsys, "table", "--rank", "4", "--format", "json", "--quiet")
    assert code == EXIT_OK
    assert len(json.loads(out)) == 52


def test_usage_errors(capsys):
    assert run(capsys, "table", "--rank", "0")[0] == EXIT_USAGE
    assert run(capsys, "table", "--rank", "3", "--format", "xlsx")[0] == EXIT_USAGE
    assert run(capsys, "table", "--rank", "3", "--p", "3")[0] == EXIT_USAGE
    assert run(capsys, "table", "--rank", "3", "--p", "5")[0] == EXIT_USAGE
    assert run(capsys, "table", "--rank", "3", "--threads", "0")[0] == EXIT_USAGE
    assert run(capsys)[0] == EXIT_USAGE


def test_bad_thread_environment(capsys, monkeypatch):
    monkeypatch.setenv("RIGHTSETS_THREADS", "many")
    assert run(capsys, "table", "--rank", "3")[0] == EXIT_USAGE


def test_output_is_deterministic_across_threads(capsys):
    _, single = run(capsys, "table", "--rank", "3", "--format", "csv")
    _, again = run(capsys, "table", "--rank", "3", "--format", "csv")
    _, pooled = run(capsys, "table", "--rank", "3", "--format", "csv", "--threads", "2")
    assert single == again == pooled


def test_out_file(capsys, tmp_path):
    target = tmp_path / "tables" / "a3.tex"
    code, out = run(capsys, "table", "--rank", "3", "--out", str(target))
    assert code == EXIT_OK
    assert out == ""
    text = target.read_text(encoding="utf-8")
    assert text.startswith(r"\noindent $A_{3}$")
    assert r"\begin{longtable}" in text


def test_cache_is_written_then_reused(capsys, tmp_path, monkeypatch):
    code, first = run(capsys, "table", "--rank", "3", "--format", "csv", "--cache", str(tmp_path))
    assert code == EXIT_OK
    assert (tmp_path / "A3_p4.jsonl").exists()
    assert not (tmp_path / "A3_p4.jsonl.partial").exists()

    def fail(*args, **kwargs):
        raise AssertionError("rows should come from the cache")

    monkeypatch.setattr(cli, "build_rows", fail)
    monkeypatch.setenv("RIGHTSETS_CACHE_DIR", str(tmp_path))
    code, second = run(capsys, "table", "--rank", "3", "--format", "csv", "--cache")
    assert code == EXIT_OK
    assert second == first


def test_cache_without_directory(capsys, monkeypatch):
    monkeypatch.delenv("RIGHTSETS_CACHE_DIR", raising=False)
    assert run(capsys, "table", "--rank", "3", "--cache")[0] == EXIT_IO


def test_cache_mismatch_is_an_io_error(capsys, tmp_path, rows3, cfg3):
    save_cache(rows3, cfg3, tmp_path / "A4_p5.jsonl")
    assert run(capsys, "table", "--rank", "4", "--cache", str(tmp_path))[0] == EXIT_IO


@pytest.mark.parametrize("rank, length, omega", [
    (3, 10, "(2, 2, 2)"),
    (4, 20, "(3, 3, 3, 3)"),
    (5, 35, "(4, 4, 4, 4, 4)"),
])
def test_wmax(capsys, rank, length, omega):
    code, out = run(capsys, "wmax", "--rank", str(rank))
    assert code == EXIT_OK
    assert f"length: {length}" in out.splitlines()
    assert f"(p-2)rho omega: {omega}" in out.splitlines()
    assert f"w_max.(-2rho) omega: {omega}" in out.splitlines()


def test_wmax_beyond_coxeter_number(capsys):
    code, out = run(capsys, "wmax", "--rank", "3", "--p", "5")
    assert code == EXIT_OK
    assert "length: 10" in out.splitlines()
    assert "(p-2)rho omega: (3, 3, 3)" in out.splitlines()


def test_verify_small(capsys):
    code, out = run(capsys, "verify", "--rank", "2", "--oracle-maxlen", "6")
    assert code == EXIT_OK
    assert "oracle: ok" in out.splitlines()
    assert "fixtures: ok" in out.splitlines()


def test_verify_rejects_sweep_beyond_oracle_bound(capsys, monkeypatch):
    monkeypatch.setenv("RIGHTSETS_ORACLE_MAXLEN", "4")
    assert run(capsys, "verify", "--rank", "2", "--oracle-maxlen", "6")[0] == EXIT_USAGE


def test_verify_catches_a_broken_length(capsys, monkeypatch):
    real = affine_group.length
    monkeypatch.setattr(affine_group, "length", lambda w: real(w) + 1)
    code, out = run(capsys, "verify", "--rank", "2", "--oracle-maxlen", "4")
    assert code == EXIT_VERIFY
    assert "word_lengths: failed" in out.splitlines()


def test_rank_config_from_cli_matches_default():
    args = cli.build_parser().parse_args(["table", "--rank", "4"])
    assert RankConfig(args.rank, args.p) == RankConfig(4)


@pytest.mark.parametrize("argv", [
    ["--quiet", "table", "--rank", "3", "--format", "csv"],
    ["table", "--rank", "3", "--format", "csv", "--quiet"],
    ["wmax", "--rank", "3", "--quiet"],
])
def test_quiet_before_or_after_the_subcommand(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_OK


def test_quiet_flag_values():
    parser = cli.build_parser()
    assert parser.parse_args(["--quiet", "wmax", "--rank", "3"]).quiet is True
    assert parser.parse_args(["wmax", "--rank", "3", "--quiet"]).quiet is True
    assert parser.parse_args(["wmax", "--rank", "3"]).quiet is False


def test_cache_help_names_the_resumable_method():
    parser = cli.build_parser()
    sub = next(action for action in parser._actions if isinstance(action, argparse._SubParsersAction))
    table = sub.choices["table"]
    cache = next(action for action in table._actions if action.dest == "cache")
    assert "--method lifting" in cache.help


def test_cache_with_a_non_object_header(capsys, tmp_path):
    (tmp_path / "A3_p4.jsonl").write_text("[]\n", encoding="utf-8")
    assert run(capsys, "table", "--rank", "3", "--cache", str(tmp_path))[0] == EXIT_IO


def test_verify_reuses_the_fixture_cache(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("RIGHTSETS_CACHE_DIR", str(tmp_path))
    assert run(capsys, "verify", "--rank", "2", "--oracle-maxlen", "4")[0] == EXIT_OK
    assert {path.name for path in tmp_path.glob("*.jsonl")} == {"A2_p3.jsonl", "A3_p4.jsonl", "A4_p5.jsonl"}

    def fail(*args, **kwargs):
        raise AssertionError("tables should come from the cache")

    monkeypatch.setattr("verification.build_rows", fail)
    code, out = run(capsys, "verify", "--rank", "2", "--oracle-maxlen", "4")
    assert code == EXIT_OK
    assert "fixtures: ok" in out.splitlines()
