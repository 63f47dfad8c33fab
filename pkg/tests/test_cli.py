import csv
import io
import json

import pytest

from conftest import random_dag
from fasratio import cli
from fasratio.graph import Digraph, format_edge_list, parse_edge_list


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_gen_empty_and_full(capsys):
    code, out, err = run(["gen", "--n", "5", "--p", "0", "--seed", "1"], capsys)
    assert code == 0 and out == "n 5\n" and "m=0" in err
    code, out, _ = run(["gen", "--n", "5", "--p", "1", "--seed", "1"], capsys)
    assert len(out.splitlines()) == 21
    assert parse_edge_list(out).m == 20


def test_gen_writes_file(tmp_path, capsys):
    target = tmp_path / "g.txt"
    assert cli.main(["gen", "--n", "12", "--p", "0.3", "--seed", "4", "-o", str(target)]) == 0
    first = target.read_bytes()
    assert cli.main(["gen", "--n", "12", "--p", "0.3", "--seed", "4", "-o", str(target)]) == 0
    assert target.read_bytes() == first
    assert capsys.readouterr().out == ""


def test_gen_bad_probability(capsys):
    code, _, err = run(["gen", "--n", "5", "--p", "2"], capsys)
    assert code == cli.EXIT_PRECONDITION and "p must" in err


def test_solve_three_cycle(tmp_path, capsys):
    f = tmp_path / "c3.txt"
    f.write_text("n 3\n0 1\n1 2\n2 0\n")
    code, out, _ = run(["solve", "-i", str(f), "--method", "subset-dp"], capsys)
    assert code == 0
    sol = json.loads(out)
    assert sol["y_star"] == 1 and sol["x_star"] == 2 and sol["m"] == 3 and sol["optimal"]


def test_solve_dag_local_search(tmp_path, capsys):
    f = tmp_path / "dag.txt"
    f.write_text(format_edge_list(random_dag(10, 0.4, 2)))
    code, out, _ = run(["solve", "-i", str(f), "--method", "local-search", "--restarts", "20"], capsys)
    assert code == 0
    sol = json.loads(out)
    assert sol["y_star"] == 0 and sol["optimal"] is False and sol["method"] == "local-search"


def test_solve_exit_codes(tmp_path, capsys):
    big = tmp_path / "big.txt"
    big.write_text(format_edge_list(Digraph.from_arcs(30, [(0, 1)])))
    code, _, err = run(["solve", "-i", str(big), "--method", "subset-dp"], capsys)
    assert code == cli.EXIT_CAPACITY
    bad = tmp_path / "bad.txt"
    bad.write_text("n 3\n0 1\n2 2\n")
    code, _, err = run(["solve", "-i", str(bad)], capsys)
    assert code == cli.EXIT_PARSE and "line 3" in err
    code, _, _ = run(["solve", "-i", str(tmp_path / "missing.txt")], capsys)
    assert code == cli.EXIT_IO
    assert len({cli.EXIT_CAPACITY, cli.EXIT_PARSE, cli.EXIT_PRECONDITION, cli.EXIT_IO, cli.EXIT_USAGE}) == 5


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["bounds", "--n", "3"])
    assert info.value.code == cli.EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        cli.main(["experiment", "--n", "9..3", "--p", "0.5", "--epsilon", "0"])
    assert info.value.code == cli.EXIT_USAGE


def test_bounds_rows(capsys):
    code, out, _ = run(["bounds", "--n", "3", "--p", "0.5", "--epsilon", "0"], capsys)
    assert code == 0
    (row,) = rows(out)
    assert float(row["exact_tail"]) == 0.65625
    code, out, _ = run(["bounds", "--n", "10", "--p", "0.6", "--epsilon", "0.1"], capsys)
    (row,) = rows(out)
    assert row["eq4"] == row["eq6"] == "n/a (hypothesis)"
    code, out, _ = run(["bounds", "--n", "100", "--p", "0.1", "--epsilon", "0.5"], capsys)
    (row,) = rows(out)
    assert float(row["eq6"]) <= float(row["eq4"]) <= 1
    code, out, _ = run(["bounds", "--n", "3..6", "--p", "0.2", "--epsilon", "0.5"], capsys)
    assert [r["n"] for r in rows(out)] == ["3", "4", "5", "6"]


def test_tail_command(capsys):
    code, out, _ = run(["tail", "--n", "3", "--p", "0.5", "--epsilon", "0"], capsys)
    assert code == 0
    assert float(rows(out)[0]["exact_tail"]) == pytest.approx(21 / 32, abs=1e-12)
    code, _, _ = run(["tail", "--n", "300", "--p", "0.5", "--epsilon", "0"], capsys)
    assert code == cli.EXIT_CAPACITY


def test_surface_command(tmp_path, capsys):
    target = tmp_path / "surf.csv"
    code, out, err = run(["surface", "--spacing", "0.01", "-o", str(target)], capsys)
    assert code == 0 and out == ""
    assert "positivity: PASS" in err
    assert "p=0.5 s=0.0 value=0.020833333333333332" in err
    assert len(target.read_text().splitlines()) == 5152
    code, out, err = run(["surface", "--spacing", "0.25"], capsys)
    assert code == 0 and len(out.splitlines()) == 16 and "PASS" in err
    code, _, _ = run(["surface", "--spacing", "0.03"], capsys)
    assert code == cli.EXIT_PRECONDITION


def test_experiment_raw(capsys):
    code, out, _ = run(["experiment", "--n", "3", "--p", "0.5", "--epsilon", "0",
                        "--trials", "100000", "--solver", "none"], capsys)
    assert code == 0
    (row,) = rows(out)
    assert abs(float(row["freq_raw"]) - 0.65625) < 0.0045
    assert row["freq_opt"] == ""


def test_experiment_sweep_trend(capsys):
    code, out, _ = run(["experiment", "--n", "8..16", "--p", "0.5", "--epsilon", "0.5",
                        "--trials", "100", "--solver", "exact-dp"], capsys)
    assert code == 0
    table = rows(out)
    assert [int(r["n"]) for r in table] == list(range(8, 17))
    means = [float(r["mean_ratio_opt"]) for r in table if int(r["n"]) % 2 == 0]
    assert all(b < a for a, b in zip(means, means[1:]))


def test_experiment_sweep_rows_are_stable(capsys):
    base = ["--p", "0.3", "--epsilon", "0.2", "--trials", "40", "--solver", "exact-dp", "--seed", "3"]
    _, small, _ = run(["experiment", "--n", "5..6"] + base, capsys)
    _, large, _ = run(["experiment", "--n", "4..7"] + base, capsys)
    assert rows(small) == rows(large)[1:3]


def test_experiment_json(capsys):
    code, out, _ = run(["experiment", "--n", "5", "--p", "0.3", "--epsilon", "0.2",
                        "--trials", "20", "--solver", "local-search", "--format", "json"], capsys)
    assert code == 0
    (item,) = json.loads(out)
    assert item["summary"]["heuristic"] is True
    assert item["comparison"]["opt_label"] == "heuristic"


def test_experiment_capacity(capsys):
    code, _, _ = run(["experiment", "--n", "30", "--p", "0.5", "--epsilon", "0",
                      "--trials", "1", "--solver", "exact-dp"], capsys)
    assert code == cli.EXIT_CAPACITY
