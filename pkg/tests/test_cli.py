import math

import pytest

from presort.cli import BENCH_HEADER, CENSUS_HEADER, main
from presort.core import load_sequence
from presort.measures import decompose_maximal

from vectors import BLOCKS16


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_keys(path, keys):
    path.write_text("".join(f"{k}\n" for k in keys))


# -- gen -------------------------------------------------------------------


def test_gen_transpose(tmp_path, capsys):
    out = tmp_path / "t.txt"
    code, stdout, _ = run(capsys, "gen", "--family", "transpose", "--n", "8", "--out", str(out))
    assert code == 0
    assert "family=transpose" in stdout and "n=8" in stdout
    assert load_sequence(out).keys() == [5, 6, 7, 8, 1, 2, 3, 4]


def test_gen_sorted(tmp_path, capsys):
    out = tmp_path / "s.txt"
    assert run(capsys, "gen", "--family", "sorted", "--n", "3", "--out", str(out))[0] == 0
    assert load_sequence(out).keys() == [1, 2, 3]


def test_gen_sorted_type_verifies(tmp_path, capsys):
    out = tmp_path / "st.txt"
    code, _, _ = run(
        capsys, "gen", "--family", "sorted-type", "--n", "5", "--type", "3,2", "--seed", "7",
        "--out", str(out),
    )
    assert code == 0
    assert decompose_maximal(load_sequence(out)).size_multiset() == (3, 2)


def test_gen_bad_family_is_usage_error(tmp_path, capsys):
    code, _, err = run(capsys, "gen", "--family", "bogus", "--n", "4", "--out", str(tmp_path / "x"))
    assert code == 1


def test_gen_bad_params_are_usage_errors(tmp_path, capsys):
    out = str(tmp_path / "x.txt")
    assert run(capsys, "gen", "--family", "displacement", "--n", "4", "--out", out)[0] == 1
    assert run(capsys, "gen", "--family", "sorted-type", "--n", "4", "--type", "3,2", "--out", out)[0] == 1
    assert run(capsys, "gen", "--family", "multiset", "--n", "4", "--h", "9", "--out", out)[0] == 1


# -- measure -----------------------------------------------------------------


def test_measure_key_value_lines(tmp_path, capsys):
    f = tmp_path / "b.txt"
    write_keys(f, BLOCKS16)
    code, stdout, _ = run(capsys, "measure", "--in", str(f))
    assert code == 0
    lines = dict(line.split("=", 1) for line in stdout.strip().splitlines())
    assert lines["n"] == "16"
    assert lines["k"] == "8"
    assert lines["sizes"] == "6-2-2-2-1-1-1-1"
    assert lines["displacement"] == "13"
    assert float(lines["H"]) == pytest.approx(2.655639, abs=1e-6)


def test_measure_sorted_file(tmp_path, capsys):
    f = tmp_path / "s.txt"
    write_keys(f, range(10))
    _, stdout, _ = run(capsys, "measure", "--in", str(f))
    lines = dict(line.split("=", 1) for line in stdout.strip().splitlines())
    assert lines["H"] == "0.000000"
    assert lines["inversions"] == "0"
    assert lines["displacement"] == "0"


def test_measure_reverse_inversions(tmp_path, capsys):
    f = tmp_path / "r.txt"
    write_keys(f, [4, 3, 2, 1])
    _, stdout, _ = run(capsys, "measure", "--in", str(f))
    assert "inversions=6" in stdout


def test_measure_csv_row(tmp_path, capsys):
    f = tmp_path / "b.txt"
    write_keys(f, BLOCKS16)
    code, stdout, _ = run(capsys, "measure", "--in", str(f), "--csv")
    lines = stdout.strip().splitlines()
    assert len(lines) == 2
    assert lines[0].startswith("n,k,sizes,")
    assert lines[1].startswith("16,8,6-2-2-2-1-1-1-1,")


def test_measure_missing_file_exit_2(capsys):
    assert run(capsys, "measure", "--in", "/no/such/file")[0] == 2


def test_measure_garbage_file_exit_2(tmp_path, capsys):
    f = tmp_path / "g.txt"
    f.write_text("hello\n")
    assert run(capsys, "measure", "--in", str(f))[0] == 2


# -- sort -------------------------------------------------------------------


def test_sort_psort_reports_and_writes(tmp_path, capsys):
    f = tmp_path / "b.txt"
    write_keys(f, BLOCKS16)
    out = tmp_path / "sorted.txt"
    code, stdout, _ = run(
        capsys, "sort", "--in", str(f), "--algo", "psort", "--pivot", "median", "--out", str(out)
    )
    assert code == 0
    assert "sorted=true" in stdout
    assert "comparisons=" in stdout and "retries=" in stdout
    assert load_sequence(out).keys() == sorted(BLOCKS16)


def test_sort_sorted_input_charges_n_minus_1(tmp_path, capsys):
    f = tmp_path / "s.txt"
    write_keys(f, range(1000))
    _, stdout, _ = run(capsys, "sort", "--in", str(f), "--algo", "psort")
    assert "comparisons=999" in stdout


def test_sort_blocked_ok(tmp_path, capsys):
    f = tmp_path / "w.txt"
    write_keys(f, [2, 1, 4, 3, 6, 5, 8, 7])
    code, stdout, _ = run(capsys, "sort", "--in", str(f), "--algo", "blocked", "--k", "1")
    assert code == 0
    assert "sorted=true" in stdout


def test_sort_blocked_underpowered_k_exit_3(tmp_path, capsys):
    f = tmp_path / "w.txt"
    write_keys(f, [9, 1, 2, 3, 4, 5, 6, 7, 8, 0])
    code, stdout, _ = run(capsys, "sort", "--in", str(f), "--algo", "blocked", "--k", "1")
    assert code == 3
    assert "sorted=false" in stdout


def test_sort_blocked_missing_k_exit_1(tmp_path, capsys):
    f = tmp_path / "w.txt"
    write_keys(f, [2, 1])
    assert run(capsys, "sort", "--in", str(f), "--algo", "blocked")[0] == 1


def test_sort_randmid_and_fr(tmp_path, capsys):
    f = tmp_path / "b.txt"
    write_keys(f, BLOCKS16)
    for pivot in ("randmid", "fr"):
        code, stdout, _ = run(
            capsys, "sort", "--in", str(f), "--algo", "psort", "--pivot", pivot, "--seed", "5"
        )
        assert code == 0
        assert "sorted=true" in stdout


# -- bench -------------------------------------------------------------------


def bench_args(out, extra=()):
    return [
        "bench",
        "--families", "sorted,transpose",
        "--sizes", "64,128",
        "--algos", "psort-median,insertion,natmerge",
        "--trials", "2",
        "--seed", "3",
        "--out", str(out),
        "--no-time",
        *extra,
    ]


def test_bench_csv_shape_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(bench_args(a)) == 0
    assert main(bench_args(b)) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0] == BENCH_HEADER
    # 2 families x 2 sizes x 3 algos x 2 trials
    assert len(lines) == 1 + 24
    cols = [line.split(",") for line in lines[1:]]
    assert all(c[-1] == "0" for c in cols)  # --no-time zeroes elapsed_ns
    order = [(c[0], int(c[1]), c[3], int(c[5])) for c in cols]
    assert order == sorted(order)


def test_bench_elapsed_is_the_only_nondeterministic_column(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = bench_args(a)[:-2]  # drop --no-time (and --out pair stays)
    argv = [x for x in bench_args(a) if x != "--no-time"]
    assert main(argv) == 0
    argv_b = [x for x in bench_args(b) if x != "--no-time"]
    assert main(argv_b) == 0
    capsys.readouterr()
    rows_a = [line.rsplit(",", 1) for line in a.read_text().splitlines()]
    rows_b = [line.rsplit(",", 1) for line in b.read_text().splitlines()]
    assert [r[0] for r in rows_a] == [r[0] for r in rows_b]


def test_bench_ratio_column_consistent(tmp_path, capsys):
    out = tmp_path / "r.csv"
    assert main(bench_args(out)) == 0
    capsys.readouterr()
    for line in out.read_text().splitlines()[1:]:
        cols = line.split(",")
        cmp_count, bound, ratio = int(cols[6]), float(cols[8]), float(cols[10])
        assert ratio == pytest.approx(cmp_count / bound, abs=1e-5)


def test_bench_param_column(tmp_path, capsys):
    out = tmp_path / "p.csv"
    code = main([
        "bench", "--families", "displacement,multiset,sorted-type",
        "--sizes", "32", "--algos", "blocked", "--k", "4", "--h", "8", "--blocks", "4",
        "--trials", "1", "--out", str(out), "--no-time",
    ])
    capsys.readouterr()
    assert code == 0
    params = {line.split(",")[0]: line.split(",")[2] for line in out.read_text().splitlines()[1:]}
    assert params == {"displacement": "k=4", "multiset": "h=8", "sorted-type": "type=8-8-8-8"}


def test_bench_usage_errors(tmp_path, capsys):
    base = ["bench", "--sizes", "8", "--trials", "1"]
    assert main(base + ["--families", "nope", "--algos", "insertion"]) == 1
    assert main(base + ["--families", "sorted", "--algos", "quantum"]) == 1
    assert main(base + ["--families", "multiset", "--algos", "insertion"]) == 1  # missing --h
    assert main(base + ["--families", "sorted", "--algos", "blocked"]) == 1  # missing --k
    assert main(["bench", "--families", "sorted", "--sizes", "8", "--algos", "insertion",
                 "--trials", "0"]) == 1
    capsys.readouterr()


# -- census -------------------------------------------------------------------


def test_census_n3_csv(capsys):
    code, stdout, _ = run(capsys, "census", "--n", "3")
    assert code == 0
    lines = stdout.strip().splitlines()
    assert lines[0] == CENSUS_HEADER
    rows = {line.split(",")[0]: line.split(",") for line in lines[1:]}
    assert set(rows) == {"3", "2-1", "1-1-1"}
    assert sum(int(r[1]) for r in rows.values()) == 6
    assert rows["3"][3] == "true"  # k=1 is the only type with 2k <= 3
    assert rows["2-1"][2] == "" and rows["2-1"][3] == "false"
    assert rows["1-1-1"][2] == "" and rows["1-1-1"][3] == "false"
    assert all(r[5] == "" for r in rows.values())  # no worst-case column content


def test_census_n1(capsys):
    code, stdout, _ = run(capsys, "census", "--n", "1")
    rows = stdout.strip().splitlines()[1:]
    assert code == 0
    assert rows == ["1,1,,false,0,"]


def test_census_worstcase_column(capsys):
    code, stdout, _ = run(capsys, "census", "--n", "4", "--worstcase", "psort-median")
    assert code == 0
    for line in stdout.strip().splitlines()[1:]:
        cols = line.split(",")
        wc, info_bits = int(cols[5]), int(cols[4])
        assert wc >= info_bits


def test_census_range_errors(capsys):
    assert run(capsys, "census", "--n", "11")[0] == 1
    assert run(capsys, "census", "--n", "0")[0] == 1
    assert run(capsys, "census", "--n", "9", "--worstcase", "psort-median")[0] == 1
    assert run(capsys, "census", "--n", "9")[0] == 0  # enumeration alone still fine


def test_census_out_file(tmp_path, capsys):
    out = tmp_path / "c.csv"
    assert run(capsys, "census", "--n", "3", "--out", str(out))[0] == 0
    assert out.read_text().splitlines()[0] == CENSUS_HEADER


# -- top level -------------------------------------------------------------------


def test_no_command_is_usage_error(capsys):
    assert main([]) == 1
    capsys.readouterr()


def test_unknown_command_is_usage_error(capsys):
    assert main(["frobnicate"]) == 1
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()
