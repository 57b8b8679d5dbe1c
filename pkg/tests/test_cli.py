import json

import pytest

from bmatching.cli import main
from bmatching import parse_instance, parse_result, verify_b_matching

FORCED_TEXT = "1 2\n2\n1 1\n5 3\n"


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_solve_forced_instance(tmp_path, capsys):
    path = write(tmp_path, "forced.txt", FORCED_TEXT)
    assert main(["solve", path]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["weight"] == 8.0
    assert obj["edges"] == [[0, 0, 1], [0, 1, 1]]
    assert obj["phase1_augmentations"] == 1
    assert "solver_version" in obj


def test_solve_check_invariants_same_bytes(tmp_path, capsys):
    path = write(tmp_path, "forced.txt", FORCED_TEXT)
    main(["solve", path])
    plain = capsys.readouterr().out
    main(["solve", path, "--check-invariants"])
    checked = capsys.readouterr().out
    assert plain == checked
    main(["solve", path, "--greedy-init"])
    greedy = capsys.readouterr().out
    assert json.loads(greedy)["weight"] == 8.0


def test_verify_pass_and_tampered(tmp_path, capsys):
    inst = write(tmp_path, "inst.txt", FORCED_TEXT)
    main(["solve", inst])
    result_text = capsys.readouterr().out
    good = write(tmp_path, "good.json", result_text)
    assert main(["verify", inst, good]) == 0
    assert capsys.readouterr().out.strip() == "pass"
    bad = write(tmp_path, "bad.json", result_text.replace('"weight": 8.0', '"weight": 9.0'))
    assert main(["verify", inst, bad]) == 1
    assert capsys.readouterr().out.startswith("fail")


def test_oracle_command(tmp_path, capsys):
    path = write(tmp_path, "inst.txt", FORCED_TEXT)
    assert main(["oracle", path]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["weight"] == 8.0
    assert main(["oracle", path, "--simple-edges"]) == 0
    assert json.loads(capsys.readouterr().out)["weight"] == 8.0


def test_oracle_too_large_exit_code(tmp_path, capsys):
    path = write(tmp_path, "inst.txt", FORCED_TEXT)
    assert main(["oracle", path, "--max-states", "1"]) == 2
    assert "error" in capsys.readouterr().err


def test_gen_solve_pipeline(tmp_path, capsys):
    assert main(["gen", "--s", "3", "--t", "2", "--cap-max", "2",
                 "--wmin", "-9", "--wmax", "9", "--int", "--seed", "42"]) == 0
    text = capsys.readouterr().out
    inst = parse_instance(text)
    path = write(tmp_path, "gen.txt", text)
    assert main(["solve", path]) == 0
    bm = parse_result(capsys.readouterr().out)
    assert verify_b_matching(inst, bm).ok


def test_gen_same_seed_same_bytes(capsys):
    main(["gen", "--s", "4", "--t", "4", "--seed", "9"])
    first = capsys.readouterr().out
    main(["gen", "--s", "4", "--t", "4", "--seed", "9"])
    assert capsys.readouterr().out == first


def test_compare_single_line_deterministic(tmp_path, capsys):
    cex = str(tmp_path / "cex")
    assert main(["compare", "--count", "1", "--seed", "5", "--cex-dir", cex]) in (0, 1)
    first = capsys.readouterr().out
    assert main(["compare", "--count", "1", "--seed", "5", "--cex-dir", cex]) in (0, 1)
    assert capsys.readouterr().out == first
    lines = first.strip().splitlines()
    assert len(lines) == 2  # one instance line plus the summary
    assert lines[1].startswith("# agreement")


def test_compare_include_stress_writes_counterexample(tmp_path, capsys):
    cex = tmp_path / "cex"
    code = main(["compare", "--count", "0", "--include-stress", "--cex-dir", str(cex)])
    out = capsys.readouterr().out
    assert code == 1
    assert out.splitlines()[0] == "stress 11 12 no"
    files = list(cex.iterdir())
    assert len(files) == 1
    saved = parse_instance(files[0].read_text(encoding="utf-8"))
    assert saved.alpha == (2, 1) and saved.beta == (1, 2)


def test_compare_never_reports_false_agreement(tmp_path, capsys):
    cex = str(tmp_path / "cex")
    main(["compare", "--count", "40", "--seed", "1", "--cex-dir", cex])
    out = capsys.readouterr().out
    for line in out.strip().splitlines():
        if line.startswith("#"):
            continue
        _, ws, wo, agree = line.split()
        assert (agree == "yes") == (float(ws) == float(wo))


def test_bench_command_table_and_plot(tmp_path, capsys):
    plot = tmp_path / "scaling.png"
    assert main(["bench", "--sizes", "16,24", "--reps", "3", "--seed", "2",
                 "--plot", str(plot)]) == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert lines[0] == "n\treps\tmedian_s"
    assert len(lines) == 4
    assert lines[-1].startswith("slope ")
    assert plot.exists() and plot.stat().st_size > 0


def test_bench_out_file_gets_plot_alongside(tmp_path, capsys):
    out_path = tmp_path / "rows.tsv"
    assert main(["bench", "--sizes", "16,24", "--reps", "3", "--seed", "2",
                 "--out", str(out_path)]) == 0
    assert out_path.exists()
    assert (tmp_path / "rows.png").exists()


def test_missing_file_exit_code(capsys):
    assert main(["solve", "definitely-not-here.txt"]) == 2
    assert "error" in capsys.readouterr().err


def test_instance_parse_error_exit_code(tmp_path, capsys):
    path = write(tmp_path, "broken.txt", "1 1\n1\n1\n")
    assert main(["solve", path]) == 2
    assert "line 4" in capsys.readouterr().err


def test_unknown_flag_usage_error():
    with pytest.raises(SystemExit) as err:
        main(["solve", "--bogus"])
    assert err.value.code == 2


def test_unknown_command_usage_error():
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2
