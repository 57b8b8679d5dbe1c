import math

import pytest

from bmatching.bench import DegenerateFit, ScalingRow, fit_exponent, render_table, run_scaling


def synthetic_rows(exponent, sizes=(16, 32, 64)):
    return [
        ScalingRow(n=n, reps=3, median_s=1e-6 * n**exponent, rep_seconds=(0.0, 0.0, 0.0))
        for n in sizes
    ]


def test_fit_exponent_cubic():
    assert math.isclose(fit_exponent(synthetic_rows(3)), 3.0, abs_tol=1e-9)


def test_fit_exponent_quadratic():
    assert math.isclose(fit_exponent(synthetic_rows(2)), 2.0, abs_tol=1e-9)


def test_fit_exponent_degenerate():
    rows = [
        ScalingRow(n=16, reps=3, median_s=0.0, rep_seconds=(0.0,) * 3),
        ScalingRow(n=32, reps=3, median_s=1.0, rep_seconds=(1.0,) * 3),
    ]
    with pytest.raises(DegenerateFit):
        fit_exponent(rows)


def test_fit_exponent_needs_two_rows():
    with pytest.raises(ValueError):
        fit_exponent(synthetic_rows(3, sizes=(16,)))


def test_run_scaling_shapes_and_determinism():
    rows = run_scaling([16], reps=3, seed=4)
    assert len(rows) == 1
    row = rows[0]
    assert row.n == 16 and row.reps == 3
    assert len(row.rep_seconds) == 3
    assert row.median_s == sorted(row.rep_seconds)[1]
    assert all(t > 0 for t in row.rep_seconds)


def test_run_scaling_validates_arguments():
    with pytest.raises(ValueError):
        run_scaling([32, 16], reps=3, seed=0)  # not ascending
    with pytest.raises(ValueError):
        run_scaling([8], reps=3, seed=0)  # too small
    with pytest.raises(ValueError):
        run_scaling([17], reps=3, seed=0)  # odd
    with pytest.raises(ValueError):
        run_scaling([16], reps=2, seed=0)  # too few reps
    with pytest.raises(ValueError):
        run_scaling([], reps=3, seed=0)


def test_render_table_format():
    rows = synthetic_rows(3, sizes=(16, 32))
    text = render_table(rows, 3.0)
    lines = text.strip().splitlines()
    assert lines[0] == "n\treps\tmedian_s"
    assert lines[1].startswith("16\t3\t")
    assert lines[-1] == "slope 3.0000"
