import io
import json
import pytest

from qstirling import PRESETS, Medium, OscillatorGeometry, PhysicalParams, SpectrumModel, WellGeometry
from qstirling.cli import main
from qstirling.errors import ValidationError
from qstirling.sweep import (COLUMNS, SweepError, SweepSpec, emit_csv, emit_json,
                             format_number, levels_table, parse_csv, parse_json, run_sweep)


def run_cli(*args):
    buf = io.StringIO()
    code = main(list(args), out=buf)
    return code, buf.getvalue()


def test_constant_sweep_gives_identical_rows():
    spec = SweepSpec(medium="well", preset="textbook", alpha_min=0.0, alpha_max=0.0,
                     steps=2, scale="linear")
    rows = list(run_sweep(spec))
    assert len(rows) == 2
    assert rows[0] == rows[1]


def test_linear_sweep_has_exactly_steps_rows_ascending():
    spec = SweepSpec(alpha_min=0.0, alpha_max=1e41, steps=7, scale="linear")
    rows = list(run_sweep(spec))
    assert len(rows) == 7
    assert [r.alpha for r in rows] == sorted(r.alpha for r in rows)


def test_log_sweep_anchor_row():
    spec = SweepSpec(steps=5)
    a = spec.alphas()
    assert a[0] == 0.0 and a[1] == 1e30 and a[-1] == 1e41 and len(a) == 6
    assert len(SweepSpec(steps=5, anchor=False).alphas()) == 5


@pytest.mark.parametrize("kw", [
    {"alpha_min": 2.0, "alpha_max": 1.0}, {"scale": "log", "alpha_min": 0.0},
    {"steps": 1}, {"medium": "box"}, {"preset": "quantum"}, {"output": "xml"},
])
def test_spec_validation(kw):
    with pytest.raises(ValidationError):
        SweepSpec(**kw)


def test_deterministic():
    spec = SweepSpec(steps=4)
    assert emit_csv(run_sweep(spec)) == emit_csv(run_sweep(spec))


def test_parallel_matches_serial():
    spec = SweepSpec(steps=6)
    from dataclasses import replace
    assert emit_csv(run_sweep(replace(spec, jobs=2))) == emit_csv(run_sweep(spec))


def test_point_errors_become_warnings():
    spec = SweepSpec(mass=1.0, preset="relativistic", alpha_min=0.0, alpha_max=0.0,
                     steps=2, scale="linear")
    rows = []
    with pytest.raises(SweepError):
        for r in run_sweep(spec):
            rows.append(r)
    assert len(rows) == 2
    assert all(r.failed and "error" in r.warnings for r in rows)


def test_format_number():
    assert format_number(0.5) == "0.5"
    assert format_number(1e-4) == "1.0000000000000000e-04"
    assert format_number(2e6) == "2.0000000000000000e+06"
    assert format_number(999999.5) == "999999.5"
    assert format_number(0.0) == "0.0"
    assert format_number(None) == ""
    assert format_number(True) == "1"


def test_empty_outputs():
    assert emit_csv([]) == ",".join(COLUMNS) + "\n"
    assert emit_json([]).strip() == "[]"


def test_one_row_fully_populated():
    row = next(iter(run_sweep(SweepSpec(steps=2, anchor=False))))
    text = emit_csv([row])
    lines = text.splitlines()
    assert len(lines) == 2
    fields = lines[1].split(",")
    assert len(fields) == len(COLUMNS)
    assert all(f != "" for f in fields[:len(COLUMNS) - 1])


def test_roundtrip_fifty_rows():
    rows = list(run_sweep(SweepSpec(steps=50, anchor=False)))
    assert len(rows) == 50
    assert parse_csv(emit_csv(rows)) == rows
    assert parse_json(emit_json(rows)) == rows
    assert "\r" not in emit_csv(rows)


def test_levels_table_textbook_well_ratios():
    m = SpectrumModel(Medium.WELL, WellGeometry(1.0), PhysicalParams.natural(m=1.0))
    t = levels_table(m, 3)
    e = [r["energy"] for r in t]
    assert e[1] / e[0] == pytest.approx(4) and e[2] / e[0] == pytest.approx(9)


def test_levels_table_double_well():
    p = PhysicalParams.natural(m=1.0)
    parent = SpectrumModel(Medium.WELL, WellGeometry(2.0), p)
    t = levels_table(SpectrumModel(Medium.DOUBLE_WELL, WellGeometry(2.0), p), 2, T=1.0)
    assert [r["energy"] for r in t] == [parent.level(2).energy, parent.level(4).energy]
    assert [r["degeneracy"] for r in t] == [2, 2]
    assert 0 < t[0]["cumulative_weight"] < t[1]["cumulative_weight"] <= 1.0 + 1e-15


def test_levels_table_corrected_oscillator():
    p = PhysicalParams.natural(alpha=1e41)
    m = SpectrumModel(Medium.OSCILLATOR, OscillatorGeometry(4.0), p, PRESETS["ncgup-full"])
    from qstirling import energy_oscillator
    t = levels_table(m, 5)
    for r in t:
        assert r["energy"] == energy_oscillator(r["n"], OscillatorGeometry(4.0), p,
                                                PRESETS["ncgup-full"])


# command line

SPEC_EXAMPLE = ["sweep", "--medium", "oscillator", "--preset", "ncgup-full", "--alpha-min", "1e30",
                "--alpha-max", "1e41", "--steps", "100", "--scale", "log", "--t-hot", "2",
                "--t-cold", "1", "--omega", "4", "--omega-prime", "3", "--units", "natural",
                "--output", "csv"]


def test_cli_documented_invocation():
    code, out = run_cli(*SPEC_EXAMPLE)
    assert code == 0
    rows = parse_csv(out)
    assert len(rows) == 101
    assert rows[0].alpha == 0.0


def test_cli_byte_identical_runs():
    assert run_cli(*SPEC_EXAMPLE)[1] == run_cli(*SPEC_EXAMPLE)[1]


def test_cli_config_file_equivalence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("medium = oscillator\npreset = ncgup-full\nalpha-min = 1e30\n"
                   "alpha_max = 1e41\nsteps = 100\nscale = log\nt-hot = 2\nt-cold = 1\n"
                   "omega = 4\nomega-prime = 3\nunits = natural\noutput = csv\n")
    code, out = run_cli("sweep", "--config", str(cfg))
    assert code == 0
    assert out == run_cli(*SPEC_EXAMPLE)[1]


def test_cli_flags_override_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("steps = 9\noutput = json\nno-anchor = true\n")
    code, out = run_cli("sweep", "--config", str(cfg), "--steps", "3")
    assert code == 0
    assert len(json.loads(out)) == 3


def test_cli_config_errors(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("bogus = 1\n")
    assert run_cli("sweep", "--config", str(cfg))[0] == 2
    assert run_cli("sweep", "--config", str(tmp_path / "missing.cfg"))[0] == 2
    assert run_cli("sweep", "--scale", "cubic")[0] == 2
    assert run_cli("sweep", "--steps", "many")[0] == 2


def test_cli_all_points_failed():
    code, _ = run_cli("sweep", "--mass", "1", "--preset", "relativistic", "--steps", "2")
    assert code == 3


def test_cli_cycle_and_levels_and_oracle():
    code, out = run_cli("cycle", "--medium", "well", "--units", "si", "--alpha", "1e41")
    assert code == 0 and len(parse_csv(out)) == 1
    code, out = run_cli("levels", "--medium", "well", "--units", "natural", "--mass", "1",
                        "--l", "1", "--preset", "textbook", "--n-max", "3", "--output", "json")
    e = [r["energy"] for r in json.loads(out)]
    assert e[2] / e[0] == pytest.approx(9)
    code, out = run_cli("oracle", "--medium", "oscillator", "--alpha", "1e41")
    assert code == 0 and out.count("not real") == 5


def test_cli_oracle_well_defaults_are_textbook_regime():
    code, out = run_cli("oracle", "--output", "json")
    assert code == 0
    gaps = [r["relative_gap"] for r in json.loads(out)]
    assert len(gaps) == 5 and all(a > b for a, b in zip(gaps, gaps[1:]))
