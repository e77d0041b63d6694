"""Configuration documents, output file formats, and the command line."""

import numpy as np
import pytest

import eitsoliton as es
from eitsoliton.cli import main
from eitsoliton.errors import ConfigError, DomainError
from eitsoliton.outputs import (CHI_HEADER, METRICS_HEADER, OutputError,
                                read_field_binary)
from eitsoliton.scenario import load_raw_profile

from conftest import uniform_cubic_scenario


@pytest.fixture()
def tiny_scenario():
    return uniform_cubic_scenario(nx=64, zeta_total=500.0, dzeta=250.0, stride=1)


@pytest.fixture()
def tiny_traj(tiny_scenario):
    return es.run(tiny_scenario)


# ---------------------------------------------------------------------------
# configuration documents
# ---------------------------------------------------------------------------

def test_render_parse_round_trip(tiny_scenario):
    scen = tiny_scenario.with_outputs([
        es.OutputSpec("snapshots", "f.bin", "binary"),
        es.OutputSpec("metrics", "m.csv", "csv"),
    ])
    text = es.render_scenario(scen)
    assert text.startswith("# eitsoliton scenario, artifact version")
    assert es.parse_scenario(text) == scen


def test_preset_round_trips():
    for name in ("fig3", "fig4", "fig5"):
        scen = es.preset(name)
        assert es.parse_scenario(es.render_scenario(scen)) == scen


def test_missing_keys_listed():
    with pytest.raises(ConfigError) as err:
        es.parse_scenario("[atomic]\nn_per_m3 = 1e20\n")
    msg = str(err.value)
    assert "missing required keys" in msg
    assert "[atomic] mu13_Cm" in msg
    assert "[grid] nx" in msg


def test_document_errors_carry_line_numbers():
    with pytest.raises(ConfigError, match="line 1: unknown section"):
        es.parse_scenario("[plasma]\n")
    with pytest.raises(ConfigError, match="line 2: unknown key 'colour'"):
        es.parse_scenario("[atomic]\ncolour = blue\n")
    with pytest.raises(ConfigError, match="line 3: duplicate key"):
        es.parse_scenario("[atomic]\nn_per_m3 = 1\nn_per_m3 = 2\n")
    with pytest.raises(ConfigError, match="line 1: assignment outside"):
        es.parse_scenario("n_per_m3 = 1\n")
    with pytest.raises(ConfigError, match="expected 'key = value'"):
        es.parse_scenario("[atomic]\njust some words\n")
    with pytest.raises(ConfigError, match="invalid value 'many'"):
        es.parse_scenario("[grid]\nnx = many\n")


def test_invalid_physics_becomes_config_error(tiny_scenario):
    text = es.render_scenario(tiny_scenario).replace(
        "gamma2_per_s = 0.0", "gamma2_per_s = -1.0")
    with pytest.raises(ConfigError, match="invalid configuration"):
        es.parse_scenario(text)


def test_probe_kind_errors(tiny_scenario):
    text = es.render_scenario(tiny_scenario)
    with pytest.raises(ConfigError, match="requires key m"):
        es.parse_scenario(text.replace("m = 0.005\n", ""))
    with pytest.raises(ConfigError, match="unknown probe kind"):
        es.parse_scenario(text.replace("kind = soliton", "kind = vortex"))


def test_comments_and_blank_lines_ignored(tiny_scenario):
    text = es.render_scenario(tiny_scenario)
    noisy = "# leading comment\n\n" + text.replace(
        "[grid]", "[grid]  # transverse/longitudinal grid")
    assert es.parse_scenario(noisy) == tiny_scenario


def test_raw_profile_csv(tmp_path):
    path = tmp_path / "probe.csv"
    xs = np.linspace(-1e-4, 1e-4, 11)
    path.write_text("x_m,re_V_per_m,im_V_per_m\n" + "\n".join(
        f"{x:.17g},{np.cos(i):.17g},{np.sin(i):.17g}"
        for i, x in enumerate(xs)) + "\n")
    profile = load_raw_profile(str(path))
    assert profile.xs.shape == (11,)
    assert profile.envelope[3] == pytest.approx(np.cos(3) + 1j * np.sin(3))
    # sampling clamps to zero outside the tabulated range
    sampled = profile.sample(np.array([-1.0, 0.0, 1.0]))
    assert sampled[0] == 0.0 and sampled[2] == 0.0

    bad = tmp_path / "bad.csv"
    bad.write_text("x_m,re\n0.0,1.0\n")
    with pytest.raises(ConfigError, match="3 columns"):
        load_raw_profile(str(bad))
    with pytest.raises(ConfigError, match="cannot read"):
        load_raw_profile(str(tmp_path / "absent.csv"))


def test_output_spec_validation():
    with pytest.raises(DomainError, match="unknown output kind"):
        es.OutputSpec("movie", "m.mp4", "binary")
    with pytest.raises(DomainError, match="requires format"):
        es.OutputSpec("metrics", "m.bin", "binary")


def test_preset_lookup():
    assert isinstance(es.preset("fig4"), es.ScenarioConfig)
    report = es.preset("estimate")
    assert report.width_fwhm_m == pytest.approx(5.9164858e-5, rel=1e-6)
    assert report.photon_flux_per_mm2_ns == pytest.approx(5.9443588, rel=1e-6)
    with pytest.raises(ConfigError, match="unknown preset"):
        es.preset("fig99")


# ---------------------------------------------------------------------------
# output files
# ---------------------------------------------------------------------------

def test_metrics_csv(tmp_path, tiny_traj):
    path = tmp_path / "metrics.csv"
    es.write_metrics_csv(tiny_traj, path)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == METRICS_HEADER
    assert len(lines) == 1 + len(tiny_traj)
    row = lines[1].split(",")
    assert float(row[0]) == 0.0
    assert float(row[1]) == pytest.approx(tiny_traj.snapshots[0].metrics.power,
                                          rel=1e-8)
    assert int(row[6]) == tiny_traj.snapshots[0].metrics.n_peaks


def test_metrics_csv_deterministic(tmp_path, tiny_traj):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    es.write_metrics_csv(tiny_traj, a)
    es.write_metrics_csv(tiny_traj, b)
    assert a.read_bytes() == b.read_bytes()


def test_field_binary_round_trip(tmp_path, tiny_traj):
    path = tmp_path / "field.bin"
    es.write_field_binary(tiny_traj, path)
    nx = len(tiny_traj.snapshots[0].envelope)
    assert path.stat().st_size == 56 + 16 * nx * len(tiny_traj)
    x_min, dx, dz_snapshot, fields = read_field_binary(path)
    assert (x_min, dx, dz_snapshot) == (
        tiny_traj.x_min, tiny_traj.dx, tiny_traj.dz_snapshot)
    for i, s in enumerate(tiny_traj.snapshots):
        assert np.array_equal(fields[i], s.envelope)


def test_field_binary_size_example(tmp_path, tiny_traj):
    # one snapshot of 16 points: 16 header + 40 metadata + 256 payload bytes
    traj = es.Trajectory(snapshots=(es.Snapshot(
        z=0.0, envelope=np.zeros(16, dtype=complex),
        metrics=tiny_traj.snapshots[0].metrics),),
        dz_snapshot=1.0, dx=0.5, x_min=0.0)
    path = tmp_path / "one.bin"
    es.write_field_binary(traj, path)
    assert path.stat().st_size == 312


def test_field_binary_rejects_corruption(tmp_path, tiny_traj):
    path = tmp_path / "field.bin"
    es.write_field_binary(tiny_traj, path)
    blob = path.read_bytes()

    bad_magic = tmp_path / "magic.bin"
    bad_magic.write_bytes(b"NOTMAGIC" + blob[8:])
    with pytest.raises(ConfigError, match="bad magic"):
        read_field_binary(bad_magic)

    bad_version = tmp_path / "version.bin"
    bad_version.write_bytes(blob[:8] + b"\x09\x00\x00\x00" + blob[12:])
    with pytest.raises(ConfigError, match="unsupported version"):
        read_field_binary(bad_version)

    truncated = tmp_path / "short.bin"
    truncated.write_bytes(blob[:-8])
    with pytest.raises(ConfigError, match="truncated"):
        read_field_binary(truncated)

    with pytest.raises(OutputError):
        read_field_binary(tmp_path / "absent.bin")


def test_chi_csv(tmp_path, tiny_scenario):
    path = tmp_path / "chi.csv"
    es.write_chi_csv(tiny_scenario, path)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == CHI_HEADER
    assert len(lines) == 1 + tiny_scenario.grid.nx
    first = [float(v) for v in lines[1].split(",")]
    assert first[0] == pytest.approx(tiny_scenario.grid.x_min, rel=1e-8)
    assert len(first) == 5


def test_write_outputs(tmp_path, tiny_traj):
    assert es.write_outputs(tiny_traj, outputs=()) == []
    assert list(tmp_path.iterdir()) == []
    outputs = [
        es.OutputSpec("metrics", str(tmp_path / "m.csv"), "csv"),
        es.OutputSpec("snapshots", str(tmp_path / "f.bin"), "binary"),
        es.OutputSpec("chi_profile", str(tmp_path / "c.csv"), "csv"),
    ]
    written = es.write_outputs(tiny_traj, outputs=outputs,
                               sidecar_path=tmp_path / "scenario.cfg")
    assert len(written) == 4
    assert (tmp_path / "scenario.cfg").read_text().startswith(
        "# eitsoliton scenario")
    for o in outputs:
        assert (tmp_path / o.path).exists()


# ---------------------------------------------------------------------------
# command line
# ---------------------------------------------------------------------------

def _write_config(tmp_path, scenario, name="scenario.cfg"):
    path = tmp_path / name
    path.write_text(es.render_scenario(scenario))
    return str(path)


def test_cli_estimate(capsys):
    assert main(["estimate"]) == 0
    out = capsys.readouterr().out
    assert "x_FWHM" in out and "0.0591649 mm" in out
    assert "photon flux" in out


def test_cli_run_writes_outputs(tmp_path, tiny_scenario, capsys):
    scen = tiny_scenario.with_outputs([
        es.OutputSpec("metrics", str(tmp_path / "out" / "m.csv"), "csv"),
        es.OutputSpec("snapshots", str(tmp_path / "out" / "f.bin"), "binary"),
    ])
    cfg = _write_config(tmp_path, scen)
    assert main(["run", cfg]) == 0
    out = capsys.readouterr().out
    assert (tmp_path / "out" / "m.csv").exists()
    assert (tmp_path / "out" / "f.bin").exists()
    assert (tmp_path / "out" / "scenario.cfg").exists()
    assert "final z" in out


def test_cli_run_default_outputs(tmp_path, tiny_scenario, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    cfg = _write_config(tmp_path, tiny_scenario)
    assert main(["run", cfg, "--out", "results"]) == 0
    assert (tmp_path / "results" / "metrics.csv").exists()
    assert (tmp_path / "results" / "field.bin").exists()
    assert (tmp_path / "results" / "scenario.cfg").exists()


def test_cli_oracle(tmp_path, tiny_scenario, monkeypatch):
    monkeypatch.chdir(tmp_path)
    cfg = _write_config(tmp_path, tiny_scenario)
    assert main(["oracle", cfg, "--out", "oracle_out"]) == 0
    assert (tmp_path / "oracle_out" / "field.bin").exists()


def test_cli_validate(tmp_path, tiny_scenario, capsys):
    good = _write_config(tmp_path, tiny_scenario, "good.cfg")
    assert main(["validate", good]) == 0
    assert "ok" in capsys.readouterr().out

    bad_scen = uniform_cubic_scenario(m=0.5, nx=64, zeta_total=500.0,
                                      dzeta=250.0)
    bad = _write_config(tmp_path, bad_scen, "bad.cfg")
    assert main(["validate", bad]) == 1
    assert "VIOLATED" in capsys.readouterr().out


def test_cli_chi_scan(tmp_path, tiny_scenario, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    cfg = _write_config(tmp_path, tiny_scenario)
    assert main(["chi-scan", cfg, "--out", "chi.csv",
                 "--xs=-1e-4:1e-4:32"]) == 0
    lines = (tmp_path / "chi.csv").read_text().strip().splitlines()
    assert len(lines) == 33
    assert main(["chi-scan", cfg, "--xs", "oops"]) == 2


def test_cli_error_paths(tmp_path, capsys):
    assert main(["run", str(tmp_path / "absent.cfg")]) == 1
    assert "error:" in capsys.readouterr().err
    broken = tmp_path / "broken.cfg"
    broken.write_text("[plasma]\n")
    assert main(["validate", str(broken)]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["run"])
    assert exc.value.code == 2
