import json

import numpy as np
import pytest

from rieszfd import (
    AlphaNearOne,
    ConfigInvalid,
    ParseError,
    SkewnessTooLarge,
    UnknownKey,
    build_grid,
    sample_initial,
)
from rieszfd.cli import main, read_profile_csv, write_snapshot_csv
from rieszfd.config import (
    build_manifest,
    config_to_document,
    output_directory,
    parse_config,
)
from rieszfd.grid import FieldState, InitialCondition
from rieszfd.simulate import run


def fig2_document(**overrides):
    doc = {
        "alpha": 2.0,
        "theta": 0.0,
        "k_alpha": 1.0,
        "domain": [-10.0, 10.0],
        "n_cells": 1000,
        "sigma": 1.0,
        "dt": "auto",
        "dt_safety": 0.9,
        "t_end": 1.0,
        "initial": {"kind": "delta"},
        "bc_left": {"kind": "constant", "value": 0.0},
        "bc_right": {"kind": "constant", "value": 0.0},
        "snapshots": [1.0],
        "output_dir": "out",
    }
    doc.update(overrides)
    return doc


def tiny_document(**overrides):
    doc = fig2_document(n_cells=40, t_end=0.01, snapshots=[0.01], domain=[-2.0, 2.0])
    doc.update(overrides)
    return doc


class TestParseConfig:
    def test_reference_setup_parses(self):
        cfg = parse_config(json.dumps(fig2_document()))
        assert cfg.grid.n_cells == 1000
        assert cfg.grid.h == pytest.approx(0.02)
        assert cfg.scheme.params.alpha == 2.0
        assert cfg.dt_policy.kind == "auto" and cfg.dt_policy.value == 0.9
        assert cfg.snapshot_times == (1.0,)

    def test_defaults(self):
        doc = fig2_document()
        for key in ("sigma", "dt", "dt_safety", "bc_left", "bc_right", "snapshots", "output_dir"):
            del doc[key]
        cfg = parse_config(doc)
        assert cfg.scheme.sigma == 1.0
        assert cfg.dt_policy.kind == "auto" and cfg.dt_policy.value == 0.9
        assert cfg.scheme.bc_left.kind == "constant" and cfg.scheme.bc_left.value == 0.0
        assert cfg.snapshot_times == ()
        assert output_directory(doc) == "out"

    def test_invalid_json(self):
        with pytest.raises(ParseError):
            parse_config("{not json")
        with pytest.raises(ParseError):
            parse_config("[1, 2]")

    def test_unknown_keys_rejected(self):
        with pytest.raises(UnknownKey, match="alpha_typo"):
            parse_config(fig2_document(alpha_typo=1.0))
        with pytest.raises(UnknownKey, match="initial.width"):
            parse_config(fig2_document(initial={"kind": "delta", "width": 2}))
        with pytest.raises(UnknownKey, match="bc_left.ramp"):
            parse_config(fig2_document(bc_left={"kind": "constant", "value": 0, "ramp": 1}))

    def test_missing_required(self):
        doc = fig2_document()
        del doc["alpha"]
        with pytest.raises(ConfigInvalid, match="alpha"):
            parse_config(doc)

    def test_parameter_validation_propagates(self):
        with pytest.raises(AlphaNearOne):
            parse_config(fig2_document(alpha=1.0))
        with pytest.raises(SkewnessTooLarge):
            parse_config(fig2_document(alpha=1.5, theta=0.9))

    def test_fixed_dt(self):
        doc = fig2_document(dt=1e-4)
        del doc["dt_safety"]
        cfg = parse_config(doc)
        assert cfg.dt_policy.kind == "fixed" and cfg.dt_policy.value == 1e-4

    def test_dt_safety_incompatible_with_fixed_dt(self):
        with pytest.raises(ConfigInvalid, match="dt_safety"):
            parse_config(fig2_document(dt=1e-4))

    def test_box_and_table_forms(self):
        doc = fig2_document(
            initial={"kind": "box", "value": 10.0, "from": 0.4, "to": 0.6},
            domain=[0.0, 1.0],
            bc_left={"kind": "table", "points": [[0.0, 0.0], [1.0, 10.0]]},
        )
        cfg = parse_config(doc)
        assert cfg.initial.kind == "box" and cfg.initial.box_value == 10.0
        assert cfg.scheme.bc_left.kind == "time_table"
        assert cfg.scheme.bc_left.at(0.5) == pytest.approx(5.0)

    def test_csv_initial_resolves_relative_to_base_dir(self, tmp_path):
        grid = build_grid(0.0, 1.0, 4)
        profile = FieldState(grid=grid, values=np.array([0.0, 1.0, 2.0, 1.0, 0.0]))
        write_snapshot_csv(profile, tmp_path / "ic.csv")
        doc = fig2_document(
            domain=[0.0, 1.0], n_cells=4, initial={"kind": "csv", "path": "ic.csv"}
        )
        cfg = parse_config(doc, base_dir=tmp_path)
        state = sample_initial(cfg.initial, grid)
        assert np.array_equal(state.values, profile.values)

    def test_snapshots_outside_horizon(self):
        with pytest.raises(ConfigInvalid):
            parse_config(fig2_document(snapshots=[2.0]))

    def test_bad_types(self):
        with pytest.raises(ConfigInvalid):
            parse_config(fig2_document(alpha="two"))
        with pytest.raises(ConfigInvalid):
            parse_config(fig2_document(domain=[0.0]))
        with pytest.raises(ConfigInvalid):
            parse_config(fig2_document(n_cells=10.5))
        with pytest.raises(ConfigInvalid):
            parse_config(fig2_document(dt=True))


class TestDocumentRoundTrip:
    @pytest.mark.parametrize("doc_factory", [
        lambda: fig2_document(),
        lambda: fig2_document(dt=1e-3, dt_safety=None),
        lambda: fig2_document(
            domain=[0.0, 1.0],
            initial={"kind": "box", "value": 10.0, "from": 0.4, "to": 0.6},
            bc_left={"kind": "table", "points": [[0.0, 0.0], [1.0, 10.0]]},
            sigma=0.5,
        ),
        lambda: fig2_document(
            initial={"kind": "tabulated", "points": [[-10.0, 0.0], [0.0, 1.0], [10.0, 0.0]]},
        ),
    ])
    def test_round_trip_identity(self, doc_factory):
        doc = doc_factory()
        if doc.get("dt") != "auto":
            doc.pop("dt_safety", None)
        cfg = parse_config(doc)
        emitted = config_to_document(cfg, output_directory(doc))
        assert parse_config(emitted) == cfg
        # JSON round trip preserves all values bit-exactly
        assert parse_config(json.loads(json.dumps(emitted))) == cfg

    def test_manifest_embeds_resolved_config(self):
        cfg = parse_config(tiny_document())
        series = run(cfg)
        manifest = build_manifest(series, duration_seconds=0.5, output_dir="out")
        doc = manifest.to_document()
        assert parse_config(doc["config"]) == cfg
        assert doc["resolved"]["dt"] == series.dt
        assert doc["resolved"]["n_steps"] == series.n_steps
        assert doc["resolved"]["weight_window"] == [-39, 39]
        assert doc["config_hash"] == series.config_hash


class TestSnapshotCsv:
    def test_exact_bytes_for_zero_field(self, tmp_path):
        grid = build_grid(0.0, 1.0, 2)
        state = FieldState(grid=grid, values=np.zeros(3))
        path = tmp_path / "snap.csv"
        write_snapshot_csv(state, path)
        assert path.read_text() == "x,C\n0,0\n0.5,0\n1,0\n"

    def test_round_trip_bit_exact(self, tmp_path, rng):
        grid = build_grid(-3.0, 7.0, 17)
        values = rng.standard_normal(18) * 1e3
        state = FieldState(grid=grid, values=values)
        path = tmp_path / "snap.csv"
        write_snapshot_csv(state, path)
        xs, back = read_profile_csv(path)
        assert np.array_equal(np.array(back), values)
        assert np.array_equal(np.array(xs), grid.nodes())

    def test_delta_row_placement(self, tmp_path):
        grid = build_grid(-10.0, 10.0, 1000)
        state = sample_initial(InitialCondition.delta(), grid)
        path = tmp_path / "snap.csv"
        write_snapshot_csv(state, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "x,C"
        assert lines[501] == "0,50"  # node 500 carries 1/h
        assert len(lines) == 1002

    def test_header_validated(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b\n1,2\n")
        with pytest.raises(Exception):
            read_profile_csv(bad)


class TestCli:
    def test_weights_matches_reference_column(self, capsys):
        assert main(["weights", "--alpha", "1.5", "--theta", "0", "--kmax", "5"]) == 0
        out = capsys.readouterr().out.strip().splitlines()
        assert out[0] == "k,w"
        rows = {int(line.split(",")[0]): float(line.split(",")[1]) for line in out[1:]}
        assert set(rows) == set(range(-5, 6))
        for k, ref in {0: -1.498970, 1: 0.574964, 2: 0.125442, 5: 0.005125}.items():
            assert rows[k] == pytest.approx(ref, abs=1e-6)
            assert rows[-k] == pytest.approx(ref, abs=1e-6)

    def test_stability_value(self, capsys):
        assert main(["stability", "--alpha", "2", "--theta", "0", "--k-alpha", "1",
                     "--h", "0.1"]) == 0
        # h**2 / (2K); output keeps full precision so compare as a number
        printed = float(capsys.readouterr().out.strip())
        assert printed == pytest.approx(0.005, abs=1e-17)

    def test_validation_errors_exit_2(self, capsys):
        assert main(["weights", "--alpha", "3.0", "--theta", "0", "--kmax", "2"]) == 2
        assert "alpha" in capsys.readouterr().err

    def test_unknown_subcommand_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2
        assert "usage" in capsys.readouterr().err

    def test_simulate_writes_snapshots_and_manifest(self, tmp_path, capsys):
        config_path = tmp_path / "run.json"
        config_path.write_text(json.dumps(tiny_document(output_dir=str(tmp_path / "results"))))
        assert main(["simulate", "--config", str(config_path), "--plot-script"]) == 0
        out_dir = tmp_path / "results"
        assert (out_dir / "snapshot_0.000000.csv").exists()
        assert (out_dir / "snapshot_0.010000.csv").exists()
        assert (out_dir / "plot_snapshots.gp").exists()
        manifest = json.loads((out_dir / "manifest.json").read_text())
        assert manifest["tool"]["name"] == "rieszfd"
        assert manifest["resolved"]["n_steps"] >= 1
        reparsed = parse_config(manifest["config"])
        assert reparsed == parse_config(config_path.read_text())

    def test_simulate_out_flag_overrides_config(self, tmp_path):
        config_path = tmp_path / "run.json"
        config_path.write_text(json.dumps(tiny_document(output_dir="ignored")))
        target = tmp_path / "explicit"
        assert main(["simulate", "--config", str(config_path), "--out", str(target)]) == 0
        assert (target / "manifest.json").exists()

    def test_simulate_invalid_config_exits_2(self, tmp_path, capsys):
        config_path = tmp_path / "run.json"
        config_path.write_text(json.dumps(tiny_document(alpha=1.0)))
        assert main(["simulate", "--config", str(config_path)]) == 2
        assert "alpha" in capsys.readouterr().err

    def test_verify_table_suite(self, capsys):
        assert main(["verify", "--suite", "table1"]) == 0
        out = capsys.readouterr().out
        assert "[PASS]" in out and "[FAIL]" not in out

    def test_converge_emits_csv(self, tmp_path, capsys):
        config_path = tmp_path / "run.json"
        config_path.write_text(json.dumps(tiny_document(alpha=2.0, n_cells=50, t_end=0.05)))
        assert main(["converge", "--config", str(config_path), "--levels", "1"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "h,dt,error"
        assert len(lines) == 3
        first = [float(v) for v in lines[1].split(",")]
        second = [float(v) for v in lines[2].split(",")]
        assert second[0] == pytest.approx(first[0] / 2.0)
