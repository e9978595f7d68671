# SPDX-License-Identifier: Apache-2.0
import json
import subprocess

import jsonschema
import pytest


def run(cli, *args):
    return subprocess.run([cli, *args], capture_output=True, text=True)


def write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


def quick(tmp_path, **extra):
    doc = {
        "schema_version": 1,
        "name": "quick",
        "detector": "both",
        "sim": {"trials": 40, "seed": 11},
        "sweep": {"var": "snr_db", "values": [0, 10]},
        "output": {"dir": str(tmp_path / "out")},
    }
    doc.update(extra)
    return doc


def test_presets_match_schema(source_dir):
    schema = json.loads((source_dir / "schema" / "run_config.schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    presets = sorted((source_dir / "presets").glob("fig*.json"))
    assert [p.stem for p in presets] == [f"fig{i}" for i in range(2, 9)]
    for p in presets:
        jsonschema.validate(json.loads(p.read_text()), schema)


def test_validate_exit_codes(cli, source_dir, tmp_path):
    ok = run(cli, "validate", "-c", str(source_dir / "presets" / "fig2.json"))
    assert ok.returncode == 0, ok.stderr
    assert ok.stdout.count("rule ") == 15
    bad = write(tmp_path / "bad.json", {"schema_version": 1, "geometry": {"irs1": {"spacing": 4e-3}}})
    assert run(cli, "validate", "-c", bad).returncode == 1
    broken = tmp_path / "broken.json"
    broken.write_text('{"schema_version": 1,\n "sim": {"trials": }}')
    r = run(cli, "validate", "-c", str(broken))
    assert r.returncode == 1
    assert "line 2" in r.stderr


def test_sweep_outputs_and_rerun(cli, tmp_path):
    cfg = write(tmp_path / "quick.json", quick(tmp_path))
    first = run(cli, "sweep", "-c", cfg, "--plot")
    assert first.returncode == 0, first.stderr
    out = tmp_path / "out"
    ml = (out / "quick_ml.csv").read_text()
    assert ml.splitlines()[0] == "sweep_var,value,detector,scheme,ber,stderr,trials"
    assert len(ml.splitlines()) == 3
    assert (out / "quick_cs.csv").exists()
    assert (out / "quick.svg").read_text().lstrip().startswith("<")
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["seed"] == 11

    again = run(cli, "sweep", "-c", cfg, "-o", str(tmp_path / "again"), "--workers", "3")
    assert again.returncode == 0, again.stderr
    assert (tmp_path / "again" / "quick_ml.csv").read_text() == ml
    assert (tmp_path / "again" / "quick_cs.csv").read_text() == (out / "quick_cs.csv").read_text()


def test_bound_command(cli, tmp_path):
    doc = quick(
        tmp_path,
        geometry={"irs2": {"n_h": 2, "n_w": 2, "spacing": 2.4}},
        modulation={"order": 4},
    )
    r = run(cli, "bound", "-c", write(tmp_path / "b.json", doc))
    assert r.returncode == 0, r.stderr
    lines = (tmp_path / "out" / "quick_bound.csv").read_text().splitlines()
    assert len(lines) == 3
    assert lines[0].split(",")[:2] == ["sweep_var", "value"]


def test_empty_grid_rejected(cli, tmp_path):
    doc = quick(tmp_path)
    doc["sweep"]["values"] = []
    assert run(cli, "sweep", "-c", write(tmp_path / "e.json", doc)).returncode == 1


def test_unwritable_output_is_runtime_error(cli, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    doc = quick(tmp_path, output={"dir": str(blocker / "sub")})
    assert run(cli, "sweep", "-c", write(tmp_path / "u.json", doc)).returncode == 2


@pytest.mark.parametrize("args", [[], ["sweep"], ["frobnicate"]])
def test_usage_errors(cli, args):
    assert run(cli, *args).returncode != 0
