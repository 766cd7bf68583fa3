"""CLI contract: subcommands, exit codes, determinism, output schemas."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from solgrow.catalog import catalog
from solgrow.cli import main
from solgrow.specio import dump_genset


def _schema(name: str) -> dict:
    ref = resources.files("solgrow") / "schemas" / f"{name}.schema.json"
    return json.loads(ref.read_text())


@pytest.fixture()
def spec_dir(tmp_path: Path) -> Path:
    for name, fname in [
        ("s4", "s4.json"),
        ("q8", "q8.json"),
        ("z2", "z2.json"),
        ("f2^3:c7", "f8c7.json"),
        ("sanov", "sanov.json"),
    ]:
        dump_genset(catalog(name), str(tmp_path / fname))
    return tmp_path


def _run(args: list[str]) -> int:
    return main(args)


def test_analyze_s4(spec_dir, capsys):
    rc = _run(["analyze", str(spec_dir / "s4.json")])
    assert rc == 0
    rec = json.loads(capsys.readouterr().out)
    jsonschema.validate(rec, _schema("analyze"))
    assert rec["order"] == 24
    assert rec["derived_length"] == 3
    assert rec["mu"] == {"a": 3, "b": 0, "value": 3.0}
    assert rec["sc_chief_rank"] == 2
    assert rec["supersoluble"] is False


def test_mu_subcommand(spec_dir, capsys):
    rc = _run(["mu", str(spec_dir / "q8.json"), "--method", "bruteforce"])
    assert rc == 0
    rec = json.loads(capsys.readouterr().out)
    jsonschema.validate(rec, _schema("mu"))
    assert (rec["a"], rec["b"]) == (0, 1)
    assert rec["series"][0] == {"order": 8, "kind": "class2"}


def test_bounds_subcommand(capsys):
    rc = _run(["bounds", "--n", "2"])
    assert rc == 0
    rec = json.loads(capsys.readouterr().out)
    jsonschema.validate(rec, _schema("bounds"))
    assert rec["sigma"] == 4
    assert rec["rho"] == pytest.approx(7.577324, abs=1e-5)
    assert rec["mu_irreducible"] == pytest.approx(1.5 + 2.482892142, abs=1e-6)


def test_growth_radius_zero(spec_dir, capsys):
    rc = _run(["growth", str(spec_dir / "z2.json"), "--radius", "0"])
    assert rc == 0
    assert capsys.readouterr().out == "radius,gamma\n0,1\n"


def test_growth_with_fit(spec_dir, tmp_path, capsys):
    csv_path = tmp_path / "z2.csv"
    out_path = tmp_path / "z2.fit.json"
    rc = _run(
        [
            "growth",
            str(spec_dir / "z2.json"),
            "--radius",
            "12",
            "--csv",
            str(csv_path),
            "--fit",
            "-o",
            str(out_path),
        ]
    )
    assert rc == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "radius,gamma"
    assert lines[1] == "0,1" and lines[5] == "4,41"
    rec = json.loads(out_path.read_text())
    jsonschema.validate(rec, _schema("growth"))
    assert rec["fit"]["kind"] == "polynomial"


def test_growth_cap_exit_code(spec_dir, tmp_path):
    rc = _run(
        [
            "growth",
            str(spec_dir / "sanov.json"),
            "--radius",
            "12",
            "--max-elements",
            "100",
            "--csv",
            str(tmp_path / "partial.csv"),
            "-o",
            str(tmp_path / "partial.json"),
        ]
    )
    assert rc == 2
    rec = json.loads((tmp_path / "partial.json").read_text())
    assert rec["truncated"] is True


def test_analyze_cap_exit_code(spec_dir, capsys):
    rc = _run(["analyze", str(spec_dir / "s4.json"), "--max-elements", "5"])
    assert rc == 2


def test_certify_subcommand(spec_dir, capsys):
    rc = _run(["certify", str(spec_dir / "f8c7.json"), "--emit-transcript"])
    assert rc == 0
    rec = json.loads(capsys.readouterr().out)
    jsonschema.validate(rec, _schema("certificate"))
    assert rec["rank"] == 3 and rec["bound"] == 8
    assert rec["checks"]["datapoint"] is True
    assert len(rec["transcript"]["products"]) == 8


def test_certify_with_normal_subgroup(spec_dir, tmp_path, capsys):
    from solgrow.elements import GenSet, MatFp

    center_gen = GenSet([MatFp(2, 3, [[2, 0], [0, 2]])])
    npath = tmp_path / "center.json"
    dump_genset(center_gen, str(npath))
    dump_genset(catalog("sl2(3)"), str(tmp_path / "sl23.json"))
    rc = _run(["certify", str(tmp_path / "sl23.json"), "--normal", str(npath)])
    assert rc == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["normal_order"] == 2 and rec["rank"] == 2


def test_catalog_subcommand(tmp_path, capsys):
    rc = _run(["catalog", "s3wrs2", "-o", str(tmp_path / "w.json")])
    assert rc == 0
    rec = json.loads((tmp_path / "w.json").read_text())
    assert rec["variant"] == "perm" and rec["degree"] == 6
    rc2 = _run(["analyze", str(tmp_path / "w.json")])
    assert rc2 == 0


def test_analyze_treeauto_and_lamplighter_growth(tmp_path, capsys):
    dump_genset(catalog("s4tower(1)"), str(tmp_path / "w1.json"))
    rc = _run(["analyze", str(tmp_path / "w1.json")])
    assert rc == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["order"] == 24 and rec["derived_length"] == 3
    dump_genset(catalog("lamplighter"), str(tmp_path / "ll.json"))
    rc = _run(["growth", str(tmp_path / "ll.json"), "--radius", "4"])
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "radius,gamma" and lines[1] == "0,1"


def test_unknown_catalog_name_exit(capsys):
    assert _run(["catalog", "nonsense"]) == 1


def test_invalid_spec_exit(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"variant": "perm", "degree": 2, "generators": [[1, 0]], "x": 1}')
    assert _run(["analyze", str(bad)]) == 1
    missing = tmp_path / "missing.json"
    assert _run(["analyze", str(missing)]) == 1


def test_determinism_byte_identical(spec_dir, tmp_path):
    outs = []
    for i in range(2):
        out = tmp_path / f"a{i}.json"
        assert _run(["analyze", str(spec_dir / "s4.json"), "-o", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    certs = []
    for i in range(2):
        out = tmp_path / f"c{i}.json"
        assert _run(["certify", str(spec_dir / "f8c7.json"), "-o", str(out)]) == 0
        certs.append(out.read_bytes())
    assert certs[0] == certs[1]
    csvs = []
    for i in range(2):
        out = tmp_path / f"g{i}.csv"
        rc = _run(["growth", str(spec_dir / "z2.json"), "--radius", "8", "--csv", str(out)])
        assert rc == 0
        csvs.append(out.read_bytes())
    assert csvs[0] == csvs[1]


def test_env_cap_override(spec_dir, monkeypatch):
    monkeypatch.setenv("SOLGROW_MAX_ELEMENTS", "5")
    assert _run(["analyze", str(spec_dir / "s4.json")]) == 2
    monkeypatch.setenv("SOLGROW_MAX_ELEMENTS", "bogus")
    assert _run(["analyze", str(spec_dir / "s4.json")]) == 1


def test_verify_cases_quick(tmp_path):
    out = tmp_path / "cases.json"
    rc = _run(["verify-cases", "--quick", "-o", str(out)])
    assert rc == 0
    rec = json.loads(out.read_text())
    jsonschema.validate(rec, _schema("verify_cases"))
    assert rec["pass"] is True
    modes = {c["mode"] for c in rec["cases"]}
    assert modes == {"exhaustive", "witness"}
    out2 = tmp_path / "cases2.json"
    assert _run(["verify-cases", "--quick", "-o", str(out2)]) == 0
    assert out.read_bytes() == out2.read_bytes()
