import csv
import io
import json
import shutil
import subprocess
from importlib import resources
import sys
from pathlib import Path

import pytest

from numprobe.cli import main

DATA = Path(__file__).parent / "data"


@pytest.fixture
def work(tmp_path):
    for name in ("fixture.jsonl", "fixture.tables.jsonl", "recast20.jsonl"):
        shutil.copy(DATA / name, tmp_path / name)
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def lines(path):
    return [json.loads(l) for l in Path(path).read_text().splitlines() if l.strip()]


def generate(capsys, work, *extra):
    out = work / "probes.jsonl"
    code, stdout, err = run(capsys, "generate", "--in", work / "fixture.jsonl", "--out", out, *extra)
    assert code == 0, err
    return out, json.loads(stdout)


def test_generate_writes_outputs_with_header(capsys, work):
    out, summary = generate(capsys, work, "--seed", "3")
    recs = lines(out)
    head = recs[0]["header"]
    assert head["seed"] == 3 and head["config"]["master_seed"] == 3 and head["version"]
    assert summary["probes"] == len(recs) - 1 and summary["generator_errors"] == 0
    assert (work / "probes.tables.jsonl").exists()
    stats = list(csv.reader(io.StringIO((work / "probes.stats.csv").read_text())))
    assert stats[0] == ["type", "count"]
    assert dict(stats[1:])["Total"] == str(summary["probes"])
    assert "header" in lines(work / "probes.skips.jsonl")[0]


def test_generate_is_byte_deterministic(capsys, work):
    out, _ = generate(capsys, work, "--seed", "9")
    first = out.read_bytes()
    out, _ = generate(capsys, work, "--seed", "9")
    assert out.read_bytes() == first
    out, _ = generate(capsys, work, "--seed", "10")
    assert out.read_bytes() != first


def test_generate_type_and_flip_filters(capsys, work):
    out, _ = generate(capsys, work, "--types", "numeration,negative", "--flip", "only")
    probes = lines(out)[1:]
    assert probes and {p["type"] for p in probes} == {"Numeration", "Negative"}
    assert all(p["flip"] for p in probes)


def test_config_file_and_overrides(capsys, work):
    (work / "cfg.txt").write_text("# run settings\nmaster_seed = 5\nenabled_types = scale\n")
    out, _ = generate(capsys, work, "--config", work / "cfg.txt", "--seed", "6")
    recs = lines(out)
    assert recs[0]["header"]["seed"] == 6
    assert {p["type"] for p in recs[1:]} == {"Scale"}


def test_bad_config_key(capsys, work):
    code, _, err = run(capsys, "generate", "--in", work / "fixture.jsonl", "--out", work / "p.jsonl",
                       "--set", "colour=blue")
    assert code == 2 and json.loads(err)["error"] == "ConfigError"


def test_validate_clean_and_corrupted(capsys, work):
    out, _ = generate(capsys, work)
    code, stdout, _ = run(capsys, "validate", "--in", out, "--dataset", work / "fixture.jsonl")
    assert code == 0 and json.loads(stdout)["violations"] == 0

    recs = lines(out)
    victim = next(i for i, r in enumerate(recs) if r.get("type") == "Negative" and r["flip"])
    recs[victim]["expected_label"] = "Entail"
    bad = work / "bad.jsonl"
    bad.write_text("".join(json.dumps(r) + "\n" for r in recs))
    shutil.copy(work / "probes.tables.jsonl", work / "bad.tables.jsonl")
    code, stdout, err = run(capsys, "validate", "--in", bad, "--dataset", work / "fixture.jsonl",
                            "--out", work / "v.jsonl")
    assert code == 1 and json.loads(stdout)["violations"] == 1
    (v,) = lines(work / "v.jsonl")[1:]
    assert v["probe_id"] == recs[victim]["probe_id"] and v["check"] == "label-algebra"


def test_validate_unknown_base(capsys, work):
    out, _ = generate(capsys, work, "--types", "negative")
    recs = lines(out)
    recs[1]["base_id"] = "nobody"
    out.write_text("".join(json.dumps(r) + "\n" for r in recs))
    code, _, err = run(capsys, "validate", "--in", out, "--dataset", work / "fixture.jsonl")
    assert code == 1 and "dangling-ref" in err


def test_recast(capsys, work):
    code, stdout, _ = run(capsys, "recast", "--in", work / "recast20.jsonl", "--out", work / "r.jsonl",
                          "--tables", work / "fixture.tables.jsonl")
    summary = json.loads(stdout)
    assert code == 0 and (summary["hypotheses"], summary["skipped"]) == (19, 1)
    recs = lines(work / "r.jsonl")
    assert "header" in recs[0] and all(r["label"] == "entail" for r in recs[1:])
    assert lines(work / "r.skipped.jsonl")[1]["id"] == "qa-18"


def test_recast_empty_file(capsys, work):
    (work / "empty.jsonl").write_text("")
    code, stdout, _ = run(capsys, "recast", "--in", work / "empty.jsonl", "--out", work / "e.jsonl")
    assert code == 0 and json.loads(stdout)["hypotheses"] == 0
    assert len(lines(work / "e.jsonl")) == 1  # header only


def test_malformed_input_reports_line(capsys, work):
    text = (work / "fixture.jsonl").read_text().splitlines()
    text[6] = text[6][:-5]
    (work / "fixture.jsonl").write_text("\n".join(text) + "\n")
    code, _, err = run(capsys, "generate", "--in", work / "fixture.jsonl", "--out", work / "p.jsonl")
    payload = json.loads(err)
    assert code == 2 and payload["error"] == "ParseError" and ":7:" in payload["message"]


def test_missing_input_file(capsys, work):
    code, _, err = run(capsys, "generate", "--in", work / "nope.jsonl", "--out", work / "p.jsonl")
    assert code == 2 and json.loads(err)["command"] == "generate"


def test_missing_required_flag(capsys):
    with pytest.raises(SystemExit) as info:
        main(["generate", "--out", "x.jsonl"])
    assert info.value.code == 2


def _write_preds(path, mapping):
    path.write_text("".join(json.dumps({"item_id": k, "label": v}) + "\n" for k, v in mapping.items()))


def test_eval_with_predictions(capsys, work):
    out, _ = generate(capsys, work, "--types", "negative")
    probes = lines(out)[1:]
    _write_preds(work / "base.jsonl", {p["base_id"]: "entail" for p in probes})
    _write_preds(work / "probe.jsonl", {p["probe_id"]: p["expected_label"] for p in probes})
    code, stdout, _ = run(capsys, "eval", "--in", out, "--base-preds", work / "base.jsonl",
                          "--probe-preds", work / "probe.jsonl", "--report", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(stdout)))
    assert {r["reasoning_type"] for r in rows} == {"Negative"}
    assert all(r["acc_probe"] == "100.00" for r in rows)


def test_eval_missing_baseline(capsys, work):
    out, _ = generate(capsys, work, "--types", "negative")
    _write_preds(work / "base.jsonl", {"someone-else": "entail"})
    _write_preds(work / "probe.jsonl", {})
    code, _, err = run(capsys, "eval", "--in", out, "--base-preds", work / "base.jsonl",
                       "--probe-preds", work / "probe.jsonl")
    assert code == 2 and json.loads(err)["error"] == "MissingBaseline"


def test_eval_from_accuracies(capsys, work):
    (work / "acc.csv").write_text("type,flip,acc_base,acc_probe\nNegative,0,20.37,28.98\nRange,0,0,10\n")
    code, stdout, _ = run(capsys, "eval", "--accuracies", work / "acc.csv", "--report", "csv")
    assert code == 0
    rows = {r["reasoning_type"]: r for r in csv.DictReader(io.StringIO(stdout))}
    assert rows["Negative"]["shift_pct"] == "+42.27" and rows["Range"]["shift_pct"] == "N/A"


def test_stats(capsys, work):
    out, summary = generate(capsys, work)
    code, stdout, _ = run(capsys, "stats", "--in", out)
    rows = dict(list(csv.reader(io.StringIO(stdout)))[1:])
    assert code == 0 and rows["Total"] == str(summary["probes"])
    counts = [int(v) for k, v in rows.items() if k not in ("Total", "Flipped probes")]
    assert counts == sorted(counts) and sum(counts) == summary["probes"]


def test_catalog_override(capsys, work):
    from numprobe.numparse import bundled_catalog, default_catalog
    src = json.loads(resources.files("numprobe.resources").joinpath("catalog.json").read_text())
    (work / "cat.json").write_text(json.dumps(src))
    out, _ = generate(capsys, work, "--types", "scale")
    code, _, err = run(capsys, "--catalog", work / "cat.json", "generate", "--in", work / "fixture.jsonl",
                       "--out", work / "p2.jsonl", "--types", "scale")
    assert code == 0, err
    assert lines(out)[1:] == lines(work / "p2.jsonl")[1:]
    assert default_catalog() is bundled_catalog()
    code, _, err = run(capsys, "--catalog", work / "missing.json", "stats", "--in", out)
    assert code == 2


def test_console_script_entry(work):
    proc = subprocess.run([sys.executable, "-m", "numprobe.cli", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("numprobe ")
