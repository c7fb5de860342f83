import json
import os
import subprocess
import sys

import pytest

import posetshuffle as ps


def run_cli(args, cwd, check_exit=None):
    env = dict(os.environ)
    env["POSETSHUFFLE_BACKEND"] = "numpy"
    proc = subprocess.run(
        [sys.executable, "-m", "posetshuffle", *args],
        cwd=cwd,
        env=env,
        capture_output=True,
        text=True,
        timeout=600,
    )
    if check_exit is not None:
        assert proc.returncode == check_exit, proc.stdout + proc.stderr
    return proc


def test_version(tmp_path):
    proc = run_cli(["--version"], tmp_path, check_exit=0)
    assert proc.stdout.strip() == f"posetshuffle {ps.__version__}"


def test_spectrum_antichain4(tmp_path):
    proc = run_cli(
        ["spectrum", "--family", "antichain:4", "--out", "report.json"],
        tmp_path,
        check_exit=0,
    )
    assert "lambda2=0.625" in proc.stdout
    assert "tight=True" in proc.stdout
    assert "-> bound holds" in proc.stdout
    doc = json.loads((tmp_path / "report.json").read_text())
    assert doc["tool"] == "posetshuffle"
    assert doc["n"] == 4
    assert doc["num_extensions"] == 24
    assert doc["bound"] == [5, 8]
    assert doc["satisfies_bound"] is True and doc["is_tight"] is True


def test_spectrum_trivial_chain(tmp_path):
    proc = run_cli(["spectrum", "--family", "chain:5"], tmp_path, check_exit=0)
    assert "single linear extension" in proc.stdout


def test_spectrum_nshape_family(tmp_path):
    proc = run_cli(
        ["spectrum", "--family", "nshape:4,2", "--out", "r.json"],
        tmp_path,
        check_exit=0,
    )
    doc = json.loads((tmp_path / "r.json").read_text())
    assert doc["satisfies_bound"] is True
    assert doc["is_tight"] is False
    assert doc["connected"] is True
    assert doc["num_extensions"] == 5


def test_spectrum_inline_and_file_poset(tmp_path):
    inline = json.dumps({"n": 2, "covers": []})
    proc = run_cli(
        ["spectrum", "--poset", inline, "--out", "a.json"], tmp_path, check_exit=0
    )
    assert "lambda2=0" in proc.stdout
    path = tmp_path / "poset.json"
    path.write_text(inline)
    run_cli(["spectrum", "--file", str(path), "--out", "b.json"], tmp_path, check_exit=0)
    a = json.loads((tmp_path / "a.json").read_text())
    b = json.loads((tmp_path / "b.json").read_text())
    assert a["eigenvalues"] == b["eigenvalues"]


def test_input_errors(tmp_path):
    run_cli(["spectrum", "--poset", '{"n": 3'], tmp_path, check_exit=1)
    run_cli(["spectrum", "--poset", "[1, 2]"], tmp_path, check_exit=1)
    run_cli(
        ["spectrum", "--poset", "{}", "--family", "chain:2"], tmp_path, check_exit=1
    )
    run_cli(["spectrum"], tmp_path, check_exit=1)
    run_cli(["spectrum", "--family", "torus:3"], tmp_path, check_exit=1)
    run_cli(["spectrum", "--family", "antichain:x"], tmp_path, check_exit=1)
    run_cli(["spectrum", "--family", "nshape:4"], tmp_path, check_exit=1)
    run_cli(["spectrum", "--family", "antichain:0"], tmp_path, check_exit=1)
    run_cli(
        ["spectrum", "--family", "antichain:2", "--tol", "0"], tmp_path, check_exit=1
    )
    run_cli(
        ["mix", "--family", "antichain:2", "--epsilon", "1.5"], tmp_path, check_exit=1
    )
    run_cli(
        ["spectrum", "--file", str(tmp_path / "missing.json")], tmp_path, check_exit=1
    )


def test_nshape_certificate(tmp_path):
    proc = run_cli(
        ["nshape", "--n", "4", "--k", "2", "--out", "cert.json"],
        tmp_path,
        check_exit=0,
    )
    assert "n=4 k=2 tau=1/128 verified=True" in proc.stdout
    doc = json.loads((tmp_path / "cert.json").read_text())
    assert doc["tau"] == [1, 128]
    assert doc["verified"] is True
    assert doc["c"] == [-8, 4, 2, 2, 0, 0]
    run_cli(["nshape", "--n", "4"], tmp_path, check_exit=1)


def test_survey_cli(tmp_path):
    proc = run_cli(
        ["survey", "--nmax", "4", "--out", "s.jsonl"], tmp_path, check_exit=0
    )
    assert "classes=23 checked=20" in proc.stdout
    assert "bound_violations=0" in proc.stdout
    lines = (tmp_path / "s.jsonl").read_text().splitlines()
    assert len(lines) == 25
    first_records = [json.loads(x) for x in lines if json.loads(x)["kind"] == "record"]
    again = run_cli(
        ["survey", "--nmax", "4", "--out", "s.jsonl"], tmp_path, check_exit=0
    )
    assert "classes=23" in again.stdout
    lines2 = (tmp_path / "s.jsonl").read_text().splitlines()
    second_records = [
        json.loads(x) for x in lines2 if json.loads(x)["kind"] == "record"
    ]
    assert second_records == first_records


def test_survey_csv_output(tmp_path):
    run_cli(
        ["survey", "--nmax", "3", "--out", "t.jsonl", "--format", "csv"],
        tmp_path,
        check_exit=0,
    )
    csv_lines = (tmp_path / "t.csv").read_text().splitlines()
    assert csv_lines[0].startswith("# posetshuffle ")
    assert csv_lines[1].startswith("covers,n,num_extensions,lambda2")
    assert len(csv_lines) == 9


def test_survey_long_running_guard(tmp_path):
    proc = run_cli(["survey", "--nmax", "7"], tmp_path, check_exit=3)
    assert "long-running" in proc.stdout


def test_scan_cli(tmp_path):
    proc = run_cli(
        ["scan", "--nmax", "3", "--out", "scan.json"], tmp_path, check_exit=0
    )
    assert "n=2: 0 reversal pairs" in proc.stdout
    assert "n=3: 0 reversal pairs" in proc.stdout
    doc = json.loads((tmp_path / "scan.json").read_text())
    assert doc["n_max"] == 3
    assert [s["n"] for s in doc["scans"]] == [2, 3]
    run_cli(["scan", "--nmax", "6"], tmp_path, check_exit=3)


def test_mix_cli(tmp_path):
    proc = run_cli(
        ["mix", "--family", "antichain:3", "--out", "mix.json"],
        tmp_path,
        check_exit=0,
    )
    assert "t_mix(shuffle)=" in proc.stdout
    assert "t_mix(lazy adjacent)=" in proc.stdout
    doc = json.loads((tmp_path / "mix.json").read_text())
    assert doc["per_step_work_ratio"] == 3
    assert doc["shuffle"]["t_mix"] >= 1
    assert doc["lazy_adjacent"]["t_mix"] >= 1
    assert doc["epsilon"] == 0.25
    restored = ps.poset_from_json_dict(doc["poset"])
    assert restored == ps.antichain(3)


def test_mix_trivial_poset(tmp_path):
    proc = run_cli(
        ["mix", "--family", "chain:4", "--out", "mix.json"], tmp_path, check_exit=0
    )
    doc = json.loads((tmp_path / "mix.json").read_text())
    assert doc["note"] == "single extension, already mixed"
    assert doc["shuffle"]["t_mix"] == 0


def test_mix_scaling_csv(tmp_path):
    proc = run_cli(
        [
            "mix",
            "--nmax",
            "3",
            "--count",
            "2",
            "--seed",
            "5",
            "--format",
            "csv",
        ],
        tmp_path,
        check_exit=0,
    )
    assert "residual n log n=" in proc.stdout
    detail = (tmp_path / "scaling.csv").read_text().splitlines()
    assert detail[0].startswith("# posetshuffle ") and "seed=5" in detail[0]
    assert detail[1] == "n,poset_index,canonical_covers,num_extensions,t_mix"
    assert len(detail) == 6
    summary = (tmp_path / "scaling-summary.csv").read_text().splitlines()
    assert summary[1] == "n,mean_tmix,fit_nlogn,fit_n2logn"
    assert len(summary) == 4


def test_sample_cli_json(tmp_path):
    proc = run_cli(
        [
            "sample",
            "--family",
            "sumchains:2,2",
            "--count",
            "40",
            "--seed",
            "3",
            "--out",
            "sample.json",
        ],
        tmp_path,
        check_exit=0,
    )
    assert "40 samples, burn-in 15, chi-square p=" in proc.stdout
    doc = json.loads((tmp_path / "sample.json").read_text())
    assert doc["seed"] == 3
    assert sum(doc["frequencies"].values()) == 40
    pair = ps.poset_from_covers(4, [(1, 2), (3, 4)])
    for word_text in doc["frequencies"]:
        w = tuple(int(x) for x in word_text.split())
        assert ps.is_linear_extension(pair, w)


def test_sample_cli_csv_and_auto_seed(tmp_path):
    proc = run_cli(
        [
            "sample",
            "--family",
            "antichain:3",
            "--count",
            "10",
            "--format",
            "csv",
            "--out",
            "w.csv",
        ],
        tmp_path,
        check_exit=0,
    )
    assert "seed: " in proc.stdout
    lines = (tmp_path / "w.csv").read_text().splitlines()
    assert lines[0].startswith("# posetshuffle ") and "seed=" in lines[0]
    assert lines[1] == "word"
    assert len(lines) == 12
    for row in lines[2:]:
        w = tuple(int(x) for x in row.split())
        assert sorted(w) == [1, 2, 3]


def test_diameter_cli(tmp_path):
    proc = run_cli(
        ["diameter", "--family", "antichain:2", "--out", "d.json"],
        tmp_path,
        check_exit=0,
    )
    assert "diameter=1 (at most 2)" in proc.stdout
    doc = json.loads((tmp_path / "d.json").read_text())
    assert doc["diameter"] == 1
    assert doc["num_extensions"] == 2
    assert doc["upper_bound"] == 2
