import json

from borsuk import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    assert code == 0, out
    return json.loads(out)


def test_bound_k13(capsys):
    payload = run_json(capsys, "bound", "--k", "13")
    assert payload["d"] == 1325
    assert payload["counterexample"] is True
    assert payload["prime_power"] is True
    assert payload["parts_lower_bound"] == "1562"
    assert payload["family_size"] == "247959266474052"


def test_bound_k2(capsys):
    payload = run_json(capsys, "bound", "--k", "2")
    assert payload["parts_lower_bound"] == "5"
    assert payload["counterexample"] is False


def test_bound_output_is_byte_identical(capsys):
    _, first = run_cli(capsys, "bound", "--k", "13")
    _, second = run_cli(capsys, "bound", "--k", "13")
    assert first == second


def test_clique_n4(capsys):
    payload = run_json(capsys, "clique", "--n", "4")
    assert payload["max"] == 2
    assert payload["witness"] == [[0, 1], [2, 3]]


def test_min_k(capsys):
    payload = run_json(capsys, "min-k", "--limit", "16")
    assert payload["k"] == 13
    assert payload["d"] == 1325
    payload = run_json(capsys, "min-k", "--limit", "4")
    assert payload["k"] is None


def test_unknown_subcommand_exits_2(capsys):
    code, _ = run_cli(capsys, "nosuch")
    assert code == 2


def test_missing_required_flag_exits_2(capsys):
    code, _ = run_cli(capsys, "bound")
    assert code == 2


def test_invalid_value_exits_2(capsys):
    code, _ = run_cli(capsys, "bound", "--k", "0")
    assert code == 2
    code, _ = run_cli(capsys, "scan", "--from", "10", "--to", "5")
    assert code == 2
    code, _ = run_cli(capsys, "clique", "--n", "6")
    assert code == 2


def test_cap_refusal_exits_3(capsys, tmp_path):
    out = tmp_path / "family.bin"
    code, _ = run_cli(capsys, "construct", "--k", "8", "--out", str(out), "--format", "binary")
    assert code == 3
    assert not out.exists()


def test_cap_env_override(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("BORSUK_ENUM_CAP", "10")
    out = tmp_path / "family.bin"
    code, _ = run_cli(capsys, "construct", "--k", "2", "--out", str(out), "--format", "binary")
    assert code == 3


def test_construct_binary(capsys, tmp_path):
    out = tmp_path / "family.bin"
    payload = run_json(capsys, "construct", "--k", "2", "--out", str(out), "--format", "binary")
    assert payload["count"] == 35
    data = out.read_bytes()
    assert data[:8] == b"CUTFAM01"
    assert len(data) == payload["written"] == 44 + 35 * 4


def test_construct_json(capsys, tmp_path):
    out = tmp_path / "family.json"
    run_json(capsys, "construct", "--k", "1", "--out", str(out))
    assert json.loads(out.read_text())["side_a"] == [[0, 1], [0, 2], [0, 3]]


def test_scan_payload_and_artifacts(capsys, tmp_path):
    out = tmp_path / "coverage.json"
    payload = run_json(capsys, "scan", "--from", "1320", "--to", "1330",
                       "--out", str(out))
    assert payload["all_covered"] is False
    assert payload["covered"] == 6
    assert payload["uncovered_ranges"] == [[1320, 1324]]
    assert payload["witness_ks"] == [13]
    rows = json.loads(out.read_text())
    assert len(rows) == 11
    assert rows[5] == {"d": 1325, "covered": True, "witness_k": 13,
                       "parts_lower_bound": "1562"}
    table = (tmp_path / "coverage.json.txt").read_text()
    assert "1325..1330" in table


def test_scan_csv_format(capsys, tmp_path):
    out = tmp_path / "coverage.csv"
    run_json(capsys, "scan", "--from", "27", "--to", "28", "--format", "csv",
             "--out", str(out))
    lines = out.read_text().splitlines()
    assert lines[0] == "d,covered,witness_k,parts_lower_bound"
    assert len(lines) == 3


def test_scan_deterministic(capsys):
    _, first = run_cli(capsys, "scan", "--from", "2015", "--to", "2100")
    _, second = run_cli(capsys, "scan", "--from", "2015", "--to", "2100")
    assert first == second


def test_embed_csv(capsys, tmp_path):
    out = tmp_path / "cloud.csv"
    payload = run_json(capsys, "embed", "--k", "1", "--unit", "--out", str(out))
    assert payload["points"] == 3
    assert payload["scale"] == "1/2"
    header = out.read_text().splitlines()[0]
    assert header.startswith("point,c0")


def test_diameter(capsys, tmp_path):
    out = tmp_path / "edges.csv"
    payload = run_json(capsys, "diameter", "--k", "2", "--out", str(out))
    assert payload["vertices"] == 35
    assert payload["edges"] == 315
    assert payload["degree_min"] == payload["degree_max"] == 18
    assert payload["diameter_sq"] == "16/1"
    assert len(out.read_text().splitlines()) == 316


def test_profile_parallel_equals_serial(capsys):
    _, serial = run_cli(capsys, "profile", "--k", "2", "--threads", "1")
    _, parallel = run_cli(capsys, "profile", "--k", "2", "--threads", "4")
    serial_payload = json.loads(serial)
    parallel_payload = json.loads(parallel)
    assert serial_payload.pop("threads") == 1
    assert parallel_payload.pop("threads") == 4
    assert json.dumps(serial_payload, sort_keys=True) == json.dumps(
        parallel_payload, sort_keys=True
    )


def test_profile_payload(capsys):
    payload = run_json(capsys, "profile", "--k", "2")
    assert payload["histogram"] == [
        {"a": 1, "intersection": 10, "pairs": 280},
        {"a": 2, "intersection": 8, "pairs": 315},
    ]
    assert payload["min_intersection"] == 8


def test_color(capsys, tmp_path):
    out = tmp_path / "coloring.json"
    payload = run_json(capsys, "color", "--k", "2", "--strategy", "smallest-last",
                       "--out", str(out))
    assert payload["proper"] is True
    assert payload["color_count"] == 10
    assert payload["parts_lower_bound"] == "5"
    assert json.loads(out.read_text())["color_count"] == 10


def test_rate(capsys):
    payload = run_json(capsys, "rate", "--k", "13")
    assert payload["method"] == "exact"
    assert payload["d"] == 1325
    assert payload["rate"] > 1.2
    payload = run_json(capsys, "rate", "--k", "128")
    assert payload["method"] == "log-space"


def test_rate_scan_with_plot(capsys, tmp_path):
    plot = tmp_path / "rates.png"
    payload = run_json(capsys, "rate", "--k", "13", "--powers", "6",
                       "--plot", str(plot))
    assert [p["k"] for p in payload["scan"]] == [2, 4, 8, 16, 32, 64]
    assert payload["threshold_k"] == 2
    assert plot.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_scan_plot(capsys, tmp_path):
    plot = tmp_path / "coverage.png"
    run_json(capsys, "scan", "--from", "1320", "--to", "1340", "--plot", str(plot))
    assert plot.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_profile_plot(capsys, tmp_path):
    plot = tmp_path / "profile.png"
    run_json(capsys, "profile", "--k", "2", "--plot", str(plot))
    assert plot.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
