import json

import pytest

from boxlab.cli import main
from boxlab.files import load_json


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_grid_and_oracle_bx(tmp_path, capsys):
    grid = tmp_path / "grid.txt"
    code, _, _ = run(capsys, "gen", "grid", "--rows", "2", "--cols", "2",
                     "-o", str(grid))
    assert code == 0
    code, out, _ = run(capsys, "oracle", "bx", str(grid))
    assert code == 0
    obj = json.loads(out)
    assert obj["value"] == 2  # a 2x2 grid is the 4-cycle


def test_oracle_values(tmp_path, capsys):
    cm = tmp_path / "cm6.txt"
    assert run(capsys, "gen", "comatching", "--n", "6", "-o", str(cm))[0] == 0
    code, out, _ = run(capsys, "oracle", "bx", str(cm))
    assert code == 0 and json.loads(out)["value"] == 3
    s3 = tmp_path / "s3.txt"
    assert run(capsys, "gen", "crown", "--n", "3", "-o", str(s3))[0] == 0
    code, out, _ = run(capsys, "oracle", "dim", str(s3))
    assert code == 0 and json.loads(out)["value"] == 3


def test_gen_deterministic_files(tmp_path, capsys):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    args = ("gen", "gnp", "--n", "300", "--p", "0.2", "--dmax", "20",
            "--seed", "7")
    assert run(capsys, *args, "-o", str(a))[0] == 0
    assert run(capsys, *args, "-o", str(b))[0] == 0
    assert a.read_text() == b.read_text()


def test_gen_unknown_family_is_parameter_error(capsys):
    code, _, err = run(capsys, "gen", "moebius")
    assert code == 3
    assert "unknown family" in err


def test_degree_write_and_verify_roundtrip(tmp_path, capsys):
    graph = tmp_path / "g.txt"
    cert = tmp_path / "g.cert.json"
    run(capsys, "gen", "gnp", "--n", "50", "--p", "0.2", "--dmax", "10",
        "--seed", "3", "-o", str(graph))
    code, out, _ = run(capsys, "degree", str(graph), "--seed", "5",
                       "-o", str(cert))
    assert code == 0
    assert "verified=true" in out and "seed=5" in out
    assert cert.exists()
    code, out, _ = run(capsys, "verify", str(graph), str(cert))
    assert code == 0
    assert "verified=true" in out


def test_verify_tampered_certificate_exits_4(tmp_path, capsys):
    graph = tmp_path / "g.txt"
    cert = tmp_path / "g.cert.json"
    run(capsys, "gen", "gnp", "--n", "30", "--p", "0.3", "--dmax", "8",
        "--seed", "1", "-o", str(graph))
    assert run(capsys, "degree", str(graph), "--seed", "2",
               "-o", str(cert))[0] == 0
    obj = load_json(cert.read_text())
    key = sorted(obj["boxes"])[0]
    obj["boxes"][key][0] = [5000, 5001]
    cert.write_text(json.dumps(obj))
    code, _, err = run(capsys, "verify", str(graph), str(cert))
    assert code == 4
    assert "violation" in err


def test_parse_error_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("not a graph\n")
    code, _, err = run(capsys, "degree", str(bad))
    assert code == 2
    assert "parse error" in err
    code, _, _ = run(capsys, "degree", str(tmp_path / "missing.txt"))
    assert code == 2


def test_parameter_error_exits_3(tmp_path, capsys):
    graph = tmp_path / "g.txt"
    run(capsys, "gen", "gnp", "--n", "20", "--p", "0.5", "--seed", "2",
        "-o", str(graph))
    code, _, err = run(capsys, "degree", str(graph), "--d", "3")
    assert code == 3
    assert "parameter error" in err


def test_suitable_json_and_verification(capsys):
    code, out, _ = run(capsys, "suitable", "--n", "12", "--k", "3",
                       "--seed", "4", "--verify", "exhaustive")
    assert code == 0
    obj = json.loads(out)
    assert obj["n"] == 12 and obj["k"] == 3
    assert obj["verified"] == "exhaustive"
    assert len(obj["perms"]) == obj["size"]
    for perm in obj["perms"]:
        assert sorted(perm) == list(range(1, 13))


def test_partition_json(tmp_path, capsys):
    graph = tmp_path / "g.txt"
    run(capsys, "gen", "gnp", "--n", "80", "--p", "0.3", "--dmax", "30",
        "--seed", "6", "-o", str(graph))
    code, out, _ = run(capsys, "partition", str(graph), "--d", "3",
                       "--k", "213", "--seed", "1")
    assert code == 0
    obj = json.loads(out)
    assert len(obj["classes"]) == 80
    assert all(1 <= c <= 213 for c in obj["classes"])


def test_dim_pipeline_output(tmp_path, capsys):
    poset = tmp_path / "p.txt"
    out_json = tmp_path / "p.dim.json"
    run(capsys, "gen", "height2", "--na", "6", "--nb", "6", "--p", "0.4",
        "--seed", "9", "-o", str(poset))
    code, out, _ = run(capsys, "dim", str(poset), "--seed", "12",
                       "-o", str(out_json))
    assert code == 0
    obj = load_json(out_json.read_text())
    assert obj["format"] == "boxlab-realizer"
    assert obj["k"] == len(obj["orders"])
    assert "verified=true" in out


def test_ltw_subcommand(tmp_path, capsys):
    from boxlab.builders import min_degree_decomposition
    from boxlab.files import (parse_graph, write_layering,
                              write_tree_decomposition)
    from boxlab.pipelines import bfs_layering
    graph = tmp_path / "g.txt"
    run(capsys, "gen", "grid", "--rows", "3", "--cols", "6", "-o", str(graph))
    g = parse_graph(graph.read_text())
    td = min_degree_decomposition(g)
    td_file = tmp_path / "td.txt"
    td_file.write_text(write_tree_decomposition(td.bags, td.tree_edges, g.n))
    lay_file = tmp_path / "layers.txt"
    lay_file.write_text(write_layering(bfs_layering(g).layers_of))
    cert = tmp_path / "g.cert.json"
    code, out, _ = run(capsys, "ltw", str(graph), "--td", str(td_file),
                       "--layers", str(lay_file), "--seed", "1",
                       "-o", str(cert))
    assert code == 0
    assert run(capsys, "verify", str(graph), str(cert))[0] == 0


def test_genus_subcommand(tmp_path, capsys):
    from boxlab.core import relabel_rep
    from boxlab.files import canonical_json, parse_graph, write_vertex_set
    from boxlab.pipelines import bounded_degree_rep
    graph = tmp_path / "g.txt"
    run(capsys, "gen", "gnp", "--n", "25", "--p", "0.25", "--dmax", "8",
        "--seed", "4", "-o", str(graph))
    g = parse_graph(graph.read_text())
    cut = [0, 1, 2]
    cut_file = tmp_path / "cut.txt"
    cut_file.write_text(write_vertex_set(cut))
    rest = [v for v in range(g.n) if v not in cut]
    sub, old = g.induced(rest)
    inner = bounded_degree_rep(sub, seed=2)
    rep = relabel_rep(inner.rep, dict(enumerate(old)))
    rep_file = tmp_path / "rep.json"
    rep_file.write_text(canonical_json({"d": rep.d, "boxes": rep.to_json()}))
    cert = tmp_path / "g.cert.json"
    code, out, _ = run(capsys, "genus", str(graph), "--g", "1",
                       "--cut", str(cut_file), "--rep", str(rep_file),
                       "--seed", "3", "-o", str(cert))
    assert code == 0
    obj = load_json(cert.read_text())
    assert obj["d"] == rep.d + len(cut)
    assert run(capsys, "verify", str(graph), str(cert))[0] == 0


def test_bench_csv(tmp_path, capsys):
    csv_file = tmp_path / "bench.csv"
    code, _, _ = run(capsys, "bench", "degree", "--dmax", "10", "--trials", "2",
                     "--seed", "5", "-o", str(csv_file))
    assert code == 0
    lines = csv_file.read_text().strip().splitlines()
    assert lines[0] == "delta,n,d,target_d,seconds,seed"
    assert len(lines) == 3
    # rows append across runs instead of truncating
    code, _, _ = run(capsys, "bench", "degree", "--dmax", "10", "--trials", "1",
                     "--seed", "6", "-o", str(csv_file))
    assert code == 0
    assert len(csv_file.read_text().strip().splitlines()) == 4


def test_bench_stdout_and_trial_seeds_recorded(capsys):
    code, out, _ = run(capsys, "bench", "degree", "--dmax", "8",
                       "--trials", "2", "--seed", "5", "--no-verify")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("delta,")
    seeds = [int(row.split(",")[-1]) for row in lines[1:]]
    assert len(set(seeds)) == 2


def test_seed_defaults_are_recorded(tmp_path, capsys):
    graph = tmp_path / "g.txt"
    run(capsys, "gen", "gnp", "--n", "20", "--p", "0.2", "--seed", "1",
        "-o", str(graph))
    cert = tmp_path / "g.cert.json"
    code, out, _ = run(capsys, "degree", str(graph), "-o", str(cert))
    assert code == 0
    assert "seed=" in out
    recorded = load_json(cert.read_text())["seed"]
    assert f"seed={recorded}" in out
