import json

import pytest

from turan_forge.cli import main, run_pipeline
from turan_forge.errors import InputError
from turan_forge.graphs import read_edge_list


def test_gen_pattern_and_labels(tmp_path):
    out = tmp_path / "g.el"
    labels = tmp_path / "labels.json"
    assert main(["gen", "pattern", "--kind", "grid", "--t", "3",
                 "--out", str(out), "--labels", str(labels)]) == 0
    g = read_edge_list(out)
    assert g.n == 9 and g.edge_count == 12
    side = json.loads(labels.read_text())
    assert len(side["labels"]) == 9


def test_gen_polarity_and_gnp(tmp_path):
    out = tmp_path / "p.el"
    assert main(["gen", "polarity", "--q", "3", "--out", str(out)]) == 0
    assert read_edge_list(out).edge_count == 24
    assert main(["gen", "polarity", "--q", "6", "--out", str(out)]) == 1
    out2 = tmp_path / "h.el"
    assert main(["gen", "gnp", "--n", "30", "--p", "0.4", "--seed", "7",
                 "--out", str(out2)]) == 0
    g1 = read_edge_list(out2)
    main(["gen", "gnp", "--n", "30", "--p", "0.4", "--seed", "7",
          "--out", str(out2)])
    assert list(read_edge_list(out2).edges()) == list(g1.edges())


def test_transform_count_build_embed_chain(tmp_path):
    host = tmp_path / "h.el"
    main(["gen", "gnp", "--n", "40", "--p", "0.5", "--seed", "3",
          "--out", str(host)])
    peeled = tmp_path / "p.el"
    assert main(["transform", "peel", "--in", str(host),
                 "--out", str(peeled)]) == 0
    count_out = tmp_path / "c4.json"
    assert main(["count", "c4", "--in", str(host), "--out",
                 str(count_out)]) == 0
    assert json.loads(count_out.read_text())["c4"] > 0
    coll = tmp_path / "coll.txt"
    assert main(["build", "rich-paths", "--in", str(host), "--k", "3",
                 "--alpha", "6", "--out", str(coll)]) == 0
    cert = tmp_path / "cert.json"
    assert main(["embed", "grid", "--coll", str(coll), "--host", str(host),
                 "--t", "2", "--out", str(cert)]) == 0
    payload = json.loads(cert.read_text())
    assert payload["found"] and payload["pattern"]["kind"] == "grid"
    verify_out = tmp_path / "v.json"
    cert_only = tmp_path / "cert_only.json"
    cert_only.write_text(json.dumps({k: payload[k] for k in
                                     ("pattern", "mapping", "method")}))
    assert main(["oracle", "verify", "--host", str(host), "--cert",
                 str(cert_only), "--out", str(verify_out)]) == 0
    assert json.loads(verify_out.read_text())["valid"]


def test_oracle_cli(tmp_path):
    host = tmp_path / "h.el"
    main(["gen", "polarity", "--q", "3", "--out", str(host)])
    out = tmp_path / "o.json"
    assert main(["oracle", "find", "--host", str(host), "--pattern", "c4",
                 "--out", str(out)]) == 3
    assert json.loads(out.read_text())["result"] == "exhausted"
    assert main(["oracle", "exmax", "--n", "4", "--pattern", "c4",
                 "--out", str(out)]) == 0
    assert json.loads(out.read_text())["max_edges"] == 4


def test_find_cli(tmp_path):
    host = tmp_path / "k.el"
    main(["gen", "gnp", "--n", "24", "--p", "1.0", "--seed", "0",
          "--bipartite", "--out", str(host)])
    out = tmp_path / "pp.json"
    assert main(["find", "prismpath", "--in", str(host), "--t", "3",
                 "--out", str(out)]) == 0
    assert json.loads(out.read_text())["found"]
    pol = tmp_path / "pol.el"
    main(["gen", "polarity", "--q", "5", "--out", str(pol)])
    assert main(["find", "prism", "--in", str(pol), "--ell", "4",
                 "--budget", "1e5", "--seed", "1", "--out", str(out)]) == 3


def test_pipeline_examples(tmp_path):
    report = tmp_path / "rep.json"
    cert = tmp_path / "cert.json"
    config = {
        "host": {"kind": "gnp", "n": 400, "p": 0.3, "seed": 7,
                 "bipartite": True},
        "target": {"kind": "cylinder", "k": 3, "ell": 2},
        "builder": {"alpha": 6},
        "embedder": {"budget": 10 ** 6, "seed": 3},
        "out": {"report": str(report), "certificate": str(cert)},
    }
    code, rep = run_pipeline(config)
    assert code == 0 and rep["outcome"] == "found"
    assert json.loads(report.read_text())["certificate"] is not None

    code, rep = run_pipeline({
        "host": {"kind": "polarity", "q": 5},
        "target": {"kind": "prism", "ell": 4},
        "embedder": {"budget": 10 ** 5, "seed": 1},
    })
    assert code == 3 and rep["outcome"] == "not-found"

    with pytest.raises(InputError):
        run_pipeline({"host": {"kind": "gnp", "n": 20, "p": 0.5, "seed": 1,
                               "bipartite": True},
                      "target": {"kind": "torus", "k": 5, "ell": 2}})
    # via the CLI entry point the same config exits 1
    cfg_path = tmp_path / "bad.json"
    cfg_path.write_text(json.dumps({
        "host": {"kind": "gnp", "n": 20, "p": 0.5, "seed": 1,
                 "bipartite": True},
        "target": {"kind": "torus", "k": 5, "ell": 2}}))
    assert main(["pipeline", "--config", str(cfg_path)]) == 1
