import json

import pytest

from reslab import __version__
from reslab.cli import main
from reslab.graph import Graph, parse_edge_list, serialize_edge_list


def write_graph(path, g):
    path.write_text(serialize_edge_list(g))
    return str(path)


def test_gen(tmp_path, capsys):
    out = tmp_path / "g.txt"
    assert main(["gen", "--model", "gnp", "--n", "100", "--p", "0.5", "--seed", "7",
                 "--out", str(out)]) == 0
    g = parse_edge_list(out.read_text())
    assert g.n == 100
    echo = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert echo["config"]["seed"] == 7 and echo["version"] == __version__
    assert main(["gen", "--n", "100", "--p", "1", "--seed", "1", "--out", str(out)]) == 0
    assert parse_edge_list(out.read_text()).m == 4950
    assert main(["gen", "--model", "regular", "--n", "20", "--d", "3", "--seed", "1",
                 "--out", str(out)]) == 0


def test_gen_rejects_bad_probability(capsys):
    assert main(["gen", "--p", "1.5", "--seed", "1"]) != 0
    assert "probability" in capsys.readouterr().err


def test_unknown_flag_rejected():
    with pytest.raises(SystemExit) as exc:
        main(["gen", "--bogus"])
    assert exc.value.code != 0


def test_seed_from_entropy_is_printed(capsys):
    assert main(["gen", "--n", "5", "--p", "0.5"]) == 0
    assert capsys.readouterr().err.startswith("seed: ")


def test_check(tmp_path, capsys):
    c5 = write_graph(tmp_path / "c5.txt", Graph.cycle(5))
    assert main(["check", "--property", "hamilton", "--graph", c5, "--seed", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["verdict"]["found"] and len(out["verdict"]["cycle"]) == 5
    assert out["config"]["seed"] == 1 and out["version"] == __version__

    p4 = write_graph(tmp_path / "p4.txt", Graph.path(4))
    assert main(["check", "--property", "matching", "--graph", p4, "--seed", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"]["perfect"] is True

    pet = write_graph(tmp_path / "pet.txt", Graph.petersen())
    assert main(["check", "--property", "hamilton", "--graph", pet, "--exact", "--seed", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"]["found"] is False

    assert main(["check", "--property", "chromatic", "--graph", pet, "--exact", "--seed", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"]["chromatic_number"] == 3


def test_attack(tmp_path, capsys):
    k4 = write_graph(tmp_path / "k4.txt", Graph.complete(4))
    prefix = str(tmp_path / "iso")
    assert main(["attack", "--graph", k4, "--strategy", "isolate_larger_half", "--seed", "2",
                 "--out", prefix]) == 0
    res = json.loads(open(prefix + ".json").read())
    assert len(res["move"]["edges"]) == 3 and res["config"]["strategy"] == "isolate_larger_half"
    assert parse_edge_list(open(prefix + ".graph").read()).m == 3

    prefix = str(tmp_path / "rnd")
    assert main(["attack", "--graph", k4, "--budget", "0", "--seed", "2", "--out", prefix]) == 0
    assert json.loads(open(prefix + ".json").read())["move"]["edges"] == []

    h = write_graph(tmp_path / "h.txt", Graph.from_edges(4, [(0, 1), (0, 2)]))
    capsys.readouterr()
    assert main(["attack", "--graph", k4, "--h-file", h, "--budget", "1", "--seed", "2",
                 "--out", str(tmp_path / "bad")]) != 0
    assert "vertex 0" in capsys.readouterr().err


def test_sweep_and_config_file(tmp_path):
    conf = tmp_path / "s.cfg"
    conf.write_text("property=matching\nn=60\np=0.3\nbudgets=0\ntrials=3\nseed=4\n")
    prefix = str(tmp_path / "sw")
    assert main(["sweep", "--config", str(conf), "--out", prefix]) == 0
    summary = json.loads(open(prefix + ".summary.json").read())
    assert len(summary["records"]) == 1 and summary["config"]["trials"] == 3
    assert summary["version"] == __version__
    # Flags override the file.
    assert main(["sweep", "--config", str(conf), "--trials", "2", "--out", prefix + "2"]) == 0
    assert json.loads(open(prefix + "2.summary.json").read())["config"]["trials"] == 2
    # Same seed, same bytes.
    assert main(["sweep", "--config", str(conf), "--out", prefix + "3"]) == 0
    assert open(prefix + ".summary.json").read() == open(prefix + "3.summary.json").read()
    lines = open(prefix + ".csv").read().splitlines()
    assert lines[0] == "budget,destroyed_fraction,ci_lo,ci_hi" and len(lines) == 2


def test_malformed_config(tmp_path, capsys):
    conf = tmp_path / "bad.cfg"
    conf.write_text("bogus=1\n")
    assert main(["sweep", "--config", str(conf)]) != 0
    assert "bogus" in capsys.readouterr().err
    conf.write_text("budgets=3 1\n")
    assert main(["sweep", "--config", str(conf), "--seed", "1",
                 "--out", str(tmp_path / "x")]) != 0
    conf.write_text("trials\n")
    assert main(["sweep", "--config", str(conf)]) != 0


def test_validate(tmp_path):
    out = tmp_path / "v.json"
    assert main(["validate", "--lemma", "properties-i", "--n", "5000", "--p", "0.05",
                 "--trials", "3", "--seed", "1", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["report"]["pass_fraction"] == 1 and rep["config"]["n"] == 5000
