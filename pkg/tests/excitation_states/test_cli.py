import json

import numpy as np
import pytest

from libs.excitation_states import __version__, cli
from libs.excitation_states.cli import SEPARABILITY_SKIPPED, RunConfig, build_parser, main
from libs.excitation_states.entanglement import hex_torus_closed_form
from libs.excitation_states.families import cycle, hexagonal_torus
from libs.excitation_states.io import (
    data_path,
    hypergraph_from_dict,
    hypergraph_to_dict,
    pooled_counts,
    write_json,
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def fixture(name):
    return str(data_path(f"{name}.json"))


def test_run_config_from_namespace():
    args = build_parser().parse_args(["circuit", "cost", "--graph", fixture("c5")])
    config = RunConfig.from_namespace(args)
    assert (config.command, config.action, config.output, config.verbose) == (
        "circuit",
        "cost",
        None,
        False,
    )


def test_families(capsys):
    code, out, _ = run(capsys, "families", "cycle", "--N", "4")
    assert code == 0
    assert hypergraph_from_dict(json.loads(out)) == cycle(4)


def test_families_to_file(capsys, tmp_path):
    target = tmp_path / "oct.json"
    code, out, _ = run(capsys, "families", "platonic", "--solid", "octahedron", "--out", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["n"] == 6


def test_state_build_and_reduce(capsys, tmp_path):
    target = tmp_path / "psi.json"
    assert main(["state", "build", "--graph", fixture("c4"), "--out", str(target)]) == 0
    assert json.loads(target.read_text())["amps"]["1100"] == pytest.approx([0.5, 0.0])

    code, out, _ = run(capsys, "state", "reduce", "--state", str(target), "--qubits", "0")
    assert code == 0
    payload = json.loads(out)
    assert payload["subsystems"] == [0]
    np.testing.assert_allclose(payload["real"], [[0.5, 0.0], [0.0, 0.5]])
    np.testing.assert_allclose(payload["imag"], np.zeros((2, 2)))


def test_analyze_reports_separable(capsys, tmp_path):
    csv_path = tmp_path / "rows.csv"
    code, out, err = run(capsys, "analyze", "--graph", fixture("k222"), "--csv", str(csv_path))
    assert code == 0
    assert "separable: 05|13|24" in err
    report = json.loads(out)
    assert report["separability"] == {
        "status": "product",
        "partition": "05|13|24",
        "state_check": True,
    }
    assert len(report["nodes"]) == 6
    assert csv_path.read_text().startswith("N,family,gamma,C_dist1,C_dist2\n")


def test_analyze_single_vertex(capsys):
    code, out, err = run(capsys, "analyze", "--graph", fixture("c6"), "--vertex", "2")
    assert code == 0
    assert "no product decomposition" in err
    assert [node["vertex"] for node in json.loads(out)["nodes"]] == [2]


def test_analyze_beyond_product_budget(capsys, tmp_path, caplog):
    graph = tmp_path / "hex.json"
    write_json(hypergraph_to_dict(hexagonal_torus(4, 6)), graph)
    code, out, err = run(capsys, "analyze", "--graph", str(graph), "--vertex", "0")
    assert code == 0
    assert f"separable: {SEPARABILITY_SKIPPED}" in err
    report = json.loads(out)
    assert report["n"] == 24
    assert report["separability"]["status"] == SEPARABILITY_SKIPPED
    assert report["separability"]["partition"] is None
    (node,) = report["nodes"]
    assert node["gamma"] == pytest.approx(hex_torus_closed_form(24).gamma)
    assert "Skipping the product decomposition" in caplog.text


def test_symmetry_realizable(capsys):
    code, out, _ = run(capsys, "symmetry", "realizable", "--group", "cyclic", "--n", "4")
    assert code == 0
    payload = json.loads(out)
    assert payload["realizable"] is False
    assert (payload["group_order"], payload["closure_order"]) == (4, 8)


def test_symmetry_stabilizer(capsys):
    code, out, _ = run(capsys, "symmetry", "stabilizer", "--graph", fixture("c6"))
    assert code == 0
    assert json.loads(out)["order"] == 12


def test_symmetry_named_group_needs_n(capsys):
    code, _, err = run(capsys, "symmetry", "orbit-basis", "--group", "cyclic", "--k", "2")
    assert code == 1
    assert "--n" in err


def test_circuit_cost(capsys):
    code, out, _ = run(capsys, "circuit", "cost", "--graph", fixture("c5"))
    assert code == 0
    payload = json.loads(out)
    assert (payload["exact"], payload["estimate"]) == (19, 22)


def test_circuit_verify(capsys):
    code, out, _ = run(capsys, "circuit", "verify", "--graph", fixture("c6"), "--random-orders", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert len(payload["runs"]) == 3


def test_hamiltonian_three_body(capsys):
    code, out, _ = run(capsys, "hamiltonian", "--graph", fixture("c6"), "--model", "3body")
    assert code == 0
    payload = json.loads(out)
    assert payload["top_eigenvalue"] == pytest.approx(4.0)
    assert payload["claim_matches"] is False
    assert payload["rayleigh_residual"] == pytest.approx(0.0, abs=1e-9)


def test_fit_noise_default(capsys, tmp_path):
    csv_path = tmp_path / "fit.csv"
    code, out, _ = run(capsys, "fit-noise", "--csv", str(csv_path))
    assert code == 0
    payload = json.loads(out)
    assert payload["signal_probability"] == pytest.approx(48656 / 99999)
    assert payload["all_means"]["0"] == pytest.approx(0.08604, abs=5e-5)
    assert csv_path.read_text().splitlines()[0] == "k,mean,fit"


def test_export_figz(capsys):
    code, out, _ = run(capsys, "export", "fig-figz")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "N,C2_rest"
    assert lines[1] == "3,0.888889"


def test_missing_file_is_usage_error(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", "--graph", str(tmp_path / "nope.json"))
    assert code == 2
    assert "no such file" in err


def test_malformed_json(capsys, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    code, _, err = run(capsys, "analyze", "--graph", str(broken))
    assert code == 1
    assert "malformed JSON" in err


def test_library_error_exit(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 3, "edges": [[0, 5]]}))
    code, _, err = run(capsys, "circuit", "synth", "--graph", str(bad))
    assert code == 1
    assert err.startswith("error:")


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0
    assert __version__ in out


def test_fit_noise_reads_bundled_counts_without_file(mocker, capsys):
    loader = mocker.patch.object(cli, "pooled_counts", wraps=pooled_counts)
    code, out, _ = run(capsys, "fit-noise", "--no-floor")
    assert code == 0
    loader.assert_called_once_with()
    assert json.loads(out)["flip_floor"] == 0.0
