import json
import pathlib

import trajkit.cli as cli

FIXTURES = pathlib.Path(__file__).parent / "fixtures"
W1 = str(FIXTURES / "w1.json")
W2 = str(FIXTURES / "w2.json")


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compose_text(capsys):
    code, out, _ = run(capsys, "compose", W1)
    assert code == 0
    assert "composed behaviour" in out and "rows=2" in out


def test_compose_json(capsys):
    code, out, _ = run(capsys, "compose", W1, "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["composed"]["rows"] == [{"p": [0]}, {"p": [1]}]


def test_reconstruct_projections_match(capsys):
    code, out, _ = run(capsys, "reconstruct", W1, "--mode", "projections")
    assert code == 0
    assert "PASS" in out


def test_reconstruct_hybrid_modes(capsys):
    code, out, _ = run(capsys, "reconstruct", W2, "--mode", "hybrid:1")
    assert code == 0 and "PASS" in out
    code, _, _ = run(capsys, "reconstruct", W2, "--mode", "hybrid:7")
    assert code == 3
    code, _, _ = run(capsys, "reconstruct", W2, "--mode", "sideways")
    assert code == 2


def test_synthesize_lossy_wire(capsys):
    code, out, _ = run(capsys, "synthesize", W2)
    assert code == 0
    assert "existence: OK" in out
    assert "fast path: controller_observable" in out
    # the sacrificed plant trajectory shows up as an excluded row
    assert "excluded:" in out


def test_synthesize_json(capsys):
    code, out, _ = run(capsys, "synthesize", W2, "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["exists"] is True
    assert payload["controlled"]["rows"] == [{"p": [0]}]
    assert payload["controllers"][0]["rows"] == [{"c": [0]}]
    assert payload["multiplicities"]["rows"] == [{"p": [0]}, {"p": [1]}, {"p": [2]}]


def test_synthesize_infeasible_exit_code(capsys, tmp_path):
    data = json.loads(pathlib.Path(W1).read_text())
    # require a plant value the wire cannot reach without also passing 1
    data["behaviours"]["keep_zero"]["rows"] = []
    path = tmp_path / "infeasible.json"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "synthesize", str(path))
    assert code == 5
    assert "existence: FAILED" in out


def test_verify_command(capsys):
    code, out, _ = run(
        capsys, "verify", W1, "--controllers", str(FIXTURES / "w1_controllers.json")
    )
    assert code == 0
    assert "verdict: PASS" in out


def test_verify_json(capsys):
    code, out, _ = run(
        capsys,
        "verify",
        W1,
        "--controllers",
        str(FIXTURES / "w1_controllers.json"),
        "--format",
        "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True and payload["achieved"]["rows"] == [{"p": [0]}]


def test_oracle_command(capsys):
    code, out, _ = run(capsys, "oracle", W1)
    assert code == 0
    assert "found a satisfying controller family" in out


def test_oracle_caps_exit_code(capsys):
    code, _, err = run(capsys, "oracle", W1, "--block-rows", "1")
    assert code == 4
    assert "limit exceeded" in err


def test_suite_command_json(capsys):
    code, out, _ = run(
        capsys, "suite", "--seed", "2", "--cases", "10", "--synthesis-cases", "2",
        "--format", "json",
    )
    payload = json.loads(out)
    assert payload["seed"] == 2
    law_checks = [
        c for c in payload["checks"] if not c["name"].startswith("synthesis-")
    ]
    assert all(c["failed"] == 0 for c in law_checks)
    assert code in (0, 1)


def test_hankel_command(capsys):
    code, out, _ = run(
        capsys,
        "hankel",
        str(FIXTURES / "fib.traj"),
        "--L", "3",
        "--free", "0",
        "--query", "2,3,5",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["rank"] == 2
    assert payload["free_rows_full_rank"] is False
    assert payload["query_in_span"] is True


def test_hankel_text_output(capsys):
    code, out, _ = run(capsys, "hankel", str(FIXTURES / "fib.traj"), "--L", "2")
    assert code == 0
    assert "rank: 2" in out


def test_parse_error_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    code, _, err = run(capsys, "compose", str(bad))
    assert code == 2 and "parse error" in err
    missing = tmp_path / "missing.json"
    code, _, _ = run(capsys, "compose", str(missing))
    assert code == 2


def test_validation_error_exit_code(capsys, tmp_path):
    data = json.loads(pathlib.Path(W1).read_text())
    data["behaviours"]["keep_zero"]["rows"] = [{"p": [9]}]
    path = tmp_path / "invalid.json"
    path.write_text(json.dumps(data))
    code, _, err = run(capsys, "synthesize", str(path))
    assert code == 3 and "validation error" in err


def test_enumeration_cap_exit_code(capsys, tmp_path):
    data = {
        "horizon": 9,
        "variables": {f"v{i}": list(range(10)) for i in range(2)},
        "behaviours": {},
        "plant": {
            "subsystems": [{"vars": ["v0"], "full": True}],
            "network": {"vars": ["v0"], "full": True},
        },
    }
    path = tmp_path / "huge.json"
    path.write_text(json.dumps(data))
    code, _, err = run(capsys, "compose", str(path))
    assert code == 4 and "limit exceeded" in err
