import json
import re

import pytest

from bjortho import Space, cli
from bjortho import space as space_module

EX21 = json.dumps({
    "matrix": [["1", "0"], ["0", "1"], ["1/2", "1/2"]],
    "domain": "builtin:l1:2", "codomain": "builtin:linf:3", "label": "l1-to-linf",
})
EX24 = json.dumps({
    "matrix": [["1/2", "1/2", "0"], ["-1/2", "1/2", "0"], ["0", "1", "0"]],
    "domain": "builtin:linf:3", "codomain": "builtin:bipyramid_prism:4",
})
CUBE_SPEC = json.dumps({"basis": [["1", "1", "1"], ["-1", "1", "1"], ["-1", "-1", "1"]],
                        "alphas": ["-10"], "betas": ["-3/2"]})


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_ortho_test_reports_orthogonal(capsys):
    code, rep, _ = run(capsys, "ortho", "test", "--space", "builtin:prism:2", "--x", "1,0,1", "--y", "1,2,-1")
    assert code == 0 and rep["verdicts"] == {"orthogonal": True}
    assert list(rep) == ["command", "inputs", "timing_ms", "certificates", "verdicts"]
    assert rep["command"] == "ortho test"
    assert re.fullmatch(r"[0-9a-f]{64}", rep["inputs"]["space"]["sha256"])


def test_negative_verdict_exits_one(capsys):
    code, rep, _ = run(capsys, "ortho", "test", "--space", "builtin:linf:2", "--x", "1,1", "--y", "1,1/2")
    assert code == 1 and rep["verdicts"]["orthogonal"] is False


def test_pn_and_cover(capsys):
    code, rep, _ = run(capsys, "ortho", "pn", "--space", "builtin:glued_pyramids", "--n", "2")
    assert code == 1 and rep["verdicts"]["has_pn"] is False
    code, rep, _ = run(capsys, "ortho", "cover", "--space", "builtin:glued_pyramids", "--family", "1,1,1;1,-1,1")
    assert code == 0 and rep["certificates"]["coverage"]["verdict"] == "covered"
    code, rep, _ = run(capsys, "ortho", "mincover", "--space", "builtin:glued_pyramids")
    assert code == 0 and rep["verdicts"]["m"] == 2


def test_operator_commands(capsys):
    code, rep, _ = run(capsys, "op", "norm", "--op", EX21)
    assert code == 0 and rep["verdicts"]["op_norm"] == "1"
    code, rep, _ = run(capsys, "op", "bs2d", "--op", EX21)
    assert code == 1 and rep["verdicts"]["bs_property"] is False
    code, rep, _ = run(capsys, "op", "components", "--op", EX21)
    assert rep["verdicts"] == {"count_sphere": 4, "count_projective": 2}
    code, rep, _ = run(capsys, "op", "mt", "--op", EX24)
    assert code == 0
    code, rep, _ = run(capsys, "op", "corollary-pn", "--op", EX24, "--m", "2", "--spec", CUBE_SPEC)
    assert rep["verdicts"]["status"] == "violates_bs" and rep["verdicts"]["bs_property"] is False


def test_counterexample_round_trips_into_ortho_and_witness(capsys):
    spec = json.dumps({"basis": [["1", "0"], ["0", "1"]]})
    code, rep, _ = run(capsys, "op", "counterexample", "--op", EX21, "--spec", spec)
    assert code == 0
    matrix = rep["certificates"]["construction"]["matrix"]
    A = json.dumps({"matrix": matrix, "domain": "builtin:l1:2", "codomain": "builtin:linf:3"})
    code, rep, _ = run(capsys, "op", "ortho", "--op", EX21, "--a", A)
    assert code == 0
    code, rep, _ = run(capsys, "op", "witness", "--op", EX21, "--a", A)
    assert rep["verdicts"] == {"t_orth_a": True, "witness": None, "conclusion": "violates_bs"}


def test_inconclusive_exit_code(capsys):
    spec = json.dumps({"basis": [["1", "0"], ["0", "1"]], "z": ["0", "1", "0"]})
    code, rep, _ = run(capsys, "op", "counterexample", "--op", EX21, "--spec", spec)
    assert code == 3 and rep["error"]["type"] == "ConditionViolation"


@pytest.mark.parametrize("argv", [
    ["ortho", "test", "--space", "builtin:prism:2", "--x", "1,0,1/0", "--y", "1,2,-1"],
    ["ortho", "test", "--space", "builtin:prism:2", "--x", "1,0", "--y", "1,2,-1"],
    ["ortho", "test", "--space", "builtin:nowhere:3", "--x", "1,0,1", "--y", "1,2,-1"],
    ["ortho", "test", "--space", "{\"vertices\": [[1, 0], [0, 1]", "--x", "1,0", "--y", "0,1"],
    ["space", "validate", "--space", "{\"vertices\": [[2, 1, 1], [1, 1, -1]]}"],
    ["space", "norm", "--space", "/no/such/file.json", "--x", "1"],
    ["op", "norm", "--op", "{\"matrix\": [[0.5]], \"domain\": \"builtin:linf:1\", \"codomain\": \"builtin:linf:1\"}"],
    ["repro", "no-such-scenario"],
])
def test_malformed_input_exits_two(capsys, argv):
    code, rep, _ = run(capsys, *argv)
    assert code == 2 and rep["error"]["type"] == "InputError"
    assert rep["error"]["message"]


def test_json_error_reports_position(capsys):
    code, rep, _ = run(capsys, "space", "facets", "--space", "{\"vertices\": [[1, 0],\n [0, 1]")
    assert code == 2 and "line 2" in rep["error"]["message"]


def test_argument_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["ortho", "pn", "--space", "builtin:linf:2"])
    assert exc.value.code == 2


def test_output_is_deterministic_and_thread_independent(capsys, monkeypatch):
    argv = ["ortho", "pn", "--space", "builtin:bipyramid_prism:3", "--n", "2"]
    outs = []
    for threads in ("1", "1", "4"):
        monkeypatch.setenv("BJORTHO_THREADS", threads)
        _, _, out = run(capsys, *argv)
        outs.append(re.sub(r'"timing_ms":\d+', "", out))
    assert outs[0] == outs[1] == outs[2]


def test_approx_flag_in_either_position(capsys):
    _, a, _ = run(capsys, "--approx", "op", "norm", "--op", EX21)
    _, b, _ = run(capsys, "op", "norm", "--op", EX21, "--approx")
    assert a["approx"] == b["approx"] and a["approx"]["verdicts"]["op_norm"] == 1.0
    assert a["verdicts"]["op_norm"] == "1"


def test_space_document_round_trips(capsys, tmp_path):
    _, rep, _ = run(capsys, "space", "facets", "--space", "builtin:prism:3")
    doc = rep["certificates"]["space"]
    path = tmp_path / "prism.json"
    path.write_text(json.dumps(doc))
    code, again, _ = run(capsys, "space", "validate", "--space", str(path))
    assert code == 0 and again["verdicts"]["valid"] is True


def test_repro_single_and_filtered(capsys):
    code = cli.main(["repro", "2.1"])
    captured = capsys.readouterr()
    rep = json.loads(captured.out)
    assert code == 0 and rep["verdicts"] == {"passed": True, "failed": [], "bs_property": False}
    assert "PASS  example-2.1" in captured.err
    code, rep, _ = run(capsys, "repro", "all", "--filter", "example")
    assert code == 0 and len(rep["certificates"]["table"]) == 4


def test_repro_names_a_corrupted_builtin(capsys, monkeypatch):
    def broken_prism(n):
        S = space_module.prism(n)
        # drop one vertex: the body is no longer centrally symmetric
        return Space(S.kind, S.dim, S.vertices[1:], S.facets, S.incidence[1:], S.label)

    monkeypatch.setitem(space_module._BUILDERS, "prism", (broken_prism, 2))
    code = cli.main(["repro", "prism"])
    captured = capsys.readouterr()
    rep = json.loads(captured.out)
    assert code == 1
    assert rep["verdicts"]["failed"] == ["prism"]
    assert rep["certificates"]["checks"]["prism:2 validates"] is False
    assert "FAIL  prism" in captured.err
