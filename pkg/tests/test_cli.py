import json

from compalg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.rstrip("\n"), captured.err.rstrip("\n")


def test_hirsch_text_output(capsys):
    code, out, _ = run(capsys, "poincare", "hirsch", "--g", "BC:3", "--u", "U1SU:3", "--output", "text")
    assert code == 0
    assert out == "1 + t^4 + t^6 + t^10"


def test_hirsch_json_and_latex(capsys):
    code, out, _ = run(capsys, "poincare", "hirsch", "--g", "D:3", "--u", "U1SU:3")
    assert code == 0
    assert json.loads(out) == {"0": 1, "4": 1}
    code, out, _ = run(capsys, "poincare", "hirsch", "--g", "D:3", "--u", "U1SU:3", "--output", "latex")
    assert out == "1 + t^{4}"


def test_verify_bound_example(capsys):
    code, out, _ = run(
        capsys,
        "span", "verify-bound",
        "--field", "Fp:2", "--split",
        "--m", "1", "--n", "1", "--d", "1",
        "--trials", "10", "--seed", "7",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["successes"] == 10
    assert payload["counterexample"] is None


def test_clifford_classify_exact_bytes(capsys):
    code, out, _ = run(capsys, "clifford", "classify", "--p", "1", "--q", "1")
    assert code == 0
    assert out == '{"base":"R","matrix_size":2,"direct_sum":false}'


def test_zmod_loc_model(capsys):
    code, out, _ = run(capsys, "zmod", "loc-model", "--n", "2", "--smax", "5", "--signs", "++-+")
    assert code == 0
    payload = json.loads(out)
    assert payload["delta_injective"] is True
    assert payload["splits"] is True
    assert payload["middle_rank"] == 10


def test_span_rank_fixtures(capsys):
    for name, expected in (("z1", 2), ("z2", 1), ("z3", 0)):
        code, out, _ = run(capsys, "span", "rank", "--fixture", name)
        assert code == 0
        assert json.loads(out) == {"rank": expected}


def test_clifford_product(capsys):
    code, out, _ = run(capsys, "clifford", "product", "--sig", "2,0", "--x", "e1", "--y", "e2")
    assert code == 0
    assert json.loads(out) == {"12": "1"}
    code, out, _ = run(capsys, "clifford", "product", "--sig", "0,2", "--x", "e12", "--y", "e12")
    assert json.loads(out) == {"0": "-1"}


def test_determinism_same_seed(capsys):
    args = (
        "span", "verify-bound", "--field", "Q", "--a", "-1", "--b", "-1",
        "--m", "2", "--n", "2", "--d", "2", "--trials", "5", "--seed", "11",
    )
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_error_paths(capsys):
    code, _, err = run(capsys, "quat", "norm", "--field", "Fp:4", "--a", "1", "--b", "-1", "--x", "1,0,0,0")
    assert code == 1
    assert json.loads(err)["error"]["type"] == "ValueError"
    code, _, err = run(capsys, "poincare", "hirsch", "--g", "BC:3", "--u", "U1SU:2")
    assert code == 1
    assert json.loads(err)["error"]["type"] == "RankMismatchError"
    code, _, err = run(capsys, "span", "rank")
    assert code == 1
    assert "input" in json.loads(err)["error"]["message"].lower() or "fixture" in json.loads(err)["error"]["message"].lower()


def test_quat_actions(capsys):
    code, out, _ = run(
        capsys, "quat", "mul", "--field", "Q", "--a", "-1", "--b", "-1",
        "--x", "0,1,0,0", "--y", "0,0,1,0",
    )
    assert code == 0
    assert json.loads(out)["coeffs"] == ["0", "0", "0", "1"]
    code, out, _ = run(
        capsys, "quat", "is-split", "--field", "Q", "--a", "2", "--b", "-1", "--output", "text"
    )
    assert out == "split"


def test_mat_actions(capsys):
    code, out, _ = run(capsys, "mat", "study-det", "--fixture", "z2")
    assert code == 0
    assert json.loads(out) == {"study_det": "0"}
    code, out, _ = run(capsys, "mat", "invertible", "--fixture", "z1", "--output", "text")
    assert out == "true"


def test_weyl_actions(capsys):
    code, out, _ = run(capsys, "weyl", "index", "--g", "Sym:4", "--h", "Sym:2*Sym:2")
    assert json.loads(out) == {"index": 6}
    code, out, _ = run(capsys, "weyl", "ktheory", "--pair", "one-dim-split")
    assert json.loads(out) == {"rank": 2}
    code, out, _ = run(capsys, "weyl", "ktheory", "--pair", "quaternionic", "--n", "3")
    assert json.loads(out) == {"rank": 120}
    code, out, _ = run(capsys, "weyl", "reynolds", "--group", "BC:1", "--poly", "x1", "--output", "text")
    assert out == "1/2*x1 + 1/2*x1^-1"


def test_spin_check(capsys):
    code, out, _ = run(
        capsys, "clifford", "spin-check", "--p", "1", "--q", "2", "--count", "10", "--seed", "5"
    )
    assert code == 0
    assert json.loads(out)["violations"] == []
