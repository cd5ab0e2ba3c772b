import csv
import io
import json

import pytest

from framedgc.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_cocompose_examples():
    assert run("cocompose", "n=3 m=0 edges=[(E1,E3)]", "--i", "1", "--m", "2", "--n", "2") \
        == (0, "+1 · [alpha_12] (x) [1]\n")
    assert run("cocompose", "n=4 m=0 edges=[]", "--i", "2", "--m", "2", "--n", "3") \
        == (0, "+1 · [1] (x) [1]\n")
    assert run("cocompose", "n=3 m=0 edges=[(E1,E2)]", "--i", "1", "--m", "2", "--n", "2") \
        == (0, "+1 · [1] (x) [alpha_12]\n")


def test_cocompose_framed():
    code, text = run("cocompose", "n=3 m=0 edges=[(E1,E2)]", "--i", "1", "--m", "2",
                     "--n", "2", "--framed", "")
    assert code == 0
    assert text.splitlines() == ["+1 · [1] (x) [alpha_12]", "+1 · [1*dtheta_1] (x) [1]"]


def test_cocompose_zero_and_internal():
    code, text = run("cocompose", "n=3 m=1 edges=[(E1,I1),(E2,I1),(E3,I1)]",
                     "--i", "1", "--m", "2", "--n", "2")
    assert (code, text) == (0, "0\n")
    code, text = run("cocompose", "n=3 m=1 edges=[(E1,I1),(E2,I1),(E3,I1)]",
                     "--i", "1", "--m", "1", "--n", "3")
    assert text == "+1 · [1] (x) [n=3 m=1 edges=[(E1,I1),(E2,I1),(E3,I1)]]\n"


def test_cocompose_parse_error(capsys):
    code, _ = run("cocompose", "n=3 m=0 edges=[(E1,E9)]", "--i", "1", "--m", "2", "--n", "2")
    assert code == 2
    assert "position 19" in capsys.readouterr().err


def test_cocompose_bad_indices():
    assert run("cocompose", "n=3 m=0 edges=[]", "--i", "3", "--m", "2", "--n", "2")[0] == 2
    assert run("cocompose", "n=3 m=1 edges=[(E1,I1),(E2,I1)]",
               "--i", "1", "--m", "2", "--n", "2")[0] == 2


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_betti_n1():
    code, text = run("betti", "--n", "1", "--imax", "2")
    assert code == 0
    rows = _rows(text)
    assert [(r["k"], r["dim_unframed"], r["dim_framed"]) for r in rows] == [
        ("0", "1", "1"), ("1", "0", "1")]


def test_betti_n2_imax0():
    code, text = run("betti", "--n", "2", "--imax", "0", "--k-range", "0:1")
    assert text.splitlines()[0] == "n,k,dim_unframed,dim_framed"
    assert [int(r["dim_unframed"]) for r in _rows(text)] == [1, 1]


def test_betti_json_direct():
    code, text = run("betti", "--n", "2", "--imax", "1", "--format", "json", "--direct")
    rows = json.loads(text)["rows"]
    assert [r["dim_framed"] for r in rows] == [1, 3, 3, 1]
    assert [r["dim_framed_direct"] for r in rows] == [1, 3, 3, 1]


@pytest.mark.slow
def test_betti_n3():
    code, text = run("betti", "--n", "3", "--imax", "3")
    rows = _rows(text)
    assert [int(r["dim_unframed"]) for r in rows] == [1, 3, 2, 0, 0, 0]
    assert [int(r["dim_framed"]) for r in rows] == [1, 6, 14, 16, 9, 2]


def test_betti_bad_range():
    assert run("betti", "--n", "2", "--k-range", "x")[0] == 2
    assert run("betti", "--n", "0")[0] == 2


def test_verify_d_squared():
    code, text = run("verify", "--scope", "d-squared", "--n-max", "3", "--i-max", "2")
    assert code == 0
    report = json.loads(text)
    assert report["schema"] == "framedgc.verify/1"
    res, = report["results"]
    assert res["identity"] == "d-squared" and res["passed"] and res["cases"] > 0
    assert res["counterexample"] is None


def test_verify_all_small():
    code, text = run("verify", "--scope", "all", "--n-max", "2", "--i-max", "1")
    assert code == 0
    report = json.loads(text)
    assert report["passed"]
    names = [r["identity"] for r in report["results"]]
    assert "sd-coassociativity-literal" not in names and "betti" in names


def test_verify_literal_rule_fails():
    code, text = run("verify", "--scope", "sd-cocompose-literal-paper-index")
    assert code == 1
    res, = json.loads(text)["results"]
    assert not res["passed"]
    assert res["counterexample"]["element"] and res["counterexample"]["case"]


def test_verify_unknown_scope():
    assert run("verify", "--scope", "no-such-identity")[0] == 2


def test_verify_bounds_must_be_positive():
    assert run("verify", "--scope", "d-squared", "--n-max", "0")[0] == 2


def test_verify_is_deterministic():
    a = run("verify", "--scope", "leibniz", "--n-max", "2", "--seed", "5", "--samples", "50")
    b = run("verify", "--scope", "leibniz", "--n-max", "2", "--seed", "5", "--samples", "50")
    strip = lambda t: [dict(r, seconds=0) for r in json.loads(t)["results"]]  # noqa: E731
    assert strip(a[1]) == strip(b[1])


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "bounds.json"
    cfg.write_text(json.dumps({"n-max": 2, "i-max": 1, "scope": "d-squared"}))
    code, text = run("--config", str(cfg), "verify")
    report = json.loads(text)
    assert code == 0 and report["bounds"]["n_max"] == 2
    code, text = run("--config", str(cfg), "verify", "--n-max", "3")
    assert json.loads(text)["bounds"]["n_max"] == 3


def test_output_file_and_cache_dir(tmp_path):
    out = tmp_path / "report.json"
    cache = tmp_path / "cache"
    code, text = run("--cache-dir", str(cache), "verify", "--scope", "roundtrip",
                     "--n-max", "2", "--output", str(out))
    assert code == 0
    assert json.loads(out.read_text()) == json.loads(text)
    assert any(cache.iterdir())


def test_matrix_dump():
    code, text = run("matrix", "--n", "3", "--k", "1", "--i", "1")
    assert code == 0
    assert text.splitlines()[0] == "3 1 3"


def test_usage_error_exit_code():
    assert run()[0] == 2
    assert run("verify", "--bogus")[0] == 2


def test_verify_csv():
    code, text = run("verify", "--scope", "delta-squared", "--n-max", "2", "--format", "csv")
    rows = _rows(text)
    assert code == 0 and rows[0]["identity"] == "delta-squared" and rows[0]["passed"] == "1"
