import io
import json
import os
import subprocess
import sys

import pytest

from lecycle import parse_polynomial
from lecycle.cli import ResultDocument, run
from corpus import DEGEN, FMCONE, ISOLATED, NON_ISOLATED, degen


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def doc_of(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return json.loads(out)


# -- commands ------------------------------------------------------------------


def test_le_degen():
    d = doc_of("le", "--vars", "t,x,y", "y^2 - x^5 - t*x^3")
    assert d["result"]["s"] == 1
    assert d["result"]["lambda"] == [3, 2]
    assert d["result"]["gamma"] == [None, 2]
    assert d["shear"] == {"matrix": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "seed": 0}
    assert set(d) == {"command", "input", "variables", "shear", "result", "warnings", "version"}


def test_milnor():
    assert doc_of("milnor", "--vars", "x,y", "y^2 - x^5")["result"]["milnor_number"] == 4


def test_milnor_non_isolated_exit_4():
    assert call("milnor", "--vars", "t,x,y", "y^2 - x^5 - t*x^3")[0] == 4


def test_euler_and_betti():
    d = doc_of("euler", "--vars", "u,v,w,x,y", FMCONE[0])
    assert d["result"]["euler_characteristic"] == 5
    d = doc_of("betti", "--vars", "x,y", "y^2 - x^3")
    rep = d["result"]["report"]
    assert rep["betti_bounds"] == {"1": 2}
    assert rep["attaching_bound"] == 3
    assert rep["connectivity"] == 0


def test_join():
    d = doc_of("join", "--vars", "x,y", "--vars2", "u,v", "--verify", "y^2 - x^3", "v^2 - u^3")
    assert d["result"]["join_homology"] == {"3": {"rank": 4, "torsion": []}}
    assert d["result"]["sebastiani_thom"] == {"degree": 3, "rank": 4}
    assert d["result"]["direct_milnor_number"] == 4
    assert d["variables"] == [["x", "y"], ["u", "v"]]


def test_join_needs_second_polynomial():
    assert call("join", "--vars", "x,y", "y^2 - x^3")[0] == 2


def test_iomdine():
    d = doc_of("iomdine", "--vars", "t,x,y", "-j", "3", "--verify", "y^2 - x^5 - t*x^3")
    assert d["result"]["predicted"]["lambda"] == [7]
    assert d["result"]["direct"]["lambda"] == [7]


def test_iomdine_hypothesis_exit_3():
    assert call("iomdine", "--vars", "t,x,y", "-j", "2", "y^2 - x^5 - t*x^3")[0] == 3


def test_restrict():
    d = doc_of("restrict", "--vars", "u,v,w,x,y", "--verify", FMCONE[0])
    assert d["result"]["predicted"]["lambda"] == [5, 4, 1]
    assert d["result"]["direct"]["lambda"] == [5, 4, 1]


def test_check():
    d = doc_of("check", "--vars", "x,y", "y^2 - x^3")
    t = d["result"]["teissier"]
    assert (t["gamma1_dot_f"], t["gamma1_dot_z0"], t["gamma1_dot_df0"]) == (3, 1, 2)
    assert t["identity_holds"] and t["strict_inequality_holds"]
    d = doc_of("check", "--vars", "t,x,y", "y^2 - x^5 - t*x^3")
    assert d["result"]["existence"] == [True] and d["result"]["s"] == 1


def test_oracle_dim():
    d = doc_of("oracle-dim", "--vars", "x,y", "--", "-5*x^4", "2*y")
    assert d["result"]["local_multiplicity"] == 4
    d = doc_of("oracle-dim", "--vars", "x,y", "--n-max", "6", "x")
    assert d["result"]["local_multiplicity"] == "NOT_STABILIZED"


def test_smooth_point_le():
    d = doc_of("le", "--vars", "x,y", "x + y^2")
    assert d["result"]["valid"] is False and d["result"]["s"] == -1
    assert d["shear"] is None


def test_text_format():
    code, out, _ = call("le", "--vars", "t,x,y", "--format", "text", "y^2 - x^5 - t*x^3")
    assert code == 0
    assert "lambda^0 = 3" in out and "lambda^1 = 2" in out and "gamma^1 = 2" in out


# -- errors and exit codes -----------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ("le", "--vars", "x,y", "x y"),
        ("le", "--vars", "x,y", "x + q"),
        ("le", "--vars", "x,x", "x"),
        ("le", "--vars", "x,y", "1 + x"),
        ("le", "--vars", "x,y", "0"),
        ("milnor", "--vars", "x,y", "x^2", "y^2"),
        ("bogus", "--vars", "x", "x"),
        ("le", "x"),
    ],
)
def test_exit_2(argv):
    assert call(*argv)[0] == 2


def test_parse_error_message_has_position():
    code, _, err = call("le", "--vars", "x,y", "y^2 - 2x")
    assert code == 2 and "column" in err


def test_bad_coordinates_rescued_by_shear():
    d = doc_of("le", "--vars", "y,x,t", "y^2 - x^5 - t*x^3")
    assert d["result"]["lambda"] == [3, 2]
    assert d["shear"]["matrix"] != [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_resource_limit_exit_5():
    assert call("le", "--vars", "u,v,w,x,y", "--max-steps", "3", FMCONE[0])[0] == 5


def test_verify_mismatch_exit_6(monkeypatch):
    import lecycle.cli as cli

    monkeypatch.setattr(cli, "stabilized_local_multiplicity", lambda ideal, n: -1)
    assert call("milnor", "--vars", "x,y", "--verify", "y^2 - x^3")[0] == 6


# -- properties of the output ---------------------------------------------------


def test_determinism_byte_identical():
    argv = ("le", "--vars", "y,x,t", "--seed", "5", "y^2 - x^5 - t*x^3")
    a, b = call(*argv), call(*argv)
    assert a[1] == b[1]
    assert "timing" in a[2] and "timing" not in a[1]


def test_json_roundtrip():
    code, out, _ = call("betti", "--vars", "t,x,y", "y^2 - x^5 - t*x^3")
    doc = ResultDocument.from_json(out)
    assert doc.to_json() == out.rstrip("\n")
    assert ResultDocument.from_json(doc.to_json()) == doc


@pytest.mark.parametrize("text,names", [(t, n) for t, n, *_ in ISOLATED[:6]])
def test_canonical_echo(text, names):
    d = doc_of("milnor", "--vars", names, text)
    assert parse_polynomial(d["input"][0], names.split(",")) == parse_polynomial(text, names.split(","))


@pytest.mark.parametrize("text,names,mu,tag", ISOLATED)
def test_verify_isolated_corpus(text, names, mu, tag):
    d = doc_of("le", "--vars", names, "--verify", text)
    assert d["result"]["lambda"] == [mu]
    assert d["result"]["verified_multiplicities"] >= 1


@pytest.mark.parametrize("text,names,s,lambdas,tag", NON_ISOLATED)
def test_verify_non_isolated_corpus(text, names, s, lambdas, tag):
    d = doc_of("le", "--vars", names, "--verify", text)
    assert d["result"]["lambda"] == list(lambdas)


def test_version():
    assert call("--version")[0] == 0


def test_console_script():
    env = dict(os.environ)
    proc = subprocess.run(
        [sys.executable, "-m", "lecycle.cli", "milnor", "--vars", "x,y", "y^3 - x^3"],
        capture_output=True,
        text=True,
        env=env,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["milnor_number"] == 4
