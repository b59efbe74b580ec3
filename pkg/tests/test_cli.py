import io
import json
from importlib import resources

import jsonschema
import pytest
from hypothesis import given, settings

from cuspenv.bifurcate import DeformationFamily
from cuspenv.ctf import CTFData
from cuspenv.cli import ParseError, format_germ, parse_germ, run
from cuspenv.cli.parser import format_ctf, format_family

from conftest import germs

PSI = "x^2 + y^2 + y^3 ; y^2 + x^3"
SCHEMA = {"jet": "JetReport", "determinacy": "DeterminacyReport", "codim": "CodimReport",
          "miniversal": "CodimReport", "ctf-classify": "ClassificationReport", "envelope": "EnvelopeReport",
          "bifurcate": "BifurcationReport"}


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def validated(*argv):
    code, out, err = cli(*argv)
    rep = json.loads(out)
    name = SCHEMA[rep["command"]]
    schema = json.loads(resources.files("cuspenv.cli").joinpath(f"schemas/{name}.schema.json").read_text())
    jsonschema.validate(rep, schema)
    return code, rep


def test_determinacy_report():
    code, rep = validated("determinacy", "--germ", "param d; x^2+y^2+d*y^3 ; y^2+x^3")
    assert code == 0 and rep["result"]["determinant"] == "1280*d"


def test_negative_certificate_exit_code():
    code, rep = validated("determinacy", "--germ", "x^2+y^2 ; y^2+x^3")
    assert code == 2 and rep["result"]["certified"] is False


def test_codim_and_miniversal():
    code, rep = validated("codim", "--germ", PSI)
    assert code == 0 and rep["result"]["codim"] == 2
    code, rep = validated("miniversal", "--germ", PSI, "--direction", "y ; 0", "--direction", "0 ; x")
    assert code == 0 and rep["result"]["miniversal"]
    code, _ = validated("miniversal", "--germ", PSI, "--direction", "y ; 0")
    assert code == 2


def test_envelope_and_jet_reports():
    code, rep = validated("envelope", "--germ", PSI)
    assert [b["tag"] for b in rep["result"]["branches"]] == ["semicubic-cusp"] * 2
    code, rep = validated("jet", "--germ", PSI, "--op", "jacobian")
    assert rep["result"]["jet"] == "4*x*y - 6*x^2*y - 9*x^2*y^2"


def test_ctf_classify_and_rejection():
    code, rep = validated("ctf-classify", "--ctf", "alpha: xi^2; A: 1; B: 1; C: 0; D: 1")
    assert code == 0 and rep["result"]["classification"]["index"] == 2
    code, rep = validated("ctf-classify", "--ctf", "alpha: xi; A: 1; B: 0; C: 0; D: 1")
    assert code == 2 and rep["result"]["classification"] is None and "rejected" in rep["result"]


def test_bifurcate_report():
    code, rep = validated("bifurcate", "--family", "nu", "--values", "-0.1,0.1,5")
    assert code == 0 and rep["result"]["events"] == []


def test_svg_outputs(tmp_path):
    for argv in (("envelope", "--germ", PSI, "--format", "svg"),
                 ("ctf-classify", "--ctf", "alpha: xi^2; A: 1; B: 1; C: 0; D: 1", "--format", "svg")):
        code, out, _ = cli(*argv)
        assert code == 0 and out.startswith("<?xml") and 'viewBox="0 0 400 400"' in out
        assert out == cli(*argv)[1]  # deterministic
    rep = tmp_path / "env.json"
    cli("envelope", "--germ", PSI, "--out", str(rep))
    code, out, _ = cli("render", "--input", str(rep))
    assert code == 0 and out.count("<polyline") == 2


def test_csv_cloud():
    code, out, _ = cli("envelope", "--germ", PSI, "--format", "csv", "--grid", "32x32", "--window", "-0.4,0.4,-0.4,0.4")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "x,y,X,Y" and len(lines) > 5


def test_errors_are_json_with_exit_one():
    code, out, err = cli("jet", "--germ", "x^2 + 1 ; y")
    assert code == 1 and out == ""
    payload = json.loads(err)
    assert payload["type"] == "ParseError" and "constant term" in payload["error"]
    code, _, err = cli("jet", "--germ", "x + q ; y")
    assert code == 1 and "undeclared symbol 'q'" in json.loads(err)["error"]
    code, _, _ = cli("nonsense")
    assert code == 1


@pytest.mark.parametrize("text", ["x +* y ; y", "x / y ; y", "x ; y $", ""])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_germ(text)


def test_family_and_ctf_round_trip():
    fam = parse_germ("deform lam, mu; x^2 + y^2 + y^3 + lam*y ; y^2 + x^3 + mu*x")
    assert isinstance(fam, DeformationFamily) and fam.parameters == ["lam", "mu"]
    assert parse_germ(format_family(fam)).jet() == fam.jet()
    d = parse_germ("alpha: xi^2; A: 1; B: 1 + xi; C: 0; D: 1")
    assert isinstance(d, CTFData)
    assert parse_germ(format_ctf(d)) == d
    with pytest.raises(ParseError):
        parse_germ("deform lam; x^2 + lam^2*y ; y^2")


@settings(max_examples=80)
@given(germs(4))
def test_germ_round_trip(f):
    assert parse_germ(format_germ(f), 4) == f
