import json
import math
import os

import pytest
from click.testing import CliRunner
from hypothesis import given, settings
from hypothesis import strategies as st

from cusp_spectra.cli import main
from cusp_spectra.charfn import CuspBundle
from cusp_spectra.serialize import dumps, from_dict, loads
from cusp_spectra.spectrum import EigenRecord
from cusp_spectra.verify import VerifyReport
from cusp_spectra.zetadet import AsympReport, Mode0DetPieces, ZetaEval, asymptotic_logdet_a, mode0_aw_logdet_derivative

GOLDEN = os.path.join(os.path.dirname(__file__), "golden", "spectrum_default.csv")


def run(*args):
    return CliRunner().invoke(main, list(args))


# --- spectrum --------------------------------------------------------------------

def test_spectrum_csv_matches_golden():
    r = run("spectrum", "--lambda-max", "50", "--format", "csv")
    assert r.exit_code == 0
    lines = r.output.splitlines()
    assert lines[0] == "k,j,r,lambda,residual"
    assert lines[1] == "0,0,0,0,0"
    assert r.output.endswith("\n")
    with open(GOLDEN) as fh:
        assert r.output == fh.read()


def test_header_only_csv():
    r = run("spectrum", "--alpha", "0", "--lambda-max", "0.1", "--format", "csv")
    assert r.exit_code == 0
    assert r.output == "k,j,r,lambda,residual\n"


def test_byte_identical_runs(tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        assert run("spectrum", "--lambda-max", "40", "--out", str(path)).exit_code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] and outs[0]


def test_spectrum_json_fields():
    r = run("spectrum", "--lambda-max", "30")
    d = loads(r.output)
    assert d["kernel_present"] is True
    assert set(d["records"][0]) == {"k", "j", "r", "lambda", "residual"}


def test_config_errors_exit_2():
    for args in (
        ("spectrum", "--alpha", "1.0"),
        ("spectrum", "--a", "-1"),
        ("spectrum", "--delta", "0.25"),
        ("spectrum", "--delta", "0.125"),
        ("spectrum", "--k-max", "0"),
        ("spectrum", "--mu", "nan"),
    ):
        r = run(*args)
        assert r.exit_code == 2, args
        assert "error:" in r.output


# --- zeta --------------------------------------------------------------------------

def test_zeta_strip_violation():
    r = run("zeta", "--s-re", "0.9")
    assert r.exit_code == 2
    assert "strip" in r.output


def test_zeta_default_agreement():
    r = run("zeta")
    assert r.exit_code == 0
    d = loads(r.output)
    assert d["abs_diff"] <= d["combined_estimate"]
    assert set(d["value_direct"]) == {"re", "im"}


def test_zeta_complex_s():
    r = run("zeta", "--s-im", "0.5", "--lambda-max", "100", "--k-max", "8")
    assert r.exit_code == 0
    d = loads(r.output)
    assert d["s"] == {"re": 1.5, "im": 0.5}
    assert d["value_integral"]["im"] != 0.0


def test_zeta_csv_flattens_complex():
    r = run("zeta", "--lambda-max", "60", "--k-max", "8", "--format", "csv")
    header, row = r.output.splitlines()
    cols = header.split(",")
    assert "value_direct_re" in cols and "value_direct_im" in cols
    assert len(row.split(",")) == len(cols)


# --- mode 0 and asymptotics ---------------------------------------------------------

def test_mode0_requires_holonomy():
    r = run("mode0-det", "--alpha", "0")
    assert r.exit_code == 2
    assert "trivial character" in r.output


def test_mode0_output():
    r = run("mode0-det", "--mu", "10")
    assert r.exit_code == 0
    d = loads(r.output)
    assert d["b_prime"] == 0.0
    assert abs(d["total"] - d["closed_chain"]) < 1e-9


def test_asymptotics_a_alpha0():
    r = run("asymptotics", "--theorem", "a-alpha0", "--a", "10")
    assert r.exit_code == 0
    d = loads(r.output)
    assert d["term_values"] == {"linear_a": 20 * math.pi / 3}
    assert d["constant"] == 0.0 and d["total"] == 20 * math.pi / 3


def test_asymptotics_csv_and_domain():
    r = run("asymptotics", "--theorem", "mu-alpha", "--mu", "100", "--format", "csv")
    assert r.exit_code == 0
    assert r.output.splitlines()[0] == "term,value"
    assert run("asymptotics", "--theorem", "mu-alpha", "--alpha", "0").exit_code == 2
    assert run("asymptotics").exit_code == 2  # --theorem is required


# --- serialization -------------------------------------------------------------------

def test_round_trip_reports():
    items = [
        (EigenRecord(1, 1, 7.68, 59.3, 1e-12), EigenRecord),
        (VerifyReport("x.y", "pass", 1e-12, 1e-10, "note"), VerifyReport),
        (ZetaEval(1.5 + 0.2j, 1.0, 0.3 - 0.1j, 1e-6, "integral"), ZetaEval),
        (mode0_aw_logdet_derivative(3.0, CuspBundle(0.3, 1.0)), Mode0DetPieces),
        (asymptotic_logdet_a(CuspBundle(0.3, 10.0)), AsympReport),
    ]
    for obj, cls in items:
        back = from_dict(cls, loads(dumps(obj)))
        assert back == obj


@settings(max_examples=200)
@given(st.floats(allow_nan=False), st.floats(allow_nan=False, allow_infinity=False))
def test_floats_round_trip(x, y):
    d = loads(dumps({"x": x, "z": complex(y, x)}))
    assert d["x"] == x
    assert complex(d["z"]["re"], d["z"]["im"]) == complex(y, x)


def test_json_is_standard_for_finite_values():
    text = dumps({"a": 0.1, "b": [1, 2.0], "c": True, "d": None})
    assert json.loads(text) == {"a": 0.1, "b": [1, 2.0], "c": True, "d": None}
