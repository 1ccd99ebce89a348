import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from ncomplex import NComplex
from ncomplex.cli import run
from ncomplex.contour import circle_path


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def write_json(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


def test_eval_euler_identity():
    code, out, _ = call("eval", "--op", "exp", "planar:n=2:[0,3.141592653589793]")
    assert code == 0
    u = NComplex.from_literal(out.strip())
    np.testing.assert_allclose(u.x, [-1, 0], atol=1e-15)


def test_eval_pow_needs_exponent():
    code, _, err = call("eval", "--op", "pow", "polar:n=3:[2,0.1,0.1]")
    assert code == 2 and "--m" in err


def test_eval_pow_json():
    code, out, _ = call("eval", "--op", "pow", "--m", "2", "--format", "json", "polar:n=3:[1,1,0]")
    assert code == 0
    data = json.loads(out)
    assert data["n"] == 3


def test_domain_error_exit_and_name():
    code, out, err = call("eval", "--op", "log", "polar:n=3:[-5,0,0]")
    assert code == 1
    assert out == ""
    assert err.startswith("error: DomainError:")


def test_noninvertible_error_name():
    code, _, err = call("form", "--kind", "geometric", "polar:n=4:[0,0,0,0]")
    assert code == 1
    assert err.startswith("error: ")


def test_unknown_flag_is_usage_error():
    code, _, err = call("eval", "--bogus", "polar:n=2:[1,0]")
    assert code == 2 and err.startswith("usage error:")


def test_unknown_command_is_usage_error():
    code, _, _ = call("frobnicate")
    assert code == 2


def test_bad_literal_is_reported():
    code, _, err = call("spectrum", "polar:n=3:[1,2]")
    assert code in (1, 2) and err


def test_spectrum_json():
    code, out, _ = call("spectrum", "polar:n=4:[1,0,0,0]")
    assert code == 0
    assert isinstance(json.loads(out), dict)


def test_form_kinds():
    for kind in ("geometric", "exponential", "trigonometric"):
        code, out, err = call("form", "--kind", kind, "polar:n=4:[3,0.5,0.2,0.1]")
        assert code == 0, err
        json.loads(out)


def test_table_csv_header_and_values():
    code, out, _ = call("table", "--n", "2", "--y-min", "0", "--y-max", "1", "--steps", "4")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["y", "g_2_0", "g_2_1"]
    assert len(rows) == 6
    y, g0, g1 = map(float, rows[-1])
    assert (y, g0, g1) == pytest.approx((1.0, math.cosh(1.0), math.sinh(1.0)), rel=1e-14)


def test_table_planar_json():
    code, out, _ = call("table", "--variant", "planar", "--n", "2", "--format", "json", "--steps", "2")
    data = json.loads(out)
    assert data["columns"] == ["y", "f_2_0", "f_2_1"]
    for y, f0, f1 in data["rows"]:
        assert f0 == pytest.approx(math.cos(y)) and f1 == pytest.approx(math.sin(y))


def test_table_rejects_plain():
    assert call("table", "--n", "2", "--format", "plain")[0] == 2


def test_factor_count_only(tmp_path):
    p = write_json(tmp_path, "p.json", {"variant": "polar", "n": 4, "coefficients": [[0, 0, 0, 0], [-1, 0, 0, 0]]})
    code, out, _ = call("factor", "--count-only", p)
    assert code == 0 and out.strip() == "4"


def test_factor_listing(tmp_path):
    p = write_json(tmp_path, "p.json", {"variant": "planar", "n": 4, "coefficients": [[0, 0, 0, 0], [1, 0, 0, 0]]})
    code, out, _ = call("factor", p)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "count: 2"
    assert all(line.count("(u - ") == 2 for line in lines[:-1])


def test_factor_missing_file_is_usage_error(tmp_path):
    code, _, err = call("factor", str(tmp_path / "none.json"))
    assert code == 2 and "cannot read" in err


def _circle_file(tmp_path, center, planes=(1,)):
    path = circle_path(center, 1.0, planes=planes, segments=32)
    data = {"variant": center.variant.value, "n": center.n, "vertices": [v.x.tolist() for v in path.vertices]}
    return write_json(tmp_path, "loop.json", data)


def test_integrate_residue_certificate(tmp_path):
    center = NComplex.zero(2, "planar")
    p = _circle_file(tmp_path, center)
    code, out, _ = call("integrate", p, "--function", "reciprocal", "--center", "planar:n=2:[0,0]")
    assert code == 0
    cert = json.loads(out)
    assert cert["winding"] == [1]
    assert cert["max_abs_error"] < 1e-9


def test_integrate_analytic_loop_vanishes(tmp_path):
    p = _circle_file(tmp_path, NComplex([0.3, 0.1, 0.2, 0.0], "polar"))
    code, out, _ = call("integrate", p, "--function", "exp")
    assert code == 0
    assert json.loads(out)["max_abs_error"] < 1e-10


def test_integrate_rejects_unknown_keys(tmp_path):
    p = write_json(tmp_path, "bad.json", {"vertices": [[0, 0], [1, 0], [0, 1]], "colour": "red"})
    assert call("integrate", p)[0] == 2


def test_integrate_singular_path_exit_one(tmp_path):
    p = write_json(tmp_path, "s.json", {"variant": "polar", "n": 4, "vertices": [[-1, -1, 0, 0], [1, 1, 0, 0], [1, -1, 2, 0]]})
    code, _, err = call("integrate", p, "--center", "polar:n=4:[0,0,0,0]")
    assert code == 1 and "SingularPath" in err


def test_analyze_geometric_series(tmp_path):
    one = [1.0, 0.0, 0.0]
    p = write_json(tmp_path, "s.json", {"variant": "polar", "n": 3, "coefficients": [one] * 60})
    code, out, _ = call("analyze", p, "--riemann-at", "polar:n=3:[0.1,0.05,0.02]")
    assert code == 0
    data = json.loads(out)
    assert data["radii"]["c_plus"] == pytest.approx(1.0, rel=1e-6)
    assert data["inside"] is True


def test_config_file_overrides(tmp_path):
    cfg = write_json(tmp_path, "c.json", {"format": "json", "tolerances": {"factor_tol": 1e-8}})
    code, out, _ = call("eval", "--op", "exp", "--config", cfg, "polar:n=2:[0,1]")
    assert code == 0
    json.loads(out)


@pytest.mark.parametrize(
    "data",
    [{"colour": 1}, {"tolerances": {"nope": 1}}, {"format": "xml"}, {"seed": -1}, {"tolerances": {"node_eps": -1}}],
)
def test_bad_config_is_usage_error(tmp_path, data):
    cfg = write_json(tmp_path, "c.json", data)
    code, _, err = call("eval", "--op", "exp", "--config", cfg, "polar:n=2:[0,1]")
    assert code == 2 and err.startswith("usage error:")


def test_verify_subset_is_deterministic():
    a = call("verify", "--seed", "7", "--criteria", "1,4", "--samples", "30")
    b = call("verify", "--seed", "7", "--criteria", "1,4", "--samples", "30")
    assert a[0] == 0
    strip = lambda s: s.rsplit("\n", 2)[0]  # noqa: E731  drop the timing line
    assert strip(a[1]) == strip(b[1])
    assert "PASS criterion 1" in a[1] and "PASS criterion 4" in a[1]


@pytest.mark.parametrize("criterion", [str(c) for c in range(1, 11)])
def test_verify_json(criterion):
    code, out, _ = call("verify", "--criteria", criterion, "--samples", "20", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["passed"] is True and data["checks"]


def test_verify_rejects_bad_criteria():
    assert call("verify", "--criteria", "42")[0] == 2
    assert call("verify", "--criteria", "x")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ncomplex", "eval", "--op", "exp", "polar:n=2:[0,0]"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    np.testing.assert_allclose(NComplex.from_literal(proc.stdout.strip()).x, [1, 0])
