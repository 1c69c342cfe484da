from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from wengzeta.cli import main
from wengzeta.symexpr import expr_equal, expression_from_dict
from wengzeta.zeta import z_and_weng
from wengzeta.rootsys import build_root_system


def run(*args):
    out = io.StringIO()
    code = main(list(args), out=out)
    return code, out.getvalue()


def test_info_a2():
    code, text = run("info", "A", "2", "--p", "1")
    assert code == 0
    assert "c=3" in text and "|W|=6" in text and "admissible=5" in text and "degrees={2}" in text


def test_info_a1_json():
    code, text = run("info", "A", "1", "--p", "1", "--format", "json")
    d = json.loads(text)
    assert code == 0 and d["schema_version"] == 1
    assert d["info"][0]["c"] == 2 and d["info"][0]["weyl_order"] == 2 and d["info"][0]["admissible"] == 2


def test_e8_refused(capsys):
    assert run("info", "E", "8", "--p", "1")[0] == 2
    assert "allow-e8" in capsys.readouterr().err
    # even when allowed, the default cap refuses the enumeration
    assert run("info", "E", "8", "--p", "1", "--allow-e8")[0] == 2


@pytest.mark.parametrize(
    "args",
    [
        ("scan", "A", "1", "--step", "0"),
        ("scan", "A", "1", "--t-max", "80"),
        ("info", "A", "2", "--p", "3"),
        ("info", "A", "2", "--p", "x"),
        ("info", "Q", "2"),
        ("info",),
        ("info", "A", "7", "--max-rank", "5"),
        ("verify", "A", "2", "--tolerance", "0"),
    ],
)
def test_usage_errors(args):
    assert run(*args)[0] == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        main(["zeta", "A", "2", "--format", "pdf"])
    assert info.value.code == 2


def test_zeta_json_roundtrip():
    code, text = run("zeta", "A", "1", "--p", "1", "--format", "json")
    assert code == 0
    doc = json.loads(text)["zeta"][0]
    b = z_and_weng(build_root_system("A", 1), 1)
    assert expr_equal(expression_from_dict(doc["xi"]), b.xi_weng)
    assert expr_equal(expression_from_dict(doc["omega"]), b.omega)


def test_zeta_a2_text_and_latex():
    code, text = run("zeta", "A", "2", "--p", "1")
    assert code == 0
    assert "D(s) = xi(s+2)" in text
    assert "F(s) = xi(2)*xi(s+2)*xi(s+3)" in text
    assert "minimal factor = xi(2)*xi(s+3)" in text
    code, tex = run("zeta", "A", "2", "--p", "1", "--format", "latex")
    assert r"\xi(s+2)" in tex


def test_zeta_p2_is_transported_p1():
    d1 = json.loads(run("zeta", "A", "2", "--p", "1", "--format", "json")[1])["zeta"][0]
    d2 = json.loads(run("zeta", "A", "2", "--p", "2", "--format", "json")[1])["zeta"][0]
    e1 = expression_from_dict(d1["xi"])
    e2 = expression_from_dict(d2["xi"])
    assert expr_equal(e2.transport((1, 0)), e1)
    assert d1["xi_normalized"] == d2["xi_normalized"] or expr_equal(expression_from_dict(d1["xi_normalized"]), expression_from_dict(d2["xi_normalized"]))


def test_verify_a2_all():
    code, text = run("verify", "A", "2", "--p", "all")
    assert code == 0
    assert "FAIL" not in text


def test_verify_corrupt_d():
    code, text = run("verify", "A", "2", "--p", "1", "--corrupt-d")
    assert code == 1
    assert "FAIL" in text and "lm:DD" in text and "witness=" in text


def test_verify_json_deterministic():
    a = run("verify", "B", "2", "--format", "json", "--seed", "4")[1]
    b = run("verify", "B", "2", "--format", "json", "--seed", "4")[1]
    assert a == b
    d = json.loads(a)
    assert d["passed"] and d["schema_version"] == 1


def test_verify_all_types_small():
    code, text = run("verify", "--all-types", "--max-rank", "2")
    assert code == 0
    for name in ("A1", "A2", "B2", "C2", "G2"):
        assert f"{name} p=" in text


def test_scan_csv_and_json():
    code, text = run("scan", "A", "1", "--p", "1", "--t-max", "30")
    lines = text.strip().splitlines()
    assert code == 0 and lines[0] == "t_lo,t_hi,t_mid,|value|" and len(lines) >= 2
    code, text = run("scan", "A", "2", "--p", "1", "--t-max", "20", "--format", "json")
    d = json.loads(text)
    assert code == 0 and d["schema_version"] == 1
    assert set(d["scans"][0]) >= {"group", "p", "zeros", "max_imag_ratio", "offline_min_ratio"}
    assert all(set(z) == {"t_lo", "t_hi", "t_mid", "abs_value"} for z in d["scans"][0]["zeros"])


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "wengzeta.cli", "info", "A", "2", "--p", "1"], capture_output=True, text=True)
    assert r.returncode == 0 and "c=3" in r.stdout
    r = subprocess.run([sys.executable, "-m", "wengzeta.cli", "info", "E", "8"], capture_output=True, text=True)
    assert r.returncode == 2
