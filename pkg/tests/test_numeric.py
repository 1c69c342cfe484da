from __future__ import annotations

import mpmath
import numpy as np
import pytest

from wengzeta.numeric import (
    PoleProximity,
    eval_expression,
    evaluate,
    evaluate_adaptive,
    evaluate_mp,
    generic_points,
    numeric_fe,
    residue_oracle,
    scan_zeros,
)
from wengzeta.rootsys import build_root_system
from wengzeta.weyl import diagram_automorphisms
from wengzeta.zeta import normalize, z_and_weng


def mxi(s):
    s = mpmath.mpc(s)
    return mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2) * mpmath.zeta(s)


def omega_a2_by_hand(s):
    """The A2, p=1 residue at T = 0, typed in from its five summands."""
    s = mpmath.mpc(s)
    x2 = mxi(2)
    return (
        1 / s
        + 1 / ((s + 1) * -2) / x2
        + 1 / (-s - 3) * mxi(s + 1) / mxi(s + 3)
        + 1 / ((-s - 3) * s) * mxi(s + 2) / (x2 * mxi(s + 3))
        + 1 / ((-2) * (-s - 2)) * mxi(s + 1) / (x2 * mxi(s + 3))
    )


def test_a2_values_against_hand_formula(a2_bundle):
    pts = generic_points(10, seed=5)
    ours = evaluate(a2_bundle.omega, pts)
    ref = np.array([complex(omega_a2_by_hand(s)) for s in pts])
    assert np.max(np.abs(ours - ref) / np.abs(ref)) < 1e-11


@pytest.mark.parametrize("kind,rank", [("A", 1), ("A", 2), ("B", 2), ("G", 2)])
def test_residue_oracle_with_T(kind, rank):
    rs = build_root_system(kind, rank)
    T = [0.21, -0.13][:rank]
    for p in range(1, rank + 1):
        om = z_and_weng(rs, p).omega
        for s in generic_points(2, seed=p):
            ref = residue_oracle(rs, p, s, T)
            assert abs(ref - complex(evaluate(om, s, T)[0])) < 1e-7 * abs(ref)


def test_residue_oracle_order_independent():
    rs = build_root_system("A", 3)
    s = 0.7 + 0.4j
    a = residue_oracle(rs, 2, s, order=[1, 3])
    b = residue_oracle(rs, 2, s, order=[3, 1])
    assert abs(a - b) < 1e-8 * abs(a)


def test_residue_oracle_rank_limit():
    with pytest.raises(ValueError):
        residue_oracle(build_root_system("A", 4), 1, 0.3 + 0.2j)


def test_extended_precision_consistency():
    b = z_and_weng(build_root_system("D", 4), 2)
    s = -1.3 + 0.7j
    hi = evaluate_mp(b.Z, s, None, 60)
    assert abs(evaluate_mp(b.Z, s, None, 35) - hi) < 1e-20 * abs(hi)
    assert abs(evaluate_adaptive(b.Z, s, rtol=1e-12) - hi) < 1e-12 * abs(hi)
    well = 2.5 + 1.0j
    assert abs(evaluate_mp(b.Z, well, [0.1, 0.2, 0.3, 0.4], 40) - complex(evaluate(b.Z, well, [0.1, 0.2, 0.3, 0.4])[0])) < 1e-9 * abs(
        evaluate_mp(b.Z, well, [0.1, 0.2, 0.3, 0.4], 40)
    )


def test_eval_report(a2_bundle):
    rep = eval_expression(a2_bundle.omega, 5e-4 + 0.0j)
    assert rep.pole_proximity is not None and rep.pole_proximity[0].startswith("linear factor")
    assert rep.est_error > 0
    with pytest.raises(PoleProximity):
        evaluate(a2_bundle.omega, 1e-9)


@pytest.mark.parametrize("kind,rank", [("A", 2), ("B", 3), ("D", 4)])
def test_numeric_fe(kind, rank):
    rs = build_root_system(kind, rank)
    _, v0 = diagram_automorphisms(rs)
    for p in range(1, rank + 1):
        b = z_and_weng(rs, p)
        assert numeric_fe(b.Z, b.c, v0.perm, count=6).worst < 1e-8
        assert numeric_fe(b.xi_weng, b.c, v0.perm, count=6, T=[0.1 * (i + 1) for i in range(rank)], seed=3).worst < 1e-8
        n = normalize(b)
        assert numeric_fe(n, -1, count=6).worst < 1e-8


def test_scan_a1():
    b = z_and_weng(build_root_system("A", 1), 1)
    res = scan_zeros(b, 30, 0.05)
    assert len(res.brackets) >= 1
    expr = normalize(b)
    for z in res.brackets:
        lo = complex(evaluate(expr, 0.5 + 1j * z.t_lo)[0]).real
        hi = complex(evaluate(expr, 0.5 + 1j * z.t_hi)[0]).real
        assert lo * hi <= 0 and z.t_hi - z.t_lo < 1e-9
    assert res.max_imag_ratio < 1e-8
    assert res.offline_min_ratio > 0


def test_scan_validation():
    b = z_and_weng(build_root_system("A", 1), 1)
    with pytest.raises(ValueError):
        scan_zeros(b, 10, 0)
    with pytest.raises(ValueError):
        scan_zeros(b, 60, 0.1)
