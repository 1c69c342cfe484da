from __future__ import annotations

from fractions import Fraction

import pytest

from wengzeta.rootsys import build_root_system
from wengzeta.symexpr import ExpDatum, XiProduct, ZetaExpression, ZetaTerm, expr_equal
from wengzeta.weyl import enumerate_group, fe_involution, identity, longest_element, word
from wengzeta.zeta import (
    corrupt_d,
    d_factor,
    f_factor,
    h_term,
    m_table,
    m_table_report,
    minimal_factor,
    n_table,
    normalize,
    omega_gp,
    verify_fe_symbolic,
    z_and_weng,
)

Q = Fraction


def term(coeff, lin, xi):
    return ZetaTerm.build(Q(coeff), None, ExpDatum.trivial(2), lin, XiProduct.of([kh for kh, e in xi for _ in range(abs(e)) if e > 0]) / XiProduct.of([kh for kh, e in xi for _ in range(abs(e)) if e < 0]))


# the five nonzero summands of the A2, p=1 residue, transcribed by hand (T = 0)
OMEGA_A2 = ZetaExpression(
    (
        term(1, [(1, 0)], []),
        term(Q(-1, 2), [(1, 1)], [((0, 2), -1)]),
        term(-1, [(1, 3)], [((1, 1), 1), ((1, 3), -1)]),
        term(-1, [(1, 3), (1, 0)], [((1, 2), 1), ((0, 2), -1), ((1, 3), -1)]),
        term(Q(1, 2), [(1, 2)], [((1, 1), 1), ((0, 2), -1), ((1, 3), -1)]),
    )
)
Z_A2 = ZetaExpression(
    (
        term(1, [(1, 0)], [((1, 2), 1), ((0, 2), 1), ((1, 3), 1)]),
        term(Q(-1, 2), [(1, 1)], [((1, 2), 1), ((1, 3), 1)]),
        term(-1, [(1, 3)], [((0, 2), 1), ((1, 1), 1), ((1, 2), 1)]),
        term(-1, [(1, 3), (1, 0)], [((1, 2), 2)]),
        term(Q(1, 2), [(1, 2)], [((1, 1), 1), ((1, 2), 1)]),
    )
)


def test_a2_golden(a2_bundle):
    b = a2_bundle
    assert b.c == 3
    assert expr_equal(b.omega.at_zero_T(), OMEGA_A2)
    assert expr_equal(b.Z.at_zero_T(), Z_A2)
    assert b.F == XiProduct.of([(1, 2), (0, 2), (1, 3)])
    assert b.D == XiProduct.of([(1, 2)])
    assert b.minimal_factor == XiProduct.of([(0, 2), (1, 3)])
    assert expr_equal(b.xi_weng, b.Z.div_xi(b.D))


def test_a2_tables(a2):
    M, Mt = m_table(a2, 1)
    assert M[(0, 2)] == 1 and M[(1, 3)] == 1 and M[(1, 2)] == 0
    assert all(v >= 0 for v in Mt.values())
    N = n_table(a2, 1)
    # N_p counts all of Phi by (<lambda_p, alpha^vee>, Ht alpha^vee)
    assert sum(N.values()) == 6
    assert N[(1, 1)] == N[(1, 2)] == N[(0, 1)] == N[(-1, -2)] == 1
    assert N[(2, 3)] == 0
    report = m_table_report(a2, 1)
    assert set(report) == {"admissible", "tilde", "all_w", "w0_closed_form"}
    assert report["w0_closed_form"][(1, 3)] == 1


def test_a1():
    rs = build_root_system("A", 1)
    b = z_and_weng(rs, 1)
    assert b.c == 2
    assert b.F == XiProduct.of([(1, 2)])
    assert b.D == XiProduct()
    expected = ZetaExpression(
        (
            ZetaTerm.build(1, None, ExpDatum.trivial(1), [(1, 0)], XiProduct()),
            ZetaTerm.build(-1, None, ExpDatum.trivial(1), [(1, 2)], XiProduct.of([(1, 1)]) / XiProduct.of([(1, 2)])),
        )
    )
    assert expr_equal(b.omega.at_zero_T(), expected)


def test_module_functions_agree(a2, a2_bundle):
    assert f_factor(a2, 1) == a2_bundle.F
    assert d_factor(a2, 1) == a2_bundle.D
    assert minimal_factor(a2, 1) == a2_bundle.minimal_factor
    assert expr_equal(omega_gp(a2, 1), a2_bundle.omega)


def test_a2_term_exchange(a2, a2_bundle):
    # the term of w is exchanged with the term of w0 w w_1
    by_tag = a2_bundle.Z.by_tag()
    pairs = {(): (2, 1), (2,): (1, 2, 1), (1, 2): (1, 2)}
    for w, v in pairs.items():
        ww = word(a2, list(w)) if w else identity(a2)
        assert fe_involution(a2, 1, ww) == word(a2, list(v))
        lhs = by_tag[ww.encode()].reflect(3, (1, 0))
        assert lhs.value_key == by_tag[word(a2, list(v)).encode()].value_key


def test_a2_p2_is_the_flip_of_p1(a2):
    b1, b2 = z_and_weng(a2, 1), z_and_weng(a2, 2)
    assert expr_equal(b2.xi_weng.transport((1, 0)), b1.xi_weng)
    assert expr_equal(b2.xi_weng.at_zero_T(), b1.xi_weng.at_zero_T())


def test_h_term(a2):
    assert h_term(a2, 1, identity(a2))["direct"] == XiProduct()
    w0 = h_term(a2, 1, longest_element(a2))
    assert w0["equal"]
    assert w0["direct"] == XiProduct.of([(1, 1), (1, 2)]) / XiProduct.of([(1, 2), (0, 2), (1, 3)])
    with pytest.raises(ValueError):
        h_term(a2, 1, word(a2, [1]))


@pytest.mark.parametrize("kind,rank", [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G", 2)])
def test_fe_symbolic_small(kind, rank):
    rs = build_root_system(kind, rank)
    for p in range(1, rank + 1):
        res = verify_fe_symbolic(z_and_weng(rs, p))
        assert all(r.passed for r in res), [r.to_dict() for r in res if not r.passed]


def test_normalized_fe(a2_bundle):
    norm = normalize(a2_bundle)
    assert expr_equal(norm.reflect(-1), norm)
    assert all(t.expd.is_trivial() for t in norm.terms)


def test_corrupt_d_fails_dd(a2_bundle):
    res = verify_fe_symbolic(corrupt_d(a2_bundle))
    failed = {r.name for r in res if not r.passed}
    assert "lm:DD reflect(D, c) = D" in failed


def test_admissible_count_matches_terms():
    rs = build_root_system("B", 3)
    for p in (1, 2, 3):
        b = z_and_weng(rs, p)
        assert len(b.omega) == int(b.data.admissible.sum()) <= len(enumerate_group(rs))
