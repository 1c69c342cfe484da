from __future__ import annotations

from fractions import Fraction
from math import prod

import pytest

from wengzeta.rootsys import (
    RootSystemError,
    build_root_system,
    center,
    classical_positive_count,
    degrees_of_parabolic,
    height,
    pairing_lambda,
    rho_p,
)
from wengzeta.weyl import enumerate_group

TYPES = [("A", r) for r in range(1, 7)] + [("B", r) for r in range(2, 6)] + [("C", r) for r in range(2, 6)]
TYPES += [("D", 4), ("D", 5), ("D", 6), ("E", 6), ("E", 7), ("F", 4), ("G", 2)]


def test_a2_positive_roots():
    rs = build_root_system("A", 2)
    assert set(rs.positive_roots) == {(1, 0), (0, 1), (1, 1)}


def test_a1_single_root():
    assert build_root_system("A", 1).positive_roots == ((1,),)


@pytest.mark.parametrize("kind,rank,count", [("G", 2, 6), ("F", 4, 24), ("E", 6, 36), ("E", 7, 63), ("E", 8, 120)])
def test_exceptional_counts(kind, rank, count):
    assert build_root_system(kind, rank).n_positive == count


@pytest.mark.parametrize("kind,rank", TYPES)
def test_structure(kind, rank):
    rs = build_root_system(kind, rank)
    assert rs.n_positive == classical_positive_count(kind, rank)
    for a in rs.positive_roots:
        assert all(isinstance(x, int) and x >= 0 for x in a)
    C = rs.cartan
    for i in range(rank):
        assert C[i][i] == 2
        for j in range(rank):
            if i != j:
                assert C[i][j] in (0, -1, -2, -3)
    # <alpha_i^vee, lambda_j> = delta_ij
    for j in range(1, rank + 1):
        lam = rs.fundamental_weight(j)
        for i in range(rank):
            assert lam[i] == Fraction(int(i == j - 1))
    # <rho, alpha_i^vee> = 1
    assert all(x == 1 for x in rs.rho)
    # exactly one of alpha, -alpha is positive
    for a in rs.roots:
        neg = tuple(-x for x in a)
        assert (all(x >= 0 for x in a)) != (all(x >= 0 for x in neg))


def test_heights_and_pairings():
    rs = build_root_system("A", 2)
    assert height(rs, (1, 1)) == 2
    assert height(rs, (-1, -1)) == -2
    assert pairing_lambda(rs, 1, (1, 1)) == 1
    assert pairing_lambda(rs, 1, (0, 1)) == 0
    for kind, rank in TYPES[:8]:
        rs = build_root_system(kind, rank)
        for p in range(1, rank + 1):
            assert pairing_lambda(rs, p, rs.simple_root(p)) == 1


def test_g2_highest_coroot_height():
    rs = build_root_system("G", 2)
    assert max(height(rs, a) for a in rs.positive_roots) == 5


def test_rho_p():
    a2 = build_root_system("A", 2)
    # rho_1 = alpha_2 / 2, and alpha_2 = -lambda_1 + 2 lambda_2
    assert rho_p(a2, 1) == (Fraction(-1, 2), Fraction(1))
    assert rho_p(build_root_system("A", 1), 1) == (0,)
    b2 = build_root_system("B", 2)
    assert rho_p(b2, 1) == tuple(Fraction(x, 2) for x in b2.to_weight(b2.simple_root(2)))


def test_centers():
    assert center(build_root_system("A", 2), 1) == 3
    assert center(build_root_system("A", 1), 1) == 2
    for kind, rank in TYPES:
        rs = build_root_system(kind, rank)
        for p in range(1, rank + 1):
            c = center(rs, p)
            assert isinstance(c, int) and c > 0


def test_degrees():
    assert degrees_of_parabolic(build_root_system("A", 2), 1) == [2]
    assert degrees_of_parabolic(build_root_system("A", 3), 2) == [2, 2]
    assert degrees_of_parabolic(build_root_system("A", 1), 1) == []
    assert degrees_of_parabolic(build_root_system("E", 6), 1) == [2, 4, 5, 6, 8]


@pytest.mark.parametrize("kind,rank", [("A", 4), ("B", 4), ("D", 5), ("F", 4), ("E", 6)])
def test_degrees_multiply_to_parabolic_order(kind, rank):
    rs = build_root_system(kind, rank)
    for p in range(1, rank + 1):
        sub = rs.subsystem([j for j in range(rank) if j != p - 1])
        assert prod(degrees_of_parabolic(rs, p)) == len(enumerate_group(sub))


@pytest.mark.parametrize("kind,rank", [("A", 0), ("B", 1), ("C", 1), ("D", 2), ("E", 5), ("E", 9), ("F", 3), ("G", 3), ("H", 2)])
def test_invalid_types(kind, rank):
    with pytest.raises(RootSystemError):
        build_root_system(kind, rank)


def test_bad_index():
    rs = build_root_system("A", 2)
    with pytest.raises(RootSystemError):
        center(rs, 3)
    with pytest.raises(RootSystemError):
        center(rs, 0)
