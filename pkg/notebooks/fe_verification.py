"""Exact and numeric functional-equation checks across a few groups.

Run: python3 notebooks/fe_verification.py
"""
from __future__ import annotations

from wengzeta import build_root_system, lemma_suite, numeric_fe, z_and_weng
from wengzeta.weyl import diagram_automorphisms

for kind, rank in [("A", 3), ("B", 3), ("D", 4), ("G", 2)]:
    rs = build_root_system(kind, rank)
    v0 = diagram_automorphisms(rs)[1]
    for p in range(1, rank + 1):
        b = z_and_weng(rs, p)
        results = lemma_suite(rs, p, b)
        failed = [r.name for r in results if not r.passed]
        # Z(-c-s; varpi0 T) against Z(s; T) at seeded points in |s| <= 5
        rep = numeric_fe(b.Z, b.c, v0.perm, count=10, T=[0.1 * (i + 1) for i in range(rank)])
        status = "ok" if not failed else f"FAILED {failed}"
        print(f"{rs.name} p={p}: c={b.c:2d} terms={len(b.Z.terms):3d} exact checks {len(results)} {status}; numeric FE max rel {rep.worst:.1e}")
