"""A2, p=1 from root data to the Weng zeta function, step by step.

Run: python3 notebooks/a2_walkthrough.py
"""
from __future__ import annotations

from wengzeta import build_root_system, center, serialize, z_and_weng
from wengzeta.weyl import admissible, enumerate_group, longest_element

rs = build_root_system("A", 2)
print("Cartan matrix:", rs.cartan)
print("positive roots:", [a for a in rs.roots if all(x >= 0 for x in a)])

# Only admissible Weyl elements contribute a term to the period.
W = enumerate_group(rs)
adm = [w for w in W if admissible(rs, 1, w)]
print(f"|W| = {len(W)}, admissible for p=1: {len(adm)}, w0 = {longest_element(rs)}")
print("center c_1 =", center(rs, 1))

b = z_and_weng(rs, 1)
print("\nomega(s; T=0) =", serialize(b.omega.at_zero_T()))
print("F =", serialize(b.F))
print("D =", serialize(b.D))
print("minimal factor =", serialize(b.minimal_factor))
print("\nxi^{G/P}(s; T=0) =", serialize(b.xi_weng.at_zero_T()))

# Exponents of xi(ks+h) in the minimal factor: the M table on k >= 0, h >= 2.
print("\nM(k, h):", {kh: m for kh, m in b.M.items() if kh[0] >= 0 and kh[1] >= 2})
print("\nLaTeX:", serialize(b.xi_weng.at_zero_T(), "latex"))
