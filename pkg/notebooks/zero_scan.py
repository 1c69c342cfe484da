"""Zeros of the normalized xi^{G/P} on the line Re s = 1/2 for A1 and A2.

Exploratory only: a finite scan corroborates, it proves nothing.
Run: python3 notebooks/zero_scan.py
"""
from __future__ import annotations

from wengzeta import build_root_system, scan_zeros, z_and_weng

for kind, rank in [("A", 1), ("A", 2)]:
    b = z_and_weng(build_root_system(kind, rank), 1)
    res = scan_zeros(b, t_max=30.0, step=0.05)
    print(f"{b.rs.name} p=1")
    for z in res.brackets:
        print(f"  zero near t = {z.t_mid:.8f}  (|value| {z.abs_value:.1e})")
    print(f"  realness on the line: max |Im|/|value| = {res.max_imag_ratio:.1e}")
    print(f"  off-line grid: min |value| / row max = {res.offline_min_ratio:.3f} at {res.offline_min_point}")
