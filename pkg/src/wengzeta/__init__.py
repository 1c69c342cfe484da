"""Exact Weng zeta functions xi^{G/P} for maximal parabolics of Chevalley groups over Q.

Typical use::

    from wengzeta import build_root_system, z_and_weng, serialize
    rs = build_root_system("A", 2)
    bundle = z_and_weng(rs, 1)
    print(serialize(bundle.xi_weng))
"""
from __future__ import annotations

from .lemmas import lemma_suite
from .numeric import evaluate, eval_expression, numeric_fe, residue_oracle, scan_zeros
from .rootsys import RootSystemData, RootSystemError, build_root_system, center, degrees_of_parabolic
from .special import PoleError, xi, zeta
from .symexpr import XiLinear, XiProduct, ZetaExpression, ZetaTerm, expr_equal, parse_json, serialize
from .weyl import GroupTooLarge, WeylElement, diagram_automorphisms, enumerate_group, longest_element
from .zeta import ZetaBundle, d_factor, f_factor, minimal_factor, normalize, omega_gp, verify_fe_symbolic, z_and_weng

__all__ = [
    "GroupTooLarge",
    "PoleError",
    "RootSystemData",
    "RootSystemError",
    "WeylElement",
    "XiLinear",
    "XiProduct",
    "ZetaBundle",
    "ZetaExpression",
    "ZetaTerm",
    "build_root_system",
    "center",
    "d_factor",
    "degrees_of_parabolic",
    "diagram_automorphisms",
    "enumerate_group",
    "eval_expression",
    "evaluate",
    "expr_equal",
    "f_factor",
    "lemma_suite",
    "longest_element",
    "minimal_factor",
    "normalize",
    "numeric_fe",
    "omega_gp",
    "parse_json",
    "residue_oracle",
    "scan_zeros",
    "serialize",
    "verify_fe_symbolic",
    "xi",
    "z_and_weng",
    "zeta",
]
