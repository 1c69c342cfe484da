"""Weng zeta functions for a maximal parabolic: omega, F, D, Z and xi^{G/P}.

All objects are exact.  The per-w building blocks are read off three
things: the inversion set Phi_w, the roots ``w^{-1} Delta``, and the pair
``(k, h) = (<lambda_p, alpha^vee>, ht alpha^vee)`` attached to every root.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Mapping

import numpy as np

from .rootsys import RootSystemData, center, check_index
from .symexpr import ExpDatum, XiLinear, XiProduct, ZetaExpression, ZetaTerm, expr_equal
from .weyl import (
    DEFAULT_CAP,
    DiagramAutomorphism,
    WeylGroup,
    diagram_automorphisms,
    enumerate_group,
    longest_element,
    longest_parabolic,
)

Key = tuple[int, int]


class InconsistentConstruction(AssertionError):
    """Two independent constructions of the same object disagree (a bug)."""


class CountTable(Mapping[Key, int]):
    """Finitely supported map (k, h) -> integer; missing keys read as 0."""

    __slots__ = ("_d",)

    def __init__(self, entries: Mapping[Key, int] | None = None):
        self._d = {(int(k), int(h)): int(v) for (k, h), v in (entries or {}).items() if v != 0}

    def __getitem__(self, key: Key) -> int:
        return self._d.get((int(key[0]), int(key[1])), 0)

    def __iter__(self) -> Iterator[Key]:
        return iter(sorted(self._d))

    def __len__(self) -> int:
        return len(self._d)

    def __eq__(self, other) -> bool:
        if isinstance(other, CountTable):
            return self._d == other._d
        return NotImplemented

    def __repr__(self) -> str:
        return f"CountTable({dict(sorted(self._d.items()))})"


class ParabolicData:
    """Vectorized count data over all of W for one (root system, p)."""

    def __init__(self, rs: RootSystemData, p: int, cap: int = DEFAULT_CAP, allow_e8: bool = False):
        check_index(rs, p)
        self.rs = rs
        self.p = p
        self.c = center(rs, p)
        self.group: WeylGroup = enumerate_group(rs, cap=cap, allow_e8=allow_e8)
        cv = rs.coroot_matrix
        self.k_pos = cv[:, p - 1].copy()
        self.h_pos = cv.sum(axis=1)
        self.delta_p = np.array([j for j in range(rs.rank) if j != p - 1], dtype=np.int64)
        # keys of every root, positive and negative
        pairs = sorted(set(zip(self.k_pos.tolist(), self.h_pos.tolist())) | set(zip((-self.k_pos).tolist(), (-self.h_pos).tolist())))
        self.keys: list[Key] = pairs
        self.key_index = {kh: i for i, kh in enumerate(pairs)}
        npos, nk = rs.n_positive, len(pairs)
        self._A_pos = np.zeros((npos, nk), dtype=np.int64)
        self._A_neg = np.zeros((npos, nk), dtype=np.int64)
        for i, (k, h) in enumerate(zip(self.k_pos.tolist(), self.h_pos.tolist())):
            self._A_pos[i, self.key_index[(k, h)]] = 1
            self._A_neg[i, self.key_index[(-k, -h)]] = 1

    @cached_property
    def admissible(self) -> np.ndarray:
        return self.group.admissible_mask(self.p)

    @cached_property
    def admissible_indices(self) -> np.ndarray:
        return np.flatnonzero(self.admissible)

    @cached_property
    def involution(self) -> np.ndarray:
        return self.group.involution_indices(self.p)

    @cached_property
    def n_w(self) -> np.ndarray:
        """(|W|, n_keys): N_{p,w}(k, h), counts over ``w^{-1} Phi_-``."""
        mask = self.group.inversion_masks.astype(np.int64)
        return mask @ self._A_pos + (1 - mask) @ self._A_neg

    @cached_property
    def n_p(self) -> np.ndarray:
        return self._A_pos.sum(axis=0) + self._A_neg.sum(axis=0)

    def column(self, arr: np.ndarray, k: int, h: int) -> np.ndarray:
        i = self.key_index.get((k, h))
        if i is None:
            return np.zeros(arr.shape[:-1], dtype=np.int64)
        return arr[..., i]

    @cached_property
    def m_keys(self) -> list[Key]:
        """Every (k, h) where some count difference N(k, h-1) - N(k, h) can be nonzero."""
        return sorted({(k, h) for k, h in self.keys} | {(k, h + 1) for k, h in self.keys})

    def _diff(self, rows: np.ndarray) -> dict[Key, np.ndarray]:
        nw = self.n_w[rows]
        return {(k, h): self.column(nw, k, h - 1) - self.column(nw, k, h) for k, h in self.m_keys}

    @cached_property
    def m_tables(self) -> tuple[CountTable, CountTable, CountTable, CountTable]:
        """(M over admissible w, M-tilde, M over all w, w0 closed form)."""
        diff_adm = self._diff(self.admissible_indices)
        diff_all = self._diff(np.arange(len(self.group)))
        M, Mt, Mall, M0 = {}, {}, {}, {}
        pos = self.n_pos_table
        for kh, d in diff_adm.items():
            M[kh] = int(d.max())
            Mt[kh] = int(np.maximum(d, 0).max())
            Mall[kh] = int(diff_all[kh].max())
            k, h = kh
            M0[kh] = pos[(k, h - 1)] - pos[(k, h)]
        return CountTable(M), CountTable(Mt), CountTable(Mall), CountTable(M0)

    @cached_property
    def n_pos_table(self) -> CountTable:
        return CountTable(Counter(zip(self.k_pos.tolist(), self.h_pos.tolist())))

    def table(self, row: np.ndarray | None = None) -> CountTable:
        vals = self.n_p if row is None else row
        return CountTable({kh: int(v) for kh, v in zip(self.keys, vals)})

    # ---------------------------------------------------------- term data

    def root_of_column(self, vec: np.ndarray) -> tuple[int, int]:
        return self.rs.index(vec.tolist())

    @cached_property
    def _rho_root2(self) -> np.ndarray:
        return self.rs.root_matrix.sum(axis=1)  # 2 rho in root coordinates

    @cached_property
    def _lambda_root(self) -> tuple[Fraction, ...]:
        return self.rs.to_root_coords(self.rs.fundamental_weight(self.p))

    def exp_datum(self, W: np.ndarray) -> ExpDatum:
        rs = self.rs
        C = rs.cartan_array
        w2rho = C @ (W @ self._rho_root2)
        mu0 = tuple(Fraction(int(x), 2) - 1 for x in w2rho)
        lam = self._lambda_root
        r = rs.rank
        wl = [sum((int(W[i, j]) * lam[j] for j in range(r)), Fraction(0)) for i in range(r)]
        mu1 = tuple(sum((int(C[i, j]) * wl[j] for j in range(r)), Fraction(0)) for i in range(r))
        return ExpDatum(mu0, mu1)

    def term_parts(self, idx: int) -> dict:
        """Raw pieces of the term of W[idx]: linear factors, inversion data, g-roots."""
        W = self.group.mats[idx]
        Winv = np.rint(np.linalg.inv(W.astype(float))).astype(np.int64)
        dp = set(self.delta_p.tolist())
        lin = []
        for j in range(self.rs.rank):
            i, sg = self.root_of_column(Winv[:, j])
            if sg == 1 and i in dp:
                continue  # alpha in Delta_p
            k, h = sg * int(self.k_pos[i]), sg * int(self.h_pos[i])
            lin.append((k, h - 1))
        mask = self.group.inversion_masks[idx]
        inv = np.flatnonzero(mask).tolist()
        rest = np.flatnonzero(~mask).tolist()
        kp, hp = self.k_pos.tolist(), self.h_pos.tolist()
        return {
            "tag": ";".join(",".join(str(int(x)) for x in row) for row in W),
            "W": W,
            "lin": lin,
            "phi_w": [(kp[i], hp[i]) for i in inv if i not in dp],  # Phi_w \ Delta_p
            "phi_w_all": [(kp[i], hp[i]) for i in inv],
            "neg_rest": [(-kp[i], -hp[i]) for i in rest],  # (w^{-1}Phi_-) cap Phi_-
        }

    def omega_term(self, idx: int, parts: dict | None = None) -> ZetaTerm:
        parts = parts or self.term_parts(idx)
        xi = XiProduct(
            [(XiLinear(k, Fraction(h)), 1) for k, h in parts["phi_w"]]
            + [(XiLinear(-k, Fraction(-h)), -1) for k, h in parts["phi_w_all"]]
        )
        return ZetaTerm.build(1, parts["tag"], self.exp_datum(parts["W"]), parts["lin"], xi)

    def z_term_direct(self, idx: int, parts: dict | None = None) -> ZetaTerm:
        """Term of Z_p from ``f_{p,w} g_{p,w}`` with g over ``(w^{-1}Phi_-) minus Delta_p``."""
        parts = parts or self.term_parts(idx)
        g = XiProduct.of(parts["phi_w"] + parts["neg_rest"])
        return ZetaTerm.build(1, parts["tag"], self.exp_datum(parts["W"]), parts["lin"], g)

    def h_from_counts(self, idx: int) -> XiProduct:
        """xi-content of the omega term from the N_{p,w} table."""
        N = self.table(self.n_w[idx])
        ks = {k for k, _ in N} | {k for k, _ in self.m_keys}
        fac = {XiLinear(1, Fraction(1)): N[(1, 1)]}
        for k in ks:
            if k < 0:
                continue
            hs = {h for kk, h in self.m_keys if kk == k}
            for h in hs:
                if h >= 2:
                    x = XiLinear(k, Fraction(h))
                    fac[x] = fac.get(x, 0) + N[(k, h)] - N[(k, h - 1)]
        return XiProduct(fac)


@dataclass(frozen=True)
class ZetaBundle:
    rs: RootSystemData
    p: int
    c: int
    omega: ZetaExpression
    F: XiProduct
    D: XiProduct
    Z: ZetaExpression
    xi_weng: ZetaExpression
    minimal_factor: XiProduct
    M: CountTable
    Mtilde: CountTable
    data: ParabolicData = field(repr=False, compare=False)

    @property
    def name(self) -> str:
        return f"{self.rs.name}, p={self.p}"


_BUNDLES: dict[tuple, ZetaBundle] = {}
_DATA: dict[tuple, ParabolicData] = {}


def parabolic_data(rs: RootSystemData, p: int, cap: int = DEFAULT_CAP, allow_e8: bool = False) -> ParabolicData:
    key = (rs.cartan, p)
    if key not in _DATA:
        _DATA[key] = ParabolicData(rs, p, cap=cap, allow_e8=allow_e8)
    return _DATA[key]


def omega_gp(rs: RootSystemData, p: int, cap: int = DEFAULT_CAP) -> ZetaExpression:
    """omega^{G/P}(s; T): one term per admissible w."""
    d = parabolic_data(rs, p, cap=cap)
    return ZetaExpression(tuple(d.omega_term(int(i)) for i in d.admissible_indices))


def n_table(rs: RootSystemData, p: int, w=None) -> CountTable:
    """N_p (w omitted) or N_{p,w}."""
    d = parabolic_data(rs, p)
    if w is None:
        return d.table()
    return d.table(d.n_w[d.group.index(w)])


def m_table(rs: RootSystemData, p: int) -> tuple[CountTable, CountTable]:
    M, Mt, _, _ = parabolic_data(rs, p).m_tables
    return M, Mt


def m_table_report(rs: RootSystemData, p: int) -> dict[str, CountTable]:
    """M over admissible w, over all w, and the w0 closed form, plus M-tilde."""
    M, Mt, Mall, M0 = parabolic_data(rs, p).m_tables
    return {"admissible": M, "tilde": Mt, "all_w": Mall, "w0_closed_form": M0}


def _product_over(table: Mapping[Key, int], fn) -> XiProduct:
    """prod over k >= 0, h >= 2 of xi(k s + h)^fn(k, h)."""
    return XiProduct((XiLinear(k, Fraction(h)), fn(k, h)) for k, h in table if k >= 0 and h >= 2)


def f_factor(rs: RootSystemData, p: int) -> XiProduct:
    """F_p = prod over negative roots of xi(<lambda_p, alpha^vee> s + ht alpha^vee)."""
    d = parabolic_data(rs, p)
    return XiProduct.of(zip((-d.k_pos).tolist(), (-d.h_pos).tolist()))


def d_factor(rs: RootSystemData, p: int) -> XiProduct:
    d = parabolic_data(rs, p)
    _, Mt, _, _ = d.m_tables
    N = d.table()
    keys = set(d.m_keys)
    return XiProduct(
        (XiLinear(k, Fraction(h)), N[(k, h - 1)] - Mt[(k, h)]) for k, h in keys if k >= 0 and h >= 2
    )


def minimal_factor(rs: RootSystemData, p: int) -> XiProduct:
    M, _ = m_table(rs, p)
    return _product_over(M, lambda k, h: M[(k, h)])


def z_and_weng(rs: RootSystemData, p: int, cap: int = DEFAULT_CAP) -> ZetaBundle:
    """Build omega, F, D, Z (two ways), xi^{G/P} (two ways); raise on disagreement."""
    key = (rs.cartan, p)
    if key in _BUNDLES:
        return _BUNDLES[key]
    d = parabolic_data(rs, p, cap=cap)
    F = f_factor(rs, p)
    D = d_factor(rs, p)
    M, Mt = m_table(rs, p)
    minimal = _product_over(M, lambda k, h: M[(k, h)])
    omega_terms, z_direct = [], []
    for i in d.admissible_indices.tolist():
        parts = d.term_parts(i)
        omega_terms.append(d.omega_term(i, parts))
        z_direct.append(d.z_term_direct(i, parts))
    omega = ZetaExpression(tuple(omega_terms))
    Z = omega.mul_xi(F)
    if not expr_equal(Z, ZetaExpression(tuple(z_direct))):
        raise InconsistentConstruction(f"{rs.name}, p={p}: F*omega differs from the direct Z construction")
    xi_weng = Z.div_xi(D)
    if not expr_equal(xi_weng, omega.mul_xi(minimal)):
        raise InconsistentConstruction(f"{rs.name}, p={p}: Z/D differs from omega times the minimal factor")
    bundle = ZetaBundle(rs, p, d.c, omega, F, D, Z, xi_weng, minimal, M, Mt, d)
    _BUNDLES[key] = bundle
    return bundle


def h_term(rs: RootSystemData, p: int, w) -> dict:
    """xi-content of the omega term of an admissible w, from counts and directly."""
    d = parabolic_data(rs, p)
    idx = d.group.index(w)
    if not d.admissible[idx]:
        raise ValueError("w is not admissible for this p")
    counts = d.h_from_counts(idx)
    direct = d.omega_term(idx).xi
    return {"from_counts": counts, "direct": direct, "equal": counts == direct}


def normalize(bundle: ZetaBundle) -> ZetaExpression:
    """xi^{G/P}(s) = xi^{G/P}_o(s - (c_p + 1)/2; 0)."""
    return bundle.xi_weng.at_zero_T().shift(Fraction(-(bundle.c + 1), 2))


def corrupt_d(bundle: ZetaBundle) -> ZetaBundle:
    """Test hook: multiply D by one extra factor that breaks its reflection symmetry."""
    extra = XiProduct({XiLinear(1, Fraction(bundle.c + 2)): 1})
    return replace(bundle, D=bundle.D * extra)


# ---------------------------------------------------------------- FE check


@dataclass
class CheckResult:
    name: str
    group: str
    passed: bool
    detail: str = ""
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {"name": self.name, "group": self.group, "passed": self.passed, "detail": self.detail, "witness": self.witness}


def _first_failure(pairs) -> dict | None:
    for tag, ok, extra in pairs:
        if not ok:
            return {"w": tag, **extra}
    return None


def _automorphisms_of(rs: RootSystemData) -> tuple[list[DiagramAutomorphism], DiagramAutomorphism]:
    return diagram_automorphisms(rs)


def verify_fe_symbolic(bundle: ZetaBundle, bundles: Mapping[int, ZetaBundle] | None = None) -> list[CheckResult]:
    """Term-bijection checks of both functional equations, plus D's symmetries.

    ``bundles`` maps other parabolic indices q to their bundles; missing
    ones are built on demand.
    """
    rs, p, c, d = bundle.rs, bundle.p, bundle.c, bundle.data
    grp = f"{rs.name} p={p}"
    autos, varpi0 = _automorphisms_of(rs)
    perm0 = varpi0.perm
    results: list[CheckResult] = []

    tags = [";".join(",".join(str(int(x)) for x in row) for row in d.group.mats[i]) for i in range(len(d.group))]
    z_by_tag = bundle.Z.by_tag()
    x_by_tag = bundle.xi_weng.by_tag()
    o_by_tag = bundle.omega.by_tag()

    # (i) s -> -c - s, T -> varpi0 T exchanges w and w0 w w_p
    rows = []
    for i in d.admissible_indices.tolist():
        j = int(d.involution[i])
        tw, tj = tags[i], tags[j]
        if tj not in z_by_tag:
            rows.append((tw, False, {"reason": "involution image not admissible", "image": tj}))
            continue
        zi, zj = z_by_tag[tw], z_by_tag[tj]
        ref = zi.reflect(c, perm0)
        f_ok = ref.den_lin == zj.den_lin and ref.coeff == zj.coeff
        g_ok = ref.xi == zj.xi
        e_ok = ref.expd == zj.expd
        x_ok = x_by_tag[tw].reflect(c, perm0).value_key == x_by_tag[tj].value_key
        rows.append((tw, f_ok and g_ok and e_ok and x_ok, {"image": tj, "f": f_ok, "g": g_ok, "exp": e_ok, "xi_weng": x_ok}))
    wit = _first_failure(rows)
    results.append(CheckResult("fe:reflection_bijection", grp, wit is None, f"{len(rows)} admissible terms paired by w -> w0 w w_p", wit))

    Zr = bundle.Z.reflect(c, perm0)
    results.append(CheckResult("fe:Z(-c-s; varpi0 T) = Z(s; T)", grp, expr_equal(Zr, bundle.Z)))
    Xr = bundle.xi_weng.reflect(c, perm0)
    results.append(CheckResult("fe:xi(-c-s; varpi0 T) = xi(s; T)", grp, expr_equal(Xr, bundle.xi_weng)))

    # (ii) D symmetry
    results.append(CheckResult("lm:DD reflect(D, c) = D", grp, bundle.D.reflect(c) == bundle.D, "", None if bundle.D.reflect(c) == bundle.D else {"D": repr(bundle.D), "reflected": repr(bundle.D.reflect(c))}))

    # (iii) transport by diagram automorphisms
    bundles = dict(bundles or {})
    for varpi in autos:
        if varpi.is_identity:
            continue
        q = varpi(p - 1) + 1
        bq = bundles.get(q) or z_and_weng(rs, q)
        bundles[q] = bq
        dq = bq.data
        conj = d.group.conjugation_indices(varpi.inverse)  # varpi^{-1} w varpi
        zq = bq.Z.by_tag()
        xq = bq.xi_weng.by_tag()
        rows = []
        for i in dq.admissible_indices.tolist():
            tw = tags[i]
            j = int(conj[i])
            tj = tags[j]
            if tj not in z_by_tag:
                rows.append((tw, False, {"reason": "conjugate not admissible for p", "image": tj}))
                continue
            a = zq[tw].transport(varpi.perm).value_key == z_by_tag[tj].value_key
            b = xq[tw].transport(varpi.perm).value_key == x_by_tag[tj].value_key
            o = o_by_tag[tj].value_key == bq.omega.by_tag()[tw].transport(varpi.perm).value_key
            rows.append((tw, a and b and o, {"image": tj, "Z": a, "xi_weng": b, "omega": o}))
        ok_count = len(rows) == len(bundle.Z)
        wit = _first_failure(rows)
        if wit is None and not ok_count:
            wit = {"reason": "admissible sets differ in size", "p": len(bundle.Z), "q": len(rows)}
        results.append(CheckResult(f"fe:automorphism {varpi.perm} (q={q})", grp, wit is None, f"{len(rows)} terms", wit))
        dd = bundle.D == bq.D
        results.append(CheckResult(f"lm:DD D_p = D_q (q={q})", grp, dd, "", None if dd else {"q": q}))
    return results
