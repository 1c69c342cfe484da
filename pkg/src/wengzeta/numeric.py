"""Numerical evaluation of zeta expressions, the residue oracle, and a zero scan."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import gmpy2
import mpmath
import numpy as np

from .rootsys import RootSystemData, check_index
from .special import PoleError, log_xi
from .symexpr import ZetaExpression
from .weyl import enumerate_group
from .zeta import ZetaBundle, normalize

LINEAR_POLE_RADIUS = 1e-6
XI_REL_ERROR = 1e-13


class PoleProximity(ArithmeticError):
    """Sample point too close to a pole of some factor."""

    def __init__(self, factor: str, distance: float):
        self.factor = factor
        self.distance = distance
        super().__init__(f"evaluation point within {distance:.3g} of a pole of {factor}")


@dataclass(frozen=True)
class EvalReport:
    value: complex
    est_error: float
    pole_proximity: tuple[str, float] | None = None


class _Compiled:
    """Exponent matrices of an expression over its distinct factors."""

    def __init__(self, expr: ZetaExpression):
        xi_keys = sorted({x for t in expr.terms for x in t.xi})
        lin_keys = sorted({f for t in expr.terms for f in t.den_lin})
        xi_ix = {x: i for i, x in enumerate(xi_keys)}
        lin_ix = {f: i for i, f in enumerate(lin_keys)}
        n = len(expr.terms)
        self.E = np.zeros((n, len(xi_keys)))
        self.L = np.zeros((n, len(lin_keys)))
        for t_i, t in enumerate(expr.terms):
            for x, e in t.xi.items_sorted:
                self.E[t_i, xi_ix[x]] += e
            for f in t.den_lin:
                self.L[t_i, lin_ix[f]] += 1
        self.coeff = np.array([float(t.coeff) for t in expr.terms])
        self.mu0 = np.array([[float(v) for v in t.expd.mu0] for t in expr.terms]).reshape(n, -1)
        self.mu1 = np.array([[float(v) for v in t.expd.mu1] for t in expr.terms]).reshape(n, -1)
        self.xk = np.array([x.k for x in xi_keys], dtype=float)
        self.xh = np.array([float(x.h) for x in xi_keys])
        self.lk = np.array([f.k for f in lin_keys], dtype=float)
        self.lb = np.array([float(f.b) for f in lin_keys])
        self.xi_keys = xi_keys
        self.lin_keys = lin_keys
        # exact data for the extended-precision path
        self.coeff_frac = [t.coeff for t in expr.terms]
        self.mu0_frac = [t.expd.mu0 for t in expr.terms]
        self.mu1_frac = [t.expd.mu1 for t in expr.terms]
        self.xk_int = [x.k for x in xi_keys]
        self.xh_frac = [Fraction(x.h) for x in xi_keys]
        self.lk_int = [f.k for f in lin_keys]
        self.lb_frac = [Fraction(f.b) for f in lin_keys]
        self.E_nz = [np.flatnonzero(row).tolist() for row in self.E]
        self.L_nz = [np.flatnonzero(row).tolist() for row in self.L]

    def terms(self, s: np.ndarray, T: np.ndarray | None) -> np.ndarray:
        """(n_terms, n_points) complex values of the individual terms."""
        n = len(self.coeff)
        if n == 0:
            return np.zeros((0, len(s)), dtype=complex)
        lin = np.outer(self.lk, s) + self.lb[:, None]
        if lin.size:
            dist = np.abs(lin)
            if (dist < LINEAR_POLE_RADIUS).any():
                i = int(np.argwhere(dist < LINEAR_POLE_RADIUS)[0][0])
                f = self.lin_keys[i]
                raise PoleProximity(f"linear factor ({f.k}s+{f.b})", float(dist.min()))
        args = np.outer(self.xk, s) + self.xh[:, None]
        if args.size:
            try:
                lx = log_xi(args.ravel()).reshape(args.shape)
            except PoleError as exc:
                raise PoleProximity(f"xi argument at {exc.where}", 0.0) from exc
        else:
            lx = np.zeros((0, len(s)), dtype=complex)
        logs = self.E @ lx
        if lin.size:
            logs = logs - self.L @ np.log(lin.astype(complex))
        if T is not None and np.any(T):
            logs = logs + (self.mu0 @ T)[:, None] + np.outer(self.mu1 @ T, s)
        return self.coeff[:, None] * np.exp(logs)

    def error_weights(self) -> np.ndarray:
        return XI_REL_ERROR * (np.abs(self.E).sum(axis=1) + 1) + 1e-15 * (self.L.sum(axis=1) + 1)


_CACHE: dict[int, tuple[ZetaExpression, _Compiled]] = {}


def _compiled(expr: ZetaExpression) -> _Compiled:
    hit = _CACHE.get(id(expr))
    if hit is not None and hit[0] is expr:
        return hit[1]
    comp = _Compiled(expr)
    _CACHE[id(expr)] = (expr, comp)
    return comp


def evaluate(expr: ZetaExpression, s, T: Sequence[float] | None = None) -> np.ndarray:
    """Vectorized value of ``expr`` at the points ``s``; T in simple-coroot coordinates."""
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    Tv = None if T is None else np.asarray(T, dtype=float)
    return _compiled(expr).terms(s, Tv).sum(axis=0)


def eval_expression(expr: ZetaExpression, s: complex, T: Sequence[float] | None = None) -> EvalReport:
    comp = _compiled(expr)
    Tv = None if T is None else np.asarray(T, dtype=float)
    vals = comp.terms(np.array([complex(s)]), Tv)[:, 0]
    value = complex(vals.sum())
    if not np.isfinite(value):
        raise PoleProximity("non-finite value", 0.0)
    err = float(np.abs(vals) @ comp.error_weights()) if len(vals) else 0.0
    near = None
    if len(comp.lk):
        d = np.abs(comp.lk * s + comp.lb)
        i = int(np.argmin(d))
        if d[i] < 1e-3:
            f = comp.lin_keys[i]
            near = (f"linear factor ({f.k}s+{f.b})", float(d[i]))
    return EvalReport(value, err, near)


def _mp_xi(z):
    if z.real < 0.5:
        z = 1 - z
    return mpmath.pi ** (-z / 2) * mpmath.gamma(z / 2) * mpmath.zeta(z)


def _to_gmp(z) -> "gmpy2.mpc":
    return gmpy2.mpc(gmpy2.mpfr(mpmath.nstr(z.real, mpmath.mp.dps + 5)), gmpy2.mpfr(mpmath.nstr(z.imag, mpmath.mp.dps + 5)))


def _sum_mp(comp: _Compiled, s: complex, T: np.ndarray | None, dps: int) -> complex:
    """Sum of the terms at one point with ``dps`` digits (mpmath for xi, gmpy2 for the products)."""
    with mpmath.workdps(dps), gmpy2.context(gmpy2.get_context(), precision=int(dps * 3.33) + 16):
        sm = mpmath.mpc(s)
        xv = [_to_gmp(_mp_xi(k * sm + _frac(h))) for k, h in zip(comp.xk_int, comp.xh_frac)]
        lv = [_to_gmp(k * sm + _frac(b)) for k, b in zip(comp.lk_int, comp.lb_frac)]
        xpow: dict[tuple[int, int], object] = {}
        lpow: dict[tuple[int, int], object] = {}
        sg = gmpy2.mpc(s)
        out = []
        for i in range(len(comp.coeff)):
            q = comp.coeff_frac[i]
            v = gmpy2.mpc(gmpy2.mpq(q.numerator, q.denominator))
            for j in comp.E_nz[i]:
                e = int(comp.E[i, j])
                f = xpow.get((j, e))
                if f is None:
                    f = xpow[(j, e)] = xv[j] ** e
                v *= f
            for j in comp.L_nz[i]:
                e = int(comp.L[i, j])
                f = lpow.get((j, e))
                if f is None:
                    f = lpow[(j, e)] = lv[j] ** e
                v /= f
            if T is not None and np.any(T):
                a = sum((gmpy2.mpq(m.numerator, m.denominator) * gmpy2.mpfr(float(t)) for m, t in zip(comp.mu0_frac[i], T)), gmpy2.mpfr(0))
                b = sum((gmpy2.mpq(m.numerator, m.denominator) * gmpy2.mpfr(float(t)) for m, t in zip(comp.mu1_frac[i], T)), gmpy2.mpfr(0))
                v *= gmpy2.exp(a + b * sg)
            out.append(v)
        total = gmpy2.mpc(0)
        for v in out:
            total += v
        return complex(total)


def _frac(x) -> "mpmath.mpf":
    return mpmath.mpf(x.numerator) / x.denominator


def evaluate_mp(expr: ZetaExpression, s: complex, T: Sequence[float] | None = None, dps: int = 40) -> complex:
    """Value of ``expr`` at one point with ``dps`` significant digits of working precision."""
    comp = _compiled(expr)
    Tv = None if T is None else np.asarray(T, dtype=float)
    return _sum_mp(comp, complex(s), Tv, dps)


def evaluate_adaptive(expr: ZetaExpression, s: complex, T: Sequence[float] | None = None, rtol: float = 1e-10) -> complex:
    """Float evaluation, redone in extended precision when cancellation makes it unreliable."""
    rep = eval_expression(expr, s, T)
    if rep.value != 0 and rep.est_error <= rtol * abs(rep.value):
        return rep.value
    cond = rep.est_error / max(abs(rep.value), 1e-300) / XI_REL_ERROR
    dps = int(30 + max(0.0, np.log10(max(cond, 1.0))))
    return evaluate_mp(expr, s, T, dps)


# ---------------------------------------------------------------- residues


class _Period:
    """The full Weyl-group period as a vectorized function of (s_1, ..., s_r)."""

    def __init__(self, rs: RootSystemData, T: Sequence[float] | None):
        group = enumerate_group(rs)
        C = rs.cartan_array.astype(float)
        Cinv = np.linalg.inv(C)
        self.A = np.einsum("ij,njk,kl->nil", C, group.mats.astype(float), Cinv)  # w on weight coords
        self.inv = group.inversion_masks
        self.coroots = rs.coroot_matrix.astype(float)
        self.T = None if T is None else np.asarray(T, dtype=float)
        self.r = rs.rank

    def __call__(self, svec: np.ndarray) -> np.ndarray:
        """svec: (r, n_points) complex; returns the period at lambda = rho + sum s_k lambda_k."""
        lam = 1 + svec  # weight coordinates of lambda
        pair = self.coroots @ lam  # <lambda, alpha^vee> for positive alpha
        lx = log_xi(pair.ravel()).reshape(pair.shape)
        lx1 = log_xi((pair + 1).ravel()).reshape(pair.shape)
        ratio = lx - lx1
        total = np.zeros(svec.shape[1], dtype=complex)
        for n in range(len(self.A)):
            wl = self.A[n] @ lam - 1  # <w lambda - rho, alpha_i^vee>
            logs = -np.log(wl).sum(axis=0)
            if self.inv[n].any():
                logs = logs + ratio[self.inv[n]].sum(axis=0)
            if self.T is not None and np.any(self.T):
                logs = logs + self.T @ wl
            total += np.exp(logs)
        return total


def _iterated_residue(f, r: int, p: int, s: complex, order: Sequence[int], nodes: int, radius: float) -> complex:
    m = len(order)
    if m == 0:
        sv = np.zeros((r, 1), dtype=complex)
        sv[p - 1] = s
        return complex(f(sv)[0])
    theta = 2 * np.pi * np.arange(nodes) / nodes
    unit = np.exp(1j * theta)
    grids = np.meshgrid(*([unit] * m), indexing="ij")
    sv = np.zeros((r,) + grids[0].shape, dtype=complex)
    sv[p - 1] = s
    weight = np.ones(grids[0].shape, dtype=complex)
    for depth, k in enumerate(order):
        rad = radius / 10**depth
        sv[k] = rad * grids[depth]
        # (1 / 2 pi i) ds = rad * e^{i theta} dtheta / 2 pi -> trapezoid weight rad e^{i theta} / nodes
        weight = weight * rad * grids[depth] / nodes
    vals = f(sv.reshape(r, -1)).reshape(weight.shape)
    return complex((vals * weight).sum())


def residue_oracle(
    rs: RootSystemData,
    p: int,
    s: complex,
    T: Sequence[float] | None = None,
    order: Sequence[int] | None = None,
    nodes: int = 64,
    radius: float = 1e-2,
    tol: float = 1e-8,
    max_nodes: int = 512,
) -> complex:
    """omega^{G/P}(s; T) by iterated numerical residues of the full period.

    ``order`` lists the 1-based simple roots of Delta_p from outermost to
    innermost residue (default: increasing index).  Circles are nested
    with radius shrinking by 10 per level; the node count doubles until
    two successive runs agree to ``tol``.
    """
    check_index(rs, p)
    if rs.rank > 3:
        raise ValueError("residue oracle limited to rank <= 3")
    others = [j for j in range(1, rs.rank + 1) if j != p]
    order = list(order) if order is not None else others
    if sorted(order) != others:
        raise ValueError(f"order must be a permutation of {others}")
    f = _Period(rs, T)
    idx = [j - 1 for j in order]
    try:
        prev = _iterated_residue(f, rs.rank, p, s, idx, nodes, radius)
        n = nodes
        while len(idx):
            n *= 2
            cur = _iterated_residue(f, rs.rank, p, s, idx, n, radius)
            if abs(cur - prev) <= tol * max(abs(cur), 1e-300):
                return cur
            if n >= max_nodes:
                raise ArithmeticError(f"residue quadrature did not settle at {n} nodes; try another sample point")
            prev = cur
        return prev
    except (PoleError, FloatingPointError) as exc:
        raise PoleProximity(f"period at s={s} ({exc}); choose a different sample point", 0.0) from exc


def generic_points(count: int, seed: int = 20100703, scale: float = 2.0) -> list[complex]:
    """Deterministic off-axis sample points with |Im s| >= 0.1."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        z = complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))
        if abs(z.imag) >= 0.1 and abs(z) <= 5:
            out.append(z)
    return out


# ---------------------------------------------------------------- zero scan


@dataclass(frozen=True)
class ZeroBracket:
    t_lo: float
    t_hi: float
    t_mid: float
    abs_value: float


@dataclass
class ScanResult:
    brackets: list[ZeroBracket]
    max_imag_ratio: float
    skipped: list[tuple[float, str]]
    offline_min_ratio: float
    offline_min_point: complex | None


def scan_zeros(
    bundle: ZetaBundle,
    t_max: float,
    step: float,
    t_min: float | None = None,
    offline_sigmas: Sequence[float] = (0.6, 0.75, 1.0, 1.5, 2.0),
    bisection_tol: float = 1e-10,
) -> ScanResult:
    """Sign changes of the normalized zeta on Re s = 1/2, refined by bisection."""
    if not step > 0:
        raise ValueError("step must be positive")
    if not t_max > 0:
        raise ValueError("t_max must be positive")
    if t_max > 50:
        raise ValueError("t_max is limited to 50")
    expr = normalize(bundle)
    t0 = step if t_min is None else t_min
    ts = np.arange(t0, t_max + step / 2, step)
    vals = np.full(len(ts), np.nan, dtype=complex)
    skipped = []
    for i, t in enumerate(ts):
        try:
            vals[i] = evaluate(expr, 0.5 + 1j * t)[0]
        except PoleProximity as exc:
            skipped.append((float(t), str(exc)))
    good = np.isfinite(vals)
    ratio = float(np.max(np.abs(vals[good].imag) / np.maximum(np.abs(vals[good]), 1e-300))) if good.any() else 0.0

    def f(t: float) -> float:
        return float(evaluate(expr, 0.5 + 1j * t)[0].real)

    brackets = []
    re = vals.real
    for i in range(len(ts) - 1):
        if not (good[i] and good[i + 1]):
            continue
        a, b = ts[i], ts[i + 1]
        fa, fb = re[i], re[i + 1]
        if fa == 0:
            brackets.append(ZeroBracket(a, a, a, 0.0))
            continue
        if fa * fb < 0:
            while b - a > bisection_tol:
                m = 0.5 * (a + b)
                fm = f(m)
                if fa * fm <= 0:
                    b = m
                else:
                    a, fa = m, fm
            mid = 0.5 * (a + b)
            brackets.append(ZeroBracket(float(a), float(b), float(mid), abs(complex(evaluate(expr, 0.5 + 1j * mid)[0]))))

    # off-line corroboration: |f(sigma + it)| relative to max_sigma' |f(sigma' + it)|
    grid_t = np.arange(t0, t_max + step / 2, max(step, 0.25))
    best, where = np.inf, None
    sig = np.asarray(offline_sigmas, dtype=float)
    for t in grid_t:
        try:
            v = np.abs(evaluate(expr, sig + 1j * t))
        except PoleProximity:
            continue
        scale = v.max()
        if scale == 0:
            continue
        j = int(np.argmin(v))
        if v[j] / scale < best:
            best, where = float(v[j] / scale), complex(sig[j] + 1j * t)
    return ScanResult(brackets, ratio, skipped, best, where)


# ---------------------------------------------------------------- numeric FE


@dataclass(frozen=True)
class FEReport:
    worst: float
    worst_point: complex | None
    points: int
    rejected: int


def _near_pole(comp: _Compiled, s: complex, margin: float) -> bool:
    if len(comp.lk) and np.min(np.abs(comp.lk * s + comp.lb)) < margin:
        return True
    if len(comp.xk):
        a = comp.xk * s + comp.xh
        if np.min(np.minimum(np.abs(a), np.abs(a - 1))) < margin:
            return True
    return False


def numeric_fe(
    expr: ZetaExpression,
    c: int,
    varpi0: Sequence[int] | None = None,
    count: int = 20,
    seed: int = 20100703,
    radius: float = 5.0,
    T: Sequence[float] | None = None,
    margin: float = 1e-2,
    tol: float = 1e-8,
) -> FEReport:
    """Max relative |Z(-c-s; varpi0 T) - Z(s; T)| / |Z(s; T)| over seeded points, |s| <= radius.

    Points within ``margin`` of a pole of any factor (on either side of the
    equation) are rejected and redrawn.
    """
    comp = _compiled(expr)
    rng = np.random.default_rng(seed)
    Tv = None if T is None else np.asarray(T, dtype=float)
    Tr = None
    if Tv is not None:
        perm = list(range(len(Tv))) if varpi0 is None else list(varpi0)
        Tr = np.zeros_like(Tv)
        for i, j in enumerate(perm):
            Tr[j] = Tv[i]
    pts: list[complex] = []
    rejected = 0
    while len(pts) < count:
        r = radius * np.sqrt(rng.uniform())
        s = complex(r * np.exp(2j * np.pi * rng.uniform()))
        if _near_pole(comp, s, margin) or _near_pole(comp, -c - s, margin):
            rejected += 1
            continue
        pts.append(s)
    rel = []
    for s in pts:
        lhs = evaluate_adaptive(expr, -c - s, Tr, rtol=1e-3 * tol)
        rhs = evaluate_adaptive(expr, s, Tv, rtol=1e-3 * tol)
        rel.append(abs(lhs - rhs) / abs(rhs))
    i = int(np.argmax(rel))
    return FEReport(float(rel[i]), pts[i], count, rejected)
