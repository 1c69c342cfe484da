"""``weng-zeta`` command line: info, zeta, verify, scan.

Exit codes: 0 success, 1 verification failure, 2 usage or size-cap error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .lemmas import lemma_suite
from .numeric import PoleProximity, generic_points, numeric_fe, residue_oracle, scan_zeros, evaluate
from .rootsys import RootSystemData, RootSystemError, build_root_system, degrees_of_parabolic
from .symexpr import SCHEMA_VERSION, expression_to_dict, serialize, xi_product_to_list
from .weyl import DEFAULT_CAP, GroupTooLarge, diagram_automorphisms, enumerate_group, orbit
from .zeta import CheckResult, ZetaBundle, corrupt_d, normalize, z_and_weng

ALL_TYPES: tuple[tuple[str, int], ...] = (
    tuple(("A", r) for r in range(1, 8))
    + tuple(("B", r) for r in range(2, 7))
    + tuple(("C", r) for r in range(2, 7))
    + tuple(("D", r) for r in range(4, 7))
    + (("E", 6), ("F", 4), ("G", 2))
)

ORACLE_RTOL = 1e-6
ORACLE_MAX_RANK = 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    groups: list[tuple[str, int]]
    p: int | None  # None means all
    format: str = "text"
    tolerance: float = 1e-8
    seed: int = 20100703
    t_max: float = 30.0
    step: float = 0.05
    max_rank: int = 8
    allow_e8: bool = False
    corrupt_d: bool = False
    fe_points: int = 5


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="weng-zeta", description="Exact Weng zeta functions for maximal parabolics of Chevalley groups over Q.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("info", "center c_p, |W|, admissible count, degrees of W_p"),
        ("zeta", "print omega, F, D, Z and the Weng zeta (raw and normalized)"),
        ("verify", "run the lemma suite, symbolic and numeric functional equations, residue oracle"),
        ("scan", "bracket zeros of the normalized zeta on Re s = 1/2"),
    ):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("kind", nargs="?", help="Dynkin type A..G")
        sp.add_argument("rank", nargs="?", type=int, help="rank")
        sp.add_argument("--p", default="all", help="parabolic index (1-based, Bourbaki) or 'all' (default)")
        sp.add_argument("--format", choices=("text", "latex", "json"), default="text")
        sp.add_argument("--tolerance", type=float, default=1e-8, help="relative tolerance of the numeric FE check")
        sp.add_argument("--t-max", type=float, default=30.0, dest="t_max")
        sp.add_argument("--step", type=float, default=0.05)
        sp.add_argument("--seed", type=int, default=20100703)
        sp.add_argument("--max-rank", type=int, default=8, dest="max_rank")
        sp.add_argument("--allow-e8", action="store_true", dest="allow_e8")
        sp.add_argument("--all-types", action="store_true", dest="all_types", help="iterate the standard list of types")
        sp.add_argument("--fe-points", type=int, default=5, dest="fe_points", help=argparse.SUPPRESS)
        sp.add_argument("--corrupt-d", action="store_true", dest="corrupt_d", help=argparse.SUPPRESS)
    return ap


def _config(ns: argparse.Namespace) -> RunConfig:
    if ns.all_types:
        if ns.kind is not None:
            raise UsageError("--all-types takes no KIND RANK")
        groups = [g for g in ALL_TYPES if g[1] <= ns.max_rank]
    else:
        if ns.kind is None or ns.rank is None:
            raise UsageError("KIND and RANK are required (or --all-types)")
        kind = ns.kind.upper()
        if ns.rank > ns.max_rank:
            raise UsageError(f"rank {ns.rank} exceeds --max-rank {ns.max_rank}")
        if kind == "E" and ns.rank == 8 and not ns.allow_e8:
            raise UsageError("E8 is refused without --allow-e8 (|W| = 696729600)")
        groups = [(kind, ns.rank)]
    if ns.p == "all":
        p = None
    else:
        try:
            p = int(ns.p)
        except ValueError:
            raise UsageError(f"--p must be an integer or 'all', got {ns.p!r}") from None
    if not ns.tolerance > 0:
        raise UsageError("--tolerance must be positive")
    if ns.command == "scan":
        if not ns.step > 0:
            raise UsageError("--step must be positive")
        if not 0 < ns.t_max <= 50:
            raise UsageError("--t-max must lie in (0, 50]")
    return RunConfig(groups, p, ns.format, ns.tolerance, ns.seed, ns.t_max, ns.step, ns.max_rank, ns.allow_e8, ns.corrupt_d, ns.fe_points)


def _root_system(kind: str, rank: int) -> RootSystemData:
    try:
        return build_root_system(kind, rank)
    except RootSystemError as exc:
        raise UsageError(str(exc)) from None


def _ps(rs: RootSystemData, p: int | None) -> list[int]:
    if p is None:
        return list(range(1, rs.rank + 1))
    if not 1 <= p <= rs.rank:
        raise UsageError(f"p must lie in 1..{rs.rank} for {rs.name}")
    return [p]


def _bundle(rs: RootSystemData, p: int, cfg: RunConfig) -> ZetaBundle:
    b = z_and_weng(rs, p)
    return corrupt_d(b) if cfg.corrupt_d else b


# ---------------------------------------------------------------- commands


def cmd_info(cfg: RunConfig, out) -> int:
    reports = []
    for kind, rank in cfg.groups:
        rs = _root_system(kind, rank)
        group = enumerate_group(rs, DEFAULT_CAP, cfg.allow_e8)
        for p in _ps(rs, cfg.p):
            d = z_and_weng(rs, p).data
            reports.append(
                {
                    "group": rs.name,
                    "p": p,
                    "c": d.c,
                    "weyl_order": len(group),
                    "positive_roots": rs.n_positive,
                    "admissible": int(d.admissible.sum()),
                    "degrees": degrees_of_parabolic(rs, p),
                    "orbit": orbit(rs, p),
                }
            )
    if cfg.format == "json":
        out.write(json.dumps({"schema_version": SCHEMA_VERSION, "info": reports}, sort_keys=True) + "\n")
    else:
        for r in reports:
            degs = "{" + ", ".join(map(str, r["degrees"])) + "}"
            out.write(
                f"{r['group']} p={r['p']}: c={r['c']} |W|={r['weyl_order']} |Phi+|={r['positive_roots']} "
                f"admissible={r['admissible']} degrees={degs} orbit={r['orbit']}\n"
            )
    return 0


def cmd_zeta(cfg: RunConfig, out) -> int:
    docs = []
    for kind, rank in cfg.groups:
        rs = _root_system(kind, rank)
        enumerate_group(rs, DEFAULT_CAP, cfg.allow_e8)
        for p in _ps(rs, cfg.p):
            b = _bundle(rs, p, cfg)
            norm = normalize(b)
            if cfg.format == "json":
                docs.append(
                    {
                        "group": rs.name,
                        "p": p,
                        "c": b.c,
                        "omega": expression_to_dict(b.omega),
                        "F": xi_product_to_list(b.F),
                        "D": xi_product_to_list(b.D),
                        "minimal_factor": xi_product_to_list(b.minimal_factor),
                        "Z": expression_to_dict(b.Z),
                        "xi": expression_to_dict(b.xi_weng),
                        "xi_normalized": expression_to_dict(norm),
                    }
                )
                continue
            fmt = cfg.format
            eq = " = "
            out.write(f"# {rs.name}, p={p}, c_p={b.c}\n")
            for label, obj in (
                ("omega(s;T)", b.omega),
                ("F(s)", b.F),
                ("D(s)", b.D),
                ("minimal factor", b.minimal_factor),
                ("Z(s;T)", b.Z),
                ("xi_o(s;T)", b.xi_weng),
                ("xi(s)", norm),
            ):
                if fmt == "latex":
                    label = {"omega(s;T)": r"\omega^{G/P}_{\mathbb{Q}}(s;T)", "xi_o(s;T)": r"\xi^{G/P}_{\mathbb{Q};o}(s;T)", "xi(s)": r"\xi^{G/P}_{\mathbb{Q}}(s)"}.get(label, label)
                out.write(label + eq + serialize(obj, fmt) + "\n")
            out.write("\n")
    if cfg.format == "json":
        out.write(json.dumps({"schema_version": SCHEMA_VERSION, "zeta": docs}, sort_keys=True) + "\n")
    return 0


def _numeric_checks(b: ZetaBundle, cfg: RunConfig, varpi0: Sequence[int]) -> list[CheckResult]:
    grp = f"{b.rs.name} p={b.p}"
    out = []
    rng = np.random.default_rng(cfg.seed)
    T = [round(float(x), 3) for x in rng.uniform(-0.5, 0.5, b.rs.rank)]
    for label, TT in (("T=0", None), (f"T={T}", T)):
        rep = numeric_fe(b.Z, b.c, varpi0, count=cfg.fe_points, seed=cfg.seed, T=TT, tol=cfg.tolerance)
        ok = rep.worst < cfg.tolerance
        out.append(
            CheckResult(
                f"num:Z(-c-s) = Z(s) ({label})",
                grp,
                ok,
                f"max rel {rep.worst:.2e} over {rep.points} points",
                None if ok else {"s": str(rep.worst_point), "rel": rep.worst},
            )
        )
    if b.rs.rank <= ORACLE_MAX_RANK:
        worst, where, used = 0.0, None, 0
        for s in generic_points(8, seed=cfg.seed):
            if used == 2:
                break
            try:
                ref = residue_oracle(b.rs, b.p, s)
                val = complex(evaluate(b.omega, s)[0])
            except (PoleProximity, ArithmeticError):
                continue
            used += 1
            rel = abs(ref - val) / abs(ref)
            if rel > worst:
                worst, where = rel, s
        ok = used > 0 and worst < ORACLE_RTOL
        out.append(
            CheckResult(
                "num:residue oracle = closed-form omega",
                grp,
                ok,
                f"max rel {worst:.2e} over {used} points",
                None if ok else {"s": str(where), "rel": worst},
            )
        )
    return out


def run_verification(cfg: RunConfig) -> list[CheckResult]:
    results: list[CheckResult] = []
    for kind, rank in cfg.groups:
        rs = _root_system(kind, rank)
        enumerate_group(rs, DEFAULT_CAP, cfg.allow_e8)
        _, v0 = diagram_automorphisms(rs)
        for p in _ps(rs, cfg.p):
            b = _bundle(rs, p, cfg)
            results.extend(lemma_suite(rs, p, b))
            results.extend(_numeric_checks(b, cfg, v0.perm))
    return results


def cmd_verify(cfg: RunConfig, out) -> int:
    results = run_verification(cfg)
    ok = all(r.passed for r in results)
    if cfg.format == "json":
        out.write(json.dumps({"schema_version": SCHEMA_VERSION, "passed": ok, "checks": [r.to_dict() for r in results]}, sort_keys=True) + "\n")
    else:
        for r in results:
            line = f"{'PASS' if r.passed else 'FAIL'}  {r.group:10s} {r.name}"
            if r.detail:
                line += f"  [{r.detail}]"
            if not r.passed and r.witness is not None:
                line += f"  witness={json.dumps(r.witness, sort_keys=True, default=str)}"
            out.write(line + "\n")
        failed = sum(not r.passed for r in results)
        out.write(f"{len(results) - failed}/{len(results)} checks passed\n")
    return 0 if ok else 1


def cmd_scan(cfg: RunConfig, out) -> int:
    rows, meta = [], []
    for kind, rank in cfg.groups:
        rs = _root_system(kind, rank)
        enumerate_group(rs, DEFAULT_CAP, cfg.allow_e8)
        for p in _ps(rs, cfg.p):
            res = scan_zeros(_bundle(rs, p, cfg), cfg.t_max, cfg.step)
            for t, why in res.skipped:
                print(f"warning: {rs.name} p={p} t={t:g} skipped: {why}", file=sys.stderr)
            meta.append(
                {
                    "group": rs.name,
                    "p": p,
                    "zeros": [{"t_lo": z.t_lo, "t_hi": z.t_hi, "t_mid": z.t_mid, "abs_value": z.abs_value} for z in res.brackets],
                    "max_imag_ratio": res.max_imag_ratio,
                    "offline_min_ratio": res.offline_min_ratio,
                    "offline_min_point": None if res.offline_min_point is None else [res.offline_min_point.real, res.offline_min_point.imag],
                    "skipped": [[t, why] for t, why in res.skipped],
                }
            )
            rows.extend((rs.name, p, z) for z in res.brackets)
    if cfg.format == "json":
        out.write(json.dumps({"schema_version": SCHEMA_VERSION, "t_max": cfg.t_max, "step": cfg.step, "scans": meta}, sort_keys=True) + "\n")
        return 0
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    multi = len(meta) > 1
    w.writerow((["group", "p"] if multi else []) + ["t_lo", "t_hi", "t_mid", "|value|"])
    for name, p, z in rows:
        w.writerow(([name, p] if multi else []) + [f"{z.t_lo:.12g}", f"{z.t_hi:.12g}", f"{z.t_mid:.12g}", f"{z.abs_value:.6e}"])
    out.write(buf.getvalue())
    return 0


COMMANDS = {"info": cmd_info, "zeta": cmd_zeta, "verify": cmd_verify, "scan": cmd_scan}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    ns = _parser().parse_args(argv)
    try:
        cfg = _config(ns)
        return COMMANDS[ns.command](cfg, out)
    except UsageError as exc:
        print(f"weng-zeta: error: {exc}", file=sys.stderr)
        return 2
    except GroupTooLarge as exc:
        print(f"weng-zeta: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
