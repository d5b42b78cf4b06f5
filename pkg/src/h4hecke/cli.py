"""Command-line front end: one entry point dispatching to every subsystem.

Subcommand groups: quat (quaternion tables and lemma sweeps), geom
(actions, reduction, cusp tiling), hecke (operators on coefficient
files), sums (lattice sums, reports, prime partition), asym (recursion
constants and decay checks), maass (spectral-mode numerics).  All
randomized verifications take an explicit --seed (default 0) so runs
are reproducible; --json switches to machine-readable reports tagged
with a schema version.  Exit codes: 0 success/verified, 1 verification
failure (witness printed), 2 usage error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import random
import sys
from fractions import Fraction
from typing import Optional

from . import asymptotics, files, geometry, hecke, numerics, sums
from .quaternions import (
    LemmaSweepError,
    enumerate_norm,
    orbit_representatives,
    verify_conjugation_lemmas,
)

SCHEMA_VERSION = 1


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        payload = {"schema": SCHEMA_VERSION, **payload}
        print(json.dumps(payload, default=_jsonify, sort_keys=True))
    else:
        print(human)


def _jsonify(obj):
    if dataclasses.is_dataclass(obj):
        return dataclasses.asdict(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"cannot serialize {type(obj)}")


def _parse_point(text: str):
    parts = [float(t) for t in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("point must be x0,x1,x2,y")
    return geometry.PointH4(*parts)


def _parse_beta(text: str):
    parts = [int(t) for t in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("beta must be b0,b1,b2")
    return tuple(parts)


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


# -- quat ------------------------------------------------------------------


def _cmd_quat_enum(args) -> int:
    for q in enumerate_norm(args.norm):
        print(f"{q.a} {q.b} {q.c} {q.d}")
    return 0


def _cmd_quat_reps(args) -> int:
    for q in orbit_representatives(args.p).representatives:
        print(f"{q.a} {q.b} {q.c} {q.d}")
    return 0


def _cmd_quat_verify(args) -> int:
    try:
        report = verify_conjugation_lemmas(args.p, args.bound, args.q or None)
    except LemmaSweepError as exc:
        print(f"FAIL: {exc}", file=sys.stderr)
        return 1
    _emit(args, dataclasses.asdict(report),
          f"OK p={report.p} bound={report.bound}: {report.pairs_checked} (beta, alpha) pairs, "
          f"0 violations; max v_p jump {report.max_vp_jump}, max |I(beta)| {report.max_exceptional_set}, "
          f"max squared-divisibility count {report.squared_divisibility_max_small}")
    return 0


# -- geom ------------------------------------------------------------------


def _cmd_geom_reduce(args) -> int:
    word, point = geometry.reduce_to_fundamental_domain(args.point)
    tokens = [f"translate{t[1]}" if t[0] == "translate" else t[0] for t in word]
    _emit(args, {"word": [list(map(str, t)) for t in word], "point": point.as_tuple()},
          f"word: [{', '.join(tokens)}]\n"
          f"point: {point.x0:.12g},{point.x1:.12g},{point.x2:.12g},{point.y:.12g}")
    return 0


def _cmd_geom_act(args) -> int:
    vals = args.matrix
    quats = [geometry.Quaternion(*vals[i:i + 4]) for i in range(0, 16, 4)]
    g = geometry.IsometryMatrix(*quats)
    z = geometry.act(g, args.point)
    _emit(args, {"point": z.as_tuple()},
          f"{z.x0:.12g},{z.x1:.12g},{z.x2:.12g},{z.y:.12g}")
    return 0


def _cmd_geom_verify_cusp(args) -> int:
    try:
        report = geometry.verify_cusp_decomposition(args.T, args.samples, seed=args.seed)
    except AssertionError as exc:
        print(f"FAIL: {exc}", file=sys.stderr)
        return 1
    _emit(args, dataclasses.asdict(report),
          f"OK T={report.T}: {report.interior_checked} interior samples each matched exactly once "
          f"({report.boundary_ties} boundary ties); matches {report.matches_by_matrix}")
    return 0


# -- hecke -----------------------------------------------------------------


def _cmd_hecke_apply(args) -> int:
    field = files.parse_coefficient_field(args.infile)
    out = hecke.apply_hecke(args.op, args.p, field)
    files.write_coefficient_field(out, args.outfile)
    _emit(args, {"support": len(out.entries), "radius": out.support_radius},
          f"wrote H_{args.op} output: {len(out.entries)} entries, support radius {out.support_radius}")
    return 0


def _cmd_hecke_verify_relation(args) -> int:
    rng = random.Random(args.seed)
    for trial in range(args.trials):
        field = hecke.CoefficientField.random(
            rng, p=args.p, support=args.support, coord_bound=3, entry_bound=10, sqrt_parts=True)
        residual = hecke.verify_hecke_relation(args.p, field)
        if not residual.is_zero:
            print(f"FAIL trial {trial}: nonzero residual with {len(residual.entries)} entries; "
                  f"witness {next(iter(residual.entries.items()))}", file=sys.stderr)
            return 1
    _emit(args, {"p": args.p, "trials": args.trials, "residual": "zero"},
          f"OK p={args.p}: residual zero (exact) on {args.trials} random fields")
    return 0


def _cmd_hecke_commute(args) -> int:
    rng = random.Random(args.seed)
    worst = 0.0
    for _ in range(args.trials):
        # sign-symmetric fields: the subspace where cross-prime commutativity holds
        field = hecke.CoefficientField.random(rng, p=None, support=args.support,
                                              coord_bound=3, entry_bound=10, symmetric=True)
        for ell in (1, 2):
            for m in (1, 2):
                worst = max(worst, hecke.verify_commutativity(args.p, args.q, ell, m, field))
    payload = {"p": args.p, "q": args.q, "trials": args.trials, "max_residual": worst}
    if worst >= args.tol:
        print(f"FAIL: commutator residual {worst} >= {args.tol}", file=sys.stderr)
        return 1
    _emit(args, payload, f"OK p={args.p} q={args.q}: max commutator residual {worst:.3e}")
    return 0


# -- sums ------------------------------------------------------------------


def _cmd_sums_compute(args) -> int:
    field = files.parse_coefficient_field(args.infile)
    if args.kind == "S":
        value = sums.sum_S_d(field, args.d, args.z)
        human = f"S_{args.d}({args.z}) = {float(value)}"
    else:
        if args.p is None:
            raise SystemExit("sums compute --kind R requires --p")
        value = sums.sum_R(field, args.p, args.ell, args.d, args.z)
        human = f"R^({args.p},{args.ell})_{args.d}({args.z}) = {float(value)}"
    _emit(args, {"value": float(value), "exact": str(value)}, human)
    return 0


def _cmd_sums_report(args) -> int:
    field = files.parse_coefficient_field(args.infile)
    table = files.parse_lambda_table(args.lambda_table) if args.lambda_table else None
    kw: dict = {"A": field, "z": args.z}
    if args.p is not None:
        kw["p"] = args.p
        if table is not None and args.p in table:
            kw["lam"] = table[args.p]
    for name in ("d", "c", "k", "ell", "K"):
        val = getattr(args, name)
        if val is not None:
            kw[name] = val
    if table is not None:
        kw["lam_table"] = table
    if args.window_P is not None:
        kw["window"] = sums.PrimeWindow.from_bound(args.window_P)
    kw["const_A"] = args.const_A
    kw["const_B"] = args.const_B
    report = sums.inequality_report(args.which, **kw)
    if args.assert_with_constant:
        try:
            report.asserted()
        except AssertionError as exc:
            print(f"FAIL: {exc}", file=sys.stderr)
            return 1
    ratio = "n/a (vacuous)" if report.ratio is None else f"{report.ratio:.6g}"
    _emit(args, dataclasses.asdict(report),
          f"{report.name}: left={report.left:.6g} right={report.right:.6g} ratio={ratio}")
    return 0


def _cmd_sums_partition(args) -> int:
    table = files.parse_lambda_table(args.lambda_table)
    part = sums.partition_primes(table, args.y)
    _emit(args, {"P": part.P, "J": part.J, "Q": part.Q, "best": part.best,
                 "best_cell": part.best_cell,
                 "cells": {"-".join(map(str, k)): v for k, v in part.cells.items()}},
          f"P={part.P:.6g} |Q|={len(part.Q)} J={part.J} best cell {part.best} "
          f"with {len(part.best_cell)} primes {part.best_cell}")
    return 0


# -- asym ------------------------------------------------------------------


def _cmd_asym_compute_R(args) -> int:
    R = asymptotics.compute_R(args.A, args.M, args.eps)
    _emit(args, {"R": R}, f"R = {R}")
    return 0


def _cmd_asym_verify(args) -> int:
    f = files.parse_sampled_function(args.f)
    with open(args.params) as fh:
        raw = json.load(fh)
    params = asymptotics.DecayParams(
        delta=float(raw["delta"]),
        eps=float(raw["eps"]),
        A=float(raw["A"]),
        a_funcs=tuple((lambda v: (lambda y: float(v)))(v) for v in raw.get("a", [])),
        b_funcs=tuple((lambda v: (lambda y: float(v)))(v) for v in raw.get("b", [])),
    )
    hyp = asymptotics.check_recursive_hypothesis(f, params)
    R = asymptotics.compute_R(params.A, params.M, params.eps)
    conclusion = asymptotics.check_decay_conclusion(f, math.inf, R, params.delta)
    payload = {
        "hypothesis_passed": hyp.passed,
        "worst_margin": hyp.worst_margin,
        "worst_y": hyp.worst_y,
        "R": R,
        "minimal_C": conclusion.minimal_C,
    }
    _emit(args, payload,
          f"hypothesis {'PASS' if hyp.passed else 'FAIL'} (worst margin {hyp.worst_margin:.6g} "
          f"at y={hyp.worst_y:.6g}); R={R}; minimal C={conclusion.minimal_C:.6g}")
    return 0 if hyp.passed else 1


# -- maass -----------------------------------------------------------------


def _cmd_maass_eval(args) -> int:
    form = files.parse_spectral_form(args.form)
    value = numerics.evaluate_form(form, args.point)
    _emit(args, {"value": value}, f"phi(z) = {value.real:.12g} + {value.imag:.12g}i")
    return 0


def _cmd_maass_parseval(args) -> int:
    form = files.parse_spectral_form(args.form)
    report = numerics.parseval_check(form, args.y)
    _emit(args, dataclasses.asdict(report),
          f"box integral {report.box_integral:.12g} vs coefficient sum "
          f"{report.coefficient_sum:.12g}; relative error {report.rel_error:.3e}")
    return 0 if report.rel_error < 1e-6 else 1


def _cmd_maass_cusp(args) -> int:
    form = files.parse_spectral_form(args.form)
    value = numerics.cusp_sum_I(form, args.T)
    payload = {"T": args.T, "coefficient_side": value}
    human = f"cusp mass (coefficient side, T={args.T}): {value:.12g}"
    if args.cross_check:
        direct = numerics.direct_cusp_integral(form, args.T)
        rel = abs(value - direct) / max(abs(value), 1e-300)
        payload.update({"direct": direct, "rel_error": rel})
        human += f"\ndirect 4-d quadrature: {direct:.12g} (relative difference {rel:.3e})"
        if rel >= 1e-3:
            print(human, file=sys.stderr)
            return 1
    _emit(args, payload, human)
    return 0


def _cmd_maass_laplace(args) -> int:
    point = args.point or geometry.PointH4(0.1, 0.2, 0.3, 0.3)
    residual = numerics.laplace_eigen_residual(args.beta, args.r, point, args.h)
    _emit(args, {"residual": residual, "h": args.h},
          f"relative residual of Delta u + (9/4 + r^2) u at h={args.h}: {residual:.3e}")
    return 0


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="h4hecke", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--json", action="store_true", help="emit machine-readable reports")
    top = parser.add_subparsers(dest="group", required=True)

    quat = top.add_parser("quat", help="integral quaternion tables and lemma sweeps").add_subparsers(
        dest="cmd", required=True)
    p = quat.add_parser("enum", help="list quaternions of a given norm")
    p.add_argument("--norm", type=int, required=True)
    p.set_defaults(func=_cmd_quat_enum)
    p = quat.add_parser("reps", help="list the p+1 orbit representatives")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=_cmd_quat_reps)
    p = quat.add_parser("verify-lemmas", help="exhaustive conjugation-valuation sweep")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--q", type=int, action="append", help="odd prime(s) != p for the v_q check")
    p.set_defaults(func=_cmd_quat_verify)

    geom = top.add_parser("geom", help="hyperbolic actions and fundamental domain").add_subparsers(
        dest="cmd", required=True)
    p = geom.add_parser("reduce", help="reduce a point into the fundamental domain")
    p.add_argument("--point", type=_parse_point, required=True)
    p.set_defaults(func=_cmd_geom_reduce)
    p = geom.add_parser("act", help="apply a 2x2 quaternion matrix to a point")
    p.add_argument("--matrix", type=int, nargs=16, required=True,
                   help="entries a b c d as four quaternion 4-tuples")
    p.add_argument("--point", type=_parse_point, required=True)
    p.set_defaults(func=_cmd_geom_act)
    p = geom.add_parser("verify-cusp", help="sample the four-fold cusp tiling")
    p.add_argument("--T", type=float, default=2.0)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_geom_verify_cusp)

    hk = top.add_parser("hecke", help="coefficient operators").add_subparsers(dest="cmd", required=True)
    p = hk.add_parser("apply", help="apply H_1, H_2, or H_3 to a coefficient file")
    p.add_argument("--op", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.set_defaults(func=_cmd_hecke_apply)
    p = hk.add_parser("verify-relation", help="exact quadratic-relation residual on random fields")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--support", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_hecke_verify_relation)
    p = hk.add_parser("commute", help="cross-prime commutator residual in doubles")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--support", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_hecke_commute)

    sm = top.add_parser("sums", help="lattice sums and inequality reports").add_subparsers(
        dest="cmd", required=True)
    p = sm.add_parser("compute", help="evaluate S_d(z) or R^(p,ell)_d(z)")
    p.add_argument("--kind", choices=("S", "R"), required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--p", type=int)
    p.add_argument("--ell", type=int, default=0)
    p.add_argument("--z", type=_parse_fraction, required=True)
    p.set_defaults(func=_cmd_sums_compute)
    p = sm.add_parser("report", help="two-sided inequality report")
    p.add_argument("--which", required=True,
                   choices=("Prop6.1", "Cor6.2", "L6.3i", "L6.3ii", "L6.3iii", "L6.4a", "L6.4b", "L6.5"))
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--z", type=_parse_fraction, required=True)
    p.add_argument("--lambda-table", dest="lambda_table")
    p.add_argument("--p", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--K", type=float)
    p.add_argument("--window-P", type=float, help="prime window upper bound P")
    p.add_argument("--const-A", type=float, default=1.0)
    p.add_argument("--const-B", type=float, default=1.0)
    p.add_argument("--assert-with-constant", action="store_true")
    p.set_defaults(func=_cmd_sums_report)
    p = sm.add_parser("partition", help="dyadic eigenvalue partition of the prime window")
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--lambda-table", dest="lambda_table", required=True)
    p.set_defaults(func=_cmd_sums_partition)

    asym = top.add_parser("asym", help="recursion constants and decay checks").add_subparsers(
        dest="cmd", required=True)
    p = asym.add_parser("compute-R", help="smallest admissible recursion exponent")
    p.add_argument("--A", type=float, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.set_defaults(func=_cmd_asym_compute_R)
    p = asym.add_parser("verify", help="check hypothesis and decay bound for a sampled function")
    p.add_argument("--f", required=True, help="CSV of y,value rows")
    p.add_argument("--params", required=True, help="JSON with delta, eps, A, a, b")
    p.set_defaults(func=_cmd_asym_verify)

    ms = top.add_parser("maass", help="spectral-mode numerics").add_subparsers(dest="cmd", required=True)
    p = ms.add_parser("eval", help="evaluate the Fourier sum at a point")
    p.add_argument("--form", required=True)
    p.add_argument("--point", type=_parse_point, required=True)
    p.set_defaults(func=_cmd_maass_eval)
    p = ms.add_parser("parseval", help="fixed-height orthogonality check")
    p.add_argument("--form", required=True)
    p.add_argument("--y", type=float, required=True)
    p.set_defaults(func=_cmd_maass_parseval)
    p = ms.add_parser("cusp", help="cusp mass above height T")
    p.add_argument("--form", required=True)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--cross-check", action="store_true")
    p.set_defaults(func=_cmd_maass_cusp)
    p = ms.add_parser("laplace-check", help="finite-difference mode annihilation")
    p.add_argument("--beta", type=_parse_beta, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--point", type=_parse_point)
    p.add_argument("--h", type=float, default=1e-3)
    p.set_defaults(func=_cmd_maass_laplace)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (files.FileFormatError, KeyError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (LemmaSweepError, sums.ShiftIdentityError, AssertionError) as exc:
        print(f"FAIL: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
