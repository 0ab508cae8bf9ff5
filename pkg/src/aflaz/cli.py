"""Command-line front end.

Subcommands::

    aflaz af     --in seq.csv [--in2 other.csv] --laz ZX,ZY --out surface.csv
    aflaz bounds --N 128 --M 6 --zx 32 --zy 8 [--family A|B|C] [--q Q] [--D auto|INT] [--json]
    aflaz chu    --N 1009 --roots 20,19 [--out DIR | --sweep N1,N2,... --a A --out FILE]
    aflaz verify [--seed S] [--out report.json]
    aflaz repro  table1|fig1a|fig1b|fig3 [--out DIR] [--config cfg.json]

Exit status is nonzero iff any assertion-style check fails.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import sys
from pathlib import Path

from . import bounds as bd
from . import chu, oracle, repro, seqio
from .afcore import LazSpec, af_surface


def _parse_laz(text: str) -> LazSpec:
    try:
        zx, zy = (int(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected ZX,ZY integers") from exc
    return LazSpec(zx, zy)


def _parse_int_list(text: str):
    return tuple(int(part) for part in text.split(",") if part)


def _cmd_af(args) -> int:
    x = seqio.read_sequence_csv(args.infile)
    y = seqio.read_sequence_csv(args.infile2) if args.infile2 else x
    surface = af_surface(x, y, args.laz)
    with Path(args.out).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["tau", "nu", "mag_sq"])
        for i, tau in enumerate(surface.delays()):
            for j, nu in enumerate(surface.dopplers()):
                writer.writerow([tau, nu, repr(float(surface.magnitudes_sq[i, j]))])
    print(f"wrote {args.out}")
    return 0


def _bound_reports(args):
    params = bd.BoundParams(args.N, args.M, args.zx, args.zy)
    full = args.zx == args.N
    dim = 2 * args.N - 1 if full else args.zx
    auto_d = args.D == "auto"
    fixed_d = 0 if auto_d else int(args.D)

    def family_report(family: str):
        if family == "A":
            ws = [bd.weights_A(args.q, dim)] if args.q else None
        elif family == "B":
            ws = [bd.weights_B(args.q, dim, args.N, args.M, args.zy)] if args.q else None
        elif family == "C":
            if not full:
                return None
            ws = [bd.weights_C(args.N)]
        else:
            raise ValueError(family)
        if ws is None:
            rep = bd.best_bound(params, families=(family,), d_policy="auto" if auto_d else "zero")
            return rep if rep.applicable else None
        w = ws[0]
        if auto_d:
            return bd.dopt_search(w, params, regime="T2" if full else "T1")
        p = bd.BoundParams(args.N, args.M, args.zx, args.zy, fixed_d)
        return bd.theorem2_bounds(w, p) if full else bd.theorem1_bounds(w, p)

    if args.family:
        rep = family_report(args.family)
        return [rep] if rep is not None else []
    reports = []
    for fam in ("A", "B", "C"):
        rep = family_report(fam)
        if rep is not None:
            reports.append(dataclasses.replace(rep, name=f"{rep.name}[{fam}]"))
    for name in ("global", "C2", "C3", "C4_5", "C6", "C7"):
        reports.append(bd.corollary_closed_forms(name, params, q=args.q))
    reports.append(bd.benchmark_ye2022(params))
    return reports


def _cmd_bounds(args) -> int:
    reports = _bound_reports(args)
    if not reports:
        print("no applicable bound for these parameters", file=sys.stderr)
        return 1
    if args.json:
        payload = [r.to_dict() for r in reports]
        text = json.dumps(payload if len(payload) > 1 else payload[0], indent=2)
        if args.out:
            Path(args.out).write_text(text + "\n")
        else:
            print(text)
    else:
        rows = [r.csv_row() for r in reports]
        if args.out:
            with Path(args.out).open("w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(bd.CSV_COLUMNS)
                writer.writerows(rows)
        else:
            writer = csv.writer(sys.stdout)
            writer.writerow(bd.CSV_COLUMNS)
            writer.writerows(rows)
    return 0


def _cmd_chu(args) -> int:
    roots = _parse_int_list(args.roots)
    if args.sweep:
        if len(roots) != 1:
            print("--sweep takes a single root via --roots", file=sys.stderr)
            return 1
        a = roots[0]
        target = chu.AAF_LIMIT_COEFFICIENT / math.sqrt(abs(a))
        out = Path(args.out or f"chu_sweep_a{a}.csv")
        with out.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["N", "a", "ratio", "target"])
            for n in _parse_int_list(args.sweep):
                writer.writerow([n, a, repr(chu.theorem3_ratio(n, a, args.beta)), repr(target)])
        print(f"wrote {out}")
        return 0

    spec = chu.ChuSpec(args.N, roots)
    out_dir = Path(args.out or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    for a in spec.roots:
        path = out_dir / f"chu_N{args.N}_a{a}.csv"
        seqio.write_sequence_csv(path, chu.chu_sequence(args.N, a), fmt=args.format)
        print(f"wrote {path}")
    try:
        laz = chu.order_optimal_laz(spec)
        print(f"order-optimal zone: Zx={laz.z_x} Zy={laz.z_y}")
    except chu.NotApplicableError as exc:
        print(f"order-optimal zone: not applicable ({exc})")
    return 0


def _cmd_verify(args) -> int:
    records = oracle.run_verification(seed=args.seed)
    text = "\n".join(json.dumps(r) for r in records)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    failed = [r for r in records if not r["pass"]]
    print(f"{len(records) - len(failed)}/{len(records)} checks passed", file=sys.stderr)
    return 1 if failed else 0


def _cmd_repro(args) -> int:
    if args.config:
        cfg = repro.ExperimentConfig.from_json(args.config)
        cfg = dataclasses.replace(cfg, experiment=args.experiment)
    else:
        cfg = repro.ExperimentConfig(experiment=args.experiment)
    if args.out:
        cfg = dataclasses.replace(cfg, out_dir=args.out)
    path, checks = repro.run_experiment(cfg, svg=args.svg)
    print(f"wrote {path}")
    if args.svg:
        print(f"wrote {path.with_suffix('.svg')}")
    ok = True
    for description, passed in checks:
        print(f"[{'PASS' if passed else 'FAIL'}] {description}")
        ok = ok and passed
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aflaz", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_af = sub.add_parser("af", help="AF surface of one or two sequences over a zone")
    p_af.add_argument("--in", dest="infile", required=True)
    p_af.add_argument("--in2", dest="infile2")
    p_af.add_argument("--laz", type=_parse_laz, required=True, metavar="ZX,ZY")
    p_af.add_argument("--out", required=True)
    p_af.set_defaults(func=_cmd_af)

    p_b = sub.add_parser("bounds", help="evaluate lower bounds at one parameter point")
    p_b.add_argument("--N", type=int, required=True)
    p_b.add_argument("--M", type=int, required=True)
    p_b.add_argument("--zx", type=int, required=True)
    p_b.add_argument("--zy", type=int, required=True)
    p_b.add_argument("--family", choices=("A", "B", "C"))
    p_b.add_argument("--q", type=int)
    p_b.add_argument("--D", default="0", help="'auto' for the exact sweep, else an integer")
    p_b.add_argument("--json", action="store_true")
    p_b.add_argument("--out")
    p_b.set_defaults(func=_cmd_bounds)

    p_c = sub.add_parser("chu", help="emit Chu sequences or a peak-ratio sweep")
    p_c.add_argument("--N", type=int, required=True)
    p_c.add_argument("--roots", required=True, metavar="A1,A2,...")
    p_c.add_argument("--format", choices=("iq", "phase"), default="iq")
    p_c.add_argument("--sweep", metavar="N1,N2,...")
    p_c.add_argument("--beta", type=float, default=0.9)
    p_c.add_argument("--out")
    p_c.set_defaults(func=_cmd_chu)

    p_v = sub.add_parser("verify", help="run the brute-force oracle checks")
    p_v.add_argument("--seed", type=int, default=0)
    p_v.add_argument("--out")
    p_v.set_defaults(func=_cmd_verify)

    p_r = sub.add_parser("repro", help="run a named experiment sweep")
    p_r.add_argument("experiment", choices=("table1", "fig1a", "fig1b", "fig3"))
    p_r.add_argument("--out")
    p_r.add_argument("--config")
    p_r.add_argument("--svg", action="store_true", help="also render the CSV as an SVG plot")
    p_r.set_defaults(func=_cmd_repro)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
