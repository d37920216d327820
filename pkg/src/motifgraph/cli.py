"""Command-line entry point: ``motifgraph <command> ...``.

Exit codes: 0 success, 2 input error, 3 infeasible constraints,
4 enumeration budget exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io as _io
import json
import math
import sys
from typing import List, Optional, Sequence

from . import io as gio
from .bounds import ConstraintSet, constrained_extremes
from .errors import InputError, MotifGraphError
from .graph import descriptors
from .measures import MEASURES, default_budget, measure_id, normalize_by_minimum, overall_connectivity, total_subgraph_count
from .motifs import Partition, scan
from .refine import DELTA_TOL, RefineConstraints, enumerate_splits, filter_candidates, group_candidates

COLUMN = {
    "ivd": "I_vd",
    "eg": "E_g",
    "ea": "E_a",
    "en": "E_n",
    "sc2": "2SC",
    "sc2n": "2SC_n",
    "k": "K",
    "oc": "OC",
    "ad": "A/D",
    "b": "B",
}
NORMALIZED_DEFAULT = ("ad", "b", "k", "oc")


def fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def _round(obj):
    if isinstance(obj, float):
        return obj if math.isnan(obj) else float(format(obj, ".12g"))
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def _emit(args, header: Sequence[str], rows: List[Sequence], payload) -> None:
    if args.output_format == "json":
        text = json.dumps(_round(payload), indent=2) + "\n"
    else:
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([fmt(x) for x in r])
        text = buf.getvalue()
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _graphs(args):
    return [gio.read_graph(p, args.format) for p in args.input]


def _budget(args) -> int:
    if args.budget is None:
        return default_budget()
    if args.budget <= 0:
        raise InputError("--budget must be positive")
    return args.budget


def _measures(args) -> List[str]:
    if not args.measure:
        return list(MEASURES)
    out = []
    for item in args.measure:
        out.extend(measure_id(tok) for tok in item.split(",") if tok.strip())
    return out


def cmd_descriptors(args) -> int:
    graphs = _graphs(args)
    reports = [descriptors(g, args.k_max) for g in graphs]
    ec_cols = [f"EC{k}" for k in range(args.k_max + 1)]
    header = ["n", "m", "A", "avg_degree", "Conn", "Conn_prime", "C", *ec_cols, "D", "avg_vertex_distance", "avg_graph_distance", "l"]
    rows = []
    for r in reports:
        rows.append(
            [r.n, r.m, r.total_adjacency, r.avg_degree, r.conn, r.conn_prime, r.clustering, *r.extended_connectivity,
             r.graph_distance, r.avg_vertex_distance, r.avg_graph_distance, r.mean_geodesic]
        )
    payload = [
        {
            "n": r.n,
            "m": r.m,
            "degrees": list(r.degrees),
            "A": r.total_adjacency,
            "avg_degree": r.avg_degree,
            "Conn": r.conn,
            "Conn_prime": r.conn_prime,
            "local_clustering": list(r.local_clustering),
            "C": r.clustering,
            "EC": list(r.extended_connectivity),
            "distance_degrees": list(r.distance_degrees),
            "D": r.graph_distance,
            "avg_vertex_distance": r.avg_vertex_distance,
            "avg_graph_distance": r.avg_graph_distance,
            "l": r.mean_geodesic,
        }
        for r in reports
    ]
    if args.normalize:
        header += [f"{c}_n" for c in ec_cols]
        for k in range(args.k_max + 1):
            col = normalize_by_minimum([r.extended_connectivity[k] for r in reports])
            for row, item, v in zip(rows, payload, col):
                row.append(v)
                item.setdefault("EC_n", []).append(v)
    _emit(args, header, rows, payload)
    return 0


def cmd_complexity(args) -> int:
    graphs = _graphs(args)
    budget = _budget(args)
    ids = _measures(args)
    table = []
    for g in graphs:
        vals = {}
        for mid in ids:
            if mid in ("k", "oc"):
                spec = total_subgraph_count(g, budget) if mid == "k" else overall_connectivity(g, budget)
                vals[mid] = spec.total
            else:
                vals[mid] = MEASURES[mid](g)
        table.append(vals)
    header = [COLUMN[m] for m in ids]
    rows = [[vals[m] for m in ids] for vals in table]
    payload = [{COLUMN[m]: vals[m] for m in ids} for vals in table]
    if args.normalize:
        for mid in [m for m in ids if m in NORMALIZED_DEFAULT]:
            header.append(COLUMN[mid] + "_n")
            col = normalize_by_minimum([vals[mid] for vals in table])
            for row, item, v in zip(rows, payload, col):
                row.append(v)
                item[COLUMN[mid] + "_n"] = v
    if args.spectra:
        header += ["K_spectrum", "OC_spectrum"]
        for g, row, item in zip(graphs, rows, payload):
            ks = list(total_subgraph_count(g, budget).counts_by_edges)
            ocs = list(overall_connectivity(g, budget).oc_by_edges)
            row += [";".join(map(str, ks)), ";".join(map(str, ocs))]
            item["K_spectrum"], item["OC_spectrum"] = ks, ocs
    _emit(args, header, rows, payload)
    return 0


def cmd_scan(args) -> int:
    (g,) = _graphs(args)
    nm_range = (args.nm_min or 1, args.nm_max or g.n)
    res = scan(g, samples_per_nm=args.samples, seed=args.seed, exhaustive=args.exhaustive, nm_range=nm_range)
    header = ["N_m", "i_ve", "normalized", "partition", "kind"]
    rows = [[p.n_blocks, p.i_ve, p.normalized, p.partition.rgs(), "point"] for p in res.points]
    for nm in sorted(res.argmax):
        for kind, pt in (("max", res.argmax[nm]), ("min", res.argmin[nm])):
            rows.append([nm, pt.i_ve, pt.normalized, pt.partition.rgs(), kind])
    payload = {
        "n": g.n,
        "seed": args.seed,
        "exhaustive": args.exhaustive,
        "bound_violations": len(res.bound_violations),
        "points": [dict(zip(header[:4], r[:4])) for r in rows if r[4] == "point"],
        "extremes": {
            str(nm): {
                "max": {"i_ve": res.argmax[nm].i_ve, "partition": res.argmax[nm].partition.blocks()},
                "min": {"i_ve": res.argmin[nm].i_ve, "partition": res.argmin[nm].partition.blocks()},
            }
            for nm in sorted(res.argmax)
        },
    }
    _emit(args, header, rows, payload)
    return 0


def _edge_str(g) -> str:
    return ";".join(f"{i}-{j}" for i, j in g.edges)


def cmd_bounds(args) -> int:
    if args.constraints:
        c = gio.read_constraints(args.constraints)
        if args.n is not None and args.n != c.n:
            raise InputError(f"--n {args.n} disagrees with constraint file n={c.n}")
    elif args.n is not None:
        c = ConstraintSet(args.n)
    else:
        raise InputError("bounds needs --n or --constraints")
    header = ["measure", "n", "math_min", "math_max", "constrained_min", "constrained_max", "admissible",
              "math_min_witness", "math_max_witness", "constrained_min_witness", "constrained_max_witness"]
    rows, payload = [], []
    for mid in _measures(args) if args.measure else ["b"]:
        res = constrained_extremes(c, mid)
        w = res.witnesses
        rows.append([COLUMN[res.measure], c.n, res.math_min, res.math_max, res.constrained_min, res.constrained_max,
                     res.admissible, _edge_str(w["math_min"]), _edge_str(w["math_max"]),
                     _edge_str(w["constrained_min"]), _edge_str(w["constrained_max"])])
        d = res.as_dict()
        d["measure"] = COLUMN[res.measure]
        payload.append(d)
    _emit(args, header, rows, payload if len(payload) > 1 else payload[0])
    return 0


def cmd_refine(args) -> int:
    (g,) = _graphs(args)
    p = gio.read_partition(args.partition, g.n) if args.partition else Partition.whole(g.n)
    cands = enumerate_splits(g, p, args.block)
    if args.delta is not None:
        cands = [c for c in cands if abs(c.delta_i - args.delta) <= args.tol]
    else:
        cands = sorted(cands, key=lambda c: c.delta_i)
    groups = group_candidates(cands, args.group_tol)
    spec = RefineConstraints()
    if args.constraints:
        spec = RefineConstraints.from_dict(gio.read_json(args.constraints))
    kept = filter_candidates(cands, spec)
    kept_ids = {id(c) for c in kept}
    group_of = {id(c): gi for gi, grp in enumerate(groups) for c in grp.members}
    header = ["block", "refined", "delta_i", "group", "kept"]
    rows = [[c.block, c.refined.rgs(), c.delta_i, group_of[id(c)], int(id(c) in kept_ids)] for c in cands]
    payload = {
        "parent": p.blocks(),
        "delta": args.delta,
        "tol": args.tol,
        "candidates": [c.as_dict() for c in cands],
        "groups": [grp.as_dict() for grp in groups],
        "survivors": [c.as_dict() for c in kept],
    }
    _emit(args, header, rows, payload)
    return 0


CSV_DOCS = {
    "descriptors": "CSV columns: n,m,A,avg_degree,Conn,Conn_prime,C,EC0..ECk,D,avg_vertex_distance,"
    "avg_graph_distance,l[,EC0_n..ECk_n]; one row per --input, in order.",
    "complexity": "CSV columns: I_vd,E_g,E_a,E_n,2SC,2SC_n,K,OC,A/D,B (or the --measure selection, in the "
    "order given), then <measure>_n for A/D,B,K,OC with --normalize, then K_spectrum,OC_spectrum "
    "(';'-joined, indexed by edge count) with --spectra. One row per --input.",
    "scan": "CSV columns: N_m,i_ve,normalized,partition,kind. kind is 'point' for every evaluated "
    "partition, 'max'/'min' for the extremal witness per N_m. partition is the restricted growth string.",
    "bounds": "CSV columns: measure,n,math_min,math_max,constrained_min,constrained_max,admissible,"
    "math_min_witness,math_max_witness,constrained_min_witness,constrained_max_witness "
    "(witness edges as 'i-j;...').",
    "refine": "CSV columns: block,refined,delta_i,group,kept. Without --delta rows are sorted by delta_i.",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="motifgraph",
        description=__doc__.split("\n")[0],
        epilog="Exit codes: 0 success, 2 input error, 3 infeasible, 4 budget exceeded. "
        "MOTIFGRAPH_BUDGET overrides the default subgraph enumeration cap.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(name, help_, multi=True):
        sp = sub.add_parser(name, help=help_, epilog=CSV_DOCS[name])
        sp.add_argument("--input", nargs="+" if multi else 1, required=True, help="graph file(s)")
        sp.add_argument("--format", choices=["edgelist", "json"], default=None, help="graph file format (default: by suffix)")
        sp.add_argument("--output", help="write here instead of stdout")
        sp.add_argument("--output-format", choices=["csv", "json"], default="csv")
        return sp

    sp = common("descriptors", "basic graph descriptors")
    sp.add_argument("--k-max", type=int, default=2, help="highest extended connectivity order")
    sp.add_argument("--normalize", action="store_true", help="add EC columns divided by their minimum")
    sp.set_defaults(func=cmd_descriptors)

    sp = common("complexity", "topological complexity measures")
    sp.add_argument("--measure", action="append", help="measure id(s), repeatable or comma separated")
    sp.add_argument("--normalize", action="store_true", help="add value/min columns for A/D, B, K, OC")
    sp.add_argument("--spectra", action="store_true", help="include K and OC spectra")
    sp.add_argument("--budget", type=int, default=None, help="subgraph enumeration cap")
    sp.set_defaults(func=cmd_complexity)

    sp = common("scan", "information content across motif counts", multi=False)
    sp.add_argument("--samples", type=int, default=100, help="partitions sampled per N_m")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--exhaustive", action="store_true", help="enumerate every partition")
    sp.add_argument("--nm-min", type=int, default=None)
    sp.add_argument("--nm-max", type=int, default=None)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("bounds", help="mathematical and constrained extremes", epilog=CSV_DOCS["bounds"])
    sp.add_argument("--n", type=int, default=None, help="vertex count when no constraint file is given")
    sp.add_argument("--constraints", help='{"n":..,"required":[[i,j]..],"forbidden":[[i,j]..]}')
    sp.add_argument("--measure", action="append", help="measure id(s); default B")
    sp.add_argument("--output")
    sp.add_argument("--output-format", choices=["csv", "json"], default="csv")
    sp.set_defaults(func=cmd_bounds)

    sp = common("refine", "single-motif splits and information increments", multi=False)
    sp.add_argument("--partition", help='parent partition {"blocks": [[...], ...]}; default one block')
    sp.add_argument("--block", type=int, default=None, help="split only this block")
    sp.add_argument("--delta", type=float, default=None, help="target increment in bits")
    sp.add_argument("--tol", type=float, default=DELTA_TOL, help="window around --delta")
    sp.add_argument("--group-tol", type=float, default=DELTA_TOL, help="tolerance for grouping equal increments")
    sp.add_argument("--constraints", help="refinement constraint spec JSON")
    sp.set_defaults(func=cmd_refine)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "input", None) and not isinstance(args.input, list):
        args.input = [args.input]
    try:
        return args.func(args)
    except MotifGraphError as exc:
        print(f"motifgraph {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
