"""Command-line front end: every verification in one place.

Reports are canonical JSON on stdout (or CSV / pretty text via --format),
deterministic for a given configuration and seed: no timestamps, sorted
keys, seeded point draws.  Exit status 0 means every requested check
passed, 1 means some check failed, 2 means the request itself was invalid
(including nodes outside the proven operator tables, which list their
coverage in the error message).

The character cache (--cache-dir, or KRQ_CACHE_DIR) stores computed
CharSeq entries and per-m verification records; warm reruns are
byte-identical.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import bounds, dimqp, g2solution, lpsf, recurrence
from .charring import decompose_character, serialize_table
from .poly import LaurentPoly
from .qsystem import (
    dim_sequence,
    draw_point,
    eval_sequence_all,
    extend_symbolic,
    q_initial,
)
from .recurrence import UncoveredNodeError
from .rootdata import LieType, build_root_datum

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

SCHEMA_VERSION = 1


def _default_cache_dir() -> str:
    return os.environ.get("KRQ_CACHE_DIR", os.path.join(os.path.expanduser("~"), ".cache", "krq"))


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, separators=(",", ":")))
    elif fmt == "csv":
        rows = report.get("csv")
        if rows is None:
            print(json.dumps(report, sort_keys=True, separators=(",", ":")))
            return
        for row in rows:
            print(",".join(str(x) for x in row))
    else:
        _pretty(report)


def _pretty(obj, indent=0) -> None:
    pad = "  " * indent
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                print(f"{pad}{k}:")
                _pretty(v, indent + 1)
            else:
                print(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            _pretty(v, indent)
    else:
        print(f"{pad}{obj}")


def _is_flat(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) for x in v)
    return False


def _datum(args):
    return build_root_datum(LieType.parse(args.type))


# -- character cache ------------------------------------------------------------

class CharCache:
    def __init__(self, root: str):
        self.root = Path(root) / "charseq"

    def path(self, lt: str, node: int, m: int) -> Path:
        return self.root / f"{lt}_n{node}_m{m}.json"

    def get(self, lt: str, node: int, m: int) -> LaurentPoly | None:
        p = self.path(lt, node, m)
        if p.exists():
            return LaurentPoly.from_json_obj(json.loads(p.read_text()))
        return None

    def put(self, lt: str, node: int, m: int, poly: LaurentPoly) -> None:
        p = self.path(lt, node, m)
        p.parent.mkdir(parents=True, exist_ok=True)
        data = json.dumps(poly.to_json_obj(), sort_keys=True, separators=(",", ":"))
        p.write_text(data)


def _char_poly(args, d, node: int, m: int) -> LaurentPoly:
    cache = CharCache(args.cache_dir)
    lt = str(d.lie_type)
    hit = cache.get(lt, node, m)
    if hit is not None:
        return hit
    t = d.t[node - 1]
    seqs = extend_symbolic(d, -(-m // t) if m else 0)
    for a in seqs:
        for mm in range(seqs[a].top() + 1):
            cache.put(lt, a, mm, seqs[a][mm])
    return seqs[node][m]


# -- subcommands ------------------------------------------------------------------

def cmd_char(args) -> int:
    d = _datum(args)
    poly = _char_poly(args, d, args.node, args.m)
    report = {
        "schema": SCHEMA_VERSION,
        "command": "char",
        "type": args.type,
        "node": args.node,
        "m": args.m,
        "dimension": str(poly.coeff_sum()),
        "terms": poly.to_json_obj()["terms"] if args.full else len(poly.terms),
    }
    _emit(report, args.format)
    return EXIT_OK


def cmd_decompose(args) -> int:
    d = _datum(args)
    poly = _char_poly(args, d, args.node, args.m)
    table = decompose_character(d, poly)
    report = {
        "schema": SCHEMA_VERSION,
        "command": "decompose",
        "type": args.type,
        "node": args.node,
        "m": args.m,
        "table": serialize_table(table),
    }
    _emit(report, args.format)
    return EXIT_OK


def cmd_dims(args) -> int:
    d = _datum(args)
    seq = dim_sequence(d, args.node, args.mmax)
    report = {
        "schema": SCHEMA_VERSION,
        "command": "dims",
        "type": args.type,
        "node": args.node,
        "values": [str(v) for v in seq],
        "csv": [("m", "dim")] + [(m, v) for m, v in enumerate(seq)],
    }
    _emit(report, args.format)
    return EXIT_OK


def cmd_dimqp(args) -> int:
    d = _datum(args)
    nodes = [args.node] if args.node else list(range(1, d.rank + 1))
    out = []
    ok = True
    for a in nodes:
        hv = dimqp.h_vector(d, a)
        qp = dimqp.quasipoly(d, a, hv)
        props = dimqp.hvector_properties(hv)
        rec = dimqp.reciprocity_check(d, a, qp, 30)
        neg = dimqp.negative_string_check(d, a, qp)
        ok = ok and all(props[k] for k in ("symmetric", "positive", "unimodal", "log_concave"))
        ok = ok and rec["ok"] and neg["ok"]
        out.append({
            "node": a,
            "e": dimqp.degree_e(d, a),
            "c": dimqp.c_length(d, a),
            "t": d.t[a - 1],
            "h_vector": [str(h) for h in hv.h],
            "branches": [[str(c) for c in br] for br in qp.branches],
            "properties": props,
            "reciprocity_ok": rec["ok"],
            "negative_string_ok": neg["ok"],
        })
    report = {
        "schema": SCHEMA_VERSION,
        "command": "dimqp",
        "type": args.type,
        "nodes": out,
        "all_ok": ok,
    }
    _emit(report, args.format)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_hvector(args) -> int:
    d = _datum(args)
    hv = dimqp.h_vector(d, args.node)
    report = {
        "schema": SCHEMA_VERSION,
        "command": "hvector",
        "type": args.type,
        "node": args.node,
        "h_vector": [str(h) for h in hv.h],
        "properties": dimqp.hvector_properties(hv),
    }
    _emit(report, args.format)
    return EXIT_OK


def cmd_orders(args) -> int:
    d = _datum(args)
    orders = recurrence.operator_orders(d)
    report = {
        "schema": SCHEMA_VERSION,
        "command": "orders",
        "type": args.type,
        "orders": {str(a): v for a, v in orders.items()},
    }
    if str(d.lie_type) == "E6":
        expected = {27, 73, 243, 1063}
        got = set(v for v in orders.values() if v)
        report["e6_orders_consistent"] = got == expected
        if not report["e6_orders_consistent"]:
            _emit(report, args.format)
            return EXIT_CHECK_FAILED
    _emit(report, args.format)
    return EXIT_OK


def cmd_verify_recurrence(args) -> int:
    d = _datum(args)
    nodes = [args.node] if args.node else [
        a for a in range(1, d.rank + 1)
        if recurrence.operator_orders(d)[a] is not None
    ]
    results = []
    ok = True
    for a in nodes:
        op = recurrence.build_operator(d, recurrence.lambda_tables(d, a))
        ell = op.order(d)
        m_hi = args.mmax if args.mmax else ell + 3
        if m_hi < ell:
            return _usage_error(f"--mmax must be at least the order {ell}")
        if args.mode == "symbolic":
            t = d.t[a - 1]
            seqs = extend_symbolic(d, -(-m_hi // t))
            rep = recurrence.verify_recurrence_symbolic(
                d, op, seqs[a].values[: m_hi + 1], range(ell, m_hi + 1))
            rep["points"] = []
        else:
            reps = []
            for i in range(args.num_points):
                pt = draw_point(d.rank, args.seed + 1013 * i)
                t = d.t[a - 1]
                seq = eval_sequence_all(d, pt, -(-m_hi // t))[a][: m_hi + 1]
                reps.append(recurrence.verify_recurrence_eval(d, op, pt, seq, range(ell, m_hi + 1)))
            rep = {
                "order": ell,
                "mode": "eval",
                "points": [r["point"] for r in reps],
                "m_checked": reps[0]["m_checked"] if reps else [],
                "residual_zero": all(r["residual_zero"] for r in reps),
            }
            fails = [r["first_failure"] for r in reps if not r["residual_zero"]]
            if fails:
                rep["first_failure"] = fails[0]
        rep["node"] = a
        ok = ok and rep["residual_zero"]
        results.append(rep)
    report = {
        "schema": SCHEMA_VERSION,
        "command": "verify-recurrence",
        "type": args.type,
        "results": results,
        "all_ok": ok,
    }
    _emit(report, args.format)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_verify_lpsf(args) -> int:
    d = _datum(args)
    nodes = [args.node] if args.node else list(range(1, d.rank + 1))
    results = []
    ok = True
    seqs = extend_symbolic(d, args.mmax)
    for a in nodes:
        try:
            lpsf.lpsf_table(d, a)
        except UncoveredNodeError:
            continue
        t = d.t[a - 1]
        checked = []
        for m in range(min(args.mmax * t, seqs[a].top()) + 1):
            same = lpsf.lpsf_character(d, a, m) == seqs[a][m]
            checked.append(m)
            if not same:
                ok = False
                results.append({"node": a, "m": m, "ok": False})
                break
        else:
            results.append({"node": a, "m_checked": checked, "ok": True})
    report = {
        "schema": SCHEMA_VERSION,
        "command": "verify-lpsf",
        "type": args.type,
        "results": results,
        "all_ok": ok,
    }
    _emit(report, args.format)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_verify_fermionic(args) -> int:
    from .fermionic import kr_decomposition

    d = _datum(args)
    nodes = [args.node] if args.node else list(range(1, d.rank + 1))
    seqs = extend_symbolic(d, args.mmax)
    results = []
    ok = True
    for a in nodes:
        t = d.t[a - 1]
        for m in range(min(args.mmax * t, seqs[a].top()) + 1):
            ferm = kr_decomposition(d, a, m)
            dec = decompose_character(d, seqs[a][m])
            same = ferm == dec
            ok = ok and same
            results.append({"node": a, "m": m, "ok": same})
    report = {
        "schema": SCHEMA_VERSION,
        "command": "verify-fermionic",
        "type": args.type,
        "results": results,
        "all_ok": ok,
    }
    _emit(report, args.format)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_verify_g2(args) -> int:
    results = []
    ok = True
    produced = 0
    seed = args.seed
    while produced < args.num_points:
        pt = draw_point(2, seed)
        seed += 1
        try:
            rep = g2solution.verify_g2_identities(pt, args.mmax)
        except g2solution.DegeneratePointError:
            continue
        produced += 1
        ok = ok and rep["identities_ok"] and rep["q_match_ok"]
        results.append(rep)
    report = {
        "schema": SCHEMA_VERSION,
        "command": "verify-g2",
        "results": results,
        "all_ok": ok,
    }
    _emit(report, args.format)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_verify_gf(args) -> int:
    reps = {}
    if args.which in ("ef", "both"):
        reps["ef"] = lpsf.gf_check_ef(args.truncation)
    if args.which in ("g2", "both"):
        reps["g2"] = lpsf.gf_check_g2(args.truncation)
    ok = all(r["ok"] for r in reps.values())
    report = {
        "schema": SCHEMA_VERSION,
        "command": "verify-gf",
        "results": reps,
        "all_ok": ok,
    }
    _emit(report, args.format)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_verify_bound(args) -> int:
    d = _datum(args)
    try:
        rep = bounds.bound_progress(
            d, args.node, args.mode, args.mmax,
            cache_dir=args.cache_dir, seed=args.seed, num_points=args.num_points,
        )
    except UncoveredNodeError as e:
        return _usage_error(str(e))
    report = {"schema": SCHEMA_VERSION, "command": "verify-bound", **rep}
    _emit(report, args.format)
    return EXIT_OK if rep["all_ok"] else EXIT_CHECK_FAILED


def _usage_error(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_USAGE


# -- parser -----------------------------------------------------------------------

def _add_common(sp, node_required=True, node=True):
    sp.add_argument("--type", required=True, help="Lie type, e.g. A3, F4, E6")
    if node:
        sp.add_argument("--node", type=int, required=node_required, default=None)
    sp.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    sp.add_argument("--cache-dir", default=_default_cache_dir())


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="krq",
        description="Exact Kirillov-Reshetikhin character computations and verifications",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("char", help="print Q_m^{(a)}")
    _add_common(sp)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--full", action="store_true", help="include all terms")
    sp.set_defaults(fn=cmd_char)

    sp = sub.add_parser("decompose", help="decompose Q_m^{(a)} into irreducibles")
    _add_common(sp)
    sp.add_argument("--m", type=int, required=True)
    sp.set_defaults(fn=cmd_decompose)

    sp = sub.add_parser("dims", help="dimension sequence dim W_m^{(a)}")
    _add_common(sp)
    sp.add_argument("--mmax", type=int, default=20)
    sp.set_defaults(fn=cmd_dims)

    sp = sub.add_parser("dimqp", help="dimension quasipolynomial report")
    _add_common(sp, node_required=False)
    sp.set_defaults(fn=cmd_dimqp)

    sp = sub.add_parser("hvector", help="h-vector and its properties")
    _add_common(sp)
    sp.set_defaults(fn=cmd_hvector)

    sp = sub.add_parser("orders", help="operator order per node")
    _add_common(sp, node=False)
    sp.set_defaults(fn=cmd_orders)

    sp = sub.add_parser("verify-recurrence", help="check L_a[Q_m] = 0")
    _add_common(sp, node_required=False)
    sp.add_argument("--mode", choices=("symbolic", "eval"), default="symbolic")
    sp.add_argument("--mmax", type=int, default=None)
    sp.add_argument("--num-points", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_verify_recurrence)

    sp = sub.add_parser("verify-lpsf", help="proven lattice sums against the Q-system")
    _add_common(sp, node_required=False)
    sp.add_argument("--mmax", type=int, default=6)
    sp.set_defaults(fn=cmd_verify_lpsf)

    sp = sub.add_parser("verify-fermionic", help="fermionic tables against the Q-system")
    _add_common(sp, node_required=False)
    sp.add_argument("--mmax", type=int, default=3)
    sp.set_defaults(fn=cmd_verify_fermionic)

    sp = sub.add_parser("verify-g2", help="closed-form G2 solution at rational points")
    sp.add_argument("--num-points", type=int, default=5)
    sp.add_argument("--mmax", type=int, default=30)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    sp.set_defaults(fn=cmd_verify_g2)

    sp = sub.add_parser("verify-gf", help="generating-function identities")
    sp.add_argument("--which", choices=("ef", "g2", "both"), default="both")
    sp.add_argument("--truncation", type=int, default=8)
    sp.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    sp.set_defaults(fn=cmd_verify_gf)

    sp = sub.add_parser("verify-bound", help="resumable finite-verification runs")
    _add_common(sp)
    sp.add_argument("--mmax", type=int, required=True)
    sp.add_argument("--mode", choices=("eval", "exact"), default="eval")
    sp.add_argument("--num-points", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_verify_bound)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except UncoveredNodeError as e:
        return _usage_error(str(e))
    except (ValueError, KeyError) as e:
        return _usage_error(f"{type(e).__name__}: {e}")


if __name__ == "__main__":
    sys.exit(main())
