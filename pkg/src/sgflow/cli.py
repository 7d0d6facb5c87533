"""Command line front end.

Every verb prints one JSON document on stdout.  Exit status is 0 on success,
1 on a domain error or a failed ``verify``, 2 on a usage error.  Errors are
reported as ``{"error": {"code": ..., "message": ...}}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from . import bonds as bd
from .circuits import system_for, verify_circuit_vectors
from .errors import BudgetExceededError, SgflowError
from .flowpoly import fd_polynomial
from .flows import (
    brute_force_count,
    brute_force_table,
    flow_table,
    lift_table,
    table_keys,
    table_to_flows,
    total_flow_count,
)
from .group import AbelianGroup
from .report import Report
from .sgraph import SignedGraph, balance_profile, default_orientation, is_balanced, is_connected, read_graph

VERIFY_GROUPS = ("3", "4", "5", "2,2", "6", "2,4")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _poly(p) -> dict:
    return {"coeffs": p.to_json(), "polynomial": str(p)}


def _order(text: str | None, G: SignedGraph):
    if text is None:
        return None
    try:
        order = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--order expects comma separated edge ids, got {text!r}") from None
    return bd.check_order(G, order)


def _sets(family) -> list[list[int]]:
    return [sorted(s) for s in family]


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------


def cmd_info(args):
    G = read_graph(args.file)
    bal, unb = balance_profile(G)
    return {"n": G.n, "m": G.m, "beta": G.m - G.n + bal, "kappa": unb, "balanced": unb == 0}


def cmd_poly(args):
    G = read_graph(args.file)
    return {"d": args.d, **_poly(fd_polynomial(G, args.d, args.method))}


def cmd_f0(args):
    G = read_graph(args.file)
    order = _order(args.order, G)
    if args.method == "broken":
        p = bd.f0_broken(G, order)
    else:
        p = fd_polynomial(G, 0, "subset")
    return {"method": args.method, **_poly(p)}


def cmd_flows(args):
    G = read_graph(args.file)
    group = AbelianGroup.parse(args.group)
    out = {"group": str(group), "nowhere_zero": args.nowhere_zero}
    if not args.list:
        if args.nowhere_zero:
            out["count"] = fd_polynomial(G, group.epsilon())(group.order)
        else:
            out["count"] = total_flow_count(G, group)
        return out
    D = default_orientation(G)
    if is_connected(G) and G.n > 0:
        fs = system_for(G)
        table = lift_table(fs, flow_table(fs, group), group, D)
        order = np.lexsort(table.reshape(len(table), -1).T[::-1]) if len(table) else []
        table = table[order]
    else:
        table = brute_force_table(G, group, orientation=D)
    if args.nowhere_zero:
        table = table[(table != 0).any(axis=2).all(axis=1)]
    out["orientation"] = [D.describe(G, i) for i in range(G.m)]
    out["count"] = len(table)
    out["flows"] = [[g.to_json() for g in f.values] for f in table_to_flows(group, table)]
    return out


def cmd_bonds(args):
    G = read_graph(args.file)
    found = bd.enumerate_bonds(G, args.method)
    if args.broken:
        return {"broken_bonds": _sets(bd.broken_bonds(G, _order(args.order, G), found))}
    return {"bonds": _sets(b.edges for b in found)}


def cmd_complex(args):
    G = read_graph(args.file)
    order = _order(args.order, G)
    return {
        "fvector": bd.bb_free_fvector(G, order).to_json(),
        "homogeneous": bd.check_homogeneous(G, order).to_json(),
        "unbalanced_components": bd.proposition_check(G, order).to_json(),
    }


def cmd_circuits(args):
    G = read_graph(args.file)
    fs = system_for(G)
    return {"system": fs.to_json(), "check": verify_circuit_vectors(fs).to_json()}


def cmd_gt(args):
    T = read_graph(args.tree)
    H, order = bd.build_gt(T, args.girth)
    formula = bd.gt_formula(T)
    broken = bd.f0_broken(H, order)
    subset = fd_polynomial(H, 0)
    return {
        "graph": H.to_text(),
        "order": order,
        "formula": _poly(formula),
        "f0_broken": _poly(broken),
        "f0_subset": _poly(subset),
        "agree": formula == broken == subset,
    }


def _check(name, fn) -> Report:
    try:
        return fn()
    except BudgetExceededError as exc:
        return Report(name, True, {"incomplete": str(exc)}, skipped=True)


def _flow_check(G: SignedGraph, group: AbelianGroup) -> Report:
    name = f"flows[{group}]"
    k, eps = group.order, group.epsilon()
    failures = []
    details = {}
    nz = brute_force_count(G, group, nowhere_zero=True)
    poly_nz = fd_polynomial(G, eps)(k)
    details["nowhere_zero"] = nz
    if nz != poly_nz:
        failures.append({"check": "nowhere_zero_count", "brute_force": nz, "polynomial": poly_nz})
    D = default_orientation(G)
    brute = brute_force_table(G, group, orientation=D)
    details["all_flows"] = len(brute)
    if len(brute) != total_flow_count(G, group):
        failures.append({"check": "total_count", "brute_force": len(brute), "formula": total_flow_count(G, group)})
    if is_connected(G) and G.n > 0:
        fs = system_for(G)
        gen = lift_table(fs, flow_table(fs, group), group, D)
        if len(table_keys(gen)) != len(gen) or table_keys(gen) != table_keys(brute):
            failures.append({"check": "flow_set", "generated": len(gen), "brute_force": len(brute)})
    return Report(name, not failures, details, failures)


def _admissibility(G: SignedGraph, order) -> Report:
    f0 = fd_polynomial(G, 0)
    empty_broken = frozenset() in bd.broken_bonds(G, order)
    ok = f0.is_zero() == empty_broken
    return Report("admissibility", ok, {"f0_zero": f0.is_zero(), "empty_broken_bond": empty_broken})


def _expansion(G: SignedGraph, order) -> Report:
    a, b = bd.f0_broken(G, order), fd_polynomial(G, 0)
    return Report("broken_bond_expansion", a == b, {"f0_broken": a.to_json(), "f0": b.to_json()})


def cmd_verify(args):
    G = read_graph(args.file)
    order = _order(args.order, G)
    checks = []
    if is_connected(G) and G.n > 0:
        checks.append(_check("circuit_vectors", lambda: verify_circuit_vectors(system_for(G))))
    for text in VERIFY_GROUPS:
        group = AbelianGroup.parse(text)
        checks.append(_check(f"flows[{group}]", lambda group=group: _flow_check(G, group)))
    checks.append(_check("broken_bond_expansion", lambda: _expansion(G, order)))
    checks.append(_check("admissibility", lambda: _admissibility(G, order)))
    checks.append(_check("coefficients", lambda: bd.coefficient_report(G, order)))
    checks.append(_check("homogeneous", lambda: bd.check_homogeneous(G, order)))
    if not is_balanced(G):
        checks.append(_check("unbalanced_components", lambda: bd.proposition_check(G, order)))
    complete = not any(c.skipped and "incomplete" in c.details for c in checks)
    return {"checks": [c.to_json() for c in checks], "all_pass": all(checks), "complete": complete}


# ---------------------------------------------------------------------------
# plumbing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sgflow", description="Flows and flow polynomials of signed graphs.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, fn, help_text, order=False):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(fn=fn)
        if order:
            sp.add_argument("--order", help="edge ids from smallest to largest, comma separated")
        return sp

    sp = verb("info", cmd_info, "basic invariants")
    sp.add_argument("file")
    sp = verb("poly", cmd_poly, "the polynomial F_d")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--method", choices=("frontier", "subset"), default="frontier")
    sp.add_argument("file")
    sp = verb("f0", cmd_f0, "F_0 via broken bonds or subset expansion", order=True)
    sp.add_argument("--method", choices=("broken", "subset"), default="broken")
    sp.add_argument("file")
    sp = verb("flows", cmd_flows, "count or list group flows")
    sp.add_argument("--group", required=True, help="cyclic orders, e.g. 3 or 2,4")
    sp.add_argument("--nowhere-zero", action="store_true")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true", help="default")
    mode.add_argument("--list", action="store_true")
    sp.add_argument("file")
    sp = verb("bonds", cmd_bonds, "bonds or broken bonds", order=True)
    sp.add_argument("--broken", action="store_true")
    sp.add_argument("--method", choices=("connected", "literal"), default="connected")
    sp.add_argument("file")
    sp = verb("complex", cmd_complex, "f-vector and homogeneity of the broken-bond-free complex", order=True)
    sp.add_argument("file")
    sp = verb("circuits", cmd_circuits, "signed rooted tree and fundamental circuits")
    sp.add_argument("file")
    sp = verb("gt", cmd_gt, "build G_T from a tree and compare polynomials")
    sp.add_argument("--tree", required=True)
    sp.add_argument("--girth", type=int, default=1)
    sp = verb("verify", cmd_verify, "run every check on one graph", order=True)
    sp.add_argument("file")
    return p


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _error(code: str, message: str, **extra) -> dict:
    return {"error": {"code": code, "message": message, **extra}}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result = args.fn(args)
    except UsageError as exc:
        message = str(exc)
        if "usage:" not in message:
            message += "\n" + parser.format_usage()
        _emit(_error("usage", message))
        return 2
    except SystemExit as exc:  # --help
        return 0 if not exc.code else 2
    except FileNotFoundError as exc:
        _emit(_error("file_not_found", f"no such file: {exc.filename}"))
        return 1
    except UnicodeDecodeError as exc:
        _emit(_error("parse_error", f"file is not ASCII text: {exc.reason}"))
        return 1
    except OSError as exc:
        _emit(_error("io_error", f"{exc.strerror}: {exc.filename}"))
        return 1
    except BudgetExceededError as exc:
        _emit(_error(exc.code, str(exc), needed=exc.needed, budget=exc.budget))
        return 1
    except SgflowError as exc:
        _emit(_error(exc.code, str(exc)))
        return 1
    except ValueError as exc:
        _emit(_error("invalid_argument", str(exc)))
        return 1
    _emit(result)
    if args.verb == "verify" and not result["all_pass"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
