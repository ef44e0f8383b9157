"""Command-line front end: ``hopfchar {adjoint,classfun,verify,normalize-cocycle,group-info}``.

Reports are JSON with sorted keys, written to ``--out`` or stdout; a short
summary goes to stderr.  Exit codes: 0 all checks pass, 1 a mathematical
check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .adjoint import AdjointAlgebra, adjoint_solve, th11_witnesses, universal_property_check
from .battery import ROWS, Instance, build_instance, compute, load_suite, run_battery
from .classfun import c_psi_space, cf_dual_model, class_functions, group_theoretical_adjoint, group_theoretical_cf
from .cocycles import normalize_cocycle
from .groups import conjugacy_classes, right_coset_reps
from .hopf import yd_check
from .io import (
    InputError,
    cocycle_from_json,
    cocycle_to_json,
    comodule_algebra_from_json,
    dumps_report,
    hopf_from_json,
    load_group,
    load_json,
    matrix_to_json,
    resolve_file,
    resolve_subgroup,
    scalar_to_json,
    subgroup_to_json,
    yd_to_json,
)


def _beta_to_json(A: AdjointAlgebra, v: dict) -> list:
    """Sparse beta : H -> P as [h-label, p-label, scalar] entries."""
    hl = A.hopf.labels
    pl = A.target.labels or (A.algebra.labels if A.is_regular else None)
    dP = A.target.dim
    out = []
    for u, c in sorted(v.items()):
        h, p = divmod(u, dP)
        out.append([hl[h], pl[p] if pl else p, scalar_to_json(c)])
    return out


def _instance_from_args(args) -> Instance:
    if args.group is None:
        raise InputError("--group is required for group and dual-group modes")
    return build_instance(args.mode, args.group, args.subgroup, args.cocycle, args.rep)


def _generic_inputs(args):
    if not args.hopf or not args.algebra:
        raise InputError("generic mode needs --hopf FILE and --algebra FILE")
    H = hopf_from_json(load_json(args.hopf), args.hopf)
    K = comodule_algebra_from_json(load_json(args.algebra), H, args.algebra)
    return H, K


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_adjoint(args) -> tuple[dict, bool, str]:
    full = args.check_level == "full"
    if args.mode == "generic":
        H, K = _generic_inputs(args)
        A = adjoint_solve(H, K)
        V = A.yd
        fails = yd_check(V, algebra=True)
        checks = {
            "fpdim": {"status": "pass" if A.dim == H.dim else "fail"},
            "yd-module": {"status": "fail", "witness": repr(fails[0])} if fails else {"status": "pass"},
            "th11": {"status": "fail" if th11_witnesses(A) else "pass"},
        }
        report = {"mode": "generic", "dim": A.dim, "dim_hopf": H.dim, "basis": [_beta_to_json(A, b) for b in A.basis], **yd_to_json(V)}
    else:
        inst = _instance_from_args(args)
        c = compute(inst)
        A = c.adjoint
        battery = run_battery(inst, full)
        checks = {k: v for k, v in battery["rows"].items() if v["status"] != "skip"}
        V = c.generic_in_closed if c.generic_in_closed is not None else A.yd
        B = c.closed_basis
        report = {
            "instance": inst.describe(),
            "dim": A.dim,
            "dim_hopf": A.hopf.dim,
            "basis": [{"name": B.name(i), "vector": _beta_to_json(A, v)} for i, v in enumerate(B.elements)],
            **yd_to_json(V),
        }
        if inst.mode == "dual-group":
            report["tf"] = {inst.group.labels[f]: matrix_to_json(T) for f, T in sorted(B.tf.items())}
    if full:
        up = universal_property_check(A)
        checks["universal-property"] = {"status": "pass" if up.ok else "fail", "modules": up.modules}
    report["checks"] = checks
    ok = all(v["status"] != "fail" for v in checks.values())
    summary = f"adjoint: dim {report['dim']} (dim H = {report['dim_hopf']}), checks {'pass' if ok else 'FAIL'}"
    return report, ok, summary


def cmd_classfun(args) -> tuple[dict, bool, str]:
    if args.mode == "generic":
        H, K = _generic_inputs(args)
        cf = class_functions(H, K)
        report = {"mode": "generic", "dim_cf": cf.dim, "dim_model": None, "match": None}
        return report, True, f"classfun: dim CF = {cf.dim}"
    inst = _instance_from_args(args)
    G, F, psi = inst.group, inst.subgroup, inst.psi
    if inst.mode == "group":
        c = compute(inst)
        cf = class_functions(c.adjoint.hopf, c.adjoint.algebra, A=c.adjoint)
        model = c_psi_space(G, F, psi)
        gt = group_theoretical_adjoint(G, F, psi)
        gcf = group_theoretical_cf(G, F, psi)
        report = {
            "instance": inst.describe(),
            "dim_cf": cf.dim,
            "dim_model": model.dim,
            "model": "C_psi(G,F)",
            "match": cf.dim == model.dim,
            "basis": [[[G.labels[s], G.labels[g], scalar_to_json(x)] for (s, g), x in sorted(phi.items())] for phi in model.basis],
            "group_theoretical": {
                "dim_object": gt.dim,
                "formula_vs_transport": "match" if not gt.mismatches() else gt.mismatches(),
                "dim_end": gcf.dim_end,
                "dim_c1": gcf.dim_c1,
                "dim_cpsi": gcf.dim_cpsi,
                "end_equals_c1": gcf.matches_c1,
                "end_equals_cpsi": gcf.matches_cpsi,
            },
        }
        ok = report["match"] and not gt.mismatches()
    else:
        dm = cf_dual_model(G, F, psi, inst.rep)
        cos = right_coset_reps(G, F)
        report = {
            "instance": inst.describe(),
            "dim_cf": dm.brute_force_dim,
            "dim_model": len(cos.reps),
            "model": "k^S",
            "match": dm.brute_force_dim == len(cos.reps) and dm.ok,
            "basis": [G.labels[s] for s in cos.reps],
        }
        if dm.failures:
            report["witness"] = repr(dm.failures[0])
        ok = report["match"]
    summary = f"classfun: dim CF = {report['dim_cf']}, model {report['model']} = {report['dim_model']}, {'match' if ok else 'MISMATCH'}"
    return report, ok, summary


def cmd_verify(args) -> tuple[dict, bool, str]:
    instances: list[Instance] = []
    for ref in args.suite or []:
        instances.extend(load_suite(ref))
    if args.group is not None:
        instances.append(_instance_from_args(args))
    if not instances:
        raise InputError("nothing to verify: give --suite NAME|FILE or --group/--subgroup/--cocycle")
    results = [run_battery(inst, args.check_level == "full") for inst in instances]
    ok = all(r["pass"] for r in results)
    counts = {tag: sum(r["rows"][tag]["status"] == "fail" for r in results) for tag in ROWS}
    report = {"instances": results, "rows": list(ROWS), "failures_per_row": counts, "pass": ok}
    nfail = sum(not r["pass"] for r in results)
    return report, ok, f"verify: {len(results)} instances, {nfail} failing"


def cmd_normalize_cocycle(args) -> tuple[dict, bool, str]:
    if args.group is None or args.cocycle is None:
        raise InputError("normalize-cocycle needs --group and --cocycle")
    G, _, _ = load_group(args.group)
    path = resolve_file(args.cocycle, "cocycles")
    psi = cocycle_from_json(load_json(path), G, str(path), require_normalized=False)
    out, mu = normalize_cocycle(psi)
    report = {
        "cocycle": cocycle_to_json(out),
        "coboundary": {G.labels[f]: scalar_to_json(x) for f, x in sorted(mu.items())},
        "input_was_normalized": out == psi,
    }
    return report, True, "normalize-cocycle: done"


def cmd_group_info(args) -> tuple[dict, bool, str]:
    if args.group is None:
        raise InputError("group-info needs --group")
    G, subs, name = load_group(args.group)
    report = {
        "name": name,
        "order": G.order,
        "labels": list(G.labels),
        "abelian": G.is_abelian(),
        "exponent": G.exponent(),
        "conjugacy_classes": [[G.labels[g] for g in cl] for cl in conjugacy_classes(G)],
        "subgroups": {k: v for k, v in sorted(subs.items())},
    }
    if args.subgroup is not None:
        F = resolve_subgroup(G, subs, args.subgroup)
        cos = right_coset_reps(G, F)
        report["subgroup"] = subgroup_to_json(F)
        report["coset_representatives"] = [G.labels[s] for s in cos.reps]
    return report, True, f"group-info: {name} of order {G.order}"


COMMANDS = {
    "adjoint": cmd_adjoint,
    "classfun": cmd_classfun,
    "verify": cmd_verify,
    "normalize-cocycle": cmd_normalize_cocycle,
    "group-info": cmd_group_info,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hopfchar", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--group", help="group file or bundled name (C2, C4, Klein, S3, D4, Q8)")
    parser.add_argument("--subgroup", help="subgroup name from the group file, 'whole', 'trivial', or comma-separated labels")
    parser.add_argument("--cocycle", help="cocycle file, bundled name, or 'trivial'")
    parser.add_argument("--rep", help="projective representation file, bundled name, or 'trivial'")
    parser.add_argument("--mode", choices=["group", "dual-group", "generic"], default="group")
    parser.add_argument("--hopf", help="Hopf algebra file (generic mode)")
    parser.add_argument("--algebra", help="comodule algebra file (generic mode)")
    parser.add_argument("--suite", action="append", help="instance suite file or bundled name (verify; repeatable)")
    parser.add_argument("--out", help="write the JSON report here instead of stdout")
    parser.add_argument("--check-level", choices=["fast", "full"], default="fast")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, ok, summary = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    text = dumps_report(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(summary, file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
