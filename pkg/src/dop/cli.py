"""Command line entry point ``dop``.

Exit codes: 0 success, 1 a verification check failed, 2 bad input or guard.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import analysis as an
from .double_poset import (
    AlternatingChain,
    DoublePoset,
    Walk,
    common_linear_extension,
    enumerate_chains,
    enumerate_cycles,
    is_crossed,
    render_walk,
    sign_str,
)
from .errors import DopError, GuardExceeded
from .generate import exhaustive_double_posets, random_double_posets
from .io import instance_to_dict, load_instance, render_instance
from .poset import bits, filters

ENUM_MAX_N = 8
VERIFY_MAX_N = 6


def format_inequality(normal: Sequence[int], rhs, labels: Sequence[str]) -> str:
    names = [f"f({x})" for x in labels] + ["t"]
    terms = []
    for c, name in zip(normal, names):
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else f"{abs(c)}*"
        if not terms:
            terms.append(("-" if c < 0 else "") + mag + name)
        else:
            terms.append(("- " if c < 0 else "+ ") + mag + name)
    return f"{' '.join(terms) or '0'} <= {rhs}"


def walk_dict(D: DoublePoset, W: Walk) -> dict:
    chain = isinstance(W, AlternatingChain)
    out = {
        "kind": "chain" if chain else "cycle",
        "walk": render_walk(D, W),
        "nodes": [D.labels[p] for p in W.nodes],
        "start_sign": sign_str(W.start_sign),
    }
    if chain:
        out["sign"] = sign_str(W.sign)
    cert = an.walk_certificate(D, W)
    out["functional"] = list(cert.normal[:-1])
    out["crossed"] = is_crossed(D, W)
    return out


def summary(D: DoublePoset) -> dict:
    return {"n": D.n, **instance_to_dict(D)}


# -- commands ---------------------------------------------------------------

def cmd_chains(D: DoublePoset, args) -> tuple[dict, int]:
    chains = enumerate_chains(D)
    return {"instance": summary(D), "count": len(chains), "chains": [walk_dict(D, c) for c in chains]}, 0


def cmd_cycles(D: DoublePoset, args) -> tuple[dict, int]:
    cycles = enumerate_cycles(D)
    return {"instance": summary(D), "count": len(cycles), "cycles": [walk_dict(D, c) for c in cycles]}, 0


def _facet_rows(D: DoublePoset, interleave: bool) -> list[dict]:
    rows = []
    for normal, rhs in an.horizontal_facets(D.n):
        rows.append({"inequality": format_inequality(normal, rhs, D.labels), "normal": list(normal),
                     "rhs": str(rhs), "walk": None})
    for c in an.facet_certificates(D, interleave):
        rows.append({"inequality": format_inequality(c.normal, c.rhs, D.labels), "normal": list(c.normal),
                     "rhs": str(c.rhs), "walk": render_walk(D, c.walk)})
    return rows


def cmd_facets(D: DoublePoset, args) -> tuple[dict, int]:
    rows = _facet_rows(D, args.interleave)
    return {"instance": summary(D), "count": len(rows), "facets": rows}, 0


def cmd_hrep(D: DoublePoset, args) -> tuple[dict, int]:
    rows = [{"normal": r["normal"], "rhs": r["rhs"], "inequality": r["inequality"]}
            for r in _facet_rows(D, args.interleave)]
    return {"instance": summary(D), "dim": D.n + 1, "inequalities": rows}, 0


def cmd_two_level(D: DoublePoset, args) -> tuple[dict, int]:
    viol = an.two_level_violations(D)
    seen, out = set(), []
    for W, p, q, s in viol:
        key = (p, q, s)
        if key in seen:
            continue
        seen.add(key)
        out.append({"segment": f"{D.labels[p]} <{sign_str(s)} {D.labels[q]}", "walk": render_walk(D, W)})
    return {"instance": summary(D), "two_level": not viol, "violations": out}, 0


def cmd_vertices(D: DoublePoset, args) -> tuple[dict, int]:
    rows = []
    for Fp in filters(D.plus):
        for Fm in filters(D.minus):
            cert = an.reduced_vertex_check(D, Fp, Fm)
            if cert is None:
                continue
            rows.append({
                "vertex": [(Fp >> p & 1) - (Fm >> p & 1) for p in range(D.n)],
                "f_plus": [D.labels[p] for p in bits(Fp)],
                "f_minus": [D.labels[p] for p in bits(Fm)],
            })
    return {"instance": summary(D), "count": len(rows), "vertices": rows}, 0


def cmd_compatible(D: DoublePoset, args) -> tuple[dict, int]:
    ext = common_linear_extension(D)
    out: dict = {"instance": summary(D), "compatible": ext is not None}
    if ext is not None:
        out["extension"] = {D.labels[p]: ext[p] for p in range(D.n)}
    else:
        out["cycle"] = render_walk(D, enumerate_cycles(D)[0])
    return out, 0


def cmd_verify(D: DoublePoset, args) -> tuple[dict, int]:
    rep = an.verify_instance(D, max_n=args.max_n)
    return {"instance": summary(D), **rep.to_dict()}, 0 if rep.passed else 1


FILE_COMMANDS: dict[str, Callable] = {
    "chains": cmd_chains,
    "cycles": cmd_cycles,
    "facets": cmd_facets,
    "hrep": cmd_hrep,
    "two-level": cmd_two_level,
    "vertices": cmd_vertices,
    "compatible": cmd_compatible,
    "verify": cmd_verify,
}


def cmd_sweep(args) -> tuple[dict, int]:
    if args.mode == "exhaustive":
        instances = exhaustive_double_posets(args.n)
    else:
        if args.n > args.max_n:
            raise GuardExceeded(f"n={args.n} exceeds the verification guard {args.max_n}")
        instances = random_double_posets(args.n, args.count, args.seed)
    totals: dict[str, int] = {name: 0 for name in an.CHECKS}
    failures = []
    count = 0
    for idx, D in enumerate(instances):
        count += 1
        rep = an.verify_instance(D, max_n=args.max_n)
        for name, ok in rep.checks.items():
            totals[name] += not ok
        if not rep.passed:
            failures.append({
                "index": idx,
                "instance": render_instance(D),
                "failed": [k for k, ok in rep.checks.items() if not ok],
                "details": rep.failures,
            })
    report = {
        "mode": args.mode,
        "n": args.n,
        "seed": args.seed if args.mode == "random" else None,
        "instances": count,
        "passed": not failures,
        "failing_instances_per_check": totals,
        "failures": failures,
    }
    return report, 0 if not failures else 1


# -- text output ------------------------------------------------------------

def _text(command: str, rep: dict) -> str:
    lines = []
    inst = rep.get("instance")
    if inst is not None:
        lines.append(f"instance: n={inst['n']} elements={inst['elements']}")
    if command in ("chains", "cycles"):
        key = command
        lines.append(f"{rep['count']} {key}")
        for w in rep[key]:
            flag = "crossed" if w["crossed"] else "uncrossed"
            lines.append(f"  {w['walk']}  [{flag}]")
    elif command in ("facets", "hrep"):
        rows = rep["facets"] if command == "facets" else rep["inequalities"]
        lines.append(f"{len(rows)} inequalities")
        for r in rows:
            via = f"    from {r['walk']}" if r.get("walk") else ""
            lines.append(f"  {r['inequality']}{via}")
    elif command == "two-level":
        lines.append(f"two-level: {'true' if rep['two_level'] else 'false'}")
        for v in rep["violations"]:
            lines.append(f"  violating segment {v['segment']} in {v['walk']}")
    elif command == "vertices":
        lines.append(f"{rep['count']} vertices of the reduced polytope")
        for v in rep["vertices"]:
            lines.append(f"  {tuple(v['vertex'])}  F+={v['f_plus']} F-={v['f_minus']}")
    elif command == "compatible":
        lines.append(f"compatible: {'true' if rep['compatible'] else 'false'}")
        if rep["compatible"]:
            lines.append(f"  common linear extension: {rep['extension']}")
        else:
            lines.append(f"  alternating cycle: {rep['cycle']}")
    elif command == "verify":
        for name, ok in rep["checks"].items():
            lines.append(f"  {'PASS' if ok else 'FAIL'} {name}")
            for msg in rep["failures"].get(name, []):
                lines.append(f"       {msg}")
        lines.append("counts: " + ", ".join(f"{k}={v}" for k, v in rep["counts"].items()))
        lines.append("result: " + ("pass" if rep["passed"] else "fail"))
    elif command == "sweep":
        seed = f" seed={rep['seed']}" if rep["seed"] is not None else ""
        lines.append(f"sweep {rep['mode']} n={rep['n']}{seed}: {rep['instances']} instances")
        for name, bad in rep["failing_instances_per_check"].items():
            lines.append(f"  {'PASS' if not bad else 'FAIL'} {name}" + (f" ({bad} instances)" if bad else ""))
        for f in rep["failures"][:10]:
            lines.append(f"  reproducer #{f['index']}: {f['instance']}")
        if len(rep["failures"]) > 10:
            lines.append(f"  ... {len(rep['failures']) - 10} more (use --json for all)")
        lines.append("result: " + ("pass" if rep["passed"] else "fail"))
    return "\n".join(lines)


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    raise TypeError(type(o).__name__)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dop", description="Double order polytopes from two partial orders.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in FILE_COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("file")
        p.add_argument("--json", action="store_true")
        p.add_argument("--max-n", type=int, default=VERIFY_MAX_N if name == "verify" else ENUM_MAX_N)
        if name in ("facets", "hrep"):
            p.add_argument("--interleave", action="store_true",
                           help="also drop walks with interleaving same-sign segments")
    p = sub.add_parser("sweep")
    p.add_argument("--mode", choices=("exhaustive", "random"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.add_argument("--max-n", type=int, default=VERIFY_MAX_N)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            rep, code = cmd_sweep(args)
        else:
            D = load_instance(args.file)
            if D.n > args.max_n:
                raise GuardExceeded(f"n={D.n} exceeds --max-n {args.max_n}")
            rep, code = FILE_COMMANDS[args.command](D, args)
    except DopError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(rep, indent=2, default=_default))
    else:
        print(_text(args.command, rep))
    return code


if __name__ == "__main__":
    sys.exit(main())
