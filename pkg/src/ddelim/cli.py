"""Command-line front end.

Exit codes: 0 definitive verdict, 2 inconclusive (valid only up to the level
tried), 1 usage or parse error, 3 resource budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Dict, List, Optional, Sequence

from . import bounds as B
from .ddpoly import measure
from .elim import (DEFAULT_SECONDS, DEFAULT_STEPS, iterative_deepening_eliminate,
                   sigma_power_membership, truncated_consistency, witness_refute)
from .errors import DDElimError, ParseError, ResourceBudgetExceeded
from .field import field_from_name
from .parser import ProblemFile, parse
from .seq import is_partial_solution, unroll_recurrence

EXIT_OK, EXIT_USAGE, EXIT_INCONCLUSIVE, EXIT_RESOURCE = 0, 1, 2, 3

BOUND_FUNCTIONS = {
    "G": ("n", "r", "D"),
    "F": ("n", "r", "m", "D"),
    "C": ("n", "r", "m", "D"),
    "L": ("n", "r", "d"),
    "tau0": ("n", "s", "h"),
    "train": ("n", "s", "h", "d"),
    "final_B": ("r", "s", "h", "d"),
    "ritt": ("n", "s"),
}


class UsageError(Exception):
    pass


def _budget_args(p: argparse.ArgumentParser):
    p.add_argument("--budget-steps", type=int, default=DEFAULT_STEPS,
                   help="reduction steps allowed per Groebner computation")
    p.add_argument("--budget-seconds", type=float, default=DEFAULT_SECONDS,
                   help="wall-clock seconds allowed per Groebner computation")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    common.add_argument("--timings", action="store_true",
                        help="include wall-clock seconds (reports are no longer byte-stable)")
    common.add_argument("--field", choices=["QQ", "QQ_t"],
                        help="ground field when the file has no field statement")

    ap = argparse.ArgumentParser(prog="ddelim", description="Elimination and consistency checks "
                                 "for differential-difference systems by finite prolongation.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("consistency", parents=[common], help="is 1 in the prolonged ideal?")
    p.add_argument("file")
    p.add_argument("--level", type=int, default=0, help="derivative and shift level")
    p.add_argument("--sigma-level", type=int, help="shift level (default: --level)")
    p.add_argument("--certificate", action="store_true", help="print the cofactor certificate")
    _budget_args(p)

    p = sub.add_parser("eliminate", parents=[common], help="search for an x-only consequence")
    p.add_argument("file")
    p.add_argument("--max-level", type=int, default=2)
    p.add_argument("--bound", type=int, help="level past which 'none found' is definitive")
    p.add_argument("--certificate", action="store_true")
    _budget_args(p)

    p = sub.add_parser("member", parents=[common], help="least m with S^m(f^m) in the prolonged ideal")
    p.add_argument("file")
    p.add_argument("--m-max", type=int, default=3)
    p.add_argument("--level", type=int, default=0)
    p.add_argument("--schedule", choices=["fixed", "m-first", "level-first"], default="fixed")
    p.add_argument("--plain", action="store_true", help="test f^m instead of S^m(f^m)")
    p.add_argument("--certificate", action="store_true")
    _budget_args(p)

    p = sub.add_parser("verify", parents=[common], help="check a window against the system")
    p.add_argument("file")
    p.add_argument("--ell", type=int, help="partial-solution length (default: width - h)")
    p.add_argument("--unroll", type=int, default=0, metavar="STEPS",
                   help="first extend the window by solving for the top shift")

    p = sub.add_parser("bounds", parents=[common], help="evaluate the bound tower")
    p.add_argument("--problem", dest="file", metavar="FILE",
                   help="problem file supplying a plug statement")
    p.add_argument("--fn", required=True, choices=sorted(BOUND_FUNCTIONS))
    p.add_argument("params", nargs="*", metavar="k=v", help="parameters, e.g. n=1 s=1 h=1")
    p.add_argument("--magnitude", action="store_true", help="evaluate in magnitude arithmetic")
    p.add_argument("--digit-budget", type=int, default=B.DEFAULT_DIGIT_BUDGET)
    p.add_argument("--plug", help="B_delta plug for final_B, e.g. 'affine:a=1,b=2'")
    p.add_argument("--sequences", action="store_true", help="include A and tau prefixes for train")
    return ap


# -- input

def _load(args) -> ProblemFile:
    path = args.file
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    default = field_from_name(args.field) if args.field else field_from_name("QQ")
    pf = parse(text, default)
    if args.field and pf.field_declared and pf.field.kind != args.field:
        raise UsageError(f"--field {args.field} conflicts with 'field {pf.field.kind}' in {path}")
    return pf


def _kv(items: Sequence[str]) -> Dict[str, int]:
    out = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"expected k=v, got {item!r}")
        try:
            out[key.strip()] = int(val)
        except ValueError:
            raise UsageError(f"parameter {key} must be an integer, got {val!r}") from None
        if out[key.strip()] < 0:
            raise UsageError(f"parameter {key} must be nonnegative")
    return out


def _plug_from(args, pf: Optional[ProblemFile]):
    if args.plug:
        name, _, rest = args.plug.partition(":")
        params = _kv([p for p in rest.split(",") if p])
        return name, params
    if pf is not None and pf.plug is not None:
        return pf.plug
    return None


# -- commands; each returns (report dict, exit code)

def _elim_report(rep, args) -> dict:
    d = rep.to_dict(timings=args.timings)
    if not getattr(args, "certificate", False):
        d.pop("certificate", None)
    return d


def _exit_for(rep) -> int:
    return EXIT_OK if rep.definitive else EXIT_INCONCLUSIVE


def cmd_consistency(args):
    pf = _load(args)
    rep = truncated_consistency(pf.equations, args.level, sigma_level=args.sigma_level,
                                certificate=args.certificate, max_steps=args.budget_steps,
                                max_seconds=args.budget_seconds)
    return _elim_report(rep, args), _exit_for(rep)


def cmd_eliminate(args):
    pf = _load(args)
    rep = iterative_deepening_eliminate(pf.equations, args.max_level, bound=args.bound,
                                        max_steps=args.budget_steps, max_seconds=args.budget_seconds)
    return _elim_report(rep, args), _exit_for(rep)


def cmd_member(args):
    pf = _load(args)
    if pf.target is None:
        raise UsageError("member needs a 'target <expr>;' statement")
    rep = sigma_power_membership(pf.target, pf.equations, args.m_max, args.level,
                                 shifted=not args.plain, schedule=args.schedule,
                                 max_steps=args.budget_steps, max_seconds=args.budget_seconds)
    return _elim_report(rep, args), _exit_for(rep)


def cmd_verify(args):
    pf = _load(args)
    w = pf.window_point()
    if w is None:
        raise UsageError("verify needs at least one 'window' statement")
    t0 = time.monotonic()
    if args.unroll:
        w = unroll_recurrence(pf.equations, w, args.unroll)
    h = max((0,) + tuple(_sigma_order(e) for e in pf.equations))
    ell = args.ell if args.ell is not None else w.width - h
    ok = is_partial_solution(pf.equations, w, ell)
    report = {
        "mode": "verify",
        "verdict": "partial-solution" if ok else "not-a-solution",
        "definitive": True,
        "length": ell,
        "window": {f"{fam}{k}": [w.field.format(a) for a in win] for (fam, k), win in w.windows},
    }
    code = EXIT_OK
    if pf.target is not None:
        refuted = witness_refute(pf.target, pf.equations, w)
        report["target"] = pf.target.to_text()
        report["witness_refutes_target"] = refuted
        if not refuted:
            report["definitive"] = False
            code = EXIT_INCONCLUSIVE
    if args.timings:
        report["seconds"] = round(time.monotonic() - t0, 6)
    return report, code


def _sigma_order(e) -> int:
    return measure(e).ord_sigma or 0


def cmd_bounds(args):
    pf = _load(args) if args.file else None
    params = _kv(args.params)
    needed = BOUND_FUNCTIONS[args.fn]
    missing = [k for k in needed if k not in params]
    extra = [k for k in params if k not in needed]
    if missing or extra:
        raise UsageError(f"--fn {args.fn} takes {' '.join(needed)}"
                         + (f"; missing {', '.join(missing)}" if missing else "")
                         + (f"; unexpected {', '.join(extra)}" if extra else ""))
    vals = [params[k] for k in needed]
    if args.fn not in ("tau0", "ritt", "final_B") and vals[0] < 1:
        raise UsageError(f"{args.fn} needs {needed[0]} >= 1")
    kw = {"digit_budget": args.digit_budget, "magnitude": args.magnitude}
    t0 = time.monotonic()
    report = {"mode": "bounds", "fn": args.fn, "params": {k: params[k] for k in needed}}
    extra_out = {}
    if args.fn == "tau0":
        value = B.BoundValue.of(B.tau0(*vals))
    elif args.fn == "ritt":
        value = B.BoundValue.of(B.ritt_order_bound(*vals))
    elif args.fn == "train":
        tb = B.train_bound(*vals, **kw)
        value = tb.value
        if args.sequences:
            extra_out = {"A": [a.to_dict() for a in tb.A], "tau": [t.to_dict() for t in tb.tau]}
        if tb.note:
            extra_out["note"] = tb.note
    elif args.fn == "final_B":
        plug = _plug_from(args, pf)
        if plug is None:
            raise UsageError("final_B needs a B_delta plug (--plug or a 'plug' statement)")
        try:
            fn = B.make_plug(plug[0], **plug[1])
        except (ValueError, TypeError) as exc:
            raise UsageError(str(exc)) from None
        value, tb = B.final_B(*vals, fn, **kw)
        extra_out = {"plug": {"name": plug[0], "params": dict(sorted(plug[1].items()))},
                     "train": tb.value.to_dict()}
    else:
        value = getattr(B, f"{args.fn}_bound")(*vals, **kw)
    if value.is_exact:
        verdict = "exact"
    elif value.magnitude.tier == "overflow":
        verdict = "overflow"
    else:
        verdict = "upper-bound"
    report.update({"verdict": verdict, "definitive": verdict != "overflow", "value": value.to_dict()})
    report.update(extra_out)
    if args.timings:
        report["seconds"] = round(time.monotonic() - t0, 6)
    return report, (EXIT_OK if verdict != "overflow" else EXIT_INCONCLUSIVE)


COMMANDS = {"consistency": cmd_consistency, "eliminate": cmd_eliminate, "member": cmd_member,
            "verify": cmd_verify, "bounds": cmd_bounds}


# -- output

def render_text(report: dict) -> str:
    lines = []
    for key, val in report.items():
        if key == "certificate" and val:
            lines.append("certificate:")
            lines += [f"  ({c['cofactor']}) * ({c['generator']})" for c in val]
        elif key == "value" and isinstance(val, dict):
            if val.get("exact") is not None:
                lines.append(f"value: {val['exact']}")
            else:
                lines.append(f"value: <= {_mag_text(val['magnitude'])}")
        elif isinstance(val, (dict, list)):
            lines.append(f"{key}: {json.dumps(val)}")
        elif val is not None:
            lines.append(f"{key}: {val}")
    return "\n".join(lines)


def _mag_text(d: dict) -> str:
    if d["tier"] == "overflow":
        return "overflow"
    if d["tier"] == "tetration":
        return f"2^^({_mag_text(d['height'])})"
    depth, top = d["depth"], d["top"]
    if depth == 0:
        return f"{top:.6g}"
    if depth <= 3:
        return "2^" * depth + f"{top:.6g}"
    return f"tower({depth}, {top:.6g})"


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        report, code = COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"{args.file}:{exc}", file=err)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"ddelim: {exc}", file=err)
        return EXIT_USAGE
    except ResourceBudgetExceeded as exc:
        report = {"mode": args.command, "verdict": "resource-budget-exceeded", "definitive": False,
                  "message": str(exc), "steps": exc.steps,
                  "last_level": list(exc.last_level) if exc.last_level else None}
        code = EXIT_RESOURCE
    except DDElimError as exc:
        print(f"ddelim: {exc}", file=err)
        return EXIT_USAGE
    if args.json:
        print(json.dumps(report, indent=2), file=out)
    else:
        print(render_text(report), file=out)
    return code


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
