"""Command-line front end.

    hmfree check-hom --file inst.json --map shift
    hmfree free-extend --file inst.json --map f --term "m(x, m(y, y))"
    hmfree verify-diagrams --file inst.json --depth 2
    hmfree verify-embedding --file inst.json --depth 3
    hmfree hm-eval --file inst.json --expr "measure(f, 0, 1, {p})"

Exit status: 0 when every check passes, 1 when some check fails, 2 when the
input is invalid.  ``HMFREE_DEPTH`` and ``HMFREE_FUEL`` supply defaults for
``--depth`` and ``--fuel``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
from pathlib import Path

from .embedding import Retraction, build_retraction_uniform, theorem2_pipeline
from .hm import (
    SampledHMValued,
    check_embedding_homomorphism,
    check_h_identity,
    check_hm_preserves_identities,
    check_lift_naturality,
    check_naturality_square,
    hm_embed,
    lift_op,
)
from .instances import Instance, InstanceError, read_instance
from .quotient import FuelExhausted
from .report import Report, plain
from .signature import homomorphism_violation
from .stepfn import StepFn, in_neighborhood, measure_where, pointwise_map, rational, value_at, zip_many
from .terms import TermError, check_term, free_extension, parse_term

REPORT_SCHEMA_VERSION = 1
DEFAULT_DEPTH = 2


class UsageError(ValueError):
    pass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name}={raw!r} is not an integer") from None


def _digest(path: str, args: dict) -> str:
    h = hashlib.sha256(Path(path).read_bytes())
    h.update(json.dumps(args, sort_keys=True).encode())
    return h.hexdigest()


# commands -------------------------------------------------------------------

def cmd_check_hom(inst: Instance, args) -> list[Report]:
    h = inst.lookup("maps", args.map)
    dom, cod = inst.map_ends[args.map]
    A = inst.lookup("algebras", dom)
    B = inst.lookup("algebras", cod)
    rep = Report(f"{args.map} is a homomorphism {dom} -> {cod}")
    bad = homomorphism_violation(h, A, B)
    if bad is None:
        rep.checked = sum(len(A.carrier) ** n for n, _ in A.signature.operations())
    else:
        n, c, xs, lhs, rhs = bad
        rep.fail({"op": c, "args": xs}, lhs, rhs)
    return [rep]


def cmd_free_extend(inst: Instance, args) -> list[Report]:
    f = inst.lookup("maps", args.map)
    dom, cod = inst.map_ends[args.map]
    X = inst.lookup("generator_sets", dom)
    K = inst.lookup("algebras", cod)
    t = check_term(parse_term(args.term), inst.signature, X)
    ext = free_extension(f, K)
    rep = Report(f"free extension of {args.map} at {t}")
    for x in X:
        rep.compare({"generator": x}, ext(parse_term(x)), f(x))
    rep.notes["term"] = str(t)
    rep.notes["value"] = ext(t)
    return [rep]


def _h_identity_jobs(inst: Instance) -> list[tuple[str, str | None]]:
    jobs = inst.diagrams.get("h_identity")
    if jobs is not None:
        return [(j["generators"], j.get("rewrite_system")) for j in jobs]
    systems = [None, *inst.rewrite_systems]
    return [(g, R) for g in inst.generator_sets for R in systems]


def cmd_verify_diagrams(inst: Instance, args) -> list[Report]:
    reports = []
    for name in inst.diagrams.get("naturality", list(inst.maps)):
        f = inst.lookup("maps", name)
        rep = check_naturality_square(f, f.domain)
        rep.name = f"naturality of hm along {name}"
        reports.append(rep)
    for name, A in inst.algebras.items():
        reports.append(check_embedding_homomorphism(A))
    for name in inst.diagrams.get("lift_naturality", []):
        p = inst.lookup("maps", name)
        dom, cod = inst.map_ends[name]
        A, B = inst.lookup("algebras", dom), inst.lookup("algebras", cod)
        sample = SampledHMValued.build(A, n_random=4, seed=args.seed, closure_rounds=0)
        rep = check_lift_naturality(p, A, B, list(sample))
        rep.name = f"HM({name}) commutes with lifted operations"
        reports.append(rep)
    for job in inst.diagrams.get("identities", []):
        A = inst.lookup("algebras", job["algebra"])
        R = inst.lookup("rewrite_systems", job["rewrite_system"])
        sample = SampledHMValued.build(A, n_random=3, seed=args.seed, closure_rounds=0)
        for rule in R.rules:
            reports.append(check_hm_preserves_identities(A, rule, sample))
    for gens, rname in _h_identity_jobs(inst):
        X = inst.lookup("generator_sets", gens)
        R = None if rname is None else inst.lookup("rewrite_systems", rname)
        rep = check_h_identity(inst.signature, X, args.depth, R)
        rep.name += f" over {gens}" + (f" mod {rname}" if rname else "")
        reports.append(rep)
    return reports


def cmd_verify_embedding(inst: Instance, args) -> list[dict]:
    out = []
    if not inst.embeddings:
        raise UsageError("instance has no 'embeddings' section")
    for name, entry in inst.embeddings.items():
        try:
            X = inst.lookup("generator_sets", entry["subspace"])
            Y = inst.lookup("generator_sets", entry["ambient"])
        except KeyError as exc:
            raise InstanceError(f"embedding {name!r} lacks field {exc}") from None
        r: Retraction
        if "retraction" in entry:
            r = inst.lookup("retractions", entry["retraction"])
        else:
            r = build_retraction_uniform(X, Y)
        rname = entry.get("rewrite_system")
        R = None if rname is None else inst.lookup("rewrite_systems", rname)
        rep = theorem2_pipeline(inst.signature, X, Y, r, R, args.depth)
        body = rep.to_json()
        body["name"] = name
        body["summary"] = rep.summary()
        out.append(body)
    return out


# hm-eval expressions ----------------------------------------------------------

_EXPR_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_']*)|([(){},]))")


def _parse_expr(text: str):
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _EXPR_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise UsageError(f"cannot parse expression at {text[pos:]!r}")
        if m.group(1):
            toks.append(("num", m.group(1)))
        elif m.group(2):
            toks.append(("name", m.group(2)))
        else:
            toks.append(("sym", m.group(3)))
        pos = m.end()
    i = 0

    def take(kind=None, val=None):
        nonlocal i
        if i >= len(toks):
            raise UsageError(f"unexpected end of expression {text!r}")
        tok = toks[i]
        if (kind and tok[0] != kind) or (val and tok[1] != val):
            raise UsageError(f"unexpected {tok[1]!r} in {text!r}")
        i += 1
        return tok

    def peek():
        return toks[i] if i < len(toks) else (None, None)

    def arg():
        kind, val = peek()
        if kind == "num":
            take()
            return ("num", val)
        if (kind, val) == ("sym", "{"):
            take()
            items = []
            while peek() != ("sym", "}"):
                items.append(take()[1])
                if peek() == ("sym", ","):
                    take()
            take("sym", "}")
            return ("set", [x for x in items])
        name = take("name")[1]
        if peek() == ("sym", "("):
            take()
            args = []
            while peek() != ("sym", ")"):
                args.append(arg())
                if peek() == ("sym", ","):
                    take()
            take("sym", ")")
            return ("call", name, args)
        return ("name", name)

    tree = arg()
    if i != len(toks):
        raise UsageError(f"trailing input in {text!r}")
    return tree


def _eval_expr(inst: Instance, tree):
    kind = tree[0]
    if kind == "num":
        return rational(tree[1])
    if kind == "set":
        return frozenset(tree[1])
    if kind == "name":
        return inst.stepfns.get(tree[1], tree[1])
    _, fname, raw = tree
    if fname == "lift":
        A = inst.lookup("algebras", raw[0][1])
        c = raw[1][1]
        fs = [_stepfn(inst, a) for a in raw[2:]]
        return lift_op(A, len(fs), c, fs)
    args = [_eval_expr(inst, a) for a in raw]
    if fname == "measure":
        f, a, b, V = args
        return measure_where(_as_stepfn(f), a, b, V)
    if fname == "neighborhood":
        g, a, b, V, eps, base = args
        return in_neighborhood(_as_stepfn(g), a, b, V, eps, _as_stepfn(base))
    if fname == "value":
        f, t = args
        return value_at(_as_stepfn(f), t)
    if fname == "const":
        return hm_embed(args[0])
    if fname == "zip":
        return zip_many([_as_stepfn(f) for f in args])
    if fname == "map":
        m = inst.lookup("maps", raw[0][1])
        return pointwise_map(m.table, _as_stepfn(args[1]))
    raise UsageError(f"unknown function {fname!r}")


def _stepfn(inst, tree):
    return _as_stepfn(_eval_expr(inst, tree))


def _as_stepfn(x):
    if not isinstance(x, StepFn):
        raise UsageError(f"{x!r} is not a step function")
    return x


def _render(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def cmd_hm_eval(inst: Instance, args) -> list[Report]:
    if args.expr:
        queries = [{"expr": args.expr, "expect": args.expect}]
    else:
        queries = inst.diagrams.get("queries", [])
        if not queries:
            raise UsageError("give --expr or a 'diagrams.queries' list in the instance")
    reports = []
    for q in queries:
        result = _render(_eval_expr(inst, _parse_expr(q["expr"])))
        rep = Report(q["expr"])
        rep.notes["result"] = result
        if q.get("expect") is None:
            rep.passed_case()
        else:
            rep.compare({"expr": q["expr"]}, result, str(q["expect"]))
        reports.append(rep)
    return reports


COMMANDS = {
    "check-hom": cmd_check_hom,
    "free-extend": cmd_free_extend,
    "verify-diagrams": cmd_verify_diagrams,
    "verify-embedding": cmd_verify_embedding,
    "hm-eval": cmd_hm_eval,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hmfree", description="Free algebras and the HM functor, checked.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--file", required=True, help="instance file (JSON)")
        p.add_argument("--depth", type=int, default=None, help="term depth bound")
        p.add_argument("--fuel", type=int, default=None, help="rewrite step budget")
        p.add_argument("--format", choices=["json", "text"], default="json")
        p.add_argument("--seed", type=int, default=0, help="seed for sampled step functions")
        if name in ("check-hom", "free-extend"):
            p.add_argument("--map", required=True)
        if name == "free-extend":
            p.add_argument("--term", required=True)
        if name == "hm-eval":
            p.add_argument("--expr")
            p.add_argument("--expect")
    return parser


def run(argv: list[str] | None = None) -> tuple[dict, int]:
    """Parse arguments, run the command, return ``(report, exit_status)``."""
    return execute(build_parser().parse_args(argv))


def execute(args: argparse.Namespace) -> tuple[dict, int]:
    params = {"command": args.command}
    report: dict = {"schema_version": REPORT_SCHEMA_VERSION, "command": args.command}
    try:
        args.depth = args.depth if args.depth is not None else _env_int("HMFREE_DEPTH", DEFAULT_DEPTH)
        args.fuel = args.fuel if args.fuel is not None else _env_int("HMFREE_FUEL", None)
        if args.depth < 0:
            raise UsageError("--depth must be >= 0")
        if args.fuel is not None and args.fuel <= 0:
            raise UsageError("--fuel must be positive")
        for k in ("depth", "fuel", "seed", "map", "term", "expr", "expect"):
            if getattr(args, k, None) is not None:
                params[k] = getattr(args, k)
        report["parameters"] = params
        report["inputs_digest"] = _digest(args.file, params)
        inst = read_instance(args.file, fuel=args.fuel)
        checks = COMMANDS[args.command](inst, args)
    except (InstanceError, UsageError, TermError, FuelExhausted, ValueError, KeyError, OSError) as exc:
        report["status"] = "error"
        report["error"] = f"{type(exc).__name__}: {exc}"
        report["exit_status"] = 2
        return report, 2
    rendered = [c.to_json() if isinstance(c, Report) else c for c in checks]
    ok = all(c["status"] == "pass" for c in rendered)
    report["checks"] = plain(rendered)
    report["status"] = "pass" if ok else "fail"
    report["exit_status"] = 0 if ok else 1
    return report, report["exit_status"]


def render_text(report: dict) -> str:
    lines = [f"{report['command']}: {report['status'].upper()}"]
    if "error" in report:
        lines.append(f"  error: {report['error']}")
    for c in report.get("checks", []):
        if "summary" in c:
            lines.extend("  " + s for s in c["summary"].splitlines())
            continue
        line = f"  {c['status'].upper():4} {c['name']}: {c['checked']} checked, {c['failed']} failed"
        notes = c.get("notes", {})
        if "result" in notes:
            line += f" -> {notes['result']}"
        if "value" in notes:
            line += f" -> {notes['value']}"
        lines.append(line)
        for w in c["failures"][:3]:
            lines.append(f"       witness {w['witness']}: {w['lhs']} != {w['rhs']}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    report, status = execute(args)
    if args.format == "text":
        print(render_text(report))
    else:
        print(json.dumps(report, indent=2, sort_keys=True))
    return status


if __name__ == "__main__":
    sys.exit(main())
