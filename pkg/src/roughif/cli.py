"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 a theorem failed, 3 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import io
from .approximation import lower_crisp, lower_if, upper_crisp, upper_if, boundary_crisp
from .core import SCALE, CrispSet, CutParams, Partition, format_degree, to_ticks
from .equality import KIND_LABELS, EqualityVerdict, Side, classify
from .errors import KindMismatch, RoughIFError, SpaceTooLarge, UnknownProperty, ValidationError
from .oracle import properties as props
from .oracle.generate import InstanceBatch, InstanceSpec, grid_params, step_ticks
from .oracle.search import PropertyReport, Status, check_batches, replay, search_counterexample

EXIT_OK, EXIT_INVALID, EXIT_FAILED, EXIT_USAGE = 0, 1, 2, 3

DEFAULT_ALPHA = "0"
DEFAULT_BETA = "0.9999"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _load(args) -> io.InstanceFile:
    inst = io.load(args.instance)
    if getattr(args, "table", None):
        attrs = [a for a in (args.attrs or "").split(",") if a]
        part = io.partition_from_attributes(io.read_table(args.table), attrs)
        if set(part.universe) != set(inst.universe):
            raise ValidationError("table objects do not match the instance universe")
        inst = inst.with_partition(Partition(inst.universe, part.blocks))
    inst.require_partition()
    return inst


def _params(args, inst: io.InstanceFile | None = None) -> CutParams:
    if args.alpha is None and args.beta is None and inst is not None and inst.params is not None:
        return inst.params
    alpha = DEFAULT_ALPHA if args.alpha is None else args.alpha
    beta = DEFAULT_BETA if args.beta is None else args.beta
    return CutParams(to_ticks(alpha), to_ticks(beta))


def _cut_list(c: CrispSet) -> list[str]:
    return list(c)


def _fmt_set(c: CrispSet) -> str:
    if c.is_full:
        return "{" + ", ".join(c) + "} = U"
    return "{" + ", ".join(c) + "}" if c.members else "{} (empty)"


# approx ---------------------------------------------------------------------

def cmd_approx(args) -> int:
    inst = _load(args)
    r = inst.partition
    x = inst.get(args.set)
    sides = ["lower", "upper"] if args.side == "both" else [args.side]
    payload: dict = {"set": args.set, "kind": args.kind,
                     "partition": [list(b) for b in r.blocks]}
    lines = [f"set {args.set} ({args.kind}); classes: "
             + " | ".join("{" + ", ".join(b) + "}" for b in r.blocks)]
    if args.kind == "crisp":
        if not x.is_crisp:
            raise KindMismatch(f"set {args.set!r} is not crisp (degrees must be (1,0) or (0,1))")
        members = CrispSet.from_mask(inst.universe, x.mu == SCALE)
        approx = {"lower": lower_crisp(r, members), "upper": upper_crisp(r, members)}
        for side in sides:
            payload[side] = _cut_list(approx[side])
            lines.append(f"{side}: {_fmt_set(approx[side])}")
        if args.side == "both":
            b = boundary_crisp(r, members)
            payload["boundary"] = _cut_list(b)
            payload["definable"] = b.is_empty
            lines.append(f"boundary: {_fmt_set(b)}")
    else:
        if args.kind == "fuzzy" and not x.is_fuzzy:
            raise KindMismatch(f"set {args.set!r} is not fuzzy (non-membership must be 1 - membership)")
        approx = {"lower": lower_if(r, x), "upper": upper_if(r, x)}
        for side in sides:
            a = approx[side]
            lines.append(f"{side} approximation:")
            if args.kind == "fuzzy":
                payload[side] = {e: m for e, (m, _) in a.to_mapping().items()}
                lines += [f"  {e:<8} {m}" for e, m in payload[side].items()]
            else:
                payload[side] = {e: list(p) for e, p in a.to_mapping().items()}
                lines += [f"  {e:<8} {m:<6} {v}" for e, (m, v) in a.to_mapping().items()]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


# compare --------------------------------------------------------------------

def verdict_dict(v: EqualityVerdict) -> dict:
    out = {}
    for sv in (v.bottom, v.top):
        out[sv.side.value] = {
            "equal": sv.equal,
            "equivalent": sv.equivalent,
            "left_cut": _cut_list(sv.left_cut),
            "right_cut": _cut_list(sv.right_cut),
        }
    out["kinds"] = {k.value: bool(flag) for k, flag in v.kinds.items()}
    return out


def _yn(flag) -> str:
    return "yes" if flag else "no"


def cmd_compare(args) -> int:
    inst = _load(args)
    p = _params(args, inst)
    x, y = inst.get(args.a), inst.get(args.b)
    v = classify(x, y, inst.partition, p)
    payload = {"sets": [args.a, args.b],
               "params": {"alpha": format_degree(p.alpha), "beta": format_degree(p.beta)}}
    payload.update(verdict_dict(v))
    lines = [f"{args.a} vs {args.b} at (alpha, beta) = {p}"]
    for sv, what in ((v.bottom, "lower"), (v.top, "upper")):
        lines.append(f"{sv.side.value} ({what} approximations):")
        lines.append(f"  cut of {args.a}: {_fmt_set(sv.left_cut)}")
        lines.append(f"  cut of {args.b}: {_fmt_set(sv.right_cut)}")
        together = "empty" if sv.side is Side.BOTTOM else "U"
        lines.append(f"  equal: {_yn(sv.equal)}   {together} or not together: {_yn(sv.equivalent)}")
    for kind, flag in v.kinds.items():
        lines.append(f"{KIND_LABELS[kind]}: {_yn(flag)}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


# props ----------------------------------------------------------------------

# "all" is the verified suite: algebra, guaranteed implications, lattice
GROUPS = {
    "all": lambda p: p.id in props.ALGEBRA + props.GUARANTEED + ("lattice",),
    "theorems": lambda p: p.kind == props.THEOREM,
    "non-theorems": lambda p: p.kind == props.NON_THEOREM,
    "conjectures": lambda p: p.kind == props.CONJECTURE,
    "registry": lambda p: True,
}


def _select(spec: str) -> list[props.Property]:
    out: list[props.Property] = []
    for token in (t.strip() for t in spec.split(",")):
        if not token:
            continue
        if token in GROUPS:
            out += [p for p in props.REGISTRY.values() if GROUPS[token](p)]
        else:
            out.append(props.get(token))
    seen, uniq = set(), []
    for p in out:
        if p.id not in seen:
            seen.add(p.id)
            uniq.append(p)
    return uniq


def _assignments(names: list[str], arity: int) -> list[tuple[str, ...]]:
    pairs = [(a, b) for a in names for b in names if a != b]
    if arity == 2:
        return pairs
    if arity == 4:
        return [p + q for p in pairs for q in pairs]
    return [(a,) for a in names]


def file_batch(inst: io.InstanceFile, prop: props.Property,
               params: list[CutParams]) -> InstanceBatch | None:
    names = list(inst.sets)
    assigns = _assignments(names, prop.arity)
    if not assigns:
        return None
    k, P = prop.arity, len(params)
    mu = np.stack([np.stack([inst.sets[a[i]].mu for a in assigns]) for i in range(k)])
    nu = np.stack([np.stack([inst.sets[a[i]].nu for a in assigns]) for i in range(k)])
    mu = np.repeat(mu, P, axis=1)
    nu = np.repeat(nu, P, axis=1)
    alpha = np.tile(np.array([p.alpha for p in params], np.int32), len(assigns))
    beta = np.tile(np.array([p.beta for p in params], np.int32), len(assigns))
    return InstanceBatch(inst.partition, prop.roles, mu, nu, alpha, beta,
                         np.arange(mu.shape[1]))


def run_props(inst: io.InstanceFile, selected, params) -> list[PropertyReport]:
    reports = []
    for prop in selected:
        batch = file_batch(inst, prop, params)
        if batch is None:
            status = Status.NO_WITNESS if prop.kind == props.NON_THEOREM else Status.HOLDS
            reports.append(PropertyReport(prop.id, prop.kind, status, 0, 0,
                                          note=f"vacuous: needs {prop.arity} roles from distinct sets",
                                          reading_dependent=prop.reading_dependent))
            continue
        reports.append(check_batches(prop, [batch], backend="brute"))
    return reports


def cmd_props(args) -> int:
    inst = _load(args)
    selected = _select(args.properties)
    if args.alpha is not None or args.beta is not None:
        params = [_params(args)]
    elif inst.params is not None and not args.sweep:
        params = [inst.params]
    else:
        params = list(grid_params(step_ticks(args.step)))
    reports = run_props(inst, selected, params)
    failed = [r for r in reports if not r.ok]
    payload = {"params_checked": len(params), "reports": [r.to_dict() for r in reports],
               "theorem_failures": [r.property_id for r in failed]}
    lines = [f"{len(selected)} properties over {len(params)} (alpha, beta) value(s)"]
    lines += [r.line() for r in reports]
    if failed:
        lines.append("FAILED theorems: " + ", ".join(r.property_id for r in failed))
    _emit(args, payload, "\n".join(lines))
    return EXIT_FAILED if failed else EXIT_OK


# search ---------------------------------------------------------------------

def cmd_search(args) -> int:
    if args.replay:
        f = io.load(args.replay)
        rep = replay(f, args.property)
        payload = rep.to_dict()
        payload.pop("witness", None)
        payload["replayed"] = str(args.replay)
        _emit(args, payload, f"replay {args.replay}\n{rep.line()}")
        return EXIT_OK if rep.ok else EXIT_FAILED
    if not args.property:
        raise UsageError("search needs a property id (or --replay FILE)")
    spec = InstanceSpec(args.universe_size, props.get(args.property).arity, args.step)
    rep = search_counterexample(args.property, spec, seed=args.seed, budget=args.budget)
    payload = rep.to_dict()
    lines = [rep.line()]
    if rep.witness is not None:
        out = Path(args.out or f"witness-{args.property}.json")
        io.dump(rep.witness, out)
        payload["witness_file"] = str(out)
        lines.append(f"witness: {out}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if rep.ok else EXIT_FAILED


def cmd_partition(args) -> int:
    attrs = [a for a in (args.attrs or "").split(",") if a]
    part = io.partition_from_attributes(io.read_table(args.table), attrs)
    blocks = [list(b) for b in part.blocks]
    _emit(args, {"attributes": attrs, "partition": blocks},
          "\n".join("{" + ", ".join(b) + "}" for b in blocks))
    return EXIT_OK


def cmd_list(args) -> int:
    rows = [{"property": p.id, "kind": p.kind, "group": p.group, "roles": list(p.roles),
             "statement": p.statement, "reading_dependent": p.reading_dependent}
            for p in props.REGISTRY.values()]
    text = "\n".join(f"{r['property']:<18} {r['kind']:<11} {r['statement']}" for r in rows)
    _emit(args, {"properties": rows}, text)
    return EXIT_OK


def _default_seed() -> int:
    raw = os.environ.get("RIF_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"RIF_SEED must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="roughif", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, with_table=True, with_params=False):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if with_table:
            p.add_argument("--table", help="CSV information table (first column 'id')")
            p.add_argument("--attrs", help="comma-separated attributes defining the partition")
        if with_params:
            p.add_argument("--alpha", help=f"membership threshold (default {DEFAULT_ALPHA})")
            p.add_argument("--beta", help=f"non-membership threshold (default {DEFAULT_BETA})")

    p = sub.add_parser("approx", help="lower/upper approximations of one set")
    p.add_argument("instance")
    p.add_argument("set")
    p.add_argument("--side", choices=["lower", "upper", "both"], default="both")
    p.add_argument("--kind", choices=["crisp", "fuzzy", "if"], default="if")
    common(p)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("compare", help="classify two sets under the four equalities")
    p.add_argument("instance")
    p.add_argument("a")
    p.add_argument("b")
    common(p, with_params=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("props", help="check registered properties on the file's sets")
    p.add_argument("instance")
    p.add_argument("--properties", default="all",
                   help="ids and/or groups: all (verified suite), theorems, non-theorems, conjectures, registry")
    p.add_argument("--step", default="0.1", help="grid step of the (alpha, beta) sweep")
    p.add_argument("--sweep", action="store_true",
                   help="sweep the grid even when the file carries params")
    common(p, with_params=True)
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("search", help="search for a counterexample or witness")
    p.add_argument("property", nargs="?")
    p.add_argument("--universe-size", type=int, default=5)
    p.add_argument("--step", default="0.1")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--budget", type=int, default=1_000_000)
    p.add_argument("--out", help="witness file (default witness-<id>.json)")
    p.add_argument("--replay", help="re-evaluate a witness file instead of searching")
    common(p, with_table=False)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("partition", help="partition from an information table")
    p.add_argument("table")
    p.add_argument("--attrs", default="", help="comma-separated attribute names")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("list", help="list registered properties")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_list)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if getattr(args, "command", None) == "search" and args.seed is None:
            args.seed = _default_seed()
        return args.func(args)
    except (UsageError, UnknownProperty) as exc:
        print(f"roughif: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RoughIFError, ValueError) as exc:
        print(f"roughif: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
