"""Command-line front end.

Every command reads a context file and prints JSON by default, or aligned
text with ``--format text``.  Exit codes: 0 success, 1 domain failure (an
invalid or non-entailed implication, a size guard), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import TextIO

from .augmentation import is_quasi_feature, relevant_quasi_features
from .bases import build_base, metrics, min_cover
from .concepts import enumerate_concepts, features, subsets
from .context import Axis, Product, TriadicContext, closure_12C, closure_13A, load_context
from .errors import (ContextParseError, ImplicationSyntaxError, KindError, NotEntailedError,
                     SizeGuardError, UnknownNameError)
from .implications import (ImplicationBase, Kind, Ordering, base_to_dict, is_valid, loads_base,
                           parse_implication)
from .logic import closure, entails, replay, trace

COMMANDS = ("concepts", "features", "quasi-features", "base", "closure", "check", "derive", "stats")


class UsageError(Exception):
    pass


@dataclass
class CommandRequest:
    command: str
    context_path: str | None
    flags: dict = field(default_factory=dict)


def _names(ctx: TriadicContext, axis, names) -> list[str]:
    return list(ctx.sort(axis, names))


def _product(ctx, p: Product) -> dict:
    return {"attrs": _names(ctx, Axis.ATTRIBUTE, p.attrs), "conds": _names(ctx, Axis.CONDITION, p.conds)}


def _emit(out: TextIO, payload, text: str | None, fmt: str):
    if fmt == "text" and text is not None:
        out.write(text.rstrip("\n") + "\n")
    else:
        out.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")


def _text_table(rows: list[list[str]]) -> str:
    if not rows:
        return ""
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)


def _label(names) -> str:
    return ",".join(names) or "∅"


def _cmd_concepts(ctx, flags, out):
    concepts = enumerate_concepts(ctx)
    if flags.get("count"):
        out.write(f"{len(concepts)}\n")
        return 0
    payload = [{"extent": _names(ctx, Axis.OBJECT, t.extent), "intent": _names(ctx, Axis.ATTRIBUTE, t.intent),
                "modus": _names(ctx, Axis.CONDITION, t.modus)} for t in concepts]
    text = _text_table([["extent", "intent", "modus"]] + [
        [_label(r["extent"]), _label(r["intent"]), _label(r["modus"])] for r in payload])
    _emit(out, payload, text, flags["format"])
    return 0


def _products_out(ctx, products, flags, out):
    products = sorted(products, key=lambda p: p.sort_key(ctx))
    if flags.get("count"):
        out.write(f"{len(products)}\n")
        return 0
    text = "\n".join(p.label(ctx) for p in products)
    _emit(out, [_product(ctx, p) for p in products], text, flags["format"])
    return 0


def _cmd_features(ctx, flags, out):
    return _products_out(ctx, features(ctx), flags, out)


def _cmd_quasi(ctx, flags, out):
    axis = flags.get("axis") or "m"
    if flags.get("relevant") or flags.get("unit") or flags.get("cover"):
        found = relevant_quasi_features(ctx, axis, unit_only=bool(flags.get("unit")))
        if flags.get("cover"):
            found = min_cover(ctx, found, axis).kept
    else:
        known = features(ctx)
        found = [Product(a, c) for a in subsets(ctx.attributes) for c in subsets(ctx.conditions)
                 if is_quasi_feature(ctx, Product(a, c), known)]
    return _products_out(ctx, found, flags, out)


def _base_out(base: ImplicationBase, flags, out):
    order = base.order
    text = "\n".join(i.format(order) for i in base.items)
    text += f"\n# cardinality {base.cardinality}, size {base.size}"
    _emit(out, base_to_dict(base), text, flags["format"])
    return 0


def _kind(flags, default="bcai") -> Kind:
    return Kind((flags.get("kind") or default).lower())


def _load_sigma(path, stdin: TextIO) -> ImplicationBase:
    text = stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return loads_base(text)


def _sigma(ctx, flags, stdin, kind: Kind) -> ImplicationBase:
    if flags.get("sigma"):
        base = _load_sigma(flags["sigma"], stdin)
        if not base.attributes and not base.conditions:
            base = ImplicationBase.for_context(ctx, base.kind, base.items)
        return base
    return build_base(ctx, kind, flags.get("variant") or "complete")


def _cmd_base(ctx, flags, out):
    base = build_base(ctx, _kind(flags), flags.get("variant") or "complete")
    return _base_out(base, flags, out)


def _split(raw) -> list[str]:
    return [n.strip() for n in (raw or "").split(",") if n.strip()]


def _cmd_closure(ctx, flags, out, stdin):
    kind = _kind(flags)
    premise, constraint = _split(flags.get("set")), _split(flags.get("under"))
    sigma = _sigma(ctx, flags, stdin, kind)
    if kind.premise_axis is Axis.ATTRIBUTE:
        p = ctx.check(Axis.ATTRIBUTE, premise)
        c = ctx.check(Axis.CONDITION, constraint)
        semantic = closure_12C(ctx, p, c)
    else:
        p = ctx.check(Axis.CONDITION, premise)
        c = ctx.check(Axis.ATTRIBUTE, constraint)
        semantic = closure_13A(ctx, p, c)
    derived = closure(sigma, p, c)
    axis, other = kind.premise_axis, kind.constraint_axis
    payload = {"premise": _names(ctx, axis, p), "constraint": _names(ctx, other, c),
               "closure": _names(ctx, axis, derived), "context_closure": _names(ctx, axis, semantic)}
    text = f"closure: {_label(payload['closure'])}\ncontext: {_label(payload['context_closure'])}"
    _emit(out, payload, text, flags["format"])
    return 0


def _cmd_check(ctx, flags, out):
    if not flags.get("impl"):
        raise UsageError("check needs --impl")
    imp = parse_implication(flags["impl"], flags.get("kind"))
    valid = is_valid(ctx, imp)
    payload = {"implication": imp.format(Ordering.of(ctx)), "kind": imp.kind.value, "valid": valid}
    _emit(out, payload, f"{payload['implication']}: {'valid' if valid else 'invalid'}", flags["format"])
    return 0 if valid else 1


def _cmd_derive(ctx, flags, out, stdin):
    if not flags.get("goal"):
        raise UsageError("derive needs --goal")
    goal = parse_implication(flags["goal"], flags.get("kind"))
    sigma = _sigma(ctx, flags, stdin, goal.kind)
    if not entails(sigma, goal):
        payload = {"goal": goal.format(Ordering.of(ctx)), "entailed": False}
        _emit(out, payload, f"{payload['goal']}: not entailed", flags["format"])
        return 1
    tr = trace(sigma, goal)
    order = Ordering.of(ctx)
    steps = [{"rule": s.rule, "uses": list(s.uses), "source": s.source,
              "implication": s.implication.format(order)} for s in tr.steps]
    payload = {"goal": goal.format(order), "entailed": True, "replays": replay(sigma, tr), "steps": steps}
    text = "\n".join(f"{i + 1}. {s['implication']}  [{s['rule']}"
                     + (f" {','.join(str(u + 1) for u in s['uses'])}" if s["uses"] else "") + "]"
                     for i, s in enumerate(steps))
    _emit(out, payload, text, flags["format"])
    return 0


def _cmd_stats(flags, out, stdin):
    source = flags.get("sigma") or flags.get("context") or "-"
    base = _load_sigma(source, stdin)
    reference = _load_sigma(flags["reference"], stdin) if flags.get("reference") else None
    m = metrics(base, reference)
    out.write(json.dumps(m.as_dict(), separators=(",", ":")) + "\n")
    return 0


def run(request: CommandRequest, out: TextIO = sys.stdout, err: TextIO = sys.stderr,
        stdin: TextIO = sys.stdin) -> int:
    flags = dict(request.flags)
    flags.setdefault("format", "json")
    try:
        if request.command == "stats":
            flags["context"] = request.context_path
            return _cmd_stats(flags, out, stdin)
        if not request.context_path:
            raise UsageError("a context file is required")
        ctx = load_context(request.context_path)
        handlers = {
            "concepts": lambda: _cmd_concepts(ctx, flags, out),
            "features": lambda: _cmd_features(ctx, flags, out),
            "quasi-features": lambda: _cmd_quasi(ctx, flags, out),
            "base": lambda: _cmd_base(ctx, flags, out),
            "closure": lambda: _cmd_closure(ctx, flags, out, stdin),
            "check": lambda: _cmd_check(ctx, flags, out),
            "derive": lambda: _cmd_derive(ctx, flags, out, stdin),
        }
        if request.command not in handlers:
            raise UsageError(f"unknown command {request.command!r}")
        return handlers[request.command]()
    except FileNotFoundError as exc:
        err.write(f"error: file not found: {exc.filename}\n")
        return 2
    except (UsageError, ContextParseError, ImplicationSyntaxError, UnknownNameError, KindError,
            ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    except (NotEntailedError, SizeGuardError) as exc:
        err.write(f"error: {exc}\n")
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="triadic", description="Triadic concept analysis and implication bases.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("context", nargs="?", help="context file (triples or slices); for stats, a base JSON file")
    parser.add_argument("--axis", choices=("m", "c"))
    parser.add_argument("--unit", action="store_true", help="restrict to singleton constraint sides")
    parser.add_argument("--relevant", action="store_true", help="only relevant quasi-features")
    parser.add_argument("--cover", action="store_true", help="reduce quasi-features to pseudo-features")
    parser.add_argument("--kind", choices=("bcai", "baci", "cai", "aci"))
    parser.add_argument("--variant", choices=("complete", "minimal", "optimal"))
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--count", action="store_true")
    parser.add_argument("--impl", help="implication to check")
    parser.add_argument("--goal", help="implication to derive")
    parser.add_argument("--sigma", help="base JSON file, '-' for standard input")
    parser.add_argument("--reference", help="reference base JSON for reduction rates (stats)")
    parser.add_argument("--set", help="comma-separated premise for closure")
    parser.add_argument("--under", help="comma-separated constraint for closure")
    return parser


def main(argv=None, out: TextIO = sys.stdout, err: TextIO = sys.stderr, stdin: TextIO = sys.stdin) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "context")}
    return run(CommandRequest(args.command, args.context, flags), out, err, stdin)


if __name__ == "__main__":
    sys.exit(main())
