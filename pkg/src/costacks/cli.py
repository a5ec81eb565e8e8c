"""Command-line interface over the JSON formats in ``serialize``.

Exit codes: 0 pass (or plain success), 1 fail, 2 unknown or budget
exceeded, 3 unreadable or invalid input.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from ._util import label, ordered
from .core import ConcreteGroupoid, validate
from .cosheaf import (
    FAIL, PASS, UNKNOWN, check_cosheaf_sets, check_sh, check_st, check_vankampen, component_cosheaf,
    constant_cosheaf, edge_cosheaf, induced_map_to_terminal, pi0_cosheaf, vertex_cosheaf,
)
from .deformation import deform, postcondition_failures
from .diagrams import (
    COVARIANT, GroupoidDiagram, delta_comparison, diagram_colim, diagram_tc, filtered_colim,
)
from .equivalence import BATTERY, Verdict, battery_invariant, equivalence_fingerprint
from .errors import CoverError, GroupoidError, NotFilteredError, ResourceLimitError, SchemaError
from .limits import StrictLimit, TwoLimit
from .poset import FinitePoset
from .presentation import DEFAULT_BUDGET
from .serialize import (
    SCHEMA, complex_from_json, cover_from_json, diagram_from_json, dumps,
    functor_to_json, groupoid_from_json, load, natiso_to_json, presentation_from_json,
    presentation_to_json, square_from_json, value_from_json, value_to_json,
)
from .space import COMPONENTWISE, STRICT, build_nerve, is_good_cover, pi0, pi1

BUDGET_ENV = "GROUPOIDS_BUDGET"

EXIT_PASS, EXIT_FAIL, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3

_VERDICT_EXIT = {PASS: EXIT_PASS, FAIL: EXIT_FAIL, UNKNOWN: EXIT_UNKNOWN,
                 Verdict.YES: EXIT_PASS, Verdict.NO: EXIT_FAIL, Verdict.UNKNOWN: EXIT_UNKNOWN}


@dataclass
class RunConfig:
    subcommand: str
    inputs: list
    budget: int = DEFAULT_BUDGET
    battery: list = field(default_factory=lambda: list(BATTERY))
    good_reading: str = COMPONENTWISE
    json: bool = False
    cover: str | None = None
    target: str | None = None
    data: str = "pi0"
    depth: int = 3
    diagram: str | None = None

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        unknown = [b for b in self.battery if b not in BATTERY]
        if unknown:
            raise ValueError(f"unknown battery groupoid(s): {', '.join(unknown)}")


@dataclass
class Outcome:
    code: int
    report: dict


# helpers

def _fingerprint(g, cfg):
    fp = equivalence_fingerprint(g, cfg.budget).as_dict()
    bats = battery_invariant(g, {k: BATTERY[k] for k in cfg.battery}, cfg.budget)
    fp["battery"] = {k: [list(x) for x in v] for k, v in sorted(bats.items())}
    return fp


def _space(cfg, need_cover=True):
    c = complex_from_json(load(cfg.inputs[0]), cfg.inputs[0])
    if not need_cover:
        return c, None
    if cfg.cover is None:
        raise SchemaError("this subcommand needs --cover", "arguments")
    return c, cover_from_json(load(cfg.cover), c, cfg.cover)


def _diagram(path):
    return diagram_from_json(load(path), path, os.path.dirname(os.path.abspath(path)))


def _value(path):
    return value_from_json(load(path), path, os.path.dirname(os.path.abspath(path)))


def _target(cfg):
    if cfg.target is None:
        return ConcreteGroupoid.cyclic(2)
    g = _value(cfg.target)
    if not isinstance(g, ConcreteGroupoid):
        raise SchemaError("the target must be a concrete groupoid", cfg.target)
    return g


def _element(S):
    return ",".join(str(k) for k in S)


def _cosheaf_data(choice):
    if choice == "pi0":
        return pi0_cosheaf()
    if choice == "vertices":
        return vertex_cosheaf()
    if choice == "components":
        return component_cosheaf(2)
    if choice == "edges":
        return edge_cosheaf()
    if choice.startswith("constant:"):
        n = choice.split(":", 1)[1]
        if n.isdigit():
            return constant_cosheaf(range(int(n)))
    raise SchemaError(f"unknown cosheaf data {choice!r} (pi0, vertices, components, edges, constant:N)",
                      "--data")


# subcommands

def cmd_validate(cfg):
    path = cfg.inputs[0]
    doc = load(path)
    kind = doc.get("kind") if isinstance(doc, dict) else None
    report = {"kind": kind}
    if kind == "groupoid":
        g = groupoid_from_json(doc, path)
        bad = validate(g).violations
        report.update(objects=len(g.objects), morphisms=len(g.morphisms), violations=bad)
        return Outcome(EXIT_FAIL if bad else EXIT_PASS, report)
    if kind == "presentation":
        p = presentation_from_json(doc, path)
        report.update(vertices=len(p.vertices), edges=len(p.edges), relations=len(p.relations), violations=[])
    elif kind == "diagram":
        d = diagram_from_json(doc, path, os.path.dirname(os.path.abspath(path)))
        report.update(elements=len(d.poset.elements), variance=d.variance, violations=[])
    elif kind == "complex":
        c = complex_from_json(doc, path)
        report.update(vertices=len(c.vertices), edges=len(c.edges), cells=len(c.cells), violations=[])
    elif kind == "square":
        square_from_json(doc, path, os.path.dirname(os.path.abspath(path)))
        report.update(violations=[])
    else:
        raise SchemaError(f"cannot validate documents of kind {kind!r}", path)
    return Outcome(EXIT_PASS, report)


def cmd_fingerprint(cfg):
    g = _value(cfg.inputs[0])
    return Outcome(EXIT_PASS, {"fingerprint": _fingerprint(g, cfg)})


def cmd_pi0(cfg):
    c, _ = _space(cfg, need_cover=False)
    comps = pi0(c.whole())
    members = {}
    for v in c.vertices:
        members.setdefault(comps.of[v], []).append(label(v))
    return Outcome(EXIT_PASS, {"count": len(comps),
                               "components": [sorted(members[k]) for k in comps.components]})


def cmd_pi1(cfg):
    c, _ = _space(cfg, need_cover=False)
    p = pi1(c.whole())
    return Outcome(EXIT_PASS, {"presentation": presentation_to_json(p), "fingerprint": _fingerprint(p, cfg)})


def cmd_nerve(cfg):
    c, cover = _space(cfg)
    nerve = build_nerve(cover, depth=cfg.depth, space=c.whole())
    pieces = []
    for S in nerve.poset.elements:
        u = nerve.pieces[S]
        pieces.append({"element": _element(S), "vertices": len(u.vertices), "edges": len(u.edges),
                       "cells": len(u.cells),
                       "fingerprint": equivalence_fingerprint(nerve.diagram.values[S], cfg.budget).as_dict()})
    good = is_good_cover(nerve, cfg.good_reading, cfg.budget)
    return Outcome(EXIT_PASS, {"pieces": pieces, "good": good, "reading": cfg.good_reading,
                               "covers": [[_element(S), _element(T)] for S, T in nerve.poset.covers()]})


def _limit(cfg, two):
    d = _diagram(cfg.inputs[0])
    lim = (TwoLimit(d, cfg.budget) if two else StrictLimit(d, cfg.budget)).materialize(cfg.budget)
    return Outcome(EXIT_PASS, {"groupoid": value_to_json(lim, cfg.budget), "fingerprint": _fingerprint(lim, cfg)})


def cmd_lim(cfg):
    return _limit(cfg, two=False)


def cmd_tl(cfg):
    return _limit(cfg, two=True)


def _colimit(cfg, two):
    d = _diagram(cfg.inputs[0])
    res = diagram_tc(d) if two else diagram_colim(d)
    return Outcome(EXIT_PASS, {"presentation": presentation_to_json(res.groupoid),
                               "fingerprint": _fingerprint(res.groupoid, cfg)})


def cmd_colim(cfg):
    return _colimit(cfg, two=False)


def cmd_tc(cfg):
    return _colimit(cfg, two=True)


def cmd_delta(cfg):
    d = _diagram(cfg.inputs[0])
    res = delta_comparison(d, cfg.budget)
    return Outcome(_VERDICT_EXIT[res.verdict], {
        "verdict": str(res.verdict),
        "tc": {"objects": len(res.tc.groupoid.vertices), "fingerprint": _fingerprint(res.tc.groupoid, cfg)},
        "colim": {"objects": len(res.colim.groupoid.vertices),
                  "fingerprint": _fingerprint(res.colim.groupoid, cfg)},
    })


def cmd_filtered_colim(cfg):
    d = _diagram(cfg.inputs[0])
    fc = filtered_colim(d)
    return Outcome(EXIT_PASS, {"groupoid": value_to_json(fc, cfg.budget), "fingerprint": _fingerprint(fc, cfg)})


def cmd_deform(cfg):
    path = cfg.inputs[0]
    i1, i2, j1, j2, lam = square_from_json(load(path), path, os.path.dirname(os.path.abspath(path)))
    res = deform(i1, i2, j1, j2, lam)
    bad = postcondition_failures(i1, i2, j1, j2, lam, res)
    cases = {}
    for beta, n in res.cases.items():
        cases.setdefault(str(n), []).append(label(beta))
    return Outcome(EXIT_FAIL if bad else EXIT_PASS, {
        "functor": functor_to_json(res.functor),
        "kappa": natiso_to_json(res.kappa),
        "kappa_is_identity": res.kappa.is_identity(),
        "cases": {k: sorted(v) for k, v in sorted(cases.items())},
        "postcondition_failures": bad,
    })


def cmd_check_cosheaf(cfg):
    c, cover = _space(cfg)
    f = _cosheaf_data(cfg.data)
    whole = c.whole()
    rep = check_cosheaf_sets(f, whole, cover)
    return Outcome(_VERDICT_EXIT[rep.verdict], {
        "verdict": rep.verdict, "data": cfg.data, "coequalizer_size": rep.coequalizer_size,
        "value_size": rep.value_size, "witness": rep.witness})


def _shst(cfg, strict):
    c, cover = _space(cfg)
    g = _target(cfg)
    nerve = build_nerve(cover, depth=2 if strict else 3, space=c.whole())
    try:
        rep = (check_sh if strict else check_st)(nerve, g, limit=cfg.budget)
    except ResourceLimitError as exc:
        return Outcome(EXIT_UNKNOWN, {"verdict": UNKNOWN, "witness": str(exc)})
    return Outcome(_VERDICT_EXIT[rep.verdict], {
        "condition": rep.condition, "verdict": rep.verdict, "witness": rep.witness,
        "target": g.name, "stats": dict(sorted(rep.stats.items()))})


def cmd_check_sh(cfg):
    return _shst(cfg, strict=True)


def cmd_check_st(cfg):
    return _shst(cfg, strict=False)


def cmd_vankampen(cfg):
    c, cover = _space(cfg)
    if len(cover) != 2:
        raise CoverError("van Kampen needs a two-member cover")
    rep = check_vankampen(c, cover[0], cover[1], {k: BATTERY[k] for k in cfg.battery}, cfg.budget)
    verdicts = [rep.pushout, rep.two_pushout]
    if Verdict.NO in verdicts:
        code = EXIT_FAIL
    elif Verdict.UNKNOWN in verdicts:
        code = EXIT_UNKNOWN
    else:
        code = EXIT_PASS
    return Outcome(code, {
        "pushout": str(rep.pushout), "two_pushout": str(rep.two_pushout),
        "fingerprints": {k: v.as_dict() for k, v in sorted(rep.fingerprints.items())},
        "bijective_on_objects": rep.bijective_on_objects})


def _relabel(d, names):
    poset = FinitePoset(
        [names[i] for i in d.poset.elements],
        {(names[a], names[b]) for a in d.poset.elements for b in d.poset.elements if d.poset.leq(a, b)})
    trans = {(names[i], names[j]): d.psi(i, j) for i, j in d.poset.strict_pairs()}
    return GroupoidDiagram(poset, {names[i]: g for i, g in d.values.items()}, trans, d.variance)


def cmd_terminal_map(cfg):
    c, cover = _space(cfg)
    nerve = build_nerve(cover, depth=3, space=c.whole())
    if cfg.diagram is None:
        q = nerve.diagram
    else:
        raw = _diagram(cfg.diagram)
        names = {_element(S): S for S in nerve.poset.elements}
        missing = set(raw.poset.elements) ^ set(names)
        if missing:
            raise SchemaError(f"diagram elements must be the nerve elements {sorted(names)}", cfg.diagram)
        q = _relabel(raw, names)
        if q.variance != COVARIANT:
            raise SchemaError("the diagram must be covariant", cfg.diagram)
    if not is_good_cover(nerve, cfg.good_reading, cfg.budget):
        return Outcome(EXIT_FAIL, {"status": "not-good", "reading": cfg.good_reading})
    # the pieces' own vertices go to themselves; other data needs connected pieces
    comp = {S: {x: x for x in q.values[S].vertices} for S in q.poset.elements} if q is nerve.diagram else None
    tm = induced_map_to_terminal(q, nerve, comp, cfg.good_reading, cfg.budget)
    code = EXIT_PASS if tm.status.startswith("verified") else EXIT_UNKNOWN
    f = tm.functor
    return Outcome(code, {
        "status": tm.status,
        "objects": {label(v): label(f.vertex(v)) for v in ordered(f.domain.vertices)},
        "generators": len(f.domain.edges)})


COMMANDS = {
    "validate": (cmd_validate, "check a groupoid, presentation, diagram, complex or square file"),
    "fingerprint": (cmd_fingerprint, "equivalence fingerprint and functor-count battery"),
    "pi0": (cmd_pi0, "connected components of a complex"),
    "pi1": (cmd_pi1, "edge-path groupoid presentation of a complex"),
    "nerve": (cmd_nerve, "intersections of a cover and whether it is good"),
    "lim": (cmd_lim, "limit of a contravariant concrete diagram"),
    "tl": (cmd_tl, "2-limit of a contravariant concrete diagram"),
    "colim": (cmd_colim, "colimit presentation of a covariant diagram"),
    "tc": (cmd_tc, "2-colimit presentation of a covariant diagram"),
    "delta": (cmd_delta, "is the comparison functor tc -> colim an equivalence"),
    "deform": (cmd_deform, "strictify a square commuting up to a natural isomorphism"),
    "filtered-colim": (cmd_filtered_colim, "colimit of a concrete diagram over a filtered poset"),
    "check-cosheaf": (cmd_check_cosheaf, "cosheaf condition for set-valued data on a cover"),
    "check-sh": (cmd_check_sh, "sheaf condition for hom(pi1(-), G) on a cover"),
    "check-st": (cmd_check_st, "stack condition for hom(pi1(-), G) on a cover"),
    "vankampen": (cmd_vankampen, "colimit and 2-colimit of a two-member cover against pi1"),
    "terminal-map": (cmd_terminal_map, "induced map into the pi1 costack of a good cover"),
}


def default_budget():
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise SchemaError(f"{BUDGET_ENV} must be a positive integer", BUDGET_ENV) from None
    if value < 1:
        raise SchemaError(f"{BUDGET_ENV} must be a positive integer", BUDGET_ENV)
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are input errors, not the "unknown" exit code argparse uses
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _common_options(p, suppress):
    # on subparsers the defaults are suppressed so they do not clobber options given before the subcommand
    def default(value):
        return argparse.SUPPRESS if suppress else value

    p.add_argument("--budget", type=int, default=default(None),
                   help=f"size budget (default {DEFAULT_BUDGET}, or ${BUDGET_ENV})")
    p.add_argument("--battery", default=default(",".join(BATTERY)),
                   help="comma-separated battery groupoids: " + ", ".join(BATTERY))
    p.add_argument("--good-reading", choices=[COMPONENTWISE, STRICT], default=default(COMPONENTWISE))
    p.add_argument("--json", action="store_true", default=default(False), help="emit a JSON report")


def build_parser():
    parser = _Parser(prog="costacks", description=__doc__.splitlines()[0])
    _common_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("input")
        _common_options(p, suppress=True)
        if name in ("nerve", "check-cosheaf", "check-sh", "check-st", "vankampen", "terminal-map"):
            p.add_argument("--cover", required=True)
        if name in ("check-sh", "check-st"):
            p.add_argument("--target", help="groupoid file (default: Z/2)")
        if name == "check-cosheaf":
            p.add_argument("--data", default="pi0")
        if name == "nerve":
            p.add_argument("--depth", type=int, default=3)
        if name == "terminal-map":
            p.add_argument("--diagram", help="covariant diagram over the nerve (default: pi1 of the pieces)")
    return parser


def config_from_args(args):
    budget = args.budget if args.budget is not None else default_budget()
    battery = [b.strip() for b in args.battery.split(",") if b.strip()]
    return RunConfig(args.subcommand, [args.input], budget=budget, battery=battery,
                     good_reading=args.good_reading, json=args.json, cover=getattr(args, "cover", None),
                     target=getattr(args, "target", None), data=getattr(args, "data", "pi0"),
                     depth=getattr(args, "depth", 3), diagram=getattr(args, "diagram", None))


def run(cfg):
    """Dispatch one subcommand; returns an Outcome and never raises on bad input."""
    try:
        out = COMMANDS[cfg.subcommand][0](cfg)
    except SchemaError as exc:
        return Outcome(EXIT_INPUT, {"error": str(exc), "where": exc.where})
    except ResourceLimitError as exc:
        return Outcome(EXIT_UNKNOWN, {"error": f"budget exceeded: {exc}"})
    except (GroupoidError, CoverError, NotFilteredError) as exc:
        return Outcome(EXIT_INPUT, {"error": str(exc)})
    return out


def render(cfg, out):
    doc = {"schema": SCHEMA, "command": cfg.subcommand, "exit_code": out.code, **out.report}
    if cfg.json:
        return dumps(doc)
    lines = []

    def emit(prefix, value):
        if isinstance(value, dict) and value and "schema" not in value:
            for k in sorted(value):
                emit(f"{prefix}.{k}" if prefix else k, value[k])
        elif isinstance(value, dict):
            lines.append(f"{prefix}: <{value.get('kind', 'document')}; use --json for the full document>")
        else:
            lines.append(f"{prefix}: {json.dumps(value, sort_keys=True) if isinstance(value, list) else value}")

    for k in ("command", "exit_code"):
        lines.append(f"{k}: {doc[k]}")
    for k in sorted(out.report):
        emit(k, out.report[k])
    return "\n".join(lines) + "\n"


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except (ValueError, SchemaError) as exc:
        print(f"costacks: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = run(cfg)
    sys.stdout.write(render(cfg, out))
    if out.code == EXIT_INPUT:
        print(f"costacks: {out.report['error']}", file=sys.stderr)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
