"""Command-line workbench: ``proofspace space|homology|verify|iso|relation``.

Exit codes are 0 on success, 1 on a failed verification or a size guard,
and 2 on a parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .complex import Complex, ComplexError, SizeGuardError, parse_facet_text, standard_space
from .homology import homology_groups, pad_groups, size_report
from .monad import iterate_subset
from .proofs import SearchLimitError, count_proofs, proofs_space
from .relations import SimplicialRelation, is_simplicial_relation, naive_is_chain_map, parse_relation_text
from .semantics import ParseError, interpret, parse_formula, space_complex
from .suites import SUITES, all_passed, check, groups_text, iso_invariants

FORMAT_VERSION = 1

FORMULA_HELP = """\
formula syntax:
  1, bot (or ⊥)          the units
  A + B, A & B           plus and with (also ⊕)
  A * B, A | B           tensor and par (also ⊗, ⅋)
  &k(A)                  A & A & ... & A with k factors, nested to the left
  <gustave:V>            Gustave's formula; V is literal or bottom_units
  <gustave:mixed:UNITS>  nine characters over {1, b}, three per component
Binary operators associate to the left; mixing two different ones needs
parentheses.  Example: "&3((1+1))" is (Bool & Bool) & Bool.
"""


class UsageError(Exception):
    """Bad input that should exit with code 2."""


def _positioned(e: ParseError, text: str) -> str:
    return f"{e}\n  {text}\n  {' ' * e.position}^"


# ------------------------------------------------------------- space input

def load_space(args) -> tuple[str, Complex, dict]:
    """Resolve ``--standard``/``--formula``/``--file`` into a complex.

    Returns ``(name, complex, extra)``; extra carries proof counts when
    ``--proofs`` is set.
    """
    given = [x for x in (args.standard, args.formula, args.file) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --standard, --formula, --file")
    extra: dict = {}
    if args.standard is not None:
        kind, sep, n = args.standard.partition(":")
        if not sep or not n.isdigit():
            raise UsageError(f"--standard expects kind:n, got {args.standard!r}")
        try:
            return args.standard, standard_space(kind, int(n)), extra
        except ComplexError as e:
            raise UsageError(str(e)) from None
    if args.file is not None:
        try:
            text = Path(args.file).read_text()
        except OSError as e:
            raise UsageError(str(e)) from None
        try:
            return args.file, parse_facet_text(text), extra
        except ComplexError as e:
            raise UsageError(f"{args.file}: {e}") from None
    try:
        A = parse_formula(args.formula)
    except ParseError as e:
        raise UsageError(_positioned(e, args.formula)) from None
    if not getattr(args, "proofs", False):
        return f"[[{A}]]", space_complex(interpret(A)), extra
    ps = proofs_space(A, mix=args.mix)
    extra["proofs"] = {
        "mix": args.mix,
        "raw": ps.raw_count,
        "distinct": len(ps.proofs),
        "raw_by_mix": {str(m).lower(): count_proofs((A,), mix=m) for m in (False, True)},
        "unwitnessed": sorted(repr(p) for p in ps.unwitnessed),
    }
    return f"[{A}]", ps.complex, extra


def describe(X: Complex) -> dict:
    return {
        "web": len(X.web),
        "facets": [repr(f) for f in X.facets],
        "f_vector": X.f_vector(),
    }


# ---------------------------------------------------------------- commands

def cmd_space(args) -> tuple[dict, int]:
    name, X, extra = load_space(args)
    result = {"space": name, **describe(X), **extra}
    return {"result": result, "checks": []}, 0


def cmd_homology(args) -> tuple[dict, int]:
    name, X, extra = load_space(args)
    times = {"none": 0, "S": 1, "SS": 2}[args.transform]
    Y = iterate_subset(X, times, args.max_facet)
    groups = homology_groups(Y)
    result = {"space": name, "transform": args.transform, "groups": groups_text(groups),
              "size": size_report(Y), **extra}
    checks = []
    if times:
        base = homology_groups(X)
        n = max(len(base), len(groups)) - 1
        base, padded = pad_groups(base, n), pad_groups(groups, n)
        checks.append(check(f"{args.transform}-vs-untransformed", None, groups_text(base),
                            groups_text(padded), match=base == padded))
    return {"result": result, "checks": checks}, 0


def cmd_verify(args) -> tuple[dict, int]:
    checks = SUITES[args.suite]()
    ok = all_passed(checks)
    result = {"suite": args.suite, "passed": ok,
              "failing": [c["name"] for c in checks if c["status"] == "fail"]}
    return {"result": result, "checks": checks}, 0 if ok else 1


def cmd_iso(args) -> tuple[dict, int]:
    parsed = []
    for text in (args.A, args.B):
        try:
            parsed.append(parse_formula(text))
        except ParseError as e:
            raise UsageError(_positioned(e, text)) from None
    ga, gb = iso_invariants(*parsed, mix=args.mix)
    same = ga == gb
    result = {"A": str(parsed[0]), "B": str(parsed[1]), "S[A]": groups_text(ga), "S[B]": groups_text(gb),
              "invariants_equal": same}
    return {"result": result, "checks": [check("invariants-equal", None, groups_text(ga), groups_text(gb),
                                               match=same)]}, 0


def cmd_relation(args) -> tuple[dict, int]:
    try:
        X = parse_facet_text(Path(args.source).read_text())
        Y = parse_facet_text(Path(args.target).read_text())
        entries, _ = parse_relation_text(Path(args.relation).read_text())
    except (OSError, ComplexError) as e:
        raise UsageError(str(e)) from None
    names = {str(v): v for v in X.web} | {str(v): v for v in Y.web}
    try:
        pairs = {(names[a], names[b]) for a, b in entries}
    except KeyError as e:
        raise UsageError(f"unknown vertex {e.args[0]}") from None
    ok, bad = is_simplicial_relation(pairs, X, Y)
    result = {"simplicial": ok, "violation": None if ok else repr(bad)}
    if ok:
        t = SimplicialRelation(X, Y, pairs, check=False)
        cm = naive_is_chain_map(t)
        result["naive_chain_map"] = bool(cm)
        result["chain_map_violations"] = [[k, repr(s)] for k, s in cm.violations]
    return {"result": result, "checks": []}, 0


# -------------------------------------------------------------------- output

def render_table(report: dict) -> str:
    lines = [f"$ proofspace {' '.join(report['command'])}"]
    for key, value in report["result"].items():
        if isinstance(value, list) and value and key == "facets":
            lines.append(f"{key}:")
            lines.extend(f"  {v}" for v in value)
        elif isinstance(value, dict):
            lines.append(f"{key}: " + ", ".join(f"{k}={v}" for k, v in value.items()))
        else:
            lines.append(f"{key}: {value}")
    if report["checks"]:
        width = max(len(c["name"]) for c in report["checks"])
        lines.append("checks:")
        for c in report["checks"]:
            line = f"  {c['status']:<8} {c['name']:<{width}}  computed={c['computed']}"
            if c["expected"] is not None:
                line += f"  expected={c['expected']}"
            if "match" in c:
                line += f"  match={c['match']}"
            lines.append(line)
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="proofspace", description="Proof complexes, their homology and the subset monad.",
                                epilog=FORMULA_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def space_args(q, proofs=True):
        q.add_argument("--standard", metavar="KIND:N", help="delta:n or sphere:n")
        q.add_argument("--formula", help="unit-only MALL formula (see the syntax below)")
        q.add_argument("--file", help="facet file with web:/facet: lines")
        if proofs:
            q.add_argument("--proofs", action="store_true", help="use the proof complex [A] instead of [[A]]")
        q.add_argument("--mix", action="store_true", help="allow the MIX rule in proof search")
        q.add_argument("--json", action="store_true", help="print the JSON report")

    kw = dict(epilog=FORMULA_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    space_args(sub.add_parser("space", help="describe a complex", **kw))
    h = sub.add_parser("homology", help="integer homology, optionally after S or S S", **kw)
    space_args(h)
    h.add_argument("--transform", choices=["none", "S", "SS"], default="none")
    h.add_argument("--max-facet", type=int, default=12, help="size guard on facets before each S (default 12)")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--json", action="store_true")

    i = sub.add_parser("iso", help="compare H(S[A]) and H(S[B]) for asserted isomorphic types", **kw)
    i.add_argument("A")
    i.add_argument("B")
    i.add_argument("--mix", action="store_true")
    i.add_argument("--json", action="store_true")

    r = sub.add_parser("relation", help="check a relation file between two facet files")
    r.add_argument("--source", required=True)
    r.add_argument("--target", required=True)
    r.add_argument("--relation", required=True)
    r.add_argument("--json", action="store_true")
    return p


COMMANDS = {"space": cmd_space, "homology": cmd_homology, "verify": cmd_verify, "iso": cmd_iso,
            "relation": cmd_relation}


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    try:
        body, code = COMMANDS[args.command](args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (SizeGuardError, SearchLimitError) as e:
        print(f"size guard: {e}", file=sys.stderr)
        return 1
    report = {"format_version": FORMAT_VERSION, "command": argv, **body}
    if args.json:
        print(json.dumps(report, indent=2, ensure_ascii=False))
    else:
        print(render_table(report))
    if code and not args.json:
        print("failing: " + ", ".join(report["result"].get("failing", [])), file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
