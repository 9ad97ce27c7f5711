"""Command line front end.

Subcommands list orbits, print characteristic cycles, dump the closure
order, and run the verification suites.  Output goes to stdout (or
--out) as plain text, a stable JSON document, or GraphViz source for
the closure diagram.  JSON documents carry a schema version and are
byte-identical across runs with the same arguments and seed.
"""

from __future__ import annotations

import argparse
import json
import sys

from .ccengine import (
    characteristic_cycle,
    check_cc_agreement,
    check_microlocal,
    check_smallness,
    check_transversality,
    cross_check,
)
from .orbits import ClosurePoset, Kind, Setup, enumerate_orbits, format_orbit, parse_orbit

SCHEMA_VERSION = "kcycle/1"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kcycle",
        description="orbit closures on Grassmannians and their characteristic cycles",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json")):
        p.add_argument("--kind", required=True, choices=[k.value for k in Kind])
        p.add_argument("--n", required=True, type=int)
        p.add_argument("--k", required=True, type=int)
        p.add_argument("--p", type=int)
        p.add_argument("--q", type=int)
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--out", metavar="FILE")

    common(sub.add_parser("orbits", help="list the orbits with dimensions"))
    cc = sub.add_parser("cc", help="characteristic cycles of orbit closures")
    common(cc)
    cc.add_argument("--orbit", metavar="LABEL",
                    help="only this orbit (default: all)")
    common(sub.add_parser("poset", help="closure order and covers"),
           formats=("text", "json", "dot"))
    verify = sub.add_parser("verify", help="run verification suites")
    common(verify)
    verify.add_argument("--suite", default="all",
                        choices=["microlocal", "transversality", "smallness",
                                 "crosscheck", "all"])
    verify.add_argument("--trials", type=int, default=20,
                        help="samples per check (default 20)")
    verify.add_argument("--seed", type=int, default=0)
    return parser


def _setup_from_args(args) -> Setup:
    kind = Kind(args.kind)
    if kind == Kind.GLPQ:
        if args.p is None or args.q is None:
            raise ValueError("glpq setups need --p and --q")
        return Setup(kind, args.n, args.k, p=args.p, q=args.q)
    if args.p is not None or args.q is not None:
        raise ValueError("--p/--q only apply to glpq setups")
    return Setup(kind, args.n, args.k)


def _setup_payload(setup: Setup) -> dict:
    payload = {"kind": setup.kind.value, "n": setup.n, "k": setup.k}
    if setup.kind == Kind.GLPQ:
        payload["p"] = setup.p
        payload["q"] = setup.q
    return payload


def _document(command: str, setup: Setup) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "setup": _setup_payload(setup),
    }


def _orbit_rows(setup: Setup) -> list:
    poset = ClosurePoset(setup)
    return [
        {
            "label": format_orbit(setup, orbit),
            "dimension": poset.dimension[orbit],
            "codimension": poset.codim(orbit),
        }
        for orbit in poset.orbits
    ]


def cmd_orbits(setup: Setup) -> dict:
    doc = _document("orbits", setup)
    doc["orbits"] = _orbit_rows(setup)
    return doc


def cmd_cc(setup: Setup, orbit_label: str | None) -> dict:
    if orbit_label is None:
        orbits = enumerate_orbits(setup)
    else:
        orbits = [parse_orbit(setup, orbit_label)]
    doc = _document("cc", setup)
    doc["cycles"] = [
        {
            "target": format_orbit(setup, orbit),
            "terms": [
                {"orbit": format_orbit(setup, o), "multiplicity": m}
                for o, m in characteristic_cycle(setup, orbit).terms
            ],
        }
        for orbit in orbits
    ]
    return doc


def cmd_poset(setup: Setup) -> dict:
    poset = ClosurePoset(setup)
    doc = _document("poset", setup)
    doc["orbits"] = _orbit_rows(setup)
    doc["covers"] = [
        {"lower": format_orbit(setup, lo), "upper": format_orbit(setup, up)}
        for lo, up in poset.covers()
    ]
    return doc


_SUITES = {
    "crosscheck": lambda setup, trials, seed: check_cc_agreement(setup),
    "microlocal": lambda setup, trials, seed: check_microlocal(
        setup, trials=trials, seed=seed),
    "smallness": lambda setup, trials, seed: check_smallness(setup),
    "transversality": lambda setup, trials, seed: check_transversality(
        setup, points=trials, seed=seed),
}


def cmd_verify(setup: Setup, suite: str, trials: int, seed: int) -> tuple:
    if suite == "all":
        rows = cross_check(setup, trials=trials, points=trials, seed=seed).rows
    else:
        rows = _SUITES[suite](setup, trials, seed)
    doc = _document("verify", setup)
    doc["suite"] = suite
    doc["trials"] = trials
    doc["seed"] = seed
    doc["checks"] = [
        {"check": r.check, "subject": r.subject, "ok": r.ok, "detail": r.detail}
        for r in rows
    ]
    all_ok = all(r.ok for r in rows)
    doc["all_ok"] = all_ok
    return doc, 0 if all_ok else 1


def _render_text(doc: dict) -> str:
    setup = doc["setup"]
    bits = [f"{setup['kind']} n={setup['n']} k={setup['k']}"]
    if "p" in setup:
        bits.append(f"p={setup['p']} q={setup['q']}")
    lines = [f"# {doc['command']} ({' '.join(bits)})"]
    if doc["command"] == "orbits":
        for row in doc["orbits"]:
            lines.append(f"{row['label']}  dim {row['dimension']}"
                         f"  codim {row['codimension']}")
    elif doc["command"] == "cc":
        for cyc in doc["cycles"]:
            terms = " + ".join(
                t["orbit"] if t["multiplicity"] == 1
                else f"{t['multiplicity']}*{t['orbit']}"
                for t in cyc["terms"]
            )
            lines.append(f"CC({cyc['target']}) = {terms}")
    elif doc["command"] == "poset":
        for row in doc["orbits"]:
            lines.append(f"{row['label']}  dim {row['dimension']}"
                         f"  codim {row['codimension']}")
        for cov in doc["covers"]:
            lines.append(f"{cov['lower']} < {cov['upper']}")
    elif doc["command"] == "verify":
        lines[0] += f" suite={doc['suite']} trials={doc['trials']} seed={doc['seed']}"
        for row in doc["checks"]:
            mark = "ok  " if row["ok"] else "FAIL"
            lines.append(f"{mark}  {row['check']}  {row['subject']}  {row['detail']}")
        failed = sum(1 for row in doc["checks"] if not row["ok"])
        lines.append("all checks passed" if failed == 0
                     else f"{failed} checks failed")
    return "\n".join(lines) + "\n"


def _render_dot(doc: dict) -> str:
    lines = ["digraph closure {", "  rankdir=BT;"]
    for row in doc["orbits"]:
        lines.append(f'  "{row["label"]}";')
    for cov in doc["covers"]:
        lines.append(f'  "{cov["lower"]}" -> "{cov["upper"]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "dot":
        if doc["command"] != "poset":
            raise ValueError("dot output only exists for the closure order")
        return _render_dot(doc)
    return _render_text(doc)


def parse_document(text: str):
    """Read back a JSON document produced by this interface."""
    doc = json.loads(text)
    if not isinstance(doc, dict) or doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError("not a kcycle/1 document")
    return doc


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    exit_code = 0
    try:
        setup = _setup_from_args(args)
        if args.command == "orbits":
            doc = cmd_orbits(setup)
        elif args.command == "cc":
            doc = cmd_cc(setup, args.orbit)
        elif args.command == "poset":
            doc = cmd_poset(setup)
        else:
            doc, exit_code = cmd_verify(setup, args.suite, args.trials, args.seed)
        text = render(doc, args.format)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
