"""Command line front end.

Exit codes: 0 when the command succeeded, 1 when a mathematical check the
command promises comes out negative (a fixture that is not a covering),
2 for unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .algebra import validate_algebra
from .covering import CoveringError, covering_report
from .fixtures import (
    PROFILES,
    FixtureError,
    GenerationError,
    build_fn3_fixture,
    build_nil3_fixture,
    build_open_cover_fixture,
    build_trivial_fixture,
    load,
    parse_covers,
    random_covering,
    save,
)

REPORT_SCHEMA = "cover-report/1"
EXAMPLES = ("open-cover", "nil3", "fn3", "trivial")


class InputError(Exception):
    pass


class NegativeVerdict(Exception):
    pass


def _load(path):
    try:
        return load(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except FixtureError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _covering(doc):
    try:
        alg = doc.algebra()
    except FixtureError as exc:
        raise InputError(str(exc)) from exc
    v = validate_algebra(alg)
    if not v:
        raise NegativeVerdict(f"not an algebra: {v.detail or v.name} (witness {v.witness})")
    try:
        return doc.covering()
    except CoveringError as exc:
        w = exc.witness
        if isinstance(w, tuple):
            w = "(" + ", ".join(doc.field.format(x) for x in w) + ")"
        raise NegativeVerdict(f"not a covering: {exc} (witness {w})") from exc


def cmd_validate(args, out) -> int:
    doc = _load(args.file)
    cov = _covering(doc)
    print(
        f"ok: {doc.name} ({doc.content_hash()}): algebra of dim {doc.dim} over {doc.field.to_json()}, "
        f"{cov.size} ideals with zero intersection",
        file=out,
    )
    return 0


def report_dict(doc, report) -> dict:
    d = report.to_dict()
    return {
        "schema": REPORT_SCHEMA,
        "version": __version__,
        "fixture": {"name": doc.name, "hash": doc.content_hash(), "field": doc.field.to_json()},
        "dims": d["dims"],
        "facts": d["facts"],
        "checks": d["checks"],
        "all_checks_passed": report.ok,
    }


def render_report_json(doc, report) -> str:
    return json.dumps(report_dict(doc, report), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _yes(x):
    return "n/a" if x is None else ("yes" if x else "no")


def cmd_report(args, out) -> int:
    doc = _load(args.file)
    t0 = time.perf_counter()
    cov = _covering(doc)
    rep = covering_report(cov, projectivity=not args.skip_projectivity)
    elapsed = time.perf_counter() - t0
    if args.json:
        out.write(render_report_json(doc, rep))
        return 0
    f = rep.facts
    print(f"fixture   {doc.name} ({doc.content_hash()})", file=out)
    print(f"complete  {_yes(f['complete'])}", file=out)
    print(f"galois    {_yes(f['galois'])}", file=out)
    print(f"coinvariants equal image of B  {_yes(f['coinvariants_equal_kappa_B'])}", file=out)
    print(f"A projective over B  left {_yes(f['projective_left'])}, right {_yes(f['projective_right'])}", file=out)
    print("dims      " + ", ".join(f"{k}={v}" for k, v in rep.dims.items()), file=out)
    for c in rep.checks:
        line = f"  [{'pass' if c.ok else 'FAIL'}] {c.name}"
        if not c.ok:
            line += f"  witness={c.witness!r} {c.detail}".rstrip()
        print(line, file=out)
    print(f"elapsed   {elapsed:.3f}s", file=out)
    return 0


def cmd_generate(args, out) -> int:
    try:
        doc = random_covering(args.seed, args.profile)
    except GenerationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FixtureError as exc:
        raise InputError(str(exc)) from exc
    _save(doc, args.out)
    print(f"wrote {args.out} ({doc.content_hash()})", file=out)
    return 0


def _save(doc, path):
    try:
        save(doc, path)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror or exc}") from exc


def cmd_example(args, out) -> int:
    *params, path = args.args
    name = args.name
    try:
        if name == "open-cover":
            if len(params) != 2:
                raise InputError('usage: example open-cover <points> "<U1>;<U2>;..." <out>')
            try:
                n = int(params[0])
            except ValueError:
                raise InputError(f"point count must be an integer, got {params[0]!r}") from None
            doc = build_open_cover_fixture(n, parse_covers(params[1]))
        elif name in ("nil3", "fn3"):
            if params:
                raise InputError(f"example {name} takes no parameters")
            doc = build_nil3_fixture() if name == "nil3" else build_fn3_fixture()
        else:
            if len(params) > 1:
                raise InputError("usage: example trivial [points] <out>")
            doc = build_trivial_fixture(int(params[0]) if params else 2)
    except FixtureError as exc:
        raise InputError(str(exc)) from exc
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _save(doc, path)
    print(f"wrote {path} ({doc.content_hash()})", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coverings", description="Coverings of algebras by ideals and their corings.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check that a fixture is an algebra covered by its ideals")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)

    r = sub.add_parser("report", help="build the covering coring and run every check")
    r.add_argument("file")
    r.add_argument("--json", action="store_true", help=f"emit a {REPORT_SCHEMA} JSON document")
    r.add_argument("--skip-projectivity", action="store_true", help="skip the projectivity tests")
    r.set_defaults(func=cmd_report)

    g = sub.add_parser("generate", help="write a random covering fixture")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--profile", choices=PROFILES, default="mixed")
    g.add_argument("out")
    g.set_defaults(func=cmd_generate)

    e = sub.add_parser("example", help="write a named example fixture")
    e.add_argument("name", choices=EXAMPLES)
    e.add_argument("args", nargs="+", metavar="param/out", help="parameters followed by the output path")
    e.set_defaults(func=cmd_example)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NegativeVerdict as exc:
        print(f"fail: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
