"""Command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 usage error, 3 bad input
or a violated genericity/simplicity precondition.  With ``--json-errors``
failures are also reported as one JSON object on stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import __version__
from .checks import default_jobs, run_checks
from .export import UsageError, export, to_json
from .fiber import extract_fiber, is_regular_value
from .generators import DEFAULT_RESOLUTION, FIELDS, SHAPES, expectations, generate
from .io import ParseError, read_tetfield, write_tetfield
from .jacobi import compute_jacobi_set
from .jacobi_structure import compute_jacobi_structure
from .mdrg import SimplicityError, compute_mdrg
from .mesh import GenericityError, MeshStructureError, validate_manifold
from .reeb_space import build_net
from .reebgraph import ReebGraph

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: int, stage: str, message: str, witness=None):
        super().__init__(message)
        self.code = code
        self.stage = stage
        self.witness = witness


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(EXIT_USAGE, "usage", f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _write(path: Optional[str], data: bytes) -> None:
    if path in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise CliError(EXIT_INPUT, "write", f"cannot write {path}: {exc.strerror}") from None


def _load(path: str):
    try:
        mesh = read_tetfield(path)
    except OSError as exc:
        raise CliError(EXIT_INPUT, "read", f"cannot read {path}: {exc.strerror}") from None
    except ParseError as exc:
        raise CliError(EXIT_INPUT, "parse", str(exc), {"line": exc.line, "column": exc.column}) \
            from None
    except MeshStructureError as exc:
        raise CliError(EXIT_INPUT, "parse", str(exc)) from None
    rep = validate_manifold(mesh)
    if not rep.ok:
        first = rep.issues[0]
        raise CliError(EXIT_INPUT, "validate",
                       f"not a closed 3-manifold: {first.simplex} {first.index} {first.condition}"
                       f" ({len(rep.issues)} issues)",
                       [{"simplex": i.simplex, "index": i.index, "condition": i.condition}
                        for i in rep.issues[:20]])
    return mesh


def _witness(w):
    try:
        json.dumps(w)
        return w
    except TypeError:
        return repr(w)


def _mdrg(mesh, force: bool):
    try:
        js = compute_jacobi_set(mesh)
    except GenericityError as exc:
        raise CliError(EXIT_INPUT, "jacobi", str(exc), _witness(exc.witness)) from None
    try:
        return compute_mdrg(mesh, js=js, force=force)
    except SimplicityError as exc:
        raise CliError(EXIT_INPUT, "jacobi", str(exc), _witness(exc.witness)) from None
    except GenericityError as exc:
        raise CliError(EXIT_INPUT, "mdrg", str(exc), _witness(exc.witness)) from None


def _parse_at(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise CliError(EXIT_USAGE, "usage", f"--at expects R1,R2, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise CliError(EXIT_USAGE, "usage", f"--at expects two numbers, got {text!r}") from None


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_gen(args) -> int:
    res = args.resolution
    if res is None:
        res = DEFAULT_RESOLUTION.get(args.field, 4)
    try:
        mesh = generate(args.shape, res, args.field)
    except ValueError as exc:
        raise CliError(EXIT_USAGE, "gen", str(exc)) from None
    _write(args.output, write_tetfield(mesh))
    exp = expectations(args.field)
    if exp and args.output not in (None, "-"):
        _write(args.output + ".expect.json", to_json(exp))
    return EXIT_OK


def cmd_validate(args) -> int:
    mesh = _load(args.input)
    doc = {"ok": True, "n_v": mesh.n_v, "n_e": mesh.n_e, "n_t": mesh.n_t, "n_T": mesh.n_T,
           "euler_characteristic": mesh.euler_characteristic()}
    _write(args.output, to_json(doc))
    return EXIT_OK


def cmd_reeb_graph(args) -> int:
    mesh = _load(args.input)
    try:
        rg = ReebGraph.from_tetfield(mesh, args.field)
    except GenericityError as exc:
        raise CliError(EXIT_INPUT, "reeb-graph", str(exc), _witness(exc.witness)) from None
    _write(args.output, export(rg, "json"))
    if args.dot:
        _write(args.dot, export(rg, "dot"))
    return EXIT_OK


def cmd_jacobi(args) -> int:
    mesh = _load(args.input)
    try:
        js = compute_jacobi_set(mesh)
    except GenericityError as exc:
        raise CliError(EXIT_INPUT, "jacobi", str(exc), _witness(exc.witness)) from None
    _write(args.output, export(js, "json"))
    return EXIT_OK


def cmd_jacobi_structure(args) -> int:
    mesh = _load(args.input)
    try:
        js = compute_jacobi_set(mesh)
        st = compute_jacobi_structure(mesh, js, ReebGraph.from_tetfield(mesh, "f1"))
    except GenericityError as exc:
        raise CliError(EXIT_INPUT, "jacobi-structure", str(exc), _witness(exc.witness)) from None
    _write(args.output, export(st, "json"))
    return EXIT_OK


def cmd_mdrg(args) -> int:
    md = _mdrg(_load(args.input), args.force)
    _write(args.output, export(md, "json"))
    return EXIT_OK


def cmd_reeb_space(args) -> int:
    md = _mdrg(_load(args.input), args.force)
    net = build_net(md)
    _write(args.output, export(net, "json"))
    if args.obj:
        _write(args.obj, export(net, "obj"))
    if args.dot:
        _write(args.dot, export(net, "dot"))
    return EXIT_OK


def cmd_fiber(args) -> int:
    r = _parse_at(args.at)
    mesh = _load(args.input)
    try:
        js = compute_jacobi_set(mesh)
    except GenericityError as exc:
        raise CliError(EXIT_INPUT, "jacobi", str(exc), _witness(exc.witness)) from None
    if not is_regular_value(mesh, js, r):
        raise CliError(EXIT_INPUT, "fiber", f"{r} is not a regular value", list(r))
    try:
        fp = extract_fiber(mesh, r)
    except GenericityError as exc:
        raise CliError(EXIT_INPUT, "fiber", str(exc), _witness(exc.witness)) from None
    doc = {"at": list(r), "components": fp.n_components(), "segments": len(fp.segments),
           "tets": sorted(seg[0] for seg in fp.segments)}
    _write(args.output, to_json(doc))
    return EXIT_OK


def cmd_check(args) -> int:
    mesh = _load(args.input)
    expect = {}
    try:
        with open(args.input + ".expect.json", "rb") as fh:
            expect = json.loads(fh.read())
    except FileNotFoundError:
        pass
    except (OSError, ValueError) as exc:
        raise CliError(EXIT_INPUT, "read", f"bad expectation file: {exc}") from None
    md = _mdrg(mesh, args.force)
    net = build_net(md)
    jobs = args.jobs if args.jobs is not None else default_jobs()
    results = run_checks(md, net, samples=args.samples, seed=args.seed, expect=expect, jobs=jobs)
    ok = all(r.ok for r in results)
    _write(args.output, to_json({"ok": ok, "checks": [r.as_dict() for r in results]}))
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'} {r.name} {r.detail}".rstrip(), file=sys.stderr)
    return EXIT_OK if ok else EXIT_VERIFY


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--force", action="store_true", default=argparse.SUPPRESS,
                        help="continue when the Jacobi set is not a 1-manifold")
    common.add_argument("--json-errors", action="store_true", default=argparse.SUPPRESS,
                        help="report failures as JSON on stderr")

    p = _Parser(prog="reebspace", description="Reeb spaces of bivariate fields on tet meshes")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--force", action="store_true", default=False, help=argparse.SUPPRESS)
    p.add_argument("--json-errors", action="store_true", default=False, help=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_, out=True, inp=True):
        s = sub.add_parser(name, parents=[common], help=help_)
        if inp:
            s.add_argument("-i", "--input", required=True)
        if out:
            s.add_argument("-o", "--output", default="-")
        s.set_defaults(fn=fn)
        return s

    s = add("gen", cmd_gen, "write a synthetic dataset", inp=False)
    s.add_argument("--shape", required=True, choices=SHAPES)
    s.add_argument("--resolution", type=int, default=None)
    s.add_argument("--field", default="linear", choices=FIELDS)
    add("validate", cmd_validate, "check that the mesh is a closed 3-manifold")
    s = add("reeb-graph", cmd_reeb_graph, "Reeb graph of one field")
    s.add_argument("--field", default="f1", choices=("f1", "f2"))
    s.add_argument("--dot")
    add("jacobi", cmd_jacobi, "Jacobi set")
    add("jacobi-structure", cmd_jacobi_structure, "projected Jacobi set with double points")
    add("mdrg", cmd_mdrg, "multi-dimensional Reeb graph")
    s = add("reeb-space", cmd_reeb_space, "net-like skeleton of the Reeb space")
    s.add_argument("--obj")
    s.add_argument("--dot")
    s = add("fiber", cmd_fiber, "components of one fiber")
    s.add_argument("--at", required=True, metavar="R1,R2")
    s = add("check", cmd_check, "run the invariant suite and the oracle comparison")
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, default=None)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    json_errors = "--json-errors" in argv
    try:
        args = build_parser().parse_args(argv)
        json_errors = args.json_errors
        return args.fn(args)
    except CliError as exc:
        err = exc
    except UsageError as exc:
        err = CliError(EXIT_USAGE, "export", str(exc))
    except GenericityError as exc:
        err = CliError(EXIT_INPUT, "genericity", str(exc), _witness(exc.witness))
    if json_errors:
        body = {"error": {EXIT_USAGE: "usage", EXIT_INPUT: "input", EXIT_VERIFY: "verification"}
                [err.code], "stage": err.stage, "message": str(err), "witness": err.witness}
        print(json.dumps(body, sort_keys=True), file=sys.stderr)
    else:
        print(f"reebspace: {err.stage}: {err}", file=sys.stderr)
    return err.code


if __name__ == "__main__":
    sys.exit(main())
