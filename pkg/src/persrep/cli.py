"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 a mathematical property check
failed, 3 unsupported combination of monoid, ring and operation.  Output
is deterministic JSON (sorted keys) unless --pretty asks for the human
rendering.  PERSREP_SEED supplies the default for every --seed flag.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import diagram as diagram_mod
from . import functors, gallery, graded, monoid as monoid_mod, serialize
from .barcode import barcode as compute_barcode
from .exactlinalg import UnsupportedRingError
from .graded import ValidationError
from .monoid import GoodMonoid, MonoidError, UnsupportedMonoidError
from .serialize import LoadError

EXIT_OK = 0
EXIT_BAD_INPUT = 1
EXIT_PROPERTY = 2
EXIT_UNSUPPORTED = 3


def _default_seed() -> int:
    raw = os.environ.get("PERSREP_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def _emit(payload, pretty: bool) -> None:
    sys.stdout.write(serialize.dumps(payload, pretty=pretty) + "\n")


def _parse_monoid_spec(spec: str) -> GoodMonoid:
    spec = spec.strip()
    if spec.startswith("{"):
        try:
            return monoid_mod.monoid_from_descriptor(json.loads(spec))
        except (json.JSONDecodeError, ValueError, TypeError) as exc:
            raise LoadError(f"bad monoid spec: {exc}") from exc
    if spec == "nat":
        return monoid_mod.NatMonoid()
    if spec == "qplus":
        return monoid_mod.QPlusMonoid()
    if spec.startswith("grid:"):
        try:
            return monoid_mod.GridMonoid(int(spec.split(":", 1)[1]))
        except ValueError as exc:
            raise LoadError(f"bad monoid spec {spec!r}") from exc
    if spec.startswith("freeword:"):
        return monoid_mod.FreeWordMonoid(tuple(spec.split(":", 1)[1]))
    raise LoadError(f"bad monoid spec {spec!r}; use nat, grid:K, freeword:SYMBOLS, qplus or JSON")


def _parse_degree(monoid: GoodMonoid, raw: str):
    raw = raw.strip()
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    try:
        return monoid.degree_from_json(value)
    except MonoidError as exc:
        raise LoadError(f"bad degree {raw!r}: {exc}") from exc


def _parse_degree_list(monoid: GoodMonoid, raw: str) -> list:
    raw = raw.strip()
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = None
    if isinstance(value, list):
        if isinstance(monoid, monoid_mod.GridMonoid) and not all(
            isinstance(item, list) for item in value
        ):
            items = [value]
        else:
            items = value
        try:
            return [monoid.degree_from_json(item) for item in items]
        except MonoidError as exc:
            raise LoadError(f"bad degree list {raw!r}: {exc}") from exc
    return [_parse_degree(monoid, chunk) for chunk in raw.split(",")]


def _load_any(path: str):
    obj = serialize._read_json(path)
    kind = serialize.sniff_kind(obj)
    if kind == "presentation":
        return serialize.presentation_from_json(obj)
    return serialize.diagram_from_json(obj)


def _as_module(thing):
    if isinstance(thing, graded.GradedPresentation):
        return functors.beta(thing)
    return functors.beta(functors.alpha(thing))


def _cmd_component(args) -> int:
    p = serialize.load_presentation(args.file)
    g = _parse_degree(p.monoid, args.degree)
    comp = graded.component(p, g)
    out = {
        "version": serialize.SCHEMA_VERSION,
        "degree": p.monoid.degree_to_json(g),
        "generators": comp.n,
        "relations": comp.relations.to_json(),
    }
    if p.ring.is_field:
        out["dimension"] = comp.dim()
    elif p.ring.kind == "integer":
        free, torsion = comp.invariants()
        out["free_rank"] = free
        out["torsion"] = list(torsion)
    _emit(out, args.pretty)
    return EXIT_OK


def _cmd_map(args) -> int:
    p = serialize.load_presentation(args.file)
    g1 = _parse_degree(p.monoid, args.from_degree)
    g2 = _parse_degree(p.monoid, args.to_degree)
    mat = graded.structure_map(p, g1, g2)
    _emit({
        "version": serialize.SCHEMA_VERSION,
        "from": p.monoid.degree_to_json(g1),
        "to": p.monoid.degree_to_json(g2),
        "matrix": mat.to_json(),
    }, args.pretty)
    return EXIT_OK


def _cmd_frames(args) -> int:
    p = serialize.load_presentation(args.file)
    H = sorted(graded.framing_set(p), key=p.monoid.sort_key)
    _emit({
        "version": serialize.SCHEMA_VERSION,
        "framing_set": [p.monoid.degree_to_json(h) for h in H],
    }, args.pretty)
    return EXIT_OK


def _cmd_barcode(args) -> int:
    p = serialize.load_presentation(args.file)
    code = compute_barcode(p)
    if args.pretty:
        sys.stdout.write(code.ascii_diagram())
    else:
        _emit(code.to_json(), False)
    return EXIT_OK


def _cmd_alpha(args) -> int:
    d = serialize.load_diagram(args.file)
    p = functors.alpha(d)
    payload = serialize.presentation_to_json(p)
    if args.output:
        serialize.save_json(payload, args.output)
    else:
        _emit(payload, args.pretty)
    return EXIT_OK


def _cmd_roundtrip(args) -> int:
    thing = _load_any(args.file)
    monoid = thing.monoid
    import random

    rng = random.Random(args.seed)
    samples = [monoid.sample(rng) for _ in range(args.samples)]
    report = functors.roundtrip_check(thing, samples, seed=args.seed)
    _emit(report.to_json(), args.pretty)
    return EXIT_OK if report.ok else EXIT_PROPERTY


def _cmd_stationary(args) -> int:
    thing = _load_any(args.file)
    module = _as_module(thing)
    seq = _parse_degree_list(module.monoid, args.sequence)
    index = diagram_mod.stationarity_index(module, seq)
    _emit({
        "version": serialize.SCHEMA_VERSION,
        "sequence": [module.monoid.degree_to_json(g) for g in seq],
        "index": index,
    }, args.pretty)
    return EXIT_OK


def _cmd_monoid_plcm(args) -> int:
    monoid = _parse_monoid_spec(args.monoid)
    elems = _parse_degree_list(monoid, args.elems) if args.elems else []
    result = sorted(monoid.plcm(elems), key=monoid.sort_key)
    _emit({
        "version": serialize.SCHEMA_VERSION,
        "elems": [monoid.degree_to_json(g) for g in elems],
        "plcm": [monoid.degree_to_json(g) for g in result],
    }, args.pretty)
    return EXIT_OK


def _cmd_monoid_axioms(args) -> int:
    monoid = _parse_monoid_spec(args.monoid)
    report = monoid_mod.check_good_axioms(monoid, args.samples, args.seed)
    payload = report.to_json()
    payload["version"] = serialize.SCHEMA_VERSION
    _emit(payload, args.pretty)
    return EXIT_OK if report.ok else EXIT_PROPERTY


def _cmd_hasse(args) -> int:
    monoid = _parse_monoid_spec(args.monoid)
    elems = _parse_degree_list(monoid, args.elems) if args.elems else []
    if args.dot:
        sys.stdout.write(monoid_mod.hasse_dot(monoid, elems))
        return EXIT_OK
    pts = sorted({monoid.check(g) for g in elems}, key=monoid.sort_key)
    edges = monoid_mod._covering_pairs(monoid, pts)
    _emit({
        "version": serialize.SCHEMA_VERSION,
        "nodes": [monoid.degree_to_json(g) for g in pts],
        "edges": [
            [monoid.degree_to_json(a), monoid.degree_to_json(b)] for a, b in edges
        ],
    }, args.pretty)
    return EXIT_OK


def _cmd_gallery(args) -> int:
    if args.case == "zc-counterexample":
        payload = gallery.zc_case_report()
        if args.pretty:
            lines = [f"counterexample over Z[x1,x2,...]: module generated by {{1}}"]
            for row in payload["levels"]:
                lines.append(
                    f"  level {row['level']}: witness {row['witness']} is "
                    f"{'nonzero' if row['nonzero_at_level'] else 'ZERO'} here and "
                    f"{'zero' if row['zero_at_next_level'] else 'NONZERO'} one level up"
                )
            lines.append("  no shift map is injective, so the module view is not of finite type")
            sys.stdout.write("\n".join(lines) + "\n")
        else:
            _emit(payload, False)
        return EXIT_OK
    if args.case == "qplus":
        payload = gallery.qplus_case_report(seed=args.seed)
        if args.pretty:
            lines = ["module over the nonnegative rationals: rank 1 at 0, zero above"]
            for s in payload["sequences"]:
                lines.append(
                    f"  sequence {', '.join(s['sequence'])}: stationary from index {s['stationarity_index']}"
                )
            for c in payload["candidate_framing_sets"]:
                lines.append(
                    f"  candidate {{{', '.join(c['candidate'])}}} refuted at degree {c['refuted_at']}"
                )
            sys.stdout.write("\n".join(lines) + "\n")
        else:
            _emit(payload, False)
        return EXIT_OK
    raise LoadError(f"unknown gallery case {args.case!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="persrep",
        description="exact computations with framed persistence diagrams and graded presentations",
    )
    parser.add_argument("--pretty", action="store_true", help="human-readable output")
    sub = parser.add_subparsers(dest="command", required=True)
    seed_default = _default_seed()

    sp = sub.add_parser("component", help="one graded component of a presentation")
    sp.add_argument("file")
    sp.add_argument("--degree", required=True)
    sp.set_defaults(func=_cmd_component)

    sp = sub.add_parser("map", help="connecting map between two components")
    sp.add_argument("file")
    sp.add_argument("--from", dest="from_degree", required=True)
    sp.add_argument("--to", dest="to_degree", required=True)
    sp.set_defaults(func=_cmd_map)

    sp = sub.add_parser("frames", help="framing set of a presentation")
    sp.add_argument("file")
    sp.set_defaults(func=_cmd_frames)

    sp = sub.add_parser("barcode", help="interval decomposition over a field, one parameter")
    sp.add_argument("file")
    sp.set_defaults(func=_cmd_barcode)

    sp = sub.add_parser("alpha", help="translate a framed diagram into a presentation")
    sp.add_argument("file")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=_cmd_alpha)

    sp = sub.add_parser("roundtrip", help="sampled check that the translations invert")
    sp.add_argument("file")
    sp.add_argument("--samples", type=int, default=20)
    sp.add_argument("--seed", type=int, default=seed_default)
    sp.set_defaults(func=_cmd_roundtrip)

    sp = sub.add_parser("stationary", help="stationarity index along a monotone sequence")
    sp.add_argument("file")
    sp.add_argument("--sequence", required=True)
    sp.set_defaults(func=_cmd_stationary)

    mp = sub.add_parser("monoid", help="monoid-level utilities")
    msub = mp.add_subparsers(dest="monoid_command", required=True)

    sp = msub.add_parser("plcm", help="partially least common multiples of a finite set")
    sp.add_argument("--monoid", required=True)
    sp.add_argument("--elems", default="")
    sp.set_defaults(func=_cmd_monoid_plcm)

    sp = msub.add_parser("axioms", help="sampled good-monoid axiom check")
    sp.add_argument("--monoid", required=True)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=seed_default)
    sp.set_defaults(func=_cmd_monoid_axioms)

    sp = sub.add_parser("hasse", help="covering relation of a finite set of elements")
    sp.add_argument("--monoid", required=True)
    sp.add_argument("--elems", default="")
    sp.add_argument("--dot", action="store_true", help="emit DOT instead of JSON")
    sp.set_defaults(func=_cmd_hasse)

    sp = sub.add_parser("gallery", help="boundary cases of the theorems")
    sp.add_argument("case", choices=["zc-counterexample", "qplus"])
    sp.add_argument("--seed", type=int, default=seed_default)
    sp.set_defaults(func=_cmd_gallery)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (LoadError, ValidationError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BAD_INPUT
    except (UnsupportedMonoidError, UnsupportedRingError) as exc:
        sys.stderr.write(f"unsupported: {exc}\n")
        return EXIT_UNSUPPORTED
    except MonoidError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
