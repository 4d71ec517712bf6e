"""JSON wire formats for presentations and framed diagrams.

Files are UTF-8 JSON with a top-level "version": 1; unknown fields are
rejected.  Degrees follow the per-monoid serialization (integers, integer
arrays, words, "p/q" strings) and scalars follow the per-ring one.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

from .diagram import Frame, FramedDiagram, validate_diagram
from .exactlinalg import (
    FpPresentation,
    Matrix,
    Ring,
    RingError,
    matrices_equal_mod_relations,
    ring_from_descriptor,
)
from .graded import (
    GradedGenerator,
    GradedPresentation,
    HomogeneousRelation,
    RelationTerm,
    validate_presentation,
)
from .monoid import GoodMonoid, MonoidError, monoid_from_descriptor

SCHEMA_VERSION = 1


class LoadError(Exception):
    """Malformed or invalid input file."""


def _require_keys(obj: dict, required: set, optional: set, what: str):
    if not isinstance(obj, dict):
        raise LoadError(f"{what} must be a JSON object")
    missing = required - set(obj)
    if missing:
        raise LoadError(f"{what} missing fields: {sorted(missing)}")
    unknown = set(obj) - required - optional
    if unknown:
        raise LoadError(f"{what} has unknown fields: {sorted(unknown)}")


def _check_version(obj: dict, what: str):
    version = obj.get("version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise LoadError(f"{what} has unsupported version {version!r}")


def _load_monoid(obj) -> GoodMonoid:
    try:
        return monoid_from_descriptor(obj)
    except (ValueError, TypeError) as exc:
        raise LoadError(str(exc)) from exc


def _load_ring(obj) -> Ring:
    try:
        return ring_from_descriptor(obj)
    except RingError as exc:
        raise LoadError(str(exc)) from exc


def _load_degree(monoid: GoodMonoid, v, what: str):
    try:
        return monoid.degree_from_json(v)
    except MonoidError as exc:
        raise LoadError(f"{what}: {exc}") from exc


def presentation_to_json(p: GradedPresentation) -> dict:
    m, r = p.monoid, p.ring
    return {
        "version": SCHEMA_VERSION,
        "monoid": m.descriptor(),
        "ring": r.descriptor(),
        "generators": [
            {"id": g.gid, "degree": m.degree_to_json(g.degree)} for g in p.generators
        ],
        "relations": [
            {
                "degree": m.degree_to_json(rel.degree),
                "terms": [
                    {
                        "coeff": r.scalar_to_json(r.canon(t.coeff)),
                        "shift": m.degree_to_json(t.shift),
                        "gen": t.gen,
                    }
                    for t in rel.terms
                ],
            }
            for rel in p.relations
        ],
    }


def presentation_from_json(obj: dict) -> GradedPresentation:
    _require_keys(obj, {"monoid", "ring", "generators", "relations"}, {"version"},
                  "presentation")
    _check_version(obj, "presentation")
    monoid = _load_monoid(obj["monoid"])
    ring = _load_ring(obj["ring"])
    gens = []
    for k, g in enumerate(obj["generators"]):
        _require_keys(g, {"id", "degree"}, set(), f"generator {k}")
        gens.append(GradedGenerator(g["id"], _load_degree(monoid, g["degree"], f"generator {k}")))
    rels = []
    for k, rel in enumerate(obj["relations"]):
        _require_keys(rel, {"degree", "terms"}, set(), f"relation {k}")
        degree = _load_degree(monoid, rel["degree"], f"relation {k}")
        terms = []
        for t, term in enumerate(rel["terms"]):
            _require_keys(term, {"coeff", "shift", "gen"}, set(), f"relation {k} term {t}")
            try:
                coeff = ring.scalar_from_json(term["coeff"])
            except RingError as exc:
                raise LoadError(f"relation {k} term {t}: {exc}") from exc
            shift = _load_degree(monoid, term["shift"], f"relation {k} term {t}")
            terms.append(RelationTerm(coeff, shift, term["gen"]))
        rels.append(HomogeneousRelation(degree, tuple(terms)))
    p = GradedPresentation(monoid, ring, tuple(gens), tuple(rels))
    report = validate_presentation(p)
    if not report.ok:
        raise LoadError("invalid presentation: " + "; ".join(report.violations))
    return p


def _matrix_to_json(mat: Matrix) -> list:
    return mat.to_json()


def _matrix_from_json(ring: Ring, rows, ncols: int, what: str) -> Matrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise LoadError(f"{what}: matrix must be a list of rows")
    try:
        return Matrix.from_rows(ring, [[ring.scalar_from_json(x) for x in r] for r in rows],
                                ncols=ncols)
    except (RingError, ValueError) as exc:
        raise LoadError(f"{what}: {exc}") from exc


def diagram_to_json(d: FramedDiagram) -> dict:
    m = d.monoid
    maps = []
    for (f1, f2), mat in sorted(d.transitions.items()):
        if f1 == f2:
            continue  # identities are implied
        maps.append({"from": f1, "to": f2, "matrix": _matrix_to_json(mat)})
    return {
        "version": SCHEMA_VERSION,
        "monoid": m.descriptor(),
        "ring": d.ring.descriptor(),
        "frames": [
            {"id": f.fid, "degree": m.degree_to_json(f.degree)} for f in d.frames
        ],
        "modules": {
            fid: {
                "generators": mod.n,
                "relations": _matrix_to_json(mod.relations),
            }
            for fid, mod in sorted(d.modules.items())
        },
        "maps": maps,
    }


def diagram_from_json(obj: dict) -> FramedDiagram:
    _require_keys(obj, {"monoid", "ring", "frames", "modules", "maps"}, {"version"},
                  "diagram")
    _check_version(obj, "diagram")
    monoid = _load_monoid(obj["monoid"])
    ring = _load_ring(obj["ring"])
    frames = []
    for k, f in enumerate(obj["frames"]):
        _require_keys(f, {"id", "degree"}, set(), f"frame {k}")
        frames.append(Frame(f["id"], _load_degree(monoid, f["degree"], f"frame {k}")))
    fids = [f.fid for f in frames]
    if len(set(fids)) != len(fids):
        raise LoadError("duplicate frame ids")
    modules = {}
    for fid, spec in obj["modules"].items():
        if fid not in fids:
            raise LoadError(f"module for unknown frame {fid!r}")
        _require_keys(spec, {"generators", "relations"}, set(), f"module {fid}")
        n = spec["generators"]
        if not isinstance(n, int) or n < 0:
            raise LoadError(f"module {fid!r}: generator count must be a natural number")
        modules[fid] = FpPresentation(ring, n, _matrix_from_json(ring, spec["relations"], n, f"module {fid}"))
    missing = set(fids) - set(modules)
    if missing:
        raise LoadError(f"modules missing for frames: {sorted(missing)}")
    transitions: Dict[Tuple[str, str], Matrix] = {}
    by_degree = {f.fid: f.degree for f in frames}
    for k, entry in enumerate(obj["maps"]):
        _require_keys(entry, {"from", "to", "matrix"}, set(), f"map {k}")
        f1, f2 = entry["from"], entry["to"]
        if f1 not in fids or f2 not in fids:
            raise LoadError(f"map {k}: unknown frame in {f1!r}->{f2!r}")
        if not monoid.divides(by_degree[f1], by_degree[f2]):
            raise LoadError(f"map {k}: {f1!r} does not divide {f2!r}")
        mat = _matrix_from_json(ring, entry["matrix"], modules[f1].n, f"map {k}")
        if mat.nrows != modules[f2].n:
            raise LoadError(
                f"map {k}: expected {modules[f2].n} rows, got {mat.nrows}"
            )
        if (f1, f2) in transitions:
            raise LoadError(f"map {k}: duplicate transition {f1!r}->{f2!r}")
        transitions[(f1, f2)] = mat
    for f in frames:
        transitions[(f.fid, f.fid)] = Matrix.identity(ring, modules[f.fid].n)
    _synthesize_composites(monoid, frames, modules, transitions)
    d = FramedDiagram(monoid, ring, tuple(frames), modules, transitions)
    report = validate_diagram(d)
    if not report.ok:
        raise LoadError("invalid diagram: " + "; ".join(report.violations))
    return d


def _synthesize_composites(monoid, frames, modules, transitions):
    """Fill in missing comparable-pair maps by composing stored ones.

    Every two-step factorization through a stored pair must agree modulo
    the target relations; disagreement or an unreachable pair is an error.
    """
    pairs = [
        (f1, f2)
        for f1 in frames
        for f2 in frames
        if f1.fid != f2.fid and monoid.divides(f1.degree, f2.degree)
    ]
    progress = True
    while progress:
        progress = False
        for f1, f2 in pairs:
            if (f1.fid, f2.fid) in transitions:
                continue
            candidates = []
            for mid in frames:
                if mid.fid in (f1.fid, f2.fid):
                    continue
                first = transitions.get((f1.fid, mid.fid))
                second = transitions.get((mid.fid, f2.fid))
                if first is not None and second is not None:
                    candidates.append(second.mul(first))
            if not candidates:
                continue
            head = candidates[0]
            for other in candidates[1:]:
                if not matrices_equal_mod_relations(head, other, modules[f2.fid]):
                    raise LoadError(
                        f"ambiguous composite transition {f1.fid!r}->{f2.fid!r}"
                    )
            transitions[(f1.fid, f2.fid)] = head
            progress = True
    missing = [
        f"{f1.fid}->{f2.fid}" for f1, f2 in pairs if (f1.fid, f2.fid) not in transitions
    ]
    if missing:
        raise LoadError(f"missing transitions with no composite path: {missing}")


def _read_json(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise LoadError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise LoadError(f"{path} is not valid JSON: {exc}") from exc


def load_presentation(path) -> GradedPresentation:
    return presentation_from_json(_read_json(path))


def load_diagram(path) -> FramedDiagram:
    return diagram_from_json(_read_json(path))


def sniff_kind(obj: dict) -> str:
    """\"presentation\" or \"diagram\", judged by the schema's own fields."""
    if isinstance(obj, dict):
        if "generators" in obj and "relations" in obj and "frames" not in obj:
            return "presentation"
        if "frames" in obj and "modules" in obj:
            return "diagram"
    raise LoadError("file is neither a presentation nor a diagram")


def save_json(obj: dict, path) -> None:
    Path(path).write_text(dumps(obj) + "\n", encoding="utf-8")


def dumps(obj, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
