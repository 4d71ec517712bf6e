"""The two translation functors between diagrams and graded presentations.

alpha() turns a framed diagram into a graded presentation: one generator
per module generator at its frame degree, the module relations verbatim,
and for every comparable frame pair one relation per source generator
equating its shifted copy with its image under the transition.  beta()
reads a presentation back as a lazily evaluated diagram.  Both act on
morphisms, and roundtrip_check() certifies on samples that the two
directions invert each other up to componentwise isomorphism.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import graded
from .diagram import (
    DiagramMorphism,
    EvaluableModule,
    Frame,
    FramedDiagram,
    check_morphism,
    ensure_valid_diagram,
    extract_diagram,
)
from .exactlinalg import (
    FpPresentation,
    Matrix,
    RowSpace,
    induced_rank,
    presentation_iso,
)
from .graded import (
    GradedGenerator,
    GradedPresentation,
    HomogeneousRelation,
    RelationTerm,
    ValidationError,
)
from .monoid import GoodMonoid


def _alpha_gid(fid: str, v: int) -> str:
    return f"{fid}.{v}"


def alpha(d: FramedDiagram) -> GradedPresentation:
    """Graded presentation of the module carried by a framed diagram.

    Relations come in two groups: every relation row of every frame
    module, placed at the frame degree with trivial shifts, and for each
    comparable frame pair one relation per source generator saying that
    its shifted copy equals its transition image.  The latter is emitted
    even when the image is zero; dropping it would lose the kernel of the
    transition.
    """
    ensure_valid_diagram(d)
    monoid, ring = d.monoid, d.ring
    e = monoid.identity
    gens: List[GradedGenerator] = []
    for f in d.frames:
        for v in range(d.modules[f.fid].n):
            gens.append(GradedGenerator(_alpha_gid(f.fid, v), f.degree))
    rels: List[HomogeneousRelation] = []
    for f in d.frames:
        mod = d.modules[f.fid]
        for row in mod.relations.rows:
            terms = [
                RelationTerm(c, e, _alpha_gid(f.fid, v))
                for v, c in enumerate(row)
                if not ring.is_zero(c)
            ]
            rels.append(HomogeneousRelation(f.degree, tuple(terms)))
    for f1, f2 in d.comparable_pairs():
        shift = monoid.left_divide(f1.degree, f2.degree)
        T = d.transitions[(f1.fid, f2.fid)]
        for v in range(d.modules[f1.fid].n):
            terms = [RelationTerm(ring.one(), shift, _alpha_gid(f1.fid, v))]
            for w in range(T.nrows):
                c = T.entry(w, v)
                if not ring.is_zero(c):
                    terms.append(RelationTerm(ring.neg(c), e, _alpha_gid(f2.fid, w)))
            rels.append(HomogeneousRelation(f2.degree, tuple(terms)))
    return GradedPresentation(monoid, ring, tuple(gens), tuple(rels))


def beta(p: GradedPresentation) -> EvaluableModule:
    """Lazy diagram view of a graded presentation."""
    graded.ensure_valid(p)
    return EvaluableModule(p)


@dataclass(frozen=True)
class GradedMorphism:
    """Degree-preserving map of presentations, given on generators.

    Each source generator maps to a homogeneous element of the target of
    the same degree, written as (coeff, shift, target generator) terms.
    """

    source: GradedPresentation
    target: GradedPresentation
    images: dict  # source generator id -> tuple of RelationTerm

    @staticmethod
    def make(source, target, images) -> "GradedMorphism":
        normalized = {}
        for gid, terms in images.items():
            normalized[gid] = tuple(
                t if isinstance(t, RelationTerm) else RelationTerm(*t) for t in terms
            )
        return GradedMorphism(source, target, normalized)


@dataclass(frozen=True)
class MorphismCheck:
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_graded_morphism(eta: GradedMorphism) -> MorphismCheck:
    """Degree preservation per term plus relation preservation.

    Relation preservation is checked exactly: the image of each source
    relation is expanded in the component of the target at the relation's
    degree and tested for membership in that component's relation span.
    """
    out: List[str] = []
    src, dst = eta.source, eta.target
    graded.ensure_valid(src)
    graded.ensure_valid(dst)
    if src.monoid != dst.monoid or src.ring != dst.ring:
        out.append("source and target disagree on monoid or ring")
        return MorphismCheck(tuple(out))
    monoid, ring = src.monoid, src.ring
    dst_degrees = {g.gid: monoid.check(g.degree) for g in dst.generators}
    for gen in src.generators:
        terms = eta.images.get(gen.gid, ())
        for t, term in enumerate(terms):
            if term.gen not in dst_degrees:
                out.append(f"image of {gen.gid!r} term {t}: unknown target generator {term.gen!r}")
                continue
            if monoid.compose(monoid.check(term.shift), dst_degrees[term.gen]) != monoid.check(gen.degree):
                out.append(f"image of {gen.gid!r} term {t}: degree mismatch")
    if out:
        return MorphismCheck(tuple(out))
    for k, rel in enumerate(src.relations):
        d = monoid.check(rel.degree)
        row = _image_row_at_degree(eta, rel.terms, d)
        comp = graded.component(dst, d)
        if comp.relations.nrows == 0:
            if any(not ring.is_zero(x) for x in row):
                out.append(f"relation {k} does not map into the target relations")
            continue
        if not RowSpace(comp.relations).contains(row):
            out.append(f"relation {k} does not map into the target relations")
    return MorphismCheck(tuple(out))


def _image_row_at_degree(eta: GradedMorphism, terms: Iterable, d) -> list:
    """Image of a degree-d source element, as a row over the target component at d."""
    monoid, ring = eta.source.monoid, eta.source.ring
    labels = graded.component_labels(eta.target, d)
    index = {lab: i for i, lab in enumerate(labels)}
    row = [ring.zero()] * len(labels)
    for term in terms:
        c = ring.canon(term.coeff)
        s = monoid.check(term.shift)
        for img in eta.images.get(term.gen, ()):
            cc = ring.mul(c, ring.canon(img.coeff))
            ss = monoid.compose(s, monoid.check(img.shift))
            j = index[(img.gen, ss)]
            row[j] = ring.add(row[j], cc)
    return row


def ensure_valid_morphism(eta: GradedMorphism) -> None:
    check = validate_graded_morphism(eta)
    if not check.ok:
        raise ValidationError(graded.PresentationReport(check.violations))


def identity_graded_morphism(p: GradedPresentation) -> GradedMorphism:
    e = p.monoid.identity
    one = p.ring.one()
    return GradedMorphism.make(p, p, {
        g.gid: ((one, e, g.gid),) for g in p.generators
    })


def zero_graded_morphism(src: GradedPresentation, dst: GradedPresentation) -> GradedMorphism:
    return GradedMorphism.make(src, dst, {g.gid: () for g in src.generators})


def compose_graded_morphisms(eta2: GradedMorphism, eta1: GradedMorphism) -> GradedMorphism:
    """eta2 after eta1, with term lists expanded and merged."""
    monoid, ring = eta1.source.monoid, eta1.source.ring
    images = {}
    for gen in eta1.source.generators:
        acc: Dict[tuple, object] = {}
        for t1 in eta1.images.get(gen.gid, ()):
            for t2 in eta2.images.get(t1.gen, ()):
                shift = monoid.compose(monoid.check(t1.shift), monoid.check(t2.shift))
                key = (shift, t2.gen)
                c = ring.mul(ring.canon(t1.coeff), ring.canon(t2.coeff))
                if key in acc:
                    c = ring.add(acc[key], c)
                acc[key] = c
        images[gen.gid] = tuple(
            RelationTerm(c, shift, gid)
            for (shift, gid), c in sorted(acc.items(), key=lambda kv: (kv[0][1], monoid.sort_key(kv[0][0])))
            if not ring.is_zero(c)
        )
    return GradedMorphism(eta1.source, eta2.target, images)


def graded_morphisms_equal(a: GradedMorphism, b: GradedMorphism) -> bool:
    """Equality of normalized term lists per generator."""
    monoid, ring = a.source.monoid, a.source.ring

    def norm(eta):
        out = {}
        for gid, terms in eta.images.items():
            acc: Dict[tuple, object] = {}
            for t in terms:
                key = (monoid.check(t.shift), t.gen)
                c = ring.canon(t.coeff)
                if key in acc:
                    c = ring.add(acc[key], c)
                acc[key] = c
            out[gid] = {k: v for k, v in acc.items() if not ring.is_zero(v)}
        return out

    return norm(a) == norm(b)


def alpha_on_morphism(xi: DiagramMorphism) -> GradedMorphism:
    """Generator-by-generator image of a diagram morphism between the alphas."""
    report = check_morphism(xi)
    if not report.ok:
        raise ValidationError(graded.PresentationReport(report.violations))
    src_p = alpha(xi.source)
    dst_p = alpha(xi.target)
    monoid, ring = src_p.monoid, src_p.ring
    e = monoid.identity
    images = {}
    for f in xi.source.frames:
        M = xi.components[f.fid]
        for v in range(xi.source.modules[f.fid].n):
            terms = tuple(
                RelationTerm(M.entry(w, v), e, _alpha_gid(f.fid, w))
                for w in range(M.nrows)
                if not ring.is_zero(M.entry(w, v))
            )
            images[_alpha_gid(f.fid, v)] = terms
    return GradedMorphism(src_p, dst_p, images)


def beta_on_morphism(eta: GradedMorphism, frame_degrees: Optional[Iterable] = None) -> DiagramMorphism:
    """Componentwise matrices of a graded morphism over shared frame degrees.

    Defaults to the union of both framing sets, so source and target
    diagrams are extracted over identical frames.
    """
    ensure_valid_morphism(eta)
    monoid, ring = eta.source.monoid, eta.source.ring
    src_e = beta(eta.source)
    dst_e = beta(eta.target)
    if frame_degrees is None:
        pts = set(src_e.framing_set()) | set(dst_e.framing_set())
    else:
        pts = {monoid.check(g) for g in frame_degrees}
    pts.add(monoid.identity)
    ordered = sorted(pts, key=monoid.sort_key)
    src_d = extract_diagram(src_e, ordered)
    dst_d = extract_diagram(dst_e, ordered)
    components = {}
    for f in src_d.frames:
        h = f.degree
        src_labels = graded.component_labels(eta.source, h)
        dst_labels = graded.component_labels(eta.target, h)
        dst_index = {lab: i for i, lab in enumerate(dst_labels)}
        rows = [[ring.zero()] * len(src_labels) for _ in range(len(dst_labels))]
        for j, (gid, hj) in enumerate(src_labels):
            for img in eta.images.get(gid, ()):
                c = ring.canon(img.coeff)
                shifted = monoid.compose(hj, monoid.check(img.shift))
                i = dst_index[(img.gen, shifted)]
                rows[i][j] = ring.add(rows[i][j], c)
        components[f.fid] = Matrix.from_rows(ring, rows, ncols=len(src_labels))
    return DiagramMorphism(src_d, dst_d, components)


def compose_diagram_morphisms(x2: DiagramMorphism, x1: DiagramMorphism) -> DiagramMorphism:
    components = {
        fid: x2.components[fid].mul(x1.components[fid]) for fid in x1.components
    }
    return DiagramMorphism(x1.source, x2.target, components)


def identity_diagram_morphism(d: FramedDiagram) -> DiagramMorphism:
    components = {f.fid: Matrix.identity(d.ring, d.modules[f.fid].n) for f in d.frames}
    return DiagramMorphism(d, d, components)


def zero_diagram_morphism(src: FramedDiagram, dst: FramedDiagram) -> DiagramMorphism:
    components = {
        f.fid: Matrix.zeros(src.ring, dst.modules[f.fid].n, src.modules[f.fid].n)
        for f in src.frames
    }
    return DiagramMorphism(src, dst, components)


def diagram_morphisms_equal_mod_relations(a: DiagramMorphism, b: DiagramMorphism) -> bool:
    from .exactlinalg import matrices_equal_mod_relations

    for f in a.source.frames:
        if not matrices_equal_mod_relations(
            a.components[f.fid], b.components[f.fid], a.target.modules[f.fid]
        ):
            return False
    return True


@dataclass(frozen=True)
class RoundtripCheck:
    degree: object
    passed: bool
    detail: str


@dataclass(frozen=True)
class RoundtripReport:
    checks: tuple

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "checks": [
                {"degree": c.degree, "pass": c.passed, "detail": c.detail}
                for c in self.checks
            ],
            "pass": self.ok,
        }


def _expected_frame(d: FramedDiagram, g):
    """Frame degree that determines the diagram's component at g, if any."""
    monoid = d.monoid
    frame_degrees = [monoid.check(f.degree) for f in d.frames]
    below = [h for h in frame_degrees if monoid.divides(h, g)]
    candidates = sorted(
        (h for h in monoid.plcm(below) if monoid.divides(h, g)),
        key=monoid.sort_key,
    )
    for h in candidates:
        if h in frame_degrees:
            return h
    return None


def roundtrip_check(x, sample_degrees: Sequence, seed: int = 0) -> RoundtripReport:
    """Sampled certificate that the two translations invert each other.

    For a diagram: translate to a presentation and back, then compare
    components at every frame degree and every sampled degree, plus
    induced ranks of connecting maps on sampled comparable pairs.  For a
    presentation: extract the framed diagram of its module view, translate
    back, and compare components degreewise.  All comparisons are exact
    isomorphism tests of finitely presented modules.
    """
    if isinstance(x, FramedDiagram):
        return _roundtrip_diagram(x, sample_degrees, seed)
    if isinstance(x, GradedPresentation):
        return _roundtrip_presentation(x, sample_degrees, seed)
    raise TypeError(f"roundtrip_check expects a diagram or presentation, got {type(x)!r}")


def _roundtrip_diagram(d: FramedDiagram, sample_degrees, seed) -> RoundtripReport:
    ensure_valid_diagram(d)
    monoid = d.monoid
    out: List[RoundtripCheck] = []
    E = beta(alpha(d))
    frame_of_degree = {monoid.check(f.degree): f.fid for f in d.frames}
    degrees = [monoid.check(f.degree) for f in d.frames]
    degrees += [monoid.check(g) for g in sample_degrees]
    seen = set()
    for g in degrees:
        if g in seen:
            continue
        seen.add(g)
        h = g if g in frame_of_degree else _expected_frame(d, g)
        gj = monoid.degree_to_json(g)
        if h is None:
            out.append(RoundtripCheck(gj, False, "no frame degree determines this degree"))
            continue
        expected = d.modules[frame_of_degree[h]]
        got = E.evaluate(g)
        ok = presentation_iso(got, expected)
        out.append(RoundtripCheck(gj, ok, "component isomorphic" if ok else "component differs"))
    rng = random.Random(seed)
    pool = sorted(seen, key=monoid.sort_key)
    pairs = [(a, b) for a in pool for b in pool if a != b and monoid.divides(a, b)]
    rng.shuffle(pairs)
    for a, b in pairs[:20]:
        ha = a if a in frame_of_degree else _expected_frame(d, a)
        hb = b if b in frame_of_degree else _expected_frame(d, b)
        if ha is None or hb is None or not monoid.divides(ha, hb):
            continue
        T = d.transitions[(frame_of_degree[ha], frame_of_degree[hb])]
        want = induced_rank(T, d.modules[frame_of_degree[ha]], d.modules[frame_of_degree[hb]])
        got = induced_rank(E.morphism(a, b), E.evaluate(a), E.evaluate(b))
        ok = want == got
        out.append(RoundtripCheck(
            [monoid.degree_to_json(a), monoid.degree_to_json(b)], ok,
            "map rank matches" if ok else f"map rank {got} differs from {want}",
        ))
    return RoundtripReport(tuple(out))


def _roundtrip_presentation(p: GradedPresentation, sample_degrees, seed) -> RoundtripReport:
    graded.ensure_valid(p)
    monoid = p.monoid
    E = beta(p)
    H = sorted(E.framing_set(), key=monoid.sort_key)
    back = alpha(extract_diagram(E, H))
    E2 = beta(back)
    out: List[RoundtripCheck] = []
    degrees = list(H) + [monoid.check(g) for g in sample_degrees]
    seen = set()
    for g in degrees:
        if g in seen:
            continue
        seen.add(g)
        ok = presentation_iso(E2.evaluate(g), E.evaluate(g))
        out.append(RoundtripCheck(
            monoid.degree_to_json(g), ok,
            "component isomorphic" if ok else "component differs",
        ))
    rng = random.Random(seed)
    pool = sorted(seen, key=monoid.sort_key)
    pairs = [(a, b) for a in pool for b in pool if a != b and monoid.divides(a, b)]
    rng.shuffle(pairs)
    for a, b in pairs[:20]:
        want = induced_rank(E.morphism(a, b), E.evaluate(a), E.evaluate(b))
        got = induced_rank(E2.morphism(a, b), E2.evaluate(a), E2.evaluate(b))
        ok = want == got
        out.append(RoundtripCheck(
            [monoid.degree_to_json(a), monoid.degree_to_json(b)], ok,
            "map rank matches" if ok else f"map rank {got} differs from {want}",
        ))
    return RoundtripReport(tuple(out))
