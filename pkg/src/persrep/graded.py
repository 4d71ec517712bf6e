"""Finitely presented graded modules over a monoid ring.

A presentation lists generators with degrees and homogeneous relations.
A relation of degree d is a sum of terms (coeff, shift, generator) where
each shift composed with the generator degree equals d.  From this data
the module's degree-g component, the connecting maps between components,
and a finite framing set are all computable.

Two independent code paths compute component dimensions: component()
builds the presentation of one graded piece following the generator
indexing of the finiteness construction, while truncated_realization()
assembles the raw linear system of shifted symbols from scratch.  Tests
play them against each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .exactlinalg import (
    FpPresentation,
    Matrix,
    Ring,
    RingError,
    UnsupportedRingError,
    rank,
)
from .monoid import DivisibilityError, GoodMonoid, InstanceMismatchError, MonoidError


class ValidationError(Exception):
    """Raised by operations that require a valid presentation or diagram."""

    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(report.violations))


@dataclass(frozen=True)
class PresentationReport:
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"pass": self.ok, "violations": list(self.violations)}


@dataclass(frozen=True)
class MonoidRingElement:
    """Element of the monoid ring: a finite sum of coeff * X^exponent terms.

    Terms are kept sorted by the monoid's canonical order with no zero
    coefficients and no repeated exponents.
    """

    ring: Ring
    monoid: GoodMonoid
    terms: tuple  # ((exponent, coeff), ...)

    @staticmethod
    def make(ring: Ring, monoid: GoodMonoid, terms: Iterable[tuple]) -> "MonoidRingElement":
        acc: dict = {}
        for exponent, coeff in terms:
            g = monoid.check(exponent)
            c = ring.canon(coeff)
            if g in acc:
                c = ring.add(acc[g], c)
            acc[g] = c
        cleaned = tuple(
            (g, c) for g, c in sorted(acc.items(), key=lambda t: monoid.sort_key(t[0]))
            if not ring.is_zero(c)
        )
        return MonoidRingElement(ring, monoid, cleaned)

    @staticmethod
    def zero(ring: Ring, monoid: GoodMonoid) -> "MonoidRingElement":
        return MonoidRingElement(ring, monoid, ())

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exponent):
        g = self.monoid.check(exponent)
        for h, c in self.terms:
            if h == g:
                return c
        return self.ring.zero()

    def add(self, other: "MonoidRingElement") -> "MonoidRingElement":
        return MonoidRingElement.make(self.ring, self.monoid, self.terms + other.terms)

    def scale(self, c) -> "MonoidRingElement":
        c = self.ring.canon(c)
        return MonoidRingElement.make(
            self.ring, self.monoid, ((g, self.ring.mul(c, a)) for g, a in self.terms)
        )

    def monomial_mul(self, h) -> "MonoidRingElement":
        """Left multiplication by X^h."""
        h = self.monoid.check(h)
        return MonoidRingElement.make(
            self.ring, self.monoid,
            ((self.monoid.compose(h, g), c) for g, c in self.terms),
        )

    def mul(self, other: "MonoidRingElement") -> "MonoidRingElement":
        out: list = []
        for g1, c1 in self.terms:
            for g2, c2 in other.terms:
                out.append((self.monoid.compose(g1, g2), self.ring.mul(c1, c2)))
        return MonoidRingElement.make(self.ring, self.monoid, out)


@dataclass(frozen=True)
class GradedGenerator:
    gid: str
    degree: object


@dataclass(frozen=True)
class RelationTerm:
    coeff: object
    shift: object
    gen: str


@dataclass(frozen=True)
class HomogeneousRelation:
    degree: object
    terms: tuple

    @staticmethod
    def make(degree, terms: Iterable) -> "HomogeneousRelation":
        normalized = tuple(
            t if isinstance(t, RelationTerm) else RelationTerm(*t) for t in terms
        )
        return HomogeneousRelation(degree, normalized)


@dataclass(frozen=True)
class GradedPresentation:
    monoid: GoodMonoid
    ring: Ring
    generators: tuple
    relations: tuple
    _report: object = field(default=None, compare=False, repr=False)

    @staticmethod
    def make(monoid: GoodMonoid, ring: Ring,
             generators: Iterable, relations: Iterable) -> "GradedPresentation":
        gens = tuple(
            g if isinstance(g, GradedGenerator) else GradedGenerator(*g) for g in generators
        )
        rels = tuple(
            r if isinstance(r, HomogeneousRelation) else HomogeneousRelation.make(*r)
            for r in relations
        )
        return GradedPresentation(monoid, ring, gens, rels)

    def generator_index(self) -> Dict[str, int]:
        return {g.gid: i for i, g in enumerate(self.generators)}

    def degree_set(self) -> list:
        """All generator and relation degrees, deduplicated, in canonical order."""
        seen = {self.monoid.check(g.degree) for g in self.generators}
        seen.update(self.monoid.check(r.degree) for r in self.relations)
        return sorted(seen, key=self.monoid.sort_key)


def validate_presentation(p: GradedPresentation) -> PresentationReport:
    """Check every structural invariant; collect violations instead of raising."""
    out: List[str] = []
    monoid, ring = p.monoid, p.ring
    ids = [g.gid for g in p.generators]
    for gid in sorted({i for i in ids if ids.count(i) > 1}):
        out.append(f"duplicate generator id {gid!r}")
    degrees: Dict[str, object] = {}
    for g in p.generators:
        try:
            degrees[g.gid] = monoid.check(g.degree)
        except InstanceMismatchError as exc:
            out.append(f"generator {g.gid!r}: {exc}")
    for k, rel in enumerate(p.relations):
        try:
            d = monoid.check(rel.degree)
        except InstanceMismatchError as exc:
            out.append(f"relation {k}: bad degree: {exc}")
            continue
        seen_gens = set()
        for t, term in enumerate(rel.terms):
            if term.gen not in degrees:
                out.append(f"relation {k} term {t}: unknown generator {term.gen!r}")
                continue
            if term.gen in seen_gens:
                out.append(f"relation {k}: repeated generator {term.gen!r}")
            seen_gens.add(term.gen)
            try:
                c = ring.canon(term.coeff)
            except RingError as exc:
                out.append(f"relation {k} term {t}: {exc}")
                continue
            if ring.is_zero(c):
                out.append(f"relation {k} term {t}: zero coefficient")
            try:
                shift = monoid.check(term.shift)
            except InstanceMismatchError as exc:
                out.append(f"relation {k} term {t}: bad shift: {exc}")
                continue
            if monoid.compose(shift, degrees[term.gen]) != d:
                out.append(
                    f"relation {k} term {t}: inhomogeneous: "
                    f"shift*deg({term.gen}) != relation degree"
                )
    return PresentationReport(tuple(out))


def ensure_valid(p: GradedPresentation) -> None:
    report = p._report
    if report is None:
        report = validate_presentation(p)
        object.__setattr__(p, "_report", report)
    if not report.ok:
        raise ValidationError(report)


def component(p: GradedPresentation, g) -> FpPresentation:
    """The degree-g piece of the module as a finitely presented R-module.

    Its generators are the graded generators whose degree divides g, in
    presentation order; the j-th one stands for the shift of generator j
    landing in degree g.  Each relation whose degree divides g contributes
    the row of its shifted coefficients.
    """
    ensure_valid(p)
    monoid, ring = p.monoid, p.ring
    g = monoid.check(g)
    comp_gens = []
    positions: Dict[str, int] = {}
    for gen in p.generators:
        if monoid.divides(gen.degree, g):
            positions[gen.gid] = len(comp_gens)
            comp_gens.append(gen)
    rows = []
    for rel in p.relations:
        hp = monoid.left_divide(rel.degree, g)
        if hp is None:
            continue
        row = [ring.zero()] * len(comp_gens)
        for term in rel.terms:
            j = positions[term.gen]
            row[j] = ring.add(row[j], ring.canon(term.coeff))
        rows.append(row)
    return FpPresentation(ring, len(comp_gens), Matrix.from_rows(ring, rows, ncols=len(comp_gens)))


def component_labels(p: GradedPresentation, g) -> list:
    """(generator id, shift) pairs naming the component generators at degree g."""
    ensure_valid(p)
    monoid = p.monoid
    g = monoid.check(g)
    out = []
    for gen in p.generators:
        h = monoid.left_divide(gen.degree, g)
        if h is not None:
            out.append((gen.gid, h))
    return out


def structure_map(p: GradedPresentation, g1, g2) -> Matrix:
    """Connecting map from the degree-g1 component to the degree-g2 component.

    Column convention: the matrix has one column per component generator
    at g1 and one row per component generator at g2.  Because the g1
    generators are a subset of the g2 generators, this is a 0/1 index
    inclusion.
    """
    ensure_valid(p)
    monoid, ring = p.monoid, p.ring
    g1, g2 = monoid.check(g1), monoid.check(g2)
    if not monoid.divides(g1, g2):
        raise DivisibilityError(f"{g1!r} does not divide {g2!r}")
    src = [gen.gid for gen in p.generators if monoid.divides(gen.degree, g1)]
    dst = [gen.gid for gen in p.generators if monoid.divides(gen.degree, g2)]
    dst_pos = {gid: i for i, gid in enumerate(dst)}
    rows = [[ring.zero()] * len(src) for _ in range(len(dst))]
    for j, gid in enumerate(src):
        rows[dst_pos[gid]][j] = ring.one()
    return Matrix.from_rows(ring, rows, ncols=len(src))


def framing_set(p: GradedPresentation, subset_cap: int = 20) -> frozenset:
    """Union of the plcms of every subset of the generator/relation degrees.

    Contains the identity (from the empty subset) and every degree of the
    presentation (from singletons).  The subset enumeration is exponential
    in the number of distinct degrees; a cap guards against misuse.
    """
    ensure_valid(p)
    degrees = p.degree_set()
    if len(degrees) > subset_cap:
        raise ValueError(
            f"{len(degrees)} distinct degrees exceed the subset cap {subset_cap}"
        )
    out = set()
    for r in range(len(degrees) + 1):
        for subset in itertools.combinations(degrees, r):
            out.update(p.monoid.plcm(subset))
    return frozenset(out)


def truncated_realization(p: GradedPresentation, degrees: Iterable) -> dict:
    """Component dimensions from the raw shifted-symbol linear system.

    For each listed degree g the unknowns are all symbols X^h e_j with
    h * deg(j) = g, and the equations are all shifts X^h' z_k of relations
    landing in degree g, expanded term by term in the monoid ring.  The
    dimension is unknowns minus the rank of the system.  This shares no
    row construction with component().
    """
    ensure_valid(p)
    if not p.ring.is_field:
        raise UnsupportedRingError("truncated_realization needs a field ring")
    monoid, ring = p.monoid, p.ring
    out: dict = {}
    for raw in degrees:
        g = monoid.check(raw)
        unknowns: List[tuple] = []
        index: Dict[tuple, int] = {}
        for gen in p.generators:
            h = monoid.left_divide(gen.degree, g)
            if h is not None:
                index[(gen.gid, h)] = len(unknowns)
                unknowns.append((gen.gid, h))
        eq_rows = []
        for rel in p.relations:
            hp = monoid.left_divide(rel.degree, g)
            if hp is None:
                continue
            # expand X^hp * relation inside the free module, one monoid
            # ring element per generator symbol
            expansion: Dict[str, MonoidRingElement] = {}
            for term in rel.terms:
                piece = MonoidRingElement.make(ring, monoid, [(term.shift, term.coeff)])
                piece = piece.monomial_mul(hp)
                if term.gen in expansion:
                    expansion[term.gen] = expansion[term.gen].add(piece)
                else:
                    expansion[term.gen] = piece
            row = [ring.zero()] * len(unknowns)
            for gid, element in expansion.items():
                for exponent, coeff in element.terms:
                    row[index[(gid, exponent)]] = coeff
            eq_rows.append(row)
        system = Matrix.from_rows(ring, eq_rows, ncols=len(unknowns))
        out[g] = len(unknowns) - rank(system)
    return out
