"""Finite-type persistence diagrams over a framing set.

A FramedDiagram stores one finitely presented module per frame degree and
one column-convention transition matrix per comparable frame pair.  An
EvaluableModule is the lazy functor view of a graded presentation: it
hands out components and connecting maps on demand, memoized behind a
lock so concurrent evaluation is safe.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import graded
from .exactlinalg import (
    FpPresentation,
    Matrix,
    Ring,
    induced_is_iso,
    map_is_well_defined,
    matrices_equal_mod_relations,
    presentation_iso,
)
from .graded import GradedPresentation, ValidationError
from .monoid import DivisibilityError, GoodMonoid, MonoidError


@dataclass(frozen=True)
class Frame:
    fid: str
    degree: object


@dataclass(frozen=True)
class DiagramReport:
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"pass": self.ok, "violations": list(self.violations)}


@dataclass(frozen=True)
class FramedDiagram:
    monoid: GoodMonoid
    ring: Ring
    frames: tuple
    modules: dict  # frame id -> FpPresentation
    transitions: dict  # (from id, to id) -> Matrix
    _report: object = field(default=None, compare=False, repr=False)

    @staticmethod
    def make(monoid, ring, frames, modules, transitions) -> "FramedDiagram":
        fr = tuple(f if isinstance(f, Frame) else Frame(*f) for f in frames)
        return FramedDiagram(monoid, ring, fr, dict(modules), dict(transitions))

    def frame_degree(self, fid: str):
        for f in self.frames:
            if f.fid == fid:
                return f.degree
        raise KeyError(fid)

    def comparable_pairs(self) -> list:
        """Ordered frame pairs (f1, f2) with deg(f1) dividing deg(f2), f1 != f2."""
        out = []
        for f1 in self.frames:
            for f2 in self.frames:
                if f1.fid != f2.fid and self.monoid.divides(f1.degree, f2.degree):
                    out.append((f1, f2))
        return out

    def transition(self, fid1: str, fid2: str) -> Matrix:
        return self.transitions[(fid1, fid2)]


def validate_diagram(d: FramedDiagram) -> DiagramReport:
    out: List[str] = []
    monoid = d.monoid
    ids = [f.fid for f in d.frames]
    if len(set(ids)) != len(ids):
        out.append("duplicate frame ids")
    degrees = []
    for f in d.frames:
        try:
            degrees.append(monoid.check(f.degree))
        except MonoidError as exc:
            out.append(f"frame {f.fid!r}: {exc}")
    if len(set(degrees)) != len(degrees):
        out.append("duplicate frame degrees")
    if monoid.identity not in degrees:
        out.append("identity degree missing from the frames")
    for f in d.frames:
        if f.fid not in d.modules:
            out.append(f"frame {f.fid!r} has no module")
            continue
        mod = d.modules[f.fid]
        if mod.ring != d.ring:
            out.append(f"module at {f.fid!r} has ring {mod.ring.kind}, diagram has {d.ring.kind}")
    if out:
        return DiagramReport(tuple(out))

    def pairs_with_identity():
        for f in d.frames:
            yield f, f
        for f1, f2 in d.comparable_pairs():
            yield f1, f2

    for f1, f2 in pairs_with_identity():
        key = (f1.fid, f2.fid)
        if key not in d.transitions:
            out.append(f"missing transition {f1.fid}->{f2.fid}")
            continue
        T = d.transitions[key]
        n1, n2 = d.modules[f1.fid].n, d.modules[f2.fid].n
        if T.nrows != n2 or T.ncols != n1:
            out.append(
                f"transition {f1.fid}->{f2.fid} has shape {T.nrows}x{T.ncols}, expected {n2}x{n1}"
            )
            continue
        if f1.fid == f2.fid and T != Matrix.identity(d.ring, n1):
            out.append(f"transition {f1.fid}->{f1.fid} is not the identity")
            continue
        if not map_is_well_defined(T, d.modules[f1.fid], d.modules[f2.fid]):
            bad = _first_unpreserved_relation(T, d.modules[f1.fid], d.modules[f2.fid])
            out.append(
                f"transition {f1.fid}->{f2.fid} does not preserve relation {bad}"
            )
    if out:
        return DiagramReport(tuple(out))

    for f1, f2 in d.comparable_pairs():
        for f3 in d.frames:
            if f3.fid == f2.fid or f3.fid == f1.fid:
                continue
            if not d.monoid.divides(f2.degree, f3.degree):
                continue
            composed = d.transitions[(f2.fid, f3.fid)].mul(d.transitions[(f1.fid, f2.fid)])
            direct = d.transitions[(f1.fid, f3.fid)]
            if not matrices_equal_mod_relations(composed, direct, d.modules[f3.fid]):
                out.append(
                    f"transitions along {f1.fid}->{f2.fid}->{f3.fid} disagree with {f1.fid}->{f3.fid}"
                )
    return DiagramReport(tuple(out))


def _first_unpreserved_relation(T, src, dst) -> int:
    from .exactlinalg import RowSpace

    space = RowSpace(dst.relations)
    images = src.relations.mul(T.transpose())
    for k, row in enumerate(images.rows):
        if not space.contains(row):
            return k
    return -1


def ensure_valid_diagram(d: FramedDiagram) -> None:
    report = d._report
    if report is None:
        report = validate_diagram(d)
        object.__setattr__(d, "_report", report)
    if not report.ok:
        raise ValidationError(report)


class EvaluableModule:
    """Functor view of a graded presentation: components and maps on demand.

    Results are memoized behind a lock; concurrent calls are safe and
    return identical values.
    """

    def __init__(self, presentation: GradedPresentation):
        graded.ensure_valid(presentation)
        self.presentation = presentation
        self.monoid = presentation.monoid
        self.ring = presentation.ring
        self._lock = threading.Lock()
        self._components: dict = {}
        self._maps: dict = {}
        self._iso: dict = {}
        self._framing: Optional[frozenset] = None

    def evaluate(self, g) -> FpPresentation:
        g = self.monoid.check(g)
        with self._lock:
            hit = self._components.get(g)
        if hit is not None:
            return hit
        value = graded.component(self.presentation, g)
        with self._lock:
            self._components.setdefault(g, value)
        return value

    def morphism(self, g1, g2) -> Matrix:
        key = (self.monoid.check(g1), self.monoid.check(g2))
        with self._lock:
            hit = self._maps.get(key)
        if hit is not None:
            return hit
        value = graded.structure_map(self.presentation, key[0], key[1])
        with self._lock:
            self._maps.setdefault(key, value)
        return value

    def morphism_is_iso(self, g1, g2) -> bool:
        key = (self.monoid.check(g1), self.monoid.check(g2))
        with self._lock:
            hit = self._iso.get(key)
        if hit is not None:
            return hit
        value = induced_is_iso(self.morphism(*key), self.evaluate(key[0]), self.evaluate(key[1]))
        with self._lock:
            self._iso.setdefault(key, value)
        return value

    def framing_set(self) -> frozenset:
        with self._lock:
            if self._framing is None:
                self._framing = graded.framing_set(self.presentation)
            return self._framing

    def degree_support(self) -> list:
        return self.presentation.degree_set()


def _pair_is_iso(module, g1, g2) -> bool:
    checker = getattr(module, "morphism_is_iso", None)
    if checker is not None:
        return checker(g1, g2)
    return induced_is_iso(module.morphism(g1, g2), module.evaluate(g1), module.evaluate(g2))


def frame_of(module: EvaluableModule, g):
    """A degree h <= g whose interval [h, g] consists of isomorphisms.

    Returns g itself when g already lies in the framing set; otherwise one
    plcm of the presentation degrees below g, tie-broken by the canonical
    order.  The frame property of the result is what downstream
    isomorphism checks certify.
    """
    monoid = module.monoid
    g = monoid.check(g)
    if g in module.framing_set():
        return g
    below = [d for d in module.degree_support() if monoid.divides(d, g)]
    candidates = sorted(
        (h for h in monoid.plcm(below) if monoid.divides(h, g)),
        key=monoid.sort_key,
    )
    if candidates:
        return candidates[0]
    return monoid.identity


def verify_frame(module, h, g, witnesses: Optional[Iterable] = None,
                 *, samples: int = 32, seed: int = 0) -> bool:
    """Whether every connecting map from h into [h, g] is an isomorphism.

    With no witness list the whole interval is enumerated when finite;
    for the rationals a seeded sample of intermediates is used instead,
    which turns the check into a falsification test.
    """
    monoid = module.monoid
    h, g = monoid.check(h), monoid.check(g)
    if not monoid.divides(h, g):
        raise DivisibilityError(f"{h!r} does not divide {g!r}")
    if witnesses is None:
        box = monoid.interval(h, g)
        if box is None:
            box = monoid.sample_in_interval(h, g, samples, random.Random(seed))
        points = box
    else:
        points = [monoid.check(w) for w in witnesses]
        for w in points:
            if not (monoid.divides(h, w) and monoid.divides(w, g)):
                raise DivisibilityError(f"witness {w!r} outside [{h!r}, {g!r}]")
        points = list(points) + [h, g]
    seen = set()
    for w in points:
        if w in seen:
            continue
        seen.add(w)
        if not _pair_is_iso(module, h, w):
            return False
    return True


def stationarity_index(module, seq: Sequence) -> Optional[int]:
    """Smallest index from which all consecutive maps of the sequence are isos.

    The sequence must be monotone under divisibility.  Returns None when
    even the final consecutive map fails, i.e. no index works within the
    supplied data.
    """
    monoid = module.monoid
    chain = [monoid.check(g) for g in seq]
    for a, b in zip(chain, chain[1:]):
        if not monoid.divides(a, b):
            raise MonoidError(f"sequence not monotone at {a!r} -> {b!r}")
    flags = [_pair_is_iso(module, a, b) for a, b in zip(chain, chain[1:])]
    if not flags:
        return 0
    last_bad = None
    for i, ok in enumerate(flags):
        if not ok:
            last_bad = i
    if last_bad is None:
        return 0
    if last_bad == len(flags) - 1:
        return None
    return last_bad + 1


def reduce_framing_set(module, H: Iterable) -> frozenset:
    """Drop elements framed by other elements until none frames another.

    Removal is one at a time, largest candidates first, so the remainder
    still frames everything the input framed.
    """
    monoid = module.monoid
    current = sorted({monoid.check(h) for h in H}, key=monoid.sort_key)
    changed = True
    while changed:
        changed = False
        for h2 in sorted(current, key=monoid.sort_key, reverse=True):
            for h1 in current:
                if h1 == h2 or not monoid.divides(h1, h2):
                    continue
                if verify_frame(module, h1, h2):
                    current.remove(h2)
                    changed = True
                    break
            if changed:
                break
    return frozenset(current)


@dataclass(frozen=True)
class DiagramMorphism:
    source: FramedDiagram
    target: FramedDiagram
    components: dict  # frame id -> Matrix


@dataclass(frozen=True)
class MorphismReport:
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"pass": self.ok, "violations": list(self.violations)}


def check_morphism(xi: DiagramMorphism) -> MorphismReport:
    """Verify shapes, relation preservation and every commuting square."""
    out: List[str] = []
    src, dst = xi.source, xi.target
    ensure_valid_diagram(src)
    ensure_valid_diagram(dst)
    src_frames = {(f.fid, src.monoid.check(f.degree)) for f in src.frames}
    dst_frames = {(f.fid, dst.monoid.check(f.degree)) for f in dst.frames}
    if src_frames != dst_frames or src.monoid != dst.monoid or src.ring != dst.ring:
        out.append("source and target diagrams do not share monoid, ring and frames")
        return MorphismReport(tuple(out))
    for f in src.frames:
        if f.fid not in xi.components:
            out.append(f"missing component at frame {f.fid!r}")
            continue
        M = xi.components[f.fid]
        n_src, n_dst = src.modules[f.fid].n, dst.modules[f.fid].n
        if M.nrows != n_dst or M.ncols != n_src:
            out.append(f"component at {f.fid!r} has shape {M.nrows}x{M.ncols}, expected {n_dst}x{n_src}")
            continue
        if not map_is_well_defined(M, src.modules[f.fid], dst.modules[f.fid]):
            out.append(f"component at {f.fid!r} does not preserve relations")
    if out:
        return MorphismReport(tuple(out))
    for f1, f2 in src.comparable_pairs():
        left = dst.transitions[(f1.fid, f2.fid)].mul(xi.components[f1.fid])
        right = xi.components[f2.fid].mul(src.transitions[(f1.fid, f2.fid)])
        if not matrices_equal_mod_relations(left, right, dst.modules[f2.fid]):
            out.append(f"square at {f1.fid}->{f2.fid} does not commute")
    return MorphismReport(tuple(out))


def extract_diagram(module, degrees: Iterable) -> FramedDiagram:
    """Materialize a framed diagram of a module at the given frame degrees.

    The identity degree is added if absent.  Frames are named h0, h1, ...
    in canonical degree order; transitions are the module's own connecting
    maps, so the result is valid by construction.
    """
    monoid = module.monoid
    pts = {monoid.check(g) for g in degrees}
    pts.add(monoid.identity)
    ordered = sorted(pts, key=monoid.sort_key)
    frames = tuple(Frame(f"h{i}", g) for i, g in enumerate(ordered))
    modules = {f.fid: module.evaluate(f.degree) for f in frames}
    transitions = {}
    for f1 in frames:
        for f2 in frames:
            if f1.fid == f2.fid:
                transitions[(f1.fid, f1.fid)] = Matrix.identity(module.ring, modules[f1.fid].n)
            elif monoid.divides(f1.degree, f2.degree):
                transitions[(f1.fid, f2.fid)] = module.morphism(f1.degree, f2.degree)
    return FramedDiagram(module.monoid, module.ring, frames, modules, transitions)
