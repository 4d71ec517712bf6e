"""Seeded random instances for property tests and the acceptance suite.

Degrees are drawn from a small pool that is closed under plcms and
contains the identity.  That keeps framing sets at most pool-sized, so
random diagrams stay within a handful of frames, and it guarantees that
for every degree the frames below it have their plcm among the frames.
"""

from __future__ import annotations

import random
from typing import List, Optional, Sequence

from . import functors, graded
from .diagram import EvaluableModule, Frame, FramedDiagram, extract_diagram
from .exactlinalg import FpPresentation, Matrix, PrimeField, Ring, QQ, ZZ
from .functors import GradedMorphism, beta
from .graded import GradedGenerator, GradedPresentation, HomogeneousRelation, RelationTerm
from .monoid import FreeWordMonoid, GoodMonoid, GridMonoid, NatMonoid, QPlusMonoid


def degree_pool(monoid: GoodMonoid, rng: random.Random, bound: int = 4) -> list:
    """A small plcm-closed set of degrees containing the identity."""
    e = monoid.identity
    if isinstance(monoid, NatMonoid):
        pts = {e, rng.randrange(0, bound + 1), rng.randrange(0, bound + 1)}
    elif isinstance(monoid, GridMonoid):
        a = monoid.sample(rng, bound)
        b = monoid.sample(rng, bound)
        pts = set(monoid.plcm([a, b])) | {e, a, b}
    elif isinstance(monoid, FreeWordMonoid):
        w = monoid.sample(rng, min(bound, 3))
        pts = {w[i:] for i in range(len(w) + 1)}
        pts.add(e)
    elif isinstance(monoid, QPlusMonoid):
        pts = {e, monoid.sample(rng, bound), monoid.sample(rng, bound)}
    else:
        raise TypeError(f"no degree pool for {type(monoid)!r}")
    return sorted(pts, key=monoid.sort_key)


def random_scalar(ring: Ring, rng: random.Random, nonzero: bool = False):
    if isinstance(ring, PrimeField):
        lo = 1 if nonzero else 0
        return rng.randrange(lo, ring.p)
    value = rng.randrange(-2, 3)
    while nonzero and value == 0:
        value = rng.randrange(-2, 3)
    return ring.canon(value)


def random_presentation(monoid: GoodMonoid, ring: Ring, rng: random.Random,
                        max_gens: int = 3, max_rels: int = 3,
                        pool: Optional[list] = None) -> GradedPresentation:
    if pool is None:
        pool = degree_pool(monoid, rng)
    n_gens = rng.randrange(1, max_gens + 1)
    gens = tuple(
        GradedGenerator(f"g{i}", rng.choice(pool)) for i in range(n_gens)
    )
    rels = []
    for _ in range(rng.randrange(0, max_rels + 1)):
        degree = rng.choice(pool)
        terms = []
        for gen in gens:
            shift = monoid.left_divide(gen.degree, degree)
            if shift is None or rng.random() < 0.3:
                continue
            c = random_scalar(ring, rng, nonzero=True)
            terms.append(RelationTerm(c, shift, gen.gid))
        if terms:
            rels.append(HomogeneousRelation(degree, tuple(terms)))
    return GradedPresentation(monoid, ring, gens, tuple(rels))


def _free_chain_diagram(monoid: GoodMonoid, ring: Ring, rng: random.Random,
                        pool: list) -> FramedDiagram:
    """Diagram over a divisibility chain of free modules with random maps.

    With no relations every matrix is a valid module map, and storing all
    composites of consecutive maps makes chain compatibility exact.
    """
    chain = [monoid.identity]
    for g in pool:
        if g != chain[-1] and monoid.divides(chain[-1], g):
            chain.append(g)
    chain = chain[:4]
    frames = tuple(Frame(f"h{i}", g) for i, g in enumerate(chain))
    sizes = [rng.randrange(1, 4) for _ in chain]
    modules = {f.fid: FpPresentation.free(ring, n) for f, n in zip(frames, sizes)}
    transitions = {}
    for i, f in enumerate(frames):
        transitions[(f.fid, f.fid)] = Matrix.identity(ring, sizes[i])
    step = {}
    for i in range(len(frames) - 1):
        rows = [
            [random_scalar(ring, rng) for _ in range(sizes[i])]
            for _ in range(sizes[i + 1])
        ]
        step[i] = Matrix.from_rows(ring, rows, ncols=sizes[i])
    for i in range(len(frames)):
        acc = None
        for j in range(i + 1, len(frames)):
            acc = step[j - 1] if acc is None else step[j - 1].mul(acc)
            transitions[(frames[i].fid, frames[j].fid)] = acc
    return FramedDiagram(monoid, ring, frames, modules, transitions)


def random_diagram(monoid: GoodMonoid, ring: Ring, rng: random.Random) -> FramedDiagram:
    """A valid random framed diagram with at most four frames.

    Usually the extracted diagram of a random presentation, which carries
    relations and nontrivial transitions; sometimes a free chain, which
    exercises arbitrary matrices.
    """
    pool = degree_pool(monoid, rng)
    if rng.random() < 0.3:
        return _free_chain_diagram(monoid, ring, rng, pool)
    p = random_presentation(monoid, ring, rng, pool=pool)
    module = beta(p)
    return extract_diagram(module, module.framing_set())


def random_free_presentation(monoid: GoodMonoid, ring: Ring, rng: random.Random,
                             pool: list, max_gens: int = 3) -> GradedPresentation:
    n = rng.randrange(1, max_gens + 1)
    gens = tuple(GradedGenerator(f"g{i}", rng.choice(pool)) for i in range(n))
    return GradedPresentation(monoid, ring, gens, ())


def random_graded_morphism(src: GradedPresentation, dst: GradedPresentation,
                           rng: random.Random) -> GradedMorphism:
    """Random degree-preserving map; valid whenever the source is free."""
    monoid, ring = src.monoid, src.ring
    images = {}
    for gen in src.generators:
        terms = []
        for tgt in dst.generators:
            shift = monoid.left_divide(tgt.degree, gen.degree)
            if shift is None or rng.random() < 0.3:
                continue
            c = random_scalar(ring, rng)
            if not ring.is_zero(c):
                terms.append(RelationTerm(c, shift, tgt.gid))
        images[gen.gid] = tuple(terms)
    return GradedMorphism(src, dst, images)


def random_composable_morphisms(monoid: GoodMonoid, ring: Ring, rng: random.Random):
    """(eta1, eta2) with eta2 after eta1 well defined.

    The first two presentations are free, so arbitrary degree-preserving
    images are valid; the last may carry relations.
    """
    pool = degree_pool(monoid, rng)
    p1 = random_free_presentation(monoid, ring, rng, pool)
    p2 = random_free_presentation(monoid, ring, rng, pool)
    p3 = random_presentation(monoid, ring, rng, pool=pool)
    eta1 = random_graded_morphism(p1, p2, rng)
    eta2 = random_graded_morphism(p2, p3, rng)
    return eta1, eta2


STANDARD_MONOIDS = (
    NatMonoid(),
    GridMonoid(2),
    FreeWordMonoid(("a", "b")),
)

STANDARD_RINGS = (QQ, PrimeField(2), PrimeField(5))


def standard_case(index: int, seed: int):
    """Deterministic (monoid, ring, rng) triple for acceptance-style sweeps."""
    monoid = STANDARD_MONOIDS[index % len(STANDARD_MONOIDS)]
    ring = STANDARD_RINGS[(index // len(STANDARD_MONOIDS)) % len(STANDARD_RINGS)]
    return monoid, ring, random.Random(seed * 1_000_003 + index)
