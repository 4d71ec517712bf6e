"""Interval decomposition of graded modules over a field in one parameter.

Every finitely presented graded F[t]-module splits into shifted free
summands and shifted torsion quotients; the multiset of intervals
[birth, death) is the barcode.  barcode() computes it by persistence
style column reduction of the relation matrix; rank_invariant() is the
independent oracle, and the inclusion-exclusion formula over ranks is the
normative definition the reduction must reproduce.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from . import graded as graded_mod
from .exactlinalg import UnsupportedRingError, rank
from .graded import GradedPresentation
from .monoid import NatMonoid, UnsupportedMonoidError


@dataclass(frozen=True)
class Bar:
    birth: int
    death: Optional[int]  # None encodes an unbounded interval
    mult: int

    def __post_init__(self):
        if self.death is not None and not self.birth < self.death:
            raise ValueError(f"empty interval [{self.birth}, {self.death})")
        if self.mult < 1:
            raise ValueError("multiplicity must be positive")

    def contains(self, i: int) -> bool:
        return self.birth <= i and (self.death is None or i < self.death)

    def to_json(self) -> dict:
        return {
            "birth": self.birth,
            "death": "inf" if self.death is None else self.death,
            "mult": self.mult,
        }


def _bar_key(bar: Bar):
    return (bar.birth, bar.death is None, bar.death if bar.death is not None else 0)


@dataclass(frozen=True)
class Barcode:
    bars: tuple

    @staticmethod
    def from_pairs(pairs: Dict[Tuple[int, Optional[int]], int]) -> "Barcode":
        bars = [
            Bar(b, d, m) for (b, d), m in pairs.items() if m > 0 and (d is None or b < d)
        ]
        return Barcode(tuple(sorted(bars, key=_bar_key)))

    def count_at(self, i: int) -> int:
        return sum(bar.mult for bar in self.bars if bar.contains(i))

    def count_spanning(self, i: int, j: int) -> int:
        return sum(bar.mult for bar in self.bars if bar.contains(i) and bar.contains(j))

    def to_json(self) -> list:
        return [bar.to_json() for bar in self.bars]

    def ascii_diagram(self) -> str:
        if not self.bars:
            return "(empty barcode)\n"
        horizon = max(
            [bar.birth + 1 for bar in self.bars]
            + [bar.death for bar in self.bars if bar.death is not None]
        )
        width = horizon + 2
        lines = []
        for bar in self.bars:
            if bar.death is None:
                span = "#" * (width - bar.birth) + ">"
                label = f"[{bar.birth},inf)"
            else:
                span = "#" * (bar.death - bar.birth)
                label = f"[{bar.birth},{bar.death})"
            if bar.mult > 1:
                label += f" x{bar.mult}"
            lines.append(f"{label:<14}{' ' * bar.birth}{span}")
        return "\n".join(lines) + "\n"


def _require_nat_field(p: GradedPresentation, op: str):
    if not isinstance(p.monoid, NatMonoid):
        raise UnsupportedMonoidError(f"{op} is only defined over the naturals")
    if not p.ring.is_field:
        raise UnsupportedRingError(f"{op} needs a field ring, got {p.ring.kind}")


def rank_invariant(p: GradedPresentation, i: int, j: int) -> int:
    """Rank of the connecting map from degree i to degree j.

    Computed at quotient level: the image of the index inclusion together
    with the target relations, minus the target relations.
    """
    _require_nat_field(p, "rank_invariant")
    if not (0 <= i <= j):
        raise ValueError("need 0 <= i <= j")
    T = graded_mod.structure_map(p, i, j)
    target = graded_mod.component(p, j)
    stacked = T.transpose().vstack(target.relations)
    return rank(stacked) - rank(target.relations)


def max_presentation_degree(p: GradedPresentation) -> int:
    degrees = p.degree_set()
    return max(degrees) if degrees else 0


def barcode(p: GradedPresentation) -> Barcode:
    """Interval decomposition by graded column reduction.

    Generators are rows sorted by (degree, index); every homogeneous
    relation is a column of field coefficients relative to those rows.
    Columns are processed in degree order and reduced against earlier
    columns sharing the same lowest row, exactly as in persistence matrix
    reduction: subtracting a shifted earlier column changes no stored
    coefficient pattern because the shift is invisible after dividing out
    the row degree.  A pivot pairs a generator with a relation degree and
    yields a finite interval; unpaired generators live forever.  Beyond
    the maximal presentation degree every connecting map is an
    isomorphism, so the computed intervals determine the module.
    """
    graded_mod.ensure_valid(p)
    _require_nat_field(p, "barcode")
    ring = p.ring
    order = sorted(
        range(len(p.generators)),
        key=lambda i: (p.generators[i].degree, i),
    )
    position = {idx: pos for pos, idx in enumerate(order)}
    gen_index = p.generator_index()
    births = [p.generators[idx].degree for idx in order]

    columns = sorted(
        range(len(p.relations)),
        key=lambda k: (p.relations[k].degree, k),
    )
    pivots: Dict[int, dict] = {}
    pairs: Dict[Tuple[int, Optional[int]], int] = {}

    def lowest(col: dict) -> int:
        return max(col)

    for k in columns:
        rel = p.relations[k]
        col: dict = {}
        for term in rel.terms:
            pos = position[gen_index[term.gen]]
            c = ring.add(col.get(pos, ring.zero()), ring.canon(term.coeff))
            if ring.is_zero(c):
                col.pop(pos, None)
            else:
                col[pos] = c
        while col:
            low = lowest(col)
            other = pivots.get(low)
            if other is None:
                break
            factor = ring.div(col[low], other[low])
            for pos, c in other.items():
                merged = ring.sub(col.get(pos, ring.zero()), ring.mul(factor, c))
                if ring.is_zero(merged):
                    col.pop(pos, None)
                else:
                    col[pos] = merged
        if not col:
            continue
        low = lowest(col)
        pivots[low] = col
        birth, death = births[low], rel.degree
        if birth < death:
            key = (birth, death)
            pairs[key] = pairs.get(key, 0) + 1
    for pos, birth in enumerate(births):
        if pos not in pivots:
            key = (birth, None)
            pairs[key] = pairs.get(key, 0) + 1
    return Barcode.from_pairs(pairs)


def barcode_from_ranks(p: GradedPresentation) -> Barcode:
    """Barcode by the inclusion-exclusion formula over the rank invariant.

    This is the normative definition; it is the oracle the reduction in
    barcode() is validated against.
    """
    _require_nat_field(p, "barcode_from_ranks")
    graded_mod.ensure_valid(p)
    if not p.generators:
        return Barcode(())
    B = max_presentation_degree(p)
    horizon = B + 1

    cache: Dict[Tuple[int, int], int] = {}

    def r(i: int, j: int) -> int:
        if i < 0:
            return 0
        key = (i, j)
        if key not in cache:
            cache[key] = rank_invariant(p, i, j)
        return cache[key]

    pairs: Dict[Tuple[int, Optional[int]], int] = {}
    for b in range(horizon + 1):
        for d in range(b + 1, horizon + 1):
            mult = r(b, d - 1) - r(b, d) - r(b - 1, d - 1) + r(b - 1, d)
            if mult:
                pairs[(b, d)] = mult
        inf_mult = r(b, horizon) - r(b - 1, horizon)
        if inf_mult:
            pairs[(b, None)] = inf_mult
    return Barcode.from_pairs(pairs)
