"""Executable boundary cases that delimit the translation theorems.

Two inhabitants: a graded module over the polynomial ring in countably
many integer variables whose shifted copies are never isomorphic, so
finite generation does not imply finite type; and the rational-indexed
module that is stationary along every sequence yet framed by no finite
set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .diagram import verify_frame
from .exactlinalg import FpPresentation, Matrix, QQ
from .monoid import DivisibilityError, QPlusMonoid


@dataclass(frozen=True)
class CountablePoly:
    """Integer polynomial in variables x1, x2, ... with sorted monomials."""

    terms: tuple  # ((monomial tuple, coeff), ...) sorted, no zero coeffs

    @staticmethod
    def make(terms: Iterable[tuple]) -> "CountablePoly":
        acc: Dict[tuple, int] = {}
        for monomial, coeff in terms:
            mono = tuple(sorted(int(v) for v in monomial))
            if any(v < 1 for v in mono):
                raise ValueError(f"variable indices start at 1, got {mono}")
            acc[mono] = acc.get(mono, 0) + int(coeff)
        cleaned = tuple((m, c) for m, c in sorted(acc.items()) if c != 0)
        return CountablePoly(cleaned)

    @staticmethod
    def zero() -> "CountablePoly":
        return CountablePoly(())

    @staticmethod
    def one() -> "CountablePoly":
        return CountablePoly((((), 1),))

    @staticmethod
    def variable(i: int) -> "CountablePoly":
        if i < 1:
            raise ValueError("variable indices start at 1")
        return CountablePoly((((i,), 1),))

    def is_zero(self) -> bool:
        return not self.terms

    def add(self, other: "CountablePoly") -> "CountablePoly":
        return CountablePoly.make(self.terms + other.terms)

    def mul(self, other: "CountablePoly") -> "CountablePoly":
        out = []
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                out.append((m1 + m2, c1 * c2))
        return CountablePoly.make(out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for mono, coeff in self.terms:
            vars_part = "*".join(f"x{v}" for v in mono)
            if not vars_part:
                chunks.append(str(coeff))
            elif coeff == 1:
                chunks.append(vars_part)
            elif coeff == -1:
                chunks.append(f"-{vars_part}")
            else:
                chunks.append(f"{coeff}*{vars_part}")
        return " + ".join(chunks).replace("+ -", "- ")


def zc_normal_form(p: CountablePoly, i: int) -> CountablePoly:
    """Normal form modulo the ideal generated by x1, ..., xi.

    Deleting every term containing a variable of index at most i is exact
    here: those terms are precisely the ideal members among monomials.
    """
    if i < 0:
        raise ValueError("i must be a natural number")
    kept = [(m, c) for m, c in p.terms if all(v > i for v in m)]
    return CountablePoly(tuple(kept))


def zc_noninjectivity_witness(i: int) -> CountablePoly:
    """x_{i+1}: nonzero after killing x1..xi, zero after killing x1..x{i+1}.

    One witness per level shows that no shift map of the module is
    injective, although the whole module is generated by the constant 1.
    """
    if i < 0:
        raise ValueError("i must be a natural number")
    return CountablePoly.variable(i + 1)


class QPlusGapm:
    """Rank one at zero, zero everywhere else, over the rationals under addition.

    Stationary along every monotone sequence, yet no finite set frames it:
    below the least positive member of any candidate there are degrees
    whose only candidate frame is zero, and the map from zero drops rank.
    """

    def __init__(self):
        self.monoid = QPlusMonoid()
        self.ring = QQ

    def evaluate(self, q) -> FpPresentation:
        q = self.monoid.check(q)
        return FpPresentation.free(self.ring, 1 if q == 0 else 0)

    def morphism(self, q1, q2) -> Matrix:
        q1, q2 = self.monoid.check(q1), self.monoid.check(q2)
        if q1 > q2:
            raise DivisibilityError(f"{q1} does not divide {q2}")
        n1 = 1 if q1 == 0 else 0
        n2 = 1 if q2 == 0 else 0
        if n1 == 1 and n2 == 1:
            return Matrix.identity(self.ring, 1)
        return Matrix.zeros(self.ring, n2, n1)


def qplus_module() -> QPlusGapm:
    return QPlusGapm()


def refute_framing_candidate(module, candidate: Iterable) -> Optional[Fraction]:
    """A degree no member of the candidate set frames, or None.

    Tries a degree below every positive candidate; each candidate dividing
    it must then fail verify_frame.
    """
    monoid = module.monoid
    H = sorted({monoid.check(q) for q in candidate})
    positive = [q for q in H if q > 0]
    probe = positive[0] / 2 if positive else Fraction(1)
    for h in H:
        if monoid.divides(h, probe) and verify_frame(module, h, probe):
            return None
    return probe


def zc_case_report(levels: int = 6) -> dict:
    rows = []
    for i in range(levels):
        w = zc_noninjectivity_witness(i)
        rows.append({
            "level": i,
            "witness": str(w),
            "nonzero_at_level": not zc_normal_form(w, i).is_zero(),
            "zero_at_next_level": zc_normal_form(w, i + 1).is_zero(),
        })
    return {
        "case": "zc-counterexample",
        "generated_by": ["1"],
        "levels": rows,
        "finite_type": False,
    }


def qplus_case_report(candidates: int = 5, seed: int = 0) -> dict:
    import random

    from .diagram import stationarity_index

    module = qplus_module()
    rng = random.Random(seed)
    monoid = module.monoid
    sequences = []
    for _ in range(3):
        seq = sorted(monoid.sample(rng, 4) for _ in range(5))
        sequences.append({
            "sequence": [str(q) for q in seq],
            "stationarity_index": stationarity_index(module, seq),
        })
    refutations = []
    for _ in range(candidates):
        size = rng.randrange(1, 7)
        cand = {Fraction(0)} | {monoid.sample(rng, 4) for _ in range(size)}
        probe = refute_framing_candidate(module, cand)
        refutations.append({
            "candidate": [str(q) for q in sorted(cand)],
            "refuted_at": None if probe is None else str(probe),
        })
    return {
        "case": "qplus",
        "module": "rank 1 at degree 0, zero above",
        "sequences": sequences,
        "candidate_framing_sets": refutations,
    }
