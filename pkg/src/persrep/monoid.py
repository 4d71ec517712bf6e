"""Good monoids: the index sets for generalized persistence.

A good monoid is cancellative, anti-symmetric and has finitely many
partially least common multiples (plcms) for every finite subset.  Four
instances are shipped: the naturals under addition, grids of naturals,
free word monoids over a finite alphabet, and the non-negative rationals
under addition.

Elements are plain Python values (int, tuple of ints, str, Fraction);
each monoid instance canonicalizes and validates them.  Divisibility is
by left multiplication: ``g1 <= g2`` iff some ``h`` satisfies
``h * g1 == g2``, and that ``h`` is unique by cancellativity.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional


class MonoidError(Exception):
    """Base class for monoid-level failures."""


class InstanceMismatchError(MonoidError):
    """An element does not belong to this monoid instance."""


class UnsupportedMonoidError(MonoidError):
    """The operation is not defined for this monoid instance."""


class DivisibilityError(MonoidError):
    """A required divisibility g1 <= g2 does not hold."""


class GoodMonoid:
    """Common interface of the shipped good-monoid instances."""

    kind: str = ""

    @property
    def identity(self):
        raise NotImplementedError

    def check(self, g):
        """Return g in canonical form, or raise InstanceMismatchError."""
        raise NotImplementedError

    def compose(self, g1, g2):
        """Return g1 * g2 in canonical form."""
        raise NotImplementedError

    def left_divide(self, g1, g2) -> Optional[Any]:
        """Return the unique h with h * g1 == g2, or None if g1 does not divide g2."""
        raise NotImplementedError

    def divides(self, g1, g2) -> bool:
        return self.left_divide(g1, g2) is not None

    def plcm(self, elems: Iterable) -> frozenset:
        """All partially least common multiples of a finite set.

        The empty set has every element as a common multiple; its unique
        partially least one is the identity, so plcm(()) == {e}.
        """
        raise NotImplementedError

    def sort_key(self, g):
        """Key of a canonical total order, used only for deterministic tie-breaks."""
        raise NotImplementedError

    def sample(self, rng: random.Random, bound: int = 8):
        """Draw a random element, sizes capped by ``bound``."""
        raise NotImplementedError

    def interval(self, g1, g2) -> Optional[list]:
        """All w with g1 <= w <= g2, sorted, or None when the interval is infinite."""
        raise NotImplementedError

    def sample_in_interval(self, g1, g2, count: int, rng: random.Random) -> list:
        """Finite stand-in for interval() on instances with infinite intervals."""
        box = self.interval(g1, g2)
        if box is not None:
            return box
        raise UnsupportedMonoidError(f"no interval sampler for kind {self.kind!r}")

    def descriptor(self) -> dict:
        raise NotImplementedError

    def degree_to_json(self, g):
        raise NotImplementedError

    def degree_from_json(self, v):
        raise NotImplementedError

    def format_degree(self, g) -> str:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, GoodMonoid) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(tuple(sorted((k, str(v)) for k, v in self.descriptor().items())))

    def __repr__(self):
        return f"{type(self).__name__}({self.descriptor()})"


def _require_int(g) -> int:
    if isinstance(g, bool) or not isinstance(g, int):
        raise InstanceMismatchError(f"not a natural number: {g!r}")
    if g < 0:
        raise InstanceMismatchError(f"negative: {g!r}")
    return g


class NatMonoid(GoodMonoid):
    """(N, +): the index monoid of one-parameter persistence."""

    kind = "nat"

    @property
    def identity(self):
        return 0

    def check(self, g):
        return _require_int(g)

    def compose(self, g1, g2):
        return self.check(g1) + self.check(g2)

    def left_divide(self, g1, g2):
        g1, g2 = self.check(g1), self.check(g2)
        return g2 - g1 if g1 <= g2 else None

    def plcm(self, elems):
        elems = [self.check(g) for g in elems]
        if not elems:
            return frozenset({0})
        return frozenset({max(elems)})

    def sort_key(self, g):
        return self.check(g)

    def sample(self, rng, bound=8):
        return rng.randrange(0, bound + 1)

    def interval(self, g1, g2):
        g1, g2 = self.check(g1), self.check(g2)
        if g1 > g2:
            raise DivisibilityError(f"{g1} does not divide {g2}")
        return list(range(g1, g2 + 1))

    def descriptor(self):
        return {"kind": "nat"}

    def degree_to_json(self, g):
        return self.check(g)

    def degree_from_json(self, v):
        return self.check(v)

    def format_degree(self, g):
        return str(self.check(g))


class GridMonoid(GoodMonoid):
    """(N^k, +) with the coordinatewise order."""

    kind = "grid"

    def __init__(self, k: int):
        if not isinstance(k, int) or k < 1:
            raise ValueError(f"grid dimension must be a positive integer, got {k!r}")
        self.k = k

    @property
    def identity(self):
        return (0,) * self.k

    def check(self, g):
        if not isinstance(g, tuple):
            if isinstance(g, list):
                g = tuple(g)
            else:
                raise InstanceMismatchError(f"not a grid point: {g!r}")
        if len(g) != self.k:
            raise InstanceMismatchError(f"expected {self.k} coordinates, got {g!r}")
        return tuple(_require_int(c) for c in g)

    def compose(self, g1, g2):
        g1, g2 = self.check(g1), self.check(g2)
        return tuple(a + b for a, b in zip(g1, g2))

    def left_divide(self, g1, g2):
        g1, g2 = self.check(g1), self.check(g2)
        if all(a <= b for a, b in zip(g1, g2)):
            return tuple(b - a for a, b in zip(g1, g2))
        return None

    def plcm(self, elems):
        elems = [self.check(g) for g in elems]
        if not elems:
            return frozenset({self.identity})
        return frozenset({tuple(max(col) for col in zip(*elems))})

    def sort_key(self, g):
        return self.check(g)

    def sample(self, rng, bound=8):
        return tuple(rng.randrange(0, bound + 1) for _ in range(self.k))

    def interval(self, g1, g2):
        g1, g2 = self.check(g1), self.check(g2)
        if not self.divides(g1, g2):
            raise DivisibilityError(f"{g1} does not divide {g2}")
        axes = [range(a, b + 1) for a, b in zip(g1, g2)]
        return [tuple(w) for w in itertools.product(*axes)]

    def descriptor(self):
        return {"kind": "grid", "k": self.k}

    def degree_to_json(self, g):
        return list(self.check(g))

    def degree_from_json(self, v):
        return self.check(v)

    def format_degree(self, g):
        return "(" + ",".join(str(c) for c in self.check(g)) + ")"


class FreeWordMonoid(GoodMonoid):
    """Free word monoid over a finite alphabet of single characters.

    Composition is concatenation (first argument on the left), so
    divisibility by left multiplication is the suffix relation.
    """

    kind = "freeword"

    def __init__(self, alphabet: Iterable[str]):
        letters = tuple(alphabet)
        if not letters:
            raise ValueError("alphabet must be nonempty")
        if len(set(letters)) != len(letters):
            raise ValueError(f"alphabet has repeated symbols: {letters!r}")
        for a in letters:
            if not isinstance(a, str) or len(a) != 1:
                raise ValueError(f"alphabet symbols must be single characters, got {a!r}")
        self.alphabet = letters
        self._letterset = frozenset(letters)

    @property
    def identity(self):
        return ""

    def check(self, g):
        if not isinstance(g, str):
            raise InstanceMismatchError(f"not a word: {g!r}")
        bad = set(g) - self._letterset
        if bad:
            raise InstanceMismatchError(f"symbols {sorted(bad)} not in alphabet {self.alphabet}")
        return g

    def compose(self, g1, g2):
        return self.check(g1) + self.check(g2)

    def left_divide(self, g1, g2):
        g1, g2 = self.check(g1), self.check(g2)
        if g2.endswith(g1):
            return g2[: len(g2) - len(g1)]
        return None

    def plcm(self, elems):
        elems = [self.check(g) for g in elems]
        if not elems:
            return frozenset({""})
        top = max(elems, key=self.sort_key)
        if all(top.endswith(w) for w in elems):
            return frozenset({top})
        return frozenset()

    def sort_key(self, g):
        g = self.check(g)
        return (len(g), g)

    def sample(self, rng, bound=6):
        return "".join(rng.choice(self.alphabet) for _ in range(rng.randrange(0, bound + 1)))

    def interval(self, g1, g2):
        f = self.left_divide(g1, g2)
        if f is None:
            raise DivisibilityError(f"{g1!r} does not divide {g2!r}")
        words = [f[i:] + g1 for i in range(len(f) + 1)]
        return sorted(words, key=self.sort_key)

    def descriptor(self):
        return {"kind": "freeword", "alphabet": list(self.alphabet)}

    def degree_to_json(self, g):
        return self.check(g)

    def degree_from_json(self, v):
        return self.check(v)

    def format_degree(self, g):
        g = self.check(g)
        return g if g else "e"


class QPlusMonoid(GoodMonoid):
    """(Q>=0, +).  Good, but intervals are infinite and only sampled.

    ``max_denominator`` caps denominators in random sampling so that
    search spaces stay finite; it does not restrict membership.
    """

    kind = "qplus"

    def __init__(self, max_denominator: int = 16):
        if max_denominator < 1:
            raise ValueError("max_denominator must be >= 1")
        self.max_denominator = max_denominator

    @property
    def identity(self):
        return Fraction(0)

    def check(self, g):
        if isinstance(g, bool):
            raise InstanceMismatchError(f"not a rational: {g!r}")
        if isinstance(g, int):
            g = Fraction(g)
        if not isinstance(g, Fraction):
            raise InstanceMismatchError(f"not a rational: {g!r}")
        if g < 0:
            raise InstanceMismatchError(f"negative: {g!r}")
        return g

    def compose(self, g1, g2):
        return self.check(g1) + self.check(g2)

    def left_divide(self, g1, g2):
        g1, g2 = self.check(g1), self.check(g2)
        return g2 - g1 if g1 <= g2 else None

    def plcm(self, elems):
        elems = [self.check(g) for g in elems]
        if not elems:
            return frozenset({Fraction(0)})
        return frozenset({max(elems)})

    def sort_key(self, g):
        return self.check(g)

    def sample(self, rng, bound=8):
        den = rng.randrange(1, self.max_denominator + 1)
        num = rng.randrange(0, bound * den + 1)
        return Fraction(num, den)

    def interval(self, g1, g2):
        g1, g2 = self.check(g1), self.check(g2)
        if g1 > g2:
            raise DivisibilityError(f"{g1} does not divide {g2}")
        return None

    def sample_in_interval(self, g1, g2, count, rng):
        g1, g2 = self.check(g1), self.check(g2)
        if g1 > g2:
            raise DivisibilityError(f"{g1} does not divide {g2}")
        if g1 == g2:
            return [g1]
        points = {g1, g2}
        span = g2 - g1
        while len(points) < count + 2:
            den = rng.randrange(1, 4 * self.max_denominator)
            num = rng.randrange(0, den + 1)
            points.add(g1 + span * Fraction(num, den))
        return sorted(points)

    def descriptor(self):
        return {"kind": "qplus"}

    def degree_to_json(self, g):
        return str(self.check(g))

    def degree_from_json(self, v):
        if isinstance(v, str):
            try:
                v = Fraction(v)
            except (ValueError, ZeroDivisionError) as exc:
                raise InstanceMismatchError(f"bad rational literal {v!r}") from exc
        return self.check(v)

    def format_degree(self, g):
        return str(self.check(g))


def monoid_from_descriptor(d: dict) -> GoodMonoid:
    """Build a monoid instance from its wire descriptor."""
    if not isinstance(d, dict) or "kind" not in d:
        raise ValueError(f"bad monoid descriptor: {d!r}")
    kind = d["kind"]
    if kind == "nat":
        extra = set(d) - {"kind"}
    elif kind == "grid":
        extra = set(d) - {"kind", "k"}
    elif kind == "freeword":
        extra = set(d) - {"kind", "alphabet"}
    elif kind == "qplus":
        extra = set(d) - {"kind"}
    else:
        raise ValueError(f"unknown monoid kind {kind!r}")
    if extra:
        raise ValueError(f"unknown fields in monoid descriptor: {sorted(extra)}")
    if kind == "nat":
        return NatMonoid()
    if kind == "grid":
        return GridMonoid(d["k"])
    if kind == "freeword":
        return FreeWordMonoid(d["alphabet"])
    return QPlusMonoid()


def dickson_minimal(monoid: GoodMonoid, elems: Iterable) -> frozenset:
    """The coordinatewise-minimal elements of a finite subset of a grid.

    Every input element dominates some returned element, and no returned
    element dominates another.
    """
    if not isinstance(monoid, GridMonoid):
        raise UnsupportedMonoidError(f"dickson_minimal needs a grid monoid, got {monoid.kind!r}")
    pts = sorted({monoid.check(g) for g in elems}, key=lambda g: (sum(g), g))
    kept: list = []
    for g in pts:
        # elements arrive in nondecreasing coordinate-sum order, so only
        # already-kept points can dominate g
        if not any(monoid.divides(m, g) for m in kept):
            kept.append(g)
    return frozenset(kept)


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    passed: bool
    witness: Optional[tuple] = None

    def to_json(self, monoid: GoodMonoid) -> dict:
        out: dict = {"axiom": self.name, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = [monoid.degree_to_json(g) for g in self.witness]
        return out


@dataclass(frozen=True)
class AxiomReport:
    monoid: GoodMonoid
    samples: int
    seed: int
    checks: tuple

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "monoid": self.monoid.descriptor(),
            "samples": self.samples,
            "seed": self.seed,
            "pass": self.ok,
            "checks": [c.to_json(self.monoid) for c in self.checks],
        }


_AXIOMS = ("associativity", "identity", "left_cancellativity", "right_cancellativity", "anti_symmetry")


def check_good_axioms(monoid: GoodMonoid, sample_count: int, seed: int) -> AxiomReport:
    """Sampled test of the good-monoid axioms.

    Cancellativity is checked in contrapositive form (distinct elements
    stay distinct after composing with a common factor), which is the
    samplable direction.  The shipped instances are known good; this
    harness guards future ones.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    rng = random.Random(seed)
    failures: dict = {}

    def record(axiom, *witness):
        if axiom not in failures:
            failures[axiom] = witness

    e = monoid.identity
    for _ in range(sample_count):
        g1 = monoid.sample(rng)
        g2 = monoid.sample(rng)
        g3 = monoid.sample(rng)
        left = monoid.compose(monoid.compose(g1, g2), g3)
        right = monoid.compose(g1, monoid.compose(g2, g3))
        if left != right:
            record("associativity", g1, g2, g3)
        if monoid.compose(e, g1) != g1 or monoid.compose(g1, e) != g1:
            record("identity", g1)
        if g2 != g3 and monoid.compose(g1, g2) == monoid.compose(g1, g3):
            record("left_cancellativity", g1, g2, g3)
        if g1 != g2 and monoid.compose(g1, g3) == monoid.compose(g2, g3):
            record("right_cancellativity", g1, g2, g3)
        if monoid.divides(g1, g2) and monoid.divides(g2, g1) and g1 != g2:
            record("anti_symmetry", g1, g2)

    checks = tuple(
        AxiomCheck(name, name not in failures, failures.get(name)) for name in _AXIOMS
    )
    return AxiomReport(monoid=monoid, samples=sample_count, seed=seed, checks=checks)


def _covering_pairs(monoid: GoodMonoid, elems: list) -> list:
    pairs = []
    for g1 in elems:
        for g2 in elems:
            if g1 == g2 or not monoid.divides(g1, g2):
                continue
            strictly_between = any(
                z != g1 and z != g2 and monoid.divides(g1, z) and monoid.divides(z, g2)
                for z in elems
            )
            if not strictly_between:
                pairs.append((g1, g2))
    return pairs


def hasse_dot(monoid: GoodMonoid, elems: Iterable) -> str:
    """DOT digraph of the covering relation of <= restricted to elems."""
    pts = sorted({monoid.check(g) for g in elems}, key=monoid.sort_key)
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for g in pts:
        lines.append(f'  "{_dot_escape(monoid.format_degree(g))}";')
    for g1, g2 in _covering_pairs(monoid, pts):
        a = _dot_escape(monoid.format_degree(g1))
        b = _dot_escape(monoid.format_degree(g2))
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_escape(label: str) -> str:
    return label.replace("\\", "\\\\").replace('"', '\\"')
