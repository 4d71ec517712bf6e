import random

import pytest

from persrep import (
    GradedPresentation,
    GridMonoid,
    NatMonoid,
    PrimeField,
    QQ,
    ZZ,
    barcode,
    barcode_from_ranks,
    component,
    rank_invariant,
)
from persrep.barcode import Bar, Barcode, max_presentation_degree
from persrep.exactlinalg import UnsupportedRingError
from persrep.monoid import UnsupportedMonoidError
from persrep.randgen import random_presentation


def bars_as_set(code):
    return {(b.birth, b.death, b.mult) for b in code.bars}


def test_bar_invariants():
    with pytest.raises(ValueError):
        Bar(2, 2, 1)
    with pytest.raises(ValueError):
        Bar(0, 1, 0)
    assert Bar(0, None, 2).contains(100)


def test_rank_invariant_examples(f1):
    assert rank_invariant(f1, 0, 1) == 1
    assert rank_invariant(f1, 0, 2) == 0
    for i in range(4):
        assert rank_invariant(f1, i, i) == component(f1, i).dim()


def test_barcode_f1(f1):
    assert bars_as_set(barcode(f1)) == {(0, 2, 1), (1, None, 1)}


def test_barcode_trivial_cases():
    nat = NatMonoid()
    free = GradedPresentation.make(nat, QQ, [("g", 3)], [])
    assert bars_as_set(barcode(free)) == {(3, None, 1)}
    torsion = GradedPresentation.make(nat, QQ, [("g", 0)], [(1, [(1, 1, "g")])])
    assert bars_as_set(barcode(torsion)) == {(0, 1, 1)}
    empty = GradedPresentation.make(nat, QQ, [], [])
    assert barcode(empty).bars == ()


def test_barcode_drops_instantly_killed_generators():
    nat = NatMonoid()
    p = GradedPresentation.make(nat, QQ, [("g", 2)], [(2, [(1, 0, "g")])])
    assert barcode(p).bars == ()
    for i in range(4):
        assert component(p, i).dim() == 0


def test_barcode_unsupported_combinations(f2):
    with pytest.raises(UnsupportedMonoidError):
        barcode(f2)
    nat = NatMonoid()
    over_z = GradedPresentation.make(nat, ZZ, [("g", 0)], [])
    with pytest.raises(UnsupportedRingError):
        barcode(over_z)
    with pytest.raises(UnsupportedMonoidError):
        rank_invariant(f2, 0, 1)


def test_barcode_matches_rank_oracle_on_random_instances():
    rng = random.Random(41)
    nat = NatMonoid()
    for ring in (PrimeField(2), PrimeField(5), QQ):
        for _ in range(25):
            pool = sorted({rng.randrange(0, 7) for _ in range(3)} | {0})
            p = random_presentation(nat, ring, rng, pool=pool)
            assert bars_as_set(barcode(p)) == bars_as_set(barcode_from_ranks(p))


def test_bar_counts_match_dimensions_and_ranks():
    rng = random.Random(8)
    nat = NatMonoid()
    for _ in range(25):
        pool = sorted({rng.randrange(0, 7) for _ in range(3)} | {0})
        p = random_presentation(nat, PrimeField(5), rng, pool=pool)
        code = barcode(p)
        B = max_presentation_degree(p)
        for i in range(B + 3):
            assert code.count_at(i) == component(p, i).dim()
            for j in range(i, B + 3):
                assert code.count_spanning(i, j) == rank_invariant(p, i, j)


def test_barcode_invariant_under_permutation(f1):
    flipped = GradedPresentation.make(
        NatMonoid(), QQ,
        [("g2", 1), ("g1", 0)],
        [(2, [(1, 2, "g1")])],
    )
    assert bars_as_set(barcode(flipped)) == bars_as_set(barcode(f1))
    rng = random.Random(10)
    for _ in range(10):
        p = random_presentation(NatMonoid(), QQ, rng, pool=[0, 1, 3])
        gens = list(p.generators)
        rels = list(p.relations)
        rng.shuffle(gens)
        rng.shuffle(rels)
        q = GradedPresentation(p.monoid, p.ring, tuple(gens), tuple(rels))
        assert bars_as_set(barcode(q)) == bars_as_set(barcode(p))


def test_json_and_ascii_output(f1):
    code = barcode(f1)
    assert code.to_json() == [
        {"birth": 0, "death": 2, "mult": 1},
        {"birth": 1, "death": "inf", "mult": 1},
    ]
    art = code.ascii_diagram()
    assert "[0,2)" in art and "[1,inf)" in art
    assert Barcode(()).ascii_diagram().strip() == "(empty barcode)"
