import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from persrep.monoid import (
    DivisibilityError,
    FreeWordMonoid,
    GridMonoid,
    InstanceMismatchError,
    NatMonoid,
    QPlusMonoid,
    UnsupportedMonoidError,
    check_good_axioms,
    dickson_minimal,
    hasse_dot,
    monoid_from_descriptor,
)

ALL_MONOIDS = [NatMonoid(), GridMonoid(2), GridMonoid(3), FreeWordMonoid("ab"), QPlusMonoid()]


def nat_elems():
    return st.integers(min_value=0, max_value=30)


def grid_elems(k):
    return st.tuples(*([st.integers(min_value=0, max_value=12)] * k))


def word_elems():
    return st.text(alphabet="ab", max_size=6)


def qplus_elems():
    return st.fractions(min_value=0, max_value=8, max_denominator=16)


STRATEGIES = {
    "nat": nat_elems(),
    "grid2": grid_elems(2),
    "grid3": grid_elems(3),
    "freeword": word_elems(),
    "qplus": qplus_elems(),
}

CASES = [
    (NatMonoid(), "nat"),
    (GridMonoid(2), "grid2"),
    (GridMonoid(3), "grid3"),
    (FreeWordMonoid("ab"), "freeword"),
    (QPlusMonoid(), "qplus"),
]


def test_compose_examples():
    g2 = GridMonoid(2)
    assert g2.compose((1, 2), (0, 3)) == (1, 5)
    w = FreeWordMonoid("ab")
    assert w.compose("b", "a") == "ba"
    for m in ALL_MONOIDS:
        g = m.sample(random.Random(0))
        assert m.compose(m.identity, g) == g


def test_left_divide_examples():
    w = FreeWordMonoid("ab")
    assert w.left_divide("a", "ba") == "b"
    assert w.left_divide("a", "ab") is None
    g2 = GridMonoid(2)
    assert g2.left_divide((1, 1), (3, 1)) == (2, 0)
    assert g2.left_divide((1, 1), (0, 5)) is None


def test_plcm_examples():
    g2 = GridMonoid(2)
    assert g2.plcm([(2, 3), (5, 1)]) == frozenset({(5, 3)})
    w = FreeWordMonoid("ab")
    assert w.plcm(["a", "ba"]) == frozenset({"ba"})
    assert w.plcm(["a", "b"]) == frozenset()
    for m in ALL_MONOIDS:
        assert m.plcm([]) == frozenset({m.identity})


def test_instance_mismatch():
    g2 = GridMonoid(2)
    with pytest.raises(InstanceMismatchError):
        g2.compose((1, 2, 3), (0, 0))
    with pytest.raises(InstanceMismatchError):
        NatMonoid().check(-1)
    with pytest.raises(InstanceMismatchError):
        FreeWordMonoid("ab").check("abc")
    with pytest.raises(InstanceMismatchError):
        QPlusMonoid().check(Fraction(-1, 2))


@pytest.mark.parametrize("monoid,strat", CASES)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_divide_then_compose_recovers(monoid, strat, data):
    g1 = monoid.check(data.draw(STRATEGIES[strat]))
    g2 = monoid.check(data.draw(STRATEGIES[strat]))
    h = monoid.left_divide(g1, g2)
    if h is not None:
        assert monoid.compose(h, g1) == g2
    assert monoid.left_divide(g1, g1) == monoid.identity


@pytest.mark.parametrize("monoid,strat", CASES)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_plcm_is_minimal_common_multiple(monoid, strat, data):
    elems = [monoid.check(data.draw(STRATEGIES[strat])) for _ in range(data.draw(st.integers(1, 3)))]
    for h in monoid.plcm(elems):
        assert all(monoid.divides(g, h) for g in elems)
        # no proper left-divisor of h is still a common multiple
        box = monoid.interval(monoid.identity, h) if monoid.kind != "qplus" else None
        if box is not None:
            for w in box:
                if w != h and all(monoid.divides(g, w) for g in elems):
                    raise AssertionError(f"{w!r} below plcm {h!r} is a common multiple")


def test_plcm_singleton_for_nat_and_grid():
    rng = random.Random(3)
    for monoid in (NatMonoid(), GridMonoid(3)):
        for _ in range(50):
            elems = [monoid.sample(rng) for _ in range(rng.randrange(1, 5))]
            assert len(monoid.plcm(elems)) == 1


def test_dickson_minimal_examples():
    g2 = GridMonoid(2)
    assert dickson_minimal(g2, [(1, 2), (2, 1), (2, 2), (3, 0)]) == frozenset({(1, 2), (2, 1), (3, 0)})
    assert dickson_minimal(g2, [(0, 0), (5, 5)]) == frozenset({(0, 0)})
    with pytest.raises(UnsupportedMonoidError):
        dickson_minimal(NatMonoid(), [1, 2])


def brute_force_minimal(monoid, pts):
    pts = list({monoid.check(p) for p in pts})
    return frozenset(
        p for p in pts
        if not any(q != p and monoid.divides(q, p) for q in pts)
    )


def test_dickson_minimal_matches_domination_scan():
    g3 = GridMonoid(3)
    rng = random.Random(11)
    for _ in range(100):
        pts = [tuple(rng.randrange(0, 11) for _ in range(3)) for _ in range(rng.randrange(1, 15))]
        got = dickson_minimal(g3, pts)
        assert got == brute_force_minimal(g3, pts)
        # antichain
        for a in got:
            for b in got:
                assert a == b or not g3.divides(a, b)
        for p in pts:
            assert any(g3.divides(m, p) for m in got)


def test_axiom_checks_pass_on_shipped_instances():
    for monoid in (GridMonoid(3), FreeWordMonoid("ab"), QPlusMonoid(), NatMonoid()):
        report = check_good_axioms(monoid, 1000, seed=7)
        assert report.ok, report.to_json()


def test_axiom_check_catches_a_broken_instance():
    class Truncated(NatMonoid):
        # addition capped at 5 breaks cancellativity
        def compose(self, g1, g2):
            return min(g1 + g2, 5)

        def sample(self, rng, bound=8):
            return rng.randrange(0, 8)

    report = check_good_axioms(Truncated(), 500, seed=0)
    assert not report.ok
    failed = {c.name for c in report.checks if not c.passed}
    assert failed & {"left_cancellativity", "right_cancellativity", "associativity"}
    witnessed = [c for c in report.checks if not c.passed][0]
    assert witnessed.witness is not None


def test_hasse_dot_chain():
    dot = hasse_dot(NatMonoid(), [0, 1, 2])
    assert '"0" -> "1";' in dot and '"1" -> "2";' in dot
    assert '"0" -> "2";' not in dot


def test_hasse_dot_diamond():
    dot = hasse_dot(GridMonoid(2), [(0, 0), (1, 0), (0, 1), (1, 1)])
    assert dot.count("->") == 4


def test_hasse_dot_word_tree():
    dot = hasse_dot(FreeWordMonoid("ab"), ["", "a", "b", "aa", "ba"])
    for edge in ['"e" -> "a"', '"e" -> "b"', '"a" -> "aa"', '"a" -> "ba"']:
        assert edge in dot
    assert dot.count("->") == 4


def test_interval_enumeration():
    assert NatMonoid().interval(2, 4) == [2, 3, 4]
    assert set(GridMonoid(2).interval((0, 1), (1, 2))) == {(0, 1), (0, 2), (1, 1), (1, 2)}
    w = FreeWordMonoid("ab")
    assert set(w.interval("a", "bba")) == {"a", "ba", "bba"}
    assert QPlusMonoid().interval(Fraction(0), Fraction(1)) is None
    pts = QPlusMonoid().sample_in_interval(Fraction(0), Fraction(1), 8, random.Random(0))
    assert pts[0] == 0 and pts[-1] == 1 and all(0 <= p <= 1 for p in pts)
    with pytest.raises(DivisibilityError):
        NatMonoid().interval(4, 2)


def test_descriptor_roundtrip():
    for monoid in ALL_MONOIDS:
        again = monoid_from_descriptor(monoid.descriptor())
        assert again == monoid
    with pytest.raises(ValueError):
        monoid_from_descriptor({"kind": "grid", "k": 2, "extra": 1})
    with pytest.raises(ValueError):
        monoid_from_descriptor({"kind": "mystery"})


def test_degree_json_roundtrip():
    rng = random.Random(5)
    for monoid in ALL_MONOIDS:
        for _ in range(20):
            g = monoid.sample(rng)
            assert monoid.degree_from_json(monoid.degree_to_json(g)) == g
