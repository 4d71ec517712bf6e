import random

import pytest

from persrep import (
    FpPresentation,
    FramedDiagram,
    GradedPresentation,
    Matrix,
    NatMonoid,
    QQ,
    ZZ,
    alpha,
    alpha_on_morphism,
    beta,
    beta_on_morphism,
    component,
    presentation_iso,
    roundtrip_check,
    truncated_realization,
    validate_presentation,
)
from persrep.diagram import DiagramMorphism, extract_diagram, validate_diagram, verify_frame, frame_of
from persrep.functors import (
    GradedMorphism,
    compose_diagram_morphisms,
    compose_graded_morphisms,
    diagram_morphisms_equal_mod_relations,
    graded_morphisms_equal,
    identity_diagram_morphism,
    identity_graded_morphism,
    validate_graded_morphism,
    zero_diagram_morphism,
    zero_graded_morphism,
)
from persrep.graded import ValidationError
from persrep.randgen import (
    random_composable_morphisms,
    random_diagram,
    random_presentation,
    standard_case,
)


def test_alpha_of_fd(fd, f3):
    assert [(g.gid, g.degree) for g in f3.generators] == [("h0.0", 0), ("h1.0", 1)]
    assert len(f3.relations) == 1
    rel = f3.relations[0]
    assert rel.degree == 1
    assert len(rel.terms) == 1
    term = rel.terms[0]
    assert (term.coeff, term.shift, term.gen) == (1, 1, "h0.0")
    assert truncated_realization(f3, range(6)) == {g: 1 for g in range(6)}


def test_alpha_single_frame_over_integers():
    nat = NatMonoid()
    d = FramedDiagram.make(
        nat, ZZ, [("h0", 0)],
        {"h0": FpPresentation.make(ZZ, 1, [[2]])},
        {("h0", "h0"): Matrix.identity(ZZ, 1)},
    )
    p = alpha(d)
    assert len(p.generators) == 1 and len(p.relations) == 1
    rel = p.relations[0]
    assert rel.degree == 0 and rel.terms[0].coeff == 2 and rel.terms[0].shift == 0
    assert presentation_iso(component(p, 0), d.modules["h0"])


def test_alpha_counts_generators_and_relations():
    for i in range(20):
        monoid, ring, rng = standard_case(i, seed=3)
        d = random_diagram(monoid, ring, rng)
        p = alpha(d)
        n_total = sum(d.modules[f.fid].n for f in d.frames)
        m_total = sum(d.modules[f.fid].relations.nrows for f in d.frames)
        pair_gens = sum(d.modules[f1.fid].n for f1, f2 in d.comparable_pairs())
        assert len(p.generators) == n_total
        assert len(p.relations) == m_total + pair_gens
        assert validate_presentation(p).ok


def test_alpha_of_identity_transitions_has_constant_components():
    nat = NatMonoid()
    mod = FpPresentation.make(QQ, 2, [[1, -1]])
    one = Matrix.identity(QQ, 2)
    d = FramedDiagram.make(
        nat, QQ, [("h0", 0), ("h1", 2)],
        {"h0": mod, "h1": mod},
        {("h0", "h0"): one, ("h1", "h1"): one, ("h0", "h1"): one},
    )
    p = alpha(d)
    E = beta(p)
    for g in range(6):
        assert presentation_iso(E.evaluate(g), mod)


def test_beta_views(f1):
    E = beta(f1)
    assert E.evaluate(2).dim() == 1
    two_step = E.morphism(3, 5).mul(E.morphism(2, 3))
    assert two_step == E.morphism(2, 5)
    empty = GradedPresentation.make(NatMonoid(), QQ, [], [])
    Ez = beta(empty)
    for g in (0, 3, 7):
        assert Ez.evaluate(g).n == 0


def test_roundtrip_fd(fd):
    report = roundtrip_check(fd, [0, 1, 2, 5], seed=3)
    assert report.ok
    payload = report.to_json()
    assert payload["pass"] is True
    assert all("pass" in c and "degree" in c for c in payload["checks"])


def test_roundtrip_f1_f2(f1, f2):
    assert roundtrip_check(f1, list(range(7)), seed=0).ok
    grid = [(a, b) for a in range(5) for b in range(5) if a + b <= 4]
    assert roundtrip_check(f2, grid, seed=0).ok


def test_roundtrip_rejects_other_types():
    with pytest.raises(TypeError):
        roundtrip_check(42, [])


def test_identity_morphism_maps_to_identity(fd, f1):
    xi = identity_diagram_morphism(fd)
    eta = alpha_on_morphism(xi)
    assert graded_morphisms_equal(eta, identity_graded_morphism(alpha(fd)))
    back = beta_on_morphism(identity_graded_morphism(f1))
    for fid, mat in back.components.items():
        assert mat == Matrix.identity(QQ, mat.nrows)


def test_zero_morphism_maps_to_zero(fd):
    xi = zero_diagram_morphism(fd, fd)
    eta = alpha_on_morphism(xi)
    assert graded_morphisms_equal(eta, zero_graded_morphism(alpha(fd), alpha(fd)))


def test_scalar_morphism_on_free_rank_one():
    nat = NatMonoid()
    p = GradedPresentation.make(nat, QQ, [("g", 0)], [])
    eta = GradedMorphism.make(p, p, {"g": ((3, 0, "g"),)})
    assert validate_graded_morphism(eta).ok
    xi = beta_on_morphism(eta)
    for mat in xi.components.values():
        assert mat.rows == ((3,),)


def test_morphism_validation_catches_degree_mismatch(f1):
    eta = GradedMorphism.make(f1, f1, {"g1": ((1, 0, "g2"),), "g2": ()})
    check = validate_graded_morphism(eta)
    assert not check.ok
    assert any("degree mismatch" in v for v in check.violations)
    with pytest.raises(ValidationError):
        beta_on_morphism(eta)


def test_morphism_validation_catches_relation_violation(f1):
    # sending g1 to g1 + (shifted) g2 breaks the relation killing t^2 g1
    eta = GradedMorphism.make(
        f1, f1, {"g1": ((1, 0, "g1"),), "g2": ((1, 0, "g2"), (1, 1, "g1"))}
    )
    check = validate_graded_morphism(eta)
    # image of the degree-2 relation picks up a t^2 g1 + t g2 component
    assert not check.ok


def test_functor_laws_on_random_morphisms():
    failures = 0
    for i in range(30):
        monoid, ring, rng = standard_case(i, seed=77)
        eta1, eta2 = random_composable_morphisms(monoid, ring, rng)
        assert validate_graded_morphism(eta1).ok
        assert validate_graded_morphism(eta2).ok
        composed = compose_graded_morphisms(eta2, eta1)
        degrees = sorted(
            set(beta(eta1.source).framing_set())
            | set(beta(eta1.target).framing_set())
            | set(beta(eta2.target).framing_set()),
            key=monoid.sort_key,
        )
        b1 = beta_on_morphism(eta1, degrees)
        b2 = beta_on_morphism(eta2, degrees)
        bc = beta_on_morphism(composed, degrees)
        if not diagram_morphisms_equal_mod_relations(bc, compose_diagram_morphisms(b2, b1)):
            failures += 1
        a1, a2 = alpha_on_morphism(b1), alpha_on_morphism(b2)
        ac = alpha_on_morphism(compose_diagram_morphisms(b2, b1))
        if not graded_morphisms_equal(ac, compose_graded_morphisms(a2, a1)):
            failures += 1
    assert failures == 0


def test_beta_framing_set_frames_the_module():
    for i in range(15):
        monoid, ring, rng = standard_case(i, seed=5)
        p = random_presentation(monoid, ring, rng)
        module = beta(p)
        for _ in range(5):
            g = monoid.sample(rng, 5)
            assert verify_frame(module, frame_of(module, g), g)


def test_random_diagrams_are_valid_and_roundtrip():
    for i in range(30):
        monoid, ring, rng = standard_case(i, seed=123)
        d = random_diagram(monoid, ring, rng)
        assert validate_diagram(d).ok
        samples = [monoid.sample(rng) for _ in range(8)]
        report = roundtrip_check(d, samples, seed=i)
        assert report.ok, [c for c in report.checks if not c.passed]
