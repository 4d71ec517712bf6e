import pytest

from persrep import (
    FpPresentation,
    FramedDiagram,
    GradedPresentation,
    GridMonoid,
    Matrix,
    NatMonoid,
    PrimeField,
    QQ,
)


@pytest.fixture
def f1():
    """One generator at 0, one at 1, the first killed at degree 2, over Q."""
    return GradedPresentation.make(
        NatMonoid(), QQ,
        [("g1", 0), ("g2", 1)],
        [(2, [(1, 2, "g1")])],
    )


@pytest.fixture
def f2():
    """One generator at the origin of the grid, killed along the first axis, over F2."""
    return GradedPresentation.make(
        GridMonoid(2), PrimeField(2),
        [("g1", (0, 0))],
        [((1, 0), [(1, (1, 0), "g1")])],
    )


@pytest.fixture
def fd():
    """Two free rank-one modules at frames 0 and 1 joined by the zero map."""
    return FramedDiagram.make(
        NatMonoid(), QQ,
        [("h0", 0), ("h1", 1)],
        {"h0": FpPresentation.free(QQ, 1), "h1": FpPresentation.free(QQ, 1)},
        {
            ("h0", "h0"): Matrix.identity(QQ, 1),
            ("h1", "h1"): Matrix.identity(QQ, 1),
            ("h0", "h1"): Matrix.zeros(QQ, 1, 1),
        },
    )


@pytest.fixture
def f3(fd):
    """The graded presentation carried by the fd diagram."""
    from persrep import alpha

    return alpha(fd)
