"""Exact translation between framed persistence diagrams and graded presentations."""

from .barcode import Bar, Barcode, barcode, barcode_from_ranks, rank_invariant
from .diagram import (
    DiagramMorphism,
    EvaluableModule,
    Frame,
    FramedDiagram,
    check_morphism,
    extract_diagram,
    frame_of,
    reduce_framing_set,
    stationarity_index,
    validate_diagram,
    verify_frame,
)
from .exactlinalg import (
    FpPresentation,
    IntegerRing,
    Matrix,
    PrimeField,
    QQ,
    RationalRing,
    Ring,
    ZZ,
    kernel_basis,
    presentation_iso,
    rank,
    smith_normal_form,
)
from .functors import (
    GradedMorphism,
    alpha,
    alpha_on_morphism,
    beta,
    beta_on_morphism,
    roundtrip_check,
)
from .gallery import (
    CountablePoly,
    qplus_module,
    zc_noninjectivity_witness,
    zc_normal_form,
)
from .graded import (
    GradedGenerator,
    GradedPresentation,
    HomogeneousRelation,
    MonoidRingElement,
    RelationTerm,
    component,
    framing_set,
    structure_map,
    truncated_realization,
    validate_presentation,
)
from .monoid import (
    FreeWordMonoid,
    GoodMonoid,
    GridMonoid,
    NatMonoid,
    QPlusMonoid,
    check_good_axioms,
    dickson_minimal,
    hasse_dot,
)
from .serialize import load_diagram, load_presentation

__version__ = "0.1.0"
