"""
barbellcalc: exact equivariant homology of barbell diffeomorphisms.

A barbell (two disjoint embedded 2-spheres joined by an arc) in a
4-manifold induces a diffeomorphism whose action on second homology is

    x  ->  x + (x . S1) [S2] - (x . S2) [S1].

This package lifts that action equivariantly to covers, computes the
group-ring-valued intersection polynomials that present pi_2 of
knotted-3-manifold complements, and evaluates the module invariants
(Laurent quotient dimensions, cokernel factors, Fitting generators,
unit/associate tests in F2[s,t]) used to tell the resulting knotted
objects apart.  Everything is exact: F2 or arbitrary-precision integer
coefficients, no floating point.
"""

from .deckgroup import (
    DeckElement,
    DeckGroup,
    GroupError,
    UniTriMatrix,
    brunnian_word,
    commutator,
    cyclic,
    cyclic_project,
    free_abelian,
    free_group,
    nilpotent_times_z,
    parse_word,
    reduce_letters,
    unitriangular_rep,
)
from .equivariant import (
    BarbellSpec,
    EquivClass,
    GeneratorLabel,
    Geometry,
    GeometryError,
    PairingTable,
    action_sequence,
    barbell_action,
    equivariant_pairing,
    intersection_polynomial,
    pair_classes,
    render_class,
    summand_membership,
)
from .groupring import (
    F2,
    INT,
    Abelianization,
    BrunnianCoordinates,
    CyclicProjection,
    HomDomainError,
    RingElement,
    RingError,
    apply_hom,
    are_associates,
    is_monomial_unit,
    laurent_span,
    render,
)
from .presentations import (
    PresentationError,
    PresentationMatrix,
    antidiagonal_cokernel,
    brunnian_disk_obstruction,
    brunnian_image,
    brunnian_relator,
    distinguish_brunnian_modules,
    f2_quotient_dim,
    fitting_generators,
    present_from_scenario,
)
from .scenarios import (
    GluingMatrix,
    HypothesisError,
    Report,
    builtin_geometry,
    classify_gluing,
    genus1_hd_dim,
    montesinos_matrix_for,
    montesinos_parity,
    obstruction_scenario,
    render_machine,
    render_table,
    run_scenario,
    run_theorem,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
