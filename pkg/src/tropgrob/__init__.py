"""Exact initial ideals, Gröbner complexes and tropical varieties over valued fields."""
from .errors import *  # noqa: F401,F403
from .valued_field import INF, ModP, PAdicField, PuiseuxField, RationalFunction, ResidueField, make_field
from .poly import (
    Polynomial,
    dehomogenize,
    epsilon_bound,
    homogenize,
    initial_form,
    initial_form_residue,
    monomial_clear,
    parse_element,
    parse_polynomial,
    trop_eval,
)
from .ideal_graded import (
    HomogeneousIdeal,
    InitialSpace,
    MacaulayPiece,
    contains_monomial_up_to,
    generic_monomial_initial,
    groebner_basis_at,
    hilbert_dim,
    initial_generators,
    initial_ideal_key,
    initial_space,
    is_monomial_up_to,
    macaulay_piece,
    perturbation_epsilon,
)
from .polyhedra import (
    PolyhedralComplex,
    QPolyhedron,
    TropicalAffineFamily,
    canonicalize,
    check_complex,
    common_refinement,
    complex_json,
    linearity_complex,
    nonlinearity_locus,
    project_quotient,
    support_equal,
)
from .grobner_complex import (
    GrobnerCell,
    StateData,
    complex_state_mode,
    complex_traversal_mode,
    cone_of,
    groebner_complex,
    state_data,
)
from .tropical import (
    LaurentIdeal,
    TropicalBasis,
    homogenized_ideal,
    image_under_monomial_map,
    prevariety,
    pullback_under_monomial_map,
    trop_hypersurface,
    tropical_basis,
    tropicalize,
    verify_tropical_basis,
)
from .render import RenderSpec, render_svg

__version__ = "0.1.0"
