"""Exact quantum cluster algebra computations on triangulated surfaces.

The package builds the small-vertex quivers and matrix bundles of
n-subdivided triangulated polygons, mutates quantum seeds with cluster
variables tracked as noncommutative Laurent polynomials, evaluates
path-sum traces of stated corner arcs on dual networks, and verifies the
splitting homomorphisms obtained by cutting along interior edges.  The
`skeincluster` CLI replays the identity suites; see scenarios.SCENARIOS.
"""

from .omega import OmegaScalar, omega_pow, parse_scalar, q_pow, xi_pow
from .torus import (
    ExponentLinearMap,
    FormMismatch,
    NotDivisible,
    NotQuasiCommuting,
    SkewForm,
    TorusElement,
    commutation_omega_exponent,
    exact_right_divide,
    is_balanced,
    weyl_bracket,
)
from .surface import (
    InvalidSurface,
    NAMED_SURFACES,
    SurfaceBundle,
    TriangulationSpec,
    cut,
    flip_data,
    flip_sequence,
    named_spec,
)
from .mutation import (
    BinomialFraction,
    QuantumSeed,
    balanced_basis,
    ef_matrices,
    fq_element,
    fq_fraction,
    matrix_mutate,
    mu_sharp_closed_form,
    mu_sharp_on_monomial,
    nu_prime_map,
    nu_sharp_on_balanced,
    pi_mutate,
)
from .trace import (
    PolygonLabels,
    QuadrilateralTraces,
    TriangleTraces,
    binomial_path_count,
    cluster_formula_c,
    cluster_formula_cbar,
    cluster_formula_d,
)
from .splitting import CutData, embed_component, tensor_project

__version__ = "0.1.0"
