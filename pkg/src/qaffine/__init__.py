"""Exact finite-dimensional representation theory of quantum affine sl(2).

Scalars live in Q(q, z); modules are given by their generator matrices.
"""

from .exactfield import Scalar, evaluate_z, parse_scalar, qbinom, qint, qpower_roots
from .linalg import Matrix, Subspace, closure, intertwiner_space, kernel, rref, solve
from .uqsl2 import (
    ModuleRep,
    StandardDescriptor,
    dual,
    evaluation_module,
    generic_position,
    in_category_C,
    module_of,
    qstring,
    tensor,
    twist,
    twist_formal,
)
from .repdecomp import (
    CompositionSeries,
    composition_series,
    decompose_descriptor,
    identify_simple,
    minimal_submodules,
    singular_vectors,
)
from .braiding import (
    BraidingMatrix,
    braid_pair,
    braid_standard,
    braid_subquotient,
    elliptic_descent_report,
    mu_sigma,
    subsequence_compatibility,
)
from .qchar import (
    K0Class,
    QCharacter,
    dominant_term,
    in_A2,
    k0_class,
    qchar_evaluation,
    qchar_product,
    specialize,
)
from .treeoperad import GPoint, PlanarTree, contract, corolla, family_hom, glue, operad_compose

__version__ = "0.1.0"
