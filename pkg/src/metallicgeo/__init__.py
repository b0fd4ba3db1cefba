"""Pointwise verification of metallic and complex-metallic structure data.

The package computes with the two quadratic structure families (J^2 = pJ +
q id and J^2 + aJ + b id = 0) on framed inner-product spaces, with the
four-operator calculus they induce along submanifolds, and with the
compatibility equations (Gauss, Codazzi, Ricci, rank conditions) against
product-of-space-form and complex-space-form targets.  Every identity is
checked as a named numerical residual.
"""
from .linalg import (
    DEFAULT_TOL,
    BilinearForm,
    CurvatureTensor,
    Metric,
    OperatorBlock,
    ShapeMismatchError,
    adjoint,
    rank_with_tol,
    residual_norm,
)
from .report import ResidualReport, make_report
from .structures import (
    ComplexMetallicParams,
    EigenProjector,
    MetallicParams,
    StructureOperator,
    complex_to_cms,
    cms_to_complex,
    metallic_mean,
    metallic_projections,
    metallic_to_product,
    product_to_metallic,
    structure_residual,
)
from .modelspaces import (
    ComplexSpaceFormParams,
    EktParams,
    ProductSpaceParams,
    csf_curvature_complex,
    csf_curvature_metallic,
    ekt_curvature_standard,
    ekt_curvature_tensor,
    product_curvature,
    product_curvature_metallic,
)
from .submanifold import (
    DerivativeData,
    HypersurfaceData,
    InducedOperators,
    check_algebraic_relations,
    check_complex_corollary,
    check_derivative_relations,
    check_hypersurface_relations,
    check_invariant,
    invariant_minimality_check,
    mean_curvature,
    minimality_criterion,
    shape_from_JV_normal,
    shape_from_Jnu_tangent,
    split_structure,
    totally_geodesic_check,
)
from .compat import (
    ComplexQuad,
    EightOperators,
    PointRecord,
    complex_quad_identities,
    derive_complex_quad,
    derive_eight_operators,
    eight_operator_identities,
    full_verdict,
    induced_from_eight,
    rank_conditions,
)
from .examples import (
    build_ekt_immersion,
    build_sphere_product,
    build_sphere_product_hypersurface,
    random_cms_instance,
    random_hypersurface_normal_image,
    random_invariant_instance,
    random_metallic_instance,
)
from .family import SurfaceRecord, deform, rotation_operator, torus_base, verify_family
from .dataset import load_dataset, save_dataset

__version__ = "0.1.0"
