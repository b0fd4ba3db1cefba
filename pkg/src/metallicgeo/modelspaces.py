"""Closed-form geometry of the ambient model spaces.

Three families are covered, each with its curvature tensor in closed form:

* products of two real space forms M^{n1}(c1) x M^{n2}(c2), with the
  curvature written either through the factor projectors or through the
  metallic operator P;
* complex space forms of constant holomorphic sectional curvature 4c,
  written either through the complex structure or through the complex
  metallic operator;
* the homogeneous 3-manifolds E(kappa, tau) (tau != 0), described at the
  frame level by their Christoffel symbols.

Sign conventions: the product and complex-space-form displays use the
standard curvature R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z -
nabla_[X,Y] Z.  The closed-form E(kappa,tau) display uses the opposite
sign; its evaluators return tensors tagged "flipped" and a commutator
computation from the Christoffel symbols is provided as the standard-
convention oracle.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    CONVENTION_FLIPPED,
    CONVENTION_STANDARD,
    CurvatureTensor,
    Metric,
    OperatorBlock,
)
from .structures import ComplexMetallicParams, MetallicParams


@dataclass(frozen=True)
class ProductSpaceParams:
    """Dimensions and curvatures of a product of two real space forms."""

    n1: int
    n2: int
    c1: float
    c2: float

    def __post_init__(self):
        if self.n1 < 0 or self.n2 < 0 or self.n1 + self.n2 < 2:
            raise ValueError("need n1 + n2 >= 2 with nonnegative factors")


@dataclass(frozen=True)
class ComplexSpaceFormParams:
    """A complex space form of constant holomorphic sectional curvature 4c."""

    complex_dim: int
    c: float

    def __post_init__(self):
        if self.complex_dim < 1:
            raise ValueError("complex dimension must be positive")


@dataclass(frozen=True)
class EktParams:
    """Base curvature kappa and bundle curvature tau != 0 of E(kappa, tau)."""

    kappa: float
    tau: float

    def __post_init__(self):
        if self.tau == 0.0:
            raise ValueError("tau must be nonzero (tau = 0 is the product case)")

    @property
    def sigma_ekt(self) -> float:
        return self.kappa / (2.0 * self.tau)


@dataclass(frozen=True)
class EktFrame:
    """Index bookkeeping for the canonical orthonormal frame {e1, e2, xi}."""

    e1: int = 0
    e2: int = 1
    xi: int = 2

    @property
    def eta(self) -> np.ndarray:
        """Dual covector of the vertical field xi (components in the frame)."""
        return np.array([0.0, 0.0, 1.0])


def _inner(g, x, y) -> float:
    if g is None:
        return float(np.dot(x, y))
    return g.inner(x, y)


def product_curvature(params: ProductSpaceParams, pi1, pi2, X, Y, Z, metric: Metric | None = None):
    """Curvature of M^{n1}(c1) x M^{n2}(c2) through the factor projectors.

    pi1/pi2 are the projector matrices onto the factor tangent spaces in
    the working frame; the result is
    sum_i c_i [<pi_i Y, pi_i Z> pi_i X - <pi_i X, pi_i Z> pi_i Y].
    """
    pi1 = np.asarray(pi1, dtype=float)
    pi2 = np.asarray(pi2, dtype=float)
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    Z = np.asarray(Z, dtype=float)
    out = np.zeros_like(X)
    for c, pi in ((params.c1, pi1), (params.c2, pi2)):
        if c == 0.0:
            continue
        pX, pY, pZ = pi @ X, pi @ Y, pi @ Z
        out = out + c * (_inner(metric, pY, pZ) * pX - _inner(metric, pX, pZ) * pY)
    return out


def metallic_factor_projectors(mp: MetallicParams, P) -> tuple:
    """The two projector-form combinations of a metallic-type operator P.

    Returns (pi_sigma, pi_other) where pi_sigma = ((sigma-p) id + P)/(2sigma-p)
    restricts to the identity on the sigma-eigenspace and pi_other =
    (sigma id - P)/(2sigma-p) to the identity on the (p-sigma)-eigenspace.
    On a genuine ambient structure these are the factor projectors; factor 1
    (curvature c1) is the one where the canonical structure acts by sigma.
    """
    P = np.asarray(P, dtype=float)
    eye = np.eye(P.shape[0])
    gap = mp.spread
    pi_sigma = ((mp.sigma - mp.p) * eye + P) / gap
    pi_other = (mp.sigma * eye - P) / gap
    return pi_sigma, pi_other


def product_curvature_metallic(
    params: ProductSpaceParams,
    mp: MetallicParams,
    P,
    X,
    Y,
    Z,
    metric: Metric | None = None,
):
    """Intrinsic part of the product-space Gauss identity, metallic form.

    Pairing note: the factor of curvature c1 is the sigma-eigenspace of the
    canonical structure, so c1 multiplies the ((sigma-p) id + P) coefficient
    group and c2 the (sigma id - P) group.  This is fixed by matching
    product_curvature on the built-in sphere-product data and is the
    opposite of a naive subscript reading of the projector formulas.
    """
    pi_sigma, pi_other = metallic_factor_projectors(mp, P)
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    Z = np.asarray(Z, dtype=float)
    out = np.zeros_like(X)
    for c, pi in ((params.c1, pi_sigma), (params.c2, pi_other)):
        if c == 0.0:
            continue
        pX, pY, pZ = pi @ X, pi @ Y, pi @ Z
        out = out + c * (_inner(metric, pY, Z) * pX - _inner(metric, pX, Z) * pY)
    return out


def csf_curvature_complex(params: ComplexSpaceFormParams, Jmat, X, Y, Z, metric: Metric | None = None):
    """Curvature of a complex space form through its complex structure J:
    c[<Y,Z>X - <X,Z>Y + <JY,Z>JX - <JX,Z>JY + 2<X,JY>JZ]."""
    J = np.asarray(Jmat, dtype=float)
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    Z = np.asarray(Z, dtype=float)
    c = params.c
    if c == 0.0:
        return np.zeros_like(X)
    JX, JY, JZ = J @ X, J @ Y, J @ Z
    return c * (
        _inner(metric, Y, Z) * X
        - _inner(metric, X, Z) * Y
        + _inner(metric, JY, Z) * JX
        - _inner(metric, JX, Z) * JY
        + 2.0 * _inner(metric, X, JY) * JZ
    )


def csf_curvature_metallic(
    params: ComplexSpaceFormParams,
    cms: ComplexMetallicParams,
    Pt,
    X,
    Y,
    Z,
    metric: Metric | None = None,
):
    """Curvature of a complex space form through the operator Pt = (delta/2)J - (a/2)id."""
    P = np.asarray(Pt, dtype=float)
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    Z = np.asarray(Z, dtype=float)
    c = params.c
    if c == 0.0:
        return np.zeros_like(X)
    a = cms.a
    d2 = cms.delta**2
    PX, PY, PZ = P @ X, P @ Y, P @ Z

    def ip(u, v):
        return _inner(metric, u, v)

    return (
        c * (1.0 + a * a / d2) * (ip(Y, Z) * X - ip(X, Z) * Y)
        + (2.0 * a * c / d2) * (ip(Y, Z) * PX - ip(X, Z) * PY)
        + (2.0 * a * c / d2) * (ip(PY, Z) * X - ip(PX, Z) * Y)
        + (4.0 * c / d2) * (ip(PY, Z) * PX - ip(PX, Z) * PY)
        + (2.0 * c * a * a / d2) * ip(X, Y) * Z
        + (4.0 * a * c / d2) * (ip(X, Y) * PZ + ip(X, PY) * Z)
        + (8.0 * c / d2) * ip(X, PY) * PZ
    )


def ekt_christoffel(params: EktParams) -> np.ndarray:
    """Christoffel symbols Gamma[i, j, k] = <nabla_{e_i} e_j, e_k> of E(kappa, tau)."""
    t = params.tau
    s = params.sigma_ekt
    G = np.zeros((3, 3, 3))
    G[0, 1, 2] = t
    G[1, 2, 0] = t
    G[1, 0, 2] = -t
    G[0, 2, 1] = -t
    G[2, 1, 0] = t - s
    G[2, 0, 1] = -(t - s)
    return G


def ekt_structure_constants(params: EktParams) -> np.ndarray:
    """Frame brackets: [e1,e2] = 2 tau e3, [e2,e3] = sigma e1, [e3,e1] = sigma e2."""
    t = params.tau
    s = params.sigma_ekt
    C = np.zeros((3, 3, 3))
    C[0, 1, 2] = 2.0 * t
    C[1, 0, 2] = -2.0 * t
    C[1, 2, 0] = s
    C[2, 1, 0] = -s
    C[2, 0, 1] = s
    C[0, 2, 1] = -s
    return C


def ekt_nabla(params: EktParams, X, Y) -> np.ndarray:
    """nabla_X Y for constant-coefficient fields in the canonical frame."""
    G = ekt_christoffel(params)
    return np.einsum("ijk,i,j->k", G, np.asarray(X, float), np.asarray(Y, float))


def ekt_bracket(params: EktParams, X, Y) -> np.ndarray:
    """[X, Y] for constant-coefficient fields, from the structure constants."""
    C = ekt_structure_constants(params)
    return np.einsum("ijk,i,j->k", C, np.asarray(X, float), np.asarray(Y, float))


def ekt_curvature(params: EktParams, X, Y, Z) -> np.ndarray:
    """Closed-form curvature of E(kappa, tau), in the flipped sign convention:

    R(X,Y)Z = (k-3t^2)(<X,Z>Y - <Y,Z>X)
            + (k-4t^2)(<Y,xi><Z,xi>X + <Y,Z><X,xi>xi
                       - <X,xi><Z,xi>Y - <X,Z><Y,xi>xi).
    """
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    Z = np.asarray(Z, dtype=float)
    xi = np.array([0.0, 0.0, 1.0])
    k, t = params.kappa, params.tau
    a1 = k - 3.0 * t * t
    a2 = k - 4.0 * t * t
    return a1 * (np.dot(X, Z) * Y - np.dot(Y, Z) * X) + a2 * (
        np.dot(Y, xi) * np.dot(Z, xi) * X
        + np.dot(Y, Z) * np.dot(X, xi) * xi
        - np.dot(X, xi) * np.dot(Z, xi) * Y
        - np.dot(X, Z) * np.dot(Y, xi) * xi
    )


def ekt_curvature_tensor(params: EktParams) -> CurvatureTensor:
    """The closed-form curvature assembled over all frame triples (flipped tag)."""
    coeffs = np.zeros((3, 3, 3, 3))
    eye = np.eye(3)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                coeffs[i, j, k] = ekt_curvature(params, eye[i], eye[j], eye[k])
    return CurvatureTensor(coeffs, CONVENTION_FLIPPED)


def curvature_from_frame_connection(Gamma, C) -> CurvatureTensor:
    """Standard-convention curvature of a frame with constant connection data.

    Gamma[i, j, k] are the connection coefficients <nabla_{e_i} e_j, e_k>
    and C[i, j, k] the structure constants of the frame brackets; the
    commutator formula R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z -
    nabla_[X,Y] Z is evaluated exactly.
    """
    Gamma = np.asarray(Gamma, dtype=float)
    C = np.asarray(C, dtype=float)
    term1 = np.einsum("jkl,ilm->ijkm", Gamma, Gamma)
    term2 = np.einsum("ikl,jlm->ijkm", Gamma, Gamma)
    term3 = np.einsum("ijl,lkm->ijkm", C, Gamma)
    return CurvatureTensor(term1 - term2 - term3, CONVENTION_STANDARD)


def ekt_curvature_standard(params: EktParams) -> CurvatureTensor:
    """Commutator-based curvature of E(kappa, tau) — the module's oracle."""
    return curvature_from_frame_connection(
        ekt_christoffel(params), ekt_structure_constants(params)
    )


def canonical_sasakian(params: EktParams) -> OperatorBlock:
    """The normalized contact operator phi: phi e1 = e2, phi e2 = -e1, phi xi = 0.

    The unnormalized derivative operator nabla xi equals -tau * phi; it is
    exposed separately by ekt_nabla_xi.
    """
    mat = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    return OperatorBlock.square(mat, Metric.euclidean(3))


def ekt_nabla_xi(params: EktParams) -> OperatorBlock:
    """The operator X -> nabla_X xi = tau * (X wedge xi); equals -tau * phi."""
    phi = canonical_sasakian(params).mat
    return OperatorBlock.square(-params.tau * phi, Metric.euclidean(3))
