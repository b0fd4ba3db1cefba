"""Quadratic structure families on framed vector spaces.

Two families of (1,1)-tensors are handled, each a root of a scalar
quadratic:

* metallic:  J^2 = p J + q id   (p, q > 0), real eigenvalues sigma and
  p - sigma where sigma is the positive root of x^2 - p x - q;
* complex metallic:  J^2 + a J + b id = 0 with a < 2 sqrt(b), complex
  conjugate eigenvalues (-a +- i delta)/2 with delta = sqrt(4b - a^2).

Both are linear reparametrizations of classical structures (involutions
and almost complex structures); the conversion maps here are exact and
mutually inverse.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    Metric,
    OperatorBlock,
    residual_norm,
    self_adjoint_residual,
    skew_adjoint_residual,
)
from .report import ResidualReport, make_report

KIND_PRODUCT = "product"
KIND_METALLIC = "metallic"
KIND_COMPLEX = "complex"
KIND_COMPLEX_METALLIC = "complex_metallic"


@dataclass(frozen=True)
class MetallicParams:
    """Scalar data (p, q, sigma) of a metallic family.

    p and q may be any positive reals; sigma is the positive root of
    x^2 - p x - q = 0.  Useful identity: sigma * (sigma - p) = q.
    """

    p: float
    q: float

    def __post_init__(self):
        if self.p <= 0 or self.q <= 0:
            raise ValueError("p and q must be positive")

    @property
    def sigma(self) -> float:
        return (self.p + math.sqrt(self.p * self.p + 4.0 * self.q)) / 2.0

    @property
    def spread(self) -> float:
        """2*sigma - p = sqrt(p^2 + 4q), the gap between the two eigenvalues."""
        return 2.0 * self.sigma - self.p

    @property
    def eigenvalues(self) -> tuple:
        return (self.sigma, self.p - self.sigma)


def metallic_mean(p: float, q: float) -> MetallicParams:
    """Parameters whose sigma is the (p, q) mean: golden for (1,1), silver for (2,1)."""
    return MetallicParams(float(p), float(q))


@dataclass(frozen=True)
class ComplexMetallicParams:
    """Scalar data (a, b, delta) of a complex metallic family, a < 2 sqrt(b)."""

    a: float
    b: float

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            raise ValueError("a and b must be positive")
        if self.a >= 2.0 * math.sqrt(self.b):
            raise ValueError("need a < 2*sqrt(b) for complex conjugate roots")

    @property
    def delta(self) -> float:
        return math.sqrt(4.0 * self.b - self.a * self.a)


def structure_equation_residual(kind: str, mat: np.ndarray, params=None) -> float:
    """Relative residual of the defining quadratic for the given kind."""
    mat = np.asarray(mat, dtype=float)
    n = mat.shape[0]
    eye = np.eye(n)
    sq = mat @ mat
    if kind == KIND_PRODUCT:
        return residual_norm(sq, eye)
    if kind == KIND_METALLIC:
        return residual_norm(sq, params.p * mat + params.q * eye)
    if kind == KIND_COMPLEX:
        return residual_norm(sq, -eye)
    if kind == KIND_COMPLEX_METALLIC:
        return residual_norm(sq, -params.a * mat - params.b * eye)
    raise ValueError(f"unknown structure kind {kind!r}")


@dataclass(frozen=True)
class StructureOperator:
    """A square operator validated against the structure equation of its kind."""

    op: OperatorBlock
    kind: str
    params: object = None
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if not self.op.is_square:
            raise ValueError("structure operators must be square")
        if self.kind in (KIND_METALLIC,) and not isinstance(self.params, MetallicParams):
            raise ValueError("metallic kind needs MetallicParams")
        if self.kind == KIND_COMPLEX_METALLIC and not isinstance(self.params, ComplexMetallicParams):
            raise ValueError("complex_metallic kind needs ComplexMetallicParams")
        res = structure_equation_residual(self.kind, self.op.mat, self.params)
        if res > self.tol:
            raise ValueError(
                f"operator violates the {self.kind} structure equation (residual {res:.3e})"
            )

    @classmethod
    def unchecked(cls, op: OperatorBlock, kind: str, params=None) -> "StructureOperator":
        """Skip the structure-equation check (residual reported, never enforced)."""
        inst = object.__new__(cls)
        object.__setattr__(inst, "op", op)
        object.__setattr__(inst, "kind", kind)
        object.__setattr__(inst, "params", params)
        object.__setattr__(inst, "tol", float("inf"))
        return inst

    @property
    def mat(self) -> np.ndarray:
        return self.op.mat

    @property
    def metric(self) -> Metric:
        return self.op.domain_metric

    @property
    def dim(self) -> int:
        return self.op.rows


def _square(mat: np.ndarray, like: StructureOperator) -> OperatorBlock:
    return OperatorBlock.square(mat, like.metric)


def product_to_metallic(F: StructureOperator, params: MetallicParams):
    """The two metallic structures (p/2) id +- ((2 sigma - p)/2) F of an involution."""
    if F.kind != KIND_PRODUCT:
        raise ValueError("expected a product structure (involution)")
    eye = np.eye(F.dim)
    half_gap = params.spread / 2.0
    j1 = (params.p / 2.0) * eye + half_gap * F.mat
    j2 = (params.p / 2.0) * eye - half_gap * F.mat
    return (
        StructureOperator(_square(j1, F), KIND_METALLIC, params),
        StructureOperator(_square(j2, F), KIND_METALLIC, params),
    )


def metallic_to_product(J: StructureOperator):
    """The two involutions +-((2/(2s-p)) J - (p/(2s-p)) id) of a metallic structure."""
    if J.kind != KIND_METALLIC:
        raise ValueError("expected a metallic structure")
    params = J.params
    eye = np.eye(J.dim)
    f = (2.0 / params.spread) * J.mat - (params.p / params.spread) * eye
    return (
        StructureOperator(_square(f, J), KIND_PRODUCT),
        StructureOperator(_square(-f, J), KIND_PRODUCT),
    )


@dataclass(frozen=True)
class EigenProjector:
    """An eigenprojector of a metallic structure, tagged with its eigenvalue.

    Callers should pair projectors by eigenvalue, never by position: the
    first projector returned by metallic_projections targets the
    (p - sigma)-eigenspace, the second the sigma-eigenspace.
    """

    op: OperatorBlock
    eigenvalue: float

    @property
    def mat(self) -> np.ndarray:
        return self.op.mat


def metallic_projections(J: StructureOperator):
    """Complementary eigenprojectors of a metallic structure.

    Returns (pi1, pi2) with pi1 = (s/(2s-p)) id - J/(2s-p) projecting onto
    the (p - sigma)-eigenspace and pi2 = ((s-p)/(2s-p)) id + J/(2s-p) onto
    the sigma-eigenspace; pi1 + pi2 = id exactly.
    """
    if J.kind != KIND_METALLIC:
        raise ValueError("expected a metallic structure")
    params = J.params
    eye = np.eye(J.dim)
    gap = params.spread
    pi1 = (params.sigma / gap) * eye - J.mat / gap
    pi2 = (params.sigma - params.p) / gap * eye + J.mat / gap
    return (
        EigenProjector(_square(pi1, J), params.p - params.sigma),
        EigenProjector(_square(pi2, J), params.sigma),
    )


def complex_to_cms(Jc: StructureOperator, params: ComplexMetallicParams):
    """The two complex metallic structures -(a/2) id +- (delta/2) Jc.

    Note the 1/2 factors: only this normalization satisfies
    J^2 + a J + b id = 0 (direct 2x2 check: a=2, b=2 gives
    J+ = [[-1,-1],[1,-1]]).
    """
    if Jc.kind != KIND_COMPLEX:
        raise ValueError("expected an almost complex structure")
    eye = np.eye(Jc.dim)
    base = -(params.a / 2.0) * eye
    half_delta = params.delta / 2.0
    return (
        StructureOperator(_square(base + half_delta * Jc.mat, Jc), KIND_COMPLEX_METALLIC, params),
        StructureOperator(_square(base - half_delta * Jc.mat, Jc), KIND_COMPLEX_METALLIC, params),
    )


def cms_to_complex(J: StructureOperator):
    """The two almost complex structures +-((2/delta) J + (a/delta) id)."""
    if J.kind != KIND_COMPLEX_METALLIC:
        raise ValueError("expected a complex metallic structure")
    params = J.params
    eye = np.eye(J.dim)
    jc = (2.0 / params.delta) * J.mat + (params.a / params.delta) * eye
    return (
        StructureOperator(_square(jc, J), KIND_COMPLEX),
        StructureOperator(_square(-jc, J), KIND_COMPLEX),
    )


def metric_compatibility_residual(kind: str, mat: np.ndarray, g: Metric, params=None) -> float:
    """Residual of the metric-compatibility law of the given kind.

    Product and metallic structures must be g-self-adjoint; almost complex
    structures g-skew-adjoint; complex metallic structures satisfy the
    skewed law  g(JX, Y) + g(X, JY) + a g(X, Y) = 0.
    """
    op = OperatorBlock.square(np.asarray(mat, dtype=float), g)
    if kind in (KIND_PRODUCT, KIND_METALLIC):
        return self_adjoint_residual(op)
    if kind == KIND_COMPLEX:
        return skew_adjoint_residual(op)
    if kind == KIND_COMPLEX_METALLIC:
        gm = g.gram
        return residual_norm(gm @ op.mat + op.mat.T @ gm, -params.a * gm)
    raise ValueError(f"unknown structure kind {kind!r}")


def structure_residual(S: StructureOperator, g: Metric, tol: float = DEFAULT_TOL) -> ResidualReport:
    """Structure-equation and metric-compatibility residuals of an operator.

    Reports rather than raises, so it can be used on deliberately bad data.
    """
    if g.dim != S.dim:
        raise ValueError("metric dimension does not match the operator")
    return make_report(
        [
            ("structure-equation", structure_equation_residual(S.kind, S.mat, S.params)),
            ("metric-compatibility", metric_compatibility_residual(S.kind, S.mat, g, S.params)),
        ],
        tol=tol,
    )
