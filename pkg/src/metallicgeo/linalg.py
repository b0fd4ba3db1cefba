"""Frame-based dense multilinear algebra.

Every geometric object in this package is stored as plain float arrays in
an explicit working frame, together with the Gram matrix of that frame.
Nothing here assumes orthonormality: adjoints, norms and ranks are always
taken with respect to the carried metrics.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFAULT_TOL = 1e-9
_SYM_TOL = 1e-12


class ShapeMismatchError(ValueError):
    """Raised when array shapes or frame dimensions are inconsistent."""


def _as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=float)
    if m.ndim != 2:
        raise ShapeMismatchError(f"expected a matrix, got shape {m.shape}")
    return m


@dataclass(frozen=True)
class Metric:
    """Inner products of a working frame, as a Gram matrix.

    The Gram matrix must be symmetric and positive definite; both are
    checked at construction (positive definiteness via Cholesky).
    """

    gram: np.ndarray

    def __post_init__(self):
        g = _as_matrix(self.gram)
        if g.shape[0] != g.shape[1]:
            raise ShapeMismatchError("Gram matrix must be square")
        scale = max(1.0, float(np.abs(g).max()))
        if np.abs(g - g.T).max() > _SYM_TOL * scale:
            raise ValueError("Gram matrix is not symmetric")
        try:
            np.linalg.cholesky(g + 0.0)
        except np.linalg.LinAlgError:
            raise ValueError("Gram matrix is not positive definite") from None
        if np.linalg.eigvalsh(g).min() <= 1e-12 * scale:
            raise ValueError("Gram matrix is numerically singular")
        object.__setattr__(self, "gram", _readonly(g))

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    @classmethod
    def euclidean(cls, dim: int) -> "Metric":
        return cls(np.eye(dim))

    def inner(self, x, y) -> float:
        """<x, y> in this frame."""
        return float(np.asarray(x) @ self.gram @ np.asarray(y))

    def norm(self, x) -> float:
        return float(np.sqrt(max(self.inner(x, x), 0.0)))

    @property
    def inverse(self) -> np.ndarray:
        return np.linalg.inv(self.gram)


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class OperatorBlock:
    """A linear map between framed inner-product spaces.

    `mat` holds the coefficients (columns are images of the domain frame
    vectors, expressed in the codomain frame).  The two metrics travel
    with the map so adjoints can be taken without assuming orthonormal
    frames.
    """

    mat: np.ndarray
    domain_metric: Metric
    codomain_metric: Metric

    def __post_init__(self):
        m = _as_matrix(self.mat)
        if m.shape != (self.codomain_metric.dim, self.domain_metric.dim):
            raise ShapeMismatchError(
                f"matrix shape {m.shape} inconsistent with metrics "
                f"({self.codomain_metric.dim}x{self.domain_metric.dim} expected)"
            )
        object.__setattr__(self, "mat", _readonly(m))

    @property
    def rows(self) -> int:
        return self.mat.shape[0]

    @property
    def cols(self) -> int:
        return self.mat.shape[1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @classmethod
    def square(cls, mat, metric: Metric) -> "OperatorBlock":
        return cls(np.asarray(mat, dtype=float), metric, metric)

    @classmethod
    def identity(cls, metric: Metric) -> "OperatorBlock":
        return cls.square(np.eye(metric.dim), metric)

    def __call__(self, x) -> np.ndarray:
        return self.mat @ np.asarray(x, dtype=float)

    def compose(self, other: "OperatorBlock") -> "OperatorBlock":
        """self o other."""
        if other.rows != self.cols:
            raise ShapeMismatchError("composition dimension mismatch")
        return OperatorBlock(self.mat @ other.mat, other.domain_metric, self.codomain_metric)


def adjoint(op: OperatorBlock) -> OperatorBlock:
    """Metric adjoint: <op(x), y> = <x, adjoint(op)(y)> for all x, y.

    Computed as G_dom^{-1} M^T G_cod, which reduces to the plain
    transpose in Euclidean frames.
    """
    g_dom = op.domain_metric.gram
    g_cod = op.codomain_metric.gram
    mat = np.linalg.solve(g_dom, op.mat.T @ g_cod)
    return OperatorBlock(mat, op.codomain_metric, op.domain_metric)


def self_adjoint_residual(op: OperatorBlock) -> float:
    """Relative deviation of a square operator from g-self-adjointness."""
    if not op.is_square:
        raise ShapeMismatchError("self-adjointness needs a square operator")
    g = op.domain_metric.gram
    return residual_norm(g @ op.mat, op.mat.T @ g)


def skew_adjoint_residual(op: OperatorBlock) -> float:
    """Relative deviation of a square operator from g-skew-adjointness."""
    if not op.is_square:
        raise ShapeMismatchError("skew-adjointness needs a square operator")
    g = op.domain_metric.gram
    return residual_norm(g @ op.mat, -op.mat.T @ g)


def rank_with_tol(op: OperatorBlock, tol: float = DEFAULT_TOL) -> int:
    """Numerical rank: singular values above tol * (largest singular value)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    s = np.linalg.svd(op.mat, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def residual_norm(a, b) -> float:
    """Frobenius norm of a - b, normalized by max(1, ||a||_F)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ShapeMismatchError(f"shape mismatch: {a.shape} vs {b.shape}")
    scale = max(1.0, float(np.linalg.norm(a)))
    return float(np.linalg.norm(a - b)) / scale


@dataclass(frozen=True)
class BilinearForm:
    """Vector-valued symmetric bilinear form B: V x V -> W.

    coeffs[i, j, k] is the k-th output component of B(e_i, e_j).
    Symmetry in the first two slots is required at construction.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.ndim != 3 or c.shape[0] != c.shape[1]:
            raise ShapeMismatchError(f"bilinear form needs shape (n, n, m), got {c.shape}")
        scale = max(1.0, float(np.abs(c).max()))
        if np.abs(c - c.transpose(1, 0, 2)).max() > _SYM_TOL * scale:
            raise ValueError("bilinear form is not symmetric in its first two slots")
        object.__setattr__(self, "coeffs", _readonly(c))

    @property
    def dim_in(self) -> int:
        return self.coeffs.shape[0]

    @property
    def dim_out(self) -> int:
        return self.coeffs.shape[2]

    @classmethod
    def zero(cls, dim_in: int, dim_out: int) -> "BilinearForm":
        return cls(np.zeros((dim_in, dim_in, dim_out)))

    def __call__(self, x, y) -> np.ndarray:
        return np.einsum("ijk,i,j->k", self.coeffs, np.asarray(x), np.asarray(y))

    def trace(self, metric: Metric) -> np.ndarray:
        """Metric trace: sum_ij g^{ij} B(e_i, e_j), a vector in the output space."""
        return np.einsum("ij,ijk->k", metric.inverse, self.coeffs)


# Sign conventions for stored (3,1) curvature tensors.  STANDARD means
# R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z; FLIPPED
# is its negative (used by some closed-form displays).
CONVENTION_STANDARD = "standard"
CONVENTION_FLIPPED = "flipped"


@dataclass(frozen=True)
class CurvatureTensor:
    """A (3,1) curvature tensor in a fixed frame.

    coeffs[i, j, k, l] is the l-th component of R(e_i, e_j)e_k.
    Antisymmetry in (i, j) is required at construction.  The convention
    tag prevents silently comparing tensors stored with opposite sign
    conventions.
    """

    coeffs: np.ndarray
    convention: str = CONVENTION_STANDARD

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.ndim != 4 or len(set(c.shape)) != 1:
            raise ShapeMismatchError(f"curvature tensor needs shape (n,n,n,n), got {c.shape}")
        scale = max(1.0, float(np.abs(c).max()))
        if np.abs(c + c.transpose(1, 0, 2, 3)).max() > _SYM_TOL * scale:
            raise ValueError("curvature tensor is not antisymmetric in its first two slots")
        if self.convention not in (CONVENTION_STANDARD, CONVENTION_FLIPPED):
            raise ValueError(f"unknown convention {self.convention!r}")
        object.__setattr__(self, "coeffs", _readonly(c))

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    def as_standard(self) -> "CurvatureTensor":
        if self.convention == CONVENTION_STANDARD:
            return self
        return CurvatureTensor(-self.coeffs, CONVENTION_STANDARD)

    def __call__(self, x, y, z) -> np.ndarray:
        return np.einsum("ijkl,i,j,k->l", self.coeffs, np.asarray(x), np.asarray(y), np.asarray(z))
