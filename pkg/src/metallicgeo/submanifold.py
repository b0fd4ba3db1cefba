"""Induced-operator calculus along a submanifold.

An ambient structure J restricted along a decomposition TM (+) E splits
into four blocks (P, Q, R, S).  This module holds those blocks plus the
first-order data of an immersion (second fundamental form B, shape
operators A_nu, the covariant derivatives of the blocks, and the normal
curvature), and verifies every pointwise identity the blocks must satisfy:
algebraic relations, derivative relations, hypersurface and invariant
specializations, shape-operator reconstructions, and minimality criteria.

Sign conventions, fixed once: bar-nabla_X Y = nabla_X Y + B(X, Y) and
bar-nabla_X nu = nabla^perp_X nu - A_nu X.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    BilinearForm,
    Metric,
    OperatorBlock,
    ShapeMismatchError,
    residual_norm,
    self_adjoint_residual,
)
from .report import ResidualReport, make_report
from .structures import (
    ComplexMetallicParams,
    MetallicParams,
    StructureOperator,
    structure_equation_residual,
)

_SYM_TOL = 1e-12


@dataclass(frozen=True)
class InducedOperators:
    """The four blocks (P, Q, R, S) of an ambient structure along TM (+) E."""

    P: OperatorBlock
    Q: OperatorBlock
    R: OperatorBlock
    S: OperatorBlock
    params: object

    def __post_init__(self):
        n, m = self.P.rows, self.S.rows
        if not (self.P.is_square and self.S.is_square):
            raise ShapeMismatchError("P and S must be square")
        if self.Q.mat.shape != (m, n) or self.R.mat.shape != (n, m):
            raise ShapeMismatchError("Q must be m x n and R must be n x m")
        if not isinstance(self.params, (MetallicParams, ComplexMetallicParams)):
            raise ValueError("params must be metallic or complex-metallic scalars")

    @property
    def g(self) -> Metric:
        return self.P.domain_metric

    @property
    def gE(self) -> Metric:
        return self.S.domain_metric

    @property
    def dim_tangent(self) -> int:
        return self.P.rows

    @property
    def dim_normal(self) -> int:
        return self.S.rows

    @property
    def is_metallic(self) -> bool:
        return isinstance(self.params, MetallicParams)

    def block_matrix(self) -> np.ndarray:
        """The (n+m) x (n+m) matrix [[P, R], [Q, S]] in the combined frame."""
        return np.block([[self.P.mat, self.R.mat], [self.Q.mat, self.S.mat]])


@dataclass(frozen=True)
class DerivativeData:
    """First-order data of an immersion in the working frames.

    nablaP[i, j, :] holds (nabla_{e_i} P)(e_j); nablaQ, nablaR, nablaS are
    the analogous mixed arrays (normal-frame index where the operator's
    domain or codomain is E).  nablaB[i, j, k, :] holds (nabla_{e_i} B)(e_j,
    e_k).  A is one shape operator per normal frame vector; A_nu for a
    general nu is the linear combination with nu's frame coefficients.
    RE[i, j, a, :] holds R_perp(e_i, e_j) nu_a.
    """

    nablaP: np.ndarray
    nablaQ: np.ndarray
    nablaR: np.ndarray
    nablaS: np.ndarray
    B: BilinearForm
    nablaB: np.ndarray
    A: tuple
    RE: np.ndarray

    def __post_init__(self):
        n = self.B.dim_in
        m = self.B.dim_out
        object.__setattr__(self, "nablaP", np.asarray(self.nablaP, dtype=float))
        object.__setattr__(self, "nablaQ", np.asarray(self.nablaQ, dtype=float))
        object.__setattr__(self, "nablaR", np.asarray(self.nablaR, dtype=float))
        object.__setattr__(self, "nablaS", np.asarray(self.nablaS, dtype=float))
        object.__setattr__(self, "nablaB", np.asarray(self.nablaB, dtype=float))
        object.__setattr__(self, "RE", np.asarray(self.RE, dtype=float))
        object.__setattr__(self, "A", tuple(self.A))
        shapes = {
            "nablaP": (self.nablaP.shape, (n, n, n)),
            "nablaQ": (self.nablaQ.shape, (n, n, m)),
            "nablaR": (self.nablaR.shape, (n, m, n)),
            "nablaS": (self.nablaS.shape, (n, m, m)),
            "nablaB": (self.nablaB.shape, (n, n, n, m)),
            "RE": (self.RE.shape, (n, n, m, m)),
        }
        for name, (got, want) in shapes.items():
            if got != want:
                raise ShapeMismatchError(f"{name} has shape {got}, expected {want}")
        if len(self.A) != m:
            raise ShapeMismatchError("need one shape operator per normal frame vector")
        for a in self.A:
            if self_adjoint_residual(a) > _SYM_TOL * 10:
                raise ValueError("each shape operator A_nu must be g-self-adjoint")
        scale = max(1.0, float(np.abs(self.nablaB).max()))
        if np.abs(self.nablaB - self.nablaB.transpose(0, 2, 1, 3)).max() > _SYM_TOL * scale:
            raise ValueError("nablaB must be symmetric in its last two vector slots")
        scale = max(1.0, float(np.abs(self.RE).max()))
        if np.abs(self.RE + self.RE.transpose(1, 0, 2, 3)).max() > _SYM_TOL * scale:
            raise ValueError("RE must be antisymmetric in its first two slots")

    @classmethod
    def zero(cls, g: Metric, gE: Metric) -> "DerivativeData":
        n, m = g.dim, gE.dim
        return cls(
            nablaP=np.zeros((n, n, n)),
            nablaQ=np.zeros((n, n, m)),
            nablaR=np.zeros((n, m, n)),
            nablaS=np.zeros((n, m, m)),
            B=BilinearForm.zero(n, m),
            nablaB=np.zeros((n, n, n, m)),
            A=tuple(OperatorBlock.square(np.zeros((n, n)), g) for _ in range(m)),
            RE=np.zeros((n, n, m, m)),
        )

    def shape_operator(self, nu) -> np.ndarray:
        """A_nu as a matrix, for nu given by normal-frame coefficients."""
        nu = np.asarray(nu, dtype=float)
        n = self.B.dim_in
        out = np.zeros((n, n))
        for coeff, a in zip(nu, self.A):
            out = out + coeff * a.mat
        return out


@dataclass(frozen=True)
class HypersurfaceData:
    """Hypersurface reduction of the block data: (P, V, f) plus shape data.

    V is the tangent part of the structure applied to the unit normal and
    f its normal component; nablaV maps X to nabla_X V (columns indexed by
    the frame); df holds the frame components of the differential of f.
    """

    P: OperatorBlock
    V: np.ndarray
    f: float
    A: OperatorBlock
    nablaP: np.ndarray
    nablaV: np.ndarray
    df: np.ndarray
    params: object

    def __post_init__(self):
        n = self.P.rows
        object.__setattr__(self, "V", np.asarray(self.V, dtype=float))
        object.__setattr__(self, "nablaP", np.asarray(self.nablaP, dtype=float))
        object.__setattr__(self, "nablaV", np.asarray(self.nablaV, dtype=float))
        object.__setattr__(self, "df", np.asarray(self.df, dtype=float))
        if self.V.shape != (n,) or self.df.shape != (n,):
            raise ShapeMismatchError("V and df must be frame vectors")
        if self.nablaP.shape != (n, n, n) or self.nablaV.shape != (n, n):
            raise ShapeMismatchError("nablaP must be (n,n,n) and nablaV (n,n)")
        if self_adjoint_residual(self.A) > _SYM_TOL * 10:
            raise ValueError("shape operator A must be g-self-adjoint")

    @property
    def g(self) -> Metric:
        return self.P.domain_metric

    @property
    def is_metallic(self) -> bool:
        return isinstance(self.params, MetallicParams)


def split_structure(
    J_ambient: StructureOperator,
    tangent_frame,
    normal_frame,
    g_ambient: Metric,
    tol: float = 1e-10,
) -> InducedOperators:
    """Block decomposition of an ambient structure along TM (+) E.

    The frames are lists of ambient vectors; they must jointly span the
    ambient space and be mutually g-orthogonal.  Induced metrics are the
    Gram matrices of the frames; the four blocks are read off by solving
    for coordinates of J(frame vector) in the combined frame.
    """
    T = np.column_stack([np.asarray(v, dtype=float) for v in tangent_frame])
    N = np.column_stack([np.asarray(v, dtype=float) for v in normal_frame])
    n, m = T.shape[1], N.shape[1]
    if T.shape[0] != g_ambient.dim or N.shape[0] != g_ambient.dim or n + m != g_ambient.dim:
        raise ShapeMismatchError("frames must jointly span the ambient space")
    cross = T.T @ g_ambient.gram @ N
    if np.abs(cross).max() > tol:
        raise ValueError("tangent and normal frames are not g-orthogonal")
    C = np.column_stack([T, N])
    if np.linalg.matrix_rank(C) < n + m:
        raise ValueError("frames are rank-deficient")
    coeffs = np.linalg.solve(C, J_ambient.mat @ C)
    if residual_norm(C @ coeffs, J_ambient.mat @ C) > 1e-12:
        raise ValueError("block decomposition failed to reproduce the structure")
    g = Metric(T.T @ g_ambient.gram @ T)
    gE = Metric(N.T @ g_ambient.gram @ N)
    return InducedOperators(
        P=OperatorBlock.square(coeffs[:n, :n], g),
        Q=OperatorBlock(coeffs[n:, :n], g, gE),
        R=OperatorBlock(coeffs[:n, n:], gE, g),
        S=OperatorBlock.square(coeffs[n:, n:], gE),
        params=J_ambient.params,
    )


def check_algebraic_relations(ops: InducedOperators, tol: float = DEFAULT_TOL) -> ResidualReport:
    """The seven pointwise block relations of a parallel ambient structure.

    Metallic case: P^2 + RQ = pP + q id, QP + SQ = pQ, PR + RS = pR,
    S^2 + QR = pS + q id, P and S g-self-adjoint, g(QX, xi) = g(X, R xi).
    Complex-metallic case: the same compositions with (-a, -b) in place of
    (p, q), the skewed adjointness g(PX,Y) + g(X,PY) + a g(X,Y) = 0 for P
    and S, and the skewed duality g(QX, xi) = -g(X, R xi).
    """
    P, Q, R, S = ops.P.mat, ops.Q.mat, ops.R.mat, ops.S.mat
    g, gE = ops.g.gram, ops.gE.gram
    n, m = ops.dim_tangent, ops.dim_normal
    eyeT, eyeE = np.eye(n), np.eye(m)
    if ops.is_metallic:
        p, q = ops.params.p, ops.params.q
        entries = [
            ("P2+RQ", residual_norm(P @ P + R @ Q, p * P + q * eyeT)),
            ("QP+SQ", residual_norm(Q @ P + S @ Q, p * Q)),
            ("PR+RS", residual_norm(P @ R + R @ S, p * R)),
            ("S2+QR", residual_norm(S @ S + Q @ R, p * S + q * eyeE)),
            ("P-adjoint", residual_norm(g @ P, P.T @ g)),
            ("S-adjoint", residual_norm(gE @ S, S.T @ gE)),
            ("QR-duality", residual_norm(Q.T @ gE, g @ R)),
        ]
    else:
        a, b = ops.params.a, ops.params.b
        entries = [
            ("P2+RQ", residual_norm(P @ P + R @ Q, -a * P - b * eyeT)),
            ("QP+SQ", residual_norm(Q @ P + S @ Q, -a * Q)),
            ("PR+RS", residual_norm(P @ R + R @ S, -a * R)),
            ("S2+QR", residual_norm(S @ S + Q @ R, -a * S - b * eyeE)),
            ("P-adjoint", residual_norm(g @ P + P.T @ g, -a * g)),
            ("S-adjoint", residual_norm(gE @ S + S.T @ gE, -a * gE)),
            ("QR-duality", residual_norm(Q.T @ gE, -g @ R)),
        ]
    return make_report(entries, tol=tol)


def check_complex_corollary(ops: InducedOperators, tol: float = DEFAULT_TOL) -> ResidualReport:
    """The three bilinear consequences in the complex-metallic case:
    g(PX,PY) + g(QX,QY) = b g(X,Y), g(S.,S.) + g(R.,R.) = b g(.,.) on E,
    and g(PX, R xi) + g(QX, S xi) = 0."""
    if ops.is_metallic:
        raise ValueError("corollary identities apply to the complex-metallic case")
    P, Q, R, S = ops.P.mat, ops.Q.mat, ops.R.mat, ops.S.mat
    g, gE = ops.g.gram, ops.gE.gram
    b = ops.params.b
    return make_report(
        [
            ("PP+QQ", residual_norm(P.T @ g @ P + Q.T @ gE @ Q, b * g)),
            ("SS+RR", residual_norm(S.T @ gE @ S + R.T @ g @ R, b * gE)),
            ("PR+QS", residual_norm(P.T @ g @ R + Q.T @ gE @ S, np.zeros_like(R))),
        ],
        tol=tol,
    )


def check_derivative_relations(
    ops: InducedOperators, der: DerivativeData, tol: float = DEFAULT_TOL
) -> ResidualReport:
    """The four covariant-derivative relations of a parallel structure:

    (nabla_X P)Y           = A_{QY} X + R(B(X,Y))
    (nabla^perp_X Q)Y      = S(B(X,Y)) - B(X, PY)
    (nabla^perp_X S)nu     = -B(R nu, X) - Q(A_nu X)
    (nabla_X R)nu          = -P(A_nu X) + A_{S nu} X

    These have identical form in the metallic and complex-metallic cases.
    """
    P, Q, R, S = ops.P.mat, ops.Q.mat, ops.R.mat, ops.S.mat
    n, m = ops.dim_tangent, ops.dim_normal
    if der.B.dim_in != n or der.B.dim_out != m:
        raise ShapeMismatchError("derivative data frames do not match the operators")
    Bc = der.B.coeffs
    Amats = np.stack([a.mat for a in der.A]) if m else np.zeros((0, n, n))

    # rhsP[i, j, :] = A_{Q e_j} e_i + R(B(e_i, e_j))
    rhsP = np.einsum("aj,ali->ijl", Q, Amats) + np.einsum("lk,ijk->ijl", R, Bc)
    rhsQ = np.einsum("ab,ijb->ija", S, Bc) - np.einsum("kj,ika->ija", P, Bc)
    # rhsS[i, a, :] = -B(R nu_a, e_i) - Q(A_a e_i)
    rhsS = -np.einsum("ka,kib->iab", R, Bc) - np.einsum("bl,ali->iab", Q, Amats)
    # rhsR[i, a, :] = -P(A_a e_i) + A_{S nu_a} e_i
    rhsR = -np.einsum("lk,aki->ial", P, Amats) + np.einsum("ba,bli->ial", S, Amats)
    return make_report(
        [
            ("nablaP", residual_norm(der.nablaP, rhsP)),
            ("nablaQ", residual_norm(der.nablaQ, rhsQ)),
            ("nablaS", residual_norm(der.nablaS, rhsS)),
            ("nablaR", residual_norm(der.nablaR, rhsR)),
        ],
        tol=tol,
    )


def check_hypersurface_relations(
    h: HypersurfaceData, tol: float = DEFAULT_TOL
) -> ResidualReport:
    """The scalar/vector relation suite for hypersurfaces.

    Metallic case: P^2 + <V,.>V = pP + q id, PV + fV = pV, f^2 + |V|^2 =
    pf + q, P self-adjoint, (nabla_X P)Y = <V,Y>AX + <AX,Y>V, nabla_X V =
    -P(AX) + f AX, df(X) = -2<AX, V>.

    Complex-metallic case: P^2 - <V,.>V = -aP - b id, PV = -(a/2)V,
    |V|^2 = delta^2/4, f = -a/2, skewed adjointness of P, (nabla_X P)Y =
    -<V,Y>AX + <AX,Y>V, nabla_X V = -P(AX) - (a/2)AX.
    """
    P, A = h.P.mat, h.A.mat
    g = h.g.gram
    n = h.P.rows
    eye = np.eye(n)
    V = h.V
    gV = g @ V
    vnorm2 = float(V @ gV)
    # Operator X -> <V, X> V in the working frame.
    VV = np.outer(V, gV)
    AV = A @ h.V
    if h.is_metallic:
        p, q = h.params.p, h.params.q
        rhs_nablaP = np.einsum("j,li->ijl", gV, A) + np.einsum("ji,l->ijl", g @ A, V)
        entries = [
            ("P2+VV", residual_norm(P @ P + VV, p * P + q * eye)),
            ("PV+fV", residual_norm(P @ V + h.f * V, p * V)),
            ("f2+V2", abs(h.f * h.f + vnorm2 - p * h.f - q)),
            ("P-adjoint", residual_norm(g @ P, P.T @ g)),
            ("nablaP", residual_norm(h.nablaP, rhs_nablaP)),
            ("nablaV", residual_norm(h.nablaV, -P @ A + h.f * A)),
            ("df", residual_norm(h.df, -2.0 * (g @ AV))),
        ]
    else:
        a = h.params.a
        b = h.params.b
        delta2 = h.params.delta**2
        rhs_nablaP = -np.einsum("j,li->ijl", gV, A) + np.einsum("ji,l->ijl", g @ A, V)
        entries = [
            ("P2-VV", residual_norm(P @ P - VV, -a * P - b * eye)),
            ("PV", residual_norm(P @ V, -(a / 2.0) * V)),
            ("V-norm", abs(vnorm2 - delta2 / 4.0)),
            ("f-value", abs(h.f + a / 2.0)),
            ("P-adjoint", residual_norm(g @ P + P.T @ g, -a * g)),
            ("nablaP", residual_norm(h.nablaP, rhs_nablaP)),
            ("nablaV", residual_norm(h.nablaV, -P @ A - (a / 2.0) * A)),
        ]
    return make_report(entries, tol=tol)


def check_invariant(ops: InducedOperators, tol: float = DEFAULT_TOL) -> ResidualReport:
    """Invariance certificate: Q = 0, R = 0, and P, S satisfy the ambient
    structure equation on TM and E respectively."""
    kind = "metallic" if ops.is_metallic else "complex_metallic"
    q_norm = float(np.linalg.norm(ops.Q.mat))
    r_norm = float(np.linalg.norm(ops.R.mat))
    entries = [("Q-vanishes", q_norm), ("R-vanishes", r_norm)]
    if ops.dim_tangent:
        entries.append(("P-structure", structure_equation_residual(kind, ops.P.mat, ops.params)))
    if ops.dim_normal:
        entries.append(("S-structure", structure_equation_residual(kind, ops.S.mat, ops.params)))
    return make_report(entries, tol=tol)


def _check_scalar(name: str, value: float, target: float, tol: float):
    if abs(value - target) > tol:
        raise ValueError(f"{name} constraint violated: {value!r} vs expected {target!r}")


def shape_from_JV_normal(
    P: OperatorBlock,
    V,
    nablaV,
    params: MetallicParams,
    g: Metric,
    tol: float = 1e-8,
):
    """Shape operator recovery when the structure sends V into the normal bundle.

    Requires P(V) = 0 (that is what "J(V) normal" means blockwise), V
    nonvanishing, and |V|^2 = q; then A(X) = -P(nabla_X V)/|V|^2, the
    recovered A annihilates V and has zero determinant.
    """
    V = np.asarray(V, dtype=float)
    nablaV = np.asarray(nablaV, dtype=float)
    vnorm2 = g.inner(V, V)
    if vnorm2 <= tol:
        raise ValueError("V must be nonvanishing")
    if float(np.linalg.norm(P.mat @ V)) > tol * max(1.0, math.sqrt(vnorm2)):
        raise ValueError("P(V) must vanish for the normal-image case")
    _check_scalar("|V|^2 = q", vnorm2, params.q, tol)
    A_mat = -(P.mat @ nablaV) / vnorm2
    A = OperatorBlock.square(A_mat, g)
    report = make_report(
        [
            ("AV-vanishes", float(np.linalg.norm(A_mat @ V)) / max(1.0, np.linalg.norm(A_mat))),
            ("detA-vanishes", abs(float(np.linalg.det(A_mat)))),
            ("V-norm", abs(vnorm2 - params.q)),
        ]
    )
    return A, report


def shape_from_Jnu_tangent(
    P: OperatorBlock,
    V,
    nablaV,
    params: MetallicParams,
    g: Metric,
    tol: float = 1e-8,
):
    """Shape operator recovery when the structure sends the unit normal into TM.

    Requires P(V) = pV and |V|^2 = q; then A(X) = -(P(nabla_X V) -
    p nabla_X V)/|V|^2 with A(V) = 0 and det A = 0.
    """
    V = np.asarray(V, dtype=float)
    nablaV = np.asarray(nablaV, dtype=float)
    vnorm2 = g.inner(V, V)
    if vnorm2 <= tol:
        raise ValueError("V must be nonvanishing")
    if float(np.linalg.norm(P.mat @ V - params.p * V)) > tol * max(1.0, math.sqrt(vnorm2)):
        raise ValueError("V must be a p-eigenvector of P for the tangent-image case")
    _check_scalar("|V|^2 = q", vnorm2, params.q, tol)
    A_mat = -(P.mat @ nablaV - params.p * nablaV) / vnorm2
    A = OperatorBlock.square(A_mat, g)
    report = make_report(
        [
            ("AV-vanishes", float(np.linalg.norm(A_mat @ V)) / max(1.0, np.linalg.norm(A_mat))),
            ("detA-vanishes", abs(float(np.linalg.det(A_mat)))),
            ("V-norm", abs(vnorm2 - params.q)),
        ]
    )
    return A, report


def divergence_from_nablaP(nablaP, g: Metric) -> np.ndarray:
    """div(P) = sum_ij g^{ij} (nabla_{e_i} P)(e_j), valid in any frame."""
    return np.einsum("ij,ijl->l", g.inverse, np.asarray(nablaP, dtype=float))


def minimality_criterion(P: OperatorBlock, divP, V, g: Metric) -> float:
    """The scalar <div(P), V>; zero characterizes minimality when either
    the structure sends V into the normal bundle or the normal into TM."""
    divP = np.asarray(divP, dtype=float)
    V = np.asarray(V, dtype=float)
    if divP.shape != V.shape or divP.shape != (g.dim,):
        raise ShapeMismatchError("divP and V must be frame vectors")
    return g.inner(divP, V)


def invariant_minimality_check(
    ops: InducedOperators, B: BilinearForm, tol: float = DEFAULT_TOL
) -> ResidualReport:
    """Minimality of invariant submanifolds in the complex-metallic case.

    Builds j = (2/delta)P + (a/delta)id, checks that j is a g-isometry with
    g(jX, X) = 0, constructs the adapted orthonormal frame {e1, je1, ...}
    by Gram-Schmidt, and reports the norm of the metric trace of B (zero
    means minimal).  Requires even tangent dimension and the intertwining
    S(B(X,Y)) = B(X, PY).
    """
    if ops.is_metallic:
        raise ValueError("invariant minimality applies to the complex-metallic case")
    n = ops.dim_tangent
    if n % 2:
        raise ValueError("invariant submanifolds are even-dimensional")
    inv = check_invariant(ops, tol=max(tol, 1e-9))
    if not inv.passed:
        raise ValueError("operators do not describe an invariant submanifold")
    intertwine = residual_norm(
        np.einsum("ab,ijb->ija", ops.S.mat, B.coeffs),
        np.einsum("kj,ika->ija", ops.P.mat, B.coeffs),
    )
    if intertwine > max(tol, 1e-9):
        raise ValueError("B does not intertwine S and P (S(B(X,Y)) != B(X,PY))")
    params = ops.params
    j = (2.0 / params.delta) * ops.P.mat + (params.a / params.delta) * np.eye(n)
    g = ops.g.gram
    skew = residual_norm(g @ j, -j.T @ g)
    isometry = residual_norm(j.T @ g @ j, g)

    # Adapted frame: normalize a seed vector, append its j-image, repeat on
    # the orthogonal complement.
    frame = []
    basis = np.eye(n)
    for seed in basis:
        v = seed.copy()
        for w in frame:
            v = v - ops.g.inner(w, v) * w
        nv = ops.g.norm(v)
        if nv < 1e-8:
            continue
        v = v / nv
        frame.append(v)
        frame.append(j @ v)
        if len(frame) == n:
            break
    F = np.column_stack(frame)
    frame_ortho = residual_norm(F.T @ g @ F, np.eye(n))
    trace_norm = float(np.linalg.norm(B.trace(ops.g)))
    return make_report(
        [
            ("j-skew", skew),
            ("j-isometry", isometry),
            ("adapted-frame-orthonormal", frame_ortho),
            ("traceB-vanishes", trace_norm),
        ],
        tol=tol,
    )


def totally_geodesic_check(h: HypersurfaceData, tol: float = DEFAULT_TOL) -> ResidualReport:
    """Two data-level implications for complex-metallic hypersurfaces:

    (i) if A = 0 then nablaP = 0 and nablaV = 0;
    (ii) if nablaP = 0 and A(V) = 0 then A = 0.

    Each entry carries the conclusion's norm when its hypothesis holds on
    the data and 0 (vacuous) otherwise.
    """
    a_norm = float(np.linalg.norm(h.A.mat))
    nablaP_norm = float(np.linalg.norm(h.nablaP))
    nablaV_norm = float(np.linalg.norm(h.nablaV))
    av_norm = float(np.linalg.norm(h.A.mat @ h.V))
    geodesic_implies_parallel = max(nablaP_norm, nablaV_norm) if a_norm <= tol else 0.0
    parallel_implies_geodesic = a_norm if (nablaP_norm <= tol and av_norm <= tol) else 0.0
    return make_report(
        [
            ("geodesic-implies-parallel", geodesic_implies_parallel),
            ("parallel-implies-geodesic", parallel_implies_geodesic),
        ],
        tol=tol,
    )


def mean_curvature(B: BilinearForm, g: Metric) -> np.ndarray:
    """Mean curvature vector (1/n) trace_g B, as a normal-frame vector."""
    return B.trace(g) / B.dim_in
