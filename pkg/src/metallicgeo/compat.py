"""Compatibility equations against the model-space targets.

A PointRecord packages the full pointwise data of an immersion candidate
(metrics, the four induced operators, the first-order data, the intrinsic
curvature, and a target model space).  full_verdict checks every
compatibility condition at once: dimensions, the algebraic block
relations, the derivative relations, the rank conditions (product
targets), and the Gauss, Codazzi and Ricci equations in the form matched
to the target's closed-form curvature.

Factor pairing for product targets: factor 1 (curvature c1) is the
sigma-eigenspace of the canonical structure, so the c1 coefficient group
in Gauss/Codazzi uses the ((sigma - p) id + P) combination and c2 the
(sigma id - P) one.  See modelspaces.product_curvature_metallic.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    CurvatureTensor,
    Metric,
    OperatorBlock,
    ShapeMismatchError,
    rank_with_tol,
    residual_norm,
)
from .modelspaces import ComplexSpaceFormParams, ProductSpaceParams
from .report import ResidualReport, make_report
from .structures import ComplexMetallicParams, MetallicParams
from .submanifold import (
    DerivativeData,
    InducedOperators,
    check_algebraic_relations,
    check_complex_corollary,
    check_derivative_relations,
)


@dataclass(frozen=True)
class PointRecord:
    """Pointwise immersion data together with its target model space.

    R_tm is the intrinsic curvature tensor of the candidate manifold in
    the working frame (any stored convention; comparisons normalize to
    the standard one).
    """

    ops: InducedOperators
    der: DerivativeData
    R_tm: CurvatureTensor
    target: object

    def __post_init__(self):
        n, m = self.ops.dim_tangent, self.ops.dim_normal
        if self.der.B.dim_in != n or self.der.B.dim_out != m:
            raise ShapeMismatchError("derivative data does not match the operators")
        if self.R_tm.dim != n:
            raise ShapeMismatchError("intrinsic curvature dimension mismatch")
        if isinstance(self.target, ProductSpaceParams):
            if not self.ops.is_metallic:
                raise ValueError("product targets require metallic scalars")
        elif isinstance(self.target, ComplexSpaceFormParams):
            if self.ops.is_metallic:
                raise ValueError("complex space form targets require complex-metallic scalars")
        else:
            raise ValueError("target must be a product space or a complex space form")

    @property
    def g(self) -> Metric:
        return self.ops.g

    @property
    def gE(self) -> Metric:
        return self.ops.gE

    @property
    def ambient_dim(self) -> int:
        return self.ops.dim_tangent + self.ops.dim_normal

    @property
    def expected_ambient_dim(self) -> int:
        if isinstance(self.target, ProductSpaceParams):
            return self.target.n1 + self.target.n2
        return 2 * self.target.complex_dim


# ---------------------------------------------------------------------------
# Eight-operator reformulation (product targets).


@dataclass(frozen=True)
class EightOperators:
    """The projector-style recombination (f_i, h_i, s_i, t_i) of (P, Q, R, S).

    f_i and t_i are the two eigenprojector combinations on TM and E, and
    h_i, s_i the matching off-diagonal blocks; f1 + f2 = id, h1 + h2 = 0,
    s1 + s2 = 0, t1 + t2 = id hold exactly by construction.
    """

    f1: np.ndarray
    f2: np.ndarray
    h1: np.ndarray
    h2: np.ndarray
    s1: np.ndarray
    s2: np.ndarray
    t1: np.ndarray
    t2: np.ndarray
    params: MetallicParams

    def pair(self, i: int) -> tuple:
        """(f_i, h_i, s_i, t_i) for i in {1, 2}."""
        if i == 1:
            return self.f1, self.h1, self.s1, self.t1
        if i == 2:
            return self.f2, self.h2, self.s2, self.t2
        raise ValueError("index must be 1 or 2")


def derive_eight_operators(ops: InducedOperators) -> EightOperators:
    """Build the eight operators from the blocks of a metallic structure."""
    if not ops.is_metallic:
        raise ValueError("the eight-operator form applies to metallic scalars")
    mp = ops.params
    gap = mp.spread
    s = mp.sigma
    n, m = ops.dim_tangent, ops.dim_normal
    eyeT, eyeE = np.eye(n), np.eye(m)
    return EightOperators(
        f1=(s * eyeT - ops.P.mat) / gap,
        f2=((s - mp.p) * eyeT + ops.P.mat) / gap,
        h1=-ops.Q.mat / gap,
        h2=ops.Q.mat / gap,
        s1=-ops.R.mat / gap,
        s2=ops.R.mat / gap,
        t1=(s * eyeE - ops.S.mat) / gap,
        t2=((s - mp.p) * eyeE + ops.S.mat) / gap,
        params=mp,
    )


def induced_from_eight(eight: EightOperators, g: Metric, gE: Metric) -> InducedOperators:
    """Exact inverse of derive_eight_operators.

    P = sigma f2 - (sigma - p) f1, Q = -(2 sigma - p) h1, R = -(2 sigma - p) s1,
    S = sigma t2 - (sigma - p) t1.  (The off-diagonal coefficient is the full
    eigenvalue gap 2 sigma - p; any other multiple fails the round trip.)
    """
    mp = eight.params
    s, gap = mp.sigma, mp.spread
    return InducedOperators(
        P=OperatorBlock.square(s * eight.f2 - (s - mp.p) * eight.f1, g),
        Q=OperatorBlock(-gap * eight.h1, g, gE),
        R=OperatorBlock(-gap * eight.s1, gE, g),
        S=OperatorBlock.square(s * eight.t2 - (s - mp.p) * eight.t1, gE),
        params=mp,
    )


def eight_operator_identities(eight: EightOperators, tol: float = DEFAULT_TOL) -> ResidualReport:
    """The sixteen projector-style composition identities:
    f_i f_j + s_i h_j = d_ij f_i, t_i t_j + h_i s_j = d_ij t_i,
    f_i s_j + s_i t_j = d_ij s_i, h_i f_j + t_i h_j = d_ij h_i."""
    entries = []
    for i in (1, 2):
        fi, hi, si, ti = eight.pair(i)
        for j in (1, 2):
            fj, hj, sj, tj = eight.pair(j)
            d = 1.0 if i == j else 0.0
            entries.extend(
                [
                    (f"f{i}f{j}+s{i}h{j}", residual_norm(fi @ fj + si @ hj, d * fi)),
                    (f"t{i}t{j}+h{i}s{j}", residual_norm(ti @ tj + hi @ sj, d * ti)),
                    (f"f{i}s{j}+s{i}t{j}", residual_norm(fi @ sj + si @ tj, d * si)),
                    (f"h{i}f{j}+t{i}h{j}", residual_norm(hi @ fj + ti @ hj, d * hi)),
                ]
            )
    return make_report(entries, tol=tol)


def eight_derivative_identities(
    eight: EightOperators, der: DerivativeData, tol: float = DEFAULT_TOL
) -> ResidualReport:
    """The eight derivative identities of the recombined operators:

    (nabla_X f_i)Y        = A_{h_i Y} X + s_i(B(X,Y))
    (nabla^perp_X h_i)Y   = t_i(B(X,Y)) - B(X, f_i Y)
    (nabla^perp_X t_i)nu  = -B(s_i nu, X) - h_i(A_nu X)
    (nabla_X s_i)nu       = -f_i(A_nu X) + A_{t_i nu} X

    The left sides follow from the block data: nabla f_1 = -nabla P / gap,
    nabla f_2 = +nabla P / gap, and likewise for the other six.
    """
    gap = eight.params.spread
    n = der.B.dim_in
    Bc = der.B.coeffs
    Amats = np.stack([a.mat for a in der.A]) if der.B.dim_out else np.zeros((0, n, n))
    entries = []
    for i, sign in ((1, -1.0), (2, 1.0)):
        fi, hi, si, ti = eight.pair(i)
        nabla_f = sign * der.nablaP / gap
        nabla_h = sign * der.nablaQ / gap
        nabla_s = sign * der.nablaR / gap
        nabla_t = sign * der.nablaS / gap
        rhs_f = np.einsum("aj,ali->ijl", hi, Amats) + np.einsum("lk,ijk->ijl", si, Bc)
        rhs_h = np.einsum("ab,ijb->ija", ti, Bc) - np.einsum("kj,ika->ija", fi, Bc)
        rhs_t = -np.einsum("ka,kib->iab", si, Bc) - np.einsum("bl,ali->iab", hi, Amats)
        rhs_s = -np.einsum("lk,aki->ial", fi, Amats) + np.einsum("ba,bli->ial", ti, Amats)
        entries.extend(
            [
                (f"nabla-f{i}", residual_norm(nabla_f, rhs_f)),
                (f"nabla-h{i}", residual_norm(nabla_h, rhs_h)),
                (f"nabla-t{i}", residual_norm(nabla_t, rhs_t)),
                (f"nabla-s{i}", residual_norm(nabla_s, rhs_s)),
            ]
        )
    return make_report(entries, tol=tol)


# ---------------------------------------------------------------------------
# Complex-quadruple reformulation (complex space form targets).


@dataclass(frozen=True)
class ComplexQuad:
    """The almost-complex recombination (j, h, s, t) of complex-metallic blocks:
    j = (2/delta)P + (a/delta)id, h = (2/delta)Q, s = (2/delta)R,
    t = (2/delta)S + (a/delta)id."""

    j: np.ndarray
    h: np.ndarray
    s: np.ndarray
    t: np.ndarray
    params: ComplexMetallicParams


def derive_complex_quad(ops: InducedOperators) -> ComplexQuad:
    if ops.is_metallic:
        raise ValueError("the complex quadruple applies to complex-metallic scalars")
    cms = ops.params
    d, a = cms.delta, cms.a
    n, m = ops.dim_tangent, ops.dim_normal
    return ComplexQuad(
        j=(2.0 / d) * ops.P.mat + (a / d) * np.eye(n),
        h=(2.0 / d) * ops.Q.mat,
        s=(2.0 / d) * ops.R.mat,
        t=(2.0 / d) * ops.S.mat + (a / d) * np.eye(m),
        params=cms,
    )


def complex_quad_identities(
    quad: ComplexQuad, g: Metric, gE: Metric, tol: float = DEFAULT_TOL
) -> ResidualReport:
    """The combined block operator K = [[j, s], [h, t]] must be an almost
    complex structure compatible with g (+) gE: K^2 = -id, skew-adjoint,
    and an isometry."""
    K = np.block([[quad.j, quad.s], [quad.h, quad.t]])
    N = K.shape[0]
    G = np.zeros((N, N))
    n = quad.j.shape[0]
    G[:n, :n] = g.gram
    G[n:, n:] = gE.gram
    return make_report(
        [
            ("K-squares-to-minus-id", residual_norm(K @ K, -np.eye(N))),
            ("K-skew", residual_norm(G @ K, -K.T @ G)),
            ("K-isometry", residual_norm(K.T @ G @ K, G)),
        ],
        tol=tol,
    )


# ---------------------------------------------------------------------------
# Gauss / Codazzi / Ricci right-hand sides, assembled over the whole frame.


def _gram_pairs(ops: InducedOperators):
    """Convenience matrices: G, GP with GP[k, j] = <P e_j, e_k>, and the
    normal analogues."""
    G = ops.g.gram
    GE = ops.gE.gram
    GP = G @ ops.P.mat
    GEQ = GE @ ops.Q.mat
    return G, GE, GP, GEQ


def _shape_stack(der: DerivativeData, n: int) -> np.ndarray:
    if der.B.dim_out == 0:
        return np.zeros((0, n, n))
    return np.stack([a.mat for a in der.A])


def _gauss_shape_terms(der: DerivativeData, n: int) -> np.ndarray:
    """A_{B(Y,Z)}X - A_{B(X,Z)}Y over all frame triples."""
    Amats = _shape_stack(der, n)
    Bc = der.B.coeffs
    return np.einsum("jka,ali->ijkl", Bc, Amats) - np.einsum("ika,alj->ijkl", Bc, Amats)


def _ricci_b_terms(der: DerivativeData, n: int) -> np.ndarray:
    """B(A_nu Y, X) - B(A_nu X, Y) over frame pairs and normal frame vectors."""
    Amats = _shape_stack(der, n)
    Bc = der.B.coeffs
    return np.einsum("alj,lib->ijab", Amats, Bc) - np.einsum("ali,ljb->ijab", Amats, Bc)


def product_gauss_rhs(ops: InducedOperators, der: DerivativeData, target: ProductSpaceParams):
    """Right side of the Gauss equation for a product target, as an
    (n, n, n, n) array over frame triples (standard curvature convention)."""
    mp = ops.params
    G, _, _, _ = _gram_pairs(ops)
    n = ops.dim_tangent
    gap = mp.spread
    eye = np.eye(n)
    pi_sigma = ((mp.sigma - mp.p) * eye + ops.P.mat) / gap
    pi_other = (mp.sigma * eye - ops.P.mat) / gap
    out = np.zeros((n, n, n, n))
    for c, pi in ((target.c1, pi_sigma), (target.c2, pi_other)):
        if c == 0.0:
            continue
        Gpi = G @ pi
        out = out + c * (
            np.einsum("kj,li->ijkl", Gpi, pi) - np.einsum("ki,lj->ijkl", Gpi, pi)
        )
    return out + _gauss_shape_terms(der, n)


def product_codazzi_rhs(ops: InducedOperators, der: DerivativeData, target: ProductSpaceParams):
    """Right side of the Codazzi equation for a product target, (n, n, n, m)."""
    mp = ops.params
    G, _, GP, _ = _gram_pairs(ops)
    Q = ops.Q.mat
    gap2 = mp.spread**2
    s = mp.sigma
    base_P = np.einsum("kj,ai->ijka", GP, Q) - np.einsum("ki,aj->ijka", GP, Q)
    base_g = np.einsum("kj,ai->ijka", G, Q) - np.einsum("ki,aj->ijka", G, Q)
    return (
        target.c1 * (base_P + (s - mp.p) * base_g) + target.c2 * (base_P - s * base_g)
    ) / gap2


def product_ricci_rhs(ops: InducedOperators, der: DerivativeData, target: ProductSpaceParams):
    """Right side of the Ricci equation for a product target, (n, n, m, m)."""
    mp = ops.params
    _, _, _, GEQ = _gram_pairs(ops)
    Q = ops.Q.mat
    n = ops.dim_tangent
    coeff = (target.c1 + target.c2) / mp.spread**2
    qq = np.einsum("aj,bi->ijab", GEQ, Q) - np.einsum("ai,bj->ijab", GEQ, Q)
    return coeff * qq + _ricci_b_terms(der, n)


def eight_gauss_rhs(
    eight: EightOperators, der: DerivativeData, target: ProductSpaceParams, g: Metric
):
    """Gauss right side in the eight-operator form: sum_i c_i [<f Y, Z> f X -
    <f X, Z> f Y] + shape terms, pairing c1 with (f2, h2) and c2 with (f1, h1)."""
    n = eight.f1.shape[0]
    out = np.zeros((n, n, n, n))
    for c, f in ((target.c1, eight.f2), (target.c2, eight.f1)):
        if c == 0.0:
            continue
        Gf = g.gram @ f
        out = out + c * (np.einsum("kj,li->ijkl", Gf, f) - np.einsum("ki,lj->ijkl", Gf, f))
    return out + _gauss_shape_terms(der, n)


def eight_codazzi_rhs(
    eight: EightOperators, der: DerivativeData, target: ProductSpaceParams, g: Metric
):
    """Codazzi right side in the eight-operator form: sum_i c_i [<f Y, Z> h X -
    <f X, Z> h Y], same pairing as eight_gauss_rhs."""
    n = eight.f1.shape[0]
    m = der.B.dim_out
    out = np.zeros((n, n, n, m))
    for c, f, h in ((target.c1, eight.f2, eight.h2), (target.c2, eight.f1, eight.h1)):
        if c == 0.0:
            continue
        Gf = g.gram @ f
        out = out + c * (np.einsum("kj,ai->ijka", Gf, h) - np.einsum("ki,aj->ijka", Gf, h))
    return out


def eight_ricci_rhs(
    eight: EightOperators, der: DerivativeData, target: ProductSpaceParams, gE: Metric
):
    """Ricci right side in the eight-operator form: sum_i c_i [<h Y, nu> h X -
    <h X, nu> h Y] + B-commutator terms."""
    n = eight.f1.shape[0]
    m = der.B.dim_out
    out = np.zeros((n, n, m, m))
    for c, h in ((target.c1, eight.h2), (target.c2, eight.h1)):
        if c == 0.0:
            continue
        GEh = gE.gram @ h
        out = out + c * (np.einsum("aj,bi->ijab", GEh, h) - np.einsum("ai,bj->ijab", GEh, h))
    return out + _ricci_b_terms(der, n)


def csf_gauss_rhs(
    ops: InducedOperators, der: DerivativeData, target: ComplexSpaceFormParams
):
    """Right side of the Gauss equation for a complex space form target."""
    cms = ops.params
    G, _, GP, _ = _gram_pairs(ops)
    P = ops.P.mat
    n = ops.dim_tangent
    eye = np.eye(n)
    c = target.c
    a, d2 = cms.a, cms.delta**2

    def wedge(M, N):
        # <M e_j, e_k> N e_i antisymmetrized in (i, j); M is a Gram-pair, N an operator.
        return np.einsum("kj,li->ijkl", M, N) - np.einsum("ki,lj->ijkl", M, N)

    out = (
        c * (1.0 + a * a / d2) * wedge(G, eye)
        + (2.0 * a * c / d2) * wedge(G, P)
        + (2.0 * a * c / d2) * wedge(GP, eye)
        + (4.0 * c / d2) * wedge(GP, P)
        # the <X, Y> Z and <X, P Y> Z style terms (not antisymmetrized by hand;
        # their symmetric parts cancel through the skewed compatibility of P)
        + (2.0 * c * a * a / d2) * np.einsum("ji,lk->ijkl", G, eye)
        + (4.0 * a * c / d2)
        * (np.einsum("ji,lk->ijkl", G, P) + np.einsum("ij,lk->ijkl", GP, eye))
        + (8.0 * c / d2) * np.einsum("ij,lk->ijkl", GP, P)
    )
    return out + _gauss_shape_terms(der, n)


def csf_codazzi_rhs(
    ops: InducedOperators, der: DerivativeData, target: ComplexSpaceFormParams
):
    """Right side of the Codazzi equation for a complex space form target."""
    cms = ops.params
    G, _, GP, _ = _gram_pairs(ops)
    Q = ops.Q.mat
    c = target.c
    a, d2 = cms.a, cms.delta**2
    return (
        (2.0 * a * c / d2)
        * (np.einsum("kj,ai->ijka", G, Q) - np.einsum("ki,aj->ijka", G, Q))
        + (4.0 * c / d2)
        * (np.einsum("kj,ai->ijka", GP, Q) - np.einsum("ki,aj->ijka", GP, Q))
        + (4.0 * a * c / d2) * np.einsum("ji,ak->ijka", G, Q)
        + (8.0 * c / d2) * np.einsum("ij,ak->ijka", GP, Q)
    )


def csf_ricci_rhs(
    ops: InducedOperators, der: DerivativeData, target: ComplexSpaceFormParams
):
    """Right side of the Ricci equation for a complex space form target."""
    cms = ops.params
    G, _, GP, GEQ = _gram_pairs(ops)
    Q, S = ops.Q.mat, ops.S.mat
    n, m = ops.dim_tangent, ops.dim_normal
    eyeE = np.eye(m)
    c = target.c
    a, d2 = cms.a, cms.delta**2
    out = (
        (4.0 * c / d2)
        * (np.einsum("aj,bi->ijab", GEQ, Q) - np.einsum("ai,bj->ijab", GEQ, Q))
        + (2.0 * c * a * a / d2) * np.einsum("ij,ba->ijab", G, eyeE)
        + (4.0 * a * c / d2)
        * (np.einsum("ij,ba->ijab", G, S) + np.einsum("ij,ba->ijab", GP, eyeE))
        + (8.0 * c / d2) * np.einsum("ij,ba->ijab", GP, S)
    )
    return out + _ricci_b_terms(der, n)


def gauss_residual(record: PointRecord) -> float:
    lhs = record.R_tm.as_standard().coeffs
    if isinstance(record.target, ProductSpaceParams):
        rhs = product_gauss_rhs(record.ops, record.der, record.target)
    else:
        rhs = csf_gauss_rhs(record.ops, record.der, record.target)
    return residual_norm(lhs, rhs)


def codazzi_residual(record: PointRecord) -> float:
    lhs = record.der.nablaB - record.der.nablaB.transpose(1, 0, 2, 3)
    if isinstance(record.target, ProductSpaceParams):
        rhs = product_codazzi_rhs(record.ops, record.der, record.target)
    else:
        rhs = csf_codazzi_rhs(record.ops, record.der, record.target)
    return residual_norm(lhs, rhs)


def ricci_residual(record: PointRecord) -> float:
    lhs = record.der.RE
    if isinstance(record.target, ProductSpaceParams):
        rhs = product_ricci_rhs(record.ops, record.der, record.target)
    else:
        rhs = csf_ricci_rhs(record.ops, record.der, record.target)
    return residual_norm(lhs, rhs)


def rank_conditions(
    ops: InducedOperators, target: ProductSpaceParams, tol: float = 1e-6
) -> ResidualReport:
    """Rank conditions for a product target.

    On TM (+) E form K = [[P, R], [Q, S]]; the sigma-eigenspace combination
    ((sigma - p) id + K)/(2 sigma - p) must have rank n1 (factor 1) and the
    complementary (sigma id - K)/(2 sigma - p) rank n2.
    """
    if not ops.is_metallic:
        raise ValueError("rank conditions apply to metallic scalars")
    mp = ops.params
    K = ops.block_matrix()
    N = K.shape[0]
    eye = np.eye(N)
    gap = mp.spread
    combined = Metric.euclidean(N)
    m_sigma = OperatorBlock.square(((mp.sigma - mp.p) * eye + K) / gap, combined)
    m_other = OperatorBlock.square((mp.sigma * eye - K) / gap, combined)
    return make_report(
        [
            ("rank-sigma-factor", float(abs(rank_with_tol(m_sigma, tol) - target.n1))),
            ("rank-other-factor", float(abs(rank_with_tol(m_other, tol) - target.n2))),
        ],
        tol=0.5,
    )


def full_verdict(record: PointRecord, tol: float = DEFAULT_TOL) -> ResidualReport:
    """Every compatibility condition of the record against its target, merged
    into a single report.  Pass means the data is (pointwise) the data of an
    isometric immersion into the target model space."""
    entries = [
        ("dimension", float(abs(record.ambient_dim - record.expected_ambient_dim)))
    ]
    report = make_report(entries, tol=tol)
    report = report.merged(check_algebraic_relations(record.ops, tol), prefix="alg:")
    if not record.ops.is_metallic:
        report = report.merged(check_complex_corollary(record.ops, tol), prefix="cor:")
    report = report.merged(check_derivative_relations(record.ops, record.der, tol), prefix="der:")
    if isinstance(record.target, ProductSpaceParams):
        report = report.merged(rank_conditions(record.ops, record.target), prefix="")
    report = report.merged(
        make_report(
            [
                ("gauss", gauss_residual(record)),
                ("codazzi", codazzi_residual(record)),
                ("ricci", ricci_residual(record)),
            ],
            tol=tol,
        )
    )
    return report
