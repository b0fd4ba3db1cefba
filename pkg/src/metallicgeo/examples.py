"""Concrete data generators: built-in immersions, random instances, and a
finite-difference curvature oracle.

Built-ins (all exact, closed-form, full-verdict-passing):

* build_sphere_product      — a product of space forms sitting totally
  geodesically inside the one-dimension-bigger product, codimension 2;
* build_sphere_product_hypersurface — a product of space forms as a
  hypersurface of M^{n1}(c1) x R^{n2+1};
* build_ekt_immersion       — the homogeneous 3-manifold E(kappa, tau) as a
  hypersurface of a complex space form, carrying the induced
  complex-metallic data.

Random generators produce structure data in general position (random
orthogonal conjugations and random splitting frames) for property tests.

The finite-difference oracle derives metric, connection and curvature of a
chart by differentiation only: complex-step for the chart Jacobian (exact
to machine precision) and central differences for the two derivative
levels.
"""
from __future__ import annotations

import os

import numpy as np

from .linalg import BilinearForm, CurvatureTensor, Metric, OperatorBlock
from .modelspaces import (
    ComplexSpaceFormParams,
    EktParams,
    ProductSpaceParams,
    canonical_sasakian,
    ekt_christoffel,
    ekt_curvature_standard,
)
from .compat import PointRecord
from .structures import ComplexMetallicParams, MetallicParams
from .submanifold import DerivativeData, HypersurfaceData, InducedOperators


# ---------------------------------------------------------------------------
# Built-in records.


def build_sphere_product(
    n1: int, n2: int, c1: float, c2: float, mp: MetallicParams
) -> PointRecord:
    """M^{n1}(c1) x M^{n2}(c2), totally geodesic in M^{n1+1}(c1) x M^{n2+1}(c2).

    In an adapted orthonormal frame the structure acts by sigma on the first
    factor and p - sigma on the second, on tangent and normal directions
    alike: P = diag(sigma I_{n1}, (p - sigma) I_{n2}), S = diag(sigma,
    p - sigma), Q = R = 0, B = 0, and the intrinsic curvature is the product
    curvature of the two factors.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("both factor dimensions must be at least 1")
    n = n1 + n2
    m = 2
    g, gE = Metric.euclidean(n), Metric.euclidean(m)
    s, other = mp.sigma, mp.p - mp.sigma
    P = np.diag([s] * n1 + [other] * n2)
    S = np.diag([s, other])
    ops = InducedOperators(
        P=OperatorBlock.square(P, g),
        Q=OperatorBlock(np.zeros((m, n)), g, gE),
        R=OperatorBlock(np.zeros((n, m)), gE, g),
        S=OperatorBlock.square(S, gE),
        params=mp,
    )
    der = DerivativeData.zero(g, gE)
    R_tm = _product_curvature_tensor(n1, n2, c1, c2)
    target = ProductSpaceParams(n1 + 1, n2 + 1, c1, c2)
    return PointRecord(ops=ops, der=der, R_tm=R_tm, target=target)


def _product_curvature_tensor(n1: int, n2: int, c1: float, c2: float) -> CurvatureTensor:
    """Curvature of M^{n1}(c1) x M^{n2}(c2) in an adapted orthonormal frame."""
    n = n1 + n2
    pi1 = np.diag([1.0] * n1 + [0.0] * n2)
    pi2 = np.eye(n) - pi1
    coeffs = np.zeros((n, n, n, n))
    for c, pi in ((c1, pi1), (c2, pi2)):
        if c == 0.0:
            continue
        coeffs += c * (np.einsum("kj,li->ijkl", pi, pi) - np.einsum("ki,lj->ijkl", pi, pi))
    return CurvatureTensor(coeffs)


def build_sphere_product_hypersurface(n1: int, n2: int, c1: float, c2: float, mp: MetallicParams):
    """M^{n1}(c1) x M^{n2}(c2) as a hypersurface of M^{n1}(c1) x R^{n2+1}.

    The second factor is a sphere of curvature c2 > 0 in the flat factor;
    the shape operator is sqrt(c2) on the second-factor directions and 0 on
    the first, which in structure terms reads A = sqrt(c2) (sigma id - P) /
    (2 sigma - p).  Returns (hypersurface data, point record); the record's
    target is the product with a flat second factor.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("both factor dimensions must be at least 1")
    if c2 <= 0:
        raise ValueError("the second factor must be a sphere (c2 > 0)")
    n = n1 + n2
    g, gE = Metric.euclidean(n), Metric.euclidean(1)
    s, other = mp.sigma, mp.p - mp.sigma
    P = np.diag([s] * n1 + [other] * n2)
    A = np.sqrt(c2) * (s * np.eye(n) - P) / mp.spread
    ops = InducedOperators(
        P=OperatorBlock.square(P, g),
        Q=OperatorBlock(np.zeros((1, n)), g, gE),
        R=OperatorBlock(np.zeros((n, 1)), gE, g),
        S=OperatorBlock.square(np.array([[other]]), gE),
        params=mp,
    )
    B = BilinearForm(A[:, :, None] * 1.0)  # B(e_i, e_j) = <A e_i, e_j> nu
    der = DerivativeData(
        nablaP=np.zeros((n, n, n)),
        nablaQ=np.zeros((n, n, 1)),
        nablaR=np.zeros((n, 1, n)),
        nablaS=np.zeros((n, 1, 1)),
        B=B,
        nablaB=np.zeros((n, n, n, 1)),
        A=(OperatorBlock.square(A, g),),
        RE=np.zeros((n, n, 1, 1)),
    )
    R_tm = _product_curvature_tensor(n1, n2, c1, c2)
    record = PointRecord(
        ops=ops, der=der, R_tm=R_tm, target=ProductSpaceParams(n1, n2 + 1, c1, 0.0)
    )
    hyp = HypersurfaceData(
        P=ops.P,
        V=np.zeros(n),
        f=other,
        A=der.A[0],
        nablaP=np.zeros((n, n, n)),
        nablaV=np.zeros((n, n)),
        df=np.zeros(n),
        params=mp,
    )
    return hyp, record


# Frame-level covariant derivatives for constant-coefficient data in a frame
# with connection coefficients Gamma[i, j, k] = <nabla_{e_i} e_j, e_k> and a
# flat normal connection.


def frame_nabla_operator(Gamma: np.ndarray, T: np.ndarray) -> np.ndarray:
    """nablaT[i, j, :] = (nabla_{e_i} T)(e_j) for T: TM -> TM."""
    return np.einsum("ikl,kj->ijl", Gamma, T) - np.einsum("ijk,lk->ijl", Gamma, T)


def frame_nabla_vector(Gamma: np.ndarray, V: np.ndarray) -> np.ndarray:
    """nablaV[i, :] = nabla_{e_i} V."""
    return np.einsum("ikl,k->il", Gamma, V)


def frame_nabla_to_normal(Gamma: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """nablaQ[i, j, :] = (nabla^perp_{e_i} Q)(e_j) for Q: TM -> E, flat E."""
    return -np.einsum("ijk,ak->ija", Gamma, Q)


def frame_nabla_from_normal(Gamma: np.ndarray, R: np.ndarray) -> np.ndarray:
    """nablaR[i, a, :] = (nabla_{e_i} R)(nu_a) for R: E -> TM, flat E."""
    return np.einsum("ikl,ka->ial", Gamma, R)


def frame_nabla_bilinear(Gamma: np.ndarray, B: np.ndarray) -> np.ndarray:
    """nablaB[i, j, k, :] = (nabla_{e_i} B)(e_j, e_k), flat E."""
    return -np.einsum("ijl,lka->ijka", Gamma, B) - np.einsum("ikl,jla->ijka", Gamma, B)


def build_ekt_immersion(kappa: float, tau: float, a: float, b: float):
    """E(kappa, tau) as a hypersurface of a complex space form.

    In the canonical orthonormal frame {e1, e2, xi} the induced
    complex-metallic data is P = (delta/2) phi - (a/2) id, V = (delta/2) xi,
    f = -a/2, with shape operator A = diag(tau, tau, 2 tau - kappa/(4 tau)).
    The ambient target has complex dimension 2 and holomorphic sectional
    curvature parameter (kappa - 4 tau^2)/4.  At kappa = 4 tau^2 the target
    is flat (c = 0), the space is the round sphere of curvature tau^2, the
    shape operator degenerates to tau id, and both Codazzi sides vanish.

    Returns (hypersurface data, point record).
    """
    params = EktParams(kappa, tau)
    cms = ComplexMetallicParams(a, b)
    n = 3
    g, gE = Metric.euclidean(n), Metric.euclidean(1)
    delta = cms.delta
    phi = canonical_sasakian(params).mat
    P = (delta / 2.0) * phi - (a / 2.0) * np.eye(n)
    V = (delta / 2.0) * np.array([0.0, 0.0, 1.0])
    f = -a / 2.0
    A = np.diag([tau, tau, 2.0 * tau - kappa / (4.0 * tau)])
    Gamma = ekt_christoffel(params)
    Q = -V[None, :]
    R = V[:, None]
    S = np.array([[f]])
    Bmat = A  # orthonormal frame: B(e_i, e_j) = <A e_i, e_j> nu
    ops = InducedOperators(
        P=OperatorBlock.square(P, g),
        Q=OperatorBlock(Q, g, gE),
        R=OperatorBlock(R, gE, g),
        S=OperatorBlock.square(S, gE),
        params=cms,
    )
    der = DerivativeData(
        nablaP=frame_nabla_operator(Gamma, P),
        nablaQ=frame_nabla_to_normal(Gamma, Q),
        nablaR=frame_nabla_from_normal(Gamma, R),
        nablaS=np.zeros((n, 1, 1)),
        B=BilinearForm(Bmat[:, :, None] * 1.0),
        nablaB=frame_nabla_bilinear(Gamma, Bmat[:, :, None]),
        A=(OperatorBlock.square(A, g),),
        RE=np.zeros((n, n, 1, 1)),
    )
    record = PointRecord(
        ops=ops,
        der=der,
        R_tm=ekt_curvature_standard(params),
        target=ComplexSpaceFormParams(2, (kappa - 4.0 * tau * tau) / 4.0),
    )
    hyp = HypersurfaceData(
        P=ops.P,
        V=V,
        f=f,
        A=der.A[0],
        nablaP=der.nablaP,
        nablaV=frame_nabla_vector(Gamma, V).T,
        df=np.zeros(n),
        params=cms,
    )
    return hyp, record


# ---------------------------------------------------------------------------
# Random instances in general position.

SEED_ENV_VAR = "METALLIC_GEO_SEED"


def env_seed(default: int = 0) -> int:
    """The base seed for all random generation; overridden by the
    METALLIC_GEO_SEED environment variable."""
    return int(os.environ.get(SEED_ENV_VAR, default))


def _resolve_seed(seed) -> int:
    return env_seed() if seed is None else int(seed)


def _random_orthogonal(rng: np.random.Generator, dim: int) -> np.ndarray:
    mat, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return mat * np.sign(np.diag(r))


def _block_rotation(dim: int) -> np.ndarray:
    """The standard complex structure diag([[0,-1],[1,0]], ...) (dim even)."""
    if dim % 2:
        raise ValueError("need an even dimension for a complex structure")
    J = np.zeros((dim, dim))
    for k in range(0, dim, 2):
        J[k, k + 1] = -1.0
        J[k + 1, k] = 1.0
    return J


def random_metallic_instance(
    n: int, m: int, mp: MetallicParams, seed: int | None = None
) -> InducedOperators:
    """Blocks of a random metallic structure along a random orthogonal split.

    The ambient structure is built from a random symmetric involution (so it
    is exactly metallic and compatible with the Euclidean metric); the
    splitting frame is an independent random orthogonal matrix, so Q and R
    are generically nonzero.
    """
    rng = np.random.default_rng(_resolve_seed(seed))
    dim = n + m
    O = _random_orthogonal(rng, dim)
    signs = rng.integers(0, 2, size=dim) * 2.0 - 1.0
    if np.all(signs == signs[0]):
        signs[0] = -signs[0]
    F = (O * signs) @ O.T
    J = (mp.p / 2.0) * np.eye(dim) + (mp.spread / 2.0) * F
    return _split_euclidean(J, n, m, mp, rng)


def random_cms_instance(
    n: int, m: int, cms: ComplexMetallicParams, seed: int | None = None
) -> InducedOperators:
    """Blocks of a random complex-metallic structure along a random split.

    n + m must be even.  The ambient structure is -(a/2) id + (delta/2) Jc
    with Jc a random orthogonal complex structure.
    """
    if (n + m) % 2:
        raise ValueError("n + m must be even for a complex-metallic ambient")
    rng = np.random.default_rng(_resolve_seed(seed))
    dim = n + m
    O = _random_orthogonal(rng, dim)
    Jc = O @ _block_rotation(dim) @ O.T
    J = -(cms.a / 2.0) * np.eye(dim) + (cms.delta / 2.0) * Jc
    return _split_euclidean(J, n, m, cms, rng)


def _split_euclidean(J: np.ndarray, n: int, m: int, params, rng) -> InducedOperators:
    C = _random_orthogonal(rng, n + m)
    g, gE = Metric.euclidean(n), Metric.euclidean(m)
    blocks = C.T @ J @ C
    return InducedOperators(
        P=OperatorBlock.square(blocks[:n, :n], g),
        Q=OperatorBlock(blocks[n:, :n], g, gE),
        R=OperatorBlock(blocks[:n, n:], gE, g),
        S=OperatorBlock.square(blocks[n:, n:], gE),
        params=params,
    )


def random_hypersurface_normal_image(
    n: int, mp: MetallicParams, seed: int | None = None
) -> HypersurfaceData:
    """Random hypersurface data in the case where the structure maps the
    tangent field V into the normal bundle.

    V is a random direction scaled to |V|^2 = q; P annihilates V and has
    metallic spectrum {sigma, p - sigma} on its orthogonal complement;
    A is a random self-adjoint operator annihilating V; the derivative
    arrays are filled in from the hypersurface relations, so the returned
    data passes check_hypersurface_relations exactly and feeds the shape
    operator recovery.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    rng = np.random.default_rng(_resolve_seed(seed))
    g = Metric.euclidean(n)
    u = rng.standard_normal(n)
    u = u / np.linalg.norm(u)
    V = np.sqrt(mp.q) * u
    W = rng.standard_normal((n, n - 1))
    W = W - np.outer(u, u @ W)
    W, _ = np.linalg.qr(W)
    eigs = np.where(rng.integers(0, 2, size=n - 1) == 1, mp.sigma, mp.p - mp.sigma)
    P = (W * eigs) @ W.T
    raw = rng.standard_normal((n, n))
    sym = (raw + raw.T) / 2.0
    proj = np.eye(n) - np.outer(u, u)
    A = proj @ sym @ proj
    f = mp.p
    nablaV = -P @ A + f * A
    gV = g.gram @ V
    nablaP = np.einsum("j,li->ijl", gV, A) + np.einsum("ji,l->ijl", g.gram @ A, V)
    return HypersurfaceData(
        P=OperatorBlock.square(P, g),
        V=V,
        f=f,
        A=OperatorBlock.square(A, g),
        nablaP=nablaP,
        nablaV=nablaV,
        df=-2.0 * (g.gram @ (A @ V)),
        params=mp,
    )


def random_hypersurface_tangent_image(
    n: int, mp: MetallicParams, seed: int | None = None
) -> HypersurfaceData:
    """Random hypersurface data in the case where the structure maps the
    unit normal into the tangent bundle.

    V satisfies P(V) = pV and |V|^2 = q, f = 0, and nabla V = -P(A .);
    the returned data feeds the tangent-image shape operator recovery.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    rng = np.random.default_rng(_resolve_seed(seed))
    g = Metric.euclidean(n)
    u = rng.standard_normal(n)
    u = u / np.linalg.norm(u)
    V = np.sqrt(mp.q) * u
    W = rng.standard_normal((n, n - 1))
    W = W - np.outer(u, u @ W)
    W, _ = np.linalg.qr(W)
    eigs = np.where(rng.integers(0, 2, size=n - 1) == 1, mp.sigma, mp.p - mp.sigma)
    P = mp.p * np.outer(u, u) + (W * eigs) @ W.T
    raw = rng.standard_normal((n, n))
    sym = (raw + raw.T) / 2.0
    proj = np.eye(n) - np.outer(u, u)
    A = proj @ sym @ proj
    f = 0.0
    nablaV = -P @ A
    gV = g.gram @ V
    nablaP = np.einsum("j,li->ijl", gV, A) + np.einsum("ji,l->ijl", g.gram @ A, V)
    return HypersurfaceData(
        P=OperatorBlock.square(P, g),
        V=V,
        f=f,
        A=OperatorBlock.square(A, g),
        nablaP=nablaP,
        nablaV=nablaV,
        df=-2.0 * (g.gram @ (A @ V)),
        params=mp,
    )


def random_invariant_instance(
    n: int, m: int, cms: ComplexMetallicParams, seed: int | None = None
):
    """Random invariant-submanifold data: Q = R = 0, P and S complex-metallic
    on TM and E, and a random second fundamental form satisfying the
    intertwining S(B(X,Y)) = B(X, PY) (built by projecting a random tensor
    onto the constraint null space).

    Returns (operators, B).  n and m must be even.
    """
    if n % 2 or m % 2:
        raise ValueError("tangent and normal dimensions must both be even")
    rng = np.random.default_rng(_resolve_seed(seed))
    g, gE = Metric.euclidean(n), Metric.euclidean(m)
    OT = _random_orthogonal(rng, n)
    OE = _random_orthogonal(rng, m)
    P = -(cms.a / 2.0) * np.eye(n) + (cms.delta / 2.0) * (OT @ _block_rotation(n) @ OT.T)
    S = -(cms.a / 2.0) * np.eye(m) + (cms.delta / 2.0) * (OE @ _block_rotation(m) @ OE.T)
    ops = InducedOperators(
        P=OperatorBlock.square(P, g),
        Q=OperatorBlock(np.zeros((m, n)), g, gE),
        R=OperatorBlock(np.zeros((n, m)), gE, g),
        S=OperatorBlock.square(S, gE),
        params=cms,
    )
    B = _random_intertwined_form(P, S, rng)
    return ops, B


def _random_intertwined_form(P: np.ndarray, S: np.ndarray, rng) -> BilinearForm:
    """A random B with B(X,Y) = B(Y,X) and S(B(X,Y)) = B(X,PY), via the null
    space of the stacked linear constraints."""
    n, m = P.shape[0], S.shape[0]
    size = n * n * m

    def idx(i, j, a):
        return (i * n + j) * m + a

    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for a in range(m):
                row = np.zeros(size)
                row[idx(i, j, a)] = 1.0
                row[idx(j, i, a)] = -1.0
                rows.append(row)
    for i in range(n):
        for j in range(n):
            for a in range(m):
                row = np.zeros(size)
                for b in range(m):
                    row[idx(i, j, b)] += S[a, b]
                for k in range(n):
                    row[idx(i, k, a)] -= P[k, j]
                rows.append(row)
    M = np.vstack(rows)
    _, sv, vt = np.linalg.svd(M)
    tol = max(M.shape) * np.finfo(float).eps * (sv[0] if sv.size else 1.0)
    null = vt[np.sum(sv > tol):]
    if null.shape[0] == 0:
        raise ValueError("the intertwining constraints admit only B = 0")
    coeffs = null.T @ rng.standard_normal(null.shape[0])
    B = coeffs.reshape(n, n, m)
    B = (B + B.transpose(1, 0, 2)) / 2.0  # kill numerical asymmetry
    norm = np.linalg.norm(B)
    if norm > 0:
        B = B / norm
    return BilinearForm(B)


# ---------------------------------------------------------------------------
# Finite-difference curvature oracle.


def chart_sphere(radius: float, dim: int):
    """Hyperspherical angle chart of S^dim(radius) in R^{dim+1}.

    The returned callable accepts real or complex angle arrays (so it can be
    differentiated by the complex-step method).
    """

    def chart(u):
        u = np.asarray(u)
        if u.shape != (dim,):
            raise ValueError(f"chart expects {dim} angles")
        x = np.empty(dim + 1, dtype=u.dtype if np.iscomplexobj(u) else float)
        prod = radius
        for k in range(dim):
            x[k] = prod * np.cos(u[k])
            prod = prod * np.sin(u[k])
        x[dim] = prod
        return x

    return chart


def chart_sphere_product(r1: float, n1: int, r2: float, n2: int):
    """Product chart of S^{n1}(r1) x S^{n2}(r2) in R^{n1+1} x R^{n2+1}; the
    first n1 coordinates parametrize the first factor."""
    c1, c2 = chart_sphere(r1, n1), chart_sphere(r2, n2)

    def chart(u):
        u = np.asarray(u)
        return np.concatenate([c1(u[:n1]), c2(u[n1:])])

    return chart


def fd_metric(chart, point) -> np.ndarray:
    """Pullback metric of a chart into Euclidean space via the complex-step
    Jacobian (exact to machine precision)."""
    point = np.asarray(point, dtype=float)
    d = point.shape[0]
    h = 1e-30
    cols = []
    for k in range(d):
        u = point.astype(complex)
        u[k] += 1j * h
        cols.append(np.imag(chart(u)) / h)
    Jc = np.column_stack(cols)
    return Jc.T @ Jc


def fd_christoffel(chart, point, h: float = 1e-5) -> np.ndarray:
    """Coordinate Christoffel symbols Gamma[i, j, l] = Gamma^l_{ij}, from
    central differences of the (exact) pullback metric."""
    point = np.asarray(point, dtype=float)
    d = point.shape[0]
    g = fd_metric(chart, point)
    ginv = np.linalg.inv(g)
    dg = np.empty((d, d, d))
    for k in range(d):
        up, dn = point.copy(), point.copy()
        up[k] += h
        dn[k] -= h
        dg[k] = (fd_metric(chart, up) - fd_metric(chart, dn)) / (2.0 * h)
    # Gamma^l_{ij} = 1/2 g^{lm} (d_i g_mj + d_j g_mi - d_m g_ij)
    brackets = (
        np.einsum("imj->ijm", dg) + np.einsum("jmi->ijm", dg) - np.einsum("mij->ijm", dg)
    )
    return 0.5 * np.einsum("lm,ijm->ijl", ginv, brackets)


def fd_curvature(chart, point, h: float = 3e-4) -> CurvatureTensor:
    """Coordinate curvature tensor from central differences of the
    Christoffel symbols (standard sign convention)."""
    point = np.asarray(point, dtype=float)
    d = point.shape[0]
    Gamma = fd_christoffel(chart, point)
    dG = np.empty((d, d, d, d))
    for k in range(d):
        up, dn = point.copy(), point.copy()
        up[k] += h
        dn[k] -= h
        dG[k] = (fd_christoffel(chart, up) - fd_christoffel(chart, dn)) / (2.0 * h)
    # R(d_i, d_j) d_k = (d_i Gamma^l_jk - d_j Gamma^l_ik
    #                    + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik) d_l
    coeffs = dG - np.einsum("jikl->ijkl", dG)
    coeffs = coeffs + np.einsum("iml,jkm->ijkl", Gamma, Gamma) - np.einsum(
        "jml,ikm->ijkl", Gamma, Gamma
    )
    coeffs = (coeffs - coeffs.transpose(1, 0, 2, 3)) / 2.0
    return CurvatureTensor(coeffs)
