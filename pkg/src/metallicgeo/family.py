"""One-parameter families of surface immersion data.

For a two-dimensional record carrying a compatible tangent rotation
generator Jt (Jt^2 = -id, skew isometry), the circle acts on the data by
R_theta = cos(theta) id + sin(theta) Jt: the structure blocks are
conjugated by diag(R_theta, id) and the second fundamental form is
composed with R_theta^{-1} in one slot.  When the base record passes the
full compatibility verdict and B is trace-free, every deformed record
passes as well — the sweep makes that a checkable statement.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .compat import PointRecord, full_verdict
from .linalg import (
    DEFAULT_TOL,
    BilinearForm,
    OperatorBlock,
    ShapeMismatchError,
    residual_norm,
)
from .report import ResidualReport, make_report
from .submanifold import DerivativeData, InducedOperators

_PRECONDITION_TOL = 1e-9


@dataclass(frozen=True)
class SurfaceRecord:
    """A two-dimensional point record plus its rotation generator Jt."""

    record: PointRecord
    Jt: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "Jt", np.asarray(self.Jt, dtype=float))
        n = self.record.ops.dim_tangent
        if n != 2:
            raise ShapeMismatchError("family deformation needs a 2-dimensional tangent space")
        if self.Jt.shape != (2, 2):
            raise ShapeMismatchError("Jt must be a 2x2 matrix")
        g = self.record.g.gram
        if residual_norm(self.Jt @ self.Jt, -np.eye(2)) > _PRECONDITION_TOL:
            raise ValueError("Jt must square to -id")
        if residual_norm(g @ self.Jt, -self.Jt.T @ g) > _PRECONDITION_TOL:
            raise ValueError("Jt must be skew-adjoint for g")
        trace = self.record.der.B.trace(self.record.g)
        scale = max(1.0, float(np.abs(self.record.der.B.coeffs).max()))
        if float(np.linalg.norm(trace)) > _PRECONDITION_TOL * scale:
            raise ValueError("the second fundamental form must be trace-free")


def rotation_operator(theta: float, Jt) -> np.ndarray:
    """R_theta = cos(theta) id + sin(theta) Jt."""
    Jt = np.asarray(Jt, dtype=float)
    return math.cos(theta) * np.eye(Jt.shape[0]) + math.sin(theta) * Jt


def deform(base: SurfaceRecord, theta: float) -> SurfaceRecord:
    """The theta-deformed record.

    Blocks transform by conjugation with diag(R_theta, id); the second
    fundamental form and its derivative compose with R_theta^{-1} in their
    last vector slot; shape operators pick up a left factor R_theta; the
    intrinsic curvature, normal curvature and target are untouched.
    """
    rec = base.record
    R = rotation_operator(theta, base.Jt)
    Rinv = rotation_operator(-theta, base.Jt)
    ops, der = rec.ops, rec.der
    g, gE = rec.g, rec.gE
    new_ops = InducedOperators(
        P=OperatorBlock.square(R @ ops.P.mat @ Rinv, g),
        Q=OperatorBlock(ops.Q.mat @ Rinv, g, gE),
        R=OperatorBlock(R @ ops.R.mat, gE, g),
        S=ops.S,
        params=ops.params,
    )
    B_theta = np.einsum("lj,ila->ija", Rinv, der.B.coeffs)
    new_der = DerivativeData(
        nablaP=np.einsum("lm,kj,ikm->ijl", R, Rinv, der.nablaP),
        nablaQ=np.einsum("kj,ika->ija", Rinv, der.nablaQ),
        nablaR=np.einsum("lm,iam->ial", R, der.nablaR),
        nablaS=der.nablaS,
        B=BilinearForm(B_theta),
        nablaB=np.einsum("lk,ijla->ijka", Rinv, der.nablaB),
        A=tuple(OperatorBlock.square(R @ a.mat, g) for a in der.A),
        RE=der.RE,
    )
    new_record = PointRecord(ops=new_ops, der=new_der, R_tm=rec.R_tm, target=rec.target)
    return SurfaceRecord(record=new_record, Jt=base.Jt)


def torus_base(c1: float, c2: float, mp) -> SurfaceRecord:
    """The flat 2-torus base point: the product of two circles inside
    M^2(c1) x M^2(c2), with the standard rotation generator."""
    from .examples import build_sphere_product

    record = build_sphere_product(1, 1, c1, c2, mp)
    return SurfaceRecord(record=record, Jt=np.array([[0.0, -1.0], [1.0, 0.0]]))


DEFAULT_THETA_COUNT = 24


def sweep_angles(count: int = DEFAULT_THETA_COUNT) -> np.ndarray:
    """count evenly spaced angles on [0, 2 pi)."""
    if count < 1:
        raise ValueError("need at least one angle")
    return np.linspace(0.0, 2.0 * math.pi, count, endpoint=False)


def verify_family(
    base: SurfaceRecord, thetas=None, tol: float = DEFAULT_TOL
) -> ResidualReport:
    """Full compatibility verdict at every angle of the sweep.

    One entry per angle carries the worst residual of that deformed
    record's full verdict; the final "continuity" entry is the largest
    jump of that worst residual between adjacent angles (a sanity check
    that the family varies tamely, not a geometric identity).
    """
    if thetas is None:
        thetas = sweep_angles()
    thetas = np.asarray(thetas, dtype=float)
    entries = []
    maxima = []
    for theta in thetas:
        report = full_verdict(deform(base, float(theta)).record, tol=tol)
        maxima.append(report.max_residual)
        entries.append((f"theta={theta:.6f}", report.max_residual))
    continuity = 0.0
    for prev, cur in zip(maxima, maxima[1:]):
        continuity = max(continuity, abs(cur - prev))
    entries.append(("continuity", continuity))
    return make_report(entries, tol=tol)
