import numpy as np
import pytest

from metallicgeo.compat import PointRecord, full_verdict
from metallicgeo.examples import build_sphere_product_hypersurface
from metallicgeo.family import (
    SurfaceRecord,
    deform,
    rotation_operator,
    sweep_angles,
    torus_base,
    verify_family,
)
from metallicgeo.linalg import BilinearForm, OperatorBlock
from metallicgeo.structures import MetallicParams
from metallicgeo.submanifold import DerivativeData

GOLDEN = MetallicParams(1.0, 1.0)
JT = np.array([[0.0, -1.0], [1.0, 0.0]])


def _trace_free_base() -> SurfaceRecord:
    """Torus operators with a nonzero trace-free second fundamental form."""
    base = torus_base(1.0, 0.25, GOLDEN)
    rec = base.record
    n, m = 2, 2
    Bc = np.zeros((n, n, m))
    Bc[:, :, 0] = [[0.3, 0.1], [0.1, -0.3]]
    Bc[:, :, 1] = [[-0.2, 0.5], [0.5, 0.2]]
    der = DerivativeData(
        nablaP=rec.der.nablaP,
        nablaQ=rec.der.nablaQ,
        nablaR=rec.der.nablaR,
        nablaS=rec.der.nablaS,
        B=BilinearForm(Bc),
        nablaB=rec.der.nablaB,
        A=tuple(OperatorBlock.square(Bc[:, :, a], rec.g) for a in range(m)),
        RE=rec.der.RE,
    )
    record = PointRecord(ops=rec.ops, der=der, R_tm=rec.R_tm, target=rec.target)
    return SurfaceRecord(record=record, Jt=JT)


def test_surface_record_validation():
    base = torus_base(1.0, 1.0, GOLDEN)
    with pytest.raises(ValueError):
        SurfaceRecord(record=base.record, Jt=np.eye(2))  # Jt^2 != -id
    # non-2-dimensional records are rejected
    _, record = build_sphere_product_hypersurface(2, 2, 1.0, 1.0, GOLDEN)
    with pytest.raises(ValueError):
        SurfaceRecord(record=record, Jt=JT)
    # records with trace-carrying B are rejected (n = 2 hypersurface of
    # a 1 x 2 product has A = sqrt(c2) on the second factor direction)
    _, record = build_sphere_product_hypersurface(1, 1, 1.0, 1.0, GOLDEN)
    with pytest.raises(ValueError):
        SurfaceRecord(record=record, Jt=JT)


def test_rotation_operator_is_a_circle_action():
    for theta in (0.3, 1.2):
        R = rotation_operator(theta, JT)
        assert np.allclose(R @ R.T, np.eye(2), atol=1e-14)
    assert np.allclose(
        rotation_operator(0.3, JT) @ rotation_operator(1.2, JT),
        rotation_operator(1.5, JT),
        atol=1e-14,
    )


def test_deform_group_action():
    base = _trace_free_base()
    one = deform(deform(base, 0.7), 1.1)
    direct = deform(base, 1.8)
    for name in ("P", "Q", "R", "S"):
        assert np.allclose(
            getattr(one.record.ops, name).mat,
            getattr(direct.record.ops, name).mat,
            atol=1e-12,
        )
    for name in ("nablaP", "nablaQ", "nablaR", "nablaS", "nablaB", "RE"):
        assert np.allclose(
            getattr(one.record.der, name), getattr(direct.record.der, name), atol=1e-12
        )
    assert np.allclose(
        one.record.der.B.coeffs, direct.record.der.B.coeffs, atol=1e-12
    )
    for a_one, a_dir in zip(one.record.der.A, direct.record.der.A):
        assert np.allclose(a_one.mat, a_dir.mat, atol=1e-12)


def test_deform_preserves_norm_and_trace_of_B():
    base = _trace_free_base()
    norm0 = np.linalg.norm(base.record.der.B.coeffs)
    a_norms = [np.linalg.norm(a.mat) for a in base.record.der.A]
    for theta in sweep_angles(24):
        rec = deform(base, float(theta)).record
        assert np.linalg.norm(rec.der.B.coeffs) == pytest.approx(norm0, abs=1e-12)
        assert np.linalg.norm(rec.der.B.trace(rec.g)) < 1e-12
        for a, norm in zip(rec.der.A, a_norms):
            assert np.linalg.norm(a.mat) == pytest.approx(norm, abs=1e-12)


def test_verify_family_torus():
    base = torus_base(1.0, 0.25, MetallicParams(2.0, 1.0))
    assert full_verdict(base.record, tol=1e-12).passed
    report = verify_family(base, sweep_angles(24), tol=1e-9)
    assert report.passed, report.failures()
    names = [n for n, _ in report.entries]
    assert names[-1] == "continuity"
    assert len(names) == 25


def test_sweep_angles_validation():
    with pytest.raises(ValueError):
        sweep_angles(0)
    angles = sweep_angles(8)
    assert len(angles) == 8
    assert angles[0] == 0.0
