import numpy as np
import pytest

from metallicgeo.compat import full_verdict
from metallicgeo.examples import (
    SEED_ENV_VAR,
    build_ekt_immersion,
    build_sphere_product,
    build_sphere_product_hypersurface,
    chart_sphere,
    chart_sphere_product,
    env_seed,
    fd_christoffel,
    fd_curvature,
    fd_metric,
    frame_nabla_operator,
    frame_nabla_vector,
    random_cms_instance,
    random_hypersurface_normal_image,
    random_metallic_instance,
)
from metallicgeo.modelspaces import EktParams, ekt_christoffel, ekt_nabla
from metallicgeo.structures import ComplexMetallicParams, MetallicParams
from metallicgeo.submanifold import check_hypersurface_relations

GOLDEN = MetallicParams(1.0, 1.0)


def test_build_sphere_product_passes_and_is_exact():
    record = build_sphere_product(2, 2, 1.0, 0.25, GOLDEN)
    assert full_verdict(record, tol=1e-12).passed
    assert np.abs(record.ops.Q.mat).max() == 0.0
    assert np.abs(record.ops.R.mat).max() == 0.0
    with pytest.raises(ValueError):
        build_sphere_product(0, 2, 1.0, 1.0, GOLDEN)


def test_build_sphere_product_hypersurface_shape_operator():
    n1, n2, c2 = 2, 3, 0.25
    hyp, record = build_sphere_product_hypersurface(n1, n2, 1.0, c2, GOLDEN)
    A = hyp.A.mat
    assert np.allclose(A[:n1, :n1], 0.0, atol=1e-14)
    assert np.allclose(A[n1:, n1:], np.sqrt(c2) * np.eye(n2), atol=1e-14)
    assert full_verdict(record, tol=1e-12).passed
    assert check_hypersurface_relations(hyp, tol=1e-12).passed
    with pytest.raises(ValueError):
        build_sphere_product_hypersurface(2, 2, 1.0, -1.0, GOLDEN)


def test_build_ekt_immersion_degenerate_case():
    hyp, record = build_ekt_immersion(4.0, 1.0, 2.0, 2.0)
    # kappa = 4 tau^2: flat target, umbilical with A = tau id
    assert record.target.c == 0.0
    assert np.allclose(hyp.A.mat, np.eye(3), atol=1e-14)
    assert full_verdict(record, tol=1e-12).passed


def test_frame_nabla_helpers():
    params = EktParams(1.0, 0.5)
    Gamma = ekt_christoffel(params)
    # the identity operator is parallel
    assert np.abs(frame_nabla_operator(Gamma, np.eye(3))).max() == 0.0
    # constant vector fields: nabla_i V from the helper equals ekt_nabla
    V = np.array([1.0, 2.0, -1.0])
    nv = frame_nabla_vector(Gamma, V)
    e = np.eye(3)
    for i in range(3):
        assert np.allclose(nv[i], ekt_nabla(params, e[i], V), atol=1e-14)


def test_random_generators_are_seed_reproducible(monkeypatch):
    a = random_metallic_instance(3, 2, GOLDEN, seed=42)
    b = random_metallic_instance(3, 2, GOLDEN, seed=42)
    assert np.array_equal(a.P.mat, b.P.mat)
    assert np.array_equal(a.Q.mat, b.Q.mat)
    c = random_metallic_instance(3, 2, GOLDEN, seed=43)
    assert not np.array_equal(a.P.mat, c.P.mat)
    # the default seed comes from the environment
    monkeypatch.setenv(SEED_ENV_VAR, "42")
    assert env_seed() == 42
    d = random_metallic_instance(3, 2, GOLDEN)
    assert np.array_equal(a.P.mat, d.P.mat)
    monkeypatch.delenv(SEED_ENV_VAR)
    assert env_seed() == 0


def test_random_cms_requires_even_total_dimension():
    with pytest.raises(ValueError):
        random_cms_instance(2, 1, ComplexMetallicParams(2.0, 2.0), seed=0)


def test_random_hypersurface_requires_dimension():
    with pytest.raises(ValueError):
        random_hypersurface_normal_image(1, GOLDEN, seed=0)


def test_fd_metric_matches_round_sphere():
    r = 2.0
    chart = chart_sphere(r, 2)
    point = np.array([0.7, 1.1])
    g = fd_metric(chart, point)
    expected = np.diag([r * r, r * r * np.sin(point[0]) ** 2])
    assert np.allclose(g, expected, atol=1e-12)


def test_fd_curvature_matches_constant_curvature_form():
    r = 2.0
    c = 1.0 / (r * r)
    chart = chart_sphere(r, 2)
    point = np.array([0.8, 0.3])
    g = fd_metric(chart, point)
    R = fd_curvature(chart, point)
    expected = c * (
        np.einsum("jk,il->ijkl", g, np.eye(2)) - np.einsum("ik,jl->ijkl", g, np.eye(2))
    )
    assert np.abs(R.coeffs - expected).max() < 1e-5


def test_fd_christoffel_is_torsion_free():
    chart = chart_sphere_product(1.0, 2, 2.0, 2)
    point = np.array([0.9, 0.4, 1.2, 0.6])
    Gamma = fd_christoffel(chart, point)
    assert np.abs(Gamma - Gamma.transpose(1, 0, 2)).max() < 1e-8
