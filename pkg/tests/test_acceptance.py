"""Acceptance suite: one criterion per test, one printed pass/fail line each.

Run with `pytest -v -s tests/test_acceptance.py` to see the lines.
"""
import itertools
import json

import numpy as np
from click.testing import CliRunner

from metallicgeo.cli import main as cli_main
from metallicgeo.compat import (
    codazzi_residual,
    complex_quad_identities,
    derive_complex_quad,
    derive_eight_operators,
    eight_codazzi_rhs,
    eight_gauss_rhs,
    eight_operator_identities,
    eight_ricci_rhs,
    full_verdict,
    gauss_residual,
    induced_from_eight,
    product_codazzi_rhs,
    product_gauss_rhs,
    product_ricci_rhs,
    ricci_residual,
)
from metallicgeo.dataset import dataset_dumps, dataset_loads, record_to_json
from metallicgeo.examples import (
    build_ekt_immersion,
    build_sphere_product,
    build_sphere_product_hypersurface,
    chart_sphere_product,
    fd_curvature,
    fd_metric,
    random_cms_instance,
    random_hypersurface_normal_image,
    random_hypersurface_tangent_image,
    random_invariant_instance,
    random_metallic_instance,
)
from metallicgeo.family import deform, sweep_angles, torus_base, verify_family
from metallicgeo.linalg import Metric, OperatorBlock
from metallicgeo.modelspaces import (
    ComplexSpaceFormParams,
    EktParams,
    ProductSpaceParams,
    csf_curvature_complex,
    csf_curvature_metallic,
    ekt_curvature_standard,
    ekt_curvature_tensor,
    product_curvature,
)
from metallicgeo.structures import (
    KIND_COMPLEX,
    KIND_PRODUCT,
    ComplexMetallicParams,
    MetallicParams,
    StructureOperator,
    complex_to_cms,
    cms_to_complex,
    metallic_projections,
    metallic_to_product,
    product_to_metallic,
    structure_residual,
)
from metallicgeo.submanifold import (
    InducedOperators,
    check_algebraic_relations,
    check_complex_corollary,
    check_hypersurface_relations,
    divergence_from_nablaP,
    invariant_minimality_check,
    minimality_criterion,
    shape_from_JV_normal,
    shape_from_Jnu_tangent,
)

PQ_GRID = [(1.0, 1.0), (2.0, 1.0), (1.0, 3.0)]
DIM_GRID = [(2, 2), (3, 2)]
C_GRID = [1.0, 0.25]
KAPPA_GRID = [-4.0, -1.0, 0.0, 1.0, 4.0]
TAU_GRID = [0.5, 1.0, 2.0]
AB_GRID = [(1.0, 1.0), (2.0, 2.0), (1.0, 5.0)]


def _conclude(cid: str, description: str, ok: bool, detail: str = ""):
    print(f"[{cid}] {description}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"{cid} failed: {detail}"


def _random_involution(rng, dim):
    q, _ = np.linalg.qr(rng.standard_normal((dim, dim)))
    k = int(rng.integers(1, dim))
    return q @ np.diag([1.0] * k + [-1.0] * (dim - k)) @ q.T


def _random_complex_structure(rng, dim):
    q, _ = np.linalg.qr(rng.standard_normal((dim, dim)))
    J = np.zeros((dim, dim))
    for k in range(0, dim, 2):
        J[k, k + 1] = -1.0
        J[k + 1, k] = 1.0
    return q @ J @ q.T


def test_c1_structure_algebra():
    worst = 0.0
    for seed in range(100):
        rng = np.random.default_rng(seed)
        dim = int(rng.integers(2, 9))
        g = Metric.euclidean(dim)
        mp = MetallicParams(float(rng.uniform(0.5, 3.0)), float(rng.uniform(0.5, 3.0)))
        F = StructureOperator(
            OperatorBlock.square(_random_involution(rng, dim), g), KIND_PRODUCT
        )
        J, _ = product_to_metallic(F, mp)
        worst = max(worst, structure_residual(J, g).max_residual)
        back, _ = metallic_to_product(J)
        worst = max(worst, float(np.abs(back.mat - F.mat).max()))
        pi1, pi2 = metallic_projections(J)
        worst = max(worst, float(np.abs(pi1.mat @ pi1.mat - pi1.mat).max()))
        worst = max(worst, float(np.abs(pi2.mat @ pi2.mat - pi2.mat).max()))
        worst = max(worst, float(np.abs(pi1.mat + pi2.mat - np.eye(dim)).max()))
        worst = max(worst, float(np.abs(pi1.mat @ pi2.mat).max()))

        dim_c = dim + (dim % 2)
        g_c = Metric.euclidean(dim_c)
        b = float(rng.uniform(0.5, 4.0))
        a = float(rng.uniform(0.1, 1.9)) * np.sqrt(b)
        cms = ComplexMetallicParams(a, b)
        Jc = StructureOperator(
            OperatorBlock.square(_random_complex_structure(rng, dim_c), g_c),
            KIND_COMPLEX,
        )
        Jm, _ = complex_to_cms(Jc, cms)
        worst = max(worst, structure_residual(Jm, g_c).max_residual)
        back_c, _ = cms_to_complex(Jm)
        worst = max(worst, float(np.abs(back_c.mat - Jc.mat).max()))
    _conclude(
        "C1",
        "structure algebra, conversions and projectors on 100 seeded instances < 1e-10",
        worst < 1e-10,
        f"worst residual {worst:.3e}",
    )


def test_c2_submanifold_relation_suites_and_perturbation():
    worst = 0.0
    for seed in range(100):
        mp = MetallicParams(*PQ_GRID[seed % 3])
        ops = random_metallic_instance(3, 2, mp, seed=seed)
        worst = max(worst, check_algebraic_relations(ops).max_residual)
        cms = ComplexMetallicParams(*AB_GRID[seed % 3])
        ops_c = random_cms_instance(3, 3, cms, seed=seed)
        worst = max(worst, check_algebraic_relations(ops_c).max_residual)
        worst = max(worst, check_complex_corollary(ops_c).max_residual)
    suites_ok = worst < 1e-10

    ops = random_metallic_instance(3, 2, MetallicParams(1.0, 1.0), seed=0)
    P = ops.P.mat.copy()
    P[0, 1] += 1e-3
    bad = InducedOperators(
        P=OperatorBlock.square(P, ops.g), Q=ops.Q, R=ops.R, S=ops.S, params=ops.params
    )
    failures = check_algebraic_relations(bad, tol=1e-10).failures()
    perturbation_ok = bool(failures) and max(r for _, r in failures) >= 1e-4
    _conclude(
        "C2",
        "relation suites < 1e-10 on 100 splits; 1e-3 perturbation gives named failure >= 1e-4",
        suites_ok and perturbation_ok,
        f"worst {worst:.3e}, failures {failures}",
    )


def test_c3_sphere_product_grid():
    ok = True
    detail = ""
    for (p, q), (n1, n2), c1, c2 in itertools.product(PQ_GRID, DIM_GRID, C_GRID, C_GRID):
        record = build_sphere_product(n1, n2, c1, c2, MetallicParams(p, q))
        report = full_verdict(record, tol=1e-9)
        exact_offdiag = (
            np.abs(record.ops.Q.mat).max() == 0.0
            and np.abs(record.ops.R.mat).max() == 0.0
            and np.abs(record.der.B.coeffs).max() == 0.0
        )
        ranks_ok = (
            report.residual("rank-sigma-factor") == 0.0
            and report.residual("rank-other-factor") == 0.0
        )
        if not (report.passed and exact_offdiag and ranks_ok):
            ok = False
            detail = f"(p,q)=({p},{q}) dims=({n1},{n2}) c=({c1},{c2}): {report.failures()}"
            break
    _conclude("C3", "sphere-product grid: full verdict at 1e-9 with exact Q=R=B=0", ok, detail)


def test_c4_sphere_product_hypersurface_grid():
    ok = True
    detail = ""
    for (p, q), (n1, n2), c1, c2 in itertools.product(PQ_GRID, DIM_GRID, C_GRID, C_GRID):
        hyp, record = build_sphere_product_hypersurface(n1, n2, c1, c2, MetallicParams(p, q))
        hyp_report = check_hypersurface_relations(hyp, tol=1e-9)
        A = hyp.A.mat
        a_ok = (
            np.abs(A[:n1, :n1]).max() <= 1e-12
            and np.abs(A[n1:, n1:] - np.sqrt(c2) * np.eye(n2)).max() <= 1e-12
            and np.abs(A[:n1, n1:]).max() <= 1e-12
        )
        gauss_ok = (
            isinstance(record.target, ProductSpaceParams)
            and record.target.c2 == 0.0
            and gauss_residual(record) < 1e-9
        )
        if not (hyp_report.passed and a_ok and gauss_ok and full_verdict(record, 1e-9).passed):
            ok = False
            detail = f"(p,q)=({p},{q}) dims=({n1},{n2}) c=({c1},{c2})"
            break
    _conclude(
        "C4",
        "sphere-product hypersurface grid: relations, block shape operator, Gauss vs (c1, 0)",
        ok,
        detail,
    )


def test_c5_ekt_into_complex_space_form():
    ok = True
    detail = ""
    for kappa, tau, (a, b) in itertools.product(KAPPA_GRID, TAU_GRID, AB_GRID):
        hyp, record = build_ekt_immersion(kappa, tau, a, b)
        relation = check_hypersurface_relations(hyp, tol=1e-10)
        gauss = gauss_residual(record)
        # Codazzi left side d^nabla A comes from the frame Christoffel
        # symbols (record.der.nablaB), independent of the closed-form RHS.
        codazzi = codazzi_residual(record)
        if not (relation.passed and gauss < 1e-10 and codazzi < 1e-10):
            ok = False
            detail = f"kappa={kappa} tau={tau} (a,b)=({a},{b}): gauss {gauss:.2e} codazzi {codazzi:.2e}"
            break
    # degenerate case kappa = 4 tau^2: A = tau id and both Codazzi sides vanish
    hyp, record = build_ekt_immersion(4.0, 1.0, 2.0, 2.0)
    lhs = record.der.nablaB - record.der.nablaB.transpose(1, 0, 2, 3)
    degenerate_ok = (
        np.abs(hyp.A.mat - np.eye(3)).max() < 1e-12
        and np.abs(lhs).max() < 1e-12
        and codazzi_residual(record) < 1e-12
    )
    _conclude(
        "C5",
        "E(kappa,tau) grid: relation suite, Gauss and Codazzi < 1e-10 with independent d-nabla-A",
        ok and degenerate_ok,
        detail,
    )


def test_c6_curvature_oracles():
    worst_ekt = 0.0
    for kappa, tau in itertools.product(KAPPA_GRID, TAU_GRID):
        params = EktParams(kappa, tau)
        diff = (
            ekt_curvature_tensor(params).as_standard().coeffs
            - ekt_curvature_standard(params).coeffs
        )
        worst_ekt = max(worst_ekt, float(np.abs(diff).max()))
    ekt_ok = worst_ekt < 1e-12

    chart = chart_sphere_product(1.0, 2, 2.0, 2)
    point = np.array([0.9, 0.4, 1.1, 0.7])
    g = Metric(fd_metric(chart, point))
    R_fd = fd_curvature(chart, point).coeffs
    params = ProductSpaceParams(2, 2, 1.0, 0.25)
    pi1 = np.diag([1.0, 1.0, 0.0, 0.0])
    pi2 = np.eye(4) - pi1
    e = np.eye(4)
    expected = np.empty((4, 4, 4, 4))
    for i, j, k in itertools.product(range(4), repeat=3):
        expected[i, j, k] = product_curvature(params, pi1, pi2, e[i], e[j], e[k], g)
    fd_err = float(np.abs(R_fd - expected).max()) / max(1.0, float(np.abs(expected).max()))
    fd_ok = fd_err < 1e-5

    rng = np.random.default_rng(0)
    worst_csf = 0.0
    cms = ComplexMetallicParams(1.0, 5.0)
    csf = ComplexSpaceFormParams(2, 0.25)
    J = np.kron(np.array([[0.0, -1.0], [1.0, 0.0]]), np.eye(2))
    Pt = (cms.delta / 2.0) * J - (cms.a / 2.0) * np.eye(4)
    gE4 = Metric.euclidean(4)
    for _ in range(100):
        X, Y, Z = rng.standard_normal((3, 4))
        diff = csf_curvature_complex(csf, J, X, Y, Z, gE4) - csf_curvature_metallic(
            csf, cms, Pt, X, Y, Z, gE4
        )
        worst_csf = max(worst_csf, float(np.abs(diff).max()))
    csf_ok = worst_csf < 1e-12
    _conclude(
        "C6",
        "curvature oracles: closed forms vs commutator (1e-12), FD chart (1e-5), csf forms (1e-12)",
        ekt_ok and fd_ok and csf_ok,
        f"ekt {worst_ekt:.2e}, fd {fd_err:.2e}, csf {worst_csf:.2e}",
    )


def test_c7_eight_operator_plumbing():
    worst = 0.0
    for seed in range(20):
        mp = MetallicParams(*PQ_GRID[seed % 3])
        ops = random_metallic_instance(3, 2, mp, seed=seed)
        eight = derive_eight_operators(ops)
        worst = max(worst, eight_operator_identities(eight).max_residual)
        back = induced_from_eight(eight, ops.g, ops.gE)
        for name in ("P", "Q", "R", "S"):
            worst = max(
                worst,
                float(np.abs(getattr(back, name).mat - getattr(ops, name).mat).max()),
            )
        # eight-form Gauss/Codazzi/Ricci right sides must equal the block forms
        from test_compat import _random_shape_data

        der = _random_shape_data(ops, seed + 500)
        target = ProductSpaceParams(3, 2, 1.0, 0.25)
        worst = max(
            worst,
            float(
                np.abs(
                    product_gauss_rhs(ops, der, target)
                    - eight_gauss_rhs(eight, der, target, ops.g)
                ).max()
            ),
            float(
                np.abs(
                    product_codazzi_rhs(ops, der, target)
                    - eight_codazzi_rhs(eight, der, target, ops.g)
                ).max()
            ),
            float(
                np.abs(
                    product_ricci_rhs(ops, der, target)
                    - eight_ricci_rhs(eight, der, target, ops.gE)
                ).max()
            ),
        )
        # complex-quadruple counterpart on the complex side
        ops_c = random_cms_instance(2, 2, ComplexMetallicParams(*AB_GRID[seed % 3]), seed=seed)
        quad = derive_complex_quad(ops_c)
        worst = max(worst, complex_quad_identities(quad, ops_c.g, ops_c.gE).max_residual)
    _conclude(
        "C7",
        "eight-operator round trip, composition identities and rewritten equations < 1e-12",
        worst < 1e-12,
        f"worst {worst:.3e}",
    )


def test_c8_shape_operator_recoveries_and_minimality():
    worst = 0.0
    worst_min = 0.0
    for seed in range(100):
        mp = MetallicParams(*PQ_GRID[seed % 3])
        n = 3 + seed % 3
        h = random_hypersurface_normal_image(n, mp, seed=seed)
        A, report = shape_from_JV_normal(h.P, h.V, h.nablaV, mp, h.g)
        worst = max(worst, float(np.abs(A.mat - h.A.mat).max()), report.max_residual)
        t = random_hypersurface_tangent_image(n, mp, seed=seed)
        At, report_t = shape_from_Jnu_tangent(t.P, t.V, t.nablaV, mp, t.g)
        worst = max(worst, float(np.abs(At.mat - t.A.mat).max()), report_t.max_residual)
        # minimality scalar vs the trace oracle q * n * H with H = tr(A)/n
        for data in (h, t):
            divP = divergence_from_nablaP(data.nablaP, data.g)
            value = minimality_criterion(data.P, divP, data.V, data.g)
            H = np.trace(data.A.mat) / n
            worst_min = max(worst_min, abs(value - mp.q * n * H))
    _conclude(
        "C8",
        "shape recoveries: A(V)=0 and det A=0 at 1e-12 on 100 seeds; minimality vs q*n*H at 1e-10",
        worst < 1e-12 and worst_min < 1e-10,
        f"worst {worst:.3e}, minimality gap {worst_min:.3e}",
    )


def test_c9_invariant_minimality():
    worst = 0.0
    shapes = [(2, 2), (4, 2), (4, 4)]
    for seed in range(100):
        n, m = shapes[seed % 3]
        cms = ComplexMetallicParams(*AB_GRID[seed % 3])
        ops, B = random_invariant_instance(n, m, cms, seed=seed)
        report = invariant_minimality_check(ops, B, tol=1e-10)
        worst = max(
            worst,
            report.residual("traceB-vanishes"),
            report.residual("adapted-frame-orthonormal"),
            report.residual("j-skew"),
            report.residual("j-isometry"),
        )
    _conclude(
        "C9",
        "invariant instances: trace-free B and orthonormal adapted frame < 1e-10 on 100 seeds",
        worst < 1e-10,
        f"worst {worst:.3e}",
    )


def test_c10_associated_family():
    base = torus_base(1.0, 0.25, MetallicParams(1.0, 1.0))
    # group action
    one = deform(deform(base, 0.7), 1.1).record
    direct = deform(base, 1.8).record
    worst = 0.0
    for name in ("P", "Q", "R", "S"):
        worst = max(
            worst,
            float(np.abs(getattr(one.ops, name).mat - getattr(direct.ops, name).mat).max()),
        )
    for name in ("nablaP", "nablaQ", "nablaR", "nablaS", "nablaB", "RE"):
        worst = max(
            worst, float(np.abs(getattr(one.der, name) - getattr(direct.der, name)).max())
        )
    worst = max(worst, float(np.abs(one.der.B.coeffs - direct.der.B.coeffs).max()))
    group_ok = worst < 1e-12

    from test_family import _trace_free_base

    rich = _trace_free_base()
    norm0 = np.linalg.norm(rich.record.der.B.coeffs)
    norm_ok = True
    trace_ok = True
    for theta in sweep_angles(24):
        rec = deform(rich, float(theta)).record
        norm_ok &= abs(np.linalg.norm(rec.der.B.coeffs) - norm0) < 1e-12
        trace_ok &= float(np.linalg.norm(rec.der.B.trace(rec.g))) < 1e-12

    sweep = verify_family(base, sweep_angles(24), tol=1e-9)
    _conclude(
        "C10",
        "associated family: group action at 1e-12, constant trace-free B, verdict preserved",
        group_ok and norm_ok and trace_ok and sweep.passed,
        f"group gap {worst:.3e}, sweep failures {sweep.failures()}",
    )


def test_c11_cli_contract_and_bit_exact_round_trip(tmp_path):
    runner = CliRunner()
    ok = True
    detail = ""

    result = runner.invoke(cli_main, ["verify", "builtin", "sphere-product"])
    ok &= result.exit_code == 0

    good = dataset_dumps(
        [build_sphere_product(2, 2, 1.0, 0.25, MetallicParams(1.0, 1.0))]
    )
    good_path = tmp_path / "good.json"
    good_path.write_text(good)
    ok &= runner.invoke(cli_main, ["verify", "dataset", str(good_path)]).exit_code == 0

    bad_doc = record_to_json(build_sphere_product(2, 2, 1.0, 1.0, MetallicParams(1.0, 1.0)))
    bad_doc["P"]["data"][0][1] = "0.5"
    bad_path = tmp_path / "bad.json"
    bad_path.write_text(json.dumps({"version": "1", "records": [bad_doc]}))
    fail_run = runner.invoke(cli_main, ["verify", "dataset", str(bad_path)])
    ok &= fail_run.exit_code == 1 and "offending identity:" in fail_run.output

    broken_path = tmp_path / "broken.json"
    broken_path.write_text("{")
    ok &= runner.invoke(cli_main, ["verify", "dataset", str(broken_path)]).exit_code == 2
    ok &= runner.invoke(cli_main, ["verify", "builtin", "ekt", "--tau", "0"]).exit_code == 2
    ok &= runner.invoke(cli_main, ["family-sweep", "torus", "--thetas", "8"]).exit_code == 0

    # bit-exact dataset round trip
    _, ekt = build_ekt_immersion(1.0, 0.5, 1.0, 5.0)
    text = dataset_dumps([ekt])
    ok &= dataset_dumps(dataset_loads(text)) == text
    loaded = dataset_loads(text)[0]
    ok &= np.array_equal(loaded.der.nablaB, ekt.der.nablaB)
    ok &= np.array_equal(loaded.ops.P.mat, ekt.ops.P.mat)

    _conclude(
        "C11",
        "CLI exit codes 0/1/2 as documented; dataset round trip bit-exact",
        bool(ok),
        detail,
    )
