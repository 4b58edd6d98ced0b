"""Release gate: one test per shipped guarantee, at its stated tolerance.

Run `pytest -v tests/test_acceptance.py` to get one pass/fail line per
guarantee.  Each test states its tolerance and, where promised, its
runtime bound inline; the random data is drawn from labelled child
generators so every run sees the same samples.
"""

import time
from fractions import Fraction

from hetsol import sampling
from hetsol.charts import Scaffold, poincare_ball_chart
from hetsol.cli import main
from hetsol.curvature3 import Sym2
from hetsol.homogeneous import (
    SearchConfig,
    family_hyperbolic_solvable,
    grid_scan,
    lm_solve,
    soliton_residual,
)
from hetsol.linearize import (
    deformation_ops,
    einstein_def_residual,
    essential_chain,
    fd_direction,
    gauge_pairing,
    linearization_fd_sweep,
    project_tt_jet,
)
from hetsol.reportio import normalized_json
from hetsol.soliton import SolitonParams, classify_constant_dilaton
from hetsol.suites import (
    SuiteConfig,
    check_charts_bianchi,
    check_charts_codiff,
    check_dictionary_action,
    check_dictionary_norm,
    check_dictionary_roundtrip,
    check_dictionary_square,
    check_formulations,
    rep_freq,
)

F = Fraction

CFG_200 = SuiteConfig(seed=7, trials=200, mode="exact")


def test_01_dictionary_identities_hold_exactly_for_200_seeded_trials():
    """Round-trip, square, norm and action checks: 200 exact trials each,
    every defect literally zero, all four together in under 10 seconds."""
    start = time.perf_counter()
    for check in (check_dictionary_roundtrip, check_dictionary_square,
                  check_dictionary_norm, check_dictionary_action):
        rec = check(CFG_200)
        assert rec.passed, rec.note
        assert rec.exact
        assert rec.defect == 0.0
        assert rec.trials == 200
    assert time.perf_counter() - start < 10.0


def test_02_bianchi_and_codifferential_exact_on_twenty_rational_charts():
    """Contracted second Bianchi identity (20 charts, 5 points each) and the
    independent codifferential assembly: exact zeros, under 20 seconds."""
    start = time.perf_counter()
    rec_b = check_charts_bianchi(CFG_200)
    rec_c = check_charts_codiff(CFG_200)
    assert time.perf_counter() - start < 20.0
    assert rec_b.passed and rec_b.exact and rec_b.defect == 0.0
    assert rec_b.trials >= 100  # at least 20 charts x 5 points
    assert rec_c.passed and rec_c.exact and rec_c.defect == 0.0
    assert rec_c.trials >= 20


def test_03_both_residual_formulations_agree_exactly():
    """The rewritten residual triple matches the direct one identically on
    every random-geometry trial (zero defect in exact arithmetic)."""
    rec = check_formulations(CFG_200)
    assert rec.passed, rec.note
    assert rec.exact
    assert rec.defect == 0.0


def test_04_constant_dilaton_constants_match_and_scale_with_coupling():
    """Coupling 1 forces scalar curvature -24, weight 48, Einstein factor -8,
    zero eigenvalue residue and excluded-branch defect -2; the same holds
    after exact rescaling for 50 random positive rational couplings."""
    rep = classify_constant_dilaton(SolitonParams(F(1)))
    assert rep.s == -24
    assert rep.e2phi == 48
    assert rep.ricci_factor == -8
    assert rep.hyperbolic_residue == 0
    assert rep.product_defect == -2

    rng = sampling.child_rng(7, "acceptance/classify-scaling")
    for _ in range(50):
        k = sampling.rand_positive_fraction(rng)
        r = classify_constant_dilaton(SolitonParams(k))
        assert r.s * k == -24
        assert r.e2phi * k == 48
        assert r.ricci_factor * k == -8
        assert r.hyperbolic_residue == 0
        assert r.product_defect * k == -2
        assert r.product_defect != 0


def test_05_hyperbolic_background_solves_the_system_exactly_and_in_float():
    """Solvable family at shape 2, weight 48, coupling 1: all three residual
    norms are exactly zero in rational arithmetic and below 1e-10 in float."""
    exact = soliton_residual(family_hyperbolic_solvable(F(2), F(48)),
                             SolitonParams(F(1)))
    assert exact.is_zero()
    assert exact.e_norm_sq == 0
    assert exact.ym_norm_sq == 0
    assert exact.d_norm_sq == 0

    fl = soliton_residual(family_hyperbolic_solvable(2.0, 48.0),
                          SolitonParams(1.0))
    assert float(fl.e_norm_sq) < 1e-10
    assert float(fl.ym_norm_sq) < 1e-10
    assert float(fl.d_norm_sq) < 1e-10


def test_06_linearized_curvature_invariants_match_central_differences():
    """On the constant-curvature ball chart, analytic derivatives of the
    curvature square and curvature norm match central differences at step
    1/10000 for 10 random polynomial deformations: relative error at the
    halved step at most 1e-6, halving ratio within [3.5, 4.5]."""
    chart = poincare_ball_chart()
    rng = sampling.child_rng(7, "acceptance/linearize-fd")
    step = F(1, 10000)
    for _ in range(10):
        h = sampling.rand_deformation(rng)
        p = sampling.rand_ball_point(rng)
        rows = linearization_fd_sweep(chart, h, p, step,
                                      quantities=("curv_square", "curv_norm"))
        assert {row.quantity for row in rows} == {"curv_square", "curv_norm"}
        for row in rows:
            assert row.rel_error <= 1e-6, row
            assert 3.5 <= row.ratio <= 4.5, row


def test_07_gauge_pairing_defect_vanishes_under_exact_quadrature():
    """Flat-metric torus data with frequencies at most 2, at least 5 nodes
    per axis: the integration-by-parts defect of the gauge pair is exactly
    zero, with a nonzero pairing value witnessed."""
    rng = sampling.child_rng(7, "acceptance/gauge-pairing")
    nonzero_seen = False
    for _ in range(3):
        chart = sampling.rand_torus_chart(rng, max_freq=2)
        v = sampling.rand_trig_vector(rng, max_freq=2)
        h = sampling.rand_trig_deformation(rng, max_freq=2)
        xi = sampling.rand_trig(rng, max_freq=2)
        data_freq = max(f.max_frequency() for f in (*v, *h, xi, chart.dilaton))
        assert data_freq <= 2
        nodes = max(5, 1 + 2 * rep_freq(v, h, xi, chart))
        rep = gauge_pairing(chart, v, h, xi, nodes=nodes)
        assert rep.nodes >= 5
        assert rep.nodes > 2 * rep.max_frequency  # quadrature sees no aliasing
        assert rep.exact
        assert rep.defect == 0
        if rep.lhs_mean != 0:
            nonzero_seen = True
    assert nonzero_seen


def test_08_deformation_chain_coefficients_are_the_expected_rationals():
    """Chain coefficients at coupling 1 are (-11, -64, -24, 24, -7, -56);
    multiplying the coupling-dependent ones by the coupling gives the same
    constants for 50 random nonzero rational couplings."""
    rep = essential_chain(SolitonParams(F(1)))
    assert rep.c_scalar_identity == -11
    assert rep.c_dxi == -64
    assert rep.c_ds_over_xi == -24
    assert rep.c_final_xi == 24
    assert rep.c_lin_ricci == -7
    assert rep.c_h == -56
    assert rep.all_ok

    rng = sampling.child_rng(7, "acceptance/chain-scaling")
    for _ in range(50):
        k = sampling.rand_nonzero_fraction(rng)
        r = essential_chain(SolitonParams(k))
        assert r.c_scalar_identity == -11
        assert r.c_dxi * k == -64
        assert r.c_ds_over_xi * k == -24
        assert r.c_final_xi * k == 24
        assert r.c_lin_ricci == -7
        assert r.c_h * k == -56
        assert r.all_ok


def test_09_einstein_deformation_residual_reduces_and_matches_fd():
    """On the constant-curvature chart the zeroth-order curvature term equals
    -(s/6)(h - tr(h) g) exactly, and the residual of a transverse-traceless
    deformation matches its finite-difference assembly to 1e-6."""
    chart = poincare_ball_chart()
    rng = sampling.child_rng(7, "acceptance/einstein-reduction")
    for _ in range(3):
        h = sampling.rand_deformation(rng)
        p = sampling.rand_ball_point(rng)
        ops = deformation_ops(chart, h, p)
        sc = Scaffold(chart, p, order=2)
        g = Sym2.from_matrix(sc.metric.mat())
        expected = (ops.h - g.scale(ops.tr_h)).scale(-sc.scal / 6)
        assert (ops.r0 - expected).is_zero()

    p = (F(1, 7), F(-1, 9), F(1, 11))
    htt = project_tt_jet(chart, p, sampling.rand_deformation(rng))
    res = einstein_def_residual(chart, htt, p)
    ops = deformation_ops(chart, htt, p)
    s = Scaffold(chart, p, order=2).scal
    fd_ric = fd_direction(chart, htt, p, F(1, 10000), "ricci")
    assembled = fd_ric.scale(2) - ops.h.scale(F(2, 3) * s)
    rel = float((res - assembled).max_abs()) / max(1.0, float(res.max_abs()))
    assert rel <= 1e-6
    assert res.max_abs() > 0


def test_10_damped_search_recovers_the_soliton_and_grids_stay_positive():
    """From (1.5, 30) the damped least-squares search reaches shape 2 within
    1e-6 and weight 48 within 1e-4 with objective below 1e-10, in under 5
    seconds and fewer than 200 iterations; 20 x 20 objective grids for the
    nilpotent and abelian families stay strictly positive."""
    start = time.perf_counter()
    rep = lm_solve("hyperbolic-solvable", SolitonParams(1.0),
                   SearchConfig(initial=(1.5, 30.0)))
    elapsed = time.perf_counter() - start
    assert rep.converged, rep.events
    assert abs(rep.shape - 2.0) <= 1e-6
    assert abs(rep.e2phi - 48.0) <= 1e-4
    assert rep.objective < 1e-10
    assert rep.iterations < 200
    assert elapsed < 5.0

    for family in ("heisenberg", "abelian"):
        grid = grid_scan(family, SolitonParams(1.0), n=20)
        assert grid.n == 20
        assert grid.all_positive
        assert grid.min_objective > 0


def test_11_verify_suite_is_deterministic_and_fast(tmp_path, capsys):
    """Two same-seed verification runs produce byte-identical reports once
    timings are stripped, each finishing in under 60 seconds."""
    docs = []
    for name in ("first.json", "second.json"):
        path = tmp_path / name
        start = time.perf_counter()
        code = main(["verify", "--report", str(path)])
        elapsed = time.perf_counter() - start
        capsys.readouterr()
        assert code == 0
        assert elapsed < 60.0
        docs.append(normalized_json(path.read_text()))
    assert docs[0] == docs[1]
