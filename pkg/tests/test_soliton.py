"""Soliton residuals, formulation equivalence, classification, harmonic regime."""

from fractions import Fraction as F

import pytest

from hetsol import sampling
from hetsol.charts import ChartGeometry, euclidean_chart, poincare_ball_chart
from hetsol.curvature3 import Metric3, Sym2
from hetsol.errors import InvalidKappa, NotHarmonic
from hetsol.soliton import (
    ClassificationReport,
    HarmonicSample,
    SolitonParams,
    classify_constant_dilaton,
    eigenvalue_equation_residue,
    formulation_defects,
    harmonic_dilaton_test,
    residuals,
    residuals_v2,
    scalar_identity,
    ym_trace_identity,
)


def _rand_setup(seed):
    rng = sampling.rng_from_seed(seed)
    kappa = sampling.rand_nonzero_fraction(rng)
    e2phi = sampling.rand_positive_fraction(rng)
    return rng, SolitonParams(kappa), e2phi


# ---------------------------------------------------------------------------
# Residuals on closed-form data


def test_flat_data_with_weight_override():
    # flat metric, zero dilaton, weight forced to c: the residual reduces to
    # E = -(c/2) g (so |E|^2 = (3/4) c^2), YM = 0, D = -c
    chart = euclidean_chart()
    c = F(2)
    r = residuals(chart, (F(0), F(0), F(0)), SolitonParams(F(1)), e2phi=c)
    assert r.e == Sym2.diag(F(-1), F(-1), F(-1))
    assert r.e_norm_sq == F(3)
    assert r.d == F(-2)
    assert r.ym_norm_sq == 0
    assert not r.is_zero()
    assert r.max_norm_sq() == 4.0


def test_scaled_hyperbolic_chart_is_an_exact_soliton():
    # quartering the Poincare metric moves the Einstein constant from -2 to
    # -8, which with kappa = 1 and weight 48 solves all three equations
    base = poincare_ball_chart()
    chart = ChartGeometry(tuple(f.scale(F(1, 4)) for f in base.metric),
                          base.dilaton, "ball")
    params = SolitonParams(F(1))
    p = (F(1, 5), F(-1, 7), F(1, 9))
    r1 = residuals(chart, p, params, e2phi=F(48))
    r2 = residuals_v2(chart, p, params, e2phi=F(48))
    assert r1.is_zero()
    assert r2.is_zero()


def test_poincare_chart_off_soliton_values():
    # at its native curvature the hyperbolic chart misses the kappa = 1
    # soliton by computable margins: E = -24 g, D = -45
    chart = poincare_ball_chart()
    p = (F(1, 4), F(0), F(-1, 8))
    r = residuals(chart, p, SolitonParams(F(1)), e2phi=F(48))
    gm = chart.metric_entry(0, 0).eval(p)
    assert r.e.c[0] == -24 * gm
    assert r.e.c[3] == -24 * gm
    assert r.e.c[5] == -24 * gm
    assert r.e.c[1] == 0 and r.e.c[2] == 0 and r.e.c[4] == 0
    assert r.d == F(-45)
    assert all(x == 0 for a in r.ym for b in a for x in b)


# ---------------------------------------------------------------------------
# Off-shell identities: exact zeros on arbitrary charts


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_formulation_defects_vanish_on_polynomial_charts(seed):
    rng, params, e2phi = _rand_setup(seed)
    chart = sampling.rand_polynomial_chart(rng)
    p = sampling.rand_point(rng, chart)
    fd = formulation_defects(chart, p, params, e2phi=e2phi)
    assert fd.all_zero()
    assert fd.max_abs() == 0.0


def test_formulation_defects_vanish_on_rational_and_torus_charts():
    rng, params, e2phi = _rand_setup(8)
    chart = sampling.rand_rational_chart(rng)
    p = sampling.rand_point(rng, chart)
    assert formulation_defects(chart, p, params, e2phi=e2phi).all_zero()

    # torus fields evaluate through floating trig, so the zero is approximate
    torus = sampling.rand_torus_chart(rng)
    q = sampling.rand_point(rng, torus)
    assert formulation_defects(torus, q, params, e2phi=e2phi).max_abs() < 1e-12


@pytest.mark.parametrize("seed", [4, 5])
def test_ym_trace_identity_vanishes(seed):
    rng, _, _ = _rand_setup(seed)
    chart = sampling.rand_polynomial_chart(rng)
    p = sampling.rand_point(rng, chart)
    assert ym_trace_identity(chart, p) == (0, 0, 0)


@pytest.mark.parametrize("seed", [6, 7])
def test_scalar_identity_vanishes(seed):
    rng, params, e2phi = _rand_setup(seed)
    chart = sampling.rand_polynomial_chart(rng)
    p = sampling.rand_point(rng, chart)
    assert scalar_identity(chart, p, params, e2phi=e2phi) == 0


# ---------------------------------------------------------------------------
# Constant-dilaton classification


def test_classification_unit_kappa():
    rep = classify_constant_dilaton(SolitonParams(F(1)))
    assert rep.branch == "hyperbolic"
    assert rep.s == F(-24)
    assert rep.e2phi == F(48)
    assert rep.ricci_factor == F(-8)
    assert rep.hyperbolic_residue == 0
    assert rep.product_zero_residue == 0
    assert rep.product_defect == F(-2)
    assert rep.warnings == ()


def test_classification_scales_inversely_with_kappa():
    rep = classify_constant_dilaton(SolitonParams(F(2)))
    assert rep.s == F(-12)
    assert rep.e2phi == F(24)
    assert rep.ricci_factor == F(-4)
    assert rep.product_defect == F(-1)


def test_classification_negative_kappa_warns():
    rep = classify_constant_dilaton(SolitonParams(F(-3)))
    assert rep.e2phi == F(-16)
    assert rep.hyperbolic_residue == 0
    assert len(rep.warnings) == 1
    assert "kappa < 0" in rep.warnings[0]


def test_classification_float_mode_and_dict():
    rep = classify_constant_dilaton(SolitonParams(0.5))
    assert rep.s == -48.0
    assert rep.e2phi == 96.0
    doc = rep.as_dict()
    assert doc["branch"] == "hyperbolic"
    assert doc["s"] == "-48.0"
    assert isinstance(doc["warnings"], list)


def test_zero_kappa_rejected():
    with pytest.raises(InvalidKappa):
        SolitonParams(F(0))


def test_eigenvalue_residue_hand_arithmetic():
    # kappa 1, s -24, lam -8: 64 - 184 + 120 = 0
    assert eigenvalue_equation_residue(F(1), F(-24), F(-8)) == 0
    # kappa 2, s -12, lam -4: 32 - 92 + 72 - 12 = 0
    assert eigenvalue_equation_residue(F(2), F(-12), F(-4)) == 0
    # and the product branch misses by -2/kappa
    assert eigenvalue_equation_residue(F(1), F(-4), F(-2)) == F(-2)
    assert eigenvalue_equation_residue(F(5), F(-4, 5), F(-2, 5)) == F(-2, 5)


# ---------------------------------------------------------------------------
# Harmonic-curvature pointwise reduction


def _canonical_sample(kappa, s, dphi_axis, scale):
    # ric = (s/2)(g - u (x) u) with g the identity and u the chosen axis,
    # e2phi tuned so f = |dphi|^2 - (5/2) e2phi hits its forced value
    g = Metric3(Sym2.diag(F(1), F(1), F(1)))
    half_s = F(1, 2) * s
    diag = [half_s, half_s, half_s]
    diag[dphi_axis] = F(0)
    ric = Sym2.diag(*diag)
    dphi = [F(0), F(0), F(0)]
    dphi[dphi_axis] = scale
    forced = -s - F(3, 4) * kappa * s * s
    e2phi = (scale * scale - forced) * F(2, 5)
    assert e2phi > 0
    return HarmonicSample(g, ric, s, tuple(dphi), e2phi)


def test_harmonic_samples_pass_all_steps():
    kappa, s = F(1), F(-6)
    samples = [_canonical_sample(kappa, s, 0, F(1)),
               _canonical_sample(kappa, s, 1, F(2))]
    rep = harmonic_dilaton_test(samples, SolitonParams(kappa))
    assert rep.passed
    assert rep.first_violation is None
    assert rep.gradient_points == 2
    assert rep.constant_points == 0
    names = [st.name for st in rep.steps]
    assert names == ["ricci-kills-gradient", "forced-ricci-form",
                     "eigenstructure", "ricci-norm-half-s-squared",
                     "f-constancy"]
    assert all(st.passed for st in rep.steps)
    assert all(st.defect == 0.0 for st in rep.steps)


def test_harmonic_gradient_in_ricci_kernel_is_checked_first():
    good = _canonical_sample(F(1), F(-6), 0, F(1))
    bad = HarmonicSample(good.metric, Sym2.diag(F(1), F(-3), F(-3)),
                         good.scal, good.dphi, good.e2phi)
    rep = harmonic_dilaton_test([bad], SolitonParams(F(1)))
    assert not rep.passed
    assert rep.first_violation == "ricci-kills-gradient"
    assert rep.steps[0].defect > 0


def test_harmonic_vacuous_without_gradient_points():
    g = Metric3(Sym2.diag(F(1), F(2), F(3)))
    sm = HarmonicSample(g, Sym2.zero(), F(0), (F(0), F(0), F(0)), F(1))
    rep = harmonic_dilaton_test([sm, sm], SolitonParams(F(1)))
    assert rep.passed
    assert rep.gradient_points == 0
    assert rep.constant_points == 2
    assert "vacuous" in rep.regime
    assert rep.steps[0].name == "gradient-locus"


def test_harmonic_chart_source_constant_curvature():
    # constant-curvature charts have parallel curvature, so they qualify;
    # with a constant dilaton the report is vacuous
    chart = poincare_ball_chart()
    pts = [(F(0), F(0), F(0)), (F(1, 4), F(1, 8), F(0))]
    rep = harmonic_dilaton_test(chart, SolitonParams(F(1)), points=pts)
    assert rep.passed
    assert rep.constant_points == 2


def test_harmonic_chart_source_requires_divergence_free_curvature():
    rng = sampling.rng_from_seed(13)
    chart = sampling.rand_polynomial_chart(rng)
    p = sampling.rand_point(rng, chart)
    with pytest.raises(NotHarmonic):
        harmonic_dilaton_test(chart, SolitonParams(F(1)), points=[p])


def test_harmonic_chart_source_needs_points():
    with pytest.raises(ValueError):
        harmonic_dilaton_test(poincare_ball_chart(), SolitonParams(F(1)))
