"""Chart geometry: packets, the finite-difference oracle, and chart files."""

from fractions import Fraction as F

import pytest

from hetsol import sampling
from hetsol.charts import (
    CHART_SCHEMA,
    ChartGeometry,
    bianchi_residual,
    constant_metric_torus_chart,
    derivative_packet,
    euclidean_chart,
    full_packets,
    geometry_packet,
    perturbed_chart,
    poincare_ball_chart,
)
from hetsol.curvature3 import Sym2
from hetsol.errors import PoleAtPoint, SingularMetric, StencilOutOfDomain
from hetsol.fdcheck import fd_oracle, packet_defect
from hetsol.fields import Poly3, RationalField


# ---------------------------------------------------------------------------
# Flat chart: everything vanishes


def test_euclidean_chart_is_flat():
    chart = euclidean_chart()
    p = (F(1, 3), F(-1, 5), F(2, 7))
    gpk = geometry_packet(chart, p)
    assert gpk.metric.form.c == (F(1), F(0), F(0), F(1), F(0), F(1))
    for k in range(3):
        for i in range(3):
            for j in range(3):
                assert gpk.gamma[k][i][j] == 0
    for a in range(3):
        for b in range(3):
            assert gpk.curv.m[a][b] == 0
    assert gpk.ric.c == (F(0),) * 6
    assert gpk.scal == 0


def test_euclidean_quadratic_dilaton_derivatives():
    x = Poly3.variable(0)
    chart = euclidean_chart(dilaton=x * x)
    p = (F(1, 4), F(1, 3), F(-1, 5))
    dpk = derivative_packet(chart, p)
    assert dpk.dphi == (F(1, 2), F(0), F(0))
    assert dpk.hess_dilaton == Sym2.diag(F(2), F(0), F(0))
    assert dpk.codiff_dilaton == F(-2)
    assert dpk.grad_norm_sq == F(1, 4)


def test_constant_dilaton_has_no_derivatives():
    chart = poincare_ball_chart()
    dpk = derivative_packet(chart, (F(1, 8), F(0), F(-1, 9)))
    assert dpk.dphi == (0, 0, 0)
    assert dpk.hess_dilaton.c == (F(0),) * 6
    assert dpk.codiff_dilaton == 0
    assert dpk.grad_norm_sq == 0


# ---------------------------------------------------------------------------
# Hyperbolic model: constant curvature -1, so Ric = -2 g and s = -6


def test_poincare_ball_at_origin():
    chart = poincare_ball_chart()
    gpk = geometry_packet(chart, (F(0), F(0), F(0)))
    assert gpk.metric.form == Sym2.diag(F(4), F(4), F(4))
    assert gpk.ric == Sym2.diag(F(-8), F(-8), F(-8))
    assert gpk.scal == F(-6)


def test_poincare_ball_off_origin_still_constant_curvature():
    chart = poincare_ball_chart()
    p = (F(1, 4), F(-1, 8), F(1, 16))
    gpk = geometry_packet(chart, p)
    assert gpk.scal == F(-6)
    gm = gpk.metric.form.c
    rm = gpk.ric.c
    for k in range(6):
        assert rm[k] == -2 * gm[k]


# ---------------------------------------------------------------------------
# Contracted second Bianchi identity holds literally in exact arithmetic


def _assert_all_zero(triple):
    for v1 in range(3):
        for v2 in range(3):
            for v3 in range(3):
                assert triple[v1][v2][v3] == 0


def test_bianchi_exact_on_poincare():
    chart = poincare_ball_chart()
    _assert_all_zero(bianchi_residual(chart, (F(1, 5), F(1, 7), F(-1, 9))))


def test_bianchi_exact_on_rational_chart():
    # conformal metric 4/(1+|x|^2)^2 delta: the round-sphere chart, a
    # denominator that never vanishes on the ball
    x, y, z = (Poly3.variable(a) for a in range(3))
    r2 = (x * x).poly_add(y * y).poly_add(z * z)
    den = Poly3.const(1).poly_add(r2)
    conf = RationalField(Poly3.const(4), den * den)
    zero = Poly3.zero()
    chart = ChartGeometry((conf, zero, zero, conf, zero, conf), Poly3.zero(), "ball")
    p = (F(1, 3), F(-1, 4), F(1, 6))
    gpk = geometry_packet(chart, p)
    assert gpk.scal == F(6)  # round sphere of curvature +1
    _assert_all_zero(bianchi_residual(chart, p))


def test_bianchi_exact_on_random_polynomial_chart():
    rng = sampling.rng_from_seed(5)
    chart = sampling.rand_polynomial_chart(rng)
    p = sampling.rand_ball_point(rng)
    _assert_all_zero(bianchi_residual(chart, p))


def test_bianchi_exact_on_random_torus_chart():
    rng = sampling.rng_from_seed(6)
    chart = sampling.rand_torus_chart(rng)
    p = sampling.rand_torus_point(rng)
    _assert_all_zero(bianchi_residual(chart, p))


# ---------------------------------------------------------------------------
# Finite-difference oracle


def test_fd_oracle_exact_for_quadratic_data():
    # constant metric and quadratic dilaton: central differences are exact,
    # so rational-step FD packets match the analytic ones literally
    x = Poly3.variable(0)
    chart = euclidean_chart(dilaton=x * x)
    p = (F(1, 8), F(-1, 8), F(1, 16))
    gpk, dpk = full_packets(chart, p)
    fg, fd = fd_oracle(chart, p, F(1, 32))
    assert packet_defect(gpk, fg) == 0.0
    assert packet_defect(dpk, fd) == 0.0


def test_fd_oracle_on_poincare_converges_quadratically():
    chart = poincare_ball_chart().as_float()
    p = (0.1, 0.2, -0.05)
    gpk, dpk = full_packets(chart, p)
    fg1, fd1 = fd_oracle(chart, p, 1e-3)
    fg2, fd2 = fd_oracle(chart, p, 5e-4)
    d1 = max(packet_defect(gpk, fg1), packet_defect(dpk, fd1))
    d2 = max(packet_defect(gpk, fg2), packet_defect(dpk, fd2))
    assert d1 < 1e-3
    assert 3.5 < d1 / d2 < 4.5  # halving the step divides the defect by ~4
    assert abs(fg2.scal - (-6.0)) < 1e-4
    # Richardson extrapolation of the two steps kills the h^2 term
    richardson = (4.0 * fg2.scal - fg1.scal) / 3.0
    assert abs(richardson - (-6.0)) < 1e-8


# ---------------------------------------------------------------------------
# Chart construction, perturbation, and domains


def test_metric_entry_is_symmetric_lookup():
    rng = sampling.rng_from_seed(9)
    chart = sampling.rand_polynomial_chart(rng)
    for i in range(3):
        for j in range(3):
            assert chart.metric_entry(i, j) is chart.metric_entry(j, i)


def test_perturbed_chart_shifts_metric_and_dilaton():
    x = Poly3.variable(0)
    base = euclidean_chart()
    h = (x * x, Poly3.zero(), Poly3.zero(), Poly3.zero(), Poly3.zero(), Poly3.zero())
    xi = Poly3.variable(1)
    t = F(1, 10)
    pert = perturbed_chart(base, h, t, xi)
    p = (F(1, 2), F(1, 3), F(0))
    assert pert.metric_entry(0, 0).eval(p) == 1 + t * F(1, 4)
    assert pert.metric_entry(1, 1).eval(p) == 1
    assert pert.dilaton.eval(p) == t * F(1, 3)
    assert pert.domain == base.domain


def test_domain_membership():
    ball = euclidean_chart()
    assert ball.contains((F(1, 2), F(0), F(0)))
    assert not ball.contains((F(1), F(0), F(0)))
    torus = constant_metric_torus_chart(Sym2.diag(F(1), F(1), F(1)))
    assert torus.contains((F(5), F(-3), F(100)))


def test_chart_validation_rejects_bad_input():
    with pytest.raises(ValueError):
        ChartGeometry((Poly3.const(1),) * 6, Poly3.zero(), "disk")
    with pytest.raises(ValueError):
        ChartGeometry((Poly3.const(1),) * 3, Poly3.zero(), "ball")


# ---------------------------------------------------------------------------
# Serialization


def test_chart_json_round_trip(tmp_path):
    rng = sampling.rng_from_seed(12)
    chart = sampling.rand_rational_chart(rng)
    doc = chart.to_json()
    assert doc["schema"] == CHART_SCHEMA
    back = ChartGeometry.from_json(doc)
    assert back.domain == chart.domain
    for k in range(6):
        a, b = chart.metric[k], back.metric[k]
        assert type(a) is type(b)
        assert a.num.coeffs == b.num.coeffs
        assert a.den.coeffs == b.den.coeffs

    path = tmp_path / "chart.json"
    chart.save(str(path))
    again = ChartGeometry.load(str(path))
    assert again.to_json() == doc


def test_chart_json_rejects_unknown_schema():
    doc = euclidean_chart().to_json()
    doc["schema"] = "hetsol-chart/999"
    with pytest.raises(ValueError):
        ChartGeometry.from_json(doc)


# ---------------------------------------------------------------------------
# Failure modes


def test_degenerate_metric_at_point_raises():
    x = Poly3.variable(0)
    g11 = Poly3.const(1).poly_add(x.scale(-2))  # 1 - 2x, negative at x = 3/4
    one, zero = Poly3.const(1), Poly3.zero()
    chart = ChartGeometry((g11, zero, zero, one, zero, one), Poly3.zero(), "ball")
    with pytest.raises(SingularMetric):
        geometry_packet(chart, (F(3, 4), F(0), F(0)))


def test_metric_pole_at_point_raises():
    x = Poly3.variable(0)
    den = Poly3.const(1).poly_add(x.scale(-2))  # vanishes at x = 1/2
    entry = RationalField(Poly3.const(1), den)
    one, zero = Poly3.const(1), Poly3.zero()
    chart = ChartGeometry((entry, zero, zero, one, zero, one), Poly3.zero(), "ball")
    with pytest.raises(PoleAtPoint):
        geometry_packet(chart, (F(1, 2), F(0), F(0)))


def test_fd_stencil_must_stay_in_the_ball():
    chart = euclidean_chart()
    with pytest.raises(StencilOutOfDomain):
        fd_oracle(chart, (F(9, 10), F(0), F(0)), F(1, 16))
    with pytest.raises(StencilOutOfDomain):
        fd_oracle(chart, (F(0), F(0), F(0)), F(1))  # step itself too large
    with pytest.raises(ValueError):
        fd_oracle(chart, (F(0), F(0), F(0)), F(0))
