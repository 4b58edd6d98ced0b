"""Residuals and identities for the torsionless heterotic soliton system.

The system couples a metric g and dilaton phi through a constant kappa != 0:

    E  = Ric + nabla(dphi) - (1/2) e^{2 phi} g + kappa * (R o R)      (Sym2)
    YM = d*R + R(grad phi)                                  (1-form x 2-form)
    D  = delta(dphi) + |dphi|^2 - e^{2 phi} + kappa * |R|^2          (scalar)

and an equivalent second formulation obtained by expanding the curvature
through the dimension-three dictionary and regrouping:

    E2 = -kappa Ric o Ric + (1 + kappa s) Ric
         + (1/3)(-s - (3 kappa/4) s^2 - |dphi|^2 + e^{2 phi}) g + nabla(dphi)
    YM2 = dRic-route for d*R (contracted Bianchi) + dictionary R(grad phi)
    D2 = s - 3 delta(dphi) - 2 |dphi|^2 + (1/2) e^{2 phi}

The two formulations satisfy, off shell and for every (g, phi, kappa):

    D2 = tr_g E - 2 D,    E2 = E - (1/3)(tr_g E + D) g,    YM2 = YM.

The exponential weight e^{2 phi(p)} is transcendental for generic rational
phi(p); every evaluator therefore accepts an exact override for it, so the
identities above can be certified in exact rational arithmetic.  Without an
override the weight is exp(2 phi(p)) in floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .charts import ChartGeometry, DerivativePacket, GeometryPacket, full_packets, _zeros, _freeze
from .curvature3 import (Metric3, Sym2, curv_norm, curv_square, eigenreport,
                         harmonic_ricci_reduction, raise_covector, riemann_from_ricci,
                         sym_apply, sym_inner, sym_trace)
from .errors import InvalidKappa, NotHarmonic, PreconditionViolated
from .util import close, defect_magnitude


@dataclass(frozen=True)
class SolitonParams:
    """Coupling constant of the system; must be nonzero."""

    kappa: object

    def __post_init__(self):
        if self.kappa == 0:
            raise InvalidKappa("kappa must be nonzero")


@dataclass(frozen=True)
class SolitonResidual:
    e: Sym2
    ym: tuple        # ym[v1][v2][v3], antisymmetric in (v2, v3)
    d: object
    e_norm_sq: object
    ym_norm_sq: object
    d_norm_sq: object

    def max_norm_sq(self) -> float:
        return max(float(self.e_norm_sq), float(self.ym_norm_sq), float(self.d_norm_sq))

    def is_zero(self) -> bool:
        return self.e.is_zero() and self.d == 0 and \
            all(x == 0 for a in self.ym for b in a for x in b)


def ym_norm_sq(g: Metric3, ym) -> object:
    """Squared norm of a (1-form (x) 2-form)-valued tensor: half over the form slots."""
    gi = g.inv_mat()
    acc = 0
    for a in range(3):
        for i in range(3):
            for j in range(3):
                for a2 in range(3):
                    for i2 in range(3):
                        for j2 in range(3):
                            w = gi[a][a2] * gi[i][i2] * gi[j][j2]
                            if w == 0:
                                continue
                            acc = acc + w * ym[a][i][j] * ym[a2][i2][j2]
    return acc * Fraction(1, 2) if not isinstance(acc, float) else acc * 0.5


def _weight(chart: ChartGeometry, p, e2phi):
    """e^{2 phi(p)}: exact when overridden, float exp otherwise."""
    if e2phi is not None:
        return e2phi
    return math.exp(2.0 * float(chart.dilaton.eval(p)))


def _assemble(g: Metric3, e: Sym2, ym, d) -> SolitonResidual:
    return SolitonResidual(e, _freeze(ym), d,
                           sym_inner(g, e, e), ym_norm_sq(g, ym), d * d)


def residual_from_packets(gp: GeometryPacket, dp: DerivativePacket,
                          params: SolitonParams, e2phi) -> SolitonResidual:
    """First-formulation residual from precomputed packets."""
    g = gp.metric
    k = params.kappa
    half = Fraction(1, 2)
    rr = curv_square(g, gp.ric, gp.scal)
    e = gp.ric + dp.hess_dilaton - g.form.scale(half * e2phi) + rr.scale(k)

    grad = raise_covector(g, dp.dphi)
    r4 = gp.curv
    ym = _zeros(3, 3, 3)
    for v1 in range(3):
        for v2 in range(3):
            for v3 in range(3):
                acc = dp.div_curv[v1][v2][v3]
                for m in range(3):
                    if grad[m] != 0:
                        acc = acc + grad[m] * r4.riem4(m, v1, v2, v3)
                ym[v1][v2][v3] = acc

    d = dp.codiff_dilaton + dp.grad_norm_sq - e2phi + k * curv_norm(g, gp.ric, gp.scal)
    return _assemble(g, e, ym, d)


def residual_from_packets_v2(gp: GeometryPacket, dp: DerivativePacket,
                             params: SolitonParams, e2phi) -> SolitonResidual:
    """Second-formulation residual: curvature eliminated via the dictionary.

    The divergence term is evaluated through the contracted Bianchi identity
    (exterior covariant derivative of Ricci), and the algebraic curvature
    terms through the (Ric, s) dictionary, so this shares no curvature
    assembly with the first formulation beyond the packets themselves.
    """
    from .curvature3 import sym_compose

    g = gp.metric
    k = params.kappa
    third = Fraction(1, 3)
    e = (sym_compose(g, gp.ric, gp.ric).scale(-k)
         + gp.ric.scale(1 + k * gp.scal)
         + g.form.scale(third * (-gp.scal - Fraction(3, 4) * k * gp.scal * gp.scal
                                 - dp.grad_norm_sq + e2phi))
         + dp.hess_dilaton)

    grad = raise_covector(g, dp.dphi)
    rdict = riemann_from_ricci(g, gp.ric, gp.scal)
    ym = _zeros(3, 3, 3)
    for v1 in range(3):
        for v2 in range(3):
            for v3 in range(3):
                acc = dp.ric_exterior[v2][v3][v1]
                for m in range(3):
                    if grad[m] != 0:
                        acc = acc + grad[m] * rdict.riem4(m, v1, v2, v3)
                ym[v1][v2][v3] = acc

    d = gp.scal - 3 * dp.codiff_dilaton - 2 * dp.grad_norm_sq + Fraction(1, 2) * e2phi
    return _assemble(g, e, ym, d)


def residuals(chart: ChartGeometry, p, params: SolitonParams,
              e2phi=None) -> SolitonResidual:
    """First-formulation residual of a chart at a point."""
    gp, dp = full_packets(chart, p)
    return residual_from_packets(gp, dp, params, _weight(chart, p, e2phi))


def residuals_v2(chart: ChartGeometry, p, params: SolitonParams,
                 e2phi=None) -> SolitonResidual:
    """Second-formulation residual of a chart at a point."""
    gp, dp = full_packets(chart, p)
    return residual_from_packets_v2(gp, dp, params, _weight(chart, p, e2phi))


@dataclass(frozen=True)
class FormulationDefects:
    """Residuals of the three off-shell equivalence relations at one point."""

    e_relation: Sym2     # E2 - (E - (1/3)(tr E + D) g)
    ym_relation: tuple   # YM2 - YM, entrywise
    d_relation: object   # D2 - (tr E - 2 D)

    def all_zero(self) -> bool:
        return self.e_relation.is_zero() and self.d_relation == 0 and \
            all(x == 0 for a in self.ym_relation for b in a for x in b)

    def max_abs(self) -> float:
        return max(self.e_relation.max_abs(), defect_magnitude(self.d_relation),
                   max(defect_magnitude(x) for a in self.ym_relation
                       for b in a for x in b))


def formulation_defects(chart: ChartGeometry, p, params: SolitonParams,
                        e2phi=None) -> FormulationDefects:
    """Exact in exact mode, zero for every chart, point and kappa."""
    gp, dp = full_packets(chart, p)
    w = _weight(chart, p, e2phi)
    r1 = residual_from_packets(gp, dp, params, w)
    r2 = residual_from_packets_v2(gp, dp, params, w)
    g = gp.metric
    tr_e = sym_trace(g, r1.e)
    third = Fraction(1, 3)
    d_rel = r2.d - (tr_e - 2 * r1.d)
    e_rel = r2.e - (r1.e - g.form.scale(third * (tr_e + r1.d)))
    ym_rel = tuple(tuple(tuple(r2.ym[a][i][j] - r1.ym[a][i][j] for j in range(3))
                         for i in range(3)) for a in range(3))
    return FormulationDefects(e_rel, ym_rel, d_rel)


def ym_trace_identity(chart: ChartGeometry, p) -> tuple:
    """Trace component of the Yang-Mills operator minus (Ric(grad phi) - ds/2).

    Vanishes identically for every metric and dilaton, soliton or not: the
    trace part of d*R is -ds/2 by the contracted Bianchi identity, and the
    trace part of R(grad phi) is Ric(grad phi).
    """
    gp, dp = full_packets(chart, p)
    g = gp.metric
    gi = g.inv_mat()
    grad = raise_covector(g, dp.dphi)
    r4 = gp.curv
    half = Fraction(1, 2)
    out = []
    for c in range(3):
        t = 0
        for a in range(3):
            for b in range(3):
                gab = gi[a][b]
                if gab == 0:
                    continue
                acc = dp.div_curv[a][b][c]
                for m in range(3):
                    if grad[m] != 0:
                        acc = acc + grad[m] * r4.riem4(m, a, b, c)
                t = t + gab * acc
        ricg = sym_apply(gp.ric, grad)[c]
        out.append(t - (ricg - half * dp.dscal[c]))
    return tuple(out)


def scalar_identity(chart: ChartGeometry, p, params: SolitonParams,
                    e2phi=None):
    """s + |dphi|^2 - (5/2) e^{2 phi} + 3 kappa |R|^2 - (tr_g E + D).

    Zero for every input: the left group is what the combination
    tr_g(first equation) + (third equation) produces after the dictionary.
    """
    gp, dp = full_packets(chart, p)
    w = _weight(chart, p, e2phi)
    r1 = residual_from_packets(gp, dp, params, w)
    g = gp.metric
    lhs = gp.scal + dp.grad_norm_sq - Fraction(5, 2) * w \
        + 3 * params.kappa * curv_norm(g, gp.ric, gp.scal)
    return lhs - (sym_trace(g, r1.e) + r1.d)


# ---------------------------------------------------------------------------
# Constant-dilaton classification


@dataclass(frozen=True)
class ClassificationReport:
    kappa: object
    branch: str              # always "hyperbolic": the realizable branch
    s: object                # forced scalar curvature, -24/kappa
    e2phi: object            # forced exponential weight, 48/kappa
    ricci_factor: object     # Einstein factor, -8/kappa
    hyperbolic_residue: object   # eigenvalue equation residue at -8/kappa (zero)
    product_zero_residue: object  # residue of the 0 eigenvalue in the excluded case
    product_defect: object   # residue of the -2/kappa eigenvalue: -2/kappa != 0
    warnings: tuple = ()

    def as_dict(self) -> dict:
        return {
            "kappa": str(self.kappa),
            "branch": self.branch,
            "s": str(self.s),
            "e2phi": str(self.e2phi),
            "ricci_factor": str(self.ricci_factor),
            "hyperbolic_residue": str(self.hyperbolic_residue),
            "product_zero_residue": str(self.product_zero_residue),
            "product_defect": str(self.product_defect),
            "warnings": list(self.warnings),
        }


def eigenvalue_equation_residue(kappa, s, lam):
    """kappa lam^2 - (1 + kappa s) lam + (kappa/4) s^2 + s.

    Every Ricci eigenvalue of a constant-dilaton soliton must be a root.
    """
    quarter = Fraction(1, 4)
    return kappa * lam * lam - (1 + kappa * s) * lam + quarter * kappa * s * s + s


def classify_constant_dilaton(params: SolitonParams) -> ClassificationReport:
    """Constant-dilaton solitons are hyperbolic: s = -24/kappa, e^{2phi} = 48/kappa.

    The competing product-type branch would need Ricci eigenvalues (0, -2/kappa)
    with s = -4/kappa; the nonzero eigenvalue misses the eigenvalue equation
    by exactly -2/kappa, which excludes the branch for every kappa.
    Negative kappa is admitted arithmetically but flagged: it forces
    e^{2 phi} < 0, which no real dilaton attains.
    """
    k = params.kappa
    if k == 0:
        raise InvalidKappa("kappa must be nonzero")
    one = Fraction(1) if not isinstance(k, float) else 1.0
    s = -24 * one / k
    e2phi = 48 * one / k
    lam = -8 * one / k
    res_h = eigenvalue_equation_residue(k, s, lam)
    s_prod = -4 * one / k
    res_zero = eigenvalue_equation_residue(k, s_prod, 0 * one)
    res_prod = eigenvalue_equation_residue(k, s_prod, -2 * one / k)
    warnings = ()
    if k < 0:
        warnings = ("nonpositive-dilaton: kappa < 0 forces e^{2 phi} = 48/kappa < 0",)
    return ClassificationReport(k, "hyperbolic", s, e2phi, lam, res_h,
                                res_zero, res_prod, warnings)


# ---------------------------------------------------------------------------
# Divergence-free curvature with nonconstant dilaton: pointwise reduction


@dataclass(frozen=True)
class HarmonicSample:
    """Pointwise algebraic data standing in for a chart evaluation."""

    metric: Metric3
    ric: Sym2
    scal: object
    dphi: tuple
    e2phi: object


@dataclass(frozen=True)
class HarmonicStep:
    name: str
    defect: float
    passed: bool


@dataclass(frozen=True)
class HarmonicReport:
    regime: str
    steps: tuple
    first_violation: str | None
    passed: bool
    gradient_points: int
    constant_points: int

    def as_dict(self) -> dict:
        return {
            "regime": self.regime,
            "steps": [{"name": s.name,
                       "defect": s.defect if math.isfinite(s.defect) else "inf",
                       "passed": s.passed}
                      for s in self.steps],
            "first_violation": self.first_violation,
            "passed": self.passed,
            "gradient_points": self.gradient_points,
            "constant_points": self.constant_points,
        }


def _chart_samples(chart: ChartGeometry, points, tol: float) -> list[HarmonicSample]:
    out = []
    for p in points:
        gp, dp = full_packets(chart, p)
        worst = max(defect_magnitude(x) for a in dp.div_curv for b in a for x in b)
        if not close(worst, 0, tol):
            raise NotHarmonic(f"d*R has magnitude {worst} at {p}")
        out.append(HarmonicSample(gp.metric, gp.ric, gp.scal, dp.dphi,
                                  math.exp(2.0 * float(chart.dilaton.eval(p)))))
    return out


def harmonic_dilaton_test(source, params: SolitonParams, points=None,
                          tol: float = 1e-12) -> HarmonicReport:
    """Pointwise consequences of harmonic curvature for a soliton.

    `source` is a ChartGeometry (with `points`) or a list of HarmonicSample.
    Chart sources are checked for divergence-free curvature first
    (NotHarmonic otherwise); samples assert it by construction.

    At points with nonvanishing dilaton gradient the forced structure is
    checked stepwise: Ric kills the gradient, the gradient direction splits
    off the (s/2, s/2) eigenplane, Ric reconstructs as (s/2)(g - u (x) u),
    |Ric|^2 = s^2/2, and f = |dphi|^2 - (5/2) e^{2 phi} is constant across
    samples with the value -s - (3 kappa/4) s^2.
    """
    if isinstance(source, ChartGeometry):
        if points is None:
            raise ValueError("chart source needs sample points")
        samples = _chart_samples(source, points, tol)
    else:
        samples = list(source)

    grad_samples = [sm for sm in samples if any(x != 0 for x in sm.dphi)]
    const_count = len(samples) - len(grad_samples)

    if not grad_samples:
        step = HarmonicStep("gradient-locus", 0.0, True)
        return HarmonicReport(
            "gradient locus empty; vacuously in the hyperbolic regime",
            (step,), None, True, 0, const_count)

    steps: list[HarmonicStep] = []

    def log(name, defect):
        ok = close(defect, 0, tol) if not isinstance(defect, bool) else defect
        steps.append(HarmonicStep(name, defect_magnitude(defect) if not isinstance(defect, bool)
                                  else (0.0 if defect else 1.0), bool(ok)))

    # Step 1: the gradient is in the kernel of Ric.
    worst = 0
    for sm in grad_samples:
        grad = raise_covector(sm.metric, sm.dphi)
        rg = sym_apply(sm.ric, grad)
        for x in rg:
            if defect_magnitude(x) > defect_magnitude(worst):
                worst = x
    log("ricci-kills-gradient", worst)

    # Step 2+3: forced form via the pointwise reduction; eigenstructure (0, s/2, s/2).
    worst_model = 0
    worst_norm = 0
    worst_eig = 0.0
    reduction_error = None
    for sm in grad_samples:
        try:
            model, norm_sq = harmonic_ricci_reduction(sm.metric, sm.ric, sm.dphi,
                                                      sm.scal, tol)
        except PreconditionViolated as exc:
            reduction_error = str(exc)
            break
        diff = sm.ric - model
        worst_model = max(defect_magnitude(worst_model), diff.max_abs())
        worst_norm = max(defect_magnitude(worst_norm),
                         defect_magnitude(norm_sq - sym_inner(sm.metric, sm.ric, sm.ric)))
        rep = eigenreport(sm.metric, sm.ric)
        half_s = 0.5 * float(sm.scal)
        target = sorted([0.0, half_s, half_s])
        worst_eig = max(worst_eig, max(abs(a - b) for a, b in
                                       zip(rep.eigenvalues, target)))
    if reduction_error is not None:
        steps.append(HarmonicStep("forced-ricci-form", float("inf"), False))
    else:
        log("forced-ricci-form", worst_model)
        log("eigenstructure", worst_eig)
        log("ricci-norm-half-s-squared", worst_norm)

    # Step 4: f-constancy with the forced value.
    k = params.kappa
    worst_f = 0
    s0 = grad_samples[0].scal
    for sm in grad_samples:
        gradsq = sum(sm.metric.inv_mat()[i][j] * sm.dphi[i] * sm.dphi[j]
                     for i in range(3) for j in range(3))
        f = gradsq - Fraction(5, 2) * sm.e2phi
        forced = -sm.scal - Fraction(3, 4) * k * sm.scal * sm.scal
        d1 = f - forced
        d2 = sm.scal - s0
        for d in (d1, d2):
            if defect_magnitude(d) > defect_magnitude(worst_f):
                worst_f = d
    log("f-constancy", worst_f)

    first = next((s.name for s in steps if not s.passed), None)
    return HarmonicReport("dilaton-gradient regime", tuple(steps), first,
                          first is None, len(grad_samples), const_count)
