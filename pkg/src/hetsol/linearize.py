"""Linearized geometry: variation of curvature along metric deformations.

For a symmetric deformation h of the metric and a dilaton variation xi, this
module evaluates at a point:

    lin_ricci(h)  = (1/2) Lich(h) - symgrad(div*(h)) - (1/2) Hess(tr h)
    lin_scalar(h) = codiff d (tr h) + codiff(div*(h)) - <h, Ric>

with the Lichnerowicz Laplacian

    Lich(h) = nabla*nabla h + h o Ric + Ric o h - 2 R0(h),
    R0(h)_ab = R_iabj h^{ij},   div*(h)_j = -g^{ab} (nabla_a h)_bj,

plus, on an Einstein background, the variations of the quadratic curvature
quantities (the dimension-three dictionary collapses them):

    d(R o R)(h) = (s/3) lin_ricci(h) - (s^2/18) h
    d|R|^2(h)   = (s/6) lin_scalar(h)

the gauge operator pair (Lie derivative image and its L^2 adjoint), the exact
coefficient chain that rigidifies hyperbolic backgrounds, and the
infinitesimal-Einstein operator nabla*nabla h - 2 R0(h).

Everything is assembled from jets, exactly over rationals.  Independent
finite-difference checks live in `fd_direction` and the sweep helpers: they
re-evaluate the nonlinear curvature on perturbed charts and differentiate
numerically (exactly, when the step is rational).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .charts import ChartGeometry, Scaffold, _zeros, perturbed_chart
from .curvature3 import Metric3, Sym2, curv_norm, curv_square, sym_compose, sym_inner
from .errors import InvalidKappa, NotEinstein, NotTT, PreconditionViolated
from .fields import Field, TrigField, jet_d1, jet_d2, jet_value
from .soliton import SolitonParams
from .util import close, solve_linear_particular

_SYM_PAIRS = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))


@dataclass(frozen=True)
class Deformation:
    """Metric deformation (6 component fields) with a dilaton variation."""

    h: tuple
    xi: Field

    def __post_init__(self):
        if len(self.h) != 6:
            raise ValueError("deformation needs 6 metric component fields")


def _h_fields(h):
    if isinstance(h, Deformation):
        return h.h
    return tuple(h)


@dataclass(frozen=True)
class BackgroundConstants:
    """Constant background data (kappa, s, e^{2 phi}) for coefficient work."""

    kappa: object
    s: object
    e2phi: object

    @property
    def lam(self):
        return self.s / 3 if isinstance(self.s, float) else self.s * Fraction(1, 3)

    @classmethod
    def hyperbolic(cls, kappa) -> "BackgroundConstants":
        if kappa == 0:
            raise InvalidKappa("kappa must be nonzero")
        one = 1.0 if isinstance(kappa, float) else Fraction(1)
        return cls(kappa, -24 * one / kappa, 48 * one / kappa)

    def check_hyperbolic(self) -> None:
        if self.kappa * self.s != -24 or self.kappa * self.e2phi != 48:
            raise PreconditionViolated("background is not hyperbolic-normalized")


@dataclass(frozen=True)
class DeformationOps:
    """All pointwise linearization ingredients for one (chart, h, p)."""

    h: Sym2
    tr_h: object
    div: tuple            # div*(h), a covector
    nabla_star_nabla: Sym2
    symgrad_div: Sym2     # symmetrized nabla of div*(h)
    hess_tr: Sym2
    codiff_d_tr: object   # codiff d (tr h)
    codiff_div: object    # codiff (div*(h))
    r0: Sym2
    ric_compose: Sym2     # h o Ric + Ric o h
    lichnerowicz: Sym2
    lin_ricci: Sym2
    lin_scalar: object
    h_ric_inner: object


def deformation_ops(chart: ChartGeometry, h, p) -> DeformationOps:
    """Assemble every linearization ingredient at p from jets."""
    hf = _h_fields(h)
    sc = Scaffold(chart, p, order=2)
    return _deformation_ops_from(sc, hf, p)


def _deformation_ops_from(sc: Scaffold, hf, p) -> DeformationOps:
    gi = sc.ginv
    gamma, dgamma = sc.gamma, sc.dgamma

    hj = [hf[k].jet(p, 2) for k in range(6)]
    jets = [[None] * 3 for _ in range(3)]
    for k, (i, j) in enumerate(_SYM_PAIRS):
        jets[i][j] = hj[k]
        jets[j][i] = hj[k]
    hm = [[jet_value(jets[i][j]) for j in range(3)] for i in range(3)]
    dh = [[[jet_d1(jets[i][j], a) for j in range(3)] for i in range(3)] for a in range(3)]
    d2h = [[[[jet_d2(jets[i][j], a, b) for j in range(3)] for i in range(3)]
            for b in range(3)] for a in range(3)]

    # first covariant derivative
    nh = _zeros(3, 3, 3)
    for a in range(3):
        for i in range(3):
            for j in range(3):
                acc = dh[a][i][j]
                for m in range(3):
                    acc = acc - gamma[m][a][i] * hm[m][j] - gamma[m][a][j] * hm[i][m]
                nh[a][i][j] = acc

    # second covariant derivative: n2h[b][a][i][j] = nabla_b nabla_a h_ij
    n2h = _zeros(3, 3, 3, 3)
    for b in range(3):
        for a in range(3):
            for i in range(3):
                for j in range(3):
                    acc = d2h[b][a][i][j]
                    for m in range(3):
                        acc = acc - dgamma[b][m][a][i] * hm[m][j] \
                                  - gamma[m][a][i] * dh[b][m][j] \
                                  - dgamma[b][m][a][j] * hm[i][m] \
                                  - gamma[m][a][j] * dh[b][i][m]
                        acc = acc - gamma[m][b][a] * nh[m][i][j] \
                                  - gamma[m][b][i] * nh[a][m][j] \
                                  - gamma[m][b][j] * nh[a][i][m]
                    n2h[b][a][i][j] = acc

    div = tuple(-sum(gi[a][b] * nh[a][b][j] for a in range(3) for b in range(3))
                for j in range(3))

    nsn = [[-sum(gi[a][b] * n2h[a][b][i][j] for a in range(3) for b in range(3))
            for j in range(3)] for i in range(3)]

    # nabla of div*(h): nabla_i (div h)_j = -g^{ab} n2h[i][a][b][j]
    ndiv = [[-sum(gi[a][b] * n2h[i][a][b][j] for a in range(3) for b in range(3))
             for j in range(3)] for i in range(3)]
    sgd = [[(ndiv[i][j] + ndiv[j][i]) * Fraction(1, 2) for j in range(3)] for i in range(3)]

    # trace field and its Hessian
    tr_h = sum(gi[i][j] * hm[i][j] for i in range(3) for j in range(3))
    dtr = [sum(sc.dginv[a][i][j] * hm[i][j] + gi[i][j] * dh[a][i][j]
               for i in range(3) for j in range(3)) for a in range(3)]
    d2tr = [[sum(sc.d2ginv[a][b][i][j] * hm[i][j]
                 + sc.dginv[a][i][j] * dh[b][i][j]
                 + sc.dginv[b][i][j] * dh[a][i][j]
                 + gi[i][j] * d2h[a][b][i][j]
                 for i in range(3) for j in range(3)) for b in range(3)] for a in range(3)]
    hess_tr = [[d2tr[i][j] - sum(gamma[m][i][j] * dtr[m] for m in range(3))
                for j in range(3)] for i in range(3)]

    codiff_d_tr = -sum(gi[i][j] * hess_tr[i][j] for i in range(3) for j in range(3))
    codiff_div = -sum(gi[i][j] * ndiv[i][j] for i in range(3) for j in range(3))

    # curvature action R0 and Ricci composition
    hup = [[sum(gi[i][a] * gi[j][b] * hm[a][b] for a in range(3) for b in range(3))
            for j in range(3)] for i in range(3)]
    r0 = [[sum(sc.r4[i][a][b][j] * hup[i][j] for i in range(3) for j in range(3))
           for b in range(3)] for a in range(3)]

    hs = Sym2.from_matrix(hm)
    g3 = sc.metric
    comp = sym_compose(g3, hs, sc.ric) + sym_compose(g3, sc.ric, hs)

    nsn_s = Sym2.from_matrix(nsn)
    r0_s = Sym2.from_matrix([[ (r0[a][b] + r0[b][a]) * Fraction(1, 2) for b in range(3)]
                             for a in range(3)])
    lich = nsn_s + comp - r0_s.scale(2)

    hess_tr_s = Sym2.from_matrix(hess_tr)
    sgd_s = Sym2.from_matrix(sgd)
    half = Fraction(1, 2)
    lin_ric = lich.scale(half) - sgd_s - hess_tr_s.scale(half)

    h_ric = sym_inner(g3, hs, sc.ric)
    lin_s = codiff_d_tr + codiff_div - h_ric

    return DeformationOps(hs, tr_h, div, nsn_s, sgd_s, hess_tr_s, codiff_d_tr,
                          codiff_div, r0_s, comp, lich, lin_ric, lin_s, h_ric)


def lin_ricci(chart: ChartGeometry, h, p) -> Sym2:
    """Variation of the Ricci tensor along h, at p."""
    return deformation_ops(chart, h, p).lin_ricci


def lin_scalar(chart: ChartGeometry, h, p):
    """Variation of the scalar curvature along h, at p."""
    return deformation_ops(chart, h, p).lin_scalar


def _einstein_scal(sc: Scaffold, tol: float):
    s = sc.scal
    third = Fraction(1, 3)
    defect = sc.ric - sc.metric.form.scale(third * s)
    if not all(close(x, 0, tol) for x in defect.c):
        raise NotEinstein(f"Ric - (s/3) g has entries {defect.c}")
    return s


def lin_curv_einstein(chart: ChartGeometry, h, p, tol: float = 1e-9):
    """(d(R o R)(h), d|R|^2(h)) on an Einstein background.

    Returns ((s/3) lin_ricci(h) - (s^2/18) h, (s/6) lin_scalar(h)); raises
    NotEinstein when Ric != (s/3) g at p beyond tolerance.
    """
    hf = _h_fields(h)
    sc = Scaffold(chart, p, order=2)
    s = _einstein_scal(sc, tol)
    ops = _deformation_ops_from(sc, hf, p)
    third = Fraction(1, 3)
    sq = ops.lin_ricci.scale(third * s) - ops.h.scale(Fraction(1, 18) * s * s)
    nm = Fraction(1, 6) * s * ops.lin_scalar
    return sq, nm


def lin_curv_norm_independent(chart: ChartGeometry, h, p):
    """d|R|^2(h) evaluated without the Einstein shortcut.

    Uses |R|^2 = |Ric|^2 - s^2/4 directly:
        d|Ric|^2(h) = 2 <lin_ricci(h), Ric> - 2 <h, Ric o Ric>,
        d|R|^2(h)   = d|Ric|^2(h) - (s/2) lin_scalar(h).
    Valid on any background; on Einstein ones it reproduces (s/6) lin_scalar.
    """
    hf = _h_fields(h)
    sc = Scaffold(chart, p, order=2)
    ops = _deformation_ops_from(sc, hf, p)
    g3 = sc.metric
    dricnorm = 2 * sym_inner(g3, ops.lin_ricci, sc.ric) \
        - 2 * sym_inner(g3, ops.h, sym_compose(g3, sc.ric, sc.ric))
    return dricnorm - Fraction(1, 2) * sc.scal * ops.lin_scalar


# ---------------------------------------------------------------------------
# Gauge operator pair


def gauge_image(chart: ChartGeometry, v, p):
    """(Lie derivative of g along v, dphi(v)) at p; v is 3 component fields."""
    vj = [v[a].jet(p, 1) for a in range(3)]
    gj = [[chart.metric_entry(i, j).jet(p, 1) for j in range(3)] for i in range(3)]
    pj = chart.dilaton.jet(p, 1)
    vv = [jet_value(vj[a]) for a in range(3)]
    lie = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            acc = 0
            for a in range(3):
                acc = acc + vv[a] * jet_d1(gj[i][j], a) \
                          + jet_value(gj[a][j]) * jet_d1(vj[a], i) \
                          + jet_value(gj[i][a]) * jet_d1(vj[a], j)
            lie[i][j] = acc
    dphi_v = sum(vv[a] * jet_d1(pj, a) for a in range(3))
    return Sym2.from_matrix(lie), dphi_v


def gauge_adjoint(chart: ChartGeometry, h, xi: Field, p):
    """(2 div*(h) + xi dphi) raised to a vector: the L^2 adjoint direction."""
    hf = _h_fields(h)
    sc = Scaffold(chart, p, order=2)
    ops = _deformation_ops_from(sc, hf, p)
    xv = xi.eval(p)
    alpha = tuple(2 * ops.div[j] + xv * sc.dphi[j] for j in range(3))
    gi = sc.ginv
    return tuple(sum(gi[i][j] * alpha[j] for j in range(3)) for i in range(3))


def torus_mean(f: TrigField, nodes: int):
    """Exact value of the uniform nodes^3 grid average of a trig polynomial.

    Frequencies divisible by `nodes` in every component alias onto the
    constant; all sine terms average to zero on the grid.  When nodes exceeds
    the maximal frequency this is the true mean.
    """
    if nodes < 1:
        raise ValueError("need at least one node per axis")
    acc = Fraction(0)
    for k, (a, _b) in f.coeffs.items():
        if all(x % nodes == 0 for x in k):
            acc = acc + a
    return acc


def torus_mean_grid(f: TrigField, nodes: int) -> float:
    """Float uniform-grid average; independent check of torus_mean."""
    import math
    total = 0.0
    step = 2 * math.pi / nodes
    for i in range(nodes):
        for j in range(nodes):
            for k in range(nodes):
                total += f.eval((i * step, j * step, k * step))
    return total / nodes ** 3


@dataclass(frozen=True)
class PairingReport:
    lhs_mean: object      # grid mean of <gauge_image(v), (h, xi)>
    rhs_mean: object      # grid mean of <v, gauge_adjoint(h, xi)>
    defect: object
    nodes: int
    max_frequency: int
    exact: bool


def gauge_pairing(chart: ChartGeometry, v, h, xi: TrigField, nodes: int) -> PairingReport:
    """Integration-by-parts defect of the gauge pair on a flat-metric torus.

    Requires a torus chart whose metric components are constant; then every
    integrand is a trig polynomial and the uniform-grid quadrature is
    evaluated symbolically, so the adjointness defect is an exact rational
    (the common positive volume factor sqrt(det g) (2 pi)^3 is dropped).
    Aliasing is faithfully reproduced: with nodes <= 2 * max frequency the
    defect generally does not vanish.
    """
    if chart.domain != "torus":
        raise PreconditionViolated("gauge pairing quadrature needs a torus chart")
    if not all(isinstance(f, TrigField) and f.is_constant() for f in chart.metric):
        raise PreconditionViolated("exact pairing needs constant metric components")
    hf = _h_fields(h)
    g = Metric3(Sym2(*(f.mean() for f in chart.metric)))
    gm, gi = g.mat(), g.inv_mat()
    phi = chart.dilaton

    # image side: (L_v g)_ij = g_aj d_i v^a + g_ia d_j v^a (constant metric)
    dv = [[v[a].diff(i) for a in range(3)] for i in range(3)]
    lie = [[TrigField.zero() for _ in range(3)] for _ in range(3)]
    for i in range(3):
        for j in range(3):
            f = TrigField.zero()
            for a in range(3):
                f = f.trig_add(dv[i][a].scale(gm[a][j])).trig_add(dv[j][a].scale(gm[i][a]))
            lie[i][j] = f
    inner = TrigField.zero()
    for i in range(3):
        for j in range(3):
            for a in range(3):
                for b in range(3):
                    w = gi[i][a] * gi[j][b]
                    if w == 0:
                        continue
                    inner = inner.trig_add((lie[i][j] * _h_entry(hf, a, b)).scale(w))
    dphi = [phi.diff(a) for a in range(3)]
    dphi_v = TrigField.zero()
    for a in range(3):
        dphi_v = dphi_v.trig_add(v[a] * dphi[a])
    lhs_f = inner.trig_add(dphi_v * xi)

    # adjoint side: (div*(h))_j = -g^{ab} d_a h_bj; pair with v as a 1-form
    rhs_f = TrigField.zero()
    for j in range(3):
        divj = TrigField.zero()
        for a in range(3):
            for b in range(3):
                w = gi[a][b]
                if w == 0:
                    continue
                divj = divj.trig_add(_h_entry(hf, b, j).diff(a).scale(-w))
        aj = divj.scale(2).trig_add((xi * dphi[j]))
        rhs_f = rhs_f.trig_add(v[j] * aj)

    lhs = torus_mean(lhs_f, nodes)
    rhs = torus_mean(rhs_f, nodes)
    freq = max([lhs_f.max_frequency(), rhs_f.max_frequency()]
               + [f.max_frequency() for f in list(v) + list(hf) + [xi, phi]])
    return PairingReport(lhs, rhs, lhs - rhs, nodes, freq, True)


def _h_entry(hf, i, j):
    return hf[_SYM_PAIRS.index((min(i, j), max(i, j)))]


# ---------------------------------------------------------------------------
# Coefficient chain on the hyperbolic background


@dataclass(frozen=True)
class EssentialChainReport:
    """Exact coefficients of the rigidity chain, derived then verified.

    Derivations (all on the background Ric = (s/3) g, kappa s = -24,
    kappa e^{2 phi} = 48, where d|R|^2(h) = (s/6) ds(h)):

      c_scalar_identity: linearized scalar identity collapses to
          (1 + kappa s/2) ds(h) - 5 e^{2 phi} xi = 0.
      c_dxi: eliminating d[ds(h)] = (2/3) s dxi gives
          ((1 + kappa s/2)(2/3) s - 5 e^{2 phi}) dxi = 0.
      c_ds_over_xi: with xi constant, the linearized dilaton equation
          -2 e^{2 phi} xi + kappa (s/6) ds(h) = 0 forces ds(h) = c * xi.
      c_final_xi: substituting into the linearized Einstein trace
          (1 + kappa s/3) ds(h) - 3 e^{2 phi} xi = c * xi, whence xi = 0.
      c_lin_ricci, c_h: the linearized Einstein equation collapses to
          c_lin_ricci * dRic(h) + c_h * h = 0.
    """

    kappa: object
    background: BackgroundConstants
    c_scalar_identity: object   # -11, kappa-independent
    c_dxi: object               # -64/kappa
    c_ds_over_xi: object        # -24/kappa
    c_final_xi: object          # 24/kappa
    c_lin_ricci: object         # -7, kappa-independent
    c_h: object                 # -56/kappa
    checks: tuple               # (name, derived, expected, ok)

    @property
    def all_ok(self) -> bool:
        return all(c[3] for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "kappa": str(self.kappa),
            "coefficients": {
                "scalar_identity": str(self.c_scalar_identity),
                "dxi": str(self.c_dxi),
                "ds_over_xi": str(self.c_ds_over_xi),
                "final_xi": str(self.c_final_xi),
                "lin_ricci": str(self.c_lin_ricci),
                "h": str(self.c_h),
            },
            "checks": [{"name": n, "derived": str(d), "expected": str(e), "ok": ok}
                       for (n, d, e, ok) in self.checks],
        }


def essential_chain(params: SolitonParams) -> EssentialChainReport:
    """Derive the rigidity-chain coefficients in exact arithmetic."""
    k = params.kappa
    bg = BackgroundConstants.hyperbolic(k)
    s, e2phi = bg.s, bg.e2phi
    one = Fraction(1) if not isinstance(k, float) else 1.0

    c1 = 1 + k * s * Fraction(1, 2)
    c2 = c1 * Fraction(2, 3) * s - 5 * e2phi
    # linearized dilaton equation: -2 e^{2phi} xi + kappa (s/6) ds = 0
    #   => ds = (2 e^{2phi} / (kappa s / 6)) xi
    c3 = 2 * e2phi / (k * s * Fraction(1, 6))
    # linearized Einstein trace: (1 + kappa s/3) ds - 3 e^{2phi} xi = c4 xi
    c5 = 1 + k * s * Fraction(1, 3)
    c4 = c5 * c3 - 3 * e2phi
    c6 = -(Fraction(1, 2) * e2phi + Fraction(1, 18) * k * s * s)

    checks = (
        ("scalar-identity-coefficient", c1, -11 * one, c1 == -11),
        ("dxi-coefficient", c2, -64 * one / k, c2 == -64 * one / k),
        ("ds-over-xi", c3, -24 * one / k, c3 == -24 * one / k),
        ("final-xi-coefficient", c4, 24 * one / k, c4 == 24 * one / k),
        ("lin-ricci-coefficient", c5, -7 * one, c5 == -7),
        ("h-coefficient", c6, -56 * one / k, c6 == -56 * one / k),
        ("kappa-times-dxi", k * c2, -64 * one, k * c2 == -64),
        ("kappa-times-h", k * c6, -56 * one, k * c6 == -56),
    )
    return EssentialChainReport(k, bg, c1, c2, c3, c4, c5, c6, checks)


# ---------------------------------------------------------------------------
# Infinitesimal Einstein deformations


@dataclass(frozen=True)
class EinsteinDeformationCheck:
    residual: Sym2          # nabla*nabla h - 2 R0(h)
    reduction_defect: Sym2  # lin_ricci - (1/2)(nabla*nabla h + (2/3) s h - 2 R0(h))
    tr_defect: object
    div_defect: tuple


def einstein_def_check(chart: ChartGeometry, h, p, tol: float = 1e-9) -> EinsteinDeformationCheck:
    """Residual of the infinitesimal-Einstein operator with its bookkeeping.

    The reduction defect equals -symgrad(div*(h)) - (1/2) Hess(tr h); it
    vanishes when h is transverse-traceless to first jet order at p (not
    merely pointwise), which is how the slice conditions enter.
    """
    hf = _h_fields(h)
    sc = Scaffold(chart, p, order=2)
    s = _einstein_scal(sc, tol)
    ops = _deformation_ops_from(sc, hf, p)
    residual = ops.nabla_star_nabla - ops.r0.scale(2)
    two_thirds = Fraction(2, 3)
    half = Fraction(1, 2)
    reduction = (ops.nabla_star_nabla + ops.h.scale(two_thirds * s)
                 - ops.r0.scale(2)).scale(half)
    return EinsteinDeformationCheck(residual, ops.lin_ricci - reduction,
                                    ops.tr_h, ops.div)


def einstein_def_residual(chart: ChartGeometry, h, p, tol: float = 1e-9) -> Sym2:
    """nabla*nabla h - 2 R0(h) for a transverse-traceless h at p.

    Raises NotTT when tr_g h or div*(h) at p exceeds the tolerance, and
    NotEinstein when the background fails Ric = (s/3) g there.
    """
    chk = einstein_def_check(chart, h, p, tol)
    if not close(chk.tr_defect, 0, tol):
        raise NotTT(f"tr_g h = {chk.tr_defect} at {p}")
    if not all(close(x, 0, tol) for x in chk.div_defect):
        raise NotTT(f"div*(h) = {chk.div_defect} at {p}")
    return chk.residual


def project_tt_jet(chart: ChartGeometry, p, h) -> tuple:
    """Correct a polynomial deformation so it is transverse-traceless to
    jet order at p: tr_g h vanishes to second order and div*(h) to first.

    Returns 6 polynomial fields of degree <= 2.  The correction solves an
    exact underdetermined linear system in the 60 monomial coefficients.
    """
    from .fields import Poly3

    hf = _h_fields(h)
    monos = [(a, b, c) for a in range(3) for b in range(3) for c in range(3)
             if a + b + c <= 2]
    sc = Scaffold(chart, p, order=2)

    def constraint_vec(fields):
        ops = _deformation_ops_from(sc, fields, p)
        hj = [fields[k].jet(p, 2) for k in range(6)]
        jets = [[None] * 3 for _ in range(3)]
        for k2, (i, j) in enumerate(_SYM_PAIRS):
            jets[i][j] = hj[k2]
            jets[j][i] = hj[k2]
        gi, dgi, d2gi = sc.ginv, sc.dginv, sc.d2ginv
        hm = [[jet_value(jets[i][j]) for j in range(3)] for i in range(3)]
        dh = [[[jet_d1(jets[i][j], a) for j in range(3)] for i in range(3)]
              for a in range(3)]
        out = [ops.tr_h]
        # first and second derivatives of the trace field
        for a in range(3):
            out.append(sum(dgi[a][i][j] * hm[i][j] + gi[i][j] * dh[a][i][j]
                           for i in range(3) for j in range(3)))
        for a in range(3):
            for b in range(a, 3):
                out.append(sum(d2gi[a][b][i][j] * hm[i][j]
                               + dgi[a][i][j] * dh[b][i][j]
                               + dgi[b][i][j] * dh[a][i][j]
                               + gi[i][j] * jet_d2(jets[i][j], a, b)
                               for i in range(3) for j in range(3)))
        out.extend(ops.div)
        out.extend(_div_gradient(sc, fields, p))
        return out

    zero = Poly3.zero()
    base = [f if isinstance(f, Poly3) else zero for f in hf]
    target = constraint_vec(tuple(base))
    ncols = 6 * len(monos)
    cols = []
    for slot in range(6):
        for mono in monos:
            basis = [zero] * 6
            basis[slot] = Poly3({mono: Fraction(1)})
            cols.append(constraint_vec(tuple(basis)))
    nrows = len(target)
    rows = [[cols[c][r] for c in range(ncols)] for r in range(nrows)]
    sol = solve_linear_particular(rows, target)
    corrected = []
    idx = 0
    for slot in range(6):
        coeffs = dict(base[slot].coeffs)
        for mono in monos:
            c = sol[idx]
            idx += 1
            if c != 0:
                coeffs[mono] = coeffs.get(mono, Fraction(0)) - c
        corrected.append(Poly3(coeffs))
    return tuple(corrected)


def _div_gradient(sc: Scaffold, fields, p):
    """All nine entries of nabla(div*(h)) at p (unsymmetrized)."""
    hj = [fields[k].jet(p, 2) for k in range(6)]
    jets = [[None] * 3 for _ in range(3)]
    for k2, (i, j) in enumerate(_SYM_PAIRS):
        jets[i][j] = hj[k2]
        jets[j][i] = hj[k2]
    hm = [[jet_value(jets[i][j]) for j in range(3)] for i in range(3)]
    dh = [[[jet_d1(jets[i][j], a) for j in range(3)] for i in range(3)] for a in range(3)]
    d2h = [[[[jet_d2(jets[i][j], a, b) for j in range(3)] for i in range(3)]
            for b in range(3)] for a in range(3)]
    gamma, dgamma, gi = sc.gamma, sc.dgamma, sc.ginv
    nh = _zeros(3, 3, 3)
    for a in range(3):
        for i in range(3):
            for j in range(3):
                acc = dh[a][i][j]
                for m in range(3):
                    acc = acc - gamma[m][a][i] * hm[m][j] - gamma[m][a][j] * hm[i][m]
                nh[a][i][j] = acc
    n2h = _zeros(3, 3, 3, 3)
    for b in range(3):
        for a in range(3):
            for i in range(3):
                for j in range(3):
                    acc = d2h[b][a][i][j]
                    for m in range(3):
                        acc = acc - dgamma[b][m][a][i] * hm[m][j] \
                                  - gamma[m][a][i] * dh[b][m][j] \
                                  - dgamma[b][m][a][j] * hm[i][m] \
                                  - gamma[m][a][j] * dh[b][i][m]
                        acc = acc - gamma[m][b][a] * nh[m][i][j] \
                                  - gamma[m][b][i] * nh[a][m][j] \
                                  - gamma[m][b][j] * nh[a][i][m]
                    n2h[b][a][i][j] = acc
    out = []
    for i in range(3):
        for j in range(3):
            out.append(-sum(gi[a][b] * n2h[i][a][b][j]
                            for a in range(3) for b in range(3)))
    return out


# ---------------------------------------------------------------------------
# Finite-difference direction derivatives of the nonlinear machinery


def fd_direction(chart: ChartGeometry, h, p, step, quantity: str):
    """Central difference (F(g + t h) - F(g - t h)) / (2t) at t = step.

    quantity: "ricci" -> Sym2, "scalar" -> Scalar,
              "curv_square" -> Sym2, "curv_norm" -> Scalar.
    Exact when the chart, deformation, point and step are rational.
    """
    hf = _h_fields(h)
    plus = Scaffold(perturbed_chart(chart, hf, step), p, order=2)
    minus = Scaffold(perturbed_chart(chart, hf, -step), p, order=2)
    inv2t = (Fraction(1) / (2 * step)) if not isinstance(step, float) else 1.0 / (2 * step)

    if quantity == "ricci":
        return (plus.ric - minus.ric).scale(inv2t)
    if quantity == "scalar":
        return (plus.scal - minus.scal) * inv2t
    if quantity == "curv_square":
        sq_p = curv_square(plus.metric, plus.ric, plus.scal)
        sq_m = curv_square(minus.metric, minus.ric, minus.scal)
        return (sq_p - sq_m).scale(inv2t)
    if quantity == "curv_norm":
        n_p = curv_norm(plus.metric, plus.ric, plus.scal)
        n_m = curv_norm(minus.metric, minus.ric, minus.scal)
        return (n_p - n_m) * inv2t
    raise ValueError(f"unknown quantity {quantity!r}")


@dataclass(frozen=True)
class FdSweepRow:
    quantity: str
    analytic_scale: float
    defect: float
    defect_half: float
    ratio: float
    rel_error: float


def linearization_fd_sweep(chart: ChartGeometry, h, p, step,
                           einstein: bool = True, quantities=None) -> tuple:
    """Compare analytic linearizations against central differences.

    Produces one row per quantity with the defect at `step`, at `step/2`,
    their ratio (about 4 for a second-order scheme) and the relative error
    measured at the halved step.
    """
    hf = _h_fields(h)
    ops = deformation_ops(chart, hf, p)
    rows = []
    analytic = {"ricci": ops.lin_ricci, "scalar": ops.lin_scalar}
    if einstein:
        sq, nm = lin_curv_einstein(chart, hf, p)
        analytic["curv_square"] = sq
        analytic["curv_norm"] = nm
    if quantities is not None:
        analytic = {q: analytic[q] for q in quantities}

    for quantity, exact_val in analytic.items():
        fd1 = fd_direction(chart, hf, p, step, quantity)
        fd2 = fd_direction(chart, hf, p, step / 2, quantity)
        if isinstance(exact_val, Sym2):
            d1 = (fd1 - exact_val).max_abs()
            d2 = (fd2 - exact_val).max_abs()
            scale = max(1.0, exact_val.max_abs())
        else:
            d1 = abs(float(fd1 - exact_val))
            d2 = abs(float(fd2 - exact_val))
            scale = max(1.0, abs(float(exact_val)))
        ratio = d1 / d2 if d2 > 0 else float("nan")
        rows.append(FdSweepRow(quantity, scale, d1, d2, ratio, d2 / scale))
    return tuple(rows)
