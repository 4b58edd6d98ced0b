"""Finite-difference oracle for chart geometry.

Every derivative here comes from central differences of metric and dilaton
component *evaluations*; none of the closed-form derivative machinery in
`charts` is reused.  With rational charts, rational points and a rational
step the differences are computed exactly, so the only deviation from the
closed-form packets is the O(step^2) truncation error itself.  That makes
convergence-order measurements clean: halving the step divides the defect
by almost exactly four.

Intermediate point evaluations are memoized per call; the stencils of
nested differences overlap heavily.
"""

from __future__ import annotations

from fractions import Fraction

from .charts import ChartGeometry, DerivativePacket, GeometryPacket, _freeze, _zeros
from .curvature3 import Curv3, Metric3, Sym2, TWO_FORM_BASIS
from .errors import StencilOutOfDomain

# Deepest stencil nesting used below: three levels of +-step.
_DEPTH = 3


def _shift(p, a, t):
    q = list(p)
    q[a] = q[a] + t
    return tuple(q)


def _check_stencil(chart: ChartGeometry, p, step) -> None:
    if chart.domain == "torus":
        return
    # conservative: the ball must contain p plus _DEPTH steps in each axis
    reach = _DEPTH * step
    # |p| + reach*sqrt(3) < 1, using sqrt(3) < 7/4 to stay rational
    if isinstance(step, float):
        margin = 1 - 1.7320508075688772 * reach
    else:
        margin = 1 - Fraction(7, 4) * reach
    if margin <= 0:
        raise StencilOutOfDomain(f"step {step} too large for the unit ball")
    if sum(x * x for x in p) >= margin * margin:
        raise StencilOutOfDomain(f"stencil of radius {reach} around {p} may leave the ball")


class _Memo:
    """Point-indexed cache for one fd_oracle invocation."""

    def __init__(self, fn):
        self.fn = fn
        self.cache: dict = {}

    def __call__(self, q):
        if q not in self.cache:
            self.cache[q] = self.fn(q)
        return self.cache[q]


def fd_oracle(chart: ChartGeometry, p, step) -> tuple[GeometryPacket, DerivativePacket]:
    """Geometry and derivative packets with all derivatives from central differences."""
    if step <= 0:
        raise ValueError("step must be positive")
    _check_stencil(chart, p, step)
    p = tuple(p)
    inv2h = (Fraction(1) / (2 * step)) if not isinstance(step, float) else 1.0 / (2 * step)

    def central(fn, q, a):
        plus = fn(_shift(q, a, step))
        minus = fn(_shift(q, a, -step))
        if isinstance(plus, list):
            return _tensor_sub_scale(plus, minus, inv2h)
        return (plus - minus) * inv2h

    def _tensor_sub_scale(x, y, t):
        if isinstance(x, list):
            return [_tensor_sub_scale(xi, yi, t) for xi, yi in zip(x, y)]
        return (x - y) * t

    @_Memo
    def g_at(q):
        return [[chart.metric_entry(i, j).eval(q) for j in range(3)] for i in range(3)]

    @_Memo
    def ginv_at(q):
        return [list(r) for r in Metric3(Sym2.from_matrix(g_at(q))).inv_mat()]

    @_Memo
    def gamma_at(q):
        gi = ginv_at(q)
        dg = [central(g_at, q, a) for a in range(3)]
        out = _zeros(3, 3, 3)
        half = Fraction(1, 2)
        for k in range(3):
            for i in range(3):
                for j in range(i, 3):
                    acc = 0
                    for l in range(3):
                        acc = acc + gi[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j])
                    out[k][i][j] = half * acc
                    out[k][j][i] = out[k][i][j]
        return out

    @_Memo
    def riem4_at(q):
        gm = g_at(q)
        gamma = gamma_at(q)
        dgamma = [central(gamma_at, q, a) for a in range(3)]
        rup = _zeros(3, 3, 3, 3)
        for i in range(3):
            for j in range(3):
                if i == j:
                    continue
                for k in range(3):
                    for l in range(3):
                        acc = dgamma[i][l][j][k] - dgamma[j][l][i][k]
                        for m in range(3):
                            acc = acc + gamma[m][j][k] * gamma[l][i][m] \
                                      - gamma[m][i][k] * gamma[l][j][m]
                        rup[i][j][k][l] = acc
        r4 = _zeros(3, 3, 3, 3)
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    for l in range(3):
                        r4[i][j][k][l] = sum(rup[i][j][k][m] * gm[m][l] for m in range(3))
        return r4

    @_Memo
    def ric_at(q):
        gi = ginv_at(q)
        r4 = riem4_at(q)
        return [[sum(gi[c][d] * r4[c][a][b][d] for c in range(3) for d in range(3))
                 for b in range(3)] for a in range(3)]

    def scal_at(q):
        gi = ginv_at(q)
        ric = ric_at(q)
        return sum(gi[a][b] * ric[a][b] for a in range(3) for b in range(3))

    gm = g_at(p)
    metric = Metric3(Sym2.from_matrix(gm))
    gi = metric.inv_mat()
    gamma = gamma_at(p)
    r4 = riem4_at(p)
    m2 = [[r4[TWO_FORM_BASIS[a][0]][TWO_FORM_BASIS[a][1]]
           [TWO_FORM_BASIS[b][0]][TWO_FORM_BASIS[b][1]] for b in range(3)] for a in range(3)]
    curv = Curv3(m2, metric)
    ric = ric_at(p)
    scal = scal_at(p)
    gpk = GeometryPacket(p, metric, _freeze(gamma), curv, Sym2.from_matrix(ric), scal)

    # covariant derivative of the curvature and of Ricci
    dr4 = [central(riem4_at, p, a) for a in range(3)]
    nr = _zeros(3, 3, 3, 3, 3)
    for a in range(3):
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    for l in range(3):
                        acc = dr4[a][i][j][k][l]
                        for m in range(3):
                            acc = acc - gamma[m][a][i] * r4[m][j][k][l] \
                                      - gamma[m][a][j] * r4[i][m][k][l] \
                                      - gamma[m][a][k] * r4[i][j][m][l] \
                                      - gamma[m][a][l] * r4[i][j][k][m]
                        nr[a][i][j][k][l] = acc
    dstar = _zeros(3, 3, 3)
    for v1 in range(3):
        for v2 in range(3):
            for v3 in range(3):
                dstar[v1][v2][v3] = -sum(gi[j][k] * nr[j][k][v1][v2][v3]
                                         for j in range(3) for k in range(3))

    dric = [central(ric_at, p, a) for a in range(3)]
    nric = _zeros(3, 3, 3)
    for a in range(3):
        for i in range(3):
            for j in range(3):
                acc = dric[a][i][j]
                for m in range(3):
                    acc = acc - gamma[m][a][i] * ric[m][j] - gamma[m][a][j] * ric[i][m]
                nric[a][i][j] = acc
    rex = _zeros(3, 3, 3)
    for u in range(3):
        for w in range(3):
            for z in range(3):
                rex[u][w][z] = nric[u][w][z] - nric[w][u][z]

    dscal = tuple(central(scal_at, p, a) for a in range(3))

    phi_at = _Memo(lambda q: chart.dilaton.eval(q))
    dphi_at = _Memo(lambda q: [central(phi_at, q, a) for a in range(3)])
    dphi = tuple(dphi_at(p))
    d2phi = [central(dphi_at, p, i) for i in range(3)]
    hess = _zeros(3, 3)
    for i in range(3):
        for j in range(3):
            acc = (d2phi[i][j] + d2phi[j][i]) * Fraction(1, 2)
            for m in range(3):
                acc = acc - gamma[m][i][j] * dphi[m]
            hess[i][j] = acc
    hess_sym = Sym2.from_matrix(hess)
    codiff = -sum(gi[i][j] * hess[i][j] for i in range(3) for j in range(3))
    gradsq = sum(gi[i][j] * dphi[i] * dphi[j] for i in range(3) for j in range(3))

    dpk = DerivativePacket(dphi, hess_sym, codiff, gradsq,
                           _freeze(dstar), _freeze(rex), dscal)
    return gpk, dpk


def packet_defect(a, b) -> float:
    """Largest absolute entry-wise difference between two packet namespaces."""
    out = 0.0

    def upd(x, y):
        nonlocal out
        out = max(out, abs(float(x) - float(y)))

    def walk(x, y):
        if isinstance(x, (tuple, list)):
            for xi, yi in zip(x, y):
                walk(xi, yi)
        else:
            upd(x, y)

    if isinstance(a, GeometryPacket):
        walk(a.metric.form.c, b.metric.form.c)
        walk(a.gamma, b.gamma)
        walk(a.curv.m, b.curv.m)
        walk(a.ric.c, b.ric.c)
        upd(a.scal, b.scal)
    else:
        walk(a.dphi, b.dphi)
        walk(a.hess_dilaton.c, b.hess_dilaton.c)
        upd(a.codiff_dilaton, b.codiff_dilaton)
        upd(a.grad_norm_sq, b.grad_norm_sq)
        walk(a.div_curv, b.div_curv)
        walk(a.ric_exterior, b.ric_exterior)
        walk(a.dscal, b.dscal)
    return out
