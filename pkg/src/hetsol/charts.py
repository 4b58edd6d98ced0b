"""Exact differential geometry on a coordinate chart.

A chart is six metric component fields plus one dilaton field (closed-form
expressions from `fields`), on either the open unit ball or the 2*pi-periodic
torus.  All geometric quantities at a point are assembled from truncated
Taylor jets of the components, so rational data at rational points produces
exact rational output, and the identical assembly runs in floating point for
trigonometric charts.

Derivative conventions (see docs/conventions.md):

    Gamma^k_ij = (1/2) g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)
    R(di,dj)dk = (d_i Gamma^l_jk - d_j Gamma^l_ik
                  + Gamma^m_jk Gamma^l_im - Gamma^m_ik Gamma^l_jm) dl
    R4_ijkl    = g(R(di,dj)dk, dl)
    (nabla_a R)_ijkl = d_a R4_ijkl - Gamma^m_ai R4_mjkl - ... (one per slot)
    (d*R)(v1,v2,v3)  = -g^{jk} (nabla_j R)(k, v1, v2, v3)
    (dRic)(u,w,z)    = (nabla_u Ric)(w,z) - (nabla_w Ric)(u,z)
    codiff of an exact 1-form:  delta(dphi) = -tr_g nabla(dphi)
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .curvature3 import Curv3, Metric3, Sym2, TWO_FORM_BASIS
from .errors import StencilOutOfDomain
from .fields import (Field, Poly3, RationalField, TrigField, field_add,
                     field_from_json, field_to_json, jet_d1, jet_d2, jet_d3,
                     jet_value)

CHART_SCHEMA = "hetsol-chart/1"

_SYM_PAIRS = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))


@dataclass(frozen=True)
class ChartGeometry:
    """Metric and dilaton fields with a domain tag ('ball' or 'torus')."""

    metric: tuple  # 6 Fields, order (11, 12, 13, 22, 23, 33)
    dilaton: Field
    domain: str = "ball"

    def __post_init__(self):
        if self.domain not in ("ball", "torus"):
            raise ValueError(f"unknown domain tag {self.domain!r}")
        if len(self.metric) != 6:
            raise ValueError("metric needs 6 component fields")

    def metric_entry(self, i: int, j: int) -> Field:
        return self.metric[_SYM_PAIRS.index((min(i, j), max(i, j)))]

    def as_float(self) -> "ChartGeometry":
        return ChartGeometry(tuple(f.as_float() for f in self.metric),
                             self.dilaton.as_float(), self.domain)

    def contains(self, p) -> bool:
        if self.domain == "torus":
            return True
        return sum(x * x for x in p) < 1

    def to_json(self) -> dict:
        return {
            "schema": CHART_SCHEMA,
            "domain": self.domain,
            "metric": [field_to_json(f) for f in self.metric],
            "dilaton": field_to_json(self.dilaton),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ChartGeometry":
        if obj.get("schema") != CHART_SCHEMA:
            raise ValueError(f"unsupported chart schema {obj.get('schema')!r}")
        metric = tuple(field_from_json(f) for f in obj["metric"])
        return cls(metric, field_from_json(obj["dilaton"]), obj["domain"])

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=2, sort_keys=True)

    @classmethod
    def load(cls, path: str) -> "ChartGeometry":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def euclidean_chart(dilaton: Field | None = None) -> ChartGeometry:
    one = Poly3.const(1)
    zero = Poly3.zero()
    return ChartGeometry((one, zero, zero, one, zero, one),
                         dilaton if dilaton is not None else Poly3.zero(), "ball")


def poincare_ball_chart(dilaton: Field | None = None) -> ChartGeometry:
    """g = 4/(1-|x|^2)^2 * delta: the constant-curvature -1 model, s = -6."""
    x, y, z = (Poly3.variable(a) for a in range(3))
    r2 = (x * x).poly_add(y * y).poly_add(z * z)
    den = Poly3.const(1).poly_add(r2.scale(-1))
    den2 = den * den
    conf = RationalField(Poly3.const(4), den2)
    zero = Poly3.zero()
    return ChartGeometry((conf, zero, zero, conf, zero, conf),
                         dilaton if dilaton is not None else Poly3.zero(), "ball")


def constant_metric_torus_chart(g: Sym2, dilaton: Field | None = None) -> ChartGeometry:
    metric = tuple(TrigField.const(g.c[k]) for k in range(6))
    return ChartGeometry(metric, dilaton if dilaton is not None else TrigField.zero(), "torus")


def perturbed_chart(chart: ChartGeometry, h: tuple, t, xi: Field | None = None) -> ChartGeometry:
    """Chart with metric g + t*h and dilaton phi + t*xi (h: 6 Fields)."""
    metric = tuple(field_add(chart.metric[k], h[k].scale(t)) for k in range(6))
    dil = chart.dilaton if xi is None else field_add(chart.dilaton, xi.scale(t))
    return ChartGeometry(metric, dil, chart.domain)


@dataclass(frozen=True)
class GeometryPacket:
    point: tuple
    metric: Metric3
    gamma: tuple        # gamma[k][i][j] = Gamma^k_ij
    curv: Curv3
    ric: Sym2
    scal: object


@dataclass(frozen=True)
class DerivativePacket:
    dphi: tuple          # covector d phi
    hess_dilaton: Sym2   # nabla d phi
    codiff_dilaton: object
    grad_norm_sq: object
    div_curv: tuple      # (d*R)[v1][v2][v3], antisymmetric in (v2, v3)
    ric_exterior: tuple  # (dRic)[u][w][z], antisymmetric in (u, w)
    dscal: tuple         # ds as a covector


def _zeros(*dims):
    if len(dims) == 1:
        return [0] * dims[0]
    return [_zeros(*dims[1:]) for _ in range(dims[0])]


def _freeze(x):
    if isinstance(x, list):
        return tuple(_freeze(v) for v in x)
    return x


class Scaffold:
    """All jet-assembled tensors of a chart at one point, up to third order.

    Exposed for the linearization module, which needs the raw derivative
    arrays (dg, dginv, gamma, dgamma, R4, ...) beyond what the packet types
    carry.  Treat instances as read-only.
    """

    def __init__(self, chart: ChartGeometry, p, order: int = 3):
        if not chart.contains(p):
            raise StencilOutOfDomain(f"point {p} outside chart domain")
        self.point = tuple(p)
        self.order = order
        gj = [chart.metric[k].jet(p, order) for k in range(6)]
        jets = [[None] * 3 for _ in range(3)]
        for k, (i, j) in enumerate(_SYM_PAIRS):
            jets[i][j] = gj[k]
            jets[j][i] = gj[k]
        self.phi_jet = chart.dilaton.jet(p, order)

        g = Sym2(*(jet_value(gj[k]) for k in range(6)))
        self.metric = Metric3(g)
        gm = self.metric.mat()
        gi = self.metric.inv_mat()
        self.g = gm
        self.ginv = gi

        dg = _zeros(3, 3, 3)
        d2g = _zeros(3, 3, 3, 3)
        d3g = _zeros(3, 3, 3, 3, 3)
        for i in range(3):
            for j in range(3):
                jj = jets[i][j]
                for a in range(3):
                    dg[a][i][j] = jet_d1(jj, a)
                    for b in range(3):
                        d2g[a][b][i][j] = jet_d2(jj, a, b)
                        if order >= 3:
                            for c in range(3):
                                d3g[a][b][c][i][j] = jet_d3(jj, a, b, c)
        self.dg, self.d2g, self.d3g = dg, d2g, d3g

        # d(g^-1) = -g^-1 dg g^-1 and its derivative
        dginv = _zeros(3, 3, 3)
        for a in range(3):
            for i in range(3):
                for j in range(3):
                    acc = 0
                    for m in range(3):
                        for n in range(3):
                            acc = acc - gi[i][m] * dg[a][m][n] * gi[n][j]
                    dginv[a][i][j] = acc
        d2ginv = _zeros(3, 3, 3, 3)
        for a in range(3):
            for b in range(3):
                for i in range(3):
                    for j in range(3):
                        acc = 0
                        for m in range(3):
                            for n in range(3):
                                acc = acc - gi[i][m] * d2g[a][b][m][n] * gi[n][j]
                                acc = acc - dginv[b][i][m] * dg[a][m][n] * gi[n][j]
                                acc = acc - gi[i][m] * dg[a][m][n] * dginv[b][n][j]
                        d2ginv[a][b][i][j] = acc
        self.dginv, self.d2ginv = dginv, d2ginv

        # Christoffel symbols and their first two derivative arrays
        half = Fraction(1, 2)

        def c_low(l, i, j):
            return half * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j])

        def dc_low(a, l, i, j):
            return half * (d2g[a][i][j][l] + d2g[a][j][i][l] - d2g[a][l][i][j])

        def d2c_low(a, b, l, i, j):
            return half * (d3g[a][b][i][j][l] + d3g[a][b][j][i][l] - d3g[a][b][l][i][j])

        gamma = _zeros(3, 3, 3)
        dgamma = _zeros(3, 3, 3, 3)
        d2gamma = _zeros(3, 3, 3, 3, 3)
        for k in range(3):
            for i in range(3):
                for j in range(i, 3):
                    val = sum(gi[k][l] * c_low(l, i, j) for l in range(3))
                    gamma[k][i][j] = val
                    gamma[k][j][i] = val
                    for a in range(3):
                        dval = sum(dginv[a][k][l] * c_low(l, i, j)
                                   + gi[k][l] * dc_low(a, l, i, j) for l in range(3))
                        dgamma[a][k][i][j] = dval
                        dgamma[a][k][j][i] = dval
                        if order >= 3:
                            for b in range(3):
                                acc = 0
                                for l in range(3):
                                    acc = acc + d2ginv[a][b][k][l] * c_low(l, i, j)
                                    acc = acc + dginv[a][k][l] * dc_low(b, l, i, j)
                                    acc = acc + dginv[b][k][l] * dc_low(a, l, i, j)
                                    acc = acc + gi[k][l] * d2c_low(a, b, l, i, j)
                                d2gamma[a][b][k][i][j] = acc
                                d2gamma[a][b][k][j][i] = acc
        self.gamma, self.dgamma, self.d2gamma = gamma, dgamma, d2gamma

        # Riemann tensor: Rup[i][j][k][l] = coefficient of d_l in R(d_i,d_j)d_k
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
        self.rup, self.r4 = rup, r4

        m2 = [[r4[TWO_FORM_BASIS[a][0]][TWO_FORM_BASIS[a][1]]
               [TWO_FORM_BASIS[b][0]][TWO_FORM_BASIS[b][1]] for b in range(3)]
              for a in range(3)]
        self.curv = Curv3(m2, self.metric)

        ric = _zeros(3, 3)
        for a in range(3):
            for b in range(3):
                ric[a][b] = sum(gi[c][d] * r4[c][a][b][d]
                                for c in range(3) for d in range(3))
        self.ric_mat = ric
        self.ric = Sym2.from_matrix(ric)
        self.scal = sum(gi[a][b] * ric[a][b] for a in range(3) for b in range(3))

        if order >= 3:
            self._third_order()
        self._dilaton_block()

    def _third_order(self):
        gm, gi = self.g, self.ginv
        dg, dginv = self.dg, self.dginv
        gamma, dgamma, d2gamma = self.gamma, self.dgamma, self.d2gamma
        rup, r4 = self.rup, self.r4

        drup = _zeros(3, 3, 3, 3, 3)
        for a in range(3):
            for i in range(3):
                for j in range(3):
                    if i == j:
                        continue
                    for k in range(3):
                        for l in range(3):
                            acc = d2gamma[a][i][l][j][k] - d2gamma[a][j][l][i][k]
                            for m in range(3):
                                acc = acc + dgamma[a][m][j][k] * gamma[l][i][m] \
                                          + gamma[m][j][k] * dgamma[a][l][i][m] \
                                          - dgamma[a][m][i][k] * gamma[l][j][m] \
                                          - gamma[m][i][k] * dgamma[a][l][j][m]
                            drup[a][i][j][k][l] = acc
        dr4 = _zeros(3, 3, 3, 3, 3)
        for a in range(3):
            for i in range(3):
                for j in range(3):
                    for k in range(3):
                        for l in range(3):
                            dr4[a][i][j][k][l] = sum(
                                drup[a][i][j][k][m] * gm[m][l]
                                + rup[i][j][k][m] * dg[a][m][l] for m in range(3))
        self.dr4 = dr4

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
        self.nabla_r4 = nr

        dstar = _zeros(3, 3, 3)
        for v1 in range(3):
            for v2 in range(3):
                for v3 in range(3):
                    acc = 0
                    for j in range(3):
                        for k in range(3):
                            gjk = gi[j][k]
                            if gjk == 0:
                                continue
                            acc = acc - gjk * nr[j][k][v1][v2][v3]
                    dstar[v1][v2][v3] = acc
        self.div_curv = dstar

        dric = _zeros(3, 3, 3)
        for a in range(3):
            for i in range(3):
                for j in range(3):
                    acc = 0
                    for c in range(3):
                        for d in range(3):
                            acc = acc + dginv[a][c][d] * r4[c][i][j][d] \
                                      + gi[c][d] * dr4[a][c][i][j][d]
                    dric[a][i][j] = acc
        nric = _zeros(3, 3, 3)
        ric = self.ric_mat
        for a in range(3):
            for i in range(3):
                for j in range(3):
                    acc = dric[a][i][j]
                    for m in range(3):
                        acc = acc - gamma[m][a][i] * ric[m][j] - gamma[m][a][j] * ric[i][m]
                    nric[a][i][j] = acc
        self.dric, self.nabla_ric = dric, nric

        rex = _zeros(3, 3, 3)
        for u in range(3):
            for w in range(3):
                for z in range(3):
                    rex[u][w][z] = nric[u][w][z] - nric[w][u][z]
        self.ric_exterior = rex

        self.dscal = tuple(
            sum(dginv[a][i][j] * ric[i][j] + gi[i][j] * dric[a][i][j]
                for i in range(3) for j in range(3))
            for a in range(3))

    def _dilaton_block(self):
        gi, gamma = self.ginv, self.gamma
        pj = self.phi_jet
        dphi = tuple(jet_d1(pj, a) for a in range(3))
        hess = _zeros(3, 3)
        for i in range(3):
            for j in range(3):
                acc = jet_d2(pj, i, j)
                for m in range(3):
                    acc = acc - gamma[m][i][j] * dphi[m]
                hess[i][j] = acc
        self.dphi = dphi
        self.hess_dilaton = Sym2.from_matrix(hess)
        self.codiff_dilaton = -sum(gi[i][j] * hess[i][j] for i in range(3) for j in range(3))
        self.grad_norm_sq = sum(gi[i][j] * dphi[i] * dphi[j]
                                for i in range(3) for j in range(3))

    def geometry_packet(self) -> GeometryPacket:
        return GeometryPacket(self.point, self.metric, _freeze(self.gamma),
                              self.curv, self.ric, self.scal)

    def derivative_packet(self) -> DerivativePacket:
        return DerivativePacket(self.dphi, self.hess_dilaton, self.codiff_dilaton,
                                self.grad_norm_sq, _freeze(self.div_curv),
                                _freeze(self.ric_exterior), tuple(self.dscal))


def geometry_packet(chart: ChartGeometry, p) -> GeometryPacket:
    """Metric, Christoffels, curvature, Ricci, scalar curvature at p."""
    return Scaffold(chart, p, order=2).geometry_packet()


def derivative_packet(chart: ChartGeometry, p) -> DerivativePacket:
    """Dilaton derivatives plus curvature divergence data at p."""
    return Scaffold(chart, p, order=3).derivative_packet()


def full_packets(chart: ChartGeometry, p) -> tuple[GeometryPacket, DerivativePacket]:
    sc = Scaffold(chart, p, order=3)
    return sc.geometry_packet(), sc.derivative_packet()


def bianchi_residual(chart: ChartGeometry, p):
    """(d*R)(v1,v2,v3) - (dRic)(v2,v3,v1) over all basis triples.

    The contracted second Bianchi identity makes this vanish identically;
    in exact mode the zero is literal.
    """
    sc = Scaffold(chart, p, order=3)
    out = _zeros(3, 3, 3)
    for v1 in range(3):
        for v2 in range(3):
            for v3 in range(3):
                out[v1][v2][v3] = sc.div_curv[v1][v2][v3] - sc.ric_exterior[v2][v3][v1]
    return _freeze(out)
