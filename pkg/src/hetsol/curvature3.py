"""Pointwise curvature algebra in dimension three.

In dimension three the full curvature tensor of a metric g is an algebraic
function of the Ricci tensor and the scalar curvature:

    R = -g (*) Ric + (s/4) g (*) g                    (curvature dictionary)

where (*) is the Kulkarni-Nomizu product

    (A (*) B)(v1,v2,v3,v4) = A(v1,v3)B(v2,v4) + A(v2,v4)B(v1,v3)
                           - A(v1,v4)B(v2,v3) - A(v2,v3)B(v1,v4).

Conventions, fixed once for the whole package (see docs/conventions.md):

  * (0,4) curvature  R(v1,v2,v3,v4) := g(R_{v1,v2} v3, v4)
  * Ricci            Ric(v1,v2) := sum_i R(e_i, v1, v2, e_i)   (e_i g-orthonormal),
                     equivalently Ric_ab = g^{cd} R_{c a b d}
  * with these choices the dictionary above round-trips exactly, and the
    2-form action of the curvature operator reads
    R_{v1,v2} = (s/2) v1 ^ v2 + v2 ^ Ric(v1) + Ric(v2) ^ v1 (flats implied).

Everything here is a pure function on immutable values.  Scalars may be
`fractions.Fraction` (exact) or `float`; the code is generic over both.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionViolated, SingularMetric
from .util import close

# Flattened storage order for symmetric 3x3: (11, 12, 13, 22, 23, 33).
_SYM_POS = ((0, 1, 2), (1, 3, 4), (2, 4, 5))

# Basis of 2-forms: B_0 = e2^e3, B_1 = e3^e1, B_2 = e1^e2 (0-indexed pairs).
TWO_FORM_BASIS = ((1, 2), (2, 0), (0, 1))

# (i, j) -> (basis slot, sign) for i != j.
_PAIR_SLOT = {
    (1, 2): (0, 1), (2, 1): (0, -1),
    (2, 0): (1, 1), (0, 2): (1, -1),
    (0, 1): (2, 1), (1, 0): (2, -1),
}


class Sym2:
    """Symmetric bilinear form on R^3; upper triangle stored."""

    __slots__ = ("c",)

    def __init__(self, c11, c12, c13, c22, c23, c33):
        self.c = (c11, c12, c13, c22, c23, c33)

    @classmethod
    def from_matrix(cls, m) -> "Sym2":
        return cls(m[0][0], m[0][1], m[0][2], m[1][1], m[1][2], m[2][2])

    @classmethod
    def diag(cls, d1, d2, d3) -> "Sym2":
        z = 0 * d1
        return cls(d1, z, z, d2, z, d3)

    @classmethod
    def zero(cls) -> "Sym2":
        return cls(Fraction(0), Fraction(0), Fraction(0), Fraction(0), Fraction(0), Fraction(0))

    def __getitem__(self, ij):
        i, j = ij
        return self.c[_SYM_POS[i][j]]

    def mat(self):
        c = self.c
        return ((c[0], c[1], c[2]), (c[1], c[3], c[4]), (c[2], c[4], c[5]))

    def __add__(self, other: "Sym2") -> "Sym2":
        return Sym2(*(a + b for a, b in zip(self.c, other.c)))

    def __sub__(self, other: "Sym2") -> "Sym2":
        return Sym2(*(a - b for a, b in zip(self.c, other.c)))

    def __neg__(self) -> "Sym2":
        return Sym2(*(-a for a in self.c))

    def scale(self, t) -> "Sym2":
        return Sym2(*(t * a for a in self.c))

    def __eq__(self, other) -> bool:
        return isinstance(other, Sym2) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"Sym2{self.c!r}"

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.c)

    def max_abs(self) -> float:
        return max(abs(float(a)) for a in self.c)

    def map(self, fn) -> "Sym2":
        return Sym2(*(fn(a) for a in self.c))


class Metric3:
    """Positive-definite Sym2 with cached determinant and inverse."""

    __slots__ = ("form", "det", "inv")

    def __init__(self, form: Sym2):
        m = form.mat()
        m1 = m[0][0]
        m2 = m[0][0] * m[1][1] - m[0][1] * m[0][1]
        det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
               - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
               + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
        if not (m1 > 0 and m2 > 0 and det > 0):
            raise SingularMetric(f"leading minors ({m1}, {m2}, {det}) must all be positive")
        self.form = form
        self.det = det
        # Adjugate transpose over determinant; exact when the entries are exact.
        den = det if isinstance(det, float) else Fraction(det)
        adj = [[0] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                r = [k for k in range(3) if k != j]
                c = [k for k in range(3) if k != i]
                minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
                adj[i][j] = (-1) ** (i + j) * minor
        self.inv = Sym2.from_matrix([[adj[i][j] / den for j in range(3)] for i in range(3)])

    def __getitem__(self, ij):
        return self.form[ij]

    def mat(self):
        return self.form.mat()

    def inv_mat(self):
        return self.inv.mat()

    def __repr__(self):
        return f"Metric3({self.form.c!r})"


class Curv3:
    """Curvature-type (0,4) tensor stored as a symmetric operator on 2-forms.

    Entry m[a][b] is the (0,4) value on (basis pair a, basis pair b); the full
    tensor is recovered by `riem4` / `full04`.  Dimension three makes the
    6-number storage lossless (all algebraic curvature symmetries built in).
    """

    __slots__ = ("m", "metric")

    def __init__(self, m, metric: Metric3):
        self.m = tuple(tuple(row) for row in m)
        self.metric = metric

    @classmethod
    def zero(cls, metric: Metric3) -> "Curv3":
        z = Fraction(0)
        return cls(((z, z, z), (z, z, z), (z, z, z)), metric)

    def riem4(self, i, j, k, l):
        if i == j or k == l:
            return 0 * self.m[0][0]
        a, sa = _PAIR_SLOT[(i, j)]
        b, sb = _PAIR_SLOT[(k, l)]
        return sa * sb * self.m[a][b]

    def full04(self):
        return tuple(tuple(tuple(tuple(self.riem4(i, j, k, l)
                                       for l in range(3)) for k in range(3))
                           for j in range(3)) for i in range(3))

    def __add__(self, other: "Curv3") -> "Curv3":
        return Curv3([[self.m[a][b] + other.m[a][b] for b in range(3)] for a in range(3)],
                     self.metric)

    def __sub__(self, other: "Curv3") -> "Curv3":
        return Curv3([[self.m[a][b] - other.m[a][b] for b in range(3)] for a in range(3)],
                     self.metric)

    def scale(self, t) -> "Curv3":
        return Curv3([[t * self.m[a][b] for b in range(3)] for a in range(3)], self.metric)

    def is_zero(self) -> bool:
        return all(self.m[a][b] == 0 for a in range(3) for b in range(3))

    def max_abs(self) -> float:
        return max(abs(float(self.m[a][b])) for a in range(3) for b in range(3))

    def __eq__(self, other) -> bool:
        return isinstance(other, Curv3) and self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def __repr__(self):
        return f"Curv3({self.m!r})"


@dataclass(frozen=True)
class EigenReport:
    """g-orthonormal eigendecomposition of a Sym2, ascending eigenvalues."""

    eigenvalues: tuple
    eigenvectors: tuple  # rows, g-orthonormal


# ---------------------------------------------------------------------------
# Kulkarni-Nomizu product and the curvature dictionary


def kn_entry(a: Sym2, b: Sym2, i, j, k, l):
    """Four-term product formula evaluated on one index tuple."""
    return (a[i, k] * b[j, l] + a[j, l] * b[i, k]
            - a[i, l] * b[j, k] - a[j, k] * b[i, l])


def kn_product(a: Sym2, b: Sym2, g: Metric3) -> Curv3:
    """Kulkarni-Nomizu product A (*) B as an operator on 2-forms."""
    m = [[None] * 3 for _ in range(3)]
    for p in range(3):
        ip, jp = TWO_FORM_BASIS[p]
        for q in range(3):
            iq, jq = TWO_FORM_BASIS[q]
            m[p][q] = kn_entry(a, b, ip, jp, iq, jq)
    return Curv3(m, g)


def riemann_from_ricci(g: Metric3, ric: Sym2, s) -> Curv3:
    """Full curvature from (Ric, s): -g(*)ric + (s/4) g(*)g."""
    quarter = Fraction(1, 4) if not isinstance(s, float) else 0.25
    gr = kn_product(g.form, ric, g)
    gg = kn_product(g.form, g.form, g)
    m = [[-gr.m[a][b] + quarter * s * gg.m[a][b] for b in range(3)] for a in range(3)]
    return Curv3(m, g)


def ricci_contract(r: Curv3, g: Metric3 | None = None) -> tuple[Sym2, object]:
    """(Ric, s) from a Curv3: Ric_ab = g^{cd} R_{c a b d}, s = tr_g Ric."""
    if g is None:
        g = r.metric
    ginv = g.inv_mat()
    ric = [[None] * 3 for _ in range(3)]
    for a in range(3):
        for b in range(a, 3):
            acc = 0
            for c in range(3):
                for d in range(3):
                    gcd = ginv[c][d]
                    if gcd == 0:
                        continue
                    acc = acc + gcd * r.riem4(c, a, b, d)
            ric[a][b] = acc
            ric[b][a] = acc
    s = 0
    for a in range(3):
        for b in range(3):
            s = s + ginv[a][b] * ric[a][b]
    return Sym2.from_matrix(ric), s


# ---------------------------------------------------------------------------
# 2-form action


def lower(g: Metric3, v):
    """Flat: vector -> covector."""
    gm = g.mat()
    return tuple(sum(gm[i][j] * v[j] for j in range(3)) for i in range(3))


def raise_covector(g: Metric3, alpha):
    """Sharp: covector -> vector."""
    gi = g.inv_mat()
    return tuple(sum(gi[i][j] * alpha[j] for j in range(3)) for i in range(3))


def sym_apply(a: Sym2, v):
    """Contract a symmetric form with a vector: (A v)_j = A_ij v^i (a covector)."""
    am = a.mat()
    return tuple(sum(am[i][j] * v[i] for i in range(3)) for j in range(3))


def wedge_cov(alpha, beta):
    """Wedge of two covectors in the 2-form basis (e2^e3, e3^e1, e1^e2)."""
    out = []
    for p, q in TWO_FORM_BASIS:
        out.append(alpha[p] * beta[q] - alpha[q] * beta[p])
    return tuple(out)


def two_form_action(g: Metric3, ric: Sym2, s, v1, v2):
    """Curvature operator on v1^v2 via the dictionary, as a 2-form.

    Returns (s/2) v1b ^ v2b + v2b ^ ric(v1) + ric(v2) ^ v1b in the 2-form
    basis, where b denotes the g-flat of a vector.
    """
    half = Fraction(1, 2) if not isinstance(s, float) else 0.5
    v1b = lower(g, v1)
    v2b = lower(g, v2)
    rv1 = sym_apply(ric, v1)
    rv2 = sym_apply(ric, v2)
    t1 = wedge_cov(v1b, v2b)
    t2 = wedge_cov(v2b, rv1)
    t3 = wedge_cov(rv2, v1b)
    return tuple(half * s * x1 + x2 + x3 for x1, x2, x3 in zip(t1, t2, t3))


def curv_apply(r: Curv3, v1, v2):
    """Plug the vector pair (v1, v2) into the first slot pair of a Curv3."""
    out = []
    for p, q in TWO_FORM_BASIS:
        acc = 0
        for i in range(3):
            for j in range(3):
                vij = v1[i] * v2[j]
                if vij == 0:
                    continue
                acc = acc + vij * r.riem4(i, j, p, q)
        out.append(acc)
    return tuple(out)


# ---------------------------------------------------------------------------
# Sym2 algebra with a metric


def sym_compose(g: Metric3, a: Sym2, b: Sym2) -> Sym2:
    """(A o B)_ij = A_ik g^{kl} B_lj (composition through the metric)."""
    gi = g.inv_mat()
    am, bm = a.mat(), b.mat()
    out = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            acc = 0
            for k in range(3):
                for l in range(3):
                    acc = acc + am[i][k] * gi[k][l] * bm[l][j]
            out[i][j] = acc
    return Sym2.from_matrix(out)


def sym_inner(g: Metric3, a: Sym2, b: Sym2):
    """g-inner product of symmetric forms: g^{ik} g^{jl} A_ij B_kl."""
    gi = g.inv_mat()
    am, bm = a.mat(), b.mat()
    acc = 0
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for l in range(3):
                    acc = acc + gi[i][k] * gi[j][l] * am[i][j] * bm[k][l]
    return acc


def sym_trace(g: Metric3, a: Sym2):
    gi = g.inv_mat()
    am = a.mat()
    return sum(gi[i][j] * am[i][j] for i in range(3) for j in range(3))


def covector_norm_sq(g: Metric3, alpha):
    gi = g.inv_mat()
    return sum(gi[i][j] * alpha[i] * alpha[j] for i in range(3) for j in range(3))


def vector_norm_sq(g: Metric3, v):
    gm = g.mat()
    return sum(gm[i][j] * v[i] * v[j] for i in range(3) for j in range(3))


# ---------------------------------------------------------------------------
# Quadratic curvature quantities


def curv_square(g: Metric3, ric: Sym2, s) -> Sym2:
    """R o R through the dictionary: -ric o ric + s ric + (|ric|^2 - s^2/2) g."""
    half = Fraction(1, 2) if not isinstance(s, float) else 0.5
    rr = sym_compose(g, ric, ric)
    n2 = sym_inner(g, ric, ric)
    coeff = n2 - half * s * s
    return (-rr) + ric.scale(s) + g.form.scale(coeff)


def curv_norm(g: Metric3, ric: Sym2, s):
    """Squared norm |R|^2 of the curvature through the dictionary."""
    quarter = Fraction(1, 4) if not isinstance(s, float) else 0.25
    return sym_inner(g, ric, ric) - quarter * s * s


def _raise_last_indices(r: Curv3, count: int):
    """Raise the trailing `count` indices of the (0,4) expansion, one at a time."""
    gi = r.metric.inv_mat()
    t = [[[[r.riem4(i, j, k, l) for l in range(3)] for k in range(3)]
          for j in range(3)] for i in range(3)]
    for pos in range(3, 3 - count, -1):
        new = [[[[0] * 3 for _ in range(3)] for _ in range(3)] for _ in range(3)]
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    for l in range(3):
                        idx = [i, j, k, l]
                        acc = 0
                        for m in range(3):
                            gim = gi[idx[pos]][m]
                            if gim == 0:
                                continue
                            src = list(idx)
                            src[pos] = m
                            acc = acc + gim * t[src[0]][src[1]][src[2]][src[3]]
                        new[i][j][k][l] = acc
        t = new
    return t


def curv_square_direct(r: Curv3) -> Sym2:
    """Definitional contraction (1/2) R_{a i j k} R_b^{~i j k}; oracle route."""
    half = Fraction(1, 2)
    up = _raise_last_indices(r, 3)
    out = [[0] * 3 for _ in range(3)]
    for a in range(3):
        for b in range(a, 3):
            acc = 0
            for i in range(3):
                for j in range(3):
                    for k in range(3):
                        acc = acc + r.riem4(a, i, j, k) * up[b][i][j][k]
            val = half * acc
            out[a][b] = val
            out[b][a] = val
    return Sym2.from_matrix(out)


def curv_norm_direct(r: Curv3):
    """Definitional norm (1/4) R_{ijkl} R^{ijkl}; oracle route."""
    quarter = Fraction(1, 4)
    up = _raise_last_indices(r, 3)
    gi = r.metric.inv_mat()
    acc = 0
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for l in range(3):
                    # raise the remaining first index on the fly
                    lead = sum(gi[i][m] * up[m][j][k][l] for m in range(3))
                    acc = acc + r.riem4(i, j, k, l) * lead
    return quarter * acc


# ---------------------------------------------------------------------------
# Divergence-free curvature pointwise reduction


def harmonic_ricci_reduction(g: Metric3, ric: Sym2, dphi, s, tol: float = 1e-12):
    """Forced Ricci form at a point where the curvature is divergence free
    and the dilaton gradient does not vanish.

    Checks the two pointwise hypotheses

        ric(dphi#) = 0        and        dphi ^ ((s/2) v - ric(v)) = 0 for all v,

    then returns (model, norm_sq) with model = (s/2)(g - u (x) u), u the unit
    gradient covector (u (x) u = dphi (x) dphi / |dphi|^2, no square roots),
    and norm_sq = |model|^2 = s^2/2.  Raises PreconditionViolated when either
    hypothesis fails beyond tolerance, or when dphi = 0.
    """
    n2 = covector_norm_sq(g, dphi)
    if n2 == 0:
        raise PreconditionViolated("dilaton gradient vanishes at the point")
    grad = raise_covector(g, dphi)
    rg = sym_apply(ric, grad)
    if not all(close(x, 0, tol) for x in rg):
        raise PreconditionViolated(f"ric(grad phi) = {rg} is not zero")
    # dphi ^ ((s/2) v - ric(v)) = 0 on the three coordinate vectors.
    half = Fraction(1, 2) if not isinstance(s, float) else 0.5
    for a in range(3):
        v = tuple(1 if i == a else 0 for i in range(3))
        rv = sym_apply(ric, v)
        vb = lower(g, v)
        target = tuple(half * s * x - y for x, y in zip(vb, rv))
        w = wedge_cov(dphi, target)
        if not all(close(x, 0, tol) for x in w):
            raise PreconditionViolated("gradient direction is not an eigen-direction split")
    uu = Sym2.from_matrix([[dphi[i] * dphi[j] / n2 for j in range(3)] for i in range(3)])
    model = (g.form - uu).scale(half * s)
    defect = ric - model
    if not all(close(x, 0, tol) for x in defect.c):
        raise PreconditionViolated("input Ricci does not match the forced form")
    return model, sym_inner(g, model, model)


def eigenreport(g: Metric3, a: Sym2) -> EigenReport:
    """Float eigendecomposition of a Sym2 relative to g, g-orthonormal vectors.

    Ascending eigenvalues; each eigenvector's sign is normalized so its first
    component of magnitude > 1e-9 is positive.
    """
    import numpy as np
    from scipy.linalg import eigh

    am = np.array([[float(x) for x in row] for row in a.mat()])
    gm = np.array([[float(x) for x in row] for row in g.mat()])
    w, v = eigh(am, gm)
    vecs = []
    for k in range(3):
        col = v[:, k]
        for x in col:
            if abs(x) > 1e-9:
                if x < 0:
                    col = -col
                break
        vecs.append(tuple(float(x) for x in col))
    return EigenReport(tuple(float(x) for x in w), tuple(vecs))
