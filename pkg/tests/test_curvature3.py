"""Pointwise curvature algebra in dimension three.

The independent oracle throughout is brute-force index summation over the
(0,4) expansion; the library's own contractions must agree with it exactly.
"""

import random
from fractions import Fraction as F

import pytest

from hetsol import sampling
from hetsol.curvature3 import (Curv3, Metric3, Sym2, covector_norm_sq,
                               curv_norm, curv_norm_direct, curv_square,
                               curv_square_direct, eigenreport,
                               harmonic_ricci_reduction, kn_product,
                               ricci_contract, riemann_from_ricci,
                               sym_compose, sym_inner, sym_trace,
                               two_form_action)
from hetsol.errors import PreconditionViolated, SingularMetric


def riem4_oracle(g: Metric3, a: Sym2, b: Sym2, i, j, k, l):
    """Four-term product expansion, written out independently."""
    am, bm = a.mat(), b.mat()
    return (am[i][k] * bm[j][l] + am[j][l] * bm[i][k]
            - am[i][l] * bm[j][k] - am[j][k] * bm[i][l])


def rand_state(seed):
    rng = random.Random(seed)
    g = sampling.rand_metric3(rng)
    ric = sampling.rand_sym2(rng)
    return rng, g, ric


# ---------------------------------------------------------------------------
# Products of symmetric forms


def test_kn_product_identity_and_zero():
    g = Metric3(Sym2.diag(F(1), F(1), F(1)))
    zero = Sym2.zero()
    ident = Sym2.diag(F(1), F(1), F(1))
    assert kn_product(ident, zero, g).is_zero()


def test_kn_product_full_expansion_and_symmetries():
    rng, g, a = rand_state(11)
    b = sampling.rand_sym2(rng)
    r = kn_product(a, b, g)
    r2 = kn_product(b, a, g)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for l in range(3):
                    v = r.riem4(i, j, k, l)
                    assert v == riem4_oracle(g, a, b, i, j, k, l)
                    assert v == r2.riem4(i, j, k, l)
                    # algebraic curvature symmetries
                    assert v == -r.riem4(j, i, k, l)
                    assert v == -r.riem4(i, j, l, k)
                    assert v == r.riem4(k, l, i, j)


# ---------------------------------------------------------------------------
# Ricci <-> full curvature dictionary


def test_riemann_from_ricci_zero():
    _, g, _ = rand_state(13)
    assert riemann_from_ricci(g, Sym2.zero(), F(0)).is_zero()


def test_round_trip_identity_metric_diag123():
    g = Metric3(Sym2.diag(F(1), F(1), F(1)))
    ric = Sym2.diag(F(1), F(2), F(3))
    r = riemann_from_ricci(g, ric, F(6))
    got_ric, got_s = ricci_contract(r, g)
    assert got_ric == ric and got_s == 6
    # convention oracle: Ric(v1,v2) = sum_i R(e_i, v1, v2, e_i)
    direct = [[sum(r.riem4(i, a, b, i) for i in range(3)) for b in range(3)]
              for a in range(3)]
    assert Sym2.from_matrix(direct) == ric


def test_round_trip_random_rational():
    for seed in range(6):
        _, g, ric = rand_state(100 + seed)
        s = sym_trace(g, ric)
        got_ric, got_s = ricci_contract(riemann_from_ricci(g, ric, s), g)
        assert got_ric == ric and got_s == s


def test_einstein_curvature_is_constant_curvature_form():
    # ric = lam*g, s = 3 lam: the curvature is -(s/12) g (.) g
    _, g, _ = rand_state(17)
    lam = F(-2)
    ric = g.form.scale(lam)
    r = riemann_from_ricci(g, ric, 3 * lam)
    want = kn_product(g.form, g.form, g).scale(-3 * lam * F(1, 12))
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for l in range(3):
                    assert r.riem4(i, j, k, l) == want.riem4(i, j, k, l)
    back_ric, back_s = ricci_contract(want, g)
    assert back_ric == ric and back_s == 3 * lam


# ---------------------------------------------------------------------------
# Curvature acting on 2-forms


def test_two_form_action_antisymmetry():
    _, g, ric = rand_state(23)
    v = (F(1, 2), F(-3), F(5, 7))
    out = two_form_action(g, ric, sym_trace(g, ric), v, v)
    assert all(x == 0 for x in out)


def test_two_form_action_einstein_hand_value():
    # identity metric, ric = lam g, v1 = e1, v2 = e2:
    # (s/2) e1^e2 + e2^(lam e1) + (lam e2)^e1 = (3lam/2 - 2lam) e1^e2
    g = Metric3(Sym2.diag(F(1), F(1), F(1)))
    lam = F(4, 3)
    ric = g.form.scale(lam)
    out = two_form_action(g, ric, 3 * lam, (F(1), F(0), F(0)),
                          (F(0), F(1), F(0)))
    # 2-form basis order: (e1^e2, e1^e3, e2^e3) up to the stored convention
    nonzero = [x for x in out if x != 0]
    assert len(nonzero) == 1 and nonzero[0] == -lam / 2


def test_two_form_action_matches_operator_application():
    from hetsol.curvature3 import curv_apply
    for seed in range(4):
        rng, g, ric = rand_state(300 + seed)
        s = sym_trace(g, ric)
        r = riemann_from_ricci(g, ric, s)
        v1 = tuple(sampling.rand_fraction(rng) for _ in range(3))
        v2 = tuple(sampling.rand_fraction(rng) for _ in range(3))
        assert two_form_action(g, ric, s, v1, v2) == curv_apply(r, v1, v2)


# ---------------------------------------------------------------------------
# Squares and norms


def test_curv_square_einstein_value():
    _, g, _ = rand_state(31)
    lam = F(5, 2)
    assert curv_square(g, g.form.scale(lam), 3 * lam) == \
        g.form.scale(lam * lam / 2)
    assert curv_square(g, Sym2.zero(), F(0)).is_zero()


def test_curv_square_matches_definitional_contraction():
    for seed in range(5):
        _, g, ric = rand_state(400 + seed)
        s = sym_trace(g, ric)
        r = riemann_from_ricci(g, ric, s)
        assert curv_square(g, ric, s) == curv_square_direct(r)


def test_curv_norm_routes_agree():
    for seed in range(5):
        _, g, ric = rand_state(500 + seed)
        s = sym_trace(g, ric)
        n = curv_norm(g, ric, s)
        assert n == sym_inner(g, ric, ric) - s * s / 4
        assert n == curv_norm_direct(riemann_from_ricci(g, ric, s))
        assert 2 * n == sym_trace(g, curv_square(g, ric, s))


def test_curv_norm_einstein_value():
    _, g, _ = rand_state(37)
    lam = F(-7, 3)
    s = 3 * lam
    assert curv_norm(g, g.form.scale(lam), s) == s * s / 12
    assert curv_norm(g, Sym2.zero(), F(0)) == 0


# ---------------------------------------------------------------------------
# Metric and composition plumbing


def test_metric_requires_positive_definite():
    with pytest.raises(SingularMetric):
        Metric3(Sym2.diag(F(1), F(-1), F(1)))
    with pytest.raises(SingularMetric):
        Metric3(Sym2(F(1), F(2), F(0), F(1), F(0), F(1)))  # 2x2 minor < 0


def test_sym_compose_against_matrix_product():
    # General pair: the raw product A g^{-1} B is not symmetric, and the
    # result keeps its upper triangle.  Same-argument composition A o A is
    # symmetric, so there the full matrix must agree.
    rng, g, a = rand_state(41)
    b = sampling.rand_sym2(rng)
    ginv = g.inv_mat()

    def raw(xm, ym, i, j):
        return sum(xm[i][k] * ginv[k][l] * ym[l][j]
                   for k in range(3) for l in range(3))

    c = sym_compose(g, a, b)
    am, bm = a.mat(), b.mat()
    for i in range(3):
        for j in range(i, 3):
            assert c.mat()[i][j] == raw(am, bm, i, j)

    caa = sym_compose(g, a, a)
    for i in range(3):
        for j in range(3):
            assert caa.mat()[i][j] == raw(am, am, i, j)


# ---------------------------------------------------------------------------
# Pointwise reduction of a gradient-type Ricci tensor


def test_harmonic_reduction_canonical_case():
    g = Metric3(Sym2.diag(F(1), F(1), F(1)))
    s = F(-6)
    ric = Sym2.diag(F(0), s / 2, s / 2)
    model, norm_sq = harmonic_ricci_reduction(g, ric, (F(1), F(0), F(0)), s)
    assert model == ric and norm_sq == s * s / 2


def test_harmonic_reduction_rotated_frame():
    # rational rotation: conjugate the canonical data by an orthogonal map
    # built from the Pythagorean pair (3,4,5) in the (1,2) plane
    c, sn = F(3, 5), F(4, 5)
    rot = [[c, -sn, 0], [sn, c, 0], [0, 0, 1]]
    g = Metric3(Sym2.diag(F(1), F(1), F(1)))
    s = F(10)
    base = Sym2.diag(F(0), s / 2, s / 2).mat()
    conj = [[sum(rot[i][a] * base[a][b] * rot[j][b]
                 for a in range(3) for b in range(3))
             for j in range(3)] for i in range(3)]
    ric = Sym2.from_matrix(conj)
    dphi = (c, sn, F(0))   # image of e1 under the rotation (covector = vector here)
    model, norm_sq = harmonic_ricci_reduction(g, ric, dphi, s)
    assert model == ric and norm_sq == s * s / 2


def test_harmonic_reduction_rejects_wrong_eigenstructure():
    g = Metric3(Sym2.diag(F(1), F(1), F(1)))
    with pytest.raises(PreconditionViolated):
        harmonic_ricci_reduction(g, Sym2.diag(F(0), F(1), F(2)),
                                 (F(1), F(0), F(0)), F(3))
    # gradient not in the kernel
    with pytest.raises(PreconditionViolated):
        harmonic_ricci_reduction(g, Sym2.diag(F(1), F(2), F(2)),
                                 (F(1), F(0), F(0)), F(5))


def test_harmonic_reduction_requires_nonzero_gradient():
    g = Metric3(Sym2.diag(F(1), F(1), F(1)))
    with pytest.raises(PreconditionViolated):
        harmonic_ricci_reduction(g, Sym2.zero(), (F(0), F(0), F(0)), F(0))


# ---------------------------------------------------------------------------
# Eigenreport determinism


def test_eigenreport_sorted_and_sign_normalized():
    g = Metric3(Sym2.diag(F(2), F(1), F(1)))
    a = Sym2.diag(F(4), F(-3), F(5))
    rep = eigenreport(g, a)
    assert list(rep.eigenvalues) == sorted(rep.eigenvalues)
    # relative eigenvalues of diag(4,-3,5) w.r.t. diag(2,1,1): (2,-3,5)
    assert abs(rep.eigenvalues[0] + 3) < 1e-12
    assert abs(rep.eigenvalues[1] - 2) < 1e-12
    assert abs(rep.eigenvalues[2] - 5) < 1e-12
    for vec in rep.eigenvectors:
        first = next(x for x in vec if abs(x) > 1e-9)
        assert first > 0
    assert eigenreport(g, a) == rep


def test_covector_norm_uses_inverse_metric():
    g = Metric3(Sym2.diag(F(4), F(9), F(1)))
    assert covector_norm_sq(g, (F(2), F(3), F(0))) == F(1) + F(1)
