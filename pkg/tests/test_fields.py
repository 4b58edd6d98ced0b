"""Field classes: exact arithmetic, differentiation, jets, serialization."""

import math
import random
from fractions import Fraction as F

import pytest

from hetsol.errors import PoleAtPoint, UnsupportedFieldCombination
from hetsol.fields import (Poly3, RationalField, TrigField, field_add,
                           field_from_json, field_to_json, jet_d1, jet_d2,
                           jet_value, monomials_upto)


def test_poly_eval_and_diff_exact():
    x, y, z = (Poly3.variable(a) for a in range(3))
    f = (x * x * y).poly_add(z.scale(F(3, 2))).poly_add(Poly3.const(-5))
    p = (F(1, 2), F(-2, 3), F(4))
    assert f.eval(p) == F(1, 4) * F(-2, 3) + F(3, 2) * 4 - 5
    assert f.diff(0).eval(p) == 2 * F(1, 2) * F(-2, 3)
    assert f.diff(2).eval(p) == F(3, 2)
    assert f.diff(1).diff(0).coeffs == f.diff(0).diff(1).coeffs


def test_poly_jet_matches_taylor_shift():
    rng = random.Random(5)
    monos = monomials_upto(3)
    f = Poly3({m: F(rng.randint(-9, 9), rng.randint(1, 4)) for m in monos})
    p = (F(1, 3), F(-1, 2), F(2, 5))
    j = f.jet(p, 2)
    assert jet_value(j) == f.eval(p)
    for a in range(3):
        assert jet_d1(j, a) == f.diff(a).eval(p)
        for b in range(3):
            assert jet_d2(j, a, b) == f.diff(a).diff(b).eval(p)


def test_rational_field_quotient_rule_and_pole():
    x = Poly3.variable(0)
    one = Poly3.const(1)
    r = RationalField(x * x, one.poly_add(x.scale(-1)))   # x^2 / (1 - x)
    p = (F(1, 2), F(0), F(0))
    assert r.eval(p) == F(1, 2)
    # d/dx [x^2/(1-x)] = (2x(1-x) + x^2)/(1-x)^2
    want = (2 * F(1, 2) * F(1, 2) + F(1, 4)) / F(1, 4)
    assert r.diff(0).eval(p) == want
    with pytest.raises(PoleAtPoint):
        r.eval((F(1), F(0), F(0)))
    with pytest.raises(ZeroDivisionError):
        RationalField(one, Poly3.zero())


def test_rational_jet_consistent_with_diff():
    x, y, _ = (Poly3.variable(a) for a in range(3))
    den = Poly3.const(1).poly_add(x * x).poly_add(y * y)
    r = RationalField(x.poly_add(y.scale(2)), den)
    p = (F(1, 3), F(-1, 4), F(0))
    j = r.jet(p, 2)
    assert jet_value(j) == r.eval(p)
    for a in range(3):
        assert jet_d1(j, a) == r.diff(a).eval(p)
    assert jet_d2(j, 0, 1) == r.diff(0).diff(1).eval(p)


def test_trig_product_and_diff():
    f = TrigField.cos((1, 0, 0), F(2))
    g = TrigField.sin((0, 1, 0), F(3))
    prod = f * g
    p = (0.3, -1.2, 0.7)
    assert abs(prod.eval(p) - f.eval(p) * g.eval(p)) < 1e-12
    d = prod.diff(0)
    h = 1e-6
    fd = (prod.eval((p[0] + h, p[1], p[2]))
          - prod.eval((p[0] - h, p[1], p[2]))) / (2 * h)
    assert abs(d.eval(p) - fd) < 1e-8
    assert prod.max_frequency() == 1
    assert (f * f).max_frequency() == 2


def test_trig_mean_is_zero_frequency_cosine():
    f = TrigField.cos((2, 1, 0), F(5)).trig_add(TrigField.const(F(7, 3)))
    assert f.mean() == F(7, 3)
    # cos^2 has mean 1/2 at doubled frequency
    c = TrigField.cos((1, 0, 0))
    assert (c * c).mean() == F(1, 2)
    s = TrigField.sin((1, 0, 0))
    assert (s * s).mean() == F(1, 2)
    assert (c * s).mean() == 0


def test_trig_canonical_negative_frequency():
    # cos(-k.x) = cos(k.x), sin(-k.x) = -sin(k.x)
    a = TrigField.cos((-1, 0, 0), F(1))
    b = TrigField.cos((1, 0, 0), F(1))
    assert a.coeffs == b.coeffs
    s = TrigField.sin((-1, 2, 0), F(1))
    t = TrigField.sin((1, -2, 0), F(-1))
    assert s.coeffs == t.coeffs


def test_field_add_mixed_kinds():
    x = Poly3.variable(0)
    r = RationalField(x, Poly3.const(1).poly_add(x * x))
    s = field_add(x, r)
    p = (F(1, 2), F(0), F(0))
    assert s.eval(p) == x.eval(p) + r.eval(p)
    with pytest.raises(UnsupportedFieldCombination):
        field_add(x, TrigField.cos((1, 0, 0)))


def test_field_json_round_trip():
    x, y, _ = (Poly3.variable(a) for a in range(3))
    cases = [
        (x * y).poly_add(Poly3.const(F(-3, 7))),
        RationalField(x.poly_add(y), Poly3.const(2).poly_add(x * x)),
        TrigField.cos((1, 2, 0), F(1, 3)).trig_add(TrigField.sin((0, 0, 1), F(-5))),
    ]
    for f in cases:
        g = field_from_json(field_to_json(f))
        assert type(g) is type(f)
        if isinstance(f, TrigField):
            assert g.coeffs == f.coeffs
        elif isinstance(f, RationalField):
            assert g.num.coeffs == f.num.coeffs and g.den.coeffs == f.den.coeffs
        else:
            assert g.coeffs == f.coeffs


def test_as_float_conversions():
    f = Poly3({(2, 0, 0): F(1, 3)})
    g = f.as_float()
    assert isinstance(g.coeffs[(2, 0, 0)], float)
    assert math.isclose(g.eval((0.5, 0, 0)), 1 / 12)
    t = TrigField.cos((1, 0, 0), F(1, 7)).as_float()
    (a, b), = t.coeffs.values()
    assert isinstance(a, float) and isinstance(b, float)
