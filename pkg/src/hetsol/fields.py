"""Closed-form scalar fields on R^3 and their truncated Taylor jets.

Three field kinds are supported:

  * Poly3      polynomials with exact rational coefficients,
  * RationalField   quotients of two Poly3 (poles detected at evaluation),
  * TrigField  real trigonometric polynomials on the 2*pi-periodic torus,
               stored in exponential form with rational cos/sin weights.

A "jet" of order n at a point p is the dict {multi-index: Taylor coefficient}
of f(p + u) truncated to total degree n.  All downstream geometry (Christoffel
symbols, curvature, covariant derivatives) is assembled from jets, so the
same assembly code runs exactly on rational data and approximately on floats.

JSON serialization keeps rationals as strings ("p/q"), so chart files survive
round trips without precision loss.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from .errors import PoleAtPoint, UnsupportedFieldCombination
from .util import as_fraction, factorial, rat_str

Mono = tuple[int, int, int]

_MONO_CACHE: dict[int, tuple[Mono, ...]] = {}


def monomials_upto(order: int) -> tuple[Mono, ...]:
    """All exponent triples with total degree <= order, graded order."""
    if order not in _MONO_CACHE:
        out = []
        for total in range(order + 1):
            for a in range(total + 1):
                for b in range(total - a + 1):
                    out.append((a, b, total - a - b))
        _MONO_CACHE[order] = tuple(out)
    return _MONO_CACHE[order]


# ---------------------------------------------------------------------------
# Jets: dict[Mono] -> scalar, truncated at a given total degree.


def jet_add(j1: dict, j2: dict) -> dict:
    out = dict(j1)
    for k, v in j2.items():
        out[k] = out.get(k, 0) + v
    return out


def jet_scale(j: dict, t) -> dict:
    return {k: t * v for k, v in j.items()}


def jet_mul(j1: dict, j2: dict, order: int) -> dict:
    out: dict = {}
    for (a1, b1, c1), v1 in j1.items():
        if v1 == 0:
            continue
        for (a2, b2, c2), v2 in j2.items():
            a, b, c = a1 + a2, b1 + b2, c1 + c2
            if a + b + c > order:
                continue
            key = (a, b, c)
            out[key] = out.get(key, 0) + v1 * v2
    return out


def jet_div(num: dict, den: dict, order: int) -> dict:
    """Truncated series num/den; requires den(0) != 0."""
    d0 = den.get((0, 0, 0), 0)
    if d0 == 0:
        raise PoleAtPoint("denominator vanishes at the expansion point")
    inv0 = (Fraction(1) / d0) if not isinstance(d0, float) else 1.0 / d0
    out: dict = {}
    for mono in monomials_upto(order):
        acc = num.get(mono, 0)
        a, b, c = mono
        for (da, db, dc), dv in den.items():
            if (da, db, dc) == (0, 0, 0) or dv == 0:
                continue
            ra, rb, rc = a - da, b - db, c - dc
            if ra < 0 or rb < 0 or rc < 0:
                continue
            prev = out.get((ra, rb, rc), 0)
            if prev != 0:
                acc = acc - dv * prev
        if acc != 0:
            out[mono] = inv0 * acc
    return out


def jet_value(j: dict):
    return j.get((0, 0, 0), 0)


def jet_d1(j: dict, a: int):
    """First partial along axis a at the base point."""
    key = tuple(1 if i == a else 0 for i in range(3))
    return j.get(key, 0)


def jet_d2(j: dict, a: int, b: int):
    """Second partial d_a d_b at the base point."""
    key = [0, 0, 0]
    key[a] += 1
    key[b] += 1
    coeff = j.get(tuple(key), 0)
    return coeff * (2 if a == b else 1)


def jet_d3(j: dict, a: int, b: int, c: int):
    """Third partial d_a d_b d_c at the base point."""
    key = [0, 0, 0]
    key[a] += 1
    key[b] += 1
    key[c] += 1
    mult = factorial(key[0]) * factorial(key[1]) * factorial(key[2])
    return j.get(tuple(key), 0) * mult


# ---------------------------------------------------------------------------
# Field classes


class Field:
    """Base class: a scalar field with pointwise evaluation and jets."""

    kind = "abstract"

    def eval(self, p):
        raise NotImplementedError

    def jet(self, p, order: int) -> dict:
        raise NotImplementedError

    def diff(self, axis: int) -> "Field":
        raise NotImplementedError

    def is_zero(self) -> bool:
        raise NotImplementedError

    def __add__(self, other: "Field") -> "Field":
        return field_add(self, other)

    def __sub__(self, other: "Field") -> "Field":
        return field_add(self, other.scale(-1))

    def scale(self, t) -> "Field":
        raise NotImplementedError


class Poly3(Field):
    """Polynomial in (x, y, z) with rational coefficients."""

    kind = "poly"
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict):
        self.coeffs = {k: v for k, v in coeffs.items() if v != 0}

    @classmethod
    def const(cls, c) -> "Poly3":
        return cls({(0, 0, 0): as_fraction(c)})

    @classmethod
    def zero(cls) -> "Poly3":
        return cls({})

    @classmethod
    def variable(cls, axis: int) -> "Poly3":
        key = tuple(1 if i == axis else 0 for i in range(3))
        return cls({key: Fraction(1)})

    def degree(self) -> int:
        return max((sum(k) for k in self.coeffs), default=0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def as_float(self) -> "Poly3":
        return Poly3({k: float(v) for k, v in self.coeffs.items()})

    def __mul__(self, other: "Poly3") -> "Poly3":
        out: dict = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                k = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])
                out[k] = out.get(k, 0) + v1 * v2
        return Poly3(out)

    def poly_add(self, other: "Poly3") -> "Poly3":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return Poly3(out)

    def scale(self, t) -> "Poly3":
        return Poly3({k: t * v for k, v in self.coeffs.items()})

    def diff(self, axis: int) -> "Poly3":
        out: dict = {}
        for k, v in self.coeffs.items():
            e = k[axis]
            if e == 0:
                continue
            nk = list(k)
            nk[axis] = e - 1
            out[tuple(nk)] = out.get(tuple(nk), 0) + e * v
        return Poly3(out)

    def eval(self, p):
        acc = 0
        for (a, b, c), v in self.coeffs.items():
            acc = acc + v * p[0] ** a * p[1] ** b * p[2] ** c
        return acc

    def jet(self, p, order: int) -> dict:
        """Taylor coefficients of f(p + u) up to total degree `order`."""
        out: dict = {}
        for (a, b, c), v in self.coeffs.items():
            # expand (p0+u)^a (p1+v)^b (p2+w)^c by binomials
            for ia in range(min(a, order) + 1):
                ca = math.comb(a, ia) * p[0] ** (a - ia)
                for ib in range(min(b, order - ia) + 1):
                    cb = math.comb(b, ib) * p[1] ** (b - ib)
                    for ic in range(min(c, order - ia - ib) + 1):
                        cc = math.comb(c, ic) * p[2] ** (c - ic)
                        key = (ia, ib, ic)
                        out[key] = out.get(key, 0) + v * ca * cb * cc
        return {k: v for k, v in out.items() if v != 0}

    def __repr__(self):
        return f"Poly3({self.coeffs!r})"


class RationalField(Field):
    """Quotient num/den of two polynomials."""

    kind = "ratio"
    __slots__ = ("num", "den")

    def __init__(self, num: Poly3, den: Poly3):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator polynomial")
        self.num = num
        self.den = den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def as_float(self) -> "RationalField":
        return RationalField(self.num.as_float(), self.den.as_float())

    def scale(self, t) -> "RationalField":
        return RationalField(self.num.scale(t), self.den)

    def diff(self, axis: int) -> "RationalField":
        # quotient rule: (n' d - n d') / d^2
        num = (self.num.diff(axis) * self.den).poly_add(
            (self.num * self.den.diff(axis)).scale(-1))
        return RationalField(num, self.den * self.den)

    def eval(self, p):
        d = self.den.eval(p)
        if d == 0:
            raise PoleAtPoint(f"denominator vanishes at {p}")
        n = self.num.eval(p)
        if isinstance(n, float) or isinstance(d, float):
            return n / d
        return Fraction(n) / Fraction(d)

    def jet(self, p, order: int) -> dict:
        return jet_div(self.num.jet(p, order), self.den.jet(p, order), order)

    def __repr__(self):
        return f"RationalField({self.num!r}, {self.den!r})"


class TrigField(Field):
    """Real trigonometric polynomial sum_k [a_k cos(k.x) + b_k sin(k.x)].

    Stored as {k: (a_k, b_k)} over integer frequency triples k, with only one
    representative of each +-k pair kept.  Coefficients are exact rationals,
    but evaluation and jets are floating point (pi is irrational); the exact
    paths use the coefficients directly (means, products, quadrature).
    """

    kind = "trig"
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict):
        norm: dict = {}
        for k, (a, b) in coeffs.items():
            k = tuple(int(x) for x in k)
            kk, flip = _canon_freq(k)
            a2, b2 = (a, -b) if flip else (a, b)
            pa, pb = norm.get(kk, (Fraction(0), Fraction(0)))
            norm[kk] = (pa + a2, pb + b2)
        self.coeffs = {k: v for k, v in norm.items() if v != (0, 0) and (v[0] != 0 or v[1] != 0)}
        zero = (0, 0, 0)
        if zero in self.coeffs and self.coeffs[zero][1] != 0:
            # sin(0) = 0: drop the meaningless sine weight at frequency zero
            a, _ = self.coeffs[zero]
            if a == 0:
                del self.coeffs[zero]
            else:
                self.coeffs[zero] = (a, Fraction(0))

    @classmethod
    def const(cls, c) -> "TrigField":
        return cls({(0, 0, 0): (as_fraction(c), Fraction(0))})

    @classmethod
    def zero(cls) -> "TrigField":
        return cls({})

    @classmethod
    def cos(cls, k: Mono, weight=1) -> "TrigField":
        return cls({tuple(k): (as_fraction(weight), Fraction(0))})

    @classmethod
    def sin(cls, k: Mono, weight=1) -> "TrigField":
        return cls({tuple(k): (Fraction(0), as_fraction(weight))})

    def is_zero(self) -> bool:
        return not self.coeffs

    def max_frequency(self) -> int:
        return max((max(abs(x) for x in k) for k in self.coeffs), default=0)

    def as_float(self) -> "TrigField":
        return TrigField({k: (float(a), float(b)) for k, (a, b) in self.coeffs.items()})

    def is_constant(self) -> bool:
        return all(k == (0, 0, 0) for k in self.coeffs)

    def mean(self):
        """Average over the torus (the frequency-zero cosine weight)."""
        return self.coeffs.get((0, 0, 0), (Fraction(0), Fraction(0)))[0]

    def scale(self, t) -> "TrigField":
        return TrigField({k: (t * a, t * b) for k, (a, b) in self.coeffs.items()})

    def trig_add(self, other: "TrigField") -> "TrigField":
        out = dict(self.coeffs)
        for k, (a, b) in other.coeffs.items():
            pa, pb = out.get(k, (Fraction(0), Fraction(0)))
            out[k] = (pa + a, pb + b)
        return TrigField(out)

    def __mul__(self, other: "TrigField") -> "TrigField":
        """Product via the cosine/sine addition formulas; stays exact."""
        out: dict = {}

        def bump(k, a, b):
            kk, flip = _canon_freq(k)
            if flip:
                b = -b
            pa, pb = out.get(kk, (Fraction(0), Fraction(0)))
            out[kk] = (pa + a, pb + b)

        half = Fraction(1, 2)
        for k1, (a1, b1) in self.coeffs.items():
            for k2, (a2, b2) in other.coeffs.items():
                kp = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])
                km = (k1[0] - k2[0], k1[1] - k2[1], k1[2] - k2[2])
                # cos*cos, cos*sin, sin*cos, sin*sin expansions
                bump(kp, half * a1 * a2, half * (a1 * b2 + b1 * a2))
                bump(km, half * (a1 * a2), half * (a1 * (-b2) + b1 * a2))
                bump(kp, -half * b1 * b2, Fraction(0))
                bump(km, half * b1 * b2, Fraction(0))
        return TrigField(out)

    def diff(self, axis: int) -> "TrigField":
        out: dict = {}
        for k, (a, b) in self.coeffs.items():
            n = k[axis]
            if n == 0:
                continue
            # d/dx [a cos(kx) + b sin(kx)] = -a n sin + b n cos
            pa, pb = out.get(k, (Fraction(0), Fraction(0)))
            out[k] = (pa + n * b, pb - n * a)
        return TrigField(out)

    def eval(self, p):
        acc = 0.0
        for (k1, k2, k3), (a, b) in self.coeffs.items():
            phase = k1 * float(p[0]) + k2 * float(p[1]) + k3 * float(p[2])
            acc += float(a) * math.cos(phase) + float(b) * math.sin(phase)
        return acc

    def jet(self, p, order: int) -> dict:
        out: dict = {}
        for (k1, k2, k3), (a, b) in self.coeffs.items():
            phase = k1 * float(p[0]) + k2 * float(p[1]) + k3 * float(p[2])
            # (a - i b) e^{i k (p+u)} contributes Re part; expand e^{i k u}
            base = complex(float(a), -float(b)) * cmath.exp(1j * phase)
            for mono in monomials_upto(order):
                ia, ib, ic = mono
                term = base * (1j * k1) ** ia * (1j * k2) ** ib * (1j * k3) ** ic
                term /= factorial(ia) * factorial(ib) * factorial(ic)
                out[mono] = out.get(mono, 0.0) + term.real
        return {k: v for k, v in out.items() if v != 0.0}

    def __repr__(self):
        return f"TrigField({self.coeffs!r})"


def _canon_freq(k):
    """Pick the representative of {k, -k}: first nonzero component positive."""
    for x in k:
        if x > 0:
            return k, False
        if x < 0:
            return tuple(-y for y in k), True
    return k, False


def field_add(f1: Field, f2: Field) -> Field:
    if isinstance(f1, TrigField) and isinstance(f2, TrigField):
        return f1.trig_add(f2)
    if isinstance(f1, TrigField) or isinstance(f2, TrigField):
        raise UnsupportedFieldCombination("cannot mix trigonometric and polynomial fields")
    n1, d1 = _as_ratio(f1)
    n2, d2 = _as_ratio(f2)
    if d1 is None and d2 is None:
        return n1.poly_add(n2)
    d1 = d1 or Poly3.const(1)
    d2 = d2 or Poly3.const(1)
    return RationalField((n1 * d2).poly_add(n2 * d1), d1 * d2)


def _as_ratio(f: Field):
    if isinstance(f, Poly3):
        return f, None
    if isinstance(f, RationalField):
        return f.num, f.den
    raise UnsupportedFieldCombination(f"unknown field kind {f.kind!r}")


# ---------------------------------------------------------------------------
# JSON encoding (rationals as strings, exact round trip)


def _mono_key(k: Mono) -> str:
    return ",".join(str(x) for x in k)


def _parse_mono(s: str) -> Mono:
    parts = tuple(int(x) for x in s.split(","))
    if len(parts) != 3:
        raise ValueError(f"bad multi-index {s!r}")
    return parts


def poly_to_json(p: Poly3) -> dict:
    return {"type": "poly",
            "coeffs": {_mono_key(k): rat_str(v) for k, v in sorted(p.coeffs.items())}}


def field_to_json(f: Field) -> dict:
    if isinstance(f, Poly3):
        return poly_to_json(f)
    if isinstance(f, RationalField):
        return {"type": "ratio", "num": poly_to_json(f.num), "den": poly_to_json(f.den)}
    if isinstance(f, TrigField):
        return {"type": "trig",
                "coeffs": {_mono_key(k): [rat_str(a), rat_str(b)]
                           for k, (a, b) in sorted(f.coeffs.items())}}
    raise UnsupportedFieldCombination(f"unknown field kind {f.kind!r}")


def field_from_json(obj: dict) -> Field:
    kind = obj.get("type")
    if kind == "poly":
        return Poly3({_parse_mono(k): as_fraction(v) for k, v in obj["coeffs"].items()})
    if kind == "ratio":
        num = field_from_json(obj["num"])
        den = field_from_json(obj["den"])
        if not isinstance(num, Poly3) or not isinstance(den, Poly3):
            raise ValueError("ratio parts must be polynomials")
        return RationalField(num, den)
    if kind == "trig":
        return TrigField({_parse_mono(k): (as_fraction(a), as_fraction(b))
                          for k, (a, b) in obj["coeffs"].items()})
    raise ValueError(f"unknown field type {kind!r}")
