"""Seeded random generators for exact-rational test data.

Everything draws from Python's Mersenne Twister (`random.Random`) with a
fixed call order, so a seed replays the same data on any platform.  Charts
come out positive definite on the whole sampling ball by construction: the
constant part of the metric dominates the polynomial or rational wiggle by
a diagonal margin larger than any row sum the wiggle can reach.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .charts import ChartGeometry, constant_metric_torus_chart
from .curvature3 import Curv3, Metric3, Sym2
from .fields import Poly3, RationalField, TrigField

_SYM_PAIRS = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))


def rng_from_seed(seed: int) -> random.Random:
    return random.Random(seed)


def child_rng(seed: int, label: str) -> random.Random:
    """Independent stream per (seed, label); stable across runs and ordering."""
    import zlib
    return random.Random((seed << 32) ^ zlib.crc32(label.encode()))


def rand_fraction(rng: random.Random, mag: int = 3, den: int = 7) -> Fraction:
    return Fraction(rng.randint(-mag * den, mag * den), rng.randint(1, den))


def rand_nonzero_fraction(rng: random.Random, mag: int = 3, den: int = 7) -> Fraction:
    while True:
        x = rand_fraction(rng, mag, den)
        if x != 0:
            return x


def rand_positive_fraction(rng: random.Random, mag: int = 3, den: int = 7) -> Fraction:
    return Fraction(rng.randint(1, mag * den), rng.randint(1, den))


def rand_sym2(rng: random.Random, mag: int = 4) -> Sym2:
    return Sym2(*(rand_fraction(rng, mag) for _ in range(6)))


def rand_spd_sym2(rng: random.Random, mag: int = 4) -> Sym2:
    """Symmetric positive definite: random entries, diagonally dominated.

    With every sampled entry bounded by B, adding 6B + 1 to the diagonal
    leaves each row strictly dominant, hence positive definite.
    """
    entries = [rand_fraction(rng, mag) for _ in range(6)]
    bound = 6 * max(abs(x) for x in entries) + 1
    m = Sym2(*entries)
    return Sym2(m.c[0] + bound, m.c[1], m.c[2], m.c[3] + bound, m.c[4], m.c[5] + bound)


def rand_metric3(rng: random.Random, mag: int = 4) -> Metric3:
    return Metric3(rand_spd_sym2(rng, mag))


def rand_curv3(rng: random.Random, g: Metric3, mag: int = 4) -> Curv3:
    """Random algebraic curvature tensor: any symmetric 2-form block works."""
    a, b, c = rand_fraction(rng, mag), rand_fraction(rng, mag), rand_fraction(rng, mag)
    d, e, f = rand_fraction(rng, mag), rand_fraction(rng, mag), rand_fraction(rng, mag)
    m = [[a, b, c], [b, d, e], [c, e, f]]
    return Curv3(m, g)


def rand_poly(rng: random.Random, degree: int = 2, mag: int = 2, den: int = 5) -> Poly3:
    monos = [(a, b, c) for a in range(degree + 1) for b in range(degree + 1)
             for c in range(degree + 1) if a + b + c <= degree]
    return Poly3({m: rand_fraction(rng, mag, den) for m in monos})


def _poly_ball_bound(p: Poly3, radius: Fraction) -> Fraction:
    """Upper bound for |p| on the closed sup-ball of the given radius."""
    acc = Fraction(0)
    for (a, b, c), coef in p.coeffs.items():
        acc += abs(coef) * radius ** (a + b + c)
    return acc


def rand_polynomial_chart(rng: random.Random, degree: int = 2,
                          dilaton_degree: int = 2) -> ChartGeometry:
    """Ball chart with polynomial metric entries, SPD on the whole ball."""
    wiggle = [rand_poly(rng, degree) for _ in range(6)]
    bound = max(_poly_ball_bound(w, Fraction(1)) for w in wiggle)
    shift = 6 * bound + 1
    entries = []
    for k, (i, j) in enumerate(_SYM_PAIRS):
        p = wiggle[k]
        if i == j:
            p = p.poly_add(Poly3.const(shift))
        entries.append(p)
    return ChartGeometry(tuple(entries), rand_poly(rng, dilaton_degree), "ball")


def rand_denominator(rng: random.Random) -> Poly3:
    """Affine polynomial bounded away from zero on the closed unit ball."""
    lin = [rand_fraction(rng, 1, 4) for _ in range(3)]
    c = 1 + sum(abs(x) for x in lin)
    return Poly3({(0, 0, 0): c, (1, 0, 0): lin[0], (0, 1, 0): lin[1], (0, 0, 1): lin[2]})


def rand_ratio_field(rng: random.Random, degree: int = 2) -> RationalField:
    return RationalField(rand_poly(rng, degree), rand_denominator(rng))


def rand_rational_chart(rng: random.Random, degree: int = 2) -> ChartGeometry:
    """Ball chart with rational-function metric entries and dilaton.

    Each off-diagonal entry is num/den with |num| <= B and den >= 1 on the
    ball, so a diagonal shift of 6B + 1 keeps the metric SPD everywhere.
    """
    nums = [rand_poly(rng, degree) for _ in range(6)]
    dens = [rand_denominator(rng) for _ in range(6)]
    bound = max(_poly_ball_bound(n, Fraction(1)) for n in nums)
    shift = 6 * bound + 1
    entries = []
    for k, (i, j) in enumerate(_SYM_PAIRS):
        f = RationalField(nums[k], dens[k])
        if i == j:
            f = RationalField(nums[k].poly_add(dens[k].scale(shift)), dens[k])
        entries.append(f)
    return ChartGeometry(tuple(entries), rand_ratio_field(rng), "ball")


def rand_trig(rng: random.Random, max_freq: int = 2, terms: int = 3,
              mag: int = 2, den: int = 5) -> TrigField:
    f = TrigField.const(rand_fraction(rng, mag, den))
    for _ in range(terms):
        freq = tuple(rng.randint(-max_freq, max_freq) for _ in range(3))
        if freq == (0, 0, 0):
            continue
        f = f.trig_add(TrigField.cos(freq, rand_fraction(rng, mag, den)))
        f = f.trig_add(TrigField.sin(freq, rand_fraction(rng, mag, den)))
    return f


def rand_torus_chart(rng: random.Random, max_freq: int = 2) -> ChartGeometry:
    """Torus chart: constant SPD metric, trig-polynomial dilaton."""
    return constant_metric_torus_chart(rand_spd_sym2(rng), rand_trig(rng, max_freq))


def rand_ball_point(rng: random.Random, den: int = 16, reach: int = 4) -> tuple:
    """Rational point with sup-norm at most reach/den (default 1/4)."""
    return tuple(Fraction(rng.randint(-reach, reach), den) for _ in range(3))


def rand_torus_point(rng: random.Random, den: int = 12) -> tuple:
    return tuple(Fraction(rng.randint(0, den - 1), den) for _ in range(3))


def rand_point(rng: random.Random, chart: ChartGeometry) -> tuple:
    if chart.domain == "torus":
        return rand_torus_point(rng)
    return rand_ball_point(rng)


def rand_deformation(rng: random.Random, degree: int = 2) -> tuple:
    return tuple(rand_poly(rng, degree) for _ in range(6))


def rand_vector_fields(rng: random.Random, degree: int = 2) -> tuple:
    return tuple(rand_poly(rng, degree) for _ in range(3))


def rand_trig_deformation(rng: random.Random, max_freq: int = 2) -> tuple:
    return tuple(rand_trig(rng, max_freq) for _ in range(6))


def rand_trig_vector(rng: random.Random, max_freq: int = 2) -> tuple:
    return tuple(rand_trig(rng, max_freq) for _ in range(3))
