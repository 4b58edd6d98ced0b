"""Small numeric helpers shared by the exact and floating-point code paths.

Scalars throughout the package are either `fractions.Fraction` (exact mode)
or `float` (floating mode); ints are treated as exact.  Most tensor routines
are written generically so the same code serves both modes.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Scalar = object  # Fraction | int | float in practice

DEFAULT_TOL = 1e-12


def is_exact(x) -> bool:
    return isinstance(x, (Fraction, int))


def all_exact(xs: Iterable) -> bool:
    return all(is_exact(x) for x in xs)


def as_fraction(x) -> Fraction:
    """Parse a rational from Fraction/int/'p/q' string. Floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def rat_str(x) -> str:
    """Serialize an exact scalar as 'p' or 'p/q'."""
    f = as_fraction(x)
    return str(f)


def close(a, b, tol: float = DEFAULT_TOL) -> bool:
    """Exact equality for exact inputs, scaled absolute tolerance otherwise."""
    if is_exact(a) and is_exact(b):
        return a == b
    fa, fb = float(a), float(b)
    return abs(fa - fb) <= tol * max(1.0, abs(fa), abs(fb))


def defect_magnitude(x) -> float:
    """|x| as a float, for reporting."""
    return abs(float(x))


def max_abs(xs: Iterable) -> float:
    m = 0.0
    for x in xs:
        m = max(m, abs(float(x)))
    return m


def solve_linear_particular(rows: Sequence[Sequence[Fraction]],
                            rhs: Sequence[Fraction]) -> list[Fraction]:
    """One exact solution of an underdetermined consistent system A x = b.

    Gaussian elimination over Fractions; free variables are set to zero.
    Raises ValueError if the system is inconsistent.
    """
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    a = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = Fraction(1) / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != 0:
            raise ValueError("inconsistent linear system")
    x = [Fraction(0)] * n
    for row, col in pivots:
        x[col] = a[row][n]
    return x


def factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out
