"""
Exact feasibility of mixed strict / non-strict linear systems via a rational LP.

A row ``(coeffs, bound, strict)`` means ``sum c_i x_i < bound`` (strict) or
``<= bound``, over nonnegative x.  The system is homogenized with a scale
t in (0, 1] and a shared strict slack s <= t:

    c.x - bound*t + s*[strict] <= 0,    s <= t <= 1,

and s is maximized.  The origin is feasible, so the simplex never needs its
phase-one search (which can oscillate) and Bland's rule guarantees
termination.  The original system is feasible iff the optimum s is positive,
and then x/t is a witness.
"""

from fractions import Fraction

from sympy import Rational
from sympy.solvers.simplex import linprog


def _to_fraction(v):
    return Fraction(int(v.p), int(v.q))


def solve(rows, nvars):
    """A nonnegative rational point satisfying every row, or None."""
    # columns: x_1..x_n, t, s
    A, b = [], []
    for coeffs, bound, strict in rows:
        A.append([Rational(c) for c in coeffs] + [-Rational(bound), 1 if strict else 0])
        b.append(0)
    A.append([0] * nvars + [1, 0])
    b.append(1)
    A.append([0] * nvars + [-1, 1])
    b.append(0)
    opt, x = linprog([0] * (nvars + 1) + [-1], A, b)
    if -opt <= 0:
        return None
    t = _to_fraction(x[nvars])
    return [_to_fraction(v) / t for v in x[:nvars]]
