"""
Exact Fourier-Motzkin elimination for systems of strict and non-strict
linear inequalities over Q.

A constraint ``(coeffs, bound, strict)`` means ``sum c_i x_i < bound`` when
``strict`` and ``<= bound`` otherwise.
"""

from fractions import Fraction


class CapacityError(Exception):
    """Raised when an elimination step produces too many constraints."""


def _normalize(coeffs, bound, strict):
    # scale so the largest |c_i| is 1; returns None for the trivial row
    m = max((abs(c) for c in coeffs), default=0)
    if m == 0:
        return None
    return tuple(c / m for c in coeffs), bound / m, strict


def _tighter(a, b):
    """Of two (bound, strict) pairs on the same left side, the stronger one."""
    if a[0] != b[0]:
        return a if a[0] < b[0] else b
    return a if a[1] else b


def _reduce(rows):
    """Dedupe rows, keeping the tightest bound per left side.

    Returns None if some constant row is violated.
    """
    best = {}
    for coeffs, bound, strict in rows:
        norm = _normalize(coeffs, bound, strict)
        if norm is None:
            if bound < 0 or (strict and bound == 0):
                return None
            continue
        lhs, b, s = norm
        best[lhs] = _tighter(best[lhs], (b, s)) if lhs in best else (b, s)
    return [(lhs, b, s) for lhs, (b, s) in best.items()]


def _pick_variable(rows, remaining):
    best = None
    for v in sorted(remaining):
        pos = sum(1 for c, _, _ in rows if c[v] > 0)
        neg = sum(1 for c, _, _ in rows if c[v] < 0)
        score = pos * neg - pos - neg
        if best is None or score < best[0]:
            best = (score, v)
    return best[1]


def _eliminate(rows, v):
    keep, pos, neg = [], [], []
    for row in rows:
        c = row[0][v]
        if c > 0:
            pos.append(row)
        elif c < 0:
            neg.append(row)
        else:
            keep.append(row)
    for cp, bp, sp in pos:
        for cn, bn, sn in neg:
            p, q = cp[v], -cn[v]
            coeffs = tuple(q * a + p * b for a, b in zip(cp, cn))
            keep.append((coeffs, q * bp + p * bn, sp or sn))
    return keep


def _choose(lo, hi):
    """Pick a value in the interval described by (value, strict) endpoints."""
    if hi is not None and not hi[1] and (lo is None or hi[0] > lo[0]
                                         or (hi[0] == lo[0] and not lo[1])):
        return hi[0]
    if lo is not None and hi is not None:
        if lo[0] > hi[0] or (lo[0] == hi[0] and (lo[1] or hi[1])):
            raise AssertionError("empty interval during back-substitution")
        return (lo[0] + hi[0]) / 2
    if lo is not None:
        return lo[0] if not lo[1] else lo[0] + 1
    if hi is not None:
        return hi[0] - 1
    return Fraction(0)


def solve(rows, nvars, limit=20000):
    """Return a rational solution of the system, or None if infeasible."""
    rows = [(tuple(Fraction(c) for c in coeffs), Fraction(b), bool(s))
            for coeffs, b, s in rows]
    for coeffs, _, _ in rows:
        if len(coeffs) != nvars:
            raise ValueError("constraint has wrong number of coefficients")
    current = _reduce(rows)
    if current is None:
        return None
    stages = []
    remaining = set(range(nvars))
    while remaining:
        v = _pick_variable(current, remaining)
        remaining.discard(v)
        stages.append((v, current))
        current = _reduce(_eliminate(current, v))
        if current is None:
            return None
        if len(current) > limit:
            raise CapacityError(
                "elimination produced %d constraints (limit %d)" % (len(current), limit))
    x = [Fraction(0)] * nvars
    for v, rows_v in reversed(stages):
        lo = hi = None
        for coeffs, b, strict in rows_v:
            c = coeffs[v]
            if c == 0:
                continue
            rest = b - sum(coeffs[j] * x[j] for j in range(nvars) if j != v and coeffs[j])
            val = rest / c
            if c > 0:
                if hi is None or val < hi[0] or (val == hi[0] and strict):
                    hi = (val, strict)
            else:
                if lo is None or val > lo[0] or (val == lo[0] and strict):
                    lo = (val, strict)
        x[v] = _choose(lo, hi)
    return x


def satisfies(rows, x):
    for coeffs, b, strict in rows:
        s = sum(Fraction(c) * xi for c, xi in zip(coeffs, x))
        if s > b or (strict and s == b):
            return False
    return True
