"""
Seeded randomized checks of the identities, shared by the CLI ``verify``
command and the test-suite.  Each suite returns a list of Reports.
"""

import random
from fractions import Fraction

from . import oracle
from .chambers import perturbed_pair
from .complexes import build_complex, cone, discrete
from .descend import (Report, compositions, crossing_terms, gendesc_difference,
                      verify_cone, verify_genpoly_wallcross, verify_symmetric,
                      verify_wallcross)
from .oracle import UNIT, TargetModel, descendant_key, genus0_point
from .weights import WeightData, in_domain

DENOMINATOR = 24


def random_ks(rng, genus, n, extra=0):
    """Uniformly chosen composition of 3g-3+n+extra into n parts."""
    total = 3 * genus - 3 + n + extra
    if total < 0:
        return None
    cuts = sorted(rng.randint(0, total) for _ in range(n - 1))
    parts, prev = [], 0
    for c in cuts + [total]:
        parts.append(c - prev)
        prev = c
    return parts


def random_dominating_pair(rng, n, genus, beta=0, max_tries=10000):
    """Positive weight data a >= b, both in the domain, with different complexes."""
    for _ in range(max_tries):
        a = [Fraction(rng.randint(1, DENOMINATOR), DENOMINATOR) for _ in range(n)]
        b = [Fraction(rng.randint(1, int(x * DENOMINATOR)), DENOMINATOR) for x in a]
        wa, wb = WeightData(tuple(a), genus, beta), WeightData(tuple(b), genus, beta)
        if not (in_domain(wa) and in_domain(wb)):
            continue
        if build_complex(wa) == build_complex(wb):
            continue
        return wa, wb
    raise RuntimeError("could not sample a dominating pair")


def _smallest_n(genus):
    # below these sizes every complex in the domain is the same
    return 4 if genus == 0 else 2


def random_crossings(count, nmax, gmax, seed=0, genus=None):
    """Yield (genus, ks, pre, post) for simple crossings met on random paths."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        g = genus if genus is not None else rng.randint(0, gmax)
        n = rng.randint(_smallest_n(g), nmax)
        a, b = random_dominating_pair(rng, n, g)
        a2, _, events = perturbed_pair(a, b, rng.randrange(1 << 30))
        c = build_complex(a2)
        for e in events:
            post = c.with_face(e.subset)
            yield g, random_ks(rng, g, n), c, post
            c = post
            made += 1
            if made >= count:
                return


def wallcross_suite(count=200, nmax=7, gmax=2, seed=0):
    return [verify_wallcross(g, ks, pre, post)
            for g, ks, pre, post in random_crossings(count, nmax, gmax, seed)]


def genpoly_suite(count=25, nmax=6, seed=0):
    return [verify_genpoly_wallcross(0, pre, post)
            for _, _, pre, post in random_crossings(count, nmax, 0, seed, genus=0)]


def path_suite(count=50, nmax=6, gmax=2, seed=0):
    """Telescoping of third terms along crossing paths between random pairs."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        g = rng.randint(0, gmax)
        n = rng.randint(_smallest_n(g), nmax)
        a, b = random_dominating_pair(rng, n, g)
        ks = random_ks(rng, g, n)
        start, end, events, thirds = crossing_terms(g, a, b, ks, seed=rng.randrange(1 << 30))
        direct = gendesc_difference(g, build_complex(a), build_complex(b), ks)
        ok = start - end == sum(thirds) and end - start == direct
        out.append(Report("path", ok, start - end, sum(thirds),
                          {"a": str(a), "b": str(b), "g": g,
                           "ks": ",".join(map(str, ks)), "events": len(events),
                           "gendesc": direct}))
    return out


def symmetric_suite(kind, gmax=2, nmax=5, target=None, divisor=None, genera=None):
    """Every gated insertion list for every valid (g, r, n)."""
    target = target or oracle.POINT
    out = []
    k_last = 1 if kind == "dilaton" else 0
    for g in (genera if genera is not None else range(gmax + 1)):
        for n in range(1, nmax + 1):
            for r in range(n):
                w = Fraction(1, r + 1)
                if not all(in_domain(WeightData((w,) * m, g, target.beta)) for m in (n, n + 1)):
                    continue
                for ks, classes in _gated_insertions(g, n, k_last, target, divisor):
                    rep = verify_symmetric(kind, g, r, ks, classes, target, divisor)
                    rep.details.update({"g": g, "r": r, "n": n, "ks": ",".join(map(str, ks))})
                    out.append(rep)
    return out


def _gated_insertions(genus, n, k_last, target, divisor):
    if target.is_point:
        for ks in compositions(3 * genus - 3 + n + 1 - k_last, n):
            yield list(ks), None
        return
    ids = sorted(target.classes)
    import itertools
    last_deg = target.degree(divisor) if divisor else 0
    for classes in itertools.product(ids, repeat=n):
        deg = sum(target.degree(c) for c in classes) + last_deg
        total = (1 - genus) * target.dim + target.pairing + 3 * genus - 3 + n + 1 - deg - k_last
        if total < 0:
            continue
        for ks in compositions(total, n):
            yield list(ks), list(classes)


def cone_suite(kind, gmax=2, nmax=5, seed=0, count=50, target=None, divisor=None):
    """Cone equations over random realizable base complexes."""
    rng = random.Random(seed)
    target = target or oracle.POINT
    out = []
    k_last = 1 if kind == "dilaton" else 0
    while len(out) < count:
        g = rng.randint(0, gmax)
        n = rng.randint(3 if g == 0 else 1, nmax)
        w = WeightData(tuple(Fraction(rng.randint(1, DENOMINATOR), DENOMINATOR)
                             for _ in range(n)), g, target.beta)
        if not in_domain(w):
            continue
        base = build_complex(w)
        for ks, classes in _gated_insertions(g, n, k_last, target, divisor):
            out.append(verify_cone(kind, g, cone(base), ks, classes, target, divisor))
            break
    return out


def oracle_suite(max_dim=12, max_n0=10):
    """String, dilaton, genus-0 and dual-recursion checks on the point oracle."""
    out = []
    keys = []
    for g in range(0, max_dim // 3 + 2):
        for n in range(0, max_dim + 4):
            d = 3 * g - 3 + n
            if d < 0 or d > max_dim or (g, n) in ((0, 0), (0, 1), (0, 2), (1, 0)):
                continue
            for ks in _partitions_into(d, n):
                keys.append((g, ks))
    for g, ks in keys:
        a, b = oracle.wk_point(g, ks), oracle.wk_kdv(g, ks)
        out.append(Report("dual-recursion", a == b, a, b,
                          {"g": g, "ks": ",".join(map(str, ks))}))
    for key, value in sorted(oracle.dvv_memo().items()):
        g = oracle.genus_of(key)
        if g is None or 3 * g - 3 + len(key) > max_dim:
            continue
        ks = list(key)
        if 0 in ks and (g, len(ks)) != (0, 3):
            rest = list(ks)
            rest.remove(0)
            rhs = sum(oracle.wk_point(g, rest[:j] + [rest[j] - 1] + rest[j + 1:])
                      for j in range(len(rest)))
            out.append(Report("string", value == rhs, value, rhs,
                              {"g": g, "ks": ",".join(map(str, ks))}))
        if 1 in ks and (g, len(ks)) != (1, 1):
            rest = list(ks)
            rest.remove(1)
            rhs = (2 * g - 2 + len(rest)) * oracle.wk_point(g, rest)
            out.append(Report("dilaton", value == rhs, value, rhs,
                              {"g": g, "ks": ",".join(map(str, ks))}))
    for n in range(3, max_n0 + 1):
        for ks in _partitions_into(n - 3, n):
            a, b = oracle.wk_point(0, ks), genus0_point(ks)
            out.append(Report("genus0", a == b, a, b, {"ks": ",".join(map(str, ks))}))
    base = oracle.wk_point(1, [1])
    out.append(Report("base", base == Fraction(1, 24), base, Fraction(1, 24), {}))
    return out


def _partitions_into(total, parts):
    """Nonincreasing tuples of ``parts`` nonnegative integers summing to ``total``."""
    def rec(remaining, slots, cap):
        if slots == 0:
            if remaining == 0:
                yield ()
            return
        for first in range(min(cap, remaining), -1, -1):
            if first * slots < remaining:
                break
            for rest in rec(remaining - first, slots - 1, first):
                yield (first,) + rest
    return list(rec(total, parts, total))


def p1_degree_zero_target(max_points=8):
    """Formal model of P^1 in degree 0, genus 0, up to ``max_points`` insertions.

    With classes 1 and H (H^2 = 0), the invariants are the point numbers when
    exactly one H is inserted and zero otherwise; they satisfy the divisor
    equation with integral of H over beta equal to 0.
    """
    model = TargetModel(kind="formal", dim=1, pairing=0, beta=0,
                        classes={UNIT: ("1", 0), "H": ("H", 1)},
                        products={("H", "H"): {}}, beta_integrals={"H": 0})
    import itertools
    for n in range(3, max_points + 1):
        for h in range(0, n + 1):
            total = n - 2 - h
            if total < 0:
                continue
            for ks_h in itertools.combinations_with_replacement(range(total + 1), h):
                rest = total - sum(ks_h)
                if rest < 0:
                    continue
                for ks_u in _partitions_into(rest, n - h):
                    ins = [(k, "H") for k in ks_h] + [(k, UNIT) for k in ks_u]
                    value = (genus0_point([k for k, _ in ins]) if h == 1 else Fraction(0))
                    model.table[descendant_key(0, ins)] = value
    return model


def divisor_suite(nmax=5, max_points=None):
    target = p1_degree_zero_target(max_points or nmax + 1)
    reports = symmetric_suite("divisor", nmax=nmax, target=target, divisor="H", genera=[0])
    return reports


def discrete_check(genus, ks):
    """Weighted descendant at (1^n) equals the unweighted number."""
    from .descend import weighted_descendant
    a = weighted_descendant(genus, discrete(len(ks)), ks)
    b = oracle.wk_point(genus, ks)
    return Report("discrete", a == b, a, b, {"g": genus, "ks": ",".join(map(str, ks))})


SUITES = ("wallcross", "genpoly", "path", "dilaton", "string", "divisor", "oracle")


def run_suite(name, params):
    """Dispatch a named suite with string parameters from the command line."""
    p = dict(params)

    def geti(key, default):
        return int(p.pop(key, default))

    if name == "wallcross":
        out = wallcross_suite(geti("count", 200), geti("nmax", 7), geti("gmax", 2), geti("seed", 0))
    elif name == "genpoly":
        out = genpoly_suite(geti("count", 25), geti("nmax", 6), geti("seed", 0))
    elif name == "path":
        out = path_suite(geti("count", 50), geti("nmax", 6), geti("gmax", 2), geti("seed", 0))
    elif name in ("dilaton", "string"):
        mode = p.pop("mode", "symmetric")
        if mode == "symmetric":
            if "g" in p or "r" in p or "n" in p:
                g, r, n = geti("g", 0), geti("r", 0), geti("n", 3)
                out = [rep for rep in symmetric_suite(name, gmax=g, nmax=n, genera=[g])
                       if rep.details["r"] == r and rep.details["n"] == n]
                if not out:
                    raise ValueError("no valid check for g=%d r=%d n=%d" % (g, r, n))
            else:
                out = symmetric_suite(name, geti("gmax", 2), geti("nmax", 5))
        elif mode == "cone":
            out = cone_suite(name, geti("gmax", 2), geti("nmax", 5), geti("seed", 0),
                             geti("count", 50))
        else:
            raise ValueError("mode must be symmetric or cone")
    elif name == "divisor":
        out = divisor_suite(geti("nmax", 4))
    elif name == "oracle":
        out = oracle_suite(geti("max", 12), geti("n0", 10))
    else:
        raise ValueError("unknown suite %r" % name)
    if p:
        raise ValueError("unknown parameters: %s" % ", ".join(sorted(p)))
    return out
