"""
Weighted descendants as signed sums over admissible set partitions, and
checkers for the wall-crossing, generating-polynomial, dilaton, string and
divisor identities.

A weighted descendant <tau_{k_1}(g_1) ... tau_{k_n}(g_n)>_{g,Delta} is

    sum over partitions S of {1..n} into faces of Delta of
    (-1)^{dim S} < prod_{s in S} tau_{k_s}(g_s) >_{g,|S|}

with k_s = sum_{i in s} k_i - (|s| - 1) and g_s = prod_{i in s} g_i.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .complexes import (SimplicialComplex, admissible_partitions, all_partitions,
                        cone, cone_base, contract, full_simplex, is_cone,
                        popcount, skeleton, vertices_of)
from .chambers import is_simple_crossing, perturbed_pair
from .core import MultiPoly, format_rational
from .oracle import (POINT, UNIT, TargetError, ring_product, unweighted_lookup,
                     wk_point)
from .weights import WeightData, in_domain


def _as_combo(target, c):
    if isinstance(c, dict):
        for cid in c:
            target.degree(cid)
        return {k: Fraction(v) for k, v in c.items() if v}
    target.degree(str(c))
    return {str(c): Fraction(1)}


def combo_product(target, combos):
    """Product of rational combinations of basis classes."""
    combos = [c for c in combos if c != {UNIT: 1}]
    out = {UNIT: Fraction(1)}
    for combo in combos:
        acc = {}
        for a, ca in out.items():
            for b, cb in combo.items():
                for res, c in ring_product(target, [a, b]).items():
                    acc[res] = acc.get(res, 0) + ca * cb * c
        out = {k: v for k, v in acc.items() if v}
    return out


def _combo_degree(target, combo):
    degs = {target.degree(c) for c in combo}
    if len(degs) > 1:
        raise TargetError("class combination is not homogeneous")
    return degs.pop() if degs else None


def dimension_gate(genus, ks, classes=None, target=POINT):
    """Sum of (k_i + deg gamma_i) matches the expected dimension."""
    n = len(ks)
    classes = [UNIT] * n if classes is None else classes
    total = 0
    for k, c in zip(ks, classes):
        d = _combo_degree(target, _as_combo(target, c))
        total += k + (d or 0)
    return total == (1 - genus) * target.dim + target.pairing + 3 * genus - 3 + n


@dataclass(frozen=True)
class WeightedQuery:
    genus: int
    complex: SimplicialComplex
    ks: tuple
    classes: tuple = None
    target: object = POINT

    def __post_init__(self):
        cx = self.complex
        if isinstance(cx, WeightData):
            from .complexes import build_complex
            cx = build_complex(cx)
            object.__setattr__(self, "complex", cx)
        ks = tuple(int(k) for k in self.ks)
        classes = self.classes if self.classes is not None else (UNIT,) * len(ks)
        if not len(ks) == len(classes) == cx.n:
            raise ValueError("need one insertion per vertex (%d vertices, %d ks, %d classes)"
                             % (cx.n, len(ks), len(classes)))
        object.__setattr__(self, "ks", ks)
        object.__setattr__(self, "classes", tuple(classes))


@dataclass
class Term:
    partition: object
    sign: int
    ksigma: tuple
    oracle: Fraction
    value: Fraction

    def __str__(self):
        return "%s sign=%+d k=(%s) oracle=%s term=%s" % (
            self.partition, self.sign, ",".join(map(str, self.ksigma)),
            format_rational(self.oracle), format_rational(self.value))


@lru_cache(maxsize=4096)
def _partitions(c):
    return tuple(admissible_partitions(c))


@lru_cache(maxsize=4096)
def _partition_blocks(c):
    """(partition, sign, blocks as 0-based index tuples) for each admissible partition."""
    return tuple((p, -1 if p.dim % 2 else 1,
                  tuple(tuple(i - 1 for i in vertices_of(b)) for b in p.blocks))
                 for p in _partitions(c))


def _point_descendant(genus, complex, ks, trace):
    total = Fraction(0)
    for p, sign, blocks in _partition_blocks(complex):
        ksig = [sum(ks[i] for i in b) - len(b) + 1 for b in blocks]
        if min(ksig) < 0:
            oracle = Fraction(0)
        else:
            oracle = wk_point(genus, ksig)
        total += sign * oracle
        if trace is not None:
            trace.append(Term(p, sign, tuple(ksig), oracle, sign * oracle))
    return total


def _block_data(partition, ks, combos, target):
    ksig, gsig = [], []
    for block in partition.blocks:
        idx = [i - 1 for i in vertices_of(block)]
        ksig.append(sum(ks[i] for i in idx) - (len(idx) - 1))
        gsig.append(combo_product(target, [combos[i] for i in idx]))
    return ksig, gsig


def _oracle_value(genus, ksig, gsig, target):
    total = Fraction(0)
    items = [sorted(g.items()) for g in gsig]
    for choice in itertools.product(*items):
        coef = Fraction(1)
        for _, c in choice:
            coef *= c
        total += coef * unweighted_lookup(
            target, genus, [(k, cid) for k, (cid, _) in zip(ksig, choice)])
    return total


def weighted_descendant(genus, complex, ks, classes=None, target=POINT, trace=None):
    """Exact weighted descendant at the chamber labelled by ``complex``.

    ``classes`` holds one class per vertex, either a basis id or a
    {id: coefficient} combination; it defaults to the unit everywhere.  When
    ``trace`` is a list, one :class:`Term` per admissible partition is
    appended to it.
    """
    q = WeightedQuery(genus, complex, ks, classes, target)
    if any(k < 0 for k in q.ks):
        return Fraction(0)
    if target.is_point and all(c == UNIT or c == {UNIT: 1} for c in q.classes):
        if sum(q.ks) != 3 * genus - 3 + len(q.ks):
            return Fraction(0)
        return _point_descendant(genus, q.complex, q.ks, trace)
    combos = [_as_combo(target, c) for c in q.classes]
    if not dimension_gate(genus, q.ks, combos, target):
        return Fraction(0)
    total = Fraction(0)
    for p in _partitions(q.complex):
        sign = -1 if p.dim % 2 else 1
        ksig, gsig = _block_data(p, q.ks, combos, target)
        if any(k < 0 for k in ksig):
            oracle = Fraction(0)
        else:
            oracle = _oracle_value(genus, ksig, gsig, target)
        total += sign * oracle
        if trace is not None:
            trace.append(Term(p, sign, tuple(ksig), oracle, sign * oracle))
    return total


def all_partition_sum(genus, ks):
    """Alternating sum over every set partition (point target)."""
    total = Fraction(0)
    for p in all_partitions(len(ks)):
        ksig = [sum(ks[i - 1] for i in vertices_of(b)) - popcount(b) + 1 for b in p.blocks]
        if any(k < 0 for k in ksig):
            continue
        total += (-1) ** p.dim * unweighted_lookup(POINT, genus, [(k, UNIT) for k in ksig])
    return total


def kappa_number(genus, ks):
    """<kappa_{k_1-1} ... kappa_{k_n-1}>_g via the all-small-weights chamber."""
    n = len(ks)
    if n == 0:
        raise ValueError("need at least one insertion")
    eps = Fraction(1, 2 * n)
    if not in_domain(WeightData((eps,) * n, genus, 0)):
        raise ValueError("weights (eps^%d) are outside the domain for genus %d" % (n, genus))
    return weighted_descendant(genus, full_simplex(n), ks)


def kappa_number_all_partitions(genus, ks):
    """Same number as :func:`kappa_number`, summed over all partitions directly."""
    n = len(ks)
    eps = Fraction(1, 2 * n) if n else Fraction(0)
    if not n or not in_domain(WeightData((eps,) * n, genus, 0)):
        raise ValueError("weights (eps^%d) are outside the domain for genus %d" % (n, genus))
    return all_partition_sum(genus, ks)


# --- wall crossing ---------------------------------------------------------

def contracted_query(complex, ks, classes, sigma, target=POINT):
    """Complex, ks and classes after merging the face ``sigma`` into one vertex."""
    n = complex.n
    classes = [UNIT] * n if classes is None else list(classes)
    combos = [_as_combo(target, c) for c in classes]
    c2, mapping = contract(complex, sigma)
    members = [i - 1 for i in vertices_of(sigma)]
    merged = mapping[members[0]]
    ks2 = [None] * c2.n
    cl2 = [None] * c2.n
    for i in range(n):
        if i not in members:
            ks2[mapping[i]] = ks[i]
            cl2[mapping[i]] = combos[i]
    ks2[merged] = sum(ks[i] for i in members) - (len(members) - 1)
    cl2[merged] = combo_product(target, [combos[i] for i in members])
    return c2, ks2, cl2, mapping


def wallcross_third_term(genus, complex, ks, sigma, classes=None, target=POINT):
    """(-1)^(dim sigma + 1) times the descendant on the sigma-contracted complex."""
    if not complex.contains(sigma):
        raise ValueError("%s is not a face" % vertices_of(sigma))
    c2, ks2, cl2, _ = contracted_query(complex, ks, classes, sigma, target)
    sign = 1 if (popcount(sigma) - 1) % 2 else -1
    return sign * weighted_descendant(genus, c2, ks2, cl2, target)


@dataclass
class Report:
    name: str
    holds: bool
    lhs: object
    rhs: object
    details: dict = field(default_factory=dict)

    def __str__(self):
        def fmt(x):
            return format_rational(x) if isinstance(x, (int, Fraction)) else str(x)
        status = "PASS" if self.holds else "FAIL"
        extra = "".join(" %s=%s" % (k, fmt(v)) for k, v in self.details.items())
        return "%s %s lhs=%s rhs=%s%s" % (status, self.name, fmt(self.lhs), fmt(self.rhs), extra)


def verify_wallcross(genus, ks, pre, post, classes=None, target=POINT):
    """Check <..>_{pre} = <..>_{post} + third term, where post = pre + sigma."""
    sigma = is_simple_crossing(pre, post)
    if sigma is None:
        raise ValueError("complexes do not differ by a single simplex")
    lhs = weighted_descendant(genus, pre, ks, classes, target)
    at_post = weighted_descendant(genus, post, ks, classes, target)
    third = wallcross_third_term(genus, post, ks, sigma, classes, target)
    return Report("wallcross", lhs == at_post + third, lhs, at_post + third,
                  {"sigma": "{%s}" % ",".join(map(str, vertices_of(sigma))),
                   "post": at_post, "third": third})


def crossing_terms(genus, a, b, ks, classes=None, target=POINT, seed=0):
    """Descendants at both ends of a crossing path and the third terms met on it."""
    from .complexes import build_complex
    a2, b2, events = perturbed_pair(a, b, seed)
    c = build_complex(a2)
    thirds = []
    for e in events:
        c = c.with_face(e.subset)
        thirds.append(wallcross_third_term(genus, c, ks, e.subset, classes, target))
    start = weighted_descendant(genus, build_complex(a), ks, classes, target)
    end = weighted_descendant(genus, build_complex(b), ks, classes, target)
    assert c == build_complex(b)
    return start, end, events, thirds


def gendesc_difference(genus, ca, cb, ks, classes=None, target=POINT):
    """Sum over partitions admissible for cb but not ca (ca must be inside cb)."""
    if not ca.faces <= cb.faces:
        raise ValueError("first complex must be contained in the second")
    combos = [_as_combo(target, c) for c in (classes or [UNIT] * len(ks))]
    if not dimension_gate(genus, ks, combos, target):
        return Fraction(0)
    total = Fraction(0)
    for p in _partitions(cb):
        if all(ca.contains(bl) for bl in p.blocks):
            continue
        ksig, gsig = _block_data(p, ks, combos, target)
        if any(k < 0 for k in ksig):
            continue
        total += (-1) ** p.dim * _oracle_value(genus, ksig, gsig, target)
    return total


# --- generating polynomials -------------------------------------------------

def compositions(total, parts):
    """All tuples of ``parts`` nonnegative integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def generating_polynomial(genus, complex, target=POINT, classes=None, exponential=False):
    """Sum of descendants times t^k (divided by k! when ``exponential``)."""
    n = complex.n
    classes = [UNIT] * n if classes is None else list(classes)
    combos = [_as_combo(target, c) for c in classes]
    deg = sum(_combo_degree(target, c) or 0 for c in combos)
    total = (1 - genus) * target.dim + target.pairing + 3 * genus - 3 + n - deg
    terms = {}
    if total >= 0 and all(combos):
        for ks in compositions(total, n):
            v = weighted_descendant(genus, complex, ks, combos, target)
            if v and exponential:
                for k in ks:
                    v /= factorial(k)
            if v:
                terms[ks] = v
    return MultiPoly(n, terms)


def verify_genpoly_wallcross(genus, pre, post, target=POINT, classes=None):
    """Check E_pre - E_post = (-1)^(dim s+1) (integral of E_contracted)|_{t_s = sum t_i}."""
    sigma = is_simple_crossing(pre, post)
    if sigma is None:
        raise ValueError("complexes do not differ by a single simplex")
    n = pre.n
    dim_sigma = popcount(sigma) - 1
    lhs = (generating_polynomial(genus, pre, target, classes, True)
           - generating_polynomial(genus, post, target, classes, True))
    zeros = [0] * n
    c2, _, cl2, mapping = contracted_query(post, zeros, classes, sigma, target)
    e2 = generating_polynomial(genus, c2, target, cl2, True)
    members = [i - 1 for i in vertices_of(sigma)]
    merged = mapping[members[0]]
    # move the merged variable to a spare slot n, others back to their old index
    place = [None] * c2.n
    for i in range(n):
        if i not in members:
            place[mapping[i]] = i
    place[merged] = n
    lifted = e2.reindex(n + 1, place)
    integrated = lifted.antiderivative(n, dim_sigma)
    rhs = integrated.substitute_sum(n, members).drop_variables(n)
    rhs = rhs.scale(1 if dim_sigma % 2 else -1)
    return Report("genpoly", lhs == rhs, lhs, rhs,
                  {"sigma": "{%s}" % ",".join(map(str, vertices_of(sigma)))})


# --- dilaton / string / divisor -------------------------------------------

EQUATIONS = ("dilaton", "string", "divisor")


def _last_insertion(kind, target, divisor):
    if kind == "dilaton":
        return 1, UNIT
    if kind == "string":
        return 0, UNIT
    if kind == "divisor":
        if divisor is None:
            raise ValueError("divisor equation needs a degree-one class")
        if target.degree(divisor) != 1:
            raise ValueError("class %r does not have degree 1" % divisor)
        return 0, divisor
    raise ValueError("unknown equation %r" % kind)


def _main_factor(kind, genus, target, divisor):
    if kind == "dilaton":
        return 2 * genus - 2
    if kind == "string":
        return 0
    return target.beta_integral(divisor)


def verify_cone(kind, genus, complex, ks, classes=None, target=POINT, divisor=None):
    """Check the cone dilaton / string / divisor equation.

    ``complex`` must be a cone with apex n; ``ks`` and ``classes`` cover the
    base vertices only, the apex insertion is implied by ``kind``.
    """
    if not is_cone(complex):
        raise ValueError("complex is not a cone over its first %d vertices" % (complex.n - 1))
    base = cone_base(complex)
    ks = list(ks)
    classes = [UNIT] * len(ks) if classes is None else list(classes)
    k_last, c_last = _last_insertion(kind, target, divisor)
    lhs = weighted_descendant(genus, complex, ks + [k_last], classes + [c_last], target)
    factor = _main_factor(kind, genus, target, divisor)
    rhs = factor * weighted_descendant(genus, base, ks, classes, target) if factor else Fraction(0)
    return Report("cone-" + kind, lhs == rhs, lhs, rhs)


def symmetric_faces(n, r):
    """Faces of Cone(Delta_{n,r}) missing from Delta_{n+1,r}."""
    big = skeleton(n + 1, r)
    faces = sorted(cone(skeleton(n, r)).faces - big.faces)
    for a in faces:
        for b in faces:
            if a != b and a & b == a:
                raise AssertionError("containment among the extra faces")
    return big, faces


def verify_symmetric(kind, genus, r, ks, classes=None, target=POINT, divisor=None):
    """Check the symmetric dilaton / string / divisor equation at Delta_{n+1,r}.

    ``ks`` (length n) and ``classes`` are the insertions on the first n
    vertices; the last vertex carries tau_1, tau_0 or tau_0(D).
    """
    n = len(ks)
    if not 0 <= r <= n - 1:
        raise ValueError("need 0 <= r <= n-1")
    w = Fraction(1, r + 1)
    beta = target.beta
    for m in (n, n + 1):
        if not in_domain(WeightData((w,) * m, genus, beta)):
            raise ValueError("weights (1/%d)^%d are outside the domain" % (r + 1, m))
    ks = list(ks)
    classes = [UNIT] * n if classes is None else list(classes)
    k_last, c_last = _last_insertion(kind, target, divisor)
    full_ks = ks + [k_last]
    full_cl = classes + [c_last]
    big, extra = symmetric_faces(n, r)
    lhs = weighted_descendant(genus, big, full_ks, full_cl, target)
    factor = _main_factor(kind, genus, target, divisor)
    main = (factor * weighted_descendant(genus, skeleton(n, r), ks, classes, target)
            if factor else Fraction(0))
    corrections = Fraction(0)
    for sigma in extra:
        corrections += wallcross_third_term(genus, big.with_face(sigma), full_ks, sigma,
                                            full_cl, target)
    return Report("symmetric-" + kind, lhs == main + corrections, lhs, main + corrections,
                  {"main": main, "corrections": corrections, "extra_faces": len(extra)})
