"""
Wall arrangements, chamber signatures and straight-line wall-crossing paths.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .complexes import (CapacityError, SimplicialComplex, format_face, popcount, realize,
                        vertices_of)
from .core import format_rational
from .weights import (chamber_slack, dominates, in_domain, perturbation,
                      subset_sums)

FINE = "fine"
COARSE = "coarse"
MAX_ENUMERATION_VERTICES = 5


def walls(n, decomposition=FINE):
    """Subsets I whose hyperplanes sum_{i in I} a_i = 1 cut the cube."""
    smallest = {FINE: 2, COARSE: 3}[decomposition]
    return [m for m in range(1, 1 << n) if popcount(m) >= smallest]


def chamber_signature(w, decomposition=FINE):
    """Map wall subset -> True when the subset sum is <= 1."""
    sums = subset_sums(w.weights)
    return {m: sums[m] <= 1 for m in walls(len(w), decomposition)}


def format_signature(sig, n):
    return " ".join("%s:%s" % (format_face(m, n), "<=1" if le else ">1")
                    for m, le in sorted(sig.items(), key=lambda kv: (popcount(kv[0]), kv[0])))


def same_fine_chamber(a, b):
    if len(a) != len(b):
        raise ValueError("weight data of different lengths")
    if (a.genus, a.beta) != (b.genus, b.beta):
        raise ValueError("weight data with different genus or beta")
    return (a.zero_mask == b.zero_mask
            and chamber_signature(a, FINE) == chamber_signature(b, FINE))


@dataclass(frozen=True)
class CrossingEvent:
    subset: int  # bitmask
    t: Fraction
    direction: str = "add"

    def __str__(self):
        return "t=%s %s I={%s}" % (format_rational(self.t), self.direction,
                                    ",".join(map(str, vertices_of(self.subset))))


def _events(a, b):
    """Walls crossed on the segment from a to b, or None if two coincide."""
    n = len(a)
    sa, sb = subset_sums(a.weights), subset_sums(b.weights)
    events = []
    for m in walls(n, FINE):
        above_a, above_b = sa[m] > 1, sb[m] > 1
        if above_a == above_b:
            continue
        drop = sa[m] - sb[m]
        # a >= b coordinatewise, so a sign change always means a decrease
        assert drop > 0 and above_a
        events.append(CrossingEvent(m, (sa[m] - 1) / drop, "add"))
    ts = [e.t for e in events]
    if len(set(ts)) != len(ts):
        return None
    return sorted(events, key=lambda e: e.t)


def perturbed_pair(a, b, seed=0, max_tries=1000):
    """Shift a and b by one common small vector so all crossings are simple.

    Using the same shift for both keeps a - b (hence dominance) intact.
    """
    _check_pair(a, b)
    bound = min(chamber_slack(a), chamber_slack(b))
    for s in range(seed, seed + max_tries):
        deltas = perturbation(len(a), s, bound)
        a2 = a.replace_weights(x - d for x, d in zip(a.weights, deltas))
        b2 = b.replace_weights(x - d for x, d in zip(b.weights, deltas))
        events = _events(a2, b2)
        if events is not None:
            return a2, b2, events
    raise RuntimeError("could not separate crossing parameters after %d seeds" % max_tries)


def _check_pair(a, b):
    if not (a.positive and b.positive):
        raise ValueError("crossing paths need positive weights")
    if not dominates(a, b):
        raise ValueError("first weight data must dominate the second")
    if not (in_domain(a) and in_domain(b)):
        raise ValueError("weight data outside the domain")


def crossing_path(a, b, seed=0):
    """Simple wall crossings met on the straight segment from a to b.

    Both endpoints are first perturbed inside their fine chambers; the events
    refer to the perturbed pair and are sorted by their segment parameter.
    """
    return perturbed_pair(a, b, seed)[2]


def apply_events(c, events):
    for e in events:
        c = c.with_face(e.subset)
    return c


def is_simple_crossing(before, after):
    """The simplex added by passing from ``before`` to ``after``, or None."""
    if before.n != after.n:
        raise ValueError("complexes on different vertex sets")
    if not before.faces <= after.faces:
        return None
    extra = after.faces - before.faces
    if len(extra) != 1:
        return None
    (sigma,) = extra
    return sigma


def _all_complexes(n):
    """Every downward-closed family on n vertices containing all vertices."""
    candidates = sorted((m for m in range(1, 1 << n) if popcount(m) >= 2),
                        key=lambda m: (popcount(m), m))
    singles = [1 << i for i in range(n)]
    chosen = set(singles)

    def rec(i):
        if i == len(candidates):
            yield frozenset(chosen)
            return
        m = candidates[i]
        yield from rec(i + 1)
        rest, ok = m, True
        while rest:
            low = rest & -rest
            rest ^= low
            if m ^ low not in chosen:
                ok = False
                break
        if ok:
            chosen.add(m)
            yield from rec(i + 1)
            chosen.discard(m)

    yield from rec(0)


def _permute_mask(mask, perm):
    out = 0
    for i, j in enumerate(perm):
        if mask >> i & 1:
            out |= 1 << j
    return out


def _canonical(faces, perms):
    """Smallest relabelling of a face set, and the permutation reaching it."""
    best = None
    for perm in perms:
        key = tuple(sorted(_permute_mask(f, perm) for f in faces))
        if best is None or key < best[0]:
            best = (key, perm)
    return best


def enumerate_chambers(n, decomposition=FINE, genus=2, beta=0):
    """Realizable chamber labels for positive weights in the domain.

    Fine chambers are labelled by complexes; coarse ones by the faces of size
    at least three.  Exponential in n, so n is capped.  Realizability is
    decided once per orbit under relabelling of the vertices.
    """
    if n > MAX_ENUMERATION_VERTICES:
        raise CapacityError("chamber enumeration is capped at n <= %d"
                            % MAX_ENUMERATION_VERTICES)
    perms = list(itertools.permutations(range(n)))
    witnesses = {}
    found = {}
    for faces in _all_complexes(n):
        key, perm = _canonical(faces, perms)
        if key not in witnesses:
            rep = SimplicialComplex(n, key, check=False)
            witnesses[key] = realize(rep, domain=(genus, beta))
        rep_w = witnesses[key]
        if rep_w is None:
            continue
        c = SimplicialComplex(n, faces, check=False)
        # vertex i of c is vertex perm[i] of the representative
        w = rep_w.replace_weights(rep_w.weights[perm[i]] for i in range(n))
        if decomposition == FINE:
            key = c
        else:
            key = frozenset(f for f in faces if popcount(f) >= 3)
        found.setdefault(key, (c, w))
    return sorted(found.values(), key=lambda cw: (len(cw[0].faces), str(cw[0])))
