"""
Weight data: tuples of rational weights in [0, 1] with genus and curve degree.

Subsets of {1..n} are encoded as bitmasks throughout the package: vertex i
(1-based) is bit i-1.
"""

from dataclasses import dataclass
from fractions import Fraction

from .core import format_rational, parse_rational

MAX_VERTICES = 16
PERTURB_DENOMINATOR = 1 << 20


@dataclass(frozen=True)
class WeightData:
    weights: tuple
    genus: int = 0
    beta: int = 0

    def __post_init__(self):
        ws = tuple(Fraction(a) for a in self.weights)
        for a in ws:
            if not 0 <= a <= 1:
                raise ValueError("weight %s outside [0,1]" % format_rational(a))
        if self.genus < 0 or self.beta < 0:
            raise ValueError("genus and beta must be nonnegative")
        object.__setattr__(self, "weights", ws)

    @property
    def n(self):
        return len(self.weights)

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    @property
    def positive(self):
        return all(a > 0 for a in self.weights)

    @property
    def zero_mask(self):
        return sum(1 << i for i, a in enumerate(self.weights) if a == 0)

    def replace_weights(self, weights):
        return WeightData(tuple(weights), self.genus, self.beta)

    def __str__(self):
        return ",".join(format_rational(a) for a in self.weights)


def parse_weights(text, genus=0, beta=0, epsilon=None):
    """Parse ``"2/5,2/5,2/5,1"``; ``x^m`` repeats x m times.

    An ``e`` entry stands for ``epsilon`` (which must then be given).
    """
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            raise ValueError("empty weight in %r" % text)
        if "^" in item:
            base, _, rep = item.partition("^")
            try:
                count = int(rep)
            except ValueError:
                raise ValueError("bad repetition count in %r" % item) from None
            if count < 0:
                raise ValueError("bad repetition count in %r" % item)
        else:
            base, count = item, 1
        base = base.strip()
        if base == "e":
            if epsilon is None:
                raise ValueError("'e' placeholder used without epsilon")
            value = Fraction(epsilon)
        else:
            value = parse_rational(base)
        out.extend([value] * count)
    return WeightData(tuple(out), genus, beta)


def subset_sums(weights):
    """List s with s[mask] = sum of weights over the bits of mask."""
    n = len(weights)
    if n > MAX_VERTICES:
        raise ValueError("at most %d vertices supported" % MAX_VERTICES)
    sums = [Fraction(0)] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + weights[low.bit_length() - 1]
    return sums


def in_domain(w):
    """Membership in the region where nonempty moduli can live."""
    if (w.genus, w.beta) == (0, 0):
        return sum(w.weights) > 2
    if (w.genus, w.beta) == (1, 0):
        return any(a != 0 for a in w.weights)
    return True


def dominates(a, b):
    if len(a) != len(b):
        raise ValueError("weight data of different lengths")
    if (a.genus, a.beta) != (b.genus, b.beta):
        raise ValueError("weight data with different genus or beta")
    return all(x >= y for x, y in zip(a.weights, b.weights))


def splitmix64(x):
    x = (x + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return z ^ (z >> 31)


def perturbation(n, seed, bound):
    """Deterministic rationals 0 < d_i < bound derived from ``seed``."""
    out = []
    state = splitmix64(seed & 0xFFFFFFFFFFFFFFFF)
    for _ in range(n):
        state = splitmix64(state)
        m = 1 + state % (PERTURB_DENOMINATOR - 1)
        out.append(Fraction(bound) * Fraction(m, PERTURB_DENOMINATOR))
    return tuple(out)


def chamber_slack(w):
    """Largest bound b such that lowering every positive weight by less than b
    keeps the complex, the zero set and domain membership unchanged."""
    n = len(w)
    sums = subset_sums(w.weights)
    slack = None

    def update(x):
        nonlocal slack
        if x > 0 and (slack is None or x < slack):
            slack = x

    for mask in range(1, 1 << n):
        s = sums[mask]
        if s > 1 and mask & (mask - 1):
            update(s - 1)
    for a in w.weights:
        update(a)
    if (w.genus, w.beta) == (0, 0):
        update(sums[-1] - 2)
    if slack is None:
        return Fraction(1)
    # a subset sum drops by at most n * bound
    return slack / max(n, 1)


def perturb_generic(w, seed=0, accept=None, bound=None, max_tries=1000):
    """Move ``w`` slightly down into the interior of its fine chamber.

    Each weight drops by a seed-derived rational in (0, bound).  ``accept`` is
    an optional predicate on the candidate; seeds seed, seed+1, ... are tried
    until it passes.
    """
    if not w.positive:
        raise ValueError("perturb_generic needs positive weights")
    limit = chamber_slack(w)
    if bound is None or bound > limit:
        bound = limit
    for s in range(seed, seed + max_tries):
        deltas = perturbation(len(w), s, bound)
        cand = w.replace_weights(a - d for a, d in zip(w.weights, deltas))
        if accept is None or accept(cand):
            return cand
    raise RuntimeError("no acceptable perturbation after %d seeds" % max_tries)


def generic_predicate(w):
    """True when all subset sums over |I| >= 2 avoid 1 and are pairwise distinct."""
    n = len(w)
    sums = subset_sums(w.weights)
    seen = set()
    for mask in range(1, 1 << n):
        if mask & (mask - 1):
            s = sums[mask]
            if s == 1 or s in seen:
                return False
            seen.add(s)
    return True
