"""
Simplicial complexes on {1..n} stored as sets of subset bitmasks.

Vertex i (1-based) is bit i-1.  The empty set is never stored as a face.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import feasibility, fourier_motzkin
from .weights import MAX_VERTICES, WeightData, subset_sums


class CapacityError(ValueError):
    pass


def mask_of(vertices):
    """Bitmask of an iterable of 1-based vertices."""
    m = 0
    for v in vertices:
        if v < 1:
            raise ValueError("vertices are 1-based")
        m |= 1 << (v - 1)
    return m


def vertices_of(mask):
    """Sorted 1-based vertices of a bitmask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask):
    return bin(mask).count("1")


def format_face(mask, n):
    vs = vertices_of(mask)
    if n <= 9:
        return "".join(str(v) for v in vs)
    return "[" + ",".join(str(v) for v in vs) + "]"


class SimplicialComplex:
    """Downward-closed family of nonempty subsets of {1..n} containing all vertices."""

    __slots__ = ("n", "faces", "_bits")

    def __init__(self, n, faces, check=True):
        if n > MAX_VERTICES:
            raise CapacityError("at most %d vertices supported" % MAX_VERTICES)
        faces = frozenset(faces)
        full = (1 << n) - 1
        bits = 0
        for f in faces:
            if f <= 0 or f & ~full:
                raise ValueError("face %r is not a nonempty subset of {1..%d}" % (f, n))
            bits |= 1 << f
        self.n = n
        self.faces = faces
        self._bits = bits
        if check:
            self._check()

    def _check(self):
        for i in range(self.n):
            if not self.contains(1 << i):
                raise ValueError("vertex %d is not a face" % (i + 1))
        for f in self.faces:
            rest = f
            while rest:
                low = rest & -rest
                rest ^= low
                sub = f ^ low
                if sub and not self.contains(sub):
                    raise ValueError("not downward closed: %s lacks %s"
                                     % (vertices_of(f), vertices_of(sub)))

    # constructors -------------------------------------------------------

    @classmethod
    def from_maximal(cls, n, maximal):
        """Complex generated by the given faces (plus all vertices)."""
        faces = set(1 << i for i in range(n))
        for m in maximal:
            sub = m
            while sub:
                faces.add(sub)
                sub = (sub - 1) & m
        return cls(n, faces)

    @classmethod
    def parse(cls, text, n=None):
        """Parse ``"1,2,345"`` or ``"[1,2],[10,11]"`` (maximal faces)."""
        text = text.strip()
        groups = []
        if "[" in text:
            for chunk in text.split("]"):
                chunk = chunk.strip().lstrip(",").strip()
                if not chunk:
                    continue
                if not chunk.startswith("["):
                    raise ValueError("bad face list %r" % text)
                groups.append([int(v) for v in chunk[1:].split(",") if v.strip()])
        else:
            for chunk in text.split(","):
                chunk = chunk.strip()
                if not chunk or not chunk.isdigit():
                    raise ValueError("bad face %r" % chunk)
                groups.append([int(c) for c in chunk])
        top = max((max(g) for g in groups if g), default=0)
        if n is None:
            n = top
        elif top > n:
            raise ValueError("vertex %d exceeds n=%d" % (top, n))
        return cls.from_maximal(n, [mask_of(g) for g in groups])

    # queries ------------------------------------------------------------

    def contains(self, mask):
        return 0 < mask < (1 << self.n) and bool((self._bits >> mask) & 1)

    __contains__ = contains

    def __len__(self):
        return len(self.faces)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.n == other.n and self._bits == other._bits

    def __hash__(self):
        return hash((self.n, self._bits))

    def maximal_faces(self):
        out = []
        for f in self.faces:
            maximal = True
            for i in range(self.n):
                bit = 1 << i
                if not f & bit and self.contains(f | bit):
                    maximal = False
                    break
            if maximal:
                out.append(f)
        return sorted(out, key=lambda m: (vertices_of(m)))

    def minimal_nonfaces(self):
        """Inclusion-minimal subsets that are not faces."""
        out = []
        for mask in range(1, 1 << self.n):
            if self.contains(mask):
                continue
            rest, ok = mask, True
            while rest:
                low = rest & -rest
                rest ^= low
                sub = mask ^ low
                if sub and not self.contains(sub):
                    ok = False
                    break
            if ok:
                out.append(mask)
        return out

    def restrict(self, mask):
        """Faces contained in the vertex set ``mask`` (vertices keep their labels)."""
        return frozenset(f for f in self.faces if not f & ~mask)

    def with_face(self, mask):
        return SimplicialComplex(self.n, self.faces | {mask})

    def dimension(self):
        return max((popcount(f) for f in self.faces), default=0) - 1

    def __str__(self):
        return ",".join(format_face(f, self.n) for f in self.maximal_faces())

    def __repr__(self):
        return "SimplicialComplex(%d, %r)" % (self.n, str(self))


# named complexes --------------------------------------------------------

def build_complex(w):
    """Faces are the subsets I with sum_{i in I} a_i <= 1."""
    if isinstance(w, WeightData):
        weights = w.weights
    else:
        weights = tuple(Fraction(a) for a in w)
    n = len(weights)
    if n > MAX_VERTICES:
        raise CapacityError("at most %d vertices supported" % MAX_VERTICES)
    sums = subset_sums(weights)
    faces = [mask for mask in range(1, 1 << n) if sums[mask] <= 1]
    return SimplicialComplex(n, faces)


def skeleton(n, r):
    """All subsets with at most r+1 elements."""
    if not 0 <= r <= n - 1:
        raise ValueError("need 0 <= r <= n-1")
    return SimplicialComplex(n, [m for m in range(1, 1 << n) if popcount(m) <= r + 1])


def discrete(n):
    return skeleton(n, 0)


def full_simplex(n):
    return skeleton(n, n - 1)


def cone(c):
    """Cone with apex n+1."""
    if c.n + 1 > MAX_VERTICES:
        raise CapacityError("cone would exceed %d vertices" % MAX_VERTICES)
    apex = 1 << c.n
    faces = set(c.faces)
    faces.add(apex)
    faces.update(f | apex for f in c.faces)
    return SimplicialComplex(c.n + 1, faces)


def is_cone(c):
    """True when c is the cone over its first n-1 vertices with apex n."""
    if c.n == 0:
        return False
    apex = 1 << (c.n - 1)
    base = SimplicialComplex(c.n - 1, c.restrict(apex - 1), check=False)
    return cone(base) == c


def cone_base(c):
    if not is_cone(c):
        raise ValueError("complex is not a cone over its first %d vertices" % (c.n - 1))
    return SimplicialComplex(c.n - 1, c.restrict((1 << (c.n - 1)) - 1))


def contraction_map(n, sigma):
    """0-based old index -> 0-based new index for contracting ``sigma``.

    The merged vertex sits at the position of min(sigma); other vertices keep
    their relative order.
    """
    low = (sigma & -sigma).bit_length() - 1
    mapping = [None] * n
    j = 0
    for i in range(n):
        if i == low:
            merged = j
            j += 1
        elif not sigma >> i & 1:
            mapping[i] = j
            j += 1
    for i in range(n):
        if sigma >> i & 1:
            mapping[i] = merged
    return mapping


def _image(mask, mapping):
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << mapping[i]
        mask >>= 1
        i += 1
    return out


def contract(c, sigma):
    """Replace the vertices of the face ``sigma`` by one vertex.

    Returns ``(complex, mapping)`` where ``mapping[i]`` is the new 0-based
    index of old vertex i.  Faces disjoint from sigma are kept; faces
    containing sigma lose sigma and gain the merged vertex.
    """
    if not c.contains(sigma):
        raise ValueError("%s is not a face" % vertices_of(sigma))
    mapping = contraction_map(c.n, sigma)
    m = c.n - popcount(sigma) + 1
    faces = set()
    for f in c.faces:
        if not f & sigma or f & sigma == sigma:
            faces.add(_image(f, mapping))
    return SimplicialComplex(m, faces), mapping


# partitions -------------------------------------------------------------

@dataclass(frozen=True)
class SetPartition:
    n: int
    blocks: tuple  # bitmasks, sorted by smallest element

    @property
    def dim(self):
        return self.n - len(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __str__(self):
        return "".join("{" + ",".join(map(str, vertices_of(b))) + "}" for b in self.blocks)


def admissible_partitions(c):
    """Partitions of {1..n} into faces of ``c``, in canonical order.

    The block holding the smallest unassigned vertex is chosen among faces in
    increasing bitmask order; inadmissible blocks are never built.
    """
    n = c.n
    by_low = [[] for _ in range(n)]
    for f in sorted(c.faces):
        by_low[(f & -f).bit_length() - 1].append(f)
    full = (1 << n) - 1
    blocks = []

    def rec(remaining):
        if not remaining:
            yield SetPartition(n, tuple(blocks))
            return
        u = (remaining & -remaining).bit_length() - 1
        for f in by_low[u]:
            if f & ~remaining:
                continue
            blocks.append(f)
            yield from rec(remaining & ~f)
            blocks.pop()

    if n == 0:
        yield SetPartition(0, ())
        return
    yield from rec(full)


def all_partitions(n):
    """Every set partition of {1..n} via restricted growth strings."""
    if n == 0:
        yield SetPartition(0, ())
        return
    rgs = [0] * n

    def rec(i, top):
        if i == n:
            blocks = [0] * (top + 1)
            for v, b in enumerate(rgs):
                blocks[b] |= 1 << v
            yield SetPartition(n, tuple(blocks))
            return
        for b in range(top + 2):
            rgs[i] = b
            yield from rec(i + 1, max(top, b))

    yield from rec(1, 0)


# realizability ----------------------------------------------------------

FM_MAX_VERTICES = 5


def realization_system(c, positive_only=True, zero_vertices=0, domain=None):
    """Linear system whose solutions are weights with ``build_complex`` = c."""
    n = c.n
    rows = []

    def row(mask, sign, bound, strict):
        coeffs = [0] * n
        for i in range(n):
            if mask >> i & 1:
                coeffs[i] = sign
        rows.append((coeffs, bound, strict))

    for f in c.maximal_faces():
        row(f, 1, 1, False)
    for f in c.minimal_nonfaces():
        row(f, -1, -1, True)  # sum > 1
    for i in range(n):
        bit = 1 << i
        if zero_vertices & bit:
            row(bit, 1, 0, False)
            row(bit, -1, 0, False)
        else:
            row(bit, 1, 1, False)
            row(bit, -1, 0, positive_only)
    if domain is not None:
        g, beta = domain
        full = (1 << n) - 1
        if (g, beta) == (0, 0):
            row(full, -1, -2, True)
        elif (g, beta) == (1, 0):
            row(full, -1, 0, True)
    return rows


def realize(c, positive_only=True, zero_vertices=0, domain=None,
            max_nonfaces=512, method="auto", limit=20000):
    """Rational weights whose complex is ``c``, or None if none exist.

    ``domain`` is an optional ``(genus, beta)`` pair adding the domain
    inequality as an extra conjunct.  ``method`` is ``"lp"`` (exact simplex),
    ``"fm"`` (Fourier-Motzkin, which can blow up beyond five vertices) or
    ``"auto"`` (the faster of the two for the size at hand).
    """
    zero_faces = [m for m in range(1, 1 << c.n) if not m & ~zero_vertices]
    if zero_vertices and not all(c.contains(m) for m in zero_faces):
        return None
    nonfaces = c.minimal_nonfaces()
    if len(nonfaces) > max_nonfaces:
        raise CapacityError("%d minimal non-faces exceed the limit %d"
                            % (len(nonfaces), max_nonfaces))
    rows = realization_system(c, positive_only, zero_vertices, domain)
    if method == "auto":
        method = "fm" if c.n <= FM_MAX_VERTICES else "lp"
    if method == "lp":
        x = feasibility.solve(rows, c.n)
    elif method == "fm":
        try:
            x = fourier_motzkin.solve(rows, c.n, limit=limit)
        except fourier_motzkin.CapacityError as exc:
            raise CapacityError(str(exc)) from exc
    else:
        raise ValueError("method must be 'lp' or 'fm'")
    if x is None:
        return None
    g, beta = domain if domain is not None else (2, 0)
    w = WeightData(tuple(x), g, beta)
    assert build_complex(w) == c
    return w
