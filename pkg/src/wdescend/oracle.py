"""
Unweighted descendant invariants.

For the point target these are the Witten-Kontsevich numbers
<tau_{k_1} ... tau_{k_n}>_g, computed by two independent recursions:

* ``wk_point`` uses the Dijkgraaf-Verlinde-Verlinde (Virasoro) recursion;
* ``wk_kdv`` uses the string and dilaton equations plus Witten's KdV
  recursion for correlators with two tau_0 insertions.

Both are memoized on the sorted index tuple; the genus is determined by the
dimension constraint sum k_i = 3g - 3 + n.

A formal target is a finite graded ring with a user-supplied table of
unweighted descendants, loaded from the line-oriented document format
described in :func:`load_target`.
"""

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .core import format_rational, parse_rational

UNIT = "1"


class OracleIncomplete(LookupError):
    """A gated descendant is missing from a formal target's table."""


class TargetError(ValueError):
    """Malformed or inconsistent target model."""


def double_factorial(m):
    # (-1)!! = 1
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def genus_of(ks):
    """Genus forced by the dimension constraint, or None if there is none."""
    num = sum(ks) - len(ks) + 3
    if num < 0 or num % 3:
        return None
    return num // 3


def genus0_point(ks):
    """<tau_{k_1}...tau_{k_n}>_0 = (n-3)! / prod k_i! when sum k_i = n-3."""
    n = len(ks)
    if n < 3:
        raise ValueError("genus 0 needs at least three points")
    if any(k < 0 for k in ks) or sum(ks) != n - 3:
        return Fraction(0)
    out = factorial(n - 3)
    for k in ks:
        out //= factorial(k)
    return Fraction(out)


def _key(ks):
    return tuple(sorted(ks, reverse=True))


def _submultisets(ks):
    """Yield (A, B, multiplicity) over ordered splits of the positions of ks."""
    items = sorted(Counter(ks).items())

    def rec(i, a, b, mult):
        if i == len(items):
            yield tuple(a), tuple(b), mult
            return
        v, c = items[i]
        for j in range(c + 1):
            yield from rec(i + 1, a + [v] * j, b + [v] * (c - j), mult * comb(c, j))

    yield from rec(0, [], [], 1)


# --- scheme A: DVV ---------------------------------------------------------

_DVV_MEMO = {}


def _dvv(key):
    if key in _DVV_MEMO:
        return _DVV_MEMO[key]
    value = _dvv_compute(key)
    _DVV_MEMO[key] = value
    return value


def _dvv_compute(key):
    if not key or key[-1] < 0:
        return Fraction(0)
    g = genus_of(key)
    if g is None:
        return Fraction(0)
    if key == (0, 0, 0):
        return Fraction(1)
    if key == (1,):
        return Fraction(1, 24)
    top = key[0]
    if top == 0:
        return Fraction(0)
    k = top - 1
    rest = key[1:]
    total = Fraction(0)
    for j, d in enumerate(rest):
        if j and rest[j - 1] == d:
            continue
        mult = rest.count(d)
        coef = Fraction(double_factorial(2 * k + 2 * d + 1), double_factorial(2 * d - 1))
        new = list(rest)
        new[j] = d + k
        total += mult * coef * _dvv(_key(new))
    if k >= 1:
        for r in range(k):
            s = k - 1 - r
            c = Fraction(double_factorial(2 * r + 1) * double_factorial(2 * s + 1), 2)
            inner = _dvv(_key((r, s) + rest))
            for a, b, mult in _submultisets(rest):
                inner += mult * _dvv(_key((r,) + a)) * _dvv(_key((s,) + b))
            total += c * inner
    return total / double_factorial(2 * k + 3)


def wk_point(g, ks):
    """<tau_{k_1}...tau_{k_n}>_g for the point target (DVV recursion)."""
    ks = tuple(ks)
    if any(k < 0 for k in ks) or sum(ks) != 3 * g - 3 + len(ks):
        return Fraction(0)
    return _dvv(_key(ks))


def dvv_memo():
    """Snapshot of the DVV memo table: sorted index tuple -> value."""
    return dict(_DVV_MEMO)


# --- scheme B: string + dilaton + KdV -------------------------------------

_KDV_MEMO = {}


def _kdv(key):
    if key in _KDV_MEMO:
        return _KDV_MEMO[key]
    value = _kdv_compute(key)
    _KDV_MEMO[key] = value
    return value


def _lowered(ks, j):
    new = list(ks)
    new[j] -= 1
    return new


def _kdv_compute(key):
    if not key or key[-1] < 0:
        return Fraction(0)
    g = genus_of(key)
    if g is None:
        return Fraction(0)
    n = len(key)
    if key == (0, 0, 0):
        return Fraction(1)
    if key == (1,):
        return Fraction(1, 24)
    if key[-1] == 0:
        rest = key[:-1]
        return sum((_kdv(_key(_lowered(rest, j))) for j in range(len(rest))),
                   Fraction(0))
    if 1 in key:
        rest = list(key)
        rest.remove(1)
        return (2 * g - 2 + n - 1) * _kdv(_key(rest))
    # every index >= 2: solve Witten's KdV relation for <tau_m X>
    m, xs = key[0], list(key[1:])
    s1 = sum((_kdv(_key([m + 1] + _lowered(xs, j))) for j in range(len(xs))),
             Fraction(0))
    s2 = Fraction(0)
    for j in range(len(xs)):
        xj = _lowered(xs, j)
        for i in range(len(xj)):
            s2 += _kdv(_key([m + 2] + _lowered(xj, i)))
    r = Fraction(_kdv(_key([m + 1, 0, 0, 0, 0] + xs)), 4)
    for a, b, mult in _submultisets(xs):
        if not b:
            continue
        r += mult * (_kdv(_key((m + 1, 0) + a)) * _kdv(_key((0, 0, 0) + b))
                     + 2 * _kdv(_key((m + 1, 0, 0) + a)) * _kdv(_key((0, 0) + b)))
    return (r - (4 * m + 9) * s1 - (2 * m + 5) * s2) / (2 * m + 4)


def wk_kdv(g, ks):
    """Same numbers as :func:`wk_point`, by the KdV route."""
    ks = tuple(ks)
    if any(k < 0 for k in ks) or sum(ks) != 3 * g - 3 + len(ks):
        return Fraction(0)
    return _kdv(_key(ks))


def clear_caches():
    _DVV_MEMO.clear()
    _KDV_MEMO.clear()


# --- target models ---------------------------------------------------------

def descendant_key(genus, insertions):
    """Canonical key: genus plus the sorted multiset of (k, class id)."""
    return (genus, tuple(sorted((int(k), str(c)) for k, c in insertions)))


@dataclass
class TargetModel:
    kind: str = "point"
    dim: int = 0
    pairing: int = 0
    beta: int = 0
    classes: dict = field(default_factory=lambda: {UNIT: ("1", 0)})
    products: dict = field(default_factory=dict)
    table: dict = field(default_factory=dict)
    beta_integrals: dict = field(default_factory=dict)

    @property
    def is_point(self):
        return self.kind == "point"

    def degree(self, cid):
        try:
            return self.classes[cid][1]
        except KeyError:
            raise TargetError("unknown class id %r" % cid) from None

    def beta_integral(self, cid):
        """Integer pairing of a degree-one class with the curve class."""
        if self.is_point:
            return 0
        if cid not in self.beta_integrals:
            raise TargetError("no beta pairing supplied for class %r" % cid)
        return self.beta_integrals[cid]

    def product(self, a, b):
        """Structure constants of a*b as {class id: coefficient}."""
        self.degree(a)
        self.degree(b)
        if a == UNIT:
            return {b: Fraction(1)}
        if b == UNIT:
            return {a: Fraction(1)}
        if (a, b) in self.products:
            return dict(self.products[(a, b)])
        raise TargetError("product %s*%s not specified" % (a, b))

    def dimension_gate(self, genus, insertions):
        n = len(insertions)
        lhs = sum(k + self.degree(c) for k, c in insertions)
        return lhs == (1 - genus) * self.dim + self.pairing + 3 * genus - 3 + n


POINT = TargetModel()


def point_target():
    return TargetModel()


def ring_product(model, ids):
    """Expand prod_{i} gamma_i as a rational combination of basis classes."""
    ids = list(ids)
    for cid in ids:
        model.degree(cid)
    combo = {UNIT: Fraction(1)}
    for cid in ids:
        out = {}
        for base, coef in combo.items():
            for res, c in model.product(base, cid).items():
                out[res] = out.get(res, 0) + coef * c
        combo = {k: v for k, v in out.items() if v}
    return combo


def unweighted_lookup(model, genus, insertions):
    """<prod tau_{k_i}(gamma_i)>_g for basis classes gamma_i."""
    insertions = [(int(k), str(c)) for k, c in insertions]
    for _, c in insertions:
        model.degree(c)
    if any(k < 0 for k, _ in insertions):
        return Fraction(0)
    if model.is_point:
        if any(c != UNIT for _, c in insertions):
            raise TargetError("point target only has the unit class")
        return wk_point(genus, [k for k, _ in insertions])
    if not model.dimension_gate(genus, insertions):
        return Fraction(0)
    key = descendant_key(genus, insertions)
    if key not in model.table:
        raise OracleIncomplete("no table entry for %s" % format_key(key))
    return model.table[key]


def format_key(key):
    g, ins = key
    return "g=%d ; %s" % (g, " ".join("(%d,%s)" % (k, c) for k, c in ins))


# --- document format ------------------------------------------------------

_SECTIONS = ("target", "classes", "products", "descendants")
_TERM = re.compile(r"\s*([+-])?\s*([0-9]+(?:/[0-9]+)?)\s*\*\s*([A-Za-z0-9_]+)\s*")
_INSERTION = re.compile(r"\(\s*(-?[0-9]+)\s*,\s*([A-Za-z0-9_]+)\s*\)")


def _parse_combination(text, lineno):
    text = text.strip()
    if text == "0":
        return {}
    out, pos = {}, 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or (pos and not m.group(1)):
            raise TargetError("line %d: bad linear combination %r" % (lineno, text))
        coef = parse_rational(m.group(2))
        if m.group(1) == "-":
            coef = -coef
        out[m.group(3)] = out.get(m.group(3), 0) + coef
        pos = m.end()
    return {k: v for k, v in out.items() if v}


def load_target(source):
    """Build a :class:`TargetModel` from the text document ``source``.

    Sections, in order::

        [target]       kind=point|formal, dim=<int>, pairing=<int>, beta=<int>
        [classes]      <id> <name> <degree> [<integral over beta>]
        [products]     <idA>*<idB> = <coef>*<id> + ...   (or "= 0")
        [descendants]  g=<int> ; (<k>,<id>) ... ; <rational>

    ``#`` starts a comment.  Class id ``1`` is the unit.
    """
    model = TargetModel(classes={})
    section, seen = None, []
    for lineno, raw in enumerate(source.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in _SECTIONS:
                raise TargetError("line %d: unknown section %r" % (lineno, name))
            if seen and _SECTIONS.index(name) <= _SECTIONS.index(seen[-1]):
                raise TargetError("line %d: section %r out of order" % (lineno, name))
            seen.append(name)
            section = name
            continue
        if section is None:
            raise TargetError("line %d: content before any section" % lineno)
        try:
            if section == "target":
                _target_line(model, line, lineno)
            elif section == "classes":
                _class_line(model, line, lineno)
            elif section == "products":
                _product_line(model, line, lineno)
            else:
                _descendant_line(model, line, lineno)
        except (ValueError, IndexError) as exc:
            if isinstance(exc, TargetError):
                raise
            raise TargetError("line %d: %s" % (lineno, exc)) from exc
    if "target" not in seen:
        raise TargetError("missing [target] section")
    if not model.classes:
        model.classes[UNIT] = ("1", 0)
    if model.classes.get(UNIT, (None, 0))[1] != 0 or UNIT not in model.classes:
        raise TargetError("unit class 1 must exist with degree 0")
    if model.is_point:
        if len(model.classes) != 1 or model.products or model.table:
            raise TargetError("point target takes no classes, products or table")
        model.dim = model.pairing = 0
        return model
    _check_products(model)
    for key in model.table:
        for _, c in key[1]:
            model.degree(c)
    return model


def _target_line(model, line, lineno):
    name, sep, value = line.partition("=")
    if not sep:
        raise TargetError("line %d: expected key=value" % lineno)
    name, value = name.strip(), value.strip()
    if name == "kind":
        if value not in ("point", "formal"):
            raise TargetError("line %d: kind must be point or formal" % lineno)
        model.kind = value
    elif name in ("dim", "pairing", "beta"):
        setattr(model, name, int(value))
    else:
        raise TargetError("line %d: unknown target key %r" % (lineno, name))


def _class_line(model, line, lineno):
    parts = line.split()
    if len(parts) not in (3, 4):
        raise TargetError("line %d: expected '<id> <name> <degree> [<beta integral>]'" % lineno)
    cid, name, degree = parts[0], parts[1], int(parts[2])
    if cid in model.classes:
        raise TargetError("line %d: duplicate class id %r" % (lineno, cid))
    if degree < 0:
        raise TargetError("line %d: negative degree" % lineno)
    if cid == UNIT and degree != 0:
        raise TargetError("line %d: the unit class has degree 0" % lineno)
    model.classes[cid] = (name, degree)
    if len(parts) == 4:
        model.beta_integrals[cid] = int(parts[3])


def _product_line(model, line, lineno):
    lhs, sep, rhs = line.partition("=")
    if not sep:
        raise TargetError("line %d: expected '<a>*<b> = ...'" % lineno)
    a, star, b = lhs.partition("*")
    if not star:
        raise TargetError("line %d: expected '<a>*<b>'" % lineno)
    a, b = a.strip(), b.strip()
    combo = _parse_combination(rhs, lineno)
    for cid in (a, b, *combo):
        if cid not in model.classes:
            raise TargetError("line %d: unknown class id %r" % (lineno, cid))
    for key in ((a, b), (b, a)):
        if key in model.products and model.products[key] != combo:
            raise TargetError("line %d: conflicting product %s*%s" % (lineno, a, b))
    model.products[(a, b)] = combo
    model.products[(b, a)] = combo


def _descendant_line(model, line, lineno):
    parts = [p.strip() for p in line.split(";")]
    if len(parts) != 3 or not parts[0].startswith("g="):
        raise TargetError("line %d: expected 'g=<int> ; (k,id) ... ; <rational>'" % lineno)
    genus = int(parts[0][2:])
    insertions = [(int(k), c) for k, c in _INSERTION.findall(parts[1])]
    if _INSERTION.sub("", parts[1]).strip():
        raise TargetError("line %d: bad insertion list %r" % (lineno, parts[1]))
    value = parse_rational(parts[2])
    key = descendant_key(genus, insertions)
    if key in model.table and model.table[key] != value:
        raise TargetError("line %d: conflicting entry for %s" % (lineno, format_key(key)))
    model.table[key] = value


def _check_products(model):
    for (a, b), combo in model.products.items():
        want = model.degree(a) + model.degree(b)
        for cid in combo:
            if model.degree(cid) != want:
                raise TargetError("product %s*%s has a term of the wrong degree" % (a, b))
        if UNIT in (a, b):
            other = b if a == UNIT else a
            if combo != {other: 1}:
                raise TargetError("the unit must act as identity")


def dump_target(model):
    """Inverse of :func:`load_target` (canonical line order)."""
    lines = ["[target]", "kind=%s" % model.kind]
    if model.is_point:
        return "\n".join(lines) + "\n"
    lines += ["dim=%d" % model.dim, "pairing=%d" % model.pairing,
              "beta=%d" % model.beta, "[classes]"]
    for cid, (name, deg) in model.classes.items():
        extra = " %d" % model.beta_integrals[cid] if cid in model.beta_integrals else ""
        lines.append("%s %s %d%s" % (cid, name, deg, extra))
    lines.append("[products]")
    done = set()
    for (a, b), combo in model.products.items():
        if (b, a) in done:
            continue
        done.add((a, b))
        rhs = " + ".join("%s*%s" % (format_rational(c), k) for k, c in sorted(combo.items())) or "0"
        lines.append("%s*%s = %s" % (a, b, rhs.replace("+ -", "- ")))
    lines.append("[descendants]")
    for key, v in sorted(model.table.items()):
        lines.append("%s ; %s" % (format_key(key), format_rational(v)))
    return "\n".join(lines) + "\n"
