"""
Exact rationals and multivariate polynomials over Q.

Rationals are plain :class:`fractions.Fraction` values; this module only adds
parsing/printing in the ``p/q`` text form.  Polynomials are sparse maps from
exponent vectors to nonzero coefficients.
"""

from fractions import Fraction
from math import factorial

Rational = Fraction


def parse_rational(text):
    """Parse ``"p/q"``, ``"-p/q"`` or ``"p"`` into a Fraction."""
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError("bad rational literal %r" % text) from exc
    if "." in text or "e" in text.lower():
        raise ValueError("bad rational literal %r (use p/q)" % text)
    return value


def format_rational(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def _grlex_key(exps):
    # descending total degree, then descending lex
    return (-sum(exps), tuple(-e for e in exps))


class MultiPoly:
    """Polynomial in variables t1..tn with rational coefficients.

    Instances are immutable; all arithmetic returns new polynomials in
    canonical form (no zero coefficients stored).
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars, terms=None):
        if nvars < 0:
            raise ValueError("negative variable count")
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError("exponent vector %r has wrong length" % (exps,))
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent in %r" % (exps,))
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self._terms = clean
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars, i):
        """The variable t_{i+1} (``i`` is 0-based)."""
        if not 0 <= i < nvars:
            raise IndexError("variable index %d out of range" % i)
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def linear(cls, coeffs):
        """Sum of c_i * t_i for the given coefficient list."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            exps = [0] * n
            exps[i] = 1
            terms[tuple(exps)] = c
        return cls(n, terms)

    # access -------------------------------------------------------------

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        """Terms in graded-lex order."""
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def coefficient(self, exps):
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError("exponent vector %r has wrong length" % (exps,))
        return self._terms.get(exps, Fraction(0))

    def is_zero(self):
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # ring operations ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError(
                    "variable count mismatch: %d vs %d" % (self.nvars, other.nvars))
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.nvars, other)
        raise TypeError("cannot combine MultiPoly with %r" % type(other))

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self._terms)
        for exps, c in other._terms.items():
            terms[exps] = terms.get(exps, 0) + c
        return MultiPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, m):
        if not isinstance(m, int) or m < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while m:
            if m & 1:
                result = result * base
            base = base * base
            m >>= 1
        return result

    def scale(self, c):
        c = Fraction(c)
        return MultiPoly(self.nvars, {e: c * v for e, v in self._terms.items()})

    # calculus -----------------------------------------------------------

    def derivative(self, var):
        if not 0 <= var < self.nvars:
            raise IndexError("variable index %d out of range" % var)
        terms = {}
        for exps, c in self._terms.items():
            j = exps[var]
            if j:
                e = list(exps)
                e[var] = j - 1
                terms[tuple(e)] = c * j
        return MultiPoly(self.nvars, terms)

    def antiderivative(self, var, times=1):
        """Apply ``t^j -> t^(j+1)/(j+1)`` in variable ``var`` ``times`` times.

        Constants of integration are zero, so the result is homogeneous in
        ``var`` whenever the input is.
        """
        if not 0 <= var < self.nvars:
            raise IndexError("variable index %d out of range" % var)
        if times < 0:
            raise ValueError("times must be nonnegative")
        terms = {}
        for exps, c in self._terms.items():
            j = exps[var]
            e = list(exps)
            e[var] = j + times
            # j! / (j+times)!
            terms[tuple(e)] = c * Fraction(factorial(j), factorial(j + times))
        return MultiPoly(self.nvars, terms)

    def substitute_sum(self, var, replacement):
        """Replace t_var by the sum of t_i, i in ``replacement``.

        The result keeps the same variable count; t_var no longer occurs.
        """
        replacement = sorted(set(replacement))
        if var in replacement:
            raise ValueError("variable %d occurs in its own replacement" % var)
        for i in replacement + [var]:
            if not 0 <= i < self.nvars:
                raise IndexError("variable index %d out of range" % i)
        s = MultiPoly(self.nvars)
        for i in replacement:
            s = s + MultiPoly.var(self.nvars, i)
        powers = {}
        result = MultiPoly(self.nvars)
        for exps, c in self._terms.items():
            j = exps[var]
            if j not in powers:
                powers[j] = s ** j
            e = list(exps)
            e[var] = 0
            result = result + powers[j] * MultiPoly(self.nvars, {tuple(e): c})
        return result

    def reindex(self, nvars, mapping):
        """Move variable i to position mapping[i] in a ring of ``nvars`` variables."""
        terms = {}
        for exps, c in self._terms.items():
            e = [0] * nvars
            for i, k in enumerate(exps):
                if k:
                    e[mapping[i]] += k
            e = tuple(e)
            terms[e] = terms.get(e, 0) + c
        return MultiPoly(nvars, terms)

    def drop_variables(self, nvars):
        """Restrict to the first ``nvars`` variables; the rest must not occur."""
        terms = {}
        for exps, c in self._terms.items():
            if any(exps[nvars:]):
                raise ValueError("variable t%d still occurs" % (nvars + 1))
            terms[exps[:nvars]] = c
        return MultiPoly(nvars, terms)

    # printing -----------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for exps, c in self.items():
            mono = "*".join(
                "t%d" % (i + 1) if e == 1 else "t%d^%d" % (i + 1, e)
                for i, e in enumerate(exps) if e)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = format_rational(a) + "*" + mono
            out.append((sign, body))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            s += " %s %s" % (sign, body)
        return s

    def __repr__(self):
        return "MultiPoly(%d, %r)" % (self.nvars, str(self))


def poly_add(p, q):
    return p + q


def poly_mul(p, q):
    return p * q


def poly_scale(p, c):
    return p.scale(c)


def coefficient(p, exps):
    return p.coefficient(exps)


def homogeneous_antiderivative(p, var, times):
    return p.antiderivative(var, times)


def substitute_sum(p, var, replacement):
    return p.substitute_sum(var, replacement)
