"""Monomials, sparse homogeneous polynomials and Euler-bundle sections.

Monomials are plain exponent tuples, ordered graded-lexicographically with
x0 > x1 > ... (larger tuples first within a degree).  Polynomials are
dictionaries monomial -> Fraction with no stored zeros; dense coefficient
vectors are materialized only when a matrix column is needed.

The deformation index set jd(n, d) collects the degree-d monomials in n+2
variables with every exponent at most d-2, i.e. the monomials that survive
after normalizing away the torus and linear actions on the Fermat form.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb

from .errors import DimensionMismatch
from .exact import Subspace, frac, ZERO


# ---------------------------------------------------------------------------
# monomials (exponent tuples)

def mono_degree(m) -> int:
    return sum(m)


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def order_key(m):
    """Sort key for the canonical order: graded lex, descending."""
    return (-mono_degree(m), tuple(-e for e in m))


def mono_str(m) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append("x%d" % i)
        elif e > 1:
            parts.append("x%d^%d" % (i, e))
    return "*".join(parts) if parts else "1"


_FACTOR_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def mono_parse(text: str, nvars: int):
    exps = [0] * nvars
    if text == "1":
        return tuple(exps)
    for factor in text.split("*"):
        mt = _FACTOR_RE.match(factor)
        if not mt:
            raise ValueError("bad monomial factor %r" % factor)
        i = int(mt.group(1))
        if i >= nvars:
            raise ValueError("variable x%d out of range for %d variables" % (i, nvars))
        exps[i] += int(mt.group(2)) if mt.group(2) else 1
    return tuple(exps)


def _bounded_compositions(total, parts, cap):
    if parts == 1:
        if total <= cap:
            yield (total,)
        return
    for e in range(min(total, cap), -1, -1):
        for rest in _bounded_compositions(total - e, parts - 1, cap):
            yield (e,) + rest


class MonomialSet:
    """An ordered set of same-degree monomials with positional lookup."""

    def __init__(self, nvars: int, members):
        self.nvars = nvars
        self.members = tuple(sorted(members, key=order_key))
        self.index = {m: i for i, m in enumerate(self.members)}
        if len(self.index) != len(self.members):
            raise ValueError("duplicate monomials")
        degs = {mono_degree(m) for m in self.members}
        if len(degs) > 1:
            raise ValueError("mixed degrees in monomial set")
        self.degree = degs.pop() if degs else None

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, m):
        return m in self.index

    def position(self, m) -> int:
        return self.index[m]


def all_monomials(nvars: int, degree: int) -> MonomialSet:
    return MonomialSet(nvars, _bounded_compositions(degree, nvars, degree))


def gen_jd(n: int, d: int) -> MonomialSet:
    """Degree-d monomials in n+2 variables with all exponents <= d-2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if d < 3:
        raise ValueError("degree must be >= 3")
    return MonomialSet(n + 2, _bounded_compositions(d, n + 2, d - 2))


def jd_size_formula(n: int, d: int) -> int:
    """Closed count for gen_jd: full degree-d count minus the (n+2)^2
    monomials divisible by some x_i^(d-1)."""
    return comb(d + n + 1, n + 1) - (n + 2) ** 2


# ---------------------------------------------------------------------------
# homogeneous polynomials

class HomogPoly:
    """Sparse homogeneous polynomial.  Immutable in spirit: operations
    return new objects.  The zero polynomial keeps an explicit degree tag so
    section components stay degree-checked."""

    __slots__ = ("nvars", "degree", "terms")

    def __init__(self, nvars: int, degree: int, terms=None):
        self.nvars = nvars
        self.degree = degree
        clean = {}
        for m, c in (terms or {}).items():
            c = frac(c)
            if c == 0:
                continue
            if len(m) != nvars or mono_degree(m) != degree:
                raise ValueError("term %s does not have degree %d in %d variables"
                                 % (mono_str(m), degree, nvars))
            clean[tuple(m)] = c
        self.terms = clean

    @classmethod
    def zero(cls, nvars: int, degree: int) -> "HomogPoly":
        return cls(nvars, degree, {})

    @classmethod
    def monomial(cls, nvars: int, exps, coeff=1) -> "HomogPoly":
        exps = tuple(exps)
        return cls(nvars, mono_degree(exps), {exps: coeff})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "HomogPoly":
        exps = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, 1, {exps: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, HomogPoly) and self.nvars == other.nvars
                and self.degree == other.degree and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, self.degree, frozenset(self.terms.items())))

    def _check_compatible(self, other):
        if self.nvars != other.nvars or self.degree != other.degree:
            raise DimensionMismatch("cannot combine degree %d and %d polynomials"
                                    % (self.degree, other.degree))

    def __add__(self, other):
        self._check_compatible(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, ZERO) + c
        return HomogPoly(self.nvars, self.degree, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return HomogPoly(self.nvars, self.degree, {m: -c for m, c in self.terms.items()})

    def scale(self, c) -> "HomogPoly":
        c = frac(c)
        if c == 0:
            return HomogPoly.zero(self.nvars, self.degree)
        return HomogPoly(self.nvars, self.degree, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if self.nvars != other.nvars:
            raise DimensionMismatch("variable counts differ")
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                terms[m] = terms.get(m, ZERO) + c1 * c2
        return HomogPoly(self.nvars, self.degree + other.degree, terms)

    __rmul__ = __mul__

    def partial(self, i: int) -> "HomogPoly":
        """Formal partial derivative with respect to x_i."""
        if i >= self.nvars:
            raise ValueError("variable index out of range")
        deg = max(self.degree - 1, 0)
        terms = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                dm = m[:i] + (e - 1,) + m[i + 1:]
                terms[dm] = terms.get(dm, ZERO) + c * e
        return HomogPoly(self.nvars, deg, terms)

    def evaluate(self, coords):
        if len(coords) != self.nvars:
            raise DimensionMismatch("point has %d coordinates" % len(coords))
        total = ZERO
        for m, c in self.terms.items():
            v = c
            for x, e in zip(coords, m):
                if e:
                    v = v * frac(x) ** e
            total += v
        return total

    def coeffs_on(self, mset: MonomialSet, strict: bool = True):
        """Coefficient vector against an ordered monomial set."""
        vec = [ZERO] * len(mset)
        for m, c in self.terms.items():
            pos = mset.index.get(m)
            if pos is None:
                if strict:
                    raise ValueError("monomial %s not in the index set" % mono_str(m))
                continue
            vec[pos] = c
        return vec

    def support_in(self, mset: MonomialSet) -> bool:
        return all(m in mset.index for m in self.terms)

    def text(self) -> str:
        """Canonical text form, e.g. 3/2*x0^4*x1*x2 (terms in canonical order)."""
        if not self.terms:
            return "0"
        out = []
        for m in sorted(self.terms, key=order_key):
            c = self.terms[m]
            mono = mono_str(m)
            if mono == "1":
                piece = _coeff_str(c)
            elif c == 1:
                piece = mono
            elif c == -1:
                piece = "-" + mono
            else:
                piece = _coeff_str(c) + "*" + mono
            if out and not piece.startswith("-"):
                out.append("+")
            out.append(piece)
        return "".join(out)

    def __repr__(self):
        return "HomogPoly(%s)" % self.text()


def _coeff_str(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return "%d/%d" % (c.numerator, c.denominator)


_TERM_SPLIT_RE = re.compile(r"(?=[+-])")
_COEFF_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def parse_poly(text: str, nvars: int, degree: int | None = None) -> HomogPoly:
    """Parse the canonical text form produced by HomogPoly.text()."""
    text = text.strip().replace(" ", "")
    if not text:
        raise ValueError("empty polynomial text")
    if text == "0":
        if degree is None:
            raise ValueError("zero polynomial needs an explicit degree")
        return HomogPoly.zero(nvars, degree)
    terms = {}
    for piece in _TERM_SPLIT_RE.split(text):
        if not piece or piece in "+-":
            continue
        sign = 1
        if piece[0] == "+":
            piece = piece[1:]
        elif piece[0] == "-":
            sign = -1
            piece = piece[1:]
        coeff = Fraction(sign)
        factors = piece.split("*")
        if _COEFF_RE.match(factors[0]):
            coeff *= Fraction(factors[0])
            factors = factors[1:]
        m = mono_parse("*".join(factors) if factors else "1", nvars)
        terms[m] = terms.get(m, ZERO) + coeff
    degs = {mono_degree(m) for m in terms}
    if len(degs) > 1:
        raise ValueError("non-homogeneous text")
    deg = degs.pop() if degs else degree
    if degree is not None and deg != degree:
        raise ValueError("declared degree %d does not match text" % degree)
    return HomogPoly(nvars, deg, terms)


# ---------------------------------------------------------------------------
# Euler-bundle sections

class EulerSection:
    """A tuple of n+2 same-degree forms: the coefficients of d/dx_i in a
    section of the twisted Euler bundle O(1)^(n+2)."""

    __slots__ = ("components",)

    def __init__(self, components):
        comps = tuple(components)
        if not comps:
            raise ValueError("no components")
        nv, deg = comps[0].nvars, comps[0].degree
        for c in comps:
            if c.nvars != nv or c.degree != deg:
                raise DimensionMismatch("components must share degree and variable count")
        if len(comps) != nv:
            raise DimensionMismatch("expected %d components, got %d" % (nv, len(comps)))
        self.components = comps

    @classmethod
    def zero(cls, nvars: int, degree: int) -> "EulerSection":
        return cls([HomogPoly.zero(nvars, degree)] * nvars)

    @classmethod
    def single(cls, nvars: int, comp: int, poly: HomogPoly) -> "EulerSection":
        comps = [HomogPoly.zero(nvars, poly.degree) for _ in range(nvars)]
        comps[comp] = poly
        return cls(comps)

    @property
    def nvars(self) -> int:
        return self.components[0].nvars

    @property
    def degree(self) -> int:
        return self.components[0].degree

    def __add__(self, other):
        return EulerSection([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        return EulerSection([a - b for a, b in zip(self.components, other.components)])

    def scale(self, c) -> "EulerSection":
        return EulerSection([p.scale(c) for p in self.components])

    def __eq__(self, other):
        return isinstance(other, EulerSection) and self.components == other.components

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def evaluate(self, coords):
        return [c.evaluate(coords) for c in self.components]

    def coeff_vector(self, mset: MonomialSet):
        """Concatenated component coefficients (component-major)."""
        vec = []
        for c in self.components:
            vec.extend(c.coeffs_on(mset))
        return vec

    def canonical_key(self) -> str:
        return ";".join(c.text() for c in self.components)

    def __repr__(self):
        return "EulerSection(%s)" % self.canonical_key()


def euler_alpha(n: int) -> EulerSection:
    """The Euler field: x_i against d/dx_i."""
    nv = n + 2
    return EulerSection([HomogPoly.variable(nv, i) for i in range(nv)])


def span_of(monomials, ambient: MonomialSet) -> Subspace:
    """Span of a monomial subset inside the full degree space, as unit
    coordinate vectors."""
    vecs = []
    for m in monomials:
        v = [ZERO] * len(ambient)
        v[ambient.position(m)] = Fraction(1)
        vecs.append(v)
    return Subspace.from_vectors(len(ambient), vecs)
