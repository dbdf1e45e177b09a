# Copyright 2026 The flexygeom Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""
Sparse polynomials in x, y, z over GF(q).

Coefficients are held as field codes (see flexygeom.field) keyed by exponent
triples; the `terms` property hands out FieldElem values.  Derivatives are
Hasse derivatives, so they stay meaningful in characteristic p where the
ordinary second derivative of x^p vanishes.
"""

import itertools

from flexygeom.field import FieldElem, FieldMismatch, embed
from flexygeom.geom import projective_triples
from flexygeom.util import binomial_mod

__all__ = [
    "VARS",
    "NEG_INF",
    "MultiPoly",
    "UniPoly",
    "TaylorJet",
    "LinearFactorization",
    "var",
    "const",
    "monomial",
    "evaluate",
    "hasse",
    "partial",
    "divided_second",
    "translate",
    "taylor_jet",
    "restrict_to_param",
    "restrict_to_line",
    "substitute_linear",
    "linear_divides",
    "exact_divide_linear",
    "linear_factors",
    "to_text",
    "parse",
]

VARS = ("x", "y", "z")
NEG_INF = float("-inf")

SECOND_MODES = ("hasse", "paper-literal")


def var_index(v):
    if isinstance(v, int):
        if 0 <= v < 3:
            return v
    elif v in VARS:
        return VARS.index(v)
    raise ValueError("Unknown variable %r" % (v,))


def _glex_key(exps):
    return (sum(exps), exps[0], exps[1], exps[2])


class MultiPoly(object):
    __slots__ = ("params", "_terms")

    def __init__(self, params, terms=None):
        self.params = params
        self._terms = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) == 2:
                exps += (0,)
            if len(exps) != 3 or min(exps) < 0:
                raise ValueError("Bad exponent triple %r" % (exps,))
            code = params(c).code
            if code:
                self._terms[exps] = code

    @classmethod
    def _raw(cls, params, codes):
        obj = cls.__new__(cls)
        obj.params = params
        obj._terms = codes
        return obj

    def __reduce__(self):
        return (_rebuild, (self.params, dict(self._terms)))

    @property
    def terms(self):
        return {e: FieldElem(self.params, c) for e, c in self._terms.items()}

    def coeff(self, exps):
        return FieldElem(self.params, self._terms.get(tuple(exps), 0))

    @property
    def degree(self):
        if not self._terms:
            return NEG_INF
        return max(sum(e) for e in self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self):
        return self.degree <= 0

    def variables(self):
        return {VARS[i] for e in self._terms for i in range(3) if e[i]}

    def sorted_terms(self):
        """Graded-lex, highest first, x > y > z."""
        return sorted(self._terms.items(), key=lambda t: _glex_key(t[0]), reverse=True)

    def leading_term(self):
        exps, c = self.sorted_terms()[0]
        return (exps, FieldElem(self.params, c))

    def homogeneous_part(self, k):
        return MultiPoly._raw(
            self.params, {e: c for e, c in self._terms.items() if sum(e) == k}
        )

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.params != self.params:
                raise FieldMismatch(
                    "Mixed fields %s and %s" % (self.params, other.params)
                )
            return other
        if isinstance(other, (FieldElem, int)):
            return const(self.params, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        cadd = self.params.cadd
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = cadd(out.get(e, 0), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.params, out)

    __radd__ = __add__

    def __neg__(self):
        cneg = self.params.cneg
        return MultiPoly._raw(
            self.params, {e: cneg(c) for e, c in self._terms.items()}
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        cadd, cmul = self.params.cadd, self.params.cmul
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = cadd(out.get(e, 0), cmul(c1, c2))
        return MultiPoly._raw(self.params, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("Negative power of a polynomial")
        result = const(self.params, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c):
        c = self.params(c).code
        cmul = self.params.cmul
        if not c:
            return MultiPoly._raw(self.params, {})
        return MultiPoly._raw(
            self.params, {e: cmul(c, v) for e, v in self._terms.items()}
        )

    def __eq__(self, other):
        if isinstance(other, (int, FieldElem)):
            other = const(self.params, other)
        return (
            isinstance(other, MultiPoly)
            and self.params == other.params
            and self._terms == other._terms
        )

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def code_terms(self):
        """(exponents, coefficient code) pairs."""
        return self._terms.items()

    def evaluate(self, pt):
        return evaluate(self, pt)

    def evaluator(self):
        """A function of three field codes returning the code of f there."""
        params = self.params
        terms = [(c, e[0], e[1], e[2]) for e, c in self._terms.items()]
        exps = {e for t in terms for e in t[1:]}
        cpow = params.cpow
        pw = {e: [cpow(v, e) for v in range(params.q)] for e in exps}
        cadd, cmul = params.cadd, params.cmul

        def ev(xc, yc, zc):
            acc = 0
            for c, i, j, k in terms:
                acc = cadd(acc, cmul(cmul(c, pw[i][xc]), cmul(pw[j][yc], pw[k][zc])))
            return acc

        return ev

    def rebase(self, ext):
        """The same polynomial with coefficients embedded in `ext`."""
        if ext == self.params:
            return self
        return MultiPoly._raw(
            ext,
            {
                e: embed(FieldElem(self.params, c), ext).code
                for e, c in self._terms.items()
            },
        )

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return "<MultiPoly %s over %s>" % (self, self.params)


def _rebuild(params, codes):
    return MultiPoly._raw(params, codes)


def var(params, name):
    e = [0, 0, 0]
    e[var_index(name)] = 1
    return MultiPoly._raw(params, {tuple(e): 1})


def const(params, c):
    return monomial(params, (0, 0, 0), c)


def monomial(params, exps, c=1):
    return MultiPoly(params, {tuple(exps): params(c)})


def evaluate(f, pt):
    coords = [f.params(c) if isinstance(c, int) else c for c in pt]
    if coords[0].params != f.params:
        f = f.rebase(coords[0].params)
    params = f.params
    if len(coords) == 2:
        coords.append(params.zero)
    codes = [params(c).code for c in coords]
    cadd, cmul, cpow = params.cadd, params.cmul, params.cpow
    acc = 0
    for e, c in f._terms.items():
        term = c
        for v in range(3):
            if e[v]:
                term = cmul(term, cpow(codes[v], e[v]))
        acc = cadd(acc, term)
    return FieldElem(params, acc)


def hasse(f, orders, mode="hasse"):
    """D^(a,b,c) f: sum of C(i,a)C(j,b)C(k,c) c_ijk x^(i-a) y^(j-b) z^(k-c)."""
    params = f.params
    p = params.p
    orders = tuple(orders)
    if mode not in SECOND_MODES:
        raise ValueError("Unknown second-derivative mode %r" % (mode,))
    literal = mode == "paper-literal" and p == 2

    def weight(m, a):
        if literal and a == 2:
            return (m * (m + 1) // 2) % p if m >= 2 else 0
        return binomial_mod(m, a, p)

    out = {}
    cadd, cmul = params.cadd, params.cmul
    for e, c in f._terms.items():
        if any(e[v] < orders[v] for v in range(3)):
            continue
        w = 1
        for v in range(3):
            if orders[v]:
                w = w * weight(e[v], orders[v]) % p
        if not w:
            continue
        ne = (e[0] - orders[0], e[1] - orders[1], e[2] - orders[2])
        out[ne] = cadd(out.get(ne, 0), cmul(c, w))
    return MultiPoly._raw(params, {e: c for e, c in out.items() if c})


def partial(f, v):
    orders = [0, 0, 0]
    orders[var_index(v)] = 1
    return hasse(f, orders)


def divided_second(f, v, mode="hasse"):
    """Coefficient-wise C(m,2) x^(m-2); `paper-literal` uses m(m+1)/2 in char 2."""
    orders = [0, 0, 0]
    orders[var_index(v)] = 2
    return hasse(f, orders, mode)


def _translated_terms(f, base, max_degree=None):
    params = f.params
    p = params.p
    b = [params(c).code for c in base]
    cadd, cmul, cpow = params.cadd, params.cmul, params.cpow
    out = {}
    for e, c in f._terms.items():
        for a in itertools.product(*(range(k + 1) for k in e)):
            if max_degree is not None and sum(a) > max_degree:
                continue
            w = 1
            for v in range(3):
                w = w * binomial_mod(e[v], a[v], p) % p
            if not w:
                continue
            term = cmul(c, w)
            for v in range(3):
                term = cmul(term, cpow(b[v], e[v] - a[v]))
            out[a] = cadd(out.get(a, 0), term)
    return MultiPoly._raw(params, {e: c for e, c in out.items() if c})


def translate(f, base):
    """f(X + base) expanded in X, Y, Z."""
    return _translated_terms(f, tuple(base))


class TaylorJet(object):
    __slots__ = ("f0", "f1", "f2")

    def __init__(self, f0, f1, f2):
        self.f0 = f0
        self.f1 = f1
        self.f2 = f2

    def __iter__(self):
        return iter((self.f0, self.f1, self.f2))

    def __eq__(self, other):
        return isinstance(other, TaylorJet) and tuple(self) == tuple(other)

    def __repr__(self):
        return "<TaylorJet %s | %s | %s>" % tuple(self)


def taylor_jet(f, base):
    """Degree 0, 1 and 2 parts of f translated so `base` sits at the origin."""
    base = tuple(base)
    if len(base) == 2:
        base += (base[0].params.zero,)
    if base[0].params != f.params:
        f = f.rebase(base[0].params)
    moved = _translated_terms(f, base, max_degree=2)
    return TaylorJet(
        moved.coeff((0, 0, 0)), moved.homogeneous_part(1), moved.homogeneous_part(2)
    )


class UniPoly(object):
    """Univariate polynomial in t; coefficient codes lowest first, trimmed."""

    __slots__ = ("params", "_codes")

    def __init__(self, params, codes=()):
        codes = list(codes)
        while codes and not codes[-1]:
            codes.pop()
        self.params = params
        self._codes = codes

    @classmethod
    def from_coeffs(cls, params, coeffs):
        return cls(params, [params(c).code for c in coeffs])

    @property
    def coefficients(self):
        return [FieldElem(self.params, c) for c in self._codes]

    def coeff(self, l):
        if 0 <= l < len(self._codes):
            return FieldElem(self.params, self._codes[l])
        return self.params.zero

    @property
    def degree(self):
        return len(self._codes) - 1 if self._codes else NEG_INF

    def is_zero(self):
        return not self._codes

    def __bool__(self):
        return bool(self._codes)

    def nonzero_indices(self):
        return [l for l, c in enumerate(self._codes) if c]

    def evaluate(self, t):
        t = self.params(t).code
        acc = 0
        for c in reversed(self._codes):
            acc = self.params.cadd(self.params.cmul(acc, t), c)
        return FieldElem(self.params, acc)

    def __add__(self, other):
        return UniPoly(self.params, _uadd(self._codes, other._codes, self.params))

    def __mul__(self, other):
        return UniPoly(self.params, _umul(self._codes, other._codes, self.params))

    def __eq__(self, other):
        return (
            isinstance(other, UniPoly)
            and self.params == other.params
            and self._codes == other._codes
        )

    def __ne__(self, other):
        return not self == other

    def __str__(self):
        if not self._codes:
            return "0"
        parts = []
        for l in range(len(self._codes) - 1, -1, -1):
            c = self._codes[l]
            if not c:
                continue
            cs = _coeff_text(self.params, c)
            mono = "" if l == 0 else ("t" if l == 1 else "t^%d" % l)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(cs + "*" + mono)
        return " + ".join(parts)

    def __repr__(self):
        return "<UniPoly %s>" % self


def _uadd(a, b, params):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = params.cadd(out[i], c)
    return out


def _umul(a, b, params):
    if not a or not b:
        return []
    cadd, cmul = params.cadd, params.cmul
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = cadd(out[i + j], cmul(x, y))
    return out


def restrict_to_param(f, base, direction):
    """f(base + t*direction) as a polynomial in t, along this exact parametrization."""
    base, direction = tuple(base), tuple(direction)
    if base[0].params != f.params:
        f = f.rebase(base[0].params)
    params = f.params
    lin = [[params(b).code, params(d).code] for b, d in zip(base, direction)]
    powers = [{0: [1]} for _ in range(3)]

    def pw(v, e):
        cache = powers[v]
        if e not in cache:
            cache[e] = _umul(pw(v, e - 1), lin[v], params)
        return cache[e]

    acc = []
    for e, c in f._terms.items():
        term = [c]
        for v in range(3):
            if e[v]:
                term = _umul(term, pw(v, e[v]), params)
        acc = _uadd(acc, term, params)
    return UniPoly(params, acc)


def restrict_to_line(f, line):
    """f restricted to the canonical parametrization base + t*dir of `line`."""
    return restrict_to_param(f, tuple(line.base), line.dir)


def _linear_parts(l):
    if l.is_zero():
        raise ValueError("The zero polynomial is not a linear form")
    if l.degree > 1:
        raise ValueError("%s is not affine-linear" % (l,))
    units = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    for v, e in enumerate(units):
        a = l._terms.get(e, 0)
        if a:
            rest = l - monomial(l.params, e, FieldElem(l.params, a))
            # l = a * (x_v - s)
            s = rest.scale(-FieldElem(l.params, a).inv())
            return (v, FieldElem(l.params, a), s)
    return (None, None, None)


def substitute_linear(g, v, expr):
    """g with variable `v` replaced by `expr`, which must not involve `v`."""
    v = var_index(v)
    if VARS[v] in expr.variables():
        raise ValueError("Substituted expression involves %s" % VARS[v])
    params = g.params
    powers = {0: const(params, 1)}
    out = MultiPoly(params)
    for e, c in g._terms.items():
        k = e[v]
        if k not in powers:
            top = max(powers)
            acc = powers[top]
            for i in range(top + 1, k + 1):
                acc = acc * expr
                powers[i] = acc
        rest = list(e)
        rest[v] = 0
        out = out + powers[k] * MultiPoly._raw(params, {tuple(rest): c})
    return out


def linear_divides(l, g):
    """Whether the affine-linear form l divides g exactly."""
    v, _, s = _linear_parts(l)
    if v is None:
        return True
    if g.params != l.params:
        g = g.rebase(l.params)
    return substitute_linear(g, v, s).is_zero()


def _shift(poly, v, k):
    out = {}
    for e, c in poly._terms.items():
        e = list(e)
        e[v] += k
        out[tuple(e)] = c
    return MultiPoly._raw(poly.params, out)


def exact_divide_linear(f, l):
    """f / l when l divides f exactly, else None.  Synthetic division in l's pivot variable."""
    v, a, s = _linear_parts(l)
    if v is None:
        return f.scale(l.coeff((0, 0, 0)).inv())
    by_power = {}
    for e, c in f._terms.items():
        rest = list(e)
        rest[v] = 0
        by_power.setdefault(e[v], {})[tuple(rest)] = c
    slices = {k: MultiPoly._raw(f.params, t) for k, t in by_power.items()}
    top = max(slices) if slices else 0
    zero = MultiPoly(f.params)
    quotient = zero
    carry = zero
    for k in range(top, 0, -1):
        carry = slices.get(k, zero) + s * carry
        quotient = quotient + _shift(carry, v, k - 1)
    remainder = slices.get(0, zero) + s * carry
    if not remainder.is_zero():
        return None
    return quotient.scale(a.inv())


class LinearFactorization(object):
    """f == product(l**m for l, m in factors) * remainder, exactly."""

    def __init__(self, factors, remainder):
        self.factors = factors
        self.remainder = remainder

    @property
    def scalar(self):
        if self.remainder.is_constant():
            return self.remainder.coeff((0, 0, 0))
        return self.remainder.leading_term()[1]

    def linear(self):
        return [l for l, _ in self.factors]

    def recompose(self):
        out = self.remainder
        for l, m in self.factors:
            out = out * l ** m
        return out

    def __repr__(self):
        return "<LinearFactorization %s | %s>" % (
            ", ".join("(%s)^%d" % (l, m) for l, m in self.factors),
            self.remainder,
        )


def linear_forms(params):
    """Homogeneous linear forms with first nonzero coefficient 1."""
    out = []
    for triple in projective_triples(params):
        out.append(
            MultiPoly._raw(
                params,
                {
                    e: c.code
                    for e, c in zip(((1, 0, 0), (0, 1, 0), (0, 0, 1)), triple)
                    if c
                },
            )
        )
    return out


def linear_factors(f):
    """All normalized affine-linear factors of f over its own field.

    Only linear parts dividing the top homogeneous component are tried, since
    every factor's linear part divides it.
    """
    if f.is_zero():
        raise ValueError("The zero polynomial has no factorization")
    factors = []
    rem = f
    if f.degree <= 0:
        return LinearFactorization(factors, rem)
    top = f.homogeneous_part(f.degree)
    for h in linear_forms(f.params):
        if not linear_divides(h, top):
            continue
        for c in f.params.elements():
            l = h + c
            mult = 0
            while rem.degree >= 1:
                quotient = exact_divide_linear(rem, l)
                if quotient is None:
                    break
                rem = quotient
                mult += 1
            if mult:
                factors.append((l, mult))
    return LinearFactorization(factors, rem)


def _coeff_text(params, code):
    # letter digits (p > 10) are bracketed so they cannot read as variables
    cs = FieldElem(params, code).short()
    return cs if cs.isdigit() else "[%s]" % cs


def to_text(f):
    if f.is_zero():
        return "0"
    parts = []
    for e, c in f.sorted_terms():
        mono = "*".join(
            v if k == 1 else "%s^%d" % (v, k) for v, k in zip(VARS, e) if k
        )
        cs = _coeff_text(f.params, c)
        if not mono:
            parts.append(cs)
        elif cs == "1":
            parts.append(mono)
        else:
            parts.append(cs + "*" + mono)
    return " + ".join(parts)


def parse(text, params):
    from flexygeom.parser import parse as _parse

    return _parse(text, params)
