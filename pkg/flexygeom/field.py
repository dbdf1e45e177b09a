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
Exact arithmetic in GF(p^n), polynomial basis.

An element is stored as a single integer code, sum(c_i * p**i), where c_i is
the coefficient of alpha**i and alpha is a root of the field modulus.  Two
elements are equal iff their codes (equivalently their coordinate lists) are
equal.
"""

import itertools
import re

__all__ = [
    "FieldParams",
    "FieldElem",
    "FieldMismatch",
    "FieldSpecError",
    "NotInvertible",
    "add",
    "mul",
    "inv",
    "power",
    "frobenius",
    "trace_to_prime",
    "in_subfield",
    "all_elements",
    "subfield_elements",
    "embed",
    "extension",
    "is_prime",
    "is_irreducible",
    "default_modulus",
    "set_default_modulus",
]

DIGITS = "0123456789abcdefghijklmnopqrstuvw"

# Table sizes above this are computed on the fly instead.
TABLE_LIMIT = 256

# Moduli are written highest coefficient first, as in `GF(p^n; c_n,...,c_0)`.
MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 0, 1, 1),
    (2, 4): (1, 0, 0, 1, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 0, 2, 1),
    (5, 2): (1, 0, 2),
    (5, 3): (1, 0, 1, 1),
    (7, 2): (1, 0, 1),
    (7, 3): (1, 0, 0, 2),
    (11, 2): (1, 0, 1),
    (13, 2): (1, 0, 2),
}

_overrides = {}

R_FIELD_SPEC = re.compile(
    r"\s*GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?(?:;\s*([\d\s,]+))?\)\s*\Z"
)


class FieldSpecError(ValueError):
    pass


class FieldMismatch(ValueError):
    pass


class NotInvertible(ZeroDivisionError):
    pass


def is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _prime_power(q):
    """Returns (p, n) with q == p**n, or None."""
    for p in range(2, q + 1):
        if q % p == 0:
            n = 0
            while q % p == 0:
                q //= p
                n += 1
            return (p, n) if q == 1 else None
    return None


# Polynomials over GF(p) below are tuples, lowest coefficient first.


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    """Remainder of a modulo the monic polynomial m."""
    a = _trim(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1]
        if c:
            shift = len(a) - 1 - dm
            for i, mc in enumerate(m):
                a[shift + i] = (a[shift + i] - c * mc) % p
        a.pop()
        a = _trim(a)
    return a


def is_irreducible(p, modulus):
    """Exhaustive factor search; `modulus` is highest coefficient first."""
    n = len(modulus) - 1
    if n < 1 or modulus[0] % p != 1:
        return False
    m = [c % p for c in reversed(modulus)]
    if n == 1:
        return True
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(m, list(low) + [1], p):
                return False
    return True


def default_modulus(p, n):
    if (p, n) in _overrides:
        return _overrides[(p, n)]
    if n == 1:
        return (1, 0)
    if (p, n) in MODULI:
        return MODULI[(p, n)]
    # lexicographically smallest monic irreducible, c_{n-1} first
    for tail in itertools.product(range(p), repeat=n):
        modulus = (1,) + tail
        if is_irreducible(p, modulus):
            MODULI[(p, n)] = modulus
            return modulus
    raise FieldSpecError("No irreducible polynomial of degree %d mod %d" % (n, p))


def set_default_modulus(p, n, modulus):
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != n + 1 or not is_irreducible(p, modulus):
        raise FieldSpecError(
            "Modulus %s is not a monic irreducible of degree %d mod %d"
            % (",".join(map(str, modulus)), n, p)
        )
    _overrides[(p, n)] = modulus


class FieldParams(object):
    """GF(p^n) with a fixed modulus.  Immutable; compares by (p, n, modulus)."""

    __slots__ = ("p", "n", "q", "modulus", "_low", "_add", "_mul", "_elements")

    def __init__(self, p, n=1, modulus=None):
        if not is_prime(p):
            raise FieldSpecError("%d is not prime" % p)
        if n < 1:
            raise FieldSpecError("Extension degree must be >= 1, got %d" % n)
        if len(DIGITS) < p:
            raise FieldSpecError("Characteristic %d too large for digit strings" % p)
        if modulus is None:
            modulus = default_modulus(p, n)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1:
            raise FieldSpecError("Modulus must have %d coefficients" % (n + 1))
        if modulus[0] != 1:
            raise FieldSpecError("Modulus must be monic")
        if not is_irreducible(p, modulus):
            raise FieldSpecError(
                "Modulus %s is reducible over GF(%d)"
                % (",".join(map(str, modulus)), p)
            )
        self.p = p
        self.n = n
        self.q = p ** n
        self.modulus = modulus
        self._low = tuple(reversed(modulus))
        self._add = None
        self._mul = None
        self._elements = None

    @classmethod
    def parse(cls, text):
        """Parses `GF(p^n; c_n,...,c_0)`, `GF(p^n)` or `GF(q)`."""
        m = R_FIELD_SPEC.match(text)
        if not m:
            raise FieldSpecError("Bad field spec %r" % (text,))
        base = int(m.group(1))
        if m.group(2) is not None:
            p, n = base, int(m.group(2))
        else:
            pn = _prime_power(base)
            if pn is None:
                raise FieldSpecError("%d is not a prime power" % base)
            p, n = pn
        modulus = None
        if m.group(3):
            modulus = [int(c) for c in m.group(3).split(",")]
        return cls(p, n, modulus)

    def __reduce__(self):
        return (FieldParams, (self.p, self.n, self.modulus))

    def __eq__(self, other):
        return (
            isinstance(other, FieldParams)
            and self.p == other.p
            and self.n == other.n
            and self.modulus == other.modulus
        )

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __str__(self):
        return "GF(%d^%d; %s)" % (self.p, self.n, ",".join(map(str, self.modulus)))

    def __repr__(self):
        return "<FieldParams %s>" % self

    def __call__(self, value):
        if isinstance(value, FieldElem):
            if value.params != self:
                raise FieldMismatch("%s is not in %s" % (value, self))
            return value
        if isinstance(value, int):
            return FieldElem(self, value % self.p)
        if isinstance(value, str):
            return self.from_digits(value)
        return self.from_coeffs(value)

    @property
    def zero(self):
        return FieldElem(self, 0)

    @property
    def one(self):
        return FieldElem(self, 1)

    @property
    def generator(self):
        """alpha, the class of t modulo the field modulus."""
        return FieldElem(self, self._reduce_coeffs([0, 1]))

    def from_coeffs(self, coeffs):
        """Coefficients lowest first; length at most n."""
        coeffs = list(coeffs)
        if len(coeffs) > self.n:
            raise FieldSpecError("Too many coordinates for %s" % self)
        code = 0
        for c in reversed(coeffs):
            if not 0 <= c < self.p:
                raise FieldSpecError("Coordinate %r not a residue mod %d" % (c, self.p))
            code = code * self.p + c
        return FieldElem(self, code)

    def from_digits(self, s):
        """Parses the `c_{n-1}...c_0` digit form; shorter strings are left-padded."""
        s = s.strip().lower()
        if not s or len(s) > self.n:
            raise FieldSpecError("%r is not an element of %s" % (s, self))
        code = 0
        for ch in s:
            d = DIGITS.find(ch)
            if d < 0 or d >= self.p:
                raise FieldSpecError("%r is not an element of %s" % (s, self))
            code = code * self.p + d
        return FieldElem(self, code)

    def elements(self):
        if self._elements is None:
            self._elements = tuple(FieldElem(self, c) for c in range(self.q))
        return self._elements

    # Code-level arithmetic.  Scans call these directly.

    def _digits(self, code):
        p = self.p
        out = []
        for _ in range(self.n):
            out.append(code % p)
            code //= p
        return out

    def _undigits(self, coeffs):
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + c
        return code

    def _reduce_coeffs(self, coeffs):
        r = _poly_mod(coeffs, self._low, self.p) if len(coeffs) > self.n else coeffs
        r = list(r) + [0] * (self.n - len(r))
        return self._undigits(r)

    def _add_direct(self, a, b):
        if self.p == 2:
            return a ^ b
        if self.n == 1:
            return (a + b) % self.p
        p = self.p
        return self._undigits(
            [(x + y) % p for x, y in zip(self._digits(a), self._digits(b))]
        )

    def _mul_direct(self, a, b):
        if self.n == 1:
            return (a * b) % self.p
        p = self.p
        da = self._digits(a)
        db = self._digits(b)
        prod = [0] * (2 * self.n - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] = (prod[i + j] + x * y) % p
        return self._reduce_coeffs(prod)

    def add_table(self):
        if self._add is None and self.q <= TABLE_LIMIT:
            r = range(self.q)
            self._add = [[self._add_direct(a, b) for b in r] for a in r]
        return self._add

    def mul_table(self):
        if self._mul is None and self.q <= TABLE_LIMIT:
            r = range(self.q)
            self._mul = [[self._mul_direct(a, b) for b in r] for a in r]
        return self._mul

    def cadd(self, a, b):
        t = self.add_table()
        if t is not None:
            return t[a][b]
        return self._add_direct(a, b)

    def cmul(self, a, b):
        t = self.mul_table()
        if t is not None:
            return t[a][b]
        return self._mul_direct(a, b)

    def cneg(self, a):
        if self.p == 2:
            return a
        return self._undigits([(-c) % self.p for c in self._digits(a)])

    def cpow(self, a, k):
        result = 1
        while k:
            if k & 1:
                result = self.cmul(result, a)
            a = self.cmul(a, a)
            k >>= 1
        return result

    def cinv(self, a):
        if a == 0:
            raise NotInvertible("Inversion of zero in %s" % self)
        return self.cpow(a, self.q - 2)


class FieldElem(object):
    __slots__ = ("params", "code")

    def __init__(self, params, code):
        self.params = params
        self.code = code

    def __reduce__(self):
        return (FieldElem, (self.params, self.code))

    @property
    def coeffs(self):
        return tuple(self.params._digits(self.code))

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.params is not self.params and other.params != self.params:
                raise FieldMismatch(
                    "Mixed fields %s and %s" % (self.params, other.params)
                )
            return other.code
        if isinstance(other, int):
            return other % self.params.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.params, self.params.cadd(self.code, b))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.params, self.params.cneg(self.code))

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(
            self.params, self.params.cadd(self.code, self.params.cneg(b))
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.params, self.params.cmul(self.code, b))

    __rmul__ = __mul__

    def inv(self):
        return FieldElem(self.params, self.params.cinv(self.code))

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(
            self.params, self.params.cmul(self.code, self.params.cinv(b))
        )

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        return FieldElem(self.params, self.params.cpow(self.code, k))

    def frobenius(self, e=1):
        return self ** (self.params.p ** (e % self.params.n))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.code == other % self.params.p
        return (
            isinstance(other, FieldElem)
            and self.code == other.code
            and self.params == other.params
        )

    def __ne__(self, other):
        return not self == other

    def __lt__(self, other):
        return self.code < other.code

    def __hash__(self):
        return hash(self.code)

    def __bool__(self):
        return self.code != 0

    def __str__(self):
        return "".join(DIGITS[c] for c in reversed(self.coeffs))

    def short(self):
        """Digit string without leading zeros, as used in polynomial text."""
        return str(self).lstrip("0") or "0"

    def __repr__(self):
        return "<FieldElem %s in %s>" % (self, self.params)


def _check(x, y):
    if x.params != y.params:
        raise FieldMismatch("Mixed fields %s and %s" % (x.params, y.params))


def add(x, y):
    _check(x, y)
    return x + y


def mul(x, y):
    _check(x, y)
    return x * y


def inv(x):
    return x.inv()


def power(x, k):
    if k < 0:
        raise ValueError("Exponent must be non-negative")
    return x ** k


def frobenius(x, e):
    """x ** (p ** e)."""
    return x.frobenius(e)


def trace_to_prime(x):
    """x + x^p + ... + x^(p^(n-1)); lands in the prime subfield."""
    t = x.params.zero
    y = x
    for _ in range(x.params.n):
        t = t + y
        y = y.frobenius(1)
    return t


def in_subfield(x, m):
    if m < 1 or x.params.n % m:
        raise ValueError("%d does not divide %d" % (m, x.params.n))
    return x ** (x.params.p ** m) == x


def all_elements(params):
    return params.elements()


def subfield_elements(params, m):
    return [x for x in params.elements() if in_subfield(x, m)]


def extension(params, m):
    """The degree-m extension of `params`, with its default modulus."""
    if m == 1:
        return params
    return FieldParams(params.p, params.n * m)


_embeddings = {}


def _embedding_root(src, dst):
    key = (src, dst)
    if key not in _embeddings:
        if src.p != dst.p or dst.n % src.n:
            raise FieldMismatch("%s does not embed in %s" % (src, dst))
        root = None
        for code in range(dst.q):
            # Horner evaluation of the source modulus at `code`
            acc = 0
            for c in src.modulus:
                acc = dst.cadd(dst.cmul(acc, code), c % dst.p)
            if acc == 0:
                root = code
                break
        _embeddings[key] = root
    return _embeddings[key]


def embed(x, dst):
    """Image of x under the embedding GF(p^n) -> dst fixing the prime field."""
    src = x.params
    if src == dst:
        return x
    beta = _embedding_root(src, dst)
    acc = 0
    for c in reversed(x.coeffs):
        acc = dst.cadd(dst.cmul(acc, beta), c)
    return FieldElem(dst, acc)
