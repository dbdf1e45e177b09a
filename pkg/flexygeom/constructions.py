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
Explicit surfaces with many lines and few points.

The Heisenberg surface x - x^p + y z^p - z y^p over GF(p^2) and its
generalization over GF(p^n) each contain p^(2n) lines of the form
L(a,b,u,v) = {(a,b,0) + t(u,v,1)}, yet have only p^(3n-1) rational points.
"""

import logging
from collections import Counter
from fractions import Fraction

from flexygeom.field import FieldElem, FieldParams, subfield_elements, trace_to_prime
from flexygeom.geom import (
    Line3,
    max_lines_per_plane,
    planes_through,
    union_points,
)
from flexygeom.mpoly import MultiPoly, parse, restrict_to_param
from flexygeom.surface import Surface, is_flexy_surface, lines_in, rational_points
from flexygeom.util import check_budget, fmt_fraction, smallest_divisor

logger = logging.getLogger(__name__)

__all__ = [
    "LineFamilyParams",
    "ClReport",
    "funny_curve",
    "funny_curve_charts",
    "funny_surface",
    "heisenberg",
    "heisenberg_polynomial",
    "heisenberg_lines",
    "general_polynomial",
    "general_surface",
    "general_lines",
    "predicted_coefficients",
    "check_cl_characterization",
    "value_distribution",
    "plane_section_line_counts",
    "prime_field_flexy_bound",
    "counterexample_report",
]

FUNNY = "x^3*y + y^3 + x"


class LineFamilyParams(object):
    __slots__ = ("a", "b", "u", "v")

    def __init__(self, a, b, u, v):
        self.a = a
        self.b = b
        self.u = u
        self.v = v

    def __iter__(self):
        return iter((self.a, self.b, self.u, self.v))

    def line(self):
        return Line3.from_family(self.a, self.b, self.u, self.v)

    def __repr__(self):
        return "<LineFamilyParams a=%s b=%s u=%s v=%s>" % tuple(self)


def funny_curve():
    """The chart z = 1 of x^3 y + y^3 z + z^3 x over GF(3)."""
    return parse(FUNNY, FieldParams(3))


def funny_curve_charts():
    """All three affine charts, each renamed into the variables x, y."""
    params = FieldParams(3)
    return {
        "z=1": parse(FUNNY, params),
        # x = 1: y + y^3 z + z^3 with (y, z) -> (x, y)
        "x=1": parse("x^3*y + y^3 + x", params),
        # y = 1: x^3 + z + z^3 x with (z, x) -> (x, y)
        "y=1": parse("x^3*y + y^3 + x", params),
    }


def funny_surface():
    return Surface(
        funny_curve(),
        ambient=2,
        attested_reduced=True,
        attested_irreducible=True,
        name="funny curve",
    )


def heisenberg_polynomial(p):
    params = FieldParams(p, 2)
    return MultiPoly(
        params,
        {(1, 0, 0): 1, (p, 0, 0): -1, (0, 1, p): 1, (0, p, 1): -1},
    )


def heisenberg(p):
    return Surface(
        heisenberg_polynomial(p),
        attested_reduced=True,
        attested_irreducible=True,
        name="heisenberg(%d)" % p,
    )


def heisenberg_lines(p):
    """L(a, b, b^p, v) for a, v in GF(p) and b in GF(p^2)."""
    params = FieldParams(p, 2)
    prime = subfield_elements(params, 1)
    out = []
    for a in prime:
        for b in params.elements():
            for v in prime:
                out.append(Line3.from_family(a, b, b.frobenius(1), v))
    return sorted(out)


def general_polynomial(p, n):
    """sum x^(p^i) + sum y^(p^i) z^(p^(i+1)) - sum y^(p^i) z^(p^(i-1)), indices mod n.

    Terms are added one at a time, so for n = 2 the two twisted sums cancel.
    """
    if n < 2:
        raise ValueError("The generalized surface needs n >= 2")
    params = FieldParams(p, n)
    f = MultiPoly(params)
    for i in range(n):
        f = f + MultiPoly(params, {(p ** i, 0, 0): 1})
    for i in range(n):
        f = f + MultiPoly(params, {(0, p ** i, p ** ((i + 1) % n)): 1})
    for i in range(n):
        f = f - MultiPoly(params, {(0, p ** i, p ** ((i - 1) % n)): 1})
    return f


def general_surface(p, n):
    return Surface(
        general_polynomial(p, n),
        attested_reduced=n > 2,
        attested_irreducible=n > 2,
        name="general(%d,%d)" % (p, n),
    )


def _u_from_b(b, n):
    # u^p = b^(p^2) - b
    return (b.frobenius(2) - b).frobenius(n - 1)


def general_family(p, n):
    params = FieldParams(p, n)
    prime = subfield_elements(params, 1)
    traceless = [a for a in params.elements() if not trace_to_prime(a)]
    out = []
    for a in traceless:
        for b in params.elements():
            u = _u_from_b(b, n)
            for v in prime:
                out.append(LineFamilyParams(a, b, u, v))
    return out


def general_lines(p, n):
    return sorted(fam.line() for fam in general_family(p, n))


def predicted_coefficients(p, n, fam):
    """Closed-form coefficients of f restricted to L(a,b,u,v), keyed by the power of t.

    Contributions landing on the same index are summed.
    """
    params = fam.a.params
    out = {0: trace_to_prime(fam.a)}

    def put(l, value):
        out[l] = out.get(l, params.zero) + value

    for j in range(n):
        put(
            p ** j,
            fam.b.frobenius(j - 1) - fam.b.frobenius(j + 1) + fam.u.frobenius(j),
        )
    for j in range(n):
        put(p ** j + p ** ((j - 1) % n), fam.v.frobenius(j - 1) - fam.v.frobenius(j))
    return out


class ClReport(object):
    def __init__(self, fam, actual, predicted):
        self.fam = fam
        self.actual = actual
        self.predicted = predicted
        self.entries = [
            (l, actual.coeff(l), value, actual.coeff(l) == value)
            for l, value in sorted(predicted.items())
        ]
        self.stray = [l for l in actual.nonzero_indices() if l not in predicted]
        p, n = fam.a.params.p, fam.a.params.n
        self.linkage = []
        for i in range(n):
            lhs = actual.coeff(p ** i).frobenius(1)
            rhs = actual.coeff(p ** ((i + 1) % n))
            self.linkage.append((i, lhs == rhs))

    @property
    def mismatches(self):
        return [e for e in self.entries if not e[3]]

    def matches(self):
        return (
            not self.mismatches
            and not self.stray
            and all(ok for _, ok in self.linkage)
        )

    def to_dict(self):
        return {
            "params": [str(c) for c in self.fam],
            "entries": [
                {"l": l, "actual": str(a), "predicted": str(b), "match": ok}
                for l, a, b, ok in self.entries
            ],
            "stray": self.stray,
            "linkage": [ok for _, ok in self.linkage],
            "matches": self.matches(),
        }


def check_cl_characterization(p, n, fam):
    """Compares the restriction along (a,b,0) + t(u,v,1) with the closed forms."""
    f = general_polynomial(p, n)
    zero, one = f.params.zero, f.params.one
    actual = restrict_to_param(
        f, (fam.a, fam.b, zero), (fam.u, fam.v, one)
    )
    return ClReport(fam, actual, predicted_coefficients(p, n, fam))


def value_distribution(f, budget=None):
    """Fiber sizes of f on GF(q)^3, keyed by value."""
    params = f.params
    check_budget("points of GF(%d)^3" % params.q, params.q ** 3, budget)
    ev = f.evaluator()
    tally = Counter()
    r = range(params.q)
    for x in r:
        for y in r:
            for z in r:
                tally[ev(x, y, z)] += 1
    return {FieldElem(params, c): k for c, k in sorted(tally.items())}


def plane_section_line_counts(lines):
    """Histogram: number of lines in a plane -> number of such planes (planes with
    no line are omitted)."""
    tally = Counter()
    for line in set(lines):
        for plane in planes_through(line):
            tally[plane] += 1
    return dict(sorted(Counter(tally.values()).items()))


def prime_field_flexy_bound(lines, p, N=None):
    """Lines over GF(p) with at most p per plane against flexy surfaces.

    Any flexy non-plane surface has degree d >= p, so once 2Np > |L| the
    flexy-surface hypothesis holds vacuously.
    """
    lines = set(lines)
    count, witness = max_lines_per_plane(lines)
    N = N or p
    return {
        "lines": len(lines),
        "max_per_plane": count,
        "wolff": count <= p,
        "union": len(union_points(lines)),
        "flexy_bound_floor": 2 * N * p,
        "flexy_vacuous": 2 * N * p > len(lines),
        "witness": str(witness) if count > p else None,
    }


def _exponents(q, points, n):
    num, den = 3 * n - 1, n
    small = smallest_divisor(n)
    return {
        "N": q,
        "points_exponent": fmt_fraction(Fraction(num, den)),
        "points_match": points ** den == q ** num,
        "question_exponent": fmt_fraction(3 - Fraction(1, small)),
        "smallest_divisor": small,
    }


def counterexample_report(p, n=2, kind="general", budget_points=None, budget_lines=None, ext=1):
    """Counts for the Heisenberg (n = 2) or generalized surface over GF(p^n)."""
    if kind == "heisenberg":
        if n != 2:
            raise ValueError("The Heisenberg surface lives over GF(p^2)")
        X = heisenberg(p)
        family = heisenberg_lines(p)
    elif kind == "general":
        X = general_surface(p, n)
        family = general_lines(p, n)
    else:
        raise ValueError("Unknown construction %r" % (kind,))
    q = X.params.q
    points = rational_points(X, 1, budget_points)
    contained = lines_in(X, budget_lines, budget_points)
    transversal = [l for l in contained if l.is_transversal()]
    contained_set = set(contained)
    count, witness = max_lines_per_plane(family)
    verdict = is_flexy_surface(X, ext, budget_points)
    report = {
        "construction": kind,
        "field": str(X.params),
        "polynomial": str(X.f),
        "degree": X.degree,
        "points": len(points),
        "lines_family": len(set(family)),
        "lines_total": len(contained),
        "lines_transversal": len(transversal),
        "family_contained": all(l in contained_set for l in family),
        "family_equals_transversal": set(family) == set(transversal),
        "max_per_plane": count,
        "max_per_plane_witness": str(witness) if witness is not None else None,
        "wolff_bound": p if kind == "heisenberg" else None,
        "union": len(union_points(family)),
        "plane_sections": {str(k): v for k, v in plane_section_line_counts(family).items()},
        "flexy": verdict.to_dict(),
        "exponents": _exponents(q, len(points), n),
    }
    logger.info(
        "%s: %d points, %d family lines, %d contained",
        X,
        report["points"],
        report["lines_family"],
        report["lines_total"],
    )
    return report
