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
Hypersurfaces of AG(3,q) (and plane curves, with ambient=2) over GF(q).

Points over GF(q^m) are found by evaluating f on the whole grid with numpy
lookup tables; each point on X is then classified from its Taylor jet:
singular when the linear part vanishes, flexy when the linear part divides
the quadratic part, smooth non-flexy otherwise.
"""

import enum
import logging

import numpy as np

from flexygeom.field import TABLE_LIMIT, FieldElem, extension
from flexygeom.geom import Line3, Point3, points_on, projective_triples
from flexygeom.linalg import field_tables
from flexygeom.mpoly import (
    MultiPoly,
    divided_second,
    hasse,
    linear_divides,
    linear_factors,
    partial,
    restrict_to_line,
    taylor_jet,
)
from flexygeom.util import PreconditionError, check_budget

logger = logging.getLogger(__name__)

__all__ = [
    "NotOnSurface",
    "PointClass",
    "FlexyVerdict",
    "BadLineCensus",
    "Surface",
    "rational_points",
    "lines_in",
    "contains_line",
    "classify_jet",
    "classify_point",
    "classify_all",
    "singular_points",
    "is_flexy_surface",
    "curve_G",
    "verify_irreducible",
    "bad_line_census",
]

FIRST = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
SECOND = ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))

FLEXY_EVIDENCE = "FlexyEvidence"
NOT_FLEXY = "NotFlexy"
UNDETERMINED = "Undetermined"


class NotOnSurface(ValueError):
    pass


class PointClass(enum.Enum):
    SINGULAR = "SingularPt"
    FLEXY = "FlexyPt"
    SMOOTH_NON_FLEXY = "SmoothNonFlexyPt"

    def __str__(self):
        return self.value


class FlexyVerdict(object):
    """Evidence over GF(q^m) only; FlexyEvidence is never a proof."""

    def __init__(self, kind, ext, witness=None, checked=0, smooth=0, singular=0):
        self.kind = kind
        self.ext = ext
        self.witness = witness
        self.checked = checked
        self.smooth = smooth
        self.singular = singular

    def __bool__(self):
        return self.kind == FLEXY_EVIDENCE

    def to_dict(self):
        return {
            "verdict": self.kind,
            "ext": self.ext,
            "witness": str(self.witness) if self.witness is not None else None,
            "checked": self.checked,
            "smooth": self.smooth,
            "singular": self.singular,
        }

    def __repr__(self):
        if self.witness is not None:
            return "<FlexyVerdict %s(%s) m=%d>" % (self.kind, self.witness, self.ext)
        return "<FlexyVerdict %s m=%d>" % (self.kind, self.ext)


def _powers(params, e):
    return np.array([params.cpow(a, e) for a in range(params.q)], dtype=np.int64)


def _eval_codes(poly, params, xs, ys, zs):
    """Values of poly at code arrays xs, ys, zs, as a code array."""
    if params.q <= TABLE_LIMIT:
        t = field_tables(params)
        pw = {}
        acc = np.zeros(len(xs), dtype=np.int64)
        for e, c in poly.code_terms():
            v = np.full(len(xs), c, dtype=np.int64)
            for coord, k in zip((xs, ys, zs), e):
                if k:
                    if k not in pw:
                        pw[k] = _powers(params, k)
                    v = t.mul[v, pw[k][coord]]
            acc = t.add[acc, v]
        return acc
    ev = poly.evaluator()
    return np.array(
        [ev(int(a), int(b), int(c)) for a, b, c in zip(xs, ys, zs)], dtype=np.int64
    )


class _Scan(object):
    """Points of X over one extension, with jet data for classification."""

    def __init__(self, surface, m, budget=None):
        self.params = params = extension(surface.params, m)
        self.m = m
        q = params.q
        check_budget("points of GF(%d)^%d" % (q, surface.ambient), q ** surface.ambient, budget)
        f = surface.f.rebase(params)
        r = np.arange(q, dtype=np.int64)
        if surface.ambient == 3:
            grid = np.meshgrid(r, r, r, indexing="ij")
            xs, ys, zs = (g.ravel() for g in grid)
        else:
            grid = np.meshgrid(r, r, indexing="ij")
            xs, ys = (g.ravel() for g in grid)
            zs = np.zeros(len(xs), dtype=np.int64)
        on = np.nonzero(_eval_codes(f, params, xs, ys, zs) == 0)[0]
        self.codes = np.stack([xs[on], ys[on], zs[on]], axis=1)
        pts = (self.codes[:, 0], self.codes[:, 1], self.codes[:, 2])
        self.first = np.stack(
            [_eval_codes(hasse(f, a), params, *pts) for a in FIRST], axis=1
        )
        self.second = np.stack(
            [_eval_codes(hasse(f, a), params, *pts) for a in SECOND], axis=1
        )
        self.index = {tuple(int(c) for c in row): i for i, row in enumerate(self.codes)}
        self._classes = {}

    def __len__(self):
        return len(self.codes)

    def point(self, i):
        return Point3(*(FieldElem(self.params, int(c)) for c in self.codes[i]))

    def jet(self, i):
        params = self.params
        f1 = MultiPoly._raw(
            params, {e: int(c) for e, c in zip(FIRST, self.first[i]) if c}
        )
        f2 = MultiPoly._raw(
            params, {e: int(c) for e, c in zip(SECOND, self.second[i]) if c}
        )
        return (f1, f2)

    def classify(self, i):
        if i not in self._classes:
            self._classes[i] = classify_jet(*self.jet(i))
        return self._classes[i]

    def classify_code(self, key):
        i = self.index.get(key)
        if i is None:
            return None
        return self.classify(i)


class Surface(object):
    """X = V(f).  With ambient=2, f is a plane curve in x, y sitting in z = 0."""

    def __init__(
        self,
        f,
        ambient=3,
        attested_reduced=False,
        attested_irreducible=False,
        name=None,
    ):
        if f.is_constant():
            raise ValueError("A surface needs a non-constant polynomial, got %s" % f)
        if ambient not in (2, 3):
            raise ValueError("Ambient dimension must be 2 or 3")
        if ambient == 2 and "z" in f.variables():
            raise ValueError("A plane curve may only use x and y: %s" % f)
        self.f = f
        self.ambient = ambient
        self.attested_reduced = attested_reduced
        self.attested_irreducible = attested_irreducible
        self.name = name
        self._scans = {}
        self._lines = None

    @property
    def params(self):
        return self.f.params

    @property
    def degree(self):
        return self.f.degree

    def scan(self, m=1, budget=None):
        if m not in self._scans:
            self._scans[m] = _Scan(self, m, budget)
        return self._scans[m]

    def __str__(self):
        return self.name or str(self.f)

    def __repr__(self):
        return "<Surface %s over %s>" % (self.f, self.params)


def rational_points(X, ext=1, budget=None):
    """Points of X over GF(q^ext), sorted by coordinate codes."""
    scan = X.scan(ext, budget)
    return [scan.point(i) for i in range(len(scan))]


def _line_directions(X):
    for d in projective_triples(X.params):
        if X.ambient == 2 and d[2]:
            continue
        yield d


def lines_in(X, budget=None, point_budget=None):
    """Lines contained in X as varieties, sorted.

    budget caps the lines examined; point_budget caps the rational point
    scan the search runs on.

    A line is a candidate when all of its q rational points lie on X; it is
    kept only if the restriction of f to it is formally zero.
    """
    if X._lines is not None:
        return list(X._lines)
    params = X.params
    q = params.q
    total = q * (q + 1) if X.ambient == 2 else q * q * (q * q + q + 1)
    check_budget("lines of AG(%d,%d)" % (X.ambient, q), total, budget)
    scan = X.scan(1, point_budget)
    mask = np.zeros(q ** 3, dtype=bool)
    if len(scan):
        c = scan.codes
        mask[(c[:, 0] * q + c[:, 1]) * q + c[:, 2]] = True
    t = field_tables(params) if q <= TABLE_LIMIT else None
    r = np.arange(q, dtype=np.int64)
    out = []
    for d in _line_directions(X):
        pivot = next(i for i, c in enumerate(d) if c)
        free = [i for i in range(3) if i != pivot]
        if X.ambient == 2:
            free = [i for i in free if i != 2]
        grid = np.meshgrid(*([r] * len(free)), indexing="ij")
        bases = np.zeros((grid[0].size, 3), dtype=np.int64)
        for i, g in zip(free, grid):
            bases[:, i] = g.ravel()
        if t is not None:
            pts = [
                t.add[bases[:, v][:, None], t.mul[r[None, :], d[v].code]]
                for v in range(3)
            ]
        else:
            pts = [
                np.array(
                    [[params.cadd(int(b), params.cmul(s, d[v].code)) for s in range(q)] for b in bases[:, v]],
                    dtype=np.int64,
                )
                for v in range(3)
            ]
        idx = (pts[0] * q + pts[1]) * q + pts[2]
        for row in np.nonzero(mask[idx].all(axis=1))[0]:
            base = Point3(*(FieldElem(params, int(c)) for c in bases[row]))
            line = Line3._canonical(base, d)
            if contains_line(X.f, line):
                out.append(line)
    out.sort()
    X._lines = tuple(out)
    logger.debug("%d lines in %s", len(out), X)
    return out


def contains_line(f, line):
    return restrict_to_line(f, line).is_zero()


def classify_jet(f1, f2):
    if f1.is_zero():
        return PointClass.SINGULAR
    if linear_divides(f1, f2):
        return PointClass.FLEXY
    return PointClass.SMOOTH_NON_FLEXY


def classify_point(X, pt, jet=None):
    pt = tuple(pt)
    if len(pt) == 2:
        pt += (pt[0].params.zero,)
    if not X.f.evaluate(pt).code == 0:
        raise NotOnSurface("%s is not on %s" % (",".join(map(str, pt)), X))
    if jet is None:
        jet = taylor_jet(X.f, pt)
    return classify_jet(jet.f1, jet.f2)


def classify_all(X, ext=1, budget=None):
    """Histogram of point classes over GF(q^ext)."""
    scan = X.scan(ext, budget)
    out = {c: 0 for c in PointClass}
    for i in range(len(scan)):
        out[scan.classify(i)] += 1
    return out


def singular_points(X, ext=1, budget=None):
    scan = X.scan(ext, budget)
    return [scan.point(i) for i in np.nonzero(~scan.first.any(axis=1))[0]]


def is_flexy_surface(X, ext=2, budget=None):
    """FlexyEvidence, NotFlexy with the first smooth non-flexy witness, or
    Undetermined when X has no smooth point over GF(q^ext)."""
    scan = X.scan(ext, budget)
    smooth = singular = 0
    for i in range(len(scan)):
        cls = scan.classify(i)
        if cls is PointClass.SINGULAR:
            singular += 1
        elif cls is PointClass.FLEXY:
            smooth += 1
        else:
            return FlexyVerdict(
                NOT_FLEXY, ext, scan.point(i), i + 1, smooth + 1, singular
            )
    if not smooth:
        return FlexyVerdict(UNDETERMINED, ext, None, len(scan), 0, singular)
    return FlexyVerdict(FLEXY_EVIDENCE, ext, None, len(scan), smooth, singular)


def curve_G(F, mode="hasse"):
    """F_x^2 F_yy/2 + F_y^2 F_xx/2 - F_x F_y F_xy for a plane curve F(x, y)."""
    if "z" in F.variables():
        raise ValueError("curve_G needs a polynomial in x and y only: %s" % F)
    fx = partial(F, "x")
    fy = partial(F, "y")
    fxy = partial(fx, "y")
    return (
        fx * fx * divided_second(F, "y", mode)
        + fy * fy * divided_second(F, "x", mode)
        - fx * fy * fxy
    )


def verify_irreducible(X):
    """True/False for degree <= 2 (no linear factor over GF(q)); None above."""
    if X.degree == 1:
        return True
    if X.degree == 2:
        return not linear_factors(X.f).factors
    return None


class BadLineCensus(object):
    def __init__(self, degree, ext, lines_total, singular_lines, flexy_lines):
        self.degree = degree
        self.ext = ext
        self.lines_total = lines_total
        self.singular_lines = singular_lines
        self.flexy_lines = flexy_lines

    @property
    def singular_bound(self):
        return self.degree * (self.degree - 1)

    @property
    def flexy_bound(self):
        return self.degree * (3 * self.degree - 4)

    @property
    def total_bound(self):
        return 4 * self.degree ** 2

    def within_bounds(self):
        l1, l2 = len(self.singular_lines), len(self.flexy_lines)
        return (
            l1 <= self.singular_bound
            and l2 <= self.flexy_bound
            and l1 + l2 < self.total_bound
        )

    def to_dict(self):
        return {
            "degree": self.degree,
            "ext": self.ext,
            "lines": self.lines_total,
            "L1": len(self.singular_lines),
            "L1_bound": self.singular_bound,
            "L2": len(self.flexy_lines),
            "L2_bound": self.flexy_bound,
            "total_bound": self.total_bound,
            "within_bounds": self.within_bounds(),
        }


def bad_line_census(X, ext=1, budget=None):
    """Contained lines with >= d singular points (L1) or >= 3d-3 flexy points
    (L2), counted over GF(q^ext)."""
    d = X.degree
    if d <= 1:
        raise PreconditionError("Census needs degree > 1, got %d" % d)
    checked = verify_irreducible(X)
    if checked is False:
        raise PreconditionError("%s has a linear factor" % X)
    if not (X.attested_irreducible and X.attested_reduced) and checked is None:
        raise PreconditionError(
            "%s is not attested reduced and irreducible" % X
        )
    verdict = is_flexy_surface(X, ext, budget)
    if verdict.kind != NOT_FLEXY:
        raise PreconditionError(
            "%s is not shown non-flexy over GF(%d): %s"
            % (X, X.params.q ** ext, verdict.kind)
        )
    scan = X.scan(ext, budget)
    lines = lines_in(X, point_budget=budget)
    singular_lines = []
    flexy_lines = []
    for line in lines:
        counts = {c: 0 for c in PointClass}
        for pt in points_on(line.embed(scan.params)):
            counts[scan.classify_code(pt.key())] += 1
        if counts[PointClass.SINGULAR] >= d:
            singular_lines.append(line)
        if counts[PointClass.FLEXY] >= 3 * d - 3:
            flexy_lines.append(line)
    return BadLineCensus(d, ext, len(lines), singular_lines, flexy_lines)
