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
Points, lines and planes of AG(3,q) in canonical form, plus the incidence
statistics used by the Wolff and Kakeya predicates.

A line is stored as (base, dir) with dir scaled so its first nonzero
coordinate (the pivot) is 1 and base chosen with a zero pivot coordinate, so
two Line3 values describe the same point set iff they compare equal.
"""

import functools
import itertools
from collections import Counter

from flexygeom.bitvector import point_index, pointset, population
from flexygeom.field import FieldMismatch, embed

__all__ = [
    "Point3",
    "Line3",
    "PlaneAff",
    "DirectionPt",
    "IncidenceStats",
    "SamePointError",
    "SameLineError",
    "plane_through",
    "projective_triples",
    "points_on",
    "line_through",
    "all_points",
    "all_lines",
    "all_planes",
    "line_in_plane",
    "planes_through",
    "max_lines_per_plane",
    "direction",
    "kakeya_check",
    "wolff_check",
    "union_points",
    "incidence_count",
    "incidence_count_transposed",
    "incidence_stats",
]


class SamePointError(ValueError):
    pass


class SameLineError(ValueError):
    pass


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _normalize(triple):
    """Scales a nonzero triple so its first nonzero entry is 1."""
    for c in triple:
        if c:
            s = c.inv()
            return tuple(t * s for t in triple)
    raise ValueError("Zero triple has no projective class")


class Point3(object):
    __slots__ = ("x", "y", "z")

    def __init__(self, x, y, z):
        if not (x.params == y.params == z.params):
            raise FieldMismatch("Point coordinates from different fields")
        self.x = x
        self.y = y
        self.z = z

    def __reduce__(self):
        return (Point3, (self.x, self.y, self.z))

    @classmethod
    def of(cls, params, x, y, z):
        return cls(params(x), params(y), params(z))

    @property
    def params(self):
        return self.x.params

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def __getitem__(self, i):
        return (self.x, self.y, self.z)[i]

    def key(self):
        return (self.x.code, self.y.code, self.z.code)

    def __eq__(self, other):
        return isinstance(other, Point3) and self.key() == other.key()

    def __ne__(self, other):
        return not self == other

    def __lt__(self, other):
        return self.key() < other.key()

    def __hash__(self):
        return hash(self.key())

    def __add__(self, other):
        return Point3(self.x + other[0], self.y + other[1], self.z + other[2])

    def embed(self, ext):
        return Point3(embed(self.x, ext), embed(self.y, ext), embed(self.z, ext))

    def __str__(self):
        return "%s,%s,%s" % (self.x, self.y, self.z)

    def __repr__(self):
        return "<Point3 %s>" % self


class DirectionPt(object):
    """A point of the plane at infinity: a direction up to scalar."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = _normalize(tuple(coords))

    def key(self):
        return tuple(c.code for c in self.coords)

    def __eq__(self, other):
        return isinstance(other, DirectionPt) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return self.key() < other.key()

    def __str__(self):
        return "[%s]" % ":".join(str(c) for c in self.coords)


class Line3(object):
    __slots__ = ("base", "dir")

    def __init__(self, base, direction):
        direction = _normalize(tuple(direction))
        pivot = next(i for i, c in enumerate(direction) if c)
        s = base[pivot]
        self.base = Point3(*(b - s * d for b, d in zip(base, direction)))
        self.dir = direction

    def __reduce__(self):
        return (Line3, (self.base, self.dir))

    @classmethod
    def _canonical(cls, base, direction):
        obj = cls.__new__(cls)
        obj.base = base
        obj.dir = direction
        return obj

    @classmethod
    def from_family(cls, a, b, u, v):
        """L_(a,b,u,v) = {(a,b,0) + t(u,v,1)}."""
        params = a.params
        return cls(Point3(a, b, params.zero), (u, v, params.one))

    def family_params(self):
        """(a, b, u, v) if the line meets the xy-plane transversely, else None."""
        dz = self.dir[2]
        if not dz:
            return None
        d = tuple(c / dz for c in self.dir)
        t = self.base.z
        return (self.base.x - t * d[0], self.base.y - t * d[1], d[0], d[1])

    @property
    def params(self):
        return self.base.params

    def key(self):
        return self.base.key() + tuple(c.code for c in self.dir)

    def __eq__(self, other):
        return isinstance(other, Line3) and self.key() == other.key()

    def __ne__(self, other):
        return not self == other

    def __lt__(self, other):
        return self.key() < other.key()

    def __hash__(self):
        return hash(self.key())

    def point_at(self, t):
        return Point3(*(b + t * d for b, d in zip(self.base, self.dir)))

    def contains(self, pt):
        diff = [a - b for a, b in zip(pt, self.base)]
        pivot = next(i for i, c in enumerate(self.dir) if c)
        t = diff[pivot]
        return all(diff[i] == t * self.dir[i] for i in range(3))

    def is_transversal(self):
        return bool(self.dir[2])

    def embed(self, ext):
        return Line3._canonical(
            self.base.embed(ext), tuple(embed(c, ext) for c in self.dir)
        )

    def __str__(self):
        return "%s;%s" % (self.base, ",".join(str(c) for c in self.dir))

    def __repr__(self):
        return "<Line3 %s>" % self


class PlaneAff(object):
    """normal . (x, y, z) == offset, normal's first nonzero coordinate 1."""

    __slots__ = ("normal", "offset")

    def __init__(self, normal, offset):
        normal = tuple(normal)
        for c in normal:
            if c:
                s = c.inv()
                break
        else:
            raise ValueError("Plane normal must be nonzero")
        self.normal = tuple(c * s for c in normal)
        self.offset = offset * s

    @classmethod
    def _canonical(cls, normal, offset):
        obj = cls.__new__(cls)
        obj.normal = normal
        obj.offset = offset
        return obj

    def key(self):
        return tuple(c.code for c in self.normal) + (self.offset.code,)

    def __eq__(self, other):
        return isinstance(other, PlaneAff) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return self.key() < other.key()

    def contains(self, pt):
        return _dot(self.normal, tuple(pt)) == self.offset

    def __str__(self):
        terms = ["%s*%s" % (c, v) for c, v in zip(self.normal, "xyz") if c]
        return "%s = %s" % (" + ".join(terms), self.offset)

    def __repr__(self):
        return "<PlaneAff %s>" % self


@functools.lru_cache(maxsize=None)
def projective_triples(params):
    """Normalized nonzero triples: the q^2+q+1 points of PG(2,q)."""
    zero, one = params.zero, params.one
    els = params.elements()
    out = [(one, a, b) for a in els for b in els]
    out.extend((zero, one, b) for b in els)
    out.append((zero, zero, one))
    return tuple(out)


def points_on(line):
    return [line.point_at(t) for t in line.params.elements()]


def line_through(p, r):
    if p == r:
        raise SamePointError("Need two distinct points, got %s twice" % (p,))
    return Line3(p, tuple(b - a for a, b in zip(p, r)))


def plane_through(line, pt):
    """The plane spanned by `line` and a point off it."""
    if line.contains(pt):
        raise SameLineError("%s lies on %s" % (pt, line))
    w = tuple(a - b for a, b in zip(pt, line.base))
    d = line.dir
    normal = (
        d[1] * w[2] - d[2] * w[1],
        d[2] * w[0] - d[0] * w[2],
        d[0] * w[1] - d[1] * w[0],
    )
    return PlaneAff(normal, _dot(normal, tuple(pt)))


def all_points(params):
    els = params.elements()
    for x, y, z in itertools.product(els, repeat=3):
        yield Point3(x, y, z)


def all_lines(params):
    """Direction classes times base points with zero pivot coordinate."""
    els = params.elements()
    zero = params.zero
    for d in projective_triples(params):
        pivot = next(i for i, c in enumerate(d) if c)
        for a, b in itertools.product(els, repeat=2):
            coords = [a, b]
            coords.insert(pivot, zero)
            yield Line3._canonical(Point3(*coords), d)


def all_planes(params):
    for normal in projective_triples(params):
        for offset in params.elements():
            yield PlaneAff._canonical(normal, offset)


def line_in_plane(line, plane):
    return not _dot(plane.normal, line.dir) and plane.contains(line.base)


def planes_through(line):
    """The q+1 planes containing `line`."""
    out = []
    for normal in projective_triples(line.params):
        if not _dot(normal, line.dir):
            out.append(PlaneAff._canonical(normal, _dot(normal, tuple(line.base))))
    return out


def _plane_tally(lines):
    tally = Counter()
    for line in lines:
        for plane in planes_through(line):
            tally[plane] += 1
    return tally


def _best_plane(tally):
    if not tally:
        return (0, None)
    best = max(tally.values())
    witness = min(p for p, c in tally.items() if c == best)
    return (best, witness)


def max_lines_per_plane(lines):
    """(count, witness plane); planes holding no line count as zero."""
    return _best_plane(_plane_tally(set(lines)))


def direction(line):
    return DirectionPt(line.dir)


def kakeya_check(lines):
    lines = set(lines)
    return len({direction(l) for l in lines}) == len(lines)


def wolff_check(lines, bound):
    """(passed, count, witness); the witness is a plane over the bound."""
    count, witness = max_lines_per_plane(lines)
    if count <= bound:
        return (True, count, None)
    return (False, count, witness)


def union_points(lines):
    out = set()
    for line in lines:
        out.update(points_on(line))
    return out


def _line_bits(line):
    return pointset(points_on(line))


def incidence_count(points, lines):
    s = pointset(points)
    return sum(population(s & _line_bits(line)) for line in set(lines))


def incidence_count_transposed(points, lines):
    """Point-major accumulation of the same count."""
    lines = list(set(lines))
    return sum(sum(1 for line in lines if line.contains(pt)) for pt in set(points))


class IncidenceStats(object):
    __slots__ = (
        "points",
        "lines",
        "incidences",
        "max_per_plane",
        "directions",
        "union",
    )

    def __init__(self, points, lines, incidences, max_per_plane, directions, union):
        self.points = points
        self.lines = lines
        self.incidences = incidences
        self.max_per_plane = max_per_plane
        self.directions = directions
        self.union = union
        assert incidences <= points * lines

    def to_dict(self):
        return {k: getattr(self, k) for k in self.__slots__}

    def __eq__(self, other):
        return isinstance(other, IncidenceStats) and self.to_dict() == other.to_dict()

    def __repr__(self):
        return "<IncidenceStats %r>" % (self.to_dict(),)


class _Tally(object):
    """Partial counts for a chunk of lines; `merge` is associative."""

    def __init__(self, planes=None, union=0, directions=None, incidences=0):
        self.planes = planes if planes is not None else Counter()
        self.union = union
        self.directions = directions if directions is not None else set()
        self.incidences = incidences

    def merge(self, other):
        return _Tally(
            self.planes + other.planes,
            self.union | other.union,
            self.directions | other.directions,
            self.incidences + other.incidences,
        )


def _tally_chunk(args):
    point_bits, lines = args
    union = 0
    incidences = 0
    for line in lines:
        bits = _line_bits(line)
        union |= bits
        incidences += population(point_bits & bits)
    return _Tally(
        _plane_tally(lines), union, {direction(l) for l in lines}, incidences
    )


def incidence_stats(points, lines, imap=map, chunk_size=64):
    """IncidenceStats for S and L; `imap` may be a pool's imap."""
    points = set(points)
    lines = sorted(set(lines))
    point_bits = pointset(points)
    chunks = [
        (point_bits, lines[i : i + chunk_size])
        for i in range(0, len(lines), chunk_size)
    ]
    total = _Tally()
    for part in imap(_tally_chunk, chunks):
        total = total.merge(part)
    best, _ = _best_plane(total.planes)
    return IncidenceStats(
        len(points),
        len(lines),
        total.incidences,
        best,
        len(total.directions),
        population(total.union),
    )


