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
Polynomial-method machinery: vanishing polynomials through point sets, the
line/point decomposition pipeline with its ledger of exact inequalities, the
Kakeya surface bound and the plane/flexy-surface hypothesis checks.

Every inequality is evaluated with Fraction; those involving cube roots are
compared after cubing both sides.
"""

import logging
import math
from collections import Counter
from fractions import Fraction

from flexygeom.geom import kakeya_check, max_lines_per_plane, points_on, direction
from flexygeom.linalg import evaluation_matrix, kernel_vector, monomials
from flexygeom.mpoly import MultiPoly, linear_factors
from flexygeom.surface import FLEXY_EVIDENCE, contains_line
from flexygeom.util import PreconditionError, cube_ge, cube_le, fmt_fraction

logger = logging.getLogger(__name__)

__all__ = [
    "NotKakeya",
    "DecompositionConstants",
    "LedgerLine",
    "DecompositionState",
    "FailureDiagnostics",
    "HypothesisReport",
    "vanishing_poly",
    "min_degree_vanishing",
    "kakeya_surface_bound",
    "check_theorem_hypotheses",
    "decompose",
]


class NotKakeya(ValueError):
    pass


def vanishing_poly(S, d, params=None):
    """A nonzero polynomial of degree <= d vanishing on S, or None.

    The coefficient vector is the first kernel vector of the evaluation
    matrix with columns in ascending graded order.  Columns past the first
    degree e with C(e+3,3) > |S| never hold the first free column, so they
    are left out.
    """
    S = sorted(set(S))
    if params is None:
        if not S:
            raise ValueError("Cannot infer the field of an empty point set")
        params = S[0].params
    e = d
    for k in range(d + 1):
        if math.comb(k + 3, 3) > len(S):
            e = k
            break
    monos = monomials(e)
    vec = kernel_vector(evaluation_matrix(S, monos, params), params)
    if vec is None:
        return None
    P = MultiPoly._raw(params, {m: c for m, c in zip(monos, vec) if c})
    bad = [pt for pt in S if P.evaluate(pt)]
    if bad:
        raise RuntimeError("Kernel vector %s does not vanish at %s" % (P, bad[0]))
    return P


def min_degree_vanishing(S):
    """(d, P) with d the smallest degree admitting a vanishing polynomial."""
    S = sorted(set(S))
    if not S:
        raise ValueError("Need a nonempty point set")
    d = 1
    while True:
        P = vanishing_poly(S, d)
        if P is not None:
            return (d, P)
        d += 1


def kakeya_surface_bound(X, L):
    """Lines of a Kakeya set L inside X, against the bound d(q+1)."""
    L = sorted(set(L))
    if not kakeya_check(L):
        raise NotKakeya("Lines do not have pairwise distinct directions")
    contained = [l for l in L if contains_line(X.f, l)]
    top = X.f.homogeneous_part(X.degree)
    bound = X.degree * (X.params.q + 1)
    return {
        "surface": str(X.f),
        "degree": X.degree,
        "lines": len(L),
        "contained": len(contained),
        "bound": bound,
        "passed": len(contained) <= bound,
        "directions": sorted(str(direction(l)) for l in contained),
        # a contained line meets the plane at infinity on the top form's zero set
        "directions_on_top_form": all(not top.evaluate(l.dir) for l in contained),
    }


class HypothesisReport(object):
    def __init__(self, N, plane_count, plane_witness, flexy):
        self.N = N
        self.plane_count = plane_count
        self.plane_bound = 2 * N
        self.plane_witness = plane_witness
        self.flexy = flexy

    @property
    def plane_passed(self):
        return self.plane_count <= self.plane_bound

    @property
    def unverified(self):
        return not self.flexy

    @property
    def passed(self):
        return self.plane_passed and all(f["passed"] for f in self.flexy)

    def to_dict(self):
        return {
            "N": self.N,
            "plane": {
                "max_per_plane": self.plane_count,
                "bound": self.plane_bound,
                "passed": self.plane_passed,
                "witness": None if self.plane_passed else str(self.plane_witness),
            },
            "flexy": self.flexy,
            "flexy_unverified": self.unverified,
            "passed": self.passed,
        }


def check_theorem_hypotheses(L, N, candidates=()):
    """Checks at most 2N lines per plane, and at most 2Nd lines in each
    candidate (surface, verdict) pair whose verdict is flexy evidence."""
    L = sorted(set(L))
    count, witness = max_lines_per_plane(L)
    flexy = []
    for X, verdict in candidates:
        inside = sum(1 for l in L if contains_line(X.f, l))
        bound = 2 * N * X.degree
        applicable = verdict.kind == FLEXY_EVIDENCE
        flexy.append(
            {
                "surface": str(X),
                "degree": X.degree,
                "verdict": verdict.kind,
                "lines_in_surface": inside,
                "bound": bound,
                "applicable": applicable,
                "passed": inside <= bound or not applicable,
            }
        )
    return HypothesisReport(N, count, witness, flexy)


def _positive(name, value):
    value = Fraction(value)
    if value <= 0:
        raise ValueError("%s must be positive, got %s" % (name, value))
    return value


class DecompositionConstants(object):
    def __init__(
        self,
        K=None,
        bucket_factor=Fraction(1, 1000),
        fit_factor=25,
        lprime_factor=100,
        ldouble_factor=10,
        degree_cap=Fraction(1, 4),
    ):
        self.K = None if K is None else _positive("K", K)
        self.bucket_factor = _positive("bucket factor", bucket_factor)
        self.fit_factor = _positive("fit factor", fit_factor)
        self.lprime_factor = _positive("L' factor", lprime_factor)
        self.ldouble_factor = _positive("L'' factor", ldouble_factor)
        self.degree_cap = _positive("degree cap", degree_cap)
        if self.bucket_factor >= 1:
            raise ValueError("Bucket factor must be below 1")

    def to_dict(self):
        return {
            "K": None if self.K is None else fmt_fraction(self.K),
            "bucket_factor": fmt_fraction(self.bucket_factor),
            "fit_factor": fmt_fraction(self.fit_factor),
            "lprime_factor": fmt_fraction(self.lprime_factor),
            "ldouble_factor": fmt_fraction(self.ldouble_factor),
            "degree_cap": fmt_fraction(self.degree_cap),
        }


def _show(value):
    if value is None:
        return None
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, Fraction)):
        return fmt_fraction(value)
    return str(value)


class LedgerLine(object):
    __slots__ = ("name", "relation", "left", "right", "passed", "informational")

    def __init__(self, name, relation, left, right, passed, informational=False):
        self.name = name
        self.relation = relation
        self.left = left
        self.right = right
        self.passed = passed
        self.informational = informational

    def to_dict(self):
        return {
            "name": self.name,
            "relation": self.relation,
            "left": _show(self.left),
            "right": _show(self.right),
            "passed": self.passed,
            "informational": self.informational,
        }

    def __repr__(self):
        return "<LedgerLine %s: %s %s %s %s>" % (
            self.name,
            _show(self.left),
            self.relation,
            _show(self.right),
            "ok" if self.passed else "FAIL",
        )


class _Ledger(object):
    def __init__(self):
        self.lines = []

    def compare(self, name, left, relation, right, informational=False):
        left, right = Fraction(left), Fraction(right)
        passed = {
            "=": left == right,
            "<=": left <= right,
            ">=": left >= right,
        }[relation]
        self.lines.append(LedgerLine(name, relation, left, right, passed, informational))

    def cube(self, name, left, relation, right_cubed):
        """left against the cube root of right_cubed."""
        passed = (cube_le if relation == "<=" else cube_ge)(left, right_cubed)
        shown = "(%s)^(1/3)" % fmt_fraction(right_cubed)
        self.lines.append(LedgerLine(name, relation, Fraction(left), shown, passed))

    def holds(self, name, value):
        self.lines.append(LedgerLine(name, "holds", value, True, bool(value)))

    def unreached(self, name, relation):
        self.lines.append(LedgerLine(name, relation, None, None, False))


# Ledger names in pipeline order; stages that never run still get a line.
LEDGER = (
    ("I(S,L) = |L|*N", "="),
    ("|L| = N^2", "="),
    ("I(S\\S_v,L) <= |S|*K*bf", "<="),
    ("I(S_v,L) >= (1-bf)*N^3", ">="),
    ("I(S_j,L) point-major = line-major", "="),
    ("I(S_j,L) >= (1-bf)*N^3/(2*j^2)", ">="),
    ("|S_j| >= (1-bf)*N^3/(2*K*bf*2^j*j^2)", ">="),
    ("|S_j| <= N^3/(K*bf*2^(j-1))", "<="),
    ("deg P <= fit*N/(K*2^j)^(1/3)", "<="),
    ("P fitted within the degree cap", "holds"),
    ("sum d_l <= fit*N/(K*2^j)^(1/3)", "<="),
    ("sum |S_j,l| >= |S_j|", ">="),
    ("|S_j,l| >= d*|S_j|_min/(fit*N/(K*2^j)^(1/3))", ">="),
    ("d <= cap*N", "<="),
    ("I(S_j,l,L\\L') <= L'f*d*|L|", "<="),
    ("I(S_j,l\\S',L') <= 2*|S_j,l|", "<="),
    ("I(S',L'\\L'') <= L''f*d*|L|", "<="),
    ("I(S',L'') >= |S_j,l|*2^(j-1)*K*bf - (L'f+L''f)*d*|L| - 2*|S_j,l|", ">="),
    ("I(S',L'') >= 2*N^2*d", ">="),
    ("|L''| >= 2*N*d", ">="),
    ("every line of L'' lies in X", "holds"),
    ("every point of S' is on >= 3 lines of L'", "holds"),
)


class DecompositionState(object):
    """Snapshot of every stage of one decomposition run."""

    def __init__(self, **fields):
        self.__dict__.update(fields)

    @property
    def ledger_ok(self):
        return all(l.passed for l in self.ledger if not l.informational)

    def first_failure(self):
        for line in self.ledger:
            if not line.passed and not line.informational:
                return line
        return None

    def to_dict(self):
        out = {}
        for k, v in sorted(self.__dict__.items()):
            if k == "ledger":
                v = [l.to_dict() for l in v]
            out[k] = v
        return out


class FailureDiagnostics(object):
    ok = False

    def __init__(self, state):
        self.state = state
        self.first_failure = state.first_failure()

    @property
    def ledger(self):
        return self.state.ledger

    def to_dict(self):
        return {
            "ok": False,
            "first_failure": self.first_failure.to_dict(),
            "state": self.state.to_dict(),
        }


def _ceil_cube_root(x):
    """Smallest integer D >= 1 with D^3 >= x."""
    x = Fraction(x)
    d = max(1, int(round(float(x) ** (1.0 / 3))))
    while d ** 3 < x:
        d += 1
    while d > 1 and (d - 1) ** 3 >= x:
        d -= 1
    return d


def _incidences(distinguished, lines, pts):
    return sum(1 for l in lines for x in distinguished[l] if x in pts)


def decompose(S, L, N, constants=None):
    """Runs the decomposition on S and L and returns the stage snapshot, or
    FailureDiagnostics naming the first ledger inequality that fails."""
    const = constants or DecompositionConstants()
    points = sorted(set(S))
    lines = sorted(set(L))
    if not points or not lines:
        raise PreconditionError("Need nonempty S and L")
    if N < 1:
        raise PreconditionError("N must be positive")
    members = set(points)

    # N smallest points of S on each line
    distinguished = {}
    for line in lines:
        on = sorted(pt for pt in points_on(line) if pt in members)
        if len(on) < N:
            raise PreconditionError(
                "%s carries %d points of S, need %d" % (line, len(on), N)
            )
        distinguished[line] = on[:N]
    v = Counter()
    for chosen in distinguished.values():
        v.update(chosen)

    K = const.K if const.K is not None else Fraction(N ** 3, len(points))
    bf = const.bucket_factor
    t = K * bf
    ledger = _Ledger()
    total = sum(v.values())
    ledger.compare("I(S,L) = |L|*N", total, "=", len(lines) * N)
    ledger.compare("|L| = N^2", len(lines), "=", N * N, informational=True)
    high = [x for x in points if v[x] >= t]
    ledger.compare(
        "I(S\\S_v,L) <= |S|*K*bf", total - sum(v[x] for x in high), "<=", len(points) * t
    )
    ledger.compare(
        "I(S_v,L) >= (1-bf)*N^3", sum(v[x] for x in high), ">=", (1 - bf) * N ** 3
    )

    # half-open buckets [2^(j-1) t, 2^j t)
    buckets = {}
    for x in high:
        j = 1
        while v[x] >= 2 ** j * t:
            j += 1
        buckets.setdefault(j, []).append(x)

    state = DecompositionState(
        N=N,
        K=fmt_fraction(K),
        constants=const.to_dict(),
        points=len(points),
        lines=len(lines),
        incidences=total,
        multiplicities={str(k): c for k, c in sorted(Counter(v[x] for x in points).items())},
        high_multiplicity=len(high),
        buckets={
            str(j): {"size": len(xs), "incidences": sum(v[x] for x in xs)}
            for j, xs in sorted(buckets.items())
        },
    )
    state.ledger = ledger.lines

    if not buckets:
        logger.warning("No point reaches multiplicity %s; nothing to bucket", fmt_fraction(t))
        state.j = None
        state.ok = False
        for name, relation in LEDGER[len(ledger.lines) :]:
            ledger.unreached(name, relation)
        return FailureDiagnostics(state)

    def need(j):
        return (1 - bf) * N ** 3 / (2 * j * j)

    j = next(
        (j for j in range(1, max(buckets) + 1) if sum(v[x] for x in buckets.get(j, ())) >= need(j)),
        None,
    )
    state.j_threshold_met = j is not None
    if j is None:
        j = max(sorted(buckets), key=lambda k: Fraction(sum(v[x] for x in buckets[k])) / need(k))
        state.j_deficit = fmt_fraction(need(j) - sum(v[x] for x in buckets[j]))
    state.j = j
    bucket = buckets[j]
    in_bucket = set(bucket)
    point_major = sum(v[x] for x in bucket)
    line_major = _incidences(distinguished, lines, in_bucket)
    assert point_major == line_major, (point_major, line_major)
    ledger.compare("I(S_j,L) point-major = line-major", point_major, "=", line_major)
    ledger.compare("I(S_j,L) >= (1-bf)*N^3/(2*j^2)", point_major, ">=", need(j))
    size_floor = (1 - bf) * N ** 3 / (2 * K * bf * 2 ** j * j * j)
    ledger.compare("|S_j| >= (1-bf)*N^3/(2*K*bf*2^j*j^2)", len(bucket), ">=", size_floor)
    ledger.compare(
        "|S_j| <= N^3/(K*bf*2^(j-1))", len(bucket), "<=", N ** 3 / (t * 2 ** (j - 1))
    )

    # fit: degree cap D with D^3 >= (fit*N)^3 / (K*2^j)
    cap_cubed = (const.fit_factor * N) ** 3 / (K * 2 ** j)
    cap = _ceil_cube_root(cap_cubed)
    P = vanishing_poly(bucket, cap)
    fitted = P is not None
    if not fitted:
        logger.warning("No vanishing polynomial of degree <= %d on S_%d", cap, j)
        _, P = min_degree_vanishing(bucket)
    state.fit_degree_cap = cap
    state.P = str(P)
    ledger.cube("deg P <= fit*N/(K*2^j)^(1/3)", P.degree, "<=", cap_cubed)
    ledger.holds("P fitted within the degree cap", fitted)

    factored = linear_factors(P)
    components = [l for l, _ in factored.factors]
    state.repeated_linear = [str(l) for l, m in factored.factors if m > 1]
    state.nonlinear_component = not factored.remainder.is_constant()
    if state.nonlinear_component:
        logger.warning(
            "Treating %s as one irreducible component without proof", factored.remainder
        )
        components.append(factored.remainder)
    parts = []
    for comp in components:
        ev = comp.evaluator()
        parts.append([x for x in bucket if not ev(*x.key())])
    state.components = [
        {"polynomial": str(c), "degree": c.degree, "points": len(part)}
        for c, part in zip(components, parts)
    ]
    ledger.cube(
        "sum d_l <= fit*N/(K*2^j)^(1/3)", sum(c.degree for c in components), "<=", cap_cubed
    )
    ledger.compare("sum |S_j,l| >= |S_j|", sum(len(p) for p in parts), ">=", len(bucket))
    best = max(
        range(len(components)),
        key=lambda i: (Fraction(len(parts[i]), components[i].degree), -i),
    )
    X, chosen = components[best], parts[best]
    d = X.degree
    state.component = str(X)
    state.d = d
    state.component_points = len(chosen)
    ledger.cube(
        "|S_j,l| >= d*|S_j|_min/(fit*N/(K*2^j)^(1/3))",
        len(chosen),
        ">=",
        d ** 3 * size_floor ** 3 / cap_cubed,
    )
    ledger.compare("d <= cap*N", d, "<=", const.degree_cap * N)

    ev = X.evaluator()
    on_X = {
        l: sum(1 for pt in points_on(l) if not ev(*pt.key())) for l in lines
    }
    lprime = [l for l in lines if on_X[l] > const.lprime_factor * d]
    lprime_set = set(lprime)
    chosen_set = set(chosen)
    hits = Counter(x for l in lprime for x in distinguished[l] if x in chosen_set)
    sprime = [x for x in chosen if hits[x] >= 3]
    sprime_set = set(sprime)
    ldouble = [
        l
        for l in lprime
        if sum(1 for x in distinguished[l] if x in sprime_set) > const.ldouble_factor * d
    ]
    ldouble_set = set(ldouble)
    state.L_prime = len(lprime)
    state.S_prime = len(sprime)
    state.L_double = len(ldouble)

    rest = [l for l in lines if l not in lprime_set]
    ledger.compare(
        "I(S_j,l,L\\L') <= L'f*d*|L|",
        _incidences(distinguished, rest, chosen_set),
        "<=",
        const.lprime_factor * d * len(lines),
    )
    ledger.compare(
        "I(S_j,l\\S',L') <= 2*|S_j,l|",
        _incidences(distinguished, lprime, chosen_set - sprime_set),
        "<=",
        2 * len(chosen),
    )
    ledger.compare(
        "I(S',L'\\L'') <= L''f*d*|L|",
        _incidences(distinguished, [l for l in lprime if l not in ldouble_set], sprime_set),
        "<=",
        const.ldouble_factor * d * len(lines),
    )
    core = _incidences(distinguished, ldouble, sprime_set)
    ledger.compare(
        "I(S',L'') >= |S_j,l|*2^(j-1)*K*bf - (L'f+L''f)*d*|L| - 2*|S_j,l|",
        core,
        ">=",
        len(chosen) * 2 ** (j - 1) * t
        - (const.lprime_factor + const.ldouble_factor) * d * len(lines)
        - 2 * len(chosen),
    )
    ledger.compare("I(S',L'') >= 2*N^2*d", core, ">=", 2 * N * N * d)
    ledger.compare("|L''| >= 2*N*d", len(ldouble), ">=", 2 * N * d)
    ledger.holds("every line of L'' lies in X", all(contains_line(X, l) for l in ldouble))
    ledger.holds("every point of S' is on >= 3 lines of L'", all(hits[x] >= 3 for x in sprime))

    assert [l.name for l in ledger.lines] == [name for name, _ in LEDGER]
    if state.ledger_ok:
        state.ok = True
        return state
    state.ok = False
    return FailureDiagnostics(state)
