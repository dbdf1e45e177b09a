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


import json
import math
import random
from fractions import Fraction
from unittest import TestCase

import pytest

from flexygeom.constructions import heisenberg, heisenberg_lines
from flexygeom.field import FieldParams
from flexygeom.geom import (
    DirectionPt,
    Line3,
    Point3,
    all_lines,
    all_points,
    direction,
    projective_triples,
    union_points,
)
from flexygeom.linalg import monomials
from flexygeom.mpoly import MultiPoly
from flexygeom.polymethod import (
    LEDGER,
    DecompositionConstants,
    DecompositionState,
    FailureDiagnostics,
    NotKakeya,
    check_theorem_hypotheses,
    decompose,
    kakeya_surface_bound,
    min_degree_vanishing,
    vanishing_poly,
)
from flexygeom.surface import Surface, is_flexy_surface, lines_in
from flexygeom.util import PreconditionError

GF3 = FieldParams(3)
GF4 = FieldParams(2, 2)
GF5 = FieldParams(5)


def random_point(rng, params):
    return Point3.of(params, *(rng.randrange(params.q) for _ in range(3)))


@pytest.mark.parametrize("seed", range(500))
def test_vanishing_poly(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 4)
    size = rng.randint(1, math.comb(d + 3, 3) - 1)
    S = {random_point(rng, GF5) for _ in range(size)}
    P = vanishing_poly(S, d)
    assert P is not None
    assert not P.is_zero()
    assert P.degree <= d
    assert all(not P.evaluate(pt) for pt in S)


class VanishingTests(TestCase):
    def test_whole_space(self):
        S = list(all_points(GF3))
        self.assertIsNone(vanishing_poly(S, 2))
        d, P = min_degree_vanishing(S)
        self.assertEqual(3, d)
        self.assertEqual("x^3 + 2*x", str(P))

    def test_single_point(self):
        d, P = min_degree_vanishing([Point3.of(GF3, 1, 2, 0)])
        self.assertEqual(1, d)
        self.assertFalse(P.evaluate((1, 2, 0)))

    def test_empty(self):
        self.assertRaises(ValueError, vanishing_poly, [], 2)
        self.assertRaises(ValueError, min_degree_vanishing, [])
        P = vanishing_poly([], 2, GF3)
        self.assertEqual(0, P.degree)


def _random_surface(rng):
    while True:
        d = rng.randint(1, 3)
        f = MultiPoly(GF3, {e: rng.randrange(3) for e in monomials(d)})
        if f.degree >= 1:
            return Surface(f)


@pytest.mark.parametrize("seed", range(100))
def test_kakeya_bound(seed):
    rng = random.Random(seed)
    X = _random_surface(rng)
    by_direction = {direction(l): l for l in lines_in(X)}
    for d in projective_triples(GF3):
        if DirectionPt(d) not in by_direction and rng.random() < 0.3:
            by_direction[DirectionPt(d)] = Line3(random_point(rng, GF3), d)
    report = kakeya_surface_bound(X, by_direction.values())
    assert report["passed"], report
    assert report["contained"] <= X.degree * 4
    assert report["directions_on_top_form"]


class KakeyaTests(TestCase):
    def test_parallel_lines_rejected(self):
        up = (GF3.zero, GF3.zero, GF3.one)
        lines = [Line3(Point3.of(GF3, 0, 0, 0), up), Line3(Point3.of(GF3, 1, 0, 0), up)]
        X = Surface(MultiPoly(GF3, {(1, 0, 0): 1}))
        self.assertRaises(NotKakeya, kakeya_surface_bound, X, lines)

    def test_plane(self):
        X = Surface(MultiPoly(GF3, {(0, 0, 1): 1}))
        lines = {direction(l): l for l in all_lines(GF3)}
        report = kakeya_surface_bound(X, lines.values())
        self.assertLessEqual(report["contained"], 4)
        self.assertEqual(4, report["bound"])


class HypothesisTests(TestCase):
    def test_heisenberg(self):
        X = heisenberg(2)
        verdict = is_flexy_surface(X, 1)
        report = check_theorem_hypotheses(heisenberg_lines(2), 4, [(X, verdict)])
        self.assertTrue(report.plane_passed)
        self.assertEqual(8, report.plane_bound)
        self.assertEqual(1, len(report.flexy))
        entry = report.flexy[0]
        self.assertEqual(16, entry["lines_in_surface"])
        self.assertEqual(24, entry["bound"])
        self.assertTrue(entry["applicable"])
        self.assertTrue(report.passed)
        self.assertFalse(report.unverified)

    def test_no_candidates_is_unverified(self):
        report = check_theorem_hypotheses(heisenberg_lines(2), 4)
        self.assertTrue(report.unverified)
        self.assertTrue(report.to_dict()["flexy_unverified"])

    def test_coplanar_lines(self):
        flat = [
            l for l in all_lines(GF4) if not l.dir[2] and not l.base.z
        ][:10]
        report = check_theorem_hypotheses(flat, 2)
        self.assertEqual(10, report.plane_count)
        self.assertFalse(report.plane_passed)
        self.assertFalse(report.passed)
        self.assertIsNotNone(report.to_dict()["plane"]["witness"])


class DecompositionTests(TestCase):
    def setUp(self):
        self.S = list(all_points(GF4))
        self.L = heisenberg_lines(2)

    def test_deterministic(self):
        a = decompose(self.S, self.L, 4).to_dict()
        b = decompose(self.S, self.L, 4).to_dict()
        self.assertEqual(a, b)

    def test_order_independent(self):
        S, L = list(self.S), list(self.L)
        random.Random(1).shuffle(S)
        random.Random(2).shuffle(L)
        self.assertEqual(
            decompose(self.S, self.L, 4).to_dict(), decompose(S, L, 4).to_dict()
        )

    def test_ledger(self):
        out = decompose(self.S, self.L, 4)
        self.assertEqual([name for name, _ in LEDGER], [l.name for l in out.ledger])
        self.assertTrue(out.ledger[0].passed)
        self.assertTrue(out.ledger[1].passed)
        json.dumps(out.to_dict())

    def test_unreachable_multiplicity(self):
        out = decompose(self.S, self.L, 4, DecompositionConstants(K=100000))
        self.assertIsInstance(out, FailureDiagnostics)
        self.assertFalse(out.ok)
        self.assertEqual("I(S_v,L) >= (1-bf)*N^3", out.first_failure.name)
        self.assertEqual(len(LEDGER), len(out.ledger))
        self.assertTrue(out.ledger[2].passed)
        self.assertIsNone(out.ledger[-1].left)
        self.assertEqual("100000", out.to_dict()["state"]["constants"]["K"])

    def test_preconditions(self):
        self.assertRaises(PreconditionError, decompose, [], self.L, 4)
        self.assertRaises(PreconditionError, decompose, self.S, self.L, 0)
        few = [Point3.of(GF4, 0, 0, 0)]
        self.assertRaises(PreconditionError, decompose, few, self.L, 4)

    def test_heisenberg_union(self):
        S = sorted(union_points(self.L))
        out = decompose(S, self.L, 4)
        state = getattr(out, "state", out)
        self.assertEqual(len(S), state.points)
        self.assertEqual(64, state.incidences)
        self.assertEqual([name for name, _ in LEDGER], [l.name for l in out.ledger])
        self.assertTrue(out.ledger[0].passed)
        self.assertEqual(
            json.dumps(out.to_dict(), sort_keys=True),
            json.dumps(decompose(S, self.L, 4).to_dict(), sort_keys=True),
        )


def _random_instance(rng):
    target = rng.randint(3, 9)
    lines = set()
    while len(lines) < target:
        d = tuple(GF3(rng.randrange(3)) for _ in range(3))
        if any(d):
            lines.add(Line3(random_point(rng, GF3), d))
    S = union_points(lines)
    S.update(random_point(rng, GF3) for _ in range(rng.randint(0, 10)))
    return sorted(S), sorted(lines)


@pytest.mark.parametrize("seed", range(10))
def test_decompose_random(seed):
    S, L = _random_instance(random.Random(seed))
    out = decompose(S, L, 3)
    assert isinstance(out, (DecompositionState, FailureDiagnostics))
    assert [l.name for l in out.ledger] == [name for name, _ in LEDGER]
    assert out.ledger[0].name == "I(S,L) = |L|*N"
    assert out.ledger[0].passed
    text = json.dumps(out.to_dict(), sort_keys=True)
    assert text == json.dumps(decompose(S, L, 3).to_dict(), sort_keys=True)


class ConstantsTests(TestCase):
    def test_defaults(self):
        c = DecompositionConstants()
        self.assertIsNone(c.K)
        self.assertEqual(
            {
                "K": None,
                "bucket_factor": "1/1000",
                "fit_factor": "25",
                "lprime_factor": "100",
                "ldouble_factor": "10",
                "degree_cap": "1/4",
            },
            c.to_dict(),
        )

    def test_rejects(self):
        self.assertRaises(ValueError, DecompositionConstants, K=0)
        self.assertRaises(ValueError, DecompositionConstants, bucket_factor=1)
        self.assertRaises(ValueError, DecompositionConstants, fit_factor=-1)
        self.assertEqual(Fraction(1, 2), DecompositionConstants(K="1/2").K)
