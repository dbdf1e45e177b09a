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


import math
import random
from unittest import TestCase

import numpy as np
import pytest

from flexygeom.field import FieldElem, FieldParams
from flexygeom.geom import Point3
from flexygeom.linalg import (
    evaluation_matrix,
    field_tables,
    kernel_vector,
    monomials,
    _rref_codes,
    rref,
)
from flexygeom.polymethod import vanishing_poly

GF3 = FieldParams(3)
GF4 = FieldParams(2, 2)
GF9 = FieldParams(3, 2)
GF289 = FieldParams(17, 2)


def mat_vec(matrix, vec, params):
    out = []
    for row in matrix:
        acc = 0
        for a, b in zip(row, vec):
            acc = params.cadd(acc, params.cmul(int(a), int(b)))
        out.append(acc)
    return out


class LinalgTests(TestCase):
    def test_monomial_order(self):
        self.assertEqual([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)], monomials(1))
        self.assertEqual((2, 0, 0), monomials(2)[4])
        self.assertEqual((0, 0, 2), monomials(2)[-1])
        for d in range(6):
            self.assertEqual(math.comb(d + 3, 3), len(monomials(d)))

    def test_rref_rank_one(self):
        rows, pivots = rref([[1, 2], [2, 1]], GF3)
        self.assertEqual([0], pivots)
        self.assertEqual([[1, 2]], rows.tolist())

    def test_rref_does_not_modify(self):
        m = np.array([[2, 1], [1, 1]], dtype=np.int64)
        rows, pivots = rref(m, GF3)
        self.assertEqual([[2, 1], [1, 1]], m.tolist())
        self.assertEqual([0, 1], pivots)
        self.assertEqual([[1, 0], [0, 1]], rows.tolist())

    def test_kernel_vector(self):
        self.assertEqual([1, 1], kernel_vector([[1, 2]], GF3))
        self.assertIsNone(kernel_vector([[1, 0], [0, 1]], GF3))
        self.assertEqual([1, 0, 0], kernel_vector(np.zeros((0, 3), dtype=np.int64), GF3))

    def test_first_free_column(self):
        # columns 0 and 1 are equal, so column 1 is the first free one
        self.assertEqual([2, 1, 0], kernel_vector([[1, 1, 0], [2, 2, 1]], GF3))

    def test_evaluation_matrix(self):
        pt = Point3.of(GF3, 2, 1, 0)
        m = evaluation_matrix([pt], monomials(2), GF3)
        # 1, x, y, z, x^2, xy, xz, y^2, yz, z^2
        self.assertEqual([[1, 2, 1, 0, 1, 2, 0, 1, 0, 0]], m.tolist())

    def test_tables_need_small_fields(self):
        self.assertRaises(ValueError, field_tables, FieldParams(17, 2))

    def test_tables(self):
        t = field_tables(GF4)
        for a in range(1, 4):
            self.assertEqual(1, t.mul[a, t.inv[a]])
            self.assertEqual(0, t.add[a, t.neg[a]])


@pytest.mark.parametrize("seed", range(20))
def test_random_kernels(seed):
    rng = random.Random(seed)
    params = rng.choice([GF3, GF4])
    rows = rng.randrange(1, 6)
    cols = rng.randrange(1, 8)
    m = [[rng.randrange(params.q) for _ in range(cols)] for _ in range(rows)]
    reduced, pivots = rref(m, params)
    vec = kernel_vector(m, params)
    if len(pivots) == cols:
        assert vec is None
    else:
        assert vec is not None and any(vec)
        assert mat_vec(m, vec, params) == [0] * rows


@pytest.mark.parametrize("seed", range(20))
def test_code_rref_matches_tables(seed):
    rng = random.Random(seed)
    rows = rng.randrange(1, 6)
    cols = rng.randrange(1, 8)
    m = np.array(
        [[rng.randrange(GF9.q) for _ in range(cols)] for _ in range(rows)],
        dtype=np.int64,
    )
    reduced, pivots = rref(m, GF9)
    slow, slow_pivots = _rref_codes(m, GF9)
    assert pivots == slow_pivots
    assert reduced.tolist() == slow.tolist()


class LargeFieldTests(TestCase):
    def test_kernel_without_tables(self):
        rng = random.Random(7)
        m = [[rng.randrange(GF289.q) for _ in range(5)] for _ in range(3)]
        vec = kernel_vector(m, GF289)
        self.assertIsNotNone(vec)
        self.assertEqual([0, 0, 0], mat_vec(m, vec, GF289))

    def test_rank(self):
        a = FieldElem(GF289, 20).code
        row = [1, a, 0]
        double = [GF289.cmul(2, c) for c in row]
        reduced, pivots = rref([row, double, [0, 0, 1]], GF289)
        self.assertEqual([0, 2], pivots)
        self.assertEqual([[1, a, 0], [0, 0, 1]], reduced.tolist())


@pytest.mark.parametrize("seed", range(5))
def test_vanishing_poly_large_field(seed):
    rng = random.Random(seed)
    d = 2
    S = {
        Point3(*(FieldElem(GF289, rng.randrange(GF289.q)) for _ in range(3)))
        for _ in range(6)
    }
    P = vanishing_poly(S, d)
    assert P is not None
    assert P.degree <= d
    assert all(not P.evaluate(pt) for pt in S)
