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


import itertools
from unittest import TestCase

import pytest

from flexygeom.field import (
    FieldMismatch,
    FieldParams,
    FieldSpecError,
    NotInvertible,
    default_modulus,
    embed,
    extension,
    in_subfield,
    is_irreducible,
    set_default_modulus,
    subfield_elements,
    trace_to_prime,
)

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4)]


class FieldTests(TestCase):
    def test_gf4_relation(self):
        F = FieldParams(2, 2)
        a = F.generator
        self.assertEqual("10", str(a))
        # alpha^2 = alpha + 1 for the modulus t^2 + t + 1
        self.assertEqual(a + 1, a * a)
        self.assertEqual("11", str(a * a))
        self.assertEqual(F.one, a ** 3)

    def test_digits(self):
        F = FieldParams(3, 2)
        x = F.from_digits("12")
        self.assertEqual(5, x.code)
        self.assertEqual("12", str(x))
        self.assertEqual((2, 1), x.coeffs)
        self.assertEqual("01", str(F.one))
        self.assertEqual("1", F.one.short())
        self.assertEqual("0", F.zero.short())
        self.assertEqual(F.one, F("1"))

    def test_bad_digits(self):
        F = FieldParams(3, 2)
        self.assertRaises(FieldSpecError, F.from_digits, "3")
        self.assertRaises(FieldSpecError, F.from_digits, "111")
        self.assertRaises(FieldSpecError, F.from_digits, "")

    def test_compare_with_int(self):
        F = FieldParams(3, 2)
        self.assertEqual(F.one, 1)
        self.assertEqual(F.one, 4)
        self.assertNotEqual(F.generator, 1)

    def test_parse(self):
        F = FieldParams.parse("GF(9)")
        self.assertEqual((3, 2, (1, 0, 1)), (F.p, F.n, F.modulus))
        self.assertEqual("GF(3^2; 1,0,1)", str(F))
        self.assertEqual(F, FieldParams.parse(str(F)))
        self.assertEqual(FieldParams(2, 3), FieldParams.parse("GF(2^3)"))
        self.assertEqual(FieldParams(7), FieldParams.parse(" GF(7) "))

    def test_parse_errors(self):
        for text in ("GF(6)", "GF(4; 1,0,1)", "GF(1)", "F(4)", "GF(2^0)"):
            self.assertRaises(FieldSpecError, FieldParams.parse, text)

    def test_mixed_fields(self):
        self.assertRaises(
            FieldMismatch, lambda: FieldParams(2, 2).one + FieldParams(2).one
        )

    def test_zero_not_invertible(self):
        F = FieldParams(3, 2)
        self.assertRaises(NotInvertible, F.zero.inv)
        self.assertRaises(ZeroDivisionError, lambda: F.one / F.zero)

    def test_negative_power(self):
        F = FieldParams(5)
        x = F(2)
        self.assertEqual(x.inv(), x ** -1)
        self.assertEqual(F(3), x ** -1)

    def test_default_modulus_search(self):
        # x^5 + x^2 + 1 is the smallest irreducible quintic over GF(2)
        self.assertEqual((1, 0, 0, 1, 0, 1), default_modulus(2, 5))

    def test_irreducible(self):
        self.assertTrue(is_irreducible(2, (1, 1, 1)))
        self.assertFalse(is_irreducible(2, (1, 0, 1)))
        self.assertTrue(is_irreducible(3, (1, 0, 1)))
        self.assertFalse(is_irreducible(5, (1, 0, 1)))

    def test_set_default_modulus_rejects_reducible(self):
        self.assertRaises(FieldSpecError, set_default_modulus, 2, 2, (1, 0, 1))

    def test_subfields(self):
        self.assertEqual(4, len(subfield_elements(FieldParams(2, 4), 2)))
        self.assertEqual(3, len(subfield_elements(FieldParams(3, 2), 1)))
        self.assertRaises(ValueError, in_subfield, FieldParams(2, 3).one, 2)

    def test_extension(self):
        self.assertEqual(FieldParams(3, 2), extension(FieldParams(3), 2))
        self.assertEqual(FieldParams(2, 4), extension(FieldParams(2, 2), 2))
        F = FieldParams(5)
        self.assertIs(F, extension(F, 1))

    def test_embed_is_a_homomorphism(self):
        src = FieldParams(2, 2)
        dst = FieldParams(2, 4)
        images = [embed(x, dst) for x in src.elements()]
        self.assertEqual(4, len(set(images)))
        for x, y in itertools.product(src.elements(), repeat=2):
            self.assertEqual(embed(x * y, dst), embed(x, dst) * embed(y, dst))
            self.assertEqual(embed(x + y, dst), embed(x, dst) + embed(y, dst))
        for img in images:
            self.assertTrue(in_subfield(img, 2))

    def test_embed_prime_field(self):
        dst = FieldParams(3, 2)
        self.assertEqual(dst(2), embed(FieldParams(3)(2), dst))

    def test_embed_impossible(self):
        self.assertRaises(
            FieldMismatch, embed, FieldParams(2, 2).one, FieldParams(2, 3)
        )


@pytest.mark.parametrize("p, n", SMALL_FIELDS)
def test_inverses(p, n):
    F = FieldParams(p, n)
    for x in F.elements()[1:]:
        assert x * x.inv() == F.one
        assert x / x == F.one


@pytest.mark.parametrize("p, n", SMALL_FIELDS)
def test_frobenius_order(p, n):
    F = FieldParams(p, n)
    for x in F.elements():
        assert x ** F.q == x
        assert x.frobenius(n) == x


@pytest.mark.parametrize("p, n", SMALL_FIELDS)
def test_trace_lands_in_prime_field(p, n):
    F = FieldParams(p, n)
    traces = [trace_to_prime(x) for x in F.elements()]
    for t in traces:
        assert in_subfield(t, 1)
    # the trace is onto GF(p) with equal fibers
    for t in subfield_elements(F, 1):
        assert traces.count(t) == F.q // p


@pytest.mark.parametrize("p, n", SMALL_FIELDS)
def test_distributive(p, n):
    F = FieldParams(p, n)
    els = F.elements()
    a = els[-1]
    for x, y in itertools.product(els, repeat=2):
        assert a * (x + y) == a * x + a * y
        assert (x - y) + y == x
