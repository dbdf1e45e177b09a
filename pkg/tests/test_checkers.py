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


import logging
from unittest import TestCase

from flexygeom.checkers import (
    EXPECTED,
    check_exponent,
    check_flexy,
    check_points,
    expected_counts,
    fmt_finding,
    run_all_checkers,
)
from flexygeom.constructions import counterexample_report


def heisenberg_report():
    return {
        "points": 32,
        "lines_family": 16,
        "family_contained": True,
        "wolff_bound": 2,
        "max_per_plane": 2,
        "max_per_plane_witness": "0,0,1;0",
        "union": 30,
        "flexy": {"verdict": "FlexyEvidence", "ext": 1},
        "exponents": {"points_exponent": "5/2", "points_match": True},
    }


def nums(errs):
    return [e[0] for e in errs]


class CheckersTests(TestCase):
    def setUp(self):
        self.expected = expected_counts("heisenberg", 2, 2)

    def test_clean(self):
        self.assertEqual([], run_all_checkers(heisenberg_report(), self.expected))

    def test_real_report(self):
        report = counterexample_report(2, 2, "heisenberg")
        self.assertEqual([], run_all_checkers(report, self.expected))

    def test_points(self):
        report = heisenberg_report()
        report["points"] = 31
        errs = run_all_checkers(report, self.expected)
        self.assertEqual(["201"], nums(errs))
        self.assertEqual("Rational point count 31, expected 32", errs[0][3])

    def test_lines_family(self):
        report = heisenberg_report()
        report["lines_family"] = 15
        self.assertEqual(["202"], nums(run_all_checkers(report, self.expected)))

    def test_family_contained(self):
        report = heisenberg_report()
        report["family_contained"] = False
        self.assertEqual(["203"], nums(run_all_checkers(report, self.expected)))

    def test_wolff(self):
        report = heisenberg_report()
        report["max_per_plane"] = 3
        errs = run_all_checkers(report, self.expected)
        self.assertEqual(["204"], nums(errs))
        self.assertEqual("max_per_plane", errs[0][2])

    def test_exponent(self):
        report = heisenberg_report()
        report["exponents"]["points_match"] = False
        self.assertEqual(["205"], nums(run_all_checkers(report, self.expected)))

    def test_flexy(self):
        report = heisenberg_report()
        report["flexy"]["verdict"] = "NotFlexy"
        errs = run_all_checkers(report, self.expected)
        self.assertEqual(["207"], nums(errs))
        self.assertEqual("Flexiness verdict 'NotFlexy', expected 'FlexyEvidence'", errs[0][3])

    def test_flexy_list(self):
        errs = []
        expected = expected_counts("funny", 3, 1)
        check_flexy({"flexy": [{"verdict": "FlexyEvidence"}] * 2}, expected, errs)
        self.assertEqual([], errs)
        check_flexy(
            {"flexy": [{"verdict": "FlexyEvidence"}, {"verdict": "Undetermined"}]},
            expected,
            errs,
        )
        self.assertEqual(["207"], nums(errs))

    def test_union_is_a_warning(self):
        report = heisenberg_report()
        report["union"] = 40
        errs = run_all_checkers(report, self.expected)
        self.assertEqual(["210"], nums(errs))
        self.assertEqual(logging.WARNING, errs[0][1])

    def test_general(self):
        expected = expected_counts("general", 2, 3)
        report = {
            "points": 256,
            "lines_family": 64,
            "lines_transversal": 60,
            "family_equals_transversal": False,
            "wolff_bound": None,
            "max_per_plane": 4,
            "exponents": {"points_exponent": "8/3", "points_match": True},
            "cl_mismatches": 3,
        }
        self.assertEqual(["206", "209"], nums(run_all_checkers(report, expected)))

    def test_curve_G(self):
        expected = expected_counts("funny", 3, 1)
        report = {"flexy": [{"verdict": "FlexyEvidence"}] * 2, "G_zero": False}
        self.assertEqual(["208"], nums(run_all_checkers(report, expected)))

    def test_missing_keys_skip(self):
        errs = []
        check_points({}, {}, errs)
        check_exponent({}, {}, errs)
        self.assertEqual([], errs)

    def test_checker_error(self):
        report = heisenberg_report()
        report["exponents"] = None
        errs = run_all_checkers(report, self.expected)
        self.assertEqual(["999"], nums(errs))
        self.assertEqual("check_exponent", errs[0][2])

    def test_sorted(self):
        report = heisenberg_report()
        report["union"] = 40
        report["lines_family"] = 15
        report["points"] = 31
        self.assertEqual(["201", "202", "210"], nums(run_all_checkers(report, self.expected)))

    def test_fmt_finding(self):
        self.assertEqual(
            "E201: bad count (points)",
            fmt_finding(("201", logging.ERROR, "points", "bad count")),
        )
        self.assertEqual(
            "W210: too many (union)",
            fmt_finding(("210", logging.WARNING, "union", "too many")),
        )


class ExpectedCountsTests(TestCase):
    def test_table(self):
        self.assertEqual(EXPECTED[("general", 2, 3)], expected_counts("general", 2, 3))

    def test_copy(self):
        expected_counts("heisenberg", 2, 2)["points"] = 0
        self.assertEqual(32, EXPECTED[("heisenberg", 2, 2)]["points"])

    def test_closed_forms(self):
        self.assertEqual(
            {"points": 3125, "lines_family": 625, "wolff_bound": 5},
            expected_counts("heisenberg", 5, 2),
        )
        general = expected_counts("general", 2, 4)
        self.assertEqual(2 ** 11, general["points"])
        self.assertEqual(0, general["cl_mismatches"])
        self.assertTrue(general["family_equals_transversal"])
        self.assertNotIn("family_equals_transversal", expected_counts("general", 5, 2))

    def test_no_plane_bound_for_general(self):
        for p, n in [(2, 2), (3, 2), (2, 3), (2, 4), (5, 2)]:
            self.assertNotIn("wolff_bound", expected_counts("general", p, n))
        self.assertEqual(3, expected_counts("heisenberg", 3, 2)["wolff_bound"])

    def test_funny_elsewhere(self):
        self.assertRaises(KeyError, expected_counts, "funny", 3, 2)
