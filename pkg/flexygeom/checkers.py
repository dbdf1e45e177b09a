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
Numbered verification checks run against construction reports.

Each check_* function compares one field of a report with the expected
value and appends `(num, level, where, message)` findings to `errs`; a check
whose expected key is absent does nothing.
"""

import logging

# Counts for the shipped parameter table.  Other parameters fall back to the
# closed forms in expected_counts.
EXPECTED = {
    ("heisenberg", 2, 2): {
        "points": 32,
        "lines_family": 16,
        "wolff_bound": 2,
        "flexy": "FlexyEvidence",
        "points_exponent": "5/2",
    },
    ("heisenberg", 3, 2): {
        "points": 243,
        "lines_family": 81,
        "wolff_bound": 3,
        "flexy": "FlexyEvidence",
        "points_exponent": "5/2",
    },
    ("general", 2, 2): {"points": 32, "lines_family": 16},
    ("general", 3, 2): {"points": 243, "lines_family": 81},
    ("general", 2, 3): {
        "points": 256,
        "lines_family": 64,
        "family_equals_transversal": True,
        "points_exponent": "8/3",
        "cl_mismatches": 0,
    },
    ("funny", 3, 1): {
        "flexy": ["FlexyEvidence", "FlexyEvidence"],
        "G_zero": True,
    },
}


def expected_counts(name, p, n):
    key = (name, p, n)
    if key in EXPECTED:
        return dict(EXPECTED[key])
    if name == "funny":
        raise KeyError("No expectations for the funny curve over GF(%d^%d)" % (p, n))
    out = {
        "points": p ** (3 * n - 1),
        "lines_family": p ** (2 * n),
    }
    # the per-plane bound holds for the Heisenberg family only
    if name == "heisenberg":
        out["wolff_bound"] = p
    elif name == "general":
        out["cl_mismatches"] = 0
        if n >= 3:
            out["family_equals_transversal"] = True
    return out


def _mismatch(report, expected, key):
    return key in expected and report.get(key) != expected[key]


def check_points(report, expected, errs):
    num = "201"
    level = logging.ERROR
    msg = "Rational point count %r, expected %r"
    if _mismatch(report, expected, "points"):
        errs.append((num, level, "points", msg % (report.get("points"), expected["points"])))


def check_lines_family(report, expected, errs):
    num = "202"
    level = logging.ERROR
    msg = "Line family has %r distinct lines, expected %r"
    if _mismatch(report, expected, "lines_family"):
        errs.append(
            (num, level, "lines_family", msg % (report.get("lines_family"), expected["lines_family"]))
        )


def check_family_contained(report, expected, errs):
    num = "203"
    level = logging.ERROR
    msg = "Some family line is not contained in the surface"
    if "family_contained" in report and not report["family_contained"]:
        errs.append((num, level, "family_contained", msg))


def check_wolff(report, expected, errs):
    num = "204"
    level = logging.ERROR
    msg = "%d family lines in plane %s, more than %d"
    if "wolff_bound" not in expected:
        return
    bound = expected["wolff_bound"]
    if report.get("wolff_bound") != bound or report.get("max_per_plane", 0) > bound:
        errs.append(
            (
                num,
                level,
                "max_per_plane",
                msg % (report.get("max_per_plane", -1), report.get("max_per_plane_witness"), bound),
            )
        )


def check_exponent(report, expected, errs):
    num = "205"
    level = logging.ERROR
    msg = "|S| is not N^%s exactly"
    if "points_exponent" not in expected:
        return
    exps = report.get("exponents", {})
    if exps.get("points_exponent") != expected["points_exponent"] or not exps.get(
        "points_match"
    ):
        errs.append((num, level, "exponents", msg % expected["points_exponent"]))


def check_transversal(report, expected, errs):
    num = "206"
    level = logging.ERROR
    msg = "Line family differs from the transversal lines found by exhaustive scan (%r vs %r)"
    if _mismatch(report, expected, "family_equals_transversal"):
        errs.append(
            (
                num,
                level,
                "lines_transversal",
                msg % (report.get("lines_family"), report.get("lines_transversal")),
            )
        )


def check_flexy(report, expected, errs):
    num = "207"
    level = logging.ERROR
    msg = "Flexiness verdict %r, expected %r"
    if "flexy" not in expected:
        return
    got = report.get("flexy")
    if isinstance(got, dict):
        got = got.get("verdict")
    elif isinstance(got, list):
        got = [v.get("verdict") for v in got]
    if got != expected["flexy"]:
        errs.append((num, level, "flexy", msg % (got, expected["flexy"])))


def check_curve_G(report, expected, errs):
    num = "208"
    level = logging.ERROR
    msg = "G does not vanish identically"
    if _mismatch(report, expected, "G_zero"):
        errs.append((num, level, "G", msg))


def check_cl(report, expected, errs):
    num = "209"
    level = logging.ERROR
    msg = "%r restriction coefficients disagree with the closed forms"
    if _mismatch(report, expected, "cl_mismatches"):
        errs.append((num, level, "cl", msg % report.get("cl_mismatches")))


def check_union(report, expected, errs):
    num = "210"
    level = logging.WARNING
    msg = "Union of the family has %d points, more than the %d points on the surface"
    if "union" in report and "points" in report and report["union"] > report["points"]:
        errs.append((num, level, "union", msg % (report["union"], report["points"])))


def run_all_checkers(report, expected):
    errs = []
    for k, f in sorted(globals().items()):
        if k.startswith("check_"):
            try:
                f(report, expected, errs)
            except Exception as e:
                errs.append(
                    (
                        "999",
                        logging.ERROR,
                        k,
                        "Checker %s encountered error: %r" % (k, e),
                    )
                )
    errs.sort(key=lambda e: e[0])
    return errs


def fmt_finding(err):
    num, level, where, msg = err
    return "%s%s: %s (%s)" % (logging.getLevelName(level)[0], num, msg, where)
