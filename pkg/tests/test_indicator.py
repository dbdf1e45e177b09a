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


import re
import unittest
from io import StringIO

from flexygeom.field import FieldParams
from flexygeom.indicator import WIDTH, _window, mark, mark_str
from flexygeom.parser import PolySyntaxError, parse


class MarkStrTest(unittest.TestCase):
    def _test(self, input, substr):
        buf = StringIO()
        pos1 = input.index(substr)
        pos2 = pos1 + len(substr)
        mark_str(pos1, pos2, input, buf)
        self.assertEqual(substr, underlined_part(buf.getvalue()))

    def test_mark_str_left(self):
        # this doesn't need shortening
        self._test("x^3*y + w", "x")

    def test_mark_str_variable(self):
        self._test("x^3*y + w", "w")

    def test_mark_str_middle(self):
        self._test("x + " * 300 + "q" + " + y" * 300, "q")

    def test_mark_end_of_input(self):
        buf = StringIO()
        mark_str(2, 2, "x^", buf)
        self.assertEqual("  x^ \n    ^ here\n", buf.getvalue())

    def test_mark(self):
        buf = StringIO()
        mark(4, 5, "x + w", buf)
        self.assertEqual("  x + w\n      ^ here\n", buf.getvalue())

    def test_syntax_error_mark(self):
        with self.assertRaises(PolySyntaxError) as cm:
            parse("x + wz", FieldParams(3))
        buf = StringIO()
        cm.exception.mark(buf)
        self.assertEqual("wz", underlined_part(buf.getvalue()))


class UnderlineHelperTest(unittest.TestCase):
    def test_underline_single(self):
        s = """\
abcdef
  ^\
"""
        self.assertEqual("c", underlined_part(s))

    def test_underline_multi(self):
        s = """\
abcdef
 ^^^  \
"""
        self.assertEqual("bcd", underlined_part(s))


def underlined_part(s, underline_char="^"):
    """Return the part of `s` that is underlined.

    Given a multiline string, return the part of the first line that has
    underline_char on the second line.
    """
    lines = s.splitlines()
    underline_re = re.compile(re.escape(underline_char) + "+")
    m = underline_re.search(lines[1])
    if not m:
        raise ValueError("String %r has no underline" % (s,))
    return lines[0][m.start() : m.end()]


class WindowTest(unittest.TestCase):
    def test_short_text_unchanged(self):
        self.assertEqual(("x + w", 4, 5), _window("x + w", 4, 5))

    def test_long_text(self):
        text = "x + " * 50 + "w" + " + y" * 50
        pos = text.index("w")
        out, start, end = _window(text, pos, pos + 1)
        self.assertEqual("w", out[start:end])
        self.assertTrue(out.startswith("..."))
        self.assertTrue(out.endswith("..."))
        self.assertLessEqual(len(out), WIDTH + 6)
        # cuts fall on spaces
        self.assertNotEqual(" ", out[3])
        self.assertNotEqual(" ", out[-4])

    def test_wide_span_kept(self):
        text = "x" * 100 + " + " + "y" * 100
        out, start, end = _window(text, 0, 150)
        self.assertEqual(text[:150], out[start:end])
        self.assertFalse(out.startswith("..."))
