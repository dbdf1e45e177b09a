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


import io
import json
import tempfile
from pathlib import Path
from unittest import TestCase

from flexygeom.constructions import heisenberg, heisenberg_lines
from flexygeom.field import FieldParams
from flexygeom.formats import (
    FormatError,
    emit,
    read_lines,
    read_points,
    read_surface,
    surface_to_dict,
    write_lines,
    write_points,
    write_surface,
)
from flexygeom.parser import PolySyntaxError
from flexygeom.surface import rational_points

GF4 = FieldParams(2, 2)


class FilesTests(TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def path(self, name, text=None):
        p = self.dir / name
        if text is not None:
            p.write_text(text)
        return str(p)

    def test_points(self):
        pts = rational_points(heisenberg(2))
        path = self.path("points.txt")
        write_points(path, reversed(pts), GF4)
        lines = Path(path).read_text().splitlines()
        self.assertEqual("# field: GF(2^2; 1,1,1)", lines[0])
        self.assertEqual(33, len(lines))
        params, back = read_points(path)
        self.assertEqual(GF4, params)
        self.assertEqual(pts, back)

    def test_lines(self):
        family = heisenberg_lines(2)
        path = self.path("lines.txt")
        write_lines(path, family, GF4)
        params, back = read_lines(path)
        self.assertEqual(family, back)

    def test_points_without_header(self):
        path = self.path("points.txt", "# a comment\n\n10,1,0\n")
        self.assertRaises(FormatError, read_points, path)
        params, pts = read_points(path, GF4)
        self.assertEqual(["10,01,00"], [str(pt) for pt in pts])

    def test_header_wins(self):
        path = self.path("points.txt", "# field: GF(3)\n2,2,2\n")
        params, pts = read_points(path, GF4)
        self.assertEqual(FieldParams(3), params)
        self.assertEqual("2,2,2", str(pts[0]))

    def test_bad_records(self):
        for text in (
            "# field: GF(4)\n1,2\n",
            "# field: GF(4)\n1,2,3\n",
            "# field: GF(6)\n",
            "# field: GF(4)\n1,1,1\n# field: GF(4)\n",
        ):
            self.assertRaises(FormatError, read_points, self.path("bad.txt", text))
        self.assertRaises(FormatError, read_points, self.path("missing.txt"))

    def test_error_location(self):
        path = self.path("bad.txt", "# field: GF(4)\n\n1,1\n")
        with self.assertRaises(FormatError) as cm:
            read_points(path)
        self.assertIn("bad.txt:3: ", str(cm.exception))

    def test_bad_lines(self):
        for text in (
            "# field: GF(4)\n1,1,1\n",
            "# field: GF(4)\n1,1,1;0,0,0\n",
            "# field: GF(4)\n1,1,1;0,0\n",
        ):
            self.assertRaises(FormatError, read_lines, self.path("bad.txt", text))

    def test_surface(self):
        X = heisenberg(2)
        path = self.path("surface.json")
        write_surface(path, X)
        Y = read_surface(path)
        self.assertEqual(X.f, Y.f)
        self.assertTrue(Y.attested_irreducible)
        self.assertEqual("heisenberg(2)", Y.name)
        self.assertEqual(surface_to_dict(X), surface_to_dict(Y))

    def test_surface_defaults(self):
        path = self.path("s.json", '{"field": "GF(3)", "polynomial": "x*y - z"}')
        Y = read_surface(path)
        self.assertEqual(3, Y.ambient)
        self.assertFalse(Y.attested_reduced)

    def test_surface_digest_mismatch(self):
        data = surface_to_dict(heisenberg(2))
        data["polynomial"] = "x + y"
        path = self.path("s.json", json.dumps(data))
        self.assertRaises(FormatError, read_surface, path)

    def test_bad_surface(self):
        for text in ("not json", "[]", '{"field": "GF(3)"}', '{"field": "GF(6)", "polynomial": "x"}'):
            self.assertRaises(FormatError, read_surface, self.path("s.json", text))
        self.assertRaises(FormatError, read_surface, self.path("nothing.json"))
        path = self.path("s.json", '{"field": "GF(3)", "polynomial": "x +"}')
        self.assertRaises(PolySyntaxError, read_surface, path)


class EmitTests(TestCase):
    report = {"b": [1, {"c": None}], "a": "x"}

    def test_json(self):
        out = io.StringIO()
        emit(self.report, "json", out)
        self.assertEqual(self.report, json.loads(out.getvalue()))

    def test_csv(self):
        out = io.StringIO()
        emit(self.report, "csv", out)
        self.assertEqual("key,value\na,x\nb.0,1\nb.1.c,\n", out.getvalue())

    def test_text(self):
        out = io.StringIO()
        emit(self.report, "text", out)
        self.assertEqual("a: x\nb.0: 1\nb.1.c: None\n", out.getvalue())

    def test_unknown(self):
        self.assertRaises(ValueError, emit, self.report, "xml", io.StringIO())
