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
File formats.

Points file::

    # field: GF(2^2; 1,1,1)
    00,01,10

Lines file: one `base;dir` record per line, both as x,y,z digit triples.
Surface file: JSON with field, polynomial, ambient, attestation flags and a
sha256 digest of the canonical polynomial text.
"""

import csv
import hashlib
import json

from flexygeom.field import FieldParams, FieldSpecError
from flexygeom.geom import Line3, Point3
from flexygeom.parser import PolySyntaxError, parse
from flexygeom.surface import Surface

HEADER = "# field: "


class FormatError(ValueError):
    def __init__(self, msg, path=None, lineno=None):
        where = ""
        if path is not None:
            where = "%s:%s: " % (path, lineno) if lineno else "%s: " % path
        ValueError.__init__(self, where + msg)


def _triple(text, params, path, lineno):
    parts = text.split(",")
    if len(parts) != 3:
        raise FormatError("Expected x,y,z, got %r" % text, path, lineno)
    try:
        return tuple(params.from_digits(s) for s in parts)
    except FieldSpecError as e:
        raise FormatError(str(e), path, lineno)


def _records(path, params):
    """(params, [(text, lineno)]) for the data lines of a points or lines file."""
    out = []
    try:
        f = open(path)
    except OSError as e:
        raise FormatError(str(e), path)
    with f:
        for lineno, line in enumerate(f, 1):
            line = line.strip()
            if line.startswith(HEADER):
                if out:
                    raise FormatError("Field header after the first record", path, lineno)
                try:
                    params = FieldParams.parse(line[len(HEADER) :])
                except FieldSpecError as e:
                    raise FormatError(str(e), path, lineno)
                continue
            if not line or line.startswith("#"):
                continue
            if params is None:
                raise FormatError("No field given before the first record", path, lineno)
            out.append((line, lineno))
    return params, out


def read_points(path, params=None):
    """(params, points); the file's `# field:` header wins over `params`."""
    params, records = _records(path, params)
    return params, [Point3(*_triple(line, params, path, n)) for line, n in records]


def read_lines(path, params=None):
    params, records = _records(path, params)
    lines = []
    for line, lineno in records:
        base, sep, dirn = line.partition(";")
        if not sep:
            raise FormatError("Expected base;dir, got %r" % line, path, lineno)
        d = _triple(dirn, params, path, lineno)
        if not any(d):
            raise FormatError("Zero direction", path, lineno)
        lines.append(Line3(Point3(*_triple(base, params, path, lineno)), d))
    return params, lines


def write_points(path, points, params):
    with open(path, "w") as f:
        f.write(HEADER + str(params) + "\n")
        for pt in sorted(set(points)):
            f.write(str(pt) + "\n")


def write_lines(path, lines, params):
    with open(path, "w") as f:
        f.write(HEADER + str(params) + "\n")
        for line in sorted(set(lines)):
            f.write(str(line) + "\n")


def surface_digest(field, polynomial):
    return hashlib.sha256(("%s\n%s\n" % (field, polynomial)).encode("ascii")).hexdigest()


def surface_to_dict(X):
    field, text = str(X.params), str(X.f)
    return {
        "field": field,
        "polynomial": text,
        "ambient": X.ambient,
        "attested_reduced": X.attested_reduced,
        "attested_irreducible": X.attested_irreducible,
        "name": X.name,
        "sha256": surface_digest(field, text),
    }


def write_surface(path, X):
    with open(path, "w") as f:
        json.dump(surface_to_dict(X), f, sort_keys=True, indent=2)
        f.write("\n")


def read_surface(path):
    try:
        with open(path) as f:
            data = json.load(f)
    except OSError as e:
        raise FormatError(str(e), path)
    except ValueError as e:
        raise FormatError("Not JSON: %s" % e, path)
    if not isinstance(data, dict):
        raise FormatError("Expected a JSON object", path)
    for key in ("field", "polynomial"):
        if key not in data:
            raise FormatError("Missing %r" % key, path)
    try:
        params = FieldParams.parse(data["field"])
    except FieldSpecError as e:
        raise FormatError(str(e), path)
    f = parse(data["polynomial"], params)
    if "sha256" in data and data["sha256"] != surface_digest(str(params), str(f)):
        raise FormatError("Digest does not match the polynomial", path)
    return Surface(
        f,
        ambient=int(data.get("ambient", 3)),
        attested_reduced=bool(data.get("attested_reduced", False)),
        attested_irreducible=bool(data.get("attested_irreducible", False)),
        name=data.get("name"),
    )


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], "%s.%s" % (prefix, k) if prefix else str(k))
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            yield from _flatten(v, "%s.%d" % (prefix, i))
    else:
        yield (prefix, obj)


def emit(report, fmt, stream):
    if fmt == "json":
        stream.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    elif fmt == "csv":
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in _flatten(report):
            w.writerow([k, "" if v is None else v])
    elif fmt == "text":
        for k, v in _flatten(report):
            stream.write("%s: %s\n" % (k, v))
    else:
        raise ValueError("Unknown format %r" % fmt)


__all__ = [
    "FormatError",
    "PolySyntaxError",
    "read_points",
    "read_lines",
    "write_points",
    "write_lines",
    "read_surface",
    "write_surface",
    "surface_to_dict",
    "surface_digest",
    "emit",
]
