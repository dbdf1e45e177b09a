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


__all__ = ["mark", "mark_str"]

WIDTH = 72


def mark(d1, d2, text, output_stream):
    output_stream.write("  " + text + "\n")
    output_stream.write("  " + " " * d1 + "^" * (d2 - d1) + " " + "here\n")


def mark_str(d1, d2, text, output_stream):
    """Underlines text[d1:d2]; an empty span at the end gets one caret."""
    if d2 <= d1:
        d2 = d1 + 1
    if d1 >= len(text):
        text = text + " "
    text, start, end = _window(text, d1, d2)
    mark(start, end, text, output_stream)


def _window(text, d1, d2, width=WIDTH):
    """(text, d1, d2) cut down to about width characters around text[d1:d2].

    Cuts fall on spaces where possible so terms are not split.
    """
    if len(text) <= width:
        return (text, d1, d2)
    room = max(0, width - (d2 - d1)) // 2
    lo = max(0, d1 - room)
    hi = min(len(text), d2 + room)
    if lo:
        sp = text.find(" ", lo, d1)
        if sp != -1:
            lo = sp + 1
    if hi < len(text):
        sp = text.rfind(" ", d2, hi)
        if sp != -1:
            hi = sp
    head = "..." if lo else ""
    tail = "..." if hi < len(text) else ""
    shift = len(head) - lo
    return (head + text[lo:hi] + tail, d1 + shift, d2 + shift)
