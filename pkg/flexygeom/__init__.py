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


from flexygeom.field import FieldElem, FieldParams
from flexygeom.geom import Line3, Point3
from flexygeom.mpoly import MultiPoly, parse
from flexygeom.surface import Surface, is_flexy_surface, lines_in, rational_points

__all__ = [
    "FieldElem",
    "FieldParams",
    "Line3",
    "MultiPoly",
    "Point3",
    "Surface",
    "is_flexy_surface",
    "lines_in",
    "parse",
    "rational_points",
]
