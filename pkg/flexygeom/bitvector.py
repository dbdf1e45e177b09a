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
Point sets of AG(3,q) as Python ints.  Bit i is set iff the point with index
i (see `point_index`) is a member; unions are `|`, intersections `&`.
"""


def point_index(pt):
    q = pt.x.params.q
    return (pt.x.code * q + pt.y.code) * q + pt.z.code


def bitvector(nums):
    i = 0
    for n in nums:
        i |= 1 << n
    return i


def pointset(points):
    return bitvector(point_index(pt) for pt in points)


def population(i):
    return bin(i).count("1")
