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
Row reduction over GF(q) on numpy arrays of field codes.

Arithmetic goes through the field's add/mul tables used as numpy lookup
arrays, so a whole row operation is one fancy-indexing expression.
"""

import functools

import numpy as np

from flexygeom.field import TABLE_LIMIT

__all__ = ["monomials", "field_tables", "evaluation_matrix", "rref", "kernel_vector"]


def monomials(d):
    """Exponent triples of degree <= d, ascending degree, x > y > z within a degree."""
    out = []
    for deg in range(d + 1):
        for i in range(deg, -1, -1):
            for j in range(deg - i, -1, -1):
                out.append((i, j, deg - i - j))
    return out


class Tables(object):
    __slots__ = ("add", "mul", "neg", "inv")

    def __init__(self, add, mul, neg, inv):
        self.add = add
        self.mul = mul
        self.neg = neg
        self.inv = inv


@functools.lru_cache(maxsize=None)
def field_tables(params):
    if params.q > TABLE_LIMIT:
        raise ValueError(
            "Linear algebra needs lookup tables; %s has more than %d elements"
            % (params, TABLE_LIMIT)
        )
    q = params.q
    add = np.array(params.add_table(), dtype=np.int64)
    mul = np.array(params.mul_table(), dtype=np.int64)
    neg = np.array([params.cneg(a) for a in range(q)], dtype=np.int64)
    inv = np.array([0] + [params.cinv(a) for a in range(1, q)], dtype=np.int64)
    return Tables(add, mul, neg, inv)


def evaluation_matrix(points, monos, params):
    """Row per point, column per monomial: the monomial's value at the point."""
    cmul, cpow = params.cmul, params.cpow
    mat = np.zeros((len(points), len(monos)), dtype=np.int64)
    for r, pt in enumerate(points):
        codes = [c.code for c in pt]
        pw = [{} for _ in range(3)]
        for c, (i, j, k) in enumerate(monos):
            val = 1
            for v, e in enumerate((i, j, k)):
                if e:
                    if e not in pw[v]:
                        pw[v][e] = cpow(codes[v], e)
                    val = cmul(val, pw[v][e])
            mat[r, c] = val
    return mat


def _rref_codes(a, params):
    """Row reduction through the field's code arithmetic, for fields too large
    for lookup tables."""
    cadd, cmul, cneg, cinv = params.cadd, params.cmul, params.cneg, params.cinv
    m = [[int(c) for c in row] for row in a]
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = cinv(m[r][c])
        m[r] = [cmul(s, x) for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = cneg(m[i][c])
                m[i] = [cadd(x, cmul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return np.array(m[:r], dtype=np.int64).reshape(r, cols), pivots


def rref(matrix, params):
    """(reduced rows, pivot columns) of a code matrix; the input is not modified."""
    a = np.array(matrix, dtype=np.int64, copy=True)
    if a.ndim != 2:
        raise ValueError("Expected a matrix, got shape %r" % (a.shape,))
    if params.q > TABLE_LIMIT:
        return _rref_codes(a, params)
    t = field_tables(params)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if not nz.size:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = t.mul[t.inv[a[r, c]], a[r]]
        factors = t.neg[a[:, c]]
        factors[r] = 0
        a = t.add[a, t.mul[factors[:, None], a[r][None, :]]]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def kernel_vector(matrix, params):
    """The kernel vector whose first free column is 1 and other free columns 0.

    Returns None when the kernel is zero.
    """
    matrix = np.asarray(matrix, dtype=np.int64)
    cols = matrix.shape[1]
    if not matrix.shape[0]:
        vec = [0] * cols
        if cols:
            vec[0] = 1
            return vec
        return None
    reduced, pivots = rref(matrix, params)
    pivot_set = set(pivots)
    free = next((c for c in range(cols) if c not in pivot_set), None)
    if free is None:
        return None
    vec = [0] * cols
    vec[free] = 1
    for i, pc in enumerate(pivots):
        vec[pc] = params.cneg(int(reduced[i, free]))
    return vec
