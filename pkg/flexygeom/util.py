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
import math
from fractions import Fraction

logger = logging.getLogger("flexygeom")


class BudgetExceeded(Exception):
    """An enumeration would exceed its configured budget."""

    def __init__(self, what, needed, budget):
        Exception.__init__(
            self, "%s needs %d items, budget is %d" % (what, needed, budget)
        )
        self.what = what
        self.needed = needed
        self.budget = budget


class PreconditionError(ValueError):
    pass


def check_budget(what, needed, budget):
    if budget is not None and needed > budget:
        raise BudgetExceeded(what, needed, budget)


def binomial_mod(m, k, p):
    if k < 0 or k > m:
        return 0
    return math.comb(m, k) % p


def smallest_divisor(n):
    """Smallest divisor > 1; n itself when n is prime."""
    for d in range(2, n + 1):
        if n % d == 0:
            return d
    raise ValueError("%d has no nontrivial divisor" % n)


def fmt_fraction(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def cube_le(a, b_cubed):
    """a <= b where b is given by its cube; exact for rationals."""
    return Fraction(a) ** 3 <= b_cubed


def cube_ge(a, b_cubed):
    return Fraction(a) ** 3 >= b_cubed


def get_mapper(parallel, processes=None):
    """Returns (imap, pool); `pool` is None for the serial fallback."""
    if parallel:
        import multiprocessing

        try:
            pool = multiprocessing.Pool(processes)
        except (OSError, ValueError) as e:
            logger.warning("No worker pool (%s), running serially", e)
        else:
            return (pool.imap, pool)
    return (map, None)

