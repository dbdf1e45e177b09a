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
Exhaustive search for flexy non-plane surfaces of low degree over GF(p).

Candidates are coefficient vectors over a monomial support (by default every
monomial of degree <= max_degree), listed highest monomial first with the
first nonzero coefficient fixed to 1, so each surface appears once up to
scalar.  Each candidate is classified:

  plane         degree <= 1
  not-flexy     a smooth non-flexy point exists over GF(p) or GF(p^ext)
  reducible     flexy so far, but has a linear factor over GF(p^ext)
  undetermined  no smooth point over GF(p^ext)
  hit           every smooth point over GF(p^ext) is flexy
"""

import itertools
import logging
from collections import Counter

from flexygeom.field import FieldParams
from flexygeom.linalg import monomials
from flexygeom.mpoly import MultiPoly, linear_factors, parse
from flexygeom.surface import PointClass, Surface
from flexygeom.util import check_budget

logger = logging.getLogger(__name__)

__all__ = ["FAMILIES", "SearchResult", "support_monomials", "candidate_vectors", "classify_candidate", "search_flexy"]

FAMILIES = {
    "funny": "x^3*y + y^3 + x + y + 1",
}

OUTCOMES = ("plane", "not-flexy", "reducible", "undetermined", "hit")


def support_monomials(max_degree, support=None):
    """Exponent triples, highest graded-lex first."""
    if support is not None:
        exps = [e for e, _ in support.code_terms() if sum(e) <= max_degree]
    else:
        exps = monomials(max_degree)
    return sorted(set(exps), key=lambda e: (sum(e),) + tuple(e), reverse=True)


def candidate_vectors(size, p):
    for k in range(size):
        for rest in itertools.product(range(p), repeat=size - k - 1):
            yield (0,) * k + (1,) + rest


def classify_candidate(f, ext=2):
    if f.degree <= 1:
        return "plane"
    X = Surface(f)
    for m in sorted({1, ext}):
        scan = X.scan(m)
        smooth = 0
        checked_factors = False
        for i in range(len(scan)):
            cls = scan.classify(i)
            if cls is PointClass.SMOOTH_NON_FLEXY:
                return "not-flexy"
            if cls is PointClass.FLEXY:
                smooth += 1
                if m == ext and not checked_factors:
                    checked_factors = True
                    if linear_factors(f.rebase(scan.params)).factors:
                        return "reducible"
    return "hit" if smooth else "undetermined"


def _scan_chunk(args):
    p, exps, ext, vectors = args
    params = FieldParams(p)
    out = []
    for vec in vectors:
        f = MultiPoly(params, {e: c for e, c in zip(exps, vec) if c})
        out.append((vec, classify_candidate(f, ext), f.degree))
    return out


class SearchResult(object):
    def __init__(self, p, max_degree, ext, support):
        self.p = p
        self.max_degree = max_degree
        self.ext = ext
        self.support = support
        self.candidates = 0
        self.outcomes = Counter()
        self.hits = []

    @property
    def non_plane(self):
        return self.candidates - self.outcomes["plane"]

    @property
    def low_degree_hits(self):
        return [(f, d) for f, d in self.hits if d < self.p]

    def to_dict(self):
        return {
            "p": self.p,
            "max_degree": self.max_degree,
            "ext": self.ext,
            "support": self.support,
            "candidates": self.candidates,
            "non_plane_candidates": self.non_plane,
            "outcomes": {k: self.outcomes[k] for k in OUTCOMES},
            "hits": [{"polynomial": f, "degree": d} for f, d in self.hits],
            "low_degree_hits": [f for f, _ in self.low_degree_hits],
        }


def _chunks(vectors, size):
    it = iter(vectors)
    while True:
        chunk = list(itertools.islice(it, size))
        if not chunk:
            return
        yield chunk


def search_flexy(p, max_degree, ext=2, support=None, budget=None, imap=map, chunk_size=256):
    """Every flexy non-plane surface of degree <= max_degree over GF(p), up to scalar.

    `support` is polynomial text whose monomials restrict the search.
    """
    params = FieldParams(p)
    poly = parse(support, params) if support else None
    exps = support_monomials(max_degree, poly)
    total = (p ** len(exps) - 1) // (p - 1)
    check_budget("search candidates", total, budget)
    result = SearchResult(p, max_degree, ext, str(poly) if poly is not None else None)
    logger.info("Searching %d candidates over %s", total, params)
    work = (
        (p, exps, ext, chunk)
        for chunk in _chunks(candidate_vectors(len(exps), p), chunk_size)
    )
    for part in imap(_scan_chunk, work):
        for vec, outcome, degree in part:
            result.candidates += 1
            result.outcomes[outcome] += 1
            if outcome == "hit":
                f = MultiPoly(params, {e: c for e, c in zip(exps, vec) if c})
                result.hits.append((str(f), degree))
    return result
