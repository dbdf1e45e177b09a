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
flexygeom SUBCOMMAND [options]

  verify heisenberg|general|funny   reproduce the construction counts
  analyze                           points, lines and flexiness of a surface
  search-flexy                      exhaustive low-degree flexy search
  vanish                            vanishing polynomial through a point set
  decompose                         decomposition ledger for points and lines
  incidence                         incidence statistics of a line set

Exit codes: 0 pass, 1 mismatch, 2 usage or input error, 3 budget exceeded.
"""

import logging
import optparse
import random
import sys

from flexygeom.checkers import expected_counts, fmt_finding, run_all_checkers
from flexygeom.config import ConfigError, RunConfig, load_config
from flexygeom.constructions import (
    LineFamilyParams,
    check_cl_characterization,
    counterexample_report,
    funny_curve_charts,
    funny_surface,
    heisenberg,
    heisenberg_lines,
)
from flexygeom.field import FieldParams, FieldSpecError
from flexygeom.formats import FormatError, emit, read_lines, read_points, read_surface
from flexygeom.geom import incidence_stats, kakeya_check, union_points
from flexygeom.mpoly import parse
from flexygeom.parser import PolySyntaxError
from flexygeom.polymethod import (
    NotKakeya,
    check_theorem_hypotheses,
    decompose,
    min_degree_vanishing,
    vanishing_poly,
)
from flexygeom.search import FAMILIES, search_flexy
from flexygeom.surface import (
    PointClass,
    Surface,
    bad_line_census,
    classify_all,
    curve_G,
    is_flexy_surface,
    lines_in,
    rational_points,
    singular_points,
    verify_irreducible,
)
from flexygeom.util import BudgetExceeded, PreconditionError, get_mapper

logger = logging.getLogger("flexygeom")

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    pass


def common_options(o):
    o.add_option("--format", help="json, csv or text", default=None)
    o.add_option("--budget-points", type="int", dest="budget_points", default=None)
    o.add_option("--budget-lines", type="int", dest="budget_lines", default=None)
    o.add_option(
        "--ext", type="int", default=None, help="Extension degree for flexiness evidence"
    )
    o.add_option("--seed", type="int", default=None)
    o.add_option("--config", help="INI file with a [flexygeom] section", default=None)
    o.add_option(
        "--min-level",
        dest="min_level",
        help="Min level to print (logging constant names like ERROR)",
        default=None,
    )
    o.add_option(
        "--char2-divided-power",
        dest="mode",
        help="hasse or paper-literal",
        default=None,
    )
    o.add_option(
        "--no-parallel",
        help="Run scans in a single process",
        default=True,
        dest="parallel",
        action="store_false",
    )
    o.add_option("--out", help="Write the report here instead of stdout", default=None)


def build_config(opts):
    config = RunConfig()
    if opts.config:
        load_config(opts.config, config)
    for name in ("format", "budget_points", "budget_lines", "ext", "seed", "min_level", "mode"):
        value = getattr(opts, name, None)
        if value is not None:
            setattr(config, name, value)
    if getattr(opts, "field", None):
        config.field = opts.field
    config.parallel = opts.parallel
    return config.validate()


def _field(config, default=None):
    params = config.field_params()
    if params is None:
        if default is None:
            raise UsageError("--field is required")
        return default
    return params


# verify


def verify_options(o):
    o.set_usage("%prog verify heisenberg|general|funny [--p P] [--n N]")
    o.add_option("--p", type="int", default=2)
    o.add_option("--n", type="int", default=None)
    o.add_option(
        "--samples", type="int", default=200, help="Random tuples for the c_l check"
    )


def _random_family(rng, params):
    els = params.elements()
    return LineFamilyParams(*(rng.choice(els) for _ in range(4)))


def cmd_verify(name, p, n, config, samples=200):
    """(findings, report) for one construction; findings empty on a full match."""
    budgets = dict(budget_points=config.budget_points, budget_lines=config.budget_lines)
    if name == "heisenberg":
        n = 2 if n is None else n
        if n != 2:
            raise UsageError("The Heisenberg surface is defined over GF(p^2)")
        report = counterexample_report(p, 2, "heisenberg", ext=1, **budgets)
        X = heisenberg(p)
        verdict = is_flexy_surface(X, 1, config.budget_points)
        report["hypotheses"] = check_theorem_hypotheses(
            heisenberg_lines(p), p * p, [(X, verdict)]
        ).to_dict()
    elif name == "general":
        n = 3 if n is None else n
        report = counterexample_report(p, n, "general", ext=1, **budgets)
        params = FieldParams(p, n)
        rng = random.Random(config.seed)
        mismatches = 0
        for _ in range(samples):
            fam = _random_family(rng, params)
            if not check_cl_characterization(p, n, fam).matches():
                mismatches += 1
        report["cl_samples"] = samples
        report["cl_mismatches"] = mismatches
    elif name == "funny":
        p, n = 3, 1
        X = funny_surface()
        G = curve_G(X.f, config.mode)
        report = {
            "construction": "funny",
            "field": str(X.params),
            "polynomial": str(X.f),
            "charts": {k: str(v) for k, v in sorted(funny_curve_charts().items())},
            "points": [len(rational_points(X, m, config.budget_points)) for m in (1, 2)],
            "flexy": [is_flexy_surface(X, m, config.budget_points).to_dict() for m in (1, 2)],
            "G": str(G),
            "G_zero": G.is_zero(),
        }
    else:
        raise UsageError("Unknown construction %r" % name)
    return run_all_checkers(report, expected_counts(name, p, n)), report


def run_verify(opts, args, config):
    if len(args) != 1:
        raise UsageError("verify takes one construction name")
    errs, report = cmd_verify(args[0], opts.p, opts.n, config, opts.samples)
    min_level = logging.getLevelName(config.min_level)
    for err in errs:
        if err[1] >= min_level:
            print(fmt_finding(err), file=sys.stderr)
    report["findings"] = [fmt_finding(e) for e in errs]
    failed = any(err[1] >= logging.ERROR for err in errs)
    return report, EXIT_MISMATCH if failed else EXIT_OK


# analyze


def analyze_options(o):
    o.set_usage("%prog analyze [--field GF(q)] POLYNOMIAL | --in surface.json")
    o.add_option("--field", default=None)
    o.add_option("--in", dest="infile", default=None, help="surface.json")
    o.add_option("--curve", action="store_true", default=False, help="Plane curve in x, y")
    o.add_option(
        "--attested",
        action="store_true",
        default=False,
        help="Attest the surface reduced and irreducible",
    )


def cmd_analyze(X, config):
    histogram = classify_all(X, 1, config.budget_points)
    lines = lines_in(X, config.budget_lines, config.budget_points)
    verdict = is_flexy_surface(X, config.ext, config.budget_points)
    report = {
        "field": str(X.params),
        "polynomial": str(X.f),
        "ambient": X.ambient,
        "degree": X.degree,
        "points": len(rational_points(X, 1, config.budget_points)),
        "lines": len(lines),
        "classes": {str(c): histogram[c] for c in PointClass},
        "singular_points": [str(pt) for pt in singular_points(X, 1)],
        "flexy": verdict.to_dict(),
        "irreducible": verify_irreducible(X),
    }
    if X.degree > 1:
        try:
            report["census"] = bad_line_census(X, config.ext, config.budget_points).to_dict()
        except PreconditionError as e:
            report["census"] = {"skipped": str(e)}
    return report


def run_analyze(opts, args, config):
    if opts.infile:
        X = read_surface(opts.infile)
    else:
        if len(args) != 1:
            raise UsageError("analyze takes one polynomial or --in FILE")
        params = _field(config, FieldParams(2))
        X = Surface(
            parse(args[0], params),
            ambient=2 if opts.curve else 3,
            attested_reduced=opts.attested,
            attested_irreducible=opts.attested,
        )
    return cmd_analyze(X, config), EXIT_OK


# search-flexy


def search_options(o):
    o.set_usage("%prog search-flexy --p P --max-degree D [--family funny | --support TEXT]")
    o.add_option("--p", type="int", default=3)
    o.add_option("--max-degree", dest="max_degree", type="int", default=2)
    o.add_option("--family", default=None, help=", ".join(sorted(FAMILIES)))
    o.add_option("--support", default=None, help="Polynomial whose monomials are searched")
    o.add_option("--budget", type="int", default=2 ** 20, help="Max candidates")


def cmd_search_flexy(p, max_degree, config, support=None, budget=None):
    imap, pool = get_mapper(config.parallel)
    try:
        return search_flexy(
            p, max_degree, config.ext, support=support, budget=budget, imap=imap
        )
    finally:
        if pool is not None:
            pool.close()
            pool.join()


def run_search(opts, args, config):
    support = opts.support
    if opts.family:
        if opts.family not in FAMILIES:
            raise UsageError("Unknown family %r" % opts.family)
        support = FAMILIES[opts.family]
    result = cmd_search_flexy(opts.p, opts.max_degree, config, support, opts.budget)
    code = EXIT_MISMATCH if result.low_degree_hits else EXIT_OK
    return result.to_dict(), code


# vanish


def vanish_options(o):
    o.set_usage("%prog vanish --points FILE [--degree D]")
    o.add_option("--points", default=None)
    o.add_option("--field", default=None)
    o.add_option("--degree", type="int", default=None)


def cmd_vanish(points, degree=None):
    if degree is None:
        degree, P = min_degree_vanishing(points)
    else:
        P = vanishing_poly(points, degree)
    report = {
        "points": len(set(points)),
        "degree": degree,
        "found": P is not None,
        "polynomial": str(P) if P is not None else None,
    }
    if P is not None:
        report["verified"] = all(not P.evaluate(pt) for pt in points)
    return report


def run_vanish(opts, args, config):
    if not opts.points:
        raise UsageError("--points is required")
    _, points = read_points(opts.points, config.field_params())
    if not points:
        raise UsageError("Empty point set")
    report = cmd_vanish(points, opts.degree)
    return report, EXIT_OK if report["found"] else EXIT_MISMATCH


# decompose


def decompose_options(o):
    o.set_usage("%prog decompose --in LINES --points POINTS --N N [--K K] [--out FILE]")
    o.add_option("--in", dest="infile", default=None, help="Lines file")
    o.add_option("--points", default=None)
    o.add_option("--field", default=None)
    o.add_option("--N", dest="N", type="int", default=None)
    o.add_option("--K", dest="K", default=None, help="Rational, e.g. 1/2")


def cmd_decompose(points, lines, N, config, K=None):
    return decompose(points, lines, N, config.decomposition_constants(K)).to_dict()


def run_decompose(opts, args, config):
    if not opts.infile or opts.N is None:
        raise UsageError("--in and --N are required")
    params, lines = read_lines(opts.infile, config.field_params())
    if opts.points:
        _, points = read_points(opts.points, params)
    else:
        points = sorted(union_points(lines))
    return cmd_decompose(points, lines, opts.N, config, opts.K), EXIT_OK


# incidence


def incidence_options(o):
    o.set_usage("%prog incidence --lines FILE [--points FILE] [--N N]")
    o.add_option("--lines", default=None)
    o.add_option("--points", default=None)
    o.add_option("--field", default=None)
    o.add_option("--N", dest="N", type="int", default=None)


def cmd_incidence(points, lines, config, N=None):
    imap, pool = get_mapper(config.parallel)
    try:
        stats = incidence_stats(points, lines, imap)
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    report = stats.to_dict()
    report["kakeya"] = kakeya_check(lines)
    if N is not None:
        report["hypotheses"] = check_theorem_hypotheses(lines, N).to_dict()
    return report


def run_incidence(opts, args, config):
    if not opts.lines:
        raise UsageError("--lines is required")
    params, lines = read_lines(opts.lines, config.field_params())
    if opts.points:
        _, points = read_points(opts.points, params)
    else:
        points = union_points(lines)
    return cmd_incidence(points, lines, config, opts.N), EXIT_OK


COMMANDS = {
    "verify": (verify_options, run_verify),
    "analyze": (analyze_options, run_analyze),
    "search-flexy": (search_options, run_search),
    "vanish": (vanish_options, run_vanish),
    "decompose": (decompose_options, run_decompose),
    "incidence": (incidence_options, run_incidence),
}


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]

    if not argv or argv[0] not in COMMANDS:
        print(__doc__.strip(), file=sys.stderr)
        if argv and argv[0] in ("-h", "--help"):
            return EXIT_OK
        return EXIT_USAGE

    add_options, run = COMMANDS[argv[0]]
    o = optparse.OptionParser(prog="flexygeom %s" % argv[0])
    common_options(o)
    add_options(o)
    opts, args = o.parse_args(argv[1:])

    try:
        config = build_config(opts)
    except (ConfigError, FieldSpecError) as e:
        o.error(str(e))
    logging.basicConfig(
        level=getattr(logging, config.min_level),
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        report, code = run(opts, args, config)
    except UsageError as e:
        o.error(str(e))
    except PolySyntaxError as e:
        print("%s: %s" % (o.get_prog_name(), e), file=sys.stderr)
        e.mark(sys.stderr)
        return EXIT_USAGE
    except (FormatError, FieldSpecError, ConfigError, PreconditionError, NotKakeya) as e:
        print("%s: %s" % (o.get_prog_name(), e), file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as e:
        print("%s: budget exceeded: %s" % (o.get_prog_name(), e), file=sys.stderr)
        return EXIT_BUDGET

    if opts.out:
        with open(opts.out, "w") as f:
            emit(report, config.format, f)
    else:
        emit(report, config.format, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
