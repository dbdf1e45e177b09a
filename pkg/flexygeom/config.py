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
Run configuration: defaults, an optional INI file, then command-line options.

    [flexygeom]
    field = GF(3^2)
    budget-points = 1048576
    ext = 2
    K = 1/2

    [moduli]
    2^3 = 1,0,1,1
"""

import configparser
import logging
from fractions import Fraction

from flexygeom.field import FieldParams, FieldSpecError, set_default_modulus
from flexygeom.polymethod import DecompositionConstants

FORMATS = ("json", "csv", "text")
MODES = ("hasse", "paper-literal")

# INI key -> RunConfig attribute
KEYS = {
    "field": "field",
    "budget-points": "budget_points",
    "budget-lines": "budget_lines",
    "ext": "ext",
    "seed": "seed",
    "format": "format",
    "char2-divided-power": "mode",
    "min-level": "min_level",
}
CONSTANT_KEYS = {
    "K": "K",
    "bucket-factor": "bucket_factor",
    "fit-factor": "fit_factor",
    "lprime-factor": "lprime_factor",
    "ldouble-factor": "ldouble_factor",
    "degree-cap": "degree_cap",
}


class ConfigError(ValueError):
    pass


class RunConfig(object):
    def __init__(self, **kw):
        self.field = None
        self.budget_points = 2 ** 20
        self.budget_lines = 2 ** 20
        self.ext = 2
        self.seed = 0
        self.format = "json"
        self.mode = "hasse"
        self.min_level = "WARNING"
        self.parallel = True
        self.constants = {}
        for k, v in kw.items():
            if not hasattr(self, k):
                raise ConfigError("Unknown setting %r" % k)
            setattr(self, k, v)

    def validate(self):
        for name in ("budget_points", "budget_lines"):
            if int(getattr(self, name)) <= 0:
                raise ConfigError("%s must be positive" % name.replace("_", "-"))
        if int(self.ext) < 1:
            raise ConfigError("ext must be >= 1")
        if self.format not in FORMATS:
            raise ConfigError("format must be one of %s" % ", ".join(FORMATS))
        if self.mode not in MODES:
            raise ConfigError("char2-divided-power must be one of %s" % ", ".join(MODES))
        if not isinstance(logging.getLevelName(self.min_level), int):
            raise ConfigError("Unknown level %r" % self.min_level)
        self.decomposition_constants()
        return self

    def field_params(self):
        if self.field is None:
            return None
        try:
            return FieldParams.parse(self.field)
        except FieldSpecError as e:
            raise ConfigError(str(e))

    def decomposition_constants(self, K=None):
        kw = {k: Fraction(v) for k, v in self.constants.items()}
        if K is not None:
            kw["K"] = Fraction(K)
        try:
            return DecompositionConstants(**kw)
        except (ValueError, ZeroDivisionError) as e:
            raise ConfigError(str(e))

    def to_dict(self):
        out = {k: getattr(self, k) for k in sorted(vars(self)) if k != "constants"}
        out["constants"] = {k: str(v) for k, v in sorted(self.constants.items())}
        return out


def _int(section, key):
    try:
        return section.getint(key)
    except ValueError:
        raise ConfigError("%s must be an integer" % key)


def load_config(path, config=None):
    """Reads an INI file into `config` (a new RunConfig by default)."""
    config = config or RunConfig()
    parser = configparser.ConfigParser()
    parser.optionxform = str
    if not parser.read(path):
        raise ConfigError("Cannot read config file %s" % path)
    if parser.has_section("flexygeom"):
        section = parser["flexygeom"]
        for key in section:
            if key in KEYS:
                attr = KEYS[key]
                if attr in ("budget_points", "budget_lines", "ext", "seed"):
                    setattr(config, attr, _int(section, key))
                else:
                    setattr(config, attr, section[key].strip())
            elif key in CONSTANT_KEYS:
                config.constants[CONSTANT_KEYS[key]] = section[key].strip()
            else:
                raise ConfigError("Unknown key %r in [flexygeom]" % key)
    if parser.has_section("moduli"):
        for key, value in parser["moduli"].items():
            try:
                p, n = (int(s) for s in key.split("^"))
                set_default_modulus(p, n, [int(c) for c in value.split(",")])
            except (ValueError, FieldSpecError) as e:
                raise ConfigError("Bad modulus %s = %s: %s" % (key, value, e))
    return config
