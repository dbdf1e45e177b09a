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
Polynomial text, as written on the command line and in surface files::

    x^3*y + y^3 + x
    2*x^2 - y*z + 10*z     (coefficients are digit strings c_{n-1}...c_0)
    [a]*x + [1b]*y         (digit strings with letters are bracketed)

Tokenizing is done by a Pygments RegexLexer; the token stream is then read by
a small recursive-descent parser that builds a MultiPoly.
"""

import sys

from pygments.lexer import RegexLexer
from pygments.token import Error, Other

from flexygeom.field import FieldSpecError

COEFFICIENT = Other.Coefficient
VARIABLE = Other.Variable
EXPONENT = Other.Exponent


class PolySyntaxError(ValueError):
    def __init__(self, msg, text, pos, end=None):
        ValueError.__init__(self, "%s at position %d" % (msg, pos))
        self.msg = msg
        self.text = text
        self.pos = pos
        self.end = end if end is not None else pos + 1

    def mark(self, output_stream):
        from flexygeom.indicator import mark_str

        mark_str(self.pos, self.end, self.text, output_stream)


class PolyLexer(RegexLexer):
    name = "flexypoly"
    filenames = ["*.poly"]  # fake
    flags = 0

    tokens = {
        "root": [
            (r"\s+", Other.Whitespace),
            (r"[xyz]", VARIABLE),
            (r"[0-9][0-9a-w]*", COEFFICIENT),
            (r"\[[0-9a-w]+\]", COEFFICIENT),
            (r"\^", Other.Power, "exponent"),
            (r"\*", Other.Times),
            (r"\+", Other.Plus),
            (r"-", Other.Minus),
            (r"[A-Za-z_]\w*", Other.Name),
        ],
        "exponent": [
            (r"\s+", Other.Whitespace),
            (r"[0-9]+", EXPONENT, "#pop"),
            (r"", Other.MissingExponent, "#pop"),
        ],
    }


def tokenize(text):
    """(pos, ttype, data) triples, whitespace dropped."""
    out = []
    for i, ttype, data in PolyLexer().get_tokens_unprocessed(text):
        if ttype in Other.Whitespace:
            continue
        if ttype is Other.MissingExponent:
            raise PolySyntaxError("Expected an exponent after '^'", text, i)
        if ttype is Other.Name:
            raise PolySyntaxError(
                "Unknown variable %r" % data, text, i, i + len(data)
            )
        if ttype in Error:
            raise PolySyntaxError("Unexpected character %r" % data, text, i)
        out.append((i, ttype, data))
    return out


class _Reader(object):
    def __init__(self, text, params):
        self.text = text
        self.params = params
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        if self.i < len(self.toks):
            return self.toks[self.i]
        return (len(self.text), None, "")

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def poly(self):
        from flexygeom.mpoly import MultiPoly

        acc = MultiPoly(self.params)
        pos, ttype, data = self.peek()
        sign = 1
        if ttype is Other.Minus:
            self.take()
            sign = -1
        while True:
            term = self.term()
            acc = acc + term if sign > 0 else acc - term
            pos, ttype, data = self.peek()
            if ttype is None:
                return acc
            if ttype is Other.Plus:
                sign = 1
            elif ttype is Other.Minus:
                sign = -1
            else:
                raise PolySyntaxError(
                    "Expected '+' or '-', got %r" % data, self.text, pos
                )
            self.take()

    def term(self):
        from flexygeom.mpoly import MultiPoly

        coeff = self.params.one
        exps = [0, 0, 0]
        while True:
            pos, ttype, data = self.take()
            if ttype is COEFFICIENT:
                try:
                    coeff = coeff * self.params.from_digits(data.strip("[]"))
                except FieldSpecError:
                    raise PolySyntaxError(
                        "%r is not an element of %s" % (data, self.params),
                        self.text,
                        pos,
                        pos + len(data),
                    )
            elif ttype is VARIABLE:
                v = "xyz".index(data)
                e = 1
                if self.peek()[1] is Other.Power:
                    self.take()
                    _, _, digits = self.take()
                    e = int(digits)
                exps[v] += e
            else:
                what = repr(data) if data else "end of input"
                raise PolySyntaxError(
                    "Expected a coefficient or variable, got %s" % what,
                    self.text,
                    pos,
                )
            if self.peek()[1] is not Other.Times:
                break
            self.take()
        return MultiPoly(self.params, {tuple(exps): coeff})


def parse(text, params):
    """Parses polynomial text over `params`; raises PolySyntaxError."""
    return _Reader(text, params).poly()


def parser_main(args):
    from flexygeom.field import FieldParams

    text = args[0] if args else "x^3*y + y^3 + x"
    params = FieldParams.parse(args[1]) if len(args) > 1 else FieldParams(3)
    for pos, ttype, data in tokenize(text):
        print("%3d %-24s %r" % (pos, ttype, data))
    print(parse(text, params))


if __name__ == "__main__":
    parser_main(sys.argv[1:])
