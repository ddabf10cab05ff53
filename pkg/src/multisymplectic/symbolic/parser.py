#  Copyright (c) "Neo4j"
#  Neo4j Sweden AB [https://neo4j.com]
#  #
#  Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
#  You may obtain a copy of the License at
#  #
#      https://www.apache.org/licenses/LICENSE-2.0
#  #
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS,
#  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#  See the License for the specific language governing permissions and
#  limitations under the License.
"""Recursive-descent parser for the scalar expression grammar.

.. code-block:: text

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' integer)?
    atom   := number | ident | func '(' expr ')' | '(' expr ')'
    func   := 'sin' | 'cos' | 'exp'

``^`` binds tighter than unary minus, so ``-p^2`` is ``-(p^2)``. Decimal
literals become exact rationals and a divisor must be a nonzero constant.
"""

from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import Optional

import sympy

from multisymplectic.exceptions import ExpressionSyntaxError

logger = logging.getLogger(__name__)

FUNCTIONS = {"sin": sympy.sin, "cos": sympy.cos, "exp": sympy.exp}
RESERVED_NAMES = frozenset(FUNCTIONS)

_ATOM_START = ["number", "identifier", "(", "-"]
_AFTER_OPERAND = ["+", "-", "*", "/", "^", "end of input"]


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    idx = 0
    while idx < len(source):
        char = source[idx]
        if char.isspace():
            idx += 1
            continue
        if char.isdigit() or (
            char == "." and idx + 1 < len(source) and source[idx + 1].isdigit()
        ):
            start = idx
            while idx < len(source) and source[idx].isdigit():
                idx += 1
            if idx < len(source) and source[idx] == ".":
                idx += 1
                if idx >= len(source) or not source[idx].isdigit():
                    raise ExpressionSyntaxError(idx, ["digit"], source)
                while idx < len(source) and source[idx].isdigit():
                    idx += 1
            tokens.append(Token("number", source[start:idx], start))
            continue
        if char.isalpha() or char == "_":
            start = idx
            while idx < len(source) and (source[idx].isalnum() or source[idx] == "_"):
                idx += 1
            tokens.append(Token("identifier", source[start:idx], start))
            continue
        if char in "+-*/^()":
            tokens.append(Token(char, char, idx))
            idx += 1
            continue
        raise ExpressionSyntaxError(idx, _ATOM_START + _AFTER_OPERAND[:-1], source)
    tokens.append(Token("end", "", len(source)))
    return tokens


class ExpressionParser:
    """Parses one expression string into a canonical-ready ``sympy.Expr``.

    Identifiers become plain :class:`sympy.Symbol` objects named after the
    identifier; the caller decides which names are legal coordinates.
    """

    def __init__(self, source: str) -> None:
        self.source = source
        self.tokens = tokenize(source)
        self.index = 0

    def parse(self) -> sympy.Expr:
        result = self._expr()
        token = self._peek()
        if token.kind != "end":
            expected = _AFTER_OPERAND + ([")"] if self._depth_hint() else [])
            raise ExpressionSyntaxError(token.position, expected, self.source)
        return result

    def _depth_hint(self) -> bool:
        return any(t.kind == "(" for t in self.tokens[: self.index])

    def _peek(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _expect(self, kind: str) -> Token:
        token = self._peek()
        if token.kind != kind:
            raise ExpressionSyntaxError(token.position, [kind], self.source)
        return self._advance()

    def _expr(self) -> sympy.Expr:
        result = self._term()
        while self._peek().kind in ("+", "-"):
            op = self._advance()
            rhs = self._term()
            result = result + rhs if op.kind == "+" else result - rhs
        return result

    def _term(self) -> sympy.Expr:
        result = self._unary()
        while self._peek().kind in ("*", "/"):
            op = self._advance()
            divisor_position = self._peek().position
            rhs = self._unary()
            if op.kind == "*":
                result = result * rhs
                continue
            if not isinstance(rhs, sympy.Rational) or rhs == 0:
                # NB: only nonzero rational divisors keep expressions polynomial
                raise ExpressionSyntaxError(
                    divisor_position, ["nonzero constant"], self.source
                )
            result = result / rhs
        return result

    def _unary(self) -> sympy.Expr:
        if self._peek().kind == "-":
            self._advance()
            return -self._unary()
        return self._power()

    def _power(self) -> sympy.Expr:
        base = self._atom()
        if self._peek().kind != "^":
            return base
        self._advance()
        token = self._peek()
        if token.kind != "number" or not token.text.isdigit():
            raise ExpressionSyntaxError(token.position, ["integer"], self.source)
        self._advance()
        return base ** sympy.Integer(int(token.text))

    def _atom(self) -> sympy.Expr:
        token = self._peek()
        if token.kind == "number":
            self._advance()
            return sympy.Rational(token.text)
        if token.kind == "(":
            self._advance()
            inner = self._expr()
            self._expect(")")
            return inner
        if token.kind == "identifier":
            self._advance()
            if token.text in FUNCTIONS:
                self._expect("(")
                argument = self._expr()
                self._expect(")")
                return FUNCTIONS[token.text](argument)  # type: ignore[no-any-return]
            if self._peek().kind == "(":
                raise ExpressionSyntaxError(
                    token.position, sorted(FUNCTIONS), self.source
                )
            return sympy.Symbol(token.text)
        raise ExpressionSyntaxError(token.position, _ATOM_START, self.source)


def parse_expr(src: str, allowed_names: Optional[set[str]] = None) -> sympy.Expr:
    """Parses ``src`` into a ``sympy.Expr``.

    Args:
        src (str): The expression text.
        allowed_names (Optional[set[str]]): If given, every identifier must be one
            of these names.

    Raises:
        ExpressionSyntaxError: With the offending offset and the expected tokens.
    """
    parser = ExpressionParser(src)
    result = parser.parse()
    if allowed_names is not None:
        for token in parser.tokens:
            if (
                token.kind == "identifier"
                and token.text not in FUNCTIONS
                and token.text not in allowed_names
            ):
                raise ExpressionSyntaxError(
                    token.position, sorted(allowed_names), src
                )
    logger.debug("Parsed %r into %s", src, result)
    return result
