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
"""Exact scalar expressions over named real coordinates.

A ``ScalarExpr`` is a :class:`sympy.Expr` built from rational constants,
coordinate symbols, sums, products, non-negative integer powers and the unary
functions ``sin``, ``cos`` and ``exp``. The canonical form is sympy's automatic
canonicalisation followed by a polynomial expansion; trigonometric and
exponential identities are deliberately never applied.
"""

from __future__ import annotations
import logging
from enum import Enum
from typing import Callable, Iterable, Mapping, Union

import sympy
from sympy.printing.str import StrPrinter

from multisymplectic.exceptions import NotPolynomialError, UnboundSymbolError

logger = logging.getLogger(__name__)

ScalarLike = Union[sympy.Expr, int]
Point = Mapping[str, float]

ELEMENTARY_FUNCTIONS: tuple[type[sympy.Function], ...] = (sympy.sin, sympy.cos, sympy.exp)


class ZeroTest(str, Enum):
    """Outcome of a symbolic zero test."""

    ZERO = "zero"
    NONZERO = "nonzero"
    UNKNOWN = "unknown"


def as_expr(value: ScalarLike) -> sympy.Expr:
    """Coerces integers and sympy numbers into a ``sympy.Expr``.

    Floats are rejected since every constant must be exact.
    """
    if isinstance(value, bool):
        raise TypeError("Booleans are not scalar expressions")
    if isinstance(value, float):
        raise TypeError(f"Inexact constant {value!r}; use a rational or a decimal string")
    expr = sympy.sympify(value)
    if not isinstance(expr, sympy.Expr):
        raise TypeError(f"Type mismatch, expected a scalar expression, got {type(value)}")
    return expr


def normalize(e: ScalarLike) -> sympy.Expr:
    """Returns the canonical form of ``e``.

    Products are distributed over sums and integer powers of sums are
    multiplied out, also inside function arguments. Exponentials and
    powers are never split and no trigonometric rewriting takes place, so
    ``sin(t)^2 + cos(t)^2`` stays as it is.
    """
    return sympy.expand(
        as_expr(e),
        deep=True,
        mul=True,
        multinomial=True,
        power_exp=False,
        power_base=False,
        log=False,
    )


def has_elementary_function(e: sympy.Expr) -> bool:
    return bool(e.atoms(*ELEMENTARY_FUNCTIONS))


def differentiate(e: ScalarLike, s: sympy.Symbol) -> sympy.Expr:
    """Exact partial derivative of ``e`` with respect to the coordinate ``s``."""
    return normalize(sympy.diff(as_expr(e), s))


def is_zero(e: ScalarLike) -> ZeroTest:
    """Tri-state zero test.

    Exact for polynomials. With ``sin``, ``cos`` or ``exp`` present, only a
    literal ``0`` canonical form is recognised; anything else is
    ``ZeroTest.UNKNOWN`` and left to numeric probing by the caller.
    """
    canonical = normalize(e)
    if canonical == 0:
        return ZeroTest.ZERO
    if has_elementary_function(canonical):
        return ZeroTest.UNKNOWN
    return ZeroTest.NONZERO


def free_symbol_names(e: sympy.Expr) -> list[str]:
    return sorted(str(s) for s in e.free_symbols)


def compile_numeric(
    e: ScalarLike, symbols: Iterable[sympy.Symbol]
) -> Callable[..., float]:
    """Compiles ``e`` into a numpy callable taking one argument per symbol."""
    return sympy.lambdify(tuple(symbols), as_expr(e), modules="numpy")  # type: ignore[no-any-return]


def evaluate(e: ScalarLike, point: Point) -> float:
    """IEEE-double value of ``e`` at ``point``.

    Raises:
        UnboundSymbolError: If a free symbol of ``e`` has no value in ``point``.
    """
    expr = as_expr(e)
    symbols = sorted(expr.free_symbols, key=str)
    for symbol in symbols:
        if str(symbol) not in point:
            raise UnboundSymbolError(str(symbol))
    func = compile_numeric(expr, symbols)
    return float(func(*(float(point[str(s)]) for s in symbols)))


def integrate_poly(e: ScalarLike, s: sympy.Symbol) -> sympy.Expr:
    """Antiderivative of ``e`` in ``s`` with zero constant term.

    Raises:
        NotPolynomialError: If ``s`` occurs inside an elementary function or with
            a negative power.
    """
    canonical = normalize(e)
    for func in canonical.atoms(*ELEMENTARY_FUNCTIONS):
        if s in func.free_symbols:
            raise NotPolynomialError(f"'{s}' occurs inside {func}")
    try:
        poly = sympy.Poly(canonical, s)
    except sympy.PolynomialError as exc:
        raise NotPolynomialError(f"{canonical} is not polynomial in '{s}'") from exc
    return normalize(poly.integrate().as_expr())


def substitute(
    e: ScalarLike, bindings: Mapping[sympy.Symbol, ScalarLike]
) -> sympy.Expr:
    """Simultaneous substitution of symbols, followed by :func:`normalize`."""
    if not bindings:
        return normalize(e)
    replacements = {symbol: as_expr(value) for symbol, value in bindings.items()}
    return normalize(as_expr(e).xreplace(replacements))


def strip_constant(e: ScalarLike) -> sympy.Expr:
    """Drops the additive rational constant of a canonical expression."""
    canonical = normalize(e)
    constant, rest = canonical.as_coeff_Add()
    return rest if constant.is_Rational else canonical


class _ScalarExprPrinter(StrPrinter):
    def _print_Exp1(self, expr: sympy.Expr) -> str:
        return "exp(1)"


_printer = _ScalarExprPrinter()


def print_expr(e: ScalarLike) -> str:
    """Renders ``e`` in the input grammar, so that parsing gives back ``e``."""
    return _printer.doprint(as_expr(e)).replace("**", "^")
