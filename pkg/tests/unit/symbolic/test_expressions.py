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
import math

import pytest
import sympy
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st
from multisymplectic.exceptions import NotPolynomialError, UnboundSymbolError
from multisymplectic.symbolic.expressions import (
    ZeroTest,
    as_expr,
    differentiate,
    evaluate,
    integrate_poly,
    is_zero,
    normalize,
    print_expr,
    strip_constant,
    substitute,
)
from multisymplectic.symbolic.parser import parse_expr

from .strategies import SYMBOLS, expressions, points, polynomials

q, p, t = sympy.symbols("q p t")

small_ints = st.integers(min_value=-5, max_value=5)


def test_normalize_expands_products() -> None:
    assert normalize((q + p) ** 2) == q**2 + 2 * q * p + p**2
    assert normalize(sympy.sin((q + p) * t)) == sympy.sin(q * t + p * t)


def test_normalize_keeps_trigonometric_identities() -> None:
    e = normalize(sympy.sin(t) ** 2 + sympy.cos(t) ** 2)
    assert e != 1


def test_as_expr_rejects_floats() -> None:
    with pytest.raises(TypeError):
        as_expr(0.5)  # type: ignore[arg-type]


def test_is_zero() -> None:
    assert is_zero(q - q) == ZeroTest.ZERO
    assert is_zero((q + p) ** 2 - q**2 - 2 * q * p - p**2) == ZeroTest.ZERO
    assert is_zero(q) == ZeroTest.NONZERO
    assert is_zero(sympy.sin(t) ** 2 + sympy.cos(t) ** 2 - 1) == ZeroTest.UNKNOWN


def test_differentiate() -> None:
    assert differentiate(q**3 * p, q) == 3 * q**2 * p
    assert differentiate(sympy.cos(t), t) == -sympy.sin(t)
    assert differentiate(p, q) == 0


def test_evaluate() -> None:
    assert evaluate(q * p, {"q": 2.0, "p": 3.0}) == pytest.approx(6.0)
    assert evaluate(sympy.Integer(7), {}) == pytest.approx(7.0)


def test_evaluate_unbound_symbol() -> None:
    with pytest.raises(UnboundSymbolError) as excinfo:
        evaluate(q * p, {"q": 1.0})
    assert excinfo.value.name == "p"


def test_integrate_poly() -> None:
    assert integrate_poly(q**2, q) == q**3 / 3
    assert integrate_poly(sympy.sin(t) * q, q) == sympy.sin(t) * q**2 / 2
    assert integrate_poly(p, q) == p * q


def test_integrate_poly_not_polynomial() -> None:
    with pytest.raises(NotPolynomialError):
        integrate_poly(sympy.sin(q), q)


def test_substitute_is_simultaneous() -> None:
    assert substitute(q + 2 * p, {q: p, p: q}) == p + 2 * q
    assert substitute(q * p, {}) == q * p


def test_strip_constant() -> None:
    assert strip_constant(q + 3) == q
    assert strip_constant(sympy.Integer(5)) == 0
    assert strip_constant(sympy.sin(t)) == sympy.sin(t)


def test_print_expr_uses_caret() -> None:
    assert print_expr(p**2 / 2 + q**2 / 2) == "p^2/2 + q^2/2"
    assert print_expr(-p) == "-p"


@given(a=small_ints, b=small_ints, c=small_ints)
def test_integrate_poly_inverts_differentiate(a: int, b: int, c: int) -> None:
    e = normalize(a * q**2 + b * q * p + c)
    assert integrate_poly(differentiate(e, q), q) == strip_constant(e)


def _scale(e: sympy.Expr, point: dict[str, float]) -> float:
    terms = e.args if e.is_Add else (e,)
    return 1.0 + sum(abs(evaluate(term, point)) for term in terms)


symbolic_settings = settings(
    max_examples=60, deadline=None, suppress_health_check=[HealthCheck.filter_too_much]
)


@symbolic_settings
@given(e=expressions())
def test_normalize_is_idempotent(e: sympy.Expr) -> None:
    canonical = normalize(e)
    assert normalize(canonical) == canonical


@symbolic_settings
@given(e=expressions(), point=points())
def test_normalize_preserves_values(e: sympy.Expr, point: dict[str, float]) -> None:
    canonical = normalize(e)
    before = evaluate(e, point)
    after = evaluate(canonical, point)
    assume(math.isfinite(before) and math.isfinite(after))
    scale = _scale(canonical, point)
    assume(math.isfinite(scale))
    assert after == pytest.approx(before, rel=1e-8, abs=1e-9 * scale)


@symbolic_settings
@given(f=polynomials(), g=polynomials(), a=small_ints, b=small_ints)
def test_differentiate_is_linear(f: sympy.Expr, g: sympy.Expr, a: int, b: int) -> None:
    for s in SYMBOLS:
        lhs = differentiate(a * f + b * g, s)
        rhs = a * differentiate(f, s) + b * differentiate(g, s)
        assert is_zero(lhs - rhs) == ZeroTest.ZERO


@symbolic_settings
@given(f=polynomials(), g=polynomials())
def test_differentiate_leibniz_rule(f: sympy.Expr, g: sympy.Expr) -> None:
    for s in SYMBOLS:
        lhs = differentiate(f * g, s)
        rhs = differentiate(f, s) * g + f * differentiate(g, s)
        assert is_zero(lhs - rhs) == ZeroTest.ZERO


@symbolic_settings
@given(e=polynomials())
def test_mixed_partials_commute(e: sympy.Expr) -> None:
    for s in SYMBOLS:
        for r in SYMBOLS:
            difference = differentiate(differentiate(e, s), r) - differentiate(
                differentiate(e, r), s
            )
            assert is_zero(difference) == ZeroTest.ZERO


@symbolic_settings
@given(e=expressions(), point=points())
def test_mixed_partials_commute_with_functions(
    e: sympy.Expr, point: dict[str, float]
) -> None:
    difference = differentiate(differentiate(e, q), t) - differentiate(differentiate(e, t), q)
    assert is_zero(difference) != ZeroTest.NONZERO
    value = evaluate(difference, point)
    assume(math.isfinite(value))
    scale = _scale(differentiate(differentiate(e, q), t), point)
    assume(math.isfinite(scale))
    assert abs(value) <= 1e-9 * scale


def test_normalize_cancels_distributed_product() -> None:
    assert normalize(parse_expr("x*(y+1) - x*y - x")) == 0
    assert is_zero(parse_expr("(x + y)^3 - x^3 - 3*x^2*y - 3*x*y^2 - y^3")) == ZeroTest.ZERO
