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
"""Randomised identity suite of the exterior calculus.

Every identity draws ``cases`` random instances from a seeded numpy
generator: charts with ``m <= 2`` and ``n <= 3``, polynomial coefficients of
degree at most 2 and decomposable multivectors built from random vector
fields. Each instance must give a symbolically zero residual.
"""

from __future__ import annotations
import itertools
import logging
from typing import Callable, Optional, Sequence

import numpy as np
import sympy
from pydantic import BaseModel

from multisymplectic.exterior.chart import BundleChart
from multisymplectic.exterior.operations import (
    contract,
    exterior_derivative,
    form_residual,
    lie_derivative,
    sn_bracket,
)
from multisymplectic.exterior.tensors import AlternatingTensor, DiffForm, MultiVector
from multisymplectic.types import Verdict

logger = logging.getLogger(__name__)

BASE_NAMES = ("x1", "x2")
FIBER_NAMES = ("y1", "y2", "y3")

Generator = np.random.Generator


class IdentityOutcome(BaseModel):
    """
    Result of one identity over all its random cases.

    Attributes:
        name (str): Identity name.
        cases (int): Number of random instances.
        failures (int): Instances with a nonzero residual.
        first_failure (Optional[str]): Description of the first failing instance.
    """

    name: str
    cases: int
    failures: int
    first_failure: Optional[str] = None

    @property
    def verdict(self) -> Verdict:
        return Verdict.SYMBOLIC_ZERO if self.failures == 0 else Verdict.NONZERO


def random_chart(rng: Generator) -> BundleChart:
    m = int(rng.integers(1, 3))
    n = int(rng.integers(1, 4))
    return BundleChart(base=BASE_NAMES[:m], fiber=FIBER_NAMES[:n])


def random_polynomial(
    rng: Generator, symbols: Sequence[sympy.Symbol], degree: int = 2, terms: int = 2
) -> sympy.Expr:
    total = sympy.Integer(0)
    for _ in range(terms):
        monomial = sympy.Integer(int(rng.integers(-3, 4)))
        for _ in range(int(rng.integers(0, degree + 1))):
            monomial *= symbols[int(rng.integers(0, len(symbols)))]
        total += monomial
    return total


def _random_keys(rng: Generator, chart: BundleChart, degree: int, count: int) -> list[tuple[int, ...]]:
    keys = list(itertools.combinations(range(chart.dimension), degree))
    picks = rng.choice(len(keys), size=min(count, len(keys)), replace=False)
    return [keys[int(i)] for i in picks]


def random_form(rng: Generator, chart: BundleChart, degree: int, terms: int = 2) -> DiffForm:
    coefficients = {
        key: random_polynomial(rng, chart.symbols) for key in _random_keys(rng, chart, degree, terms)
    }
    return DiffForm(chart=chart, degree=degree, coefficients=coefficients)


def random_vector_field(rng: Generator, chart: BundleChart, terms: int = 2) -> MultiVector:
    coefficients = {
        key: random_polynomial(rng, chart.symbols, degree=1)
        for key in _random_keys(rng, chart, 1, terms)
    }
    return MultiVector(chart=chart, degree=1, coefficients=coefficients)


def random_decomposable(rng: Generator, chart: BundleChart, degree: int) -> MultiVector:
    result = MultiVector.unit(chart)
    for _ in range(degree):
        result = result.wedge(random_vector_field(rng, chart))
    return result


def classical_lie_derivative(X: MultiVector, a: DiffForm) -> DiffForm:
    """Coordinate formula ``X(f) dz^I + f sum_p dz^i1 ^ .. ^ d(X^ip) ^ .. ^ dz^ik``."""
    chart = a.chart
    result = DiffForm.zero(chart, a.degree)
    for key, value in a.coefficients.items():
        result = result + DiffForm.build(chart, a.degree, {key: X.apply(value)})
        for p in range(len(key)):
            term = DiffForm.function(chart, value)
            for q, i in enumerate(key):
                if q == p:
                    factor = exterior_derivative(
                        DiffForm.function(chart, X.coefficients.get((i,), 0))
                    )
                else:
                    factor = DiffForm.differential(chart, chart.coordinates[i])
                term = term.wedge(factor)
            result = result + term
    return result


def _passes(residual: AlternatingTensor) -> bool:
    return form_residual(residual).passed


def _d_squared(rng: Generator) -> tuple[bool, str]:
    chart = random_chart(rng)
    a = random_form(rng, chart, int(rng.integers(0, chart.dimension)))
    return _passes(exterior_derivative(exterior_derivative(a))), str(a)


def _leibniz_d(rng: Generator) -> tuple[bool, str]:
    chart = random_chart(rng)
    a = random_form(rng, chart, int(rng.integers(0, 3)))
    b = random_form(rng, chart, int(rng.integers(0, 2)))
    lhs = exterior_derivative(a.wedge(b))
    rhs = exterior_derivative(a).wedge(b) + a.wedge(exterior_derivative(b)).scale((-1) ** a.degree)
    return _passes(lhs - rhs), f"a={a}; b={b}"


def _contraction_degree(rng: Generator) -> tuple[bool, str]:
    chart = random_chart(rng)
    X = random_decomposable(rng, chart, int(rng.integers(1, min(3, chart.dimension) + 1)))
    a = random_form(rng, chart, int(rng.integers(0, chart.dimension + 1)))
    result = contract(X, a)
    if a.degree < X.degree:
        ok = result.is_zero and result.degree == 0
    else:
        ok = result.degree == a.degree - X.degree
    return ok, f"X={X}; a={a}"


def _sn_antisymmetry(rng: Generator) -> tuple[bool, str]:
    chart = random_chart(rng)
    i = int(rng.integers(1, min(3, chart.dimension) + 1))
    j = int(rng.integers(1, min(3, chart.dimension) + 1))
    X = random_decomposable(rng, chart, i)
    Y = random_decomposable(rng, chart, j)
    residual = sn_bracket(X, Y) + sn_bracket(Y, X).scale((-1) ** ((i + 1) * (j + 1)))
    return _passes(residual), f"X={X}; Y={Y}"


def _sn_leibniz(rng: Generator) -> tuple[bool, str]:
    chart = random_chart(rng)
    i = int(rng.integers(1, 3))
    j = int(rng.integers(1, 3))
    X = random_decomposable(rng, chart, i)
    Y = random_decomposable(rng, chart, j)
    Z = random_vector_field(rng, chart)
    lhs = sn_bracket(X, Y.wedge(Z))
    rhs = sn_bracket(X, Y).wedge(Z) + Y.wedge(sn_bracket(X, Z)).scale((-1) ** ((i + 1) * j))
    return _passes(lhs - rhs), f"X={X}; Y={Y}; Z={Z}"


def _sn_jacobi(rng: Generator) -> tuple[bool, str]:
    chart = random_chart(rng)
    i, j, k = (int(d) for d in rng.integers(1, 3, size=3))
    X = random_decomposable(rng, chart, i)
    Y = random_decomposable(rng, chart, j)
    Z = random_decomposable(rng, chart, k)
    residual = (
        sn_bracket(X, sn_bracket(Y, Z)).scale((-1) ** ((i + 1) * (k + 1)))
        + sn_bracket(Y, sn_bracket(Z, X)).scale((-1) ** ((j + 1) * (i + 1)))
        + sn_bracket(Z, sn_bracket(X, Y)).scale((-1) ** ((k + 1) * (j + 1)))
    )
    return _passes(residual), f"X={X}; Y={Y}; Z={Z}"


def _sn_contraction(rng: Generator) -> tuple[bool, str]:
    chart = random_chart(rng)
    X = random_vector_field(rng, chart)
    Y = random_decomposable(rng, chart, int(rng.integers(1, min(3, chart.dimension) + 1)))
    a = random_form(rng, chart, int(rng.integers(Y.degree, chart.dimension + 1)))
    lhs = contract(sn_bracket(X, Y), a)
    rhs = lie_derivative(X, contract(Y, a)) - contract(Y, lie_derivative(X, a))
    return _passes(lhs - rhs), f"X={X}; Y={Y}; a={a}"


def _sn_lie_derivative(rng: Generator) -> tuple[bool, str]:
    chart = random_chart(rng)
    i = int(rng.integers(1, 3))
    j = int(rng.integers(1, 3))
    Y = random_decomposable(rng, chart, i)
    X = random_decomposable(rng, chart, j)
    a = random_form(rng, chart, int(rng.integers(0, chart.dimension + 1)))
    lhs = lie_derivative(sn_bracket(Y, X), a)
    rhs = lie_derivative(Y, lie_derivative(X, a)) - lie_derivative(
        X, lie_derivative(Y, a)
    ).scale((-1) ** ((i - 1) * (j - 1)))
    return _passes(lhs - rhs), f"Y={Y}; X={X}; a={a}"


def _cartan_formula(rng: Generator) -> tuple[bool, str]:
    chart = random_chart(rng)
    X = random_vector_field(rng, chart)
    a = random_form(rng, chart, int(rng.integers(0, chart.dimension + 1)))
    return _passes(lie_derivative(X, a) - classical_lie_derivative(X, a)), f"X={X}; a={a}"


IDENTITIES: dict[str, Callable[[Generator], tuple[bool, str]]] = {
    "d-squared": _d_squared,
    "leibniz-d": _leibniz_d,
    "contraction-degree": _contraction_degree,
    "sn-antisymmetry": _sn_antisymmetry,
    "sn-leibniz": _sn_leibniz,
    "sn-jacobi": _sn_jacobi,
    "sn-contraction": _sn_contraction,
    "sn-lie-derivative": _sn_lie_derivative,
    "cartan-formula": _cartan_formula,
}


def run_identity_suite(cases: int, seed: int = 0) -> list[IdentityOutcome]:
    """Runs every identity on ``cases`` random instances.

    Each identity gets its own generator seeded from ``seed`` and its position,
    so the outcome of one identity does not depend on the others.
    """
    outcomes = []
    for position, (name, check) in enumerate(IDENTITIES.items()):
        rng = np.random.default_rng([seed, position])
        failures = 0
        first_failure = None
        for _ in range(cases):
            ok, description = check(rng)
            if not ok:
                failures += 1
                first_failure = first_failure or description
        logger.debug("Identity %s: %d failures in %d cases", name, failures, cases)
        outcomes.append(
            IdentityOutcome(name=name, cases=cases, failures=failures, first_failure=first_failure)
        )
    return outcomes
