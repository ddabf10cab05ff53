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
import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from multisymplectic.exceptions import NotPolynomialError
from multisymplectic.exterior.chart import BundleChart
from multisymplectic.exterior.homotopy import radial_homotopy
from multisymplectic.exterior.identities import random_chart, random_form
from multisymplectic.exterior.operations import exterior_derivative
from multisymplectic.exterior.tensors import DiffForm

t, q, p = sympy.symbols("t q p")


def test_radial_homotopy_area_form(mechanics_chart: BundleChart) -> None:
    a = DiffForm.from_terms(mechanics_chart, {("q", "p"): 1})
    expected = DiffForm.from_terms(mechanics_chart, {("p",): q / 2, ("q",): -p / 2})
    assert radial_homotopy(a) == expected


def test_radial_homotopy_center(mechanics_chart: BundleChart) -> None:
    a = DiffForm.differential(mechanics_chart, "q")
    K = radial_homotopy(a, center={"q": sympy.Rational(1)})
    assert K.degree == 0
    assert sympy.expand(K.scalar - (q - 1)) == 0


def test_radial_homotopy_fiber_only(mechanics_chart: BundleChart) -> None:
    a = DiffForm.from_terms(mechanics_chart, {("q",): "p", ("t",): "p^2"})
    K = radial_homotopy(a, scaled=[1, 2])
    assert sympy.expand(K.scalar - q * p / 2) == 0


def test_radial_homotopy_not_polynomial(mechanics_chart: BundleChart) -> None:
    a = exterior_derivative(DiffForm.function(mechanics_chart, sympy.sin(q)))
    with pytest.raises(NotPolynomialError):
        radial_homotopy(a)


monomials = st.lists(
    st.tuples(
        st.integers(min_value=-4, max_value=4),
        st.integers(min_value=0, max_value=2),
        st.integers(min_value=0, max_value=2),
        st.integers(min_value=0, max_value=2),
    ),
    min_size=1,
    max_size=4,
)


@settings(max_examples=25, deadline=None)
@given(monomials)
def test_radial_homotopy_inverts_exact_forms(
    terms: list[tuple[int, int, int, int]],
) -> None:
    chart = BundleChart(base=("t",), fiber=("q", "p"))
    f = sum((c * t**i * q**j * p**k for c, i, j, k in terms), sympy.Integer(0))
    df = exterior_derivative(DiffForm.function(chart, f))
    primitive = radial_homotopy(df)
    assert exterior_derivative(primitive) == df
    assert sympy.expand(primitive.scalar - (f - f.subs({t: 0, q: 0, p: 0}))) == 0


@settings(max_examples=15, deadline=None)
@given(monomials)
def test_radial_homotopy_two_forms(terms: list[tuple[int, int, int, int]]) -> None:
    chart = BundleChart(base=("t",), fiber=("q", "p"))
    g = sum((c * t**i * q**j * p**k for c, i, j, k in terms), sympy.Integer(0))
    b = DiffForm.function(chart, g).wedge(DiffForm.differential(chart, "q"))
    db = exterior_derivative(b)
    assert exterior_derivative(radial_homotopy(db)) == db


@pytest.mark.parametrize("seed", range(25))
def test_radial_homotopy_random_closed_forms(seed: int) -> None:
    rng = np.random.default_rng(seed)
    chart = random_chart(rng)
    for degree in range(1, chart.m + 2):
        b = random_form(rng, chart, degree - 1)
        a = exterior_derivative(b)
        assert exterior_derivative(radial_homotopy(a)) == a
