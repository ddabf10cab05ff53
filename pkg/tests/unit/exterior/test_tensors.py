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
import pytest
import sympy
from multisymplectic.exceptions import (
    ChartMismatchError,
    DegreeMismatchError,
    TensorKindMismatchError,
)
from multisymplectic.exterior.chart import BundleChart
from multisymplectic.exterior.tensors import DiffForm, MultiVector, sort_with_sign

q, p, t = sympy.symbols("q p t")


def test_sort_with_sign() -> None:
    assert sort_with_sign([2, 1]) == (-1, (1, 2))
    assert sort_with_sign([0, 2, 1]) == (-1, (0, 1, 2))
    assert sort_with_sign([2, 0, 1]) == (1, (0, 1, 2))
    assert sort_with_sign([1, 1]) == (0, ())


def test_from_terms_canonicalizes_keys(mechanics_chart: BundleChart) -> None:
    a = DiffForm.from_terms(mechanics_chart, {("p", "q"): "t"})
    assert a.coefficients == {(1, 2): -t}
    assert a.coefficient("q", "p") == -t
    assert a.coefficient("p", "q") == t
    assert a.coefficient("q", "q") == 0


def test_repeated_index_vanishes(mechanics_chart: BundleChart) -> None:
    a = DiffForm.from_terms(mechanics_chart, {("q", "q"): 1})
    assert a.is_zero
    assert a.degree == 2


def test_zero_coefficients_are_dropped(mechanics_chart: BundleChart) -> None:
    a = DiffForm.from_terms(mechanics_chart, {("q",): "p - p", ("p",): 1})
    assert list(a.coefficients) == [(2,)]


def test_from_terms_needs_degree_when_empty(mechanics_chart: BundleChart) -> None:
    with pytest.raises(DegreeMismatchError):
        DiffForm.from_terms(mechanics_chart, {})
    assert DiffForm.from_terms(mechanics_chart, {}, degree=2).is_zero


def test_addition(mechanics_chart: BundleChart) -> None:
    dq = DiffForm.differential(mechanics_chart, "q")
    dp = DiffForm.differential(mechanics_chart, "p")
    total = dq.scale(p) + dp.scale(q) - dq.scale(p)
    assert total == dp.scale(q)
    assert DiffForm.zero(mechanics_chart, 1) + dq == dq
    with pytest.raises(DegreeMismatchError):
        dq + DiffForm.function(mechanics_chart, q)


def test_addition_checks_degree_of_zero_operands(mechanics_chart: BundleChart) -> None:
    dq = DiffForm.differential(mechanics_chart, "q")
    with pytest.raises(DegreeMismatchError):
        dq + DiffForm.zero(mechanics_chart, 2)
    with pytest.raises(DegreeMismatchError):
        DiffForm.zero(mechanics_chart, 0) + dq
    with pytest.raises(DegreeMismatchError):
        DiffForm.zero(mechanics_chart, 0) - DiffForm.zero(mechanics_chart, 1)
    Dq = MultiVector.coordinate_field(mechanics_chart, "q")
    with pytest.raises(DegreeMismatchError):
        Dq + MultiVector.zero(mechanics_chart, 2)


def test_wedge_is_graded_commutative(mechanics_chart: BundleChart) -> None:
    dq = DiffForm.differential(mechanics_chart, "q")
    dp = DiffForm.differential(mechanics_chart, "p")
    assert dq.wedge(dq).is_zero
    assert dq.wedge(dp) == -dp.wedge(dq)
    f = DiffForm.function(mechanics_chart, q * p)
    assert f.wedge(dq) == dq.scale(q * p)
    assert DiffForm.unit(mechanics_chart).wedge(dp) == dp


def test_kind_and_chart_mismatch(mechanics_chart: BundleChart, field_chart: BundleChart) -> None:
    dq = DiffForm.differential(mechanics_chart, "q")
    with pytest.raises(TensorKindMismatchError):
        dq + MultiVector.coordinate_field(mechanics_chart, "q")  # type: ignore[operator]
    with pytest.raises(ChartMismatchError):
        dq.wedge(DiffForm.differential(field_chart, "phi"))


def test_volume_and_base_face(field_chart: BundleChart) -> None:
    assert DiffForm.volume(field_chart).coefficients == {(0, 1): 1}
    assert DiffForm.base_face(field_chart, 0).coefficients == {(1,): 1}
    assert DiffForm.base_face(field_chart, 1).coefficients == {(0,): -1}


def test_scalar(mechanics_chart: BundleChart) -> None:
    assert DiffForm.function(mechanics_chart, q).scalar == q
    assert DiffForm.zero(mechanics_chart, 0).scalar == 0
    with pytest.raises(DegreeMismatchError):
        DiffForm.differential(mechanics_chart, "q").scalar


def test_substitute_and_differentiate(mechanics_chart: BundleChart) -> None:
    a = DiffForm.from_terms(mechanics_chart, {("q",): "p^2"})
    assert a.substitute({p: sympy.cos(t)}).coefficient("q") == sympy.cos(t) ** 2
    assert a.differentiate(p).coefficient("q") == 2 * p
    assert a.free_symbols == {p}


def test_str_and_records(mechanics_chart: BundleChart) -> None:
    omega = DiffForm.from_terms(mechanics_chart, {("q", "p"): "2*t"})
    assert str(omega) == "(2*t) dq^dp"
    assert omega.to_records() == [{"basis": ["q", "p"], "coeff": "2*t"}]
    assert str(DiffForm.zero(mechanics_chart, 1)) == "0"
    assert str(DiffForm.function(mechanics_chart, q)) == "(q)"


def test_vector_field(mechanics_chart: BundleChart) -> None:
    Y = MultiVector.vector_field(mechanics_chart, {"q": "p", "p": "-q"})
    assert Y.degree == 1
    assert Y.component("q") == p
    assert Y.component("t") == 0
    assert Y.apply(q**2 + p**2) == 0
    assert str(Y) == "(p) Dq + (-q) Dp"


def test_factors(mechanics_chart: BundleChart) -> None:
    X = MultiVector.from_terms(mechanics_chart, {("t", "q"): "p"})
    factors = X.factors()
    assert len(factors) == 1
    first, second = factors[0]
    assert first == MultiVector.coordinate_field(mechanics_chart, "t").scale(p)
    assert second == MultiVector.coordinate_field(mechanics_chart, "q")
    with pytest.raises(DegreeMismatchError):
        MultiVector.unit(mechanics_chart).factors()


def test_base_multivector(field_chart: BundleChart) -> None:
    assert MultiVector.base_multivector(field_chart).coefficients == {(0, 1): 1}
