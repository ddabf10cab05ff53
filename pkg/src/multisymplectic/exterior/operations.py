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
"""Exterior calculus on a single adapted chart.

Interior products follow ``i(X_1 ^ ... ^ X_r) = i(X_1) o ... o i(X_r)``, so the
last factor is contracted first. On a basis monomial
``i(d/dz^j) dz^I = (-1)^pos dz^{I without j}`` where ``pos`` is the position of
``j`` in ``I``. With this order ``i(d/dq ^ d/dp)(dq ^ dp) = -1``.
"""

from __future__ import annotations
import logging
from typing import Optional, Sequence, Union

import sympy
from pydantic import BaseModel

from multisymplectic.exceptions import (
    ChartMismatchError,
    DegreeMismatchError,
    NoInverseError,
    TensorKindMismatchError,
)
from multisymplectic.exterior.chart import BundleChart
from multisymplectic.exterior.sections import DecomposableAnsatz, FiberedMap, Section
from multisymplectic.exterior.tensors import DiffForm, Key, MultiVector, sort_with_sign
from multisymplectic.symbolic.expressions import differentiate, normalize, substitute
from multisymplectic.types import FieldEquationResidual, VerificationSettings
from multisymplectic.verification import residual_set

logger = logging.getLogger(__name__)


def _check_chart(a: BundleChart, b: BundleChart) -> None:
    if a != b:
        raise ChartMismatchError(f"Charts differ: {a.coordinates} and {b.coordinates}")


def wedge(
    a: Union[DiffForm, MultiVector], b: Union[DiffForm, MultiVector]
) -> Union[DiffForm, MultiVector]:
    """Exterior product; both operands must be of the same kind."""
    return a.wedge(b)  # type: ignore[arg-type]


def _interior_key(j: int, key: Key) -> tuple[int, Key]:
    if j not in key:
        return 0, ()
    pos = key.index(j)
    return (-1) ** pos, key[:pos] + key[pos + 1 :]


def contract(X: MultiVector, a: DiffForm) -> DiffForm:
    """Contraction ``i(X)a`` of a multivector into a form.

    A decomposable ``X1 ^ .. ^ Xr`` acts as ``i(X1) .. i(Xr)``, so the last
    factor is contracted first and ``i(d/dq ^ d/dp)(dq ^ dp) = -1``.

    Returns the zero 0-form when ``deg a < deg X``.
    """
    if not isinstance(X, MultiVector) or not isinstance(a, DiffForm):
        raise TensorKindMismatchError("contract expects a multivector and a form")
    _check_chart(X.chart, a.chart)
    if a.degree < X.degree:
        return DiffForm.zero(a.chart, 0)
    terms: dict[Key, sympy.Expr] = {}
    for key_x, value_x in X.coefficients.items():
        for key_a, value_a in a.coefficients.items():
            sign, key = 1, key_a
            for j in reversed(key_x):
                step, key = _interior_key(j, key)
                sign *= step
                if sign == 0:
                    break
            if sign:
                terms[key] = terms.get(key, sympy.Integer(0)) + sign * value_x * value_a
    return DiffForm.build(a.chart, a.degree - X.degree, terms)


def exterior_derivative(a: DiffForm) -> DiffForm:
    """``d(f dz^I) = sum_k (df/dz^k) dz^k ^ dz^I``."""
    terms: dict[Key, sympy.Expr] = {}
    symbols = a.chart.symbols
    for key, value in a.coefficients.items():
        for k, symbol in enumerate(symbols):
            if k in key:
                continue
            derivative = differentiate(value, symbol)
            if derivative == 0:
                continue
            sign, ordered = sort_with_sign((k,) + key)
            terms[ordered] = terms.get(ordered, sympy.Integer(0)) + sign * derivative
    return DiffForm.build(a.chart, a.degree + 1, terms)


def lie_derivative(X: MultiVector, a: DiffForm) -> DiffForm:
    """Graded Lie derivative ``L(X)a = d i(X)a - (-1)^r i(X) da`` with ``r = deg X``.

    When ``deg a < r`` the first term vanishes and the result is a 0-form.
    """
    sign = (-1) ** X.degree
    if a.degree < X.degree:
        first = DiffForm.zero(a.chart, 0)
    else:
        first = exterior_derivative(contract(X, a))
    return first - contract(X, exterior_derivative(a)).scale(sign)


def iterated_lie_derivative(X: MultiVector, a: DiffForm, times: int) -> DiffForm:
    """``L(X)^times a``; ``times = 0`` returns ``a``."""
    for _ in range(times):
        a = lie_derivative(X, a)
    return a


def lie_bracket(U: MultiVector, V: MultiVector) -> MultiVector:
    """Lie bracket of two vector fields, ``[U, V]^k = U(V^k) - V(U^k)``."""
    if U.degree != 1 or V.degree != 1:
        raise DegreeMismatchError("lie_bracket expects two vector fields")
    _check_chart(U.chart, V.chart)
    terms = {
        (k,): U.apply(V.coefficients.get((k,), 0)) - V.apply(U.coefficients.get((k,), 0))
        for k in range(U.chart.dimension)
    }
    return MultiVector.build(U.chart, 1, terms)


def _wedge_all(chart: BundleChart, factors: Sequence[MultiVector]) -> MultiVector:
    result = MultiVector.unit(chart)
    for factor in factors:
        result = result.wedge(factor)
    return result


def sn_bracket(Y: MultiVector, X: MultiVector) -> MultiVector:
    """Schouten-Nijenhuis bracket ``[Y, X]`` of degree ``deg Y + deg X - 1``.

    Every term is split into vector-field factors and expanded with
    ``[Y_1^...^Y_p, X_1^...^X_q] = sum (-1)^{a+b} [Y_a, X_b] ^ (Y without a) ^ (X without b)``,
    positions counted from 1.

    Raises:
        DegreeMismatchError: If either argument has degree 0.
    """
    if not isinstance(Y, MultiVector) or not isinstance(X, MultiVector):
        raise TensorKindMismatchError("sn_bracket expects two multivectors")
    _check_chart(Y.chart, X.chart)
    if Y.degree == 0 or X.degree == 0:
        raise DegreeMismatchError("The bracket is defined for multivectors of degree at least 1")
    chart = Y.chart
    result = MultiVector.zero(chart, Y.degree + X.degree - 1)
    for left in Y.factors():
        for right in X.factors():
            for a, Ya in enumerate(left, start=1):
                for b, Xb in enumerate(right, start=1):
                    bracket = lie_bracket(Ya, Xb)
                    if bracket.is_zero:
                        continue
                    rest = left[: a - 1] + left[a:] + right[: b - 1] + right[b:]
                    term = _wedge_all(chart, [bracket, *rest])
                    result = result + term.scale((-1) ** (a + b))
    return result


def _pullback_by_targets(
    chart: BundleChart, targets: Sequence[sympy.Expr], a: DiffForm
) -> DiffForm:
    bindings = dict(zip(chart.symbols, targets))
    differentials = [
        DiffForm.build(
            chart, 1, {(k,): differentiate(target, symbol) for k, symbol in enumerate(chart.symbols)}
        )
        for target in targets
    ]
    result = DiffForm.zero(chart, a.degree)
    for key, value in a.coefficients.items():
        term = DiffForm.function(chart, substitute(value, bindings))
        for i in key:
            term = term.wedge(differentials[i])
            if term.is_zero:
                break
        else:
            result = result + term
    return result


def pullback_form(F: Union[FiberedMap, Section], a: DiffForm) -> DiffForm:
    """Pullback ``F*a`` by substitution and the Jacobian of ``F``.

    For a :class:`Section` the result only involves base coordinates and
    base differentials.
    """
    _check_chart(F.chart, a.chart)
    targets = F.targets() if isinstance(F, Section) else F.target_list()
    return _pullback_by_targets(a.chart, targets, a)


def prolong(psi: Section) -> MultiVector:
    """Canonical prolongation ``^_mu (d/dx^mu + d psi^j/dx^mu d/dy^j)`` along ``psi``."""
    chart = psi.chart
    coefficients = [
        [differentiate(psi.component(y), sympy.Symbol(x)) for x in chart.base] for y in chart.fiber
    ]
    return DecomposableAnsatz(chart=chart, coefficients=coefficients).multivector()


def pushforward_mv(F: FiberedMap, X: MultiVector) -> MultiVector:
    """Pushforward ``F_* X``: Jacobian action on the factors, then the inverse substituted.

    Raises:
        NoInverseError: If ``F`` has no inverse.
    """
    _check_chart(F.chart, X.chart)
    if F.inverse is None:
        raise NoInverseError("pushforward_mv needs the inverse map")
    chart = X.chart
    targets = F.target_list()
    images = [
        MultiVector.build(
            chart, 1, {(i,): differentiate(target, symbol) for i, target in enumerate(targets)}
        )
        for symbol in chart.symbols
    ]
    result = MultiVector.zero(chart, X.degree)
    for key, value in X.coefficients.items():
        term = _wedge_all(chart, [images[k] for k in key]).scale(value)
        result = result + term
    return result.substitute(F.inverse_bindings())


class InvolutivityResult(BaseModel):
    """
    Outcome of the vertical-bracket involutivity criterion.

    Attributes:
        residual (FieldEquationResidual): ``V_mu(X^j_nu) - V_nu(X^j_mu)`` labelled ``"<x_mu>,<x_nu>:<y^j>"``.
    """

    residual: FieldEquationResidual

    @property
    def involutive(self) -> bool:
        return self.residual.passed

    @property
    def obstructions(self) -> list[sympy.Expr]:
        return [entry.expression for entry in self.residual.failing()]


def involutivity_check(
    A: DecomposableAnsatz, settings: Optional[VerificationSettings] = None
) -> InvolutivityResult:
    """Decides whether the distribution spanned by the ansatz generators is involutive.

    ``[V_mu, V_nu]`` is vertical, so it lies in the span of the generators
    exactly when all its components vanish.
    """
    chart = A.chart
    fields = A.vector_fields()
    labelled = []
    for mu in range(chart.m):
        for nu in range(mu + 1, chart.m):
            for j, y in enumerate(chart.fiber):
                obstruction = fields[mu].apply(A.coefficients[j][nu]) - fields[nu].apply(
                    A.coefficients[j][mu]
                )
                labelled.append((f"{chart.base[mu]},{chart.base[nu]}:{y}", normalize(obstruction)))
    return InvolutivityResult(residual=residual_set(labelled, settings))


def form_residual(
    a: Union[DiffForm, MultiVector], settings: Optional[VerificationSettings] = None
) -> FieldEquationResidual:
    """Classifies every coefficient of ``a``, labelled by its basis names joined with ``^``.

    The zero tensor gives an empty, passing residual.
    """
    labelled = [("^".join(a.basis_names(key)) or "1", value) for key, value in a.terms()]
    return residual_set(labelled, settings)
