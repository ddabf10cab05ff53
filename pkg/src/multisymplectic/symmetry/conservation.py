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
from __future__ import annotations
import logging
from enum import Enum
from typing import Optional, Sequence, Union

import sympy
from pydantic import BaseModel

from multisymplectic.exceptions import ChartMismatchError, DegreeMismatchError
from multisymplectic.exterior.operations import (
    exterior_derivative,
    form_residual,
    lie_derivative,
    pullback_form,
)
from multisymplectic.exterior.sections import FiberedMap, Section
from multisymplectic.exterior.tensors import DiffForm, MultiVector
from multisymplectic.quadrature import Interval, integrate_box
from multisymplectic.symbolic.expressions import normalize
from multisymplectic.symmetry.cartan import Witness, WitnessResult, witness_multivector
from multisymplectic.systems.field_equations import mv_kernel_residual
from multisymplectic.systems.system import PremultisymplecticSystem
from multisymplectic.types import FieldEquationResidual, ScalarExpr, VerificationSettings

logger = logging.getLogger(__name__)


class Provenance(str, Enum):
    USER_GIVEN = "user-given"
    NOETHER = "noether"
    TRANSFORMED = "transformed"


class ConservedQuantity(BaseModel):
    """
    A candidate conserved quantity and where it came from.

    Attributes:
        xi (DiffForm): An (m-1)-form.
        provenance (Provenance): How the form was obtained.
        note (Optional[str]): Free text, e.g. the symmetry it was transformed by.
    """

    xi: DiffForm
    provenance: Provenance = Provenance.USER_GIVEN
    note: Optional[str] = None


def _check_current_degree(chart_m: int, xi: DiffForm) -> None:
    if xi.degree != chart_m - 1:
        raise DegreeMismatchError(f"Expected an {chart_m - 1}-form, got degree {xi.degree}")


def check_conserved(
    S: PremultisymplecticSystem,
    xi: DiffForm,
    family: Sequence[Witness],
    settings: Optional[VerificationSettings] = None,
) -> list[WitnessResult]:
    """``L(X) xi = (-1)^(m+1) i(X) d xi`` for every witness ``X``, in input order.

    Witnesses outside the kernel of Omega are still evaluated; their
    :attr:`WitnessResult.in_kernel` is False.

    Raises:
        DegreeMismatchError: If ``xi`` is not an (m-1)-form.
    """
    _check_current_degree(S.chart.m, xi)
    results = []
    for witness in family:
        X = witness_multivector(witness)
        results.append(
            WitnessResult(
                kernel=mv_kernel_residual(S, X, settings),
                residual=form_residual(lie_derivative(X, xi), settings),
            )
        )
    return results


def transform_conserved(
    xi: Union[DiffForm, ConservedQuantity], by: Union[MultiVector, FiberedMap]
) -> ConservedQuantity:
    """``L(Y) xi`` for a vector field, ``Phi* xi`` for a map; tagged as transformed."""
    form = xi.xi if isinstance(xi, ConservedQuantity) else xi
    if isinstance(by, FiberedMap):
        return ConservedQuantity(
            xi=pullback_form(by, form), provenance=Provenance.TRANSFORMED, note="pullback"
        )
    result = lie_derivative(by, form)
    if result.is_zero:
        result = DiffForm.zero(form.chart, form.degree)
    return ConservedQuantity(xi=result, provenance=Provenance.TRANSFORMED, note=f"L({by})")


def hamiltonian_forms_agree(
    xi1: DiffForm, xi2: DiffForm, settings: Optional[VerificationSettings] = None
) -> FieldEquationResidual:
    """Coefficients of ``d(xi1 - xi2)``; two currents of one symmetry differ by a closed form."""
    return form_residual(exterior_derivative(xi1 - xi2), settings)


class FluxResult(BaseModel):
    """
    The conservation law of a current along a section.

    Attributes:
        flux (dict[str, sympy.Expr]): Components ``X^mu`` of the base field with
            ``i(X) eta = psi* xi``, keyed by base coordinate.
        divergence (sympy.Expr): The coefficient of ``d(psi* xi)``.
    """

    flux: dict[str, ScalarExpr]
    divergence: ScalarExpr


def current_on_section(xi: DiffForm, psi: Section) -> FluxResult:
    """Flux field and divergence of ``psi* xi``.

    Raises:
        DegreeMismatchError: If ``xi`` is not an (m-1)-form.
    """
    chart = psi.chart
    _check_current_degree(chart.m, xi)
    pulled = pullback_form(psi, xi)
    flux = {}
    for mu, name in enumerate(chart.base):
        key = tuple(i for i in chart.base_indices if i != mu)
        flux[name] = normalize((-1) ** mu * pulled.coefficients.get(key, sympy.Integer(0)))
    divergence = exterior_derivative(pulled).coefficients.get(
        tuple(chart.base_indices), sympy.Integer(0)
    )
    return FluxResult(flux=flux, divergence=divergence)


def stokes_flux_check(
    xi: DiffForm, psi: Section, box: Sequence[Interval], points: int = 32
) -> float:
    """Integral of ``psi* xi`` over the boundary of a base box.

    The faces ``x^mu = a`` and ``x^mu = b`` contribute ``X^mu(b) - X^mu(a)``
    integrated over the remaining coordinates, which orients the boundary as
    the boundary of the box.

    Raises:
        DegreeMismatchError: If ``m < 2`` or ``xi`` is not an (m-1)-form.
        ChartMismatchError: If ``box`` does not have one interval per base coordinate.
    """
    chart = psi.chart
    if chart.m < 2:
        raise DegreeMismatchError("The boundary integral needs at least two base coordinates")
    if len(box) != chart.m:
        raise ChartMismatchError(
            f"Box has {len(box)} intervals for base coordinates {chart.base}"
        )
    flux = current_on_section(xi, psi).flux
    symbols = chart.base_symbols
    total = 0.0
    for mu, name in enumerate(chart.base):
        low, high = box[mu]
        component = flux[name]
        jump = component.xreplace({symbols[mu]: sympy.Float(high)}) - component.xreplace(
            {symbols[mu]: sympy.Float(low)}
        )
        others = [s for i, s in enumerate(symbols) if i != mu]
        face = [interval for i, interval in enumerate(box) if i != mu]
        total += integrate_box(jump, others, face, points)
    logger.info("Boundary flux over %s: %.3e", box, total)
    return total
