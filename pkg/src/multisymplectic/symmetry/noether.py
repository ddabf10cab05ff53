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
from typing import Mapping, Optional

import sympy
from pydantic import BaseModel

from multisymplectic.exceptions import (
    DegreeMismatchError,
    HomotopyNotPolynomialError,
    NotCartanError,
    NotClosedError,
    NotPolynomialError,
    OrderMismatchError,
)
from multisymplectic.exterior.homotopy import radial_homotopy
from multisymplectic.exterior.operations import (
    contract,
    exterior_derivative,
    form_residual,
    iterated_lie_derivative,
)
from multisymplectic.exterior.tensors import DiffForm, MultiVector
from multisymplectic.symmetry.cartan import (
    CartanKind,
    cartan_check,
    gauge_check,
    higher_cartan_order,
)
from multisymplectic.systems.system import PremultisymplecticSystem
from multisymplectic.types import FieldEquationResidual, VerificationSettings

logger = logging.getLogger(__name__)

Center = Mapping[str, sympy.Rational]


def homotopy_potential(a: DiffForm, center: Optional[Center] = None) -> DiffForm:
    """A primitive ``K(a)`` of a closed polynomial form, ``d K(a) = a``.

    .. code-block:: python

        chart = BundleChart(base=("t",), fiber=("q", "p"))
        a = DiffForm.from_terms(chart, {("q", "p"): 1})
        homotopy_potential(a)  # (q dp - p dq) / 2

    Args:
        a (DiffForm): A closed form of degree at least 1.
        center (Optional[Center]): Rational center of the contraction, the origin by default.

    Raises:
        NotClosedError: If ``d a`` is not symbolically zero.
        HomotopyNotPolynomialError: If a coefficient is not polynomial along the contraction.
    """
    if a.degree < 1:
        raise DegreeMismatchError("The homotopy operator needs a form of degree at least 1")
    differential = exterior_derivative(a)
    if not differential.is_zero:
        raise NotClosedError(f"d a = {differential}")
    try:
        return radial_homotopy(a, center=center)
    except NotPolynomialError as e:
        raise HomotopyNotPolynomialError(str(e)) from e


class NoetherReport(BaseModel):
    """
    A Noether current and its verification.

    Attributes:
        Y (MultiVector): The symmetry.
        order (int): Cartan order ``n`` of ``Y``.
        xi (DiffForm): The current, an (m-1)-form.
        zeta (Optional[DiffForm]): Potential of ``L^n(Y) Theta`` when Theta is present.
        gauge (bool): ``Y`` lies in the kernel of Omega.
        residual (FieldEquationResidual): Coefficients of ``d xi - L^{n-1}(Y) i(Y) Omega``.
    """

    Y: MultiVector
    order: int
    xi: DiffForm
    zeta: Optional[DiffForm] = None
    gauge: bool = False
    residual: FieldEquationResidual

    @property
    def passed(self) -> bool:
        return self.residual.passed


def _current(
    S: PremultisymplecticSystem,
    Y: MultiVector,
    n: int,
    settings: Optional[VerificationSettings],
    center: Optional[Center],
    exact: bool = False,
) -> NoetherReport:
    source = iterated_lie_derivative(Y, contract(Y, S.omega), n - 1)
    if not exterior_derivative(source).is_zero:
        raise NotClosedError(f"L^{n - 1}(Y) i(Y) Omega is not closed")
    zeta = None
    if S.theta is not None:
        if exact:
            zeta = DiffForm.zero(S.chart, S.chart.m - 1)
        else:
            zeta = homotopy_potential(iterated_lie_derivative(Y, S.theta, n), center)
        xi = iterated_lie_derivative(Y, contract(Y, S.theta), n - 1) - zeta
    else:
        xi = homotopy_potential(source, center)
    if xi.is_zero:
        xi = DiffForm.zero(S.chart, S.chart.m - 1)
    residual = form_residual(exterior_derivative(xi) - source, settings)
    gauge = gauge_check(S, Y, settings).passed
    logger.info("Noether current of order %d for %s: %s", n, Y, xi)
    return NoetherReport(Y=Y, order=n, xi=xi, zeta=zeta, gauge=gauge, residual=residual)


def noether_current(
    S: PremultisymplecticSystem,
    Y: MultiVector,
    settings: Optional[VerificationSettings] = None,
    center: Optional[Center] = None,
) -> NoetherReport:
    """The Noether current ``xi_Y`` of a Cartan symmetry, ``d xi_Y = i(Y) Omega``.

    For an exact Cartan symmetry ``xi_Y = i(Y) Theta``; otherwise the potential
    ``zeta_Y`` of ``L(Y) Theta`` is subtracted, and without Theta ``xi_Y`` is the
    homotopy potential of ``i(Y) Omega``.

    Raises:
        NotCartanError: If ``L(Y) Omega`` does not vanish.
        HomotopyNotPolynomialError: If a potential cannot be built.
    """
    result = cartan_check(S, Y, settings)
    if result.kind == CartanKind.NOT_CARTAN:
        raise NotCartanError(f"L(Y) Omega does not vanish for Y = {Y}")
    return _current(S, Y, 1, settings, center, exact=result.kind == CartanKind.EXACT_CARTAN)


def generalized_noether_current(
    S: PremultisymplecticSystem,
    Y: MultiVector,
    n: int,
    settings: Optional[VerificationSettings] = None,
    center: Optional[Center] = None,
) -> NoetherReport:
    """The order-``n`` current ``xi_Y = L^{n-1}(Y) i(Y) Theta - zeta_Y``.

    Raises:
        OrderMismatchError: If the Cartan order of ``Y`` is not ``n``.
        HomotopyNotPolynomialError: If a potential cannot be built.
    """
    order = higher_cartan_order(S, Y, n, settings=settings).order
    if order != n:
        raise OrderMismatchError(f"Y has Cartan order {order}, not {n}")
    return _current(S, Y, n, settings, center)
