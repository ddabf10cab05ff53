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
from typing import Optional, Sequence

import sympy
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from multisymplectic.exceptions import (
    ChartValidationError,
    DegreeMismatchError,
    NotClosedError,
    NotInNormalFormError,
    NotPolynomialError,
    VerticalConditionViolatedError,
)
from multisymplectic.exterior.chart import BundleChart
from multisymplectic.exterior.homotopy import radial_homotopy
from multisymplectic.exterior.operations import contract, exterior_derivative
from multisymplectic.exterior.tensors import DiffForm, Key, MultiVector
from multisymplectic.symbolic.expressions import ScalarLike, strip_constant
from multisymplectic.types import ScalarExpr

logger = logging.getLogger(__name__)


class CoordinateData(BaseModel):
    """
    Functions realising Omega in the normal form
    ``dF^mu_j ^ dy^j ^ d^{m-1}x_mu + dE ^ d^m x``.

    Attributes:
        F (list[list[sympy.Expr]]): ``F[j][mu]``, an ``n x m`` matrix.
        E (sympy.Expr): The energy function.
    """

    F: list[list[ScalarExpr]]
    E: ScalarExpr

    model_config = ConfigDict(frozen=True)

    def without_constants(self) -> CoordinateData:
        return CoordinateData.model_construct(
            F=[[strip_constant(entry) for entry in row] for row in self.F],
            E=strip_constant(self.E),
        )


class PremultisymplecticSystem(BaseModel):
    """
    A closed (m+1)-form on a bundle chart, with its optional potential and coordinate data.

    Build instances with :func:`system_from_theta`, :func:`system_from_coordinate_data`
    or :func:`system_from_omega`, which check the structural invariants.

    Attributes:
        chart (BundleChart): The chart.
        omega (DiffForm): The (pre)multisymplectic form, degree m+1.
        theta (Optional[DiffForm]): A potential with ``omega = -d theta``.
        coordinate_data (Optional[CoordinateData]): Cached normal-form data.
    """

    chart: BundleChart
    omega: DiffForm
    theta: Optional[DiffForm] = None
    coordinate_data: Optional[CoordinateData] = None

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_degrees(self) -> "PremultisymplecticSystem":
        m = self.chart.m
        if self.omega.chart != self.chart or (
            self.theta is not None and self.theta.chart != self.chart
        ):
            raise ValueError("Forms must live on the system chart")
        if self.omega.degree != m + 1:
            raise ValueError(f"Omega must have degree {m + 1}, got {self.omega.degree}")
        if self.theta is not None and self.theta.degree != m:
            raise ValueError(f"Theta must have degree {m}, got {self.theta.degree}")
        return self

    @property
    def volume(self) -> DiffForm:
        """The base volume form ``omega = dx^1 ^ ... ^ dx^m``."""
        return DiffForm.volume(self.chart)


def _system(**kwargs: object) -> PremultisymplecticSystem:
    try:
        return PremultisymplecticSystem(**kwargs)  # type: ignore[arg-type]
    except ValidationError as e:
        raise ChartValidationError(e.errors()) from e


def vertical_violations(omega: DiffForm) -> list[tuple[tuple[str, str, str], DiffForm]]:
    """Triples of fiber coordinate fields whose contraction into ``omega`` is nonzero.

    Only meaningful for ``m >= 2``; for ``m = 1`` the empty list is returned.
    """
    chart = omega.chart
    if chart.m < 2:
        return []
    fibers = list(chart.fiber)
    violations = []
    for a in range(len(fibers)):
        for b in range(a + 1, len(fibers)):
            for c in range(b + 1, len(fibers)):
                names = (fibers[a], fibers[b], fibers[c])
                triple = MultiVector.from_terms(chart, {names: 1})
                residual = contract(triple, omega)
                if not residual.is_zero:
                    violations.append((names, residual))
    return violations


def _check_vertical(omega: DiffForm, strict: bool) -> None:
    violations = vertical_violations(omega)
    if violations:
        logger.info("Triple-vertical condition fails for %d triples", len(violations))
        if strict:
            raise VerticalConditionViolatedError([str(form) for _, form in violations])


def system_from_theta(
    chart: BundleChart, theta: DiffForm, strict: bool = True
) -> PremultisymplecticSystem:
    """Builds the system with ``Omega = -d Theta``.

    .. code-block:: python

        chart = BundleChart(base=("t",), fiber=("q", "p"))
        theta = DiffForm.from_terms(chart, {("q",): "p", ("t",): "-(p^2+q^2)/2"})
        system = system_from_theta(chart, theta)

    Args:
        chart (BundleChart): The chart.
        theta (DiffForm): A form of degree m.
        strict (bool): Raise when the triple-vertical condition fails. With
            ``False`` the system is returned and the failure is left to
            :func:`vertical_violations`.

    Raises:
        DegreeMismatchError: If ``theta`` is not an m-form.
        VerticalConditionViolatedError: If ``m >= 2`` and three vertical fields
            do not annihilate Omega (only with ``strict``).
    """
    if theta.degree != chart.m:
        raise DegreeMismatchError(f"Theta must have degree {chart.m}, got {theta.degree}")
    omega = -exterior_derivative(theta)
    _check_vertical(omega, strict)
    system = _system(chart=chart, omega=omega, theta=theta)
    logger.info(
        "Built system from Theta on %s with %d Omega terms",
        chart.coordinates,
        len(omega.coefficients),
    )
    return system


def omega_from_coordinate_data(chart: BundleChart, data: CoordinateData) -> DiffForm:
    omega = DiffForm.zero(chart, chart.m + 1)
    for j, name in enumerate(chart.fiber):
        dy = DiffForm.differential(chart, name)
        for mu in chart.base_indices:
            dF = exterior_derivative(DiffForm.function(chart, data.F[j][mu]))
            omega = omega + dF.wedge(dy).wedge(DiffForm.base_face(chart, mu))
    dE = exterior_derivative(DiffForm.function(chart, data.E))
    return omega + dE.wedge(DiffForm.volume(chart))


def system_from_coordinate_data(
    chart: BundleChart,
    F: Sequence[Sequence[ScalarLike]],
    E: ScalarLike,
) -> PremultisymplecticSystem:
    """Builds Omega literally from the normal form; Theta is left absent.

    Args:
        chart (BundleChart): The chart.
        F (Sequence[Sequence[ScalarLike]]): ``F[j][mu]``, an ``n x m`` matrix.
        E (ScalarLike): The energy function.
    """
    try:
        data = CoordinateData(F=[list(row) for row in F], E=E)
    except ValidationError as e:
        raise ChartValidationError(e.errors()) from e
    if len(data.F) != chart.n or any(len(row) != chart.m for row in data.F):
        raise DegreeMismatchError(f"F must be a {chart.n}x{chart.m} matrix")
    omega = omega_from_coordinate_data(chart, data)
    return _system(chart=chart, omega=omega, coordinate_data=data)


def system_from_omega(
    chart: BundleChart, omega: DiffForm, strict: bool = True
) -> PremultisymplecticSystem:
    """Builds a system from a closed (m+1)-form given without potential.

    Raises:
        DegreeMismatchError: If ``omega`` is not an (m+1)-form.
        NotClosedError: If ``d omega`` is not symbolically zero.
        VerticalConditionViolatedError: As for :func:`system_from_theta`.
    """
    if omega.degree != chart.m + 1:
        raise DegreeMismatchError(f"Omega must have degree {chart.m + 1}, got {omega.degree}")
    differential = exterior_derivative(omega)
    if not differential.is_zero:
        raise NotClosedError(f"d Omega = {differential}")
    _check_vertical(omega, strict)
    return _system(chart=chart, omega=omega)


def _fiber_count(chart: BundleChart, key: Key) -> int:
    return sum(1 for k in key if chart.is_vertical_index(k))


def _data_from_theta(chart: BundleChart, theta: DiffForm) -> Optional[CoordinateData]:
    """Reads ``Theta = -F^mu_j dy^j ^ d^{m-1}x_mu - E d^m x`` when Theta has that shape."""
    m = chart.m
    volume_key = tuple(chart.base_indices)
    F: list[list[sympy.Expr]] = [[sympy.Integer(0)] * m for _ in range(chart.n)]
    E = sympy.Integer(0)
    for key, value in theta.coefficients.items():
        if key == volume_key:
            E = -value
            continue
        if _fiber_count(chart, key) != 1:
            return None
        base = key[:-1]
        mu = next(i for i in chart.base_indices if i not in base)
        j = key[-1] - m
        F[j][mu] = -value * (-1) ** (mu + m - 1)
    return CoordinateData(F=F, E=E)


def _data_from_omega(chart: BundleChart, omega: DiffForm) -> CoordinateData:
    m = chart.m
    fiber = list(chart.fiber_indices)
    beta = [DiffForm.zero(chart, 2) for _ in chart.base_indices]
    for key, value in omega.coefficients.items():
        count = _fiber_count(chart, key)
        if count >= 3:
            raise NotInNormalFormError(
                [f"{value} on {key}"], reason="more than two fiber differentials"
            )
        if count == 2:
            base = key[:-2]
            mu = next(i for i in chart.base_indices if i not in base)
            beta[mu] = beta[mu] + DiffForm.build(chart, 2, {key[-2:]: (-1) ** mu * value})
    try:
        F: list[list[sympy.Expr]] = [[sympy.Integer(0)] * m for _ in range(chart.n)]
        for mu in chart.base_indices:
            alpha = radial_homotopy(beta[mu], scaled=fiber)
            for j, k in enumerate(fiber):
                F[j][mu] = alpha.coefficients.get((k,), sympy.Integer(0))
        rest = omega - omega_from_coordinate_data(chart, CoordinateData(F=F, E=0))
        volume_key = tuple(chart.base_indices)
        gamma = DiffForm.build(
            chart,
            1,
            {(k,): (-1) ** m * rest.coefficients.get(volume_key + (k,), 0) for k in fiber},
        )
        E = radial_homotopy(gamma, scaled=fiber).scalar
    except NotPolynomialError as e:
        raise NotInNormalFormError([str(omega)], reason="non-polynomial fiber dependence") from e
    return CoordinateData(F=F, E=E)


def extract_coordinate_data(S: PremultisymplecticSystem) -> CoordinateData:
    """Coordinate data ``(F, E)`` of the system, constants stripped.

    Cached data is returned first. Otherwise a Theta of the form
    ``-F^mu_j dy^j ^ d^{m-1}x_mu - E d^m x`` is read off directly, and failing
    that ``F`` and ``E`` are reconstructed from Omega by homotopy in the fiber
    variables and checked against Omega.

    Raises:
        NotInNormalFormError: With the offending terms when Omega has no normal form.
    """
    if S.coordinate_data is not None:
        return S.coordinate_data.without_constants()
    chart = S.chart
    data = _data_from_theta(chart, S.theta) if S.theta is not None else None
    if data is None:
        logger.debug("Reconstructing coordinate data from Omega")
        data = _data_from_omega(chart, S.omega)
    data = data.without_constants()
    mismatch = S.omega - omega_from_coordinate_data(chart, data)
    if not mismatch.is_zero:
        terms = [f"{r['coeff']} on {','.join(r['basis'])}" for r in mismatch.to_records()]
        raise NotInNormalFormError(terms)
    logger.info("Extracted coordinate data for %s", chart.coordinates)
    return data
