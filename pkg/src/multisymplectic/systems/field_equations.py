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
"""Field equations of a (pre)multisymplectic system.

Solutions are sections ``psi`` with ``psi* i(Y) Omega = 0`` for every vector
field ``Y``, equivalently ``i(prolongation of psi) Omega = 0`` along ``psi``,
equivalently integral sections of a decomposable multivector in the kernel of
Omega. The two section residuals agree up to the global sign
``(-1)^(m(m+1)/2)`` that the contraction order introduces.
"""

from __future__ import annotations
import logging
from typing import Optional, Union

import sympy
from pydantic import BaseModel

from multisymplectic.exterior.operations import contract, prolong, pullback_form
from multisymplectic.exterior.sections import DecomposableAnsatz, Section
from multisymplectic.exterior.tensors import DiffForm, MultiVector
from multisymplectic.symbolic.expressions import differentiate, normalize, substitute
from multisymplectic.systems.system import (
    CoordinateData,
    PremultisymplecticSystem,
    extract_coordinate_data,
)
from multisymplectic.types import FieldEquationResidual, ScalarExpr, VerificationSettings
from multisymplectic.verification import residual_set

logger = logging.getLogger(__name__)


def orientation_sign(m: int) -> int:
    """Sign relating the pullback residuals to the prolongation residuals."""
    return (-1) ** (m * (m + 1) // 2)


def _one_form_entries(S: PremultisymplecticSystem, form: DiffForm) -> list[tuple[str, sympy.Expr]]:
    return [
        (name, form.coefficients.get((k,), sympy.Integer(0)))
        for k, name in enumerate(S.chart.coordinates)
    ]


def section_residual_sect1(
    S: PremultisymplecticSystem,
    psi: Section,
    settings: Optional[VerificationSettings] = None,
) -> FieldEquationResidual:
    """``psi* i(d/dz^k) Omega`` for every coordinate field, labelled by coordinate name."""
    chart = S.chart
    volume_key = tuple(chart.base_indices)
    labelled = []
    for name in chart.coordinates:
        image = pullback_form(psi, contract(MultiVector.coordinate_field(chart, name), S.omega))
        labelled.append((name, image.coefficients.get(volume_key, sympy.Integer(0))))
    return residual_set(labelled, settings)


def section_residual_sect2(
    S: PremultisymplecticSystem,
    psi: Section,
    settings: Optional[VerificationSettings] = None,
) -> FieldEquationResidual:
    """Components of ``i(prolong(psi)) (Omega o psi)``, labelled by coordinate name."""
    along = S.omega.substitute(psi.fiber_bindings())
    return residual_set(_one_form_entries(S, contract(prolong(psi), along)), settings)


def mv_kernel_residual(
    S: PremultisymplecticSystem,
    A: Union[DecomposableAnsatz, MultiVector],
    settings: Optional[VerificationSettings] = None,
) -> FieldEquationResidual:
    """Components of ``i(X) Omega`` for the multivector of an ansatz.

    A plain m-multivector is accepted as well, for kernel witnesses that are
    not normalised.
    """
    X = A.multivector() if isinstance(A, DecomposableAnsatz) else A
    return residual_set(_one_form_entries(S, contract(X, S.omega)), settings)


class EulerEquations(BaseModel):
    """
    Field equations over the jet symbols ``u_<fiber>_<base>``.

    Attributes:
        equations (dict[str, sympy.Expr]): One expression per coordinate name;
            the base entries form the horizontal family and the fiber entries the
            vertical family.
    """

    equations: dict[str, ScalarExpr]

    def horizontal(self, S: PremultisymplecticSystem) -> dict[str, sympy.Expr]:
        return {name: self.equations[name] for name in S.chart.base}

    def vertical(self, S: PremultisymplecticSystem) -> dict[str, sympy.Expr]:
        return {name: self.equations[name] for name in S.chart.fiber}

    def along(self, psi: Section) -> dict[str, sympy.Expr]:
        """The equations with the fibers and jets of ``psi`` substituted."""
        bindings = {**psi.fiber_bindings(), **psi.jet_bindings()}
        return {name: substitute(expr, bindings) for name, expr in self.equations.items()}


def euler_equations(S: PremultisymplecticSystem) -> EulerEquations:
    """Contracts the jet multivector ``^_mu (d/dx^mu + u^j_mu d/dy^j)`` into Omega.

    Substituting a section's fibers and derivatives reproduces
    :func:`section_residual_sect2` exactly.

    Raises:
        NotInNormalFormError: If Omega has no coordinate data.
    """
    extract_coordinate_data(S)
    jets = DecomposableAnsatz.jets(S.chart).multivector()
    return EulerEquations(equations=dict(_one_form_entries(S, contract(jets, S.omega))))


def coordinate_field_equations(S: PremultisymplecticSystem, data: CoordinateData) -> dict[str, sympy.Expr]:
    """The vertical family written with the coordinate data:
    ``d_mu F^mu_k + d_k F^mu_i u^i_mu - d_i F^mu_k u^i_mu + d_k E`` per fiber ``k``.

    Equals ``orientation_sign(m)`` times the vertical entries of :func:`euler_equations`.
    """
    chart = S.chart
    jets = chart.jet_symbols()
    result = {}
    for k, name in enumerate(chart.fiber):
        total = differentiate(data.E, sympy.Symbol(name))
        for mu, x in enumerate(chart.base):
            total += differentiate(data.F[k][mu], sympy.Symbol(x))
            for i, y in enumerate(chart.fiber):
                total += differentiate(data.F[i][mu], sympy.Symbol(name)) * jets[i][mu]
                total -= differentiate(data.F[k][mu], sympy.Symbol(y)) * jets[i][mu]
        result[name] = normalize(total)
    return result


def integral_section_check(
    A: DecomposableAnsatz,
    psi: Section,
    settings: Optional[VerificationSettings] = None,
) -> FieldEquationResidual:
    """``X^j_mu o psi - d psi^j / dx^mu``, labelled ``"<fiber>:<base>"``."""
    chart = A.chart
    bindings = psi.fiber_bindings()
    labelled = []
    for j, y in enumerate(chart.fiber):
        for mu, x in enumerate(chart.base):
            residual = substitute(A.coefficients[j][mu], bindings) - differentiate(
                psi.component(y), sympy.Symbol(x)
            )
            labelled.append((f"{y}:{x}", residual))
    return residual_set(labelled, settings)
