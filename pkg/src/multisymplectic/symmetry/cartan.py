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
"""Symmetries, Cartan symmetries of any order and gauge symmetries.

Statements quantified over the whole kernel of Omega are checked against an
explicit witness family; a pass means the property holds for every supplied
witness and says nothing about the others.
"""

from __future__ import annotations
import logging
from enum import Enum
from typing import Optional, Sequence, Union

from pydantic import BaseModel

from multisymplectic.exceptions import DegreeMismatchError
from multisymplectic.exterior.operations import (
    contract,
    form_residual,
    lie_derivative,
    pullback_form,
    pushforward_mv,
    sn_bracket,
)
from multisymplectic.exterior.sections import DecomposableAnsatz, FiberedMap
from multisymplectic.exterior.tensors import DiffForm, MultiVector
from multisymplectic.systems.field_equations import mv_kernel_residual
from multisymplectic.systems.system import PremultisymplecticSystem
from multisymplectic.types import FieldEquationResidual, Verdict, VerificationSettings

logger = logging.getLogger(__name__)

Witness = Union[DecomposableAnsatz, MultiVector]


def witness_multivector(witness: Witness) -> MultiVector:
    return witness.multivector() if isinstance(witness, DecomposableAnsatz) else witness


class WitnessResult(BaseModel):
    """
    A check against one member of a witness family.

    Attributes:
        kernel (FieldEquationResidual): ``i(X) Omega`` for the witness itself.
        residual (FieldEquationResidual): The residual of the property being checked.
    """

    kernel: FieldEquationResidual
    residual: FieldEquationResidual

    @property
    def in_kernel(self) -> bool:
        return self.kernel.passed

    @property
    def verdict(self) -> Verdict:
        return self.residual.verdict


def _check_vector_field(Y: MultiVector) -> None:
    if Y.degree != 1:
        raise DegreeMismatchError(f"Expected a vector field, got degree {Y.degree}")


def infinitesimal_symmetry_check(
    S: PremultisymplecticSystem,
    Y: MultiVector,
    family: Sequence[Witness],
    settings: Optional[VerificationSettings] = None,
) -> list[WitnessResult]:
    """``i([Y, X]) Omega`` for every witness ``X``, in input order."""
    _check_vector_field(Y)
    results = []
    for witness in family:
        X = witness_multivector(witness)
        bracket = sn_bracket(Y, X)
        results.append(
            WitnessResult(
                kernel=mv_kernel_residual(S, X, settings),
                residual=form_residual(contract(bracket, S.omega), settings),
            )
        )
    return results


def finite_symmetry_check(
    S: PremultisymplecticSystem,
    Phi: FiberedMap,
    family: Sequence[Witness],
    settings: Optional[VerificationSettings] = None,
) -> list[WitnessResult]:
    """``i(Phi_* X) Omega`` for every witness ``X``, in input order.

    Raises:
        NoInverseError: If ``Phi`` has no inverse.
    """
    results = []
    for witness in family:
        X = witness_multivector(witness)
        image = pushforward_mv(Phi, X)
        results.append(
            WitnessResult(
                kernel=mv_kernel_residual(S, X, settings),
                residual=form_residual(contract(image, S.omega), settings),
            )
        )
    return results


def transport_ansatz(Phi: FiberedMap, A: Witness) -> MultiVector:
    """Pushes a kernel witness forward along a symmetry."""
    return pushforward_mv(Phi, witness_multivector(A))


class CartanKind(str, Enum):
    EXACT_CARTAN = "exact-cartan"
    CARTAN = "cartan"
    NOT_CARTAN = "not-cartan"


class CartanResult(BaseModel):
    """
    Outcome of :func:`cartan_check`.

    Attributes:
        kind (CartanKind): Exact when additionally ``L(Y) Theta = 0``.
        residual (FieldEquationResidual): Coefficients of ``L(Y) Omega``.
        theta_residual (Optional[FieldEquationResidual]): Coefficients of
            ``L(Y) Theta`` when Theta is present.
    """

    kind: CartanKind
    residual: FieldEquationResidual
    theta_residual: Optional[FieldEquationResidual] = None

    @property
    def is_cartan(self) -> bool:
        return self.kind != CartanKind.NOT_CARTAN


def cartan_check(
    S: PremultisymplecticSystem,
    Y: MultiVector,
    settings: Optional[VerificationSettings] = None,
) -> CartanResult:
    """Classifies ``Y`` by ``L(Y) Omega`` and, with Theta present, ``L(Y) Theta``."""
    _check_vector_field(Y)
    residual = form_residual(lie_derivative(Y, S.omega), settings)
    if not residual.passed:
        return CartanResult(kind=CartanKind.NOT_CARTAN, residual=residual)
    theta_residual = None
    kind = CartanKind.CARTAN
    if S.theta is not None:
        theta_residual = form_residual(lie_derivative(Y, S.theta), settings)
        if theta_residual.passed:
            kind = CartanKind.EXACT_CARTAN
    if Y.is_zero:
        kind = CartanKind.EXACT_CARTAN
    logger.debug("Cartan check of %s: %s", Y, kind.value)
    return CartanResult(kind=kind, residual=residual, theta_residual=theta_residual)


def cartan_bracket_closure(
    S: PremultisymplecticSystem,
    Y1: MultiVector,
    Y2: MultiVector,
    settings: Optional[VerificationSettings] = None,
) -> CartanResult:
    """:func:`cartan_check` applied to the Lie bracket ``[Y1, Y2]``."""
    return cartan_check(S, sn_bracket(Y1, Y2), settings)


def finite_cartan_check(
    S: PremultisymplecticSystem,
    Phi: FiberedMap,
    settings: Optional[VerificationSettings] = None,
) -> FieldEquationResidual:
    """Coefficients of ``Phi* Omega - Omega``."""
    return form_residual(pullback_form(Phi, S.omega) - S.omega, settings)


def gauge_check(
    S: PremultisymplecticSystem,
    Y: MultiVector,
    settings: Optional[VerificationSettings] = None,
) -> FieldEquationResidual:
    """Coefficients of ``i(Y) Omega``; ``Y`` is a gauge field when they all vanish."""
    _check_vector_field(Y)
    return form_residual(contract(Y, S.omega), settings)


class HigherOrderResult(BaseModel):
    """
    Outcome of :func:`higher_cartan_order`.

    Attributes:
        order (Optional[int]): Least ``n`` with ``L^n(Y) Omega = 0``; ``None`` when
            no power up to ``n_max`` vanishes.
        n_max (int): The search bound.
        powers (list[FieldEquationResidual]): Residuals of ``L^k(Y) Omega`` for the
            powers that were computed.
        symmetry (Optional[list[WitnessResult]]): Symmetry check against the
            witness family, when one was given.
    """

    order: Optional[int]
    n_max: int
    powers: list[FieldEquationResidual]
    symmetry: Optional[list[WitnessResult]] = None

    @property
    def found(self) -> bool:
        return self.order is not None


def higher_cartan_order(
    S: PremultisymplecticSystem,
    Y: MultiVector,
    n_max: int,
    family: Optional[Sequence[Witness]] = None,
    settings: Optional[VerificationSettings] = None,
) -> HigherOrderResult:
    """Finds the least ``n <= n_max`` with ``L^n(Y) Omega = 0``."""
    _check_vector_field(Y)
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    powers = []
    order = None
    current = S.omega
    for n in range(1, n_max + 1):
        current = lie_derivative(Y, current)
        residual = form_residual(current, settings)
        powers.append(residual)
        if residual.passed:
            order = n
            break
    symmetry = infinitesimal_symmetry_check(S, Y, family, settings) if family else None
    logger.info("Cartan order of %s: %s (bound %d)", Y, order, n_max)
    return HigherOrderResult(order=order, n_max=n_max, powers=powers, symmetry=symmetry)


def search_order_n_cartan(
    S: PremultisymplecticSystem,
    candidates: Sequence[MultiVector],
    n_max: int,
    settings: Optional[VerificationSettings] = None,
) -> list[tuple[MultiVector, int]]:
    """Candidates whose Cartan order is between 2 and ``n_max``, in input order."""
    hits = []
    for Y in candidates:
        result = higher_cartan_order(S, Y, n_max, settings=settings)
        if result.order is not None and result.order >= 2:
            hits.append((Y, result.order))
    logger.info("Order-n search: %d of %d candidates", len(hits), len(candidates))
    return hits
