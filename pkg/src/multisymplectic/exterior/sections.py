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
from typing import Any, Optional, Sequence

import sympy
from pydantic import BaseModel, ConfigDict, model_validator

from multisymplectic.exceptions import ChartMismatchError, NoInverseError
from multisymplectic.exterior.chart import BundleChart
from multisymplectic.exterior.tensors import MultiVector
from multisymplectic.symbolic.expressions import ScalarLike, differentiate, substitute
from multisymplectic.types import ScalarExpr, Verdict, VerificationSettings, combine_verdicts
from multisymplectic.verification import classify

logger = logging.getLogger(__name__)


def _check_symbols(
    exprs: Sequence[sympy.Expr], allowed: Sequence[sympy.Symbol], what: str
) -> None:
    allowed_set = set(allowed)
    for expr in exprs:
        stray = expr.free_symbols - allowed_set
        if stray:
            names = sorted(str(s) for s in stray)
            raise ValueError(f"{what} may only depend on {[str(s) for s in allowed]}, found {names}")


class Section(BaseModel):
    """
    A local section ``y^j = psi^j(x)`` of the bundle.

    Attributes:
        chart (BundleChart): The chart.
        components (dict[str, sympy.Expr]): One function of the base coordinates per fiber name.
    """

    chart: BundleChart
    components: dict[str, ScalarExpr]

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_components(self) -> "Section":
        if set(self.components) != set(self.chart.fiber):
            raise ValueError(
                f"Section needs exactly the fiber components {list(self.chart.fiber)}, "
                f"got {sorted(self.components)}"
            )
        _check_symbols(list(self.components.values()), self.chart.base_symbols, "Section components")
        return self

    def component(self, fiber: str) -> sympy.Expr:
        return self.components[fiber]

    def fiber_bindings(self) -> dict[sympy.Symbol, sympy.Expr]:
        """Substitution of every fiber symbol by its component."""
        return {sympy.Symbol(name): self.components[name] for name in self.chart.fiber}

    def targets(self) -> list[sympy.Expr]:
        """The section as a map into the total space, one target per coordinate."""
        return list(self.chart.base_symbols) + [self.components[name] for name in self.chart.fiber]

    def jet_bindings(self) -> dict[sympy.Symbol, sympy.Expr]:
        """Substitution of every jet symbol ``u_<fiber>_<base>`` by the matching derivative."""
        return {
            self.chart.jet_symbol(y, x): differentiate(self.components[y], sympy.Symbol(x))
            for y in self.chart.fiber
            for x in self.chart.base
        }


class FiberedMap(BaseModel):
    """
    A map of the total space given by target expressions for every coordinate.

    Attributes:
        chart (BundleChart): The chart, used as both source and target.
        targets (dict[str, sympy.Expr]): Image of each coordinate.
        inverse (Optional[dict[str, sympy.Expr]]): Target expressions of the inverse map.
    """

    chart: BundleChart
    targets: dict[str, ScalarExpr]
    inverse: Optional[dict[str, ScalarExpr]] = None

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_targets(self) -> "FiberedMap":
        for label, exprs in (("targets", self.targets), ("inverse", self.inverse)):
            if exprs is None:
                continue
            if set(exprs) != set(self.chart.coordinates):
                raise ValueError(
                    f"Map {label} need every coordinate {list(self.chart.coordinates)}, "
                    f"got {sorted(exprs)}"
                )
            _check_symbols(list(exprs.values()), self.chart.symbols, f"Map {label}")
        return self

    @classmethod
    def identity(cls, chart: BundleChart) -> FiberedMap:
        names = {name: sympy.Symbol(name) for name in chart.coordinates}
        return cls(chart=chart, targets=names, inverse=names)

    @property
    def is_fibered(self) -> bool:
        """True when the base targets depend on the base coordinates only."""
        base = set(self.chart.base_symbols)
        return all(self.targets[x].free_symbols <= base for x in self.chart.base)

    def target_list(self) -> list[sympy.Expr]:
        return [self.targets[name] for name in self.chart.coordinates]

    def target_bindings(self) -> dict[sympy.Symbol, sympy.Expr]:
        return dict(zip(self.chart.symbols, self.target_list()))

    def inverse_bindings(self) -> dict[sympy.Symbol, sympy.Expr]:
        if self.inverse is None:
            raise NoInverseError("The map was given without an inverse")
        return {sympy.Symbol(name): self.inverse[name] for name in self.chart.coordinates}

    def compose(self, other: FiberedMap) -> FiberedMap:
        """Returns ``self o other``, i.e. ``z -> self(other(z))``."""
        if other.chart != self.chart:
            raise ChartMismatchError("Cannot compose maps on different charts")
        bindings = other.target_bindings()
        targets = {name: substitute(self.targets[name], bindings) for name in self.chart.coordinates}
        inverse = None
        if self.inverse is not None and other.inverse is not None:
            outer = self.inverse_bindings()
            inverse = {
                name: substitute(other.inverse[name], outer) for name in self.chart.coordinates
            }
        return FiberedMap(chart=self.chart, targets=targets, inverse=inverse)

    def check_inverse(self, settings: Optional[VerificationSettings] = None) -> Verdict:
        """Verifies that ``targets o inverse`` is the identity, coordinate by coordinate."""
        inverse = self.inverse_bindings()
        verdicts = [
            classify(substitute(self.targets[name], inverse) - sympy.Symbol(name), settings)
            for name in self.chart.coordinates
        ]
        return combine_verdicts(verdicts)


class DecomposableAnsatz(BaseModel):
    """
    The transverse decomposable multivector ``X = ^_mu (d/dx^mu + X^j_mu d/dy^j)``.

    Attributes:
        chart (BundleChart): The chart.
        coefficients (list[list[sympy.Expr]]): ``coefficients[j][mu]`` is ``X^j_mu``,
            an ``n x m`` matrix.
    """

    chart: BundleChart
    coefficients: list[list[ScalarExpr]]

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_shape(self) -> "DecomposableAnsatz":
        rows = len(self.coefficients)
        if rows != self.chart.n or any(len(row) != self.chart.m for row in self.coefficients):
            raise ValueError(
                f"Ansatz coefficients must be a {self.chart.n}x{self.chart.m} matrix"
            )
        return self

    @classmethod
    def from_mapping(
        cls, chart: BundleChart, coefficients: dict[str, Sequence[ScalarLike]]
    ) -> DecomposableAnsatz:
        """Builds an ansatz from ``{fiber name: [X^j_mu for every base coordinate]}``.

        Fibers that are not listed get zero coefficients.
        """
        unknown = sorted(set(coefficients) - set(chart.fiber))
        if unknown:
            raise ValueError(f"Unknown fiber coordinates {unknown}")
        rows: list[list[Any]] = [
            list(coefficients.get(name, [0] * chart.m)) for name in chart.fiber
        ]
        return cls(chart=chart, coefficients=rows)

    @classmethod
    def jets(cls, chart: BundleChart) -> DecomposableAnsatz:
        """The ansatz whose coefficients are the jet symbols themselves."""
        return cls(chart=chart, coefficients=chart.jet_symbols())

    def coefficient(self, fiber: str, base: str) -> sympy.Expr:
        return self.coefficients[self.chart.fiber.index(fiber)][self.chart.base.index(base)]

    def vector_fields(self) -> list[MultiVector]:
        """The generators ``V_mu = d/dx^mu + X^j_mu d/dy^j``."""
        fields = []
        for mu in self.chart.base_indices:
            terms: dict[tuple[int, ...], Any] = {(mu,): 1}
            for j, k in enumerate(self.chart.fiber_indices):
                terms[(k,)] = self.coefficients[j][mu]
            fields.append(MultiVector.build(self.chart, 1, terms))
        return fields

    def multivector(self) -> MultiVector:
        fields = self.vector_fields()
        result = fields[0]
        for field in fields[1:]:
            result = result.wedge(field)
        return result

    def substitute(self, bindings: dict[sympy.Symbol, Any]) -> DecomposableAnsatz:
        return DecomposableAnsatz.model_construct(
            chart=self.chart,
            coefficients=[[substitute(c, bindings) for c in row] for row in self.coefficients],
        )
