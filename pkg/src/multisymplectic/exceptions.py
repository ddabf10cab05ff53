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
from typing import Any

from pydantic_core import ErrorDetails


class MultisymplecticError(Exception):
    """Global exception used for the multisymplectic package."""

    pass


class ExpressionSyntaxError(MultisymplecticError):
    """Exception raised when an expression string does not follow the grammar."""

    def __init__(self, position: int, expected: list[str], source: str = "") -> None:
        super().__init__(
            f"Syntax error at offset {position}: expected one of {sorted(expected)}"
        )
        self.position = position
        self.expected = sorted(expected)
        self.source = source


class UnboundSymbolError(MultisymplecticError):
    """Exception raised when evaluating an expression with a free symbol left unbound."""

    def __init__(self, name: str) -> None:
        super().__init__(f"Symbol '{name}' is not bound in the evaluation point")
        self.name = name


class NotPolynomialError(MultisymplecticError):
    """Exception raised when an expression is not polynomial in the integration variable."""

    pass


class ChartMismatchError(MultisymplecticError):
    """Exception raised when operands live on different charts."""

    pass


class TensorKindMismatchError(MultisymplecticError):
    """Exception raised when a form and a multivector are combined where one kind is required."""

    pass


class DegreeMismatchError(MultisymplecticError):
    """Exception raised when an operand has the wrong degree."""

    pass


class NoInverseError(MultisymplecticError):
    """Exception raised when a pushforward is requested for a map without inverse."""

    pass


class VerticalConditionViolatedError(MultisymplecticError):
    """Exception raised when three vertical fields do not annihilate Omega."""

    def __init__(self, terms: list[Any]) -> None:
        super().__init__(f"Triple-vertical condition violated by: {terms}")
        self.terms = terms


class NotInNormalFormError(MultisymplecticError):
    """Exception raised when Omega cannot be written with coordinate data (F, E)."""

    def __init__(self, terms: list[Any], reason: str = "terms outside the normal form") -> None:
        super().__init__(f"Omega is not in normal form ({reason}): {terms}")
        self.terms = terms
        self.reason = reason


class MissingThetaError(MultisymplecticError):
    """Exception raised when an operation needs the potential form Theta."""

    pass


class NotClosedError(MultisymplecticError):
    """Exception raised when a form expected to be closed is not."""

    pass


class HomotopyNotPolynomialError(MultisymplecticError):
    """Exception raised when the homotopy operator meets non-polynomial coefficients."""

    pass


class NotCartanError(MultisymplecticError):
    """Exception raised when a vector field is not an infinitesimal Cartan symmetry."""

    pass


class OrderMismatchError(MultisymplecticError):
    """Exception raised when a requested Cartan order does not match the computed one."""

    pass


class ChartValidationError(MultisymplecticError):
    """Exception raised when validation of a chart or chart-bound object fails."""

    def __init__(self, errors: list[ErrorDetails]) -> None:
        super().__init__(f"Chart validation failed: {errors}")
        self.errors = errors


class SystemFileError(MultisymplecticError):
    """Exception raised when a system definition file cannot be loaded."""

    def __init__(self, errors: list[ErrorDetails]) -> None:
        super().__init__(f"System file validation failed: {errors}")
        self.errors = errors
