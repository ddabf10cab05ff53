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
from enum import Enum
from typing import Annotated, Any, Iterable, Optional

import sympy
from pydantic import (
    BaseModel,
    ConfigDict,
    NonNegativeInt,
    PositiveFloat,
    PositiveInt,
)
from pydantic.functional_serializers import PlainSerializer
from pydantic.functional_validators import PlainValidator

from multisymplectic.symbolic.expressions import as_expr, normalize, print_expr
from multisymplectic.symbolic.parser import parse_expr


def coerce_scalar(value: Any) -> sympy.Expr:
    if isinstance(value, str):
        return normalize(parse_expr(value))
    return normalize(as_expr(value))


ScalarExpr = Annotated[
    sympy.Expr,
    PlainValidator(coerce_scalar),
    PlainSerializer(print_expr, return_type=str),
]
"""A canonical ``sympy.Expr``; strings are parsed with the expression grammar."""


class Verdict(str, Enum):
    """Outcome of a residual check.

    Only ``SYMBOLIC_ZERO`` and ``NUMERIC_ZERO`` count as a pass.
    """

    SYMBOLIC_ZERO = "symbolic-zero"
    NUMERIC_ZERO = "numeric-zero"
    NONZERO = "nonzero"
    ERROR = "error"

    @property
    def passed(self) -> bool:
        return self in (Verdict.SYMBOLIC_ZERO, Verdict.NUMERIC_ZERO)


_SEVERITY = {
    Verdict.SYMBOLIC_ZERO: 0,
    Verdict.NUMERIC_ZERO: 1,
    Verdict.NONZERO: 2,
    Verdict.ERROR: 3,
}


def combine_verdicts(verdicts: Iterable[Verdict]) -> Verdict:
    """Returns the worst verdict, ``SYMBOLIC_ZERO`` for an empty input."""
    return max(verdicts, key=_SEVERITY.__getitem__, default=Verdict.SYMBOLIC_ZERO)


class VerificationSettings(BaseModel):
    """
    Controls the numeric fallback used when a residual cannot be decided symbolically.

    Attributes:
        tolerance (float): Absolute tolerance for a probe value to count as zero.
        probe_points (int): Number of random points per probe.
        probe_range (float): Probe coordinates are uniform on [-probe_range, probe_range].
        seed (int): Seed of the probe point generator.
    """

    tolerance: PositiveFloat = 1e-9
    probe_points: PositiveInt = 20
    probe_range: PositiveFloat = 2.0
    seed: NonNegativeInt = 0

    model_config = ConfigDict(frozen=True)


class SolverSettings(BaseModel):
    """
    Controls the damped Newton search of pointwise ansatz solutions.

    Attributes:
        restarts (int): Random restarts tried after the zero start.
        restart_range (float): Restarts are uniform on [-restart_range, restart_range].
        tolerance (float): Residual norm below which a point is a solution.
        max_iterations (int): Newton iterations per start.
        seed (int): Seed of the restart generator, recorded in reports.
    """

    restarts: NonNegativeInt = 32
    restart_range: PositiveFloat = 2.0
    tolerance: PositiveFloat = 1e-10
    max_iterations: PositiveInt = 100
    seed: NonNegativeInt = 0

    model_config = ConfigDict(frozen=True)


class ResidualEntry(BaseModel):
    """
    A single labelled residual.

    Attributes:
        label (str): What the residual is attached to, usually a coordinate name.
        expression (sympy.Expr): The canonical residual.
        verdict (Verdict): Zero-test outcome for the residual.
    """

    label: str
    expression: ScalarExpr
    verdict: Verdict


class FieldEquationResidual(BaseModel):
    """
    Residuals indexed by equation label, each with its own verdict.

    Attributes:
        entries (list[ResidualEntry]): The residuals in a fixed label order.
    """

    entries: list[ResidualEntry]

    @property
    def verdict(self) -> Verdict:
        return combine_verdicts(entry.verdict for entry in self.entries)

    @property
    def passed(self) -> bool:
        return self.verdict.passed

    @property
    def labels(self) -> list[str]:
        return [entry.label for entry in self.entries]

    @property
    def expressions(self) -> list[sympy.Expr]:
        return [entry.expression for entry in self.entries]

    def get(self, label: str) -> Optional[ResidualEntry]:
        for entry in self.entries:
            if entry.label == label:
                return entry
        return None

    def failing(self) -> list[ResidualEntry]:
        return [entry for entry in self.entries if not entry.verdict.passed]
