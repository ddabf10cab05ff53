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
import re

import sympy
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from multisymplectic.symbolic.parser import RESERVED_NAMES

IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def jet_name(fiber: str, base: str) -> str:
    return f"u_{fiber}_{base}"


class BundleChart(BaseModel):
    """
    An adapted chart of a fiber bundle: base coordinates first, then fiber coordinates.

    Coordinates are addressed by position in :attr:`coordinates`, so index ``k``
    is a base coordinate iff ``k < m``. The base volume form is
    ``dx^1 ^ ... ^ dx^m``.

    Attributes:
        base (tuple[str, ...]): Base coordinate names x^1..x^m.
        fiber (tuple[str, ...]): Fiber coordinate names y^1..y^n.
    """

    base: tuple[str, ...]
    fiber: tuple[str, ...]

    model_config = ConfigDict(frozen=True)

    @field_validator("base", "fiber")
    @classmethod
    def check_names(cls, value: tuple[str, ...]) -> tuple[str, ...]:
        if not value:
            raise ValueError("At least one coordinate is required")
        for name in value:
            if not IDENTIFIER.match(name):
                raise ValueError(f"'{name}' is not a valid coordinate name")
            if name in RESERVED_NAMES:
                raise ValueError(f"'{name}' is a reserved function name")
        return value

    @model_validator(mode="after")
    def check_unique(self) -> "BundleChart":
        names = self.base + self.fiber
        if len(set(names)) != len(names):
            raise ValueError(f"Coordinate names must be unique, got {names}")
        jets = {jet_name(y, x) for y in self.fiber for x in self.base}
        clashes = sorted(jets.intersection(names))
        if clashes:
            raise ValueError(f"Names {clashes} are reserved for jet symbols")
        return self

    @property
    def m(self) -> int:
        return len(self.base)

    @property
    def n(self) -> int:
        return len(self.fiber)

    @property
    def dimension(self) -> int:
        return self.m + self.n

    @property
    def coordinates(self) -> tuple[str, ...]:
        return self.base + self.fiber

    @property
    def symbols(self) -> tuple[sympy.Symbol, ...]:
        return tuple(sympy.Symbol(name) for name in self.coordinates)

    @property
    def base_symbols(self) -> tuple[sympy.Symbol, ...]:
        return self.symbols[: self.m]

    @property
    def fiber_symbols(self) -> tuple[sympy.Symbol, ...]:
        return self.symbols[self.m :]

    @property
    def base_indices(self) -> range:
        return range(self.m)

    @property
    def fiber_indices(self) -> range:
        return range(self.m, self.dimension)

    def index(self, name: str) -> int:
        try:
            return self.coordinates.index(name)
        except ValueError as e:
            raise KeyError(f"'{name}' is not a coordinate of {self.coordinates}") from e

    def symbol(self, name: str) -> sympy.Symbol:
        self.index(name)
        return sympy.Symbol(name)

    def is_vertical_index(self, k: int) -> bool:
        return k >= self.m

    def jet_symbol(self, fiber: str, base: str) -> sympy.Symbol:
        """The first-jet symbol ``u_<fiber>_<base>`` standing for d(fiber)/d(base)."""
        return sympy.Symbol(jet_name(fiber, base))

    def jet_symbols(self) -> list[list[sympy.Symbol]]:
        return [[self.jet_symbol(y, x) for x in self.base] for y in self.fiber]
