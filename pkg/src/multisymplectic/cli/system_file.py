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
"""System definition files.

A system file is TOML:

.. code-block:: toml

    [chart]
    base = ["t"]
    fiber = ["q", "p"]

    [[theta]]
    coeff = "p"
    basis = ["q"]

    [[theta]]
    coeff = "-(p^2 + q^2)/2"
    basis = ["t"]

    [sections.exact]
    q = "cos(t)"
    p = "-sin(t)"

    [vector_fields.time]
    t = "1"

    [ansatze.hamiltonian]
    q = ["p"]
    p = ["-q"]

Omega is given by exactly one of ``theta`` (records of the potential),
``coordinate_data`` (``F`` as an ``n x m`` matrix and ``E``) or ``omega``
(records of the form itself). Optional tables are ``conserved`` (form records
per name), ``maps`` (``targets`` and ``inverse`` per coordinate, identity
where omitted) and ``boxes`` (an interval per base coordinate).
"""

from __future__ import annotations
import hashlib
import logging
import sys
from pathlib import Path
from typing import Annotated, Any, Optional, TypeVar, Union

import sympy
from pydantic import BaseModel, BeforeValidator, ConfigDict, ValidationError, model_validator
from pydantic_core import ErrorDetails

from multisymplectic.exceptions import ChartValidationError, SystemFileError
from multisymplectic.exterior.chart import BundleChart
from multisymplectic.exterior.sections import DecomposableAnsatz, FiberedMap, Section
from multisymplectic.exterior.tensors import DiffForm, MultiVector
from multisymplectic.quadrature import Interval
from multisymplectic.symbolic.parser import parse_expr
from multisymplectic.systems.system import (
    PremultisymplecticSystem,
    system_from_coordinate_data,
    system_from_omega,
    system_from_theta,
)

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

logger = logging.getLogger(__name__)

M = TypeVar("M", bound=BaseModel)


def _expression_text(value: Any) -> Any:
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    return value


ExpressionText = Annotated[str, BeforeValidator(_expression_text)]


class FormRecord(BaseModel):
    coeff: ExpressionText
    basis: list[str]

    model_config = ConfigDict(extra="forbid")


class ChartRecord(BaseModel):
    base: list[str]
    fiber: list[str]

    model_config = ConfigDict(extra="forbid")


class CoordinateDataRecord(BaseModel):
    F: list[list[ExpressionText]]
    E: ExpressionText

    model_config = ConfigDict(extra="forbid")


class MapRecord(BaseModel):
    targets: dict[str, ExpressionText] = {}
    inverse: Optional[dict[str, ExpressionText]] = None

    model_config = ConfigDict(extra="forbid")


class SystemFile(BaseModel):
    """
    Raw content of a system file, before expressions are parsed.

    Attributes:
        chart (ChartRecord): Base and fiber coordinate names.
        theta (Optional[list[FormRecord]]): Records of Theta.
        coordinate_data (Optional[CoordinateDataRecord]): ``F`` and ``E``.
        omega (Optional[list[FormRecord]]): Records of Omega.
        sections (dict[str, dict[str, str]]): Fiber components per section.
        vector_fields (dict[str, dict[str, str]]): Components per vector field; omitted ones are 0.
        ansatze (dict[str, dict[str, list[str]]]): ``X^j_mu`` per fiber, one entry per base coordinate.
        conserved (dict[str, list[FormRecord]]): Candidate conserved quantities.
        maps (dict[str, MapRecord]): Maps of the total space.
        boxes (dict[str, dict[str, list[float]]]): Intervals per base coordinate.
    """

    chart: ChartRecord
    theta: Optional[list[FormRecord]] = None
    coordinate_data: Optional[CoordinateDataRecord] = None
    omega: Optional[list[FormRecord]] = None
    sections: dict[str, dict[str, ExpressionText]] = {}
    vector_fields: dict[str, dict[str, ExpressionText]] = {}
    ansatze: dict[str, dict[str, list[ExpressionText]]] = {}
    conserved: dict[str, list[FormRecord]] = {}
    maps: dict[str, MapRecord] = {}
    boxes: dict[str, dict[str, list[float]]] = {}

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def check_consistency(self) -> "SystemFile":
        given = [
            name
            for name, value in (
                ("theta", self.theta),
                ("coordinate_data", self.coordinate_data),
                ("omega", self.omega),
            )
            if value is not None
        ]
        if len(given) != 1:
            raise ValueError(
                f"Exactly one of theta, coordinate_data and omega is required, got {given}"
            )
        coordinates = set(self.chart.base) | set(self.chart.fiber)
        records = list(self.theta or []) + list(self.omega or [])
        for quantity in self.conserved.values():
            records.extend(quantity)
        for record in records:
            if len(set(record.basis)) != len(record.basis):
                raise ValueError(f"Basis {record.basis} repeats a coordinate")
            unknown = sorted(set(record.basis) - coordinates)
            if unknown:
                raise ValueError(f"Basis {record.basis} uses undeclared coordinates {unknown}")
        for name, field in self.vector_fields.items():
            unknown = sorted(set(field) - coordinates)
            if unknown:
                raise ValueError(f"Vector field '{name}' uses undeclared coordinates {unknown}")
        for name, box in self.boxes.items():
            if set(box) != set(self.chart.base):
                raise ValueError(f"Box '{name}' needs an interval for each of {self.chart.base}")
            for interval in box.values():
                if len(interval) != 2 or not interval[0] < interval[1]:
                    raise ValueError(f"Box '{name}' has an invalid interval {interval}")
        return self


class LoadedSystem(BaseModel):
    """
    A parsed system file with every named object built.

    Attributes:
        system (PremultisymplecticSystem): The system.
        digest (str): SHA-256 of the file bytes.
    """

    system: PremultisymplecticSystem
    sections: dict[str, Section] = {}
    vector_fields: dict[str, MultiVector] = {}
    ansatze: dict[str, DecomposableAnsatz] = {}
    conserved: dict[str, DiffForm] = {}
    maps: dict[str, FiberedMap] = {}
    boxes: dict[str, list[Interval]] = {}
    digest: str

    @property
    def chart(self) -> BundleChart:
        return self.system.chart


def _toml_error(message: str) -> list[ErrorDetails]:
    return [ErrorDetails(type="toml_syntax", loc=(), msg=message, input=None)]


def _validated(model: type[M], **kwargs: Any) -> M:
    try:
        return model(**kwargs)
    except ValidationError as e:
        raise SystemFileError(e.errors()) from e


class _Parser:
    def __init__(self, chart: BundleChart) -> None:
        self.chart = chart
        self.names = set(chart.coordinates)

    def expr(self, text: str, names: Optional[set[str]] = None) -> sympy.Expr:
        return parse_expr(text, self.names if names is None else names)

    def form(self, records: list[FormRecord], degree: int) -> DiffForm:
        terms: dict[tuple[str, ...], sympy.Expr] = {}
        for record in records:
            key = tuple(record.basis)
            if len(key) != degree:
                raise SystemFileError(
                    [
                        ErrorDetails(
                            type="degree",
                            loc=tuple(record.basis),
                            msg=f"Expected a basis of length {degree}",
                            input=record.basis,
                        )
                    ]
                )
            terms[key] = terms.get(key, sympy.Integer(0)) + self.expr(record.coeff)
        return _validated(
            DiffForm,
            chart=self.chart,
            degree=degree,
            coefficients={
                tuple(self.chart.index(name) for name in key): value for key, value in terms.items()
            },
        )

    def mapping(self, targets: dict[str, str]) -> dict[str, Union[sympy.Expr, sympy.Symbol]]:
        result: dict[str, Union[sympy.Expr, sympy.Symbol]] = {}
        for name in self.chart.coordinates:
            result[name] = self.expr(targets[name]) if name in targets else sympy.Symbol(name)
        unknown = sorted(set(targets) - self.names)
        if unknown:
            raise SystemFileError(_toml_error(f"Map targets for undeclared coordinates {unknown}"))
        return result


def build_system(raw: SystemFile, strict: bool = False) -> PremultisymplecticSystem:
    try:
        chart = BundleChart(base=tuple(raw.chart.base), fiber=tuple(raw.chart.fiber))
    except ValidationError as e:
        raise ChartValidationError(e.errors()) from e
    parser = _Parser(chart)
    if raw.theta is not None:
        return system_from_theta(chart, parser.form(raw.theta, chart.m), strict=strict)
    if raw.omega is not None:
        return system_from_omega(chart, parser.form(raw.omega, chart.m + 1), strict=strict)
    assert raw.coordinate_data is not None
    F = [[parser.expr(entry) for entry in row] for row in raw.coordinate_data.F]
    return system_from_coordinate_data(chart, F, parser.expr(raw.coordinate_data.E))


def load_system_file(path: Union[str, Path], strict: bool = False) -> LoadedSystem:
    """Reads, validates and builds a system file.

    Args:
        path (Union[str, Path]): The TOML file.
        strict (bool): Passed to the system builders; with ``False`` a failing
            triple-vertical condition is left for the checks to report.

    Raises:
        SystemFileError: If the file is not valid TOML or does not match the schema.
        ExpressionSyntaxError: If an expression does not parse or uses undeclared names.
        ChartValidationError: If the chart or a chart-bound object is invalid.
    """
    content = Path(path).read_bytes()
    digest = hashlib.sha256(content).hexdigest()
    try:
        data = tomllib.loads(content.decode("utf-8"))
    except (tomllib.TOMLDecodeError, UnicodeDecodeError) as e:
        raise SystemFileError(_toml_error(str(e))) from e
    raw = _validated(SystemFile, **data)
    system = build_system(raw, strict=strict)
    chart = system.chart
    parser = _Parser(chart)
    base_names = set(chart.base)

    sections = {
        name: _validated(
            Section,
            chart=chart,
            components={y: parser.expr(text, base_names) for y, text in components.items()},
        )
        for name, components in raw.sections.items()
    }
    vector_fields = {
        name: MultiVector.vector_field(
            chart, {k: parser.expr(text) for k, text in components.items()}
        )
        for name, components in raw.vector_fields.items()
    }
    ansatze = {}
    for name, rows in raw.ansatze.items():
        unknown = sorted(set(rows) - set(chart.fiber))
        if unknown:
            raise SystemFileError(_toml_error(f"Ansatz '{name}' uses unknown fibers {unknown}"))
        coefficients = [
            [parser.expr(text) for text in rows[y]] if y in rows else [sympy.Integer(0)] * chart.m
            for y in chart.fiber
        ]
        ansatze[name] = _validated(DecomposableAnsatz, chart=chart, coefficients=coefficients)
    conserved = {
        name: parser.form(records, chart.m - 1) for name, records in raw.conserved.items()
    }
    maps = {
        name: _validated(
            FiberedMap,
            chart=chart,
            targets=parser.mapping(record.targets),
            inverse=parser.mapping(record.inverse) if record.inverse is not None else None,
        )
        for name, record in raw.maps.items()
    }
    boxes = {
        name: [(float(box[x][0]), float(box[x][1])) for x in chart.base]
        for name, box in raw.boxes.items()
    }
    logger.info("Loaded %s (%s)", path, digest[:12])
    return LoadedSystem(
        system=system,
        sections=sections,
        vector_fields=vector_fields,
        ansatze=ansatze,
        conserved=conserved,
        maps=maps,
        boxes=boxes,
        digest=digest,
    )
