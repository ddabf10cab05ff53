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
import itertools
import logging
from enum import Enum
from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel

from multisymplectic.exterior.chart import BundleChart
from multisymplectic.exterior.operations import contract
from multisymplectic.exterior.tensors import MultiVector
from multisymplectic.symbolic.expressions import Point, evaluate
from multisymplectic.systems.system import PremultisymplecticSystem
from multisymplectic.types import VerificationSettings

logger = logging.getLogger(__name__)


class Classification(str, Enum):
    MULTISYMPLECTIC = "multisymplectic"
    PREMULTISYMPLECTIC = "premultisymplectic"


class NondegeneracyResult(BaseModel):
    """
    Outcome of the numeric rank probe of ``v -> i(v) Omega``.

    Attributes:
        classification (Classification): Multisymplectic iff the map is injective at every point.
        kernel_dimensions (list[int]): Kernel dimension per probe point, in input order.
    """

    classification: Classification
    kernel_dimensions: list[int]


def random_points(
    chart: BundleChart, count: int, settings: Optional[VerificationSettings] = None
) -> list[dict[str, float]]:
    """Probe points uniform on ``[-probe_range, probe_range]`` in every coordinate."""
    settings = settings or VerificationSettings()
    rng = np.random.default_rng(settings.seed)
    values = rng.uniform(-settings.probe_range, settings.probe_range, size=(count, chart.dimension))
    return [dict(zip(chart.coordinates, map(float, row))) for row in values]


def flat_matrix(S: PremultisymplecticSystem, point: Point) -> np.ndarray:
    """Matrix of ``v -> i(v) Omega`` at ``point``: one row per coordinate field,
    one column per m-form basis key."""
    chart = S.chart
    columns = list(itertools.combinations(range(chart.dimension), chart.m))
    matrix = np.zeros((chart.dimension, len(columns)))
    for row, name in enumerate(chart.coordinates):
        image = contract(MultiVector.coordinate_field(chart, name), S.omega)
        for col, key in enumerate(columns):
            value = image.coefficients.get(key)
            if value is not None:
                matrix[row, col] = evaluate(value, point)
    return matrix


def nondegeneracy_probe(
    S: PremultisymplecticSystem,
    points: Sequence[Point],
    tolerance: float = 1e-9,
) -> NondegeneracyResult:
    """Numeric 1-nondegeneracy test of Omega at the given points.

    Raises:
        UnboundSymbolError: If a point leaves a coordinate appearing in Omega unbound.
    """
    dimension = S.chart.dimension
    kernels = []
    for point in points:
        singular = np.linalg.svd(flat_matrix(S, point), compute_uv=False)
        rank = int(np.sum(singular > tolerance))
        kernels.append(dimension - rank)
    logger.debug("Kernel dimensions of Omega at probe points: %s", kernels)
    full = all(kernel == 0 for kernel in kernels)
    return NondegeneracyResult(
        classification=Classification.MULTISYMPLECTIC if full else Classification.PREMULTISYMPLECTIC,
        kernel_dimensions=kernels,
    )
