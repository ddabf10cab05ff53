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
import numpy as np
import pytest
from multisymplectic.exceptions import UnboundSymbolError
from multisymplectic.exterior.chart import BundleChart
from multisymplectic.exterior.tensors import DiffForm
from multisymplectic.systems.nondegeneracy import (
    Classification,
    flat_matrix,
    nondegeneracy_probe,
    random_points,
)
from multisymplectic.systems.system import PremultisymplecticSystem, system_from_theta
from multisymplectic.types import VerificationSettings


@pytest.fixture(scope="function")
def degenerate() -> PremultisymplecticSystem:
    chart = BundleChart(base=("t",), fiber=("q", "p", "s"))
    theta = DiffForm.from_terms(chart, {("q",): "p", ("t",): "-(p^2 + q^2)/2"})
    return system_from_theta(chart, theta)


def test_random_points(field_chart: BundleChart) -> None:
    settings = VerificationSettings(seed=4, probe_range=1.5)
    points = random_points(field_chart, 6, settings)
    assert len(points) == 6
    assert all(list(point) == list(field_chart.coordinates) for point in points)
    assert all(abs(value) <= 1.5 for point in points for value in point.values())
    assert points == random_points(field_chart, 6, settings)
    assert points != random_points(field_chart, 6, VerificationSettings(seed=5))


def test_flat_matrix(oscillator: PremultisymplecticSystem) -> None:
    matrix = flat_matrix(oscillator, {"t": 0.0, "q": 1.0, "p": 2.0})
    expected = np.array(
        [
            [0.0, -1.0, -2.0],
            [1.0, 0.0, 1.0],
            [2.0, -1.0, 0.0],
        ]
    )
    np.testing.assert_allclose(matrix, expected)


def test_flat_matrix_unbound(oscillator: PremultisymplecticSystem) -> None:
    with pytest.raises(UnboundSymbolError):
        flat_matrix(oscillator, {"t": 0.0})


def test_mechanics_is_premultisymplectic(
    oscillator: PremultisymplecticSystem, settings: VerificationSettings
) -> None:
    points = random_points(oscillator.chart, 10, settings)
    result = nondegeneracy_probe(oscillator, points)
    assert result.classification == Classification.PREMULTISYMPLECTIC
    assert result.kernel_dimensions == [1] * 10


def test_field_theory_is_multisymplectic(
    ddw: PremultisymplecticSystem, settings: VerificationSettings
) -> None:
    result = nondegeneracy_probe(ddw, random_points(ddw.chart, 10, settings))
    assert result.classification == Classification.MULTISYMPLECTIC
    assert result.kernel_dimensions == [0] * 10


def test_idle_fiber_widens_kernel(
    degenerate: PremultisymplecticSystem, settings: VerificationSettings
) -> None:
    result = nondegeneracy_probe(degenerate, random_points(degenerate.chart, 5, settings))
    assert result.kernel_dimensions == [2] * 5
