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
import pytest
from multisymplectic.exterior.chart import BundleChart
from multisymplectic.exterior.tensors import DiffForm
from multisymplectic.systems.system import PremultisymplecticSystem, system_from_theta
from multisymplectic.types import VerificationSettings


@pytest.fixture(scope="function")
def mechanics_chart() -> BundleChart:
    return BundleChart(base=("t",), fiber=("q", "p"))


@pytest.fixture(scope="function")
def field_chart() -> BundleChart:
    return BundleChart(base=("t", "x"), fiber=("phi", "pt", "px"))


@pytest.fixture(scope="function")
def oscillator(mechanics_chart: BundleChart) -> PremultisymplecticSystem:
    theta = DiffForm.from_terms(
        mechanics_chart, {("q",): "p", ("t",): "-(p^2 + q^2)/2"}
    )
    return system_from_theta(mechanics_chart, theta)


@pytest.fixture(scope="function")
def free_particle(mechanics_chart: BundleChart) -> PremultisymplecticSystem:
    theta = DiffForm.from_terms(mechanics_chart, {("q",): "p", ("t",): "-p^2/2"})
    return system_from_theta(mechanics_chart, theta)


@pytest.fixture(scope="function")
def ddw(field_chart: BundleChart) -> PremultisymplecticSystem:
    theta = DiffForm.from_terms(
        field_chart,
        {
            ("phi", "x"): "pt",
            ("phi", "t"): "-px",
            ("t", "x"): "-(pt^2 - px^2)/2",
        },
    )
    return system_from_theta(field_chart, theta)


@pytest.fixture(scope="function")
def settings() -> VerificationSettings:
    return VerificationSettings()
