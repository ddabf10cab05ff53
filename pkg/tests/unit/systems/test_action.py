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
import math

import pytest
from multisymplectic.exceptions import MissingThetaError
from multisymplectic.exterior.sections import Section
from multisymplectic.systems.action import action_evaluate
from multisymplectic.systems.system import PremultisymplecticSystem, system_from_omega


def test_action_oscillator(oscillator: PremultisymplecticSystem) -> None:
    psi = Section(chart=oscillator.chart, components={"q": "cos(t)", "p": "-sin(t)"})
    value = action_evaluate(oscillator, psi, [(0, 1)])
    assert value == pytest.approx(-math.sin(2) / 4, abs=1e-12)


def test_action_free_particle(free_particle: PremultisymplecticSystem) -> None:
    psi = Section(chart=free_particle.chart, components={"q": "t", "p": 1})
    assert action_evaluate(free_particle, psi, [(0, 1)], points=4) == pytest.approx(0.5)
    assert action_evaluate(free_particle, psi, [(-1, 3)], points=4) == pytest.approx(2.0)


def test_action_constant_section(oscillator: PremultisymplecticSystem) -> None:
    psi = Section(chart=oscillator.chart, components={"q": 1, "p": 2})
    assert action_evaluate(oscillator, psi, [(0.0, 3.0)]) == pytest.approx(-7.5)


def test_action_field_theory(ddw: PremultisymplecticSystem) -> None:
    psi = Section(chart=ddw.chart, components={"phi": "x", "pt": 0, "px": 0})
    assert action_evaluate(ddw, psi, [(0, 1), (0, 2)]) == pytest.approx(0.0, abs=1e-12)


def test_action_needs_theta(oscillator: PremultisymplecticSystem) -> None:
    S = system_from_omega(oscillator.chart, oscillator.omega)
    psi = Section(chart=S.chart, components={"q": "cos(t)", "p": "-sin(t)"})
    with pytest.raises(MissingThetaError):
        action_evaluate(S, psi, [(0, 1)])
