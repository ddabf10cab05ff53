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
from typing import Sequence

from multisymplectic.exceptions import MissingThetaError
from multisymplectic.exterior.operations import pullback_form
from multisymplectic.exterior.sections import Section
from multisymplectic.quadrature import Interval, integrate_box
from multisymplectic.systems.system import PremultisymplecticSystem

logger = logging.getLogger(__name__)


def action_evaluate(
    S: PremultisymplecticSystem,
    psi: Section,
    box: Sequence[Interval],
    points: int = 32,
) -> float:
    """Integral of ``psi* Theta`` over a box in the base.

    Args:
        S (PremultisymplecticSystem): A system carrying Theta.
        psi (Section): The section.
        box (Sequence[Interval]): One finite interval per base coordinate, in chart order.
        points (int): Gauss-Legendre points per axis.

    Raises:
        MissingThetaError: If the system was built without Theta.
    """
    if S.theta is None:
        raise MissingThetaError("The action needs the potential form Theta")
    density = pullback_form(psi, S.theta).coefficients.get(tuple(S.chart.base_indices), 0)
    value = integrate_box(density, S.chart.base_symbols, box, points)
    logger.info("Action over %s: %.12g", box, value)
    return value
