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
from typing import Sequence

import numpy as np
import sympy

from multisymplectic.symbolic.expressions import ScalarLike, compile_numeric, normalize

logger = logging.getLogger(__name__)

Interval = tuple[float, float]


def gauss_legendre(interval: Interval, points: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the ``points``-point Gauss-Legendre rule on ``interval``."""
    if points < 1:
        raise ValueError(f"At least one quadrature point is required, got {points}")
    a, b = interval
    nodes, weights = np.polynomial.legendre.leggauss(points)
    half = 0.5 * (b - a)
    return half * nodes + 0.5 * (a + b), half * weights


def integrate_box(
    e: ScalarLike,
    symbols: Sequence[sympy.Symbol],
    box: Sequence[Interval],
    points: int,
) -> float:
    """Integrates ``e`` over an axis-aligned box with a tensor-product Gauss-Legendre rule.

    Args:
        e (ScalarLike): Integrand; its free symbols must be among ``symbols``.
        symbols (Sequence[sympy.Symbol]): Integration variables, one per box axis.
        box (Sequence[Interval]): Finite interval per variable.
        points (int): Quadrature points per axis.

    Returns:
        float: The approximate integral. A zero-dimensional box yields the value of ``e``.
    """
    if len(symbols) != len(box):
        raise ValueError(f"Box has {len(box)} intervals for {len(symbols)} variables")
    func = compile_numeric(normalize(e), symbols)
    rules = [gauss_legendre(interval, points) for interval in box]
    total = 0.0
    for combination in itertools.product(*(range(points) for _ in rules)):
        args = [rules[axis][0][i] for axis, i in enumerate(combination)]
        weight = float(np.prod([rules[axis][1][i] for axis, i in enumerate(combination)]))
        total += weight * float(func(*args))
    logger.debug("Box integral over %s with %d points per axis: %.12e", box, points, total)
    return total
