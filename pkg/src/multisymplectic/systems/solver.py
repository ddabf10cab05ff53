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
from typing import Callable, Optional

import numpy as np
import sympy
from pydantic import BaseModel

from multisymplectic.exceptions import UnboundSymbolError
from multisymplectic.exterior.operations import contract
from multisymplectic.exterior.sections import DecomposableAnsatz
from multisymplectic.symbolic.expressions import Point
from multisymplectic.systems.system import PremultisymplecticSystem
from multisymplectic.types import SolverSettings

logger = logging.getLogger(__name__)

DUPLICATE_DISTANCE = 1e-6
MIN_DAMPING = 1.0 / 1024


class AnsatzSolutions(BaseModel):
    """
    Pointwise solutions ``X^j_mu`` of ``i(X) Omega = 0``.

    Attributes:
        all_solutions (bool): Omega vanishes identically, so every ansatz solves.
        solutions (list[list[list[float]]]): Distinct solutions as ``n x m`` matrices,
            sorted lexicographically.
        seed (int): Seed of the restart generator.
    """

    all_solutions: bool = False
    solutions: list[list[list[float]]] = []
    seed: int = 0


def _newton(
    residual: Callable[[np.ndarray], np.ndarray],
    jacobian: Callable[[np.ndarray], np.ndarray],
    start: np.ndarray,
    settings: SolverSettings,
) -> tuple[np.ndarray, float]:
    x = start.copy()
    r = residual(x)
    norm = float(np.linalg.norm(r))
    for _ in range(settings.max_iterations):
        if norm < settings.tolerance or not np.isfinite(norm):
            break
        step = np.linalg.lstsq(jacobian(x), -r, rcond=None)[0]
        damping = 1.0
        while True:
            candidate = x + damping * step
            r_candidate = residual(candidate)
            norm_candidate = float(np.linalg.norm(r_candidate))
            if norm_candidate < norm or damping <= MIN_DAMPING:
                break
            damping /= 2
        x, r, norm = candidate, r_candidate, norm_candidate
    return x, norm


def solve_ansatz_at_point(
    S: PremultisymplecticSystem,
    point: Point,
    settings: Optional[SolverSettings] = None,
) -> AnsatzSolutions:
    """Solves the kernel equations for constant ansatz coefficients at one point.

    Damped Newton with least-squares steps is started from zero and from
    ``settings.restarts`` points uniform on ``[-restart_range, restart_range]``.
    Converged points closer than ``1e-6`` to an earlier one are dropped.

    Raises:
        UnboundSymbolError: If ``point`` misses a coordinate.
    """
    settings = settings or SolverSettings()
    chart = S.chart
    for name in chart.coordinates:
        if name not in point:
            raise UnboundSymbolError(name)
    if S.omega.is_zero:
        logger.info("Omega vanishes, every ansatz solves the kernel equations")
        return AnsatzSolutions(all_solutions=True, seed=settings.seed)

    unknowns = [[sympy.Dummy(f"X_{y}_{x}") for x in chart.base] for y in chart.fiber]
    flat = [u for row in unknowns for u in row]
    at_point = {sympy.Symbol(name): sympy.Float(point[name]) for name in chart.coordinates}
    ansatz = DecomposableAnsatz.model_construct(chart=chart, coefficients=unknowns)
    image = contract(ansatz.multivector(), S.omega)
    exprs = [
        image.coefficients.get((k,), sympy.Integer(0)).xreplace(at_point)
        for k in range(chart.dimension)
    ]
    matrix = sympy.Matrix(exprs)
    residual_func = sympy.lambdify([flat], matrix, modules="numpy")
    jacobian_func = sympy.lambdify([flat], matrix.jacobian(flat), modules="numpy")

    def residual(x: np.ndarray) -> np.ndarray:
        return np.asarray(residual_func(x), dtype=float).ravel()

    def jacobian(x: np.ndarray) -> np.ndarray:
        return np.asarray(jacobian_func(x), dtype=float).reshape(len(exprs), len(flat))

    rng = np.random.default_rng(settings.seed)
    starts = [np.zeros(len(flat))] + [
        rng.uniform(-settings.restart_range, settings.restart_range, size=len(flat))
        for _ in range(settings.restarts)
    ]
    found: list[np.ndarray] = []
    for start in starts:
        x, norm = _newton(residual, jacobian, start, settings)
        if norm >= settings.tolerance:
            continue
        if any(np.max(np.abs(x - other)) < DUPLICATE_DISTANCE for other in found):
            continue
        found.append(x)
    found.sort(key=lambda x: tuple(x))
    logger.info("Found %d distinct ansatz solutions from %d starts", len(found), len(starts))
    return AnsatzSolutions(
        solutions=[x.reshape(chart.n, chart.m).tolist() for x in found],
        seed=settings.seed,
    )
