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
from typing import Iterable, Optional

import numpy as np
import sympy

from multisymplectic.symbolic.expressions import (
    ScalarLike,
    ZeroTest,
    compile_numeric,
    is_zero,
    normalize,
)
from multisymplectic.types import (
    FieldEquationResidual,
    ResidualEntry,
    Verdict,
    VerificationSettings,
)

logger = logging.getLogger(__name__)


def probe_points(
    symbols: list[sympy.Symbol], settings: VerificationSettings
) -> np.ndarray:
    rng = np.random.default_rng(settings.seed)
    return rng.uniform(
        -settings.probe_range,
        settings.probe_range,
        size=(settings.probe_points, len(symbols)),
    )


def numeric_probe(e: ScalarLike, settings: VerificationSettings) -> Verdict:
    """Evaluates ``e`` at random points; all values within tolerance count as zero."""
    expr = normalize(e)
    symbols = sorted(expr.free_symbols, key=str)
    func = compile_numeric(expr, symbols)
    values = np.array(
        [func(*row) for row in probe_points(symbols, settings)], dtype=float
    )
    worst = float(np.max(np.abs(values))) if values.size else 0.0
    logger.debug("Numeric probe of %s: max |value| = %.3e", expr, worst)
    if np.all(np.isfinite(values)) and worst <= settings.tolerance:
        return Verdict.NUMERIC_ZERO
    return Verdict.NONZERO


def classify(
    e: ScalarLike, settings: Optional[VerificationSettings] = None
) -> Verdict:
    """Symbolic zero test with a numeric fallback for undecided residuals."""
    outcome = is_zero(e)
    if outcome == ZeroTest.ZERO:
        return Verdict.SYMBOLIC_ZERO
    if outcome == ZeroTest.NONZERO:
        return Verdict.NONZERO
    return numeric_probe(e, settings or VerificationSettings())


def residual_set(
    labelled: Iterable[tuple[str, ScalarLike]],
    settings: Optional[VerificationSettings] = None,
) -> FieldEquationResidual:
    entries = []
    for label, expr in labelled:
        canonical = normalize(expr)
        entries.append(
            ResidualEntry(
                label=label, expression=canonical, verdict=classify(canonical, settings)
            )
        )
    return FieldEquationResidual(entries=entries)
