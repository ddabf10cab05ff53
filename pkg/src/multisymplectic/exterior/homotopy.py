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
from typing import Iterable, Mapping, Optional

import sympy

from multisymplectic.exterior.tensors import DiffForm, Key
from multisymplectic.symbolic.expressions import integrate_poly, normalize

logger = logging.getLogger(__name__)


def radial_homotopy(
    a: DiffForm,
    scaled: Optional[Iterable[int]] = None,
    center: Optional[Mapping[str, sympy.Rational]] = None,
) -> DiffForm:
    """Radial homotopy operator ``K`` of the Poincare lemma.

    The coordinates listed in ``scaled`` are contracted towards ``center``
    along ``z0 + s (z - z0)`` while the others are held fixed. A term
    ``f dz^I`` with ``c`` scaled indices contributes
    ``int_0^1 s^(c-1) i(R) (f dz^I)(z0 + s (z - z0)) ds`` with the radial
    field ``R = sum (z^i - z0^i) d/dz^i`` over the scaled coordinates.
    When every coordinate is scaled, ``d K(a) + K(d a) = a`` for ``deg a >= 1``.

    Args:
        a (DiffForm): The form.
        scaled (Optional[Iterable[int]]): Scaled coordinate indices, all by default.
        center (Optional[Mapping[str, sympy.Rational]]): Center per coordinate name, 0 by default.

    Raises:
        NotPolynomialError: If a coefficient is not polynomial in the homotopy parameter.
    """
    chart = a.chart
    indices = sorted(set(range(chart.dimension) if scaled is None else scaled))
    center = center or {}
    s = sympy.Dummy("s")
    offsets = {
        i: chart.symbols[i] - sympy.Rational(center.get(chart.coordinates[i], 0)) for i in indices
    }
    path = {chart.symbols[i]: chart.symbols[i] - (1 - s) * offsets[i] for i in indices}
    terms: dict[Key, sympy.Expr] = {}
    for key, value in a.coefficients.items():
        count = sum(1 for i in key if i in offsets)
        if count == 0:
            continue
        moved = value.xreplace(path)
        for pos, i in enumerate(key):
            if i not in offsets:
                continue
            integrand = normalize((-1) ** pos * s ** (count - 1) * offsets[i] * moved)
            antiderivative = integrate_poly(integrand, s)
            integral = normalize(antiderivative.xreplace({s: 1}) - antiderivative.xreplace({s: 0}))
            rest = key[:pos] + key[pos + 1 :]
            terms[rest] = terms.get(rest, sympy.Integer(0)) + integral
    logger.debug("Radial homotopy of a degree-%d form over %s", a.degree, indices)
    return DiffForm.build(chart, a.degree - 1, terms)
