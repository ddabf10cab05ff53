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
from .cartan import (
    CartanKind,
    CartanResult,
    HigherOrderResult,
    WitnessResult,
    cartan_bracket_closure,
    cartan_check,
    finite_cartan_check,
    finite_symmetry_check,
    gauge_check,
    higher_cartan_order,
    infinitesimal_symmetry_check,
    search_order_n_cartan,
    transport_ansatz,
)
from .conservation import (
    ConservedQuantity,
    FluxResult,
    Provenance,
    check_conserved,
    current_on_section,
    hamiltonian_forms_agree,
    stokes_flux_check,
    transform_conserved,
)
from .noether import (
    NoetherReport,
    generalized_noether_current,
    homotopy_potential,
    noether_current,
)

__all__ = [
    "CartanKind",
    "CartanResult",
    "ConservedQuantity",
    "FluxResult",
    "HigherOrderResult",
    "NoetherReport",
    "Provenance",
    "WitnessResult",
    "cartan_bracket_closure",
    "cartan_check",
    "check_conserved",
    "current_on_section",
    "finite_cartan_check",
    "finite_symmetry_check",
    "gauge_check",
    "generalized_noether_current",
    "hamiltonian_forms_agree",
    "higher_cartan_order",
    "homotopy_potential",
    "infinitesimal_symmetry_check",
    "noether_current",
    "search_order_n_cartan",
    "stokes_flux_check",
    "transform_conserved",
    "transport_ansatz",
]
