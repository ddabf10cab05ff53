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
from .action import action_evaluate
from .field_equations import (
    EulerEquations,
    coordinate_field_equations,
    euler_equations,
    integral_section_check,
    mv_kernel_residual,
    orientation_sign,
    section_residual_sect1,
    section_residual_sect2,
)
from .nondegeneracy import (
    Classification,
    NondegeneracyResult,
    nondegeneracy_probe,
    random_points,
)
from .solver import AnsatzSolutions, solve_ansatz_at_point
from .system import (
    CoordinateData,
    PremultisymplecticSystem,
    extract_coordinate_data,
    system_from_coordinate_data,
    system_from_omega,
    system_from_theta,
    vertical_violations,
)

__all__ = [
    "AnsatzSolutions",
    "Classification",
    "CoordinateData",
    "EulerEquations",
    "NondegeneracyResult",
    "PremultisymplecticSystem",
    "action_evaluate",
    "coordinate_field_equations",
    "euler_equations",
    "extract_coordinate_data",
    "integral_section_check",
    "mv_kernel_residual",
    "nondegeneracy_probe",
    "orientation_sign",
    "random_points",
    "section_residual_sect1",
    "section_residual_sect2",
    "solve_ansatz_at_point",
    "system_from_coordinate_data",
    "system_from_omega",
    "system_from_theta",
    "vertical_violations",
]
