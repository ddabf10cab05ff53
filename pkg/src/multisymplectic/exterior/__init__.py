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
from .chart import BundleChart
from .homotopy import radial_homotopy
from .identities import IdentityOutcome, run_identity_suite
from .operations import (
    InvolutivityResult,
    form_residual,
    contract,
    exterior_derivative,
    involutivity_check,
    iterated_lie_derivative,
    lie_bracket,
    lie_derivative,
    prolong,
    pullback_form,
    pushforward_mv,
    sn_bracket,
    wedge,
)
from .sections import DecomposableAnsatz, FiberedMap, Section
from .tensors import AlternatingTensor, DiffForm, MultiVector

__all__ = [
    "AlternatingTensor",
    "BundleChart",
    "DecomposableAnsatz",
    "DiffForm",
    "FiberedMap",
    "IdentityOutcome",
    "InvolutivityResult",
    "MultiVector",
    "Section",
    "contract",
    "exterior_derivative",
    "form_residual",
    "involutivity_check",
    "iterated_lie_derivative",
    "lie_bracket",
    "lie_derivative",
    "prolong",
    "pullback_form",
    "pushforward_mv",
    "radial_homotopy",
    "run_identity_suite",
    "sn_bracket",
    "wedge",
]
