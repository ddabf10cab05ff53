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
from .commands import (
    CommandOptions,
    cmd_action,
    cmd_check,
    cmd_conserved,
    cmd_field_equations,
    cmd_identities,
    cmd_noether,
    cmd_symmetry,
)
from .main import cli
from .report import CheckRecord, Report
from .system_file import LoadedSystem, SystemFile, load_system_file

__all__ = [
    "CommandOptions",
    "cmd_action",
    "cmd_check",
    "cmd_conserved",
    "cmd_field_equations",
    "cmd_identities",
    "cmd_noether",
    "cmd_symmetry",
    "cli",
    "CheckRecord",
    "Report",
    "LoadedSystem",
    "SystemFile",
    "load_system_file",
]
