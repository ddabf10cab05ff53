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
"""Example systems shipped with the package."""

from pathlib import Path

CORPUS_DIR = Path(__file__).parent

EXAMPLES = ("oscillator", "free-particle", "ddw-wave", "premulti-degenerate")


def corpus_path(name: str) -> Path:
    """Path of the system file of a shipped example.

    Raises:
        KeyError: If ``name`` is not one of :data:`EXAMPLES`.
    """
    if name not in EXAMPLES:
        raise KeyError(f"Unknown example '{name}', known: {list(EXAMPLES)}")
    return CORPUS_DIR / f"{name}.toml"
