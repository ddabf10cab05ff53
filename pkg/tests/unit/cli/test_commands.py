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
import math

import pytest
from multisymplectic.cli.commands import (
    CommandOptions,
    cmd_action,
    cmd_check,
    cmd_conserved,
    cmd_field_equations,
    cmd_identities,
    cmd_noether,
    cmd_symmetry,
)
from multisymplectic.cli.report import Report
from multisymplectic.cli.system_file import LoadedSystem, load_system_file
from multisymplectic.corpus import corpus_path
from multisymplectic.exceptions import SystemFileError
from multisymplectic.types import Verdict


def load(name: str) -> LoadedSystem:
    return load_system_file(corpus_path(name))


@pytest.fixture(scope="function")
def options() -> CommandOptions:
    return CommandOptions()


def names(report: Report) -> list[str]:
    return [record.name for record in report.records]


def test_check_field_theory(options: CommandOptions) -> None:
    report = cmd_check(load("ddw-wave"), options)
    assert names(report) == [
        "closedness",
        "exactness",
        "vertical-condition",
        "normal-form",
        "nondegeneracy",
    ]
    assert report.passed
    assert report.records[-1].details["classification"] == "multisymplectic"


def test_field_equations(options: CommandOptions) -> None:
    report = cmd_field_equations(load("oscillator"), options, "wrong")
    assert names(report) == ["euler-equations", "sect1", "sect2", "sect-agreement"]
    euler, sect1, sect2, agreement = report.records
    assert euler.details["equations"]["q"] == "-q - u_p_t"
    assert sect1.verdict == Verdict.NONZERO
    assert sect2.verdict == Verdict.NONZERO
    assert agreement.passed
    assert agreement.details == {"orientation_sign": -1, "verdicts_agree": True}
    assert not report.passed


def test_field_equations_exact_section(options: CommandOptions) -> None:
    assert cmd_field_equations(load("oscillator"), options, "exact").passed
    assert cmd_field_equations(load("ddw-wave"), options, "travelling").passed
    assert not cmd_field_equations(load("ddw-wave"), options, "ramp").passed


def test_field_equations_unknown_section(options: CommandOptions) -> None:
    with pytest.raises(SystemFileError):
        cmd_field_equations(load("oscillator"), options, "missing")


def test_noether_time(options: CommandOptions) -> None:
    report = cmd_noether(load("oscillator"), options, "time", verify_with=["hamiltonian"])
    assert names(report) == ["cartan-order", "noether-current", "conserved[hamiltonian]"]
    assert report.passed
    current = report.records[1]
    assert current.details["order"] == 1
    assert current.details["xi"]["text"] == "(-p^2/2 - q^2/2)"
    assert report.records[2].details["in_kernel"] is True


def test_noether_boost(options: CommandOptions) -> None:
    report = cmd_noether(load("free-particle"), options, "boost", verify_with=["free"])
    assert report.passed
    assert "zeta" in report.records[1].details


def test_noether_not_cartan(options: CommandOptions) -> None:
    report = cmd_noether(load("oscillator"), options, "scaling")
    assert names(report) == ["cartan-order"]
    assert report.records[0].details == {"order": None, "n_max": 1}
    assert not report.passed


def test_symmetry_vector_field(options: CommandOptions) -> None:
    report = cmd_symmetry(
        load("oscillator"), options, vector_field="rotation", verify_with=["hamiltonian"]
    )
    assert names(report) == ["cartan", "gauge", "symmetry[hamiltonian]"]
    assert report.records[0].details == {"kind": "cartan"}
    assert report.records[1].details == {"gauge": False}
    assert report.passed


def test_symmetry_gauge(options: CommandOptions) -> None:
    report = cmd_symmetry(load("premulti-degenerate"), options, vector_field="idle")
    assert report.records[1].details == {"gauge": True}


def test_symmetry_map(options: CommandOptions) -> None:
    report = cmd_symmetry(load("oscillator"), options, map_name="rotation")
    assert names(report) == ["finite-cartan", "inverse"]
    assert report.passed
    with pytest.raises(ValueError):
        cmd_symmetry(load("oscillator"), options)


def test_conserved(options: CommandOptions) -> None:
    report = cmd_conserved(
        load("ddw-wave"), options, "energy", section="travelling", box="unit"
    )
    assert names(report) == ["divergence", "stokes"]
    assert report.passed
    assert report.records[1].verdict == Verdict.NUMERIC_ZERO
    assert abs(report.records[1].details["boundary_flux"]) < 1e-8


def test_conserved_mechanics(options: CommandOptions) -> None:
    report = cmd_conserved(
        load("oscillator"), options, "momentum", verify_with=["hamiltonian"], section="exact"
    )
    assert names(report) == ["conserved[hamiltonian]", "divergence"]
    assert not report.passed


def test_action(options: CommandOptions) -> None:
    report = cmd_action(load("oscillator"), options, "exact", "period")
    value = report.records[0].details["value"]
    assert value == pytest.approx(-math.sin(2) / 4, abs=1e-12)


def test_identities(options: CommandOptions) -> None:
    report = cmd_identities(options, cases=1)
    assert report.input_digest is None
    assert report.passed
    assert all(record.details["failures"] == 0 for record in report.records)
