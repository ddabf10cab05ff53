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
import pytest
import sympy
from multisymplectic.exceptions import ChartMismatchError, DegreeMismatchError
from multisymplectic.exterior.chart import BundleChart
from multisymplectic.exterior.sections import DecomposableAnsatz, FiberedMap, Section
from multisymplectic.exterior.tensors import DiffForm, MultiVector
from multisymplectic.symmetry.conservation import (
    ConservedQuantity,
    Provenance,
    check_conserved,
    current_on_section,
    hamiltonian_forms_agree,
    stokes_flux_check,
    transform_conserved,
)
from multisymplectic.systems.system import PremultisymplecticSystem
from multisymplectic.types import Verdict

q, p = sympy.symbols("q p")


@pytest.fixture(scope="function")
def energy(mechanics_chart: BundleChart) -> DiffForm:
    return DiffForm.function(mechanics_chart, "-(p^2 + q^2)/2")


@pytest.fixture(scope="function")
def hamiltonian(mechanics_chart: BundleChart) -> DecomposableAnsatz:
    return DecomposableAnsatz.from_mapping(mechanics_chart, {"q": ["p"], "p": ["-q"]})


@pytest.fixture(scope="function")
def field_energy(field_chart: BundleChart) -> DiffForm:
    return DiffForm.from_terms(field_chart, {("phi",): "px", ("x",): "-(pt^2 - px^2)/2"})


@pytest.fixture(scope="function")
def travelling(field_chart: BundleChart) -> Section:
    return Section(
        chart=field_chart,
        components={"phi": "sin(t - x)", "pt": "cos(t - x)", "px": "cos(t - x)"},
    )


def test_check_conserved(
    oscillator: PremultisymplecticSystem,
    energy: DiffForm,
    hamiltonian: DecomposableAnsatz,
) -> None:
    [result] = check_conserved(oscillator, energy, [hamiltonian])
    assert result.in_kernel
    assert result.verdict == Verdict.SYMBOLIC_ZERO
    momentum = DiffForm.function(oscillator.chart, "p")
    [result] = check_conserved(oscillator, momentum, [hamiltonian])
    assert result.verdict == Verdict.NONZERO


def test_check_conserved_free_particle(free_particle: PremultisymplecticSystem) -> None:
    free = DecomposableAnsatz.from_mapping(free_particle.chart, {"q": ["p"]})
    momentum = DiffForm.function(free_particle.chart, "p")
    [result] = check_conserved(free_particle, momentum, [free])
    assert result.in_kernel
    assert result.verdict == Verdict.SYMBOLIC_ZERO


def test_check_conserved_degree(
    oscillator: PremultisymplecticSystem, hamiltonian: DecomposableAnsatz
) -> None:
    with pytest.raises(DegreeMismatchError):
        check_conserved(oscillator, DiffForm.differential(oscillator.chart, "q"), [hamiltonian])


def test_transform_conserved(mechanics_chart: BundleChart, energy: DiffForm) -> None:
    rotation = MultiVector.vector_field(mechanics_chart, {"q": "p", "p": "-q"})
    transformed = transform_conserved(energy, rotation)
    assert transformed.provenance == Provenance.TRANSFORMED
    assert transformed.xi.is_zero
    assert transformed.xi.degree == 0

    rotation_map = FiberedMap(
        chart=mechanics_chart,
        targets={"t": "t", "q": "3/5*q + 4/5*p", "p": "-4/5*q + 3/5*p"},
    )
    momentum = ConservedQuantity(xi=DiffForm.function(mechanics_chart, "p"))
    assert momentum.provenance == Provenance.USER_GIVEN
    pulled = transform_conserved(momentum, rotation_map)
    assert pulled.note == "pullback"
    expected = sympy.Rational(-4, 5) * q + sympy.Rational(3, 5) * p
    assert sympy.expand(pulled.xi.scalar - expected) == 0


def test_hamiltonian_forms_agree(mechanics_chart: BundleChart, energy: DiffForm) -> None:
    shifted = energy + DiffForm.function(mechanics_chart, 5)
    assert hamiltonian_forms_agree(energy, shifted).passed
    other = DiffForm.function(mechanics_chart, "p")
    assert not hamiltonian_forms_agree(energy, other).passed


def test_current_on_section(field_energy: DiffForm, travelling: Section) -> None:
    result = current_on_section(field_energy, travelling)
    c = sympy.cos(sympy.Symbol("t") - sympy.Symbol("x"))
    assert sympy.expand(result.flux["t"] + c**2) == 0
    assert sympy.expand(result.flux["x"] + c**2) == 0
    assert result.divergence == 0


def test_stokes_flux_check(field_energy: DiffForm, travelling: Section) -> None:
    total = stokes_flux_check(field_energy, travelling, [(0, 1), (0, 1)], points=32)
    assert abs(total) < 1e-8


def test_stokes_flux_check_nonzero(field_chart: BundleChart) -> None:
    xi = DiffForm.from_terms(field_chart, {("x",): "t"})
    psi = Section(chart=field_chart, components={"phi": 0, "pt": 0, "px": 0})
    assert current_on_section(xi, psi).divergence == 1
    assert stokes_flux_check(xi, psi, [(0, 1), (0, 2)], points=4) == pytest.approx(2.0)


def test_stokes_flux_check_needs_field_theory(
    mechanics_chart: BundleChart, energy: DiffForm
) -> None:
    psi = Section(chart=mechanics_chart, components={"q": "cos(t)", "p": "-sin(t)"})
    with pytest.raises(DegreeMismatchError):
        stokes_flux_check(energy, psi, [(0, 1)])


@pytest.mark.parametrize("box", [[(0, 1)], [(0, 1), (0, 1), (0, 1)]])
def test_stokes_flux_check_box_size(
    field_energy: DiffForm, travelling: Section, box: list[tuple[int, int]]
) -> None:
    with pytest.raises(ChartMismatchError):
        stokes_flux_check(field_energy, travelling, box)
