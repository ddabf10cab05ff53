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
"""Checks behind each CLI subcommand.

Every command returns a :class:`Report`; nothing here prints or exits.
"""

from __future__ import annotations
import logging
from typing import Callable, Optional, Sequence, TypeVar

from pydantic import BaseModel
from pydantic_core import ErrorDetails

from multisymplectic import __version__
from multisymplectic.cli.report import CheckRecord, Recorder, Report, residual_record
from multisymplectic.cli.system_file import LoadedSystem
from multisymplectic.exceptions import NotInNormalFormError, SystemFileError
from multisymplectic.exterior.identities import run_identity_suite
from multisymplectic.exterior.operations import exterior_derivative, form_residual
from multisymplectic.exterior.sections import Section
from multisymplectic.exterior.tensors import DiffForm
from multisymplectic.symbolic.expressions import print_expr
from multisymplectic.symmetry.cartan import (
    Witness,
    WitnessResult,
    cartan_check,
    finite_cartan_check,
    finite_symmetry_check,
    gauge_check,
    higher_cartan_order,
    infinitesimal_symmetry_check,
)
from multisymplectic.symmetry.conservation import (
    check_conserved,
    current_on_section,
    stokes_flux_check,
)
from multisymplectic.symmetry.noether import generalized_noether_current, noether_current
from multisymplectic.systems.action import action_evaluate
from multisymplectic.systems.field_equations import (
    euler_equations,
    orientation_sign,
    section_residual_sect1,
    section_residual_sect2,
)
from multisymplectic.systems.nondegeneracy import nondegeneracy_probe, random_points
from multisymplectic.systems.system import (
    PremultisymplecticSystem,
    extract_coordinate_data,
    vertical_violations,
)
from multisymplectic.types import FieldEquationResidual, Verdict, VerificationSettings
from multisymplectic.verification import residual_set

logger = logging.getLogger(__name__)

T = TypeVar("T")
SectionResidual = Callable[
    [PremultisymplecticSystem, Section, Optional[VerificationSettings]], FieldEquationResidual
]

NONDEGENERACY_POINTS = 10
STOKES_TOLERANCE = 1e-8


class CommandOptions(BaseModel):
    """
    Settings shared by every subcommand.

    Attributes:
        verification (VerificationSettings): Tolerance, probe count and seed.
        timings (bool): Record wall time per check.
    """

    verification: VerificationSettings = VerificationSettings()
    timings: bool = False

    @property
    def seed(self) -> int:
        return self.verification.seed


def _report(
    command: str, options: CommandOptions, records: list[CheckRecord], digest: Optional[str]
) -> Report:
    return Report(
        version=__version__,
        command=command,
        input_digest=digest,
        seed=options.seed,
        tolerance=options.verification.tolerance,
        records=records,
    )


def _lookup(table: dict[str, T], name: str, what: str) -> T:
    try:
        return table[name]
    except KeyError as e:
        raise SystemFileError(
            [
                ErrorDetails(
                    type="missing_object",
                    loc=(what, name),
                    msg=f"No {what} named '{name}', known: {sorted(table)}",
                    input=name,
                )
            ]
        ) from e


def _witnesses(loaded: LoadedSystem, names: Sequence[str]) -> list[tuple[str, Witness]]:
    """Ansatz names first, then vector fields as degree-m multivectors."""
    witnesses: list[tuple[str, Witness]] = []
    for name in names:
        if name in loaded.ansatze:
            witnesses.append((name, loaded.ansatze[name]))
        else:
            witnesses.append((name, _lookup(loaded.vector_fields, name, "ansatz")))
    return witnesses


def _witness_checks(
    recorder: Recorder,
    kind: str,
    witnesses: Sequence[tuple[str, Witness]],
    check: Callable[[list[Witness]], list[WitnessResult]],
) -> None:
    """One record per witness, named ``kind[name]``."""
    for name, witness in witnesses:
        label = f"{kind}[{name}]"

        def run(label: str = label, witness: Witness = witness) -> CheckRecord:
            result = check([witness])[0]
            return residual_record(label, result.residual, in_kernel=result.in_kernel)

        recorder.run(label, run)


def _form_details(form: DiffForm) -> dict[str, object]:
    return {"text": str(form), "records": form.to_records()}


def cmd_check(loaded: LoadedSystem, options: CommandOptions) -> Report:
    """Structural invariants of the system: closedness, exactness, the
    triple-vertical condition, the coordinate normal form and the rank probe."""
    S = loaded.system
    settings = options.verification
    recorder = Recorder(options.timings)
    recorder.run(
        "closedness",
        lambda: residual_record("closedness", form_residual(exterior_derivative(S.omega), settings)),
    )
    if S.theta is not None:
        theta = S.theta
        recorder.run(
            "exactness",
            lambda: residual_record(
                "exactness", form_residual(S.omega + exterior_derivative(theta), settings)
            ),
        )
    if S.chart.m >= 2:

        def vertical() -> CheckRecord:
            violations = vertical_violations(S.omega)
            return CheckRecord(
                name="vertical-condition",
                verdict=Verdict.NONZERO if violations else Verdict.SYMBOLIC_ZERO,
                residuals=[f"{','.join(names)}: {form}" for names, form in violations],
            )

        recorder.run("vertical-condition", vertical)

    def normal_form() -> CheckRecord:
        try:
            data = extract_coordinate_data(S)
        except NotInNormalFormError as e:
            return CheckRecord(
                name="normal-form",
                verdict=Verdict.NONZERO,
                residuals=[str(term) for term in e.terms],
                details={"reason": e.reason},
            )
        return CheckRecord(
            name="normal-form",
            verdict=Verdict.SYMBOLIC_ZERO,
            details={
                "F": [[print_expr(entry) for entry in row] for row in data.F],
                "E": print_expr(data.E),
            },
        )

    recorder.run("normal-form", normal_form)

    def nondegeneracy() -> CheckRecord:
        points = random_points(S.chart, NONDEGENERACY_POINTS, settings)
        result = nondegeneracy_probe(S, points, settings.tolerance)
        return CheckRecord(
            name="nondegeneracy",
            verdict=Verdict.NUMERIC_ZERO,
            details={
                "classification": result.classification.value,
                "kernel_dimensions": result.kernel_dimensions,
                "points": len(points),
            },
        )

    recorder.run("nondegeneracy", nondegeneracy)
    return _report("check", options, recorder.records, loaded.digest)


def cmd_field_equations(
    loaded: LoadedSystem, options: CommandOptions, section: Optional[str] = None
) -> Report:
    """Euler equations over the jets and, for a named section, both residual families."""
    S = loaded.system
    settings = options.verification
    recorder = Recorder(options.timings)

    def equations() -> CheckRecord:
        try:
            result = euler_equations(S)
        except NotInNormalFormError as e:
            return CheckRecord(
                name="euler-equations",
                verdict=Verdict.SYMBOLIC_ZERO,
                details={"skipped": f"NotInNormalForm: {e.reason}"},
            )
        return CheckRecord(
            name="euler-equations",
            verdict=Verdict.SYMBOLIC_ZERO,
            details={"equations": {k: print_expr(v) for k, v in result.equations.items()}},
        )

    recorder.run("euler-equations", equations)
    if section is not None:
        psi = _lookup(loaded.sections, section, "section")
        families: dict[str, FieldEquationResidual] = {}
        for name, compute in (
            ("sect1", section_residual_sect1),
            ("sect2", section_residual_sect2),
        ):

            def family(name: str = name, compute: SectionResidual = compute) -> CheckRecord:
                families[name] = compute(S, psi, settings)
                return residual_record(name, families[name])

            recorder.run(name, family)
        if len(families) == 2:
            sign = orientation_sign(S.chart.m)

            def agreement() -> CheckRecord:
                pairs = list(zip(families["sect1"].entries, families["sect2"].entries))
                entries = [(a.label, a.expression - sign * b.expression) for a, b in pairs]
                return residual_record(
                    "sect-agreement",
                    residual_set(entries, settings),
                    orientation_sign=sign,
                    verdicts_agree=all(a.verdict.passed == b.verdict.passed for a, b in pairs),
                )

            recorder.run("sect-agreement", agreement)
    return _report("field-equations", options, recorder.records, loaded.digest)


def cmd_noether(
    loaded: LoadedSystem,
    options: CommandOptions,
    symmetry: str,
    order_max: int = 1,
    verify_with: Sequence[str] = (),
) -> Report:
    """Cartan order of a vector field, its Noether current and the conservation checks."""
    S = loaded.system
    settings = options.verification
    Y = _lookup(loaded.vector_fields, symmetry, "vector field")
    witnesses = _witnesses(loaded, verify_with)
    recorder = Recorder(options.timings)

    def order() -> CheckRecord:
        result = higher_cartan_order(S, Y, order_max, settings=settings)
        last = result.powers[-1]
        return residual_record(
            "cartan-order",
            last,
            order=result.order,
            n_max=order_max,
        )

    found = recorder.run("cartan-order", order)
    if found is None or not found.passed:
        return _report("noether", options, recorder.records, loaded.digest)
    n = found.details["order"]
    currents: list[DiffForm] = []

    def current() -> CheckRecord:
        if n == 1:
            report = noether_current(S, Y, settings)
        else:
            report = generalized_noether_current(S, Y, n, settings)
        details: dict[str, object] = {
            "order": report.order,
            "gauge": report.gauge,
            "xi": _form_details(report.xi),
        }
        if report.zeta is not None:
            details["zeta"] = _form_details(report.zeta)
        currents.append(report.xi)
        return residual_record("noether-current", report.residual, **details)

    recorder.run("noether-current", current)
    if currents:
        xi = currents[0]
        _witness_checks(
            recorder,
            "conserved",
            witnesses,
            lambda family: check_conserved(S, xi, family, settings),
        )
    return _report("noether", options, recorder.records, loaded.digest)


def cmd_symmetry(
    loaded: LoadedSystem,
    options: CommandOptions,
    vector_field: Optional[str] = None,
    map_name: Optional[str] = None,
    verify_with: Sequence[str] = (),
) -> Report:
    """Cartan and gauge checks for a vector field, or the finite checks for a map.

    Exactly one of ``vector_field`` and ``map_name`` is given.
    """
    if (vector_field is None) == (map_name is None):
        raise ValueError("Exactly one of vector_field and map_name is required")
    S = loaded.system
    settings = options.verification
    witnesses = _witnesses(loaded, verify_with)
    recorder = Recorder(options.timings)
    if vector_field is not None:
        Y = _lookup(loaded.vector_fields, vector_field, "vector field")

        def cartan() -> CheckRecord:
            result = cartan_check(S, Y, settings)
            return residual_record("cartan", result.residual, kind=result.kind.value)

        recorder.run("cartan", cartan)

        def gauge() -> CheckRecord:
            residual = gauge_check(S, Y, settings)
            return CheckRecord(
                name="gauge", verdict=Verdict.SYMBOLIC_ZERO, details={"gauge": residual.passed}
            )

        recorder.run("gauge", gauge)
        _witness_checks(
            recorder,
            "symmetry",
            witnesses,
            lambda family: infinitesimal_symmetry_check(S, Y, family, settings),
        )
    else:
        assert map_name is not None
        Phi = _lookup(loaded.maps, map_name, "map")
        recorder.run(
            "finite-cartan",
            lambda: residual_record("finite-cartan", finite_cartan_check(S, Phi, settings)),
        )
        if Phi.inverse is not None:
            recorder.run(
                "inverse",
                lambda: CheckRecord(name="inverse", verdict=Phi.check_inverse(settings)),
            )
        _witness_checks(
            recorder,
            "symmetry",
            witnesses,
            lambda family: finite_symmetry_check(S, Phi, family, settings),
        )
    return _report("symmetry", options, recorder.records, loaded.digest)


def cmd_conserved(
    loaded: LoadedSystem,
    options: CommandOptions,
    quantity: str,
    verify_with: Sequence[str] = (),
    section: Optional[str] = None,
    box: Optional[str] = None,
    points: int = 32,
) -> Report:
    """Conservation of a named form along witnesses and, with a section, its flux."""
    S = loaded.system
    settings = options.verification
    xi = _lookup(loaded.conserved, quantity, "conserved quantity")
    witnesses = _witnesses(loaded, verify_with)
    recorder = Recorder(options.timings)
    _witness_checks(
        recorder,
        "conserved",
        witnesses,
        lambda family: check_conserved(S, xi, family, settings),
    )
    if section is not None:
        psi = _lookup(loaded.sections, section, "section")

        def divergence() -> CheckRecord:
            flux = current_on_section(xi, psi)
            residual = residual_set([("divergence", flux.divergence)], settings)
            return residual_record(
                "divergence",
                residual,
                flux={name: print_expr(value) for name, value in flux.flux.items()},
            )

        recorder.run("divergence", divergence)
        if box is not None and S.chart.m >= 2:
            interval = _lookup(loaded.boxes, box, "box")

            def stokes() -> CheckRecord:
                value = stokes_flux_check(xi, psi, interval, points)
                return CheckRecord(
                    name="stokes",
                    verdict=Verdict.NUMERIC_ZERO if abs(value) < STOKES_TOLERANCE else Verdict.NONZERO,
                    details={"boundary_flux": value, "points": points},
                )

            recorder.run("stokes", stokes)
    return _report("conserved", options, recorder.records, loaded.digest)


def cmd_action(
    loaded: LoadedSystem, options: CommandOptions, section: str, box: str, points: int = 32
) -> Report:
    """Value of the action of a section over a base box."""
    S = loaded.system
    psi = _lookup(loaded.sections, section, "section")
    interval = _lookup(loaded.boxes, box, "box")
    recorder = Recorder(options.timings)
    recorder.run(
        "action",
        lambda: CheckRecord(
            name="action",
            verdict=Verdict.SYMBOLIC_ZERO,
            details={"value": action_evaluate(S, psi, interval, points), "points": points},
        ),
    )
    return _report("action", options, recorder.records, loaded.digest)


def cmd_identities(options: CommandOptions, cases: int = 200) -> Report:
    """The randomized exterior-calculus identity suite."""
    recorder = Recorder(options.timings)
    for outcome in run_identity_suite(cases, options.seed):
        details: dict[str, object] = {"cases": outcome.cases, "failures": outcome.failures}
        if outcome.first_failure is not None:
            details["first_failure"] = outcome.first_failure
        recorder.run(
            outcome.name,
            lambda outcome=outcome, details=details: CheckRecord(  # type: ignore[misc]
                name=outcome.name, verdict=outcome.verdict, details=details
            ),
        )
    return _report("identities", options, recorder.records, None)
