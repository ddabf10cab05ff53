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
import json
import logging
import time
from typing import Any, Callable, Optional

from pydantic import BaseModel

from multisymplectic.exceptions import MultisymplecticError
from multisymplectic.symbolic.expressions import print_expr
from multisymplectic.types import FieldEquationResidual, Verdict, combine_verdicts

logger = logging.getLogger(__name__)


class CheckRecord(BaseModel):
    """
    One check of a report.

    Attributes:
        name (str): Name of the check.
        verdict (Verdict): Its verdict.
        residuals (list[str]): ``label: expression`` for every residual that is not literally 0.
        details (dict[str, Any]): Check-specific data, JSON-compatible.
        seconds (Optional[float]): Wall time, only recorded on request.
    """

    name: str
    verdict: Verdict
    residuals: list[str] = []
    details: dict[str, Any] = {}
    seconds: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.verdict.passed


class Report(BaseModel):
    """
    Output of one CLI command.

    Attributes:
        version (str): Package version.
        command (str): The subcommand that produced the report.
        input_digest (Optional[str]): SHA-256 of the system file, if one was read.
        seed (int): Seed of every random choice made.
        tolerance (float): Numeric probe tolerance.
        records (list[CheckRecord]): Checks in the order they ran.
    """

    version: str
    command: str
    input_digest: Optional[str] = None
    seed: int
    tolerance: float
    records: list[CheckRecord] = []

    @property
    def verdict(self) -> Verdict:
        return combine_verdicts(record.verdict for record in self.records)

    @property
    def passed(self) -> bool:
        return all(record.passed for record in self.records)

    def to_json(self) -> str:
        """Canonical JSON: sorted keys, two-space indent, trailing newline."""
        payload = self.model_dump(mode="json", exclude_none=True)
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"{self.command} (multisymplectic {self.version}, seed {self.seed})"]
        for record in self.records:
            timing = f" [{record.seconds:.3f}s]" if record.seconds is not None else ""
            lines.append(f"  {record.name:<28} {record.verdict.value}{timing}")
            for key in sorted(record.details):
                lines.append(f"      {key}: {json.dumps(record.details[key], sort_keys=True)}")
            for residual in record.residuals:
                lines.append(f"      ! {residual}")
        lines.append(f"result: {'pass' if self.passed else 'fail'}")
        return "\n".join(lines) + "\n"


def residual_texts(residual: FieldEquationResidual) -> list[str]:
    return [
        f"{entry.label}: {print_expr(entry.expression)}"
        for entry in residual.entries
        if entry.expression != 0
    ]


def residual_record(name: str, residual: FieldEquationResidual, **details: Any) -> CheckRecord:
    return CheckRecord(
        name=name,
        verdict=residual.verdict,
        residuals=residual_texts(residual),
        details=details,
    )


class Recorder:
    """Runs checks and collects their records.

    A :class:`MultisymplecticError` raised by a check becomes a record with
    verdict ``error``; the remaining checks still run.

    .. code-block:: python

        recorder = Recorder(timings=False)
        recorder.run("closedness", lambda: residual_record("closedness", residual))
        recorder.records
    """

    def __init__(self, timings: bool = False) -> None:
        self.timings = timings
        self.records: list[CheckRecord] = []

    def run(self, name: str, check: Callable[[], CheckRecord]) -> Optional[CheckRecord]:
        start = time.perf_counter()
        result: Optional[CheckRecord]
        try:
            record = check()
            result = record
        except MultisymplecticError as e:
            logger.warning("Check %s failed with %s", name, type(e).__name__)
            record = CheckRecord(
                name=name,
                verdict=Verdict.ERROR,
                details={"error": type(e).__name__, "message": str(e)},
            )
            result = None
        if self.timings:
            record = record.model_copy(update={"seconds": time.perf_counter() - start})
        self.records.append(record)
        logger.debug("%s: %s", name, record.verdict.value)
        return result
