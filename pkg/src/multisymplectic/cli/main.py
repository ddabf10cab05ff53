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
"""The ``multisymplectic`` console script.

.. code-block:: console

    $ multisymplectic check oscillator.toml
    $ multisymplectic --pretty noether oscillator.toml --symmetry time --verify-with hamiltonian
    $ multisymplectic --seed 7 identities --cases 50

Exit status is 0 when every check passes, 1 when any check fails and 2 when
the input cannot be loaded.
"""

from __future__ import annotations
import logging
import sys
from pathlib import Path
from typing import Callable, Optional

import click

from multisymplectic import __version__
from multisymplectic.cli import commands
from multisymplectic.cli.commands import CommandOptions
from multisymplectic.cli.report import Report
from multisymplectic.cli.system_file import LoadedSystem, load_system_file
from multisymplectic.exceptions import MultisymplecticError
from multisymplectic.types import VerificationSettings

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2

SYSTEM_FILE = click.Path(exists=True, dir_okay=False, path_type=Path)


class CliState:
    def __init__(self, options: CommandOptions, pretty: bool) -> None:
        self.options = options
        self.pretty = pretty


def _configure_logging(verbose: bool) -> None:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root = logging.getLogger("multisymplectic")
    root.handlers = [handler]
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)


def _emit(state: CliState, report: Report) -> None:
    click.echo(report.to_text() if state.pretty else report.to_json(), nl=False)
    sys.exit(EXIT_PASS if report.passed else EXIT_FAIL)


def _run(state: CliState, file: Optional[Path], command: Callable[[LoadedSystem], Report]) -> None:
    try:
        loaded = load_system_file(file) if file is not None else None
        report = command(loaded)  # type: ignore[arg-type]
    except MultisymplecticError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_INPUT)
    _emit(state, report)


@click.group()
@click.option(
    "--seed", type=click.IntRange(min=0), default=0, show_default=True, help="Seed of every random choice."
)
@click.option(
    "--tolerance",
    type=click.FloatRange(min=0, min_open=True),
    default=1e-9,
    show_default=True,
    help="Numeric probe tolerance.",
)
@click.option("--pretty", is_flag=True, help="Human-readable report instead of JSON.")
@click.option("--timings", is_flag=True, help="Record wall time per check.")
@click.option("-v", "--verbose", is_flag=True, help="Debug logging on stderr.")
@click.version_option(__version__, prog_name="multisymplectic")
@click.pass_context
def cli(
    ctx: click.Context, seed: int, tolerance: float, pretty: bool, timings: bool, verbose: bool
) -> None:
    """Checks (pre)multisymplectic systems given as TOML files."""
    _configure_logging(verbose)
    options = CommandOptions(
        verification=VerificationSettings(seed=seed, tolerance=tolerance), timings=timings
    )
    ctx.obj = CliState(options, pretty)


@cli.command()
@click.argument("file", type=SYSTEM_FILE)
@click.pass_obj
def check(state: CliState, file: Path) -> None:
    """Closedness, normal form, vertical condition and nondegeneracy."""
    _run(state, file, lambda loaded: commands.cmd_check(loaded, state.options))


@cli.command("field-equations")
@click.argument("file", type=SYSTEM_FILE)
@click.option("--section", help="Evaluate both residual families along this section.")
@click.pass_obj
def field_equations(state: CliState, file: Path, section: Optional[str]) -> None:
    """Euler equations and section residuals."""
    _run(
        state,
        file,
        lambda loaded: commands.cmd_field_equations(loaded, state.options, section),
    )


@cli.command()
@click.argument("file", type=SYSTEM_FILE)
@click.option("--symmetry", required=True, help="Vector field name.")
@click.option("--order-max", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--verify-with", multiple=True, help="Ansatz or vector field to check conservation on.")
@click.pass_obj
def noether(
    state: CliState, file: Path, symmetry: str, order_max: int, verify_with: tuple[str, ...]
) -> None:
    """Noether current of a (higher-order) Cartan symmetry."""
    _run(
        state,
        file,
        lambda loaded: commands.cmd_noether(loaded, state.options, symmetry, order_max, verify_with),
    )


@cli.command()
@click.argument("file", type=SYSTEM_FILE)
@click.option("--vector-field", help="Infinitesimal symmetry to check.")
@click.option("--map", "map_name", help="Finite symmetry to check.")
@click.option("--verify-with", multiple=True, help="Ansatz or vector field in the kernel.")
@click.pass_obj
def symmetry(
    state: CliState,
    file: Path,
    vector_field: Optional[str],
    map_name: Optional[str],
    verify_with: tuple[str, ...],
) -> None:
    """Cartan, gauge and witness checks for a vector field or a map."""
    if (vector_field is None) == (map_name is None):
        raise click.UsageError("Give exactly one of --vector-field and --map")
    _run(
        state,
        file,
        lambda loaded: commands.cmd_symmetry(
            loaded, state.options, vector_field, map_name, verify_with
        ),
    )


@cli.command()
@click.argument("file", type=SYSTEM_FILE)
@click.option("--quantity", required=True, help="Conserved-quantity name.")
@click.option("--verify-with", multiple=True, help="Ansatz or vector field to check on.")
@click.option("--section", help="Evaluate the flux along this section.")
@click.option("--box", help="Base box for the boundary flux (needs --section).")
@click.option("--points", type=click.IntRange(min=1), default=32, show_default=True)
@click.pass_obj
def conserved(
    state: CliState,
    file: Path,
    quantity: str,
    verify_with: tuple[str, ...],
    section: Optional[str],
    box: Optional[str],
    points: int,
) -> None:
    """Conservation of a form along witnesses and its flux along a section."""
    if box is not None and section is None:
        raise click.UsageError("--box needs --section")
    _run(
        state,
        file,
        lambda loaded: commands.cmd_conserved(
            loaded, state.options, quantity, verify_with, section, box, points
        ),
    )


@cli.command()
@click.argument("file", type=SYSTEM_FILE)
@click.option("--section", required=True)
@click.option("--box", required=True)
@click.option("--points", type=click.IntRange(min=1), default=32, show_default=True)
@click.pass_obj
def action(state: CliState, file: Path, section: str, box: str, points: int) -> None:
    """Action of a section over a base box."""
    _run(
        state,
        file,
        lambda loaded: commands.cmd_action(loaded, state.options, section, box, points),
    )


@cli.command()
@click.option("--cases", type=click.IntRange(min=0), default=200, show_default=True)
@click.pass_obj
def identities(state: CliState, cases: int) -> None:
    """Randomized exterior-calculus identity suite."""
    _run(state, None, lambda _: commands.cmd_identities(state.options, cases))
