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
"""Keyed-coefficient containers for differential forms and multivector fields.

Both kinds store a map from strictly increasing tuples of coordinate indices
to canonical scalar expressions. Unsorted keys are re-sorted with the sign of
the permutation, keys with a repeated index vanish, and zero coefficients are
dropped, so two tensors are equal exactly when their coefficient maps are.
"""

from __future__ import annotations
import logging
from typing import Any, Callable, ClassVar, Mapping, Optional, Sequence, TypeVar

import sympy
from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt, model_validator

from multisymplectic.exceptions import (
    ChartMismatchError,
    DegreeMismatchError,
    TensorKindMismatchError,
)
from multisymplectic.exterior.chart import BundleChart
from multisymplectic.symbolic.expressions import (
    ScalarLike,
    as_expr,
    differentiate,
    normalize,
    print_expr,
    substitute,
)
from multisymplectic.types import ScalarExpr, coerce_scalar

logger = logging.getLogger(__name__)

Key = tuple[int, ...]
T = TypeVar("T", bound="AlternatingTensor")


def sort_with_sign(indices: Sequence[int]) -> tuple[int, Key]:
    """Sorts ``indices`` and returns the permutation sign, 0 if an index repeats."""
    if len(set(indices)) != len(indices):
        return 0, ()
    inversions = sum(
        1
        for i in range(len(indices))
        for j in range(i + 1, len(indices))
        if indices[i] > indices[j]
    )
    return (-1) ** inversions, tuple(sorted(indices))


def _accumulate(terms: dict[Key, sympy.Expr], key: Sequence[int], value: ScalarLike) -> None:
    sign, ordered = sort_with_sign(key)
    if sign == 0:
        return
    terms[ordered] = terms.get(ordered, sympy.Integer(0)) + sign * as_expr(value)


def _pruned(terms: Mapping[Key, ScalarLike]) -> dict[Key, sympy.Expr]:
    result = {}
    for key in sorted(terms):
        value = normalize(terms[key])
        if value != 0:
            result[key] = value
    return result


class AlternatingTensor(BaseModel):
    """
    Common container of :class:`DiffForm` and :class:`MultiVector`.

    Attributes:
        chart (BundleChart): The chart the tensor lives on.
        degree (int): Number of indices in every key.
        coefficients (dict[tuple[int, ...], sympy.Expr]): Nonzero canonical
            coefficients keyed by strictly increasing coordinate index tuples.
    """

    kind: ClassVar[str] = "tensor"

    chart: BundleChart
    degree: NonNegativeInt
    coefficients: dict[tuple[int, ...], ScalarExpr] = Field(default_factory=dict)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="before")
    @classmethod
    def canonicalize_keys(cls, data: Any) -> Any:
        if not isinstance(data, dict) or "coefficients" not in data:
            return data
        terms: dict[Key, sympy.Expr] = {}
        for key, value in dict(data["coefficients"]).items():
            _accumulate(terms, tuple(key), coerce_scalar(value))
        return {**data, "coefficients": _pruned(terms)}

    @model_validator(mode="after")
    def check_keys(self) -> "AlternatingTensor":
        for key in self.coefficients:
            if len(key) != self.degree:
                raise ValueError(f"Key {key} does not match degree {self.degree}")
            if key and not 0 <= key[0] <= key[-1] < self.chart.dimension:
                raise ValueError(f"Key {key} is out of range for {self.chart.coordinates}")
        return self

    @classmethod
    def build(
        cls: type[T],
        chart: BundleChart,
        degree: int,
        terms: Mapping[Key, ScalarLike],
    ) -> T:
        """Internal constructor for keys that are already strictly increasing."""
        return cls.model_construct(chart=chart, degree=degree, coefficients=_pruned(terms))

    @classmethod
    def from_terms(
        cls: type[T],
        chart: BundleChart,
        terms: Mapping[Sequence[str], ScalarLike],
        degree: Optional[int] = None,
    ) -> T:
        """Builds a tensor from coordinate-name keys in any order.

        .. code-block:: python

            chart = BundleChart(base=("t",), fiber=("q", "p"))
            theta = DiffForm.from_terms(chart, {("q",): "p", ("t",): "-(p^2+q^2)/2"})

        Args:
            chart (BundleChart): The chart.
            terms (Mapping[Sequence[str], ScalarLike]): Coefficient per basis name tuple.
            degree (Optional[int]): Needed only when ``terms`` is empty.
        """
        if degree is None:
            lengths = {len(key) for key in terms}
            if len(lengths) != 1:
                raise DegreeMismatchError(
                    f"Cannot infer a single degree from keys {sorted(terms)}"
                )
            degree = lengths.pop()
        coefficients = {
            tuple(chart.index(name) for name in key): value for key, value in terms.items()
        }
        return cls(chart=chart, degree=degree, coefficients=coefficients)

    @classmethod
    def zero(cls: type[T], chart: BundleChart, degree: int = 0) -> T:
        return cls.build(chart, degree, {})

    @classmethod
    def unit(cls: type[T], chart: BundleChart) -> T:
        """The constant 1 of degree 0, neutral for :meth:`wedge`."""
        return cls.build(chart, 0, {(): 1})

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def free_symbols(self) -> set[sympy.Symbol]:
        symbols: set[sympy.Symbol] = set()
        for value in self.coefficients.values():
            symbols |= value.free_symbols
        return symbols

    def terms(self) -> list[tuple[Key, sympy.Expr]]:
        return sorted(self.coefficients.items())

    def basis_names(self, key: Key) -> tuple[str, ...]:
        return tuple(self.chart.coordinates[i] for i in key)

    def coefficient(self, *names: str) -> sympy.Expr:
        """Coefficient on the basis element spelled by ``names``, in the given order."""
        sign, key = sort_with_sign([self.chart.index(name) for name in names])
        if sign == 0:
            return sympy.Integer(0)
        return sign * self.coefficients.get(key, sympy.Integer(0))

    def check_operand(self, other: AlternatingTensor) -> None:
        if type(other) is not type(self):
            raise TensorKindMismatchError(
                f"Cannot combine a {self.kind} with a {other.kind}"
            )
        if other.chart != self.chart:
            raise ChartMismatchError(
                f"Charts differ: {self.chart.coordinates} and {other.chart.coordinates}"
            )

    def map_coefficients(self: T, func: Callable[[sympy.Expr], ScalarLike]) -> T:
        return self.build(
            self.chart, self.degree, {key: func(value) for key, value in self.coefficients.items()}
        )

    def scale(self: T, factor: ScalarLike) -> T:
        return self.map_coefficients(lambda value: as_expr(factor) * value)

    def substitute(self: T, bindings: Mapping[sympy.Symbol, ScalarLike]) -> T:
        return self.map_coefficients(lambda value: substitute(value, bindings))

    def differentiate(self: T, symbol: sympy.Symbol) -> T:
        """Differentiates every coefficient, leaving the basis untouched."""
        return self.map_coefficients(lambda value: differentiate(value, symbol))

    def __add__(self: T, other: T) -> T:
        self.check_operand(other)
        if other.degree != self.degree:
            raise DegreeMismatchError(
                f"Cannot add {self.kind}s of degree {self.degree} and {other.degree}"
            )
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        terms: dict[Key, ScalarLike] = dict(self.coefficients)
        for key, value in other.coefficients.items():
            terms[key] = terms.get(key, 0) + value
        return self.build(self.chart, self.degree, terms)

    def __neg__(self: T) -> T:
        return self.map_coefficients(lambda value: -value)

    def __sub__(self: T, other: T) -> T:
        return self + (-other)

    def wedge(self: T, other: T) -> T:
        """Graded-commutative exterior product of two tensors of the same kind."""
        self.check_operand(other)
        terms: dict[Key, sympy.Expr] = {}
        for key_a, value_a in self.coefficients.items():
            for key_b, value_b in other.coefficients.items():
                _accumulate(terms, key_a + key_b, value_a * value_b)
        return self.build(self.chart, self.degree + other.degree, terms)

    def to_records(self) -> list[dict[str, Any]]:
        """Coefficient/basis records in key order, as written in system files."""
        return [
            {"basis": list(self.basis_names(key)), "coeff": print_expr(value)}
            for key, value in self.terms()
        ]

    def _basis_text(self, key: Key) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for key, value in self.terms():
            basis = self._basis_text(key)
            parts.append(f"({print_expr(value)}){' ' + basis if basis else ''}")
        return " + ".join(parts)


class DiffForm(AlternatingTensor):
    """A differential form of degree ``degree`` on a bundle chart."""

    kind: ClassVar[str] = "form"

    @classmethod
    def function(cls, chart: BundleChart, value: ScalarLike) -> DiffForm:
        return cls.build(chart, 0, {(): value})

    @classmethod
    def differential(cls, chart: BundleChart, name: str) -> DiffForm:
        return cls.build(chart, 1, {(chart.index(name),): 1})

    @classmethod
    def volume(cls, chart: BundleChart) -> DiffForm:
        """The base volume form ``dx^1 ^ ... ^ dx^m``."""
        return cls.build(chart, chart.m, {tuple(chart.base_indices): 1})

    @classmethod
    def base_face(cls, chart: BundleChart, mu: int) -> DiffForm:
        """``d^{m-1}x_mu``, the contraction of the base coordinate field ``mu`` into the volume."""
        key = tuple(i for i in chart.base_indices if i != mu)
        return cls.build(chart, chart.m - 1, {key: (-1) ** mu})

    @property
    def scalar(self) -> sympy.Expr:
        """The coefficient of a degree-0 form."""
        if self.degree != 0:
            raise DegreeMismatchError(f"Expected a 0-form, got degree {self.degree}")
        return self.coefficients.get((), sympy.Integer(0))

    def _basis_text(self, key: Key) -> str:
        return "^".join(f"d{name}" for name in self.basis_names(key))


class MultiVector(AlternatingTensor):
    """A multivector field of degree ``degree``; degree 1 is an ordinary vector field."""

    kind: ClassVar[str] = "multivector"

    @classmethod
    def coordinate_field(cls, chart: BundleChart, name: str) -> MultiVector:
        return cls.build(chart, 1, {(chart.index(name),): 1})

    @classmethod
    def vector_field(
        cls, chart: BundleChart, components: Mapping[str, ScalarLike]
    ) -> MultiVector:
        return cls.from_terms(chart, {(name,): value for name, value in components.items()}, degree=1)

    @classmethod
    def base_multivector(cls, chart: BundleChart) -> MultiVector:
        """``d/dx^1 ^ ... ^ d/dx^m``."""
        return cls.build(chart, chart.m, {tuple(chart.base_indices): 1})

    def component(self, name: str) -> sympy.Expr:
        return self.coefficient(name)

    def factors(self) -> list[list[MultiVector]]:
        """Splits every term into vector-field factors, the coefficient riding on the first."""
        if self.degree == 0:
            raise DegreeMismatchError("A degree-0 multivector has no vector-field factors")
        result = []
        for key, value in self.terms():
            fields = [self.build(self.chart, 1, {(k,): 1}) for k in key]
            fields[0] = fields[0].scale(value)
            result.append(fields)
        return result

    def apply(self, f: ScalarLike) -> sympy.Expr:
        """Directional derivative ``X(f)`` of a function along a vector field."""
        if self.degree != 1:
            raise DegreeMismatchError(f"Expected a vector field, got degree {self.degree}")
        total = sympy.Integer(0)
        for (k,), value in self.coefficients.items():
            total += value * sympy.diff(as_expr(f), self.chart.symbols[k])
        return normalize(total)

    def _basis_text(self, key: Key) -> str:
        return "^".join(f"D{name}" for name in self.basis_names(key))
