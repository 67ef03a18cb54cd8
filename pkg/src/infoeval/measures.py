"""The 24 normalized information measures plus 7 performance measures.

Normalized information (NI) measures come in three groups:

* NI1-NI9: ratios of (modified) mutual information to entropies,
* NI10-NI20: exp(-D) for the eleven divergences between the
  true-class and predicted marginals,
* NI21-NI24: entropy / cross-entropy ratios.

Every finite NI value lies in [0, 1].  Values are snapped to the unit
interval only within a 1e-9 float-noise band; anything further out is
a bug in the formulas and raises :class:`InvariantViolation` instead
of being clipped.

Singularities follow the group conventions: divergence-group measures
surface :data:`~infoeval.infocore.SINGULAR`, while cross-entropy-group
measures map an infinite denominator to 0.0.

Performance measures are the conventional correct/error/reject rates,
accuracy among accepted samples, and (for two classes, with class 1 as
the reference class) precision, recall, and F1 over accepted samples.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .confusion import AugmentedConfusionMatrix
from .infocore import (
    SINGULAR,
    DivergenceKind,
    ExtendedValue,
    cross_entropy,
    divergence,
    joint_entropy,
    modified_mutual_information,
    mutual_information,
    shannon_entropy,
)

__all__ = [
    "InvariantViolation",
    "MeasureGroup",
    "MeasureId",
    "MeasureValue",
    "PerformanceSummary",
    "evaluate",
    "evaluate_all",
    "parse_selection",
    "performance_summary",
]

_UNIT_TOL = 1e-9
_ZERO_TOL = 1e-12


class InvariantViolation(RuntimeError):
    """A computed value broke a proven bound; indicates an internal bug."""


class MeasureGroup(Enum):
    MUTUAL_INFORMATION = "mi"
    DIVERGENCE = "divergence"
    CROSS_ENTROPY = "cross-entropy"
    PERFORMANCE = "performance"


class MeasureId(Enum):
    """Catalog identifiers; enum order is the catalog order."""

    NI1 = "NI1"
    NI2 = "NI2"
    NI3 = "NI3"
    NI4 = "NI4"
    NI5 = "NI5"
    NI6 = "NI6"
    NI7 = "NI7"
    NI8 = "NI8"
    NI9 = "NI9"
    NI10 = "NI10"
    NI11 = "NI11"
    NI12 = "NI12"
    NI13 = "NI13"
    NI14 = "NI14"
    NI15 = "NI15"
    NI16 = "NI16"
    NI17 = "NI17"
    NI18 = "NI18"
    NI19 = "NI19"
    NI20 = "NI20"
    NI21 = "NI21"
    NI22 = "NI22"
    NI23 = "NI23"
    NI24 = "NI24"
    CORRECT_RATE = "CR"
    ERROR_RATE = "E"
    REJECT_RATE = "Rej"
    ACCURACY = "A"
    PRECISION = "Precision"
    RECALL = "Recall"
    F1 = "F1"

    @property
    def ni_index(self) -> int | None:
        """1..24 for information measures, None for performance ones."""
        name = self.value
        return int(name[2:]) if name.startswith("NI") else None

    @property
    def group(self) -> MeasureGroup:
        k = self.ni_index
        if k is None:
            return MeasureGroup.PERFORMANCE
        if k <= 9:
            return MeasureGroup.MUTUAL_INFORMATION
        if k <= 20:
            return MeasureGroup.DIVERGENCE
        return MeasureGroup.CROSS_ENTROPY

    @classmethod
    def from_token(cls, token: str) -> "MeasureId":
        key = token.strip().lower()
        for member in cls:
            if member.value.lower() == key:
                return member
        raise ValueError(f"unknown measure {token!r}")


CATALOG: tuple[MeasureId, ...] = tuple(MeasureId)

_GROUP_ALIASES = {
    "mi": MeasureGroup.MUTUAL_INFORMATION,
    "mutual-information": MeasureGroup.MUTUAL_INFORMATION,
    "divergence": MeasureGroup.DIVERGENCE,
    "cross-entropy": MeasureGroup.CROSS_ENTROPY,
    "ce": MeasureGroup.CROSS_ENTROPY,
    "performance": MeasureGroup.PERFORMANCE,
    "perf": MeasureGroup.PERFORMANCE,
}


def measures_in_group(group: MeasureGroup) -> tuple[MeasureId, ...]:
    return tuple(m for m in CATALOG if m.group is group)


def parse_selection(text: str) -> tuple[MeasureId, ...]:
    """Expand a selection string into catalog identifiers.

    Accepts a group name (mi, divergence, cross-entropy, performance),
    "information" for NI1-NI24, "all" for the full catalog, or a
    comma-separated list mixing ids and group names.  Duplicates keep
    their first position.
    """
    selected: list[MeasureId] = []
    for token in text.split(","):
        key = token.strip().lower()
        if not key:
            continue
        if key == "all":
            expansion: Iterable[MeasureId] = CATALOG
        elif key in ("information", "ni"):
            expansion = (m for m in CATALOG if m.ni_index is not None)
        elif key in _GROUP_ALIASES:
            expansion = measures_in_group(_GROUP_ALIASES[key])
        else:
            expansion = (MeasureId.from_token(token),)
        for measure in expansion:
            if measure not in selected:
                selected.append(measure)
    if not selected:
        raise ValueError(f"empty measure selection {text!r}")
    return tuple(selected)


@dataclass(frozen=True)
class MeasureValue:
    measure: MeasureId
    value: ExtendedValue

    @property
    def is_singular(self) -> bool:
        return self.value is SINGULAR


@dataclass(frozen=True)
class PerformanceSummary:
    """Conventional rates; precision/recall/f1 are None unless m = 2."""

    correct_rate: float
    error_rate: float
    reject_rate: float
    accuracy: float
    precision: float | None = None
    recall: float | None = None
    f1: float | None = None


def performance_summary(matrix: AugmentedConfusionMatrix) -> PerformanceSummary:
    """Correct/error/reject rates, accuracy, and binary P/R/F1.

    Accuracy is the correct rate among accepted (non-rejected)
    samples.  For two classes, class 1 is the reference class;
    rejected class-1 samples are excluded from the recall denominator.
    """
    n = matrix.total
    m = matrix.n_classes
    correct = sum(matrix.counts[i][i] for i in range(m))
    rejected = matrix.reject_total
    cr = correct / n
    rej = rejected / n
    err = 1.0 - cr - rej
    accuracy = cr / (cr + err)
    precision = recall = f1 = None
    if m == 2:
        (c11, _, c13), (c21, _, _) = matrix.counts
        predicted_first = c11 + c21
        accepted_first = matrix.row_totals[0] - c13
        precision = c11 / predicted_first if predicted_first else 0.0
        recall = c11 / accepted_first if accepted_first else 0.0
        f1 = (
            2.0 * precision * recall / (precision + recall)
            if precision + recall > 0.0
            else 0.0
        )
    return PerformanceSummary(
        correct_rate=cr,
        error_rate=err,
        reject_rate=rej,
        accuracy=accuracy,
        precision=precision,
        recall=recall,
        f1=f1,
    )


def _snap_unit(value: float, measure: MeasureId) -> float:
    if value < -_UNIT_TOL or value > 1.0 + _UNIT_TOL:
        raise InvariantViolation(
            f"{measure.value} = {value!r} is outside [0, 1]"
        )
    return min(1.0, max(0.0, value))


def _ratio(numerator: float, denominator: float) -> ExtendedValue:
    """num/den with the degenerate-denominator policy.

    A zero denominator only occurs when H(Y) = 0 (all predictions in
    one column); independence then forces the numerator I to 0 as
    well, and the 0/0 resolves to 0.  A positive numerator over a zero
    denominator cannot arise from a valid matrix and is surfaced as
    SINGULAR rather than silently absorbed.
    """
    if denominator > 0.0:
        return numerator / denominator
    if abs(numerator) <= _ZERO_TOL:
        return 0.0
    return SINGULAR


class _InfoContext:
    """Shared per-matrix quantities for the 24 information measures."""

    def __init__(self, matrix: AugmentedConfusionMatrix):
        d = matrix.distributions()
        self.i = mutual_information(d)
        self.i_m = modified_mutual_information(d)
        self.h_t = shannon_entropy(d.row_marginal)
        self.h_y = shannon_entropy(d.col_marginal)
        self.h_joint = joint_entropy(d)
        self.p_t = d.row_marginal_padded
        self.p_y = d.col_marginal

    def ni(self, index: int) -> ExtendedValue:
        if index <= 9:
            return self._mi_group(index)
        if index <= 20:
            d = divergence(DivergenceKind(index), self.p_t, self.p_y)
            return SINGULAR if d is SINGULAR else math.exp(-d)
        return self._cross_entropy_group(index)

    def _mi_group(self, index: int) -> ExtendedValue:
        i, i_m, h_t, h_y = self.i, self.i_m, self.h_t, self.h_y
        if index == 1:
            return i / h_t
        if index == 2:
            return i_m / h_t
        if index == 3:
            return _ratio(i, h_y)
        if index == 4:
            other = _ratio(i, h_y)
            if other is SINGULAR:
                return SINGULAR
            return 0.5 * (i / h_t + other)
        if index == 5:
            return 2.0 * i / (h_t + h_y)
        if index == 6:
            return _ratio(i, math.sqrt(h_t * h_y))
        if index == 7:
            return i / self.h_joint
        if index == 8:
            return i / max(h_t, h_y)
        if index == 9:
            return _ratio(i, min(h_t, h_y))
        raise AssertionError(index)

    def _cross_entropy_group(self, index: int) -> ExtendedValue:
        h_t, h_y = self.h_t, self.h_y
        forward = cross_entropy(self.p_t, self.p_y)   # H(T;Y)
        backward = cross_entropy(self.p_y, self.p_t)  # H(Y;T)
        if index == 21:
            return 0.0 if math.isinf(forward) else h_t / forward
        if index == 22:
            return 0.0 if math.isinf(backward) else h_y / backward
        if index == 23:
            a = 0.0 if math.isinf(forward) else h_t / forward
            b = 0.0 if math.isinf(backward) else h_y / backward
            return 0.5 * (a + b)
        if index == 24:
            if math.isinf(forward) or math.isinf(backward):
                return 0.0
            return (h_t + h_y) / (forward + backward)
        raise AssertionError(index)


def _performance_value(measure: MeasureId, matrix: AugmentedConfusionMatrix) -> float:
    summary = performance_summary(matrix)
    value = {
        MeasureId.CORRECT_RATE: summary.correct_rate,
        MeasureId.ERROR_RATE: summary.error_rate,
        MeasureId.REJECT_RATE: summary.reject_rate,
        MeasureId.ACCURACY: summary.accuracy,
        MeasureId.PRECISION: summary.precision,
        MeasureId.RECALL: summary.recall,
        MeasureId.F1: summary.f1,
    }[measure]
    if value is None:
        raise ValueError(
            f"{measure.value} needs a 2-class matrix, got {matrix.n_classes} classes"
        )
    return value


def evaluate(measure: MeasureId, matrix: AugmentedConfusionMatrix) -> MeasureValue:
    """Apply one catalog measure to a matrix."""
    return _evaluate(measure, matrix, _InfoContext(matrix) if measure.ni_index else None)


def _evaluate(measure, matrix, context) -> MeasureValue:
    index = measure.ni_index
    if index is None:
        return MeasureValue(measure, _performance_value(measure, matrix))
    value = context.ni(index)
    if value is not SINGULAR:
        value = _snap_unit(value, measure)
    return MeasureValue(measure, value)


def evaluate_all(
    matrix: AugmentedConfusionMatrix,
    selection: Iterable[MeasureId] | None = None,
) -> list[MeasureValue]:
    """Evaluate a selection (default: all 24 NI measures) in catalog order."""
    if selection is None:
        selected = [m for m in CATALOG if m.ni_index is not None]
    else:
        selected = list(dict.fromkeys(selection))
        if not selected:
            raise ValueError("empty measure selection")
        order = {m: k for k, m in enumerate(CATALOG)}
        selected.sort(key=order.__getitem__)
    context = None
    if any(m.ni_index is not None for m in selected):
        context = _InfoContext(matrix)
    return [_evaluate(m, matrix, context) for m in selected]
