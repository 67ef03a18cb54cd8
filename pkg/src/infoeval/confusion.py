"""Augmented confusion matrices and their empirical distributions.

A classification with a reject option is summarized by an m x (m+1)
table of counts: one row per true class, one column per predicted
class, and a final column counting the samples the classifier refused
to label.  Everything downstream (information measures, rankings,
cost analysis) consumes only this table.
"""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass

__all__ = [
    "AugmentedConfusionMatrix",
    "BinaryConfusion",
    "EmpiricalDistribution",
    "empirical_distributions",
    "parse_matrices",
    "parse_matrix",
    "to_binary",
]


def _as_count(value, where: str) -> int:
    # bool is an int subclass; keep it out of count data
    if isinstance(value, bool):
        raise ValueError(f"{where}: count must be an integer, got {value!r}")
    if isinstance(value, float):
        if not value.is_integer():
            raise ValueError(f"{where}: count must be an integer, got {value!r}")
        value = int(value)
    if not isinstance(value, int):
        raise ValueError(f"{where}: count must be an integer, got {value!r}")
    if value < 0:
        raise ValueError(f"{where}: negative entry {value}")
    return value


@dataclass(frozen=True)
class AugmentedConfusionMatrix:
    """Validated m x (m+1) count table; the last column holds rejects.

    Invariants enforced at construction: at least two classes, every
    row exactly m+1 entries, non-negative integer counts, and a
    strictly positive total for every true class.
    """

    counts: tuple[tuple[int, ...], ...]
    class_labels: tuple[str, ...] | None = None
    model_name: str | None = None

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.counts)
        m = len(rows)
        if m < 2:
            raise ValueError(f"need at least 2 classes, got {m} row(s)")
        width = m + 1
        checked = []
        for i, row in enumerate(rows):
            if len(row) != width:
                raise ValueError(
                    f"ragged rows: row {i + 1} has {len(row)} entries, expected {width}"
                )
            row = tuple(_as_count(c, f"row {i + 1}, column {j + 1}")
                        for j, c in enumerate(row))
            if sum(row) == 0:
                raise ValueError(f"row total is zero (class {i + 1})")
            checked.append(row)
        object.__setattr__(self, "counts", tuple(checked))
        if self.class_labels is not None:
            labels = tuple(str(x) for x in self.class_labels)
            if len(labels) != m:
                raise ValueError(
                    f"expected {m} class labels, got {len(labels)}"
                )
            object.__setattr__(self, "class_labels", labels)

    @classmethod
    def from_rows(cls, rows, *, class_labels=None, model_name=None):
        """Build a matrix, zero-padding a missing reject column.

        Accepts m x m (no reject column) or m x (m+1) input.
        """
        rows = [list(row) for row in rows]
        m = len(rows)
        if m >= 2 and all(len(row) == m for row in rows):
            rows = [row + [0] for row in rows]
        return cls(tuple(tuple(row) for row in rows),
                   class_labels=class_labels, model_name=model_name)

    @property
    def n_classes(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        """n, the overall number of samples."""
        return sum(self.row_totals)

    @property
    def row_totals(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.counts)

    @property
    def column_totals(self) -> tuple[int, ...]:
        width = self.n_classes + 1
        return tuple(sum(row[j] for row in self.counts) for j in range(width))

    @property
    def reject_total(self) -> int:
        return self.column_totals[-1]

    @property
    def labels(self) -> tuple[str, ...]:
        """Column labels: the m class names plus \"reject\"."""
        base = self.class_labels or tuple(
            str(i) for i in range(1, self.n_classes + 1)
        )
        return (*base, "reject")

    def with_name(self, name: str) -> "AugmentedConfusionMatrix":
        return dataclasses.replace(self, model_name=name)

    def distributions(self) -> "EmpiricalDistribution":
        return empirical_distributions(self)


@dataclass(frozen=True)
class EmpiricalDistribution:
    """Joint and marginal relative frequencies of a count table.

    ``row_marginal`` is the true-class distribution p(t) (length m);
    ``col_marginal`` is the predicted distribution p(y) over the m
    classes plus the reject column (length m+1).  Marginals come from
    the integer row and column totals, not from summing the joint, so
    each is a single correctly rounded ratio.
    """

    joint: tuple[tuple[float, ...], ...]
    row_marginal: tuple[float, ...]
    col_marginal: tuple[float, ...]
    n: int

    @property
    def row_marginal_padded(self) -> tuple[float, ...]:
        """p(t) extended with an explicit zero at the reject position.

        Divergences and cross-entropies compare p(t) with p(y) on a
        shared support of m+1 points; the true-class distribution
        assigns no mass to "reject".
        """
        return (*self.row_marginal, 0.0)


def empirical_distributions(matrix: AugmentedConfusionMatrix) -> EmpiricalDistribution:
    """Relative frequencies p_ij = c_ij / n with both marginals."""
    n = matrix.total
    joint = tuple(tuple(c / n for c in row) for row in matrix.counts)
    row_marginal = tuple(t / n for t in matrix.row_totals)
    col_marginal = tuple(t / n for t in matrix.column_totals)
    return EmpiricalDistribution(joint, row_marginal, col_marginal, n)


@dataclass(frozen=True)
class BinaryConfusion:
    """2-class layout: row 1 = negative class, row 2 = positive class.

    Cell map: c11=tn, c12=fp, c13=rn, c21=fn, c22=tp, c23=rp, so the
    class totals are c1 = tn+fp+rn and c2 = fn+tp+rp.
    """

    tn: int
    fp: int
    rn: int
    fn: int
    tp: int
    rp: int

    def __post_init__(self):
        for name in ("tn", "fp", "rn", "fn", "tp", "rp"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {value!r}")
        if self.c1 == 0 or self.c2 == 0:
            raise ValueError("each class needs at least one sample")

    @property
    def c1(self) -> int:
        return self.tn + self.fp + self.rn

    @property
    def c2(self) -> int:
        return self.fn + self.tp + self.rp

    @property
    def n(self) -> int:
        return self.c1 + self.c2

    def to_matrix(self, model_name: str | None = None) -> AugmentedConfusionMatrix:
        return AugmentedConfusionMatrix(
            ((self.tn, self.fp, self.rn), (self.fn, self.tp, self.rp)),
            model_name=model_name,
        )


def to_binary(matrix: AugmentedConfusionMatrix) -> BinaryConfusion:
    """View a 2-class matrix through the tn/fp/rn/fn/tp/rp layout."""
    if matrix.n_classes != 2:
        raise ValueError(f"binary view needs exactly 2 classes, got {matrix.n_classes}")
    (tn, fp, rn), (fn, tp, rp) = matrix.counts
    return BinaryConfusion(tn=tn, fp=fp, rn=rn, fn=fn, tp=tp, rp=rp)


def _matrix_from_json_value(value, where: str) -> AugmentedConfusionMatrix:
    name = None
    if isinstance(value, dict):
        if "matrix" not in value:
            raise ValueError(f"{where}: object is missing the \"matrix\" key")
        raw_name = value.get("name")
        if raw_name is not None and not isinstance(raw_name, str):
            raise ValueError(f"{where}: \"name\" must be a string")
        name = raw_name
        value = value["matrix"]
    if not isinstance(value, list) or not all(isinstance(row, list) for row in value):
        raise ValueError(f"{where}: expected a 2-D array of counts")
    return AugmentedConfusionMatrix.from_rows(value, model_name=name)


def parse_matrices(raw: str, format: str = "json") -> list[AugmentedConfusionMatrix]:
    """Parse one or more matrices from text.

    JSON accepts a bare 2-D array, an object
    ``{"name": str?, "matrix": [[...], ...]}``, or an array of either
    (a batch).  CSV holds a single matrix: one line per class, an
    optional non-numeric header line, and an optional reject column.
    """
    if format == "json":
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed JSON at line {exc.lineno}: {exc.msg}") from None
        if isinstance(data, dict):
            return [_matrix_from_json_value(data, "matrix")]
        if not isinstance(data, list) or not data:
            raise ValueError("expected a matrix, an object, or a non-empty array")
        if all(isinstance(row, list) for row in data) and not any(
            isinstance(cell, list) for row in data for cell in row
        ):
            return [_matrix_from_json_value(data, "matrix")]
        return [
            _matrix_from_json_value(entry, f"matrix {k + 1}")
            for k, entry in enumerate(data)
        ]
    if format == "csv":
        return [_parse_csv(raw)]
    raise ValueError(f"unknown input format {format!r}")


def parse_matrix(raw: str, format: str = "json") -> AugmentedConfusionMatrix:
    """Parse exactly one matrix from text (see parse_matrices)."""
    matrices = parse_matrices(raw, format)
    if len(matrices) != 1:
        raise ValueError(f"expected a single matrix, found {len(matrices)}")
    return matrices[0]


def _parse_csv(raw: str) -> AugmentedConfusionMatrix:
    rows = []
    for lineno, line in enumerate(raw.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        cells = [cell.strip() for cell in line.split(",")]
        try:
            row = [int(cell) for cell in cells]
        except ValueError:
            if not rows:
                continue  # non-numeric header line
            raise ValueError(f"line {lineno}: non-numeric entry in {line!r}") from None
        rows.append(row)
    if not rows:
        raise ValueError("no numeric rows found")
    return AugmentedConfusionMatrix.from_rows(rows)
