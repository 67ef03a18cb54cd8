"""Entropy, mutual information, cross-entropy, and divergence kernels.

All logarithms are base 2, so every quantity here is in bits.  Results
take one of three shapes:

* a finite float (the normal case),
* ``math.inf`` from :func:`cross_entropy` when a positive-probability
  event meets a zero in the log argument,
* the module constant :data:`SINGULAR` from :func:`divergence` when a
  strictly positive numerator meets a zero denominator (or a
  positive-weight log of zero) that no 0-convention removes.

``float`` together with :data:`SINGULAR` is the full result type; use
``value is SINGULAR`` or :func:`is_singular` to branch on it.

The conventions 0*log2(0) = 0, 0*log2(0/0) = 0 and 0^2/0 = 0 are
applied wherever a zero coefficient makes the offending term vanish.
"""
from __future__ import annotations

import math
from enum import Enum
from typing import Sequence, Union

from .confusion import EmpiricalDistribution

__all__ = [
    "SINGULAR",
    "DivergenceKind",
    "ExtendedValue",
    "cross_entropy",
    "divergence",
    "is_singular",
    "joint_entropy",
    "modified_mutual_information",
    "mutual_information",
    "shannon_entropy",
]

_SIMPLEX_TOL = 1e-12


class _Singular:
    """Marker for a singularity that no zero-convention removes."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "S"


SINGULAR = _Singular()

# Finite floats, math.inf, or SINGULAR.
ExtendedValue = Union[float, _Singular]


def is_singular(value) -> bool:
    return value is SINGULAR


def _check_simplex(p: Sequence[float], name: str) -> None:
    if any(x < 0.0 for x in p):
        raise ValueError(f"{name} has a negative entry")
    if abs(math.fsum(p) - 1.0) > _SIMPLEX_TOL:
        raise ValueError(f"{name} does not sum to 1 (got {math.fsum(p)!r})")


class DivergenceKind(Enum):
    """The eleven divergences between p(t) and p(y), in catalog order.

    Values are the catalog indices of the normalized measures they
    induce (10..20).
    """

    SQUARED_EUCLIDEAN = 10
    CAUCHY_SCHWARZ = 11
    KULLBACK_LEIBLER = 12
    BHATTACHARYYA = 13
    PEARSON_CHI_SQUARED = 14
    HELLINGER = 15
    VARIATION = 16
    SYMMETRIC_KL = 17
    JENSEN_SHANNON = 18
    SYMMETRIC_CHI_SQUARED = 19
    RESISTOR_AVERAGE_KL = 20


def shannon_entropy(p: Sequence[float]) -> float:
    """H(p) = -sum p_i log2 p_i, with H contributions of 0 at p_i = 0."""
    _check_simplex(p, "p")
    return -sum(x * math.log2(x) for x in p if x > 0.0)


def mutual_information(d: EmpiricalDistribution) -> float:
    """Empirical I(T,Y) over all m+1 output columns, reject included."""
    total = 0.0
    for i, row in enumerate(d.joint):
        pt = d.row_marginal[i]
        for j, pij in enumerate(row):
            if pij > 0.0:
                total += pij * math.log2(pij / (pt * d.col_marginal[j]))
    return total


def modified_mutual_information(d: EmpiricalDistribution) -> float:
    """I_M(T,Y): the mutual-information sum over the m class columns only.

    Rejected samples still shape the marginals but contribute no terms
    of their own, which is what lets rejects and misclassifications
    carry different costs.  Equals mutual_information exactly when the
    reject column is empty.
    """
    total = 0.0
    for i, row in enumerate(d.joint):
        pt = d.row_marginal[i]
        for j, pij in enumerate(row[:-1]):
            if pij > 0.0:
                total += pij * math.log2(pij / (pt * d.col_marginal[j]))
    return total


def joint_entropy(d: EmpiricalDistribution) -> float:
    """H(T,Y) of the joint table."""
    return -sum(
        pij * math.log2(pij) for row in d.joint for pij in row if pij > 0.0
    )


def cross_entropy(p: Sequence[float], q: Sequence[float]) -> float:
    """-sum p(z) log2 q(z); math.inf when some p(z) > 0 meets q(z) = 0."""
    if len(p) != len(q):
        raise ValueError(f"length mismatch: {len(p)} vs {len(q)}")
    _check_simplex(p, "p")
    _check_simplex(q, "q")
    total = 0.0
    for a, b in zip(p, q):
        if a > 0.0:
            if b == 0.0:
                return math.inf
            total -= a * math.log2(b)
    return total


def _kl(p, q) -> ExtendedValue:
    total = 0.0
    for a, b in zip(p, q):
        if a > 0.0:
            if b == 0.0:
                return SINGULAR
            total += a * math.log2(a / b)
    return total


def _chi_squared(p, q) -> ExtendedValue:
    total = 0.0
    for a, b in zip(p, q):
        if b == 0.0:
            if a == 0.0:
                continue  # 0^2/0 convention
            return SINGULAR
        total += (a - b) ** 2 / b
    return total


def _squared_euclidean(p, q):
    return sum((a - b) ** 2 for a, b in zip(p, q))


def _cauchy_schwarz(p, q) -> ExtendedValue:
    dot = sum(a * b for a, b in zip(p, q))
    if dot == 0.0:
        return SINGULAR
    pp = sum(a * a for a in p)
    qq = sum(b * b for b in q)
    return math.log2(pp * qq / dot**2)


def _bhattacharyya(p, q) -> ExtendedValue:
    overlap = sum(math.sqrt(a * b) for a, b in zip(p, q))
    if overlap == 0.0:
        return SINGULAR
    return -math.log2(overlap)


def _hellinger(p, q):
    return sum((math.sqrt(a) - math.sqrt(b)) ** 2 for a, b in zip(p, q))


def _variation(p, q):
    return sum(abs(a - b) for a, b in zip(p, q))


def _symmetric_kl(p, q) -> ExtendedValue:
    forward = _kl(p, q)
    backward = _kl(q, p)
    if forward is SINGULAR or backward is SINGULAR:
        return SINGULAR
    return forward + backward


def _jensen_shannon(p, q) -> ExtendedValue:
    mid = tuple((a + b) / 2.0 for a, b in zip(p, q))
    forward = _kl(p, mid)
    backward = _kl(q, mid)
    if forward is SINGULAR or backward is SINGULAR:  # unreachable: mid=0 needs a=b=0
        return SINGULAR
    return forward + backward


def _symmetric_chi_squared(p, q) -> ExtendedValue:
    forward = _chi_squared(p, q)
    backward = _chi_squared(q, p)
    if forward is SINGULAR or backward is SINGULAR:
        return SINGULAR
    return forward + backward


def _resistor_average_kl(p, q) -> ExtendedValue:
    # Harmonic-style combination KL(p,q)*KL(q,p)/(KL(p,q)+KL(q,p)).
    # At KL = KL = 0 the ratio is 0/0 and is surfaced as SINGULAR,
    # even though the limit along p = q is 0.
    forward = _kl(p, q)
    backward = _kl(q, p)
    if forward is SINGULAR or backward is SINGULAR:
        return SINGULAR
    denom = forward + backward
    if denom == 0.0:
        return SINGULAR
    return forward * backward / denom


_DISPATCH = {
    DivergenceKind.SQUARED_EUCLIDEAN: _squared_euclidean,
    DivergenceKind.CAUCHY_SCHWARZ: _cauchy_schwarz,
    DivergenceKind.KULLBACK_LEIBLER: _kl,
    DivergenceKind.BHATTACHARYYA: _bhattacharyya,
    DivergenceKind.PEARSON_CHI_SQUARED: _chi_squared,
    DivergenceKind.HELLINGER: _hellinger,
    DivergenceKind.VARIATION: _variation,
    DivergenceKind.SYMMETRIC_KL: _symmetric_kl,
    DivergenceKind.JENSEN_SHANNON: _jensen_shannon,
    DivergenceKind.SYMMETRIC_CHI_SQUARED: _symmetric_chi_squared,
    DivergenceKind.RESISTOR_AVERAGE_KL: _resistor_average_kl,
}


def divergence(kind: DivergenceKind, p: Sequence[float], q: Sequence[float]) -> ExtendedValue:
    """D_kind(p, q) in bits, or SINGULAR.

    p and q must share a support of equal length; for confusion-matrix
    use, p is the true-class marginal padded with a zero at the reject
    position and q is the predicted marginal.
    """
    if len(p) != len(q):
        raise ValueError(f"length mismatch: {len(p)} vs {len(q)}")
    _check_simplex(p, "p")
    _check_simplex(q, "q")
    return _DISPATCH[kind](tuple(p), tuple(q))
