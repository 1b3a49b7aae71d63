"""Predicted comparison budgets for the QuickMergesort family.

For a QuickXsort whose X needs ``alpha*n*log2(n) + c*n`` comparisons the
average cost is ``alpha*n*log2(n) + (c + kappa_alpha)*n + o(n)`` with
``kappa_alpha = 4/15 * (12 - 7*alpha/ln 2)``.  Switching Mergesort to X on
subproblems of size about ``n**beta`` gives leading constant
``alpha*beta + 1 - beta``.  The median-of-medians variant is bounded by
``n*log2(n) + 16.1*n`` in the worst case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

MOM_LINEAR = 16.1
# X = Mergesort: the average linear term of plain top-down Mergesort.
MERGESORT_C = -1.26
CLEVER_ALPHA = 12 / 7 * math.log(2)


@dataclass(frozen=True)
class BoundParams:
    alpha: float = 1.0
    c: float = MERGESORT_C
    beta: float | None = None
    worst_case: bool = False  # the MoM pivot bound instead of the average one

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError("alpha must be >= 1 (information-theoretic lower bound)")
        if self.beta is not None and not 0 < self.beta < 1:
            raise ValueError("beta must lie in (0, 1)")

    @property
    def kappa(self) -> float:
        return kappa_alpha(self.alpha)


@dataclass(frozen=True)
class Prediction:
    leading: float
    linear: float | None  # None when only O(n) is known
    band: str

    def value(self, n: int) -> float:
        if n <= 1:
            return 0.0
        lin = self.linear or 0.0
        return self.leading * n * math.log2(n) + lin * n


def kappa_alpha(alpha: float) -> float:
    return 4 / 15 * (12 - 7 * alpha / math.log(2))


def theoretical_bounds(p: BoundParams, n: int | None = None) -> Prediction | float:
    """Leading and linear coefficients of the predicted comparison count.

    With ``n`` given, returns the numeric budget instead of the coefficients.
    """
    if p.worst_case:
        pred = Prediction(1.0, MOM_LINEAR, "worst case, exact")
    elif p.beta is not None:
        pred = Prediction(p.alpha * p.beta + 1 - p.beta, None, "+ O(n)")
    else:
        pred = Prediction(p.alpha, p.c + p.kappa, "+ o(n)")
    return pred if n is None else pred.value(n)
