"""Growth classification of discrete convolution summations, plus order math.

The object is S^{(n)}_{r,p,q} = sum_{k=1..n-1} (n^r - k^r)^p * k^q, the model
for how local truncation errors accumulate through the convolution weights on
a mesh graded with exponent r.  Its growth in n falls into three regimes
decided by min{p, q}:

    min > -1 :  n^(r*p + q + 1)
    min = -1 :  n^(r*p + q + 1) * (1 + ln n)
    min < -1 :  n^max(r*p, (r-1)*p + q)

The reports carry the raw sum, the matching power, and their ratio; the
claim under test is that the ratio stays bounded as n doubles, with the
regime-1 ratio converging to the Beta function B(p+1, q+1) when r = 1.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

__all__ = [
    "DcsCase",
    "DcsReport",
    "dcs_sum",
    "dcs_bound",
    "doubling_scan",
    "observed_order",
]

_EQ_TOL = 1e-12
_NEAR_TOL = 1e-8


@dataclass(frozen=True)
class DcsCase:
    r: float
    p: float
    q: float
    n: int

    def __post_init__(self):
        if not self.r > 0.0:
            raise ValueError(f"grading exponent must be positive, got r={self.r!r}")
        if self.n < 2:
            raise ValueError(f"the sum is empty below n=2, got n={self.n!r}")


@dataclass(frozen=True)
class DcsReport:
    case: DcsCase
    value: float
    regime: str
    bound: float
    ratio: float


def dcs_sum(case: DcsCase) -> float:
    """Exact-rounding evaluation of the summation (fsum over all terms)."""
    n, r, p, q = case.n, case.r, case.p, case.q
    nr = n ** r
    terms = [(nr - k ** r) ** p * k ** q for k in range(1, n)]
    total = math.fsum(terms)
    if not math.isfinite(total):
        raise OverflowError(
            f"summation overflowed for (r={r}, p={p}, q={q}, n={n})"
        )
    return total


def dcs_bound(case: DcsCase) -> DcsReport:
    """Classify the regime and report value, matching power, and ratio."""
    n, r, p, q = case.n, case.r, case.p, case.q
    m = min(p, q)
    if abs(m + 1.0) <= _EQ_TOL:
        regime = "min=-1"
        bound = n ** (r * p + q + 1.0) * (1.0 + math.log(n))
    else:
        if abs(m + 1.0) < _NEAR_TOL:
            warnings.warn(
                f"min(p, q)={m!r} sits within {_NEAR_TOL} of the log boundary; "
                "classifying by the open regime, but the asymptotic changes "
                "discontinuously there",
                stacklevel=2,
            )
        if m > -1.0:
            regime = "min>-1"
            bound = n ** (r * p + q + 1.0)
        else:
            regime = "min<-1"
            bound = n ** max(r * p, (r - 1.0) * p + q)
    value = dcs_sum(case)
    return DcsReport(case=case, value=value, regime=regime, bound=bound, ratio=value / bound)


def doubling_scan(r: float, p: float, q: float, j_max: int) -> tuple[list[DcsReport], bool]:
    """Reports at n = 2^j for j = 1..j_max, plus a boundedness flag.

    The flag goes false if each of the last three ratios grows by more than
    a factor of two over its predecessor (the signature of a wrong regime).
    """
    if not 1 <= j_max <= 20:
        raise ValueError(f"j_max must lie in 1..20, got {j_max!r}")
    reports = [dcs_bound(DcsCase(r=r, p=p, q=q, n=2 ** j)) for j in range(1, j_max + 1)]
    ratios = [rep.ratio for rep in reports]
    bounded = True
    if len(ratios) >= 4:
        tail = ratios[-4:]
        bounded = not all(later > 2.0 * earlier for earlier, later in zip(tail, tail[1:]))
    return reports, bounded


def observed_order(e_coarse: float, e_fine: float) -> float:
    """log2 error ratio for an N -> 2N refinement."""
    if not (e_coarse > 0.0 and e_fine > 0.0):
        raise ValueError(
            f"orders need strictly positive errors, got ({e_coarse!r}, {e_fine!r})"
        )
    return math.log2(e_coarse / e_fine)
