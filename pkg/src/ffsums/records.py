"""Structured result records shared by the comparators and the harness.

A :class:`BoundReport` captures one comparison of a computed quantity against
an upper bound in two flavors:

* ``rhs_exact`` — a fully explicit inequality (constant included); ``passed``
  states whether ``lhs <= rhs_exact * (1 + 1e-9)``.  Ratio-only comparators,
  whose bounds carry an unspecified constant, set ``rhs_exact = inf`` so that
  ``passed`` is vacuously true and only the slack ratio is informative.
* ``rhs_main`` — the bound's main terms with every unspecified
  asymptotically-subpolynomial factor replaced by 1; ``slack_log_q`` is
  ``log_q(lhs / rhs_main)`` normalized by the power at which the inequality
  was stated (so slack is always in units of the first power of the quantity
  being bounded).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

#: Relative tolerance used for every exact-inequality verdict.
PASS_TOL = 1e-9


@dataclass(frozen=True)
class BoundReport:
    """One bound comparison at one parameter point.

    ``params`` is a flat JSON-able dict describing the point (check name,
    field, modulus, sizes, seeds, ...).  ``value`` optionally carries the raw
    complex value whose magnitude entered ``lhs``.
    """

    params: dict
    lhs: float
    rhs_exact: float
    rhs_main: float
    slack_log_q: float
    passed: bool
    value: complex | None = None


def make_report(
    params: dict,
    lhs,
    rhs_exact,
    rhs_main,
    q: int,
    power: int = 1,
    value: complex | None = None,
) -> BoundReport:
    """Build a report; ``passed`` compares lhs against rhs_exact only.

    ``power`` is the exponent at which the inequality is stated (e.g. 2 when
    comparing |S|^2 against a squared bound); the slack is divided by it so
    reports at different powers stay comparable.  ``slack_log_q`` is -inf
    when lhs = 0.
    """
    lhs_f = float(lhs)
    rhs_exact_f = float(rhs_exact)
    rhs_main_f = float(rhs_main)
    passed = lhs_f <= rhs_exact_f * (1.0 + PASS_TOL)
    if lhs_f <= 0.0:
        slack = float("-inf")
    else:
        slack = (math.log(lhs_f) - math.log(rhs_main_f)) / (power * math.log(q))
    return BoundReport(
        params=params,
        lhs=lhs_f,
        rhs_exact=rhs_exact_f,
        rhs_main=rhs_main_f,
        slack_log_q=slack,
        passed=passed,
        value=value,
    )
