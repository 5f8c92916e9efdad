"""Dirichlet-style rational approximation in F_q[T]/<F>.

Given a residue lambda and a degree budget k, produce a nonzero multiplier
x1 of degree <= k such that lambda * x1 is congruent mod F to some x2 of
degree <= r - k - 1.  The pair comes from the extended-Euclid remainder
sequence of (F, lambda): remainders r_i satisfy r_i = s_i F + t_i lambda, and
the first remainder of degree <= r - k - 1 is returned together with its
cofactor t_i.  The degree duality deg t_i = r - deg r_(i-1) makes the budget
work out, but the postconditions are asserted explicitly on every return
rather than trusted.
"""

from __future__ import annotations

from .errors import InvalidParameter
from .polyring import Modulus, Poly


def dirichlet_approx(lam: Poly, F: Modulus, k: int) -> tuple[Poly, Poly]:
    """(x1, x2) with x1 != 0, deg x1 <= k, deg x2 <= r-k-1, and
    lambda * x1 = x2 (mod F).  Requires 1 <= k <= r."""
    if not 1 <= k <= F.r:
        raise InvalidParameter(f"approximation budget k = {k} outside 1..{F.r}")
    field = F.field
    target = F.r - k - 1
    lam_rep = F.rep(lam)
    if lam_rep.is_zero:
        return _checked(lam, F, k, Poly.one(field), Poly.zero(field))
    # Remainder sequence r0 = F, r1 = lam_rep with cofactors t0 = 0, t1 = 1
    # tracking r_i = s_i * F + t_i * lam.
    r_prev, r_cur = F.f, lam_rep
    t_prev, t_cur = Poly.zero(field), Poly.one(field)
    while True:
        if r_cur.degree <= target:
            return _checked(lam, F, k, t_cur, r_cur)
        quot, rem = divmod(r_prev, r_cur)
        r_prev, r_cur = r_cur, rem
        t_prev, t_cur = t_cur, t_prev - quot * t_cur
        # gcd(F, lam) divides every remainder, so r_cur = 0 at worst, and
        # deg 0 = NEG_INF <= target always terminates the loop.


def _checked(lam: Poly, F: Modulus, k: int, x1: Poly, x2: Poly) -> tuple[Poly, Poly]:
    if x1.is_zero:
        raise AssertionError("approximation produced x1 = 0")
    if not x1.degree <= k:
        raise AssertionError(f"approximation degree bound failed: deg x1 = {x1.degree} > {k}")
    if not x2.degree <= F.r - k - 1:
        raise AssertionError(
            f"approximation degree bound failed: deg x2 = {x2.degree} > {F.r - k - 1}"
        )
    if not F.rep(lam * x1 - x2).is_zero:
        raise AssertionError("approximation congruence lambda*x1 = x2 (mod F) failed")
    return x1, x2
