"""Exact counts of solutions to modular congruences, with bound comparators.

Six counting functions over residues mod F: points on the modular hyperbola
x1*x2 = a with both variables in intervals, pairs of units whose inverses sum
to a, averages of those pair counts over a multiplier range, and three
additive energies (of inverses, of squares, and of the set of residues whose
squares fall in an initial interval).  All counts are exact integers obtained
by explicit enumeration: the pair counts by double loops over the intervals,
the energies as sums of squared histogram bin counts.  Literal quadruple-loop
oracles for the energies are included for cross-validation at tiny sizes.

Every divisor/energy bound lemma consumed by the bilinear-form theorems has a
comparator here returning a :class:`~ffsums.records.BoundReport` with the
count's slack against the bound's main terms (subpolynomial factors set
to 1).  Only the divisor-argument hyperbola bound has a fully explicit
right-hand side; the other comparators are ratio-only (``rhs_exact = inf``)
and never fail.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .charmod import CharContext, get_context
from .errors import HypothesisViolation, InvalidParameter
from .polyring import (
    Modulus,
    Poly,
    format_poly,
    gcd_monic,
    num_monic_divisors,
    poly_from_index,
    poly_index,
    polys_below_degree,
)
from .records import BoundReport, make_report

_INF = float("inf")


def _ctx(F: Modulus | CharContext) -> CharContext:
    if isinstance(F, CharContext):
        return F
    return get_context(F)


# ---------------------------------------------------------------------------
# Intervals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Interval:
    """The coset {x + offset : deg x < size_exp} of size q^size_exp.

    Distinct elements stay distinct mod any modulus of degree >= size_exp, so
    for size_exp <= r the interval embeds in the residue system.  Iteration
    order is canonical: x runs through its enumeration order and the offset
    is added last.
    """

    offset: Poly
    size_exp: int

    def __post_init__(self):
        if self.size_exp < 0:
            raise InvalidParameter("interval size exponent must be >= 0")

    @staticmethod
    def initial(field, size_exp: int) -> "Interval":
        return Interval(Poly.zero(field), size_exp)

    @property
    def is_initial(self) -> bool:
        return self.offset.is_zero

    @property
    def size(self) -> int:
        return self.offset.field.q**self.size_exp

    def polys(self) -> list[Poly]:
        """The elements as polynomials (offset not reduced)."""
        field = self.offset.field
        return [
            poly_from_index(field, i, self.size_exp) + self.offset
            for i in range(self.size)
        ]

    def residue_indices(self, ctx: CharContext) -> list[int]:
        """Canonical residue indexes of the elements mod ctx.F (requires
        size_exp <= r)."""
        if self.size_exp > ctx.r:
            raise InvalidParameter(
                f"interval size exponent {self.size_exp} exceeds deg F = {ctx.r}"
            )
        off = ctx.F.rep(self.offset)
        if off.is_zero:
            # deg x < size_exp <= r: the canonical index of x is its own
            # enumeration index.
            return list(range(self.size))
        field = ctx.field
        return [
            poly_index(poly_from_index(field, i, self.size_exp) + off, ctx.r)
            for i in range(self.size)
        ]

    def describe(self) -> dict:
        return {"size_exp": self.size_exp, "offset": format_poly(self.offset)}


def _unit_inverse_indices(ctx: CharContext, interval: Interval) -> list[int]:
    """Indexes of the inverses of the units in the interval (canonical
    interval order; non-units dropped)."""
    inv_table = ctx.unit_data[2]
    out = []
    for i in interval.residue_indices(ctx):
        j = inv_table[i]
        if j is not None:
            out.append(j)
    return out


# ---------------------------------------------------------------------------
# The six counting functions
# ---------------------------------------------------------------------------

def hyperbola_count(
    F: Modulus | CharContext, a: Poly, Im: Interval, In: Interval
) -> int:
    """Number of pairs (x1, x2) in Im x In with x1*x2 = a mod F, by double
    enumeration of all q^(m+n) pairs."""
    ctx = _ctx(F)
    ai = ctx.index(a)
    xs = Im.residue_indices(ctx)
    ys = In.residue_indices(ctx)
    count = 0
    for i in xs:
        row = ctx.mul_row(i)
        count += sum(1 for j in ys if row[j] == ai)
    return count


def inverse_pair_count(F: Modulus | CharContext, a: Poly, Im: Interval) -> int:
    """Number of pairs (x1, x2) of units in Im with x1bar + x2bar = a mod F."""
    ctx = _ctx(F)
    ai = ctx.index(a)
    invs = _unit_inverse_indices(ctx, Im)
    count = 0
    for u in invs:
        row = ctx.add_row(u)
        count += sum(1 for v in invs if row[v] == ai)
    return count


def _inverse_sum_bins(ctx: CharContext, Im: Interval) -> Counter:
    """bins[c] = number of unit pairs (x1, x2) in Im^2 with
    x1bar + x2bar = residue c."""
    invs = _unit_inverse_indices(ctx, Im)
    bins: Counter = Counter()
    for u in invs:
        row = ctx.add_row(u)
        bins.update(map(row.__getitem__, invs))
    return bins


def inverse_avg_count(
    F: Modulus | CharContext, a: Poly, Im: Interval, k: int
) -> int:
    """Sum of inverse_pair_count(a*h, Im) over all q^k multipliers h with
    deg h < k (computed from one pair-sum histogram)."""
    ctx = _ctx(F)
    if k < 0 or k > ctx.r:
        raise InvalidParameter(f"multiplier exponent k = {k} out of range [0, {ctx.r}]")
    bins = _inverse_sum_bins(ctx, Im)
    row = ctx.mul_row(ctx.index(a))
    # deg h < k <= r, so h's enumeration index is its residue index.
    return sum(bins.get(row[h], 0) for h in range(ctx.q**k))


def energy_inv(F: Modulus | CharContext, Im: Interval) -> int:
    """Number of unit quadruples in Im^4 with
    x1bar + x2bar = x3bar + x4bar mod F (sum of squared bin counts)."""
    ctx = _ctx(F)
    bins = _inverse_sum_bins(ctx, Im)
    return sum(c * c for c in bins.values())


def energy_sq(F: Modulus | CharContext, Im: Interval) -> int:
    """Number of quadruples in Im^4 with x1^2 + x2^2 = x3^2 + x4^2 mod F."""
    ctx = _ctx(F)
    sq = ctx.square_index()
    sqs = [sq[i] for i in Im.residue_indices(ctx)]
    bins: Counter = Counter()
    for u in sqs:
        row = ctx.add_row(u)
        bins.update(map(row.__getitem__, sqs))
    return sum(c * c for c in bins.values())


def sqrt_domain_indices(F: Modulus | CharContext, m: int) -> list[int]:
    """Indexes of the residues x with deg_F(x^2) < m."""
    ctx = _ctx(F)
    if m < 0 or m > ctx.r:
        raise InvalidParameter(f"size exponent m = {m} out of range [0, {ctx.r}]")
    cutoff = ctx.q**m
    return [i for i, s in enumerate(ctx.square_index()) if s < cutoff]


def energy_sqrt(F: Modulus | CharContext, m: int) -> int:
    """Number of quadruples of residues, each with deg_F(x^2) < m, satisfying
    x1 + x2 = x3 + x4 mod F."""
    ctx = _ctx(F)
    domain = sqrt_domain_indices(ctx, m)
    bins: Counter = Counter()
    for u in domain:
        row = ctx.add_row(u)
        bins.update(map(row.__getitem__, domain))
    return sum(c * c for c in bins.values())


# ---------------------------------------------------------------------------
# Literal quadruple-loop oracles (test-scale only)
# ---------------------------------------------------------------------------

def _quadruple_loop(keys: list[Poly]) -> int:
    """Number of quadruples (k1, k2, k3, k4) with k1 + k2 = k3 + k4; all keys
    have degree < r, so polynomial equality is congruence mod F."""
    count = 0
    for k1 in keys:
        for k2 in keys:
            s12 = k1 + k2
            for k3 in keys:
                t = s12 - k3
                for k4 in keys:
                    if t == k4:
                        count += 1
    return count


def energy_inv_oracle(F: Modulus | CharContext, Im: Interval) -> int:
    ctx = _ctx(F)
    keys = [ctx.residues[u] for u in _unit_inverse_indices(ctx, Im)]
    return _quadruple_loop(keys)


def energy_sq_oracle(F: Modulus | CharContext, Im: Interval) -> int:
    ctx = _ctx(F)
    sq = ctx.square_index()
    keys = [ctx.residues[sq[i]] for i in Im.residue_indices(ctx)]
    return _quadruple_loop(keys)


def energy_sqrt_oracle(F: Modulus | CharContext, m: int) -> int:
    ctx = _ctx(F)
    keys = [ctx.residues[i] for i in sqrt_domain_indices(ctx, m)]
    return _quadruple_loop(keys)


# ---------------------------------------------------------------------------
# Bound comparators
# ---------------------------------------------------------------------------

def _base_params(ctx: CharContext, check: str) -> dict:
    return {
        "check": check,
        "field": ctx.field.format_spec(),
        "modulus": format_poly(ctx.F.f),
    }


def _gcd_deg(ctx: CharContext, a: Poly) -> int:
    """deg gcd(a, F) (r when a = 0 mod F)."""
    g = gcd_monic(ctx.F.rep(a), ctx.F.f)
    return g.degree  # type: ignore[return-value]


def _interval_params(params: dict, name: str, interval: Interval) -> dict:
    d = interval.describe()
    params[name] = d["size_exp"]
    params[f"{name}_offset"] = d["offset"]
    return params


def hyperbola_divisor_report(
    F: Modulus | CharContext, a: Poly, Im: Interval, In: Interval
) -> BoundReport:
    """Exact divisor-argument bound for initial intervals.

    Every solution satisfies x1*x2 = rep(a) + t*F where either t = 0 or
    deg t <= m + n - 2 - r.  A zero product contributes exactly
    q^m + q^n - 1 pairs; a nonzero product c contributes at most
    (q - 1) * d0(c) pairs (a divisor of c times a unit determines x1, and x2
    follows).  rhs_main carries the bound's main terms q^(m+n-r) + 1.
    """
    ctx = _ctx(F)
    if not (Im.is_initial and In.is_initial):
        raise HypothesisViolation(
            "the divisor-argument hyperbola bound needs initial intervals"
        )
    m, n = Im.size_exp, In.size_exp
    count = hyperbola_count(ctx, a, Im, In)
    q, r = ctx.q, ctx.r
    a_rep = ctx.F.rep(a)
    rhs = 0
    for t in polys_below_degree(ctx.field, max(m + n - 1 - r, 0)):
        c = a_rep + t * ctx.F.f
        if c.is_zero:
            rhs += q**m + q**n - 1
        else:
            rhs += (q - 1) * num_monic_divisors(c)
    params = _base_params(ctx, "hyperbola-divisor")
    params["a"] = format_poly(a)
    _interval_params(params, "m", Im)
    _interval_params(params, "n", In)
    main = float(q) ** (m + n - r) + 1.0
    return make_report(params, count, rhs, main, q)


def hyperbola_coprime_report(
    F: Modulus | CharContext, a: Poly, Im: Interval, In: Interval
) -> BoundReport:
    """Ratio-only comparator for the irreducible-modulus hyperbola bound:
    equal-size intervals (the second may instead be initial of the same
    size), gcd(a, F) = 1; main terms 1 + q^((3m-r)/2)."""
    ctx = _ctx(F)
    if not ctx.F.is_irreducible:
        raise HypothesisViolation("irreducible-modulus hyperbola bound needs F irreducible")
    if _gcd_deg(ctx, a) != 0:
        raise HypothesisViolation("irreducible-modulus hyperbola bound needs gcd(a, F) = 1")
    if Im.size_exp != In.size_exp:
        raise HypothesisViolation("irreducible-modulus hyperbola bound needs equal sizes")
    m = Im.size_exp
    if m < 1:
        raise HypothesisViolation("interval size exponent must be >= 1")
    count = hyperbola_count(ctx, a, Im, In)
    q, r = ctx.q, ctx.r
    params = _base_params(ctx, "hyperbola-coprime")
    params["a"] = format_poly(a)
    _interval_params(params, "m", Im)
    _interval_params(params, "n", In)
    main = 1.0 + float(q) ** ((3 * m - r) / 2)
    return make_report(params, count, _INF, main, q)


def inverse_divisor_report(
    F: Modulus | CharContext, a: Poly, Im: Interval
) -> BoundReport:
    """Ratio-only comparator for the divisor-argument inverse-pair bound:
    main terms 1 + q^((3m-r)/2) + q^(2m+d-r) with d = deg gcd(a, F);
    initial intervals for general F, any interval when F is irreducible and
    gcd(a, F) = 1."""
    ctx = _ctx(F)
    d = _gcd_deg(ctx, a)
    if not Im.is_initial and not (ctx.F.is_irreducible and d == 0):
        raise HypothesisViolation(
            "non-initial intervals need F irreducible and gcd(a, F) = 1"
        )
    m = Im.size_exp
    if m < 1:
        raise HypothesisViolation("interval size exponent must be >= 1")
    count = inverse_pair_count(ctx, a, Im)
    q, r = ctx.q, ctx.r
    params = _base_params(ctx, "inverse-divisor")
    params["a"] = format_poly(a)
    _interval_params(params, "m", Im)
    main = 1.0 + float(q) ** ((3 * m - r) / 2) + float(q) ** (2 * m + d - r)
    return make_report(params, count, _INF, main, q)


def inverse_explicit_report(
    F: Modulus | CharContext, a: Poly, Im: Interval
) -> BoundReport:
    """Ratio-only comparator for the inverse-pair bound via explicit
    Kloosterman evaluations (odd q, any interval): main terms
    q^(2m-r) + q^(m+d/2-r/2) + q^(r/2)."""
    ctx = _ctx(F)
    if ctx.q % 2 == 0:
        raise HypothesisViolation("explicit-evaluation inverse bound needs odd q")
    m = Im.size_exp
    if m < 1:
        raise HypothesisViolation("interval size exponent must be >= 1")
    d = _gcd_deg(ctx, a)
    count = inverse_pair_count(ctx, a, Im)
    q, r = ctx.q, ctx.r
    params = _base_params(ctx, "inverse-explicit")
    params["a"] = format_poly(a)
    _interval_params(params, "m", Im)
    main = (
        float(q) ** (2 * m - r)
        + float(q) ** (m + d / 2 - r / 2)
        + float(q) ** (r / 2)
    )
    return make_report(params, count, _INF, main, q)


def inverse_avg_initial_report(
    F: Modulus | CharContext, a: Poly, Im: Interval, k: int
) -> BoundReport:
    """Ratio-only comparator for the averaged inverse-pair bound on initial
    intervals with gcd(a, F) = 1: main terms
    q^m + q^k + q^(2m-r+k) + q^((3m-r)/2+k)."""
    ctx = _ctx(F)
    if not Im.is_initial:
        raise HypothesisViolation("this averaged bound needs an initial interval")
    if _gcd_deg(ctx, a) != 0:
        raise HypothesisViolation("this averaged bound needs gcd(a, F) = 1")
    m = Im.size_exp
    count = inverse_avg_count(ctx, a, Im, k)
    q, r = ctx.q, ctx.r
    params = _base_params(ctx, "inverse-avg-initial")
    params["a"] = format_poly(a)
    params["k"] = k
    _interval_params(params, "m", Im)
    main = (
        float(q) ** m
        + float(q) ** k
        + float(q) ** (2 * m - r + k)
        + float(q) ** ((3 * m - r) / 2 + k)
    )
    return make_report(params, count, _INF, main, q)


def inverse_avg_interval_report(
    F: Modulus | CharContext, a: Poly, Im: Interval, k: int
) -> BoundReport:
    """Ratio-only comparator for the averaged inverse-pair bound on arbitrary
    intervals (odd q, gcd(a, F) = 1): main terms
    q^m + q^(2m-r+k) + q^(r/2+k) + q^(m+k-r/2)."""
    ctx = _ctx(F)
    if ctx.q % 2 == 0:
        raise HypothesisViolation("this averaged bound needs odd q")
    if _gcd_deg(ctx, a) != 0:
        raise HypothesisViolation("this averaged bound needs gcd(a, F) = 1")
    m = Im.size_exp
    count = inverse_avg_count(ctx, a, Im, k)
    q, r = ctx.q, ctx.r
    params = _base_params(ctx, "inverse-avg-interval")
    params["a"] = format_poly(a)
    params["k"] = k
    _interval_params(params, "m", Im)
    main = (
        float(q) ** m
        + float(q) ** (2 * m - r + k)
        + float(q) ** (r / 2 + k)
        + float(q) ** (m + k - r / 2)
    )
    return make_report(params, count, _INF, main, q)


def inverse_avg_improved_report(
    F: Modulus | CharContext, a: Poly, Im: Interval, k: int
) -> BoundReport:
    """Ratio-only comparator for the sharper averaged bound on initial
    intervals (gcd(a, F) = 1, m, k <= r): main terms
    q^(2m-r/2+k/2) + q^(2m-r+k) + q^m."""
    ctx = _ctx(F)
    if not Im.is_initial:
        raise HypothesisViolation("this averaged bound needs an initial interval")
    if _gcd_deg(ctx, a) != 0:
        raise HypothesisViolation("this averaged bound needs gcd(a, F) = 1")
    m = Im.size_exp
    count = inverse_avg_count(ctx, a, Im, k)
    q, r = ctx.q, ctx.r
    params = _base_params(ctx, "inverse-avg-improved")
    params["a"] = format_poly(a)
    params["k"] = k
    _interval_params(params, "m", Im)
    main = (
        float(q) ** (2 * m - r / 2 + k / 2)
        + float(q) ** (2 * m - r + k)
        + float(q) ** m
    )
    return make_report(params, count, _INF, main, q)


def energy_inv_report(
    F: Modulus | CharContext, Im: Interval, variant: str = "divisor"
) -> BoundReport:
    """Ratio-only comparator for the inverse-energy bounds (F irreducible).

    variant "explicit" (odd q): main terms q^(4m-r) + q^(2m+r/2);
    variant "divisor" (any q): main terms q^((7m-r)/2) + q^(2m).
    """
    ctx = _ctx(F)
    if not ctx.F.is_irreducible:
        raise HypothesisViolation("inverse-energy bounds need F irreducible")
    if variant not in ("explicit", "divisor"):
        raise InvalidParameter(f"unknown inverse-energy variant {variant!r}")
    if variant == "explicit" and ctx.q % 2 == 0:
        raise HypothesisViolation("the explicit-evaluation inverse-energy bound needs odd q")
    m = Im.size_exp
    if m < 1:
        raise HypothesisViolation("interval size exponent must be >= 1")
    count = energy_inv(ctx, Im)
    q, r = ctx.q, ctx.r
    params = _base_params(ctx, f"energy-inv-{variant}")
    _interval_params(params, "m", Im)
    if variant == "explicit":
        main = float(q) ** (4 * m - r) + float(q) ** (2 * m + r / 2)
    else:
        main = float(q) ** ((7 * m - r) / 2) + float(q) ** (2 * m)
    return make_report(params, count, _INF, main, q)


def energy_sq_report(F: Modulus | CharContext, Im: Interval) -> BoundReport:
    """Ratio-only comparator for the squares-energy bound (F irreducible):
    main terms q^(4m-r) + q^(2m)."""
    ctx = _ctx(F)
    if not ctx.F.is_irreducible:
        raise HypothesisViolation("the squares-energy bound needs F irreducible")
    m = Im.size_exp
    if m < 1:
        raise HypothesisViolation("interval size exponent must be >= 1")
    count = energy_sq(ctx, Im)
    q, r = ctx.q, ctx.r
    params = _base_params(ctx, "energy-sq")
    _interval_params(params, "m", Im)
    main = float(q) ** (4 * m - r) + float(q) ** (2 * m)
    return make_report(params, count, _INF, main, q)


def energy_sqrt_report(F: Modulus | CharContext, m: int) -> BoundReport:
    """Ratio-only comparator for the square-root-set energy bound (odd q,
    F irreducible, initial range): main terms q^((7m-r)/2) + q^(2m)."""
    ctx = _ctx(F)
    if ctx.q % 2 == 0:
        raise HypothesisViolation("the square-root-set energy bound needs odd q")
    if not ctx.F.is_irreducible:
        raise HypothesisViolation("the square-root-set energy bound needs F irreducible")
    if m < 1:
        raise HypothesisViolation("size exponent must be >= 1")
    count = energy_sqrt(ctx, m)
    q, r = ctx.q, ctx.r
    params = _base_params(ctx, "energy-sqrt")
    params["m"] = m
    main = float(q) ** ((7 * m - r) / 2) + float(q) ** (2 * m)
    return make_report(params, count, _INF, main, q)
