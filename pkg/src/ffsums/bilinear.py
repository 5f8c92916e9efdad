"""Bilinear forms of Kloosterman and Gauss sums with proof-level checks.

Evaluators for the six bilinear forms (plain interval-by-interval, one-weight
forms over arbitrary sets and over intervals, for both the Kloosterman and
the Gauss kernel), complex weight generation, and an inequality check for
each bound: the form is evaluated by brute force, the fully explicit
right-hand side is computed exactly (counting functions included), and the
slack against the bound's main terms is reported as a
:class:`~ffsums.records.BoundReport`.

Two consistency oracles are built into the evaluators themselves:

* the plain Kloosterman form also evaluates the collapsed single-sum form
  (inner interval sums replaced by their subspace closed form) and asserts
  agreement;
* the two-weight Gauss forms verify the completing-the-square identity --
  each quadratic kernel collapses to a unit constant theta_t times an
  explicit phase -- before returning.

Weight values are complex doubles, so all form magnitudes are floats; exact
arithmetic lives below this module (character values, counts).  A 1e-9
relative tolerance governs every float comparison; accumulated rounding over
the at most q^(2r) terms handled here is orders of magnitude smaller.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .charmod import CharContext, CycValue, get_context
from .counting import (
    Interval,
    energy_inv,
    energy_sq,
    energy_sqrt,
    hyperbola_count,
    inverse_avg_count,
)
from .errors import HypothesisViolation, InvalidParameter, InvalidSupport
from .expsum import gauss_idx, kloosterman_idx
from .polyring import Modulus, Poly, format_poly, gcd_monic, inv_mod
from .records import BoundReport, make_report

_REL_TOL = 1e-9

_roots_cache: dict[int, list[complex]] = {}


def _root_table(p: int) -> list[complex]:
    table = _roots_cache.get(p)
    if table is None:
        table = [
            complex(math.cos(2.0 * math.pi * j / p), math.sin(2.0 * math.pi * j / p))
            for j in range(p)
        ]
        _roots_cache[p] = table
    return table


def _ctx(F: Modulus | CharContext) -> CharContext:
    if isinstance(F, CharContext):
        return F
    return get_context(F)


# ---------------------------------------------------------------------------
# Weights
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightSeq:
    """Complex weights on a finite set of polynomials.

    Support entries must be pairwise distinct as polynomials at construction;
    distinctness as residues mod the working modulus is validated when the
    weights are used.  Norms are computed once and cached.
    """

    support: tuple[Poly, ...]
    values: tuple[complex, ...]

    def __post_init__(self):
        if len(self.support) != len(self.values):
            raise InvalidParameter("support and values must have equal length")
        seen = set()
        for s in self.support:
            key = tuple(c.idx for c in s.coeffs)
            if key in seen:
                raise InvalidSupport(f"duplicate support entry {format_poly(s)}")
            seen.add(key)

    @cached_property
    def norm1(self) -> float:
        return math.fsum(abs(v) for v in self.values)

    @cached_property
    def norm2(self) -> float:
        return math.sqrt(math.fsum(abs(v) ** 2 for v in self.values))

    @cached_property
    def norm_inf(self) -> float:
        return max((abs(v) for v in self.values), default=0.0)

    def __len__(self) -> int:
        return len(self.support)


def make_weights(kind: str, support, seed: int = 0) -> WeightSeq:
    """Weight generator: "ones" (all 1), "random_unit" (iid points on the
    unit circle), or "random_sign" (iid +-1); deterministic in seed."""
    sup = tuple(support)
    if kind == "ones":
        vals = tuple(complex(1.0, 0.0) for _ in sup)
    elif kind == "random_unit":
        rng = random.Random(seed)
        vals = tuple(
            complex(math.cos(a), math.sin(a))
            for a in (2.0 * math.pi * rng.random() for _ in sup)
        )
    elif kind == "random_sign":
        rng = random.Random(seed)
        vals = tuple(complex(rng.choice((1.0, -1.0)), 0.0) for _ in sup)
    else:
        raise InvalidParameter(f"unknown weight kind {kind!r}")
    return WeightSeq(sup, vals)


def _residue_support(ctx: CharContext, weights: WeightSeq) -> list[int]:
    """Residue indexes of the support; entries must stay distinct mod F."""
    out = []
    seen: set[int] = set()
    for s in weights.support:
        i = ctx.index(s)
        if i in seen:
            raise InvalidSupport(
                f"support entries collide mod F at residue {format_poly(ctx.residues[i])}"
            )
        seen.add(i)
        out.append(i)
    return out


def _require_subset(
    ctx: CharContext, weights: WeightSeq, interval: Interval, name: str
) -> list[int]:
    sup = _residue_support(ctx, weights)
    allowed = set(interval.residue_indices(ctx))
    if any(i not in allowed for i in sup):
        raise InvalidSupport(f"{name} weights must be supported on the given interval")
    return sup


# ---------------------------------------------------------------------------
# Kloosterman-kernel forms
# ---------------------------------------------------------------------------

def _validate_gamma(ctx: CharContext, gamma: Sequence[complex]) -> None:
    if len(gamma) != ctx.n:
        raise InvalidParameter(
            f"gamma must assign a weight to each of the {ctx.n} residues"
        )
    if max(abs(g) for g in gamma) > 1.0 + _REL_TOL:
        raise InvalidParameter("gamma weights must have modulus <= 1")


def _bk_plain_direct(ctx, a_idx: int, Im: Interval, In: Interval, gamma):
    s_idx = Im.residue_indices(ctx)
    t_idx = In.residue_indices(ctx)
    arow = ctx.mul_row(a_idx)
    if gamma is None:
        total = CycValue.zero(ctx.p)
        cache: dict[tuple[int, int], CycValue] = {}
        for si in s_idx:
            for ti in t_idx:
                key = (si, arow[ti])
                val = cache.get(key)
                if val is None:
                    val = kloosterman_idx(ctx, key[0], key[1])
                    cache[key] = val
                total = total + val
        return total
    # Literal triple sum with the residue weights in place.
    psi = ctx.psi
    p = ctx.p
    roots = _root_table(p)
    units, unit_invs, _ = ctx.unit_data
    total_c = 0j
    for si in s_idx:
        for ti in t_idx:
            at = arow[ti]
            acc = 0j
            for pos, x in enumerate(units):
                e = (psi[ctx.mul_row(x)[si]] + psi[ctx.mul_row(unit_invs[pos])[at]]) % p
                acc += gamma[x] * roots[e]
            total_c += acc
    return total_c


def _bk_plain_collapsed(ctx, a_idx: int, Im: Interval, In: Interval, gamma):
    """q^(n+m) * sum over units x with deg_F(x) < r-m and deg_F(a*xbar) < r-n
    of gamma_x * e_F(s0*x + a*t0*xbar); an exact identity with the direct
    triple sum (inner interval sums collapse to q^m / q^n on exactly that
    support)."""
    q, p, r = ctx.q, ctx.p, ctx.r
    m, n = Im.size_exp, In.size_exp
    s0 = ctx.index(Im.offset)
    at0 = ctx.mul_row(a_idx)[ctx.index(In.offset)] if not In.offset.is_zero else 0
    thresh_s = q ** (r - m)
    thresh_t = q ** (r - n)
    arow = ctx.mul_row(a_idx)
    psi = ctx.psi
    units, unit_invs, _ = ctx.unit_data
    scale = q ** (m + n)
    hist = [0] * p
    total_c = 0j
    roots = _root_table(p) if gamma is not None else None
    for pos, x in enumerate(units):
        if x >= thresh_s:
            continue
        xb = unit_invs[pos]
        if arow[xb] >= thresh_t:
            continue
        e = 0
        if s0:
            e += psi[ctx.mul_row(x)[s0]]
        if at0:
            e += psi[ctx.mul_row(xb)[at0]]
        e %= p
        if gamma is None:
            hist[e] += 1
        else:
            total_c += gamma[x] * roots[e]
    if gamma is None:
        return CycValue.from_root_histogram(p, hist) * scale
    return total_c * scale


def bk_plain(
    F: Modulus | CharContext,
    a: Poly,
    Im: Interval,
    In: Interval,
    gamma: Sequence[complex] | None = None,
):
    """The plain Kloosterman-kernel form: sum over s in Im and t in In of
    K_F(s, a*t), optionally with residue weights gamma (|gamma_x| <= 1)
    inserted into every kernel.

    Exact CycValue without gamma, complex with.  The collapsed single-sum
    form is always evaluated as well and must agree (exactly without gamma,
    to 1e-9 in magnitude with)."""
    ctx = _ctx(F)
    if gamma is not None:
        _validate_gamma(ctx, gamma)
    a_idx = ctx.index(a)
    direct = _bk_plain_direct(ctx, a_idx, Im, In, gamma)
    collapsed = _bk_plain_collapsed(ctx, a_idx, Im, In, gamma)
    if gamma is None:
        if direct != collapsed:
            raise AssertionError(
                "collapsed-form consistency check failed for the plain Kloosterman form"
            )
    else:
        lhs, rhs = abs(direct), abs(collapsed)
        if abs(lhs - rhs) > _REL_TOL * max(1.0, lhs):
            raise AssertionError(
                "collapsed-form consistency check failed for the weighted Kloosterman form"
            )
    return direct


def bk_type1_set(
    F: Modulus | CharContext, a: Poly, alpha: WeightSeq, In: Interval
) -> complex:
    """One-weight Kloosterman form over an arbitrary support:
    sum over s in supp(alpha), t in In of alpha_s * K_F(s, a*t)."""
    ctx = _ctx(F)
    sup = _residue_support(ctx, alpha)
    arow = ctx.mul_row(ctx.index(a))
    t_idx = In.residue_indices(ctx)
    cache: dict[tuple[int, int], complex] = {}
    total = 0j
    for si, w in zip(sup, alpha.values):
        inner = 0j
        for ti in t_idx:
            key = (si, arow[ti])
            val = cache.get(key)
            if val is None:
                val = kloosterman_idx(ctx, key[0], key[1]).to_complex()
                cache[key] = val
            inner += val
        total += w * inner
    return total


def bk_type1_interval(
    F: Modulus | CharContext,
    a: Poly,
    alpha: WeightSeq,
    Im: Interval,
    In: Interval,
) -> complex:
    """One-weight Kloosterman form with the support constrained to an
    interval (the shape the averaged-count bound needs)."""
    ctx = _ctx(F)
    _require_subset(ctx, alpha, Im, "alpha")
    return bk_type1_set(ctx, a, alpha, In)


def kloosterman_form_trivial_report(
    F: Modulus | CharContext, a: Poly, Im: Interval, In: Interval
) -> BoundReport:
    """Sanity envelope: |plain form| <= q^(n+m) * max |K_F(s, a*t)| over the
    grid (computed exactly); main term q^(n+m+r/2)."""
    ctx = _ctx(F)
    value = bk_plain(ctx, a, Im, In)
    arow = ctx.mul_row(ctx.index(a))
    seen: set[tuple[int, int]] = set()
    max_k = 0.0
    for si in Im.residue_indices(ctx):
        for ti in In.residue_indices(ctx):
            key = (si, arow[ti])
            if key in seen:
                continue
            seen.add(key)
            max_k = max(max_k, kloosterman_idx(ctx, key[0], key[1]).abs_float())
    m, n = Im.size_exp, In.size_exp
    q = ctx.q
    params = {
        "check": "kloosterman-form-trivial",
        "field": ctx.field.format_spec(),
        "modulus": format_poly(ctx.F.f),
        "a": format_poly(a),
        "m": m,
        "m_offset": format_poly(Im.offset),
        "n": n,
        "n_offset": format_poly(In.offset),
    }
    rhs_exact = q ** (n + m) * max_k
    rhs_main = float(q) ** (n + m + ctx.r / 2)
    return make_report(
        params, value.abs_float(), rhs_exact, rhs_main, q, value=value.to_complex()
    )


# ---------------------------------------------------------------------------
# Gauss-kernel forms
# ---------------------------------------------------------------------------

def _require_gauss_hypotheses(ctx: CharContext, a: Poly) -> None:
    if ctx.q % 2 == 0:
        raise HypothesisViolation("Gauss-kernel forms need odd q")
    if not ctx.F.is_irreducible:
        raise HypothesisViolation("Gauss-kernel forms need an irreducible modulus")
    if gcd_monic(ctx.F.rep(a), ctx.F.f).degree != 0:
        raise HypothesisViolation("Gauss-kernel forms need gcd(a, F) = 1")


def bg_type1(
    F: Modulus | CharContext, a: Poly, alpha: WeightSeq, In: Interval
) -> complex:
    """One-weight Gauss form: sum over s in supp(alpha) and t in In with
    t != 0 mod F of alpha_s * G_F(s, a*t).  Needs odd q, irreducible F and
    gcd(a, F) = 1."""
    ctx = _ctx(F)
    _require_gauss_hypotheses(ctx, a)
    sup = _residue_support(ctx, alpha)
    arow = ctx.mul_row(ctx.index(a))
    t_idx = [t for t in In.residue_indices(ctx) if t != 0]
    cache: dict[tuple[int, int], complex] = {}
    total = 0j
    for si, w in zip(sup, alpha.values):
        inner = 0j
        for ti in t_idx:
            key = (si, arow[ti])
            val = cache.get(key)
            if val is None:
                val = gauss_idx(ctx, key[0], key[1]).to_complex()
                cache[key] = val
            inner += val
        total += w * inner
    return total


def _bg_type2_eval(
    ctx: CharContext,
    a_idx: int,
    sup_s: list[int],
    vals_s: tuple[complex, ...],
    sup_t: list[int],
    vals_t: tuple[complex, ...],
) -> complex:
    arow = ctx.mul_row(a_idx)
    cache: dict[tuple[int, int], complex] = {}

    def kernel(si: int, at: int) -> complex:
        key = (si, at)
        val = cache.get(key)
        if val is None:
            val = gauss_idx(ctx, si, at).to_complex()
            cache[key] = val
        return val

    total = 0j
    for si, w in zip(sup_s, vals_s):
        inner = 0j
        for ti, u in zip(sup_t, vals_t):
            if ti == 0:
                continue
            inner += u * kernel(si, arow[ti])
        total += w * inner

    # Completing the square: G_F(s, at) = e_F(-s^2 * inv(4at)) * G_F(0, at),
    # so |S| = q^(r/2) * |sum alpha_s beta_t theta_t e_F(-s^2 inv(4at))| with
    # theta_t = G_F(0, at) / q^(r/2) of unit modulus.
    q, p, r = ctx.q, ctx.p, ctx.r
    qr2 = float(q) ** (r / 2)
    roots = _root_table(p)
    psi = ctx.psi
    sq = ctx.square_index()
    neg = ctx.neg_index()
    inv_table = ctx.unit_data[2]
    four_a = ctx.mul_row(ctx.index(Poly.constant(ctx.field, ctx.field.from_int(4))))[
        a_idx
    ]
    farow = ctx.mul_row(four_a)
    total2 = 0j
    for ti, u in zip(sup_t, vals_t):
        if ti == 0:
            continue
        theta = kernel(0, arow[ti]) / qr2
        if abs(abs(theta) - 1.0) > _REL_TOL:
            raise AssertionError("unit-modulus check failed for a reduced Gauss value")
        inv4at = inv_table[farow[ti]]
        row_inv = ctx.mul_row(inv4at)
        inner = 0j
        for si, w in zip(sup_s, vals_s):
            inner += w * roots[psi[neg[row_inv[sq[si]]]]]
        total2 += u * theta * inner
    total2 *= qr2
    if abs(abs(total) - abs(total2)) > _REL_TOL * max(1.0, abs(total)):
        raise AssertionError("completing-the-square consistency check failed")
    return total


def bg_type2_set(
    F: Modulus | CharContext,
    a: Poly,
    alpha: WeightSeq,
    beta: WeightSeq,
    In: Interval,
) -> complex:
    """Two-weight Gauss form: sum over s in supp(alpha), t in supp(beta)
    (within In, t != 0 mod F) of alpha_s beta_t G_F(s, a*t); verifies the
    completing-the-square identity before returning."""
    ctx = _ctx(F)
    _require_gauss_hypotheses(ctx, a)
    sup_s = _residue_support(ctx, alpha)
    sup_t = _require_subset(ctx, beta, In, "beta")
    return _bg_type2_eval(ctx, ctx.index(a), sup_s, alpha.values, sup_t, beta.values)


def bg_type2_interval(
    F: Modulus | CharContext,
    a: Poly,
    alpha: WeightSeq,
    Im: Interval,
    beta: WeightSeq,
    In: Interval,
) -> complex:
    """Two-weight Gauss form with both supports constrained to intervals."""
    ctx = _ctx(F)
    _require_gauss_hypotheses(ctx, a)
    sup_s = _require_subset(ctx, alpha, Im, "alpha")
    sup_t = _require_subset(ctx, beta, In, "beta")
    return _bg_type2_eval(ctx, ctx.index(a), sup_s, alpha.values, sup_t, beta.values)


# ---------------------------------------------------------------------------
# The bound checks
# ---------------------------------------------------------------------------

CHECK_NAMES = (
    "thm1",
    "thm2",
    "thm2-remark",
    "thm3",
    "thm4",
    "thm5",
    "thm6",
)

# Which keyword arguments each check consumes (grid runners use this to
# build exactly the inputs a check needs).
THEOREM_SPECS: dict[str, tuple[str, ...]] = {
    "thm1": ("Im", "In"),
    "thm2": ("alpha", "In"),
    "thm2-remark": ("alpha", "In"),
    "thm3": ("alpha", "Im", "In"),
    "thm4": ("alpha", "In"),
    "thm5": ("alpha", "beta", "In"),
    "thm6": ("alpha", "Im", "beta", "In"),
}


def _require_coprime_irreducible(ctx: CharContext, a: Poly, check: str) -> None:
    if not ctx.F.is_irreducible:
        raise HypothesisViolation(f"{check} needs an irreducible modulus")
    if gcd_monic(ctx.F.rep(a), ctx.F.f).degree != 0:
        raise HypothesisViolation(f"{check} needs gcd(a, F) = 1")


def theorem_check(
    F: Modulus | CharContext,
    which: int | str,
    a: Poly,
    *,
    Im: Interval | None = None,
    In: Interval | None = None,
    alpha: WeightSeq | None = None,
    beta: WeightSeq | None = None,
    extra_params: dict | None = None,
) -> BoundReport:
    """Evaluate one bilinear-form bound at one parameter point.

    ``which`` is "thm1".."thm6" (an int 1..6 is accepted) or "thm2-remark".
    The report's ``lhs`` and ``rhs_exact`` are stated at the power the
    underlying inequality uses (1, 2, 4 or 8); ``slack_log_q`` is normalized
    back to the first power.  Parameter combinations outside a bound's
    hypotheses raise :class:`HypothesisViolation`.
    """
    if isinstance(which, int):
        which = f"thm{which}"
    if which not in CHECK_NAMES:
        raise InvalidParameter(f"unknown check {which!r}")
    ctx = _ctx(F)
    q, r = ctx.q, ctx.r
    field = ctx.field
    params: dict = {
        "check": which,
        "field": field.format_spec(),
        "modulus": format_poly(ctx.F.f),
        "a": format_poly(a),
    }

    def add_interval(name: str, interval: Interval) -> None:
        params[name] = interval.size_exp
        params[f"{name}_offset"] = format_poly(interval.offset)

    def finish(lhs, rhs_exact, rhs_main, power, value):
        if extra_params:
            params.update(extra_params)
        return make_report(params, lhs, rhs_exact, rhs_main, q, power, value)

    if which == "thm1":
        if Im is None or In is None:
            raise InvalidParameter("thm1 needs both intervals")
        add_interval("m", Im)
        add_interval("n", In)
        m, n = Im.size_exp, In.size_exp
        value = bk_plain(ctx, a, Im, In).to_complex()
        count = hyperbola_count(
            ctx, a, Interval.initial(field, r - m), Interval.initial(field, r - n)
        )
        rhs_exact = q ** (n + m) * count
        rhs_main = q ** (n + m) * (float(q) ** (r - m - n) + 1.0)
        return finish(abs(value), rhs_exact, rhs_main, 1, value)

    if which == "thm2":
        if alpha is None or In is None:
            raise InvalidParameter("thm2 needs alpha and the t-interval")
        add_interval("n", In)
        params["alpha_size"] = len(alpha)
        n = In.size_exp
        if n < 1:
            raise HypothesisViolation("thm2 needs n >= 1")
        value = bk_type1_set(ctx, a, alpha, In)
        count = hyperbola_count(
            ctx, a, Interval.initial(field, r), Interval.initial(field, r - n)
        )
        rhs_exact = q ** (2 * n + r) * alpha.norm2**2 * count
        rhs_main = (alpha.norm2 * float(q) ** (n + r / 2) * float(q) ** ((r - n) / 2)) ** 2
        return finish(abs(value) ** 2, rhs_exact, rhs_main, 2, value)

    if which == "thm2-remark":
        if alpha is None or In is None:
            raise InvalidParameter("thm2-remark needs alpha and the t-interval")
        _require_coprime_irreducible(ctx, a, "thm2-remark")
        add_interval("n", In)
        params["alpha_size"] = len(alpha)
        n = In.size_exp
        if n < 1:
            raise HypothesisViolation("thm2-remark needs n >= 1")
        value = bk_type1_set(ctx, a, alpha, In)
        energy = energy_inv(ctx, Interval.initial(field, r - n))
        rhs_exact = q ** (4 * n + r) * alpha.norm1**2 * alpha.norm2**2 * energy
        branch = float(q) ** (3 * r / 4 - n) + float(q) ** (5 * r / 8 - n / 2)
        if q % 2 == 1:
            branch = min(
                branch,
                float(q) ** (3 * r / 4 - 7 * n / 8) + float(q) ** (r / 2 - n / 2),
            )
        rhs_main = (
            math.sqrt(alpha.norm1 * alpha.norm2) * float(q) ** (n + r / 4) * branch
        ) ** 4
        return finish(abs(value) ** 4, rhs_exact, rhs_main, 4, value)

    if which == "thm3":
        if alpha is None or Im is None or In is None:
            raise InvalidParameter("thm3 needs alpha and both intervals")
        add_interval("m", Im)
        add_interval("n", In)
        params["alpha_size"] = len(alpha)
        m, n = Im.size_exp, In.size_exp
        if n < 1 or m < 1:
            raise HypothesisViolation("thm3 needs m, n >= 1")
        a_rep = ctx.F.rep(a)
        gcd_af = gcd_monic(a_rep, ctx.F.f)
        d: int = gcd_af.degree  # type: ignore[assignment]
        if r - d - n < 0:
            raise HypothesisViolation(
                "thm3 needs deg gcd(a, F) <= r - n (the averaged count is empty otherwise)"
            )
        value = bk_type1_interval(ctx, a, alpha, Im, In)
        if d == 0:
            reduced_modulus = ctx.F
            a0 = a_rep
        else:
            f0, f_rem = divmod(ctx.F.f, gcd_af)
            a0, a_rem = divmod(a_rep, gcd_af)
            if not f_rem.is_zero or not a_rem.is_zero:  # pragma: no cover
                raise AssertionError("gcd division left a remainder")
            reduced_modulus = Modulus(f0)
        abar0 = inv_mod(a0, reduced_modulus)
        r0 = reduced_modulus.r
        k = r - m
        # For k > deg(F/D) the multiplier h covers each residue class
        # q^(k - r0) times, so the averaged count scales exactly.
        k_eff = min(k, r0)
        count = inverse_avg_count(
            reduced_modulus, abar0, Interval.initial(field, r - d - n), k_eff
        ) * q ** (k - k_eff)
        rhs_exact = q ** (2 * n + m + d) * alpha.norm2**2 * count
        head = float(q) ** (r / 2 - d / 2 - n / 2)
        b_divisor = (
            head + float(q) ** (r / 2 - m / 2) + float(q) ** (r - d / 2 - m / 2 - 3 * n / 4)
        )
        b_improved = (
            head
            + float(q) ** (r - d / 2 - m / 2 - n)
            + float(q) ** (r - 3 * d / 4 - m / 4 - n)
        )
        branch = min(b_divisor, b_improved)
        if q % 2 == 1:
            b_interval = (
                head
                + float(q) ** (r - d / 2 - m / 2 - n)
                + float(q) ** (3 * r / 4 - d / 4 - m / 2)
            )
            branch = min(branch, b_interval)
        rhs_main = (alpha.norm2 * float(q) ** (n + m / 2 + d / 2) * branch) ** 2
        return finish(abs(value) ** 2, rhs_exact, rhs_main, 2, value)

    if which == "thm4":
        if alpha is None or In is None:
            raise InvalidParameter("thm4 needs alpha and the t-interval")
        add_interval("n", In)
        params["alpha_size"] = len(alpha)
        n = In.size_exp
        if n < 1:
            raise HypothesisViolation("thm4 needs n >= 1")
        value = bg_type1(ctx, a, alpha, In)
        energy = energy_sqrt(ctx, r - n)
        rhs_exact = q ** (4 * n + r) * alpha.norm1**2 * alpha.norm2**2 * energy
        branch = float(q) ** (3 * r / 4 - 7 * n / 8) + float(q) ** (r / 2 - n / 2)
        rhs_main = (
            math.sqrt(alpha.norm1 * alpha.norm2) * float(q) ** (n + r / 4) * branch
        ) ** 4
        return finish(abs(value) ** 4, rhs_exact, rhs_main, 4, value)

    if which == "thm5":
        if alpha is None or beta is None or In is None:
            raise InvalidParameter("thm5 needs alpha, beta and the t-interval")
        add_interval("n", In)
        params["alpha_size"] = len(alpha)
        params["beta_size"] = len(beta)
        n = In.size_exp
        if n < 1:
            raise HypothesisViolation("thm5 needs n >= 1")
        value = bg_type2_set(ctx, a, alpha, beta, In)
        energy = energy_inv(ctx, In)
        rhs_exact = (
            2 * q ** (3 * r) * alpha.norm1**2 * alpha.norm2**2 * beta.norm_inf**4 * energy
        )
        branch = min(
            float(q) ** (n - r / 4) + float(q) ** (n / 2 + r / 8),
            float(q) ** (7 * n / 8 - r / 8) + float(q) ** (n / 2),
        )
        rhs_main = (
            math.sqrt(alpha.norm1 * alpha.norm2)
            * beta.norm_inf
            * float(q) ** (3 * r / 4)
            * branch
        ) ** 4
        return finish(abs(value) ** 4, rhs_exact, rhs_main, 4, value)

    # thm6
    if alpha is None or beta is None or Im is None or In is None:
        raise InvalidParameter("thm6 needs alpha, beta and both intervals")
    add_interval("m", Im)
    add_interval("n", In)
    params["alpha_size"] = len(alpha)
    params["beta_size"] = len(beta)
    m, n = Im.size_exp, In.size_exp
    if n < 1 or m < 1:
        raise HypothesisViolation("thm6 needs m, n >= 1")
    value = bg_type2_interval(ctx, a, alpha, Im, beta, In)
    e_inv = energy_inv(ctx, In)
    e_sq = energy_sq(ctx, Im)
    rhs_exact = q ** (5 * r + 4 * n) * alpha.norm2**8 * beta.norm_inf**8 * e_inv * e_sq
    rhs_main = (
        alpha.norm2
        * beta.norm_inf
        * float(q) ** (5 * r / 8 + n / 2)
        * (float(q) ** (7 * n / 16 - r / 16) + float(q) ** (n / 4))
        * (float(q) ** (m / 2 - r / 8) + float(q) ** (m / 4))
    ) ** 8
    return finish(abs(value) ** 8, rhs_exact, rhs_main, 8, value)
