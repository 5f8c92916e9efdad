"""Kloosterman, Gauss, and Ramanujan sums over F_q[T]/<F>.

Brute-force evaluators sum the exact character values over full (or unit)
residue systems; they are the reference semantics for everything else.  The
explicit evaluator computes Kloosterman sums without a full sum: it splits
the modulus into prime powers (twisted multiplicativity), then dispatches each
prime-power factor among gcd-reduction, vanishing, and square-class closed
forms.  Closed forms involving q^(r/2) with odd r leave Z[zeta_p]; those
branches return complex doubles, every other branch returns an exact
CycValue, and callers select the comparison mode by the returned type.

Also provided: the fourth-root-of-unity constant attached to selfdual Gauss
sums (epsilon), the Weil-type magnitude bounds used by the verification
harness, and the triple-product T-sum  sum_t K_F(u,t) K_F(v,t) e_F(-at).
"""

from __future__ import annotations

import math

from .charmod import CharContext, CycValue, char_exponent, get_context
from .errors import InvalidParameter, UnsupportedCharacteristic
from .field import FieldSpec
from .polyring import (
    Modulus,
    Poly,
    gcd_list_monic,
    inv_mod,
    jacobi_symbol,
    num_monic_divisors,
    poly_index,
    polys_below_degree,
)


def _ctx(F: Modulus | CharContext) -> CharContext:
    if isinstance(F, CharContext):
        return F
    return get_context(F)


# ---------------------------------------------------------------------------
# Brute-force evaluators (exact)
# ---------------------------------------------------------------------------

def kloosterman(F: Modulus | CharContext, s: Poly, t: Poly) -> CycValue:
    """K_F(s,t) = sum over units x mod F of e_F(s x + t x^(-1)), exact."""
    ctx = _ctx(F)
    si, ti = ctx.index(s), ctx.index(t)
    return kloosterman_idx(ctx, si, ti)


def kloosterman_idx(ctx: CharContext, si: int, ti: int) -> CycValue:
    """Index-level variant of :func:`kloosterman` (si, ti are residue
    indexes)."""
    hist = ctx.hist_of_packed_sum(
        ctx.packed_lin_units(si), ctx.packed_lin_units_inv(ti)
    )
    return ctx.cyc_from_hist(hist)


def gauss(F: Modulus | CharContext, s: Poly, t: Poly) -> CycValue:
    """G_F(s,t) = sum over all x mod F of e_F(s x + t x^2), exact."""
    ctx = _ctx(F)
    return gauss_idx(ctx, ctx.index(s), ctx.index(t))


def gauss_idx(ctx: CharContext, si: int, ti: int) -> CycValue:
    hist = ctx.hist_of_packed_sum(ctx.packed_lin_all(si), ctx.packed_quad_all(ti))
    return ctx.cyc_from_hist(hist)


def gauss_reduced(F: Modulus | CharContext, s: Poly, t: Poly) -> CycValue:
    """G*_F(s,t): the unit-restricted Gauss sum (Ramanujan sum at t = 0)."""
    ctx = _ctx(F)
    hist = ctx.hist_of_packed_sum(
        ctx.packed_lin_units(ctx.index(s)), ctx.packed_quad_units(ctx.index(t))
    )
    return ctx.cyc_from_hist(hist)


def ramanujan(F: Modulus | CharContext, s: Poly) -> CycValue:
    """C_F(s) = sum over units x mod F of e_F(s x), exact."""
    ctx = _ctx(F)
    hist = ctx.hist_of_packed_sum(ctx.packed_lin_units(ctx.index(s)))
    return ctx.cyc_from_hist(hist)


# ---------------------------------------------------------------------------
# The fourth-root constant attached to G_F(0,1)
# ---------------------------------------------------------------------------

def epsilon_f(F: Modulus | CharContext) -> complex:
    """The unit constant with G_F(0,1) = q^(r/2) * epsilon_F (odd q only):
    1 for even r; for odd r a sign/fourth-root depending on p mod 4, the
    extension degree, and the quadratic character of the leading
    coefficient."""
    if isinstance(F, CharContext):
        F = F.F
    field = F.field
    if field.p == 2:
        raise UnsupportedCharacteristic("epsilon constant undefined in characteristic 2")
    if F.r % 2 == 0:
        return complex(1.0, 0.0)
    chi = field.quad_char(F.lead)
    if field.p % 4 == 1:
        return complex(-chi * (-1) ** field.l, 0.0)
    return -chi * (-1j) ** field.l


# ---------------------------------------------------------------------------
# Explicit (closed-form) Kloosterman evaluation
# ---------------------------------------------------------------------------

def _valuation_capped(x: Poly, P: Poly, cap: int) -> int:
    """Largest v <= cap with P^v | x (cap when x = 0)."""
    if x.is_zero:
        return cap
    v = 0
    while v < cap:
        quot, rem = divmod(x, P)
        if not rem.is_zero:
            break
        x = quot
        v += 1
    return v


# Prime-power moduli small enough for a residue context get lookup tables
# (square roots, quadratic characters, the evaluated constant); larger ones
# fall back to a literal square-class scan.
_PP_TABLE_LIMIT = 1 << 20

_PP_CACHE: dict[tuple[int, tuple[int, ...], int], dict] = {}


def _prime_power_data(field: FieldSpec, P: Poly, j: int) -> dict:
    """Cached per-(P, j) data: the modulus, and (when a context fits) the
    residue context plus a unit square-root table."""
    key = (id(field), tuple(c.idx for c in P.coeffs), j)
    data = _PP_CACHE.get(key)
    if data is None:
        Q = Modulus(P**j)
        data = {"Q": Q, "ctx": None, "jac": {}, "even": {}}
        if field.q**Q.r <= _PP_TABLE_LIMIT:
            ctx = get_context(Q)
            sq = ctx.square_index()
            roots: dict[int, int] = {}
            for u in ctx.units:
                roots.setdefault(sq[u], u)
            data["ctx"] = ctx
            data["roots"] = roots
            data["two"] = ctx.index(Poly.one(field).scale(field.from_int(2)))
        _PP_CACHE[key] = data
    return data


def _explicit_coprime_scan(field: FieldSpec, Q: Modulus, r2: int, s: Poly, t: Poly):
    """The j >= 2, both-arguments-coprime branch by literal square-class
    scan (reference route; used when the modulus exceeds the table limit)."""
    p, q = field.p, field.q
    # Square-class search: K vanishes unless s = c^2 t mod P^j for some c.
    c: Poly | None = None
    for cand in polys_below_degree(field, r2):
        if ((cand * cand * t - s) % Q.f).is_zero:
            c = cand
            break
    if c is None:
        return CycValue.zero(p)
    ct = Q.rep(c * t)
    jac = jacobi_symbol(ct, Q)
    two_ct = ct.scale(field.from_int(2))
    e_exp = char_exponent(two_ct, Q)
    if r2 % 2 == 0:
        # epsilon = 1 and q^(r2/2) is an integer: exact value
        # jac * q^(r2/2) * (e_F(2ct) + e_F(-2ct)).
        val = CycValue.root(p, e_exp) + CycValue.root(p, -e_exp)
        return val * (jac * q ** (r2 // 2))
    eps = epsilon_f(Q)
    ang = 2.0 * math.pi * e_exp / p
    e_val = complex(math.cos(ang), math.sin(ang))
    return 2.0 * jac * q ** (r2 / 2.0) * (e_val * eps).real


def _explicit_prime_power(field: FieldSpec, P: Poly, j: int, s: Poly, t: Poly):
    """K_{P^j}(s, t) by closed forms (P monic irreducible)."""
    p, q = field.p, field.q
    d: int = P.degree  # type: ignore[assignment]
    data = _prime_power_data(field, P, j)
    Q: Modulus = data["Q"]
    s, t = Q.rep(s), Q.rep(t)
    vs = _valuation_capped(s, P, j)
    vt = _valuation_capped(t, P, j)
    k = min(vs, vt)
    if k == j:
        # Both arguments vanish mod P^j: the sum counts units.
        return CycValue.integer(p, q ** (j * d) - q ** ((j - 1) * d))
    if k > 0:
        # Divide out the common prime power and rescale.
        Pk = P**k
        inner = _explicit_prime_power(field, P, j - k, s // Pk, t // Pk)
        scale = q ** (k * d)
        return inner * scale if isinstance(inner, CycValue) else scale * inner
    if j == 1:
        # Degree-d modulus: sum directly (still far below a full q^r sum).
        return kloosterman(Q, s, t)
    if vs > 0 or vt > 0:
        # j >= 2 with exactly one argument divisible by P: the sum vanishes.
        return CycValue.zero(p)
    # j >= 2, both arguments coprime to P.
    if p == 2:
        raise UnsupportedCharacteristic(
            "no closed form for prime-power Kloosterman sums in characteristic 2"
        )
    r2 = j * d
    ctx = data["ctx"]
    if ctx is None:
        return _explicit_coprime_scan(field, Q, r2, s, t)
    # Table route: K vanishes unless s/t is a unit square c^2; the value then
    # depends only on ct (either square root gives the same value).
    s_idx = poly_index(s, r2)
    t_idx = poly_index(t, r2)
    c_idx = data["roots"].get(ctx.mul(s_idx, ctx.unit_data[2][t_idx]))
    if c_idx is None:
        return CycValue.zero(p)
    ct_idx = ctx.mul(c_idx, t_idx)
    jac = data["jac"].get(ct_idx)
    if jac is None:
        jac = jacobi_symbol(ctx.residues[ct_idx], Q)
        data["jac"][ct_idx] = jac
    e_exp = ctx.psi[ctx.mul(data["two"], ct_idx)]
    if r2 % 2 == 0:
        # epsilon = 1 and q^(r2/2) is an integer: exact value
        # jac * q^(r2/2) * (e_F(2ct) + e_F(-2ct)).
        cached = data["even"].get((e_exp, jac))
        if cached is None:
            val = CycValue.root(p, e_exp) + CycValue.root(p, -e_exp)
            cached = val * (jac * q ** (r2 // 2))
            data["even"][(e_exp, jac)] = cached
        return cached
    eps = data.get("eps")
    if eps is None:
        eps = epsilon_f(Q)
        data["eps"] = eps
    ang = 2.0 * math.pi * e_exp / p
    e_val = complex(math.cos(ang), math.sin(ang))
    return 2.0 * jac * q ** (r2 / 2.0) * (e_val * eps).real


_TWIST_CACHE: dict[tuple[int, tuple[int, ...]], list[tuple[Poly, int, Poly]]] = {}


def _twisted_factors(F: Modulus) -> list[tuple[Poly, int, Poly]]:
    """(P, j, inverse-of-cofactor mod P^j) per prime-power factor of F."""
    key = (id(F.field), tuple(c.idx for c in F.f.coeffs))
    parts = _TWIST_CACHE.get(key)
    if parts is None:
        parts = []
        for P, j in F.factors:
            Q = P**j
            cofactor = F.f // Q
            cobar = inv_mod(cofactor, Modulus(Q))
            parts.append((P, j, cobar))
        _TWIST_CACHE[key] = parts
    return parts


def kloosterman_explicit(F: Modulus | CharContext, s: Poly, t: Poly):
    """K_F(s,t) via factorization and closed forms: CycValue on branches that
    stay in Z[zeta_p], complex double otherwise."""
    if isinstance(F, CharContext):
        F = F.F
    field = F.field
    if not F.f.is_monic:
        # e_{cG}(x) = e_G(x/c) for a constant c, so K_{cG}(s,t) = K_G(s/c, t/c).
        c_inv = F.lead_inv
        return kloosterman_explicit(Modulus(F.f.monic()), s.scale(c_inv), t.scale(c_inv))
    facs = F.factors
    if len(facs) == 1:
        P, j = facs[0]
        return _explicit_prime_power(field, P, j, s, t)
    # Twisted multiplicativity across coprime prime-power factors.
    parts = []
    for P, j, cobar in _twisted_factors(F):
        parts.append(_explicit_prime_power(field, P, j, s * cobar, t * cobar))
    if all(isinstance(x, CycValue) for x in parts):
        out = CycValue.one(field.p)
        for x in parts:
            out = out * x
        return out
    prod = complex(1.0, 0.0)
    for x in parts:
        prod *= x.to_complex() if isinstance(x, CycValue) else x
    return prod


# ---------------------------------------------------------------------------
# Magnitude bounds (exact integers, used by the verification suites)
# ---------------------------------------------------------------------------

def kloosterman_bound_sq(F: Modulus, s: Poly, t: Poly) -> int:
    """Square of the divisor-times-square-root bound for |K_F(s,t)|:
    4^omega(F) * q^(r + deg gcd(s,t,F))."""
    g = gcd_list_monic([s, t, F.f])
    return 4 ** F.omega * F.field.q ** (F.r + g.degree)


def gauss_reduced_bound_sq(F: Modulus, s: Poly, t: Poly) -> int:
    """Square of the unit-restricted Gauss bound with the proof's constant:
    d0(F)^2 * q^(r + deg gcd(s,t,F))."""
    g = gcd_list_monic([s, t, F.f])
    d0 = num_monic_divisors(F.f)
    return d0 * d0 * F.field.q ** (F.r + g.degree)


def ramanujan_bound(F: Modulus, s: Poly) -> int:
    """2 * q^(deg gcd(F, s)), an upper bound for |C_F(s)|."""
    g = gcd_list_monic([F.f, s])
    return 2 * F.field.q ** g.degree


# ---------------------------------------------------------------------------
# The T-sum: sum over deg t < r of K_F(u,t) K_F(v,t) e_F(-a t)
# ---------------------------------------------------------------------------

def t_sum(F: Modulus | CharContext, u: Poly, v: Poly, a: Poly) -> CycValue:
    """Exact triple-product sum, via two Kloosterman tables indexed by t."""
    ctx = _ctx(F)
    if ctx.q**ctx.r > 1 << 16:
        raise InvalidParameter(
            f"T-sum table q^r = {ctx.q**ctx.r} exceeds 2^16; refusing (r log2 q > 16)"
        )
    ui, vi = ctx.index(u), ctx.index(v)
    # Tables built locally per call.
    pu = ctx.packed_lin_units(ui)
    pv = ctx.packed_lin_units(vi)
    k_u: list[CycValue] = []
    k_v: list[CycValue] = []
    for t_idx in range(ctx.n):
        pt = ctx.packed_lin_units_inv(t_idx)
        k_u.append(ctx.cyc_from_hist(ctx.hist_of_packed_sum(pu, pt)))
        if vi == ui:
            k_v.append(k_u[-1])
        else:
            k_v.append(ctx.cyc_from_hist(ctx.hist_of_packed_sum(pv, pt)))
    neg_a_idx = ctx.index(-a)
    psi = ctx.psi
    row = ctx.mul_row(neg_a_idx)
    total = CycValue.zero(ctx.p)
    for t_idx in range(ctx.n):
        total = total + k_u[t_idx] * k_v[t_idx] * CycValue.root(ctx.p, psi[row[t_idx]])
    return total


def t_sum_bound_exponent(F: Modulus, u: Poly, v: Poly, a: Poly) -> float:
    """Exponent E with the bound |T| <= q^E (up to q^(o(r))):
    E = 3r/2 + deg(u-v, a, F/(u,v,F))/2 + deg(u,v,F)/2."""
    g_uvf = gcd_list_monic([u, v, F.f])
    f0 = F.f // g_uvf
    g2 = gcd_list_monic([u - v, a, f0])
    d2 = g2.degree if not g2.is_constant else 0
    return 1.5 * F.r + d2 / 2.0 + g_uvf.degree / 2.0


def t_sum_case_value(F: Modulus | CharContext, u: Poly, v: Poly, a: Poly) -> CycValue | None:
    """For irreducible F, the closed form the T-sum must match:
    q^r * C_F(u-v) when a = 0 mod F, else q^r * (e_F(u b + v b) K_F(u b, v b) - 1)
    with b the inverse of a mod F.  Returns None for composite F."""
    ctx = _ctx(F)
    F_mod = ctx.F
    if not F_mod.is_irreducible:
        return None
    qr = ctx.q**ctx.r
    if F_mod.rep(a).is_zero:
        return ramanujan(ctx, u - v) * qr
    abar = inv_mod(a, F_mod)
    ub, vb = u * abar, v * abar
    phase = CycValue.root(ctx.p, char_exponent(ub + vb, F_mod))
    inner = phase * kloosterman(ctx, ub, vb) - CycValue.one(ctx.p)
    return inner * qr
