"""Polynomial arithmetic, gcd machinery, factorization, and text formats."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffsums import (
    DivisionByZero,
    FieldSpec,
    InvalidParameter,
    Modulus,
    NotInvertible,
    Poly,
    UnsupportedCharacteristic,
    ext_gcd,
    factor,
    format_poly,
    gcd_list_monic,
    gcd_monic,
    inv_mod,
    irreducible_monic_polys,
    is_irreducible,
    jacobi_symbol,
    mobius_q,
    monic_divisors,
    monic_polys_of_degree,
    num_monic_divisors,
    omega,
    parse_poly,
    poly_from_index,
    poly_index,
    polys_below_degree,
    pretty,
)
from ffsums.errors import UndefinedGcd

F2 = FieldSpec(2)
F3 = FieldSpec(3)
F5 = FieldSpec(5)
F9 = FieldSpec(3, 2)
ALL_FIELDS = (F2, F3, F5, F9)


def poly_strategy(field, max_deg=4):
    return st.lists(
        st.integers(0, field.q - 1), min_size=0, max_size=max_deg + 1
    ).map(lambda idxs: Poly.make(field, [field.elements[i] for i in idxs]))


@st.composite
def field_polys(draw, count, max_deg=4):
    field = draw(st.sampled_from(ALL_FIELDS))
    return tuple(draw(poly_strategy(field, max_deg)) for _ in range(count))


# ---------------------------------------------------------------------------
# Ring structure
# ---------------------------------------------------------------------------


@given(field_polys(3))
def test_ring_axioms(polys):
    a, b, c = polys
    field = a.field
    zero, one = Poly.zero(field), Poly.one(field)
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a + zero == a
    assert a + (-a) == zero
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * one == a
    assert a * (b + c) == a * b + a * c


@given(field_polys(2))
def test_degree_and_lead_multiplicative(polys):
    a, b = polys
    prod = a * b
    if a.is_zero or b.is_zero:
        assert prod.is_zero
    else:
        assert prod.degree == a.degree + b.degree
        assert prod.lead == a.lead * b.lead


@given(field_polys(2))
def test_divmod_invariant(polys):
    a, b = polys
    if b.is_zero:
        with pytest.raises(DivisionByZero):
            divmod(a, b)
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero or r.degree < b.degree
    assert a // b == q
    assert a % b == r


def test_divmod_exhaustive_small():
    field = F3
    for a in polys_below_degree(field, 3):
        for b in polys_below_degree(field, 3):
            if b.is_zero:
                continue
            q, r = divmod(a, b)
            assert q * b + r == a
            assert r.is_zero or r.degree < b.degree


@given(field_polys(1), st.integers(0, 5))
def test_pow_matches_repeated_multiplication(polys, n):
    (a,) = polys
    expected = Poly.one(a.field)
    for _ in range(n):
        expected = expected * a
    assert a**n == expected


def test_negative_power_rejected():
    with pytest.raises(InvalidParameter):
        Poly.t(F3) ** -1


@given(field_polys(1), st.integers(0, 4))
def test_shift_is_multiplication_by_power_of_t(polys, k):
    (a,) = polys
    assert a.shift(k) == a * Poly.t(a.field) ** k


@given(field_polys(1))
def test_scale_matches_constant_multiplication(polys):
    (a,) = polys
    field = a.field
    for c in field.elements:
        assert a.scale(c) == Poly.constant(field, c) * a


@given(field_polys(1))
def test_monic_normalization(polys):
    (a,) = polys
    if a.is_zero:
        with pytest.raises(DivisionByZero):
            a.monic()
        return
    m = a.monic()
    assert m.is_monic
    assert m.scale(a.lead) == a


def test_coeff_out_of_range_is_zero():
    f = Poly.from_ints(F3, [1, 2])
    assert f.coeff(0) is F3.one
    assert f.coeff(5) is F3.zero
    assert f.coeff(-1) is F3.zero


# ---------------------------------------------------------------------------
# Enumeration and indexing
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("field", ALL_FIELDS, ids=lambda f: f.format_spec())
def test_poly_index_round_trip(field):
    m = 3
    seen = set()
    for n in range(field.q**m):
        f = poly_from_index(field, n, m)
        assert f.is_zero or f.degree < m
        assert poly_index(f, m) == n
        seen.add(f)
    assert len(seen) == field.q**m


def test_polys_below_degree_matches_indexing():
    got = list(polys_below_degree(F3, 2))
    assert got == [poly_from_index(F3, n, 2) for n in range(9)]


@pytest.mark.parametrize("field,d", [(F2, 3), (F3, 2), (F5, 2), (F9, 1)])
def test_monic_enumeration_complete(field, d):
    got = list(monic_polys_of_degree(field, d))
    assert len(got) == field.q**d
    assert len(set(got)) == field.q**d
    for f in got:
        assert f.is_monic and f.degree == d


@pytest.mark.parametrize("field,d", [(F2, 4), (F3, 3), (F5, 2)])
def test_irreducibles_match_literal_divisor_check(field, d):
    """Membership in the irreducible enumeration must agree with a direct
    search for proper monic divisors."""
    enumerated = set(irreducible_monic_polys(field, d))
    for f in monic_polys_of_degree(field, d):
        has_proper_divisor = any(
            (f % g).is_zero
            for e in range(1, d)
            for g in monic_polys_of_degree(field, e)
        )
        assert (f in enumerated) == (not has_proper_divisor)
        assert is_irreducible(f) == (not has_proper_divisor)


@pytest.mark.parametrize("field,n", [(F2, 4), (F3, 3), (F5, 2)])
def test_irreducible_counts_satisfy_degree_identity(field, n):
    """sum over d | n of d * (#monic irreducibles of degree d) equals q^n."""
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += d * sum(1 for _ in irreducible_monic_polys(field, d))
    assert total == field.q**n


# ---------------------------------------------------------------------------
# gcd / extended gcd / inverse
# ---------------------------------------------------------------------------


def _divides(g, a):
    return a.is_zero or (a % g).is_zero


def test_gcd_exhaustive_small():
    field = F3
    pool = list(polys_below_degree(field, 3))
    for a in pool:
        for b in pool:
            if a.is_zero and b.is_zero:
                with pytest.raises(UndefinedGcd):
                    gcd_monic(a, b)
                continue
            g = gcd_monic(a, b)
            assert g.is_monic
            assert _divides(g, a) and _divides(g, b)
            # Any common divisor divides the gcd.
            for e in range(0, g.degree + 1):
                for cand in monic_polys_of_degree(field, e):
                    if _divides(cand, a) and _divides(cand, b):
                        assert _divides(cand, g)


@given(field_polys(2))
def test_ext_gcd_bezout(polys):
    a, b = polys
    if a.is_zero and b.is_zero:
        with pytest.raises(UndefinedGcd):
            ext_gcd(a, b)
        return
    g, u, v = ext_gcd(a, b)
    assert u * a + v * b == g
    assert g == gcd_monic(a, b)


def test_gcd_list():
    t = Poly.t(F3)
    a = t * (t + Poly.one(F3))
    b = t * t
    c = t.scale(F3.from_int(2))
    assert gcd_list_monic([a, b, c]) == t
    assert gcd_list_monic([Poly.zero(F3), a]) == a.monic()
    with pytest.raises(UndefinedGcd):
        gcd_list_monic([Poly.zero(F3), Poly.zero(F3)])


@pytest.mark.parametrize(
    "field,mod_ints",
    [(F3, [1, 0, 1]), (F3, [0, 1, 1]), (F5, [2, 1]), (F2, [1, 1, 1])],
    ids=str,
)
def test_inv_mod_exhaustive(field, mod_ints):
    F = Modulus(Poly.from_ints(field, mod_ints))
    for x in polys_below_degree(field, F.r):
        g = None if x.is_zero else gcd_monic(x, F.f)
        if x.is_zero or g.degree != 0:
            with pytest.raises(NotInvertible) as err:
                inv_mod(x, F)
            expected_gcd = F.f.monic() if x.is_zero else g
            assert err.value.gcd == expected_gcd
        else:
            inv = inv_mod(x, F)
            assert F.rep(inv * x) == Poly.one(field)
            assert inv.is_zero or inv.degree < F.r


# ---------------------------------------------------------------------------
# Modulus bookkeeping
# ---------------------------------------------------------------------------


def test_modulus_basic_properties():
    t = Poly.t(F3)
    f = (t + Poly.one(F3)) * t * t
    M = Modulus(f)
    assert M.r == 3
    assert M.f == f
    assert not M.is_irreducible
    assert M.omega == 2
    assert M.factors == factor(f)
    x = t**5 + Poly.one(F3)
    rep = M.rep(x)
    assert M.rep(rep) == rep
    assert (x - rep) % f == Poly.zero(F3)
    assert rep.degree < M.r


def test_modulus_rejects_constant():
    with pytest.raises(InvalidParameter):
        Modulus(Poly.one(F3))
    with pytest.raises(InvalidParameter):
        Modulus(Poly.zero(F3))


def test_modulus_irreducible_flag():
    assert Modulus(Poly.from_ints(F3, [1, 0, 1])).is_irreducible
    assert not Modulus(Poly.from_ints(F3, [0, 1, 1])).is_irreducible


# ---------------------------------------------------------------------------
# Factorization and multiplicative functions
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("field,max_deg", [(F2, 5), (F3, 4), (F5, 3)])
def test_factor_reconstruction_and_irreducibility(field, max_deg):
    for d in range(1, max_deg + 1):
        for f in monic_polys_of_degree(field, d):
            facs = factor(f)
            rebuilt = Poly.constant(field, f.lead)
            for prime, mult in facs:
                assert prime.is_monic and is_irreducible(prime)
                assert mult >= 1
                rebuilt = rebuilt * prime**mult
            assert rebuilt == f
            # Canonical order: sorted by (degree, index).
            keys = [p.sort_key() for p, _ in facs]
            assert keys == sorted(keys)
            assert len(set(keys)) == len(keys)


def test_factor_nonmonic_keeps_lead():
    t = Poly.t(F5)
    f = (t * t + Poly.one(F5)).scale(F5.from_int(3))
    facs = factor(f)
    rebuilt = Poly.constant(F5, f.lead)
    for prime, mult in facs:
        rebuilt = rebuilt * prime**mult
    assert rebuilt == f


def test_factor_zero_rejected():
    with pytest.raises(InvalidParameter):
        factor(Poly.zero(F3))


def test_divisors_and_counting_functions():
    field = F3
    for d in range(0, 4):
        for f in monic_polys_of_degree(field, d):
            divs = monic_divisors(f)
            # Literal divisor search over all monic candidates up to deg f.
            literal = [
                g
                for e in range(0, d + 1)
                for g in monic_polys_of_degree(field, e)
                if (f % g).is_zero
            ]
            assert sorted(divs, key=Poly.sort_key) == sorted(
                literal, key=Poly.sort_key
            )
            assert len(divs) == len(set(divs)) == num_monic_divisors(f)
            assert omega(f) == sum(
                1 for g in literal if g.degree == 0 or is_irreducible(g)
            ) - 1  # literal count of irreducible divisors (drop the unit)


def test_mobius_values_and_inversion():
    field = F3
    t = Poly.t(field)
    one = Poly.one(field)
    assert mobius_q(one) == 1
    assert mobius_q(t) == -1
    assert mobius_q(t * (t + one)) == 1
    assert mobius_q(t * t) == 0
    with pytest.raises(InvalidParameter):
        mobius_q(Poly.zero(field))
    # sum of mobius over monic divisors vanishes beyond degree zero.
    for d in range(1, 4):
        for f in monic_polys_of_degree(field, d):
            assert sum(mobius_q(g) for g in monic_divisors(f)) == 0


# ---------------------------------------------------------------------------
# Quadratic-residue symbol
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("mod_ints", [[1, 0, 1], [1, 1]], ids=str)
def test_jacobi_matches_square_enumeration(mod_ints):
    """Against an irreducible modulus the symbol is 1 exactly on nonzero
    squares, -1 on non-squares, 0 on multiples."""
    F = Modulus(Poly.from_ints(F3, mod_ints))
    squares = {F.rep(x * x) for x in polys_below_degree(F3, F.r) if not x.is_zero}
    for x in polys_below_degree(F3, F.r):
        sym = jacobi_symbol(x, F)
        if x.is_zero:
            assert sym == 0
        elif F.rep(x) in squares:
            assert sym == 1
        else:
            assert sym == -1


def test_jacobi_multiplicative_in_numerator():
    F = Modulus(Poly.from_ints(F5, [1, 0, 0, 1]))
    pool = list(polys_below_degree(F5, 2))
    for a, b in itertools.product(pool, repeat=2):
        assert jacobi_symbol(a * b, F) == jacobi_symbol(a, F) * jacobi_symbol(b, F)


def test_jacobi_composite_is_factor_product():
    t = Poly.t(F3)
    one = Poly.one(F3)
    F = Modulus(t * (t + one))
    P1, P2 = Modulus(t), Modulus(t + one)
    for x in polys_below_degree(F3, 3):
        assert jacobi_symbol(x, F) == jacobi_symbol(x, P1) * jacobi_symbol(x, P2)


def test_jacobi_constant_matches_field_character():
    """For a constant c and irreducible modulus of degree r the symbol equals
    the field quadratic character raised to r."""
    for field, mod_ints in [(F3, [1, 0, 1]), (F3, [1, 2, 0, 1]), (F5, [2, 1])]:
        F = Modulus(Poly.from_ints(field, mod_ints))
        for c in field.elements:
            expected = field.quad_char(c) ** F.r if not c.is_zero else 0
            assert jacobi_symbol(Poly.constant(field, c), F) == expected


def test_jacobi_even_characteristic_rejected():
    F = Modulus(Poly.from_ints(F2, [1, 1, 1]))
    with pytest.raises(UnsupportedCharacteristic):
        jacobi_symbol(Poly.one(F2), F)


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("field", ALL_FIELDS, ids=lambda f: f.format_spec())
def test_format_parse_round_trip(field):
    for f in polys_below_degree(field, 3):
        assert parse_poly(field, format_poly(f)) == f


def test_format_examples():
    assert format_poly(Poly.zero(F3)) == "0"
    assert format_poly(Poly.from_ints(F3, [1, 0, 1])) == "1,0,1"
    assert format_poly(Poly.from_ints(F9, [1, 2])) == "1.0,2.0"


def test_parse_poly_rejects_junk():
    assert parse_poly(F3, "") == Poly.zero(F3)  # empty text means zero
    for text in ("1,,2", "x", "1;2"):
        with pytest.raises(InvalidParameter):
            parse_poly(F3, text)


def test_pretty_is_readable():
    t = Poly.t(F3)
    s = pretty(t * t + Poly.from_ints(F3, [2]))
    assert "T" in s and "2" in s
    assert pretty(Poly.zero(F3)) == "0"
