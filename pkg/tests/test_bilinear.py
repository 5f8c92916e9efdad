"""Bilinear forms with Kloosterman and Gauss kernels, and the bound checks."""

import cmath
import itertools
import math

import pytest

from ffsums import (
    CycValue,
    FieldSpec,
    HypothesisViolation,
    Interval,
    InvalidParameter,
    InvalidSupport,
    Modulus,
    NotInvertible,
    Poly,
    WeightSeq,
    bg_type1,
    bg_type2_interval,
    bg_type2_set,
    bk_plain,
    bk_type1_interval,
    bk_type1_set,
    e_f,
    energy_inv,
    hyperbola_count,
    inv_mod,
    kloosterman_form_trivial_report,
    make_weights,
    polys_below_degree,
    theorem_check,
)
from ffsums.bilinear import CHECK_NAMES, THEOREM_SPECS

F2 = FieldSpec(2)
F3 = FieldSpec(3)
IRR2 = Modulus(Poly.from_ints(F3, [1, 0, 1]))  # T^2 + 1
IRR3 = Modulus(Poly.from_ints(F3, [1, 2, 0, 1]))  # T^3 + 2T + 1
COMP = Modulus(Poly.from_ints(F3, [0, 1, 1]))  # T (T + 1)
IRR2_F2 = Modulus(Poly.from_ints(F2, [1, 1, 1]))

ONE3 = Poly.one(F3)
T3 = Poly.t(F3)


# ---------------------------------------------------------------------------
# Literal kernel evaluations (term-by-term, via the additive character)
# ---------------------------------------------------------------------------


def units_with_inverses(F):
    for x in polys_below_degree(F.field, F.r):
        if x.is_zero:
            continue
        try:
            yield x, inv_mod(x, F)
        except NotInvertible:
            continue


def literal_k(F, s, t):
    total = CycValue.zero(F.field.p)
    for x, xinv in units_with_inverses(F):
        total = total + e_f(s * x + t * xinv, F)
    return total


def literal_g(F, s, t):
    total = CycValue.zero(F.field.p)
    for x in polys_below_degree(F.field, F.r):
        total = total + e_f(s * x + t * x * x, F)
    return total


# ---------------------------------------------------------------------------
# Weights
# ---------------------------------------------------------------------------


def test_weightseq_validation():
    sup = (ONE3, T3)
    with pytest.raises(InvalidParameter):
        WeightSeq(sup, (1.0 + 0j,))  # length mismatch
    with pytest.raises(InvalidSupport):
        WeightSeq((ONE3, ONE3), (1.0 + 0j, 1.0 + 0j))  # duplicate support


def test_weightseq_norms():
    w = WeightSeq((ONE3, T3, T3 + ONE3), (3 + 4j, -1 + 0j, 0j))
    assert len(w) == 3
    assert w.norm1 == pytest.approx(5.0 + 1.0 + 0.0)
    assert w.norm2 == pytest.approx(math.sqrt(25.0 + 1.0))
    assert w.norm_inf == pytest.approx(5.0)


def test_make_weights_kinds_and_determinism():
    sup = [ONE3, T3, T3 + ONE3, T3 + T3]
    ones = make_weights("ones", sup)
    assert all(v == 1.0 + 0j for v in ones.values)
    unit_a = make_weights("random_unit", sup, seed=7)
    unit_b = make_weights("random_unit", sup, seed=7)
    unit_c = make_weights("random_unit", sup, seed=8)
    assert unit_a.values == unit_b.values
    assert unit_a.values != unit_c.values
    assert all(abs(abs(v) - 1.0) < 1e-12 for v in unit_a.values)
    sign_a = make_weights("random_sign", sup, seed=3)
    sign_b = make_weights("random_sign", sup, seed=3)
    assert sign_a.values == sign_b.values
    assert all(v in (1 + 0j, -1 + 0j) for v in sign_a.values)
    with pytest.raises(InvalidParameter):
        make_weights("gaussian", sup)


# ---------------------------------------------------------------------------
# Plain Kloosterman form
# ---------------------------------------------------------------------------


def intervals_small(field, r):
    return [
        Interval.initial(field, 1),
        Interval.initial(field, min(2, r)),
        Interval(Poly.t(field), 1),
    ]


@pytest.mark.parametrize("F", [IRR2, COMP], ids=repr)
def test_bk_plain_matches_literal_triple_sum(F):
    field = F.field
    for a in (Poly.one(field), Poly.t(field)):
        for Im in intervals_small(field, F.r):
            for In in intervals_small(field, F.r):
                expected = CycValue.zero(field.p)
                for s in Im.polys():
                    for t in In.polys():
                        expected = expected + literal_k(F, s, a * t)
                assert bk_plain(F, a, Im, In) == expected


def test_bk_plain_weighted_matches_literal():
    F = IRR2
    n = 9
    gamma = [cmath.exp(2j * math.pi * (i * 0.37)) * (0.5 + 0.05 * i) / 1.0 for i in range(n)]
    gamma = [g / max(1.0, abs(g)) for g in gamma]
    Im = Interval.initial(F3, 1)
    In = Interval(T3, 1)
    a = T3
    got = bk_plain(F, a, Im, In, gamma)
    expected = 0j
    from ffsums import get_context

    ctx = get_context(F)
    for s in Im.polys():
        for t in In.polys():
            for x, xinv in units_with_inverses(F):
                expected += gamma[ctx.index(x)] * e_f(
                    s * x + a * t * xinv, F
                ).to_complex()
    assert abs(got - expected) < 1e-9


def test_bk_plain_gamma_validation():
    Im = Interval.initial(F3, 1)
    with pytest.raises(InvalidParameter):
        bk_plain(IRR2, ONE3, Im, Im, [1.0] * 4)  # wrong length (needs 9)
    with pytest.raises(InvalidParameter):
        bk_plain(IRR2, ONE3, Im, Im, [2.0] + [0.0] * 8)  # modulus > 1


def test_kloosterman_form_trivial_report():
    Im = Interval.initial(F3, 1)
    rep = kloosterman_form_trivial_report(IRR2, ONE3, Im, Im)
    assert rep.passed
    assert rep.params["check"] == "kloosterman-form-trivial"
    assert rep.lhs == pytest.approx(abs(rep.value))


# ---------------------------------------------------------------------------
# One-weight Kloosterman form
# ---------------------------------------------------------------------------


def test_bk_type1_set_matches_literal():
    F = IRR2
    In = Interval.initial(F3, 1)
    sup = [ONE3, T3, T3 + ONE3]
    alpha = make_weights("random_unit", sup, seed=1)
    got = bk_type1_set(F, ONE3, alpha, In)
    expected = 0j
    for s, w in zip(alpha.support, alpha.values):
        for t in In.polys():
            expected += w * literal_k(F, s, t).to_complex()
    assert abs(got - expected) < 1e-9


def test_bk_type1_interval_requires_subset():
    F = IRR2
    In = Interval.initial(F3, 1)
    inside = make_weights("ones", In.polys())
    outside = make_weights("ones", [T3])
    assert isinstance(bk_type1_interval(F, ONE3, inside, In, In), complex)
    with pytest.raises(InvalidSupport):
        bk_type1_interval(F, ONE3, outside, In, In)


def test_support_collision_mod_f_rejected():
    F = IRR2
    In = Interval.initial(F3, 1)
    alpha = make_weights("ones", [ONE3, ONE3 + F.f])  # distinct polys, same residue
    with pytest.raises(InvalidSupport):
        bk_type1_set(F, ONE3, alpha, In)


# ---------------------------------------------------------------------------
# Gauss-kernel forms
# ---------------------------------------------------------------------------


def test_bg_type1_matches_literal():
    F = IRR2
    In = Interval.initial(F3, 2)
    sup = [ONE3, T3]
    alpha = make_weights("random_sign", sup, seed=2)
    got = bg_type1(F, ONE3, alpha, In)
    expected = 0j
    for s, w in zip(alpha.support, alpha.values):
        for t in In.polys():
            if F.rep(t).is_zero:
                continue
            expected += w * literal_g(F, s, t).to_complex()
    assert abs(got - expected) < 1e-9


def test_bg_type2_matches_literal():
    F = IRR2
    In = Interval.initial(F3, 1)
    alpha = make_weights("random_unit", [ONE3, T3], seed=4)
    beta = make_weights("random_sign", In.polys(), seed=5)
    got = bg_type2_set(F, T3, alpha, beta, In)
    expected = 0j
    for s, w in zip(alpha.support, alpha.values):
        for t, u in zip(beta.support, beta.values):
            if F.rep(t).is_zero:
                continue
            expected += w * u * literal_g(F, s, T3 * t).to_complex()
    assert abs(got - expected) < 1e-9
    # The interval-constrained variant agrees when alpha fits an interval.
    Im = Interval.initial(F3, 1)
    alpha_in = make_weights("random_unit", Im.polys(), seed=4)
    got2 = bg_type2_interval(F, T3, alpha_in, Im, beta, In)
    expected2 = 0j
    for s, w in zip(alpha_in.support, alpha_in.values):
        for t, u in zip(beta.support, beta.values):
            if F.rep(t).is_zero:
                continue
            expected2 += w * u * literal_g(F, s, T3 * t).to_complex()
    assert abs(got2 - expected2) < 1e-9


def test_gauss_form_hypothesis_gates():
    In2 = Interval.initial(F2, 1)
    alpha2 = make_weights("ones", [Poly.one(F2)])
    with pytest.raises(HypothesisViolation):
        bg_type1(IRR2_F2, Poly.one(F2), alpha2, In2)  # even q
    In3 = Interval.initial(F3, 1)
    alpha3 = make_weights("ones", [ONE3])
    with pytest.raises(HypothesisViolation):
        bg_type1(COMP, ONE3, alpha3, In3)  # composite modulus
    with pytest.raises(HypothesisViolation):
        bg_type1(IRR2, Poly.zero(F3), alpha3, In3)  # gcd(a, F) != 1
    beta3 = make_weights("ones", In3.polys())
    with pytest.raises(HypothesisViolation):
        bg_type2_set(COMP, ONE3, alpha3, beta3, In3)
    with pytest.raises(InvalidSupport):
        bg_type2_set(IRR2, ONE3, alpha3, make_weights("ones", [T3 + T3 * T3]), In3)


# ---------------------------------------------------------------------------
# theorem_check
# ---------------------------------------------------------------------------


def std_inputs(F, m, n, seed=0):
    field = F.field
    Im = Interval.initial(field, m)
    In = Interval.initial(field, n)
    alpha = make_weights("random_unit", Im.polys(), seed=seed)
    beta = make_weights("random_unit", In.polys(), seed=seed + 1000)
    return {"Im": Im, "In": In, "alpha": alpha, "beta": beta}


@pytest.mark.parametrize("which", CHECK_NAMES)
def test_theorem_checks_pass_on_standard_points(which):
    for F in (IRR2, IRR3):
        for m in range(1, F.r + 1):
            for n in range(1, F.r + 1):
                inputs = std_inputs(F, m, n)
                kwargs = {k: inputs[k] for k in THEOREM_SPECS[which]}
                rep = theorem_check(F, which, ONE3, **kwargs)
                assert rep.passed, (which, F, m, n)
                assert rep.params["check"] == which
                assert rep.params["field"] == "3"
                assert rep.lhs <= rep.rhs_exact * (1 + 1e-9)


def test_theorem_check_int_alias():
    inputs = std_inputs(IRR2, 1, 1)
    by_int = theorem_check(IRR2, 1, ONE3, Im=inputs["Im"], In=inputs["In"])
    by_name = theorem_check(IRR2, "thm1", ONE3, Im=inputs["Im"], In=inputs["In"])
    assert by_int == by_name


def test_theorem_check_value_powers():
    """lhs is |value|^power with the power implied by each bound."""
    inputs = std_inputs(IRR2, 1, 1)
    powers = {
        "thm1": 1,
        "thm2": 2,
        "thm2-remark": 4,
        "thm3": 2,
        "thm4": 4,
        "thm5": 4,
        "thm6": 8,
    }
    for which, power in powers.items():
        kwargs = {k: inputs[k] for k in THEOREM_SPECS[which]}
        rep = theorem_check(IRR2, which, ONE3, **kwargs)
        assert rep.lhs == pytest.approx(abs(rep.value) ** power, rel=1e-12)


def test_thm1_exact_bound_is_scaled_hyperbola_count():
    m, n = 1, 1
    Im, In = Interval.initial(F3, m), Interval.initial(F3, n)
    rep = theorem_check(IRR2, "thm1", ONE3, Im=Im, In=In)
    r, q = IRR2.r, 3
    count = hyperbola_count(
        IRR2, ONE3, Interval.initial(F3, r - m), Interval.initial(F3, r - n)
    )
    assert rep.rhs_exact == q ** (m + n) * count


def test_thm2_exact_bound_components():
    n = 1
    inputs = std_inputs(IRR2, 1, n)
    alpha = inputs["alpha"]
    rep = theorem_check(IRR2, "thm2", ONE3, alpha=alpha, In=inputs["In"])
    r, q = IRR2.r, 3
    count = hyperbola_count(
        IRR2, ONE3, Interval.initial(F3, r), Interval.initial(F3, r - n)
    )
    assert rep.rhs_exact == pytest.approx(
        q ** (2 * n + r) * alpha.norm2**2 * count, rel=1e-12
    )


def test_thm5_exact_bound_uses_interval_energy():
    inputs = std_inputs(IRR2, 1, 1)
    alpha, beta, In = inputs["alpha"], inputs["beta"], inputs["In"]
    rep = theorem_check(IRR2, "thm5", ONE3, alpha=alpha, beta=beta, In=In)
    q, r = 3, IRR2.r
    energy = energy_inv(IRR2, In)
    assert rep.rhs_exact == pytest.approx(
        2 * q ** (3 * r) * alpha.norm1**2 * alpha.norm2**2 * beta.norm_inf**4 * energy,
        rel=1e-12,
    )


def test_theorem_check_parameter_errors():
    inputs = std_inputs(IRR2, 1, 1)
    with pytest.raises(InvalidParameter):
        theorem_check(IRR2, "thm7", ONE3, Im=inputs["Im"], In=inputs["In"])
    with pytest.raises(InvalidParameter):
        theorem_check(IRR2, "bogus", ONE3)
    with pytest.raises(InvalidParameter):
        theorem_check(IRR2, "thm1", ONE3, Im=inputs["Im"])  # missing In
    with pytest.raises(InvalidParameter):
        theorem_check(IRR2, "thm2", ONE3, In=inputs["In"])  # missing alpha
    with pytest.raises(InvalidParameter):
        theorem_check(IRR2, "thm5", ONE3, alpha=inputs["alpha"], In=inputs["In"])
    with pytest.raises(InvalidParameter):
        theorem_check(IRR2, "thm6", ONE3, alpha=inputs["alpha"], beta=inputs["beta"], In=inputs["In"])


def test_theorem_check_hypothesis_gates():
    inputs = std_inputs(IRR2, 1, 1)
    zero_interval = Interval.initial(F3, 0)
    with pytest.raises(HypothesisViolation):
        theorem_check(
            IRR2, "thm2", ONE3, alpha=inputs["alpha"], In=zero_interval
        )
    with pytest.raises(HypothesisViolation):
        theorem_check(
            IRR2,
            "thm3",
            ONE3,
            alpha=inputs["alpha"],
            Im=zero_interval,
            In=inputs["In"],
        )
    # thm2-remark needs an irreducible modulus and a coprime twist.
    comp_inputs = std_inputs(COMP, 1, 1)
    with pytest.raises(HypothesisViolation):
        theorem_check(
            COMP, "thm2-remark", ONE3, alpha=comp_inputs["alpha"], In=comp_inputs["In"]
        )
    with pytest.raises(HypothesisViolation):
        theorem_check(
            IRR2, "thm2-remark", Poly.zero(F3), alpha=inputs["alpha"], In=inputs["In"]
        )
    # Gauss-kernel checks propagate their gates.
    with pytest.raises(HypothesisViolation):
        theorem_check(
            COMP, "thm4", ONE3, alpha=comp_inputs["alpha"], In=comp_inputs["In"]
        )
    # thm3 needs the averaged count to be meaningful: deg gcd(a, F) <= r - n.
    with pytest.raises(HypothesisViolation):
        theorem_check(
            COMP,
            "thm3",
            COMP.f,
            alpha=comp_inputs["alpha"],
            Im=comp_inputs["Im"],
            In=comp_inputs["In"],
        )


def test_theorem_check_composite_points():
    """thm1..thm3 accept composite moduli (with coprime twists for thm3)."""
    inputs = std_inputs(COMP, 1, 1)
    rep1 = theorem_check(COMP, "thm1", ONE3, Im=inputs["Im"], In=inputs["In"])
    rep2 = theorem_check(COMP, "thm2", ONE3, alpha=inputs["alpha"], In=inputs["In"])
    rep3 = theorem_check(
        COMP, "thm3", ONE3, alpha=inputs["alpha"], Im=inputs["Im"], In=inputs["In"]
    )
    for rep in (rep1, rep2, rep3):
        assert rep.passed


def test_theorem_check_extra_params_merge():
    inputs = std_inputs(IRR2, 1, 1)
    rep = theorem_check(
        IRR2,
        "thm1",
        ONE3,
        Im=inputs["Im"],
        In=inputs["In"],
        extra_params={"weights": "ones", "seed": 0},
    )
    assert rep.params["weights"] == "ones"
    assert rep.params["seed"] == 0
