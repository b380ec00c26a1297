import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stieltjes0.digamma import (
    K_STABLE,
    RationalArg,
    RepDigamma,
    binomial_log_term,
    exp_gamma0_product,
    fourier_terms,
    gamma0_half_integer,
    gamma0_hypergeometric,
    gamma0_rep,
    multiplication_residual,
    psi_rational,
    psi_ref,
    psi_rep,
)
from stieltjes0.numkernel import DEFAULT_CTRL, EULER_GAMMA, DomainError, ci

LN2 = math.log(2.0)

# mpmath digamma at 30 digits
PSI = {0.25: -4.2274535333762654081, 0.7: -1.2200235536979346147,
       3.7: 1.1671535393615113859, 10.0: 2.2517525890667211076}

GRID = (0.25, 0.5, 1.0, 1.5, 2.0, 3.7, 10.0)
TOL = {
    RepDigamma.LIMIT_SUM: 1e-2,
    RepDigamma.BINOMIAL_LOG: 1e-8,
    RepDigamma.U_INTEGRAL: 1e-8,
    RepDigamma.DOUBLE_INTEGRAL: 1e-7,
    RepDigamma.INV_BINOM_SERIES: 1e-7,
    RepDigamma.EXP_INTEGRAL: 1e-8,
    RepDigamma.FOURIER_CI_SI: 1e-6,
}
CTRL = {
    RepDigamma.LIMIT_SUM: DEFAULT_CTRL.replace(max_terms=100000),
    RepDigamma.BINOMIAL_LOG: DEFAULT_CTRL.replace(max_terms=25),
}


def ctrl_for(rep):
    return CTRL.get(rep, DEFAULT_CTRL)


def test_psi_ref_examples():
    assert psi_ref(1.0) == pytest.approx(-EULER_GAMMA, abs=1e-15)
    assert psi_ref(0.5) == pytest.approx(-EULER_GAMMA - 2 * LN2, abs=1e-14)
    assert psi_ref(2.0) == pytest.approx(1 - EULER_GAMMA, abs=1e-15)
    for a, v in PSI.items():
        assert psi_ref(a) == pytest.approx(v, abs=1e-13)


def test_psi_ref_domain():
    for a in (0.0, -1.0, math.inf, math.nan):
        with pytest.raises(DomainError):
            psi_ref(a)


@pytest.mark.parametrize("rep", list(RepDigamma))
def test_cross_representation(rep):
    for a in GRID:
        r = psi_rep(a, rep, ctrl_for(rep))
        assert abs(r.value - psi_ref(a)) <= TOL[rep], (rep, a)


@pytest.mark.parametrize("rep", list(RepDigamma))
def test_half_is_special_value(rep):
    assert psi_rep(0.5, rep, ctrl_for(rep)).value == pytest.approx(-EULER_GAMMA - 2 * LN2, abs=TOL[rep])


def test_u_integral_at_one():
    assert psi_rep(1.0, RepDigamma.U_INTEGRAL).value == pytest.approx(-0.5772156649, abs=1e-9)


def test_fourier_at_one_is_ci_sum():
    # 1 - gamma = 1/2 + 2 sum Ci(2 pi j): at a = 1 each summand is 2 Ci(2 pi j)
    t = fourier_terms(1.0, 5)
    assert np.allclose(t, [2 * ci(2 * math.pi * j) for j in range(1, 6)], atol=1e-15)
    assert psi_rep(1.0, RepDigamma.FOURIER_CI_SI).value == pytest.approx(-EULER_GAMMA, abs=1e-12)


@pytest.mark.parametrize("rep", list(RepDigamma))
def test_recurrence(rep):
    for a in (0.3, 1.0, 2.5):
        c = ctrl_for(rep)
        d = psi_rep(a + 1, rep, c).value - psi_rep(a, rep, c).value
        assert d == pytest.approx(1 / a, abs=2 * TOL[rep])


def test_gamma0_is_minus_psi():
    r = gamma0_rep(0.7, RepDigamma.EXP_INTEGRAL)
    assert r.value == pytest.approx(-PSI[0.7], abs=1e-12)


def test_rep_domain_error():
    with pytest.raises(DomainError):
        psi_rep(-0.5, RepDigamma.U_INTEGRAL)


def test_limit_sum_first_order():
    # error roughly halves when N doubles
    e1 = abs(psi_rep(1.0, RepDigamma.LIMIT_SUM, DEFAULT_CTRL.replace(max_terms=1000)).value + EULER_GAMMA)
    e2 = abs(psi_rep(1.0, RepDigamma.LIMIT_SUM, DEFAULT_CTRL.replace(max_terms=2000)).value + EULER_GAMMA)
    assert 1.8 < e1 / e2 < 2.2


def test_binomial_log_raw_partial_sums_improve():
    raw = [abs(psi_rep(a, RepDigamma.BINOMIAL_LOG,
                       DEFAULT_CTRL.replace(max_terms=K, tail_order=0)).value - psi_ref(a))
           for a in (1.0,) for K in (10, 15, 20, 25)]
    assert all(x > y for x, y in zip(raw, raw[1:]))


def test_binomial_log_terms_monotone_at_one():
    # each summand is minus a positive integral, so -psi estimates move one way
    terms = [binomial_log_term(k, 1.0)[0] for k in range(1, 21)]
    assert all(t < 0 for t in terms)
    partial = np.cumsum([-math.log(1.0)] + [-t for t in terms])
    assert np.all(np.diff(partial) > 0)


def test_binomial_log_terms_either_side_of_switch():
    # mpmath at 60 digits; k <= K_STABLE uses the difference, above it the integral
    ref = {20: -0.00027407370052277901055, 21: -0.00024238925529342743167,
           30: -0.000098682950792611014937}
    assert K_STABLE == 20
    for k, v in ref.items():
        assert binomial_log_term(k, 1.3)[0] == pytest.approx(v, abs=1e-12)


def test_fourier_terms_decay_like_inverse_square():
    j = np.arange(10, 1001)
    t = fourier_terms(0.37, 1000)[9:]
    C = np.max(np.abs(t) * j ** 2)
    # summands behave like -2/(2 pi j a)^2
    assert C == pytest.approx(1 / (2 * math.pi ** 2 * 0.37 ** 2), rel=0.05)
    assert np.all(np.abs(t) <= C / j ** 2 + 1e-18)


# --- Gauss rational arguments

def test_psi_rational_examples():
    assert psi_rational((1, 4)) == pytest.approx(-EULER_GAMMA - math.pi / 2 - 3 * LN2, abs=1e-13)
    assert psi_rational((3, 4)) == pytest.approx(-EULER_GAMMA + math.pi / 2 - 3 * LN2, abs=1e-13)
    assert psi_rational((1, 2)) == pytest.approx(-EULER_GAMMA - 2 * LN2, abs=1e-13)
    assert psi_rational((1, 4)) - psi_rational((3, 4)) == pytest.approx(-math.pi, abs=1e-13)


def test_psi_rational_all_small_denominators():
    for q in range(2, 13):
        for p in range(1, q):
            if math.gcd(p, q) == 1:
                assert psi_rational(RationalArg(p, q)) == pytest.approx(psi_ref(p / q), abs=1e-12)


def test_rational_arg_invariants():
    for p, q in ((0, 3), (3, 3), (2, 4), (5, 3)):
        with pytest.raises(DomainError):
            RationalArg(p, q)


# --- special values, products, multiplication

def test_gamma0_half_integers():
    for n in range(1, 6):
        assert gamma0_half_integer(n) == pytest.approx(-psi_ref(n + 0.5), abs=1e-12)
    assert gamma0_half_integer(0) == pytest.approx(EULER_GAMMA + 2 * LN2, abs=1e-15)


def test_exp_gamma0_product_converges():
    target = math.exp(EULER_GAMMA)
    res = [abs(exp_gamma0_product(1.0, K).value - target) for K in (5, 10, 20, 40)]
    assert all(x > y for x, y in zip(res, res[1:]))
    half = [abs(exp_gamma0_product(0.5, K).value - 4 * target) for K in (5, 20)]
    assert half[1] < half[0]


def test_exp_gamma0_product_single_term():
    a = 0.8
    # k = 1: (1/2)(ln a - ln(1+a))
    expected = -math.log(a) - 0.5 * (math.log(a) - math.log(1 + a))
    assert math.log(exp_gamma0_product(a, 1).value) == pytest.approx(expected, abs=1e-15)


def test_multiplication_residual():
    assert multiplication_residual(0.9, 1) == 0.0
    assert abs(multiplication_residual(0.7, 3, RepDigamma.U_INTEGRAL)) <= 1e-8
    assert abs(multiplication_residual(0.5, 2)) <= 1e-10


@settings(max_examples=30, deadline=None)
@given(st.floats(0.05, 20), st.integers(1, 6))
def test_multiplication_property(a, m):
    assert abs(multiplication_residual(a, m)) <= 1e-11 * (1 + abs(psi_ref(m * a)))


@settings(max_examples=50)
@given(st.floats(0.01, 50))
def test_psi_ref_recurrence_property(a):
    assert psi_ref(a + 1) - psi_ref(a) == pytest.approx(1 / a, rel=1e-12, abs=1e-13)


def test_hypergeometric_prefactor_verdict():
    # only the single (t+a)(t+a+1) prefactor reproduces gamma_0
    single = gamma0_hypergeometric(1.0, "single").value
    squared = gamma0_hypergeometric(1.0, "squared").value
    assert single == pytest.approx(EULER_GAMMA, abs=1e-5)
    assert abs(squared - EULER_GAMMA) > 1e-2
