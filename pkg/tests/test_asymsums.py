import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stieltjes0.asymsums import (
    PhiSumResult,
    asym_terms,
    fit_exponent,
    phi,
    phi_sum_asym,
    phi_sum_direct,
    phi_sum_result,
    psi_sum_lhs,
    psi_sum_rhs,
    stirling_remainder,
)
from stieltjes0.digamma import psi_ref
from stieltjes0.numkernel import DomainError, bernoulli_number, zeta_value

# mpmath nsum of psi(z) - ln z + 1/(2z) + 1/(12 z^2) over z = alpha n + beta, 40 digits
LHS = {(1, 0): 0.006747138150112558229, (1, 1): 0.00062946971831208550214,
       (2, 1): 0.00011712046624102484409, (0.5, 0.5): 0.0084365767103413493289,
       (3, 0): 0.00010634988980519471044, (1, 10): 2.38264374473532394e-6}
PHI_SUM_10 = -0.001369880448989205478
PHI_03 = -0.63188475120753032968


@pytest.mark.parametrize("pair", list(LHS))
def test_identity(pair):
    a, b = pair
    lhs = psi_sum_lhs(a, b).value
    rhs = psi_sum_rhs(a, b).value
    assert abs(lhs - rhs) <= 1e-7
    assert lhs == pytest.approx(LHS[pair], abs=1e-15)
    assert rhs == pytest.approx(LHS[pair], abs=1e-15)


def test_large_shift_is_small():
    assert abs(psi_sum_lhs(1, 10).value) <= 1e-4


def test_domain():
    with pytest.raises(DomainError):
        psi_sum_lhs(0.0, 1.0)
    with pytest.raises(DomainError):
        psi_sum_rhs(1.0, -0.5)
    with pytest.raises(DomainError):
        phi_sum_asym(2.0, 1)
    with pytest.raises(DomainError):
        phi_sum_asym(8.0, 6)
    with pytest.raises(DomainError):
        phi(0.0)


def test_lhs_terms_follow_bernoulli_expansion():
    # term ~ -B_4/(4 z^4) + ... = 1/(120 z^4) - 1/(252 z^6) + ...; positive
    for n in range(20, 200, 7):
        z = float(n)
        pred = -sum(bernoulli_number(2 * k) / (2 * k) * z ** (-2 * k) for k in range(2, 8))
        assert stirling_remainder(z, 1) == pytest.approx(pred, rel=1e-12)
        assert stirling_remainder(z, 1) > 0


@settings(max_examples=50)
@given(st.floats(0.5, 40), st.integers(0, 2))
def test_stirling_remainder_matches_psi(z, drop):
    direct = psi_ref(z) - math.log(z) + 0.5 / z + sum(
        bernoulli_number(2 * k) / (2 * k * z ** (2 * k)) for k in range(1, drop + 1))
    assert stirling_remainder(z, drop) == pytest.approx(direct, abs=1e-12)


def test_phi():
    assert phi(0.3) == pytest.approx(PHI_03, abs=1e-13)
    for x in (1.0, 2.5, 17.0):
        assert phi(x) == pytest.approx(psi_ref(x) + 0.5 / x - math.log(x), abs=1e-14)


def test_phi_sum_direct():
    assert phi_sum_direct(10.0).value == pytest.approx(PHI_SUM_10, abs=1e-14)


def test_asym_terms_conventions():
    a = 16.0
    t_int = asym_terms(a, 0.0, 1, "integer")[0]
    t_printed = asym_terms(a, 0.0, 1, "printed")[0]
    assert t_int == pytest.approx(-a ** -2 * bernoulli_number(2) / 2 * zeta_value(2), rel=1e-14)
    assert t_printed == pytest.approx(-a ** -1.5 * bernoulli_number(2) / 2 * zeta_value(2), rel=1e-14)


def test_fitted_exponents_are_even_integers():
    for K, expected in ((0, 2.0), (1, 4.0), (2, 6.0)):
        assert fit_exponent(K) == pytest.approx(expected, abs=0.05)


def test_asymptotic_improvement_at_32():
    partial, direct = phi_sum_asym(32.0, 1)
    assert abs(direct - partial[0]) * 10 <= abs(direct)
    # the half-integer convention makes the first term worse than nothing
    printed, _ = phi_sum_asym(32.0, 1, convention="printed")
    assert abs(direct - printed[0]) > abs(direct)


def test_error_scaling_bounded():
    # (error after K terms) * alpha^(2K+2) stays within a narrow band
    for K in (1, 2):
        scaled = []
        for a in (8.0, 16.0, 32.0):
            partial, direct = phi_sum_asym(a, K)
            scaled.append(abs(direct - partial[-1]) * a ** (2 * K + 2))
        assert max(scaled) / min(scaled) < 1.2


def test_phi_sum_result():
    r = phi_sum_result(8.0, 0.0, K=3)
    assert isinstance(r, PhiSumResult)
    assert len(r.asym_partial) == 3
    assert abs(r.lhs_sum.value - r.rhs_integral.value) < 1e-12
    with pytest.raises(ValueError):
        PhiSumResult(1.0, 0.0, r.lhs_sum, r.rhs_integral, [0.0] * 7)
