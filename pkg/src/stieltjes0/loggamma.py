"""ln Gamma(a): series, Binet-type integrals, a Fourier form and a product."""

from __future__ import annotations

import enum
import math

import numpy as np

from .digamma import K_STABLE, _check_a, _ln_pair, binomial_remainder_kernel
from .numkernel import (
    BERNOULLI,
    DEFAULT_CTRL,
    LN_2PI,
    Ctrl,
    DomainError,
    EvalResult,
    IdentityReport,
    _result,
    aux_tail,
    bernoulli_gen_remainder,
    cisi,
    cisi_pi_multiple,
    comp_sum,
    quad_de,
    quad_de_unit_square,
)

_REF_SHIFT = 16.0
_REF_TERMS = 8
LOG_GAMMA_QUARTER_TOL = 1e-7


class RepLogGamma(enum.Enum):
    BINOMIAL_SERIES = "binomial-series"
    BINET1 = "binet1"
    BINET2 = "binet2"
    DOUBLE_INTEGRAL = "double-integral"
    FOURIER_CI_SI = "fourier-ci-si"


def lngamma_ref(a: float) -> float:
    """ln Gamma(a) by recurrence to a+m >= 16 and the Stirling series."""
    _check_a(a)
    m = max(0, math.ceil(_REF_SHIFT - a))
    z = a + m
    acc = 0.0
    for k in range(1, _REF_TERMS + 1):
        acc += BERNOULLI.numbers[2 * k] / ((2 * k) * (2 * k - 1) * z ** (2 * k - 1))
    stirling = (z - 0.5) * math.log(z) - z + 0.5 * LN_2PI + acc
    return stirling - math.fsum(math.log(a + j) for j in range(m))


def _leading(a):
    # a(ln a - 1) + 1
    return a * (math.log(a) - 1.0) + 1.0


# ---------------------------------------------------------------------------
# binomial series and product

def _xlogx(x):
    return x * math.log(x) if x > 0 else 0.0


def xlogx_term(k: int, a: float, ctrl: Ctrl = DEFAULT_CTRL) -> tuple:
    """(1/(k+1)) sum_l (-1)^l C(k,l) [(l+a)ln(l+a) - (l+1)ln(l+1)], with nodes used.

    For k > K_STABLE the difference is int_0^1 (u^{a-1} - 1)(1-u)^k / ln^2 u du,
    since the k-th difference removes the affine part of x ln x.
    """
    if k <= K_STABLE:
        terms = [(-1) ** l * math.comb(k, l) * (_xlogx(l + a) - _xlogx(l + 1.0))
                 for l in range(k + 1)]
        return comp_sum(terms) / (k + 1), 0

    def f(u):
        L = np.log(u)
        return np.expm1((a - 1.0) * L) * np.exp(k * np.log1p(-u)) / (L * L)

    r = quad_de(f, 0.0, 1.0, ctrl.replace(target_tol=min(ctrl.target_tol, 1e-14)))
    return r.value / (k + 1), r.nodes_used


def _xlogx_remainder(a, K, ctrl):
    def f(u):
        L = np.log(u)
        return np.expm1((a - 1.0) * L) / (L * L) * binomial_remainder_kernel(u, K)
    return quad_de(f, 0.0, 1.0, ctrl)


def _binomial_series(a, ctrl):
    K = ctrl.max_terms
    terms = []
    nodes = 0
    for k in range(1, K + 1):
        t, nd = xlogx_term(k, a, ctrl)
        terms.append(t)
        nodes += nd
    val = _leading(a) + comp_sum(terms)
    if ctrl.tail_order > 0:
        rem = _xlogx_remainder(a, K, ctrl)
        return _result(val + rem.value, rem.err_est, ctrl, terms=K,
                       nodes=nodes + rem.nodes_used, converged=rem.converged)
    return _result(val, abs(terms[-1]) * K, ctrl, terms=K, nodes=nodes)


def gamma_product(a: float, K: int, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """Partial product over k <= K for Gamma(a), accumulated as a log-sum."""
    _check_a(a)
    if K < 1:
        raise DomainError("K must be >= 1")
    logs = [1.0 - a + a * math.log(a)]
    for k in range(1, K + 1):
        logs.append(xlogx_term(k, a, ctrl)[0])
    value = math.exp(comp_sum(logs))
    return _result(value, value * abs(logs[-1]) * K, ctrl, terms=K)


# ---------------------------------------------------------------------------
# integral forms

def _binet1(a, ctrl):
    def f(u):
        L = np.log(u)
        return np.expm1((a - 1.0) * L) * (bernoulli_gen_remainder(L) - 0.5) / L
    r = quad_de(f, 0.0, 1.0, ctrl)
    return _result(_leading(a) + r.value, r.err_est, ctrl, nodes=r.nodes_used,
                   converged=r.converged)


def _binet2(a, ctrl):
    def f(u):
        L = np.log(u)
        return np.exp((a - 1.0) * L) * bernoulli_gen_remainder(L) / L
    r = quad_de(f, 0.0, 1.0, ctrl)
    head = a * (math.log(a) - 1.0) - 0.5 * math.log(a) + 0.5 * LN_2PI
    return _result(head + r.value, r.err_est, ctrl, nodes=r.nodes_used, converged=r.converged)


def _double_integral(a, ctrl):
    def f(x, y, xc, yc):
        lxy = _ln_pair(x, xc) + _ln_pair(y, yc)
        return np.expm1((a - 1.0) * lxy) * xc / ((xc + yc - xc * yc) * lxy * lxy)
    r = quad_de_unit_square(f, ctrl)
    return _result(_leading(a) + r.value, r.err_est, ctrl, nodes=r.nodes_used,
                   converged=r.converged)


def fourier_terms(a: float, J: int) -> np.ndarray:
    """(1/(2 pi j)) [2 sin(x) Ci(x) + cos(x)(pi - 2 Si(x))], x = 2 pi j a."""
    j = np.arange(1, J + 1, dtype=float)
    x = 2.0 * math.pi * a * j
    c, s = cisi(x)
    return (2.0 * np.sin(x) * c + np.cos(x) * (math.pi - 2.0 * s)) / (2.0 * math.pi * j)


def fourier_tail(a: float, J: int, order: int) -> tuple:
    """Tail of the Fourier sum; each summand equals f(2 pi j a)/(pi j)."""
    tail, nxt = aux_tail("f", 2.0 * math.pi * a, J + 1.0, order, extra=1)
    return tail / math.pi, nxt / math.pi


def _fourier_ci_si(a, ctrl):
    J = ctrl.max_terms
    head = (a - 0.5) * math.log(a) - a + 0.5 * LN_2PI
    tail, nxt = fourier_tail(a, J, ctrl.tail_order)
    val = head + comp_sum(fourier_terms(a, J)) + tail
    return _result(val, nxt + 1e-16 * J, ctrl, terms=J)


_DISPATCH = {
    RepLogGamma.BINOMIAL_SERIES: _binomial_series,
    RepLogGamma.BINET1: _binet1,
    RepLogGamma.BINET2: _binet2,
    RepLogGamma.DOUBLE_INTEGRAL: _double_integral,
    RepLogGamma.FOURIER_CI_SI: _fourier_ci_si,
}


def lngamma_rep(a: float, rep: RepLogGamma, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """ln Gamma(a) by one representation. ``ctrl.max_terms`` is K or J for the series."""
    _check_a(a)
    return _DISPATCH[RepLogGamma(rep)](float(a), ctrl)


# ---------------------------------------------------------------------------
# constants

BINET_CONSTANT = 1.0 - 0.5 * LN_2PI


def binet_constant_quad(ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """int_0^1 (1/(u-1) - 1/ln u + 1/2) du / ln u, which should equal 1 - ln(2 pi)/2."""
    def f(u):
        L = np.log(u)
        return bernoulli_gen_remainder(L) / L
    return quad_de(f, 0.0, 1.0, ctrl)


def const_binet_sum(J: int, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """(1/2pi) sum_{j<=J} (1/j)[pi - 2 Si(2 pi j)] plus the asymptotic tail."""
    if J < 1:
        raise DomainError("J must be >= 1")
    j = np.arange(1, J + 1, dtype=float)
    _, s = cisi_pi_multiple(2 * np.arange(1, J + 1))
    head = comp_sum((math.pi - 2.0 * s) / j) / (2.0 * math.pi)
    tail, nxt = fourier_tail(1.0, J, ctrl.tail_order)
    return _result(head + tail, nxt + 1e-16 * J, ctrl, terms=J)


def binet_arctan_integral(ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """int_0^inf arctan(t) / (e^{2 pi t} - 1) dt, expected (1 - ln(2 pi)/2)/2."""
    return quad_de(lambda t: np.arctan(t) / np.expm1(2.0 * math.pi * t), 0.0, math.inf, ctrl)


def lngamma_quarter_rhs(M: int, si_factor: float = 2.0, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """Right side of the a = 1/4 specialization of the Fourier form.

    ln(4 pi)/2 - 1/4 + (1/2pi){ (1/2) sum_{m>=1} (-1)^m/m [pi - c Si(pi m)]
                               + 2 sum_{m>=0} (-1)^m/(2m+1) Ci(pi(m+1/2)) }
    with c = ``si_factor``. Both sums are cut at M terms and tail-corrected.
    """
    if M < 1:
        raise DomainError("M must be >= 1")
    m = np.arange(1, M + 1, dtype=float)
    sign = np.where(m % 2 == 0, 1.0, -1.0)
    _, s = cisi_pi_multiple(np.arange(1, M + 1))
    first = comp_sum(sign / m * (math.pi - si_factor * s))
    m0 = np.arange(0, M, dtype=float)
    c, _ = cisi_pi_multiple(np.arange(0, M), half=True)
    second = comp_sum(np.where(m0 % 2 == 0, 1.0, -1.0) / (2.0 * m0 + 1.0) * c)

    order = ctrl.tail_order
    # pi - 2Si(pi m) = 2(-1)^m f(pi m); (-1)^m Ci(pi(m+1/2)) = f(pi(m+1/2))
    t1, n1 = aux_tail("f", math.pi, M + 1.0, order, extra=1)
    t1, n1 = 2.0 * t1, 2.0 * n1
    if si_factor != 2.0:
        # the remaining part of pi - c Si = (1 - c/2) pi + (c/2)(pi - 2 Si)
        alt = (1.0 - 0.5 * si_factor) * math.pi * _alt_harmonic_tail(M)
        t1 = 0.5 * si_factor * t1 + alt
        n1 = 0.5 * si_factor * n1
    t2, n2 = aux_tail("f", math.pi, M + 0.5, order, extra=1)
    brace = 0.5 * (first + t1) + 2.0 * (second + 0.5 * t2)
    val = 0.5 * math.log(4.0 * math.pi) - 0.25 + brace / (2.0 * math.pi)
    err = (0.5 * n1 + n2) / (2.0 * math.pi) + 1e-16 * M
    return _result(val, err, ctrl, terms=M)


def _alt_harmonic_tail(M):
    # sum_{m>M} (-1)^m / m = (-1)^{M+1} int_0^1 x^M/(1+x) dx
    r = quad_de(lambda x: x ** M / (1.0 + x), 0.0, 1.0)
    return (-1) ** (M + 1) * r.value


def lngamma_quarter(ctrl: Ctrl = DEFAULT_CTRL, M: int | None = None,
                    si_factor: float = 2.0) -> IdentityReport:
    """Compare the a = 1/4 Fourier specialization with lngamma_ref(1/4).

    ``si_factor`` = 2 is the coefficient that follows from the general
    Fourier form; 1 reproduces the variant without it, for comparison.
    """
    M = ctrl.max_terms if M is None else M
    rhs = lngamma_quarter_rhs(M, si_factor, ctrl)
    lhs = _result(lngamma_ref(0.25), 1e-15, ctrl)
    tol = max(LOG_GAMMA_QUARTER_TOL, rhs.err_est)
    return IdentityReport.compare(f"lngamma-quarter(c={si_factor:g})", 0.25, lhs, rhs, tol)
