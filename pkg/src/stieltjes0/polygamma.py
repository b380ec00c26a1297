"""Polygamma functions and harmonic numbers."""

from __future__ import annotations

import enum
import math

import numpy as np

from .digamma import (
    K_STABLE,
    _check_a,
    _ln_pair,
    binomial_remainder,
    fourier_tail,
    psi_ref,
)
from .numkernel import (
    DEFAULT_CTRL,
    EULER_GAMMA,
    Ctrl,
    DomainError,
    EvalResult,
    _result,
    bernoulli_gen_remainder,
    cisi_pi_multiple,
    comp_sum,
    hurwitz_zeta,
    quad_de,
    quad_de_unit_square,
    zeta_value,
)

# intervals integrated one at a time before the closed-form tail
EM_INTERVALS = 200


class RepPolygamma(enum.Enum):
    BINOMIAL_POW = "binomial-pow"
    U_INTEGRAL_LOG_J = "u-integral-logj"
    DOUBLE_INTEGRAL_LOG_J = "double-integral-logj"


def _check_j(j):
    if int(j) != j or j < 1:
        raise DomainError(f"order must be a positive integer, got {j!r}")


def polygamma_ref(j: int, a: float) -> float:
    """psi^(j)(a) = (-1)^{j+1} j! zeta(j+1, a)."""
    _check_j(j)
    _check_a(a)
    return (-1) ** (j + 1) * math.factorial(j) * hurwitz_zeta(j + 1.0, a).value


def _leading(j, a):
    return (-1) ** (j - 1) * math.factorial(j - 1) / a ** j


def binomial_pow_term(k: int, j: int, a: float, ctrl: Ctrl = DEFAULT_CTRL) -> tuple:
    """k-th summand of the binomial series for psi^(j), with its node count.

    The finite difference of (l+a)^{-j} is exact for k <= K_STABLE; beyond that
    it is (1/(k+1)) int_0^1 u^{a-1} (1-u)^k ln^{j-1}u du.
    """
    if k <= K_STABLE:
        diff = comp_sum([(-1) ** l * math.comb(k, l) / (l + a) ** j for l in range(k + 1)])
        return math.factorial(j - 1) * (-1) ** (j - 1) * diff / (k + 1), 0

    def f(u):
        L = np.log(u)
        return np.exp((a - 1.0) * L + k * np.log1p(-u)) * L ** (j - 1)

    r = quad_de(f, 0.0, 1.0, ctrl.replace(target_tol=min(ctrl.target_tol, 1e-14)))
    return r.value / (k + 1), r.nodes_used


def _binomial_pow(j, a, ctrl):
    K = ctrl.max_terms
    terms = []
    nodes = 0
    for k in range(1, K + 1):
        t, nd = binomial_pow_term(k, j, a, ctrl)
        terms.append(t)
        nodes += nd
    val = _leading(j, a) + comp_sum(terms)
    if ctrl.tail_order > 0:
        rem = binomial_remainder(a, K, j, ctrl)
        return _result(val + rem.value, rem.err_est, ctrl, terms=K,
                       nodes=nodes + rem.nodes_used, converged=rem.converged)
    return _result(val, abs(terms[-1]) * K, ctrl, terms=K, nodes=nodes)


def _u_integral_logj(j, a, ctrl):
    def f(u):
        L = np.log(u)
        return np.exp((a - 1.0) * L) * (bernoulli_gen_remainder(L) - 0.5) * L ** j
    r = quad_de(f, 0.0, 1.0, ctrl)
    return _result(_leading(j, a) + r.value, r.err_est, ctrl, nodes=r.nodes_used,
                   converged=r.converged)


def _double_integral_logj(j, a, ctrl):
    def f(x, y, xc, yc):
        lxy = _ln_pair(x, xc) + _ln_pair(y, yc)
        return np.exp((a - 1.0) * lxy) * xc / (xc + yc - xc * yc) * lxy ** (j - 1)
    r = quad_de_unit_square(f, ctrl)
    return _result(_leading(j, a) + r.value, r.err_est, ctrl, nodes=r.nodes_used,
                   converged=r.converged)


_DISPATCH = {
    RepPolygamma.BINOMIAL_POW: _binomial_pow,
    RepPolygamma.U_INTEGRAL_LOG_J: _u_integral_logj,
    RepPolygamma.DOUBLE_INTEGRAL_LOG_J: _double_integral_logj,
}


def polygamma_rep(j: int, a: float, rep: RepPolygamma, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """psi^(j)(a) by one representation. ``ctrl.max_terms`` is K for the binomial series."""
    _check_j(j)
    _check_a(a)
    return _DISPATCH[RepPolygamma(rep)](int(j), float(a), ctrl)


# ---------------------------------------------------------------------------
# harmonic numbers

def harmonic(n: int) -> float:
    """H_n = psi(n+1) + gamma."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return psi_ref(n + 1.0) + EULER_GAMMA


def gen_harmonic(n: int, r: int) -> float:
    """H_n^(r) from psi^(r-1)(n+1) - psi^(r-1)(1)."""
    if n < 1 or r < 2:
        raise DomainError("need n >= 1 and r >= 2")
    scale = (-1) ** (r - 1) / math.factorial(r - 1)
    at_one = (-1) ** r * math.factorial(r - 1) * zeta_value(r)
    return scale * (polygamma_ref(r - 1, n + 1.0) - at_one)


def harmonic_ci(n: int, J: int, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """H_n = ln n + gamma + 1/(2n) + 2 sum_j Ci(2 pi n j), truncated at J.

    The omitted terms follow from the asymptotic series of g summed with
    Hurwitz zeta values.
    """
    if n < 1 or J < 0:
        raise DomainError("need n >= 1 and J >= 0")
    head = math.log(n) + EULER_GAMMA + 0.5 / n
    if J == 0:
        return _result(head, math.inf, ctrl, converged=False)
    c, _ = cisi_pi_multiple(2 * n * np.arange(1, J + 1))
    tail, nxt = fourier_tail(float(n), J, ctrl.tail_order)
    val = head + 2.0 * comp_sum(c) + tail
    return _result(val, nxt + 1e-16 * J, ctrl, terms=J)


def _p1_moment(lo, r, ctrl):
    # int_lo^{lo+1} (x - lo - 1/2) x^{-r-1} dx
    return quad_de(lambda x: (x - lo - 0.5) * x ** (-r - 1.0), lo, lo + 1.0, ctrl)


def gen_harmonic_em(n: int, r: int, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """H_n^(r) = zeta(r) + 1/(2n^r) - n^{1-r}/(r-1) + r int_n^inf P_1(x) x^{-r-1} dx.

    The P_1 integral is done one unit interval at a time, so the quadrature
    never crosses a jump of the sawtooth. Past the last interval N the
    remainder is -f(N)/12 + f''(N)/720 with f = x^{-r-1}; the bound r/(8 N^{r+1})
    on the whole remainder goes into err_est.
    """
    if n < 1 or r < 2:
        raise DomainError("need n >= 1 and r >= 2")
    qctrl = ctrl.replace(target_tol=min(ctrl.target_tol, 1e-14))
    pieces = []
    nodes = 0
    for i in range(EM_INTERVALS):
        res = _p1_moment(float(n + i), r, qctrl)
        pieces.append(res.value)
        nodes += res.nodes_used
    N = float(n + EM_INTERVALS)
    f = N ** (-r - 1.0)
    f2 = (r + 1.0) * (r + 2.0) * N ** (-r - 3.0)
    pieces.append(-f / 12.0 + f2 / 720.0)
    integral = comp_sum(pieces)
    val = comp_sum([zeta_value(r), 0.5 / n ** r, -n ** (1.0 - r) / (r - 1), r * integral])
    bound = r / (8.0 * N ** (r + 1))
    # after the correction the first omitted Euler-Maclaurin term is tiny
    err = r * (r + 1) * (r + 2) * (r + 3) * (r + 4) * N ** (-r - 5.0) / 30240.0
    return _result(val, max(err, 1e-15), ctrl, terms=EM_INTERVALS, nodes=nodes,
                   converged=err <= bound)
