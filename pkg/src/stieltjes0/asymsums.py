"""Sums of psi(alpha n + beta) minus its leading asymptotics.

phi_m(z) = psi(z) - ln z + 1/(2z) + sum_{k<=m} B_2k/(2k z^2k) is the remainder of
Stirling's series for psi after m Bernoulli terms. The sum over n of phi_1 has an
integral representation on (0, 1); the sum of phi_0 has an asymptotic expansion
in powers of 1/alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .digamma import psi_ref
from .numkernel import (
    DEFAULT_CTRL,
    Ctrl,
    DomainError,
    EvalResult,
    _result,
    bernoulli_number,
    comp_sum,
    hurwitz_zeta_vec,
    quad_de,
)

# z from which the Stirling remainder is summed directly
_DIRECT_FROM = 16.0
_SERIES_TERMS = 12


def stirling_remainder(z: float, drop: int) -> float:
    """psi(z) - ln z + 1/(2z) + sum_{k=1}^{drop} B_2k/(2k z^2k), without cancellation.

    For z >= 16 the remaining Bernoulli terms are summed; below that the
    recurrence psi(z) = psi(z+1) - 1/z moves z up, with the differences of the
    subtracted terms formed in closed form.
    """
    if not z > 0:
        raise DomainError("need z > 0")
    shift = max(0, math.ceil(_DIRECT_FROM - z))
    w = z + shift
    val = -comp_sum([bernoulli_number(2 * k) / (2 * k) * w ** (-2 * k)
                     for k in range(drop + 1, drop + _SERIES_TERMS + 1)])
    pieces = [val]
    for i in range(shift):
        x = z + i
        # R(x) - R(x+1) = -1/x + ln(1+1/x) + (1/2)(1/x - 1/(x+1)) + sum B_2k/2k (x^-2k - (x+1)^-2k)
        pieces.append(-1.0 / x + math.log1p(1.0 / x) + 0.5 / (x * (x + 1.0)))
        for k in range(1, drop + 1):
            pieces.append(bernoulli_number(2 * k) / (2 * k) * (x ** (-2 * k) - (x + 1.0) ** (-2 * k)))
    return comp_sum(pieces)


def _check(alpha, beta):
    if not alpha > 0:
        raise DomainError("need alpha > 0")
    if not beta >= 0 or not alpha + beta > 0:
        raise DomainError("need beta >= 0 and alpha + beta > 0")


def _asym_tail(alpha, beta, start, drop, terms=6):
    """-sum_{k>drop} B_2k/(2k) alpha^-2k zeta(2k, start + beta/alpha): sum_{n>=start} phi_drop."""
    q = start + beta / alpha
    parts = [-bernoulli_number(2 * k) / (2 * k) * alpha ** (-2 * k) * hurwitz_zeta_vec(2.0 * k, q)
             for k in range(drop + 1, drop + terms + 2)]
    return comp_sum(parts[:-1]), abs(parts[-1])


def _phi_sum(alpha, beta, drop, ctrl):
    N = ctrl.max_terms
    terms = [stirling_remainder(alpha * n + beta, drop) for n in range(1, N + 1)]
    tail, nxt = _asym_tail(alpha, beta, N + 1, drop)
    return _result(comp_sum(terms) + tail, nxt + 1e-16 * abs(tail), ctrl, terms=N)


def psi_sum_lhs(alpha: float, beta: float, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """sum_{n>=1} [psi(alpha n + beta) - ln(alpha n + beta) + 1/(2(.)) + 1/(12(.)^2)].

    Terms decay like 1/(120 (alpha n + beta)^4). The sum past max_terms is
    the Hurwitz-zeta form of the remaining Bernoulli terms.
    """
    _check(alpha, beta)
    return _phi_sum(float(alpha), float(beta), 1, ctrl)


def _bracket(s, alpha):
    """1/(alpha(v^{1/alpha} - 1)) - 1/ln v + 1/(2 alpha) - ln v/(12 alpha^2) at ln v = -s."""
    s = np.asarray(s, dtype=float)
    t = -s / alpha
    out = np.empty_like(t)
    small = np.abs(t) < 1.0
    if np.any(small):
        ts = t[small]
        acc = np.zeros_like(ts)
        for k in range(_SERIES_TERMS, 1, -1):
            acc += bernoulli_number(2 * k) / math.factorial(2 * k) * ts ** (2 * k - 1)
        out[small] = acc / alpha
    big = ~small
    if np.any(big):
        tb, sb = t[big], s[big]
        out[big] = (1.0 / (alpha * np.expm1(tb)) + 1.0 / sb + 0.5 / alpha
                    + sb / (12.0 * alpha * alpha))
    return out


def psi_sum_rhs(alpha: float, beta: float, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """int_0^1 v^{beta/alpha}/(1-v) [bracket] dv, integrated over s = -ln v in (0, inf).

    The bracket vanishes like ln^3 v at v = 1; near there it is summed from
    its Bernoulli series instead of being formed by subtraction.
    """
    _check(alpha, beta)
    alpha, beta = float(alpha), float(beta)
    e = beta / alpha

    def f(s):
        s = np.asarray(s, dtype=float)
        # v^{e} dv/(1-v) = e^{-s(e+1)} ds / (1 - e^{-s})
        return np.exp(-s * e) / np.expm1(s) * _bracket(s, alpha)

    r = quad_de(f, 0.0, math.inf, ctrl.replace(target_tol=min(ctrl.target_tol, 1e-13)))
    return _result(r.value, r.err_est, ctrl, nodes=r.nodes_used, converged=r.converged)


# ---------------------------------------------------------------------------
# large-alpha expansion

CONVENTIONS = {"integer": 0.0, "printed": 0.5}


@dataclass
class PhiSumResult:
    alpha: float
    beta: float
    lhs_sum: EvalResult
    rhs_integral: EvalResult
    asym_partial: list = field(default_factory=list)

    def __post_init__(self):
        if len(self.asym_partial) > 6:
            raise ValueError("at most six partial sums")


def asym_terms(alpha: float, beta: float, K: int, convention: str = "integer") -> list:
    """Terms -alpha^{-(2k - c)} B_2k/(2k) zeta(2k, 1 + beta/alpha), k = 1..K.

    c = 0 for the "integer" convention and 1/2 for the "printed" one.
    """
    c = CONVENTIONS[convention]
    q = 1.0 + beta / alpha
    return [-alpha ** (-(2 * k - c)) * bernoulli_number(2 * k) / (2 * k) * hurwitz_zeta_vec(2.0 * k, q)
            for k in range(1, K + 1)]


def phi_sum_direct(alpha: float, beta: float = 0.0, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """sum_{n>=1} [psi(alpha n + beta) - ln(alpha n + beta) + 1/(2(alpha n + beta))]."""
    _check(alpha, beta)
    return _phi_sum(float(alpha), float(beta), 0, ctrl)


def phi_sum_asym(alpha: float, K: int, beta: float = 0.0, convention: str = "integer",
                 ctrl: Ctrl = DEFAULT_CTRL) -> tuple:
    """Partial sums (k = 1..K) of the large-alpha series and the direct target."""
    if not alpha >= 4:
        raise DomainError("need alpha >= 4")
    if int(K) != K or not 1 <= K <= 5:
        raise DomainError("need 1 <= K <= 5")
    partial = list(np.cumsum(asym_terms(alpha, beta, int(K), convention)))
    return [float(p) for p in partial], phi_sum_direct(alpha, beta, ctrl).value


def fit_exponent(K: int, alphas=(8.0, 16.0, 32.0), convention: str = "integer",
                 ctrl: Ctrl = DEFAULT_CTRL) -> float:
    """Least-squares slope p in |direct - partial_K| ~ C alpha^{-p}; K = 0 means no terms."""
    errs = []
    for a in alphas:
        direct = phi_sum_direct(a, 0.0, ctrl).value
        approx = float(np.sum(asym_terms(a, 0.0, K, convention))) if K else 0.0
        errs.append(abs(direct - approx))
    slope = np.polyfit(np.log(alphas), np.log(errs), 1)[0]
    return float(-slope)


def phi_sum_result(alpha: float, beta: float, K: int = 3, ctrl: Ctrl = DEFAULT_CTRL) -> PhiSumResult:
    lhs = psi_sum_lhs(alpha, beta, ctrl)
    rhs = psi_sum_rhs(alpha, beta, ctrl)
    partial = list(np.cumsum(asym_terms(alpha, beta, K))) if alpha >= 4 else []
    return PhiSumResult(alpha, beta, lhs, rhs, [float(p) for p in partial])


def phi(x: float) -> float:
    """phi(x) = psi(x) + 1/(2x) - ln x."""
    if not x > 0:
        raise DomainError("need x > 0")
    return stirling_remainder(x, 0) if x >= 1 else psi_ref(x) + 0.5 / x - math.log(x)
