"""Euler's constant: integral and Ci/Si series forms, and fractional-part moments."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numkernel import (
    BERNOULLI,
    DEFAULT_CTRL,
    EULER_GAMMA,
    Ctrl,
    DomainError,
    EvalResult,
    _result,
    aux_asymptotic_coeffs,
    aux_fg,
    aux_tail,
    cisi_pi_multiple,
    comp_sum,
    hurwitz_zeta,
    hurwitz_zeta_vec,
    periodized_bernoulli,
    quad_de,
    series_tail,
)

MOMENT_INTERVALS = 1000
MOMENT_TOL = 1e-8


# ---------------------------------------------------------------------------
# integral form

def _right_integrand(z):
    # e^z ln(1 + e^-z) / (z^2 + pi^2), z >= 0, as ln(1+w)/w with w = e^-z
    w = np.exp(-z)
    safe = np.where(w > 0, w, 1.0)
    ratio = np.where(w > 1e-300, np.log1p(safe) / safe, 1.0)
    return ratio / (z * z + math.pi ** 2)


def _left_integrand(y):
    # the z < 0 half with z = -y: e^-y ln(1 + e^y) = e^-y (y + ln(1 + e^-y))
    return np.exp(-y) * (y + np.log1p(np.exp(-y))) / (y * y + math.pi ** 2)


def gamma_integral_halves(ctrl: Ctrl = DEFAULT_CTRL) -> tuple:
    """The z > 0 and z < 0 halves of int e^z ln(1+e^-z)/(z^2+pi^2) dz."""
    c = ctrl.replace(target_tol=min(ctrl.target_tol, 1e-14))
    return quad_de(_right_integrand, 0.0, math.inf, c), quad_de(_left_integrand, 0.0, math.inf, c)


def gamma_integral(ctrl: Ctrl = DEFAULT_CTRL) -> float:
    """gamma from the integral over the whole real line, split at 0."""
    right, left = gamma_integral_halves(ctrl)
    return right.value + left.value


def right_half_series(J: int, tail_order: int = 0, ctrl: Ctrl = DEFAULT_CTRL) -> float:
    """sum_{j<=J} (-1)^{j-1}/j int_0^inf e^{-(j-1)z}/(z^2+pi^2) dz, the expanded z > 0 half.

    With ``tail_order`` > 0 the alternating remainder is estimated by
    summation by parts.
    """
    c = ctrl.replace(target_tol=1e-15)

    def term(j):
        return quad_de(lambda z: np.exp(-(j - 1.0) * z) / (z * z + math.pi ** 2), 0.0, math.inf, c).value / j

    head = comp_sum([(-1) ** (j - 1) * term(j) for j in range(1, J + 1)])
    if tail_order <= 0:
        return head

    def H(n):
        return np.array([-term(float(v)) for v in np.atleast_1d(n)])

    # (-1)^{j-1} = -(-1)^j
    return head + float(np.real(series_tail(H, J + 1, tail_order, z=-1.0)))


def hermite_integral(ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """int_0^inf x / ((x^2+1)(e^{2 pi x}-1)) dx, expected (gamma - 1/2)/2."""
    return quad_de(lambda x: x / ((x * x + 1.0) * np.expm1(2.0 * math.pi * x)), 0.0, math.inf, ctrl)


# ---------------------------------------------------------------------------
# Ci/Si series

def gamma_prop2(J: int, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """gamma = 1/2 + Ci(pi) + (1/2pi)[sum_{j>=1} d_j/(j+1) + sum_{j>=2} d_j/(j-1)],
    d_j = pi - 2 Si(pi j), truncated at J.

    d_j = 2(-1)^j f(pi j) alternates, so the remainder is estimated by
    summation by parts to ``ctrl.tail_order`` differences.
    """
    if J < 2:
        raise DomainError("J must be >= 2")
    j = np.arange(1, J + 1)
    ci_vals, si_vals = cisi_pi_multiple(j)
    d = math.pi - 2.0 * si_vals
    jf = j.astype(float)
    s1 = comp_sum(d / (jf + 1.0))
    s2 = comp_sum(d[1:] / (jf[1:] - 1.0))
    head = 0.5 + ci_vals[0] + (s1 + s2) / (2.0 * math.pi)

    def H(n):
        n = np.asarray(n, dtype=float)
        f, _ = aux_fg(math.pi * n)
        return 2.0 * f * (1.0 / (n + 1.0) + 1.0 / (n - 1.0)) / (2.0 * math.pi)

    order = ctrl.tail_order
    tail = float(np.real(series_tail(H, J + 1, order, z=-1.0))) if order > 0 else 0.0
    nxt = float(np.real(series_tail(H, J + 1, order + 1, z=-1.0))) - tail
    return _result(head + tail, abs(nxt) + 1e-16 * J, ctrl, terms=J)


def gamma_ci_sum(J: int, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """gamma from 1 - gamma = 1/2 + 2 sum_{j>=1} Ci(2 pi j), truncated at J."""
    if J < 1:
        raise DomainError("J must be >= 1")
    c, _ = cisi_pi_multiple(2 * np.arange(1, J + 1))
    # Ci(2 pi j) = -g(2 pi j)
    tail, nxt = aux_tail("g", 2.0 * math.pi, J + 1.0, ctrl.tail_order)
    s = comp_sum(c) - tail
    return _result(0.5 - 2.0 * s, 2.0 * nxt + 1e-16 * J, ctrl, terms=J)


def gamma_ln2_alt(J: int, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """gamma from gamma + ln 2 = 1 - 2 sum_{j>=1} (-1)^j Ci(pi j), truncated at J."""
    if J < 1:
        raise DomainError("J must be >= 1")
    j = np.arange(1, J + 1)
    c, _ = cisi_pi_multiple(j)
    sign = np.where(j % 2 == 0, 1.0, -1.0)
    # (-1)^j Ci(pi j) = -g(pi j)
    tail, nxt = aux_tail("g", math.pi, J + 1.0, ctrl.tail_order)
    s = comp_sum(sign * c) - tail
    return _result(1.0 - 2.0 * s - math.log(2.0), 2.0 * nxt + 1e-16 * J, ctrl, terms=J)


# ---------------------------------------------------------------------------
# fractional-part moments

@dataclass(frozen=True)
class MomentResult:
    k: int
    quad_value: float
    closed_value: float
    fourier_value: float | None = None
    quad_err: float = 0.0

    def __post_init__(self):
        if self.k < 1:
            raise DomainError("k must be >= 1")


def moment_closed(k: int) -> float:
    """I_k = 1 - gamma - sum_{j=2}^k (zeta(j) - 1)/j."""
    if k < 1:
        raise DomainError("k must be >= 1")
    # zeta(j) - 1 = zeta(j, 2), without cancellation
    return comp_sum([1.0, -EULER_GAMMA] + [-hurwitz_zeta(float(j), 2.0).value / j
                                           for j in range(2, k + 1)])


def _periodic_tail(k: int, T: float, rmax: int = 6) -> float:
    """int_T^inf {t}^k t^{-k-1} dt for integer T, from the Bernoulli expansion of {t}^k.

    {t}^k = (1/(k+1)) sum_{m<=k} C(k+1,m) P_m(t), and repeated integration by
    parts gives int_T^inf P_m phi = sum_r (-1)^{r+1} m!/(m+r+1)! B_{m+r+1} phi^(r)(T).
    """
    def dphi(r):
        # r-th derivative of t^{-k-1} at T
        c = 1.0
        for i in range(r):
            c *= -(k + 1 + i)
        return c * T ** (-k - 1 - r)

    parts = [T ** (-k) / k]  # P_0 = 1
    for m in range(1, k + 1):
        acc = 0.0
        for r in range(rmax):
            b = BERNOULLI.numbers[m + r + 1]
            if b:
                acc += (-1) ** (r + 1) * math.factorial(m) / math.factorial(m + r + 1) * b * dphi(r)
        parts.append(math.comb(k + 1, m) * acc)
    return math.fsum(parts) / (k + 1)


def moment_quad(k: int, ctrl: Ctrl = DEFAULT_CTRL, intervals: int = MOMENT_INTERVALS) -> EvalResult:
    """I_k = int_1^inf {t}^k / t^{k+1} dt, one unit interval at a time plus a closed tail."""
    if k < 1:
        raise DomainError("k must be >= 1")
    c = ctrl.replace(target_tol=min(ctrl.target_tol, 1e-15))
    pieces = []
    nodes = 0
    for i in range(1, intervals + 1):
        r = quad_de(lambda s, i=i: s ** k / (i + s) ** (k + 1), 0.0, 1.0, c)
        pieces.append(r.value)
        nodes += r.nodes_used
    T = float(intervals + 1)
    pieces.append(_periodic_tail(k, T))
    bound = 1.0 / ((k + 1) * T ** k)
    # the first dropped integration-by-parts term
    err = (k + 7.0) ** 7 * T ** (-k - 7.0)
    return _result(comp_sum(pieces), err, ctrl, terms=intervals, nodes=nodes,
                   converged=err < bound)


def _moment_bracket_coeffs(k: int, order: int) -> list:
    # Asymptotic coefficients d_m of the per-j bracket in powers x^{-2m}, x = 2 pi j.
    # The brackets are x f(x) - 1 - 2 g(x)            (k = 2)
    #             and x f(x) - 4/3 + (x^2/3 - 2) g(x)  (k = 3).
    cf = aux_asymptotic_coeffs("f", order + 2)
    cg = aux_asymptotic_coeffs("g", order + 2)
    out = []
    for m in range(1, order + 2):
        d = cf[m] - 2.0 * cg[m - 1]
        if k == 3:
            d += cg[m] / 3.0
        out.append(d)
    return out


def moment_fourier(k: int, J: int, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """I_2 or I_3 from their Ci/Si series, bracketed per j and cut at J."""
    if k not in (2, 3):
        raise DomainError("Fourier forms exist for k = 2, 3 only")
    j = np.arange(1, J + 1)
    jf = j.astype(float)
    c, s = cisi_pi_multiple(2 * j)
    pi2 = math.pi ** 2
    # j pi^2 - 2 j pi Si(2 pi j) = j pi (pi - 2 Si(2 pi j))
    rest = jf * math.pi * (math.pi - 2.0 * s)
    if k == 2:
        br = 2.0 * c + rest - 1.0
    else:
        br = 2.0 * (1.0 - 2.0 / 3.0 * jf * jf * pi2) * c - 4.0 / 3.0 + rest
    head = 0.25 + comp_sum(br)
    d = _moment_bracket_coeffs(k, ctrl.tail_order)
    w = 2.0 * math.pi
    parts = [d[m - 1] / w ** (2 * m) * hurwitz_zeta_vec(2.0 * m, J + 1.0) for m in range(1, len(d) + 1)]
    tail = math.fsum(parts[:ctrl.tail_order])
    return _result(head + tail, abs(parts[ctrl.tail_order]) + 1e-15 * J, ctrl, terms=J)


def frac_moment(k: int, ctrl: Ctrl = DEFAULT_CTRL, J: int | None = None) -> MomentResult:
    """I_k by quadrature, by its closed form and (k = 2, 3) by its Fourier series."""
    q = moment_quad(k, ctrl)
    fourier = moment_fourier(k, J or ctrl.max_terms, ctrl).value if k in (2, 3) else None
    return MomentResult(k, q.value, moment_closed(k), fourier, q.err_est)


def frac_power_expand(n: int, x: float) -> float:
    """{x}^n = (1/(n+1)) sum_{k<=n} C(n+1,k) P_k(x)."""
    if not 1 <= n <= 12:
        raise DomainError("n must be in 1..12")
    terms = [1.0]  # P_0 = 1
    terms += [math.comb(n + 1, k) * float(periodized_bernoulli(k, x)) for k in range(1, n + 1)]
    return math.fsum(terms) / (n + 1)


def frac_square_fourier(x: float, J: int) -> float:
    """{x}^2 = 1/3 + sum_j [cos(2 pi j x)/(pi j)^2 - sin(2 pi j x)/(pi j)], cut at J."""
    j = np.arange(1, J + 1, dtype=float)
    t = 2.0 * math.pi * j * x
    return 1.0 / 3.0 + comp_sum(np.cos(t) / (math.pi * j) ** 2 - np.sin(t) / (math.pi * j))
