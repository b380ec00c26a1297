"""Digamma function psi(a) = -gamma_0(a) through its many representations.

Each representation is computed strictly from its own formula; ``psi_ref``
(recurrence plus Bernoulli asymptotics) is the independent oracle.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .numkernel import (
    BERNOULLI,
    DEFAULT_CTRL,
    EULER_GAMMA,
    Ctrl,
    DomainError,
    EvalResult,
    _result,
    aux_tail,
    bernoulli_gen_remainder,
    cisi,
    comp_sum,
    quad_de,
    quad_de_unit_square,
)

K_STABLE = 20
_REF_SHIFT = 16.0
_REF_TERMS = 8


class RepDigamma(enum.Enum):
    LIMIT_SUM = "limit-sum"
    BINOMIAL_LOG = "binomial-log"
    U_INTEGRAL = "u-integral"
    DOUBLE_INTEGRAL = "double-integral"
    INV_BINOM_SERIES = "inv-binom-series"
    EXP_INTEGRAL = "exp-integral"
    FOURIER_CI_SI = "fourier-ci-si"


@dataclass(frozen=True)
class RationalArg:
    p: int
    q: int

    def __post_init__(self):
        if not (0 < self.p < self.q):
            raise DomainError("need 0 < p < q")
        if math.gcd(self.p, self.q) != 1:
            raise DomainError("p/q must be reduced")


def _check_a(a):
    if not a > 0 or not math.isfinite(a):
        raise DomainError(f"argument must be a finite positive real, got {a!r}")


# ---------------------------------------------------------------------------
# oracle

def psi_ref(a: float) -> float:
    """psi(a) via upward recurrence to a+m >= 16 and the Bernoulli asymptotic series."""
    _check_a(a)
    m = max(0, math.ceil(_REF_SHIFT - a))
    z = a + m
    z2 = z * z
    acc = 0.0
    zp = 1.0
    for k in range(1, _REF_TERMS + 1):
        zp *= z2
        acc += BERNOULLI.numbers[2 * k] / (2 * k * zp)
    shift = math.fsum(1.0 / (a + j) for j in range(m))
    return math.log(z) - 0.5 / z - acc - shift


# ---------------------------------------------------------------------------
# finite differences of log

def log_difference(k: int, a: float) -> float:
    """Delta_k(a) = sum_l (-1)^l C(k,l) ln(l+a), summed exactly rounded."""
    return comp_sum([(-1) ** l * math.comb(k, l) * math.log(l + a) for l in range(k + 1)])


def _pochhammer_recip_integrand(k: int, a: float):
    # k! / ((x)(x+1)...(x+k)), x = t + a
    def f(t):
        x = t + a
        acc = 1.0 / (x + k)
        for l in range(k):
            acc = acc * (l + 1) / (x + l)
        return acc
    return f


def binomial_log_term(k: int, a: float, ctrl: Ctrl = DEFAULT_CTRL) -> tuple:
    """Return the k-th summand (1/(k+1)) Delta_k(a) of the series for psi and its nodes used.

    Beyond K_STABLE the finite difference is replaced by its integral form
    -int_0^inf k!/((t+a)...(t+a+k)) dt, which has no cancellation.
    """
    if k <= K_STABLE:
        return log_difference(k, a) / (k + 1), 0
    r = quad_de(_pochhammer_recip_integrand(k, a), 0.0, math.inf,
                ctrl.replace(target_tol=min(ctrl.target_tol, 1e-13)))
    return -r.value / (k + 1), r.nodes_used


def binomial_remainder_kernel(u, K: int):
    """R_K(u) = sum_{k>K} (1-u)^k / (k+1)."""
    u = np.asarray(u, dtype=float)
    v = 1.0 - u
    out = np.empty_like(u)
    near = v <= 0.5
    if np.any(near):
        vn = v[near]
        k = np.arange(K + 1, K + 61, dtype=float)
        out[near] = np.sum(vn[:, None] ** k[None, :] / (k[None, :] + 1.0), axis=1)
    far = ~near
    if np.any(far):
        vf = v[far]
        m = np.arange(1, K + 2, dtype=float)
        partial = np.sum(vf[:, None] ** m[None, :] / m[None, :], axis=1)
        out[far] = (-np.log(u[far]) - partial) / vf
    return out


def binomial_remainder(a: float, K: int, j: int, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """Sum over k > K of (1/(k+1)) int_0^1 u^{a-1} (1-u)^k ln^{j-1}(u) du.

    With j = 0 these are the omitted digamma binomial-log terms, with j >= 1
    the omitted polygamma terms up to the factor (-1)^{j-1}(j-1)!.
    """
    def f(u):
        L = np.log(u)
        return np.exp((a - 1.0) * L) * L ** (j - 1) * binomial_remainder_kernel(u, K)
    return quad_de(f, 0.0, 1.0, ctrl)


# ---------------------------------------------------------------------------
# representations

def _limit_sum(a, ctrl):
    n = ctrl.max_terms
    k = np.arange(n + 1, dtype=float) + a
    terms = 1.0 / k - np.log1p(1.0 / k)
    psi = math.log(a) - comp_sum(terms)
    # omitted terms behave like 1/(2(k+a)^2)
    err = 0.5 / (n + a)
    return _result(psi, err, ctrl, terms=n + 1)


def _binomial_log(a, ctrl):
    K = ctrl.max_terms
    terms = []
    nodes = 0
    for k in range(1, K + 1):
        t, nd = binomial_log_term(k, a, ctrl)
        terms.append(t)
        nodes += nd
    psi = math.log(a) + comp_sum(terms)
    if ctrl.tail_order > 0:
        rem = binomial_remainder(a, K, 0, ctrl)
        return _result(psi + rem.value, rem.err_est, ctrl, terms=K,
                       nodes=nodes + rem.nodes_used, converged=rem.converged)
    err = abs(terms[-1]) * K  # terms decay slower than any geometric rate
    return _result(psi, err, ctrl, terms=K, nodes=nodes)


def _u_kernel(u, a):
    # u^{a-1} (1/(u-1) - 1/ln u) written through L = ln u
    L = np.log(u)
    return np.exp((a - 1.0) * L) * (bernoulli_gen_remainder(L) - 0.5)


def _u_integral(a, ctrl):
    r = quad_de(lambda u: _u_kernel(u, a), 0.0, 1.0, ctrl)
    return _result(math.log(a) + r.value, r.err_est, ctrl, nodes=r.nodes_used,
                   converged=r.converged)


def _ln_pair(x, xc):
    # ln x from whichever of x, 1-x is known more accurately
    with np.errstate(divide="ignore"):
        return np.where(x < 0.5, np.log(x), np.log1p(-xc))


def _double_kernel(a):
    def f(x, y, xc, yc):
        lxy = _ln_pair(x, xc) + _ln_pair(y, yc)      # ln(xy)
        one_m_xy = xc + yc - xc * yc                 # 1 - xy
        return np.exp((a - 1.0) * lxy) * xc / (one_m_xy * lxy)
    return f


def _double_integral(a, ctrl):
    r = quad_de_unit_square(_double_kernel(a), ctrl)
    return _result(math.log(a) + r.value, r.err_est, ctrl, nodes=r.nodes_used,
                   converged=r.converged)


def _exp_integral(a, ctrl):
    # 1/(1-e^{-t}) - 1/t = 1/2 + (1/(e^t-1) - 1/t + 1/2)
    r = quad_de(lambda t: np.exp(-a * t) * (0.5 + bernoulli_gen_remainder(t)), 0.0, math.inf, ctrl)
    return _result(math.log(a) - r.value, r.err_est, ctrl, nodes=r.nodes_used,
                   converged=r.converged)


# Gamma(k)/Gamma(k+x) = k^{-x} exp(-sum_n d_n(x) k^{-n}),
# d_n(x) = (-1)^{n+1} (B_{n+1}(x) - B_{n+1}) / (n(n+1)).
_RATIO_TERMS = 5


def _gamma_ratio_series(x):
    """Coefficients c_m(x) with Gamma(k)/Gamma(k+x) ~ k^{-x} sum_m c_m k^{-m}."""
    from .numkernel import bernoulli_poly
    d = [None] + [(-1) ** (n + 1) * (bernoulli_poly(n + 1, x) - BERNOULLI.numbers[n + 1])
                  / (n * (n + 1))
                  for n in range(1, _RATIO_TERMS)]
    # exp(-sum d_n y^n) as a power series in y
    c = [np.ones_like(x)]
    for m in range(1, _RATIO_TERMS):
        acc = np.zeros_like(x)
        for n in range(1, m + 1):
            acc = acc + n * d[n] * c[m - n]
        c.append(-acc / m)
    return c


def _zeta_far(s, w):
    """zeta(s, w) for an array of s > 1 and scalar w >= 10 (Euler-Maclaurin, no head)."""
    s = np.asarray(s, dtype=float)
    lw = math.log(w)
    ws = np.exp(-s * lw)
    total = w * ws / (s - 1.0) + 0.5 * ws
    poch = s.copy()
    wpow = ws / w
    for k in range(1, 8):
        total = total + BERNOULLI.numbers[2 * k] / math.factorial(2 * k) * poch * wpow
        poch = poch * (s + 2 * k - 1) * (s + 2 * k)
        wpow = wpow / (w * w)
    return total


def inv_binom_inner(x, K: int):
    """sum_{k>=2} k^{-2} / C(x+k-1, k) for an array of x > 0.

    Direct sum for k <= K; beyond that the asymptotic expansion of the
    gamma ratio reduces the tail to Hurwitz zeta values.
    """
    x = np.asarray(x, dtype=float)
    K = max(K, 50)
    # r_k = k!/((x)_k) = prod_{i=1}^k i/(x+i-1); term_k = r_k / k^2
    r = x ** -1.0  # k = 1
    total = np.zeros_like(x)
    for k in range(2, K + 1):
        r = r * k / (x + k - 1)
        total = total + r / (k * k)
    # tail: T_k = Gamma(x) Gamma(k) / (k Gamma(k+x)), rescaled from T_K.
    # For x > 40 it is below K^-40 and the expansion is not needed.
    small = x <= 40.0
    xs = x[small]
    tail = np.zeros_like(x)
    if xs.size:
        c = _gamma_ratio_series(xs)
        norm = sum(cm * float(K) ** -m for m, cm in enumerate(c))
        tail_sum = sum(cm * _zeta_far(1.0 + xs + m, K + 1.0) for m, cm in enumerate(c))
        T_K = r[small] / (K * K)
        tail[small] = T_K * np.exp((1.0 + xs) * math.log(K)) / norm * tail_sum
    return total + tail


def _inv_binom_series(a, ctrl):
    K = min(ctrl.max_terms, 4000)
    r = quad_de(lambda t: inv_binom_inner(t + a, K), 0.0, math.inf, ctrl)
    # the printed form adds this integral; the derivation yields a subtraction
    return _result(math.log(a) - r.value, r.err_est, ctrl, terms=K, nodes=r.nodes_used,
                   converged=r.converged)


def fourier_terms(a: float, J: int) -> np.ndarray:
    """Summands 2cos(x)Ci(x) - sin(x)(pi - 2Si(x)), x = 2 pi j a, j = 1..J."""
    x = 2.0 * math.pi * a * np.arange(1, J + 1, dtype=float)
    c, s = cisi(x)
    return 2.0 * np.cos(x) * c - np.sin(x) * (math.pi - 2.0 * s)


def fourier_tail(a: float, J: int, order: int) -> tuple:
    """Tail sum_{j>J} of the Fourier summands, each of which equals -2 g(2 pi j a).

    Returns (tail, magnitude of the first omitted asymptotic term).
    """
    tail, nxt = aux_tail("g", 2.0 * math.pi * a, J + 1.0, order)
    return -2.0 * tail, 2.0 * nxt


def _fourier_ci_si(a, ctrl):
    J = ctrl.max_terms
    terms = fourier_terms(a, J)
    tail, nxt = fourier_tail(a, J, ctrl.tail_order)
    psi = math.log(a) - 0.5 / a + comp_sum(terms) + tail
    err = nxt + 1e-15 * J
    return _result(psi, err, ctrl, terms=J)


_DISPATCH = {
    RepDigamma.LIMIT_SUM: _limit_sum,
    RepDigamma.BINOMIAL_LOG: _binomial_log,
    RepDigamma.U_INTEGRAL: _u_integral,
    RepDigamma.DOUBLE_INTEGRAL: _double_integral,
    RepDigamma.INV_BINOM_SERIES: _inv_binom_series,
    RepDigamma.EXP_INTEGRAL: _exp_integral,
    RepDigamma.FOURIER_CI_SI: _fourier_ci_si,
}


def psi_rep(a: float, rep: RepDigamma, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """psi(a) computed by one representation (see :class:`RepDigamma`).

    ``ctrl.max_terms`` is the truncation N / K / J for the series forms.
    """
    _check_a(a)
    return _DISPATCH[RepDigamma(rep)](float(a), ctrl)


def gamma0_rep(a: float, rep: RepDigamma, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    r = psi_rep(a, rep, ctrl)
    return EvalResult(-r.value, r.err_est, r.terms_used, r.nodes_used, r.converged)


# ---------------------------------------------------------------------------
# rational arguments, products, multiplication formula

def psi_rational(r: RationalArg | tuple) -> float:
    """Gauss's digamma theorem at p/q, 0 < p < q."""
    if not isinstance(r, RationalArg):
        r = RationalArg(*r)
    p, q = r.p, r.q
    terms = [-EULER_GAMMA, -0.5 * math.pi / math.tan(math.pi * p / q), -math.log(q)]
    for n in range(1, q // 2 + 1):
        t = 2.0 * math.cos(2.0 * math.pi * n * p / q) * math.log(2.0 * math.sin(math.pi * n / q))
        if 2 * n == q:
            t *= 0.5
        terms.append(t)
    return math.fsum(terms)


def exp_gamma0_product(a: float, K: int, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """Partial product over k <= K for exp(gamma_0(a)), accumulated in log space."""
    _check_a(a)
    if K < 1:
        raise DomainError("K must be >= 1")
    logs = [-math.log(a)]
    for k in range(1, K + 1):
        t, _ = binomial_log_term(k, a, ctrl)
        logs.append(-t)
    log_val = comp_sum(logs)
    value = math.exp(log_val)
    return _result(value, value * abs(logs[-1]), ctrl, terms=K)


def multiplication_residual(a: float, m: int, rep: RepDigamma | None = None,
                            ctrl: Ctrl = DEFAULT_CTRL) -> float:
    """gamma_0(ma) - [-ln m + (1/m) sum_{k<m} gamma_0(a + k/m)]."""
    _check_a(a)
    if m < 1:
        raise DomainError("m must be >= 1")

    def g0(x):
        return -psi_ref(x) if rep is None else -psi_rep(x, rep, ctrl).value

    lhs = g0(m * a)
    rhs = -math.log(m) + math.fsum(g0(a + k / m) for k in range(m)) / m
    return lhs - rhs


def gamma0_half_integer(n: int) -> float:
    """gamma_0(n + 1/2) = gamma + 2 ln 2 - 2 sum_{k<n} 1/(2k+1)."""
    return EULER_GAMMA + 2.0 * math.log(2.0) - 2.0 * math.fsum(1.0 / (2 * k + 1) for k in range(n))


# ---------------------------------------------------------------------------
# the 3F2 form, kept to decide between two printed prefactors

def hyp3f2_122(c: float, J: int = 4000) -> float:
    """3F2(1,2,2;3,c;1) = 2 sum_j (j+1)! / ((j+2) (c)_j), for c > 2.

    Terms decay like j^{1-c}; the tail is estimated from that power law.
    """
    if c <= 2:
        raise DomainError("3F2(1,2,2;3,c;1) converges only for c > 2")
    j = np.arange(J, dtype=float)
    ratio = np.ones(J)
    ratio[1:] = (j[1:] + 1.0) / (c + j[1:] - 1.0)
    t = np.cumprod(ratio) / (j + 2.0)      # (j+1)!/(c)_j / (j+2)
    head = comp_sum(t)
    p = c - 2.0                             # t_j ~ C j^{-1-p}
    tail = t[-1] * (J - 1) / p
    return 2.0 * (head + tail)


def gamma0_hypergeometric(a: float, prefactor: str = "single",
                          ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """gamma_0(a) from the 3F2 integral with either candidate prefactor.

    ``prefactor="single"`` uses 1/((t+a)(t+a+1)), which is the correct one:
    psi'(x) - 1/x = 3F2(1,2,2;3,x+2;1) / (2x(x+1)). ``"squared"`` uses
    1/((t+a)^2 (t+a+1)) and is kept only to show that it disagrees.
    """
    _check_a(a)
    power = {"single": 1, "squared": 2}[prefactor]

    def f(t):
        out = np.empty_like(t)
        for i, ti in enumerate(t):
            x = ti + a
            out[i] = hyp3f2_122(x + 2.0) / (x ** power * (x + 1.0))
        return out

    r = quad_de(f, 0.0, math.inf, ctrl.replace(target_tol=max(ctrl.target_tol, 1e-7), quad_levels=7))
    return _result(0.5 * r.value - math.log(a), r.err_est, ctrl, nodes=r.nodes_used,
                   converged=r.converged)
