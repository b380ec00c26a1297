"""Shared numerical machinery.

Double-exponential quadrature, exactly rounded summation, Bernoulli numbers
and polynomials, Hurwitz/Riemann zeta (and the s-derivative) by
Euler-Maclaurin, the trigonometric integrals Ci/Si with their auxiliary
functions, and tail corrections for slowly convergent series.

Every integrand handed to :func:`quad_de` must accept a numpy array and
return an array of the same shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

# Used only by the small-argument Ci power series.
EULER_GAMMA = 0.57721566490153286061
LN_2PI = math.log(2.0 * math.pi)


class DomainError(ValueError):
    """Argument outside the domain of a function."""


class PoleError(DomainError):
    """Argument sits on a pole."""


class IntegrandError(ValueError):
    """Integrand produced NaN or inf at a quadrature node."""


@dataclass(frozen=True)
class Ctrl:
    """Truncation and tolerance knobs shared by every series and quadrature."""

    max_terms: int = 2000
    target_tol: float = 1e-10
    quad_levels: int = 12
    tail_order: int = 2

    def __post_init__(self):
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if not 0.0 < self.target_tol < 1.0:
            raise ValueError("target_tol must lie in (0, 1)")
        if self.quad_levels < 1:
            raise ValueError("quad_levels must be >= 1")
        if not 0 <= self.tail_order <= 4:
            raise ValueError("tail_order must lie in [0, 4]")

    def replace(self, **kw) -> "Ctrl":
        d = dict(max_terms=self.max_terms, target_tol=self.target_tol,
                 quad_levels=self.quad_levels, tail_order=self.tail_order)
        d.update(kw)
        return Ctrl(**d)


DEFAULT_CTRL = Ctrl()


@dataclass(frozen=True)
class EvalResult:
    value: float
    err_est: float
    terms_used: int = 0
    nodes_used: int = 0
    converged: bool = True

    def __float__(self):
        return float(self.value)


def _result(value, err, ctrl, terms=0, nodes=0, converged=None) -> EvalResult:
    err = abs(float(err))
    if not math.isfinite(err):
        err = math.inf
        converged = False
    if converged is None:
        converged = err <= ctrl.target_tol
    else:
        converged = bool(converged) and err <= ctrl.target_tol
    return EvalResult(float(value), err if math.isfinite(err) else float("inf"),
                      int(terms), int(nodes), converged)


# ---------------------------------------------------------------------------
# summation

def comp_sum(terms: Sequence[float] | np.ndarray) -> float:
    """Exactly rounded sum of ``terms`` (Shewchuk error-free transformations)."""
    arr = np.asarray(terms, dtype=float).ravel()
    if not np.all(np.isfinite(arr)):
        raise ValueError("comp_sum: non-finite term")
    return math.fsum(arr.tolist())


# ---------------------------------------------------------------------------
# Bernoulli numbers and polynomials

@dataclass(frozen=True)
class BernoulliCache:
    """B_0..B_N as exact fractions and floats, B_1 = -1/2."""

    exact: tuple
    numbers: tuple

    @property
    def N(self) -> int:
        return len(self.numbers) - 1

    @classmethod
    def build(cls, n_max: int) -> "BernoulliCache":
        # sum_{k=0}^{m} C(m+1, k) B_k = 0
        b = [Fraction(1)]
        for m in range(1, n_max + 1):
            acc = Fraction(0)
            for k in range(m):
                acc += math.comb(m + 1, k) * b[k]
            b.append(-acc / (m + 1))
        return cls(tuple(b), tuple(float(x) for x in b))


BERNOULLI = BernoulliCache.build(80)


def bernoulli_number(n: int) -> float:
    if n < 0:
        raise DomainError("Bernoulli index must be non-negative")
    if n > BERNOULLI.N:
        raise DomainError(f"Bernoulli index {n} beyond cache capacity {BERNOULLI.N}")
    return BERNOULLI.numbers[n]


@lru_cache(maxsize=None)
def _bernoulli_poly_coeffs(n: int) -> tuple:
    # highest power first, for Horner
    return tuple(float(math.comb(n, k) * BERNOULLI.exact[k]) for k in range(n + 1))


def bernoulli_poly(n: int, x):
    """B_n(x) = sum_k C(n,k) B_k x^(n-k); scalar or array ``x``."""
    if n < 0 or n > BERNOULLI.N:
        raise DomainError(f"Bernoulli polynomial degree {n} out of range")
    coeffs = _bernoulli_poly_coeffs(n)
    x_arr = np.asarray(x, dtype=float)
    acc = np.zeros_like(x_arr)
    for c in coeffs:
        acc = acc * x_arr + c
    return float(acc) if acc.ndim == 0 else acc


def periodized_bernoulli(n: int, x):
    """P_n(x) = B_n(x - floor(x))."""
    if n < 1:
        raise DomainError("periodized Bernoulli needs n >= 1")
    x_arr = np.asarray(x, dtype=float)
    return bernoulli_poly(n, x_arr - np.floor(x_arr))


# 1/(e^L - 1) - 1/L + 1/2 = sum_{k>=1} B_{2k} L^{2k-1} / (2k)!
_GEN_COEFFS = tuple(BERNOULLI.numbers[2 * k] / math.factorial(2 * k) for k in range(1, 14))


def bernoulli_gen_remainder(L, drop: int = 0):
    """Return 1/(e^L-1) - 1/L + 1/2 minus its first ``drop`` Taylor terms.

    Stable for all real L including L -> 0 (Taylor series inside |L| < 1/2).
    ``drop=1`` subtracts L/12, leaving an O(L^3) quantity.
    """
    L = np.asarray(L, dtype=float)
    out = np.empty_like(L)
    small = np.abs(L) < 0.5
    if np.any(small):
        Ls = L[small]
        L2 = Ls * Ls
        acc = np.zeros_like(Ls)
        for c in reversed(_GEN_COEFFS[drop:]):
            acc = acc * L2 + c
        out[small] = acc * Ls ** (2 * drop + 1)
    big = ~small
    if np.any(big):
        Lb = L[big]
        with np.errstate(over="ignore"):
            v = 1.0 / np.expm1(Lb) - 1.0 / Lb + 0.5
        for k in range(drop):
            v = v - _GEN_COEFFS[k] * Lb ** (2 * k + 1)
        out[big] = v
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# double-exponential quadrature

_T_FINITE = 6.0
_T_INF_LEFT = 6.0
_T_INF_RIGHT = 5.0


@lru_cache(maxsize=32)
def _ts_level(level: int):
    """tanh-sinh abscissa data for one refinement level on [-1, 1].

    Returns (t, dist, weight) for t >= 0 only; dist is 1 - x(t).
    """
    h = 2.0 ** -level
    if level == 0:
        t = np.arange(0.0, _T_FINITE + 0.5 * h, h)
    else:
        t = np.arange(h, _T_FINITE + 0.5 * h, 2 * h)
    u = 0.5 * math.pi * np.sinh(t)
    with np.errstate(over="ignore"):
        dist = 2.0 / (1.0 + np.exp(2.0 * u))
        weight = 0.5 * math.pi * np.cosh(t) / np.cosh(u) ** 2
    return t, dist, weight


@lru_cache(maxsize=32)
def _es_level(level: int):
    """exp-sinh data for one level on [0, inf): (offset, weight)."""
    h = 2.0 ** -level
    if level == 0:
        t = np.arange(-_T_INF_LEFT, _T_INF_RIGHT + 0.5 * h, h)
    else:
        t = np.arange(-_T_INF_LEFT + h, _T_INF_RIGHT + 0.5 * h, 2 * h)
    u = 0.5 * math.pi * np.sinh(t)
    off = np.exp(u)
    weight = 0.5 * math.pi * np.cosh(t) * off
    return off, weight


def _eval_checked(f, x):
    with np.errstate(all="ignore"):
        y = np.asarray(f(x), dtype=float)
    y = np.broadcast_to(y, np.shape(x))
    bad = ~np.isfinite(y)
    if np.any(bad):
        where = np.asarray(x)[bad].ravel()[0]
        raise IntegrandError(f"integrand not finite at x={where!r}")
    return y


def _finite_level_nodes(lo, hi, level):
    t, dist, weight = _ts_level(level)
    half = 0.5 * (hi - lo)
    d = half * dist
    w = half * weight
    if level == 0:
        # t = 0 is the midpoint, counted once
        xs = [np.array([lo + half]), lo + d[1:], hi - d[1:]]
        ws = [w[:1], w[1:], w[1:]]
    else:
        xs = [lo + d, hi - d]
        ws = [w, w]
    x = np.concatenate(xs)
    wt = np.concatenate(ws)
    keep = (x > lo) & (x < hi) & (wt > 0)
    return x[keep], wt[keep]


def _inf_level_nodes(lo, level):
    off, weight = _es_level(level)
    x = lo + off
    keep = (x > lo) & np.isfinite(x) & np.isfinite(weight)
    return x[keep], weight[keep]


def quad_de(f: Callable, lo: float, hi: float = math.inf, ctrl: Ctrl = DEFAULT_CTRL,
            *, min_levels: int = 3) -> EvalResult:
    """Integrate ``f`` over (lo, hi) with tanh-sinh (finite) or exp-sinh (hi=inf).

    Integrable power or log singularities at either endpoint are fine; the
    endpoints themselves are never evaluated. The error estimate is the
    difference of the last two refinement levels.
    """
    if not math.isfinite(lo):
        raise DomainError("lower limit must be finite")
    if hi == lo:
        return EvalResult(0.0, 0.0, 0, 0, True)
    if hi < lo:
        r = quad_de(f, hi, lo, ctrl, min_levels=min_levels)
        return EvalResult(-r.value, r.err_est, r.terms_used, r.nodes_used, r.converged)
    infinite = math.isinf(hi)
    max_level = min(ctrl.quad_levels, 12)
    total = 0.0
    prev = None
    nodes = 0
    err = math.inf
    for level in range(max_level + 1):
        if infinite:
            x, w = _inf_level_nodes(lo, level)
        else:
            x, w = _finite_level_nodes(lo, hi, level)
        y = _eval_checked(f, x) if x.size else np.zeros(0)
        nodes += x.size
        h = 2.0 ** -level
        s_new = math.fsum((w * y).tolist())
        total = 0.5 * total + h * s_new if level else s_new
        if prev is not None:
            err = abs(total - prev)
            if level >= min_levels and err <= ctrl.target_tol:
                return _result(total, err, ctrl, nodes=nodes, converged=True)
        prev = total
    return _result(total, err, ctrl, nodes=nodes, converged=False)


_EDGE_2D = 1e-100


def quad_de_unit_square(f: Callable, ctrl: Ctrl = DEFAULT_CTRL, *, max_level: int = 8,
                        min_levels: int = 3) -> EvalResult:
    """Tensor tanh-sinh over (0,1)^2.

    ``f(x, y, xc, yc)`` receives the node coordinates and their exact
    complements ``1-x``, ``1-y`` (accurate near the upper edges).
    """
    def axis(level):
        t, dist, weight = _ts_level(level)
        d = 0.5 * dist
        w = 0.5 * weight
        if level == 0:
            x = np.concatenate([[0.5], d[1:], 1.0 - d[1:]])
            xc = np.concatenate([[0.5], 1.0 - d[1:], d[1:]])
            wt = np.concatenate([w[:1], w[1:], w[1:]])
        else:
            x = np.concatenate([d, 1.0 - d])
            xc = np.concatenate([1.0 - d, d])
            wt = np.concatenate([w, w])
        # nodes this close to an edge only overflow power singularities;
        # their weighted contribution is far below double precision
        keep = (x > _EDGE_2D) & (xc > _EDGE_2D) & (wt > 0)
        return x[keep], xc[keep], wt[keep]

    def block(xa, xca, wa, xb, xcb, wb):
        acc = []
        step = max(1, 400_000 // max(1, xb.size))
        for i in range(0, xa.size, step):
            X = xa[i:i + step, None]
            XC = xca[i:i + step, None]
            val = _eval_checked(lambda _: f(X, xb[None, :], XC, xcb[None, :]),
                                np.empty((X.shape[0], xb.size)))
            acc.append(float(np.sum(wa[i:i + step, None] * val * wb[None, :])))
        return math.fsum(acc)

    levels = min(ctrl.quad_levels, max_level)
    old = (np.zeros(0), np.zeros(0), np.zeros(0))
    raw_old = 0.0  # unscaled sum over old x old pairs
    prev = None
    err = math.inf
    nodes = 0
    total = 0.0
    for level in range(levels + 1):
        new = axis(level)
        h = 2.0 ** -level
        allx = tuple(np.concatenate([o, n]) for o, n in zip(old, new))
        raw = raw_old + block(*new, *allx) + block(*old, *new)
        nodes += new[0].size * allx[0].size + old[0].size * new[0].size
        total = h * h * raw
        if prev is not None:
            err = abs(total - prev)
            if level >= min_levels and err <= ctrl.target_tol:
                return _result(total, err, ctrl, nodes=nodes, converged=True)
        prev = total
        raw_old = raw
        old = allx
    return _result(total, err, ctrl, nodes=nodes, converged=False)


def gauss_legendre(f: Callable, lo: float, hi: float, n: int = 64) -> float:
    """Fixed-order Gauss-Legendre rule; used for smooth pieces."""
    x, w = _leggauss(n)
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    return float(half * np.dot(w, _eval_checked(f, mid + half * x)))


@lru_cache(maxsize=16)
def _leggauss(n):
    return np.polynomial.legendre.leggauss(n)


# ---------------------------------------------------------------------------
# Hurwitz zeta by Euler-Maclaurin

_EM_TERMS = 10
_EM_COEFFS = tuple(BERNOULLI.numbers[2 * k] / math.factorial(2 * k)
                   for k in range(1, _EM_TERMS + 2))


def _check_s_q(s, q):
    if s == 1.0:
        raise PoleError("Hurwitz zeta has a pole at s = 1")
    if np.any(np.asarray(q) <= 0):
        raise DomainError("Hurwitz zeta needs q > 0")


def _hurwitz_em(s: float, q: np.ndarray, deriv: bool = False):
    """Euler-Maclaurin value (or d/ds) and first-omitted-term error, vectorized in q."""
    if s < 0 and not deriv:
        # head and tail cancel at size w^(1-s); carry the extra bits
        val, err = _hurwitz_em_ld(s, np.asarray(q, dtype=float))
        return val, err
    q = np.asarray(q, dtype=float)
    w_min = max(10.0, abs(s))
    n_shift = max(0, math.ceil(w_min - float(np.min(q))))
    head = np.zeros_like(q)
    for n in range(n_shift):
        x = n + q
        if deriv:
            head -= np.log(x) * x ** -s
        else:
            head += x ** -s
    w = n_shift + q
    lw = np.log(w)
    w_s = w ** -s
    if deriv:
        tail = -lw * w * w_s / (s - 1.0) - w * w_s / (s - 1.0) ** 2 - 0.5 * lw * w_s
    else:
        tail = w * w_s / (s - 1.0) + 0.5 * w_s
    # sum_k B_2k/(2k)! (s)_{2k-1} w^{-s-2k+1}
    poch, dpoch = s, 1.0
    wpow = w_s / w  # w^{-s-1}
    last = np.zeros_like(q)
    for k in range(1, _EM_TERMS + 2):
        c = _EM_COEFFS[k - 1]
        term = c * (dpoch - lw * poch) * wpow if deriv else c * poch * wpow
        if k == _EM_TERMS + 1:
            last = term
            break
        tail = tail + term
        # advance (s)_{2k-1} -> (s)_{2k+1}
        for i in (2 * k - 1, 2 * k):
            dpoch = dpoch * (s + i) + poch
            poch = poch * (s + i)
        wpow = wpow / (w * w)
    return head + tail, np.abs(last)


def _ld(frac: Fraction):
    # exact fraction to extended precision via a long decimal string
    num, den = frac.numerator, frac.denominator
    digits = (abs(num) * 10 ** 40) // den
    sign = "-" if num < 0 else ""
    return np.longdouble(f"{sign}{digits}e-40")


@lru_cache(maxsize=1)
def _em_coeffs_ld():
    return tuple(_ld(BERNOULLI.exact[2 * k] / math.factorial(2 * k)) for k in range(1, _EM_TERMS + 2))


def _hurwitz_em_ld(s: float, q: np.ndarray):
    """Value branch of _hurwitz_em in extended precision, for s < 0."""
    ld = np.longdouble
    sl = ld(s)
    ql = q.astype(ld)
    w_min = max(10.0, abs(s))
    n_shift = max(0, math.ceil(w_min - float(np.min(q))))
    head = np.zeros_like(ql)
    for n in range(n_shift):
        head += (ql + n) ** -sl
    w = ql + n_shift
    w_s = w ** -sl
    tail = w * w_s / (sl - 1) + w_s / 2
    poch = sl
    wpow = w_s / w
    coeffs = _em_coeffs_ld()
    last = np.zeros_like(ql)
    for k in range(1, _EM_TERMS + 2):
        term = coeffs[k - 1] * poch * wpow
        if k == _EM_TERMS + 1:
            last = term
            break
        tail = tail + term
        poch = poch * (sl + 2 * k - 1) * (sl + 2 * k)
        wpow = wpow / (w * w)
    return (head + tail).astype(float), np.abs(last).astype(float)


def hurwitz_zeta(s: float, q: float, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """zeta(s, q) = sum_{n>=0} (n+q)^(-s) for real s != 1, q > 0."""
    _check_s_q(s, q)
    val, err = _hurwitz_em(float(s), np.array([float(q)]))
    err = float(err[0]) + 4e-16 * abs(float(val[0]))
    return _result(val[0], err, ctrl, terms=_EM_TERMS)


def hurwitz_zeta_vec(s: float, q) -> np.ndarray:
    """Vectorized zeta(s, q) over an array of q > 0 (value only)."""
    _check_s_q(s, q)
    q_arr = np.atleast_1d(np.asarray(q, dtype=float))
    val, _ = _hurwitz_em(float(s), q_arr)
    return val.reshape(np.shape(q)) if np.ndim(q) else float(val[0])


def hurwitz_zeta_ds(s: float, q: float, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """d/ds zeta(s, q) by term-differentiated Euler-Maclaurin."""
    _check_s_q(s, q)
    val, err = _hurwitz_em(float(s), np.array([float(q)]), deriv=True)
    err = float(err[0]) + 4e-16 * abs(float(val[0]))
    return _result(val[0], err, ctrl, terms=_EM_TERMS)


def zeta(s: float, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    return hurwitz_zeta(s, 1.0, ctrl)


def zeta_prime(s: float, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    return hurwitz_zeta_ds(s, 1.0, ctrl)


def zeta_value(s: float) -> float:
    return hurwitz_zeta(s, 1.0).value


def zeta_prime_value(s: float) -> float:
    return hurwitz_zeta_ds(s, 1.0).value


def log_glaisher() -> float:
    """ln A = 1/12 - zeta'(-1)."""
    return 1.0 / 12.0 - zeta_prime_value(-1.0)


# ---------------------------------------------------------------------------
# Ci, Si and the auxiliary functions f, g
#
#   Ci(x) = f(x) sin x - g(x) cos x,   Si(x) = pi/2 - f(x) cos x - g(x) sin x

_CISI_SERIES_MAX = 2.0
_CISI_ASYM_MIN = 40.0
_ASYM_TERMS = 20


def _cisi_series(x):
    x2 = x * x
    si = np.zeros_like(x)
    cin = np.zeros_like(x)
    # Si = sum (-1)^k x^{2k+1}/((2k+1)(2k+1)!), Cin = sum (-1)^{k+1} x^{2k}/(2k (2k)!)
    p_si = x.copy()      # x^{2k+1}/(2k+1)!
    p_ci = np.ones_like(x)  # x^{2k}/(2k)!
    for k in range(0, 16):
        si += p_si / (2 * k + 1)
        if k:
            cin -= p_ci / (2 * k)
        p_si = -p_si * x2 / ((2 * k + 2) * (2 * k + 3))
        p_ci = -p_ci * x2 / ((2 * k + 1) * (2 * k + 2))
    ci = EULER_GAMMA + np.log(x) - cin
    return ci, si


def _aux_cf(x):
    """(f, g) via the continued fraction of e^{ix} E1(ix); valid for x >= 2."""
    b = 1.0 + 1j * x
    c = np.full(x.shape, 1e300, dtype=complex)
    d = 1.0 / b
    h = d.copy()
    for i in range(2, 400):
        a = -float((i - 1) ** 2)
        b = b + 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h = h * delta
        if np.all(np.abs(delta - 1.0) < 1e-16):
            break
    return -h.imag, h.real


def _aux_asym(x):
    inv2 = 1.0 / (x * x)
    f = np.zeros_like(x)
    g = np.zeros_like(x)
    tf = np.ones_like(x)
    tg = np.ones_like(x)
    for m in range(_ASYM_TERMS):
        f += tf
        g += tg
        tf = -tf * (2 * m + 1) * (2 * m + 2) * inv2
        tg = -tg * (2 * m + 2) * (2 * m + 3) * inv2
    return f / x, g * inv2


def aux_fg(x):
    """Auxiliary functions f(x), g(x) for x > 0 (scalar or array)."""
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xa <= 0):
        raise DomainError("aux_fg needs x > 0")
    f = np.empty_like(xa)
    g = np.empty_like(xa)
    lo = xa <= _CISI_SERIES_MAX
    mid = (~lo) & (xa < _CISI_ASYM_MIN)
    hi = xa >= _CISI_ASYM_MIN
    if np.any(lo):
        xs = xa[lo]
        ci, si = _cisi_series(xs)
        s, c = np.sin(xs), np.cos(xs)
        r = 0.5 * math.pi - si
        f[lo] = ci * s + r * c
        g[lo] = -ci * c + r * s
    if np.any(mid):
        f[mid], g[mid] = _aux_cf(xa[mid])
    if np.any(hi):
        f[hi], g[hi] = _aux_asym(xa[hi])
    if np.ndim(x) == 0:
        return float(f[0]), float(g[0])
    return f.reshape(np.shape(x)), g.reshape(np.shape(x))


def cisi(x):
    """(Ci(x), Si(x)) for x > 0, scalar or array."""
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xa <= 0):
        raise DomainError("Ci needs x > 0")
    ci = np.empty_like(xa)
    si = np.empty_like(xa)
    lo = xa <= _CISI_SERIES_MAX
    if np.any(lo):
        ci[lo], si[lo] = _cisi_series(xa[lo])
    if np.any(~lo):
        xs = xa[~lo]
        f, g = aux_fg(xs)
        s, c = np.sin(xs), np.cos(xs)
        ci[~lo] = f * s - g * c
        si[~lo] = 0.5 * math.pi - f * c - g * s
    if np.ndim(x) == 0:
        return float(ci[0]), float(si[0])
    return ci.reshape(np.shape(x)), si.reshape(np.shape(x))


def ci(x):
    """Cosine integral Ci(x) = -int_x^inf cos t / t dt, x > 0."""
    return cisi(x)[0]


def si(x):
    """Sine integral Si(x) = int_0^x sin t / t dt, x >= 0."""
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0):
        raise DomainError("Si is only provided for x >= 0")
    if xa.ndim == 0:
        return 0.0 if xa == 0 else cisi(float(xa))[1]
    out = np.zeros_like(xa)
    pos = xa > 0
    if np.any(pos):
        out[pos] = cisi(xa[pos])[1]
    return out


# ---------------------------------------------------------------------------
# tails of slowly convergent series

def _deriv(H, x, order):
    """Finite-difference derivative of a smooth function with unit step."""
    pts = x + np.array([-2.0, -1.0, 1.0, 2.0])
    v = np.asarray(H(pts))
    if order == 1:
        return (v[0] - 8 * v[1] + 8 * v[2] - v[3]) / 12.0
    if order == 3:
        return (-v[0] + 2 * v[1] - 2 * v[2] + v[3]) / 2.0
    raise ValueError(order)


def series_tail(H: Callable, M: int, order: int, z: complex = 1.0,
                ctrl: Ctrl = DEFAULT_CTRL):
    """Estimate sum_{n>=M} z^n H(n) for a smooth, decaying H.

    For z = 1 this is Euler-Maclaurin (integral, half term, derivative
    corrections); otherwise repeated summation by parts
    sum_p z^(M+p) nabla^p H(M+p) / (1-z)^(p+1), nabla being the backward
    difference. ``order`` counts correction terms; 0 returns 0.
    """
    if order <= 0:
        return 0.0
    if abs(z - 1.0) < 1e-14:
        integral = quad_de(lambda x: np.real(H(x)), float(M), math.inf,
                           ctrl.replace(target_tol=1e-15, quad_levels=10), min_levels=4).value
        if np.iscomplexobj(H(np.array([float(M)]))):
            integral = integral + 1j * quad_de(lambda x: np.imag(H(x)), float(M), math.inf,
                                               ctrl.replace(target_tol=1e-15, quad_levels=10),
                                               min_levels=4).value
        total = integral + 0.5 * H(np.array([float(M)]))[0]
        if order >= 2:
            total -= _deriv(H, float(M), 1) / 12.0
        if order >= 3:
            total += _deriv(H, float(M), 3) / 720.0
        return total
    vals = np.asarray(H(np.arange(M, M + order, dtype=float)))
    total = 0.0
    for p in range(order):
        nabla = sum((-1) ** i * math.comb(p, i) * vals[p - i] for i in range(p + 1))
        total = total + z ** (M + p) * nabla / (1.0 - z) ** (p + 1)
    return total


def aux_asymptotic_coeffs(kind: str, n: int) -> list:
    """Coefficients c_m with f(x) ~ sum c_m x^(-2m-1) or g(x) ~ sum c_m x^(-2m-2)."""
    if kind == "f":
        return [(-1) ** m * math.factorial(2 * m) for m in range(n)]
    if kind == "g":
        return [(-1) ** m * math.factorial(2 * m + 1) for m in range(n)]
    raise ValueError(kind)


def aux_tail(kind: str, w: float, q: float, order: int, extra: int = 0) -> tuple:
    """sum_{n>=0} F(w(n+q)) (n+q)^(-extra) for F = f or g, from F's asymptotic series.

    Each power of the series sums to a Hurwitz zeta value. Returns the sum of
    the first ``order`` powers and the magnitude of the next one.
    """
    coeffs = aux_asymptotic_coeffs(kind, order + 1)
    shift = 1 if kind == "f" else 2
    parts = []
    for m, c in enumerate(coeffs):
        p = 2 * m + shift
        parts.append(c / w ** p * hurwitz_zeta_vec(float(p + extra), q))
    return math.fsum(parts[:order]), abs(parts[order])


@dataclass(frozen=True)
class IdentityReport:
    """Two-sided numerical check of an identity."""

    case: object
    beta: float
    lhs: EvalResult
    rhs: EvalResult
    residual: float
    passed: bool

    @classmethod
    def compare(cls, case, beta, lhs: EvalResult, rhs: EvalResult, tol: float):
        res = abs(lhs.value - rhs.value)
        return cls(case, beta, lhs, rhs, res, bool(res <= tol))


def cisi_pi_multiple(m, half: bool = False):
    """Ci and Si at x = pi m (or pi (m + 1/2) with ``half``) for integers m >= 1 (>= 0 with half).

    At these points sin and cos are exactly 0 or +-1, so the values reduce to
    the auxiliary functions; this avoids the rounding of sin(pi m) in floating point.
    """
    m = np.atleast_1d(np.asarray(m))
    if np.any(m != np.round(m)):
        raise DomainError("m must be integer")
    sign = np.where(m % 2 == 0, 1.0, -1.0)
    x = math.pi * (m + 0.5) if half else math.pi * m.astype(float)
    f, g = aux_fg(x)
    if half:
        return sign * f, 0.5 * math.pi - sign * g
    return -sign * g, 0.5 * math.pi - sign * f
