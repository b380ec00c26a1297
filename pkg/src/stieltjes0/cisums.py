"""Weighted sums of Ci(beta n): closed forms and a brute-force oracle.

Every closed form here comes from Ci(x) = gamma + ln x + int_0^x (cos t - 1)/t dt:

    sum_n w_n Ci(beta n) = (gamma + ln beta) sum w_n + sum w_n ln n
                           + int_0^1 [K(beta v) - K(0)] dv / v,

with K(x) = sum_n w_n cos(n x) a known Fourier cosine sum. The closed forms of
K for alternating weights hold for x <= pi only; past pi the kernel is
evaluated at 2 pi - x (K is even and 2 pi periodic).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .numkernel import (
    DEFAULT_CTRL,
    EULER_GAMMA,
    LN_2PI,
    Ctrl,
    DomainError,
    EvalResult,
    IdentityReport,
    PoleError,
    _result,
    aux_fg,
    bernoulli_poly,
    cisi,
    comp_sum,
    hurwitz_zeta_vec,
    log_glaisher,
    quad_de,
    series_tail,
    zeta_prime_value,
    zeta_value,
)

TWO_PI = 2.0 * math.pi
PROP4_TOL = 1e-6

_NAMES = ("P2", "P2Alt", "P4", "P4Alt", "Even2k", "Even2kAlt", "RealA", "RealAAlt",
          "Odd", "OddAlt", "PowerZ")


@dataclass(frozen=True)
class CaseId:
    """One weight family. ``k`` for Even2k*, ``a`` for RealA*/Odd*, ``z`` for PowerZ."""

    name: str
    k: int | None = None
    a: float | None = None
    z: float | None = None

    def __post_init__(self):
        if self.name not in _NAMES:
            raise DomainError(f"unknown case {self.name!r}")
        if self.name.startswith("Even2k"):
            if self.k is None or int(self.k) != self.k or self.k < 1:
                raise DomainError("Even2k cases need an integer k >= 1")
        if self.name.startswith(("RealA", "Odd")):
            if self.a is None or not self.a > 1:
                raise DomainError("this case needs a > 1")
            if self.name.startswith("RealA") and float(self.a).is_integer() and self.a % 2 == 1:
                raise PoleError("sec(pi a/2) has a pole at odd integer a; use an Even2k case "
                                "or a non-integer a")
            if self.name.startswith("Odd") and float(self.a).is_integer():
                raise PoleError("csc(pi a) has a pole at integer a")
        if self.name == "PowerZ":
            if self.z is None or abs(self.z) > 1:
                raise DomainError("PowerZ needs |z| <= 1")

    @property
    def alternating(self) -> bool:
        return self.name.endswith("Alt")

    def label(self) -> str:
        if self.k is not None:
            return f"{self.name}({self.k})"
        if self.a is not None:
            return f"{self.name}({self.a:g})"
        if self.z is not None:
            return f"{self.name}({self.z:g})"
        return self.name

    @classmethod
    def make(cls, name: str, *, k: int | None = None, a: float | None = None,
             z: float | None = None) -> "CaseId":
        """Build a case, sending RealA requests at even integer a = 2k to Even2k(k)."""
        if name.startswith("RealA") and a is not None and float(a).is_integer() and a % 2 == 0:
            return cls(name.replace("RealA", "Even2k"), k=int(a) // 2)
        return cls(name, k=k, a=a, z=z)

    @classmethod
    def parse(cls, text: str) -> "CaseId":
        """Parse labels such as ``P2``, ``Even2k(3)``, ``RealAAlt(2.5)``, ``PowerZ(-0.5)``."""
        m = re.fullmatch(r"\s*([A-Za-z0-9]+)\s*(?:\(\s*([^)]*)\s*\))?\s*", text)
        if not m:
            raise DomainError(f"cannot parse case {text!r}")
        lookup = {n.lower(): n for n in _NAMES}
        name = lookup.get(m.group(1).lower().replace("-", ""))
        if name is None:
            raise DomainError(f"unknown case {text!r}")
        arg = m.group(2)
        if name.startswith("Even2k"):
            return cls(name, k=int(arg) if arg else None)
        if name.startswith(("RealA", "Odd")):
            return cls.make(name, a=float(arg) if arg else None)
        if name == "PowerZ":
            return cls(name, z=float(arg) if arg else None)
        if arg:
            raise DomainError(f"case {name} takes no parameter")
        return cls(name)


def _check_beta(beta):
    if not (0.0 < beta <= TWO_PI * (1 + 1e-15)):
        raise DomainError("beta must lie in (0, 2 pi]")


# ---------------------------------------------------------------------------
# weights and the oracle

def _weight_and_phase(case: CaseId):
    """Return (w(n) without sign or geometric factor, extra geometric ratio)."""
    n = case.name
    if n.startswith("P2"):
        return (lambda x: x ** -2.0), (-1.0 if case.alternating else 1.0)
    if n.startswith("P4"):
        return (lambda x: x ** -4.0), (-1.0 if case.alternating else 1.0)
    if n.startswith("Even2k"):
        p = 2.0 * case.k
        return (lambda x: x ** -p), (-1.0 if case.alternating else 1.0)
    if n.startswith("RealA"):
        a = case.a
        return (lambda x: x ** -a), (-1.0 if case.alternating else 1.0)
    if n.startswith("Odd"):
        a = case.a
        return (lambda x: (2.0 * x + 1.0) ** -a), (-1.0 if case.alternating else 1.0)
    return (lambda x: 1.0 / (x * (x + 1.0))), case.z


def ci_sum_oracle(beta: float, case: CaseId, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """Direct sum of w_n Ci(beta n) for n <= max_terms plus an asymptotic tail.

    Past the cutoff Ci(beta n) = Re[e^{i beta n}(-g(beta n) - i f(beta n))];
    the smooth factor w(n)(-g - i f) is summed against the geometric ratio
    by summation by parts (Euler-Maclaurin when the ratio is 1).
    """
    _check_beta(beta)
    if case.name == "PowerZ" and case.z == 0:
        return _result(0.0, 0.0, ctrl)
    w, r = _weight_and_phase(case)
    N = ctrl.max_terms
    n = np.arange(1, N + 1, dtype=float)
    c, _ = cisi(beta * n)
    geo = np.power(r, n) if r != 1.0 else np.ones_like(n)
    head = comp_sum(w(n) * geo * c)

    def H(x):
        x = np.asarray(x, dtype=float)
        f, g = aux_fg(beta * x)
        return w(x) * (-g - 1j * f)

    z = complex(r) * complex(math.cos(beta), math.sin(beta))
    if abs(z - 1.0) < 1e-12:
        z = 1.0
    order = max(ctrl.tail_order, 1)
    tail = float(np.real(series_tail(H, N + 1, order, z=z, ctrl=ctrl)))
    more = float(np.real(series_tail(H, N + 1, order + 1, z=z, ctrl=ctrl)))
    return _result(head + tail, abs(more - tail) + 1e-15, ctrl, terms=N)


# ---------------------------------------------------------------------------
# Fourier cosine sums

def _zeta_neg(s, q):
    """zeta(s, q) for s < 0 and q in [0, 1]; q = 0 is the limit zeta(s, 1)."""
    q = np.asarray(q, dtype=float)
    qq = np.where(q > 0, q, 1.0)
    return np.asarray(hurwitz_zeta_vec(s, qq), dtype=float)


def fourier_cos_closed(x, kind: str, *, k: int | None = None, a: float | None = None,
                       y: float = 0.0, z: float | None = None):
    """Closed form of a Fourier cosine sum sum_n w_n cos(n x), as printed for 0 < x <= 2 pi.

    kinds: pow2, pow2alt, pow4, pow4alt, even2k, even2kalt, realA, realAalt,
    odd, oddalt, powerz. The alternating kinds hold for x <= pi.
    """
    x = np.asarray(x, dtype=float)
    pi = math.pi
    if kind == "pow2":
        return pi ** 2 / 6.0 - pi * x / 2.0 + x * x / 4.0
    if kind == "pow2alt":
        return x * x / 4.0 - pi ** 2 / 12.0
    if kind == "pow4":
        return -x ** 4 / 48.0 + pi / 12.0 * x ** 3 - pi ** 2 / 12.0 * x ** 2 + zeta_value(4)
    if kind == "pow4alt":
        return -x ** 4 / 48.0 + pi ** 2 / 24.0 * x ** 2 - 7.0 / 8.0 * zeta_value(4)
    if kind in ("even2k", "even2kalt"):
        c = (-1) ** (k - 1) / (2.0 * math.factorial(2 * k)) * TWO_PI ** (2 * k)
        arg = x / TWO_PI if kind == "even2k" else (x + pi) / TWO_PI
        return c * bernoulli_poly(2 * k, arg)
    if kind in ("realA", "realAalt"):
        if kind == "realA":
            q1, q2 = 1.0 - x / TWO_PI, x / TWO_PI
        else:
            q1, q2 = (pi - x) / TWO_PI, (pi + x) / TWO_PI
        if y == 0.0:
            # sin(pi a/2)/sin(pi a) folded into sec(pi a/2): finite at even integer a
            pref = TWO_PI ** a / (4.0 * math.gamma(a) * math.cos(pi * a / 2.0))
            return pref * (_zeta_neg(1.0 - a, q1) + _zeta_neg(1.0 - a, q2))
        pref = TWO_PI ** a / (2.0 * math.gamma(a) * math.sin(pi * a))
        return pref * (math.sin(y + pi * a / 2.0) * _zeta_neg(1.0 - a, q1)
                       - math.sin(y - pi * a / 2.0) * _zeta_neg(1.0 - a, q2))
    if kind == "odd":
        pref = TWO_PI ** a / (4.0 * math.gamma(a) * math.sin(pi * a))
        s = 1.0 - a
        return pref * (-np.sin((x + pi * a) / 2.0) * (_zeta_neg(s, (x + TWO_PI) / (4 * pi))
                                                       - _zeta_neg(s, x / (4 * pi)))
                       + np.sin((x - pi * a) / 2.0) * (_zeta_neg(s, (TWO_PI - x) / (4 * pi))
                                                        - _zeta_neg(s, 1.0 - x / (4 * pi))))
    if kind == "oddalt":
        pref = TWO_PI ** a / (4.0 * math.gamma(a) * math.sin(pi * a))
        s = 1.0 - a
        return pref * (np.cos((x + pi * a) / 2.0) * (_zeta_neg(s, (x + pi) / (4 * pi))
                                                      - _zeta_neg(s, (x + 3 * pi) / (4 * pi)))
                       + np.cos((x - pi * a) / 2.0) * (_zeta_neg(s, (pi - x) / (4 * pi))
                                                        - _zeta_neg(s, (3 * pi - x) / (4 * pi))))
    if kind == "powerz":
        return 1.0 + _powerz_bracket(x, z) / z - _powerz_bracket(np.zeros(1), z)[0] / z \
            - (z - 1.0) * _log1m(z) / z
    raise DomainError(f"unknown kernel kind {kind!r}")


def _log1m(z):
    return math.log1p(-z) if z < 1 else -math.inf


def _powerz_bracket(x, z):
    """(z-1)ln(1-z) - (1/2)(z - cos x) ln(1 - 2z cos x + z^2) - sin x atan2(z sin x, 1 - z cos x).

    This is z [K(x) - K(0)] for the z^n/(n(n+1)) weights; it vanishes at x = 0.
    """
    x = np.asarray(x, dtype=float)
    c, s = np.cos(x), np.sin(x)
    first = 0.0 if z == 1.0 else (z - 1.0) * math.log1p(-z)
    # 1 - 2 z cos x + z^2 = (1-z)^2 + 2 z (1 - cos x), accurate near x = 0
    arg = (1.0 - z) ** 2 + 4.0 * z * np.sin(x / 2.0) ** 2
    with np.errstate(divide="ignore"):
        logterm = np.where(arg > 0, np.log(np.where(arg > 0, arg, 1.0)), 0.0)
    return first - 0.5 * (z - c) * logterm - s * np.arctan2(z * s, 1.0 - z * c)


# ---------------------------------------------------------------------------
# closed forms

def _kernel_kind(case: CaseId) -> tuple:
    n = case.name
    alt = "alt" if case.alternating else ""
    if n.startswith("Even2k"):
        return "even2k" + alt, {"k": case.k}
    if n.startswith("RealA"):
        return "realA" + alt, {"a": case.a}
    if n.startswith("Odd"):
        return "odd" + alt, {"a": case.a}
    if n.startswith("P2"):
        return "pow2" + alt, {}
    return "pow4" + alt, {}


def _kernel_diff(case: CaseId):
    """K(x) - K(0) on 0 <= x <= pi for alternating cases, 0 <= x <= 2 pi otherwise.

    K(0) comes from the same closed form at x = 0, so small systematic errors
    of the Hurwitz evaluations cancel instead of piling up against dv/v.
    """
    if case.name == "PowerZ":
        z = case.z
        return lambda x: _powerz_bracket(x, z) / z
    kind, kw = _kernel_kind(case)
    k0 = float(np.asarray(fourier_cos_closed(np.zeros(1), kind, **kw))[0])
    return lambda x: fourier_cos_closed(x, kind, **kw) - k0


def kernel_integral(beta: float, case: CaseId, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """int_0^1 [K(beta v) - K(0)] dv / v by quadrature, folding alternating kernels past pi."""
    _check_beta(beta)
    kd = _kernel_diff(case)
    qctrl = ctrl.replace(target_tol=min(ctrl.target_tol, 1e-13))
    if not case.alternating or beta <= math.pi:
        r = quad_de(lambda v: kd(beta * v) / v, 0.0, 1.0, qctrl)
        return r
    split = math.pi / beta
    r1 = quad_de(lambda v: kd(beta * v) / v, 0.0, split, qctrl)
    r2 = quad_de(lambda v: kd(TWO_PI - beta * v) / v, split, 1.0, qctrl)
    return EvalResult(r1.value + r2.value, r1.err_est + r2.err_est, 0,
                      r1.nodes_used + r2.nodes_used, r1.converged and r2.converged)


def _alt_zeta(s):
    # sum (-1)^n n^-s and sum (-1)^n ln n n^-s
    zs, zp = zeta_value(s), zeta_prime_value(s)
    t = 2.0 ** (1.0 - s)
    return (t - 1.0) * zs, (1.0 - t) * zp + t * math.log(2.0) * zs


def _prefix(case: CaseId, ctrl: Ctrl):
    """(sum w_n, sum w_n ln n) for the case weights."""
    n = case.name
    s = {"P2": 2.0, "P4": 4.0}.get(n[:2])
    if n.startswith("Even2k"):
        s = 2.0 * case.k
    elif n.startswith("RealA"):
        s = case.a
    if s is not None:
        if case.alternating:
            return _alt_zeta(s)
        return zeta_value(s), -zeta_prime_value(s)
    if n.startswith("Odd"):
        a = case.a
        S, T = st_series(a, ctrl)
        if case.alternating:
            return 4.0 ** -a * (hurwitz_zeta_vec(a, 0.25) - hurwitz_zeta_vec(a, 0.75)) - 1.0, T
        return (1.0 - 2.0 ** -a) * zeta_value(a) - 1.0, S
    z = case.z
    W = 1.0 if z == 1.0 else 1.0 - math.log1p(-z) + math.log1p(-z) / z
    return W, powerz_log_sum(z, ctrl)


def ci_sum_closed(beta: float, case: CaseId, ctrl: Ctrl = DEFAULT_CTRL) -> EvalResult:
    """Closed form of sum_n w_n Ci(beta n).

    Polynomial cases use their explicit forms (alternating ones for beta <= pi);
    the others integrate the Fourier kernel numerically.
    """
    _check_beta(beta)
    if case.name == "PowerZ" and case.z == 0:
        return _result(0.0, 0.0, ctrl)
    lead = EULER_GAMMA + math.log(beta)
    pi = math.pi
    n = case.name
    if n == "P2":
        val = lead * zeta_value(2) - zeta_prime_value(2) - pi / 2.0 * beta + beta ** 2 / 8.0
        return _result(val, 1e-15, ctrl)
    if n == "P4":
        val = (lead * zeta_value(4) - zeta_prime_value(4)
               + beta ** 2 / 12.0 * (-beta ** 2 / 16.0 + pi / 3.0 * beta - pi ** 2 / 2.0))
        return _result(val, 1e-15, ctrl)
    if n == "P2Alt" and beta <= pi:
        val = (0.5 * (math.log(2.0) - lead) * zeta_value(2) + 0.5 * zeta_prime_value(2)
               + beta ** 2 / 8.0)
        return _result(val, 1e-15, ctrl)
    if n == "P4Alt" and beta <= pi:
        val = ((math.log(2.0) - 7.0 * lead) * zeta_value(4) / 8.0 + 7.0 / 8.0 * zeta_prime_value(4)
               - beta ** 4 / 192.0 + zeta_value(2) / 8.0 * beta ** 2)
        return _result(val, 1e-15, ctrl)
    W, L = _prefix(case, ctrl)
    r = kernel_integral(beta, case, ctrl)
    return _result(lead * W + L + r.value, r.err_est + 1e-14, ctrl, nodes=r.nodes_used,
                   converged=r.converged)


def prop4_report(beta: float, case: CaseId, ctrl: Ctrl = DEFAULT_CTRL,
                 tol: float = PROP4_TOL) -> IdentityReport:
    lhs = ci_sum_oracle(beta, case, ctrl)
    rhs = ci_sum_closed(beta, case, ctrl)
    return IdentityReport.compare(case.label(), beta, lhs, rhs, tol)


# ---------------------------------------------------------------------------
# auxiliary log sums

def st_series(a: float, ctrl: Ctrl = DEFAULT_CTRL) -> tuple:
    """S(a) = sum_{n>=2} ln n/(2n+1)^a and T(a) = sum_{n>=2} (-1)^n ln n/(2n+1)^a.

    Direct sums to max_terms plus Euler-Maclaurin (S) and summation-by-parts (T) tails.
    """
    if not a > 1:
        raise DomainError("need a > 1")
    N = ctrl.max_terms
    n = np.arange(2, N + 1, dtype=float)
    t = np.log(n) * (2.0 * n + 1.0) ** -a
    sign = np.where(n % 2 == 0, 1.0, -1.0)

    def H(x):
        x = np.asarray(x, dtype=float)
        return np.log(x) * (2.0 * x + 1.0) ** -a

    order = max(ctrl.tail_order + 1, 3)
    S = comp_sum(t) + float(np.real(series_tail(H, N + 1, order, ctrl=ctrl)))
    T = comp_sum(sign * t) + float(np.real(series_tail(H, N + 1, order, z=-1.0, ctrl=ctrl)))
    return S, T


def st_series_result(a: float, ctrl: Ctrl = DEFAULT_CTRL) -> tuple:
    """S(a), T(a) as EvalResults; err_est is the last tail correction's size."""
    S, T = st_series(a, ctrl)
    S0, T0 = st_series(a, ctrl.replace(tail_order=max(ctrl.tail_order - 1, 0)))
    N = ctrl.max_terms
    bound = math.log(N) * (2.0 * N + 1.0) ** (1.0 - a) / (2.0 * (a - 1.0))
    return (_result(S, abs(S - S0), ctrl, terms=N, converged=abs(S - S0) <= max(ctrl.target_tol, 1e-15)),
            _result(T, abs(T - T0), ctrl, terms=N, converged=bound < 1.0))


def powerz_log_sum(z: float, ctrl: Ctrl = DEFAULT_CTRL) -> float:
    """sum_{n>=1} z^n ln n / (n(n+1)) for |z| <= 1."""
    if abs(z) > 1:
        raise DomainError("need |z| <= 1")
    if z == 0:
        return 0.0
    N = ctrl.max_terms
    n = np.arange(1, N + 1, dtype=float)
    head = comp_sum(np.power(z, n) * np.log(n) / (n * (n + 1.0)))

    def H(x):
        x = np.asarray(x, dtype=float)
        return np.log(x) / (x * (x + 1.0))

    return head + float(np.real(series_tail(H, N + 1, max(ctrl.tail_order, 3), z=z, ctrl=ctrl)))


# ---------------------------------------------------------------------------
# the zeta'(2) / Glaisher remark

def glaisher_check() -> dict:
    """Compare zeta'(2) with zeta(2)[gamma + ln 2pi -+ 12 ln A] for both signs."""
    zp = zeta_prime_value(2)
    lnA = log_glaisher()
    base = EULER_GAMMA + LN_2PI
    return {
        "zeta_prime_2": zp,
        "minus": zeta_value(2) * (base - 12.0 * lnA) - zp,
        "plus": zeta_value(2) * (base + 12.0 * lnA) - zp,
    }
