"""Mittag-Leffler family E_alpha, F_alpha and the Gamma-ratio exponents.

Branch layout for the exponential-scale family F_alpha(x) = E_alpha(x^alpha):

* plain series for moderate arguments,
* e^x/alpha plus an algebraic correction series for large x (F_SWITCH),
* the remainders A = F - e^x/alpha, B = F' - e^x/alpha, C = F'' - e^x/alpha
  are evaluated cancellation-free: series-minus-exponential below REM_SWITCH,
  K-term asymptotic correction above it.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, EvaluationError, RootNotFoundError
from .gammafn import gamma, rgamma
from .quadrature import DEFAULT_CFG, adaptive_quad

# Series/asymptotic switch for F_alpha (argument x scale) and the point where
# remainder evaluation moves from series-minus-exp to the asymptotic tail.
F_SWITCH = 25.0
REM_SWITCH = 30.0
ASYM_TERMS = 6
REM_ASYM_TERMS = 9
MAX_TERMS = 600


@dataclass(frozen=True)
class StabilityIndex:
    """Stability parameter constrained to the core window (1,2)."""

    alpha: float

    def __post_init__(self):
        if not 1.0 < self.alpha < 2.0:
            raise DomainError("alpha must lie in the open interval (1,2)")


@dataclass(frozen=True)
class GeneralIndex:
    """Stability parameter in (0,2)\\{1} with one-sided jump weights."""

    alpha: float
    cplus: float
    cminus: float

    def __post_init__(self):
        if not (0.0 < self.alpha < 2.0) or self.alpha == 1.0:
            raise DomainError("alpha must lie in (0,2) and differ from 1")
        if self.cplus < 0.0 or self.cminus < 0.0:
            raise DomainError("jump weights must be nonnegative")
        if self.cplus + self.cminus <= 0.0:
            raise DomainError("at least one jump weight must be positive")


class MLRegime(Enum):
    series = "series"
    asymptotic = "asymptotic"


@dataclass(frozen=True)
class MLEvaluation:
    value: float
    regime: MLRegime
    terms_used: int
    truncation_bound: float


def _alpha_of(a):
    """Accept a StabilityIndex or a bare float in (1,2)."""
    alpha = getattr(a, "alpha", a)
    if not 1.0 < alpha < 2.0:
        raise DomainError("alpha must lie in (1,2)")
    return float(alpha)


def _ml_series(alpha, x, deriv, rel_tol):
    # E^(d)(x) = sum_{n>=d} n!/(n-d)! x^(n-d) / Gamma(alpha n + 1), terms >= 0
    total = 0.0
    n = deriv
    terms = 0
    last = math.inf
    while n < MAX_TERMS:
        if deriv == 0:
            ff = 1.0
        elif deriv == 1:
            ff = n
        else:
            ff = n * (n - 1.0)
        t = ff * x ** (n - deriv) * rgamma(alpha * n + 1.0)
        total += t
        terms += 1
        if t < last and t <= rel_tol * total:
            # decreasing phase and negligible: bound the geometric tail
            ratio = t / last if last > 0 else 0.0
            bound = t * ratio / (1.0 - ratio) if ratio < 1.0 else t
            return total, terms, bound
        last = t
        n += 1
    raise EvaluationError("Mittag-Leffler series did not converge in %d terms"
                          % MAX_TERMS, partial=total, bound=last)


def mittag_leffler(alpha, x, deriv=0, rel_tol=1e-12):
    """E_alpha^{(deriv)}(x) for alpha in (0,2], x >= 0, deriv in {0,1,2}."""
    alpha = float(getattr(alpha, "alpha", alpha))
    if not 0.0 < alpha <= 2.0:
        raise DomainError("mittag_leffler requires alpha in (0,2]")
    if x < 0.0:
        raise DomainError("mittag_leffler requires x >= 0")
    if deriv not in (0, 1, 2):
        raise DomainError("deriv must be 0, 1 or 2")

    z = x ** (1.0 / alpha) if x > 0.0 else 0.0
    if z <= F_SWITCH:
        val, terms, bound = _ml_series(alpha, x, deriv, rel_tol)
        return MLEvaluation(val, MLRegime.series, terms, bound)

    # exponential branch: E_alpha(x) ~ e^z/alpha - sum_k x^{-k}/Gamma(1-alpha k)
    ez = math.exp(z)
    if deriv == 0:
        val = ez / alpha
        for k in range(1, ASYM_TERMS + 1):
            val -= x ** (-float(k)) * rgamma(1.0 - alpha * k)
        bound = abs(x ** (-float(ASYM_TERMS + 1))
                    * rgamma(1.0 - alpha * (ASYM_TERMS + 1)))
    elif deriv == 1:
        val = ez * z / (alpha * alpha * x)
        for k in range(1, ASYM_TERMS + 1):
            val += k * x ** (-float(k) - 1.0) * rgamma(1.0 - alpha * k)
        bound = abs((ASYM_TERMS + 1) * x ** (-float(ASYM_TERMS) - 2.0)
                    * rgamma(1.0 - alpha * (ASYM_TERMS + 1)))
    else:
        ia = 1.0 / alpha
        val = ez / (alpha * alpha) * ((ia - 1.0) * x ** (ia - 2.0)
                                      + ia * x ** (2.0 * ia - 2.0))
        for k in range(1, ASYM_TERMS + 1):
            val -= k * (k + 1.0) * x ** (-float(k) - 2.0) \
                * rgamma(1.0 - alpha * k)
        bound = abs((ASYM_TERMS + 1) * (ASYM_TERMS + 2)
                    * x ** (-float(ASYM_TERMS) - 3.0)
                    * rgamma(1.0 - alpha * (ASYM_TERMS + 1)))
    return MLEvaluation(val, MLRegime.asymptotic, ASYM_TERMS, bound)


_REM_MP_FROM = 9.0
_MP_GAMMA_CACHE = {}


def _rem_series_mp(alpha, x, which):
    """Series-minus-exponential remainder in extended precision.

    In the window (9, REM_SWITCH) the float64 route loses too many digits to
    the e^x cancellation while the asymptotic series has not converged yet;
    a short fixed-precision sweep bridges the gap.  Term-wise,
    F^{(d)}(x) = sum_n x^{alpha n - d} / Gamma(alpha n + 1 - d).
    """
    import mpmath as mp

    d = {"A": 0, "B": 1, "C": 2}[which]
    key = (round(alpha, 12), d)
    tab = _MP_GAMMA_CACHE.setdefault(key, [])
    dps = int(34 + 0.45 * x)
    with mp.workdps(dps):
        am = mp.mpf(alpha)
        xm = mp.mpf(x)
        total = mp.mpf(0)
        n = 1 if d else 0
        while True:
            while len(tab) <= n:
                # cache reciprocal Gamma values at a precision ceiling
                with mp.workdps(60):
                    m = len(tab)
                    arg = am * m + 1 - d
                    tab.append(mp.mpf(0) if (arg <= 0 and arg == int(arg))
                               else 1 / mp.gamma(arg))
            t = xm ** (am * n - d) * tab[n]
            total += t
            if am * n > x and t < total * mp.mpf(10) ** (-dps):
                break
            n += 1
        return float(total - mp.e ** xm / am)


def F_remainders(alpha, x, which):
    """A(x) = F - e^x/alpha, B = F' - e^x/alpha, C = F'' - e^x/alpha.

    Evaluated without exponential-scale cancellation: direct subtraction is
    safe for small x, an extended-precision series bridges the mid window,
    and the asymptotic correction series takes over above REM_SWITCH.
    """
    alpha = _alpha_of(alpha)
    if x <= 0.0:
        raise DomainError("F_remainders requires x > 0")
    if which not in ("A", "B", "C"):
        raise DomainError("which must be one of 'A', 'B', 'C'")
    if x < _REM_MP_FROM:
        deriv = {"A": 0, "B": 1, "C": 2}[which]
        return F_family(alpha, x, deriv) - math.exp(x) / alpha
    if x < REM_SWITCH:
        return _rem_series_mp(alpha, x, which)
    acc = 0.0
    for k in range(1, REM_ASYM_TERMS + 1):
        ak = alpha * k
        c = rgamma(1.0 - ak) * x ** (-ak)
        if which == "A":
            acc -= c
        elif which == "B":
            acc += ak * c / x
        else:
            acc -= ak * (ak + 1.0) * c / (x * x)
    return acc


def F_family(alpha, x, deriv=0):
    """F_alpha(x) = E_alpha(x^alpha) and its first two derivatives."""
    alpha = _alpha_of(alpha)
    if x < 0.0:
        raise DomainError("F_family requires x >= 0")
    if deriv not in (0, 1, 2):
        raise DomainError("deriv must be 0, 1 or 2")
    if x == 0.0:
        if deriv == 0:
            return 1.0
        if deriv == 1:
            return 0.0
        raise DomainError("F'' is singular at x = 0")
    if x > F_SWITCH:
        return math.exp(x) / alpha + F_remainders(alpha, x,
                                                  "ABC"[deriv])
    y = x ** alpha
    if deriv == 0:
        return mittag_leffler(alpha, y, 0).value
    e1 = mittag_leffler(alpha, y, 1).value
    if deriv == 1:
        return alpha * x ** (alpha - 1.0) * e1
    e2 = mittag_leffler(alpha, y, 2).value
    return (alpha * (alpha - 1.0) * x ** (alpha - 2.0) * e1
            + alpha * alpha * x ** (2.0 * alpha - 2.0) * e2)


def derivative_stack(alpha, x, n_max):
    """Exact term-wise derivatives (E_alpha(x), E'_alpha(x), ..., E^(n_max))."""
    alpha = float(getattr(alpha, "alpha", alpha))
    if not 0.0 < alpha <= 2.0:
        raise DomainError("derivative_stack requires alpha in (0,2]")
    if x < 0.0:
        raise DomainError("derivative_stack requires x >= 0")
    if not 0 <= n_max <= 12:
        raise DomainError("n_max must lie in [0,12]")
    out = []
    for m in range(n_max + 1):
        total = 0.0
        last = math.inf
        ff = math.factorial(m)     # falling factorial n!/(n-m)! at n = m
        n = m
        while True:
            t = ff * x ** (n - m) * rgamma(alpha * n + 1.0)
            total += t
            if t < last and t <= 1e-16 * total:
                break
            if n - m >= MAX_TERMS:
                raise EvaluationError("derivative_stack term budget exhausted",
                                      partial=total, bound=t)
            last = t
            n += 1
            ff = ff * n / (n - m)
        out.append(total)
    return out


def psi(alpha, lam):
    """Lamperti exponent Gamma(lambda+alpha)/Gamma(lambda); psi(0) = 0."""
    alpha = _alpha_of(alpha)
    if lam < 0.0:
        raise DomainError("psi requires lambda >= 0")
    return gamma(lam + alpha) * rgamma(lam)


def psi_minus(alpha, lam):
    """Gamma(alpha(lambda+1)-1)/Gamma(alpha lambda - 1) with 1/Gamma(-n) = 0."""
    alpha = _alpha_of(alpha)
    if lam < 0.0:
        raise DomainError("psi_minus requires lambda >= 0")
    return gamma(alpha * (lam + 1.0) - 1.0) * rgamma(alpha * lam - 1.0)


def psi_general(idx, lam):
    """Two-sided exponent Gamma(-a)(c- G(l+a)/G(l) + c+ G(1-l)/G(1-a-l))."""
    if not isinstance(idx, GeneralIndex):
        raise DomainError("psi_general requires a GeneralIndex")
    a = idx.alpha
    if not -a < lam < 1.0:
        raise DomainError("lambda must lie in (-alpha, 1)")
    return gamma(-a) * (idx.cminus * gamma(lam + a) * rgamma(lam)
                        + idx.cplus * gamma(1.0 - lam) * rgamma(1.0 - a - lam))


def theta_root(idx, tol=1e-12):
    """Smallest positive root of lambda -> psi_general(idx, -lambda) on (0, alpha)."""
    if not isinstance(idx, GeneralIndex):
        raise DomainError("theta_root requires a GeneralIndex")
    a = idx.alpha
    g = lambda lam: psi_general(idx, -lam)
    n_scan = 4096
    prev_l = a / n_scan
    prev_v = g(prev_l)
    if prev_v == 0.0:
        return prev_l
    for i in range(2, n_scan):
        lam = a * i / n_scan
        v = g(lam)
        if v == 0.0:
            return lam
        if (v > 0.0) != (prev_v > 0.0):
            lo, hi = prev_l, lam
            flo = prev_v
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                fm = g(mid)
                if fm == 0.0:
                    return mid
                if (fm > 0.0) == (flo > 0.0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            return 0.5 * (lo + hi)
        prev_l, prev_v = lam, v
    raise RootNotFoundError("no sign change of psi_general(idx, -lambda) "
                            "found on (0, alpha)")


def psi_integral(alpha, lam, cfg=DEFAULT_CFG):
    """Integral representation of psi, for cross-checking the Gamma ratio.

    After u = e^y - 1 the representation reads
        psi(lam) = lam/((a-1) G(-a)) + (1/G(-a)) int_0^inf
                   ((1+u)^{-lam} - 1 + lam u 1{u<=1}) u^{-1-a} du.
    The (0,1] panel is regularized by h(u) = ((1+u)^{-lam} - 1 + lam u)/u^2
    (smooth, h(0) = lam(lam+1)/2) and the substitution u = w^{1/(2-a)}.
    """
    alpha = _alpha_of(alpha)
    if lam < 0.0:
        raise DomainError("psi_integral requires lambda >= 0")
    if lam == 0.0:
        return 0.0
    ga = gamma(-alpha)
    p = 1.0 / (2.0 - alpha)

    def h(u):
        if u < 1e-3:
            # Taylor expansion of ((1+u)^-lam - 1 + lam u)/u^2
            c2 = lam * (lam + 1.0) / 2.0
            c3 = -lam * (lam + 1.0) * (lam + 2.0) / 6.0
            c4 = lam * (lam + 1.0) * (lam + 2.0) * (lam + 3.0) / 24.0
            return c2 + u * (c3 + u * c4)
        return (math.expm1(-lam * math.log1p(u)) + lam * u) / (u * u)

    inner, _ = adaptive_quad(lambda w: h(w ** p), 0.0, 1.0, cfg)
    inner *= p

    def tail(r):
        # u = 1/r on (1, inf); integrand ((1+u)^{-lam} - 1) u^{-1-a} du
        return math.expm1(-lam * math.log1p(1.0 / r)) * r ** (alpha - 1.0)

    outer, _ = adaptive_quad(tail, 0.0, 1.0, cfg)
    return lam / ((alpha - 1.0) * ga) + (inner + outer) / ga
