"""q = 1 resolvent densities of the two reflected processes, their action on
test functions, and the recurrent-extension entrance formula.

Density evaluation is cancellation-free at every scale: the exponential
parts of F, F', F'' cancel analytically, leaving only the remainders
A = F - e^x/alpha, B = F' - e^x/alpha, C = F'' - e^x/alpha.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError
from .fracops import SmoothTestFunction
from .gammafn import gamma
from .quadrature import DEFAULT_CFG, adaptive_quad
from .specfun import (F_family, F_remainders, REM_SWITCH, _REM_MP_FROM,
                      _alpha_of)
from .dist import iminus_laplace_quad, iminus_moment


class Side(Enum):
    hat = "hat"      # infimum-reflected process Xhat
    plain = "plain"  # supremum-reflected process X


@dataclass(frozen=True)
class ResolventDensityPoint:
    x: float
    y: float
    value: float
    side: Side

    def __post_init__(self):
        if self.value < 0.0:
            raise DomainError("resolvent densities are nonnegative")


def _rem(alpha, x, which):
    """F_remainders extended to x = 0 by the series limits."""
    if x == 0.0:
        if which == "A":
            return 1.0 - 1.0 / alpha
        if which == "B":
            return -1.0 / alpha
        raise DomainError("C is singular at 0")
    return F_remainders(alpha, x, which)


def uhat1_density(alpha, x, y):
    """Resolvent density of Xhat: e^{-y} F(x) - F'(x-y) 1{y<=x}."""
    alpha = _alpha_of(alpha)
    if x < 0.0 or y < 0.0:
        raise DomainError("x and y must be nonnegative")
    a = _rem(alpha, x, "A")
    if y <= x:
        return math.exp(-y) * a - _rem(alpha, x - y, "B")
    # exponential parts no longer cancel but stay bounded: e^{x-y}/alpha
    return math.exp(x - y) / alpha + math.exp(-y) * a


def u1_density(alpha, x, y):
    """Resolvent density of X: e^{-x} F''(y) - F'(y-x) 1{y>=x}."""
    alpha = _alpha_of(alpha)
    if x < 0.0:
        raise DomainError("x must be nonnegative")
    if y <= 0.0:
        raise DomainError("u1_density requires y > 0 (F'' singular at 0)")
    c = F_remainders(alpha, y, "C")
    if y >= x:
        return math.exp(-x) * c - _rem(alpha, y - x, "B")
    return math.exp(y - x) / alpha + math.exp(-x) * c


def lambda_f(f, cfg=DEFAULT_CFG):
    """lambda_f = int_0^inf e^{-y} f(y) dy."""
    fv = f.eval_f if hasattr(f, "eval_f") else f
    val, _ = adaptive_quad(lambda y: math.exp(-y) * fv(y), 0.0,
                           cfg.tail_cutoff, cfg)
    return val


def uhat1_apply(f, alpha, x, cfg=DEFAULT_CFG):
    """(Uhat_1 f)(x) by quadrature against the density (kink marked at y=x)."""
    alpha = _alpha_of(alpha)
    fv = f.eval_f if hasattr(f, "eval_f") else f
    pts = sorted(p for p in (x, x - REM_SWITCH, x - _REM_MP_FROM)
                 if 0.0 < p < cfg.tail_cutoff)
    val, _ = adaptive_quad(lambda y: uhat1_density(alpha, x, y) * fv(y),
                           0.0, cfg.tail_cutoff, cfg, points=pts or None)
    return val


def u1_apply(f, alpha, x, cfg=DEFAULT_CFG):
    """(U_1 f)(x) by quadrature; the y^{alpha-2} origin singularity gets a
    dedicated substituted panel."""
    alpha = _alpha_of(alpha)
    fv = f.eval_f if hasattr(f, "eval_f") else f
    p = 1.0 / (alpha - 1.0)
    hpts = [x ** (alpha - 1.0)] if 0.0 < x < 1.0 else None
    head, _ = adaptive_quad(
        lambda s: u1_density(alpha, x, s ** p) * fv(s ** p)
        * p * s ** (p - 1.0), 0.0, 1.0, cfg, points=hpts)
    pts = sorted(q for q in (x, _REM_MP_FROM, REM_SWITCH,
                             x + _REM_MP_FROM, x + REM_SWITCH)
                 if 1.0 < q < cfg.tail_cutoff)
    tail, _ = adaptive_quad(lambda y: u1_density(alpha, x, y) * fv(y),
                            1.0, cfg.tail_cutoff, cfg, points=pts or None)
    return head + tail


def uhat1_mass(alpha, x, cfg=DEFAULT_CFG):
    """Total mass of uhat1(x, .); equals 1 for the conservative semigroup."""
    return uhat1_apply(lambda y: 1.0, alpha, x, cfg)


def u1_mass(alpha, x, cfg=DEFAULT_CFG):
    """Total mass of u1(x, .).

    The density decays only algebraically, so the tail beyond T is added in
    closed form: int_T^inf u1(x,y) dy = -e^{-x} B(T) + A(T-x), obtained by
    integrating the remainder forms term by term (C = B', B = A').
    """
    alpha = _alpha_of(alpha)
    T = max(2.0 * REM_SWITCH, x + REM_SWITCH + 1.0)
    p = 1.0 / (alpha - 1.0)
    hpts = [x ** (alpha - 1.0)] if 0.0 < x < 1.0 else None
    head, _ = adaptive_quad(
        lambda s: u1_density(alpha, x, s ** p) * p * s ** (p - 1.0),
        0.0, 1.0, cfg, points=hpts)
    pts = sorted(q for q in (x, _REM_MP_FROM, REM_SWITCH,
                             x + _REM_MP_FROM, x + REM_SWITCH)
                 if 1.0 < q < T)
    mid, _ = adaptive_quad(lambda y: u1_density(alpha, x, y), 1.0, T, cfg,
                           points=pts or None)
    tail = -math.exp(-x) * F_remainders(alpha, T, "B") \
        + _rem(alpha, T - x, "A")
    return head + mid + tail


def uhat1_resolvent_function(f, alpha, cfg=DEFAULT_CFG):
    """Uhat_1 f as a SmoothTestFunction with analytic derivative structure.

    g   = lam_f F - F' * f            (* = convolution on [0, x])
    g'  = lam_f F' - F'(x) f(0) - F' * f'
    g'' = lam_f F'' - F''(x) f(0) - F'(x) f'(0) - F' * f''
    so g'(0) = 0 exactly, as the boundary condition requires.
    """
    alpha = _alpha_of(alpha)
    lf = lambda_f(f, cfg)
    icfg = cfg.composite(0.1)  # convolution a notch tighter than the caller

    def conv(h, x):
        if x <= 0.0:
            return 0.0
        val, _ = adaptive_quad(lambda u: F_family(alpha, u, 1) * h(x - u),
                               0.0, x, icfg)
        return val

    g = lambda x: lf * F_family(alpha, x, 0) - conv(f.eval_f, x)
    g1 = lambda x: (lf * F_family(alpha, x, 1)
                    - F_family(alpha, x, 1) * f.eval_f(0.0)
                    - conv(f.eval_f1, x)) if x > 0.0 else 0.0
    g2 = lambda x: (lf * F_family(alpha, x, 2)
                    - F_family(alpha, x, 2) * f.eval_f(0.0)
                    - F_family(alpha, x, 1) * f.eval_f1(0.0)
                    - conv(f.eval_f2, x))
    return SmoothTestFunction(g, g1, g2, decay_gamma=0.0,
                              fprime0_is_zero=True, name="uhat1_resolvent")


def u1_resolvent_function(f, alpha, cfg=DEFAULT_CFG):
    """U_1 f for superexponentially decaying f, in the form
    h(x) = e^{-x} M_f - int_0^inf F'(u) f(x+u) du with M_f = int F'' f."""
    alpha = _alpha_of(alpha)
    p = 1.0 / (alpha - 1.0)
    # M_f with the y^{alpha-2} singular panel substituted away
    mh, _ = adaptive_quad(
        lambda s: F_family(alpha, s ** p, 2) * f.eval_f(s ** p)
        * p * s ** (p - 1.0), 0.0, 1.0, cfg)
    cut = 50.0  # F'' e^y growth crushed by the superexponential decay of f
    mt, _ = adaptive_quad(lambda y: F_family(alpha, y, 2) * f.eval_f(y),
                          1.0, cut, cfg)
    mf = mh + mt
    icfg = cfg.composite(0.1)

    def cross(h, x):
        val, _ = adaptive_quad(lambda u: F_family(alpha, u, 1) * h(x + u),
                               0.0, cut, icfg)
        return val

    h = lambda x: math.exp(-x) * mf - cross(f.eval_f, x)
    h1 = lambda x: -math.exp(-x) * mf - cross(f.eval_f1, x)
    h2 = lambda x: math.exp(-x) * mf - cross(f.eval_f2, x)
    return SmoothTestFunction(h, h1, h2, decay_gamma=6.0,
                              fprime0_is_zero=False, name="u1_resolvent")


def rep_pointwise(alpha, y, cfg=DEFAULT_CFG, t_split=0.2):
    """Both sides of the recurrent-extension entrance formula at y > 0.

    LHS: alpha y^{alpha-2} E[e^{-y^alpha I_-}] / (Gamma(1-1/alpha) E[I_-^{1/alpha-1}])
    with the Laplace transform from quadrature of the series density plus the
    Mellin small-t correction.  RHS: u1_density(0, y) = F''(y) - F'(y).
    """
    alpha = _alpha_of(alpha)
    if y <= 0.0:
        raise DomainError("rep_pointwise requires y > 0")
    ia = 1.0 / alpha
    lap = iminus_laplace_quad(alpha, y ** alpha, t_split, cfg)
    lhs = alpha * y ** (alpha - 2.0) * lap \
        / (gamma(1.0 - ia) * iminus_moment(alpha, ia - 1.0))
    rhs = u1_density(alpha, 0.0, y)
    return lhs, rhs
