import math

import pytest

from fracstable.errors import DomainError
from fracstable.resolvent import (ResolventDensityPoint, Side, lambda_f,
                                  rep_pointwise, u1_apply, u1_density,
                                  u1_mass, uhat1_apply, uhat1_density,
                                  uhat1_mass, uhat1_resolvent_function)
from fracstable.testfuncs import REGISTRY

GAUSS = REGISTRY["gauss"]

# frozen arbitrary-precision oracles, alpha = 1.5
UHAT_ORACLE = {(2.0, 1.0): 0.11491948200806864,
               (1.0, 3.0): 0.096561384883603269,
               (15.0, 14.0): 0.088943532629414255}
U1_ORACLE = {(2.0, 3.0): 0.090425319522809299,
             (0.0, 1.5): 0.10300023675696386,
             (14.0, 15.0): 0.088943528672487969}
REP_ORACLE = {0.5: 0.42300948110731923, 1.0: 0.18719368881108273,
              2.0: 0.06319005315531184}


def test_uhat1_density_oracle():
    for (x, y), ref in UHAT_ORACLE.items():
        assert uhat1_density(1.5, x, y) == pytest.approx(ref, rel=1e-10)


def test_u1_density_oracle():
    for (x, y), ref in U1_ORACLE.items():
        assert u1_density(1.5, x, y) == pytest.approx(ref, rel=1e-10)


def test_densities_nonnegative_across_scales():
    for a in (1.2, 1.5, 1.8):
        for x in (0.0, 0.5, 2.0, 12.0, 40.0):
            for y in (0.01, 0.5, 2.0, 12.0, 40.0):
                assert uhat1_density(a, x, y) >= 0.0
                assert u1_density(a, x, y) >= 0.0


def test_density_domain_guards():
    with pytest.raises(DomainError):
        uhat1_density(1.5, -1.0, 1.0)
    with pytest.raises(DomainError):
        u1_density(1.5, 1.0, 0.0)
    with pytest.raises(DomainError):
        ResolventDensityPoint(1.0, 1.0, -0.5, Side.hat)


def test_total_masses_are_one():
    # q = 1 resolvent of a conservative process integrates to 1/q = 1
    for a in (1.2, 1.5, 1.8):
        for x in (0.0, 0.7, 3.0):
            assert uhat1_mass(a, x) == pytest.approx(1.0, rel=1e-8)
            assert u1_mass(a, x) == pytest.approx(1.0, rel=1e-8)


def test_apply_consistent_with_mass():
    one = lambda y: 1.0
    assert uhat1_apply(one, 1.5, 1.3) == pytest.approx(1.0, rel=1e-8)


def test_lambda_f_exponential():
    # int e^{-y} e^{-y} dy = 1/2
    assert lambda_f(lambda y: math.exp(-y)) == pytest.approx(0.5, rel=1e-10)


def test_uhat1_apply_matches_resolvent_function():
    g = uhat1_resolvent_function(GAUSS, 1.5)
    for x in (0.4, 1.0, 2.5):
        assert uhat1_apply(GAUSS, 1.5, x) == pytest.approx(g.eval_f(x),
                                                           rel=1e-7)
    # boundary condition g'(0) = 0 holds exactly by construction
    assert g.eval_f1(0.0) == 0.0


def test_u1_apply_runs_and_is_positive():
    for x in (0.0, 1.0, 3.0):
        assert u1_apply(GAUSS, 1.5, x) > 0.0


def test_rep_pointwise_oracle():
    for y, ref in REP_ORACLE.items():
        lhs, rhs = rep_pointwise(1.5, y)
        assert lhs == pytest.approx(ref, rel=1e-9)
        assert rhs == pytest.approx(ref, rel=1e-9)
    with pytest.raises(DomainError):
        rep_pointwise(1.5, 0.0)
