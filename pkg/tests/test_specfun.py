import math

import pytest

from fracstable.errors import DomainError, RootNotFoundError
from fracstable.specfun import (F_family, F_remainders, GeneralIndex,
                                MLRegime, StabilityIndex, derivative_stack,
                                mittag_leffler, psi, psi_general,
                                psi_integral, psi_minus, theta_root)

# high-precision series oracle values (30-digit arbitrary precision sums)
ML_ORACLE = {
    (1.2, 0.3, 0): 1.3045860449264758,
    (1.2, 0.3, 1): 1.1303615149222825,
    (1.2, 0.3, 2): 0.81878241139448489,
    (1.2, 2.0, 0): 4.9961103922306317,
    (1.2, 2.0, 1): 3.661853370491838,
    (1.2, 2.0, 2): 2.4309127834737086,
    (1.2, 60.0, 0): 12318370453644.7,
    (1.2, 60.0, 1): 5188161335641.503,
    (1.2, 60.0, 2): 2170700355166.2704,
    (1.5, 0.3, 0): 1.2412030890688286,
    (1.5, 0.3, 1): 0.85756400920353718,
    (1.5, 0.3, 2): 0.36926118693013007,
    (1.5, 2.0, 0): 3.3487008963183954,
    (1.5, 2.0, 1): 1.6988911460485705,
    (1.5, 2.0, 2): 0.64210213980462078,
    (1.5, 60.0, 0): 3019867.5818322465,
    (1.5, 60.0, 1): 514256.22413295914,
    (1.5, 60.0, 2): 84716.21993019297,
    (1.8, 0.3, 0): 1.1857842117098614,
    (1.8, 0.3, 1): 0.64245828005783301,
    (1.8, 0.3, 2): 0.15708081370055398,
    (1.8, 2.0, 0): 2.5273175608171323,
    (1.8, 2.0, 1): 0.94969588751134222,
    (1.8, 2.0, 2): 0.20609775420196725,
    (1.8, 60.0, 0): 9289.0456506276955,
    (1.8, 60.0, 1): 836.3902514633514,
    (1.8, 60.0, 2): 69.113546870278853,
}

F_ORACLE = {
    (1.2, 0.5, 0): 1.4652153453283453,
    (1.2, 0.5, 1): 1.3018647103477762,
    (1.2, 0.5, 2): 1.4975122170276332,
    (1.2, 5.0, 0): 123.69695739687449,
    (1.2, 5.0, 1): 123.67395611164511,
    (1.2, 5.0, 2): 123.67891204344248,
    (1.2, 30.0, 0): 8905395484603.7216,
    (1.2, 30.0, 1): 8905395484603.7187,
    (1.2, 30.0, 2): 8905395484603.7188,
    (1.5, 0.5, 0): 1.2876612763406847,
    (1.5, 0.5, 1): 0.93074988051244416,
    (1.5, 0.5, 2): 1.353759361619746,
    (1.5, 5.0, 0): 98.965727569029734,
    (1.5, 5.0, 1): 98.935708631036454,
    (1.5, 5.0, 2): 98.944868962912571,
    (1.5, 30.0, 0): 7124316387682.9765,
    (1.5, 30.0, 1): 7124316387682.9747,
    (1.5, 30.0, 2): 7124316387682.9748,
    (1.8, 0.5, 0): 1.1775573301641837,
    (1.8, 0.5, 1): 0.66211111403730923,
    (1.8, 0.5, 2): 1.2269114990265584,
    (1.8, 5.0, 0): 82.465238187044012,
    (1.8, 5.0, 1): 82.445941325592485,
    (1.8, 5.0, 2): 82.455302848596331,
    (1.8, 30.0, 0): 5936930323069.1459,
    (1.8, 30.0, 1): 5936930323069.1455,
    (1.8, 30.0, 2): 5936930323069.1455,
}

# remainders F - e^x/a, F' - e^x/a, F'' - e^x/a at series / extended /
# asymptotic branch sample points
REM_ORACLE = {
    (1.2, 1.0): (0.065746314746535944, -0.036593960240821428,
                 0.040445757689309848),
    (1.2, 12.0): (0.0078687978427127186, -0.00071365000192475757,
                  0.00011803467276900986),
    (1.2, 22.0): (0.0039978045200770904, -0.0002073692494603482,
                  1.9648834234320247e-05),
    (1.5, 1.0): (0.12729937579438548, -0.088943528606753969,
                 0.098250160204317775),
    (1.5, 12.0): (0.0067383739223413771, -0.00083112502270387226,
                  0.0001692860642600519),
    (1.5, 22.0): (0.0027304428032124233, -0.00018571992040841097,
                  2.101481468297368e-05),
    (1.8, 1.0): (0.16534597683140843, -0.14405341237052822,
                 0.15302781956950461),
    (1.8, 12.0): (0.0021571801990475978, -0.00035165116948728117,
                  9.1073291719447267e-05),
    (1.8, 22.0): (0.00068543344299001999, -5.7568097154794506e-05,
                  7.5817314459786504e-06),
}

# asymptotic-branch points (truncated divergent series: looser tolerance)
REM_ASYM_ORACLE = {
    (1.2, 35.0): (0.0023394534464862205, -7.7871342599513417e-05,
                  4.7408380539829474e-06),
    (1.5, 35.0): (0.0013619479991613396, -5.8333715638802772e-05,
                  4.1621537848500778e-06),
    (1.8, 35.0): (0.00029282337034020129, -1.5225979813805221e-05,
                  1.2355544233441501e-06),
}

# arbitrary-precision numerical derivatives of E_1.5 at x=2
STACK_ORACLE = [3.3487008963183954, 1.6988911460485705, 0.64210213980462078,
                0.20134827681110639, 0.05502771582050145,
                0.013489261453236089, 0.0030225107226389953]


def test_ml_normalization_exact():
    for a in (1.2, 1.5, 1.8):
        assert mittag_leffler(a, 0.0).value == 1.0


def test_ml_against_oracle():
    for (a, x, d), ref in ML_ORACLE.items():
        ev = mittag_leffler(a, x, d)
        assert ev.value == pytest.approx(ref, rel=5e-12)
        assert ev.truncation_bound <= abs(ev.value) * 1e-10


def test_ml_regime_tags():
    # the branch switch is on the exponential scale z = x^{1/alpha}
    assert mittag_leffler(1.5, 2.0).regime is MLRegime.series
    assert mittag_leffler(1.5, 60.0).regime is MLRegime.series
    assert mittag_leffler(1.2, 60.0).regime is MLRegime.asymptotic
    assert mittag_leffler(1.5, 130.0).regime is MLRegime.asymptotic


def test_ml_branch_consistency():
    # series and asymptotic expansions overlap smoothly near the switch
    for a in (1.2, 1.5, 1.8):
        lo = mittag_leffler(a, 24.9 ** a).value
        hi = mittag_leffler(a, 25.1 ** a).value
        assert lo < hi
        mid = 0.5 * (mittag_leffler(a, 24.99 ** a).value
                     + mittag_leffler(a, 25.01 ** a).value)
        assert mittag_leffler(a, 25.0 ** a).value == pytest.approx(
            mid, rel=1e-3)


def test_f_family_against_oracle():
    for (a, x, d), ref in F_ORACLE.items():
        assert F_family(a, x, d) == pytest.approx(ref, rel=1e-11)


def test_f_remainders_against_oracle():
    for (a, x), (ra, rb, rc) in REM_ORACLE.items():
        assert F_remainders(a, x, "A") == pytest.approx(ra, rel=2e-10)
        assert F_remainders(a, x, "B") == pytest.approx(rb, rel=2e-10)
        assert F_remainders(a, x, "C") == pytest.approx(rc, rel=2e-10)


def test_f_remainders_asymptotic_branch():
    for (a, x), (ra, rb, rc) in REM_ASYM_ORACLE.items():
        assert F_remainders(a, x, "A") == pytest.approx(ra, rel=1e-7)
        assert F_remainders(a, x, "B") == pytest.approx(rb, rel=1e-7)
        assert F_remainders(a, x, "C") == pytest.approx(rc, rel=1e-7)


def test_derivative_stack_against_oracle():
    stack = derivative_stack(1.5, 2.0, 6)
    for n, ref in enumerate(STACK_ORACLE):
        assert stack[n] == pytest.approx(ref, rel=1e-10)


def test_psi_gamma_ratio():
    assert psi(1.5, 2.3) == pytest.approx(4.0234218788940364, rel=1e-13)
    assert psi(1.5, 0.0) == 0.0
    assert psi_minus(1.2, 1.0) == pytest.approx(0.19326813831280925,
                                                rel=1e-12)


def test_psi_integral_matches_gamma_ratio():
    for a in (1.2, 1.5, 1.8):
        for lam in (0.5, 1.0, 2.0, 5.0):
            assert psi_integral(a, lam) == pytest.approx(psi(a, lam),
                                                         rel=1e-8)


def test_theta_root_spectrally_negative():
    # one-sided case: the positive zero of the general exponent sits at 1
    idx = GeneralIndex(1.5, 0.0, 1.0)
    assert theta_root(idx) == pytest.approx(1.0, abs=1e-10)


def test_theta_root_symmetric_weights():
    idx = GeneralIndex(1.5, 1.0, 1.0)
    root = theta_root(idx)
    assert psi_general(idx, -root) == pytest.approx(0.0, abs=1e-9)
    assert 0.0 < root < idx.alpha


def test_validation_errors():
    with pytest.raises(DomainError):
        StabilityIndex(2.5)
    with pytest.raises(DomainError):
        StabilityIndex(1.0)
    with pytest.raises(DomainError):
        GeneralIndex(1.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        GeneralIndex(1.5, -1.0, 1.0)
    with pytest.raises(DomainError):
        GeneralIndex(1.5, 0.0, 0.0)
    with pytest.raises(DomainError):
        mittag_leffler(1.5, -1.0)
    with pytest.raises(DomainError):
        mittag_leffler(1.5, 1.0, 3)
    with pytest.raises(DomainError):
        F_family(2.5, 1.0)


def test_stability_index_accepted_everywhere():
    idx = StabilityIndex(1.5)
    assert mittag_leffler(idx, 2.0).value == pytest.approx(
        ML_ORACLE[(1.5, 2.0, 0)], rel=1e-12)
    assert F_family(idx, 0.5) == pytest.approx(F_ORACLE[(1.5, 0.5, 0)],
                                               rel=1e-12)
