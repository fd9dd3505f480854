from fractions import Fraction

import pytest

from goodred.constants import (
    c_d,
    c_prime_I,
    c_prime_R,
    constant_report,
    explicit_abc_epsilon,
    partial_c_sum,
    tail_bound,
    tail_density,
    tail_integral,
    term,
)
from goodred.goodd import Census, enumerate_good_d
from goodred.quadchar import twist_character
from oracles import c_d_oracle, eps_oracle


def test_c_prime_tables():
    assert c_prime_R(37) == Fraction(2, 3)
    assert c_prime_R(-26) == Fraction(1, 4)
    assert c_prime_I(-1727) == 0
    assert c_prime_R(2) == Fraction(1, 4) and c_prime_R(-6) == 0 and c_prime_R(-2) == Fraction(1, 4)
    assert c_prime_I(-2) == Fraction(1, 4) and c_prime_I(2) == 0 and c_prime_I(-26) == Fraction(1, 4)
    # residues taken in [0, 8): -17 = 7, -7 = 1, -13 = 3, -11 = 5
    assert c_prime_I(17) == 1 and c_prime_I(-17) == 1 and c_prime_I(-7) == 0 and c_prime_I(7) == 0
    assert c_prime_I(-13) == Fraction(2, 3) and c_prime_I(37) == Fraction(2, 3) and c_prime_I(13) == Fraction(2, 3)
    assert c_prime_I(3) == 0 and c_prime_I(-11) == 0
    assert c_prime_R(-11) == Fraction(2, 3) and c_prime_R(-7) == 1 and c_prime_R(10) == Fraction(1, 4)
    for d in range(-400, 400):
        assert c_prime_R(d) in (0, Fraction(1, 4), Fraction(2, 3), 1)


def test_c_d_oracle_enclosure():
    for d in (37, -26, 2, -7, 65, -163):
        iv = c_d(twist_character(d), 1000)
        lo, hi = c_d_oracle(d, 100000)
        assert iv.lo <= lo * (1 + 1e-9) and hi <= iv.hi * (1 + 1e-9), d


def test_c_d_nested_in_Q():
    ch = twist_character(37)
    wide, mid, narrow = c_d(ch, 11), c_d(ch, 1000), c_d(ch, 10000)
    assert wide.contains(mid) and mid.contains(narrow)
    assert wide.width > mid.width > narrow.width


def test_c_d_positive(census):
    for rec in census.records:
        assert c_d(twist_character(rec.d)).lo > 0


def test_c_d_rejects():
    with pytest.raises(ValueError):
        c_d(twist_character(1))
    with pytest.raises(ValueError):
        c_d(twist_character(37), 7)


def test_terms_nonnegative_and_monotone(census):
    for rec in census.records:
        for w in "RI":
            assert term(rec.d, w).lo >= 0
    full = partial_c_sum(census, "R")
    half = partial_c_sum(Census(census.records[::2], census.max_d, census.r_max), "R")
    assert half.hi <= full.hi and half.lo <= full.lo


def test_partial_sum_empty():
    assert partial_c_sum(Census([], 50000, 10**6), "R").as_list() == [0.0, 0.0]
    with pytest.raises(ValueError):
        partial_c_sum(Census([], 50000, 10**6), "X")


def test_tail_decreasing():
    vals = [tail_bound(D) for D in (10**4, 10**5, 10**6)]
    assert vals[0] > vals[1] > vals[2] > 0
    with pytest.raises(ValueError):
        tail_bound(99)


def test_tail_quadrature_refinement():
    for D in (100, 10**4, 5 * 10**4, 10**6):
        a, b = tail_integral(D, pieces=16), tail_integral(D, pieces=32)
        assert abs(a - b) <= 1e-6 * a


def test_tail_integral_against_mpmath():
    import mpmath

    from oracles import pv_oracle

    k = 0.65
    pref = 1 / (2 * mpmath.sqrt(mpmath.pi) * mpmath.sqrt(mpmath.zeta(2)))
    f = lambda u: mpmath.sqrt(pv_oracle(mpmath.e**u)) * mpmath.e ** (-k * u)  # noqa: E731
    body = 1.75 * pref * mpmath.quad(f, [mpmath.log(50000), 20, 40, 69.0775527898])
    ours = tail_integral(50000)
    assert float(body) <= ours <= float(body) * 1.001


def test_tail_uses_census_count():
    assert tail_bound(50000, 125) < tail_bound(50000)
    assert tail_bound(50000, 10**6) == pytest.approx(tail_integral(50000))


def test_tail_density_is_term_majorant(census):
    # holds when the PV value bounds L(1, chi_d), which is the case for this census
    for rec in census.records:
        assert term(rec.d, "R").hi <= tail_density(abs(rec.d)) and term(rec.d, "I").hi <= tail_density(abs(rec.d))


def test_report_invariants(census):
    for w in "RI":
        rep = constant_report(census, w)
        assert rep.total_upper == pytest.approx(rep.partial_sum.hi + rep.tail, rel=1e-15)
        assert rep.partial_sum.lo >= 0
        assert not rep.incomplete
        js = rep.as_json()
        assert js["which"] == w and js["Q"] == 1000 and js["D_range"] == [-10000, 50000]


def test_report_flags_incomplete():
    small = enumerate_good_d(10000, 10**6, threads=1)
    assert constant_report(small, "R").incomplete


def test_epsilon():
    assert explicit_abc_epsilon(10**141) >= 0.2
    assert explicit_abc_epsilon(10**200) < explicit_abc_epsilon(10**141)
    assert explicit_abc_epsilon(10**150) < explicit_abc_epsilon(10**141)
    for k in (10**20, 10**141, 10**300, 10**1000):
        assert explicit_abc_epsilon(k) == pytest.approx(eps_oracle(k), rel=1e-12)
    with pytest.raises(ValueError):
        explicit_abc_epsilon(50)


def test_epsilon_threshold_location():
    # epsilon stays at or above 1/5 through 10^141 and drops below later
    vals = {e: explicit_abc_epsilon(10**e) for e in range(3, 142)}
    assert min(vals.values()) >= 0.2
    assert explicit_abc_epsilon(10**400) < 0.2
