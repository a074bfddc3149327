from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from torsform.scalars import LocalRational, LPrime, PairingValue, in_local_ring, lval, reduce_mod_Zl


def test_lprime():
    assert LPrime(2) == 2
    assert LPrime(7919) == 7919
    for bad in (0, 1, 4, 9, -3, 2.5, True):
        with pytest.raises(ValueError):
            LPrime(bad)


@pytest.mark.parametrize("x, l, expected", [(8, 2, 3), (Fraction(3, 4), 2, -2), (5, 2, 0), (Fraction(-27, 5), 3, 3)])
def test_lval(x, l, expected):
    assert lval(x, l) == expected


def test_lval_zero():
    with pytest.raises(ValueError):
        lval(0, 2)


def test_reduce_examples():
    assert reduce_mod_Zl(Fraction(7, 2), 2) == PairingValue(1, 1, 2)
    assert reduce_mod_Zl(Fraction(1, 3), 2) == PairingValue(0, 0, 2)
    # 5/9 is already a canonical residue; 8/9 would differ from it by -1/3
    assert reduce_mod_Zl(Fraction(5, 9), 3) == PairingValue(5, 2, 3)
    assert str(reduce_mod_Zl(Fraction(5, 9), 3)) == "5/9"


def test_reduce_prime_to_l_denominator():
    # 1/(4*3) at l = 2: 3^-1 = 3 mod 4, so 1/12 = 3/4 in Q_2/Z_2
    assert reduce_mod_Zl(Fraction(1, 12), 2) == PairingValue(3, 2, 2)
    # check against the defining congruence directly
    assert (Fraction(1, 12) - Fraction(3, 4)).denominator % 2 == 1


def test_canonical_invariants_rejected():
    for c, m, l in [(2, 1, 2), (4, 2, 2), (0, 1, 2), (3, 1, 3), (-1, 1, 2)]:
        with pytest.raises(ValueError):
            PairingValue(c, m, l)


@pytest.mark.parametrize("text, l", [("1/2", 2), ("0/1", 2), ("2/9", 3), ("7/25", 5)])
def test_string_round_trip(text, l):
    assert str(PairingValue.parse(text, l)) == text


def test_parse_rejects_non_l_power():
    with pytest.raises(ValueError):
        PairingValue.parse("1/6", 2)


def test_local_rational():
    x = LocalRational.from_fraction(Fraction(4, 6), 2)
    assert (x.numerator, x.denominator) == (2, 3)
    with pytest.raises(ValueError):
        LocalRational(1, 2, 2)
    assert in_local_ring(Fraction(5, 3), 2) and not in_local_ring(Fraction(5, 4), 2)


rationals = st.fractions(max_denominator=10**4)
primes = st.sampled_from([2, 3, 5, 7])


@given(rationals, rationals, primes)
def test_reduce_additive(x, y, l):
    assert reduce_mod_Zl(x, l) + reduce_mod_Zl(y, l) == reduce_mod_Zl(x + y, l)


@given(rationals, primes)
def test_zero_exactly_on_local_ring(x, l):
    is_zero = reduce_mod_Zl(x, l).is_zero()
    assert is_zero == (x == 0 or lval(x, l) >= 0)


@given(rationals, primes)
def test_residue_is_congruent(x, l):
    r = reduce_mod_Zl(x, l)
    diff = x - r.to_fraction()
    assert diff.denominator % l != 0


@given(rationals, rationals, primes)
def test_canonical_uniqueness(x, y, l):
    same_class = (x - y).denominator % l != 0
    assert (reduce_mod_Zl(x, l) == reduce_mod_Zl(y, l)) == same_class


@given(rationals, primes)
def test_negation(x, l):
    assert (reduce_mod_Zl(x, l) + -reduce_mod_Zl(x, l)).is_zero()
