import random

import pytest

from lltlab.ring import (
    ONE,
    Q,
    T,
    ZERO,
    NegativeExponentSubstitution,
    NotDivisible,
    QTPoly,
    exact_divide,
    q_integer,
    shift_q,
    substitute_q,
    substitute_t,
    swap_qt,
)


def test_constructors_and_equality():
    assert QTPoly.integer(0) == ZERO
    assert QTPoly.integer(1) == ONE
    assert Q == QTPoly({(1, 0): 1})
    assert T == QTPoly({(0, 1): 1})
    assert QTPoly([((1, 0), 1), ((1, 0), 0)]) == Q  # repeated keys accumulate
    assert QTPoly([((2, 0), 1), ((2, 0), -1)]) == ZERO
    assert ONE + (-1) == ZERO
    assert ZERO.is_zero() and not ONE.is_zero()


def test_t_exponent_must_be_nonnegative():
    with pytest.raises(ValueError):
        QTPoly({(0, -1): 1})


def test_arithmetic_small_identities():
    assert (Q + 1) * (Q - 1) == Q * Q - 1
    assert (Q + T) ** 2 == Q * Q + 2 * Q * T + T * T
    assert Q ** 0 == ONE
    assert (Q + 1) ** 3 == Q ** 3 + 3 * Q ** 2 + 3 * Q + 1
    assert 2 * Q - Q == Q
    assert 1 - Q == -(Q - 1)


def test_q_integer_values():
    assert q_integer(0) == ZERO
    assert q_integer(1) == ONE
    assert q_integer(3) == 1 + Q + Q ** 2
    # [n]_q * (q - 1) telescopes to q^n - 1
    assert q_integer(5) * (Q - 1) == Q ** 5 - 1
    with pytest.raises(ValueError):
        q_integer(-1)


def test_shift_q_laurent():
    p = shift_q(ONE + Q, -1)
    assert p == QTPoly({(-1, 0): 1, (0, 0): 1})
    assert p.min_q_exponent() == -1
    assert shift_q(p, 1) == ONE + Q


def test_exact_divide_hand_values():
    # (q^3 + q^2 - q - 1) = (q - 1)(q + 1)^2
    num = Q ** 3 + Q ** 2 - Q - 1
    assert exact_divide(num, Q - 1) == (Q + 1) ** 2
    assert exact_divide(num, (Q + 1) ** 2) == Q - 1
    with pytest.raises(NotDivisible):
        exact_divide(num, (Q - 1) ** 2)


def test_exact_divide_integer_content():
    assert exact_divide(2 * Q + 2, QTPoly.integer(2)) == Q + 1
    with pytest.raises(NotDivisible):
        exact_divide(2 * Q + 1, QTPoly.integer(2))


def test_exact_divide_with_t():
    assert exact_divide(Q * T + T, Q + 1) == T
    assert exact_divide((Q - T) * (Q + T), Q + T) == Q - T
    with pytest.raises(NotDivisible):
        exact_divide(Q + T, T)


def test_exact_divide_laurent():
    one_over_q = shift_q(ONE, -1)
    assert exact_divide(ONE + Q, Q) == one_over_q + 1
    assert exact_divide(one_over_q + 1, one_over_q) == ONE + Q
    with pytest.raises(NotDivisible):
        exact_divide(ONE, ZERO)


def test_substitute_q_polynomial_image():
    p = Q ** 2 + T
    assert substitute_q(p, Q + 1) == Q ** 2 + 2 * Q + 1 + T
    assert substitute_q(p, 1) == 1 + T
    assert substitute_q(q_integer(4), 1) == QTPoly.integer(4)


def test_substitute_q_laurent_units():
    one_over_q = shift_q(ONE, -1)
    assert substitute_q(one_over_q, -Q) == -one_over_q
    assert substitute_q(one_over_q, 1) == ONE
    with pytest.raises(NegativeExponentSubstitution):
        substitute_q(one_over_q, Q + 1)
    with pytest.raises(NegativeExponentSubstitution):
        substitute_q(one_over_q, 2)


def test_substitute_t_and_swap():
    p = Q * T + T ** 2
    assert substitute_t(p, 1) == Q + 1
    assert substitute_t(p, ZERO) == ZERO
    assert swap_qt(Q ** 2 * T) == T ** 2 * Q
    assert swap_qt(swap_qt(p)) == p
    with pytest.raises(NegativeExponentSubstitution):
        swap_qt(shift_q(ONE, -1))


def test_rendering_canonical_order():
    p = QTPoly({(2, 1): 3, (-1, 0): -1, (0, 0): 5})
    assert str(p) == "3*q^2*t + 5 - q^-1"
    assert str(ZERO) == "0"
    assert str(-Q) == "-q"
    assert str(Q - T) == "q - t"
    assert str(QTPoly.monomial(1, -2, 0)) == "q^-2"


def test_hash_agrees_with_equality():
    a = (Q + 1) * (Q - 1)
    b = Q ** 2 - 1
    assert a == b and hash(a) == hash(b)
    assert len({a, b}) == 1


def _random_poly(rng, laurent=False):
    terms = {}
    for _ in range(rng.randint(0, 6)):
        qe = rng.randint(-2 if laurent else 0, 4)
        te = rng.randint(0, 3)
        terms[(qe, te)] = rng.randint(-5, 5)
    return QTPoly(terms)


def test_product_division_round_trip_random():
    rng = random.Random(20260815)
    checked = 0
    for _ in range(300):
        a = _random_poly(rng, laurent=True)
        b = _random_poly(rng, laurent=True)
        if b.is_zero():
            continue
        assert exact_divide(a * b, b) == a
        checked += 1
    assert checked > 200


def test_distributivity_random():
    rng = random.Random(7)
    for _ in range(100):
        a = _random_poly(rng)
        b = _random_poly(rng)
        c = _random_poly(rng)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
