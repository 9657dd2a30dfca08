from fractions import Fraction

from hypothesis import given, settings, strategies as st

from twistlab.bernoulli import bernoulli_number, bernoulli_poly_coeffs


def _poly_eval(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def test_known_numbers():
    assert bernoulli_number(0) == 1
    assert bernoulli_number(1) == Fraction(-1, 2)
    assert bernoulli_number(2) == Fraction(1, 6)
    assert bernoulli_number(3) == 0
    assert bernoulli_number(12) == Fraction(-691, 2730)


def test_known_polynomials():
    assert bernoulli_poly_coeffs(2) == [Fraction(1, 6), Fraction(-1), Fraction(1)]
    b3 = bernoulli_poly_coeffs(3)
    assert b3 == [Fraction(0), Fraction(1, 2), Fraction(-3, 2), Fraction(1)]


def test_translation_identity_exact():
    # B_n(x+1) - B_n(x) = n x^{n-1}, the defining difference equation
    for n in range(1, 31):
        coeffs = bernoulli_poly_coeffs(n)
        for x in (Fraction(0), Fraction(1), Fraction(-3, 7), Fraction(22, 5)):
            lhs = _poly_eval(coeffs, x + 1) - _poly_eval(coeffs, x)
            assert lhs == n * x ** (n - 1)


@given(n=st.integers(min_value=1, max_value=24),
       num=st.integers(min_value=-40, max_value=40),
       den=st.integers(min_value=1, max_value=12))
@settings(max_examples=60, deadline=None)
def test_translation_identity_hypothesis(n, num, den):
    x = Fraction(num, den)
    coeffs = bernoulli_poly_coeffs(n)
    assert _poly_eval(coeffs, x + 1) - _poly_eval(coeffs, x) == n * x ** (n - 1)


def test_symmetry():
    # B_n(1-x) = (-1)^n B_n(x)
    for n in range(0, 16):
        coeffs = bernoulli_poly_coeffs(n)
        for x in (Fraction(1, 3), Fraction(5, 2)):
            assert _poly_eval(coeffs, 1 - x) == (-1) ** n * _poly_eval(coeffs, x)
