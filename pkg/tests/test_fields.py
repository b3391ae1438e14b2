import pytest
from hypothesis import given, settings, strategies as st

from genus2strata.fields import FiniteField, default_modulus, _is_irreducible


F13 = FiniteField(13)
F25 = FiniteField(5, 2)
F49 = FiniteField(7, 2)

elements_13 = st.integers(min_value=0, max_value=12).map(F13)
elements_25 = st.tuples(st.integers(0, 4), st.integers(0, 4)).map(F25)


@given(elements_13, elements_13, elements_13)
def test_prime_field_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@given(elements_25, elements_25, elements_25)
def test_extension_field_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@given(elements_25)
def test_extension_inverse(a):
    if a:
        assert a * a.inverse() == F25.one
        assert a / a == F25.one


@pytest.mark.parametrize("F", [F13, F25, F49])
def test_multiplicative_order_divides(F):
    for a in F.elements():
        if a:
            assert a ** (F.order - 1) == F.one


@pytest.mark.parametrize("F", [F13, F25, F49])
def test_sqrt_roundtrip(F):
    squares = 0
    for a in F.elements():
        s = F.sqrt(a)
        if s is not None:
            assert s * s == a
            squares += 1
        else:
            assert not F.is_square(a)
    # (q + 1) / 2 squares including zero
    assert squares == (F.order + 1) // 2


def test_default_modulus_irreducible():
    for p in (5, 7, 13, 101):
        for k in (2, 3, 4, 6):
            m = default_modulus(p, k)
            assert len(m) == k + 1 and m[-1] == 1
            assert _is_irreducible(m, p)


def test_lift_to_extension():
    a = F13(7)
    K = FiniteField(13, 2)
    lifted = a.lift_to(K)
    assert lifted * lifted == K(49 % 13)


def test_rejects_bad_fields():
    with pytest.raises(ValueError):
        FiniteField(4)
    with pytest.raises(ValueError):
        FiniteField(3)
    with pytest.raises(ValueError):
        FiniteField(7, 0)
