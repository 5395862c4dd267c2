import random

import pytest

from carlitz_euler.errors import DivisionByNonunit
from carlitz_euler.ffield import FqElem, embedding, get_field


def test_prime_field_basics():
    F3 = get_field(3)
    assert F3.mul(2, 2) == 1
    assert F3.add(2, 2) == 1
    assert F3.inv(2) == 2
    with pytest.raises(DivisionByNonunit):
        F3.inv(0)


def test_fixed_moduli_are_the_least_irreducible():
    # by ascending packed code of the non-leading digits
    assert get_field(2, 2).modulus_digits == (1, 1, 1)        # X^2+X+1
    assert get_field(2, 3).modulus_digits == (1, 1, 0, 1)     # X^3+X+1
    assert get_field(3, 2).modulus_digits == (1, 0, 1)        # X^2+1


def test_ring_axioms_randomized():
    rng = random.Random(0)
    for (p, e) in [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3)]:
        F = get_field(p, e)
        for _ in range(50):
            a, b, c = (F.rand(rng) for _ in range(3))
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
            assert F.add(a, F.neg(a)) == 0
            if a:
                assert F.mul(a, F.inv(a)) == 1


def test_frobenius_has_field_degree_order():
    F8 = get_field(2, 3)
    for a in F8.elements():
        x = a
        for _ in range(3):
            x = F8.frob(x)
        assert x == a
    # frob is the p-power map
    a = 5
    assert F8.frob(a) == F8.mul(a, a)


def test_generator_order():
    for (p, e) in [(2, 2), (2, 3), (3, 2)]:
        F = get_field(p, e)
        g = F.generator()
        assert F.order_of(g) == F.q - 1


def test_trace_surjective_onto_prime_field():
    F8 = get_field(2, 3)
    traces = {F8.trace(a) for a in F8.elements()}
    assert traces == {0, 1}
    F9 = get_field(3, 2)
    assert {F9.trace(a) for a in F9.elements()} == {0, 1, 2}


def test_embedding_is_ring_hom():
    F2_2 = get_field(2, 2)
    F2_6 = get_field(2, 6)
    emb = embedding(F2_2, F2_6)
    rng = random.Random(1)
    for _ in range(30):
        a, b = F2_2.rand(rng), F2_2.rand(rng)
        assert emb(F2_2.mul(a, b)) == F2_6.mul(emb(a), emb(b))
        assert emb(F2_2.add(a, b)) == F2_6.add(emb(a), emb(b))
    assert emb(1) == 1


def test_fqelem_wrapper():
    F4 = get_field(2, 2)
    a = FqElem(F4, 2)
    b = FqElem(F4, 3)
    assert (a * b).raw == F4.mul(2, 3)
    assert (a + a).raw == 0
    assert a.digits == (0, 1)
