from fractions import Fraction

import pytest

from carlitz_euler.errors import NotInvertibleOrder
from carlitz_euler.groupring import (
    CyclicProductGroup, GroupRingElem, derivative_identity_holds, idempotent,
    norm_and_derivative,
)


def test_derivative_identity_exact():
    for M in (2, 3, 4, 8, 9):
        G = CyclicProductGroup([M])
        assert derivative_identity_holds(G, 0)


def test_derivative_identity_in_products():
    G = CyclicProductGroup([3, 3])
    assert derivative_identity_holds(G, 0)
    assert derivative_identity_holds(G, 1)


def test_small_expansions():
    G = CyclicProductGroup([2])
    N, D = norm_and_derivative(G, 0)
    sig = G.generator(0)
    assert D.coeffs == {sig: 1}
    assert N.coeffs == {G.identity(): 1, sig: 1}
    G3 = CyclicProductGroup([3])
    N3, D3 = norm_and_derivative(G3, 0)
    s = G3.generator(0)
    assert D3.coeffs == {s: 1, G3.pow(s, 2): 2}


def test_idempotent_z2_over_z9():
    # e(trivial) = 5 (1 + delta) since 1/2 = 5 mod 9
    G = CyclicProductGroup([2])
    chi = lambda g: Fraction(0)  # noqa: E731
    e = idempotent(G, chi, 9)
    assert e.coeffs == {G.identity(): 5, G.generator(0): 5}
    assert e * e == e


def test_idempotent_orthogonality_and_sum():
    G = CyclicProductGroup([2])
    triv = lambda g: Fraction(0)  # noqa: E731
    sgn = lambda g: Fraction(g[0], 2)  # noqa: E731
    e0 = idempotent(G, triv, 9)
    e1 = idempotent(G, sgn, 9)
    assert e0 * e1 == GroupRingElem.zero(G, 9)
    assert e0 + e1 == GroupRingElem.one(G, 9)
    assert e1 * e1 == e1


def test_idempotent_rejects_bad_order():
    G = CyclicProductGroup([3])
    with pytest.raises(NotInvertibleOrder):
        idempotent(G, lambda g: Fraction(0), 9)
