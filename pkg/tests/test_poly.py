import random

from carlitz_euler.ffield import get_field
from carlitz_euler.poly import (
    PolyRing, factor_squarefree, is_irreducible, monic_irreducibles,
    poly_ext_gcd, poly_gcd, resultant, roots_in_field, squarefree_part,
)


def ring(p, e=1, var="X"):
    return PolyRing(get_field(p, e), var)


def test_arithmetic_and_divmod():
    R = ring(2)
    f = R.from_int_coeffs([1, 0, 1, 1])      # 1 + X^2 + X^3
    g = R.from_int_coeffs([1, 1])            # 1 + X
    q, r = f.divmod(g)
    assert q * g + r == f
    assert r.degree < g.degree


def test_kronecker_matches_schoolbook():
    rng = random.Random(7)
    for p in (2, 3):
        R = ring(p)
        for _ in range(20):
            a = R.rand(rng, rng.randrange(1, 25))
            b = R.rand(rng, rng.randrange(1, 25))
            prod = a * b
            # recompute by explicit convolution
            F = R.base
            out = [0] * (a.degree + b.degree + 1)
            for i, ai in enumerate(a.coeffs):
                for j, bj in enumerate(b.coeffs):
                    out[i + j] = F.add(out[i + j], F.mul(ai, bj))
            assert prod == R.poly(out)


def test_gcd_and_ext_gcd():
    rng = random.Random(3)
    R = ring(3)
    for _ in range(25):
        a = R.rand_monic(rng, rng.randrange(1, 8))
        b = R.rand_monic(rng, rng.randrange(1, 8))
        g, s, t = poly_ext_gcd(a, b)
        assert s * a + t * b == g
        assert g == poly_gcd(a, b)


def test_resultant_examples_over_rational_functions():
    from carlitz_euler.ratfunc import RatFuncField
    K = RatFuncField(get_field(2))
    R = PolyRing(K, "X")
    T = K.gen()
    # Res(X + T, X) = T
    f = R.poly([T, K.one])
    g = R.gen()
    assert resultant(f, g) == T
    # Res(X^2 + T X + T, X) = T: the constant term of the monic quadratic
    f2 = R.poly([T, T, K.one])
    assert resultant(f2, g) == T


def test_resultant_multiplicative_and_swap_sign():
    rng = random.Random(11)
    F = get_field(3)
    R = ring(3)
    for _ in range(20):
        a = R.rand_monic(rng, rng.randrange(1, 5))
        b = R.rand_monic(rng, rng.randrange(1, 5))
        c = R.rand_monic(rng, rng.randrange(1, 5))
        assert resultant(a, b * c) == F.mul(resultant(a, b), resultant(a, c))
        sign = F.pow(F.neg(F.one), a.degree * b.degree)
        assert resultant(a, b) == F.mul(sign, resultant(b, a))


def test_irreducibility_and_prime_enumeration():
    R = ring(2, var="T")
    prims = monic_irreducibles(R, 3)
    # the two cubic irreducibles over F_2
    assert {tuple(f.coeffs) for f in prims} == {(1, 1, 0, 1), (1, 0, 1, 1)}
    assert is_irreducible(R.from_int_coeffs([1, 1, 1]))
    assert not is_irreducible(R.from_int_coeffs([1, 0, 1]))  # (T+1)^2


def test_factorization_roundtrip():
    rng = random.Random(5)
    for (p, e) in [(2, 1), (3, 1), (2, 3)]:
        R = ring(p, e, var="T")
        for _ in range(10):
            fs = [R.rand_monic(rng, rng.randrange(1, 4)) for _ in range(3)]
            f = fs[0] * fs[1] * fs[2]
            sq = squarefree_part(f)
            factors = factor_squarefree(sq, rng)
            prod = R.one()
            for h in factors:
                assert is_irreducible(h)
                prod = prod * h
            assert prod == sq


def test_squarefree_part_char_p_degenerate():
    R = ring(2, var="T")
    t_plus_1 = R.from_int_coeffs([1, 1])
    f = t_plus_1 ** 4  # derivative vanishes
    assert squarefree_part(f) == t_plus_1


def test_roots_in_field():
    rng = random.Random(9)
    F8 = get_field(2, 3)
    R = PolyRing(F8, "Y")
    # (Y - a)(Y - b)(irreducible quadratic)
    a, b = 3, 5
    f = R.poly([a, 1]) * R.poly([b, 1])
    irr = None
    for g in monic_irreducibles(R, 2):
        irr = g
        break
    f = f * irr
    assert roots_in_field(f, rng) == sorted([a, b])
