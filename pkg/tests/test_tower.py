import random
from fractions import Fraction

import pytest

from carlitz_euler.errors import NormNotOne
from carlitz_euler.lubin_tate import build_module
from carlitz_euler.tower import (
    UnramBase, cyclic_resolvent, get_level, hilbert90_solve, unit_group,
)


def setup_tower(q, d=1, n=1, prec=16):
    mod = build_module(q, prec=prec, deg_prec=12)
    base = UnramBase(q, d, prec)
    return mod, base, get_level(base, mod, n)


def test_defining_polynomials():
    mod, base, L0 = setup_tower(2, n=0)
    pi = base.OH.gen()
    # h_0 = pi + X
    assert L0.h.coeffs == (pi, base.OH.one)
    _, _, L1 = setup_tower(2, n=1)
    # h_1 = pi + pi X + X^2
    assert L1.h.coeffs == (pi, pi, base.OH.one)
    _, _, L0q3 = setup_tower(3, n=0)
    # h_0 = pi + X^2 for q = 3
    assert L0q3.h.coeffs == (pi.map_coeffs(lambda c: c,
                                           L0q3.base.OH), L0q3.base.OH.zero,
                             L0q3.base.OH.one)


def test_xi0_is_pi_for_q2():
    _, base, L0 = setup_tower(2, n=0)
    pi_elem = L0.from_OH(base.OH.gen())
    assert (L0.xi - pi_elem).is_indistinguishable_from_zero() or \
        L0.xi == -pi_elem  # char 2: -pi = pi


def test_torsion_chain_and_embed_up():
    mod, base, L1 = setup_tower(2, n=1)
    L0 = get_level(base, mod, 0)
    # image of xi_0 at level 1 is f(xi_1) = pi xi_1 + xi_1^2
    img = L1.torsion_chain[0]
    pi = base.OH.gen()
    expect = L1.xi.scale(pi) + L1.xi * L1.xi
    assert (img - expect).is_indistinguishable_from_zero()
    # embedding constants is identity on coordinates
    c = base.OH.from_coeff_ints([1, 1])
    assert (L1.embed_up(L0.from_OH(c), L0) - L1.from_OH(c)) \
        .is_indistinguishable_from_zero()
    # tower coherence: [pi] applied to xi_1-embedded-at-2 twice gives xi_0
    L2 = get_level(base, mod, 2)
    x = L2.eval_poly(L2.f_H, L2.eval_poly(L2.f_H, L2.xi))
    assert (x - L2.torsion_chain[0]).is_indistinguishable_from_zero()


def test_galois_action_laws():
    rng = random.Random(0)
    for q in (2, 3):
        mod, base, L = setup_tower(q, n=1)
        G = unit_group(q, 1)
        # identity
        x = L.rand_elem(rng)
        assert (L.galois_act(G.one(), x) - x).is_indistinguishable_from_zero()
        # composition = unit multiplication, and multiplicativity
        for _ in range(5):
            us = rng.choice(G.elements())
            vs = rng.choice(G.elements())
            x = L.rand_elem(rng)
            y = L.rand_elem(rng)
            a = L.galois_act(us, L.galois_act(vs, x))
            b = L.galois_act(G.mul(us, vs), x)
            assert (a - b).is_indistinguishable_from_zero()
            c = L.galois_act(us, x * y)
            d = L.galois_act(us, x) * L.galois_act(us, y)
            assert (c - d).is_indistinguishable_from_zero()


def test_galois_act_example_q2():
    mod, base, L1 = setup_tower(2, n=1)
    G = unit_group(2, 1)
    u = G.from_ints([1, 1])  # 1 + pi
    got = L1.galois_act(u, L1.xi)
    pi = base.OH.gen()
    want = L1.xi + L1.xi.scale(pi) + L1.xi * L1.xi
    assert (got - want).is_indistinguishable_from_zero()


def test_frobenius():
    mod, base, L = setup_tower(2, d=2, n=1)
    F4 = base.field_H
    gen = F4.generator()
    c = base.OH.constant(gen)
    x = L.from_OH(c)
    fx = L.frobenius(x)
    assert fx.coords[0].coeff(0) == F4.mul(gen, gen)
    # order d, and inverse composes to the identity
    assert (L.frobenius(fx) - x).is_indistinguishable_from_zero()
    y = L.rand_elem(random.Random(1))
    assert (L.frobenius(L.frobenius(y, -1)) - y).is_indistinguishable_from_zero()
    # fixes O_K coefficients
    pi_e = L.from_OH(base.OH.gen())
    assert (L.frobenius(pi_e) - pi_e).is_indistinguishable_from_zero()


def test_norms_and_valuations():
    mod, base, L1 = setup_tower(2, n=1)
    L0 = get_level(base, mod, 0)
    # N_{H_1/H}(xi_1) = constant term of h_1 = pi
    nres = L1.norm_to_H_resultant(L1.xi)
    assert nres == base.OH.gen()
    G = unit_group(2, 1)
    ncon = L1.norm_to_H_conjugates(L1.xi, G)
    assert (ncon - base.OH.gen()).is_indistinguishable_from_zero()
    # valuations
    assert L1.valuation(L1.from_OH(base.OH.gen())) == 1
    assert L1.valuation(L1.xi) == Fraction(1, 2)
    assert L0.valuation(L0.xi) == 1  # e_0 = 1 for q = 2


def test_valuation_examples_q3():
    mod, base, L1 = setup_tower(3, n=1)
    assert L1.valuation(L1.xi) == Fraction(1, 6)
    L0 = get_level(base, mod, 0)
    assert L0.valuation(L0.xi) == Fraction(1, 2)


def test_norm_coherence_of_torsion():
    for q in (2, 3):
        mod, base, L1 = setup_tower(q, n=1, prec=12)
        L0 = get_level(base, mod, 0)
        down = L1.norm_down(L1.xi, L0)
        assert (down - L0.xi).is_indistinguishable_from_zero()
        L2 = get_level(base, mod, 2)
        down2 = L2.norm_down(L2.xi, L1)
        assert (down2 - L1.xi).is_indistinguishable_from_zero()


def test_norm_transitivity_and_constants():
    rng = random.Random(3)
    mod, base, L2 = setup_tower(2, n=2, prec=12)
    L1 = get_level(base, mod, 1)
    L0 = get_level(base, mod, 0)
    x = L2.rand_unit(rng)
    via1 = L1.norm_down(L2.norm_down(x, L1), L0)
    direct = L2.norm_down(x, L0)
    assert (via1 - direct).is_indistinguishable_from_zero()
    # constants: N(c) = c^[H_n:H_m]
    c = base.OH.from_coeff_ints([1, 1, 1])
    got = L2.norm_down(L2.from_OH(c), L1)
    assert (got - L1.from_OH(c * c)).is_indistinguishable_from_zero()


def test_norm_respects_valuation_sum():
    rng = random.Random(5)
    mod, base, L1 = setup_tower(3, n=1, prec=12)
    for _ in range(5):
        x = L1.rand_unit(rng) * (L1.xi ** rng.randrange(3))
        v = L1.valuation(x)
        n = L1.norm_to_H_resultant(x)
        assert n.valuation() == v * L1.e


def test_unit_group_structure():
    G = unit_group(2, 2)
    assert G.order == 4
    assert G.gen_orders == [4]          # (1 + pi) has order 4 mod pi^3
    G3 = unit_group(3, 2)
    assert G3.order == 18
    assert sorted(G3.gen_orders) == [2, 3, 3]
    G8 = unit_group(8, 1)
    assert G8.order == 56
    assert sorted(G8.gen_orders) == [2, 2, 2, 7]


def test_characters():
    G = unit_group(2, 2)
    chars = G.characters(order_in={4})
    assert len(chars) == 2
    chi = chars[0]
    u = G.from_ints([1, 1])
    assert chi(u).denominator == 4
    # homomorphism property
    for a in G.elements():
        for b in G.elements():
            assert chi(G.mul(a, b)) == (chi(a) + chi(b)) % 1
    # p-power characters kill the Teichmueller part automatically
    G3 = unit_group(3, 1)
    for chi in G3.characters(order_in={3}):
        t = G3.gens[0]  # Teichmueller generator
        assert chi(t) == 0


def test_hilbert90_roundtrip():
    rng = random.Random(7)
    mod, base, L1 = setup_tower(2, n=1, prec=14)
    G = unit_group(2, 1)
    sigma = G.from_ints([1, 1])
    for _ in range(3):
        w = L1.rand_unit(rng)
        u = L1.galois_act(sigma, w) / w
        b = hilbert90_solve(L1, u, sigma, 2)
        check = L1.galois_act(sigma, b) / b - u
        assert check.is_indistinguishable_from_zero()


def test_hilbert90_norm_not_one_raises():
    mod, base, L1 = setup_tower(2, n=1, prec=12)
    G = unit_group(2, 1)
    sigma = G.from_ints([1, 1])
    pi_elem = L1.from_OH(base.OH.gen())
    bad = L1.ring.one + pi_elem  # norm is (1+pi)^2 != 1
    with pytest.raises(NormNotOne):
        hilbert90_solve(L1, bad, sigma, 2)


def test_torsion_set_structure():
    mod, base, L1 = setup_tower(2, n=1)
    ts = L1.torsion_set()
    assert len(ts) == 4
    # [pi] maps the level-1 torsion onto the level-0 torsion (as elements)
    images = [L1.eval_poly(L1.f_H, t) for t in ts]
    l0 = {0: 0}
    for im in images:
        ok = (im - L1.torsion_chain[0]).is_indistinguishable_from_zero() or \
            im.is_indistinguishable_from_zero()
        assert ok
