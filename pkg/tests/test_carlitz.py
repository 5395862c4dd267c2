import random

import pytest

from carlitz_euler.carlitz import (
    ModulusM, a_ring, carlitz_poly, certify_cyclotomic, cyc_field,
    cyclotomic_poly, embed_from_subfield, ideal_valuations, level_norm,
    primes_above, rf_field, siegel_unit, splitting_data, theta_verify,
)
from carlitz_euler.errors import NotCoprime, ZeroSection
from carlitz_euler.poly import UPoly


def test_carlitz_poly_examples():
    K = rf_field(2)
    T = K.gen()
    rho_T = carlitz_poly(2, [0, 1])
    assert rho_T.coeff(1) == T
    assert rho_T.coeff(2) == K.one
    # T^2 action: T^2 X + (T + T^2) X^2 + X^4
    rho_T2 = carlitz_poly(2, [0, 0, 1])
    assert rho_T2.coeff(1) == T * T
    assert rho_T2.coeff(2) == T + T * T
    assert rho_T2.coeff(4) == K.one
    # constants act by scaling
    rho_2 = carlitz_poly(3, [2])
    assert rho_2.degree == 1
    assert rho_2.coeff(1) == rf_field(3).from_int(2)


def test_carlitz_ring_homomorphism():
    rng = random.Random(0)
    for q in (2, 3):
        A = a_ring(q)
        for _ in range(8):
            a = A.rand(rng, rng.randrange(1, 3))
            b = A.rand(rng, rng.randrange(1, 3))
            if a.is_zero() or b.is_zero():
                continue
            ra, rb = carlitz_poly(q, a), carlitz_poly(q, b)
            if not (a + b).is_zero():
                assert carlitz_poly(q, a + b) == ra + rb
            assert carlitz_poly(q, a * b) == ra.compose(rb)


def test_cyclotomic_examples():
    K2 = rf_field(2)
    T = K2.gen()
    phi_T = cyclotomic_poly(2, [0, 1])
    assert phi_T.coeffs == (T, K2.one)            # X + T
    phi_T2 = cyclotomic_poly(2, [0, 0, 1])
    assert phi_T2.coeffs == (T, T, K2.one)        # X^2 + TX + T
    K3 = rf_field(3)
    phi_T_q3 = cyclotomic_poly(3, [0, 1])
    assert phi_T_q3.coeffs == (K3.gen(), K3.zero, K3.one)  # X^2 + T


def test_cyclotomic_certificates():
    for q, m in ((2, [0, 0, 1]), (2, [0, 0, 0, 1]), (3, [0, 1]),
                 (2, [0, 0, 1, 1]), (3, [0, 0, 1])):
        phi = cyclotomic_poly(q, m)
        assert certify_cyclotomic(q, ModulusM(q, m), phi)


def test_divisor_degree_bookkeeping():
    # sum over monic divisors of deg Phi_d = q^(deg m), counting d constant as 1
    for q, m in ((2, [0, 0, 1, 1]), (3, [0, 0, 1])):
        M = ModulusM(q, m)
        A = a_ring(q)
        total = 1  # the constant divisor
        divs = _monic_divisors(q, M)
        for d in divs:
            if d.degree >= 1:
                total += ModulusM(q, d).unit_count
    # q^(deg m) points of m-torsion altogether
        assert total == q ** M.m.degree


def _monic_divisors(q, M):
    A = a_ring(q)
    out = [A.one()]
    for p, e in M.factorization:
        new = []
        for d in out:
            cur = d
            for k in range(e + 1):
                new.append(cur)
                cur = cur * p
        out = new
    # dedupe (paranoia) and drop the duplicate pattern
    seen = {}
    for d in out:
        seen[tuple(d.coeffs)] = d
    return list(seen.values())


def test_galois_action_group_law_and_orbit():
    F = cyc_field(3, [0, 1])  # X^2 + T, group (A/T)^x of order 2
    lam = F.lam
    act2 = F.galois_act([2], lam)
    # rho_2 = 2X
    assert act2 == lam.scale(F.K.from_int(2))
    with pytest.raises(NotCoprime):
        F.galois_act([0], lam)
    F2 = cyc_field(2, [0, 0, 1])
    res = F2.residues
    units = res.units()
    assert len(units) == 2
    orbit = {tuple(str(c) for c in F2.galois_act(u, F2.lam).coords)
             for u in units}
    assert len(orbit) == F2.degree


def test_theta_certification():
    for q in (2, 3):
        rep = theta_verify(q)
        assert rep["theta_exponent"] == (q - 1) ** 2


def test_siegel_unit_examples():
    # q=2, m=T^2: the unit is lambda itself ((q-1)^2 = 1)
    F = cyc_field(2, [0, 0, 1])
    g = siegel_unit(F)
    assert g == F.lam
    with pytest.raises(ZeroSection):
        siegel_unit(F, [0])
    # q=3, m=T: lambda^4 = T^2 since lambda^2 = -T
    F3 = cyc_field(3, [0, 1])
    g3 = siegel_unit(F3)
    T = F3.K.gen()
    assert g3 == F3.from_ratfunc(T * T)


def test_siegel_constant_invariance():
    F3 = cyc_field(3, [0, 0, 1])
    g = siegel_unit(F3)
    for c in (2,):
        acted = F3.galois_act([c], g)
        assert acted == g


def test_splitting_examples():
    d = splitting_data(2, [1, 0, 1, 1], [0, 0, 1])   # v = T^3+T^2+1 mod T^2
    assert d["splits_completely_in_real_subfield"]
    d2 = splitting_data(3, [1, 0, 1], [0, 0, 1])     # v = T^2+1 mod T^2
    assert d2["splits_completely_in_real_subfield"]
    d3 = splitting_data(2, [1, 1, 1], [0, 0, 1])     # v = T^2+T+1 = 1+T mod T^2
    assert not d3["splits_completely_in_real_subfield"]
    assert d3["frob"].coeffs == (1, 1)


def test_ideal_valuations_unramified_and_units():
    # lambda_{T^2} has norm T, so its valuation above T is 1 (pure ramified)
    F = cyc_field(2, [0, 0, 1])
    vals = ideal_valuations(F, F.lam, [0, 1])
    assert vals == [1]
    # at an unramified split prime the Siegel unit of a prime-power modulus
    # need not be a unit, but T^2-torsion lambda is a unit away from T
    v = [1, 1, 1]  # T^2+T+1
    vals2 = ideal_valuations(F, F.lam, v)
    assert all(x == 0 for x in vals2)


def test_ideal_valuations_multiplicative():
    rng = random.Random(1)
    F = cyc_field(2, [0, 0, 1])
    v = [1, 1, 1]
    for _ in range(5):
        x = F.ring.rand(rng)
        y = F.ring.rand(rng)
        if F.ring.is_zero(x) or F.ring.is_zero(y):
            continue
        vx = ideal_valuations(F, x, v)
        vy = ideal_valuations(F, y, v)
        vxy = ideal_valuations(F, x * y, v)
        assert vxy == [a + b for a, b in zip(vx, vy)]


def test_siegel_unit_is_global_unit_for_two_primes():
    # m = T^2(T^2+T+1): two distinct primes divide the annihilator of b=1
    F = cyc_field(2, [0, 0, 1, 1, 1])
    g = siegel_unit(F)
    for v in ([0, 1], [1, 1, 1], [1, 1], [1, 0, 1, 1]):
        vals = ideal_valuations(F, g, v)
        assert all(x == 0 for x in vals), (v, vals)


def test_distribution_relation_higher_level():
    # norm from modulus T^2 (T+1)^2 down to T^2 (T+1) carries the Siegel
    # unit to the lower Siegel unit
    src = cyc_field(2, [0, 0, 1, 0, 1])   # T^2 (T+1)^2 = T^4 + T^2
    dst = cyc_field(2, [0, 0, 1, 1])      # T^2 (T+1) = T^3 + T^2
    g_hi = siegel_unit(src)
    g_lo = siegel_unit(dst)
    got = level_norm(src, dst, g_hi)
    assert got == g_lo


def test_distribution_relation_first_level():
    # norm from T^2 v (v = T^2+T+1) down to T^2 equals (1 - Frob_v) g
    src = cyc_field(2, [0, 0, 0, 1, 0, 1])  # T^2 * (T^2+T+1) = T^4+T^3+T^2
    dst = cyc_field(2, [0, 0, 1])
    g_hi = siegel_unit(src)
    g_lo = siegel_unit(dst)
    got = level_norm(src, dst, g_hi)
    # Frob_v acts by the class of v mod T^2, which is 1 + T
    frob_g = dst.galois_act([1, 1], g_lo)
    want = g_lo / frob_g
    assert got == want


def test_pullback_compatibility():
    # the level-T^2 Siegel unit, embedded into the T^3 field, is the Siegel
    # unit at b = T (the image of 1 under A/T^2 -> A/T^3)
    small = cyc_field(2, [0, 0, 1])
    big = cyc_field(2, [0, 0, 0, 1])
    g_small = siegel_unit(small)
    embedded = embed_from_subfield(big, small, g_small)
    g_big_at_T = siegel_unit(big, [0, 1])
    assert embedded == g_big_at_T


def test_primes_above_counts():
    F = cyc_field(2, [0, 0, 1])
    # v = T^3+T^2+1 is congruent to 1 mod T^2: splits completely (2 primes)
    embeds = primes_above(F, [1, 0, 1, 1])
    assert len(embeds) == 2
    assert all(e.f == 1 for e in embeds)
    # v = T^2+T+1 has order 2 mod T^2: inert (one prime, f = 2)
    embeds2 = primes_above(F, [1, 1, 1])
    assert len(embeds2) == 1
    assert embeds2[0].f == 2
