import random

from carlitz_euler.ffield import get_field
from carlitz_euler.lubin_tate import build_module, norm_operator, _series_over
from carlitz_euler.series import SeriesRing, TruncSeries, series_compose


def test_defining_congruences_and_additive_law():
    for q in (2, 3):
        mod = build_module(q, prec=20, deg_prec=12)
        f = mod.f
        pi = mod.OK.gen()
        # f = pi X mod deg 2 and f = X^q mod pi
        assert f.coeff(1) == pi
        assert f.coeff(q) == mod.OK.one
        for k in range(2, q):
            assert f.coeff(k).is_exact_zero()
        # additive formal group law
        assert mod.fgl.coeff(1, 0) == mod.OK.one
        assert mod.fgl.coeff(0, 1) == mod.OK.one
        assert len(mod.fgl.coeffs) == 2


def test_fgl_equivariance_freshmans_dream():
    from carlitz_euler.series import BiSeriesRing, poly_at_bivariate
    for q in (2, 3):
        mod = build_module(q, prec=8, deg_prec=12)
        B = BiSeriesRing(mod.OK, ("X", "Y"), total_deg_prec=12)
        X = B.gen(0)
        Y = B.gen(1)
        fX = poly_at_bivariate(mod.f.coeffs, mod.OK, X)
        fY = poly_at_bivariate(mod.f.coeffs, mod.OK, Y)
        f_of_sum = poly_at_bivariate(mod.f.coeffs, mod.OK, X + Y)
        assert f_of_sum == fX + fY


def test_endo_examples():
    mod = build_module(2, prec=20, deg_prec=12)
    pi = mod.OK.gen()
    one = mod.OK.one
    # [pi] is f itself
    e_pi = mod.endo_int([0, 1])
    assert e_pi.coeff(1) == pi
    assert e_pi.coeff(2) == one
    # [1 + pi] = X + pi X + X^2
    e = mod.endo_int([1, 1])
    assert e.coeff(1) == one + pi
    assert e.coeff(2) == one
    # [pi^2] = f o f = pi^2 X + (pi + pi^2) X^2 + X^4
    e2 = mod.endo_int([0, 0, 1])
    assert e2.coeff(1) == pi * pi
    assert e2.coeff(2) == pi + pi * pi
    assert e2.coeff(4) == one


def _random_unit_digits(rng, field, n):
    digits = [field.rand(rng) for _ in range(n)]
    digits[0] = field.rand_nonzero(rng) if hasattr(field, "rand_nonzero") else 1
    return digits


def test_endo_ring_homomorphism_laws():
    rng = random.Random(0)
    for q in (2, 3):
        mod = build_module(q, prec=12, deg_prec=12)
        F = mod.field
        for _ in range(10):
            da = [F.rand(rng) for _ in range(3)]
            db = [F.rand(rng) for _ in range(3)]
            a = TruncSeries(mod.OK, 0, da, None)
            b = TruncSeries(mod.OK, 0, db, None)
            ea, eb = mod.endo(a), mod.endo(b)
            # additivity
            eab = mod.endo(a + b)
            s = ea + eb
            assert s.agrees_with(eab, min(_prec_or(s, 13), _prec_or(eab, 13)))
            # multiplicativity: [a][b] = [ab] up to the degree truncation
            comp = series_compose(ea, eb)
            eprod = mod.endo(a * b)
            upto = min(_prec_or(comp, 13), _prec_or(eprod, 13))
            assert comp.agrees_with(eprod, upto)


def _prec_or(s, d):
    return d if s.prec is None else min(s.prec, d)


def test_norm_operator_fixes_the_identity():
    for q in (2, 3):
        mod = build_module(q, prec=16, deg_prec=12)
        OH = mod.OK
        ST = _series_over(OH)
        T = ST.gen()
        out = norm_operator(mod, T)
        assert out == T


def test_norm_operator_constants_and_example():
    mod = build_module(2, prec=16, deg_prec=12)
    OH = mod.OK
    ST = _series_over(OH)
    pi = OH.gen()
    c = OH.from_coeff_ints([1, 1])  # 1 + pi
    const = TruncSeries(ST, 0, (c,), None)
    out = norm_operator(mod, const)
    assert out == TruncSeries(ST, 0, (c * c,), None)
    # g = 1 + T: N_F g = (1 + pi) + T since (1+T)(1+T+pi) = (1+pi) + pi T + T^2
    g = TruncSeries(ST, 0, (OH.one, OH.one), None)
    out = norm_operator(mod, g)
    want = TruncSeries(ST, 0, (OH.one + pi, OH.one), None)
    assert out == want


def test_norm_operator_multiplicative_and_frobenius_congruence():
    rng = random.Random(1)
    for q, d in ((2, 1), (3, 1), (2, 2)):
        p, e = (2, 1) if q == 2 else (3, 1)
        mod = build_module(q, prec=10, deg_prec=12)
        OH = SeriesRing(get_field(p, e * d), "pi", default_prec=10)
        ST = _series_over(OH)
        for _ in range(4):
            g = ST.rand(rng, 8)
            cs = list(g.coeffs)
            if cs:
                cs[0] = OH.rand_unit(rng, 10)
            g = TruncSeries(ST, 0, cs, 8)
            h = TruncSeries(ST, 0, [OH.rand(rng, 10) for _ in range(8)], 8)
            h = h + ST.one
            ng, nh = norm_operator(mod, g), norm_operator(mod, h)
            ngh = norm_operator(mod, g * h)
            prod = ng * nh
            upto = min(x.prec for x in (ngh, prod) if x.prec is not None)
            assert ngh.matches_to(prod, upto)
            # N_F g = Frob g mod pi
            frob_g = g.map_coeffs(
                lambda c: c.map_coeffs(lambda r: OH.base.pow(r, q)))
            diff = ng - frob_g
            for c in diff.coeffs:
                if c.prec is not None and c.prec < 1:
                    continue  # nothing checkable at this coefficient
                assert c.val_lower_bound() >= 1
