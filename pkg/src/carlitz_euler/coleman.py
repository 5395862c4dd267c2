"""Interpolating power series for norm-coherent unit sequences, their
constant terms, the reciprocity symbol, and the constant-term law
connecting the two.

The solver runs two independent routes and certifies only what they agree
on:

* splitting route: the torsion algebra O_H[T]/([pi^(n+1)](T)) splits over H
  as H x H_0 x ... x H_n; interpolation is Chinese remaindering, and
  integrality of the top coefficient pins the otherwise-free component at
  T = 0 modulo pi^(n+1);
* contraction route: start from any top-level interpolant and iterate
  g -> Frob^{-1}(N_F g), which walks the interpolation property down the
  tower while contracting toward the fixed-point set of the norm operator.

The symbol (u, chi) is val(b) mod Z for sigma(b)/b = u with b produced by
a seeded resolvent inside the fixed field of ker chi; it is independent of
every random choice, which the tests exercise.
"""

from fractions import Fraction
import math

from .errors import (CertificationFailed, NotNormCoherent, PreconditionFailed,
                     PrecisionExhausted, VerificationFailed)
from .lubin_tate import norm_operator, _series_over
from .poly import UPoly
from .rng import SeedTree
from .series import TruncSeries
from .tower import cyclic_resolvent, get_level, unit_group

__all__ = ["NormCoherentSeq", "ColemanSeries", "coleman_solve", "symbol",
           "verify_constant_term_law", "verify_twisted_constant_term_law"]


class NormCoherentSeq:
    """Units u_0 ... u_nmax with N_{H_n/H_(n-1)}(u_n) = u_(n-1)."""

    def __init__(self, base, mod, units, check=True, unit_seq=True):
        self.base = base
        self.mod = mod
        self.units = list(units)
        self.n_max = len(self.units) - 1
        self.levels = [get_level(base, mod, i) for i in range(self.n_max + 1)]
        self.unit_seq = unit_seq
        self._col = None
        if check:
            self.verify_coherence()

    def verify_coherence(self):
        """Norm-coherence at working precision: each defect must have
        valuation at least the base precision."""
        thresh = self.base.prec
        for n in range(self.n_max, 0, -1):
            down = self.levels[n].norm_down(self.units[n], self.levels[n - 1])
            defect = down - self.units[n - 1]
            if defect.val_lower_bound() < thresh:
                raise NotNormCoherent(f"norm of level {n} misses level {n - 1}")

    def u_H(self):
        """N_{H_0/H}(u_0), an O_H element."""
        return self.levels[0].norm_to_H_resultant(self.units[0])

    def __mul__(self, other):
        return NormCoherentSeq(self.base, self.mod,
                               [a * b for a, b in zip(self.units, other.units)],
                               check=False, unit_seq=self.unit_seq and other.unit_seq)

    def partial_norm_fixed_field(self, chi):
        """Image in the fixed field of ker chi: the product of conjugates
        over the kernel, staying at level n."""
        n = chi.level
        if n > self.n_max:
            raise PreconditionFailed("character level exceeds the sequence")
        level = self.levels[n]
        return level.partial_norm(self.units[n], chi.kernel())


# -- standard families ---------------------------------------------------------

def torsion_unit_family(base, mod, a, n_max):
    """u_n = [a](xi_n)/xi_n for a unit a of O_K.

    Built exactly as ([a](X)/X)(xi_n): the quotient is a polynomial, so no
    precision is spent on a series division.
    """
    apoly = mod.endo_poly(a)
    over_x = UPoly(apoly.ring, apoly.coeffs[1:])
    units = []
    for n in range(n_max + 1):
        level = get_level(base, mod, n)
        lifted = over_x.map_coeffs(base.embed_K, level.h.ring)
        units.append(level.eval_poly(lifted, level.xi))
    return NormCoherentSeq(base, mod, units, check=False)


def teichmuller_family(base, mod, c_raw, n_max):
    """The constant coherent family of a Teichmueller unit c in F_{q^d}."""
    units = []
    for n in range(n_max + 1):
        level = get_level(base, mod, n)
        tw = base.field_H.pow(c_raw, base.q ** ((-n) % base.d))
        units.append(level.from_OH(base.OH.constant(tw)))
    return NormCoherentSeq(base, mod, units, check=False)


def all_ones_family(base, mod, n_max):
    units = [get_level(base, mod, n).ring.one for n in range(n_max + 1)]
    return NormCoherentSeq(base, mod, units, check=False)


def torsion_generator_seq(base, mod, n_max):
    """The non-unit coherent sequence (xi_n); its series is T."""
    units = [get_level(base, mod, n).xi for n in range(n_max + 1)]
    return NormCoherentSeq(base, mod, units, check=False, unit_seq=False)


def norm_chain_family(base, mod, top, n_max):
    """Any top-level unit generates a coherent family by successive norms."""
    units = [None] * (n_max + 1)
    units[n_max] = top
    for n in range(n_max, 0, -1):
        level = get_level(base, mod, n)
        units[n - 1] = level.norm_down(units[n], get_level(base, mod, n - 1))
    return NormCoherentSeq(base, mod, units, check=False)


def _snap_exact(series, W):
    """Round each coefficient to the exact series of its known digits
    below W (a data-generation device: the result is a nearby exact
    representative, not a certified value)."""
    ST = series.ring
    OH = ST.base
    out = []
    for c in series.coeffs:
        hi = W if c.prec is None else min(c.prec, W)
        digits = [(e, c.coeff_unchecked(e)) for e in range(max(c.off, 0), hi)]
        s = OH.zero
        for e, d in digits:
            if not OH.base.is_zero(d):
                s = s + TruncSeries(OH, e, (d,), None)
        out.append(s)
    return TruncSeries(ST, series.off, out, None)


def fixed_point_series(base, mod, rng, iters=None):
    """A unit series approximately fixed under g -> Frob^{-1}(N_F g), by
    contraction from a random unit series.

    Each round snaps to an exact representative, so this is a generator of
    test data; the families built from it are re-verified for coherence."""
    OH = base.OH
    ST = _series_over(OH)
    width = mod.deg_prec
    g = TruncSeries(ST, 0,
                    [OH.rand_unit(rng, base.prec)] +
                    [OH.rand(rng, base.prec) for _ in range(width - 1)],
                    None)
    g = _snap_exact(g, base.prec)
    steps = base.prec if iters is None else iters
    for _ in range(steps):
        g = norm_operator(mod, g, degree_bound=width - 1)
        g = g.map_coeffs(lambda c: base.frob_series(c, -1))
        g = _snap_exact(g, base.prec)
    return g


def family_from_series(base, mod, g, n_max):
    """Evaluate a fixed-point series down the tower: u_n = (Frob^-n g)(xi_n)."""
    units = []
    for n in range(n_max + 1):
        level = get_level(base, mod, n)
        units.append(eval_series_at_level(g, level, n))
    return NormCoherentSeq(base, mod, units, check=False)


def eval_series_at_level(series, level, n):
    """(Frob^{-n} series)(xi_n): twist coefficients, then Horner over the
    stored polynomial part."""
    base = level.base
    acc = level.ring.zero
    top = series.off + len(series.coeffs) - 1
    for e in range(top, -1, -1):
        acc = acc * level.xi
        c = series.coeff_unchecked(e)
        if not base.OH.is_zero(c):
            acc = acc + level.from_OH(base.frob_series(c, -n))
    if series.off < 0:
        acc = acc * (level.xi ** series.off)
    return acc


# -- the solver -----------------------------------------------------------------

class ColemanSeries:
    """The interpolating series with its certification data."""

    def __init__(self, series, certified_prec, level_used, diagnostics=None):
        self.series = series
        self.certified_prec = certified_prec
        self.level_used = level_used
        self.diagnostics = diagnostics or {}

    def constant_term(self):
        return self.series.coeff_unchecked(0)

    def __repr__(self):
        return (f"ColemanSeries(certified_prec={self.certified_prec}, "
                f"level_used={self.level_used})")


def _crt_route(seq):
    """Interpolation through the splitting of the torsion algebra."""
    base, mod = seq.base, seq.mod
    n = seq.n_max
    OH = base.OH
    R = seq.levels[0].h.ring  # O_H[X]
    M = mod.f_iterate(n + 1).map_coeffs(base.embed_K, R)
    pi = OH.gen()

    # idempotent numerators M/h_i and their inverses at xi_i
    hs = [seq.levels[i].h for i in range(n + 1)]
    P0 = R.zero()
    for i in range(n + 1):
        level = seq.levels[i]
        Mi = R.gen()
        for j in range(n + 1):
            if j != i:
                Mi = Mi * hs[j]
        w = level.eval_poly(Mi, level.xi)
        inv = w.inverse()
        inv_poly = UPoly(R, inv.coords)
        Ei = (Mi * inv_poly) % M
        comp = level.frobenius(seq.units[i], i)
        comp_poly = UPoly(R, comp.coords)
        P0 = (P0 + Ei * comp_poly) % M

    # Q = (M/T) / pi^(n+1): the component supported at T = 0
    M_over_T = UPoly(R, M.coeffs[1:])
    Q = M_over_T.map_coeffs(lambda c: c.shift(-(n + 1)))
    top = P0.coeff(M.degree - 1)
    c_star = -(top.shift(n + 1))
    P = P0 + Q.scale(c_star)
    coeffs = [P.coeff(k) for k in range(M.degree)]
    for k, c in enumerate(coeffs):
        if c.val_lower_bound() < 0:
            raise CertificationFailed(
                f"interpolant coefficient {k} is not integral")
    ST = _series_over(OH)
    series = TruncSeries(ST, 0, coeffs, M.degree)
    return series, c_star


def _contraction_route(seq, extra=1):
    """Iterate g -> Frob^{-1}(N_F g) from a top-level interpolant.

    The iterate stays a polynomial of the interpolant's degree, so the
    triangular solve runs with that degree warrant; coefficients are
    truncated to the working precision each round.
    """
    base, mod = seq.base, seq.mod
    n = seq.n_max
    OH = base.OH
    ST = _series_over(OH)
    top_level = seq.levels[n]
    u_top = top_level.frobenius(seq.units[n], n)
    g = TruncSeries(ST, 0, u_top.coords, None)
    bound = max(g.off + len(g.coeffs) - 1, 1)
    history = [g]
    for _ in range(n + extra):
        g = norm_operator(mod, g, degree_bound=bound)
        g = g.map_coeffs(lambda c: base.frob_series(c, -1))
        g = TruncSeries(ST, g.off,
                        [c.truncate(base.prec) for c in g.coeffs], g.prec)
        history.append(g)
    return g, history


def _algebra_norm_route(seq):
    """Constant term from the torsion-algebra norm: for any lift of the
    (Frobenius-twisted) top unit to O_H[T]/([pi^(n+1)](T)), the algebra
    norm equals the constant term times prod_i Frob^i(u_H), modulo
    pi^(n+1)."""
    base, mod = seq.base, seq.mod
    n = seq.n_max
    R = seq.levels[0].h.ring
    M = mod.f_iterate(n + 1).map_coeffs(base.embed_K, R)
    top = seq.levels[n].frobenius(seq.units[n], n)
    lift = UPoly(R, top.coords)
    nrm = _resultant_trimmed(M, lift, base)
    uH = seq.u_H()
    corr = base.OH.one
    for i in range(n + 1):
        corr = corr * base.frob_series(uH, i)
    return nrm / corr


def _resultant_trimmed(M, lift, base):
    coords = list(lift.coeffs)
    uncertainty = math.inf
    while coords and coords[-1].is_indistinguishable_from_zero():
        t = coords.pop()
        if not t.is_exact_zero():
            uncertainty = min(uncertainty,
                              t.prec if t.prec is not None else math.inf)
    if not coords:
        raise PrecisionExhausted("norm of an element with no known digit")
    from .poly import resultant
    res = resultant(M, UPoly(M.ring, coords))
    if uncertainty != math.inf:
        res = res + base.OH.unknown(int(uncertainty))
    return res


def _agreement_prec(a, b, cap):
    """Largest k <= cap with a = b mod pi^k."""
    d = a - b
    k = d.val_lower_bound()
    if k == math.inf:
        return cap
    return min(int(k), cap)


def coleman_solve(seq, extra_iters=1, run_contraction=True):
    """Solve for the interpolating series.

    Certification: the splitting-route constant term must agree with the
    independent algebra-norm value and with the contraction iterates, all
    modulo pi^(n_max+1); direct evaluation at every level must leave a
    residual of at least the certified valuation.
    """
    base = seq.base
    n = seq.n_max
    series, c_star = _crt_route(seq)
    cap = base.prec
    c0 = series.coeff_unchecked(0)
    anorm = _algebra_norm_route(seq)
    agree_norm = _agreement_prec(c0, anorm, cap)
    theoretical = n + 1
    certified = min(theoretical, agree_norm)
    diagnostics = {"algebra_norm_agreement": agree_norm}
    if run_contraction:
        contr, history = _contraction_route(seq, extra_iters)
        contr_c0 = contr.coeff_unchecked(0)
        nominal = contr_c0.prec if contr_c0.prec is not None else cap
        if nominal >= theoretical:
            agree_c = _agreement_prec(c0, contr_c0, cap)
            stab = _agreement_prec(history[-1].coeff_unchecked(0),
                                   history[-2].coeff_unchecked(0), cap)
            certified = min(certified, agree_c, stab)
            diagnostics["contraction_agreement"] = agree_c
            diagnostics["stabilization"] = stab
        else:
            diagnostics["contraction_inconclusive"] = nominal
    if certified < 1:
        raise CertificationFailed(
            f"solver routes disagree: diagnostics {diagnostics}")
    residuals = []
    for i in range(n + 1):
        got = eval_series_at_level(series, seq.levels[i], i)
        resid = got - seq.units[i]
        lb = resid.val_lower_bound()
        residuals.append(lb)
        if lb < certified:
            raise CertificationFailed(
                f"interpolation residual at level {i} has valuation only {lb}")
    if seq.unit_seq:
        v = series.coeff_unchecked(0).valuation()
        if v != 0:
            raise CertificationFailed("constant term of a unit sequence "
                                      "is not a unit")
    diagnostics["residual_bounds"] = [str(r) for r in residuals]
    return ColemanSeries(series, certified, n, diagnostics=diagnostics)


def closed_form_torsion_series(base, mod, a):
    """[a](T)/T, the exact series of a torsion unit family."""
    OK = mod.OK
    if not isinstance(a, TruncSeries):
        a = TruncSeries(OK, 0, [mod.field.from_int(x) if isinstance(x, int)
                                else x for x in a], None)
    e = mod.endo(a)
    ST_H = _series_over(base.OH)
    lifted = TruncSeries(ST_H, e.off, [base.embed_K(c) for c in e.coeffs],
                         e.prec)
    return lifted.shift(-1)


# -- reciprocity ----------------------------------------------------------------

def rec_unit(level, u):
    """The Galois automorphism attached to a unit: xi_n -> [u](xi_n)."""
    digits = level._unit_digits(u)

    def act(x):
        return level.galois_act(digits, x)

    return digits, act


class SymbolValue:
    """An element of (1/m)Z/Z, stored as a reduced fraction mod 1."""

    def __init__(self, frac, order):
        self.value = Fraction(frac) % 1
        if order % self.value.denominator:
            raise VerificationFailed(
                f"symbol denominator {self.value.denominator} does not "
                f"divide the character order {order}")
        self.order = order

    def __eq__(self, other):
        if isinstance(other, SymbolValue):
            return self.value == other.value
        return self.value == Fraction(other) % 1

    def __add__(self, other):
        o = other.value if isinstance(other, SymbolValue) else Fraction(other)
        return SymbolValue(self.value + o, self.order)

    def __repr__(self):
        return f"SymbolValue({self.value})"


def invariant_sampler(level, kernel_digits):
    """Random elements of the fixed field of the kernel: partial norms of
    random level elements."""

    def sampler(rng):
        x = level.rand_unit(rng)
        return level.partial_norm(x, kernel_digits)

    return sampler


def symbol(level, u_fixed, chi, seed=0, presume_norm_one=False):
    """(u, chi) = val(b) mod Z where sigma(b)/b = u in the fixed field of
    ker chi and chi(sigma) = 1/m."""
    m = chi.order
    if m == 1:
        return SymbolValue(Fraction(0), 1)
    kernel = chi.kernel()
    sigma = chi.sigma_with_value_one_over_m()

    def sig(x):
        return level.galois_act(sigma, x)

    sampler = invariant_sampler(level, kernel)
    rng = SeedTree(seed).child("symbol").rng()
    b = cyclic_resolvent(u_fixed, sig, m, sampler, rng)
    val = level.valuation(b)
    if (val * m).denominator != 1:
        raise VerificationFailed(
            "resolvent landed outside the fixed field")
    return SymbolValue(val, m)


# -- verifiers -------------------------------------------------------------------

def _descend_to_K(base, c, prec_needed):
    """Digits of an O_H element that is Frobenius-fixed, as K-field raws."""
    F_H = base.field_H
    F_K = base.field_K
    back = {base._embed(a): a for a in range(F_K.q)}
    digits = []
    for k in range(prec_needed):
        d = c.coeff_unchecked(k)
        if F_H.pow(d, base.q) != d or d not in back:
            raise VerificationFailed(
                "constant term is not Frobenius-fixed at the needed precision")
        digits.append(back[d])
    return digits


def verify_constant_term_law(seq, chi, seed=0):
    """Both sides of the constant-term reciprocity law, computed by
    disjoint routes: the symbol via partial norms and the resolvent, the
    character value via the solved series' constant term."""
    base = seq.base
    n = chi.level
    uH = seq.u_H()
    if (uH - base.OH.one).val_lower_bound() < base.prec - 1:
        raise PreconditionFailed("the base-field norm of the sequence is not 1")
    level = seq.levels[n]
    u_fixed = seq.partial_norm_fixed_field(chi)
    lhs = symbol(level, u_fixed, chi, seed=seed)
    if seq._col is None:
        seq._col = coleman_solve(seq)
    col = seq._col
    if col.certified_prec < n + 1:
        raise CertificationFailed(
            f"constant term certified only to {col.certified_prec}, "
            f"need {n + 1}")
    c0 = col.constant_term()
    digits = _descend_to_K(base, c0, n + 1)
    group = unit_group(base.q, n)
    rhs_frac = chi.value(group.from_ints(digits))
    ok = (lhs.value == rhs_frac)
    return {
        "lhs": str(lhs.value),
        "rhs": str(rhs_frac),
        "pass": ok,
        "certified_prec": col.certified_prec,
        "chi_order": chi.order,
        "level": n,
    }


def unramified_hilbert90(base, a, seed=0, tries=32):
    """b in O_H^x with Frob(b)/b = a, given N_{H/K}(a) = 1."""
    nrm = base.norm_to_K(a)
    if not (nrm - base.OH.one).is_indistinguishable_from_zero():
        raise PreconditionFailed("norm to K of a is not 1")

    def sigma(s):
        return base.frob_series(s, 1)

    def sampler(rng):
        return base.OH.rand_unit(rng, base.prec)

    rng = SeedTree(seed).child("unram-h90").rng()
    return cyclic_resolvent(a, sigma, base.d, sampler, rng)


def verify_twisted_constant_term_law(seq, a, chi, seed=0):
    """The variant with u_H = a^d for a norm-one a in O_H^x: compare
    (u_{H_chi}/a, chi) with chi at (constant term)/b^d, where
    a = Frob(b)/b."""
    base = seq.base
    d_chi = chi.order
    n = chi.level
    uH = seq.u_H()
    if (uH - a ** d_chi).val_lower_bound() < base.prec - 1:
        raise PreconditionFailed("u_H is not the d-th power of a")
    b = unramified_hilbert90(base, a, seed=seed)
    level = seq.levels[n]
    u_fixed = seq.partial_norm_fixed_field(chi)
    w = u_fixed / level.from_OH(a)
    lhs = symbol(level, w, chi, seed=seed)
    if seq._col is None:
        seq._col = coleman_solve(seq)
    col = seq._col
    if col.certified_prec < n + 1:
        raise CertificationFailed("constant term not certified deep enough")
    value = col.constant_term() / (b ** d_chi)
    digits = _descend_to_K(base, value, n + 1)
    group = unit_group(base.q, n)
    rhs_frac = chi.value(group.from_ints(digits))
    return {
        "lhs": str(lhs.value),
        "rhs": str(rhs_frac),
        "pass": lhs.value == rhs_frac,
        "certified_prec": col.certified_prec,
        "chi_order": d_chi,
        "level": n,
    }


def vanishing_witness(level, chi, a_const_raw, b_elem):
    """The unit resolvent witness for symbols of a * b^(ord chi): builds
    u' = prod sigma^i((partial norm of b)^i) and checks sigma(u')/u' equals
    the fixed-field image, so the symbol vanishes by inspection."""
    m = chi.order
    sigma = chi.sigma_with_value_one_over_m()
    kernel = chi.kernel()
    a_elem = level.from_K_const(a_const_raw)
    u = a_elem * (b_elem ** m)
    u_fixed = level.partial_norm(u, kernel)
    b_fixed = level.partial_norm(b_elem, kernel)
    group = chi.group
    uprime = level.ring.one
    for i in range(1, m):
        sig_i = group.pow(sigma, i)
        uprime = uprime * level.galois_act(sig_i, b_fixed ** i)
    got = level.galois_act(sigma, uprime) / uprime
    if not (got - u_fixed).is_indistinguishable_from_zero():
        raise VerificationFailed("explicit witness failed")
    v = level.valuation(uprime)
    if v != 0:
        raise VerificationFailed("witness is not a unit")
    return uprime
