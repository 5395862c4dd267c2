"""Cyclotomic function fields for the module T -> TX + X^q over F_q[T].

The m-torsion field is F_q(T)[X]/(Phi_m) with Galois group (A/m)^x acting
through a -> (lambda -> rho_a(lambda)).  Irreducibility of Phi_m is
certified exactly: Phi_m divides rho_m, is coprime to rho_(m/p) for every
prime p | m, and has degree #(A/m)^x, which forces any root in any factor
field to be an exact generator and hence every factor to have full degree.

Primes above v are enumerated by factoring Phi_m over the residue field of
v and Hensel-lifting a root into F_{q^(deg v * f)}[[s]] along T -> theta + s.
At primes dividing the modulus the completion is an Eisenstein quotient over
that unramified model, with the v-power torsion point as uniformizer.
"""

from fractions import Fraction
import math

from .errors import (NotCoprime, PrecisionExhausted, VerificationFailed,
                     ZeroSection)
from .ffield import embedding, get_field
from .linalg import solve_overdetermined
from .poly import (PolyRing, UPoly, factor_squarefree, is_irreducible,
                   poly_ext_gcd, poly_gcd, resultant, roots_in_field)
from .quotient import QuotientRing
from .ratfunc import RatFunc, RatFuncField
from .rng import SeedTree
from .series import SeriesRing, TruncSeries

__all__ = ["ModulusM", "CycField", "carlitz_poly", "cyclotomic_poly",
           "siegel_unit", "level_norm", "splitting_data", "ideal_valuations",
           "primes_above"]


# -- the polynomial ring A = F_q[T] and the module action ----------------------

_A_RINGS = {}


def a_ring(q):
    if q not in _A_RINGS:
        from .lubin_tate import _prime_power
        p, e = _prime_power(q)
        _A_RINGS[q] = PolyRing(get_field(p, e), "T")
    return _A_RINGS[q]


_RF_FIELDS = {}


def rf_field(q):
    if q not in _RF_FIELDS:
        from .lubin_tate import _prime_power
        p, e = _prime_power(q)
        _RF_FIELDS[q] = RatFuncField(get_field(p, e), "T")
    return _RF_FIELDS[q]


_ACTION_ROWS = {}


def _action_rows(q, i):
    """Coefficients of the T^i action: rho_(T^i)(X) = sum_j c[i][j] X^(q^j),
    with c in A."""
    rows = _ACTION_ROWS.setdefault(q, [{0: a_ring(q).one()}])
    A = a_ring(q)
    t = A.gen()
    while len(rows) <= i:
        prev = rows[-1]
        row = {j: t * c for j, c in prev.items()}
        for j, c in prev.items():
            cq = UPoly(A, [A.base.pow(x, q) for x in c.coeffs])
            # Frobenius on coefficients is not enough: (c)^q as a polynomial
            cq = c ** q
            row[j + 1] = row.get(j + 1, A.zero()) + cq
        rows.append(row)
    return rows[i]


def carlitz_poly(q, a):
    """rho_a(X) as a polynomial in X over F_q(T), for a in A (an F_q[T]
    polynomial or int-coefficient list)."""
    A = a_ring(q)
    K = rf_field(q)
    if not isinstance(a, UPoly):
        a = A.from_int_coeffs(a)
    if a.is_zero():
        raise ValueError("the action of 0 is not a polynomial map")
    coeff_at = {}
    for i in range(a.degree + 1):
        ai = a.coeff(i)
        if A.base.is_zero(ai):
            continue
        for j, c in _action_rows(q, i).items():
            cur = coeff_at.get(j, A.zero())
            coeff_at[j] = cur + c.scale(ai)
    deg = q ** max(coeff_at)
    R = PolyRing(K, "X")
    coeffs = [K.zero] * (deg + 1)
    for j, c in coeff_at.items():
        coeffs[q ** j] = K.from_poly(c)
    return R.poly(coeffs)


class ModulusM:
    """A nonconstant monic modulus with its prime factorization."""

    def __init__(self, q, m):
        A = a_ring(q)
        if not isinstance(m, UPoly):
            m = A.from_int_coeffs(m)
        if m.degree < 1:
            raise ValueError("the modulus must be nonconstant")
        if not m.is_monic():
            raise ValueError("the modulus must be monic")
        self.q = q
        self.m = m
        rng = SeedTree(0).child(f"factor:{q}:{m.coeffs}").rng()
        from .poly import squarefree_part
        rad = squarefree_part(m)
        primes = factor_squarefree(rad, rng)
        fact = []
        for p in primes:
            e = 0
            rest = m
            while True:
                quo, rem = rest.divmod(p)
                if not rem.is_zero():
                    break
                rest, e = quo, e + 1
            fact.append((p, e))
        self.factorization = fact
        check = A.one()
        for p, e in fact:
            check = check * p ** e
        if check != m:
            raise VerificationFailed("factorization does not multiply back")
        self.unit_count = 1
        for p, e in fact:
            d = p.degree
            self.unit_count *= q ** (d * e) - q ** (d * (e - 1))

    def key(self):
        return (self.q, tuple(self.m.coeffs))

    def divides(self, other):
        _, r = other.m.divmod(self.m)
        return r.is_zero()

    def __repr__(self):
        return f"ModulusM(q={self.q}, m={self.m})"


def cyclotomic_poly(q, m):
    """Phi_m(X) via Moebius inversion over monic divisors."""
    if not isinstance(m, ModulusM):
        m = ModulusM(q, m)
    A = a_ring(q)
    primes = [p for p, _ in m.factorization]
    num = None
    den = None
    for mask in range(1 << len(primes)):
        d = A.one()
        bits = 0
        for i, p in enumerate(primes):
            if mask >> i & 1:
                d = d * p
                bits += 1
        quo, rem = m.m.divmod(d)
        if not rem.is_zero():
            raise VerificationFailed("divisor enumeration broke")
        rho = carlitz_poly(q, quo)
        if bits % 2 == 0:
            num = rho if num is None else num * rho
        else:
            den = rho if den is None else den * rho
    phi = num if den is None else num.exact_div(den)
    if phi.degree != m.unit_count:
        raise VerificationFailed("cyclotomic degree mismatch")
    return phi


def certify_cyclotomic(q, m, phi):
    """Exact irreducibility certificate: phi | rho_m, gcd(phi, rho_(m/p)) = 1
    for each prime p | m, and deg phi = #(A/m)^x.  Any root of phi in any
    field is then an exact generator, so each irreducible factor already has
    degree #(A/m)^x."""
    if not isinstance(m, ModulusM):
        m = ModulusM(q, m)
    rho_m = carlitz_poly(q, m.m)
    if not (rho_m % phi).is_zero():
        raise VerificationFailed("phi does not divide the torsion polynomial")
    for p, _ in m.factorization:
        quo = m.m.exact_div(p)
        g = poly_gcd(phi, carlitz_poly(q, quo))
        if g.degree != 0:
            raise VerificationFailed("phi shares lower-torsion roots")
    if phi.degree != m.unit_count:
        raise VerificationFailed("phi has the wrong degree")
    return True


# -- residues mod m -------------------------------------------------------------

class ResidueRing:
    """A/m with unit-group helpers (enumeration kept to desk scale)."""

    def __init__(self, modulus):
        self.modulus = modulus
        self.A = a_ring(modulus.q)
        self.m = modulus.m

    def reduce(self, a):
        if not isinstance(a, UPoly):
            a = self.A.from_int_coeffs(a)
        return a % self.m

    def mul(self, a, b):
        return (a * b) % self.m

    def is_unit(self, a):
        return poly_gcd(self.reduce(a), self.m).degree == 0

    def units(self):
        q = self.modulus.q
        base = self.A.base
        out = []
        for code in range(q ** self.m.degree):
            digits = []
            c = code
            for _ in range(self.m.degree):
                digits.append(c % q)
                c //= q
            a = UPoly(self.A, digits)
            if self.is_unit(a):
                out.append(a)
        return out

    def kernel_units_to(self, sub_modulus):
        """Units congruent to 1 modulo the given divisor of m."""
        q = self.modulus.q
        quo = self.m.exact_div(sub_modulus)
        out = []
        for code in range(q ** quo.degree):
            digits = []
            c = code
            for _ in range(quo.degree):
                digits.append(c % q)
                c //= q
            w = UPoly(self.A, digits)
            a = (self.A.one() + sub_modulus * w) % self.m
            if self.is_unit(a):
                out.append(a)
        return out

    def order_of(self, a):
        a = self.reduce(a)
        cur = a
        k = 1
        one = self.A.one()
        while cur != one:
            cur = self.mul(cur, a)
            k += 1
            if k > self.modulus.unit_count:
                raise VerificationFailed("order computation diverged")
        return k


# -- the cyclotomic field --------------------------------------------------------

_CYC_FIELDS = {}


def cyc_field(q, m):
    if not isinstance(m, ModulusM):
        m = ModulusM(q, m)
    key = m.key()
    if key not in _CYC_FIELDS:
        _CYC_FIELDS[key] = CycField(m)
    return _CYC_FIELDS[key]


class CycField:
    def __init__(self, modulus):
        self.modulus = modulus
        self.q = modulus.q
        self.K = rf_field(self.q)
        self.phi = cyclotomic_poly(self.q, modulus)
        self.ring = QuotientRing(self.phi, invert="euclid")
        self.lam = self.ring.gen()
        self.degree = self.phi.degree
        self.residues = ResidueRing(modulus)
        self._qpowers = None
        self._act_cache = {}

    def verify(self):
        certify_cyclotomic(self.q, self.modulus, self.phi)
        return True

    def _lam_qpowers(self, upto):
        if self._qpowers is None:
            self._qpowers = [self.lam]
        while len(self._qpowers) <= upto:
            prev = self._qpowers[-1]
            self._qpowers.append(prev ** self.q)
        return self._qpowers

    def act_on_lam(self, a):
        """rho_a(lambda) reduced mod phi."""
        a = self.residues.reduce(a)
        if a.is_zero():
            return self.ring.zero
        A = self.residues.A
        coeff_at = {}
        for i in range(a.degree + 1):
            ai = a.coeff(i)
            if A.base.is_zero(ai):
                continue
            for j, c in _action_rows(self.q, i).items():
                cur = coeff_at.get(j, A.zero())
                coeff_at[j] = cur + c.scale(ai)
        pows = self._lam_qpowers(max(coeff_at))
        acc = self.ring.zero
        for j, c in coeff_at.items():
            acc = acc + pows[j].scale(self.K.from_poly(c))
        return acc

    def galois_act(self, a, x):
        """The automorphism lambda -> rho_a(lambda) for a coprime to m."""
        a = self.residues.reduce(a)
        if not self.residues.is_unit(a):
            raise NotCoprime("galois action needs a residue coprime to m")
        key = tuple(a.coeffs)
        pows = self._act_cache.get(key)
        if pows is None:
            img = self.act_on_lam(a)
            pows = [self.ring.one]
            for _ in range(self.degree - 1):
                pows.append(pows[-1] * img)
            self._act_cache[key] = pows
        acc = self.ring.zero
        for j, c in enumerate(x.coords):
            if not c.is_zero():
                acc = acc + pows[j].scale(c)
        return acc

    def from_ratfunc(self, c):
        return self.ring.from_base(c)

    def norm_to_F(self, x):
        """N_{F(Lambda_m)/F} by resultant against phi."""
        return resultant(self.phi, UPoly(self.phi.ring, x.coords))

    def is_constant_invariant(self, x):
        """Invariance under the constants F_q^x (the real-subfield test)."""
        F = self.K.field
        for c in range(2, self.q):
            if (self.galois_act(UPoly(self.residues.A, [c]), x) - x) \
                    .is_zero() is False:
                return False
        return True

    def __repr__(self):
        return f"CycField(q={self.q}, m={self.modulus.m})"


# -- theta and Siegel units -------------------------------------------------------

def theta_norm_check(q, a):
    """N_a(X^(q-1)) computed along rho_a by resultant in a fresh variable:
    the product of s^(q-1) over the roots of rho_a(s) - t equals t^(q-1)."""
    K = rf_field(q)
    rho = carlitz_poly(q, a)
    # work over F_q(t) with the variable renamed: resultant in s of
    # rho(s) - t against s^(q-1), as a polynomial identity in t
    Kt = RatFuncField(K.field, "t")
    R = PolyRing(Kt, "s")
    coeffs = []
    for c in rho.coeffs:
        if not c.den.is_one():
            raise VerificationFailed("action polynomial is not integral")
        coeffs.append(_lift_const_poly(Kt, c.num))
    rho_t = R.poly(coeffs) - R.constant(Kt.gen())
    res = resultant(rho_t, R.gen() ** (q - 1))
    want = Kt.gen() ** (q - 1)
    if res != want:
        raise VerificationFailed(f"norm of the theta root is {res}, not t^(q-1)")
    return True


def _lift_const_poly(Kt, apoly):
    """Interpret an F_q[T]-coefficient as an F_q[t]-element of Kt."""
    return Kt.from_poly(UPoly(Kt.polyring, list(apoly.coeffs)))


def theta_verify(q, a_list=((0, 1), (1, 1))):
    """Certify the canonical function: X^(q-1) is norm-invariant along the
    generating actions, so theta = X^((q-1)^2)."""
    for a in a_list:
        theta_norm_check(q, list(a))
    return {"theta_exponent": (q - 1) ** 2, "checked": [list(a) for a in a_list]}


def siegel_unit(field, b=None):
    """g_{m,b} = rho_b(lambda)^((q-1)^2)."""
    q = field.q
    if b is None:
        b = field.residues.A.one()
    b = field.residues.reduce(b)
    if b.is_zero():
        raise ZeroSection("the zero section carries no Siegel unit")
    base_pt = field.act_on_lam(b)
    return base_pt ** ((q - 1) ** 2)


def level_norm(src, dst, x):
    """Norm from the modulus of src to the modulus of dst (a divisor with
    prime-power quotient), expressed in dst's coordinates."""
    quo, rem = src.modulus.m.divmod(dst.modulus.m)
    if not rem.is_zero():
        raise VerificationFailed("target modulus must divide the source")
    kernel = src.residues.kernel_units_to(dst.modulus.m)
    acc = src.ring.one
    for a in kernel:
        acc = acc * src.galois_act(a, x)
    return express_in_subfield(src, dst, acc)


def express_in_subfield(src, dst, y):
    """Rewrite y (lying in the embedded dst field) in dst coordinates.

    The embedding sends dst's torsion generator to rho_(quotient) of src's.
    """
    quo = src.modulus.m.exact_div(dst.modulus.m)
    img = src.act_on_lam(quo)
    cols = [src.ring.one]
    for _ in range(dst.degree - 1):
        cols.append(cols[-1] * img)
    A = [[cols[j].coords[i] for j in range(dst.degree)]
         for i in range(src.degree)]
    sol = solve_overdetermined(A, list(y.coords), src.K, dst.degree)
    return dst.ring.from_coords(sol)


def embed_from_subfield(src, dst_field, x):
    """The other direction: map an element of the smaller field into src."""
    quo = src.modulus.m.exact_div(dst_field.modulus.m)
    img = src.act_on_lam(quo)
    acc = src.ring.zero
    for c in reversed(x.coords):
        acc = acc * img + src.ring.from_base(c)
    return acc


def splitting_data(q, v, m):
    """Frobenius class of a prime v in (A/m)^x and complete-splitting in
    the constant-invariant subfield."""
    if not isinstance(m, ModulusM):
        m = ModulusM(q, m)
    A = a_ring(q)
    if not isinstance(v, UPoly):
        v = A.from_int_coeffs(v)
    if not is_irreducible(v):
        raise VerificationFailed("v is not prime")
    res = ResidueRing(m)
    frob = res.reduce(v)
    if not res.is_unit(frob):
        raise NotCoprime("v divides the modulus")
    splits = frob.degree == 0  # class of a constant
    return {"frob": frob, "splits_completely_in_real_subfield": splits}


# -- local models -----------------------------------------------------------------

class LocalEmbed:
    """A completion of the cyclotomic field at one prime above v.

    Unramified case (v prime to m): the model is F_{q^(deg v * f)}[[s]],
    T -> theta + s, lambda -> a Hensel-lifted root of the chosen factor of
    Phi_m mod v.  Ramified case (v | m): an Eisenstein quotient over that
    model with the v-power torsion point as uniformizer.
    """

    def __init__(self, field, v, factor_index, prec=12):
        self.field = field
        self.v = v
        self.index = factor_index
        self.prec = prec
        q = field.q
        from .lubin_tate import _prime_power
        p, e = _prime_power(q)
        self.p, self.e = p, e
        A = a_ring(q)
        m = field.modulus.m
        vpart = A.one()
        rest = m
        self.v_exp = 0
        while True:
            quo, rem = rest.divmod(v)
            if not rem.is_zero():
                break
            rest = quo
            vpart = vpart * v
            self.v_exp += 1
        self.m_prime = rest       # the v-free part of m
        self.ramified = self.v_exp > 0
        kv = get_field(p, e * v.degree)
        emb_small = embedding(get_field(p, e), kv)
        vbar = UPoly(PolyRing(kv, "Y"), [emb_small(c) for c in v.coeffs])
        rng = SeedTree(0).child(f"theta:{q}:{tuple(v.coeffs)}").rng()
        theta_roots = roots_in_field(vbar, rng)
        if not theta_roots:
            raise VerificationFailed("v has no root in its residue field")
        self.kv = kv
        self.theta_in_kv = theta_roots[0]
        # factor the v-free cyclotomic layer over k_v
        mprime_field = None
        if self.m_prime.degree >= 1:
            mprime_field = cyc_field(q, ModulusM(q, self.m_prime))
            phibar = _reduce_poly_mod_v(mprime_field.phi, kv, emb_small,
                                        self.theta_in_kv, v)
            factors = factor_squarefree(phibar, rng)
        else:
            factors = []
        self.mprime_field = mprime_field
        if factors:
            self.factors = factors
            g = factors[factor_index]
            self.f = g.degree
        else:
            self.factors = []
            self.f = 1
            g = None
        big = get_field(p, e * v.degree * self.f)
        self.residue_field = big
        self.OL = SeriesRing(big, "s", default_prec=prec)
        emb_kv = embedding(kv, big)
        self.theta = emb_kv(self.theta_in_kv)
        self.emb_const = embedding(get_field(p, e), big)
        # T -> theta + s
        self.T_image = TruncSeries(self.OL, 0, (self.theta, big.one), None)
        self._apoly_cache = {}
        if g is not None:
            g_big = UPoly(PolyRing(big, "Y"),
                          [emb_kv(c) for c in g.coeffs])
            root0 = roots_in_field(g_big, rng)[0]
            self.mprime_root = self._hensel_root(mprime_field.phi, root0)
        else:
            self.mprime_root = None
        if self.ramified:
            self._build_ramified_model()
        else:
            self.e_ram = 1

    # -- scalar embeddings ----------------------------------------------------

    def apoly(self, c):
        """F_q[T] -> F[[s]] via T -> theta + s."""
        key = tuple(c.coeffs)
        hit = self._apoly_cache.get(key)
        if hit is not None:
            return hit
        OL = self.OL
        acc = OL.zero
        for d in reversed(c.coeffs):
            acc = acc * self.T_image + OL.constant(self.emb_const(d))
        self._apoly_cache[key] = acc
        return acc

    def ratfunc(self, x):
        num = self.apoly(x.num)
        den = self.apoly(x.den)
        return num / den

    def _hensel_root(self, phi, root0):
        """Newton-lift a simple residue root of phi (an A[X]-polynomial)."""
        OL = self.OL
        coeffs = [self.ratfunc(c) for c in phi.coeffs]
        dcoeffs = []
        p = self.p
        for i in range(1, len(coeffs)):
            k = i % p
            acc = OL.zero
            for _ in range(k):
                acc = acc + coeffs[i]
            dcoeffs.append(acc)
        r = OL.constant(root0)
        steps = max(1, math.ceil(math.log2(max(2, self.prec))) + 1)
        for _ in range(steps):
            fr = _horner(coeffs, r, OL)
            dfr = _horner(dcoeffs, r, OL)
            r = r - fr / dfr
            r = r.truncate(self.prec)
        resid = _horner(coeffs, r, OL)
        if resid.val_lower_bound() < self.prec - 1:
            raise VerificationFailed("Hensel lift failed to converge")
        return r

    def _build_ramified_model(self):
        q = self.field.q
        A = a_ring(q)
        vj = self.v ** self.v_exp
        phi_vj = cyclotomic_poly(q, ModulusM(q, vj))
        R = PolyRing(self.OL, "Y")
        hat = R.poly([self.ratfunc(c) for c in phi_vj.coeffs])
        if hat.constant_coeff().valuation() != 1:
            raise VerificationFailed("v-power layer is not Eisenstein here")
        self.ram_ring = QuotientRing(hat, invert="hensel", eisenstein=True)
        self.e_ram = hat.degree
        # the v-power and v-free torsion parts recombine to a generator:
        # lambda_m maps to rho_(alpha m')(Y) + rho_(beta v^j)(root)
        if self.m_prime.degree >= 1:
            g, alpha, beta = poly_ext_gcd(self.m_prime, vj)
            if g.degree != 0:
                raise VerificationFailed("modulus parts are not coprime")
            inv = A.base.inv(g.coeffs[0])
            alpha = alpha.scale(inv)
            beta = beta.scale(inv)
            Y = self.ram_ring.gen()
            vpart = self.rho_at_ram(alpha * self.m_prime, Y)
            w = self.rho_at_series(beta * vj, self.mprime_root)
            self.lam_image_ram = vpart + self.ram_ring.from_base(w)
        else:
            self.lam_image_ram = self.ram_ring.gen()

    def lam_image(self):
        if self.ramified:
            return self.lam_image_ram
        # unramified: lambda_m = lambda_(m') root directly (m = m')
        return self.mprime_root

    def embed(self, x):
        """Map a cyclotomic element into the local model."""
        if self.ramified:
            ring = self.ram_ring
            img = self.lam_image()
            acc = ring.zero
            for c in reversed(x.coords):
                acc = acc * img + ring.from_base(self.ratfunc(c))
            return acc
        img = self.lam_image()
        acc = self.OL.zero
        for c in reversed(x.coords):
            acc = acc * img + self.ratfunc(c)
        return acc

    def val(self, x):
        """The normalized valuation (uniformizer has valuation 1)."""
        y = self.embed(x)
        if self.ramified:
            v = y.valuation()
            out = v * self.e_ram
            if out.denominator != 1:
                raise PrecisionExhausted("valuation not integral")
            return int(out)
        v = y.valuation()
        if v == math.inf:
            raise PrecisionExhausted("element vanishes at working precision")
        return int(v)

    def rho_at_series(self, a, x):
        """rho_a at a local series element, coefficients through T -> theta+s."""
        coeff_at = _rho_coeff_map(self.field.q, a)
        q = self.field.q
        acc = self.OL.zero
        for j, c in coeff_at.items():
            acc = acc + (x ** (q ** j)) * self.apoly(c)
        return acc

    def rho_at_ram(self, a, x):
        """rho_a at a ramified-model element."""
        coeff_at = _rho_coeff_map(self.field.q, a)
        q = self.field.q
        acc = self.ram_ring.zero
        for j, c in coeff_at.items():
            acc = acc + (x ** (q ** j)).scale(self.apoly(c))
        return acc

    def unit_residue_data(self):
        return self.residue_field


def _horner(coeffs, x, ring):
    acc = ring.zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _reduce_poly_mod_v(phi, kv, emb_small, theta, v):
    """Phi_m mod v: rational coefficients evaluated at theta."""
    R = PolyRing(kv, "Y")
    out = []
    for c in phi.coeffs:
        num = _eval_apoly(c.num, kv, emb_small, theta)
        den = _eval_apoly(c.den, kv, emb_small, theta)
        if kv.is_zero(den):
            raise VerificationFailed("coefficient has a pole at v")
        out.append(kv.div(num, den))
    return R.poly(out).monic()


def _eval_apoly(c, kv, emb_small, theta):
    acc = kv.zero
    for d in reversed(c.coeffs):
        acc = kv.add(kv.mul(acc, theta), emb_small(d))
    return acc


def _rho_coeff_map(q, a):
    A = a_ring(q)
    a = a if isinstance(a, UPoly) else A.from_int_coeffs(a)
    out = {}
    for i in range(a.degree + 1):
        ai = a.coeff(i)
        if A.base.is_zero(ai):
            continue
        for j, c in _action_rows(q, i).items():
            out[j] = out.get(j, A.zero()) + c.scale(ai)
    return out


def primes_above(field, v, prec=12):
    """The primes of the cyclotomic field above a monic prime v, as local
    models, in a deterministic order."""
    q = field.q
    A = a_ring(q)
    if not isinstance(v, UPoly):
        v = A.from_int_coeffs(v)
    if not is_irreducible(v):
        raise VerificationFailed("v is not prime")
    probe = LocalEmbed(field, v, 0, prec)
    n = max(1, len(probe.factors))
    out = [probe]
    for k in range(1, n):
        out.append(LocalEmbed(field, v, k, prec))
    return out


def ideal_valuations(field, x, v, prec=12, check_norm=True):
    """Valuation vector of x at the primes above v, with the norm
    consistency identity sum_k f_k val_k = val_v(N(x))."""
    if field.ring.is_zero(x):
        raise ValueError("the zero element has no divisor")
    embeds = primes_above(field, v, prec)
    vals = [emb.val(x) for emb in embeds]
    if check_norm:
        n = field.norm_to_F(x)
        A = a_ring(field.q)
        vv = v if isinstance(v, UPoly) else A.from_int_coeffs(v)
        target = n.val_at(vv)
        got = sum(emb.f * val for emb, val in zip(embeds, vals))
        if got != target:
            raise VerificationFailed(
                f"valuation/norm consistency failed: {got} != {target}")
    return vals
