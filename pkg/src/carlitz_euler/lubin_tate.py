"""The formal module for f(X) = pi X + X^q over F_q[[pi]].

Because f is F_q-linear in characteristic p, the formal group law is the
additive one, every endomorphism [a] is an F_q-linear combination of the
iterates of f, and the norm operator can be evaluated exactly: the product
over the q roots of f is computed in the degree-(q-1) Eisenstein quotient
adjoining one nonzero root (the others are its F_q^x-multiples), checked to
descend to O_H, and rewritten as a series in f(T) by triangular
substitution.
"""

import math

from .errors import NotInSubring, PrecisionExhausted
from .ffield import embedding, get_field
from .poly import PolyRing, UPoly
from .quotient import QuotientRing
from .series import BiSeriesRing, SeriesRing, TruncSeries, substitute_solve

__all__ = ["LTModule", "build_module", "norm_operator"]


def _prime_power(q):
    p = 2
    while p * p <= q:
        if q % p == 0:
            e = 0
            qq = q
            while qq % p == 0:
                qq //= p
                e += 1
            if qq != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, e
        p += 1
    return q, 1


class LTModule:
    """The formal O_K-module of f = pi X + X^q, with endomorphism table."""

    def __init__(self, q, prec=20, deg_prec=12):
        if prec < 2 or deg_prec < 2:
            raise ValueError("prec and deg_prec must be at least 2")
        p, e = _prime_power(q)
        self.q = q
        self.p = p
        self.prec = prec
        self.deg_prec = deg_prec
        self.field = get_field(p, e)
        self.OK = SeriesRing(self.field, "pi", default_prec=prec)
        R = PolyRing(self.OK, "X")
        self.poly_ring = R
        pi = self.OK.gen()
        coeffs = [self.OK.zero, pi] + [self.OK.zero] * (q - 2) + [self.OK.one]
        self.f = R.poly(coeffs)
        bi = BiSeriesRing(self.OK, ("X", "Y"), total_deg_prec=deg_prec)
        self.fgl = bi.x_plus_y()
        self._iter_rows = [{0: self.OK.one}]   # f^(o i) = sum_j c[i][j] X^(q^j)
        self._endo_cache = {}
        self._level0 = {}

    # -- iterates of f -------------------------------------------------------

    def _row(self, i):
        """Coefficients of the i-th iterate: f^(o i)(X) = sum c_j X^(q^j)."""
        while len(self._iter_rows) <= i:
            prev = self._iter_rows[-1]
            pi = self.OK.gen()
            # c_{i+1,j} = pi*c_{i,j} + c_{i,j-1}^q
            row = {j: pi * c for j, c in prev.items()}
            for j, c in prev.items():
                t = c ** self.q
                row[j + 1] = row.get(j + 1, self.OK.zero) + t
            self._iter_rows.append(row)
        return self._iter_rows[i]

    def f_iterate(self, i):
        """[pi^i](X) as an exact polynomial over O_K."""
        row = self._row(i)
        deg = self.q ** i
        coeffs = [self.OK.zero] * (deg + 1)
        for j, c in row.items():
            coeffs[self.q ** j] = c
        return self.poly_ring.poly(coeffs)

    # -- endomorphisms -------------------------------------------------------

    def endo(self, a):
        """[a]_f(X) for a in O_K, as a truncated series in X.

        [a] = sum_i a_i f^(o i) for a = sum a_i pi^i; a digit unknown at
        pi-precision N leaves the X^(q^j) coefficient known mod pi^(N-j).
        """
        if a.ring != self.OK:
            raise ValueError("endo argument must live in O_K")
        if a.off < 0:
            raise ValueError("endo needs an integral argument")
        key = (a.off, a.coeffs, a.prec)
        hit = self._endo_cache.get(key)
        if hit is not None:
            return hit
        N = a.prec
        if N is None:
            imax = a.off + len(a.coeffs)
        else:
            if not a.coeffs and a.off >= N:
                raise PrecisionExhausted("endo argument has no known digit")
            jcap = 0
            while self.q ** (jcap + 1) <= self.deg_prec:
                jcap += 1
            imax = N + jcap
        jtop = 0
        while self.q ** (jtop + 1) <= self.deg_prec:
            jtop += 1
        coeff_at = {}
        for i in range(imax):
            ai = a.coeff_unchecked(i)
            if self.field.is_zero(ai):
                continue
            for j, c in self._row(i).items():
                if j > jtop and self.q ** j > self.deg_prec:
                    continue
                cur = coeff_at.get(j, self.OK.zero)
                coeff_at[j] = cur + c.scale(ai)
        if N is not None:
            for j in range(jtop + 1):
                marker = self.OK.unknown(max(N - j, 0))
                coeff_at[j] = coeff_at.get(j, self.OK.zero) + marker
        exact = N is None and self.q ** (imax - 1 if imax else 0) <= self.deg_prec
        width = self.deg_prec
        ST = _series_over(self.OK)
        cs = [self.OK.zero] * width
        for j, c in coeff_at.items():
            d = self.q ** j
            if d <= width:
                cs[d - 1] = c
        out = TruncSeries(ST, 1, cs, None if exact else width + 1)
        self._endo_cache[key] = out
        return out

    def endo_int(self, digits):
        """[a] for a given by exact F_q digits (little-endian)."""
        a = TruncSeries(self.OK, 0, [self.field.from_int(d) if isinstance(d, int)
                                     else d for d in digits], None)
        return self.endo(a)

    def endo_poly(self, a):
        """[a]_f(X) as an exact polynomial, for a with finitely many known
        digits (no degree truncation)."""
        if isinstance(a, TruncSeries):
            if a.prec is not None:
                raise ValueError("endo_poly needs exact digits")
            digits = [a.coeff_unchecked(i)
                      for i in range(a.off + len(a.coeffs))]
        else:
            digits = [self.field.from_int(d) if isinstance(d, int) else d
                      for d in a]
        coeff_at = {}
        for i, ai in enumerate(digits):
            if self.field.is_zero(ai):
                continue
            for j, c in self._row(i).items():
                cur = coeff_at.get(j, self.OK.zero)
                coeff_at[j] = cur + c.scale(ai)
        deg = self.q ** max(coeff_at) if coeff_at else 0
        coeffs = [self.OK.zero] * (deg + 1)
        for j, c in coeff_at.items():
            coeffs[self.q ** j] = c
        return self.poly_ring.poly(coeffs)

    # -- level-0 ring and the norm operator ----------------------------------

    def level0_ring(self, OH):
        """O_H[X]/(pi + X^(q-1)), where the nonzero roots of f live."""
        key = OH
        if key not in self._level0:
            R = PolyRing(OH, "x0")
            pi = OH.gen()
            coeffs = [pi] + [OH.zero] * (self.q - 2) + [OH.one]
            h0 = R.poly(coeffs)
            self._level0[key] = QuotientRing(h0, invert="hensel",
                                             eisenstein=True)
        return self._level0[key]

    def __repr__(self):
        return f"LTModule(q={self.q}, prec={self.prec}, deg_prec={self.deg_prec})"


_SERIES_CACHE = {}


def _series_over(base, var="T"):
    key = (base, var)
    if key not in _SERIES_CACHE:
        default = getattr(base, "default_prec", 20)
        _SERIES_CACHE[key] = SeriesRing(base, var, default_prec=default)
    return _SERIES_CACHE[key]


def build_module(q, prec=20, deg_prec=12):
    return LTModule(q, prec, deg_prec)


def _binom_mod_p(k, j, p):
    # Lucas
    r = 1
    while k or j:
        a, b = k % p, j % p
        if b > a:
            return 0
        num = 1
        den = 1
        for t in range(b):
            num = num * (a - t) % p
            den = den * (t + 1) % p
        r = r * num * pow(den, p - 2, p) % p if p > 2 else r * (num // max(den, 1)) % p
        k //= p
        j //= p
    return r % p


def _translate(g0, lam, lam_val, qm1):
    """g0(T + lam) for a series g0 over the level-0 ring and a root lam.

    Binomial expansion; the unknown tail of g0 contributes valuation at
    least (N - j)*lam_val to the degree-j output coefficient, recorded as
    an inner unknown marker.
    """
    ST = g0.ring
    L0 = ST.base
    p = L0.base.base.p
    N = g0.prec
    top = (g0.off + len(g0.coeffs)) if N is None else N
    lam_pows = [L0.one]
    for _ in range(max(top - 1, 0)):
        lam_pows.append(lam_pows[-1] * lam)
    out = []
    for j in range(top):
        acc = L0.zero
        for k in range(j, top):
            gk = g0.coeff_unchecked(k)
            if L0.is_zero(gk):
                continue
            b = _binom_mod_p(k, j, p)
            if b == 0:
                continue
            term = gk * lam_pows[k - j]
            if b != 1:
                term = _scale_elem(L0, term, b)
            acc = acc + term
        if N is not None:
            # tail: sum_{k >= N} g_k C(k,j) lam^(k-j), val >= (N-j)*lam_val
            bound = (N - j) * lam_val
            acc = acc + _unknown_at_val(L0, bound)
        out.append(acc)
    return TruncSeries(ST, 0, out, N)


def _scale_elem(L0, x, b):
    c = L0.base.base.from_int(b)
    return x.scale(L0.base.constant(c))


def _unknown_at_val(L0, v):
    """An element of the Eisenstein quotient known only to valuation >= v."""
    e = L0.deg
    OH = L0.base
    coords = []
    for i in range(e):
        m = math.ceil(v - (i / e)) if v != math.inf else None
        coords.append(OH.unknown(max(m, 0)) if m is not None else OH.zero)
    return L0.from_coords(coords)


def norm_operator(mod, g, degree_bound=None):
    """Coleman's norm operator: (N_F g)(f(T)) = prod over roots of f of
    g(T + root), computed in the level-0 quotient, descended to O_H, and
    rewritten as a series in f(T).

    For a polynomial g the output is a polynomial of the same degree; pass
    degree_bound to solve with that warrant (no truncation tail).
    """
    ST = g.ring
    OH = ST.base
    L0 = mod.level0_ring(OH)
    ST0 = _series_over(L0, "T")
    emb = embedding(mod.field, OH.base)

    g0 = TruncSeries(ST0, g.off, [L0.from_base(c) for c in g.coeffs], g.prec)
    xi0 = L0.gen()
    from fractions import Fraction
    lam_val = Fraction(1, mod.q - 1)
    prod = g0
    for craw in range(1, mod.q):
        c_emb = emb(craw) if OH.base != mod.field else craw
        lam = xi0.scale(OH.constant(c_emb))
        prod = prod * _translate(g0, lam, lam_val, mod.q - 1)
    # descend coefficients to O_H
    out_coeffs = []
    for c in prod.coeffs:
        for extra in c.coords[1:]:
            if _known_nonzero(OH, extra):
                raise NotInSubring(
                    "symmetrized product failed to descend to O_H")
        out_coeffs.append(c.coords[0])
    descended = TruncSeries(ST, prod.off, out_coeffs, prod.prec)
    f_OH = _f_series(mod, OH)
    return substitute_solve(descended, f_OH, degree_bound=degree_bound)


def _known_nonzero(OH, c):
    return c.has_known_nonzero()


def _f_series(mod, OH):
    ST = _series_over(OH)
    pi = OH.gen()
    cs = [pi] + [OH.zero] * (mod.q - 2) + [OH.one]
    return TruncSeries(ST, 1, cs, None)
