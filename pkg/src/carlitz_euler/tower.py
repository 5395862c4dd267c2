"""Ramified tower levels H_n = H(xi_n) over an unramified base H.

Level n is the Eisenstein quotient O_H[X]/(h_n) with
h_n = pi + ([pi^n](X))^(q-1), so xi_n (the class of X) is an exact
pi^(n+1)-torsion generator and [pi](xi_n) embeds xi_(n-1).  All elements
live at a single top level: lower-level elements embed by substituting the
torsion chain, and "the fixed field of a subgroup" is never presented on
its own; its elements are invariant top-level elements.

Norms run by two independent routes (resultant of the relative minimal
polynomial, and products of Galois conjugates); the unit group
(O_K/pi^(n+1))^x is materialized with an explicit generator decomposition
so characters and discrete logs are exact table lookups.
"""

import math
from fractions import Fraction

from .errors import (NormNotOne, PrecisionExhausted, ResolventExhausted,
                     VerificationFailed)
from .ffield import embedding, get_field
from .poly import PolyRing, UPoly, resultant
from .quotient import QuotientRing
from .series import SeriesRing, TruncSeries

__all__ = ["UnramBase", "TowerLevel", "UnitGroup", "FiniteCharacter",
           "hilbert90_solve", "cyclic_resolvent"]


class UnramBase:
    """O_H = F_{q^d}[[pi]] with its arithmetic Frobenius."""

    def __init__(self, q, d=1, prec=20):
        from .lubin_tate import _prime_power
        p, e = _prime_power(q)
        self.q = q
        self.d = d
        self.prec = prec
        self.field_K = get_field(p, e)
        self.field_H = get_field(p, e * d)
        self.OH = SeriesRing(self.field_H, "pi", default_prec=prec)
        self.OK_plain = SeriesRing(self.field_K, "pi", default_prec=prec)
        self._embed = embedding(self.field_K, self.field_H)

    def frob_coeff(self, c, power=1):
        k = power % self.d
        return self.field_H.pow(c, self.q ** k)

    def frob_series(self, s, power=1):
        if power % self.d == 0:
            return s
        return s.map_coeffs(lambda c: self.frob_coeff(c, power))

    def embed_K(self, s):
        """Map an O_K series into O_H."""
        if s.ring == self.OH:
            return s
        return TruncSeries(self.OH, s.off, [self._embed(c) for c in s.coeffs],
                           s.prec)

    def norm_to_K(self, s):
        """N_{H/K}: product of the d Frobenius twists."""
        out = s
        for k in range(1, self.d):
            out = out * self.frob_series(s, k)
        return out

    def rand_unit(self, rng):
        return self.OH.rand_unit(rng, self.prec)

    def __repr__(self):
        return f"UnramBase(q={self.q}, d={self.d})"

    def __eq__(self, other):
        return isinstance(other, UnramBase) and \
            (self.q, self.d, self.prec) == (other.q, other.d, other.prec)

    def __hash__(self):
        return hash(("UnramBase", self.q, self.d, self.prec))


_LEVELS = {}


def get_level(base, mod, n):
    key = (base, mod.q, mod.prec, mod.deg_prec, n)
    if key not in _LEVELS:
        _LEVELS[key] = TowerLevel(base, mod, n)
    return _LEVELS[key]


class TowerLevel:
    def __init__(self, base, mod, n):
        if base.q != mod.q:
            raise ValueError("base and module disagree on q")
        self.base = base
        self.mod = mod
        self.n = n
        q = mod.q
        self.e = q ** n * (q - 1)
        OH = base.OH
        R = PolyRing(OH, "X")
        pin = mod.f_iterate(n)  # [pi^n](X) over O_K
        pin_H = pin.map_coeffs(base.embed_K, R)
        pi = OH.gen()
        h = (pin_H ** (q - 1)) + R.constant(pi)
        if h.degree != self.e or not h.is_monic():
            raise VerificationFailed("defining polynomial degenerated")
        if h.constant_coeff().valuation() != 1:
            raise VerificationFailed("defining polynomial is not Eisenstein")
        self.h = h
        self.ring = QuotientRing(h, invert="hensel", eisenstein=True)
        self.xi = self.ring.gen()
        # torsion chain: chain[i] = image of xi_i at this level
        f_H = mod.f.map_coeffs(base.embed_K, R)
        self.f_H = f_H
        chain = [None] * (n + 1)
        chain[n] = self.xi
        for i in range(n - 1, -1, -1):
            chain[i] = self.eval_poly(f_H, chain[i + 1])
        self.torsion_chain = chain
        self._act_cache = {}

    # -- embeddings and evaluation -------------------------------------------

    def eval_poly(self, poly, x):
        """Evaluate an O_H[X] polynomial at a level element."""
        return poly.eval_map(x, self.ring, self.ring.from_base)

    def from_OH(self, c):
        return self.ring.from_base(c)

    def from_K_const(self, c_raw):
        """Embed an F_q constant."""
        emb = self.base._embed
        return self.ring.from_base(self.base.OH.constant(emb(c_raw)))

    def embed_up(self, x, src_level):
        """Embed an element given at a lower level m into this level."""
        if src_level.n > self.n:
            raise ValueError("embed_up goes from lower to higher levels")
        img = self.torsion_chain[src_level.n]
        acc = self.ring.zero
        for c in reversed(x.coords):
            acc = acc * img + self.from_OH(c)
        return acc

    # -- Galois --------------------------------------------------------------

    def _unit_digits(self, u):
        """Normalize a unit of O_K mod pi^(n+1) to a digit tuple."""
        if isinstance(u, TruncSeries):
            digits = tuple(u.coeff_unchecked(i) for i in range(self.n + 1))
        else:
            digits = tuple(self.base.field_K.from_int(x) if isinstance(x, int)
                           else x for x in u)
            digits = digits + (self.base.field_K.zero,) * (self.n + 1 - len(digits))
        if self.base.field_K.is_zero(digits[0]):
            raise ValueError("galois action needs a unit")
        return digits[:self.n + 1]

    def torsion_image(self, digits):
        """[u](xi_n) = sum u_i * (image of xi_{n-i}); exact."""
        acc = self.ring.zero
        for i, d in enumerate(digits):
            if i > self.n:
                break
            if self.base.field_K.is_zero(d):
                continue
            t = self.torsion_chain[self.n - i]
            acc = acc + t.scale(self.base.OH.constant(self.base._embed(d)))
        return acc

    def galois_act(self, u, x):
        """The automorphism over H sending xi_n to [u](xi_n)."""
        digits = self._unit_digits(u)
        pows = self._act_cache.get(digits)
        if pows is None:
            sx = self.torsion_image(digits)
            pows = [self.ring.one]
            for _ in range(self.e - 1):
                pows.append(pows[-1] * sx)
            self._act_cache[digits] = pows
        acc = self.ring.zero
        for j, c in enumerate(x.coords):
            if not self.base.OH.is_zero(c):
                acc = acc + pows[j].scale(c)
        return acc

    def frobenius(self, x, power=1):
        """Arithmetic Frobenius: coefficientwise on O_H, fixing pi and xi."""
        if power % self.base.d == 0:
            return x
        return self.ring.from_coords(
            [self.base.frob_series(c, power) for c in x.coords])

    # -- norms and valuations --------------------------------------------------

    def norm_to_H_resultant(self, x):
        """N_{H_n/H}(x) via Res(h_n, x-as-polynomial).

        Coordinates that are indistinguishable from zero cannot serve as a
        leading coefficient; they are dropped and their precision is carried
        into the result (sound for integral x: the norm moves by at least
        the dropped valuation).
        """
        OH = self.base.OH
        shift = 0
        vals = [c.val_lower_bound() for c in x.coords]
        low = min(vals)
        if low == math.inf:
            raise PrecisionExhausted("norm of an element with no known digit")
        if low < 0:
            shift = -math.floor(low)
        coords = [c.shift(shift) for c in x.coords]
        uncertainty = math.inf
        while coords and coords[-1].is_indistinguishable_from_zero():
            top = coords.pop()
            if not top.is_exact_zero():
                uncertainty = min(uncertainty, top.prec if top.prec is not None
                                  else math.inf)
        if not coords:
            raise PrecisionExhausted("norm of an element with no known digit")
        xpoly = UPoly(self.h.ring, coords)
        res = resultant(self.h, xpoly)
        if uncertainty != math.inf:
            res = res + OH.unknown(int(uncertainty))
        if shift:
            res = res.shift(-shift * self.e)
        return res

    def norm_to_H_conjugates(self, x, group):
        out = self.ring.one
        for digits in group.element_digit_tuples():
            out = out * self.galois_act(digits, x)
        v = out.coords[0]
        for c in out.coords[1:]:
            if c.has_known_nonzero():
                raise VerificationFailed("full norm failed to descend to O_H")
        return v

    def partial_norm(self, x, digit_tuples):
        """Product of conjugates over the given subgroup; stays at level n."""
        out = self.ring.one
        for digits in digit_tuples:
            out = out * self.galois_act(digits, x)
        return out

    def norm_down(self, x, target):
        """Full norm to a lower level, expressed in the target level's basis."""
        group = UnitGroup(self.mod.q, self.n)
        sub = group.kernel_to_level(target.n)
        y = self.partial_norm(x, sub)
        return self.express_at_level(y, target)

    def express_at_level(self, y, target):
        """Rewrite an element known to lie in the embedded lower level."""
        img = self.torsion_chain[target.n]
        cols = [self.ring.one]
        for _ in range(target.e - 1):
            cols.append(cols[-1] * img)
        sol = _solve_series_columns(self, cols, y)
        return target.ring.from_coords(sol)

    def valuation(self, x):
        return x.valuation()

    def rand_elem(self, rng):
        return self.ring.rand(rng)

    def rand_unit(self, rng):
        c = [self.base.OH.rand(rng, self.base.prec) for _ in range(self.e)]
        c[0] = self.base.OH.rand_unit(rng, self.base.prec)
        return self.ring.from_coords(c)

    def torsion_set(self):
        """All q^(n+1) roots of [pi^(n+1)], as level elements."""
        F = self.base.field_K
        out = []
        for code in range(F.q ** (self.n + 1)):
            digits = []
            c = code
            for _ in range(self.n + 1):
                digits.append(c % F.q)
                c //= F.q
            out.append(self.torsion_image(digits))
        return out

    def __repr__(self):
        return f"TowerLevel(q={self.mod.q}, d={self.base.d}, n={self.n})"


def _solve_series_columns(level, cols, y):
    """Solve sum_j c_j cols[j] = y for O_H coefficients c_j, by Gaussian
    elimination with minimal-valuation pivoting on the coordinate matrix."""
    OH = level.base.OH
    m = level.e
    k = len(cols)
    rows = [[cols[j].coords[i] for j in range(k)] + [y.coords[i]]
            for i in range(m)]
    piv_rows = []
    used = set()
    for c in range(k):
        best = None
        bestval = math.inf
        for i in range(m):
            if i in used:
                continue
            entry = rows[i][c]
            try:
                v = entry.valuation()
            except PrecisionExhausted:
                continue
            if v != math.inf and v < bestval:
                bestval = v
                best = i
        if best is None:
            raise VerificationFailed("element does not lie in the sublevel")
        used.add(best)
        piv_rows.append((best, c))
        inv = rows[best][c].inverse()
        rows[best] = [x * inv for x in rows[best]]
        for i in range(m):
            if i != best:
                f = rows[i][c]
                if not f.is_exact_zero():
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[best])]
    sol = [None] * k
    for i, c in piv_rows:
        sol[c] = rows[i][k]
    for i in range(m):
        if i not in used and rows[i][k].has_known_nonzero():
            raise VerificationFailed("element does not lie in the sublevel")
    return sol


# -- the unit group (O_K/pi^(n+1))^x -----------------------------------------

_UNIT_GROUPS = {}


def unit_group(q, n):
    if (q, n) not in _UNIT_GROUPS:
        _UNIT_GROUPS[(q, n)] = UnitGroup(q, n)
    return _UNIT_GROUPS[(q, n)]


class UnitGroup:
    """(O_K/pi^(n+1))^x with an explicit basis: the Teichmueller generator
    and the filtration units 1 + c pi^i (p not dividing i), whose orders
    are p-powers.  The decomposition is verified on construction."""

    def __init__(self, q, n):
        from .lubin_tate import _prime_power
        p, e = _prime_power(q)
        self.q = q
        self.p = p
        self.n = n
        F = get_field(p, e)
        self.field = F
        self.order = q ** n * (q - 1)
        gens = []
        orders = []
        if q > 2:
            t = [F.zero] * (n + 1)
            t[0] = F.generator()
            gens.append(tuple(t))
            orders.append(q - 1)
        basis = [F.pack([0] * k + [1]) for k in range(e)]
        for i in range(1, n + 1):
            if i % p == 0:
                continue
            k = 0
            while i * p ** k <= n:
                k += 1
            for c in basis:
                u = [F.zero] * (n + 1)
                u[0] = F.one
                u[i] = c
                gens.append(tuple(u))
                orders.append(p ** k)
        self.gens = gens
        self.gen_orders = orders
        total = 1
        for o in orders:
            total *= o
        if total != self.order:
            raise VerificationFailed("unit group decomposition size mismatch")
        self._dlog = {}
        self._enumerate()

    def mul(self, a, b):
        F = self.field
        out = [F.zero] * (self.n + 1)
        for i, ai in enumerate(a):
            if F.is_zero(ai):
                continue
            for j, bj in enumerate(b):
                if i + j <= self.n and not F.is_zero(bj):
                    out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return tuple(out)

    def pow(self, a, k):
        r = self.one()
        k %= self.order
        while k:
            if k & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            k >>= 1
        return r

    def inv(self, a):
        return self.pow(a, self.order - 1)

    def one(self):
        F = self.field
        return tuple([F.one] + [F.zero] * self.n)

    def _enumerate(self):
        exps = [0] * len(self.gens)
        while True:
            u = self.one()
            for g, e in zip(self.gens, exps):
                if e:
                    u = self.mul(u, self.pow(g, e))
            if u in self._dlog:
                raise VerificationFailed("decomposition is not direct")
            self._dlog[u] = tuple(exps)
            i = 0
            while i < len(exps):
                exps[i] += 1
                if exps[i] < self.gen_orders[i]:
                    break
                exps[i] = 0
                i += 1
            else:
                break
        if len(self._dlog) != self.order:
            raise VerificationFailed("unit group enumeration incomplete")

    def dlog(self, u):
        u = tuple(u)
        if u not in self._dlog:
            raise ValueError("not a unit of the group")
        return self._dlog[u]

    def elements(self):
        return list(self._dlog.keys())

    def element_digit_tuples(self):
        return list(self._dlog.keys())

    def kernel_to_level(self, m):
        """Units congruent to 1 modulo pi^(m+1)."""
        F = self.field
        out = []
        for u in self._dlog:
            if u[0] == F.one and all(F.is_zero(u[i]) for i in range(1, m + 1)):
                out.append(u)
        return out

    def from_series(self, s):
        return tuple(s.coeff_unchecked(i) for i in range(self.n + 1))

    def from_ints(self, ints):
        F = self.field
        digs = [F.from_int(x) if isinstance(x, int) else x for x in ints]
        digs += [F.zero] * (self.n + 1 - len(digs))
        return tuple(digs[:self.n + 1])

    def characters(self, order_in=None):
        """All characters, optionally filtered by exact order."""
        out = []
        combos = [0] * len(self.gens)
        while True:
            vals = tuple(Fraction(c, o) for c, o in zip(combos, self.gen_orders))
            chi = FiniteCharacter(self, vals)
            if order_in is None or chi.order in order_in:
                out.append(chi)
            i = 0
            while i < len(combos):
                combos[i] += 1
                if combos[i] < self.gen_orders[i]:
                    break
                combos[i] = 0
                i += 1
            else:
                break
        return out

    def __repr__(self):
        return f"(O_K/pi^{self.n + 1})^x (q={self.q})"


class FiniteCharacter:
    """A Q/Z-valued character of (O_K/pi^(n+1))^x, stored by its values on
    the canonical generating set (Teichmueller, then 1 + c pi^i)."""

    def __init__(self, group, values):
        self.group = group
        self.values = tuple(Fraction(v) % 1 for v in values)
        o = 1
        for v in self.values:
            o = _lcm(o, v.denominator)
        self.order = o
        self.level = group.n

    def value(self, u):
        """chi(u) for a unit digit tuple (or O_K series)."""
        if isinstance(u, TruncSeries):
            u = self.group.from_series(u)
        exps = self.group.dlog(tuple(u))
        acc = Fraction(0)
        for e, v in zip(exps, self.values):
            acc += e * v
        return acc % 1

    def __call__(self, u):
        return self.value(u)

    def kernel(self):
        return [u for u in self.group.elements() if self.value(u) == 0]

    def is_trivial(self):
        return all(v == 0 for v in self.values)

    def sigma_with_value_one_over_m(self):
        """A unit u with chi(u) = 1/order (a generator of the image)."""
        target = Fraction(1, self.order)
        for u in self.group.elements():
            if self.value(u) == target:
                return u
        raise VerificationFailed("character has no generator value")

    def __mul__(self, other):
        return FiniteCharacter(self.group,
                               [a + b for a, b in zip(self.values, other.values)])

    def __repr__(self):
        return f"chi(level={self.level}, order={self.order}, values={self.values})"


def _lcm(a, b):
    return a * b // math.gcd(a, b)


# -- Hilbert 90 ----------------------------------------------------------------

def cyclic_resolvent(u, sigma, m, sampler, rng, tries=32):
    """b with sigma(b)/b = u, given that the norm along the cyclic group
    <sigma> of order m is 1.  Poincare resolvent over random elements.

    sigma: a callable; sampler: draws random candidates from the ambient.
    """
    norm = u
    conj = u
    for _ in range(m - 1):
        conj = sigma(conj)
        norm = norm * conj
    diff_ok = (norm - _one_like(u)).is_indistinguishable_from_zero()
    if not diff_ok:
        raise NormNotOne("cyclic norm of the argument is not 1")
    u_inv = u.inverse()
    prefixes = [_one_like(u)]
    cur = _one_like(u)
    twist = u_inv
    for _ in range(m - 1):
        cur = cur * twist
        prefixes.append(cur)
        twist = sigma(twist)
    for _ in range(tries):
        c = sampler(rng)
        b = None
        sc = c
        for i in range(m):
            term = prefixes[i] * sc
            b = term if b is None else b + term
            sc = sigma(sc) if i + 1 < m else sc
        try:
            b.valuation()
        except (PrecisionExhausted, ValueError):
            continue
        if b.is_indistinguishable_from_zero():
            continue
        check = sigma(b) - b * u
        if check.is_indistinguishable_from_zero():
            return b
    raise ResolventExhausted("no invertible resolvent found")


def _one_like(x):
    return x.ring.one


def hilbert90_solve(level, u, sigma_digits, m, sampler=None, seed=0):
    """b in the level ring with sigma(b)/b = u, for the cyclic action
    generated by the Galois element of the given unit digits.

    When the cyclic group is a proper quotient (u invariant under some
    kernel), pass a sampler producing kernel-invariant candidates so b
    lands in the right fixed field.
    """
    from .rng import SeedTree

    def sigma(x):
        return level.galois_act(sigma_digits, x)

    if sampler is None:
        def sampler(rng):
            return level.rand_unit(rng)

    rng = SeedTree(seed).child("hilbert90").rng()
    return cyclic_resolvent(u, sigma, m, sampler, rng)
