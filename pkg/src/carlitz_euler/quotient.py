"""Quotient rings R[X]/(m) over field-like coefficient rings.

One implementation serves three guises:

* cyclotomic function fields  F_q(T)[X]/(Phi_m)  (exact field coefficients,
  inversion by extended Euclid),
* ramified local-tower levels O_H[X]/(h_n) with h_n Eisenstein over a
  truncated series ring (inversion by residue inversion plus Hensel
  doubling, valuations in (1/deg)Z),
* ramified local models of global fields at primes dividing the modulus.

Elements are coordinate vectors in the X-power basis.  The ring object also
implements the coefficient-ring protocol, so truncated series over a
quotient (needed by the norm operator) come for free.
"""

from fractions import Fraction
import math

from .errors import (DivisionByNonunit, PrecisionExhausted,
                     VerificationFailed)
from .linalg import solve_square
from .poly import UPoly, poly_ext_gcd

__all__ = ["QuotientRing", "QuotientElem"]


class QuotientRing:
    def __init__(self, modulus, invert="euclid", eisenstein=False):
        """modulus: a monic UPoly over the coefficient base.

        invert: "euclid" for exact field coefficients, "hensel" for
        truncated-series coefficients with an Eisenstein modulus.
        """
        if not modulus.is_monic():
            raise ValueError("modulus must be monic")
        self.modulus = modulus
        self.base = modulus.ring.base
        self.deg = modulus.degree
        self.invert_mode = invert
        self.eisenstein = eisenstein
        self._red_rows = None
        self.zero = self.from_coords([self.base.zero] * self.deg)
        self.one = self.from_coords(
            [self.base.one] + [self.base.zero] * (self.deg - 1))
        self._pth_solver = None

    # -- construction --------------------------------------------------------

    def from_coords(self, coords):
        coords = list(coords)
        if len(coords) != self.deg:
            raise ValueError("coordinate length mismatch")
        return QuotientElem(self, tuple(coords))

    def from_base(self, c):
        return self.from_coords([c] + [self.base.zero] * (self.deg - 1))

    def from_poly(self, poly):
        r = poly % self.modulus if poly.degree >= self.deg else poly
        coords = [r.coeff(i) for i in range(self.deg)]
        return self.from_coords(coords)

    def gen(self):
        if self.deg == 1:
            return self.from_poly(self.modulus.ring.gen())
        coords = [self.base.zero] * self.deg
        coords[1] = self.base.one
        return self.from_coords(coords)

    def rand(self, rng):
        return self.from_coords([self.base.rand(rng) for _ in range(self.deg)])

    def to_poly(self, x):
        return UPoly(self.modulus.ring, x.coords)

    # -- reduction rows: X^(deg+k) mod modulus -------------------------------

    def _reduction_rows(self, upto):
        if self._red_rows is None:
            self._red_rows = []
        base = self.base
        while len(self._red_rows) < upto:
            k = len(self._red_rows)
            if k == 0:
                row = [base.neg(self.modulus.coeff(i)) for i in range(self.deg)]
            else:
                prev = self._red_rows[k - 1]
                row = [base.zero] + list(prev[:-1])
                top = prev[-1]
                if not base.is_zero(top):
                    first = self._red_rows[0]
                    row = [base.add(a, base.mul(top, b))
                           for a, b in zip(row, first)]
            self._red_rows.append(row)
        return self._red_rows

    def _reduce(self, conv):
        """Reduce a convolution result (length <= 2*deg-1) to coordinates."""
        base = self.base
        n = self.deg
        if len(conv) <= n:
            return list(conv) + [base.zero] * (n - len(conv))
        rows = self._reduction_rows(len(conv) - n)
        out = list(conv[:n])
        for k in range(len(conv) - n):
            c = conv[n + k]
            if base.is_zero(c):
                continue
            row = rows[k]
            for i in range(n):
                if not base.is_zero(row[i]):
                    out[i] = base.add(out[i], base.mul(c, row[i]))
        return out

    # -- coefficient-ring protocol -------------------------------------------

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        return a / b

    def inv(self, a):
        return a.inverse()

    def is_zero(self, a):
        return all(self.base.is_zero(c) for c in a.coords)

    def is_nonzero(self, a):
        nz = getattr(self.base, "is_nonzero", None)
        if nz is None:
            return not self.is_zero(a)
        return any(nz(c) for c in a.coords)

    def from_int(self, k):
        return self.from_base(self.base.from_int(k))

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("QuotientRing", self.modulus))

    def __repr__(self):
        return f"{self.modulus.ring}/({self.modulus})"

    # -- inversion strategies -------------------------------------------------

    def _invert_euclid(self, x):
        P = self.to_poly(x)
        if P.is_zero():
            raise DivisionByNonunit("zero is not invertible")
        g, s, _ = poly_ext_gcd(P, self.modulus)
        if g.degree != 0:
            raise DivisionByNonunit("element shares a factor with the modulus")
        return self.from_poly(s.scale(self.base.inv(g.coeffs[0])))

    def _residue_inverse(self, x):
        """Inverse of a unit modulo the maximal ideal, for Eisenstein bases.

        Coordinates are series over a finite field; reduce mod the series
        variable to land in k[X]/(X^deg), which inverts by a triangular
        recurrence.
        """
        base = self.base          # a SeriesRing
        k = base.base             # the residue finite field
        n = self.deg
        r = []
        for c in x.coords:
            if c.prec is not None and c.prec <= 0:
                raise PrecisionExhausted("residue digit unknown")
            r.append(c.coeff_unchecked(0))
        if k.is_zero(r[0]):
            raise DivisionByNonunit("not a unit (residue constant term zero)")
        inv0 = k.inv(r[0])
        s = [inv0] + [k.zero] * (n - 1)
        for m in range(1, n):
            acc = k.zero
            for j in range(1, m + 1):
                if not k.is_zero(r[j]):
                    acc = k.add(acc, k.mul(r[j], s[m - j]))
            s[m] = k.neg(k.mul(inv0, acc))
        return self.from_coords([base.constant(c) for c in s])

    def _invert_hensel(self, x):
        y = self._residue_inverse(x)
        target = getattr(self.base, "default_prec", 20)
        for c in x.coords:
            if c.prec is not None:
                target = min(target, c.prec)
        steps = max(1, math.ceil(math.log2(max(2, target))) + 1)
        two = self.from_base(self.base.from_int(2))
        for _ in range(steps):
            y = y * (two - x * y)
            y = self.from_coords([c.truncate(target) for c in y.coords])
        return y

    # -- misc -----------------------------------------------------------------

    def uniformizer_valuation(self):
        """Valuation of the class of X, as a Fraction of the base valuation."""
        if not self.eisenstein:
            raise ValueError("valuations require an Eisenstein modulus")
        return Fraction(1, self.deg)


class QuotientElem:
    __slots__ = ("ring", "coords")

    def __init__(self, ring, coords):
        self.ring = ring
        self.coords = coords

    def __add__(self, other):
        base = self.ring.base
        return QuotientElem(self.ring, tuple(
            base.add(a, b) for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        base = self.ring.base
        return QuotientElem(self.ring, tuple(
            base.sub(a, b) for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        base = self.ring.base
        return QuotientElem(self.ring, tuple(base.neg(a) for a in self.coords))

    def __mul__(self, other):
        ring = self.ring
        base = ring.base
        a, b = self.coords, other.coords
        n = ring.deg
        conv = [base.zero] * (2 * n - 1) if n > 1 else [base.zero]
        for i, ai in enumerate(a):
            if base.is_zero(ai):
                continue
            for j, bj in enumerate(b):
                if not base.is_zero(bj):
                    conv[i + j] = base.add(conv[i + j], base.mul(ai, bj))
        return QuotientElem(ring, tuple(ring._reduce(conv)))

    def scale(self, c):
        base = self.ring.base
        return QuotientElem(self.ring,
                            tuple(base.mul(c, a) for a in self.coords))

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            return self.inverse() ** (-n)
        r = self.ring.one
        a = self
        while n:
            if n & 1:
                r = r * a
            a = a * a
            n >>= 1
        return r

    def inverse(self):
        ring = self.ring
        if ring.invert_mode == "euclid":
            return ring._invert_euclid(self)
        # Eisenstein series quotient: strip the uniformizer power first
        v = self.valuation()
        if v == math.inf:
            raise DivisionByNonunit("zero is not invertible")
        a = int(v * ring.deg)
        u = self
        if a:
            xi_inv = ring._xi_inverse()
            u = u * (xi_inv ** a) if a > 0 else u * (ring.gen() ** (-a))
        y = ring._invert_hensel(u)
        if a:
            xi_inv = ring._xi_inverse()
            y = y * (xi_inv ** a) if a > 0 else y * (ring.gen() ** (-a))
        return y

    def __truediv__(self, other):
        return self * other.inverse()

    def is_zero(self):
        return self.ring.is_zero(self)

    def valuation(self):
        """Exact valuation as a Fraction (Eisenstein quotients only)."""
        ring = self.ring
        if not ring.eisenstein:
            raise ValueError("valuation needs an Eisenstein modulus")
        e = ring.deg
        proven = math.inf
        floor = math.inf
        for i, c in enumerate(self.coords):
            if c.is_exact_zero():
                continue
            try:
                v = c.valuation()
                proven = min(proven, e * v + i)
            except PrecisionExhausted:
                floor = min(floor, e * c.val_lower_bound() + i)
        if proven < floor:
            return Fraction(proven, e)
        if proven == math.inf and floor == math.inf:
            return math.inf
        raise PrecisionExhausted(
            "valuation not provable at working precision")

    def val_lower_bound(self):
        ring = self.ring
        e = ring.deg
        out = math.inf
        for i, c in enumerate(self.coords):
            vlb = c.val_lower_bound()
            if vlb != math.inf:
                out = min(out, e * vlb + i)
        return Fraction(out, e) if out != math.inf else math.inf

    def is_indistinguishable_from_zero(self):
        return all(not _nz(self.ring.base, c) for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, QuotientElem):
            return NotImplemented
        if self.ring != other.ring:
            return False
        eqs = []
        for a, b in zip(self.coords, other.coords):
            r = (a == b)
            eqs.append(r)
        return all(eqs)

    def __hash__(self):
        return hash((self.ring, self.coords))

    def __repr__(self):
        return f"QuotElem{list(self.coords)}"


def _nz(base, c):
    fn = getattr(base, "is_nonzero", None)
    if fn is not None:
        return fn(c)
    return not base.is_zero(c)


def _xi_inverse(self):
    """Inverse of the class of X for an Eisenstein modulus.

    The coordinates of X^deg are all divisible by the base uniformizer,
    so X^{-1} = X^{deg-1} * (X^deg / uniformizer)^{-1} / uniformizer.
    """
    cache = getattr(self, "_xi_inv_cache", None)
    if cache is not None:
        return cache
    xi = self.gen()
    w = xi ** self.deg
    for c in w.coords:
        if c.val_lower_bound() < 1:
            raise VerificationFailed("modulus is not Eisenstein")
    unit = self.from_coords(tuple(c.shift(-1) for c in w.coords))
    u_inv = self._invert_hensel(unit)
    res = (xi ** (self.deg - 1)) * u_inv
    res = self.from_coords(tuple(c.shift(-1) for c in res.coords))
    self._xi_inv_cache = res
    return res


QuotientRing._xi_inverse = _xi_inverse


# -- p-th roots in characteristic p -------------------------------------------

def poly_pth_root(f):
    """Exact p-th root of a polynomial over F_q, or None."""
    base = f.ring.base
    p = base.p
    if f.is_zero():
        return f
    out = []
    for i in range(f.degree + 1):
        c = f.coeff(i)
        if i % p:
            if not base.is_zero(c):
                return None
        else:
            out.append(base.pow(c, base.q // p))
    return UPoly(f.ring, out)


def ratfunc_pth_root(x):
    """Exact p-th root of a rational function, or None."""
    n = poly_pth_root(x.num)
    if n is None:
        return None
    d = poly_pth_root(x.den)
    if d is None:
        return None
    y = type(x)(x.parent, n, d, reduce=False)
    if y * y ** (x.parent.field.p - 1) == x:
        return y
    return None


def pth_root_in_quotient(ring, x):
    """Unique y in F_q(T)[X]/(m) with y^p = x, or None.

    The p-power map is F_q(T^p)-linear on the X-power basis: y = sum c_i X^i
    gives y^p = sum c_i(T^p) (X^{ip} mod m), so solving one linear system
    over F_q(T) and testing each component for p-th-power shape decides
    membership with no search.
    """
    base = ring.base              # RatFuncField
    p = base.field.p
    n = ring.deg
    gen = ring.gen()
    cols = []
    g = ring.one
    gp = gen ** p
    for _ in range(n):
        cols.append(g.coords)
        g = g * gp
    A = [[cols[i][j] for i in range(n)] for j in range(n)]
    d = solve_square(A, list(x.coords), base)
    roots = []
    for di in d:
        r = ratfunc_pth_root(di)
        if r is None:
            return None
        roots.append(r)
    y = ring.from_coords(roots)
    if y ** p == x:
        return y
    raise VerificationFailed("p-th root solve produced a non-root")


def pth_power_membership(ring, x, k):
    """y with y^(p^k) = x in the quotient field, or None (roots are unique
    in characteristic p, so this decides membership)."""
    y = x
    for _ in range(k):
        y = pth_root_in_quotient(ring, y)
        if y is None:
            return None
    return y
