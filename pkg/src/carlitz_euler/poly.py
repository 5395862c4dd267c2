"""Dense univariate polynomials over a pluggable coefficient ring.

A coefficient ring is any object with raw values and the methods
``zero``/``one`` (attributes), ``add``, ``sub``, ``mul``, ``neg``,
``is_zero`` and, when the ring is a field, ``inv``/``div``.  ``Fq``
implements the protocol on packed ints; ``ObjectRing`` adapts any element
class with operator overloads (rational functions, truncated series, ...).

Polynomials store coefficients little-endian with no trailing zeros, so the
empty tuple is the zero polynomial.  ``degree`` is ``-1`` for zero.

Multiplication over prime fields uses Kronecker substitution (one big-int
multiply); everything else is schoolbook.  Factorization over finite fields
is distinct-degree followed by seeded Cantor-Zassenhaus splitting.
"""

from .errors import DivisionByNonunit
from .ffield import Fq

__all__ = ["PolyRing", "UPoly", "ObjectRing", "resultant"]


class ObjectRing:
    """Coefficient-ring adapter for element objects with operators."""

    def __init__(self, zero, one, name="ring"):
        self.zero = zero
        self.one = one
        self.name = name

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
        return self.one / a

    def is_zero(self, a):
        return a.is_zero()

    def from_int(self, k):
        raise NotImplementedError

    def __repr__(self):
        return f"ObjectRing({self.name})"

    def __eq__(self, other):
        return isinstance(other, ObjectRing) and self.zero == other.zero

    def __hash__(self):
        return hash(("ObjectRing", self.name))


class PolyRing:
    def __init__(self, base, var="X"):
        self.base = base
        self.var = var

    def poly(self, coeffs):
        return UPoly(self, coeffs)

    def zero(self):
        return UPoly(self, ())

    def one(self):
        return UPoly(self, (self.base.one,))

    def gen(self):
        return UPoly(self, (self.base.zero, self.base.one))

    def constant(self, c):
        return UPoly(self, (c,))

    def from_int_coeffs(self, ints):
        """Build from small integers via the base's prime subfield."""
        return UPoly(self, [self.base.from_int(k) for k in ints])

    def rand(self, rng, deg):
        c = [self.base.rand(rng) for _ in range(deg + 1)]
        return UPoly(self, c)

    def rand_monic(self, rng, deg):
        c = [self.base.rand(rng) for _ in range(deg)] + [self.base.one]
        return UPoly(self, c)

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.base == other.base
                and self.var == other.var)

    def __hash__(self):
        return hash(("PolyRing", self.base, self.var))

    def __repr__(self):
        return f"{self.base}[{self.var}]"


def _kronecker_mul(a, b, p):
    """Multiply digit tuples over F_p via one integer product."""
    n = len(a) + len(b)
    bits = 2 * (p - 1).bit_length() + n.bit_length() + 1
    mask = (1 << bits) - 1
    ia = 0
    for c in reversed(a):
        ia = (ia << bits) | c
    ib = 0
    for c in reversed(b):
        ib = (ib << bits) | c
    prod = ia * ib
    out = []
    for _ in range(n - 1):
        out.append((prod & mask) % p)
        prod >>= bits
    return out


class UPoly:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        base = ring.base
        coeffs = list(coeffs)
        while coeffs and base.is_zero(coeffs[-1]):
            coeffs.pop()
        self.ring = ring
        self.coeffs = tuple(coeffs)

    # -- structure ---------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0] == self.ring.base.one

    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def constant_coeff(self):
        return self.coeffs[0] if self.coeffs else self.ring.base.zero

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.base.zero

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.ring.base.one

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        base = self.ring.base
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = base.add(out[i], c)
        return UPoly(self.ring, out)

    def __sub__(self, other):
        base = self.ring.base
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            out.append(base.sub(self.coeff(i), other.coeff(i)))
        return UPoly(self.ring, out)

    def __neg__(self):
        base = self.ring.base
        return UPoly(self.ring, [base.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        base = self.ring.base
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly(self.ring, ())
        if isinstance(base, Fq) and base.e == 1 and len(a) + len(b) >= 10:
            return UPoly(self.ring, _kronecker_mul(a, b, base.p))
        out = [base.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if base.is_zero(ai):
                continue
            for j, bj in enumerate(b):
                out[i + j] = base.add(out[i + j], base.mul(ai, bj))
        return UPoly(self.ring, out)

    def scale(self, c):
        base = self.ring.base
        return UPoly(self.ring, [base.mul(c, x) for x in self.coeffs])

    def shift(self, k):
        """Multiply by X^k."""
        if self.is_zero():
            return self
        return UPoly(self.ring, (self.ring.base.zero,) * k + self.coeffs)

    def __pow__(self, n):
        r = self.ring.one()
        a = self
        n = int(n)
        while n:
            if n & 1:
                r = r * a
            a = a * a
            n >>= 1
        return r

    def divmod(self, other):
        """Division with remainder; requires an invertible leading coefficient."""
        base = self.ring.base
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return UPoly(self.ring, ()), self
        inv_lead = base.inv(other.lc())
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        quo = [base.zero] * (dq + 1)
        ob = other.coeffs
        for k in range(dq, -1, -1):
            top = rem[k + len(ob) - 1]
            if base.is_zero(top):
                continue
            f = base.mul(top, inv_lead)
            quo[k] = f
            for i, oc in enumerate(ob):
                rem[k + i] = base.sub(rem[k + i], base.mul(f, oc))
        return UPoly(self.ring, quo), UPoly(self.ring, rem[:len(ob) - 1])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise DivisionByNonunit("division is not exact")
        return q

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.ring.base.inv(self.lc()))

    def __eq__(self, other):
        return (isinstance(other, UPoly) and self.ring == other.ring
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    # -- evaluation and composition ----------------------------------------

    def eval(self, x):
        """Horner evaluation at a base-ring raw value."""
        base = self.ring.base
        acc = base.zero
        for c in reversed(self.coeffs):
            acc = base.add(base.mul(acc, x), c)
        return acc

    def eval_map(self, x, target, coeff_map):
        """Evaluate at x in another ring, mapping each coefficient first.

        target follows the coefficient-ring protocol; x is a target raw.
        """
        acc = target.zero
        for c in reversed(self.coeffs):
            acc = target.add(target.mul(acc, x), coeff_map(c))
        return acc

    def compose(self, other):
        ring = self.ring
        acc = ring.zero()
        for c in reversed(self.coeffs):
            acc = acc * other + ring.constant(c)
        return acc

    def derivative(self):
        base = self.ring.base
        p = _char(base)
        out = []
        for i in range(1, len(self.coeffs)):
            c = self.coeffs[i]
            k = i % p if p else i
            s = base.zero
            for _ in range(k):
                s = base.add(s, c)
            out.append(s)
        return UPoly(self.ring, out)

    def map_coeffs(self, fn, new_ring=None):
        ring = new_ring if new_ring is not None else self.ring
        return UPoly(ring, [fn(c) for c in self.coeffs])

    def __repr__(self):
        if self.is_zero():
            return "0"
        var = self.ring.var
        parts = []
        for i, c in enumerate(self.coeffs):
            if self.ring.base.is_zero(c):
                continue
            if i == 0:
                parts.append(f"{c}")
            elif i == 1:
                parts.append(f"({c})*{var}")
            else:
                parts.append(f"({c})*{var}^{i}")
        return " + ".join(parts)


def _char(base):
    return getattr(base, "p", 0)


# -- gcd, resultant (field coefficients) -----------------------------------

def poly_gcd(a, b):
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_ext_gcd(a, b):
    """(g, s, t) with s*a + t*b = g, g monic."""
    ring = a.ring
    r0, r1 = a, b
    s0, s1 = ring.one(), ring.zero()
    t0, t1 = ring.zero(), ring.one()
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lead = r0.lc()
    inv = a.ring.base.inv(lead)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def resultant(a, b):
    """Res(a, b) = lc(a)^deg(b) * prod b(root of a), over field coefficients."""
    base = a.ring.base
    if a.is_zero() or b.is_zero():
        if a.degree <= 0 and b.degree <= 0:
            return base.one
        return base.zero
    sign = False
    res = base.one
    while b.degree > 0:
        r = a % b
        if r.is_zero():
            return base.zero
        if (a.degree * b.degree) & 1:
            sign = not sign
        res = base.mul(res, _naive_pow(base, b.lc(), a.degree - r.degree))
        a, b = b, r
    res = base.mul(res, _naive_pow(base, b.coeffs[0], a.degree))
    if sign:
        res = base.neg(res)
    return res


def _naive_pow(base, x, n):
    r = base.one
    while n:
        if n & 1:
            r = base.mul(r, x)
        x = base.mul(x, x)
        n >>= 1
    return r


# -- finite-field factorization ---------------------------------------------

def powmod(a, n, m):
    r = a.ring.one()
    a = a % m
    n = int(n)
    while n:
        if n & 1:
            r = (r * a) % m
        a = (a * a) % m
        n >>= 1
    return r


def is_irreducible(f):
    """Deterministic irreducibility over F_q."""
    base = f.ring.base
    q = base.q
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    x = f.ring.gen()
    t = powmod(x, q ** n, f)
    if t != x % f:
        return False
    d = 2
    nn = n
    primes = []
    while d * d <= nn:
        if nn % d == 0:
            primes.append(d)
            while nn % d == 0:
                nn //= d
        d += 1
    if nn > 1:
        primes.append(nn)
    for r in primes:
        t = powmod(x, q ** (n // r), f)
        if not poly_gcd(f, t - x).is_one():
            return False
    return True


def squarefree_part(f):
    """Radical of f over F_q: each irreducible factor exactly once, monic."""
    base = f.ring.base
    f = f.monic()
    if f.degree <= 0:
        return f.ring.one()
    d = f.derivative()
    if d.is_zero():
        # f = g(X^p); take the p-th root coefficientwise
        p = base.p
        root = [base.pow(f.coeff(i), base.q // p)
                for i in range(0, f.degree + 1, p)]
        return squarefree_part(UPoly(f.ring, root))
    g = poly_gcd(f, d)
    if g.is_one():
        return f
    h = f.exact_div(g)
    s = squarefree_part(g)
    extra = s.exact_div(poly_gcd(h, s))
    return (h * extra).monic()


def distinct_degree_factor(f):
    """[(product of irreducibles of degree d, d)] for monic squarefree f."""
    base = f.ring.base
    q = base.q
    out = []
    x = f.ring.gen()
    h = x % f
    d = 0
    while f.degree > 0 and 2 * (d + 1) <= f.degree:
        d += 1
        h = powmod(h, q, f)
        g = poly_gcd(f, h - x)
        if not g.is_one():
            out.append((g, d))
            f = f.exact_div(g)
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def equal_degree_factor(f, d, rng):
    """Split a monic squarefree product of degree-d irreducibles."""
    base = f.ring.base
    q = base.q
    n = f.degree
    if n == d:
        return [f]
    pieces = [f]
    done = []
    while pieces:
        g = pieces.pop()
        if g.degree == d:
            done.append(g)
            continue
        while True:
            r = f.ring.rand(rng, g.degree - 1)
            if r.is_zero():
                continue
            if base.p == 2:
                # trace map over F_2 on k*d levels, q = 2^k
                k = base.e
                t = f.ring.zero()
                cur = r % g
                for _ in range(k * d):
                    t = (t + cur) % g
                    cur = (cur * cur) % g
                cand = poly_gcd(g, t)
            else:
                e = (q ** d - 1) // 2
                t = powmod(r, e, g)
                cand = poly_gcd(g, t - f.ring.one())
            if 0 < cand.degree < g.degree:
                pieces.append(cand.monic())
                pieces.append(g.exact_div(cand).monic())
                break
    return done


def factor_squarefree(f, rng):
    """Sorted monic irreducible factors of a monic squarefree f over F_q."""
    out = []
    for g, d in distinct_degree_factor(f):
        out.extend(equal_degree_factor(g, d, rng))
    out.sort(key=lambda h: tuple(h.coeffs))
    return out


def roots_in_field(f, rng):
    """Roots of f lying in its own coefficient field, sorted."""
    base = f.ring.base
    x = f.ring.gen()
    xq = powmod(x, base.q, f)
    lin = poly_gcd(f, xq - x)
    if lin.degree <= 0:
        return []
    out = []
    for fac in factor_squarefree(squarefree_part(lin), rng):
        if fac.degree == 1:
            # X + c  ->  root -c
            out.append(base.neg(fac.coeff(0)))
    out.sort()
    return out


def monic_irreducibles(ring, deg):
    """All monic irreducibles of the given degree, by ascending packed code."""
    base = ring.base
    out = []
    for code in range(base.q ** deg):
        digits = []
        c = code
        for _ in range(deg):
            digits.append(c % base.q)
            c //= base.q
        f = UPoly(ring, digits + [base.one])
        if is_irreducible(f):
            out.append(f)
    return out
