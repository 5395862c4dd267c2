"""Finite fields F_{p^e} with a fixed deterministic modulus per (p, e).

Raw elements are ints in [0, p^e) packing base-p digits little-endian, so
the int k encodes the residue of  sum_i  d_i X^i  with  k = sum_i d_i p^i.
The modulus for degree e is the monic irreducible whose packed constant part
is least (ties impossible); this makes serialization reproducible across
processes.  Small fields get log/antilog tables, larger ones fall back to
digit-level polynomial arithmetic.
"""

from .errors import DivisionByNonunit

__all__ = ["Fq", "FqElem", "get_field"]

_TABLE_MAX = 1 << 16

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _is_prime(n):
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = 49
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- dense digit-list polynomial helpers over F_p, used only for modulus
#    search and non-table field arithmetic --------------------------------

def _ptrim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        if a[-1] == 0:
            a.pop()
            continue
        f = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - f * mi) % p
        a.pop()
    return _ptrim(a)


def _ppowmod(a, n, m, p):
    r = [1]
    a = _pmod(a, m, p)
    while n:
        if n & 1:
            r = _pmod(_pmul(r, a, p), m, p)
        a = _pmod(_pmul(a, a, p), m, p)
        n >>= 1
    return r


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        # remainder of a by b
        dm = len(b) - 1
        inv_lead = pow(b[-1], p - 2, p)
        r = list(a)
        while len(r) - 1 >= dm and r:
            if r[-1] == 0:
                r.pop()
                continue
            f = (r[-1] * inv_lead) % p
            shift = len(r) - 1 - dm
            for i, bi in enumerate(b):
                r[shift + i] = (r[shift + i] - f * bi) % p
            r.pop()
        a, b = b, _ptrim(r)
    return a


def _is_irreducible(m, p):
    """Deterministic irreducibility test for a monic digit-list poly."""
    e = len(m) - 1
    if e <= 0:
        return False
    x = [0, 1]
    # x^(p^e) == x mod m, and x^(p^(e/r)) - x coprime to m for prime r | e
    t = x
    for _ in range(e):
        t = _ppowmod(t, p, m, p)
    sub = _ptrim([(t[i] if i < len(t) else 0) - (x[i] if i < len(x) else 0)
                  for i in range(max(len(t), len(x)))])
    sub = [c % p for c in sub]
    if _ptrim(list(sub)):
        return False
    r = 2
    ee = e
    checked = set()
    while r * r <= ee:
        if ee % r == 0:
            checked.add(r)
            while ee % r == 0:
                ee //= r
        r += 1
    if ee > 1:
        checked.add(ee)
    for r in checked:
        t = x
        for _ in range(e // r):
            t = _ppowmod(t, p, m, p)
        diff = [(t[i] if i < len(t) else 0) - (x[i] if i < len(x) else 0)
                for i in range(max(len(t), len(x)))]
        diff = _ptrim([c % p for c in diff])
        g = _pgcd(m, diff, p) if diff else m
        if len(g) - 1 > 0:
            return False
    return True


def _least_irreducible(p, e):
    if e == 1:
        return [0, 1]  # X, so F_p = F_p[X]/(X)
    for code in range(p ** e):
        digits = []
        c = code
        for _ in range(e):
            digits.append(c % p)
            c //= p
        m = digits + [1]
        if _is_irreducible(m, p):
            return m
    raise AssertionError("no irreducible polynomial found")


class Fq:
    """The finite field with p^e elements; raw elements are packed ints."""

    def __init__(self, p, e):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus_digits = tuple(_least_irreducible(p, e))
        self.zero = 0
        self.one = 1
        self._log = None
        self._exp = None
        if e == 1:
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.neg = lambda a: (-a) % p
            self.mul = lambda a, b: (a * b) % p
        elif self.q <= _TABLE_MAX:
            self._build_tables()
        # else: generic digit arithmetic via methods below

    # -- packing ----------------------------------------------------------

    def digits(self, a):
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def pack(self, digits):
        v = 0
        for d in reversed(list(digits)):
            v = v * self.p + (d % self.p)
        return v

    # -- generic arithmetic (overridden by fast paths where possible) -----

    def add(self, a, b):  # noqa: A003 - shadows nothing harmful
        p = self.p
        if p == 2:
            return a ^ b
        return self.pack(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def sub(self, a, b):
        p = self.p
        if p == 2:
            return a ^ b
        return self.pack(x - y for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a):
        if self.p == 2:
            return a
        return self.pack(-x for x in self.digits(a))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        prod = _pmul(self.digits(a), self.digits(b), self.p)
        return self.pack(_pmod(prod, list(self.modulus_digits), self.p))

    def inv(self, a):
        if a == 0:
            raise DivisionByNonunit("zero has no inverse")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        if self._log is not None:
            return self._exp[(-self._log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        n = int(n)
        if n < 0:
            return self.pow(self.inv(a), -n)
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def frob(self, a):
        """x -> x^p."""
        return self.pow(a, self.p)

    def trace(self, a):
        """Absolute trace to F_p, returned as an int in [0, p)."""
        t = 0
        x = a
        for _ in range(self.e):
            t = self.add(t, x) if self.e > 1 else (t + x) % self.p
            x = self.pow(x, self.p)
        if self.e == 1:
            return t
        return self.digits(t)[0]

    def from_int(self, k):
        """Embed an integer via the prime subfield."""
        return k % self.p

    def rand(self, rng):
        return rng.randrange(self.q)

    def rand_nonzero(self, rng):
        return rng.randrange(1, self.q)

    def elements(self):
        return range(self.q)

    def is_zero(self, a):
        return a == 0

    # -- structure ---------------------------------------------------------

    def _build_tables(self):
        p, q = self.p, self.q
        mod = list(self.modulus_digits)
        # find a multiplicative generator by brute force, smallest packed
        for g in range(1, q):
            seen = 1
            cur = g
            count = 1
            gd = self.digits(g)
            curd = self.digits(cur)
            while cur != 1:
                curd = _pmod(_pmul(curd, gd, p), mod, p)
                cur = self.pack(curd + [0] * (self.e - len(curd)))
                count += 1
                if count > q:
                    raise AssertionError("generator search diverged")
            if count == q - 1:
                break
        else:
            raise AssertionError("no generator found")
        exp = [1] * (q - 1)
        log = [0] * q
        cur = 1
        curd = [1]
        gd = self.digits(g)
        for i in range(1, q - 1):
            curd = _pmod(_pmul(curd, gd, p), mod, p)
            cur = self.pack(curd + [0] * (self.e - len(curd)))
            exp[i] = cur
            log[cur] = i
        self._exp = exp
        self._log = log
        self._gen = g

    def generator(self):
        """A fixed generator of the multiplicative group."""
        if self.e == 1:
            for g in range(2, self.p):
                ok = True
                for r in _prime_factors(self.p - 1):
                    if pow(g, (self.p - 1) // r, self.p) == 1:
                        ok = False
                        break
                if ok:
                    return g
            return 1  # p == 2 or p == 3 with tiny group
        if self._log is not None:
            return self._gen
        raise NotImplementedError("generator for large untabled field")

    def order_of(self, a):
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.q - 1
        o = n
        for r in _prime_factors(n):
            while o % r == 0 and self.pow(a, o // r) == 1:
                o //= r
        return o

    def __repr__(self):
        return f"F_{self.q}" if self.e > 1 else f"F_{self.p}"

    def __eq__(self, other):
        return isinstance(other, Fq) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash(("Fq", self.p, self.e))


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


_FIELDS = {}


def get_field(p, e=1):
    """The process-wide F_{p^e} instance (modulus fixed for the lifetime)."""
    key = (p, e)
    if key not in _FIELDS:
        _FIELDS[key] = Fq(p, e)
    return _FIELDS[key]


_EMBEDDINGS = {}


def embedding(small, big):
    """Field embedding F_{p^a} -> F_{p^b} for a | b, as a raw-int map.

    Deterministic: the image of the small generator root is the least root
    of the small modulus in the big field.
    """
    key = (small.p, small.e, big.e)
    if key in _EMBEDDINGS:
        return _EMBEDDINGS[key]
    if small.p != big.p or big.e % small.e:
        raise ValueError("no embedding")
    if small.e == 1:
        fn = lambda a: a % big.p  # noqa: E731
        _EMBEDDINGS[key] = fn
        return fn
    root = None
    for cand in range(big.q):
        acc = 0
        for d in reversed(small.modulus_digits):
            acc = big.add(big.mul(acc, cand), d % big.p)
        if acc == 0:
            root = cand
            break
    if root is None:
        raise AssertionError("modulus has no root in the bigger field")

    def fn(a, _small=small, _big=big, _root=root):
        acc = 0
        for d in reversed(_small.digits(a)):
            acc = _big.add(_big.mul(acc, _root), d)
        return acc

    _EMBEDDINGS[key] = fn
    return fn


class FqElem:
    """Wrapper presenting a field element with its digit vector.

    Internals work on raw packed ints; this class is the API and
    serialization surface.
    """

    __slots__ = ("field", "raw")

    def __init__(self, field, raw):
        self.field = field
        self.raw = int(raw) % field.q

    @property
    def digits(self):
        return tuple(self.field.digits(self.raw))

    def __add__(self, other):
        return FqElem(self.field, self.field.add(self.raw, other.raw))

    def __sub__(self, other):
        return FqElem(self.field, self.field.sub(self.raw, other.raw))

    def __mul__(self, other):
        return FqElem(self.field, self.field.mul(self.raw, other.raw))

    def __truediv__(self, other):
        return FqElem(self.field, self.field.div(self.raw, other.raw))

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.raw))

    def __pow__(self, n):
        return FqElem(self.field, self.field.pow(self.raw, n))

    def __eq__(self, other):
        return (isinstance(other, FqElem) and self.field == other.field
                and self.raw == other.raw)

    def __hash__(self):
        return hash((self.field, self.raw))

    def __repr__(self):
        return f"FqElem({self.field}, {self.raw})"
