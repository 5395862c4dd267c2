"""Rational functions over F_q: the global base field F_q(T).

Canonical form: gcd-reduced with a monic denominator, so equality is
representational.  Products of integral elements keep denominator 1 and
skip the gcd, which matters in the cyclotomic norm pipelines.
"""

from .errors import DivisionByNonunit
from .ffield import Fq
from .poly import PolyRing, UPoly, poly_gcd

__all__ = ["RatFuncField", "RatFunc"]


class RatFuncField:
    """Descriptor for F_q(T); also the coefficient-ring protocol object."""

    def __init__(self, field, var="T"):
        self.polyring = PolyRing(field, var)
        self.field = field
        self.var = var
        self.zero = RatFunc(self, self.polyring.zero(), self.polyring.one())
        self.one = RatFunc(self, self.polyring.one(), self.polyring.one())

    def from_poly(self, num):
        return RatFunc(self, num, self.polyring.one())

    def from_int_coeffs(self, ints, den_ints=None):
        num = self.polyring.from_int_coeffs(ints)
        den = self.polyring.one() if den_ints is None \
            else self.polyring.from_int_coeffs(den_ints)
        return RatFunc(self, num, den, reduce=True)

    def gen(self):
        return self.from_poly(self.polyring.gen())

    def from_int(self, k):
        return self.from_poly(self.polyring.constant(self.field.from_int(k)))

    def constant(self, c):
        return self.from_poly(self.polyring.constant(c))

    def rand(self, rng, deg=3):
        return self.from_poly(self.polyring.rand(rng, rng.randrange(deg + 1)))

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
        return a.num.is_zero()

    def __eq__(self, other):
        return isinstance(other, RatFuncField) and self.field == other.field \
            and self.var == other.var

    def __hash__(self):
        return hash(("RatFuncField", self.field, self.var))

    def __repr__(self):
        return f"{self.field}({self.var})"


class RatFunc:
    __slots__ = ("parent", "num", "den")

    def __init__(self, parent, num, den, reduce=True):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce and not den.is_one():
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            if not den.is_monic():
                inv = parent.field.inv(den.lc())
                num = num.scale(inv)
                den = den.scale(inv)
        self.parent = parent
        self.num = num
        self.den = den

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self):
        return self.den.is_one()

    def __add__(self, other):
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.parent, self.num + other.num, self.den,
                           reduce=False)
        return RatFunc(self.parent, self.num * other.den + other.num * self.den,
                       self.den * other.den)

    def __sub__(self, other):
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.parent, self.num - other.num, self.den,
                           reduce=False)
        return RatFunc(self.parent, self.num * other.den - other.num * self.den,
                       self.den * other.den)

    def __neg__(self):
        return RatFunc(self.parent, -self.num, self.den, reduce=False)

    def __mul__(self, other):
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.parent, self.num * other.num, self.den,
                           reduce=False)
        return RatFunc(self.parent, self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.num.is_zero():
            raise DivisionByNonunit("division by zero rational function")
        return RatFunc(self.parent, self.num * other.den, self.den * other.num)

    def inverse(self):
        return self.parent.one / self

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            return self.inverse() ** (-n)
        r = self.parent.one
        a = self
        while n:
            if n & 1:
                r = r * a
            a = a * a
            n >>= 1
        return r

    def __eq__(self, other):
        return (isinstance(other, RatFunc) and self.parent == other.parent
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def val_at(self, prime):
        """Order of vanishing at a monic prime polynomial (may be negative)."""
        if self.is_zero():
            raise ValueError("zero has no finite valuation")
        v = 0
        n = self.num
        while True:
            q, r = n.divmod(prime)
            if not r.is_zero():
                break
            n, v = q, v + 1
        d = self.den
        while True:
            q, r = d.divmod(prime)
            if not r.is_zero():
                break
            d, v = q, v - 1
        return v

    def __repr__(self):
        if self.den.is_one():
            return f"({self.num})"
        return f"({self.num})/({self.den})"
