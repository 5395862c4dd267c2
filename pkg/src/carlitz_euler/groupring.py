"""Integral group rings of finite abelian groups, the derivative operators,
and character idempotents.

Groups are products of cyclic factors with fixed generators; elements are
exponent tuples.  The operators N = sum of the group and D = sum j sigma^j
satisfy (sigma - 1) D = M - N exactly in Z[G], which is checked symbolically
rather than assumed.
"""

from fractions import Fraction

from .errors import NotInvertibleOrder

__all__ = ["CyclicProductGroup", "GroupRingElem", "norm_and_derivative",
           "idempotent"]


class CyclicProductGroup:
    def __init__(self, orders):
        self.orders = tuple(int(o) for o in orders)
        self.rank = len(self.orders)
        n = 1
        for o in self.orders:
            n *= o
        self.order = n

    def identity(self):
        return (0,) * self.rank

    def generator(self, i):
        g = [0] * self.rank
        g[i] = 1
        return tuple(g)

    def mul(self, a, b):
        return tuple((x + y) % o for x, y, o in zip(a, b, self.orders))

    def inv(self, a):
        return tuple((-x) % o for x, o in zip(a, self.orders))

    def pow(self, a, k):
        return tuple((x * k) % o for x, o in zip(a, self.orders))

    def elements(self):
        out = [self.identity()]
        for i, o in enumerate(self.orders):
            out = [self.mul(e, self.pow(self.generator(i), k))
                   for e in out for k in range(o)]
        return out

    def __eq__(self, other):
        return isinstance(other, CyclicProductGroup) and \
            self.orders == other.orders

    def __hash__(self):
        return hash(("CyclicProductGroup", self.orders))

    def __repr__(self):
        return " x ".join(f"Z/{o}" for o in self.orders) or "1"


class GroupRingElem:
    """An element of Z[G] (or (Z/N)[G]) with finite support."""

    def __init__(self, group, coeffs, char=0):
        self.group = group
        self.char = char
        clean = {}
        for g, c in coeffs.items():
            c = c % char if char else c
            if c:
                clean[tuple(g)] = c
        self.coeffs = clean

    @classmethod
    def zero(cls, group, char=0):
        return cls(group, {}, char)

    @classmethod
    def one(cls, group, char=0):
        return cls(group, {group.identity(): 1}, char)

    @classmethod
    def of(cls, group, g, char=0):
        return cls(group, {tuple(g): 1}, char)

    def __add__(self, other):
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) + c
        return GroupRingElem(self.group, out, self.char)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) - c
        return GroupRingElem(self.group, out, self.char)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElem(
                self.group, {g: c * other for g, c in self.coeffs.items()},
                self.char)
        out = {}
        for g1, c1 in self.coeffs.items():
            for g2, c2 in other.coeffs.items():
                g = self.group.mul(g1, g2)
                out[g] = out.get(g, 0) + c1 * c2
        return GroupRingElem(self.group, out, self.char)

    __rmul__ = __mul__

    def __neg__(self):
        return self * (-1)

    def __eq__(self, other):
        return (isinstance(other, GroupRingElem)
                and self.group == other.group and self.char == other.char
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.group, self.char, tuple(sorted(self.coeffs.items()))))

    def apply(self, action, one_value):
        """Evaluate multiplicatively: prod action(g, ...)^(c_g).

        action(g) must return the value of g on the implicit element;
        one_value is the multiplicative identity of the target.
        """
        out = one_value
        for g, c in self.coeffs.items():
            v = action(g)
            if c < 0:
                v = v.inverse() if hasattr(v, "inverse") else one_value / v
                c = -c
            out = out * (v ** c)
        return out

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = [f"{c}*{g}" for g, c in sorted(self.coeffs.items())]
        return " + ".join(parts)


def norm_and_derivative(group, i):
    """(N_i, D_i) for the i-th cyclic factor: N_i = sum tau, D_i = sum j
    sigma_i^j."""
    o = group.orders[i]
    sig = group.generator(i)
    N = GroupRingElem(group, {group.pow(sig, j): 1 for j in range(o)})
    D = GroupRingElem(group, {group.pow(sig, j): j for j in range(1, o)})
    return N, D


def derivative_identity_holds(group, i):
    """(sigma_i - 1) D_i = M - N_i exactly in Z[G_i]."""
    o = group.orders[i]
    sig = GroupRingElem.of(group, group.generator(i))
    one = GroupRingElem.one(group)
    N, D = norm_and_derivative(group, i)
    lhs = (sig - one) * D
    rhs = one * o - N
    return lhs == rhs


def idempotent(group, chi_values, ring_char):
    """e(chi) = (1/#Delta) sum chi(delta)^(-1) delta over Z/ring_char.

    chi_values: the character as a map from group elements to Fractions
    mod 1 (or a callable).  Requires gcd(#Delta, ring_char) = 1.
    """
    n = group.order
    try:
        inv_n = pow(n, -1, ring_char)
    except ValueError:
        raise NotInvertibleOrder(
            f"group order {n} is not invertible mod {ring_char}")
    chi = chi_values if callable(chi_values) else chi_values.__getitem__
    coeffs = {}
    for g in group.elements():
        val = Fraction(chi(g)) % 1
        # chi(g)^(-1) lands in Z/ring_char through a fixed embedding of the
        # group of roots of unity of the image order
        order = val.denominator
        zeta = _root_of_unity_mod(order, ring_char)
        coeffs[g] = (inv_n * pow(zeta, (-val.numerator) % order, ring_char)) \
            % ring_char
    return GroupRingElem(group, coeffs, char=ring_char)


def _root_of_unity_mod(order, char):
    """A fixed primitive order-th root of unity in (Z/char)^x."""
    if order == 1:
        return 1
    for z in range(2, char):
        if pow(z, order, char) == 1:
            ok = True
            for d in range(1, order):
                if order % d == 0 and d < order and pow(z, d, char) == 1:
                    ok = False
                    break
            if ok:
                return z % char
    raise NotInvertibleOrder(
        f"no order-{order} root of unity exists mod {char}")
