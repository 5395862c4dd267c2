"""Precision-tracked truncated Laurent/power series.

A TruncSeries stores known coefficients for exponents in [off, prec); every
exponent at or beyond prec is unknown.  prec = None means the series is
exact: all unstored coefficients are exactly zero.  Arithmetic follows the
strict min-rule with valuation bookkeeping and never reports a coefficient
it cannot prove.

The base ring is pluggable (finite field for F_q[[pi]], a SeriesRing for
O_H[[T]], a tower ring for the norm operator), so the same class carries
one- and two-layer series.  An element all of whose known coefficients are
zero but with finite prec is "indistinguishable from zero": a distinct state
from exact zero, and equality tests against it raise PrecisionExhausted.
"""

import math

from .errors import DivisionByNonunit, PrecisionExhausted

__all__ = ["SeriesRing", "TruncSeries", "BiSeriesRing", "BiTruncSeries"]


class SeriesRing:
    """Descriptor for truncated series over a base coefficient ring.

    Also implements the coefficient-ring protocol itself, so series can in
    turn be coefficients of polynomials or other series.
    """

    def __init__(self, base, var="pi", default_prec=20):
        self.base = base
        self.var = var
        self.default_prec = default_prec
        self.zero = TruncSeries(self, 0, (), None)
        self.one = TruncSeries(self, 0, (base.one,), None)

    def gen(self):
        return TruncSeries(self, 1, (self.base.one,), None)

    def series(self, off, coeffs, prec):
        return TruncSeries(self, off, coeffs, prec)

    def from_coeff_ints(self, ints, off=0, prec=None):
        return TruncSeries(self, off, [self.base.from_int(k) for k in ints], prec)

    def constant(self, c):
        return TruncSeries(self, 0, (c,), None)

    def unknown(self, prec):
        """The O(var^prec) element: nothing known below prec."""
        return TruncSeries(self, prec, (), prec)

    def from_int(self, k):
        return self.constant(self.base.from_int(k))

    def rand(self, rng, prec=None):
        n = self.default_prec if prec is None else prec
        return TruncSeries(self, 0, [self.base.rand(rng) for _ in range(n)], None)

    def rand_unit(self, rng, prec=None):
        n = self.default_prec if prec is None else prec
        c = [self.base.rand(rng) for _ in range(n)]
        c[0] = self.base.rand_nonzero(rng) if hasattr(self.base, "rand_nonzero") \
            else self.base.one
        return TruncSeries(self, 0, c, None)

    # -- coefficient-ring protocol ------------------------------------------

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
        return a.is_exact_zero()

    def is_nonzero(self, a):
        return a.has_known_nonzero()

    def __eq__(self, other):
        return (isinstance(other, SeriesRing) and self.base == other.base
                and self.var == other.var)

    def __hash__(self):
        return hash(("SeriesRing", self.base, self.var))

    def __repr__(self):
        return f"{self.base}[[{self.var}]]"


def _base_is_nonzero(base, c):
    fn = getattr(base, "is_nonzero", None)
    if fn is not None:
        return fn(c)
    return not base.is_zero(c)


class TruncSeries:
    __slots__ = ("ring", "off", "coeffs", "prec")

    def __init__(self, ring, off, coeffs, prec):
        base = ring.base
        coeffs = list(coeffs)
        if prec is not None:
            drop = len(coeffs) - (prec - off)
            if drop > 0:
                del coeffs[len(coeffs) - drop:]
        # strip provably-zero low terms
        while coeffs and base.is_zero(coeffs[0]):
            coeffs.pop(0)
            off += 1
        if prec is None:
            while coeffs and base.is_zero(coeffs[-1]):
                coeffs.pop()
            if not coeffs:
                off = 0
        else:
            if not coeffs:
                off = prec
        self.ring = ring
        self.off = off
        self.coeffs = tuple(coeffs)
        self.prec = prec

    # -- inspection ----------------------------------------------------------

    def coeff(self, e):
        """Coefficient of var^e; raises if e is beyond the known range."""
        if self.prec is not None and e >= self.prec:
            raise PrecisionExhausted(f"coefficient at exponent {e} unknown")
        i = e - self.off
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.base.zero

    def is_exact_zero(self):
        return self.prec is None and not self.coeffs

    def is_zero(self):
        return self.is_exact_zero()

    def has_known_nonzero(self):
        base = self.ring.base
        return any(_base_is_nonzero(base, c) for c in self.coeffs)

    def is_indistinguishable_from_zero(self):
        return not self.has_known_nonzero()

    def val_lower_bound(self):
        """Sound lower bound for the valuation (inf for exact zero)."""
        base = self.ring.base
        for i, c in enumerate(self.coeffs):
            if not base.is_zero(c):
                return self.off + i
        return math.inf if self.prec is None else self.prec

    def valuation(self):
        """Exact valuation; PrecisionExhausted if not provable."""
        base = self.ring.base
        for i, c in enumerate(self.coeffs):
            if _base_is_nonzero(base, c):
                return self.off + i
            if not base.is_zero(c):
                break  # an undecided coefficient blocks the valuation
        if self.is_exact_zero():
            return math.inf
        raise PrecisionExhausted("valuation not determined at working precision")

    def zero_to(self, upto):
        """True iff all coefficients below ``upto`` are provably zero."""
        base = self.ring.base
        if self.prec is not None and self.prec < upto:
            raise PrecisionExhausted(
                f"series known only to O({self.prec}), asked through {upto}")
        for i, c in enumerate(self.coeffs):
            if self.off + i >= upto:
                break
            if not base.is_zero(c):
                return False
        return True

    def agrees_with(self, other, upto):
        return (self - other).zero_to(upto)

    def indistinguishable_to(self, upto):
        """True iff no coefficient below ``upto`` is provably nonzero.

        The certification counterpart of zero_to for nested precision:
        inner coefficients that are zero at their own working precision
        pass, known-nonzero ones fail.
        """
        base = self.ring.base
        if self.prec is not None and self.prec < upto:
            raise PrecisionExhausted(
                f"series known only to O({self.prec}), asked through {upto}")
        for i, c in enumerate(self.coeffs):
            if self.off + i >= upto:
                break
            if _base_is_nonzero(base, c):
                return False
        return True

    def matches_to(self, other, upto):
        """Certified agreement: the difference is indistinguishable from
        zero below ``upto``."""
        return (self - other).indistinguishable_to(upto)

    # -- arithmetic ----------------------------------------------------------

    def _precs(self, other):
        pa = math.inf if self.prec is None else self.prec
        pb = math.inf if other.prec is None else other.prec
        return pa, pb

    def __add__(self, other):
        base = self.ring.base
        pa, pb = self._precs(other)
        prec = min(pa, pb)
        off = min(self.off, other.off)
        hi = prec
        if prec == math.inf:
            hi = max(self.off + len(self.coeffs), other.off + len(other.coeffs))
        out = []
        for e in range(off, hi):
            out.append(base.add(self.coeff_unchecked(e), other.coeff_unchecked(e)))
        return TruncSeries(self.ring, off, out,
                           None if prec == math.inf else prec)

    def coeff_unchecked(self, e):
        i = e - self.off
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.base.zero

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        base = self.ring.base
        return TruncSeries(self.ring, self.off,
                           [base.neg(c) for c in self.coeffs], self.prec)

    def __mul__(self, other):
        base = self.ring.base
        if self.is_exact_zero() or other.is_exact_zero():
            return self.ring.zero
        pa, pb = self._precs(other)
        off = self.off + other.off
        prec = min(pa + other.off, pb + self.off)
        if prec == math.inf:
            width = len(self.coeffs) + len(other.coeffs) - 1
        else:
            width = prec - off
            if width <= 0:
                return TruncSeries(self.ring, off, (), prec)
        out = [base.zero] * width
        for i, ai in enumerate(self.coeffs):
            if base.is_zero(ai):
                continue
            jmax = min(len(other.coeffs), width - i)
            for j in range(jmax):
                bj = other.coeffs[j]
                if not base.is_zero(bj):
                    out[i + j] = base.add(out[i + j], base.mul(ai, bj))
        return TruncSeries(self.ring, off, out,
                           None if prec == math.inf else prec)

    def scale(self, c):
        base = self.ring.base
        return TruncSeries(self.ring, self.off,
                           [base.mul(c, x) for x in self.coeffs], self.prec)

    def shift(self, k):
        """Multiply by var^k (k may be negative)."""
        return TruncSeries(self.ring, self.off + k, self.coeffs,
                           None if self.prec is None else self.prec + k)

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

    def _lead(self):
        """(val, leading coeff); requires a provable valuation."""
        v = self.valuation()
        if v is math.inf:
            raise DivisionByNonunit("division by exact zero")
        return v, self.coeff_unchecked(v)

    def inverse(self):
        base = self.ring.base
        v, lead = self._lead()
        pa = math.inf if self.prec is None else self.prec
        rel = pa - v  # relative precision (number of known digits)
        if rel == math.inf:
            if len(self.coeffs) == 1:
                return TruncSeries(self.ring, -v, (base.inv(lead),), None)
            # exact non-monomial input: the inverse is still truncated
            work = (len(self.coeffs) + self.ring.default_prec)
            out_prec = -v + work
        else:
            work = rel
            out_prec = pa - 2 * v
        inv0 = base.inv(lead)
        b = [self.coeff_unchecked(v + k) for k in range(work)]
        r = [inv0] + [base.zero] * (work - 1)
        for k in range(1, work):
            s = base.zero
            for j in range(1, k + 1):
                if not base.is_zero(b[j]):
                    s = base.add(s, base.mul(b[j], r[k - j]))
            r[k] = base.neg(base.mul(inv0, s))
        return TruncSeries(self.ring, -v, r, out_prec)

    def __truediv__(self, other):
        return self * other.inverse()

    def truncate(self, prec):
        p = prec if self.prec is None else min(self.prec, prec)
        return TruncSeries(self.ring, self.off, self.coeffs, p)

    def map_coeffs(self, fn, new_ring=None):
        ring = new_ring if new_ring is not None else self.ring
        return TruncSeries(ring, self.off, [fn(c) for c in self.coeffs], self.prec)

    # -- comparisons ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        d = self - other
        if d.has_known_nonzero():
            return False
        if d.is_exact_zero():
            return True
        if (self.off, self.coeffs, self.prec) == (other.off, other.coeffs,
                                                  other.prec):
            return True  # identical knowledge state
        raise PrecisionExhausted(
            "equality undecidable: difference indistinguishable from zero "
            f"at O({d.ring.var}^{d.prec})")

    def __hash__(self):
        # structural hash; fine for cache keys built from exact series
        return hash((self.ring, self.off, self.coeffs, self.prec))

    def __repr__(self):
        var = self.ring.var
        parts = []
        for i, c in enumerate(self.coeffs):
            if self.ring.base.is_zero(c):
                continue
            e = self.off + i
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"({c})*{var}")
            else:
                parts.append(f"({c})*{var}^{e}")
        body = " + ".join(parts) if parts else "0"
        if self.prec is not None:
            body += f" + O({var}^{self.prec})"
        return body


# -- composition and triangular substitution ---------------------------------

def series_compose(outer, inner):
    """outer(inner) for inner of positive valuation (or exact polynomial
    outer, in which case any inner is allowed)."""
    ring = inner.ring
    vi = inner.val_lower_bound()
    if vi < 1 and outer.prec is not None:
        raise PrecisionExhausted(
            "composition needs a positive-valuation inner series")
    if outer.is_exact_zero():
        return ring.zero
    if outer.prec is None:
        acc = ring.zero
    else:
        if vi < 1:
            raise PrecisionExhausted("inner valuation must be >= 1")
        tail = None if vi == math.inf else outer.prec * vi
        acc = ring.zero if tail is None else ring.unknown(tail)
    # Horner from the top known exponent down to outer.off, then shift
    top = outer.off + len(outer.coeffs) - 1
    if outer.prec is not None:
        top = outer.prec - 1
    for e in range(top, outer.off - 1, -1):
        acc = acc * inner
        c = outer.coeff_unchecked(e)
        if not outer.ring.base.is_zero(c):
            acc = acc + _const_in(ring, c)
    if outer.off:
        acc = acc * (inner ** outer.off)
    return acc


def _const_in(ring, c):
    return TruncSeries(ring, 0, (c,), None)


def substitute_solve(target, pivot, degree_bound=None):
    """Q with Q(pivot) = target, for a pivot of valuation exactly 1.

    Triangular elimination: pivot^k = c1^k var^k + higher, so the degree-k
    coefficient of the residual determines Q's coefficient of var^k.
    Precision falls out of the coefficient divisions.

    With degree_bound set, the caller warrants that Q is a polynomial of at
    most that degree (e.g. the norm operator applied to a polynomial); the
    solve stops there, checks that the residual is indistinguishable from
    zero, and returns an exact-tail series.
    """
    ring = target.ring
    base = ring.base
    if pivot.valuation() != 1:
        raise PrecisionExhausted("pivot must have valuation exactly 1")
    c1 = pivot.coeff(1)
    pa = math.inf if target.prec is None else target.prec
    pp = math.inf if pivot.prec is None else pivot.prec
    limit = min(pa, pp)
    if degree_bound is not None:
        limit = min(limit, degree_bound + 1)
    if limit == math.inf:
        limit = max(target.off + len(target.coeffs),
                    pivot.off + len(pivot.coeffs))
    if target.off < 0:
        raise PrecisionExhausted("target must be a power series")
    residual = target
    out = []
    pk = ring.one  # pivot^k
    c1k = base.one
    limit = int(limit)
    for k in range(limit):
        if residual.prec is not None and k >= residual.prec:
            limit = k
            break
        rk = residual.coeff_unchecked(k)
        qk = base.div(rk, c1k)
        out.append(qk)
        if not base.is_zero(qk):
            residual = residual - pk.scale(qk)
        pk = pk * pivot
        c1k = base.mul(c1k, c1)
    if degree_bound is not None:
        for i, c in enumerate(residual.coeffs):
            if _base_is_nonzero(base, c):
                raise PrecisionExhausted(
                    "residual contradicts the claimed polynomial degree")
        exact_out = target.prec is None and pivot.prec is None
        return TruncSeries(ring, 0, out, None if exact_out else limit)
    if target.prec is None and pivot.prec is None and residual.is_exact_zero():
        prec = None
    else:
        prec = limit
    return TruncSeries(ring, 0, out, prec)


def reversion(f):
    """Compositional inverse of a valuation-1 series: g with g(f) = var."""
    ident = f.ring.gen()
    return substitute_solve(ident, f)


# -- bivariate truncated series ----------------------------------------------

class BiSeriesRing:
    def __init__(self, base, vars=("X", "Y"), total_deg_prec=16):
        self.base = base
        self.vars = vars
        self.total_deg_prec = total_deg_prec

    def elem(self, coeffs, deg_prec=None):
        return BiTruncSeries(self, dict(coeffs),
                             self.total_deg_prec if deg_prec is None else deg_prec)

    def zero(self, deg_prec=None):
        return self.elem({}, deg_prec)

    def x_plus_y(self, deg_prec=None):
        one = self.base.one
        return self.elem({(1, 0): one, (0, 1): one}, deg_prec)

    def gen(self, slot, deg_prec=None):
        key = (1, 0) if slot == 0 else (0, 1)
        return self.elem({key: self.base.one}, deg_prec)

    def __eq__(self, other):
        return isinstance(other, BiSeriesRing) and self.base == other.base

    def __hash__(self):
        return hash(("BiSeriesRing", self.base))


class BiTruncSeries:
    """Bivariate series truncated at a total degree: terms of total degree
    >= deg_prec are unknown."""

    __slots__ = ("ring", "coeffs", "deg_prec")

    def __init__(self, ring, coeffs, deg_prec):
        base = ring.base
        clean = {}
        for (i, j), c in coeffs.items():
            if i + j < deg_prec and not base.is_zero(c):
                clean[(i, j)] = c
        self.ring = ring
        self.coeffs = clean
        self.deg_prec = deg_prec

    def coeff(self, i, j):
        if i + j >= self.deg_prec:
            raise PrecisionExhausted("total degree beyond truncation")
        return self.coeffs.get((i, j), self.ring.base.zero)

    def __add__(self, other):
        base = self.ring.base
        dp = min(self.deg_prec, other.deg_prec)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = base.add(out.get(k, base.zero), c)
        return BiTruncSeries(self.ring, out, dp)

    def __neg__(self):
        base = self.ring.base
        return BiTruncSeries(self.ring,
                             {k: base.neg(c) for k, c in self.coeffs.items()},
                             self.deg_prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        base = self.ring.base
        dp = min(self.deg_prec, other.deg_prec)
        # valuations sharpen the truncation bound
        va = min((i + j for i, j in self.coeffs), default=dp)
        vb = min((i + j for i, j in other.coeffs), default=dp)
        dp = min(self.deg_prec + vb, other.deg_prec + va)
        out = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                i, j = i1 + i2, j1 + j2
                if i + j >= dp:
                    continue
                k = (i, j)
                v = base.mul(c1, c2)
                out[k] = base.add(out[k], v) if k in out else v
        return BiTruncSeries(self.ring, out, dp)

    def __pow__(self, n):
        r = BiTruncSeries(self.ring, {(0, 0): self.ring.base.one}, self.deg_prec)
        a = self
        n = int(n)
        while n:
            if n & 1:
                r = r * a
            a = a * a
            n >>= 1
        return r

    def is_zero(self):
        return not self.coeffs

    def agrees_with(self, other, deg):
        d = self - other
        if deg > d.deg_prec:
            raise PrecisionExhausted("comparison beyond truncation")
        return all(i + j >= deg for i, j in d.coeffs)

    def __eq__(self, other):
        if not isinstance(other, BiTruncSeries):
            return NotImplemented
        d = self - other
        return not d.coeffs  # equality through the common truncation

    def __repr__(self):
        x, y = self.ring.vars
        terms = [f"({c})*{x}^{i}*{y}^{j}"
                 for (i, j), c in sorted(self.coeffs.items())]
        return (" + ".join(terms) or "0") + f" + O(deg {self.deg_prec})"


def poly_at_bivariate(poly_coeffs, base, point):
    """Evaluate sum_k c_k Z^k at a BiTruncSeries point (Horner)."""
    ring = point.ring
    acc = BiTruncSeries(ring, {}, point.deg_prec)
    for c in reversed(list(poly_coeffs)):
        acc = acc * point
        if not base.is_zero(c):
            acc = acc + BiTruncSeries(ring, {(0, 0): c}, point.deg_prec)
    return acc
