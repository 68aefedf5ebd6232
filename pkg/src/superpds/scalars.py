"""Exact coefficient arithmetic for the symbol algebra.

Scalars live in the field Q(alpha)[s] / (s^2 + 2): rational functions in a
formal parameter ``alpha``, extended by a formal square root ``s`` of -2.
Every scalar is kept in a unique reduced form (gcd-reduced fractions with
monic denominators), so two scalars are equal exactly when their stored
representations coincide.

``s`` only shows up when checking the isomorphism between the abstract
triple-product superalgebra and its symbol realization; all other
computations stay inside Q(alpha).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

Rat = Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)


class PoleError(ZeroDivisionError):
    """Substituting a value for alpha hit a root of a stored denominator."""

    def __init__(self, denominator: "AlphaPoly", value: Fraction):
        self.denominator = denominator
        self.value = value
        super().__init__(
            "alpha = %s is a root of the denominator %s" % (value, denominator)
        )


class AlphaPoly:
    """Sparse polynomial in alpha with Fraction coefficients.

    The coefficient map never stores zeros, so the zero polynomial is the
    empty map and ``bool(p)`` tests for nonzero.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs: dict | None = None):
        self.c = coeffs if coeffs is not None else {}

    @staticmethod
    def const(value) -> "AlphaPoly":
        v = Fraction(value)
        return AlphaPoly({0: v} if v else {})

    @staticmethod
    def variable() -> "AlphaPoly":
        return AlphaPoly({1: _F1})

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        return isinstance(other, AlphaPoly) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def degree(self) -> int:
        """Degree in alpha; -1 for the zero polynomial."""
        return max(self.c) if self.c else -1

    def leading(self) -> Fraction:
        return self.c[max(self.c)] if self.c else _F0

    def is_one(self) -> bool:
        return self.c == {0: _F1}

    def is_constant(self) -> bool:
        return not self.c or self.c.keys() == {0}

    def constant_value(self) -> Fraction:
        return self.c.get(0, _F0)

    def __add__(self, other: "AlphaPoly") -> "AlphaPoly":
        if not other.c:
            return self
        if not self.c:
            return other
        out = dict(self.c)
        for e, v in other.c.items():
            nv = out.get(e, _F0) + v
            if nv:
                out[e] = nv
            else:
                out.pop(e, None)
        return AlphaPoly(out)

    def __neg__(self) -> "AlphaPoly":
        return AlphaPoly({e: -v for e, v in self.c.items()})

    def __sub__(self, other: "AlphaPoly") -> "AlphaPoly":
        return self + (-other)

    def __mul__(self, other: "AlphaPoly") -> "AlphaPoly":
        a, b = self.c, other.c
        if not a or not b:
            return _P_ZERO
        if len(a) == 1:
            ((ea, va),) = a.items()
            if ea == 0 and va == 1:
                return other
            return AlphaPoly({e + ea: v * va for e, v in b.items()})
        if len(b) == 1:
            ((eb, vb),) = b.items()
            if eb == 0 and vb == 1:
                return self
            return AlphaPoly({e + eb: v * vb for e, v in a.items()})
        out: dict = {}
        for ea, va in a.items():
            for eb, vb in b.items():
                e = ea + eb
                nv = out.get(e, _F0) + va * vb
                if nv:
                    out[e] = nv
                else:
                    out.pop(e, None)
        return AlphaPoly(out)

    def scaled(self, factor: Fraction) -> "AlphaPoly":
        if not factor:
            return _P_ZERO
        if factor == 1:
            return self
        return AlphaPoly({e: v * factor for e, v in self.c.items()})

    def evaluate(self, value: Fraction) -> Fraction:
        acc = _F0
        for e, v in self.c.items():
            acc += v * value**e
        return acc

    def __divmod__(self, other: "AlphaPoly"):
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        db = other.degree()
        lb = other.leading()
        q: dict = {}
        r = dict(self.c)
        while r:
            dr = max(r)
            if dr < db:
                break
            f = r[dr] / lb
            e = dr - db
            q[e] = f
            for k, v in other.c.items():
                kk = k + e
                nv = r.get(kk, _F0) - v * f
                if nv:
                    r[kk] = nv
                else:
                    r.pop(kk, None)
        return AlphaPoly(q), AlphaPoly(r)

    def exact_div(self, other: "AlphaPoly") -> "AlphaPoly":
        q, r = divmod(self, other)
        if r.c:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "AlphaPoly":
        if not self.c:
            return self
        lc = self.leading()
        return self if lc == 1 else self.scaled(1 / lc)

    def __str__(self) -> str:
        return poly_str(self)

    def __repr__(self) -> str:
        return "AlphaPoly(%s)" % (self,)


_P_ZERO = AlphaPoly({})
_P_ONE = AlphaPoly({0: _F1})
_P_ALPHA = AlphaPoly({1: _F1})


def poly_gcd(a: AlphaPoly, b: AlphaPoly) -> AlphaPoly:
    """Monic gcd in Q[alpha] (Euclid with monic normalization per step)."""
    a, b = a.monic(), b.monic()
    while b.c:
        a, b = b, divmod(a, b)[1].monic()
    return a


def poly_lcm(a: AlphaPoly, b: AlphaPoly) -> AlphaPoly:
    if not a.c or not b.c:
        return _P_ZERO
    return (a * b.exact_div(poly_gcd(a, b))).monic()


def poly_str(p: AlphaPoly, var: str = "alpha") -> str:
    """Render with integer-free Fractions allowed, decreasing degree."""
    if not p.c:
        return "0"
    parts = []
    for e in sorted(p.c, reverse=True):
        v = p.c[e]
        sign = "-" if v < 0 else "+"
        av = -v if v < 0 else v
        if e == 0:
            body = str(av)
        else:
            base = var if e == 1 else "%s^%d" % (var, e)
            body = base if av == 1 else "%s*%s" % (av, base)
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += " %s %s" % (sign, body)
    return out


def _reduce_fraction(num: AlphaPoly, den: AlphaPoly):
    """Reduce num/den to lowest terms with a monic denominator."""
    if not den.c:
        raise ZeroDivisionError("zero denominator")
    if not num.c:
        return _P_ZERO, _P_ONE
    if not den.is_one():
        g = poly_gcd(num, den)
        if g.degree() > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        lc = den.leading()
        if lc != 1:
            num = num.scaled(1 / lc)
            den = den.scaled(1 / lc)
    return num, den


class Scalar:
    """Element a + b*s of Q(alpha)[s]/(s^2 + 2), in canonical reduced form.

    ``a`` and ``b`` are stored as reduced fractions an/ad, bn/bd of
    polynomials in alpha with monic denominators.
    """

    __slots__ = ("an", "ad", "bn", "bd")

    def __init__(self, an, ad, bn, bd, _reduced=False):
        if _reduced:
            self.an, self.ad, self.bn, self.bd = an, ad, bn, bd
        else:
            self.an, self.ad = _reduce_fraction(an, ad)
            self.bn, self.bd = _reduce_fraction(bn, bd)

    # -- constructors -------------------------------------------------
    @staticmethod
    def from_fraction(value) -> "Scalar":
        return Scalar(AlphaPoly.const(value), _P_ONE, _P_ZERO, _P_ONE, _reduced=True)

    @staticmethod
    def from_poly(p: AlphaPoly) -> "Scalar":
        return Scalar(p, _P_ONE, _P_ZERO, _P_ONE, _reduced=True)

    @staticmethod
    def coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar.from_fraction(x)
        if isinstance(x, AlphaPoly):
            return Scalar.from_poly(x)
        raise TypeError("cannot coerce %r to Scalar" % (x,))

    # -- predicates ----------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.an.c) or bool(self.bn.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar.from_fraction(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return (
            self.an == other.an
            and self.ad == other.ad
            and self.bn == other.bn
            and self.bd == other.bd
        )

    def __hash__(self):
        return hash((self.an, self.ad, self.bn, self.bd))

    def has_s(self) -> bool:
        return bool(self.bn.c)

    def is_rational(self) -> bool:
        return not self.bn.c and self.an.is_constant() and self.ad.is_one()

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("scalar %s is not a plain rational" % (self,))
        return self.an.constant_value()

    # -- arithmetic ----------------------------------------------------
    @staticmethod
    def _frac_add(n1, d1, n2, d2):
        if d1.is_one() and d2.is_one():
            return n1 + n2, _P_ONE
        return _reduce_fraction(n1 * d2 + n2 * d1, d1 * d2)

    @staticmethod
    def _frac_mul(n1, d1, n2, d2):
        if not n1.c or not n2.c:
            return _P_ZERO, _P_ONE
        if d1.is_one() and d2.is_one():
            return n1 * n2, _P_ONE
        return _reduce_fraction(n1 * n2, d1 * d2)

    def __add__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        an, ad = Scalar._frac_add(self.an, self.ad, other.an, other.ad)
        if not self.bn.c and not other.bn.c:
            return Scalar(an, ad, _P_ZERO, _P_ONE, _reduced=True)
        bn, bd = Scalar._frac_add(self.bn, self.bd, other.bn, other.bd)
        return Scalar(an, ad, bn, bd, _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.an, self.ad, -self.bn, self.bd, _reduced=True)

    def __sub__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        # (a1 + b1 s)(a2 + b2 s) = (a1 a2 - 2 b1 b2) + (a1 b2 + b1 a2) s
        an, ad = Scalar._frac_mul(self.an, self.ad, other.an, other.ad)
        if not self.bn.c and not other.bn.c:
            return Scalar(an, ad, _P_ZERO, _P_ONE, _reduced=True)
        tn, td = Scalar._frac_mul(self.bn, self.bd, other.bn, other.bd)
        an, ad = Scalar._frac_add(an, ad, tn.scaled(Fraction(-2)), td)
        bn, bd = Scalar._frac_mul(self.an, self.ad, other.bn, other.bd)
        tn, td = Scalar._frac_mul(self.bn, self.bd, other.an, other.ad)
        bn, bd = Scalar._frac_add(bn, bd, tn, td)
        return Scalar(an, ad, bn, bd, _reduced=True)

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("inverse of zero scalar")
        if not self.bn.c:
            return Scalar(self.ad, self.an, _P_ZERO, _P_ONE)
        # (a + b s)^(-1) = (a - b s) / (a^2 + 2 b^2)
        a2n, a2d = Scalar._frac_mul(self.an, self.ad, self.an, self.ad)
        b2n, b2d = Scalar._frac_mul(self.bn, self.bd, self.bn, self.bd)
        nn, nd = Scalar._frac_add(a2n, a2d, b2n.scaled(Fraction(2)), b2d)
        norm = Scalar(nn, nd, _P_ZERO, _P_ONE, _reduced=True)
        conj = Scalar(self.an, self.ad, -self.bn, self.bd, _reduced=True)
        return conj * norm.inv()

    def __truediv__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inv()

    def __pow__(self, n: int) -> "Scalar":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        out = S_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- substitution ---------------------------------------------------
    def specialize(self, alpha_value) -> "Scalar":
        """Substitute a rational value for alpha.

        Raises PoleError naming the offending denominator when the value is
        one of its roots.  Only the stored reduced form is consulted: no
        further cancellation is attempted.
        """
        value = Fraction(alpha_value)
        for den in (self.ad, self.bd):
            if not den.is_one() and den.evaluate(value) == 0:
                raise PoleError(den, value)
        a = self.an.evaluate(value) / self.ad.evaluate(value)
        b = self.bn.evaluate(value) / self.bd.evaluate(value)
        return Scalar(
            AlphaPoly.const(a), _P_ONE, AlphaPoly.const(b), _P_ONE, _reduced=True
        )

    # -- rendering -------------------------------------------------------
    def _integer_parts(self):
        """Common-denominator form (p, q, r) with integer coefficients.

        self = (p + q*s) / r, with gcd of all integer coefficients 1 and the
        leading coefficient of r positive.
        """
        g = poly_gcd(self.ad, self.bd) if self.bn.c else self.ad
        if self.bn.c:
            r = self.ad * self.bd.exact_div(g)
            p = self.an * self.bd.exact_div(g)
            q = self.bn * self.ad.exact_div(g)
        else:
            r = self.ad
            p = self.an
            q = _P_ZERO
        denoms = [v.denominator for v in p.c.values()]
        denoms += [v.denominator for v in q.c.values()]
        denoms += [v.denominator for v in r.c.values()]
        lcm = 1
        for d in denoms:
            lcm = lcm * d // int_gcd(lcm, d)
        p, q, r = p.scaled(lcm), q.scaled(lcm), r.scaled(lcm)
        nums = [abs(v.numerator) for v in p.c.values()]
        nums += [abs(v.numerator) for v in q.c.values()]
        nums += [abs(v.numerator) for v in r.c.values()]
        g = 0
        for n in nums:
            g = int_gcd(g, n)
        if g > 1:
            inv = Fraction(1, g)
            p, q, r = p.scaled(inv), q.scaled(inv), r.scaled(inv)
        return p, q, r

    def __str__(self) -> str:
        if not self:
            return "0"
        p, q, r = self._integer_parts()
        if q.c:
            if len(q.c) == 1 and q.leading() == 1 and q.degree() == 0:
                qs = "s"
            elif len(q.c) == 1 and q.leading() == -1 and q.degree() == 0:
                qs = "-s"
            elif len(q.c) == 1:
                qs = "%s*s" % poly_str(q)
            else:
                qs = "(%s)*s" % poly_str(q)
            if not p.c:
                num = qs
                num_terms = 1 if len(q.c) == 1 else 2
            else:
                num = poly_str(p) + (" + " + qs if not qs.startswith("-") else " - " + qs[1:])
                num_terms = 2
        else:
            num = poly_str(p)
            num_terms = len(p.c)
        if r.is_one():
            return num
        rs = poly_str(r)
        if len(r.c) > 1:
            rs = "(%s)" % rs
        if num_terms > 1:
            num = "(%s)" % num
        return "%s/%s" % (num, rs)

    def __repr__(self) -> str:
        return "Scalar(%s)" % (self,)

    def display_negative(self) -> bool:
        """True when the canonical rendering would start with a minus sign."""
        lead = self.an if self.an.c else self.bn
        return bool(lead.c) and lead.leading() < 0

    def factor_str(self) -> str:
        """Render as a factor usable inside a product expression."""
        s = str(self)
        if "/" in s:
            num, _, den = s.partition("/")
            if not num.startswith("("):
                # alpha/2 and 5/2 style factors parse fine as-is
                return s
            return s
        if " " in s:
            return "(%s)" % s
        return s


S_ZERO = Scalar.from_fraction(0)
S_ONE = Scalar.from_fraction(1)
S_TWO = Scalar.from_fraction(2)
S_HALF = Scalar.from_fraction(Fraction(1, 2))
ALPHA = Scalar.from_poly(_P_ALPHA)
S = Scalar(_P_ZERO, _P_ONE, _P_ONE, _P_ONE, _reduced=True)

POLY_ZERO = _P_ZERO
POLY_ONE = _P_ONE
POLY_ALPHA = _P_ALPHA
