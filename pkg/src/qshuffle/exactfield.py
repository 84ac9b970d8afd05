"""Exact scalars: the rationals Q and the rational function field Q(q).

Rationals are plain ``int`` / ``fractions.Fraction`` values.  Elements of
Q(q) are :class:`RatFunc` instances backed by FLINT polynomials.  Mixed
arithmetic promotes rationals to rational functions, and any rational
function that turns out to be constant is demoted back to a ``Fraction``,
so a scalar has exactly one canonical representation.
"""

import re
from fractions import Fraction

import flint

from .errors import ParseError, PoleAtValue, VariantMismatch

__all__ = [
    "RatFunc",
    "Q",
    "qpow",
    "as_scalar",
    "is_scalar",
    "is_zero",
    "scalar_arith",
    "specialize_scalar",
    "format_scalar",
    "parse_scalar",
    "scalar_key",
    "sinv",
    "sdiv",
    "spow",
]

_ONE = flint.fmpq_poly([1])


def _fmpq(x):
    if isinstance(x, int):
        return flint.fmpq(x)
    return flint.fmpq(x.numerator, x.denominator)


def _to_fraction(c):
    # fmpq -> Fraction (or int when integral)
    n, d = int(c.p), int(c.q)
    return n if d == 1 else Fraction(n, d)


def _canonical(num, den):
    """Return the canonical scalar for num/den (both fmpq_poly)."""
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    if num.is_zero():
        return 0
    if den.degree() > 0:
        g = num.gcd(den)
        if g.degree() > 0:
            num = num // g
            den = den // g
    if den.degree() == 0:
        num = num / den.coeffs()[0]
        if num.degree() == 0:
            return _to_fraction(num.coeffs()[0])
        return RatFunc._raw(num, _ONE)
    # scale so that den has integer coefficients, content 1, positive lead
    scale = flint.fmpq(int(den.denom()))
    zden = den.numer()
    content = int(zden.content())
    scale = scale / content
    if den.leading_coefficient() < 0:
        scale = -scale
    return RatFunc._raw(num * scale, den * scale)


class RatFunc:
    """An element of Q(q) in lowest terms.

    ``num`` is a polynomial with rational coefficients and ``den`` a
    primitive integer polynomial with positive leading coefficient.
    Construct through :meth:`from_polys`, :meth:`gen` or arithmetic;
    those paths demote constants to rationals.
    """

    __slots__ = ("num", "den", "_hash")

    @classmethod
    def _raw(cls, num, den):
        self = object.__new__(cls)
        self.num = num
        self.den = den
        self._hash = None
        return self

    @classmethod
    def from_polys(cls, num_coeffs, den_coeffs=(1,)):
        """Build num/den from ascending coefficient lists (ints/Fractions)."""
        num = flint.fmpq_poly([_fmpq(c) for c in num_coeffs])
        den = flint.fmpq_poly([_fmpq(c) for c in den_coeffs])
        return _canonical(num, den)

    @classmethod
    def gen(cls):
        return cls._raw(flint.fmpq_poly([0, 1]), _ONE)

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _lift(x):
        if isinstance(x, RatFunc):
            return x.num, x.den
        if isinstance(x, (int, Fraction)):
            return flint.fmpq_poly([_fmpq(x)]), _ONE
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        on, od = o
        if self.den.is_one() and od.is_one():
            num = self.num + on
            if num.degree() <= 0:
                return _canonical(num, _ONE)
            return RatFunc._raw(num, _ONE)
        if self.den == od:
            return _canonical(self.num + on, od)
        return _canonical(self.num * od + on * self.den, self.den * od)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + RatFunc._raw(-o[0], o[1])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return 0
            return RatFunc._raw(self.num * _fmpq(other), self.den)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatFunc._raw(self.num * other.num, _ONE)
        return _canonical(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        return _canonical(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero scalar")
            return RatFunc._raw(self.num / _fmpq(other), self.den)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return _canonical(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return _canonical(o[0] * self.den, o[1] * self.num)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k >= 0:
            return _canonical(self.num ** k, self.den ** k)
        return _canonical(self.den ** (-k), self.num ** (-k))

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num * other.den == other.num * self.den
        if isinstance(other, (int, Fraction)):
            return self.num == self.den * _fmpq(other)
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            if self.den.is_one() and self.num.degree() <= 0:
                self._hash = hash(_to_fraction(self.num.coeffs()[0]) if self.num.degree() == 0 else 0)
            else:
                self._hash = hash((tuple(str(c) for c in self.num.coeffs()),
                                   tuple(str(c) for c in self.den.coeffs())))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def __call__(self, value):
        return specialize_scalar(self, value)

    def __repr__(self):
        return "RatFunc(%s)" % format_scalar(self)

    __str__ = lambda self: format_scalar(self)


Q = RatFunc.gen()


def qpow(k):
    """q**k for any integer k."""
    if k >= 0:
        return RatFunc._raw(flint.fmpq_poly([0] * k + [1]), _ONE) if k else 1
    return RatFunc._raw(flint.fmpq_poly([1]), flint.fmpq_poly([0] * (-k) + [1]))


def is_scalar(x):
    return isinstance(x, (int, Fraction, RatFunc)) and not isinstance(x, bool)


def as_scalar(x):
    """Coerce ints, Fractions, strings and RatFuncs to a canonical scalar."""
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, RatFunc):
        # arithmetic already returns canonical forms; only demote constants
        if x.den.is_one() and x.num.degree() <= 0:
            return _to_fraction(x.num.coeffs()[0]) if x.num.degree() == 0 else 0
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError("not an exact scalar: %r" % (x,))


def is_zero(x):
    return not x


def sinv(a):
    """Multiplicative inverse of a nonzero scalar."""
    if isinstance(a, RatFunc):
        return a.inverse()
    if not a:
        raise ZeroDivisionError("inverse of zero")
    return as_scalar(Fraction(1) / a)


def sdiv(a, b):
    if isinstance(b, RatFunc) or isinstance(a, RatFunc):
        return as_scalar(a * sinv(b))
    if not b:
        raise ZeroDivisionError("division by zero scalar")
    return as_scalar(Fraction(a) / b)


def spow(a, k):
    return a ** k if k >= 0 else sinv(a) ** (-k)


def scalar_arith(op, a, b=None, promote=True):
    """Exact field operation ``op`` in {'add', 'mul', 'neg', 'inv'}."""
    a = as_scalar(a)
    if b is not None:
        b = as_scalar(b)
        if not promote and isinstance(a, RatFunc) != isinstance(b, RatFunc):
            raise VariantMismatch("mixed Rational/RatFunc operands with promotion disabled")
    if op == "add":
        return as_scalar(a + b)
    if op == "mul":
        return as_scalar(a * b)
    if op == "neg":
        return -a
    if op == "inv":
        return sinv(a)
    raise ValueError("unknown scalar operation %r" % (op,))


def specialize_scalar(a, value):
    """Substitute q := value (a rational) into a."""
    if not isinstance(a, RatFunc):
        return as_scalar(a)
    v = _fmpq(as_scalar(value))
    d = a.den(v)
    if d == 0:
        raise PoleAtValue("denominator of %s vanishes at q = %s" % (format_scalar(a), value))
    return _to_fraction(a.num(v) / d)


# -- text form -----------------------------------------------------------

def _format_rational(x):
    if isinstance(x, Fraction) and x.denominator != 1:
        return "%d/%d" % (x.numerator, x.denominator)
    return str(int(x))


def _format_poly(p):
    parts = []
    for k, c in enumerate(p.coeffs()):
        if c == 0:
            continue
        c = _to_fraction(c)
        neg = c < 0
        mag = -c if neg else c
        if k == 0:
            body = _format_rational(mag)
        else:
            mono = "q" if k == 1 else "q^%d" % k
            body = mono if mag == 1 else "%s*%s" % (_format_rational(mag), mono)
        if not parts:
            parts.append("-" + body if neg else body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts) if parts else "0"


def format_scalar(x):
    """Serialize: 'a/b' for rationals, '(<poly>)/(<poly>)' for Q(q)."""
    if isinstance(x, RatFunc):
        return "(%s)/(%s)" % (_format_poly(x.num), _format_poly(x.den))
    return _format_rational(as_scalar(x))


def scalar_key(x):
    """Deterministic sort key for scalars."""
    return format_scalar(x)


_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+)(?:/(\d+))?\s*(\*)?\s*)?(q(?:\s*\^\s*(-?\d+))?)?\s*"
)


def _parse_poly(text):
    """Parse a sparse polynomial in q; returns (num_coeffs dict, shift)."""
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial")
    pos = 0
    terms = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError("cannot parse polynomial %r at offset %d" % (text, pos))
        sign, n, d, star, qpart, exp = m.groups()
        if sign is None and not first:
            raise ParseError("missing operator in %r" % text)
        if n is None and qpart is None:
            raise ParseError("dangling sign in %r" % text)
        if star and not qpart:
            raise ParseError("dangling '*' in %r" % text)
        coeff = Fraction(int(n), int(d) if d else 1) if n is not None else Fraction(1)
        if sign == "-":
            coeff = -coeff
        k = 0
        if qpart:
            k = int(exp) if exp is not None else 1
        terms[k] = terms.get(k, 0) + coeff
        pos = m.end()
        first = False
    return terms


def _poly_scalar(terms):
    lo = min(terms)
    shift = -lo if lo < 0 else 0
    top = max(terms) + shift
    coeffs = [0] * (top + 1)
    for k, c in terms.items():
        coeffs[k + shift] += c
    den = [0] * shift + [1]
    return RatFunc.from_polys(coeffs, den)


_QUOT = re.compile(r"^\s*\((.*)\)\s*/\s*\((.*)\)\s*$")
_RAT = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_scalar(text):
    """Inverse of :func:`format_scalar` (also accepts bare polynomials in q)."""
    if not isinstance(text, str):
        raise ParseError("scalar must be a string, got %r" % (text,))
    m = _RAT.match(text)
    if m:
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ParseError("zero denominator in %r" % text)
        return as_scalar(Fraction(int(m.group(1)), den))
    m = _QUOT.match(text)
    if m and "(" not in m.group(1) and "(" not in m.group(2):
        num = _poly_scalar(_parse_poly(m.group(1)))
        den = _poly_scalar(_parse_poly(m.group(2)))
        if not den:
            raise ParseError("zero denominator in %r" % text)
        return as_scalar(num / den if isinstance(num, RatFunc) or isinstance(den, RatFunc)
                         else Fraction(num) / den)
    return _poly_scalar(_parse_poly(text))
