"""Exact field scalars: rationals and prime fields.

Every computation in the engine happens over one fixed field, either Q
(arbitrary-precision rationals) or F_p for a prime p.  A Field instance
is a descriptor; calling it coerces integers, Fraction objects or
decimal strings into Scalar values carrying that descriptor.

>>> Q = Field.rationals()
>>> a = Q(3) / Q(2)
>>> a + Q("1/2")
Scalar(2, Q)
>>> F2 = Field.prime(2)
>>> F2(3) + F2(1)
Scalar(0, F2)

Scalars from different fields never mix:

>>> try:
...     Q(1) + F2(1)
... except FieldMismatch as exc:
...     print(exc)
cannot combine scalars over Q and F2

Integers are allowed as literals on either side of an operation; they
map through the canonical ring map Z -> k.
"""

from fractions import Fraction


class FieldMismatch(TypeError):
    """Raised when scalars over different fields meet in one expression."""


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """Descriptor of the ground field, Q or F_p."""

    __slots__ = ("kind", "p")

    def __init__(self, kind, p=None):
        if kind == "Q":
            if p is not None:
                raise ValueError("Q takes no modulus")
        elif kind == "Fp":
            if not _is_prime(p):
                raise ValueError("modulus %r is not prime" % (p,))
        else:
            raise ValueError("unknown field kind %r" % (kind,))
        self.kind = kind
        self.p = p

    @classmethod
    def rationals(cls):
        return cls("Q")

    @classmethod
    def prime(cls, p):
        return cls("Fp", p)

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.kind == other.kind
            and self.p == other.p
        )

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return "Q" if self.kind == "Q" else "F%d" % self.p

    # -- element construction ------------------------------------------

    def __call__(self, value):
        """Coerce an int, Fraction, Scalar or decimal string into this field."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(
                    "cannot coerce a scalar over %r into %r" % (value.field, self)
                )
            return value
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, bool):
            raise TypeError("refusing to treat bool as a scalar")
        if self.kind == "Q":
            return Scalar(self, Fraction(value))
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(
                    "denominator of %s vanishes in %r" % (value, self)
                )
            num = value.numerator % self.p
            return Scalar(self, num * pow(den, -1, self.p) % self.p)
        return Scalar(self, value % self.p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def sign(self, exponent):
        """(-1)^exponent as a Scalar; exponents are plain integers."""
        return self(1) if exponent % 2 == 0 else self(-1)

    def elements(self):
        """All field elements; only available over F_p."""
        if self.kind != "Fp":
            raise ValueError("cannot enumerate an infinite field")
        return [Scalar(self, v) for v in range(self.p)]


class Scalar:
    """One exact field element.

    Over Q the value is a Fraction (always reduced, positive
    denominator, which Fraction guarantees); over F_p it is an int in
    [0, p).  Arithmetic through the usual operators.
    """

    __slots__ = ("field", "val")

    def __init__(self, field, val):
        self.field = field
        self.val = val

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(
                    "cannot combine scalars over %r and %r"
                    % (self.field, other.field)
                )
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return self.field(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.field.kind == "Q":
            return Scalar(self.field, self.val + other.val)
        return Scalar(self.field, (self.val + other.val) % self.field.p)

    __radd__ = __add__

    def __neg__(self):
        if self.field.kind == "Q":
            return Scalar(self.field, -self.val)
        return Scalar(self.field, (-self.val) % self.field.p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.field.kind == "Q":
            return Scalar(self.field, self.val * other.val)
        return Scalar(self.field, (self.val * other.val) % self.field.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if self.field.kind == "Q":
            return Scalar(self.field, 1 / self.val)
        return Scalar(self.field, pow(self.val, -1, self.field.p))

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = self.field(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.field == other.field and self.val == other.val

    def __hash__(self):
        return hash((self.field, self.val))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        return "Scalar(%s, %r)" % (self.as_string(), self.field)

    def as_string(self):
        """Decimal-string form used in serialized descriptions."""
        if self.field.kind == "Q":
            if self.val.denominator == 1:
                return str(self.val.numerator)
            return "%d/%d" % (self.val.numerator, self.val.denominator)
        return str(self.val)


def parse_field(desc):
    """Field from its description dict, {"kind": "Q"} or {"kind": "Fp", "p": 2}."""
    kind = desc.get("kind")
    if kind == "Q":
        return Field.rationals()
    if kind == "Fp":
        return Field.prime(int(desc["p"]))
    raise ValueError("unknown field description %r" % (desc,))


def field_to_desc(field):
    if field.kind == "Q":
        return {"kind": "Q"}
    return {"kind": "Fp", "p": field.p}
