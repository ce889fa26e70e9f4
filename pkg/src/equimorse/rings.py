"""Exact coefficient rings: the integers, the rationals, and Z/m.

Every scalar in the library is a RingElem over one of these three rings.
All arithmetic is exact; there is no floating point anywhere.  Integers are
arbitrary precision, rationals are stored in lowest terms with positive
denominator (fractions.Fraction guarantees both), and mod-m residues are
canonical representatives in [0, m).
"""

from fractions import Fraction
from math import gcd

from .errors import EquimorseError, RingMismatchError

INT = "int"
RAT = "rat"
MOD = "mod"


class Ring:
    """A supported coefficient ring: kind 'int', 'rat' or 'mod' (with modulus)."""

    __slots__ = ("kind", "modulus")

    def __init__(self, kind, modulus=None):
        if kind not in (INT, RAT, MOD):
            raise EquimorseError(f"unknown ring kind {kind!r}")
        if kind == MOD:
            if not isinstance(modulus, int) or modulus < 2:
                raise EquimorseError("mod-m ring needs an integer modulus >= 2")
        elif modulus is not None:
            raise EquimorseError(f"ring kind {kind!r} takes no modulus")
        self.kind = kind
        self.modulus = modulus

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.kind == other.kind
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.kind, self.modulus))

    def __repr__(self):
        if self.kind == MOD:
            return f"Ring(mod {self.modulus})"
        return f"Ring({self.kind})"

    # -- element construction ------------------------------------------------

    def elem(self, value):
        """Canonicalize a raw scalar into this ring."""
        if self.kind == INT:
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise EquimorseError(f"{value} is not an integer")
                value = value.numerator
            if not isinstance(value, int):
                raise EquimorseError(f"cannot coerce {value!r} into {self!r}")
            return RingElem(self, value)
        if self.kind == RAT:
            if isinstance(value, int):
                value = Fraction(value)
            if not isinstance(value, Fraction):
                raise EquimorseError(f"cannot coerce {value!r} into {self!r}")
            return RingElem(self, value)
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise EquimorseError(f"{value} is not an integer")
            value = value.numerator
        if not isinstance(value, int):
            raise EquimorseError(f"cannot coerce {value!r} into {self!r}")
        return RingElem(self, value % self.modulus)

    @property
    def zero(self):
        return self.elem(0)

    @property
    def one(self):
        return self.elem(1)

    # -- serialization -------------------------------------------------------

    def token(self):
        """The file-level ring tag: 'int', 'rat' or 'mod:m'."""
        if self.kind == MOD:
            return f"mod:{self.modulus}"
        return self.kind

    @classmethod
    def from_token(cls, token):
        token = token.strip()
        if token in (INT, "integers"):
            return cls(INT)
        if token in (RAT, "rationals"):
            return cls(RAT)
        if token.startswith("mod:") or token.startswith("mod-"):
            return cls(MOD, int(token[4:]))
        raise EquimorseError(f"unknown ring token {token!r}")

    def parse_scalar(self, text):
        """Parse a JSON scalar string ('-3', '5/6', '4') into this ring."""
        text = text.strip().replace("−", "-")
        if self.kind == RAT:
            return self.elem(Fraction(text))
        return self.elem(int(text))

    def format_scalar(self, elem):
        if elem.ring != self:
            raise RingMismatchError(f"{elem!r} not over {self!r}")
        return str(elem.value)


ZZ = Ring(INT)
QQ = Ring(RAT)


def Zmod(m):
    return Ring(MOD, m)


class RingElem:
    """An exact scalar tied to its ring. Immutable and hashable."""

    __slots__ = ("ring", "value")

    def __init__(self, ring, value):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("RingElem is immutable")

    def _check(self, other):
        if not isinstance(other, RingElem):
            raise RingMismatchError(f"cannot combine {self!r} with {other!r}")
        if other.ring != self.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")

    def __add__(self, other):
        self._check(other)
        return self.ring.elem(self.value + other.value)

    def __sub__(self, other):
        self._check(other)
        return self.ring.elem(self.value - other.value)

    def __mul__(self, other):
        self._check(other)
        return self.ring.elem(self.value * other.value)

    def __neg__(self):
        return self.ring.elem(-self.value)

    def __eq__(self, other):
        return (
            isinstance(other, RingElem)
            and self.ring == other.ring
            and self.value == other.value
        )

    def __hash__(self):
        return hash((self.ring, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"<{self.value} in {self.ring!r}>"

    def is_zero(self):
        return self.value == 0

    def try_invert(self):
        """The multiplicative inverse if this is a unit, else None."""
        ring = self.ring
        v = self.value
        if ring.kind == INT:
            return ring.elem(v) if v in (1, -1) else None
        if ring.kind == RAT:
            return ring.elem(1 / v) if v != 0 else None
        m = ring.modulus
        if gcd(v, m) != 1:
            return None
        return ring.elem(pow(v, -1, m))

    def is_unit(self):
        return self.try_invert() is not None


def add(x, y):
    return x + y


def mul(x, y):
    return x * y


def neg(x):
    return -x


def try_invert(x):
    return x.try_invert()
