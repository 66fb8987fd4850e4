"""Ground fields: the rationals and prime fields F_p.

Scalars are plain Python values (`fractions.Fraction` over Q, reduced
`int` residues over F_p); the field object carries the arithmetic so
that matrices over either field share one code path.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FieldMismatch, InputError

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin, valid far beyond any prime we accept
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Rationals:
    """The field Q with exact Fraction arithmetic."""

    char = 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("adjq.QQ")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def coerce(self, value):
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return Fraction(a) / b

    def parse(self, text: str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse rational scalar {text!r}") from exc

    def format(self, a) -> str:
        return str(a)


class PrimeField:
    """The field F_p for a prime p; scalars are residues in [0, p)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise InputError(f"{p} is not prime")
        self.p = p
        self.char = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("adjq.GF", self.p))

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1 % self.p

    def coerce(self, value):
        if isinstance(value, Fraction):
            return self.div(value.numerator % self.p, value.denominator % self.p)
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self):
        return range(self.p)

    def parse(self, text: str):
        text = text.strip()
        if " mod " in text:
            text = text.split(" mod ")[0].strip()
        try:
            frac = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse scalar {text!r} over {self!r}") from exc
        if frac.denominator % self.p == 0:
            raise InputError(f"scalar {text!r} has denominator divisible by {self.p}")
        return self.coerce(frac)

    def format(self, a) -> str:
        return str(a % self.p)


QQ = Rationals()


def field_from_descriptor(desc) -> Rationals | PrimeField:
    """Build a field from {"kind": "Q"} or {"kind": "Fp", "p": 5}."""
    if not isinstance(desc, dict) or "kind" not in desc:
        raise InputError(f"bad field descriptor {desc!r}")
    if desc["kind"] == "Q":
        return QQ
    if desc["kind"] == "Fp":
        if "p" not in desc:
            raise InputError("field descriptor of kind Fp needs a prime p")
        return PrimeField(int(desc["p"]))
    raise InputError(f"unknown field kind {desc['kind']!r}")


def field_descriptor(field) -> dict:
    if isinstance(field, Rationals):
        return {"kind": "Q"}
    return {"kind": "Fp", "p": field.p}


def same_field(*fields):
    first = fields[0]
    for f in fields[1:]:
        if f != first:
            raise FieldMismatch(f"mixed ground fields {first!r} and {f!r}")
    return first
