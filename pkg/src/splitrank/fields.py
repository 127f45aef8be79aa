"""Exact scalar arithmetic over Q, F_p (p >= 5) and Q(sqrt(d)).

Everything is exact: rationals are stdlib Fractions, quadratic elements are
pairs of Fractions over the fixed basis {1, sqrt(d)}, prime-field elements
are residues.  No floating point appears anywhere; real-embedding signs are
decided by integer comparisons.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DivisionByZero,
    FieldMismatch,
    InvalidInput,
    PrimeFieldHasNoRealPlaces,
    ZeroElement,
)

RATIONALS = "Q"
PRIME_FIELD = "Fp"
QUAD_EXT = "QSqrt"


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for anything this library meets."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
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


def squarefree_part(n: int) -> int:
    """Squarefree part of a nonzero integer (sign preserved)."""
    if n == 0:
        raise ZeroElement("squarefree part of 0")
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e % 2:
                out *= p
        p += 1 if p == 2 else 2
    return sign * out * n


def is_squarefree(n: int) -> bool:
    return abs(n) == abs(squarefree_part(n))


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for odd prime p; 0 when p divides a."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def sqrt_mod_p(a: int, p: int) -> int | None:
    """Square root mod odd prime p via Tonelli-Shanks, or None."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if x < 0:
        return None
    from math import isqrt

    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class Field:
    """Descriptor of one of the three supported base fields."""

    kind: str
    p: int | None = None
    d: int | None = None

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.p is not None or self.d is not None:
                raise InvalidInput("rationals take no parameters")
        elif self.kind == PRIME_FIELD:
            if self.p is None or self.p in (2, 3) or not is_prime(self.p):
                raise InvalidInput(f"prime field needs a prime p >= 5, got {self.p}")
        elif self.kind == QUAD_EXT:
            if self.d is None or self.d in (0, 1) or not is_squarefree(self.d):
                raise InvalidInput(f"quadratic extension needs squarefree d not in {{0,1}}, got {self.d}")
        else:
            raise InvalidInput(f"unknown field kind {self.kind!r}")

    # ------------------------------------------------------------------ basics
    def __repr__(self):
        if self.kind == RATIONALS:
            return "Q"
        if self.kind == PRIME_FIELD:
            return f"F{self.p}"
        return f"Q(sqrt({self.d}))"

    def zero(self) -> FieldElement:
        return self.element(0)

    def one(self) -> FieldElement:
        return self.element(1)

    def element(self, value) -> FieldElement:
        """Coerce an int, Fraction, (a, b) pair, literal string, or element."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"element of {value.field} is not in {self}")
            return value
        if isinstance(value, str):
            return parse_element(self, value)
        if self.kind == PRIME_FIELD:
            if isinstance(value, Fraction):
                return self.element(value.numerator) / self.element(value.denominator)
            return FieldElement(self, int(value) % self.p)
        if self.kind == RATIONALS:
            return FieldElement(self, Fraction(value))
        if isinstance(value, tuple):
            a, b = value
            return FieldElement(self, (Fraction(a), Fraction(b)))
        return FieldElement(self, (Fraction(value), Fraction(0)))

    def sqrt_gen(self) -> FieldElement:
        """The generator sqrt(d) of a quadratic extension."""
        if self.kind != QUAD_EXT:
            raise InvalidInput(f"{self} has no adjoined square root")
        return FieldElement(self, (Fraction(0), Fraction(1)))

    def real_place_count(self) -> int:
        if self.kind == RATIONALS:
            return 1
        if self.kind == QUAD_EXT:
            return 2 if self.d > 0 else 0
        return 0

    def random(self, rng, height: int = 9, nonzero: bool = False) -> FieldElement:
        """Seeded random element with numerators bounded by `height`."""
        while True:
            if self.kind == PRIME_FIELD:
                x = self.element(rng.randrange(self.p))
            elif self.kind == RATIONALS:
                x = self.element(Fraction(rng.randint(-height, height), rng.randint(1, 3)))
            else:
                x = self.element(
                    (Fraction(rng.randint(-height, height), rng.randint(1, 3)),
                     Fraction(rng.randint(-height, height), rng.randint(1, 3)))
                )
            if not nonzero or not x.is_zero():
                return x

    def to_json(self) -> dict:
        if self.kind == RATIONALS:
            return {"kind": "Q"}
        if self.kind == PRIME_FIELD:
            return {"kind": "Fp", "p": self.p}
        return {"kind": "QSqrt", "d": self.d}


def rationals() -> Field:
    return Field(RATIONALS)


def prime_field(p: int) -> Field:
    return Field(PRIME_FIELD, p=p)


def quad_ext(d: int) -> Field:
    return Field(QUAD_EXT, d=d)


def field_from_json(obj: dict) -> Field:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InvalidInput(f"bad field descriptor: {obj!r}")
    kind = obj["kind"]
    if kind == "Q":
        return rationals()
    if kind == "Fp":
        return prime_field(int(obj.get("p", 0)))
    if kind == "QSqrt":
        return quad_ext(int(obj.get("d", 0)))
    raise InvalidInput(f"unknown field kind {kind!r}")


class FieldElement:
    """Immutable exact scalar; payload depends on the field kind.

    Q: Fraction.  Fp: int residue in [0, p).  QSqrt: (Fraction, Fraction)
    meaning a + b*sqrt(d).  Canonical by construction.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, *a):
        raise AttributeError("FieldElement is immutable")

    # ------------------------------------------------------------- structure
    def _check(self, other) -> FieldElement:
        if not isinstance(other, FieldElement):
            return self.field.element(other)
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return other

    def is_zero(self) -> bool:
        if self.field.kind == QUAD_EXT:
            return self.value == (0, 0)
        return self.value == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            try:
                other = self.field.element(other)
            except (InvalidInput, DivisionByZero):
                return NotImplemented
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.value == other.value

    def __hash__(self):
        return hash((self.field, self.value))

    # ------------------------------------------------------------ arithmetic
    def __add__(self, other):
        other = self._check(other)
        k = self.field.kind
        if k == PRIME_FIELD:
            return FieldElement(self.field, (self.value + other.value) % self.field.p)
        if k == RATIONALS:
            return FieldElement(self.field, self.value + other.value)
        (a, b), (c, d) = self.value, other.value
        return FieldElement(self.field, (a + c, b + d))

    __radd__ = __add__

    def __neg__(self):
        k = self.field.kind
        if k == PRIME_FIELD:
            return FieldElement(self.field, (-self.value) % self.field.p)
        if k == RATIONALS:
            return FieldElement(self.field, -self.value)
        a, b = self.value
        return FieldElement(self.field, (-a, -b))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        k = self.field.kind
        if k == PRIME_FIELD:
            return FieldElement(self.field, (self.value * other.value) % self.field.p)
        if k == RATIONALS:
            return FieldElement(self.field, self.value * other.value)
        (a, b), (c, d) = self.value, other.value
        dd = self.field.d
        return FieldElement(self.field, (a * c + dd * b * d, a * d + b * c))

    __rmul__ = __mul__

    def inv(self) -> FieldElement:
        if self.is_zero():
            raise DivisionByZero(f"inverse of 0 in {self.field}")
        k = self.field.kind
        if k == PRIME_FIELD:
            return FieldElement(self.field, pow(self.value, -1, self.field.p))
        if k == RATIONALS:
            return FieldElement(self.field, 1 / self.value)
        a, b = self.value
        n = a * a - self.field.d * b * b  # field norm, nonzero since d squarefree
        return FieldElement(self.field, (a / n, -b / n))

    def __truediv__(self, other):
        return self * self._check(other).inv()

    def __rtruediv__(self, other):
        return self.field.element(other) * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -------------------------------------------------------------- queries
    def is_square(self) -> bool:
        return self.square_root() is not None

    def square_root(self) -> FieldElement | None:
        """Exact square-root witness, or None when not a square."""
        f = self.field
        if f.kind == PRIME_FIELD:
            r = sqrt_mod_p(self.value, f.p)
            return None if r is None else FieldElement(f, r)
        if f.kind == RATIONALS:
            r = rational_sqrt(self.value)
            return None if r is None else FieldElement(f, r)
        a, b = self.value
        d = f.d
        if b == 0:
            r = rational_sqrt(a)
            if r is not None:
                return FieldElement(f, (r, Fraction(0)))
            r = rational_sqrt(a / d)
            if r is not None:
                return FieldElement(f, (Fraction(0), r))
            return None
        s = rational_sqrt(a * a - d * b * b)
        if s is None:
            return None
        for t in ((a + s) / 2, (a - s) / 2):
            if t == 0:
                continue
            u = rational_sqrt(t)
            if u is not None:
                v = b / (2 * u)
                w = FieldElement(f, (u, v))
                if w * w == self:
                    return w
        return None

    def real_signs(self) -> list[int]:
        """Sign of the element under each real embedding; exact."""
        f = self.field
        if f.kind == PRIME_FIELD:
            raise PrimeFieldHasNoRealPlaces(str(f))
        if self.is_zero():
            raise ZeroElement("real_signs of 0")
        if f.kind == RATIONALS:
            return [1 if self.value > 0 else -1]
        if f.d < 0:
            return []
        a, b = self.value
        return [_sign_a_plus_b_sqrt_d(a, b, f.d), _sign_a_plus_b_sqrt_d(a, -b, f.d)]

    # ---------------------------------------------------------------- output
    def __repr__(self):
        return f"<{self} in {self.field}>"

    def __str__(self):
        k = self.field.kind
        if k in (PRIME_FIELD, RATIONALS):
            return str(self.value)
        a, b = self.value
        if b == 0:
            return str(a)
        rpart = f"{abs(b)}*r"
        sign = "-" if b < 0 else "+"
        if a == 0:
            return f"-{rpart}" if b < 0 else rpart
        return f"{a}{sign}{rpart}"


def _sign_a_plus_b_sqrt_d(a: Fraction, b: Fraction, d: int) -> int:
    """Exact sign of a + b*sqrt(d) for d > 0, via integer comparisons."""
    if b == 0:
        return 1 if a > 0 else -1
    if a == 0:
        return 1 if b > 0 else -1
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    # opposite signs: compare a^2 with d b^2 (equality impossible, d not a square)
    bigger_a = a * a > d * b * b
    if a > 0:
        return 1 if bigger_a else -1
    return -1 if bigger_a else 1


_FRAC = r"\d+(?:/\d+)?"
_LIT = re.compile(
    rf"^(?P<asign>[+-])?(?P<a>{_FRAC})?"
    rf"(?:(?P<bsign>[+-])?(?:(?P<b>{_FRAC})\*?)?(?P<r>r))?$"
)


def parse_element(field: Field, text) -> FieldElement:
    """Parse an element literal.

    Q: "5/6", "-3".  Fp: decimal residue.  QSqrt: "1/2+3/5*r", "-r", "2-r"
    where r stands for sqrt(d).  An ASCII '-' and the unicode minus are both
    accepted.
    """
    if isinstance(text, (int, Fraction)):
        return field.element(text)
    if not isinstance(text, str):
        raise InvalidInput(f"cannot parse element from {text!r}")
    s = text.replace("−", "-").replace(" ", "")
    if not s:
        raise InvalidInput("empty element literal")
    if field.kind == PRIME_FIELD:
        try:
            return field.element(int(s))
        except ValueError:
            raise InvalidInput(f"bad F_p literal {text!r}") from None
    if field.kind == RATIONALS:
        try:
            return field.element(Fraction(s))
        except (ValueError, ZeroDivisionError):
            raise InvalidInput(f"bad rational literal {text!r}") from None
    m = _LIT.match(s)
    if not m or (m.group("a") is None and m.group("r") is None):
        raise InvalidInput(f"bad quadratic literal {text!r}")
    try:
        a = Fraction(0)
        if m.group("a") is not None:
            a = Fraction(m.group("a"))
            if m.group("asign") == "-":
                a = -a
        b = Fraction(0)
        if m.group("r") is not None:
            b = Fraction(m.group("b")) if m.group("b") is not None else Fraction(1)
            sign = m.group("bsign")
            if sign is None and m.group("a") is not None:
                raise InvalidInput(f"bad quadratic literal {text!r}")
            if sign == "-" or (sign is None and m.group("asign") == "-"):
                b = -b
    except ZeroDivisionError:
        raise InvalidInput(f"zero denominator in {text!r}") from None
    return field.element((a, b))
