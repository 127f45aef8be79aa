"""Cayley-Dickson composition algebras up to octonions.

An algebra is presented by its doubling parameters (g1, ..., gk), k <= 3,
over a base field; dimension 2^k.  The product is fixed by the doubling rule

    (a, b)(c, d) = (a c + g d conj(b),  conj(a) d + c b)

with conjugation (a, b) -> (conj(a), -b), so on the canonical basis every
product e_i e_j is a scalar multiple of a single basis element and the whole
multiplication lives in one cached table.  The norm form is the Pfister form
<1,-g1> (x) ... (x) <1,-gk>.
"""

from __future__ import annotations

import random as _random

from .errors import (
    AlgebraMismatch,
    InternalCheckFailed,
    InvalidInput,
    TooManyDoublings,
    UnsupportedExtension,
    ZeroParameter,
)
from .fields import QUAD_EXT, RATIONALS, Field, FieldElement
from .qforms import QuadraticForm, is_isotropic, pfister, equivalent


class CompositionAlgebra:
    """Composition algebra of dimension 1, 2, 4 or 8 over a supported field."""

    def __init__(self, field: Field, params):
        params = tuple(field.element(p) for p in params)
        if len(params) > 3:
            raise TooManyDoublings("dimension 16 refused: composition law fails")
        if any(p.is_zero() for p in params):
            raise ZeroParameter("doubling parameters must be nonzero")
        self.field = field
        self.params = params
        self.dim = 2 ** len(params)
        self._table = self._build_table()
        self._norm_form: QuadraticForm | None = None

    def _build_table(self):
        one = self.field.one()
        table = [[(0, one)]]
        dim = 1
        for g in self.params:
            new = [[None] * (2 * dim) for _ in range(2 * dim)]
            for i in range(dim):
                conj_i = one if i == 0 else -one
                for j in range(dim):
                    k, c = table[i][j]
                    new[i][j] = (k, c)
                    new[i][dim + j] = (dim + k, conj_i * c)
                    k2, c2 = table[j][i]
                    new[dim + i][j] = (dim + k2, c2)
                    new[dim + i][dim + j] = (k2, g * conj_i * c2)
            table = new
            dim *= 2
        return table

    # ----------------------------------------------------------------- basics
    def __eq__(self, other):
        return (
            isinstance(other, CompositionAlgebra)
            and self.field == other.field
            and self.params == other.params
        )

    def __hash__(self):
        return hash((self.field, self.params))

    def __repr__(self):
        body = ",".join(str(p) for p in self.params)
        return f"CD({body}) over {self.field}" if body else f"CD() over {self.field}"

    def zero(self) -> CompElement:
        return CompElement(self, [self.field.zero()] * self.dim)

    def one(self) -> CompElement:
        coords = [self.field.zero()] * self.dim
        coords[0] = self.field.one()
        return CompElement(self, coords)

    def basis(self, i: int) -> CompElement:
        coords = [self.field.zero()] * self.dim
        coords[i] = self.field.one()
        return CompElement(self, coords)

    def element(self, coords) -> CompElement:
        return CompElement(self, [self.field.element(c) for c in coords])

    def scalar(self, x) -> CompElement:
        coords = [self.field.zero()] * self.dim
        coords[0] = self.field.element(x)
        return CompElement(self, coords)

    def random(self, rng, height: int = 5) -> CompElement:
        return CompElement(self, [self.field.random(rng, height) for _ in range(self.dim)])

    # ------------------------------------------------------------------ forms
    def norm_form(self) -> QuadraticForm:
        """The norm as a diagonal form on the canonical basis.

        On first use the Pfister shape is checked against x -> N(x) on 20
        seeded random elements (exactly)."""
        if self._norm_form is None:
            if not self.params:
                form = QuadraticForm(self.field, [1], label="norm")
            else:
                form = QuadraticForm(
                    self.field, pfister(self.field, self.params).coeffs, label="norm"
                )
            rng = _random.Random(185)
            for _ in range(20):
                x = self.random(rng, 3)
                if form.evaluate(list(x.coords)) != x.norm():
                    raise InternalCheckFailed("norm form disagrees with x * conj(x)")
            self._norm_form = form
        return self._norm_form

    def pure_norm_form(self) -> QuadraticForm:
        """Norm restricted to the trace-zero subspace span(e_1..e_{dim-1})."""
        full = self.norm_form()
        if self.dim == 1:
            raise InvalidInput("dim-1 algebra has no pure part")
        return QuadraticForm(self.field, full.coeffs[1:], label="pure norm")

    def is_split(self) -> bool:
        """Split iff the norm form is isotropic."""
        return bool(is_isotropic(self.norm_form(), want_witness=False))

    def split_certificate(self):
        return is_isotropic(self.norm_form(), want_witness=True)

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "params": [str(p) for p in self.params],
        }


class CompElement:
    """Element in the canonical Cayley-Dickson basis."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: CompositionAlgebra, coords):
        if len(coords) != algebra.dim:
            raise InvalidInput(f"need {algebra.dim} coordinates, got {len(coords)}")
        self.algebra = algebra
        self.coords = tuple(coords)

    def _check(self, other) -> CompElement:
        if not isinstance(other, CompElement) or other.algebra != self.algebra:
            raise AlgebraMismatch("elements from different composition algebras")
        return other

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, CompElement)
            and other.algebra == self.algebra
            and other.coords == self.coords
        )

    def __hash__(self):
        return hash((self.algebra, self.coords))

    def __add__(self, other):
        other = self._check(other)
        return CompElement(self.algebra, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        other = self._check(other)
        return CompElement(self.algebra, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return CompElement(self.algebra, [-a for a in self.coords])

    def __mul__(self, other):
        other = self._check(other)
        table = self.algebra._table
        out = [self.algebra.field.zero()] * self.algebra.dim
        for i, xi in enumerate(self.coords):
            if xi.is_zero():
                continue
            row = table[i]
            for j, yj in enumerate(other.coords):
                if yj.is_zero():
                    continue
                k, c = row[j]
                out[k] = out[k] + xi * yj * c
        return CompElement(self.algebra, out)

    def scale(self, factor) -> CompElement:
        factor = self.algebra.field.element(factor)
        return CompElement(self.algebra, [factor * c for c in self.coords])

    def conj(self) -> CompElement:
        return CompElement(self.algebra, (self.coords[0],) + tuple(-c for c in self.coords[1:]))

    def trace(self) -> FieldElement:
        """x + conj(x), coerced to a scalar."""
        return self.coords[0] + self.coords[0]

    def norm(self) -> FieldElement:
        """x * conj(x), coerced to a scalar; asserts the pure part vanishes."""
        prod = self * self.conj()
        if any(not c.is_zero() for c in prod.coords[1:]):
            raise InternalCheckFailed("norm did not land in the base field")
        return prod.coords[0]

    def scalar_part(self) -> FieldElement:
        return self.coords[0]

    def is_scalar(self) -> bool:
        return all(c.is_zero() for c in self.coords[1:])

    def __repr__(self):
        return "[" + ", ".join(str(c) for c in self.coords) + "]"

    def to_json(self) -> list:
        return [str(c) for c in self.coords]


def cayley_dickson(field: Field, params) -> CompositionAlgebra:
    """Build the composition algebra with the given doubling parameters."""
    return CompositionAlgebra(field, params)


def comp_isomorphic(c1: CompositionAlgebra, c2: CompositionAlgebra) -> bool:
    """Norm forms classify composition algebras of equal dimension."""
    if c1.field != c2.field:
        raise AlgebraMismatch("isomorphism test needs a common base field")
    if c1.dim != c2.dim:
        return False
    return equivalent(c1.norm_form(), c2.norm_form())


def base_change_comp(c: CompositionAlgebra, ext: Field) -> CompositionAlgebra:
    """Reinterpret the doubling parameters over a supported extension."""
    if ext == c.field:
        return CompositionAlgebra(ext, c.params)
    if c.field.kind == RATIONALS and ext.kind == QUAD_EXT:
        params = [ext.element(p.value) for p in c.params]
        return CompositionAlgebra(ext, params)
    raise UnsupportedExtension(f"{c.field} -> {ext} is not a supported field extension")


def comp_from_json(obj: dict) -> CompositionAlgebra:
    from .fields import field_from_json

    if not isinstance(obj, dict) or "field" not in obj or "params" not in obj:
        raise InvalidInput(f"bad composition-algebra descriptor: {obj!r}")
    f = field_from_json(obj["field"])
    return CompositionAlgebra(f, [f.element(p) for p in obj["params"]])
